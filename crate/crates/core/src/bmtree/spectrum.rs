//! Scale spectra by dynamic programming over the colour digraph.
//!
//! Walk states are `(start colour c₁, current colour, accumulated weight)`;
//! the edge `a → b` (`a ≠ b`) carries weight `|F_a · b|`. A walk of length
//! `n` is closed off by every seam colour `c₀` in the `F`-orbit of `cₙ` with
//! `c₀ ≠ c₁`, contributing the first factor `|F_{c₀} · c₁|`.

use std::collections::BTreeSet;

use crate::exec::Execution;
use crate::perm::PermGroup;
use crate::supernat::{is_prime, valuation};
use crate::error::{Error, Result};

pub const DEFAULT_VALUE_CAP: u128 = 1_000_000;
pub const DEFAULT_EXPONENT_CAP: u128 = 12;
pub const DEFAULT_MAX_LEN: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumMode {
    /// Scale values themselves.
    Values,
    /// Exponents of the given prime in the scale values.
    Exponents(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleSpectrum {
    pub mode: SpectrumMode,
    pub max_len: usize,
    pub cap: u128,
    pub truncated: bool,
    pub entries: BTreeSet<u128>,
}

impl ScaleSpectrum {
    pub fn prime(&self) -> Option<u64> {
        match self.mode {
            SpectrumMode::Values => None,
            SpectrumMode::Exponents(p) => Some(p),
        }
    }

    pub fn contains(&self, v: u128) -> bool {
        self.entries.contains(&v)
    }
}

struct Weights {
    // weight[a][b] in the mode's units (factor or exponent), 0-based colours
    weight: Vec<Vec<u128>>,
    // orbit id per colour
    orbit_of: Vec<usize>,
    multiplicative: bool,
    cap: u128,
}

impl Weights {
    fn combine(&self, acc: u128, w: u128) -> Option<u128> {
        let v = if self.multiplicative {
            acc.checked_mul(w)?
        } else {
            acc.checked_add(w)?
        };
        (v <= self.cap).then_some(v)
    }

    fn unit(&self) -> u128 {
        u128::from(self.multiplicative)
    }
}

fn weights(group: &PermGroup, mode: SpectrumMode, cap: u128) -> Weights {
    let table = group.suborbit_table();
    let k = group.degree();
    let weight = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    let s = table[a][b] as u128;
                    match mode {
                        SpectrumMode::Values => s,
                        SpectrumMode::Exponents(p) => valuation(s, p) as u128,
                    }
                })
                .collect()
        })
        .collect();
    let mut orbit_of = vec![usize::MAX; k];
    for (id, orb) in group.orbits().iter().enumerate() {
        for &x in orb {
            orbit_of[x - 1] = id;
        }
    }
    Weights {
        weight,
        orbit_of,
        multiplicative: mode == SpectrumMode::Values,
        cap,
    }
}

// All spectrum entries from walks starting at colour `start` (0-based).
fn from_start(w: &Weights, start: usize, max_len: usize) -> (BTreeSet<u128>, bool) {
    let k = w.weight.len();
    let mut out = BTreeSet::new();
    let mut truncated = false;
    let mut layer: Vec<BTreeSet<u128>> = vec![BTreeSet::new(); k];
    layer[start].insert(w.unit());
    for len in 1..=max_len {
        for (cur, accs) in layer.iter().enumerate() {
            if accs.is_empty() {
                continue;
            }
            for seam in (0..k).filter(|&s| s != start && w.orbit_of[s] == w.orbit_of[cur]) {
                let first = w.weight[seam][start];
                for &acc in accs {
                    match w.combine(acc, first) {
                        Some(v) => {
                            out.insert(v);
                        }
                        None => truncated = true,
                    }
                }
            }
        }
        if len == max_len {
            break;
        }
        let mut next: Vec<BTreeSet<u128>> = vec![BTreeSet::new(); k];
        for (cur, accs) in layer.iter().enumerate() {
            for (nxt, slot) in next.iter_mut().enumerate() {
                if nxt == cur {
                    continue;
                }
                let step = w.weight[cur][nxt];
                for &acc in accs {
                    match w.combine(acc, step) {
                        Some(v) => {
                            slot.insert(v);
                        }
                        None => truncated = true,
                    }
                }
            }
        }
        layer = next;
    }
    (out, truncated)
}

/// Scale values (or p-exponents) of every valid single-twist axis over `F`
/// with word length at most `max_len`, plus the elliptic value.
pub fn scale_spectrum(
    group: &PermGroup,
    max_len: usize,
    mode: SpectrumMode,
    cap: u128,
    exec: Execution,
) -> Result<ScaleSpectrum> {
    if max_len == 0 {
        return Err(Error::Precondition("spectrum needs max_len >= 1".into()));
    }
    if let SpectrumMode::Exponents(p) = mode {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    let w = weights(group, mode, cap);
    let starts: Vec<usize> = (0..group.degree()).collect();
    let parts = exec.map(&starts, |&s| from_start(&w, s, max_len));
    let mut entries = BTreeSet::from([w.unit()]);
    let mut truncated = false;
    for (part, t) in parts {
        entries.extend(part);
        truncated |= t;
    }
    Ok(ScaleSpectrum {
        mode,
        max_len,
        cap,
        truncated,
        entries,
    })
}

/// Spectrum with the default cap for the mode.
pub fn scale_spectrum_default(group: &PermGroup, max_len: usize, mode: SpectrumMode) -> Result<ScaleSpectrum> {
    let cap = match mode {
        SpectrumMode::Values => DEFAULT_VALUE_CAP,
        SpectrumMode::Exponents(_) => DEFAULT_EXPONENT_CAP,
    };
    scale_spectrum(group, max_len, mode, cap, Execution::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sylow::sylow_of_symmetric;

    fn set(v: &[u128]) -> BTreeSet<u128> {
        v.iter().copied().collect()
    }

    #[test]
    fn sym3_values() {
        let s = scale_spectrum_default(&PermGroup::symmetric(3), 4, SpectrumMode::Values).unwrap();
        assert_eq!(s.entries, set(&[1, 2, 4, 8, 16]));
        assert!(!s.truncated);
    }

    #[test]
    fn trivial_group() {
        for len in 1..=5 {
            let s = scale_spectrum_default(&PermGroup::trivial(4), len, SpectrumMode::Values).unwrap();
            assert_eq!(s.entries, set(&[1]));
        }
    }

    #[test]
    fn two_orbit_sylow_exponents() {
        let f = sylow_of_symmetric(6, 3).unwrap();
        let s = scale_spectrum_default(&f, 6, SpectrumMode::Exponents(3)).unwrap();
        assert_eq!(s.entries, set(&[0, 2, 4, 6]));
    }

    #[test]
    fn cap_truncates() {
        let s = scale_spectrum(&PermGroup::symmetric(4), 8, SpectrumMode::Values, 100, Execution::Sequential).unwrap();
        assert_eq!(s.entries, set(&[1, 3, 9, 27, 81]));
        assert!(s.truncated);
    }

    #[test]
    fn sequential_equals_parallel() {
        for g in [PermGroup::symmetric(5), sylow_of_symmetric(9, 3).unwrap(), PermGroup::dihedral(6)] {
            for mode in [SpectrumMode::Values, SpectrumMode::Exponents(2), SpectrumMode::Exponents(3)] {
                let cap = if mode == SpectrumMode::Values { DEFAULT_VALUE_CAP } else { DEFAULT_EXPONENT_CAP };
                let a = scale_spectrum(&g, 6, mode, cap, Execution::Sequential).unwrap();
                let b = scale_spectrum(&g, 6, mode, cap, Execution::Parallel).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn monotone_in_length() {
        let g = sylow_of_symmetric(9, 3).unwrap();
        let mut prev = BTreeSet::new();
        for len in 1..=6 {
            let s = scale_spectrum_default(&g, len, SpectrumMode::Exponents(3)).unwrap();
            assert!(prev.is_subset(&s.entries));
            prev = s.entries;
        }
    }

    #[test]
    fn bad_arguments() {
        let g = PermGroup::symmetric(3);
        assert!(scale_spectrum_default(&g, 0, SpectrumMode::Values).is_err());
        assert!(matches!(
            scale_spectrum_default(&g, 3, SpectrumMode::Exponents(6)),
            Err(Error::NotPrime(6))
        ));
    }
}
