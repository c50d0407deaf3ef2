//! Supernatural numbers: formal products of prime powers whose exponents
//! may be infinite. Used for indices, p-parts and spectrum bookkeeping.
//!
//! Text form is `2^3*5^inf*7` with primes ascending; `1` is the empty product.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

impl Exponent {
    fn add(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinite,
        }
    }
}

/// A supernatural number. Stored exponents are never zero and keys are prime.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Supernatural {
    exps: BTreeMap<u64, Exponent>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorise(mut n: u128) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// Exponent of `p` in `n` (`n > 0`).
pub fn valuation(mut n: u128, p: u64) -> u64 {
    let p = p as u128;
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// The `p`-part of a natural number.
pub fn p_part(n: u128, p: u64) -> u128 {
    (p as u128).pow(valuation(n, p) as u32)
}

/// Primes up to `n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&x| is_prime(x)).collect()
}

impl Supernatural {
    pub fn one() -> Self {
        Supernatural::default()
    }

    pub fn from_nat(n: u128) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("supernatural from 0".into()));
        }
        Ok(Supernatural {
            exps: factorise(n)
                .into_iter()
                .map(|(p, e)| (p, Exponent::Finite(e)))
                .collect(),
        })
    }

    /// `p^e`; `e = 0` gives 1.
    pub fn prime_power(p: u64, e: Exponent) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut exps = BTreeMap::new();
        if e != Exponent::Finite(0) {
            exps.insert(p, e);
        }
        Ok(Supernatural { exps })
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        self.exps.get(&p).copied().unwrap_or(Exponent::Finite(0))
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.exps.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.exps.values().all(|e| matches!(e, Exponent::Finite(_)))
    }

    /// The natural number, when finite and representable.
    pub fn to_nat(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (&p, &e) in &self.exps {
            let Exponent::Finite(e) = e else { return None };
            acc = acc.checked_mul((p as u128).checked_pow(u32::try_from(e).ok()?)?)?;
        }
        Some(acc)
    }

    pub fn mul(&self, other: &Supernatural) -> Supernatural {
        let mut exps = self.exps.clone();
        for (&p, &e) in &other.exps {
            exps.entry(p)
                .and_modify(|x| *x = x.add(e))
                .or_insert(e);
        }
        Supernatural { exps }
    }

    pub fn lcm(&self, other: &Supernatural) -> Supernatural {
        let mut exps = self.exps.clone();
        for (&p, &e) in &other.exps {
            exps.entry(p).and_modify(|x| *x = (*x).max(e)).or_insert(e);
        }
        Supernatural { exps }
    }

    pub fn lcm_all<'a, I: IntoIterator<Item = &'a Supernatural>>(items: I) -> Supernatural {
        items
            .into_iter()
            .fold(Supernatural::one(), |acc, x| acc.lcm(x))
    }

    pub fn divides(&self, other: &Supernatural) -> bool {
        self.exps.iter().all(|(&p, &e)| e <= other.exponent(p))
    }

    pub fn p_part(&self, p: u64) -> Supernatural {
        let mut exps = BTreeMap::new();
        if let Some(&e) = self.exps.get(&p) {
            exps.insert(p, e);
        }
        Supernatural { exps }
    }
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            match e {
                Exponent::Finite(1) => write!(f, "{p}")?,
                Exponent::Finite(n) => write!(f, "{p}^{n}")?,
                Exponent::Infinite => write!(f, "{p}^inf")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Supernatural {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Supernatural::one());
        }
        let mut out = Supernatural::one();
        for factor in s.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, Some(e)),
                None => (factor, None),
            };
            let p: u64 = base
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime {base:?} in {s:?}")))?;
            if !is_prime(p) {
                return Err(Error::Parse(format!("{p} is not prime in {s:?}")));
            }
            let e = match exp.map(str::trim) {
                None => Exponent::Finite(1),
                Some("inf") => Exponent::Infinite,
                Some(e) => Exponent::Finite(
                    e.parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {e:?} in {s:?}")))?,
                ),
            };
            if e == Exponent::Finite(0) {
                return Err(Error::Parse(format!("zero exponent in {s:?}")));
            }
            out = out.mul(&Supernatural::prime_power(p, e).expect("prime checked"));
        }
        Ok(out)
    }
}
