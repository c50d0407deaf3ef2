use std::fmt;

use crate::error::{Error, Result};

/// A permutation of the points `1..=degree`.
///
/// Points are 1-based throughout the public API. Composition applies the
/// right factor first: `p.compose(&q)` maps `i` to `p(q(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images; images[i] is the image of point i + 1, minus one.
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images (`images[i - 1]` is the image of `i`).
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree {
                return Err(Error::PointOutOfRange { point: img, degree });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::Parse(format!("image {img} repeated; not a bijection")));
            }
            out.push((img - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Builds a permutation of the given degree from disjoint cycles of 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return Err(Error::PointOutOfRange { point: pt, degree });
                }
                if std::mem::replace(&mut used[pt - 1], true) {
                    return Err(Error::Parse(format!("point {pt} repeated in cycle notation")));
                }
            }
            for (idx, &pt) in cycle.iter().enumerate() {
                let next = cycle[(idx + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation such as `(1 2 3)(4 5)`; `()` is the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        if text == "id" {
            return Ok(Self::identity(degree));
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &body_start[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {s:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body_start[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    ///
    /// Panics when `i` is out of range.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g self g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (g p g^-1)(g(i)) = g(p(i))
        let mut out = vec![0u32; self.images.len()];
        for (i, &pi) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[pi as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer_lcm(acc, c.len() as u64))
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &v)| v as usize != *i)
            .map(|(i, _)| i + 1)
    }
}

fn num_integer_lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, k: usize) -> Permutation {
        Permutation::parse(s, k).unwrap()
    }

    #[test]
    fn involution_squares_to_identity() {
        let t = p("(1 2)", 4);
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn inverse_pair() {
        let a = p("(1 2 3)", 3);
        let b = p("(1 3 2)", 3);
        assert!(a.compose(&b).unwrap().is_identity());
        assert_eq!(a.inverse(), b);
    }

    #[test]
    fn right_factor_applies_first() {
        // (1 2)∘(2 3): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        let r = p("(1 2)", 3).compose(&p("(2 3)", 3)).unwrap();
        assert_eq!(r, p("(1 2 3)", 3));
        for i in 1..=3 {
            assert_eq!(r.apply(i), p("(1 2)", 3).apply(p("(2 3)", 3).apply(i)));
        }
    }

    #[test]
    fn degree_mismatch_rejected() {
        assert!(matches!(
            p("(1 2)", 3).compose(&p("(1 2)", 4)),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(p("(5 4)(3 1 2)", 5).to_string(), "(1 2 3)(4 5)");
        assert_eq!(p("()", 3).to_string(), "()");
        assert_eq!(p("id", 3).to_string(), "()");
        assert_eq!(p("(2)", 3).to_string(), "()");
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse("(1 2 4)", 3).is_err());
        assert!(Permutation::parse("(1 2 1)", 3).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert!(Permutation::parse("(0 1)", 3).is_err());
        assert!(Permutation::parse("1 2", 3).is_err());
    }

    #[test]
    fn conjugation_matches_composition() {
        let g = p("(1 2 3 4)", 5);
        let x = p("(1 5)(2 3)", 5);
        let direct = g.compose(&x).unwrap().compose(&g.inverse()).unwrap();
        assert_eq!(x.conjugate_by(&g), direct);
    }

    #[test]
    fn element_order_and_power() {
        let x = p("(1 2 3)(4 5)", 5);
        assert_eq!(x.order(), 6);
        assert!(x.pow(6).is_identity());
        assert!(!x.pow(3).is_identity());
        assert_eq!(x.pow(7), x);
    }
}
