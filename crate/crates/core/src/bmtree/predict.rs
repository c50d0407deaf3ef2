use std::fmt;

use crate::error::{Error, Result};
use crate::supernat::{is_prime, valuation};

/// A set of non-negative integers, described symbolically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentSet {
    ZeroOnly,
    EvenNaturals,
    NaturalsExceptOne,
    AllNaturals,
    /// `e·ℕ₀`; `e = 0` is `{0}` and `e = 1` is all of `ℕ₀`.
    MultiplesOf(u64),
}

impl ExponentSet {
    pub fn contains(&self, e: u64) -> bool {
        match *self {
            ExponentSet::ZeroOnly => e == 0,
            ExponentSet::EvenNaturals => e.is_multiple_of(2),
            ExponentSet::NaturalsExceptOne => e != 1,
            ExponentSet::AllNaturals => true,
            ExponentSet::MultiplesOf(0) => e == 0,
            ExponentSet::MultiplesOf(step) => e.is_multiple_of(step),
        }
    }

    /// Members up to and including `bound`.
    pub fn members_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&e| self.contains(e)).collect()
    }
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExponentSet::ZeroOnly | ExponentSet::MultiplesOf(0) => f.write_str("{0}"),
            ExponentSet::EvenNaturals => f.write_str("2N0"),
            ExponentSet::NaturalsExceptOne => f.write_str("N0 \\ {1}"),
            ExponentSet::AllNaturals | ExponentSet::MultiplesOf(1) => f.write_str("N0"),
            ExponentSet::MultiplesOf(e) => write!(f, "{e}N0"),
        }
    }
}

/// Predicted exponent sets for `F = Sym(k)` and a prime `p`:
/// `localized` holds the exponents `e` with `p^e` a scale value of
/// `U(F(p))`; `ambient` holds the exponents of p-parts of scale values of `U(F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymScaleCase {
    pub k: usize,
    pub p: u64,
    pub localized: ExponentSet,
    pub ambient: ExponentSet,
}

impl fmt::Display for SymScaleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T = {}; S = {}", self.localized, self.ambient)
    }
}

pub fn symscale_case(k: usize, p: u64) -> Result<SymScaleCase> {
    if k < 3 {
        return Err(Error::Precondition(format!("k = {k}; trees need degree at least 3")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let kk = k as u64;
    let localized = if kk <= p {
        ExponentSet::ZeroOnly
    } else if p > 2 && kk == 2 * p {
        ExponentSet::EvenNaturals
    } else if p > 3 && kk.is_multiple_of(p) && (3..p).contains(&(kk / p)) {
        ExponentSet::NaturalsExceptOne
    } else {
        ExponentSet::AllNaturals
    };
    let ambient = ExponentSet::MultiplesOf(valuation((k - 1) as u128, p));
    Ok(SymScaleCase {
        k,
        p,
        localized,
        ambient,
    })
}
