use std::sync::Arc;

use num_rational::Ratio;
use num_traits::One;

use super::axis::{inverse_axis, validate_axis, AxisData};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::supernat::{is_prime, primes_up_to, valuation};
use crate::sylow::{sylow_of_symmetric, sylow_subgroup};

pub type Rational = Ratio<u128>;

/// Scale of the element with this axis: `∏ |F_{c_{i-1}} · c_i|` over `i = 1..n`.
pub fn scale(a: &AxisData) -> Result<u128> {
    validate_axis(a).map_err(Error::InvalidAxis)?;
    let table = a.group().suborbit_table();
    let colours = a.colours_with_seam();
    colours.windows(2).try_fold(1u128, |acc, w| {
        acc.checked_mul(table[w[0] - 1][w[1] - 1] as u128)
            .ok_or(Error::Overflow("scale"))
    })
}

/// `Δ(x) = s(x) / s(x⁻¹)`.
pub fn modular(a: &AxisData) -> Result<Rational> {
    let forward = scale(a)?;
    let backward = scale(&inverse_axis(a)?)?;
    Ok(Rational::new(forward, backward))
}

/// The p-part of a positive rational.
pub fn rational_p_part(r: &Rational, p: u64) -> Rational {
    let up = valuation(*r.numer(), p) as u32;
    let down = valuation(*r.denom(), p) as u32;
    let pp = p as u128;
    Rational::new(pp.pow(up), pp.pow(down))
}

/// Product of the p-parts over all primes dividing numerator or denominator.
pub fn rational_from_p_parts(r: &Rational) -> Rational {
    let mut primes: Vec<u64> = crate::supernat::factorise(*r.numer())
        .into_iter()
        .chain(crate::supernat::factorise(*r.denom()))
        .map(|(p, _)| p)
        .collect();
    primes.sort_unstable();
    primes.dedup();
    primes
        .into_iter()
        .fold(Rational::one(), |acc, p| acc * rational_p_part(r, p))
}

/// The Sylow p-subgroup used for localisation: the standard one when `F`
/// is the full symmetric group, otherwise the deterministic generic one.
pub fn designated_sylow(group: &PermGroup, p: u64) -> Result<PermGroup> {
    let k = group.degree();
    let full: u128 = (1..=k as u128).product();
    if group.order() == full {
        sylow_of_symmetric(k, p)
    } else {
        sylow_subgroup(group, p)
    }
}

/// Scale of the same axis read over `F(p)`, for an axis whose twist lies in `F(p)`.
pub fn localized_scale(a: &AxisData, p: u64) -> Result<u128> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let fp = Arc::new(designated_sylow(a.group(), p)?);
    localized_scale_with(a, &fp)
}

/// As [`localized_scale`] with a precomputed `F(p)`.
pub fn localized_scale_with(a: &AxisData, fp: &Arc<PermGroup>) -> Result<u128> {
    if !fp.is_subgroup_of(a.group()) {
        return Err(Error::Precondition("localising group is not a subgroup of F".into()));
    }
    scale(&a.over(fp.clone())?)
}

/// `∏_p s_(p)(x)` over primes `p ≤ k`, for colour-preserving axes.
pub fn aggregate_scale(a: &AxisData) -> Result<u128> {
    validate_axis(a).map_err(Error::InvalidAxis)?;
    if !a.twist().is_identity() {
        return Err(Error::Precondition(
            "aggregate scale requires a colour-preserving axis (twist = id)".into(),
        ));
    }
    primes_up_to(a.degree() as u64)
        .into_iter()
        .try_fold(1u128, |acc, p| {
            let s = localized_scale(a, p)?;
            acc.checked_mul(s).ok_or(Error::Overflow("aggregate scale"))
        })
}

/// Line alternately coloured `i` and `j`: axis `(id, (j, i))` with scale `|F_i·j|·|F_j·i|`.
pub fn build_alternating(group: Arc<PermGroup>, i: usize, j: usize) -> Result<AxisData> {
    if i == j {
        return Err(Error::Precondition("alternating axis needs two distinct colours".into()));
    }
    let id = group.identity();
    AxisData::new(group, id, vec![j, i])
}

/// Translation of length one with local action `τ`: axis `(τ, (j))` with
/// scale `|F_{τ(j)}·j|`.
pub fn build_tau_cycle(group: Arc<PermGroup>, tau: Permutation, j: usize) -> Result<AxisData> {
    if j == 0 || j > group.degree() {
        return Err(Error::PointOutOfRange {
            point: j,
            degree: group.degree(),
        });
    }
    if tau.degree() == group.degree() && tau.apply(j) == j {
        return Err(Error::Precondition(format!("twist fixes colour {j}; no translation of length one")));
    }
    AxisData::new(group, tau, vec![j])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(k: usize, gens: &[&str]) -> Arc<PermGroup> {
        Arc::new(PermGroup::from_cycle_strings(k, gens).unwrap())
    }

    fn axis(g: &Arc<PermGroup>, twist: &str, word: &[usize]) -> AxisData {
        let t = Permutation::parse(twist, g.degree()).unwrap();
        AxisData::new(g.clone(), t, word.to_vec()).unwrap()
    }

    #[test]
    fn scale_examples() {
        let s4 = Arc::new(PermGroup::symmetric(4));
        assert_eq!(scale(&axis(&s4, "()", &[1, 2])).unwrap(), 9);
        let t4 = Arc::new(PermGroup::trivial(4));
        assert_eq!(scale(&axis(&t4, "()", &[1, 2])).unwrap(), 1);
        let c3 = grp(5, &["(1 2 3)"]);
        assert_eq!(scale(&axis(&c3, "()", &[1, 4])).unwrap(), 3);
    }

    #[test]
    fn scale_rejects_invalid() {
        let s4 = Arc::new(PermGroup::symmetric(4));
        let bad = AxisData::unchecked(s4.clone(), s4.identity(), vec![1, 1]);
        assert!(matches!(scale(&bad), Err(Error::InvalidAxis(_))));
    }

    #[test]
    fn modular_examples() {
        let s4 = Arc::new(PermGroup::symmetric(4));
        assert_eq!(modular(&axis(&s4, "()", &[1, 2])).unwrap(), Rational::one());
        let t4 = Arc::new(PermGroup::trivial(4));
        assert_eq!(modular(&axis(&t4, "()", &[1, 2, 3])).unwrap(), Rational::one());
        let c3 = grp(5, &["(1 2 3)"]);
        let a = axis(&c3, "()", &[1, 4]);
        assert_eq!(scale(&inverse_axis(&a).unwrap()).unwrap(), 3);
        assert_eq!(modular(&a).unwrap(), Rational::one());
    }

    #[test]
    fn localized_examples() {
        let s5 = Arc::new(PermGroup::symmetric(5));
        let a = axis(&s5, "()", &[1, 4]);
        assert_eq!(scale(&a).unwrap(), 16);
        assert_eq!(localized_scale(&a, 3).unwrap(), 3);
        assert_eq!(localized_scale(&a, 7).unwrap(), 1);
        let s6 = Arc::new(PermGroup::symmetric(6));
        // F(3) = <(1 2 3), (4 5 6)>: |F(3)_4 · 1| = |F(3)_1 · 4| = 3.
        assert_eq!(localized_scale(&axis(&s6, "()", &[1, 4]), 3).unwrap(), 9);
        assert!(matches!(localized_scale(&a, 4), Err(Error::NotPrime(4))));
        // twist outside F(3)
        let t = axis(&s5, "(4 5)", &[1, 4]);
        assert!(matches!(localized_scale(&t, 3), Err(Error::InvalidAxis(_))));
    }

    #[test]
    fn aggregate_examples() {
        let t4 = Arc::new(PermGroup::trivial(4));
        assert_eq!(aggregate_scale(&axis(&t4, "()", &[1, 2])).unwrap(), 1);
        let s5 = Arc::new(PermGroup::symmetric(5));
        let a = axis(&s5, "()", &[1, 4]);
        // F(2) = <(1 2), (1 3)(2 4)> gives 2 * 2, F(3) = <(1 2 3)> gives 3 * 1,
        // F(5) is trivial. The scale over Sym(5) is 16, which does not divide 12.
        assert_eq!(localized_scale(&a, 2).unwrap(), 4);
        assert_eq!(aggregate_scale(&a).unwrap(), 12);
        assert_eq!(scale(&a).unwrap(), 16);
        let twisted = axis(&s5, "(1 2)", &[1, 4]);
        assert!(matches!(aggregate_scale(&twisted), Err(Error::Precondition(_))));
    }

    #[test]
    fn builders() {
        let s4 = Arc::new(PermGroup::symmetric(4));
        assert_eq!(scale(&build_alternating(s4.clone(), 1, 2).unwrap()).unwrap(), 9);
        assert!(build_alternating(s4, 2, 2).is_err());
        let s3 = Arc::new(PermGroup::symmetric(3));
        let tau = Permutation::parse("(1 2 3)", 3).unwrap();
        let a = build_tau_cycle(s3.clone(), tau, 1).unwrap();
        assert_eq!(a.word(), &[1]);
        assert_eq!(scale(&a).unwrap(), 2);
        let fixing = Permutation::parse("(2 3)", 3).unwrap();
        assert!(matches!(build_tau_cycle(s3, fixing, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn rational_parts() {
        let r = Rational::new(12, 45);
        assert_eq!(rational_p_part(&r, 2), Rational::new(4, 1));
        assert_eq!(rational_p_part(&r, 3), Rational::new(1, 3));
        assert_eq!(rational_p_part(&r, 5), Rational::new(1, 5));
        assert_eq!(rational_from_p_parts(&r), r);
        assert_eq!(rational_from_p_parts(&Rational::one()), Rational::one());
    }
}
