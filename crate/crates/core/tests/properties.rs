use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use treescale::balloracle::{exhaustive_orbit_count, orbit_count, EXHAUSTIVE_GROUP_CAP};
use treescale::bmtree::{
    inverse_axis, localized_scale, modular, rational_from_p_parts, scale, scale_spectrum,
    symscale_case, validate_axis, AxisData, Rational, SpectrumMode, DEFAULT_EXPONENT_CAP,
};
use treescale::sylow::{sylow_of_symmetric, sylow_subgroup, sylow_subgroup_seeded};
use treescale::{Execution, PermGroup, Permutation};

fn perm(k: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=k).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

/// A group on `3..=6` points from one to three random generators.
fn group() -> impl Strategy<Value = PermGroup> {
    (3usize..=6).prop_flat_map(|k| {
        prop::collection::vec(perm(k), 1..=3).prop_map(move |gens| PermGroup::new(k, gens).unwrap())
    })
}

/// Closure of the generators under multiplication, independent of the chain.
fn closure(g: &PermGroup) -> BTreeSet<Permutation> {
    let mut seen = BTreeSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = s.compose(&x).unwrap();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// A group with a valid axis over it, with at most three colours in the word.
fn axis() -> impl Strategy<Value = AxisData> {
    (group(), any::<u64>(), 1usize..=3).prop_filter_map("no valid axis", |(g, seed, n)| {
        let g = Arc::new(g);
        let k = g.degree();
        let elems = g.elements().ok()?.to_vec();
        let mut x = seed;
        let mut next = |m: usize| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (x >> 33) as usize % m
        };
        for _ in 0..20 {
            let tau = elems[next(elems.len())].clone();
            let mut word = vec![1 + next(k)];
            while word.len() < n {
                let c = 1 + next(k - 1);
                let last = word[word.len() - 1];
                word.push(if c >= last { c + 1 } else { c });
            }
            let a = AxisData::unchecked(g.clone(), tau, word);
            if validate_axis(&a).is_ok() {
                return Some(a);
            }
        }
        None
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn chain_order_matches_closure(g in group()) {
        prop_assert_eq!(g.order(), closure(&g).len() as u128);
    }

    #[test]
    fn orbit_stabiliser(g in group(), i in 1usize..=3) {
        let orbit = g.orbit(i).unwrap();
        let stab = g.point_stabiliser(i).unwrap();
        prop_assert_eq!(g.order(), orbit.len() as u128 * stab.order());
        for h in stab.generators() {
            prop_assert_eq!(h.apply(i), i);
        }
    }

    #[test]
    fn suborbit_lengths(g in group(), a in 1usize..=3, b in 1usize..=3) {
        let ga = g.point_stabiliser(a).unwrap();
        let gb = g.point_stabiliser(b).unwrap();
        let meet = ga.intersect(&gb).unwrap();
        prop_assert_eq!(g.suborbit_size(a, b).unwrap() as u128, ga.order() / meet.order());
    }

    #[test]
    fn transporter_is_a_coset(g in group(), a in 1usize..=3, b in 1usize..=3, c in 1usize..=3) {
        let elems = closure(&g);
        let direct: BTreeSet<usize> = elems.iter().filter(|f| f.apply(a) == b).map(|f| f.apply(c)).collect();
        prop_assert_eq!(g.transporter_images(a, b, c).unwrap(), direct.clone());
        // {f : f(a) = b} = h G_a for any h with h(a) = b
        if let Some(h) = elems.iter().find(|f| f.apply(a) == b) {
            let ga = g.point_stabiliser(a).unwrap();
            let coset: BTreeSet<usize> = ga.orbit(c).unwrap().into_iter().map(|x| h.apply(x)).collect();
            prop_assert_eq!(coset, direct);
        } else {
            prop_assert!(direct.is_empty());
        }
    }

    #[test]
    fn scale_matches_oracles(a in axis()) {
        let s = scale(&a).unwrap();
        if a.group().order() <= EXHAUSTIVE_GROUP_CAP {
            prop_assert_eq!(exhaustive_orbit_count(&a).unwrap(), s);
        }
        for m in 1..=3usize {
            prop_assert_eq!(orbit_count(&a, m).unwrap(), s.pow(m as u32));
        }
    }

    #[test]
    fn inverse_is_an_involution(a in axis()) {
        let inv = inverse_axis(&a).unwrap();
        prop_assert!(validate_axis(&inv).is_ok());
        let back = inverse_axis(&inv).unwrap();
        prop_assert_eq!(back.twist(), a.twist());
        prop_assert_eq!(back.word(), a.word());
    }

    #[test]
    fn modular_is_one_for_transitive_groups(a in axis()) {
        let d = modular(&a).unwrap();
        prop_assert_eq!(rational_from_p_parts(&d), d);
        if a.group().is_transitive() {
            prop_assert_eq!(d, Rational::from_integer(1));
        }
    }

    #[test]
    fn localized_scale_is_bounded_by_scale(a in axis(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let s = scale(&a).unwrap();
        match localized_scale(&a, p) {
            Ok(sp) => {
                prop_assert!(sp <= s);
            }
            Err(treescale::Error::InvalidAxis(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn spectrum_contains_every_scale(a in axis()) {
        let g = a.group();
        let spec = scale_spectrum(g, a.word().len(), SpectrumMode::Values, u128::MAX, Execution::Sequential).unwrap();
        prop_assert!(spec.contains(scale(&a).unwrap()));
    }

    #[test]
    fn sylow_subgroups_are_conjugate(g in group(), p in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>()) {
        let s = sylow_subgroup(&g, p).unwrap();
        let t = sylow_subgroup_seeded(&g, p, seed).unwrap();
        prop_assert_eq!(s.order(), t.order());
        prop_assert_eq!(s.order(), treescale::supernat::p_part(g.order(), p));
        prop_assert!(g.conjugating_element(&s, &t).unwrap().is_some());
    }
}

#[test]
fn spectrum_parallel_matches_sequential() {
    for k in 3..=7usize {
        let g = PermGroup::symmetric(k);
        for mode in [SpectrumMode::Values, SpectrumMode::Exponents(2), SpectrumMode::Exponents(3)] {
            let cap = if mode == SpectrumMode::Values { 1_000_000 } else { DEFAULT_EXPONENT_CAP };
            let seq = scale_spectrum(&g, 6, mode, cap, Execution::Sequential).unwrap();
            let par = scale_spectrum(&g, 6, mode, cap, Execution::Parallel).unwrap();
            assert_eq!(seq, par);
        }
    }
}

#[test]
fn prediction_matches_spectrum() {
    // Entries up to length 8 lie in the predicted set, and the predicted
    // members up to 3 all occur.
    for k in 3..=10usize {
        for p in [2u64, 3, 5, 7] {
            let case = symscale_case(k, p).unwrap();
            let fp = sylow_of_symmetric(k, p).unwrap();
            let spec = scale_spectrum(&fp, 8, SpectrumMode::Exponents(p), DEFAULT_EXPONENT_CAP, Execution::Parallel).unwrap();
            for &e in &spec.entries {
                assert!(case.localized.contains(e as u64), "k={k} p={p}: {e} not predicted by {}", case.localized);
            }
            for e in case.localized.members_up_to(3) {
                assert!(spec.contains(e as u128), "k={k} p={p}: predicted {e} missing");
            }
        }
    }
}
