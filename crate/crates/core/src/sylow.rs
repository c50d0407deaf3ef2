//! Sylow subgroups, cores, Fitting subgroups and Sylow bases of finite
//! permutation groups.
//!
//! Everything except [`sylow_of_symmetric`] works by brute force over the
//! element list and refuses groups above the enumeration bound.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::supernat::{factorise, is_prime, p_part, Supernatural};

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn is_pi_number(n: u128, pi: &[u64]) -> bool {
    factorise(n).iter().all(|(q, _)| pi.contains(q))
}

/// Grows a p-subgroup one step at a time: pick the first element (in scan
/// order) of p-power order that normalises the current subgroup, lies
/// outside it, and has its p-th power inside it.
fn grow_sylow(group: &PermGroup, p: u64, scan: &[Permutation]) -> PermGroup {
    let target = p_part(group.order(), p);
    let degree = group.degree();
    let mut sub = PermGroup::trivial(degree);
    while sub.order() < target {
        let next = scan
            .iter()
            .find(|x| {
                is_p_power(x.order(), p)
                    && !sub.contains(x)
                    && sub.contains(&x.pow(p))
                    && sub.is_normalised_by_element(x)
            })
            .expect("a p-subgroup below Sylow order has a larger p-subgroup in its normaliser");
        let mut gens = sub.generators().to_vec();
        gens.push(next.clone());
        sub = PermGroup::new(degree, gens).expect("same degree");
    }
    sub.with_enumeration_bound(group.enumeration_bound())
}

/// A Sylow p-subgroup of `group`, found deterministically.
pub fn sylow_subgroup(group: &PermGroup, p: u64) -> Result<PermGroup> {
    check_prime(p)?;
    if !group.order().is_multiple_of(p as u128) {
        return Ok(PermGroup::trivial(group.degree()));
    }
    Ok(grow_sylow(group, p, group.elements()?))
}

/// Like [`sylow_subgroup`] but scanning elements in a seeded random order,
/// so different seeds can land on different Sylow subgroups.
pub fn sylow_subgroup_seeded(group: &PermGroup, p: u64, seed: u64) -> Result<PermGroup> {
    check_prime(p)?;
    if !group.order().is_multiple_of(p as u128) {
        return Ok(PermGroup::trivial(group.degree()));
    }
    let mut scan = group.elements()?.to_vec();
    scan.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Ok(grow_sylow(group, p, &scan))
}

/// The standard Sylow p-subgroup of `Sym(k)`.
///
/// `{1..k}` is cut into consecutive blocks following the base-p digits of
/// `k` (largest blocks first); a block of size `p^m` carries the iterated
/// wreath product generated by the shifts `x ↦ x + p^(l-1) mod p^l` on its
/// first `p^l` points, `l = 1..m`.
pub fn sylow_of_symmetric(k: usize, p: u64) -> Result<PermGroup> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    let p = p as usize;
    let mut digits = Vec::new();
    let mut rest = k;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    let mut gens = Vec::new();
    let mut offset = 0usize;
    for m in (0..digits.len()).rev() {
        let size = p.pow(m as u32);
        for _ in 0..digits[m] {
            for l in 1..=m {
                let span = p.pow(l as u32);
                let shift = p.pow(l as u32 - 1);
                let images: Vec<usize> = (0..k)
                    .map(|x| {
                        if x >= offset && x < offset + span {
                            offset + (x - offset + shift) % span + 1
                        } else {
                            x + 1
                        }
                    })
                    .collect();
                gens.push(Permutation::from_images(&images)?);
            }
            offset += size;
        }
    }
    PermGroup::new(k, gens)
}

/// `O_p(G)`: the intersection of all conjugates of one Sylow p-subgroup.
pub fn p_core(group: &PermGroup, p: u64) -> Result<PermGroup> {
    let sylow = sylow_subgroup(group, p)?;
    let mut core: Vec<Permutation> = sylow.elements()?.to_vec();
    for g in group.elements()? {
        let g_inv = g.inverse();
        core.retain(|x| sylow.contains(&x.conjugate_by(&g_inv)));
        if core.len() == 1 {
            break;
        }
    }
    Ok(PermGroup::from_elements(group.degree(), core.iter())
        .with_enumeration_bound(group.enumeration_bound()))
}

/// `O_π(G)`: the join of the normal closures of single elements that are π-groups.
pub fn pi_core(group: &PermGroup, pi: &[u64]) -> Result<PermGroup> {
    for &p in pi {
        check_prime(p)?;
    }
    let mut core = PermGroup::trivial(group.degree());
    for class in group.conjugacy_classes()? {
        let x = &class[0];
        if core.contains(x) || !is_pi_number(x.order() as u128, pi) {
            continue;
        }
        let closure = group.normal_closure(std::slice::from_ref(x));
        if is_pi_number(closure.order(), pi) {
            core = PermGroup::generated(group.degree(), &[&core, &closure])?;
        }
    }
    Ok(core.with_enumeration_bound(group.enumeration_bound()))
}

pub fn prime_divisors(group: &PermGroup) -> Vec<u64> {
    factorise(group.order()).into_iter().map(|(p, _)| p).collect()
}

/// The Fitting subgroup `⟨O_p(G) : p divides |G|⟩`.
pub fn fitting(group: &PermGroup) -> Result<PermGroup> {
    let cores = prime_divisors(group)
        .into_iter()
        .map(|p| p_core(group, p))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&PermGroup> = cores.iter().collect();
    Ok(PermGroup::generated(group.degree(), &refs)?.with_enumeration_bound(group.enumeration_bound()))
}

/// `O_p(G)` is the whole Sylow p-subgroup.
pub fn is_p_normal(group: &PermGroup, p: u64) -> Result<bool> {
    Ok(p_core(group, p)?.order() == p_part(group.order(), p))
}

/// `|G : H|` as a supernatural number.
pub fn index(group: &PermGroup, sub: &PermGroup) -> Result<Supernatural> {
    if !sub.is_subgroup_of(group) {
        return Err(Error::Precondition("index: not a subgroup".into()));
    }
    Supernatural::from_nat(group.order() / sub.order())
}

/// `|⟨A ∪ B⟩| = |A||B| / |A ∩ B|`, i.e. `AB = BA`.
pub fn permutable(a: &PermGroup, b: &PermGroup) -> Result<bool> {
    let joined = PermGroup::generated(a.degree(), &[a, b])?;
    let meet = a.intersect(b)?;
    Ok(joined.order() * meet.order() == a.order() * b.order())
}

/// Distinct conjugates of `sub` in `group`, in the order they are met when
/// conjugating by the sorted element list.
pub fn conjugates(group: &PermGroup, sub: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut out = Vec::new();
    for g in group.elements()? {
        let c = sub.conjugate(g)?;
        if seen.insert(c.element_key()?) {
            out.push(c);
        }
    }
    Ok(out)
}

/// One Sylow subgroup per prime dividing the parent's order, pairwise permutable.
#[derive(Clone, Debug)]
pub struct SylowBasis {
    parent: PermGroup,
    members: BTreeMap<u64, PermGroup>,
}

impl SylowBasis {
    /// Checks the basis invariants before accepting the members.
    pub fn new(parent: PermGroup, members: BTreeMap<u64, PermGroup>) -> Result<Self> {
        let basis = SylowBasis { parent, members };
        basis.check()?;
        Ok(basis)
    }

    fn check(&self) -> Result<()> {
        let primes = prime_divisors(&self.parent);
        if primes != self.members.keys().copied().collect::<Vec<_>>() {
            return Err(Error::Precondition(
                "basis primes differ from the primes dividing the group order".into(),
            ));
        }
        for (&p, member) in &self.members {
            if !member.is_subgroup_of(&self.parent) || member.order() != p_part(self.parent.order(), p) {
                return Err(Error::Precondition(format!("basis member for {p} is not a Sylow subgroup")));
            }
        }
        for (i, (p, a)) in self.members.iter().enumerate() {
            for (q, b) in self.members.iter().skip(i + 1) {
                if !permutable(a, b)? {
                    return Err(Error::Precondition(format!(
                        "basis members for {p} and {q} do not permute"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn members(&self) -> &BTreeMap<u64, PermGroup> {
        &self.members
    }

    pub fn member(&self, p: u64) -> Option<&PermGroup> {
        self.members.get(&p)
    }
}

fn require_soluble(group: &PermGroup) -> Result<()> {
    if group.is_soluble() {
        Ok(())
    } else {
        Err(Error::Precondition(
            "group is not soluble; Sylow bases exist only for soluble groups".into(),
        ))
    }
}

fn candidate_lists(group: &PermGroup) -> Result<Vec<(u64, Vec<PermGroup>)>> {
    prime_divisors(group)
        .into_iter()
        .map(|p| {
            let rep = sylow_subgroup(group, p)?;
            Ok((p, conjugates(group, &rep)?))
        })
        .collect()
}

fn extend_basis(
    lists: &[(u64, Vec<PermGroup>)],
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
    first_only: bool,
) -> Result<()> {
    let depth = chosen.len();
    if depth == lists.len() {
        found.push(chosen.clone());
        return Ok(());
    }
    for (idx, cand) in lists[depth].1.iter().enumerate() {
        let mut ok = true;
        for (d, &c) in chosen.iter().enumerate() {
            if !permutable(&lists[d].1[c], cand)? {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(idx);
            extend_basis(lists, chosen, found, first_only)?;
            chosen.pop();
            if first_only && !found.is_empty() {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn assemble(group: &PermGroup, lists: &[(u64, Vec<PermGroup>)], pick: &[usize]) -> SylowBasis {
    SylowBasis {
        parent: group.clone(),
        members: lists
            .iter()
            .zip(pick)
            .map(|((p, cands), &i)| (*p, cands[i].clone()))
            .collect(),
    }
}

/// A Sylow basis of a soluble group, by backtracking over conjugates of one
/// fixed Sylow subgroup per prime (primes ascending).
pub fn sylow_basis(group: &PermGroup) -> Result<SylowBasis> {
    require_soluble(group)?;
    let lists = candidate_lists(group)?;
    let mut found = Vec::new();
    extend_basis(&lists, &mut Vec::new(), &mut found, true)?;
    let pick = found
        .first()
        .ok_or_else(|| Error::Precondition("no Sylow basis found".into()))?;
    Ok(assemble(group, &lists, pick))
}

/// Every Sylow basis of a soluble group.
pub fn all_sylow_bases(group: &PermGroup) -> Result<Vec<SylowBasis>> {
    require_soluble(group)?;
    let lists = candidate_lists(group)?;
    let mut found = Vec::new();
    extend_basis(&lists, &mut Vec::new(), &mut found, false)?;
    Ok(found.iter().map(|pick| assemble(group, &lists, pick)).collect())
}

/// An element conjugating every member of `a` onto the matching member of `b`.
pub fn conjugating_basis_element(
    group: &PermGroup,
    a: &SylowBasis,
    b: &SylowBasis,
) -> Result<Option<Permutation>> {
    if a.members.keys().ne(b.members.keys()) {
        return Ok(None);
    }
    Ok(group
        .elements()?
        .iter()
        .find(|g| {
            a.members.iter().all(|(p, pa)| {
                let pb = &b.members[p];
                pa.generators().iter().all(|x| pb.contains(&x.conjugate_by(g)))
            })
        })
        .cloned())
}

/// `⋂_p N_G(P_p)` over the members of the basis.
pub fn basis_normaliser(group: &PermGroup, basis: &SylowBasis) -> Result<PermGroup> {
    let elems = group.elements()?;
    Ok(PermGroup::from_elements(
        group.degree(),
        elems
            .iter()
            .filter(|g| basis.members.values().all(|m| m.is_normalised_by_element(g))),
    )
    .with_enumeration_bound(group.enumeration_bound()))
}

/// Checks `U = N_U(Σ)·K` for a normal `K` with `U/K` nilpotent.
///
/// Precondition failures come back as errors, never as `false`.
pub fn verify_hall_covering(u: &PermGroup, basis: &SylowBasis, k: &PermGroup) -> Result<bool> {
    if !k.is_normal_in(u) {
        return Err(Error::Precondition("K is not a normal subgroup of U".into()));
    }
    require_soluble(u)?;
    let tail = u.lower_central_series().pop().expect("nonempty");
    if !tail.is_subgroup_of(k) {
        return Err(Error::Precondition("U/K is not nilpotent".into()));
    }
    if !basis.parent.same_group(u) {
        return Err(Error::Precondition("basis belongs to a different group".into()));
    }
    basis.check()?;
    let n = basis_normaliser(u, basis)?;
    let meet = n.intersect(k)?;
    Ok(n.order() * k.order() == u.order() * meet.order())
}

/// Checks `O_𝒫(U) ∩ V = O_𝒫(V)` for `V ⊴ U`, where `O_𝒫 = ⟨O_π : π ∈ 𝒫⟩`.
pub fn core_commensurability_check(u: &PermGroup, v: &PermGroup, prime_sets: &[Vec<u64>]) -> Result<bool> {
    if !v.is_normal_in(u) {
        return Err(Error::Precondition("V is not a normal subgroup of U".into()));
    }
    for (i, a) in prime_sets.iter().enumerate() {
        for b in &prime_sets[i + 1..] {
            if a.iter().any(|p| b.contains(p)) {
                return Err(Error::Precondition("prime sets are not pairwise disjoint".into()));
            }
        }
    }
    let multi_core = |g: &PermGroup| -> Result<PermGroup> {
        let cores = prime_sets
            .iter()
            .map(|pi| pi_core(g, pi))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&PermGroup> = cores.iter().collect();
        PermGroup::generated(g.degree(), &refs)
    };
    let lhs = multi_core(u)?.intersect(v)?;
    Ok(lhs.same_group(&multi_core(v)?))
}

/// All normal subgroups, found as joins of normal closures of single elements.
pub fn normal_subgroups(group: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut found: Vec<PermGroup> = Vec::new();
    for class in group.conjugacy_classes()? {
        let n = group.normal_closure(std::slice::from_ref(&class[0]));
        if seen.insert(n.element_key()?) {
            found.push(n);
        }
    }
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let joined = PermGroup::generated(group.degree(), &[&found[i], &found[j]])?;
            if seen.insert(joined.element_key()?) {
                found.push(joined);
            }
        }
        i += 1;
    }
    Ok(found)
}

/// The built-in test corpus of small groups.
pub fn corpus() -> Vec<(&'static str, PermGroup)> {
    let g = |k, gens: &[&str]| PermGroup::from_cycle_strings(k, gens).expect("corpus generator");
    vec![
        ("sym3", PermGroup::symmetric(3)),
        ("sym4", PermGroup::symmetric(4)),
        ("alt4", PermGroup::alternating(4)),
        ("c6", PermGroup::cyclic(6)),
        ("d8", PermGroup::dihedral(4)),
        ("d12", PermGroup::dihedral(6)),
        ("sym3xc3", g(6, &["(1 2)", "(1 2 3)", "(4 5 6)"])),
        ("q8", g(8, &["(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)"])),
        ("v4", g(4, &["(1 2)(3 4)", "(1 3)(2 4)"])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(k: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(k, gens).unwrap()
    }

    fn v4() -> PermGroup {
        g(4, &["(1 2)(3 4)", "(1 3)(2 4)"])
    }

    #[test]
    fn sylow_orders() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(sylow_subgroup(&s4, 2).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&s4, 3).unwrap().order(), 3);
        assert_eq!(sylow_subgroup(&s4, 5).unwrap().order(), 1);
        let a4 = sylow_subgroup(&PermGroup::alternating(4), 2).unwrap();
        assert!(a4.same_group(&v4()));
        assert!(matches!(sylow_subgroup(&s4, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn symmetric_sylows() {
        let s = sylow_of_symmetric(6, 3).unwrap();
        assert!(s.same_group(&g(6, &["(1 2 3)", "(4 5 6)"])));
        assert_eq!(sylow_of_symmetric(4, 5).unwrap().order(), 1);
        let s9 = sylow_of_symmetric(9, 3).unwrap();
        assert_eq!(s9.order(), 81);
        assert!(s9.is_transitive());
        assert_eq!(sylow_of_symmetric(15, 5).unwrap().order(), 125);
        assert_eq!(sylow_of_symmetric(5, 2).unwrap().order(), 8);
        assert!(sylow_of_symmetric(5, 3).unwrap().same_group(&g(5, &["(1 2 3)"])));
        for k in 1..=15usize {
            let fact: u128 = (1..=k as u128).product();
            for p in [2u64, 3, 5, 7, 11, 13] {
                assert_eq!(sylow_of_symmetric(k, p).unwrap().order(), p_part(fact, p), "k={k} p={p}");
            }
        }
    }

    #[test]
    fn symmetric_sylow_is_conjugate_to_generic() {
        for k in 2..=6usize {
            let sym = PermGroup::symmetric(k);
            for p in [2u64, 3, 5] {
                let direct = sylow_of_symmetric(k, p).unwrap();
                let generic = sylow_subgroup(&sym, p).unwrap();
                assert!(sym.conjugating_element(&direct, &generic).unwrap().is_some(), "k={k} p={p}");
            }
        }
    }

    #[test]
    fn cores() {
        let s4 = PermGroup::symmetric(4);
        assert!(p_core(&s4, 2).unwrap().same_group(&v4()));
        assert_eq!(p_core(&s4, 3).unwrap().order(), 1);
        let d8 = PermGroup::dihedral(4);
        assert!(p_core(&d8, 2).unwrap().same_group(&d8));
        assert!(fitting(&s4).unwrap().same_group(&v4()));
        assert!(fitting(&d8).unwrap().same_group(&d8));
        assert!(pi_core(&s4, &[2, 3]).unwrap().same_group(&s4));
        assert!(pi_core(&s4, &[2]).unwrap().same_group(&v4()));
        assert_eq!(pi_core(&s4, &[3]).unwrap().order(), 1);
    }

    #[test]
    fn p_normality() {
        assert!(is_p_normal(&PermGroup::alternating(4), 2).unwrap());
        assert!(!is_p_normal(&PermGroup::symmetric(4), 2).unwrap());
        assert!(is_p_normal(&PermGroup::dihedral(4), 2).unwrap());
    }

    #[test]
    fn indices() {
        let s4 = PermGroup::symmetric(4);
        let a4 = PermGroup::alternating(4);
        assert_eq!(index(&s4, &a4).unwrap().to_string(), "2");
        assert!(index(&s4, &s4).unwrap().is_one());
        assert_eq!(index(&s4, &g(4, &["(1 2 3)"])).unwrap().to_string(), "2^3");
        assert!(index(&a4, &g(4, &["(1 2)"])).is_err());
    }

    #[test]
    fn bases() {
        let s4 = PermGroup::symmetric(4);
        let b = sylow_basis(&s4).unwrap();
        assert_eq!(b.member(2).unwrap().order(), 8);
        assert_eq!(b.member(3).unwrap().order(), 3);

        let d8 = PermGroup::dihedral(4);
        let bd = sylow_basis(&d8).unwrap();
        assert!(bd.member(2).unwrap().same_group(&d8));

        let sc = g(6, &["(1 2)", "(1 2 3)", "(4 5 6)"]);
        let bs = sylow_basis(&sc).unwrap();
        assert_eq!(bs.member(2).unwrap().order(), 2);
        assert_eq!(bs.member(3).unwrap().order(), 9);
        assert!(permutable(bs.member(2).unwrap(), bs.member(3).unwrap()).unwrap());

        assert!(matches!(sylow_basis(&PermGroup::alternating(5)), Err(Error::Precondition(_))));
    }

    #[test]
    fn normaliser_of_basis() {
        let s4 = PermGroup::symmetric(4);
        let n = basis_normaliser(&s4, &sylow_basis(&s4).unwrap()).unwrap();
        assert_eq!(n.order(), 2);
        assert!(n.generators().iter().all(|x| x.cycles().len() == 1 && x.cycles()[0].len() == 2));

        let s3 = PermGroup::symmetric(3);
        let mut members = BTreeMap::new();
        members.insert(2, g(3, &["(1 2)"]));
        members.insert(3, g(3, &["(1 2 3)"]));
        let b = SylowBasis::new(s3.clone(), members).unwrap();
        assert!(basis_normaliser(&s3, &b).unwrap().same_group(&g(3, &["(1 2)"])));

        let d8 = PermGroup::dihedral(4);
        assert!(basis_normaliser(&d8, &sylow_basis(&d8).unwrap()).unwrap().same_group(&d8));
    }

    #[test]
    fn hall_covering() {
        let s4 = PermGroup::symmetric(4);
        let b = sylow_basis(&s4).unwrap();
        assert!(verify_hall_covering(&s4, &b, &PermGroup::alternating(4)).unwrap());
        let d8 = PermGroup::dihedral(4);
        assert!(verify_hall_covering(&d8, &sylow_basis(&d8).unwrap(), &PermGroup::trivial(4)).unwrap());
        assert!(matches!(
            verify_hall_covering(&s4, &b, &v4()),
            Err(Error::Precondition(m)) if m.contains("nilpotent")
        ));
        assert!(matches!(
            verify_hall_covering(&s4, &b, &g(4, &["(1 2)"])),
            Err(Error::Precondition(m)) if m.contains("normal")
        ));
    }

    #[test]
    fn core_commensurability() {
        let s4 = PermGroup::symmetric(4);
        let a4 = PermGroup::alternating(4);
        assert!(core_commensurability_check(&s4, &a4, &[vec![2]]).unwrap());
        assert!(core_commensurability_check(&s4, &s4, &[vec![2], vec![3]]).unwrap());
        assert!(core_commensurability_check(&s4, &v4(), &[vec![2], vec![3]]).unwrap());
        assert!(core_commensurability_check(&s4, &g(4, &["(1 2)"]), &[vec![2]]).is_err());
        assert!(core_commensurability_check(&s4, &a4, &[vec![2, 3], vec![3]]).is_err());
    }

    #[test]
    fn corpus_orders() {
        let orders: Vec<u128> = corpus().iter().map(|(_, g)| g.order()).collect();
        assert_eq!(orders, vec![6, 24, 12, 6, 8, 12, 18, 8, 4]);
        let q8 = &corpus()[7].1;
        // exactly one involution
        let inv = q8.elements().unwrap().iter().filter(|x| x.order() == 2).count();
        assert_eq!(inv, 1);
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let mut orders: Vec<u128> = normal_subgroups(&PermGroup::symmetric(4))
            .unwrap()
            .iter()
            .map(|n| n.order())
            .collect();
        orders.sort();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }
}
