use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use super::chain::StabChain;
use super::Permutation;
use crate::error::{Error, Result};

/// Default cap on the number of elements any operation will enumerate.
pub const DEFAULT_ENUMERATION_BOUND: usize = 200_000;

/// A permutation group on `1..=degree`, given by generators.
///
/// The stabiliser chain, the suborbit table and (for small groups) the
/// sorted element list are computed lazily and cached; all of them are
/// write-once, so shared references can be used from several threads.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    enumeration_bound: usize,
    chain: OnceLock<StabChain>,
    elements: OnceLock<Vec<Permutation>>,
    suborbits: OnceLock<Vec<Vec<u32>>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            generators,
            enumeration_bound: DEFAULT_ENUMERATION_BOUND,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
            suborbits: OnceLock::new(),
        })
    }

    fn from_chain(degree: usize, chain: StabChain, bound: usize) -> Self {
        let generators = chain.generators().to_vec();
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermGroup {
            degree,
            generators,
            enumeration_bound: bound,
            chain: cell,
            elements: OnceLock::new(),
            suborbits: OnceLock::new(),
        }
    }

    /// Parses generators given in cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse(s, degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn with_enumeration_bound(mut self, bound: usize) -> Self {
        self.enumeration_bound = bound;
        self.elements = OnceLock::new();
        self
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("no generators")
    }

    pub fn symmetric(k: usize) -> Self {
        let mut gens = Vec::new();
        if k >= 2 {
            gens.push(Permutation::from_cycles(k, &[vec![1, 2]]).expect("valid"));
        }
        if k >= 3 {
            gens.push(Permutation::from_cycles(k, &[(1..=k).collect()]).expect("valid"));
        }
        Self::new(k, gens).expect("same degree")
    }

    pub fn alternating(k: usize) -> Self {
        let gens = (3..=k)
            .map(|i| Permutation::from_cycles(k, &[vec![1, 2, i]]).expect("valid"))
            .collect();
        Self::new(k, gens).expect("same degree")
    }

    pub fn cyclic(k: usize) -> Self {
        let gens = if k >= 2 {
            vec![Permutation::from_cycles(k, &[(1..=k).collect()]).expect("valid")]
        } else {
            Vec::new()
        };
        Self::new(k, gens).expect("same degree")
    }

    /// Dihedral group of order `2k` acting on the vertices of a `k`-gon.
    pub fn dihedral(k: usize) -> Self {
        let mut gens = Vec::new();
        if k >= 2 {
            gens.push(Permutation::from_cycles(k, &[(1..=k).collect()]).expect("valid"));
            // reflection i -> k + 2 - i (fixing 1)
            let images: Vec<usize> = (1..=k).map(|i| if i == 1 { 1 } else { k + 2 - i }).collect();
            gens.push(Permutation::from_images(&images).expect("valid"));
        }
        Self::new(k, gens).expect("same degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn enumeration_bound(&self) -> usize {
        self.enumeration_bound
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::from_generators(self.degree, self.generators.iter()))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    /// Base points (1-based) with basic orbit lengths.
    pub fn base(&self) -> Vec<(usize, usize)> {
        self.chain().base()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point == 0 || point > self.degree {
            Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }

    fn check_degree(&self, other: &PermGroup) -> Result<()> {
        if self.degree != other.degree {
            Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            })
        } else {
            Ok(())
        }
    }

    fn same_bound(&self, chain: StabChain) -> PermGroup {
        PermGroup::from_chain(self.degree, chain, self.enumeration_bound)
    }

    /// Sorted list of all elements; refused above the enumeration bound.
    pub fn elements(&self) -> Result<&[Permutation]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let order = self.order();
        if order > self.enumeration_bound as u128 {
            return Err(Error::EnumerationBound {
                order,
                bound: self.enumeration_bound,
            });
        }
        Ok(self.elements.get_or_init(|| {
            let mut e = self.chain().elements();
            e.sort_unstable();
            e
        }))
    }

    /// Orbit of a 1-based point under the group.
    pub fn orbit(&self, point: usize) -> Result<BTreeSet<usize>> {
        self.check_point(point)?;
        Ok(self.orbit_with_reps(point).into_iter().map(|(x, _)| x).collect())
    }

    // BFS orbit of `point` with a representative u_x (u_x(point) = x) per orbit point.
    fn orbit_with_reps(&self, point: usize) -> Vec<(usize, Permutation)> {
        let mut reps: Vec<Option<Permutation>> = vec![None; self.degree + 1];
        reps[point] = Some(self.identity());
        let mut queue = vec![point];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for g in &self.generators {
                let y = g.apply(x);
                if reps[y].is_none() {
                    let ux = reps[x].as_ref().expect("rep");
                    reps[y] = Some(g.compose_unchecked(ux));
                    queue.push(y);
                }
            }
        }
        queue
            .into_iter()
            .map(|x| (x, reps[x].take().expect("rep")))
            .collect()
    }

    /// All orbits, each as a sorted set, ordered by least element.
    pub fn orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.degree + 1];
        let mut out = Vec::new();
        for i in 1..=self.degree {
            if seen[i] {
                continue;
            }
            let orb: BTreeSet<usize> = self.orbit_with_reps(i).into_iter().map(|(x, _)| x).collect();
            for &x in &orb {
                seen[x] = true;
            }
            out.push(orb);
        }
        out
    }

    /// The stabiliser of a point, generated by Schreier generators.
    pub fn point_stabiliser(&self, point: usize) -> Result<PermGroup> {
        self.check_point(point)?;
        if point == 1 {
            // The chain already holds G_1 at depth one.
            let gens = self.chain().level_generators(1).to_vec();
            let mut chain = StabChain::new(self.degree);
            for g in gens {
                chain.insert(g);
            }
            return Ok(self.same_bound(chain));
        }
        let reps = self.orbit_with_reps(point);
        let mut index = vec![usize::MAX; self.degree + 1];
        for (i, (x, _)) in reps.iter().enumerate() {
            index[*x] = i;
        }
        let mut chain = StabChain::new(self.degree);
        for (_, ux) in &reps {
            for s in &self.generators {
                let sx = s.compose_unchecked(ux);
                let y = sx.apply(point);
                let uy_inv = reps[index[y]].1.inverse();
                let schreier = uy_inv.compose_unchecked(&sx);
                if !schreier.is_identity() {
                    chain.insert(schreier);
                }
            }
        }
        Ok(self.same_bound(chain))
    }

    /// Table of suborbit lengths: `table[i-1][j-1] = |G_i · j|`.
    pub fn suborbit_table(&self) -> &[Vec<u32>] {
        self.suborbits.get_or_init(|| {
            (1..=self.degree)
                .map(|i| {
                    let stab = self.point_stabiliser(i).expect("point in range");
                    let mut row = vec![0u32; self.degree];
                    for orb in stab.orbits() {
                        for &j in &orb {
                            row[j - 1] = orb.len() as u32;
                        }
                    }
                    row
                })
                .collect()
        })
    }

    /// `|G_i · j|`, the length of the orbit of `j` under the stabiliser of `i`.
    pub fn suborbit_size(&self, i: usize, j: usize) -> Result<u64> {
        self.check_point(i)?;
        self.check_point(j)?;
        Ok(self.suborbit_table()[i - 1][j - 1] as u64)
    }

    /// `{ f(c) : f ∈ G, f(a) = b }`; empty when `b` is not in the orbit of `a`.
    pub fn transporter_images(&self, a: usize, b: usize, c: usize) -> Result<BTreeSet<usize>> {
        self.check_point(a)?;
        self.check_point(b)?;
        self.check_point(c)?;
        let Some((_, t)) = self.orbit_with_reps(a).into_iter().find(|(x, _)| *x == b) else {
            return Ok(BTreeSet::new());
        };
        let stab = self.point_stabiliser(a)?;
        Ok(stab.orbit(c)?.into_iter().map(|x| t.apply(x)).collect())
    }

    /// Is `self` a subgroup of `other`?
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Same set of elements.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Is `self` normalised by every element of `g`? (Does not check containment.)
    pub fn is_normalised_by(&self, g: &PermGroup) -> bool {
        g.generators.iter().all(|x| self.is_normalised_by_element(x))
    }

    pub fn is_normalised_by_element(&self, x: &Permutation) -> bool {
        self.generators.iter().all(|h| self.contains(&h.conjugate_by(x)))
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g) && self.is_normalised_by(g)
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> Result<PermGroup> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            });
        }
        let gens = self.generators.iter().map(|h| h.conjugate_by(g)).collect();
        PermGroup::new(self.degree, gens).map(|x| x.with_enumeration_bound(self.enumeration_bound))
    }

    /// Subgroup generated by a set of elements, keeping only the elements
    /// that enlarge the group seen so far.
    pub fn from_elements<'a, I>(degree: usize, elements: I) -> PermGroup
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut chain = StabChain::new(degree);
        for e in elements {
            chain.insert(e.clone());
        }
        PermGroup::from_chain(degree, chain, DEFAULT_ENUMERATION_BOUND)
    }

    /// `⟨H₁ ∪ H₂ ∪ ...⟩`.
    pub fn generated(degree: usize, groups: &[&PermGroup]) -> Result<PermGroup> {
        let mut chain = StabChain::new(degree);
        for h in groups {
            if h.degree != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: h.degree,
                });
            }
            for g in &h.generators {
                chain.insert(g.clone());
            }
        }
        Ok(PermGroup::from_chain(degree, chain, DEFAULT_ENUMERATION_BOUND))
    }

    /// `H ∩ K`, by enumerating the smaller of the two.
    pub fn intersect(&self, other: &PermGroup) -> Result<PermGroup> {
        self.check_degree(other)?;
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let elems = small.elements()?;
        Ok(PermGroup::from_elements(self.degree, elems.iter().filter(|x| large.contains(x)))
            .with_enumeration_bound(self.enumeration_bound))
    }

    /// Normal closure of `gens` in `self`.
    pub fn normal_closure(&self, gens: &[Permutation]) -> PermGroup {
        let mut chain = StabChain::new(self.degree);
        let mut queue: Vec<Permutation> = gens.to_vec();
        while let Some(x) = queue.pop() {
            if chain.insert(x.clone()) {
                for g in &self.generators {
                    queue.push(x.conjugate_by(g));
                }
            }
        }
        self.same_bound(chain)
    }

    /// `[A, B]` as a subgroup of `self`, for `A`, `B` normalised by `self`'s generators
    /// whenever the result is used as a series term.
    pub fn commutator_subgroup(&self, a: &PermGroup, b: &PermGroup) -> PermGroup {
        let mut comms = Vec::new();
        for x in &a.generators {
            for y in &b.generators {
                // x⁻¹ y⁻¹ x y
                let c = x
                    .inverse()
                    .compose_unchecked(&y.inverse())
                    .compose_unchecked(x)
                    .compose_unchecked(y);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        self.commutator_subgroup(self, self)
    }

    fn series_cap(&self) -> usize {
        // k · log2(k!) bounds the length of any subgroup chain in Sym(k).
        let k = self.degree.max(2);
        let log_fact: f64 = (2..=k).map(|i| (i as f64).log2()).sum();
        (k as f64 * log_fact).ceil() as usize + 1
    }

    /// Derived series down to its terminal term.
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        for _ in 0..self.series_cap() {
            let last = series.last().expect("nonempty");
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Lower central series `G = γ₁ ≥ γ₂ = [G, G] ≥ γ₃ = [γ₂, G] ≥ ...` down to its terminal term.
    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        for _ in 0..self.series_cap() {
            let last = series.last().expect("nonempty");
            let next = self.commutator_subgroup(last, self);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().expect("nonempty").order() == 1
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().expect("nonempty").order() == 1
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit_with_reps(1).len() == self.degree
    }

    pub fn is_2transitive(&self) -> bool {
        if self.degree < 2 || !self.is_transitive() {
            return false;
        }
        let stab = self.point_stabiliser(1).expect("point 1 exists");
        stab.orbit(2).expect("point 2 exists").len() == self.degree - 1
    }

    /// Normaliser of `h` in `self`, by brute force over the elements of `self`.
    pub fn normaliser(&self, h: &PermGroup) -> Result<PermGroup> {
        self.check_degree(h)?;
        let elems = self.elements()?;
        Ok(PermGroup::from_elements(
            self.degree,
            elems.iter().filter(|g| h.is_normalised_by_element(g)),
        )
        .with_enumeration_bound(self.enumeration_bound))
    }

    /// Some `g ∈ self` with `g a g⁻¹ = b`, by brute force.
    pub fn conjugating_element(&self, a: &PermGroup, b: &PermGroup) -> Result<Option<Permutation>> {
        self.check_degree(a)?;
        self.check_degree(b)?;
        if a.order() != b.order() {
            return Ok(None);
        }
        let elems = self.elements()?;
        Ok(elems
            .iter()
            .find(|g| a.generators.iter().all(|x| b.contains(&x.conjugate_by(g))))
            .cloned())
    }

    /// Largest element order.
    pub fn max_element_order(&self) -> Result<u64> {
        Ok(self.elements()?.iter().map(|g| g.order()).max().unwrap_or(1))
    }

    /// Sorted element list used as a hashable identity for small subgroups.
    pub fn element_key(&self) -> Result<Vec<Permutation>> {
        Ok(self.elements()?.to_vec())
    }

    /// Conjugacy classes, each sorted, ordered by their least element.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<Permutation>>> {
        let elems = self.elements()?;
        let mut seen: HashSet<Permutation> = HashSet::with_capacity(elems.len());
        let mut classes = Vec::new();
        for x in elems {
            if seen.contains(x) {
                continue;
            }
            seen.insert(x.clone());
            let mut class = vec![x.clone()];
            let mut head = 0;
            while head < class.len() {
                let y = class[head].clone();
                head += 1;
                for g in &self.generators {
                    let z = y.conjugate_by(g);
                    if seen.insert(z.clone()) {
                        class.push(z);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        Ok(classes)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, <", self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">)")
    }
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(k: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(k, gens).unwrap()
    }

    fn p(s: &str, k: usize) -> Permutation {
        Permutation::parse(s, k).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(g(3, &["(1 2)", "(1 2 3)"]).order(), 6);
        assert_eq!(PermGroup::trivial(5).order(), 1);
        assert_eq!(g(6, &["(1 2 3)", "(4 5 6)"]).order(), 9);
        assert_eq!(PermGroup::alternating(5).order(), 60);
        assert_eq!(PermGroup::dihedral(6).order(), 12);
        assert_eq!(PermGroup::symmetric(15).order(), 1_307_674_368_000);
    }

    #[test]
    fn orbits() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.orbit(1).unwrap(), BTreeSet::from([1, 2, 3, 4]));
        let c = g(5, &["(1 2 3)"]);
        assert_eq!(c.orbit(4).unwrap(), BTreeSet::from([4]));
        assert_eq!(c.orbit(2).unwrap(), BTreeSet::from([1, 2, 3]));
        assert!(matches!(c.orbit(6), Err(Error::PointOutOfRange { point: 6, degree: 5 })));
        assert!(c.orbit(0).is_err());
    }

    #[test]
    fn stabilisers() {
        let s4 = PermGroup::symmetric(4);
        let st = s4.point_stabiliser(1).unwrap();
        assert_eq!(st.order(), 6);
        assert!(st.generators().iter().all(|x| x.apply(1) == 1));
        assert_eq!(PermGroup::trivial(4).point_stabiliser(3).unwrap().order(), 1);
        let h = g(6, &["(1 2 3)", "(4 5 6)"]).point_stabiliser(1).unwrap();
        assert_eq!(h.order(), 3);
        assert!(h.same_group(&g(6, &["(4 5 6)"])));
    }

    #[test]
    fn suborbits() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.suborbit_size(1, 2).unwrap(), 3);
        assert_eq!(s4.suborbit_size(1, 1).unwrap(), 1);
        let c = g(5, &["(1 2 3)"]);
        assert_eq!(c.suborbit_size(4, 1).unwrap(), 3);
        assert_eq!(c.suborbit_size(1, 4).unwrap(), 1);
    }

    #[test]
    fn transporters() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.transporter_images(1, 2, 3).unwrap(), BTreeSet::from([1, 3, 4]));
        assert_eq!(
            PermGroup::trivial(4).transporter_images(1, 1, 2).unwrap(),
            BTreeSet::from([2])
        );
        assert!(g(5, &["(1 2 3)"]).transporter_images(1, 4, 2).unwrap().is_empty());
    }

    #[test]
    fn normalisers() {
        let s4 = PermGroup::symmetric(4);
        let d8 = g(4, &["(1 2 3 4)", "(1 3)"]);
        let n = s4.normaliser(&d8).unwrap();
        assert_eq!(n.order(), 8);
        assert!(n.same_group(&d8));
        assert!(s4.normaliser(&s4).unwrap().same_group(&s4));
        assert_eq!(s4.normaliser(&g(4, &["(1 2 3)"])).unwrap().order(), 6);
    }

    #[test]
    fn normaliser_refuses_large_groups() {
        let s9 = PermGroup::symmetric(9);
        assert!(matches!(
            s9.normaliser(&PermGroup::trivial(9)),
            Err(Error::EnumerationBound { order: 362880, bound: 200_000 })
        ));
    }

    #[test]
    fn predicates() {
        let s4 = PermGroup::symmetric(4);
        assert!(s4.is_transitive());
        assert!(s4.is_2transitive());
        assert!(!PermGroup::cyclic(4).is_2transitive());
        assert!(PermGroup::alternating(4).is_2transitive());
        assert!(s4.is_soluble());
        assert!(!s4.is_nilpotent());
        assert!(!PermGroup::alternating(5).is_soluble());
        assert!(g(4, &["(1 2 3 4)", "(1 3)"]).is_nilpotent());
        assert!(PermGroup::trivial(3).is_nilpotent());
        let i = g(3, &["(1 2)"]).intersect(&g(3, &["(1 2 3)"])).unwrap();
        assert_eq!(i.order(), 1);
    }

    #[test]
    fn derived_series_of_s4() {
        let orders: Vec<u128> = PermGroup::symmetric(4)
            .derived_series()
            .iter()
            .map(|h| h.order())
            .collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
    }

    #[test]
    fn lower_central_series_of_s4_stalls_at_a4() {
        let orders: Vec<u128> = PermGroup::symmetric(4)
            .lower_central_series()
            .iter()
            .map(|h| h.order())
            .collect();
        assert_eq!(orders, vec![24, 12]);
    }

    #[test]
    fn conjugation_and_generation() {
        let h = g(4, &["(1 2)"]);
        let c = h.conjugate(&p("(2 3)", 4)).unwrap();
        assert!(c.contains(&p("(1 3)", 4)));
        let both = PermGroup::generated(4, &[&h, &c]).unwrap();
        assert_eq!(both.order(), 6);
    }

    #[test]
    fn conjugacy_classes_of_s4() {
        let sizes: BTreeSet<usize> = PermGroup::symmetric(4)
            .conjugacy_classes()
            .unwrap()
            .iter()
            .map(|c| c.len())
            .collect();
        assert_eq!(sizes, BTreeSet::from([1, 3, 6, 8]));
    }
}
