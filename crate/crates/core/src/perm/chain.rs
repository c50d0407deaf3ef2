//! Deterministic Schreier–Sims stabiliser chain.
//!
//! The base is the full point list `1, 2, ..., k` in order. Levels whose
//! basic orbit is a single point are kept internally (they cost nothing) and
//! skipped when the base is reported.

use super::Permutation;

#[derive(Clone, Debug)]
struct Level {
    // 0-based base point of this level.
    base: usize,
    // Generators of the level group; they fix every earlier base point.
    gens: Vec<Permutation>,
    // transversal[x] = (u, u⁻¹) with u(base) = x, for x in the basic orbit.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[base] = Some((id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        let id = Permutation::identity(degree);
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some((id.clone(), id));
        self.orbit = vec![self.base];
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            let ux = self.transversal[x].as_ref().expect("orbit point has rep").0.clone();
            for g in &self.gens {
                let y = g.apply0(x);
                if self.transversal[y].is_none() {
                    let uy = g.compose_unchecked(&ux);
                    let uy_inv = uy.inverse();
                    self.transversal[y] = Some((uy, uy_inv));
                    self.orbit.push(y);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn new(degree: usize) -> Self {
        StabChain {
            degree,
            levels: (0..degree).map(|b| Level::new(b, degree)).collect(),
        }
    }

    pub(crate) fn from_generators<'a, I>(degree: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut chain = StabChain::new(degree);
        for g in gens {
            chain.insert(g.clone());
        }
        chain
    }

    /// Adds `g` to the group. Returns `true` when the group grew.
    pub(crate) fn insert(&mut self, g: Permutation) -> bool {
        if self.sift(&g, 0).is_none() {
            return false;
        }
        self.add_gen(0, g);
        true
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g, 0).is_none()
    }

    /// Strips `g` through the levels from `from` on; `None` when it reduces
    /// to the identity, otherwise the non-trivial residue.
    fn sift(&self, g: &Permutation, from: usize) -> Option<Permutation> {
        let mut h = g.clone();
        for level in &self.levels[from..] {
            let b = h.apply0(level.base);
            if b == level.base {
                continue;
            }
            match &level.transversal[b] {
                Some((_, u_inv)) => h = u_inv.compose_unchecked(&h),
                None => return Some(h),
            }
        }
        debug_assert!(h.is_identity());
        None
    }

    // `g` fixes the base points of all levels before `i` and is not yet in
    // the group at level `i`.
    fn add_gen(&mut self, i: usize, g: Permutation) {
        self.levels[i].gens.push(g);
        self.levels[i].rebuild_orbit();
        let orbit = self.levels[i].orbit.clone();
        let ngens = self.levels[i].gens.len();
        for &x in &orbit {
            for s_idx in 0..ngens {
                let level = &self.levels[i];
                let s = &level.gens[s_idx];
                let y = s.apply0(x);
                let ux = &level.transversal[x].as_ref().expect("rep").0;
                let uy_inv = &level.transversal[y].as_ref().expect("rep").1;
                let schreier = uy_inv.compose_unchecked(&s.compose_unchecked(ux));
                if schreier.is_identity() {
                    continue;
                }
                if let Some(residue) = self.sift(&schreier, i + 1) {
                    self.add_gen(i + 1, residue);
                }
            }
        }
    }

    pub(crate) fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Strong generators of the whole group (level-0 generators).
    pub(crate) fn generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    /// Generators of the stabiliser of the first `depth` base points.
    pub(crate) fn level_generators(&self, depth: usize) -> &[Permutation] {
        self.levels
            .get(depth)
            .map(|l| l.gens.as_slice())
            .unwrap_or(&[])
    }

    /// 1-based base points with their basic orbit lengths (trivial levels skipped).
    pub(crate) fn base(&self) -> Vec<(usize, usize)> {
        self.levels
            .iter()
            .filter(|l| l.orbit.len() > 1)
            .map(|l| (l.base + 1, l.orbit.len()))
            .collect()
    }

    /// All group elements, in no particular order.
    pub(crate) fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        // Build g = u_0 ∘ u_1 ∘ ... ∘ u_{k-1}, deepest level first.
        for level in self.levels.iter().rev() {
            if level.orbit.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &x in &level.orbit {
                let u = &level.transversal[x].as_ref().expect("rep").0;
                for g in &out {
                    next.push(u.compose_unchecked(g));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, k: usize) -> Permutation {
        Permutation::parse(s, k).unwrap()
    }

    fn brute_closure(degree: usize, gens: &[Permutation]) -> std::collections::BTreeSet<Permutation> {
        let mut set = std::collections::BTreeSet::new();
        let mut stack = vec![Permutation::identity(degree)];
        while let Some(x) = stack.pop() {
            if set.insert(x.clone()) {
                for g in gens {
                    stack.push(g.compose_unchecked(&x));
                }
            }
        }
        set
    }

    #[test]
    fn symmetric_orders() {
        let mut fact: u128 = 1;
        for k in 2..=10usize {
            fact *= k as u128;
            let cyc: Vec<usize> = (1..=k).collect();
            let gens = [
                p("(1 2)", k),
                Permutation::from_cycles(k, &[cyc]).unwrap(),
            ];
            let chain = StabChain::from_generators(k, gens.iter());
            assert_eq!(chain.order(), fact, "Sym({k})");
        }
    }

    #[test]
    fn elements_match_closure() {
        let gens = [p("(1 2 3)(4 5)", 6), p("(2 6)", 6), p("(1 4)", 6)];
        let chain = StabChain::from_generators(6, gens.iter());
        let brute = brute_closure(6, &gens);
        let mut elems = chain.elements();
        elems.sort();
        elems.dedup();
        assert_eq!(chain.order() as usize, brute.len());
        assert_eq!(elems, brute.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn membership() {
        let gens = [p("(1 2 3)", 6), p("(4 5 6)", 6)];
        let chain = StabChain::from_generators(6, gens.iter());
        assert_eq!(chain.order(), 9);
        assert!(chain.contains(&p("(1 3 2)(4 5 6)", 6)));
        assert!(!chain.contains(&p("(1 2)", 6)));
        assert_eq!(chain.base(), vec![(1, 3), (4, 3)]);
    }
}
