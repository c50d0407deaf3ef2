//! Brute-force orbit counting on a finite ball of the coloured tree.
//!
//! For an axis with word `c₁..cₙ`, the extended word `d₁..d_{mn}` follows
//! the axis from `v` to `x⁻ᵐv` (`d_{i+n} = τ⁻¹(d_i)`). The group `U` fixing
//! `v` and the seam edge moves this path onto image paths whose colour
//! sequences `b₁..b_{mn}` are built step by step from transporter sets:
//! `b₁ ∈ {f(d₁) : f(c₀) = c₀}` and `b_{i+1} ∈ {f(d_{i+1}) : f(d_i) = b_i}`.
//! The number of distinct image sequences is `|U · x⁻ᵐv|`. None of this
//! uses the suborbit-length product.

use std::collections::{BTreeSet, HashMap};

use crate::bmtree::{validate_axis, AxisData};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

pub const DEFAULT_DEPTH_CAP: usize = 12;
pub const EXHAUSTIVE_GROUP_CAP: u128 = 100;
pub const EXHAUSTIVE_LENGTH_CAP: usize = 3;

/// `d₁..d_{mn}` with `d_{i+n} = τ⁻¹(d_i)`.
pub fn extended_word(a: &AxisData, m: usize) -> Vec<usize> {
    let inv = a.twist().inverse();
    let mut out: Vec<usize> = a.word().to_vec();
    for _ in 1..m {
        let start = out.len() - a.word().len();
        let block: Vec<usize> = out[start..].iter().map(|&d| inv.apply(d)).collect();
        out.extend(block);
    }
    out
}

/// `{f(c) : f ∈ F, f(a) = b}`, from the element list when it is small
/// enough and from a coset of the point stabiliser otherwise.
struct Transporters<'g> {
    group: &'g PermGroup,
    elements: Option<&'g [Permutation]>,
    memo: HashMap<(usize, usize, usize), Vec<usize>>,
}

impl<'g> Transporters<'g> {
    fn new(group: &'g PermGroup) -> Self {
        Transporters {
            group,
            elements: group.elements().ok(),
            memo: HashMap::new(),
        }
    }

    fn images(&mut self, a: usize, b: usize, c: usize) -> Result<&[usize]> {
        if !self.memo.contains_key(&(a, b, c)) {
            let set: BTreeSet<usize> = match self.elements {
                Some(elems) => elems
                    .iter()
                    .filter(|f| f.apply(a) == b)
                    .map(|f| f.apply(c))
                    .collect(),
                None => self.group.transporter_images(a, b, c)?,
            };
            self.memo.insert((a, b, c), set.into_iter().collect());
        }
        Ok(&self.memo[&(a, b, c)])
    }
}

fn check_depth(a: &AxisData, m: usize, cap: usize) -> Result<()> {
    validate_axis(a).map_err(Error::InvalidAxis)?;
    if m == 0 {
        return Err(Error::Precondition("power m must be at least 1".into()));
    }
    let depth = m * a.word().len();
    if depth > cap {
        return Err(Error::CapExceeded(format!("ball depth {depth} exceeds cap {cap}")));
    }
    Ok(())
}

/// `|U · x⁻ᵐv|` with the default depth cap.
pub fn orbit_count(a: &AxisData, m: usize) -> Result<u128> {
    orbit_count_capped(a, m, DEFAULT_DEPTH_CAP)
}

/// Counts image sequences level by level, keeping for each image colour the
/// number of distinct prefixes that end in it.
pub fn orbit_count_capped(a: &AxisData, m: usize, depth_cap: usize) -> Result<u128> {
    check_depth(a, m, depth_cap)?;
    let d = extended_word(a, m);
    let k = a.degree();
    let c0 = a.seam();
    let mut tr = Transporters::new(a.group());
    let mut counts = vec![0u128; k + 1];
    for &b in tr.images(c0, c0, d[0])? {
        counts[b] = 1;
    }
    for i in 1..d.len() {
        let mut next = vec![0u128; k + 1];
        for (b, &n) in counts.iter().enumerate().skip(1) {
            if n == 0 {
                continue;
            }
            for &nb in tr.images(d[i - 1], b, d[i])? {
                next[nb] = next[nb]
                    .checked_add(n)
                    .ok_or(Error::Overflow("orbit count"))?;
            }
        }
        counts = next;
    }
    Ok(counts.iter().sum())
}

/// The explicit set of image colour sequences (small cases only).
pub fn orbit_sequences(a: &AxisData, m: usize) -> Result<BTreeSet<Vec<usize>>> {
    check_depth(a, m, DEFAULT_DEPTH_CAP)?;
    let d = extended_word(a, m);
    let c0 = a.seam();
    let mut tr = Transporters::new(a.group());
    let mut frontier: Vec<Vec<usize>> = tr.images(c0, c0, d[0])?.iter().map(|&b| vec![b]).collect();
    for i in 1..d.len() {
        let mut next = Vec::new();
        for seq in &frontier {
            let last = *seq.last().expect("nonempty");
            for &nb in tr.images(d[i - 1], last, d[i])? {
                let mut s = seq.clone();
                s.push(nb);
                next.push(s);
            }
        }
        frontier = next;
    }
    Ok(frontier.into_iter().collect())
}

fn check_exhaustive(a: &AxisData) -> Result<()> {
    validate_axis(a).map_err(Error::InvalidAxis)?;
    let order = a.group().order();
    if order > EXHAUSTIVE_GROUP_CAP {
        return Err(Error::CapExceeded(format!(
            "|F| = {order} exceeds exhaustive cap {EXHAUSTIVE_GROUP_CAP}"
        )));
    }
    if a.word().len() > EXHAUSTIVE_LENGTH_CAP {
        return Err(Error::CapExceeded(format!(
            "word length {} exceeds exhaustive cap {EXHAUSTIVE_LENGTH_CAP}",
            a.word().len()
        )));
    }
    Ok(())
}

/// Image sequences from every tuple `(f₀, ..., f_{n-1}) ∈ Fⁿ` of local
/// actions with `f₀(c₀) = c₀` and `f_i(c_i) = b_i`.
pub fn exhaustive_orbit_sequences(a: &AxisData) -> Result<BTreeSet<Vec<usize>>> {
    check_exhaustive(a)?;
    let elems = a.group().elements()?;
    let word = a.word();
    let mut out = BTreeSet::new();
    let mut images = Vec::with_capacity(word.len());

    fn rec(
        elems: &[Permutation],
        word: &[usize],
        parent: usize,
        parent_image: usize,
        images: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let i = images.len();
        if i == word.len() {
            out.insert(images.clone());
            return;
        }
        for f in elems {
            if f.apply(parent) != parent_image {
                continue;
            }
            images.push(f.apply(word[i]));
            rec(elems, word, word[i], images[i], images, out);
            images.pop();
        }
    }

    let c0 = a.seam();
    rec(elems, word, c0, c0, &mut images, &mut out);
    Ok(out)
}

pub fn exhaustive_orbit_count(a: &AxisData) -> Result<u128> {
    Ok(exhaustive_orbit_sequences(a)?.len() as u128)
}
