//! The acceptance battery: thirteen exact checks plus two diagnostics.
//!
//! Every check compares integers or sets; nothing is approximate. Random
//! sweeps use fixed ChaCha seeds so reruns are identical.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::balloracle::{exhaustive_orbit_count, orbit_count, EXHAUSTIVE_GROUP_CAP, EXHAUSTIVE_LENGTH_CAP};
use crate::bmtree::{
    aggregate_scale, designated_sylow, localized_scale_with, modular, rational_from_p_parts,
    rational_p_part, scale, scale_spectrum, symscale_case, validate_axis, AxisData, ScaleSpectrum,
    SpectrumMode, DEFAULT_EXPONENT_CAP, DEFAULT_VALUE_CAP,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::perm::{PermGroup, Permutation};
use crate::supernat::{factorise, p_part, primes_up_to, valuation};
use crate::sylow::{
    all_sylow_bases, conjugating_basis_element, corpus, normal_subgroups, p_core, permutable,
    prime_divisors, sylow_basis, sylow_of_symmetric, sylow_subgroup, sylow_subgroup_seeded,
    verify_hall_covering, core_commensurability_check,
};

/// Result of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub label: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(Execution) -> Result<std::result::Result<String, String>>;

struct Item {
    name: &'static str,
    label: &'static str,
    suite: &'static str,
    check: Check,
}

const ITEMS: &[Item] = &[
    Item { name: "c01_symmetric_values", label: "scale values of U(Sym(k)) are the powers of k-1", suite: "spectrum", check: c01 },
    Item { name: "c02_trivial_localization", label: "localized exponents are {0} when k <= p", suite: "spectrum", check: c02 },
    Item { name: "c03_even_exponents", label: "localized exponents are the even naturals when k = 2p", suite: "spectrum", check: c03 },
    Item { name: "c04_gap_at_one", label: "localized exponents omit exactly 1 when k = mp, 3 <= m < p", suite: "spectrum", check: c04 },
    Item { name: "c05_all_exponents", label: "localized exponents are all naturals in the remaining cases", suite: "spectrum", check: c05 },
    Item { name: "c06_ambient_p_parts", label: "p-parts of scale values of U(Sym(k)) are p^(e n)", suite: "spectrum", check: c06 },
    Item { name: "c07_coprime_not_uniscalar", label: "scale values coprime to p with a non-uniscalar localization", suite: "spectrum", check: c07 },
    Item { name: "c08_oracle_equivalence", label: "scale equals ball orbit counts; |U:U_n| = s^n", suite: "oracle", check: c08 },
    Item { name: "c09_sandwich", label: "s(x)_p <= s_(p)(x) <= s(x)", suite: "oracle", check: c09 },
    Item { name: "c10_modular_parts", label: "p-parts of the modular function localize and multiply back", suite: "oracle", check: c10 },
    Item { name: "c11_aggregate_multiple", label: "scale divides the aggregate localized scale", suite: "oracle", check: c11 },
    Item { name: "c12_sylow_hall", label: "Sylow, core, basis and Hall covering battery", suite: "sylow", check: c12 },
    Item { name: "c13_spectrum_inclusion", label: "p-parts of scale values lie in the localized spectrum", suite: "spectrum", check: c13 },
    Item { name: "d09_sandwich_sylow_stabilisers", label: "sandwich where every F(p)_c is Sylow in F_c", suite: "diagnostic", check: d09 },
    Item { name: "d13_spectrum_inclusion_uncapped", label: "inclusion at the uncapped localized length", suite: "diagnostic", check: d13 },
];

/// Named suites accepted by [`run_suite`].
pub const SUITES: &[&str] = &["all", "spectrum", "oracle", "sylow", "diagnostic"];

/// All item names, criteria first.
pub fn item_names() -> Vec<&'static str> {
    ITEMS.iter().map(|i| i.name).collect()
}

fn select(suite: &str) -> Result<Vec<&'static Item>> {
    let picked: Vec<&Item> = match suite {
        "all" => ITEMS.iter().filter(|i| i.suite != "diagnostic").collect(),
        s if SUITES.contains(&s) => ITEMS.iter().filter(|i| i.suite == s).collect(),
        s => ITEMS
            .iter()
            .filter(|i| i.name == s || i.name.split('_').next() == Some(s))
            .collect(),
    };
    if picked.is_empty() {
        return Err(Error::Parse(format!("unknown suite or item {suite:?}")));
    }
    Ok(picked)
}

/// Runs one suite (or one item by name or `cNN` prefix). Items run
/// concurrently under [`Execution::Parallel`]; the output is sorted by name.
pub fn run_suite(suite: &str, exec: Execution) -> Result<Vec<Outcome>> {
    let items = select(suite)?;
    let mut out = exec.map(&items, |item| {
        let (passed, detail) = match (item.check)(exec) {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        Outcome {
            name: item.name,
            label: item.label,
            passed,
            detail,
        }
    });
    out.sort_by_key(|o| o.name);
    Ok(out)
}

fn verdict(failures: Vec<String>, ok: String) -> std::result::Result<String, String> {
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(failures.join("; "))
    }
}

fn fmt_set(s: &BTreeSet<u128>) -> String {
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn exponents(group: &PermGroup, p: u64, len: usize, exec: Execution) -> Result<ScaleSpectrum> {
    scale_spectrum(group, len, SpectrumMode::Exponents(p), DEFAULT_EXPONENT_CAP, exec)
}

fn values(group: &PermGroup, len: usize, exec: Execution) -> Result<ScaleSpectrum> {
    scale_spectrum(group, len, SpectrumMode::Values, DEFAULT_VALUE_CAP, exec)
}

/// `{(k-1)^n : 0 <= n <= len}` below the value cap.
fn power_values(k: usize, len: usize) -> BTreeSet<u128> {
    let base = (k - 1) as u128;
    (0..=len as u32)
        .map(|n| base.pow(n))
        .filter(|&v| v <= DEFAULT_VALUE_CAP)
        .collect()
}

fn c01(exec: Execution) -> Result<std::result::Result<String, String>> {
    let mut failures = Vec::new();
    for k in 3..=5 {
        let got = values(&PermGroup::symmetric(k), 6, exec)?.entries;
        let want = power_values(k, 6);
        if got != want {
            failures.push(format!("sym:{k}: got {} want {}", fmt_set(&got), fmt_set(&want)));
        }
    }
    Ok(verdict(failures, "k = 3, 4, 5 match".into()))
}

fn exact_exponents(
    cases: &[(usize, u64, usize)],
    want: impl Fn(usize) -> BTreeSet<u128>,
    exec: Execution,
) -> Result<std::result::Result<String, String>> {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for &(k, p, len) in cases {
        let got = exponents(&sylow_of_symmetric(k, p)?, p, len, exec)?.entries;
        let w = want(len);
        if got != w {
            failures.push(format!("sylow:{p}:sym:{k}: got {} want {}", fmt_set(&got), fmt_set(&w)));
        }
        seen.push(format!("sylow:{p}:sym:{k} {}", fmt_set(&got)));
    }
    Ok(verdict(failures, seen.join("; ")))
}

fn c02(exec: Execution) -> Result<std::result::Result<String, String>> {
    exact_exponents(&[(4, 5, 8), (5, 5, 8)], |_| BTreeSet::from([0]), exec)
}

fn c03(exec: Execution) -> Result<std::result::Result<String, String>> {
    exact_exponents(&[(6, 3, 8)], |len| (0..=len as u128).step_by(2).collect(), exec)
}

fn contains_exponents(
    cases: &[(usize, u64)],
    len: usize,
    required: &[u128],
    excluded: &[u128],
    exec: Execution,
) -> Result<std::result::Result<String, String>> {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for &(k, p) in cases {
        let got = exponents(&sylow_of_symmetric(k, p)?, p, len, exec)?.entries;
        for e in required {
            if !got.contains(e) {
                failures.push(format!("sylow:{p}:sym:{k}: missing {e}"));
            }
        }
        for e in excluded {
            if got.contains(e) {
                failures.push(format!("sylow:{p}:sym:{k}: unexpected {e}"));
            }
        }
        seen.push(format!("sylow:{p}:sym:{k} {}", fmt_set(&got)));
    }
    Ok(verdict(failures, seen.join("; ")))
}

fn c04(exec: Execution) -> Result<std::result::Result<String, String>> {
    contains_exponents(&[(15, 5)], 6, &[0, 2, 3, 4, 5, 6], &[1], exec)
}

fn c05(exec: Execution) -> Result<std::result::Result<String, String>> {
    contains_exponents(&[(4, 3), (9, 3)], 6, &[0, 1, 2, 3], &[], exec)
}

fn c06(exec: Execution) -> Result<std::result::Result<String, String>> {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for k in [7usize, 5] {
        let p = 3;
        let spec = values(&PermGroup::symmetric(k), crate::bmtree::DEFAULT_MAX_LEN, exec)?;
        let got: BTreeSet<u128> = spec.entries.iter().map(|&v| p_part(v, p)).collect();
        // Longest n with (k-1)^n under the cap, then the predicted exponents up to e·n.
        let n = power_values(k, spec.max_len).len() as u64 - 1;
        let e = valuation((k - 1) as u128, p);
        let want: BTreeSet<u128> = symscale_case(k, p)?
            .ambient
            .members_up_to(e * n)
            .into_iter()
            .map(|x| (p as u128).pow(x as u32))
            .collect();
        if got != want {
            failures.push(format!("sym:{k}: got {} want {}", fmt_set(&got), fmt_set(&want)));
        }
        seen.push(format!("sym:{k} {}", fmt_set(&got)));
    }
    Ok(verdict(failures, seen.join("; ")))
}

fn c07(exec: Execution) -> Result<std::result::Result<String, String>> {
    let mut failures = Vec::new();
    let got = values(&PermGroup::symmetric(5), 6, exec)?.entries;
    let non_powers: Vec<u128> = got
        .iter()
        .copied()
        .filter(|&v| factorise(v).iter().any(|&(q, _)| q != 2) || valuation(v, 2) % 2 == 1)
        .collect();
    if !non_powers.is_empty() {
        failures.push(format!("sym:5 values not powers of 4: {non_powers:?}"));
    }
    let local = exponents(&sylow_of_symmetric(5, 3)?, 3, 6, exec)?.entries;
    if !local.contains(&1) {
        failures.push(format!("sylow:3:sym:5 exponents {} lack 1", fmt_set(&local)));
    }
    Ok(verdict(failures, format!("sym:5 {}; sylow:3:sym:5 {}", fmt_set(&got), fmt_set(&local))))
}

/// Distinct cyclic subgroups of `Sym(k)`, trivial one included.
fn cyclic_subgroups(k: usize) -> Result<Vec<PermGroup>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in PermGroup::symmetric(k).elements()? {
        let c = PermGroup::new(k, vec![g.clone()])?;
        if seen.insert(c.element_key()?) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Every valid axis over `group` with word length `1..=max_n`.
fn all_axes(group: &Arc<PermGroup>, max_n: usize) -> Result<Vec<AxisData>> {
    let k = group.degree();
    let mut out = Vec::new();
    for tau in group.elements()? {
        let mut words: Vec<Vec<usize>> = (1..=k).map(|c| vec![c]).collect();
        for n in 1..=max_n {
            for w in &words {
                let a = AxisData::unchecked(group.clone(), tau.clone(), w.clone());
                if validate_axis(&a).is_ok() {
                    out.push(a);
                }
            }
            if n < max_n {
                words = words
                    .iter()
                    .flat_map(|w| {
                        let last = *w.last().expect("nonempty");
                        (1..=k).filter(move |&c| c != last).map(move |c| {
                            let mut v = w.clone();
                            v.push(c);
                            v
                        })
                    })
                    .collect();
            }
        }
    }
    Ok(out)
}

/// A uniformly drawn twist from `group` and a word of length `n`, redrawn until valid.
fn random_axis(group: &Arc<PermGroup>, n: usize, rng: &mut ChaCha8Rng) -> Result<AxisData> {
    let k = group.degree();
    let elems = group.elements()?;
    for _ in 0..1_000 {
        let tau = elems.choose(rng).expect("nonempty group").clone();
        let mut word = vec![rng.gen_range(1..=k)];
        while word.len() < n {
            let last = word[word.len() - 1];
            let c = rng.gen_range(1..k);
            word.push(if c >= last { c + 1 } else { c });
        }
        let a = AxisData::unchecked(group.clone(), tau, word);
        if validate_axis(&a).is_ok() {
            return Ok(a);
        }
    }
    Err(Error::Precondition(format!("no valid axis found over {group}")))
}

fn sweep_groups(k: usize) -> Result<Vec<Arc<PermGroup>>> {
    let mut gs = vec![PermGroup::symmetric(k), PermGroup::alternating(k)];
    gs.extend(cyclic_subgroups(k)?);
    Ok(gs.into_iter().map(Arc::new).collect())
}

/// The item-8 sweep: exhaustive over `k <= 4`, `n <= 3`, then 200 random
/// axes with `k <= 5`, `n <= 4`.
fn oracle_sweep() -> Result<Vec<AxisData>> {
    let mut axes = Vec::new();
    for k in 3..=4 {
        for g in sweep_groups(k)? {
            axes.extend(all_axes(&g, 3)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    let pools: Vec<Vec<Arc<PermGroup>>> = (3..=5).map(sweep_groups).collect::<Result<_>>()?;
    for _ in 0..200 {
        let pool = &pools[rng.gen_range(0..pools.len())];
        let g = pool[rng.gen_range(0..pool.len())].clone();
        // Length one needs a twist moving c1; redraw n when none exists.
        loop {
            let n = rng.gen_range(1..=4);
            if let Ok(a) = random_axis(&g, n, &mut rng) {
                axes.push(a);
                break;
            }
        }
    }
    Ok(axes)
}

fn describe(a: &AxisData) -> String {
    format!("{} {a}", a.group())
}

fn per_axis<F>(axes: &[AxisData], exec: Execution, f: F) -> Vec<String>
where
    F: Fn(&AxisData) -> Result<Option<String>> + Sync + Send,
{
    exec.map(axes, |a| match f(a) {
        Ok(None) => None,
        Ok(Some(msg)) => Some(format!("{}: {msg}", describe(a))),
        Err(e) => Some(format!("{}: error: {e}", describe(a))),
    })
    .into_iter()
    .flatten()
    .take(5)
    .collect()
}

fn c08(exec: Execution) -> Result<std::result::Result<String, String>> {
    let axes = oracle_sweep()?;
    let exhaustive = std::sync::atomic::AtomicUsize::new(0);
    let failures = per_axis(&axes, exec, |a| {
        let s = scale(a)?;
        for m in 1..=3usize {
            let count = orbit_count(a, m)?;
            let want = s.pow(m as u32);
            if count != want {
                return Ok(Some(format!("orbit_count(m={m}) = {count}, scale^m = {want}")));
            }
        }
        if a.group().order() <= EXHAUSTIVE_GROUP_CAP && a.word().len() <= EXHAUSTIVE_LENGTH_CAP {
            exhaustive.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            let e = exhaustive_orbit_count(a)?;
            if e != s {
                return Ok(Some(format!("exhaustive count {e} != scale {s}")));
            }
        }
        Ok(None)
    });
    let ok = format!(
        "{} axes, {} with exhaustive check",
        axes.len(),
        exhaustive.into_inner()
    );
    Ok(verdict(failures, ok))
}

/// Axes valid over `F(p)` for ambient `Sym(k)`, read over `Sym(k)`.
fn localized_sweep() -> Result<Vec<(AxisData, u64, Arc<PermGroup>)>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xf00d);
    for k in 3..=5usize {
        let sym = Arc::new(PermGroup::symmetric(k));
        for p in primes_up_to(k as u64) {
            let fp = Arc::new(sylow_of_symmetric(k, p)?);
            let local = if k <= 4 {
                all_axes(&fp, 3)?
            } else {
                let mut v = Vec::new();
                while v.len() < 200 {
                    if let Ok(a) = random_axis(&fp, rng.gen_range(1..=4), &mut rng) {
                        v.push(a);
                    }
                }
                v
            };
            for a in local {
                out.push((a.over(sym.clone())?, p, fp.clone()));
            }
        }
    }
    Ok(out)
}

/// Whether every point stabiliser of `fp` is a Sylow p-subgroup of the
/// matching point stabiliser of `f`.
pub fn stabilisers_are_sylow(f: &PermGroup, fp: &PermGroup, p: u64) -> Result<bool> {
    for c in 1..=f.degree() {
        if fp.point_stabiliser(c)?.order() != p_part(f.point_stabiliser(c)?.order(), p) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn c09(exec: Execution) -> Result<std::result::Result<String, String>> {
    sandwich(exec, false)
}

fn d09(exec: Execution) -> Result<std::result::Result<String, String>> {
    sandwich(exec, true)
}

fn sandwich(exec: Execution, sylow_stabilisers_only: bool) -> Result<std::result::Result<String, String>> {
    let mut cases = localized_sweep()?;
    if sylow_stabilisers_only {
        let mut keep = Vec::new();
        for case in cases {
            if stabilisers_are_sylow(case.0.group(), &case.2, case.1)? {
                keep.push(case);
            }
        }
        cases = keep;
    }
    let failures: Vec<String> = exec
        .map(&cases, |(a, p, fp)| -> Option<String> {
            let run = || -> Result<Option<String>> {
                let s = scale(a)?;
                let sp = localized_scale_with(a, fp)?;
                let low = p_part(s, *p);
                Ok((!(low <= sp && sp <= s)).then(|| format!("p={p}: {low} <= {sp} <= {s} fails")))
            };
            match run() {
                Ok(None) => None,
                Ok(Some(m)) => Some(format!("{}: {m}", describe(a))),
                Err(e) => Some(format!("{}: error: {e}", describe(a))),
            }
        })
        .into_iter()
        .flatten()
        .take(5)
        .collect();
    Ok(verdict(failures, format!("{} localized axes", cases.len())))
}

fn c10(exec: Execution) -> Result<std::result::Result<String, String>> {
    let axes = oracle_sweep()?;
    // F(p) per (group, p), computed once.
    let mut sylows: BTreeMap<(Vec<Permutation>, u64), Arc<PermGroup>> = BTreeMap::new();
    for a in &axes {
        for p in primes_up_to(a.degree() as u64) {
            let key = (a.group().element_key()?, p);
            if let std::collections::btree_map::Entry::Vacant(e) = sylows.entry(key) {
                e.insert(Arc::new(designated_sylow(a.group(), p)?));
            }
        }
    }
    let checked = std::sync::atomic::AtomicUsize::new(0);
    let failures = per_axis(&axes, exec, |a| {
        let delta = modular(a)?;
        if rational_from_p_parts(&delta) != delta {
            return Ok(Some(format!("product of p-parts differs from {delta}")));
        }
        for p in primes_up_to(a.degree() as u64) {
            let fp = &sylows[&(a.group().element_key()?, p)];
            if !fp.contains(a.twist()) {
                continue;
            }
            checked.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            let local = modular(&a.over(fp.clone())?)?;
            let part = rational_p_part(&delta, p);
            if part != local {
                return Ok(Some(format!("p={p}: Delta_p = {part}, localized Delta = {local}")));
            }
        }
        Ok(None)
    });
    Ok(verdict(
        failures,
        format!("{} axes, {} localized comparisons", axes.len(), checked.into_inner()),
    ))
}

fn c11(exec: Execution) -> Result<std::result::Result<String, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa66);
    let groups: Vec<Arc<PermGroup>> = (4..=6).map(|k| Arc::new(PermGroup::symmetric(k))).collect();
    let mut axes = Vec::with_capacity(200);
    while axes.len() < 200 {
        let g = groups[rng.gen_range(0..groups.len())].clone();
        let k = g.degree();
        let n = rng.gen_range(2..=5);
        let mut word = vec![rng.gen_range(1..=k)];
        while word.len() < n {
            let last = word[word.len() - 1];
            let c = rng.gen_range(1..k);
            word.push(if c >= last { c + 1 } else { c });
        }
        let id = g.identity();
        let a = AxisData::unchecked(g, id, word);
        if validate_axis(&a).is_ok() {
            axes.push(a);
        }
    }
    let failures = per_axis(&axes, exec, |a| {
        let s = scale(a)?;
        let agg = aggregate_scale(a)?;
        Ok((agg % s != 0).then(|| format!("{s} does not divide {agg}")))
    });
    Ok(verdict(failures, "200 colour-preserving axes".into()))
}

fn is_p_group(g: &PermGroup, p: u64) -> bool {
    p_part(g.order(), p) == g.order()
}

fn sylow_battery(name: &str, g: &PermGroup) -> Result<Vec<String>> {
    let mut f = Vec::new();
    let normals = normal_subgroups(g)?;
    for p in prime_divisors(g) {
        let s = sylow_subgroup(g, p)?;
        if s.order() != p_part(g.order(), p) || !s.is_subgroup_of(g) {
            f.push(format!("{name}: Sylow {p} has order {}", s.order()));
        }
        for seed in 1..=3 {
            let t = sylow_subgroup_seeded(g, p, seed)?;
            if g.conjugating_element(&s, &t)?.is_none() {
                f.push(format!("{name}: Sylow {p} seeds 0 and {seed} not conjugate"));
            }
        }
        let core = p_core(g, p)?;
        if !core.is_normal_in(g) || !is_p_group(&core, p) {
            f.push(format!("{name}: O_{p} is not a normal {p}-subgroup"));
        }
        for n in normals.iter().filter(|n| is_p_group(n, p)) {
            if !n.is_subgroup_of(&core) {
                f.push(format!("{name}: normal {p}-subgroup {n} outside O_{p}"));
            }
        }
    }
    if g.is_soluble() {
        let basis = sylow_basis(g)?;
        let members: Vec<&PermGroup> = basis.members().values().collect();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if !permutable(a, b)? {
                    f.push(format!("{name}: basis members {a} and {b} do not permute"));
                }
            }
        }
        for other in all_sylow_bases(g)? {
            if conjugating_basis_element(g, &basis, &other)?.is_none() {
                f.push(format!("{name}: two Sylow bases not conjugate"));
                break;
            }
        }
        let tail = g.lower_central_series().pop().expect("nonempty series");
        for k in normals.iter().filter(|k| tail.is_subgroup_of(k)) {
            if !verify_hall_covering(g, &basis, k)? {
                f.push(format!("{name}: Hall covering fails for K = {k}"));
            }
        }
    }
    let primes = prime_divisors(g);
    let singletons: Vec<Vec<u64>> = primes.iter().map(|&p| vec![p]).collect();
    let families = [singletons, vec![primes.clone()], vec![primes.iter().skip(1).copied().collect()]];
    for v in &normals {
        for fam in &families {
            if !core_commensurability_check(g, v, fam)? {
                f.push(format!("{name}: core check fails for V = {v}, sets {fam:?}"));
            }
        }
    }
    Ok(f)
}

fn c12(exec: Execution) -> Result<std::result::Result<String, String>> {
    let mut groups = corpus();
    groups.push(("sym4_hall", PermGroup::symmetric(4)));
    let results = exec.map(&groups, |(name, g)| sylow_battery(name, g));
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    // The named Hall case.
    let s4 = PermGroup::symmetric(4);
    if !verify_hall_covering(&s4, &sylow_basis(&s4)?, &PermGroup::alternating(4))? {
        failures.push("Sym(4), Alt(4): Hall covering fails".into());
    }
    Ok(verdict(failures, format!("{} corpus groups", groups.len())))
}

/// Largest element order in `F(p)`; bounds the twist orders available there.
fn twist_order_bound(k: usize, p: u64) -> Result<u64> {
    sylow_of_symmetric(k, p)?.max_element_order()
}

fn inclusion(exec: Execution, capped: bool) -> Result<std::result::Result<String, String>> {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for k in 4..=6usize {
        let ambient = values(&PermGroup::symmetric(k), 5, exec)?;
        for p in [2u64, 3, 5].into_iter().filter(|&p| p as usize <= k) {
            let parts: BTreeSet<u128> = ambient
                .entries
                .iter()
                .map(|&v| valuation(v, p) as u128)
                .collect();
            let raw = 5 * twist_order_bound(k, p)? as usize;
            let len = if capped { raw.min(8) } else { raw };
            let local = exponents(&sylow_of_symmetric(k, p)?, p, len, exec)?.entries;
            let missing: BTreeSet<u128> = parts.difference(&local).copied().collect();
            if !missing.is_empty() {
                failures.push(format!(
                    "k={k} p={p} L={len}: {} not in {}",
                    fmt_set(&missing),
                    fmt_set(&local)
                ));
            }
            seen.push(format!("k={k} p={p} L={len}"));
        }
    }
    Ok(verdict(failures, seen.join(", ")))
}

fn c13(exec: Execution) -> Result<std::result::Result<String, String>> {
    inclusion(exec, true)
}

fn d13(exec: Execution) -> Result<std::result::Result<String, String>> {
    inclusion(exec, false)
}
