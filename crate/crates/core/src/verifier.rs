//! Exact multiplicity verification by exhaustive enumeration.
//!
//! For a set A in a finite abelian group, every nondecreasing h-tuple of
//! members is walked exactly once, so the maximum number of representations
//! g* is computed, not bounded. Small problems are enumerated directly; past
//! [`MITM_THRESHOLD`] total multisets a meet-in-the-middle split computes the
//! same counts from two half-depth enumerations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::arith::binomial;
use crate::constructions::BhSet;
use crate::error::{Error, Result};
use crate::groups::{GroupDescriptor, GroupValue};

/// Default ceiling on the number of multisets a verification may enumerate.
pub const DEFAULT_CAP: u128 = 100_000_000;
/// Above this many multisets, counting switches to meet-in-the-middle.
pub const MITM_THRESHOLD: u128 = 1_000_000;
/// At most this many argmax targets get witness lists in a report.
const MAX_WITNESS_TARGETS: usize = 100;

/// A target value attaining the maximum multiplicity, with every one of its
/// representations as a nondecreasing h-tuple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub target: GroupValue,
    pub reps: Vec<Vec<GroupValue>>,
}

/// The result of an exact verification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub h: u32,
    pub set_size: usize,
    pub group_order: u64,
    /// The exact maximum multiplicity g*: the set is B_h[g] iff g ≥ exact_g.
    pub exact_g: u64,
    /// Targets attaining exact_g, ascending, with lexicographically sorted
    /// representation lists. Capped at 100 targets (see `truncated`).
    pub witnesses: Vec<Witness>,
    #[serde(rename = "enumerated")]
    pub multisets_enumerated: u128,
    pub truncated: bool,
}

fn total_multisets(a: &BhSet) -> u128 {
    binomial(a.elements.len() as u64 + a.h as u64 - 1, a.h as u64)
}

fn check_cap(a: &BhSet, cap: u128) -> Result<u128> {
    let total = total_multisets(a);
    if total > cap {
        return Err(Error::TooLarge { size: total, cap });
    }
    Ok(total)
}

/// Representation counts for every attained target, choosing the strategy by
/// problem size.
pub fn representation_counts(a: &BhSet, cap: u128) -> Result<BTreeMap<GroupValue, u64>> {
    if check_cap(a, cap)? > MITM_THRESHOLD {
        representation_counts_mitm(a, cap)
    } else {
        representation_counts_direct(a, cap)
    }
}

/// Counts by walking every nondecreasing h-tuple.
pub fn representation_counts_direct(a: &BhSet, cap: u128) -> Result<BTreeMap<GroupValue, u64>> {
    check_cap(a, cap)?;
    if let (GroupDescriptor::Cyclic { n }, Some(res)) = (&a.group, a.residues()) {
        let mut counts = HashMap::new();
        cyclic_rec(&res, *n, a.h, 0, 0, &mut |t| *counts.entry(t).or_insert(0) += 1);
        return Ok(counts.into_iter().map(|(t, c)| (GroupValue::Residue(t), c)).collect());
    }
    let mut counts = BTreeMap::new();
    generic_rec(&a.group, &a.elements, a.h, 0, &a.group.identity(), &mut |t| {
        *counts.entry(t.clone()).or_insert(0) += 1;
        Ok(())
    })?;
    Ok(counts)
}

fn cyclic_rec(res: &[u64], n: u64, depth: u32, start: usize, acc: u64, sink: &mut impl FnMut(u64)) {
    if depth == 0 {
        sink(acc);
        return;
    }
    for (i, &r) in res.iter().enumerate().skip(start) {
        let next = ((acc as u128 + r as u128) % n as u128) as u64;
        cyclic_rec(res, n, depth - 1, i, next, sink);
    }
}

fn generic_rec(
    group: &GroupDescriptor,
    elems: &[GroupValue],
    depth: u32,
    start: usize,
    acc: &GroupValue,
    sink: &mut impl FnMut(&GroupValue) -> Result<()>,
) -> Result<()> {
    if depth == 0 {
        return sink(acc);
    }
    for (i, e) in elems.iter().enumerate().skip(start) {
        let next = group.op(acc, e)?;
        generic_rec(group, elems, depth - 1, i, &next, sink)?;
    }
    Ok(())
}

/// All nondecreasing index tuples of length k with their partial sums.
fn enumerate_half(a: &BhSet, k: usize) -> Result<Vec<(Vec<usize>, GroupValue)>> {
    let mut out = Vec::new();
    let mut idx = Vec::with_capacity(k);
    fn rec(
        a: &BhSet,
        k: usize,
        start: usize,
        acc: &GroupValue,
        idx: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, GroupValue)>,
    ) -> Result<()> {
        if idx.len() == k {
            out.push((idx.clone(), acc.clone()));
            return Ok(());
        }
        for i in start..a.elements.len() {
            let next = a.group.op(acc, &a.elements[i])?;
            idx.push(i);
            rec(a, k, i, &next, idx, out)?;
            idx.pop();
        }
        Ok(())
    }
    rec(a, k, 0, &a.group.identity(), &mut idx, &mut out)?;
    Ok(out)
}

/// Counts via a meet-in-the-middle split: prefixes of length ⌈h/2⌉ joined
/// against suffix counts bucketed by minimum index, so each multiset is
/// counted exactly once at the prefix/suffix boundary.
pub fn representation_counts_mitm(a: &BhSet, cap: u128) -> Result<BTreeMap<GroupValue, u64>> {
    check_cap(a, cap)?;
    if a.h == 1 {
        return representation_counts_direct(a, cap);
    }
    let h1 = (a.h as usize).div_ceil(2);
    let h2 = a.h as usize - h1;
    let n = a.elements.len();
    let prefixes = enumerate_half(a, h1)?;
    let suffixes = enumerate_half(a, h2)?;

    // suffix sum -> cum[m] = number of suffixes with minimum index ≥ m
    let mut suffix_cum: HashMap<GroupValue, Vec<u64>> = HashMap::new();
    for (idx, s) in &suffixes {
        suffix_cum.entry(s.clone()).or_insert_with(|| vec![0; n + 1])[idx[0]] += 1;
    }
    for v in suffix_cum.values_mut() {
        for m in (0..n).rev() {
            v[m] += v[m + 1];
        }
    }

    let mut counts: HashMap<GroupValue, u64> = HashMap::new();
    for (idx, s) in &prefixes {
        let maxi = *idx.last().expect("prefixes are nonempty");
        for (s2, cum) in &suffix_cum {
            if cum[maxi] > 0 {
                *counts.entry(a.group.op(s, s2)?).or_insert(0) += cum[maxi];
            }
        }
    }
    Ok(counts.into_iter().collect())
}

/// Every representation of each wanted target, by a second full walk.
fn direct_witnesses(a: &BhSet, targets: &[GroupValue]) -> Result<Vec<Witness>> {
    let wanted: BTreeSet<&GroupValue> = targets.iter().collect();
    let mut reps: BTreeMap<GroupValue, Vec<Vec<GroupValue>>> = BTreeMap::new();
    let mut tuple = Vec::with_capacity(a.h as usize);
    fn rec(
        a: &BhSet,
        wanted: &BTreeSet<&GroupValue>,
        depth: u32,
        start: usize,
        acc: &GroupValue,
        tuple: &mut Vec<GroupValue>,
        reps: &mut BTreeMap<GroupValue, Vec<Vec<GroupValue>>>,
    ) -> Result<()> {
        if depth == 0 {
            if wanted.contains(acc) {
                reps.entry(acc.clone()).or_default().push(tuple.clone());
            }
            return Ok(());
        }
        for i in start..a.elements.len() {
            let next = a.group.op(acc, &a.elements[i])?;
            tuple.push(a.elements[i].clone());
            rec(a, wanted, depth - 1, i, &next, tuple, reps)?;
            tuple.pop();
        }
        Ok(())
    }
    rec(a, &wanted, a.h, 0, &a.group.identity(), &mut tuple, &mut reps)?;
    Ok(assemble_witnesses(targets, reps))
}

/// Representations of the wanted targets reconstructed by joining prefix and
/// suffix halves at the index boundary.
fn mitm_witnesses(a: &BhSet, targets: &[GroupValue]) -> Result<Vec<Witness>> {
    if a.h == 1 {
        return direct_witnesses(a, targets);
    }
    let h1 = (a.h as usize).div_ceil(2);
    let h2 = a.h as usize - h1;
    let n = a.elements.len();
    let prefixes = enumerate_half(a, h1)?;
    let suffixes = enumerate_half(a, h2)?;
    // suffix sum -> per-minimum-index buckets of index tuples
    let mut buckets: HashMap<GroupValue, Vec<Vec<&Vec<usize>>>> = HashMap::new();
    for (idx, s) in &suffixes {
        buckets.entry(s.clone()).or_insert_with(|| vec![Vec::new(); n])[idx[0]].push(idx);
    }
    let mut reps: BTreeMap<GroupValue, Vec<Vec<GroupValue>>> = BTreeMap::new();
    for t in targets {
        for (pidx, s) in &prefixes {
            let maxi = *pidx.last().expect("prefixes are nonempty");
            let s2 = a.group.sub(t, s)?;
            if let Some(by_min) = buckets.get(&s2) {
                for bucket in by_min.iter().skip(maxi) {
                    for sidx in bucket {
                        let tuple: Vec<GroupValue> = pidx
                            .iter()
                            .chain(sidx.iter())
                            .map(|&i| a.elements[i].clone())
                            .collect();
                        reps.entry(t.clone()).or_default().push(tuple);
                    }
                }
            }
        }
    }
    Ok(assemble_witnesses(targets, reps))
}

fn assemble_witnesses(
    targets: &[GroupValue],
    mut reps: BTreeMap<GroupValue, Vec<Vec<GroupValue>>>,
) -> Vec<Witness> {
    targets
        .iter()
        .map(|t| {
            let mut r = reps.remove(t).unwrap_or_default();
            r.sort_unstable();
            Witness { target: t.clone(), reps: r }
        })
        .collect()
}

/// Computes the exact maximum multiplicity g* with witnesses for the targets
/// that attain it.
pub fn exact_g(a: &BhSet, cap: u128) -> Result<VerificationReport> {
    let total = check_cap(a, cap)?;
    let use_mitm = total > MITM_THRESHOLD;
    let counts =
        if use_mitm { representation_counts_mitm(a, cap)? } else { representation_counts_direct(a, cap)? };
    let exact = counts.values().max().copied().unwrap_or(0);
    let mut targets: Vec<GroupValue> =
        counts.iter().filter(|(_, &c)| c == exact).map(|(t, _)| t.clone()).collect();
    let truncated = targets.len() > MAX_WITNESS_TARGETS;
    targets.truncate(MAX_WITNESS_TARGETS);
    let witnesses =
        if use_mitm { mitm_witnesses(a, &targets)? } else { direct_witnesses(a, &targets)? };
    debug_assert!(witnesses.iter().all(|w| w.reps.len() as u64 == exact));
    Ok(VerificationReport {
        h: a.h,
        set_size: a.elements.len(),
        group_order: a.group.order()?,
        exact_g: exact,
        witnesses,
        multisets_enumerated: total,
        truncated,
    })
}

/// Whether the set is B_h[g], i.e. g* ≤ g.
pub fn is_bhg(a: &BhSet, g: u64, cap: u128) -> Result<bool> {
    let counts = representation_counts(a, cap)?;
    Ok(counts.values().max().copied().unwrap_or(0) <= g)
}

/// All pairwise differences a − b (including 0 from a = b).
pub fn difference_set(a: &BhSet, cap: u128) -> Result<BTreeSet<GroupValue>> {
    let n = a.elements.len() as u128;
    if n * n > cap {
        return Err(Error::TooLarge { size: n * n, cap });
    }
    let mut out = BTreeSet::new();
    for x in &a.elements {
        for y in &a.elements {
            out.insert(a.group.sub(x, y)?);
        }
    }
    Ok(out)
}
