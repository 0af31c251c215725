//! Matroids presented by their lattices of flats.
//!
//! A matroid on ground set `{0, .., n-1}` (n at most 64, so flats fit in a
//! `u64` bitset) is stored as the full list of flats, validated against three
//! axioms: the ground set is a flat, the family is closed under pairwise
//! intersection, and for every flat `F` the sets `G \ F` over covers `G` of
//! `F` partition the complement of `F`. Ranks are cover-chain lengths from
//! the minimal flat; the minimal flat is the set of loops.
//!
//! Flats are kept in canonical order: by cardinality, then lexicographically
//! by sorted member list. Flat ids index into that order everywhere.

use num::BigInt;
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fmt;

/// Flats are subsets of the ground set, stored as bitsets.
pub type FlatSet = u64;

/// Index of a flat in the canonical order of a [`Matroid`].
pub type FlatId = usize;

/// Hard cap on ground-set size imposed by the bitset representation.
pub const MAX_GROUND: usize = 64;

/// Safety cap on the number of flats a constructor will materialize.
pub const MAX_FLATS_HARD: usize = 100_000;

/// Brute-force subset enumeration refuses larger ground sets than this.
pub const MAX_ENUM_GROUND: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("ground set is not a flat")]
    AxiomF1Violation,
    #[error("intersection of flats {a:?} and {b:?} is not a flat")]
    AxiomF2Violation { a: Vec<usize>, b: Vec<usize> },
    #[error(
        "cover differences of flat {flat:?} do not partition its complement at element {element}"
    )]
    AxiomF3Violation { flat: Vec<usize>, element: usize },
    #[error("element {0} is outside the ground set")]
    ElementOutOfRange(usize),
    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("flats are not comparable")]
    NotComparable,
    #[error("expected a proper flat")]
    ImproperFlat,
    #[error("rank argument out of range")]
    RankOutOfRange,
}

/// Canonical order on flats: cardinality first, then lexicographic by the
/// sorted member list (equivalently, the smallest element of the symmetric
/// difference decides).
pub fn flat_order(a: FlatSet, b: FlatSet) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match a.count_ones().cmp(&b.count_ones()) {
        Ordering::Equal => {
            if a == b {
                Ordering::Equal
            } else {
                let low = (a ^ b).trailing_zeros();
                if (a >> low) & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
        other => other,
    }
}

/// List the members of a bitset in increasing order.
pub fn members(set: FlatSet) -> Vec<usize> {
    let mut out = Vec::with_capacity(set.count_ones() as usize);
    let mut s = set;
    while s != 0 {
        let i = s.trailing_zeros() as usize;
        out.push(i);
        s &= s - 1;
    }
    out
}

fn full_set(n: usize) -> FlatSet {
    if n == 0 {
        0
    } else if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A validated matroid. Construction always goes through [`validate_flats`],
/// so every value of this type satisfies the flat axioms.
#[derive(Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: usize,
    flats: Vec<FlatSet>,
    index: HashMap<FlatSet, FlatId>,
    covers: Vec<Vec<FlatId>>,
    covered_by: Vec<Vec<FlatId>>,
    rank: Vec<u32>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matroid(ground={}, rank={}, flats={})",
            self.ground,
            self.rank(),
            self.flats.len()
        )
    }
}

/// Validate a family of flats and build the matroid.
///
/// The input order is irrelevant; flats are sorted canonically. Errors carry
/// witnesses: the offending pair for the intersection axiom, the flat and
/// uncovered (or doubly covered) element for the partition axiom.
pub fn validate_flats(ground: usize, input: &[FlatSet]) -> Result<Matroid, MatroidError> {
    if ground > MAX_GROUND {
        return Err(MatroidError::SizeCapExceeded(format!(
            "ground set of {ground} exceeds {MAX_GROUND}"
        )));
    }
    if input.is_empty() {
        return Err(MatroidError::AxiomF1Violation);
    }
    if input.len() > MAX_FLATS_HARD {
        return Err(MatroidError::SizeCapExceeded(format!(
            "{} flats exceed {MAX_FLATS_HARD}",
            input.len()
        )));
    }
    let full = full_set(ground);
    let mut flats = input.to_vec();
    for &f in &flats {
        if f & !full != 0 {
            return Err(MatroidError::ElementOutOfRange(
                (f & !full).trailing_zeros() as usize,
            ));
        }
    }
    flats.sort_by(|&a, &b| flat_order(a, b));
    for w in flats.windows(2) {
        if w[0] == w[1] {
            return Err(MatroidError::InvalidParameters(format!(
                "duplicate flat {:?}",
                members(w[0])
            )));
        }
    }

    let index: HashMap<FlatSet, FlatId> = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();

    // F1: the ground set is a flat.
    if !index.contains_key(&full) {
        return Err(MatroidError::AxiomF1Violation);
    }

    // F2: closure under pairwise intersection.
    for (i, &a) in flats.iter().enumerate() {
        for &b in &flats[i + 1..] {
            if !index.contains_key(&(a & b)) {
                return Err(MatroidError::AxiomF2Violation {
                    a: members(a),
                    b: members(b),
                });
            }
        }
    }

    // Cover relation: minimal strict supersets.
    let n = flats.len();
    let mut covers: Vec<Vec<FlatId>> = vec![Vec::new(); n];
    let mut covered_by: Vec<Vec<FlatId>> = vec![Vec::new(); n];
    for (i, &a) in flats.iter().enumerate() {
        let supersets: Vec<FlatId> = (i + 1..n).filter(|&j| a & flats[j] == a).collect();
        'cand: for &j in &supersets {
            for &k in &supersets {
                if k != j && flats[k] & flats[j] == flats[k] && flats[k] != flats[j] {
                    continue 'cand;
                }
            }
            covers[i].push(j);
            covered_by[j].push(i);
        }
    }

    // F3: for every flat, cover differences partition the complement.
    for (i, &f) in flats.iter().enumerate() {
        let mut seen: FlatSet = 0;
        for &j in &covers[i] {
            let diff = flats[j] & !f;
            if seen & diff != 0 {
                return Err(MatroidError::AxiomF3Violation {
                    flat: members(f),
                    element: (seen & diff).trailing_zeros() as usize,
                });
            }
            seen |= diff;
        }
        if seen != full & !f {
            let missing = (full & !f) & !seen;
            return Err(MatroidError::AxiomF3Violation {
                flat: members(f),
                element: missing.trailing_zeros() as usize,
            });
        }
    }

    // Ranks: longest cover chain from the minimal flat. Canonical order is a
    // topological order for inclusion, so one ascending pass suffices.
    let mut rank = vec![0u32; n];
    for j in 0..n {
        for &i in &covered_by[j] {
            rank[j] = rank[j].max(rank[i] + 1);
        }
    }
    debug_assert!((0..n).all(|i| covers[i].iter().all(|&j| rank[j] == rank[i] + 1)));

    Ok(Matroid {
        ground,
        flats,
        index,
        covers,
        covered_by,
        rank,
    })
}

impl Matroid {
    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn num_flats(&self) -> usize {
        self.flats.len()
    }

    pub fn flats(&self) -> &[FlatSet] {
        &self.flats
    }

    pub fn flat(&self, id: FlatId) -> FlatSet {
        self.flats[id]
    }

    pub fn find_flat(&self, set: FlatSet) -> Option<FlatId> {
        self.index.get(&set).copied()
    }

    /// Id of the minimal flat (always 0 in canonical order).
    pub fn bottom(&self) -> FlatId {
        0
    }

    /// Id of the ground set (always last in canonical order).
    pub fn top(&self) -> FlatId {
        self.flats.len() - 1
    }

    /// The set of loops: members of the minimal flat.
    pub fn loops(&self) -> FlatSet {
        self.flats[0]
    }

    pub fn is_loopless(&self) -> bool {
        self.flats[0] == 0
    }

    pub fn rank_of_flat(&self, id: FlatId) -> usize {
        self.rank[id] as usize
    }

    /// Rank of the matroid: rank of the ground set.
    pub fn rank(&self) -> usize {
        self.rank[self.top()] as usize
    }

    pub fn covers_of(&self, id: FlatId) -> &[FlatId] {
        &self.covers[id]
    }

    pub fn covered_by(&self, id: FlatId) -> &[FlatId] {
        &self.covered_by[id]
    }

    /// Flats strictly between the minimal flat and the ground set, in
    /// canonical order. These index the coordinates of class vectors.
    pub fn proper_flats(&self) -> Vec<FlatId> {
        if self.bottom() == self.top() {
            return Vec::new();
        }
        (1..self.flats.len() - 1).collect()
    }

    pub fn num_proper_flats(&self) -> usize {
        self.flats.len().saturating_sub(2)
    }

    pub fn is_proper(&self, id: FlatId) -> bool {
        id != self.bottom() && id != self.top()
    }

    /// Subset relation between flats.
    pub fn leq(&self, a: FlatId, b: FlatId) -> bool {
        self.flats[a] & self.flats[b] == self.flats[a]
    }

    pub fn comparable(&self, a: FlatId, b: FlatId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Ids of flats in the closed interval `[lo, hi]`, ascending.
    pub fn interval_flats(&self, lo: FlatId, hi: FlatId) -> Vec<FlatId> {
        let (l, h) = (self.flats[lo], self.flats[hi]);
        (0..self.flats.len())
            .filter(|&i| {
                let f = self.flats[i];
                l & f == l && f & h == f
            })
            .collect()
    }

    /// Ids of flats strictly between `lo` and `hi`, ascending.
    pub fn open_interval_flats(&self, lo: FlatId, hi: FlatId) -> Vec<FlatId> {
        self.interval_flats(lo, hi)
            .into_iter()
            .filter(|&i| i != lo && i != hi)
            .collect()
    }

    /// Smallest flat containing the given set.
    pub fn closure(&self, set: FlatSet) -> FlatId {
        let mut acc = full_set(self.ground);
        for &f in &self.flats {
            if set & f == set {
                acc &= f;
            }
        }
        self.index[&acc]
    }

    /// Whether `other` is the image of `self` under the element bijection
    /// `perm` (position `i` maps element `i` of `self`).
    pub fn is_relabeling_of(&self, other: &Matroid, perm: &[usize]) -> bool {
        if self.ground != other.ground || perm.len() != self.ground {
            return false;
        }
        let mut seen = vec![false; self.ground];
        for &p in perm {
            if p >= self.ground || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        if self.flats.len() != other.flats.len() {
            return false;
        }
        self.flats.iter().all(|&f| {
            let mapped = members(f)
                .into_iter()
                .fold(0u64, |acc, e| acc | (1u64 << perm[e]));
            other.index.contains_key(&mapped)
        })
    }

    /// SHA-256 of the canonical flats listing, as lowercase hex. Stable
    /// across runs, used to tie certificates to their matroid.
    pub fn canonical_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("ground {}\n", self.ground).as_bytes());
        for &f in &self.flats {
            let m: Vec<String> = members(f).into_iter().map(|e| e.to_string()).collect();
            h.update(m.join(" ").as_bytes());
            h.update(b"\n");
        }
        let digest = h.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Uniform matroid `U_{r,n}`: flats are all subsets of size less than `r`,
/// plus the ground set.
pub fn uniform(r: usize, n: usize) -> Result<Matroid, MatroidError> {
    if r > n {
        return Err(MatroidError::InvalidParameters(format!(
            "uniform rank {r} exceeds ground size {n}"
        )));
    }
    if n > MAX_GROUND {
        return Err(MatroidError::SizeCapExceeded(format!(
            "ground set of {n} exceeds {MAX_GROUND}"
        )));
    }
    let mut count: u128 = 1;
    let mut c: u128 = 1;
    for k in 0..r {
        if k > 0 {
            c = c * (n as u128 - k as u128 + 1) / k as u128;
        }
        count += c;
        if count > MAX_FLATS_HARD as u128 {
            return Err(MatroidError::SizeCapExceeded(format!(
                "uniform({r},{n}) has more than {MAX_FLATS_HARD} flats"
            )));
        }
    }
    let mut flats = Vec::new();
    for k in 0..r {
        subsets_of_size(n, k, &mut flats);
    }
    flats.push(full_set(n));
    validate_flats(n, &flats)
}

/// Append all size-`k` subsets of `{0,..,n-1}` (Gosper's hack).
fn subsets_of_size(n: usize, k: usize, out: &mut Vec<FlatSet>) {
    if k > n {
        return;
    }
    if k == 0 {
        out.push(0);
        return;
    }
    let full = full_set(n);
    let mut v: u64 = (1u64 << k) - 1;
    loop {
        out.push(v);
        if k == n {
            break;
        }
        let c = v & v.wrapping_neg();
        let r = v + c;
        if r & !full != 0 || r == 0 {
            break;
        }
        v = (((r ^ v) >> 2) / c) | r;
        if v & !full != 0 {
            break;
        }
    }
}

/// Minor on the interval `[lo, hi]`: ground set `hi \ lo` relabeled densely,
/// flats `H \ lo` for flats `H` between `lo` and `hi`. Interval minors are
/// always loopless. Returns the minor and the map from new elements to old.
pub fn interval_minor(
    m: &Matroid,
    lo: FlatId,
    hi: FlatId,
) -> Result<(Matroid, Vec<usize>), MatroidError> {
    if !m.leq(lo, hi) {
        return Err(MatroidError::NotComparable);
    }
    let lo_set = m.flat(lo);
    let hi_set = m.flat(hi);
    let elem_map = members(hi_set & !lo_set);
    let mut pos = HashMap::new();
    for (new, &old) in elem_map.iter().enumerate() {
        pos.insert(old, new);
    }
    let mut flats = Vec::new();
    for id in m.interval_flats(lo, hi) {
        let rel = m.flat(id) & !lo_set;
        let mapped = members(rel)
            .into_iter()
            .fold(0u64, |acc, e| acc | (1u64 << pos[&e]));
        flats.push(mapped);
    }
    let minor = validate_flats(elem_map.len(), &flats)?;
    Ok((minor, elem_map))
}

/// Restriction to a flat: the interval from the minimal flat to `hi`.
pub fn restriction(m: &Matroid, hi: FlatId) -> Result<(Matroid, Vec<usize>), MatroidError> {
    interval_minor(m, m.bottom(), hi)
}

/// Contraction by a flat: the interval from `lo` to the ground set.
pub fn contraction(m: &Matroid, lo: FlatId) -> Result<(Matroid, Vec<usize>), MatroidError> {
    interval_minor(m, lo, m.top())
}

/// Direct sum on the disjoint union of the ground sets; the summands'
/// elements keep their order, the second block shifted past the first.
pub fn direct_sum(m1: &Matroid, m2: &Matroid) -> Result<Matroid, MatroidError> {
    let n1 = m1.ground_size();
    let n = n1 + m2.ground_size();
    if n > MAX_GROUND {
        return Err(MatroidError::SizeCapExceeded(format!(
            "direct sum ground set of {n} exceeds {MAX_GROUND}"
        )));
    }
    if m1.num_flats() * m2.num_flats() > MAX_FLATS_HARD {
        return Err(MatroidError::SizeCapExceeded(
            "direct sum flat count exceeds the hard cap".to_string(),
        ));
    }
    let mut flats = Vec::with_capacity(m1.num_flats() * m2.num_flats());
    for &f1 in m1.flats() {
        for &f2 in m2.flats() {
            flats.push(f1 | (f2 << n1));
        }
    }
    validate_flats(n, &flats)
}

/// The `i`-fold truncation: keep flats of rank at most `rank - 1 - i`
/// together with the ground set. Drops the rank by `i`.
pub fn truncation(m: &Matroid, i: usize) -> Result<Matroid, MatroidError> {
    let r = m.rank();
    if i == 0 || i + 1 > r {
        return Err(MatroidError::RankOutOfRange);
    }
    let keep = r - 1 - i;
    let mut flats: Vec<FlatSet> = (0..m.num_flats())
        .filter(|&id| m.rank_of_flat(id) <= keep)
        .map(|id| m.flat(id))
        .collect();
    flats.push(full_set(m.ground_size()));
    validate_flats(m.ground_size(), &flats)
}

/// Comparability graph on proper flats: vertex `k` is the `k`-th proper
/// flat, edges join strictly comparable pairs.
pub fn flat_graph(m: &Matroid) -> crate::graphs::Graph {
    let proper = m.proper_flats();
    let mut edges = Vec::new();
    for (a, &i) in proper.iter().enumerate() {
        for (b, &j) in proper.iter().enumerate().skip(a + 1) {
            if m.comparable(i, j) {
                edges.push((a, b));
            }
        }
    }
    crate::graphs::Graph::new(proper.len(), edges)
}

/// Number of independent sets of each size, `f_0 ..= f_rank`. A set is
/// independent when the rank of its closure equals its cardinality.
/// Enumerates all subsets, so the ground set must be small.
pub fn independent_set_counts(m: &Matroid) -> Result<Vec<BigInt>, MatroidError> {
    let n = m.ground_size();
    if n > MAX_ENUM_GROUND {
        return Err(MatroidError::SizeCapExceeded(format!(
            "subset enumeration over {n} elements exceeds {MAX_ENUM_GROUND}"
        )));
    }
    let mut counts = vec![BigInt::from(0); m.rank() + 1];
    for s in 0..(1u64 << n) {
        let size = s.count_ones() as usize;
        if size > m.rank() {
            continue;
        }
        let cl = m.closure(s);
        if m.rank_of_flat(cl) == size {
            counts[size] += 1;
        }
    }
    Ok(counts)
}

/// A maximal-inclusion chain fragment: proper flats in strictly increasing
/// order, bracketed by the minimal flat and the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    ids: Vec<FlatId>,
}

impl Chain {
    /// Build a chain from its interior (proper) flats, which must be listed
    /// in strictly increasing inclusion order. Endpoints are added here.
    pub fn new(m: &Matroid, interior: &[FlatId]) -> Result<Chain, MatroidError> {
        let mut ids = Vec::with_capacity(interior.len() + 2);
        ids.push(m.bottom());
        for &f in interior {
            if f >= m.num_flats() || !m.is_proper(f) {
                return Err(MatroidError::ImproperFlat);
            }
            ids.push(f);
        }
        ids.push(m.top());
        for w in ids.windows(2) {
            if w[0] == w[1] || !m.leq(w[0], w[1]) {
                return Err(MatroidError::NotComparable);
            }
        }
        Ok(Chain { ids })
    }

    /// All flats including both endpoints.
    pub fn flats(&self) -> &[FlatId] {
        &self.ids
    }

    /// The proper flats strictly inside the chain.
    pub fn interior(&self) -> &[FlatId] {
        &self.ids[1..self.ids.len() - 1]
    }

    /// Number of interior flats.
    pub fn len(&self) -> usize {
        self.ids.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Parse the flats file format: a JSON object
/// `{"ground": n, "flats": [[..], ..]}` where each flat is a strictly
/// increasing list of elements and no flat repeats.
pub fn parse_flats_text(text: &str) -> Result<Matroid, MatroidError> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| MatroidError::InvalidParameters(format!("malformed JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| MatroidError::InvalidParameters("expected a JSON object".into()))?;
    let ground =
        obj.get("ground").and_then(|g| g.as_u64()).ok_or_else(|| {
            MatroidError::InvalidParameters("missing integer field 'ground'".into())
        })? as usize;
    let flats_v = obj
        .get("flats")
        .and_then(|f| f.as_array())
        .ok_or_else(|| MatroidError::InvalidParameters("missing array field 'flats'".into()))?;
    let mut flats = Vec::with_capacity(flats_v.len());
    for fv in flats_v {
        let arr = fv
            .as_array()
            .ok_or_else(|| MatroidError::InvalidParameters("flat must be an array".into()))?;
        let mut set: FlatSet = 0;
        let mut prev: Option<usize> = None;
        for ev in arr {
            let e = ev.as_u64().ok_or_else(|| {
                MatroidError::InvalidParameters("flat members must be nonnegative integers".into())
            })? as usize;
            if e >= ground {
                return Err(MatroidError::ElementOutOfRange(e));
            }
            if let Some(p) = prev {
                if e <= p {
                    return Err(MatroidError::InvalidParameters(
                        "flat members must be strictly increasing".into(),
                    ));
                }
            }
            prev = Some(e);
            set |= 1u64 << e;
        }
        flats.push(set);
    }
    validate_flats(ground, &flats)
}

/// Canonical text form of a matroid, inverse to [`parse_flats_text`].
pub fn write_flats_text(m: &Matroid) -> String {
    let flats: Vec<String> = m
        .flats()
        .iter()
        .map(|&f| {
            let elems: Vec<String> = members(f).iter().map(|e| e.to_string()).collect();
            format!("[{}]", elems.join(","))
        })
        .collect();
    format!(
        "{{\"ground\": {}, \"flats\": [{}]}}",
        m.ground_size(),
        flats.join(", ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn set(elems: &[usize]) -> FlatSet {
        elems.iter().fold(0, |acc, &e| acc | (1u64 << e))
    }

    /// Independent re-implementation of the axioms over `BTreeSet`, used as
    /// an oracle against the bitset validator.
    fn oracle_is_matroid(ground: usize, flats: &[FlatSet]) -> bool {
        let fam: Vec<BTreeSet<usize>> = flats
            .iter()
            .map(|&f| members(f).into_iter().collect())
            .collect();
        let e: BTreeSet<usize> = (0..ground).collect();
        if !fam.contains(&e) {
            return false;
        }
        let mut uniq = fam.clone();
        uniq.sort();
        uniq.dedup();
        if uniq.len() != fam.len() {
            return false;
        }
        for a in &fam {
            for b in &fam {
                let inter: BTreeSet<usize> = a.intersection(b).cloned().collect();
                if !fam.contains(&inter) {
                    return false;
                }
            }
        }
        for f in &fam {
            let supersets: Vec<&BTreeSet<usize>> =
                fam.iter().filter(|g| g.is_superset(f) && *g != f).collect();
            let covers: Vec<&BTreeSet<usize>> = supersets
                .iter()
                .filter(|g| {
                    !supersets
                        .iter()
                        .any(|h| h.is_subset(g) && *h != **g && h.is_superset(f) && *h != f)
                })
                .cloned()
                .collect();
            let mut count = vec![0usize; ground];
            for g in &covers {
                for &x in g.difference(f) {
                    count[x] += 1;
                }
            }
            for x in e.difference(f) {
                if count[*x] != 1 {
                    return false;
                }
            }
            for x in f {
                if count[*x] != 0 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn validator_agrees_with_oracle() {
        let families: Vec<(usize, Vec<FlatSet>)> = vec![
            (3, vec![0, set(&[0]), set(&[1]), set(&[2]), set(&[0, 1, 2])]),
            (3, vec![0, set(&[1]), set(&[2]), set(&[0, 1, 2])]),
            (3, vec![0, set(&[0, 1]), set(&[1, 2]), set(&[0, 1, 2])]),
            (2, vec![0, set(&[0]), set(&[1]), set(&[0, 1])]),
            (2, vec![set(&[0, 1])]),
            (1, vec![0, set(&[0])]),
            (4, uniform(2, 4).unwrap().flats().to_vec()),
            (4, uniform(3, 4).unwrap().flats().to_vec()),
            (3, vec![0, set(&[0]), set(&[1]), set(&[2])]),
        ];
        for (ground, flats) in families {
            let ours = validate_flats(ground, &flats).is_ok();
            let oracle = oracle_is_matroid(ground, &flats);
            assert_eq!(ours, oracle, "disagreement on {flats:?} over {ground}");
        }
    }

    #[test]
    fn axiom_violations_carry_witnesses() {
        // Missing ground set.
        let e = validate_flats(2, &[0, set(&[0]), set(&[1])]).unwrap_err();
        assert_eq!(e, MatroidError::AxiomF1Violation);
        // Missing intersection {1}.
        let e = validate_flats(3, &[0, set(&[0, 1]), set(&[1, 2]), set(&[0, 1, 2])]).unwrap_err();
        match e {
            MatroidError::AxiomF2Violation { a, b } => {
                assert_eq!((a, b), (vec![0, 1], vec![1, 2]));
            }
            other => panic!("expected F2 violation, got {other:?}"),
        }
        // Element 0 is in no cover difference of the empty flat.
        let e = validate_flats(3, &[0, set(&[1]), set(&[2]), set(&[0, 1, 2])]).unwrap_err();
        match e {
            MatroidError::AxiomF3Violation { flat, element } => {
                assert_eq!((flat, element), (vec![], 0));
            }
            other => panic!("expected F3 violation, got {other:?}"),
        }
    }

    #[test]
    fn uniform_shapes() {
        let u23 = uniform(2, 3).unwrap();
        assert_eq!(u23.num_flats(), 5);
        assert_eq!(u23.rank(), 2);
        assert!(u23.is_loopless());

        let u34 = uniform(3, 4).unwrap();
        assert_eq!(u34.num_flats(), 12);
        assert_eq!(u34.rank(), 3);

        let u00 = uniform(0, 0).unwrap();
        assert_eq!(u00.num_flats(), 1);
        assert_eq!(u00.rank(), 0);
        assert_eq!(u00.bottom(), u00.top());

        let u11 = uniform(1, 1).unwrap();
        assert_eq!(u11.num_flats(), 2);
        assert_eq!(u11.rank(), 1);

        // Boolean lattice.
        let u66 = uniform(6, 6).unwrap();
        assert_eq!(u66.num_flats(), 64);
        assert_eq!(u66.rank(), 6);

        // Rank zero on a nonempty ground set: everything is a loop.
        let u03 = uniform(0, 3).unwrap();
        assert_eq!(u03.num_flats(), 1);
        assert!(!u03.is_loopless());
        assert_eq!(u03.loops(), set(&[0, 1, 2]));
    }

    #[test]
    fn canonical_order_is_cardinality_then_lex() {
        let u34 = uniform(3, 4).unwrap();
        let expect: Vec<FlatSet> = vec![
            0,
            set(&[0]),
            set(&[1]),
            set(&[2]),
            set(&[3]),
            set(&[0, 1]),
            set(&[0, 2]),
            set(&[0, 3]),
            set(&[1, 2]),
            set(&[1, 3]),
            set(&[2, 3]),
            set(&[0, 1, 2, 3]),
        ];
        assert_eq!(u34.flats(), expect.as_slice());
        // {0,3} before {1,2}: lex order on member lists, not bitset value.
        assert_eq!(
            flat_order(set(&[0, 3]), set(&[1, 2])),
            std::cmp::Ordering::Less
        );
    }

    #[test]
    fn ranks_follow_cover_chains() {
        let m = uniform(3, 5).unwrap();
        for id in 0..m.num_flats() {
            let expected = if id == m.top() {
                3
            } else {
                m.flat(id).count_ones() as usize
            };
            assert_eq!(m.rank_of_flat(id), expected);
        }
    }

    #[test]
    fn closure_picks_smallest_containing_flat() {
        let m = uniform(2, 3).unwrap();
        assert_eq!(m.flat(m.closure(0)), 0);
        assert_eq!(m.flat(m.closure(set(&[1]))), set(&[1]));
        assert_eq!(m.flat(m.closure(set(&[0, 2]))), set(&[0, 1, 2]));
    }

    #[test]
    fn interval_minor_relabels_densely() {
        let m = uniform(3, 4).unwrap();
        let lo = m.find_flat(set(&[1])).unwrap();
        let (minor, map) = interval_minor(&m, lo, m.top()).unwrap();
        assert_eq!(map, vec![0, 2, 3]);
        assert!(minor.is_loopless());
        let u23 = uniform(2, 3).unwrap();
        assert_eq!(minor, u23);
        // Degenerate interval [F, F] is the rank-zero matroid on nothing.
        let (point, _) = interval_minor(&m, lo, lo).unwrap();
        assert_eq!(point.num_flats(), 1);
        assert_eq!(point.rank(), 0);
        assert!(interval_minor(&m, m.top(), lo).is_err());
    }

    #[test]
    fn direct_sum_multiplies_flats_and_adds_ranks() {
        let u11 = uniform(1, 1).unwrap();
        let sum = direct_sum(&u11, &u11).unwrap();
        assert_eq!(sum, uniform(2, 2).unwrap());

        let u23 = uniform(2, 3).unwrap();
        let s = direct_sum(&u23, &u11).unwrap();
        assert_eq!(s.num_flats(), 10);
        assert_eq!(s.rank(), 3);
        assert!(s.is_loopless());

        // Summing with the empty matroid changes nothing.
        let empty = uniform(0, 0).unwrap();
        assert_eq!(direct_sum(&u23, &empty).unwrap(), u23);
    }

    #[test]
    fn truncation_lowers_rank_by_one_step() {
        let u34 = uniform(3, 4).unwrap();
        assert_eq!(truncation(&u34, 1).unwrap(), uniform(2, 4).unwrap());
        assert_eq!(truncation(&u34, 2).unwrap(), uniform(1, 4).unwrap());
        assert!(truncation(&u34, 3).is_err());
        assert!(truncation(&u34, 0).is_err());
        // Iterating one-step truncations agrees with the i-fold version.
        let u56 = uniform(5, 6).unwrap();
        let twice = truncation(&truncation(&u56, 1).unwrap(), 1).unwrap();
        assert_eq!(twice, truncation(&u56, 2).unwrap());
    }

    #[test]
    fn flat_graph_connectivity() {
        // Rank at least three gives a connected comparability graph.
        for m in [uniform(3, 4).unwrap(), uniform(4, 5).unwrap()] {
            let g = flat_graph(&m);
            assert!(g.is_connected());
        }
        // Rank two: proper flats are pairwise incomparable.
        let g2 = flat_graph(&uniform(2, 3).unwrap());
        assert_eq!(g2.edge_count(), 0);
        assert_eq!(g2.component_count(), 3);
    }

    #[test]
    fn independent_counts_match_binomials_on_uniform() {
        let m = uniform(3, 4).unwrap();
        let f = independent_set_counts(&m).unwrap();
        let expect: Vec<BigInt> = [1u32, 4, 6, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(f, expect);
        let u23 = uniform(2, 3).unwrap();
        let f = independent_set_counts(&u23).unwrap();
        let expect: Vec<BigInt> = [1u32, 3, 3].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(f, expect);
        // Loops are never independent.
        let u03 = uniform(0, 3).unwrap();
        assert_eq!(independent_set_counts(&u03).unwrap(), vec![BigInt::from(1)]);
    }

    #[test]
    fn chains_validate_inclusion() {
        let m = uniform(3, 4).unwrap();
        let a = m.find_flat(set(&[1])).unwrap();
        let b = m.find_flat(set(&[1, 2])).unwrap();
        let c = Chain::new(&m, &[a, b]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.flats().first(), Some(&m.bottom()));
        assert_eq!(c.flats().last(), Some(&m.top()));
        assert!(Chain::new(&m, &[b, a]).is_err());
        assert!(Chain::new(&m, &[m.top()]).is_err());
        let empty = Chain::new(&m, &[]).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn relabeling_detection() {
        let u23 = uniform(2, 3).unwrap();
        assert!(u23.is_relabeling_of(&u23, &[1, 2, 0]));
        let u13 = uniform(1, 3).unwrap();
        assert!(!u23.is_relabeling_of(&u13, &[0, 1, 2]));
    }

    #[test]
    fn flats_text_round_trip() {
        let m = uniform(2, 3).unwrap();
        let text = write_flats_text(&m);
        assert_eq!(
            text,
            "{\"ground\": 3, \"flats\": [[], [0], [1], [2], [0,1,2]]}"
        );
        let back = parse_flats_text(&text).unwrap();
        assert_eq!(back, m);
        // Unsorted members and duplicates are rejected.
        assert!(parse_flats_text("{\"ground\": 2, \"flats\": [[1,0],[0,1]]}").is_err());
        assert!(parse_flats_text("{\"ground\": 2, \"flats\": [[0,1],[0,1]]}").is_err());
        assert!(parse_flats_text("{\"ground\": 2, \"flats\": [[0,5],[0,1]]}").is_err());
    }

    #[test]
    fn hash_is_stable_under_input_order() {
        let a = validate_flats(3, &[0, set(&[0]), set(&[1]), set(&[2]), set(&[0, 1, 2])]).unwrap();
        let b = validate_flats(3, &[set(&[0, 1, 2]), set(&[2]), set(&[1]), set(&[0]), 0]).unwrap();
        assert_eq!(a.canonical_hash(), b.canonical_hash());
    }
}
