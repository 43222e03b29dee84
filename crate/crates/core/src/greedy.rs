//! Greedy extraction of a pair basis from an alternating map.
//!
//! Given an ordering `u_1 < ... < u_n` of the generators, pairs are ordered
//! first by their larger element and then by the remaining one. Scanning the
//! pairs in that order and keeping every pair whose value is not yet in the
//! span of the kept values yields a set of `m = dim V` pairs whose values form
//! a basis of `V`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::altmap::{pair_count, AltMap, BasisChange, Pair};
use crate::error::{Error, Result};
use crate::fieldmat::{self, SpanTracker};

/// A total order on the generators, listed from smallest to largest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Order {
    seq: Vec<usize>,
    rank: Vec<usize>,
}

impl Order {
    pub fn natural(n: usize) -> Self {
        Self {
            seq: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    /// `seq[k]` is the 0-based generator in position `k`.
    pub fn from_sequence(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &g) in seq.iter().enumerate() {
            if g >= n || rank[g] != usize::MAX {
                return Err(Error::BadOrder(format!(
                    "{seq:?} is not a permutation of 0..{n}"
                )));
            }
            rank[g] = pos;
        }
        Ok(Self { seq, rank })
    }

    /// Parse a comma-separated 1-based permutation such as `"2,1,3"`.
    pub fn parse_one_based(text: &str, n: usize) -> Result<Self> {
        let seq = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&x| x >= 1)
                    .map(|x| x - 1)
                    .ok_or_else(|| Error::BadOrder(format!("`{}` is not a positive index", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        if seq.len() != n {
            return Err(Error::BadOrder(format!(
                "expected {n} indices, got {}",
                seq.len()
            )));
        }
        Self::from_sequence(seq)
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn rank(&self, g: usize) -> usize {
        self.rank[g]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn is_natural(&self) -> bool {
        self.seq.iter().enumerate().all(|(k, &g)| k == g)
    }
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.seq.iter().map(|g| g + 1).collect();
        one_based.serialize(s)
    }
}

/// A 3-subset of generators, stored ascending by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Triple {
    pub fn new(x: usize, y: usize, z: usize) -> Self {
        let mut v = [x, y, z];
        v.sort_unstable();
        assert!(v[0] < v[1] && v[1] < v[2], "a triple needs three distinct indices");
        Self {
            a: v[0],
            b: v[1],
            c: v[2],
        }
    }

    pub fn one_based(x: usize, y: usize, z: usize) -> Self {
        Self::new(x - 1, y - 1, z - 1)
    }

    pub fn members(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains_pair(&self, pair: Pair) -> bool {
        let m = self.members();
        m.contains(&pair.i) && m.contains(&pair.j)
    }

    /// Members sorted ascending under `order`.
    pub fn oriented(&self, order: &Order) -> [usize; 3] {
        let mut m = self.members();
        m.sort_by_key(|&g| order.rank(g));
        m
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{},{}}}", self.a + 1, self.b + 1, self.c + 1)
    }
}

impl Serialize for Triple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a + 1, self.b + 1, self.c + 1].serialize(s)
    }
}

fn pair_key(p: Pair, order: &Order) -> (usize, usize) {
    let (ri, rj) = (order.rank(p.i), order.rank(p.j));
    (ri.max(rj), ri.min(rj))
}

/// Compare pairs by their larger element, then by the other one.
pub fn pair_cmp(x: Pair, y: Pair, order: &Order) -> Ordering {
    pair_key(x, order).cmp(&pair_key(y, order))
}

fn triple_key(t: Triple, order: &Order) -> [usize; 3] {
    let mut r = t.members().map(|g| order.rank(g));
    r.sort_unstable_by(|a, b| b.cmp(a));
    r
}

/// Compare triples by their largest element, then by the remaining pair.
pub fn triple_cmp(x: Triple, y: Triple, order: &Order) -> Ordering {
    triple_key(x, order).cmp(&triple_key(y, order))
}

/// All pairs on `n` generators, ascending under `order`.
pub fn pairs_in_order(n: usize, order: &Order) -> Vec<Pair> {
    let mut v = Vec::with_capacity(pair_count(n));
    for hi in 0..n {
        for lo in 0..hi {
            v.push(Pair::new(order.seq[lo], order.seq[hi]));
        }
    }
    v
}

/// All triples on `n` generators, ascending under `order`.
pub fn triples_in_order(n: usize, order: &Order) -> Vec<Triple> {
    let mut v = Vec::new();
    for c in 0..n {
        for b in 0..c {
            for a in 0..b {
                v.push(Triple::new(order.seq[a], order.seq[b], order.seq[c]));
            }
        }
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub pair: Pair,
    pub accepted: bool,
    /// Dimension of the span of the kept values before this pair was examined.
    pub rank_before: usize,
}

/// Greedy output: the pair set, the chosen basis of `V`, and the scan trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairBasis {
    pub order: Order,
    pub pairs: Vec<Pair>,
    /// `A(u_i, u_j)` for each kept pair `{i, j}`, stored in `i < j` orientation.
    pub basis: Vec<Vec<u32>>,
    pub trace: Vec<TraceStep>,
}

impl PairBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The prefix `B_k` of the first `k` kept pairs.
    pub fn prefix(&self, k: usize) -> &[Pair] {
        &self.pairs[..k]
    }
}

pub fn construct_pair_basis(a: &AltMap, order: &Order) -> Result<PairBasis> {
    if order.len() != a.dim_u() {
        return Err(Error::BadOrder(format!(
            "order has {} entries, dimU = {}",
            order.len(),
            a.dim_u()
        )));
    }
    a.validate()?;
    let m = a.dim_v();
    if m == 0 {
        return Err(Error::HypothesisViolated(
            "pair basis needs dimV >= 1".into(),
        ));
    }
    let mut tracker = SpanTracker::new(a.modulus(), m);
    let mut pairs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut trace = Vec::new();
    for pair in pairs_in_order(a.dim_u(), order) {
        let rank_before = tracker.rank();
        let value = a.pair_value(pair);
        let accepted = tracker.insert(value);
        trace.push(TraceStep {
            pair,
            accepted,
            rank_before,
        });
        if accepted {
            pairs.push(pair);
            basis.push(value.to_vec());
            if pairs.len() == m {
                break;
            }
        }
    }
    Ok(PairBasis {
        order: order.clone(),
        pairs,
        basis,
        trace,
    })
}

/// Whether one vertex meets every pair; returns that apex (0-based).
///
/// A single pair counts as a tree with its smaller index as apex; an empty
/// set is not a tree.
pub fn is_tree_of_height_one(pairs: &[Pair]) -> (bool, Option<usize>) {
    let Some(first) = pairs.first() else {
        return (false, None);
    };
    for apex in [first.i, first.j] {
        if pairs.iter().all(|p| p.contains(apex)) {
            return (true, Some(apex));
        }
    }
    (false, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationStep {
    /// The greedy run on the input basis.
    Initial,
    /// After moving the star apex and its partners to the front.
    Relabel,
    /// After replacing the tail by a kernel basis of `u -> A(u_1, u)`.
    Kernel,
    /// After exposing a nonzero value among the tail generators.
    TailPair,
    /// After exposing a tail value outside the line of its star value.
    TailLine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    NonTree { step: NormalizationStep },
    Normalized { witness: NormalFormWitness },
}

/// The four normal-form properties of a star-shaped pair basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormalFormWitness {
    /// Pair basis is `{1,2}, ..., {1,m+1}`.
    pub star: bool,
    /// `A(u_1, u_i) = 0` for `i >= m+2`.
    pub apex_kills_tail: bool,
    /// `A(u_i, u_j) = 0` for `m+1 < i < j`.
    pub tail_isotropic: bool,
    /// `A(u_i, u_j)` lies on the line of `A(u_1, u_i)` for `2 <= i <= m+1 < j`.
    pub tail_on_lines: bool,
}

impl NormalFormWitness {
    pub fn all(&self) -> bool {
        self.star && self.apex_kills_tail && self.tail_isotropic && self.tail_on_lines
    }
}

/// Check the four properties on a map in its current basis, with natural order.
pub fn check_normal_form(a: &AltMap, pb: &PairBasis) -> NormalFormWitness {
    let (n, m, p) = (a.dim_u(), a.dim_v(), a.modulus());
    let star_pairs: Vec<Pair> = (1..=m).map(|i| Pair::new(0, i)).collect();
    let is_zero = |v: &[u32]| v.iter().all(|&x| x == 0);
    let star = pb.order.is_natural() && pb.pairs == star_pairs;
    let apex_kills_tail = (m + 1..n).all(|i| is_zero(a.pair_value(Pair::new(0, i))));
    let tail_isotropic = (m + 1..n).all(|i| (i + 1..n).all(|j| is_zero(a.pair_value(Pair::new(i, j)))));
    let tail_on_lines = (1..=m.min(n.saturating_sub(1))).all(|i| {
        let line = vec![a.value(0, i)];
        (m + 1..n).all(|j| fieldmat::in_span(&a.value(i, j), &line, p))
    });
    NormalFormWitness {
        star,
        apex_kills_tail,
        tail_isotropic,
        tail_on_lines,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationOutcome {
    /// Cumulative change from the input basis; columns are the new generators.
    pub change: BasisChange,
    /// The input map expressed in the new basis.
    pub map: AltMap,
    /// Greedy pair basis of `map` under the natural order.
    pub pair_basis: PairBasis,
    pub classification: Classification,
}

impl NormalizationOutcome {
    /// Re-derive the classification from `original` and the recorded change.
    pub fn verify(&self, original: &AltMap) -> bool {
        let Ok(map) = original.change_basis(&self.change) else {
            return false;
        };
        if map != self.map {
            return false;
        }
        let Ok(pb) = construct_pair_basis(&map, &Order::natural(map.dim_u())) else {
            return false;
        };
        match &self.classification {
            Classification::NonTree { .. } => !is_tree_of_height_one(&pb.pairs).0,
            Classification::Normalized { witness } => {
                let fresh = check_normal_form(&map, &pb);
                fresh.all() && fresh == *witness
            }
        }
    }
}

struct Normalizer<'a> {
    original: &'a AltMap,
    change: BasisChange,
    map: AltMap,
    pb: PairBasis,
}

impl<'a> Normalizer<'a> {
    fn new(original: &'a AltMap) -> Result<Self> {
        let n = original.dim_u();
        let pb = construct_pair_basis(original, &Order::natural(n))?;
        Ok(Self {
            original,
            change: BasisChange::identity(original.modulus(), n),
            map: original.clone(),
            pb,
        })
    }

    /// Apply a further change (in current coordinates) and rerun the greedy scan.
    fn rebase(&mut self, step: BasisChange) -> Result<()> {
        self.change = self.change.then(&step);
        self.map = self.original.change_basis(&self.change)?;
        self.pb = construct_pair_basis(&self.map, &Order::natural(self.map.dim_u()))?;
        Ok(())
    }

    fn non_tree(&self) -> bool {
        !is_tree_of_height_one(&self.pb.pairs).0
    }

    fn finish(self, classification: Classification) -> NormalizationOutcome {
        NormalizationOutcome {
            change: self.change,
            map: self.map,
            pair_basis: self.pb,
            classification,
        }
    }

    /// Move generators `front` to positions 0.., keeping the rest in order.
    fn front_permutation(n: usize, front: &[usize]) -> Vec<usize> {
        let mut perm = front.to_vec();
        perm.extend((0..n).filter(|g| !front.contains(g)));
        perm
    }
}

/// Re-base `U` until the greedy pair basis is either not a star, or a star in
/// normal form. Requires `dim V > 2` and `dim U > dim V + 1`.
pub fn normalize_prop24(a: &AltMap) -> Result<NormalizationOutcome> {
    let (n, m, p) = (a.dim_u(), a.dim_v(), a.modulus());
    if m <= 2 || n <= m + 1 {
        return Err(Error::HypothesisViolated(format!(
            "normalization needs dimV > 2 and dimU > dimV + 1 (dimU = {n}, dimV = {m})"
        )));
    }
    let mut st = Normalizer::new(a)?;
    if st.non_tree() {
        return Ok(st.finish(Classification::NonTree {
            step: NormalizationStep::Initial,
        }));
    }

    // Relabel: apex first, then its partners in construction order.
    let (_, apex) = is_tree_of_height_one(&st.pb.pairs);
    let apex = apex.expect("tree has an apex");
    let mut front = vec![apex];
    front.extend(st.pb.pairs.iter().map(|q| if q.i == apex { q.j } else { q.i }));
    st.rebase(BasisChange::permutation(p, &Normalizer::front_permutation(n, &front))?)?;
    if st.non_tree() {
        return Ok(st.finish(Classification::NonTree {
            step: NormalizationStep::Relabel,
        }));
    }

    // Replace the tail by a basis of ker(u -> A(u_1, u)) extending u_1.
    let mut columns: Vec<Vec<u32>> = (0..=m)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e
        })
        .collect();
    let apex_row = {
        let mut rows = Vec::with_capacity(m);
        for v in 0..m {
            rows.push((0..n).map(|u| st.map.value(0, u)[v]).collect::<Vec<u32>>());
        }
        fieldmat::FpMatrix::from_residue_rows(p as u64, n, &rows)?
    };
    let mut kernel_span = SpanTracker::new(p, n);
    kernel_span.insert(&columns[0]);
    for k in apex_row.kernel_basis() {
        if kernel_span.insert(&k) {
            columns.push(k);
        }
    }
    if columns.len() != n {
        return Err(Error::Internal(format!(
            "kernel of u -> A(u_1, u) has dimension {} instead of {}",
            kernel_span.rank(),
            n - m
        )));
    }
    st.rebase(BasisChange::from_columns(p, &columns)?)?;
    if st.non_tree() {
        return Ok(st.finish(Classification::NonTree {
            step: NormalizationStep::Kernel,
        }));
    }

    // A nonzero value between two tail generators exposes {2,3} and {1,4}.
    let zero = |v: &[u32]| v.iter().all(|&x| x == 0);
    let tail_pair = (m + 1..n)
        .flat_map(|r| (r + 1..n).map(move |s| (r, s)))
        .find(|&(r, s)| !zero(st.map.pair_value(Pair::new(r, s))));
    if let Some((r, s)) = tail_pair {
        let value = st.map.value(r, s);
        let j = (1..=m)
            .find(|&j| fieldmat::rank_of(&[value.clone(), st.map.value(0, j)], p) == 2)
            .ok_or_else(|| Error::Internal("no star value independent of the tail value".into()))?;
        st.rebase(BasisChange::permutation(p, &Normalizer::front_permutation(n, &[0, r, s, j]))?)?;
        if !st.non_tree() {
            return Err(Error::Internal("tail reorder did not break the star".into()));
        }
        return Ok(st.finish(Classification::NonTree {
            step: NormalizationStep::TailPair,
        }));
    }

    // A tail value off the line of its star value exposes {1,2}, {2,3}, {1,4}.
    let off_line = (1..=m)
        .flat_map(|r| (m + 1..n).map(move |s| (r, s)))
        .find(|&(r, s)| !fieldmat::in_span(&st.map.value(r, s), &[st.map.value(0, r)], p));
    if let Some((r, s)) = off_line {
        let base = [st.map.value(0, r), st.map.value(r, s)];
        let j = (1..=m)
            .filter(|&j| j != r)
            .find(|&j| {
                let mut trio = base.to_vec();
                trio.push(st.map.value(0, j));
                fieldmat::rank_of(&trio, p) == 3
            })
            .ok_or_else(|| Error::Internal("no third independent star value".into()))?;
        st.rebase(BasisChange::permutation(p, &Normalizer::front_permutation(n, &[0, r, s, j]))?)?;
        if !st.non_tree() {
            return Err(Error::Internal("line reorder did not break the star".into()));
        }
        return Ok(st.finish(Classification::NonTree {
            step: NormalizationStep::TailLine,
        }));
    }

    let witness = check_normal_form(&st.map, &st.pb);
    if !witness.all() {
        return Err(Error::Internal(format!("normal form check failed: {witness:?}")));
    }
    Ok(st.finish(Classification::Normalized { witness }))
}
