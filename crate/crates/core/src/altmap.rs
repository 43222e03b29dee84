//! Alternating bilinear maps `A: U x U -> V` over `F_p`.
//!
//! A map is stored by its values on basis pairs `(e_i, e_j)` with `i < j`;
//! `A(e_j, e_i) = -A(e_i, e_j)` and `A(e_i, e_i) = 0` are implied. Indices are
//! 0-based in the API and 1-based in the JSON document.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldmat::{self, check_modulus, FpMatrix, SpanTracker};

/// An unordered pair `{i, j}` of 0-based generator indices, stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub i: usize,
    pub j: usize,
}

impl Pair {
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "a pair needs two distinct indices");
        Self {
            i: a.min(b),
            j: a.max(b),
        }
    }

    /// Build from 1-based indices, as written in documents and the literature.
    pub fn one_based(a: usize, b: usize) -> Self {
        Self::new(a - 1, b - 1)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    pub fn to_one_based(self) -> [usize; 2] {
        [self.i + 1, self.j + 1]
    }
}

impl std::fmt::Display for Pair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}", self.i + 1, self.j + 1)
    }
}

impl Serialize for Pair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        if a == 0 || b == 0 || a == b {
            return Err(serde::de::Error::custom("pair needs distinct 1-based indices"));
        }
        Ok(Pair::one_based(a, b))
    }
}

/// Number of unordered pairs from `n` elements.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[inline]
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AltMap {
    p: u32,
    n: usize,
    m: usize,
    /// Values for pairs `i < j` in lexicographic order, each of length `m`.
    table: Vec<Vec<u32>>,
}

impl AltMap {
    /// The zero map `F_p^n x F_p^n -> F_p^m`.
    pub fn zero(p: u64, n: usize, m: usize) -> Result<Self> {
        let p = check_modulus(p)?;
        Ok(Self {
            p,
            n,
            m,
            table: vec![vec![0; m]; pair_count(n)],
        })
    }

    /// Build from `(i, j, value)` triples with 1-based `i < j`. Missing pairs are zero.
    pub fn from_one_based(p: u64, n: usize, m: usize, entries: &[(usize, usize, &[i64])]) -> Result<Self> {
        let mut a = Self::zero(p, n, m)?;
        let mut seen = HashSet::new();
        for &(i, j, value) in entries {
            if i < 1 || j <= i || j > n {
                return Err(Error::IndexOutOfRange {
                    i: i as i64,
                    j: j as i64,
                    n,
                });
            }
            if !seen.insert((i, j)) {
                return Err(Error::DuplicatePair { i, j });
            }
            a.set(Pair::one_based(i, j), value)?;
        }
        Ok(a)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// `dim U`.
    pub fn dim_u(&self) -> usize {
        self.n
    }

    /// `dim V`.
    pub fn dim_v(&self) -> usize {
        self.m
    }

    /// Set `A(e_i, e_j)` for `pair = {i, j}` with `i < j`.
    pub fn set(&mut self, pair: Pair, value: &[i64]) -> Result<()> {
        if pair.j >= self.n {
            return Err(Error::IndexOutOfRange {
                i: pair.i as i64 + 1,
                j: pair.j as i64 + 1,
                n: self.n,
            });
        }
        if value.len() != self.m {
            return Err(Error::BadVectorLength {
                i: pair.i + 1,
                j: pair.j + 1,
                got: value.len(),
                expected: self.m,
            });
        }
        let idx = pair_index(self.n, pair.i, pair.j);
        self.table[idx] = value.iter().map(|&x| fieldmat::reduce(x, self.p)).collect();
        Ok(())
    }

    /// Stored value of a pair (`i < j` orientation).
    pub fn pair_value(&self, pair: Pair) -> &[u32] {
        &self.table[pair_index(self.n, pair.i, pair.j)]
    }

    /// `A(e_a, e_b)` for arbitrary basis indices, with antisymmetry applied.
    pub fn value(&self, a: usize, b: usize) -> Vec<u32> {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => vec![0; self.m],
            std::cmp::Ordering::Less => self.pair_value(Pair { i: a, j: b }).to_vec(),
            std::cmp::Ordering::Greater => self
                .pair_value(Pair { i: b, j: a })
                .iter()
                .map(|&x| fieldmat::neg(x, self.p))
                .collect(),
        }
    }

    /// All pairs in lexicographic order together with their values.
    pub fn pairs(&self) -> impl Iterator<Item = (Pair, &[u32])> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| Pair { i, j }))
            .zip(self.table.iter().map(|v| v.as_slice()))
    }

    /// Dimension of the span of all pair-values.
    pub fn image_rank(&self) -> usize {
        let mut t = SpanTracker::new(self.p, self.m);
        for v in &self.table {
            t.insert(v);
        }
        t.rank()
    }

    /// Checks that the image of the map spans `V`. Vacuous when `dim V = 0`.
    pub fn validate(&self) -> Result<()> {
        let rank = self.image_rank();
        if rank != self.m {
            return Err(Error::ImageDoesNotSpan { rank, dim: self.m });
        }
        Ok(())
    }

    /// `A(x, y)` by bilinear extension.
    pub fn apply(&self, x: &[u32], y: &[u32]) -> Result<Vec<u32>> {
        for v in [x, y] {
            if v.len() != self.n {
                return Err(Error::LengthMismatch {
                    expected: self.n,
                    got: v.len(),
                });
            }
        }
        let p = self.p;
        let mut out = vec![0u32; self.m];
        for (pair, value) in self.pairs() {
            // coefficient of A(e_i, e_j) is x_i y_j - x_j y_i
            let c = fieldmat::sub(
                fieldmat::mul(x[pair.i] % p, y[pair.j] % p, p),
                fieldmat::mul(x[pair.j] % p, y[pair.i] % p, p),
                p,
            );
            fieldmat::axpy(&mut out, c, value, p);
        }
        Ok(out)
    }

    /// The `(m*n) x n` matrix whose kernel is the radical: row `(v, j)` holds the
    /// `v`-coordinate of `A(e_i, e_j)` in column `i`.
    pub fn stacked_matrix(&self) -> FpMatrix {
        let (n, m) = (self.n, self.m);
        let mut mat = FpMatrix::zeros(self.p as u64, m * n, n).expect("modulus already checked");
        for j in 0..n {
            for i in 0..n {
                let val = self.value(i, j);
                for (v, &x) in val.iter().enumerate() {
                    if x != 0 {
                        mat.set(v * n + j, i, x as i64);
                    }
                }
            }
        }
        mat
    }

    /// Basis of `{x : A(x, y) = 0 for all y}`.
    pub fn radical(&self) -> Vec<Vec<u32>> {
        if self.n == 0 {
            return Vec::new();
        }
        self.stacked_matrix().kernel_basis()
    }

    /// Factor the map through `U / rad(A)`.
    ///
    /// The complement of the radical is spanned by standard basis vectors,
    /// chosen greedily from `e_1` upward; the quotient basis is their image.
    pub fn quotient_by_radical(&self) -> RadicalQuotient {
        let p = self.p;
        let n = self.n;
        let radical = self.radical();
        let mut tracker = SpanTracker::new(p, n);
        for r in &radical {
            tracker.insert(r);
        }
        let mut complement = Vec::new();
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 1;
            if tracker.insert(&e) {
                complement.push(i);
            }
        }
        let nq = complement.len();

        let mut map = AltMap {
            p,
            n: nq,
            m: self.m,
            table: vec![vec![0; self.m]; pair_count(nq)],
        };
        for a in 0..nq {
            for b in a + 1..nq {
                let v = self.pair_value(Pair {
                    i: complement[a],
                    j: complement[b],
                });
                map.table[pair_index(nq, a, b)] = v.to_vec();
            }
        }

        // Coordinates w.r.t. [complement vectors | radical basis]; keep the first nq.
        let mut columns: Vec<Vec<u32>> = complement
            .iter()
            .map(|&i| {
                let mut e = vec![0u32; n];
                e[i] = 1;
                e
            })
            .collect();
        columns.extend(radical.iter().cloned());
        let basis = FpMatrix::from_columns(p as u64, n, &columns).expect("modulus already checked");
        let coords = basis.inverse().expect("complement plus radical is a basis");
        let mut projection = FpMatrix::zeros(p as u64, nq, n).expect("modulus already checked");
        for r in 0..nq {
            projection.row_mut(r).copy_from_slice(coords.row(r));
        }

        RadicalQuotient {
            map,
            projection,
            complement,
            radical_dim: radical.len(),
        }
    }

    /// Re-base `U`: the returned map satisfies `A'(e_i, e_j) = A(P e_i, P e_j)`.
    pub fn change_basis(&self, change: &BasisChange) -> Result<AltMap> {
        if change.dim() != self.n || change.matrix.modulus() != self.p {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: change.dim(),
            });
        }
        let cols: Vec<Vec<u32>> = (0..self.n).map(|c| change.matrix.column(c)).collect();
        let mut out = AltMap {
            p: self.p,
            n: self.n,
            m: self.m,
            table: vec![vec![0; self.m]; pair_count(self.n)],
        };
        for a in 0..self.n {
            for b in a + 1..self.n {
                out.table[pair_index(self.n, a, b)] = self.apply(&cols[a], &cols[b])?;
            }
        }
        Ok(out)
    }

    /// Direct sum with `extra` generators lying in the radical.
    pub fn with_radical_generators(&self, extra: usize) -> AltMap {
        let n2 = self.n + extra;
        let mut out = AltMap {
            p: self.p,
            n: n2,
            m: self.m,
            table: vec![vec![0; self.m]; pair_count(n2)],
        };
        for (pair, v) in self.pairs() {
            out.table[pair_index(n2, pair.i, pair.j)] = v.to_vec();
        }
        out
    }

    /// A pseudo-random spanning map, deterministic in `seed`.
    pub fn random(p: u64, n: usize, m: usize, seed: u64) -> Result<AltMap> {
        let pairs = pair_count(n);
        if m > pairs {
            return Err(Error::InfeasibleDimensions(format!(
                "dimV = {m} exceeds C({n},2) = {pairs}"
            )));
        }
        let mut a = AltMap::zero(p, n, m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p32 = a.p;
        for _ in 0..64 {
            for v in a.table.iter_mut() {
                // roughly a third of the pairs vanish, so pair bases are not trivial
                if rng.gen_ratio(1, 3) {
                    v.iter_mut().for_each(|x| *x = 0);
                } else {
                    v.iter_mut().for_each(|x| *x = rng.gen_range(0..p32));
                }
            }
            if a.image_rank() == m {
                return Ok(a);
            }
        }
        // Fall back to a map that is spanning by construction.
        for (idx, v) in a.table.iter_mut().enumerate() {
            v.iter_mut().for_each(|x| *x = 0);
            if idx < m {
                v[idx] = 1;
            }
        }
        Ok(a)
    }
}

/// Output of [`AltMap::quotient_by_radical`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalQuotient {
    pub map: AltMap,
    /// `n' x n` matrix sending coordinates on `U` to coordinates on `U / rad`.
    pub projection: FpMatrix,
    /// 0-based standard basis indices whose images form the quotient basis.
    pub complement: Vec<usize>,
    pub radical_dim: usize,
}

/// An invertible change of basis of `U`; column `k` is the new `e_k` in old coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    matrix: FpMatrix,
}

impl BasisChange {
    pub fn new(matrix: FpMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.rank() != matrix.rows() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self { matrix })
    }

    pub fn identity(p: u32, n: usize) -> Self {
        Self {
            matrix: FpMatrix::identity(p as u64, n).expect("prime modulus"),
        }
    }

    /// New basis vectors given as columns.
    pub fn from_columns(p: u32, columns: &[Vec<u32>]) -> Result<Self> {
        let n = columns.len();
        Self::new(FpMatrix::from_columns(p as u64, n, columns)?)
    }

    /// New `e_k` is old `e_{perm[k]}`.
    pub fn permutation(p: u32, perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let cols: Vec<Vec<u32>> = perm
            .iter()
            .map(|&src| {
                let mut e = vec![0u32; n];
                if src < n {
                    e[src] = 1;
                }
                e
            })
            .collect();
        Self::from_columns(p, &cols)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    /// The change that applies `self` first and then `next` (in new coordinates).
    pub fn then(&self, next: &BasisChange) -> BasisChange {
        BasisChange {
            matrix: self.matrix.mul(&next.matrix).expect("matching dimensions"),
        }
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange {
            matrix: self.matrix.inverse().expect("invertible by construction"),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    i: i64,
    j: i64,
    value: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AltMapDoc {
    p: i64,
    #[serde(rename = "dimU")]
    dim_u: i64,
    #[serde(rename = "dimV")]
    dim_v: i64,
    entries: Vec<EntryDoc>,
}

/// Parse the JSON interchange document.
pub fn parse_altmap(text: &str) -> Result<AltMap> {
    let doc: AltMapDoc = serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    if doc.p < 0 {
        return Err(Error::NonPrimeModulus(0));
    }
    let p = check_modulus(doc.p as u64)?;
    if doc.dim_u < 0 || doc.dim_v < 0 {
        return Err(Error::MalformedDocument(
            "field `dimU`/`dimV` must be non-negative".into(),
        ));
    }
    let n = doc.dim_u as usize;
    let m = doc.dim_v as usize;
    let mut a = AltMap::zero(p as u64, n, m)?;
    let mut seen = HashSet::new();
    for e in &doc.entries {
        if e.i < 1 || e.j <= e.i || e.j > n as i64 {
            return Err(Error::IndexOutOfRange { i: e.i, j: e.j, n });
        }
        let (i, j) = (e.i as usize, e.j as usize);
        if !seen.insert((i, j)) {
            return Err(Error::DuplicatePair { i, j });
        }
        if e.value.len() != m {
            return Err(Error::BadVectorLength {
                i,
                j,
                got: e.value.len(),
                expected: m,
            });
        }
        a.set(Pair::one_based(i, j), &e.value)?;
    }
    Ok(a)
}

/// Canonical document: entries in lexicographic order, zero pairs omitted.
pub fn serialize_altmap(a: &AltMap) -> String {
    let doc = AltMapDoc {
        p: a.p as i64,
        dim_u: a.n as i64,
        dim_v: a.m as i64,
        entries: a
            .pairs()
            .filter(|(_, v)| v.iter().any(|&x| x != 0))
            .map(|(pair, v)| EntryDoc {
                i: pair.i as i64 + 1,
                j: pair.j as i64 + 1,
                value: v.iter().map(|&x| x as i64).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}
