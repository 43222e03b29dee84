//! The linear map `U (x) U (x) U -> V (x) U` sending `x (x) y (x) z` to
//! `A(x,y) (x) z + A(y,z) (x) x + A(z,x) (x) y`, its rank, and lower bounds on
//! that rank coming from a pair basis.

use crate::altmap::{AltMap, Pair};
use crate::error::{Error, Result};
use crate::fieldmat::{self, FpMatrix, SpanTracker};
use crate::greedy::{triple_cmp, triples_in_order, Order, PairBasis, Triple};
use crate::trigraph::{binomial, rt_decompose, RTDecomposition};

/// Matrix of the map restricted to the triples `i < j < k`.
///
/// Rows follow the triple order for the natural generator order; column
/// `v * n + u` holds the coefficient of `v_v (x) e_u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiMatrix {
    pub matrix: FpMatrix,
    pub triples: Vec<Triple>,
    pub dim_u: usize,
    pub dim_v: usize,
}

impl PsiMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn row_of(&self, t: Triple) -> Option<&[u32]> {
        self.triples
            .iter()
            .position(|&x| x == t)
            .map(|r| self.matrix.row(r))
    }
}

/// Image of `e_x (x) e_y (x) e_z` for any ordered triple of indices.
pub fn psi_row(a: &AltMap, x: usize, y: usize, z: usize) -> Vec<u32> {
    let (n, m, p) = (a.dim_u(), a.dim_v(), a.modulus());
    let mut row = vec![0u32; m * n];
    for (s, t, u) in [(x, y, z), (y, z, x), (z, x, y)] {
        for (v, &c) in a.value(s, t).iter().enumerate() {
            let slot = &mut row[v * n + u];
            *slot = fieldmat::add(*slot, c, p);
        }
    }
    row
}

pub fn psi_matrix(a: &AltMap) -> PsiMatrix {
    let (n, m) = (a.dim_u(), a.dim_v());
    let triples = triples_in_order(n, &Order::natural(n));
    let rows: Vec<Vec<u32>> = triples.iter().map(|t| psi_row(a, t.a, t.b, t.c)).collect();
    let matrix =
        FpMatrix::from_residue_rows(u64::from(a.modulus()), m * n, &rows).expect("modulus already checked");
    PsiMatrix {
        matrix,
        triples,
        dim_u: n,
        dim_v: m,
    }
}

/// Dimension of the image, computed by streaming rows into an echelon basis.
pub fn dim_im_psi(a: &AltMap) -> usize {
    let n = a.dim_u();
    let mut span = SpanTracker::new(a.modulus(), a.dim_v() * n);
    for c in 0..n {
        for b in 0..c {
            for x in 0..b {
                span.insert(&psi_row(a, x, b, c));
                if span.rank() == span.dim() {
                    return span.rank();
                }
            }
        }
    }
    span.rank()
}

/// Triples containing at least one pair of `pairs`, sorted under `order`.
pub fn script_w(pairs: &[Pair], n: usize, order: &Order) -> Vec<Triple> {
    let mut out: Vec<Triple> = triples_in_order(n, order)
        .into_iter()
        .filter(|t| pairs.iter().any(|&p| t.contains_pair(p)))
        .collect();
    out.sort_by(|&x, &y| triple_cmp(x, y, order));
    out
}

/// Images of the triples of [`script_w`], each taken with its members in
/// ascending order under the pair basis' generator order.
pub fn w_vectors(a: &AltMap, pb: &PairBasis) -> Vec<Vec<u32>> {
    script_w(&pb.pairs, a.dim_u(), &pb.order)
        .into_iter()
        .map(|t| {
            let [x, y, z] = t.oriented(&pb.order);
            psi_row(a, x, y, z)
        })
        .collect()
}

/// `C(n,3) - C(r,3) - C(t,2)` where `C(n,2) - m = C(r,2) + t`.
pub fn lb_estimate(n: u64, m: u64) -> Result<u64> {
    let pairs = binomial(n, 2);
    if m > pairs {
        return Err(Error::InvalidParams(format!("dimV = {m} exceeds C({n},2) = {pairs}")));
    }
    let RTDecomposition { r, t, .. } = rt_decompose(pairs - m);
    Ok(binomial(n, 3) - binomial(r, 3) - binomial(t, 2))
}

/// `sum_{i=2}^{m+1} (n - i) + (m - 2)`, a lower bound on `|W|` for pair
/// sets that are not stars. Only valid for `2 <= m < n`; for `m >= n` there
/// are non-star pair sets below it (three pairs on three vertices).
pub fn lb_nontree(n: u64, m: u64) -> Result<u64> {
    if m < 2 || m >= n {
        return Err(Error::HypothesisViolated(format!(
            "non-star estimate needs 2 <= dimV < dimU (dimU = {n}, dimV = {m})"
        )));
    }
    Ok((2..=m + 1).map(|i| n.saturating_sub(i)).sum::<u64>() + (m - 2))
}

/// `sum_{i=2}^{k+1} (d - i) + (k - 2)` for `d > k + 1 > 3`.
pub fn lb_special_thm38(d: u64, k: u64) -> Result<u64> {
    if d <= k + 1 || k <= 2 {
        return Err(Error::HypothesisViolated(format!(
            "need d > k + 1 and k > 2 (d = {d}, k = {k})"
        )));
    }
    Ok((2..=k + 1).map(|i| d - i).sum::<u64>() + (k - 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::greedy::construct_pair_basis;

    #[test]
    fn single_triple() {
        let a = AltMap::from_one_based(3, 3, 3, &[(1, 2, &[1, 0, 0]), (1, 3, &[0, 1, 0]), (2, 3, &[0, 0, 1])]).unwrap();
        let psi = psi_matrix(&a);
        assert_eq!((psi.matrix.rows(), psi.matrix.cols()), (1, 9));
        assert_eq!(psi.rank(), 1);
    }

    #[test]
    fn shapes() {
        let psi = psi_matrix(&fixtures::sample_group_map(3));
        assert_eq!((psi.matrix.rows(), psi.matrix.cols()), (20, 24));
        let h = AltMap::from_one_based(3, 2, 1, &[(1, 2, &[1])]).unwrap();
        assert_eq!(psi_matrix(&h).matrix.rows(), 0);
        assert_eq!(dim_im_psi(&h), 0);
    }

    #[test]
    fn known_ranks() {
        let g = fixtures::sample_group_map(3);
        assert_eq!(dim_im_psi(&g), 12);
        assert_eq!(psi_matrix(&g).rank(), 12);
        assert_eq!(dim_im_psi(&g.quotient_by_radical().map), 8);
        assert_eq!(dim_im_psi(&fixtures::sample_group_map(5)), 12);
        assert_eq!(dim_im_psi(&fixtures::special_group_map(3)), 8);
    }

    #[test]
    fn four_pair_map_rows() {
        let a = fixtures::four_pair_map(5);
        let psi = psi_matrix(&a);
        let row = |x, y, z| psi.row_of(Triple::one_based(x, y, z)).unwrap().to_vec();
        // v1 (x) e4 + v3 (x) e1 with n = 5
        let mut expected = vec![0u32; 20];
        expected[3] = 1;
        expected[10] = 1;
        assert_eq!(row(1, 2, 4), expected);
        let sum: Vec<u32> = row(1, 2, 4).iter().zip(row(1, 3, 4)).map(|(&x, y)| (x + y) % 5).collect();
        assert_eq!(sum, row(1, 4, 5));
    }

    #[test]
    fn four_pair_map_script_w() {
        let a = fixtures::four_pair_map(5);
        let pb = construct_pair_basis(&a, &Order::natural(5)).unwrap();
        let w = script_w(&pb.pairs, 5, &pb.order);
        let expected: Vec<Triple> = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 5), (1, 3, 5), (2, 3, 5), (2, 4, 5)]
            .iter()
            .map(|&(x, y, z)| Triple::one_based(x, y, z))
            .collect();
        assert_eq!(w, expected);
        assert!(!w.contains(&Triple::one_based(1, 4, 5)));
        assert_eq!(fieldmat::rank_of(&w_vectors(&a, &pb), 5), 8);
    }

    #[test]
    fn script_w_small_cases() {
        let o = Order::natural(4);
        assert_eq!(
            script_w(&[Pair::one_based(1, 2)], 4, &o),
            vec![Triple::one_based(1, 2, 3), Triple::one_based(1, 2, 4)]
        );
        let star: Vec<Pair> = (2..=4).map(|i| Pair::one_based(1, i)).collect();
        assert_eq!(script_w(&star, 6, &Order::natural(6)).len(), 9);
    }

    #[test]
    fn estimates() {
        assert_eq!(lb_estimate(5, 4).unwrap(), 6);
        assert_eq!(lb_estimate(3, 3).unwrap(), 1);
        assert_eq!(lb_estimate(6, 4).unwrap(), 10);
        assert!(lb_estimate(4, 7).is_err());
        assert_eq!(lb_nontree(5, 4).unwrap(), 8);
        assert_eq!(lb_nontree(6, 3).unwrap(), 10);
        assert_eq!(lb_nontree(6, 4).unwrap(), 4 + 3 + 2 + 1 + 2);
        assert_eq!(lb_nontree(5, 3).unwrap(), 3 + 2 + 1 + 1);
        assert!(lb_nontree(3, 3).is_err());
        assert!(lb_nontree(5, 1).is_err());
        assert_eq!(lb_special_thm38(5, 3).unwrap(), 7);
        assert_eq!(lb_special_thm38(6, 3).unwrap(), 10);
        assert!(matches!(lb_special_thm38(5, 4), Err(Error::HypothesisViolated(_))));
    }
}
