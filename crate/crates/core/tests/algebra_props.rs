use proptest::prelude::*;
use schur_core::altmap::{pair_count, parse_altmap, serialize_altmap, AltMap, BasisChange};
use schur_core::fieldmat::{in_span, rank_of, FpMatrix};

fn matrix(max_dim: usize) -> impl Strategy<Value = FpMatrix> {
    (prop::sample::select(vec![2u64, 3, 5, 7, 2_147_483_647]), 1..=max_dim, 1..=max_dim)
        .prop_flat_map(|(p, r, c)| (Just(p), Just(c), prop::collection::vec(prop::collection::vec(-20i64..20, c), r)))
        .prop_map(|(p, c, rows)| FpMatrix::from_rows(p, c, &rows).unwrap())
}

fn map_strategy() -> impl Strategy<Value = AltMap> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 2usize..=7)
        .prop_flat_map(|(p, n)| (Just(p), Just(n), 0..=8usize.min(pair_count(n)), any::<u64>()))
        .prop_map(|(p, n, m, seed)| AltMap::random(p, n, m, seed).unwrap())
}

fn vector(p: u32, n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..p, n)
}

fn invertible(p: u32, n: usize) -> impl Strategy<Value = BasisChange> {
    prop::collection::vec(vector(p, n), n).prop_filter_map("singular", move |cols| BasisChange::from_columns(p, &cols).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_is_transpose_invariant(m in matrix(9)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn rref_is_idempotent_and_rank_preserving(m in matrix(9)) {
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(r.rank(), m.rank());
        let (again, pivots2) = r.rref();
        prop_assert_eq!(&again, &r);
        prop_assert_eq!(pivots2, pivots.clone());
        for (row, &c) in pivots.iter().enumerate() {
            prop_assert_eq!(r.get(row, c), 1);
            for other in 0..r.rows() {
                if other != row {
                    prop_assert_eq!(r.get(other, c), 0);
                }
            }
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(9)) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.len(), m.cols() - m.rank());
        prop_assert_eq!(rank_of(&k, m.modulus()), k.len());
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn span_membership_matches_rank(m in matrix(7), pick in any::<u32>()) {
        let p = m.modulus();
        let rows: Vec<Vec<u32>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let (set, v) = rows.split_at(rows.len() - 1);
        let mut v = v[0].clone();
        if pick % 2 == 0 && !set.is_empty() {
            // force membership half the time
            v = set.iter().fold(vec![0; m.cols()], |acc, s| acc.iter().zip(s).map(|(&a, &b)| ((a as u64 + b as u64) % p as u64) as u32).collect());
        }
        let mut with = set.to_vec();
        with.push(v.clone());
        prop_assert_eq!(in_span(&v, set, p), rank_of(&with, p) == rank_of(set, p));
    }

    #[test]
    fn documents_round_trip(a in map_strategy()) {
        prop_assert_eq!(parse_altmap(&serialize_altmap(&a)).unwrap(), a);
    }

    #[test]
    fn apply_is_alternating_and_bilinear(a in map_strategy(), seed in any::<u64>()) {
        let (p, n) = (a.modulus(), a.dim_u());
        let vec_of = |s: u64| -> Vec<u32> { (0..n).map(|i| ((s >> (i * 3)) % u64::from(p)) as u32).collect() };
        let (x, y, z) = (vec_of(seed), vec_of(seed.rotate_left(21)), vec_of(seed.rotate_left(42)));
        prop_assert!(a.apply(&x, &x).unwrap().iter().all(|&c| c == 0));
        let xy = a.apply(&x, &y).unwrap();
        let yx = a.apply(&y, &x).unwrap();
        prop_assert!(xy.iter().zip(&yx).all(|(&s, &t)| (s + t) % p == 0));
        let xz = a.apply(&x, &z).unwrap();
        let sum: Vec<u32> = y.iter().zip(&z).map(|(&s, &t)| (s + t) % p).collect();
        let lhs = a.apply(&x, &sum).unwrap();
        let rhs: Vec<u32> = xy.iter().zip(&xz).map(|(&s, &t)| (s + t) % p).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn radical_size_matches_stacked_rank(a in map_strategy()) {
        prop_assert_eq!(a.radical().len(), a.dim_u() - a.stacked_matrix().rank());
        for r in a.radical() {
            for j in 0..a.dim_u() {
                let mut e = vec![0; a.dim_u()];
                e[j] = 1;
                prop_assert!(a.apply(&r, &e).unwrap().iter().all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn quotient_has_no_radical(a in map_strategy()) {
        let q = a.quotient_by_radical();
        prop_assert_eq!(q.map.dim_u(), a.dim_u() - q.radical_dim);
        prop_assert!(q.map.radical().is_empty());
        prop_assert_eq!(q.map.image_rank(), a.dim_v());
        // A(x, y) = A'(Px, Py)
        for i in 0..a.dim_u() {
            for j in 0..a.dim_u() {
                let (ci, cj) = (q.projection.column(i), q.projection.column(j));
                prop_assert_eq!(q.map.apply(&ci, &cj).unwrap(), a.value(i, j));
            }
        }
    }

    #[test]
    fn change_of_basis_round_trips((a, change) in map_strategy().prop_flat_map(|a| {
        let (p, n) = (a.modulus(), a.dim_u());
        (Just(a), invertible(p, n))
    })) {
        let b = a.change_basis(&change).unwrap();
        prop_assert_eq!(b.image_rank(), a.image_rank());
        prop_assert_eq!(b.change_basis(&change.inverse()).unwrap(), a);
    }
}

#[test]
fn random_maps_are_deterministic() {
    assert_eq!(AltMap::random(3, 5, 4, 11).unwrap(), AltMap::random(3, 5, 4, 11).unwrap());
    for seed in 0..50 {
        AltMap::random(3, 5, 4, seed).unwrap().validate().unwrap();
        let full = AltMap::random(2, 3, 3, seed).unwrap();
        assert!(full.pairs().all(|(_, v)| v.iter().any(|&x| x != 0)));
    }
}
