use proptest::prelude::*;
use schur_core::bounds::{
    compare_report, exp_rai_ineq4, exp_rai_thm14, exp_thm33, exp_thm38, lemma37_check, parameter_grid, PGroupParams,
};
use schur_core::trigraph::{binomial, rt_decompose};

#[test]
fn bound_ordering_holds_on_the_whole_grid() {
    let mut checked = 0;
    for extra in [0, 3] {
        for base in parameter_grid(3, 12, 70) {
            let params = PGroupParams { n: base.n + extra, ..base };
            let r = compare_report(&params).unwrap();
            assert!(r.thm33 <= r.rai_ineq4 && r.rai_ineq4 <= r.rai_thm14, "{params:?}");
            checked += 1;
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn ineq4_matches_thm33_on_the_boundary() {
    for base in parameter_grid(5, 12, 70) {
        if base.delta == base.kprime + 1 {
            assert_eq!(exp_thm33(&base), exp_rai_ineq4(&base), "{base:?}");
        }
    }
}

#[test]
fn special_shapes_agree_with_thm14() {
    for base in parameter_grid(3, 12, 70) {
        if base.d == base.delta && base.delta > base.kprime {
            assert_eq!(exp_thm33(&base), exp_rai_thm14(&base), "{base:?}");
        }
    }
}

#[test]
fn thm38_improves_on_thm33() {
    for d in 4..=12u64 {
        for k in 3..d - 1 {
            let params = PGroupParams::new(7, d + k, d, d, k, k).unwrap();
            assert!(exp_thm38(7, d + k, d, k).unwrap() <= exp_thm33(&params));
        }
    }
}

#[test]
fn lemma37_identity() {
    for delta in 3..=40 {
        for kprime in 1..delta - 1 {
            assert!(lemma37_check(delta, kprime).unwrap(), "delta = {delta}, kprime = {kprime}");
        }
    }
}

#[test]
fn rt_decomposition_is_exact() {
    for value in 0..=1_000_000u64 {
        let rt = rt_decompose(value);
        assert_eq!(binomial(rt.r, 2) + rt.t, value);
        assert!(rt.t < rt.r);
    }
}

fn params_strategy() -> impl Strategy<Value = PGroupParams> {
    (2u64..=15, 0u64..=13, 1u64..=60, 0u64..=10)
        .prop_flat_map(|(d, gap, k, extra)| {
            let delta = (d - gap.min(d - 2)).max(2);
            let cap = k.min(binomial(delta, 2));
            (Just((d, delta, k, extra)), 1..=cap)
        })
        .prop_map(|((d, delta, k, extra), kprime)| PGroupParams::new(3, d + k + extra, d, delta, k, kprime).unwrap())
}

proptest! {
    #[test]
    fn exponents_are_whole_or_half(params in params_strategy()) {
        for e in [exp_thm33(&params), exp_rai_ineq4(&params), exp_rai_thm14(&params)] {
            let frac = e.exact() - e.effective() as f64;
            prop_assert!(frac == 0.0 || frac == 0.5);
        }
    }
}
