mod common;

use common::{arb_gr, arb_monic, arb_monic_pair_g, arb_nonconstant_poly, arb_nonconstant_ratfun};
use num_traits::Zero;
use proptest::prelude::*;
use ratdec_core::critical::{
    check_conditions, condition4_resultants, critical_numerator, critical_values,
    reciprocal_pair_check, verify_lemma1, Variant,
};
use ratdec_core::roots::isolate_roots_auto;
use ratdec_core::{ComplexBall, Error, Poly, RatFun};

/// Distinct critical values counted numerically: evaluate `F` on the critical
/// points and merge overlapping value balls.
fn clustered_value_count(f: &RatFun) -> usize {
    let n = critical_numerator(f).unwrap();
    if n.is_constant() {
        return 0;
    }
    let points = isolate_roots_auto(&n, 256, 4096).unwrap();
    let values: Vec<ComplexBall> = points.iter().map(|c| f.eval_ball(c).unwrap()).collect();
    let mut parent: Vec<usize> = (0..values.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i].overlaps(&values[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..values.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// `G = C/D` where `C - y0 D = (x - a)^2 P`, so `S_{y0}` has a double root.
fn arb_g_with_double_root() -> impl Strategy<Value = (RatFun, ratdec_core::GaussianRational)> {
    (arb_monic(2), arb_nonconstant_poly(2), arb_gr(), arb_gr()).prop_filter_map(
        "nonconstant",
        |(d, p, a, y0)| {
            let c = &(&Poly::linear_root(&a).pow(2) * &p) + &d.scale(&y0);
            let g = RatFun::reduce(c, d).ok()?;
            (!g.is_constant()).then_some((g, y0))
        },
    )
}

fn s_y(g: &RatFun, y: &ratdec_core::GaussianRational) -> (Poly, Poly) {
    let s = g.numer() - &g.denom().scale(y);
    let s1 = &g.numer().derivative() - &g.denom().derivative().scale(y);
    (s, s1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn value_count_matches_numeric_clustering(f in arb_nonconstant_ratfun(4)) {
        let data = critical_values(&f).unwrap();
        prop_assert_eq!(data.records.len(), clustered_value_count(&f));
        if !data.records.is_empty() {
            prop_assert_eq!(data.value_poly.squarefree_part().unwrap().degree_or_zero(), data.records.len());
        }
    }

    #[test]
    fn r1_matches_gcd_formulation(g in arb_nonconstant_ratfun(5), y in arb_gr()) {
        let res = condition4_resultants(&g, Variant::M).unwrap();
        for y in [y, ratdec_core::GaussianRational::zero(), ratdec_core::GaussianRational::from_integer(1)] {
            let (s, s1) = s_y(&g, &y);
            let shared = !s.gcd(&s1).unwrap().is_constant();
            prop_assert_eq!(res.r1.eval(&y).is_zero(), shared, "y = {}", y);
        }
    }

    #[test]
    fn r1_detects_constructed_double_roots((g, y0) in arb_g_with_double_root()) {
        let res = condition4_resultants(&g, Variant::M).unwrap();
        prop_assert!(res.r1.eval(&y0).is_zero());
    }

    #[test]
    fn root_factorization_holds_whenever_k_positive(f in arb_nonconstant_ratfun(3), g in arb_monic_pair_g(3)) {
        let report = check_conditions(&f, &g, Variant::M).unwrap();
        let l = verify_lemma1(&f, &g, &report, 128).unwrap();
        prop_assert_eq!(l.root_count(), report.k * g.degree());
        prop_assert!(l.entries.iter().all(|e| e.s >= 2));
    }

    #[test]
    fn primed_admissible_set_is_a_subset(f in arb_nonconstant_ratfun(3), g in arb_monic_pair_g(3)) {
        let m = check_conditions(&f, &g, Variant::M).unwrap();
        let mp = check_conditions(&f, &g, Variant::MPrime).unwrap();
        prop_assert!(mp.k <= m.k);
        prop_assert!(m.admissible_poly.divmod(&mp.admissible_poly).unwrap().1.is_zero());
    }

    #[test]
    fn reciprocal_pair_passes(f in arb_nonconstant_ratfun(3), g in arb_monic_pair_g(3)) {
        match reciprocal_pair_check(&f, &g) {
            Ok(ok) => prop_assert!(ok),
            Err(Error::Inapplicable(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
