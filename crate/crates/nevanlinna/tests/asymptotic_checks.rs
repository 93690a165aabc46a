use num_complex::Complex64;
use ratdec_core::parse_str;
use ratdec_nevanlinna::{
    check_lemma2, check_theorem_n, Base, MeroExpr, RadiusGrid, Spacing, TailPolicy,
};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn log_grid(stop: f64, count: usize) -> Vec<f64> {
    RadiusGrid::new(1.0, stop, count, Spacing::Log).unwrap().points()
}

#[test]
fn composed_ratio_over_sin() {
    let sin = MeroExpr::base_only(Base::Sin);
    let radii = log_grid(40.0, 24);
    for r in ["x^2", "(x^2 - 1)/x^2", "x^3/(x + 2)"] {
        let (v, _, _) = check_lemma2(&parse_str(r).unwrap(), &sin, &radii, 1e-8, TailPolicy::LEMMA2).unwrap();
        eprintln!("{r}: worst {:.4} rel {:?}", v.worst_tail, &v.relative[v.tail_start..]);
        assert!(v.pass, "{r}: worst relative deviation {}", v.worst_tail);
    }
}

#[test]
fn composed_ratio_square_of_exp() {
    let exp = MeroExpr::base_only(Base::Exp);
    let (v, _, _) = check_lemma2(&parse_str("x^2").unwrap(), &exp, &log_grid(20.0, 12), 1e-9, TailPolicy::LEMMA2).unwrap();
    assert!(v.pass);
    assert!(v.worst_tail < 1e-6);
}

#[test]
fn composed_ratio_identity_map_is_exact() {
    for base in [Base::Exp, Base::Sin, Base::Tan] {
        let h = MeroExpr::base_only(base);
        let (v, _, _) = check_lemma2(&parse_str("x").unwrap(), &h, &log_grid(10.0, 6), 1e-9, TailPolicy::LEMMA2).unwrap();
        assert!(v.relative.iter().all(|d| d.abs() < 1e-12), "{base:?}");
    }
}

#[test]
fn composed_ratio_rejects_constant_map() {
    let h = MeroExpr::base_only(Base::Sin);
    assert!(check_lemma2(&parse_str("3").unwrap(), &h, &[1.0, 2.0], 1e-8, TailPolicy::LEMMA2).is_err());
}

#[test]
fn counting_margin_tan_and_exp() {
    let radii = RadiusGrid::new(2.0, 50.0, 25, Spacing::Linear).unwrap().points();
    for base in [Base::Tan, Base::Exp] {
        let h = MeroExpr::base_only(base);
        let (v, _) = check_theorem_n(&h, &[c(0.0), c(1.0)], &radii, 1e-8, TailPolicy::THEOREM_N).unwrap();
        eprintln!("{base:?}: worst {:.4}", v.worst_tail);
        assert!(v.pass, "{base:?}: {}", v.worst_tail);
    }
}

#[test]
fn counting_margin_single_target_is_trivial() {
    let h = MeroExpr::base_only(Base::Sin);
    let (v, _) = check_theorem_n(&h, &[c(0.5)], &[1.0, 2.0, 3.0], 1e-8, TailPolicy::THEOREM_N).unwrap();
    assert!(v.pass);
    assert!(v.residuals.iter().all(|&t| t <= 0.0));
}

#[test]
fn counting_margin_rejects_repeated_targets() {
    let h = MeroExpr::base_only(Base::Sin);
    assert!(check_theorem_n(&h, &[c(1.0), c(1.0)], &[1.0, 2.0], 1e-8, TailPolicy::THEOREM_N).is_err());
}
