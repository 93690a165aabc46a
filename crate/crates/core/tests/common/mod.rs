#![allow(dead_code)]

use num_rational::BigRational;
use proptest::prelude::*;
use ratdec_core::{GaussianRational, Poly, RatFun};

pub fn gr(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
    GaussianRational::new(
        BigRational::new(a.into(), b.into()),
        BigRational::new(c.into(), d.into()),
    )
}

/// Small Gaussian rationals; about half of them real.
pub fn arb_gr() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4, any::<bool>())
        .prop_map(|(a, b, c, d, complex)| if complex { gr(a, b, c, d) } else { gr(a, b, 0, 1) })
}

pub fn arb_nonzero_gr() -> impl Strategy<Value = GaussianRational> {
    arb_gr().prop_filter("nonzero", |g| *g != GaussianRational::from_integer(0))
}

pub fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(arb_gr(), 1..=max_deg + 1).prop_map(Poly::new)
}

/// Polynomial of exact degree `1..=max_deg`.
pub fn arb_nonconstant_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    (prop::collection::vec(arb_gr(), 1..=max_deg), arb_nonzero_gr()).prop_map(|(mut c, lead)| {
        c.push(lead);
        Poly::new(c)
    })
}

/// Monic polynomial of exact degree `deg`.
pub fn arb_monic(deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(arb_gr(), deg).prop_map(|mut c| {
        c.push(GaussianRational::from_integer(1));
        Poly::new(c)
    })
}

pub fn arb_nonconstant_ratfun(max_deg: usize) -> impl Strategy<Value = RatFun> {
    (arb_poly(max_deg), arb_poly(max_deg))
        .prop_filter_map("nonconstant reduced quotient", |(a, b)| {
            RatFun::reduce(a, b).ok().filter(|f| !f.is_constant())
        })
}

/// Nonconstant `G = C/D` with monic numerator and denominator.
pub fn arb_monic_pair_g(max_deg: usize) -> impl Strategy<Value = RatFun> {
    (1..=max_deg, 0..=max_deg)
        .prop_flat_map(|(dc, dd)| (arb_monic(dc), arb_monic(dd)))
        .prop_filter_map("nonconstant", |(c, d)| {
            RatFun::reduce(c, d).ok().filter(|g| !g.is_constant())
        })
}
