mod common;

use common::{arb_nonconstant_poly, arb_poly};
use num_traits::Zero;
use proptest::prelude::*;
use ratdec_core::poly::sylvester_resultant;
use ratdec_core::roots::isolate_roots_auto;
use ratdec_core::{GaussianRational, Poly};

fn product_of_linears(roots: &[i64]) -> Poly {
    roots
        .iter()
        .fold(Poly::one(), |acc, &r| &acc * &Poly::linear_root(&GaussianRational::from_integer(r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn resultant_vanishes_iff_common_factor(p in arb_nonconstant_poly(4), q in arb_nonconstant_poly(4)) {
        let res = p.resultant(&q).unwrap();
        let g = p.gcd(&q).unwrap();
        prop_assert_eq!(res.is_zero(), !g.is_constant());
        // Independent oracle: the Sylvester determinant.
        let syl = sylvester_resultant(&p, &q, p.degree_or_zero(), q.degree_or_zero());
        prop_assert_eq!(res, syl);
    }

    #[test]
    fn shared_factor_forces_zero_resultant(p in arb_nonconstant_poly(3), q in arb_nonconstant_poly(3), r in arb_nonconstant_poly(2)) {
        let a = &p * &r;
        let b = &q * &r;
        prop_assert!(a.resultant(&b).unwrap().is_zero());
        prop_assert!(a.gcd(&b).unwrap().divmod(&r.monic()).unwrap().1.is_zero());
    }

    #[test]
    fn divmod_round_trip(p in arb_poly(6), q in arb_nonconstant_poly(4)) {
        let (quot, rem) = p.divmod(&q).unwrap();
        prop_assert_eq!(&(&q * &quot) + &rem, p);
        prop_assert!(rem.degree().map_or(true, |d| d < q.degree_or_zero()));
    }

    #[test]
    fn squarefree_decomposition_accounts_for_degree(
        base in prop::collection::vec((-4i64..=4, 1u32..=3), 1..=4),
        lead in common::arb_nonzero_gr(),
    ) {
        let mut p = Poly::constant(lead);
        for (r, m) in &base {
            p = &p * &Poly::linear_root(&GaussianRational::from_integer(*r)).pow(*m);
        }
        let total: usize = p
            .squarefree_decomposition()
            .unwrap()
            .iter()
            .map(|(f, m)| *m as usize * f.degree_or_zero())
            .sum();
        prop_assert_eq!(total, p.degree_or_zero());
        let mut distinct: Vec<i64> = base.iter().map(|(r, _)| *r).collect();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(p.squarefree_part().unwrap(), product_of_linears(&distinct));
    }

    #[test]
    fn ball_count_matches_squarefree_degree(p in arb_nonconstant_poly(5), r in arb_nonconstant_poly(2)) {
        let p = &p * &r.pow(2);
        let balls = isolate_roots_auto(&p, 128, 4096).unwrap();
        prop_assert_eq!(balls.len(), p.squarefree_part().unwrap().degree_or_zero());
        for i in 0..balls.len() {
            for j in i + 1..balls.len() {
                prop_assert!(!balls[i].overlaps(&balls[j]));
            }
        }
    }
}

#[test]
fn documented_examples() {
    let p = Poly::from_ints(&[1, 0, 0, 1]);
    let (q, r) = p.divmod(&Poly::from_ints(&[2, 1])).unwrap();
    assert_eq!(q, Poly::from_ints(&[4, -2, 1]));
    assert_eq!(r, Poly::from_ints(&[-7]));
    assert_eq!(p.resultant(&Poly::from_ints(&[0, 0, 3])).unwrap(), GaussianRational::from_integer(27));
    assert_eq!(
        Poly::from_ints(&[1, 0, 1]).resultant(&Poly::from_ints(&[-1, 1])).unwrap(),
        GaussianRational::from_integer(2)
    );
}
