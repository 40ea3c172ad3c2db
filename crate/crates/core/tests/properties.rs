//! Structural property tests: ring axioms for polynomials and rational
//! functions, division round trips, and the text grammar.

use proptest::prelude::*;

use residue_core::{FqField, Poly, RatFn};

fn poly_from(field: &FqField, coeffs: &[u8]) -> Poly {
    Poly::from_coeffs(
        field,
        coeffs.iter().map(|&c| field.from_u64(c as u64)).collect(),
    )
}

fn field_strategy() -> impl Strategy<Value = FqField> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13]).prop_map(|p| FqField::new(p, 1).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn poly_ring_axioms(
        field in field_strategy(),
        a in prop::collection::vec(0u8..13, 0..8),
        b in prop::collection::vec(0u8..13, 0..8),
        c in prop::collection::vec(0u8..13, 0..8),
    ) {
        let f = poly_from(&field, &a);
        let g = poly_from(&field, &b);
        let h = poly_from(&field, &c);
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.sub(&f), Poly::zero(&field));
    }

    #[test]
    fn divrem_reconstructs(
        field in field_strategy(),
        a in prop::collection::vec(0u8..13, 0..10),
        b in prop::collection::vec(0u8..13, 1..6),
    ) {
        let f = poly_from(&field, &a);
        let g = poly_from(&field, &b);
        prop_assume!(!g.is_zero());
        let (q, r) = f.divrem(&g).unwrap();
        prop_assert_eq!(q.mul(&g).add(&r), f);
        if let (Some(dr), Some(dg)) = (r.degree(), g.degree()) {
            prop_assert!(dr < dg);
        }
    }

    #[test]
    fn grammar_round_trips(
        field in field_strategy(),
        a in prop::collection::vec(0u8..13, 0..9),
    ) {
        let f = poly_from(&field, &a);
        let text = f.format_var('t');
        let back = Poly::parse(&text, &field).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn ratfn_field_axioms(
        field in field_strategy(),
        an in prop::collection::vec(0u8..13, 0..5),
        ad in prop::collection::vec(0u8..13, 1..5),
        bn in prop::collection::vec(0u8..13, 0..5),
        bd in prop::collection::vec(0u8..13, 1..5),
    ) {
        let pa = poly_from(&field, &an);
        let pb = poly_from(&field, &ad);
        let pc = poly_from(&field, &bn);
        let pd = poly_from(&field, &bd);
        prop_assume!(!pb.is_zero() && !pd.is_zero());
        let x = RatFn::new(pa, pb).unwrap();
        let y = RatFn::new(pc, pd).unwrap();
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        if !y.is_zero() {
            prop_assert_eq!(x.mul(&y).div(&y).unwrap(), x);
        }
    }
}
