use std::cmp::Ordering;

use kxval::approx::{ball_contains, ball_member, iota, realize, Ball};
use kxval::basefield::{element_of_value, sample_nonzero_with, sample_with, FieldSpec, KElem, ValueQ};
use kxval::generators;
use kxval::ordgroup::{ext_add, ext_cmp, ext_scale, int, rat, CutId, ExtScalar};
use kxval::parse::parse_poly;
use kxval::pcs::{validate_pcs, PCSeq};
use kxval::poly::{euclid_div, poly_eval, sample_monic_with, sample_poly_with, taylor_at, PolyK};
use kxval::valuation::{check_axioms, val_apply, ValDesc};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    (prop_oneof![Just(2u64), Just(3), Just(5), Just(7)], 0..3u8).prop_map(|(p, kind)| match kind {
        0 => FieldSpec::rat_p(p).unwrap(),
        1 => FieldSpec::rat_fun(p).unwrap(),
        _ => FieldSpec::perfect_hull(p).unwrap(),
    })
}

fn cut_strategy() -> impl Strategy<Value = CutId> {
    prop_oneof![
        (-8i64..8, 1i64..5).prop_map(|(n, d)| CutId::Below(rat(n, d))),
        (-8i64..8, 1i64..5).prop_map(|(n, d)| CutId::Above(rat(n, d))),
        Just(CutId::PlusInf),
    ]
}

fn ext_strategy(cut: CutId) -> impl Strategy<Value = ExtScalar> {
    prop_oneof![
        Just(ExtScalar::Infinity),
        (-20i64..20, 1i64..5).prop_map(|(n, d)| ExtScalar::Fin(rat(n, d))),
        (-3i64..4, -20i64..20, 1i64..5).prop_map(move |(m, n, d)| ExtScalar::cut_lin(cut.clone(), m, rat(n, d))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_operations_are_consistent(field in field_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample_with(&mut rng, field, 3);
        let b = sample_with(&mut rng, field, 3);
        let c = sample_nonzero_with(&mut rng, field, 3);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a / &c) * &c, a.clone());
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        let expect = match (a.val(), c.val()) {
            (ValueQ::Fin(x), ValueQ::Fin(y)) => ValueQ::Fin(x + y),
            _ => ValueQ::Infinity,
        };
        prop_assert_eq!((&a * &c).val(), expect);
        // ultrametric inequality
        prop_assert!((&a + &b).val() >= a.val().min(b.val()));
    }

    #[test]
    fn poly_display_parses_back(field in field_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample_poly_with(&mut rng, field, 5, 3);
        let text = f.to_string();
        prop_assert_eq!(parse_poly(field, &text).unwrap(), f);
    }

    #[test]
    fn division_with_remainder(field in field_strategy(), seed in any::<u64>(), dq in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample_poly_with(&mut rng, field, 7, 2);
        let g = sample_monic_with(&mut rng, field, dq, 2);
        let (q, r) = euclid_div(&f, &g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.degree().map_or(true, |d| d < dq));
    }

    #[test]
    fn taylor_coefficients_rebuild_values(field in field_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample_poly_with(&mut rng, field, 5, 2);
        let a = sample_with(&mut rng, field, 2);
        let z = sample_with(&mut rng, field, 2);
        let coeffs = taylor_at(&f, &a);
        let d = &z - &a;
        let mut power = KElem::one(field);
        let mut total = KElem::zero(field);
        for c in &coeffs {
            total = &total + &(c * &power);
            power = &power * &d;
        }
        prop_assert_eq!(total, poly_eval(&f, &z));
    }

    #[test]
    fn extended_order_is_total_and_translation_invariant(
        (a, b, c) in cut_strategy().prop_flat_map(|cut| (ext_strategy(cut.clone()), ext_strategy(cut.clone()), ext_strategy(cut)))
    ) {
        let ab = ext_cmp(&a, &b).unwrap();
        prop_assert_eq!(ab, ext_cmp(&b, &a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab != Ordering::Greater && ext_cmp(&b, &c).unwrap() != Ordering::Greater {
            prop_assert!(ext_cmp(&a, &c).unwrap() != Ordering::Greater);
        }
        if ab != Ordering::Greater {
            let (x, y) = (ext_add(&a, &c).unwrap(), ext_add(&b, &c).unwrap());
            prop_assert!(ext_cmp(&x, &y).unwrap() != Ordering::Greater);
        }
        // n·a is a repeated sum
        let twice = ext_add(&a, &a).unwrap();
        prop_assert_eq!(ext_scale(2, &a), twice);
    }

    #[test]
    fn every_member_is_a_center(field in field_strategy(), seed in any::<u64>(), num in -6i64..6, den in 1i64..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let radius = if field.in_value_group(&rat(num, den)) { rat(num, den) } else { int(num) };
        let b = Ball::new(sample_with(&mut rng, field, 2), radius.clone()).unwrap();
        let shift = element_of_value(field, &(&radius + int(1))).unwrap();
        let m = &b.center + &(&shift * &KElem::from_int(field, (seed % 11) as i64));
        let b2 = Ball::new(m, radius.clone()).unwrap();
        prop_assert!(ball_contains(&b, &b2) && ball_contains(&b2, &b));
        let z = sample_with(&mut rng, field, 3);
        prop_assert_eq!(ball_member(&z, &b), ball_member(&z, &b2));
    }

    #[test]
    fn monomial_valuations_satisfy_axioms(field in field_strategy(), seed in any::<u64>(), g in -4i64..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = ValDesc::monomial(sample_with(&mut rng, field, 2), ExtScalar::Fin(int(g)));
        let samples: Vec<PolyK> = (0..8).map(|_| sample_poly_with(&mut rng, field, 3, 2)).collect();
        let report = check_axioms(&d, &samples);
        prop_assert!(report.passed(), "{:?}", report.counterexample);
    }

    #[test]
    fn realized_sequences_keep_their_distances(seed in any::<u64>(), len in 3usize..7) {
        let field = FieldSpec::rat_fun(3).unwrap();
        let seq = generators::random_digits(field, seed, len).unwrap();
        let back = realize(&iota(&seq).unwrap()).unwrap();
        let n = len.min(back.prefix().len());
        prop_assert_eq!(
            validate_pcs(&back.elements(n).unwrap()).unwrap(),
            validate_pcs(&seq.elements(n).unwrap()).unwrap()
        );
    }
}

#[test]
fn monomial_valuation_of_a_linear_factor() {
    let field = FieldSpec::rat_fun(2).unwrap();
    let a = parse_poly(field, "t").unwrap().as_constant().unwrap();
    let d = ValDesc::monomial(a.clone(), ExtScalar::Fin(int(3)));
    assert_eq!(val_apply(&d, &PolyK::linear(&a)).unwrap(), ExtScalar::Fin(int(3)));
    assert_eq!(val_apply(&d, &parse_poly(field, "x").unwrap()).unwrap(), ExtScalar::Fin(int(1)));
}

#[test]
fn finite_sequences_need_increasing_distances() {
    let field = FieldSpec::rat_p(3).unwrap();
    let e = |s: &str| kxval::parse::parse_elem(field, s).unwrap();
    assert!(PCSeq::finite(vec![e("0"), e("3"), e("3 + 9")]).is_ok());
    assert!(PCSeq::finite(vec![e("0"), e("9"), e("9 + 3")]).is_err());
}
