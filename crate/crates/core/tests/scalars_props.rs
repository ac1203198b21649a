use proptest::prelude::*;
use qci::{Field, FieldSpec, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<Field> {
    vec![
        Field::prime(2).unwrap(),
        Field::prime(5).unwrap(),
        Field::prime(101).unwrap(),
        Field::cyclotomic(2).unwrap(),
        Field::cyclotomic(3).unwrap(),
        Field::cyclotomic(4).unwrap(),
        Field::cyclotomic(5).unwrap(),
    ]
}

fn draw(field: &Field, seed: u64) -> (Scalar, Scalar, Scalar) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (field.sample(&mut r, 9), field.sample(&mut r, 9), field.sample(&mut r, 9))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inverse_and_cancellation(seed in any::<u64>(), k in 0usize..7) {
        let f = &fields()[k];
        let (x, y, _) = draw(f, seed);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        } else {
            prop_assert!(x.inv().is_none());
        }
    }

    #[test]
    fn ring_axioms(seed in any::<u64>(), k in 0usize..7) {
        let f = &fields()[k];
        let (x, y, z) = draw(f, seed);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &(-&x), f.zero());
    }

    #[test]
    fn parse_round_trip(seed in any::<u64>(), k in 0usize..7) {
        let f = &fields()[k];
        let (x, _, _) = draw(f, seed);
        prop_assert_eq!(f.parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn integer_powers(seed in any::<u64>(), k in 0usize..7, e in 0i64..12) {
        let f = &fields()[k];
        let (x, _, _) = draw(f, seed);
        if !x.is_zero() {
            prop_assert!((&x.powi(e) * &x.powi(-e)).is_one());
            prop_assert_eq!(x.powi(e), x.pow(e as u64));
        }
    }
}

#[test]
fn roots_of_unity_are_primitive() {
    let cases: Vec<(FieldSpec, u64)> = vec![
        (FieldSpec::Prime(5), 2),
        (FieldSpec::Prime(5), 4),
        (FieldSpec::Prime(7), 3),
        (FieldSpec::Prime(7), 6),
        (FieldSpec::Prime(101), 5),
        (FieldSpec::Cyclotomic(2), 2),
        (FieldSpec::Cyclotomic(3), 3),
        (FieldSpec::Cyclotomic(4), 4),
        (FieldSpec::Cyclotomic(6), 6),
    ];
    for (spec, a) in cases {
        let f = Field::new(spec).unwrap();
        let q = f.primitive_root_of_unity(a).unwrap();
        assert!(q.pow(a).is_one(), "{spec} {a}");
        for d in 1..a {
            assert!(!q.pow(d).is_one(), "{spec} {a} {d}");
        }
    }
    assert!(Field::prime(7).unwrap().primitive_root_of_unity(4).is_err());
}

#[test]
fn cyclotomic_generator_reduces() {
    for a in 2..=8u32 {
        let f = Field::cyclotomic(a).unwrap();
        let z = f.generator();
        assert!(z.pow(a as u64).is_one(), "a = {a}");
        assert_eq!(z.pow(a as u64), f.one());
    }
}

#[test]
fn sampling_is_seeded() {
    let f = Field::cyclotomic(3).unwrap();
    let mut a = ChaCha8Rng::seed_from_u64(4);
    let mut b = ChaCha8Rng::seed_from_u64(4);
    let xs: Vec<Scalar> = (0..20).map(|_| f.sample(&mut a, 3)).collect();
    let ys: Vec<Scalar> = (0..20).map(|_| f.sample(&mut b, 3)).collect();
    assert_eq!(xs, ys);
    let _: u8 = a.gen();
}
