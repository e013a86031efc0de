use proptest::prelude::*;
use umconv::galois::{arith, prime_power, ArithOp, ExtField, Field, FiniteField};
use umconv::Error;

const SMALL: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Product of two encodings as polynomials over F_p reduced by the modulus,
/// done by schoolbook multiplication and long division.
fn poly_mod_mul(f: &Field, a: u32, b: u32) -> u32 {
    let (p, m) = (f.p(), f.m() as usize);
    let (da, db) = (f.digits(a), f.digits(b));
    let mut prod = vec![0u32; 2 * m];
    for i in 0..m {
        for j in 0..m {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    let md = f.modulus();
    for top in (m..2 * m).rev() {
        let c = prod[top];
        if c != 0 {
            for (i, &mc) in md.iter().enumerate() {
                let idx = top - m + i;
                prod[idx] = (prod[idx] + p * p - c * mc % p) % p;
            }
        }
    }
    prod[..m].iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn order_by_powers<F: FiniteField>(f: &F, a: u32) -> u64 {
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = f.mul(x, a);
        k += 1;
    }
    k
}

#[test]
fn gf8_reproduces_powers_of_theta() {
    let f = Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
    assert_eq!(f.theta(), 2);
    let t = f.theta();
    let t2 = f.mul(t, t);
    assert_eq!(f.mul(t, t2), f.add(1, t));
    assert_eq!(f.mul(t2, t2), f.add(t, t2));
    assert_eq!(Field::of_order(8).unwrap(), f);
    assert_eq!(f.modulus_encoding(), 11);
}

#[test]
fn prime_field_two() {
    let f = Field::new(2, 1, None).unwrap();
    assert_eq!(f.theta(), 1);
    assert_eq!(f.q(), 2);
}

#[test]
fn gf9_every_element_order_divides_eight() {
    let f = Field::new(3, 2, None).unwrap();
    for a in 1..9 {
        assert_eq!(8 % order_by_powers(&f, a), 0);
    }
    assert_eq!(order_by_powers(&f, f.theta()), 8);
}

#[test]
fn multiplication_tables_match_polynomial_reduction() {
    for q in [4u32, 8, 9, 16, 25, 27, 32, 49] {
        let f = Field::of_order(q).unwrap();
        for a in 0..q {
            for b in 0..q {
                assert_eq!(f.mul(a, b), poly_mod_mul(&f, a, b), "q={q} {a}*{b}");
            }
        }
    }
}

#[test]
fn axioms_exhaustive_small_fields() {
    for q in SMALL {
        let f = Field::of_order(q).unwrap();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn characteristic_two_doubling_vanishes() {
    for q in [2u32, 4, 8, 16] {
        let f = Field::of_order(q).unwrap();
        assert!((0..q).all(|x| f.add(x, x) == 0 && f.mul(x, 1) == x));
    }
}

#[test]
fn multiplicative_group_is_cyclic_up_to_81() {
    for q in 2..=81u32 {
        if prime_power(q).is_none() {
            continue;
        }
        let f = Field::of_order(q).unwrap();
        assert_eq!(order_by_powers(&f, f.theta()), (q - 1) as u64, "q={q}");
        for x in 1..q {
            assert_eq!(f.pow(x, q as i64 - 1).unwrap(), 1);
        }
        let mut encs: Vec<u32> = (0..q).map(|x| f.element(x).unwrap().enc()).collect();
        encs.sort();
        assert_eq!(encs, (0..q).collect::<Vec<_>>());
    }
}

#[test]
fn invalid_field_arguments() {
    assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
    assert_eq!(Field::new(2, 3, Some(&[1, 1, 1, 1])).unwrap_err(), Error::ReducibleModulus);
    assert!(matches!(Field::new(2, 3, Some(&[1, 1, 1])).unwrap_err(), Error::DegreeMismatch { .. }));
}

#[test]
fn element_arith_errors() {
    let f8 = Field::of_order(8).unwrap();
    let f9 = Field::of_order(9).unwrap();
    let a = f8.element(3).unwrap();
    let z = f8.element(0).unwrap();
    assert_eq!(arith(&a, &z, ArithOp::Div).unwrap_err(), Error::DivisionByZero);
    assert_eq!(z.inv().unwrap_err(), Error::DivisionByZero);
    let b = umconv::galois::Element::new(f9, 3).unwrap();
    let b8 = umconv::galois::Element::new(Field::new(2, 3, Some(&[1, 0, 1, 1])).unwrap(), 3).unwrap();
    assert_eq!(arith(&a, &b8, ArithOp::Add).unwrap_err(), Error::FieldMismatch);
    assert_eq!(b.pow(-1).unwrap().enc(), Field::of_order(9).unwrap().inv(3).unwrap());
    let t = f8.element(2).unwrap();
    let t2 = t.pow(2).unwrap();
    assert_eq!(arith(&t, &t2, ArithOp::Mul).unwrap().enc(), 3);
}

#[test]
fn extension_reproduces_reference_relations() {
    let f = Field::of_order(8).unwrap();
    let e = ExtField::new(&f, Some((1, 2)), None).unwrap();
    let t = e.compose(0, 1);
    let t2 = e.mul(t, t);
    // t^2 = 1 + theta t
    assert_eq!(e.decompose(t2), (1, 2));
    // t^3 = theta + (1 + theta^2) t
    assert_eq!(e.decompose(e.mul(t2, t)), (2, 5));
    assert_eq!(e.pow(t, 9).unwrap(), 1);
    for x in 0..64 {
        let (a, b) = e.decompose(x);
        assert_eq!(e.compose(a, b), x);
    }
    for a in 0..8 {
        assert_eq!(e.decompose(a), (a, 0));
    }
    assert_eq!(e.decompose(0), (0, 0));
}

#[test]
fn default_extensions_have_beta_of_order_q_plus_one() {
    for q in [3u32, 4, 5, 7, 8, 9, 11, 16] {
        let f = Field::of_order(q).unwrap();
        let e = ExtField::new(&f, None, None).unwrap();
        assert_eq!(order_by_powers(&e, e.beta()), (q + 1) as u64);
        assert_eq!(order_by_powers(&e, e.theta_ext()), (q * q - 1) as u64);
        let b = e.beta();
        assert_eq!(e.mul(e.pow(b, q as i64).unwrap(), b), 1);
        for x in 0..q * q {
            assert_eq!(e.pow(x, (q * q) as i64).unwrap(), x);
            assert_eq!(e.conj(e.conj(x)), x);
            assert_eq!(e.in_base(x), e.conj(x) == x);
        }
    }
}

#[test]
fn extension_overrides_are_checked() {
    let f = Field::of_order(8).unwrap();
    assert_eq!(ExtField::new(&f, Some((0, 1)), None).unwrap_err(), Error::ReducibleModulus);
    assert_eq!(ExtField::new(&f, Some((1, 2)), Some(8)).unwrap_err(), Error::NotPrimitive);
}

fn big_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![16u32, 25, 27, 32, 49, 64, 81, 121, 125, 128, 243, 256, 343, 625, 729, 1024])
        .prop_map(|q| Field::of_order(q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn axioms_sampled_on_larger_fields(f in big_field(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = f.q();
        for _ in 0..160 {
            let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul_reference(a, b));
            prop_assert_eq!(f.add(a, b), f.add_reference(a, b));
        }
    }

    #[test]
    fn pow_adds_exponents(a in 1u32..8, i in -20i64..20, j in -20i64..20) {
        let f = Field::of_order(8).unwrap();
        prop_assert_eq!(f.mul(f.pow(a, i).unwrap(), f.pow(a, j).unwrap()), f.pow(a, i + j).unwrap());
    }
}
