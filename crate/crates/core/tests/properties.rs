use charfactor_core::params::{canonicalize, enumerate_tuples};
use charfactor_core::qseries::{
    euler_function, pochhammer, quintuple_product_sum, triple_product_sum, Rational, ShiftedSeries, SignedMonomial,
};
use charfactor_core::{ProductParams, Scheme};
use proptest::prelude::*;

fn monomial() -> impl Strategy<Value = SignedMonomial> {
    (any::<bool>(), 0u64..=10).prop_map(|(neg, e)| SignedMonomial::new(neg, e))
}

fn series(max_len: usize) -> impl Strategy<Value = ShiftedSeries> {
    (prop::collection::vec(-20i64..=20, 1..max_len), -5i64..=5, 1i64..=3).prop_map(|(c, num, den)| {
        ShiftedSeries::from_i64s(Rational::new(num, den), &c)
    })
}

fn unit_series(max_len: usize) -> impl Strategy<Value = ShiftedSeries> {
    (any::<bool>(), prop::collection::vec(-20i64..=20, 0..max_len)).prop_map(|(neg, tail)| {
        let mut c = vec![if neg { -1 } else { 1 }];
        c.extend(tail);
        ShiftedSeries::from_ints(&c)
    })
}

proptest! {
    #[test]
    fn jacobi_triple_product(u in monomial(), v in monomial(), order in 0usize..=120) {
        prop_assume!(v.exponent > 0 && u.exponent <= v.exponent);
        let w = u.divide_into(v).unwrap();
        let sum = triple_product_sum(u, v, order).unwrap();
        prop_assert_eq!(sum, pochhammer(&[v, u, w], v, order).unwrap());
    }

    #[test]
    fn quintuple_product(u in monomial(), v in monomial(), order in 0usize..=120) {
        prop_assume!(v.exponent > 2 * u.exponent);
        let lhs = quintuple_product_sum(u, v, order).unwrap();
        let first = pochhammer(&[v, u, u.divide_into(v).unwrap()], v, order).unwrap();
        let u2 = u.square();
        let second = pochhammer(&[u2.times(v), u2.divide_into(v).unwrap()], v.square(), order).unwrap();
        prop_assert_eq!(lhs, first.mul(&second));
    }

    #[test]
    fn multiplication_commutes(a in series(30), b in series(30)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn multiplication_associates(a in series(20), b in series(20), c in series(20)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn addition_cancels(a in series(30)) {
        prop_assert!(a.sub(&a).is_zero());
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series(40)) {
        let inv = a.invert().unwrap();
        let order = a.coeffs().len() - 1;
        prop_assert_eq!(a.mul(&inv), ShiftedSeries::one(order));
        prop_assert_eq!(inv.mul(&a), ShiftedSeries::one(order));
    }

    #[test]
    fn substitution_is_multiplicative(a in unit_series(20), b in unit_series(20), n in 1u64..=4) {
        prop_assert_eq!(a.mul(&b).substitute_power(n), a.substitute_power(n).mul(&b.substitute_power(n)));
    }
}

#[test]
fn telescoping_pochhammer() {
    for k in 1..=10u64 {
        let factors: Vec<_> = (1..=k).map(SignedMonomial::plus).collect();
        let p = pochhammer(&factors, SignedMonomial::plus(k), 100).unwrap();
        assert_eq!(p, euler_function(100), "k = {k}");
    }
}

#[test]
fn canonicalize_is_idempotent() {
    for scheme in [Scheme::Triple, Scheme::Quintuple] {
        for ap in 1..=9 {
            for c in 0..ap {
                for big_b in 1..=6 {
                    for n in 1..=12 {
                        let pp = ProductParams { scheme, a_prime: ap, big_b, c, n };
                        let (once, k) = canonicalize(&pp);
                        assert_eq!(canonicalize(&once), (once, 1));
                        assert_eq!(once.n * k, n);
                    }
                }
            }
        }
    }
}

#[test]
fn n_one_products_are_nonnegative() {
    use charfactor_core::scanner::coefficients;
    use num_traits::Signed;
    for scheme in [Scheme::Triple, Scheme::Quintuple] {
        for ap in 1..=8 {
            for c in 0..ap {
                for big_b in 1..=3 {
                    let Ok(pp) = ProductParams::new(scheme, ap, big_b, c, 1) else { continue };
                    if !pp.is_canonical() {
                        continue;
                    }
                    let xs = coefficients(&pp, 200).unwrap();
                    assert!(xs.iter().all(|x| !x.is_negative()), "{pp}");
                }
            }
        }
    }
}

#[test]
fn realizations_project_back() {
    use charfactor_core::params::{find_realizations, product_params_of};
    for scheme in [Scheme::Triple, Scheme::Quintuple] {
        for fp in enumerate_tuples(scheme, 120) {
            let pp = product_params_of(&fp);
            let found = find_realizations(&pp, usize::MAX);
            assert!(found.contains(&fp), "{fp}");
        }
    }
}
