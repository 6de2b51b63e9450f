use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::series::{div_binomial, mul_binomial, Rational, ShiftedSeries};
use crate::error::{Error, Result};

/// A term `±q^e` with `e >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub negative: bool,
    pub exponent: u64,
}

impl SignedMonomial {
    pub const fn plus(exponent: u64) -> Self {
        SignedMonomial {
            negative: false,
            exponent,
        }
    }

    pub const fn minus(exponent: u64) -> Self {
        SignedMonomial {
            negative: true,
            exponent,
        }
    }

    pub const fn new(negative: bool, exponent: u64) -> Self {
        SignedMonomial { negative, exponent }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// Sign of `self^k` for any integer `k`, negative `k` included.
    pub fn sign_pow(self, k: i64) -> i64 {
        if self.negative {
            parity_sign(k)
        } else {
            1
        }
    }

    pub fn times(self, other: Self) -> Self {
        SignedMonomial {
            negative: self.negative != other.negative,
            exponent: self.exponent + other.exponent,
        }
    }

    pub fn square(self) -> Self {
        self.times(self)
    }

    /// `other / self`, defined when `other.exponent >= self.exponent`.
    pub fn divide_into(self, other: Self) -> Option<Self> {
        other
            .exponent
            .checked_sub(self.exponent)
            .map(|exponent| SignedMonomial {
                negative: self.negative != other.negative,
                exponent,
            })
    }
}

/// `(-1)^k` with the mathematically correct answer for negative `k`.
pub fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Expansion of `prod_{i>=0} prod_j (1 - u_j v^i)` to order `order`.
pub fn pochhammer(factors: &[SignedMonomial], base: SignedMonomial, order: usize) -> Result<ShiftedSeries> {
    if base.exponent == 0 {
        return Err(Error::NonConvergentProduct);
    }
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::one();
    for &u in factors {
        for (e, negative) in factor_terms(u, base, order) {
            mul_binomial(&mut coeffs, negative, e);
        }
    }
    Ok(ShiftedSeries::new(Rational::zero(), coeffs))
}

/// `1 / (u_1, ..., u_k; v)_inf` to order `order`, built by repeated geometric division.
pub fn pochhammer_inverse(
    factors: &[SignedMonomial],
    base: SignedMonomial,
    order: usize,
) -> Result<ShiftedSeries> {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::one();
    divide_pochhammer(&mut coeffs, factors, base)?;
    Ok(ShiftedSeries::new(Rational::zero(), coeffs))
}

/// Multiply an integer-grid coefficient vector (offset 0) by `1 / (factors; base)_inf` in place.
pub(crate) fn divide_pochhammer(
    coeffs: &mut [BigInt],
    factors: &[SignedMonomial],
    base: SignedMonomial,
) -> Result<()> {
    if base.exponent == 0 {
        return Err(Error::NonConvergentProduct);
    }
    let order = coeffs.len() - 1;
    for &u in factors {
        for (e, negative) in factor_terms(u, base, order) {
            if e == 0 {
                if negative {
                    // 1/(1 + 1) is not integral
                    return Err(Error::NonInvertible("2".into()));
                }
                return Err(Error::NonInvertible("0".into()));
            }
            div_binomial(coeffs, negative, e);
        }
    }
    Ok(())
}

/// The factors `(1 - s q^e)` of `(u; v)_inf` with `e <= order`, as `(e, s == -1)`.
fn factor_terms(
    u: SignedMonomial,
    v: SignedMonomial,
    order: usize,
) -> impl Iterator<Item = (usize, bool)> {
    let order = order as u64;
    (0u64..)
        .map(move |i| (u.exponent + i * v.exponent, u.negative ^ (v.negative && i % 2 == 1)))
        .take_while(move |&(e, _)| e <= order)
        .map(|(e, neg)| (e as usize, neg))
}

/// Walk `j = 0, 1, 2, ...` and `j = -1, -2, ...`, feeding every `j` to `visit`
/// until, in each direction, two consecutive `j` have all branch exponents
/// past `order` and still growing.
fn walk_outward(order: i64, branches: &dyn Fn(i64) -> Vec<i64>, visit: &mut dyn FnMut(i64)) {
    for step in [1i64, -1] {
        let mut j = if step == 1 { 0 } else { -1 };
        let mut prev: Option<Vec<i64>> = None;
        let mut streak = 0;
        loop {
            let exps = branches(j);
            visit(j);
            let past = exps.iter().all(|&e| e > order);
            let growing = prev
                .as_ref()
                .map(|p| exps.iter().zip(p).all(|(e, q)| e >= q))
                .unwrap_or(false);
            if past && growing {
                streak += 1;
                if streak >= 2 {
                    break;
                }
            } else {
                streak = 0;
            }
            prev = Some(exps);
            j += step;
        }
    }
}

fn collect_terms(terms: BTreeMap<i64, BigInt>, order: usize, on_negative: fn(i64) -> Error) -> Result<ShiftedSeries> {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        if e < 0 {
            return Err(on_negative(e));
        }
        if (e as usize) <= order {
            coeffs[e as usize] += c;
        }
    }
    Ok(ShiftedSeries::new(Rational::zero(), coeffs))
}

/// The bilateral theta sum `sum_j (-1)^j u^j v^(j(j-1)/2)` to order `order`.
pub fn triple_product_sum(u: SignedMonomial, v: SignedMonomial, order: usize) -> Result<ShiftedSeries> {
    if v.exponent == 0 {
        return Err(Error::NonConvergentProduct);
    }
    let (eu, ev) = (u.exponent as i64, v.exponent as i64);
    let exponent = move |j: i64| j * eu + ev * (j * (j - 1) / 2);
    let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
    walk_outward(order as i64, &|j| vec![exponent(j)], &mut |j| {
        let e = exponent(j);
        if e <= order as i64 {
            let sign = parity_sign(j) * u.sign_pow(j) * v.sign_pow(j * (j - 1) / 2);
            *terms.entry(e).or_default() += sign;
        }
    });
    collect_terms(terms, order, Error::DivergentTriple)
}

/// The quintuple theta sum `sum_j (u^(-3j) - u^(3j+1)) v^(j(3j+1)/2)` to order `order`.
///
/// Negative powers of `u` are allowed in intermediate terms; a surviving
/// term with negative total exponent is an error.
pub fn quintuple_product_sum(u: SignedMonomial, v: SignedMonomial, order: usize) -> Result<ShiftedSeries> {
    if v.exponent == 0 {
        return Err(Error::NonConvergentProduct);
    }
    let (eu, ev) = (u.exponent as i64, v.exponent as i64);
    let tri = |j: i64| j * (3 * j + 1) / 2;
    let first = move |j: i64| -3 * j * eu + ev * tri(j);
    let second = move |j: i64| (3 * j + 1) * eu + ev * tri(j);
    let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
    walk_outward(order as i64, &|j| vec![first(j), second(j)], &mut |j| {
        let vs = v.sign_pow(tri(j));
        let e1 = first(j);
        if e1 <= order as i64 {
            *terms.entry(e1).or_default() += u.sign_pow(-3 * j) * vs;
        }
        let e2 = second(j);
        if e2 <= order as i64 {
            *terms.entry(e2).or_default() -= u.sign_pow(3 * j + 1) * vs;
        }
    });
    collect_terms(terms, order, Error::DivergentQuintuple)
}

/// `(q; q)_inf` to order `order`.
pub fn euler_function(order: usize) -> ShiftedSeries {
    pochhammer(&[SignedMonomial::plus(1)], SignedMonomial::plus(1), order).expect("base exponent is 1")
}
