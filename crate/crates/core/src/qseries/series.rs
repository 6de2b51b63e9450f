use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational exponent.
pub type Rational = Ratio<i64>;

/// Series coefficients are exact arbitrary-precision integers.
pub type Coefficient = BigInt;

/// A truncated formal power series `q^offset * sum_k coeffs[k] q^(k/den)`.
///
/// Coefficients are trusted for every absolute exponent up to
/// `offset + (len - 1) / den`; nothing beyond that bound is ever read.
/// Most series live on the integer grid (`den == 1`). Finer grids appear
/// only when two series with incommensurable offsets are added.
#[derive(Clone, Debug)]
pub struct ShiftedSeries {
    offset: Rational,
    den: i64,
    coeffs: Vec<Coefficient>,
}

impl ShiftedSeries {
    /// Series on the integer grid starting at `offset`, trusted to `offset + coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn new(offset: Rational, coeffs: Vec<Coefficient>) -> Self {
        Self::with_grid(offset, 1, coeffs)
    }

    /// Series on the grid `offset + k/den`.
    pub fn with_grid(offset: Rational, den: i64, coeffs: Vec<Coefficient>) -> Self {
        assert!(den >= 1, "grid denominator must be positive");
        assert!(!coeffs.is_empty(), "a series needs at least one trusted coefficient");
        ShiftedSeries { offset, den, coeffs }
    }

    pub fn from_i64s(offset: Rational, coeffs: &[i64]) -> Self {
        Self::new(offset, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Integer-grid power series (offset 0) from small coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_i64s(Rational::zero(), coeffs)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Rational::zero(), vec![BigInt::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `q^exponent` trusted to `exponent + order`.
    pub fn monomial(exponent: Rational, order: usize) -> Self {
        let mut s = Self::one(order);
        s.offset = exponent;
        s
    }

    pub fn offset(&self) -> Rational {
        self.offset
    }

    pub fn grid_denominator(&self) -> i64 {
        self.den
    }

    /// Raw coefficients on the series grid, starting at the offset.
    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    /// Truncation order measured from the offset.
    pub fn order(&self) -> Rational {
        Rational::new((self.coeffs.len() - 1) as i64, self.den)
    }

    /// Largest trusted absolute exponent.
    pub fn bound(&self) -> Rational {
        self.offset + self.order()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient of `q^exponent`, or `None` when the exponent is past the trusted bound.
    pub fn coefficient_at(&self, exponent: Rational) -> Option<Coefficient> {
        if exponent > self.bound() {
            return None;
        }
        if exponent < self.offset {
            return Some(BigInt::zero());
        }
        let idx = (exponent - self.offset) * self.den;
        if !idx.is_integer() {
            return Some(BigInt::zero());
        }
        Some(self.coeffs[idx.to_integer() as usize].clone())
    }

    /// Coefficients of `q^0, ..., q^n` (absolute integer exponents).
    ///
    /// Panics if `n` exceeds the trusted bound.
    pub fn integer_coefficients(&self, n: usize) -> Vec<Coefficient> {
        (0..=n)
            .map(|e| {
                self.coefficient_at(Rational::from_integer(e as i64))
                    .unwrap_or_else(|| panic!("q^{e} lies past the trusted bound {}", self.bound()))
            })
            .collect()
    }

    /// Iterator over `(absolute exponent, coefficient)` for nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Coefficient)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.offset + Rational::new(k as i64, self.den), c))
    }

    /// Multiply by `q^shift`.
    pub fn shift(&self, shift: Rational) -> Self {
        let mut s = self.clone();
        s.offset += shift;
        s
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c *= factor;
        }
        s
    }

    /// Drop every coefficient past the absolute exponent `bound`.
    ///
    /// Bounds at or above the current one leave the series unchanged.
    pub fn truncate(&self, bound: Rational) -> Self {
        if bound >= self.bound() {
            return self.clone();
        }
        let mut s = self.clone();
        if bound < self.offset {
            s.offset = bound;
            s.den = 1;
            s.coeffs = vec![BigInt::zero()];
            return s;
        }
        let len = ((bound - self.offset) * self.den).floor().to_integer() as usize + 1;
        s.coeffs.truncate(len);
        s
    }

    /// Exact sum, truncated to the smaller of the two absolute bounds.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c = -std::mem::take(c);
        }
        s
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let offset = self.offset.min(other.offset);
        let den = lcm(
            lcm(self.den, other.den),
            *(self.offset - other.offset).denom(),
        );
        let bound = self.bound().min(other.bound());
        let len = ((bound - offset) * den).floor().to_integer() as usize + 1;
        let mut coeffs = vec![BigInt::zero(); len];
        for (series, negate) in [(self, false), (other, subtract)] {
            let start = ((series.offset - offset) * den).to_integer() as usize;
            let stride = (den / series.den) as usize;
            for (k, c) in series.coeffs.iter().enumerate() {
                let idx = start + k * stride;
                if idx >= len {
                    break;
                }
                if negate {
                    coeffs[idx] -= c;
                } else {
                    coeffs[idx] += c;
                }
            }
        }
        ShiftedSeries { offset, den, coeffs }
    }

    /// Exact product; offsets add and the result is trusted up to
    /// `min(bound(a) + offset(b), bound(b) + offset(a))`.
    pub fn mul(&self, other: &Self) -> Self {
        let offset = self.offset + other.offset;
        let den = lcm(self.den, other.den);
        let bound = (self.bound() + other.offset).min(other.bound() + self.offset);
        let len = ((bound - offset) * den).floor().to_integer() as usize + 1;
        let sa = (den / self.den) as usize;
        let sb = (den / other.den) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let base = i * sa;
            if base >= len {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let idx = base + j * sb;
                if idx >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[idx] += a * b;
                }
            }
        }
        ShiftedSeries { offset, den, coeffs }
    }

    /// Multiplicative inverse; the leading coefficient must be `+1` or `-1`.
    pub fn invert(&self) -> Result<Self> {
        let lead = &self.coeffs[0];
        if !(lead.is_one() || (-lead).is_one()) {
            return Err(Error::NonInvertible(lead.to_string()));
        }
        let len = self.coeffs.len();
        let mut inv: Vec<BigInt> = Vec::with_capacity(len);
        inv.push(lead.clone());
        for k in 1..len {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &inv[k - i];
                }
            }
            // lead is its own inverse
            inv.push(-(acc * lead));
        }
        Ok(ShiftedSeries {
            offset: -self.offset,
            den: self.den,
            coeffs: inv,
        })
    }

    /// The substitution `q -> q^n`.
    pub fn substitute_power(&self, n: u64) -> Self {
        assert!(n >= 1, "substitution power must be positive");
        let n_us = n as usize;
        let len = (self.coeffs.len() - 1) * n_us + 1;
        let mut coeffs = vec![BigInt::zero(); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * n_us] = c.clone();
        }
        ShiftedSeries {
            offset: self.offset * n as i64,
            den: self.den,
            coeffs,
        }
    }

    /// Re-index on the integer grid, checking that every nonzero coefficient
    /// sits at a nonnegative integer exponent.
    pub fn assert_integral(&self) -> Result<Self> {
        for (e, _) in self.terms() {
            if !e.is_integer() || e.is_negative() {
                return Err(Error::NonIntegral(e));
            }
        }
        let top = self.bound().floor().to_integer();
        let start = self.offset.ceil().to_integer().max(0).min(top);
        let coeffs = (start..=top)
            .map(|e| {
                self.coefficient_at(Rational::from_integer(e))
                    .expect("exponent within trusted range")
            })
            .collect();
        Ok(ShiftedSeries {
            offset: Rational::from_integer(start),
            den: 1,
            coeffs,
        })
    }

    /// Small-integer view of the first `count` coefficients on the integer grid
    /// (absolute exponents `0..count`). Values outside `i64` saturate.
    pub fn prefix_i64(&self, count: usize) -> Vec<i64> {
        self.integer_coefficients(count.saturating_sub(1))
            .iter()
            .map(|c| {
                c.to_i64()
                    .unwrap_or(if c.is_negative() { i64::MIN } else { i64::MAX })
            })
            .collect()
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

impl PartialEq for ShiftedSeries {
    /// Equal when the difference vanishes on the common refinement of both
    /// grids, up to the smaller trusted bound.
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Add for &ShiftedSeries {
    type Output = ShiftedSeries;
    fn add(self, rhs: Self) -> ShiftedSeries {
        ShiftedSeries::add(self, rhs)
    }
}

impl Sub for &ShiftedSeries {
    type Output = ShiftedSeries;
    fn sub(self, rhs: Self) -> ShiftedSeries {
        ShiftedSeries::sub(self, rhs)
    }
}

impl Mul for &ShiftedSeries {
    type Output = ShiftedSeries;
    fn mul(self, rhs: Self) -> ShiftedSeries {
        ShiftedSeries::mul(self, rhs)
    }
}

impl Neg for &ShiftedSeries {
    type Output = ShiftedSeries;
    fn neg(self) -> ShiftedSeries {
        ShiftedSeries::neg(self)
    }
}

impl fmt::Display for ShiftedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (mag.is_one(), e.is_zero()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "q^{e}")?,
                (false, false) => write!(f, "{mag}*q^{e}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.bound() + Rational::new(1, self.den))
    }
}

/// In-place multiplication of an integer-grid coefficient vector by `1 - sign*q^e`.
pub(crate) fn mul_binomial(coeffs: &mut [BigInt], negative: bool, e: usize) {
    if e == 0 {
        if negative {
            for c in coeffs.iter_mut() {
                *c <<= 1;
            }
        } else {
            for c in coeffs.iter_mut() {
                c.set_zero();
            }
        }
        return;
    }
    for d in (e..coeffs.len()).rev() {
        let (lo, hi) = coeffs.split_at_mut(d);
        let src = &lo[d - e];
        if src.is_zero() {
            continue;
        }
        if negative {
            hi[0] += src;
        } else {
            hi[0] -= src;
        }
    }
}

/// In-place multiplication by `1 / (1 - sign*q^e)`, `e >= 1`.
pub(crate) fn div_binomial(coeffs: &mut [BigInt], negative: bool, e: usize) {
    debug_assert!(e >= 1);
    for d in e..coeffs.len() {
        let (lo, hi) = coeffs.split_at_mut(d);
        let src = &lo[d - e];
        if src.is_zero() {
            continue;
        }
        if negative {
            hi[0] -= src;
        } else {
            hi[0] += src;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ints(s: &ShiftedSeries, n: usize) -> Vec<i64> {
        s.integer_coefficients(n)
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn add_cancels() {
        let a = ShiftedSeries::from_ints(&[1, -1, 0, 0]);
        let b = ShiftedSeries::from_ints(&[0, 1, 0, 0]);
        let s = a.add(&b);
        assert_eq!(s, ShiftedSeries::one(3));
        assert_eq!(s.order(), r(3, 1));
    }

    #[test]
    fn add_half_offsets() {
        let a = ShiftedSeries::from_i64s(r(1, 2), &[1, 1]);
        let b = ShiftedSeries::from_i64s(r(1, 2), &[1, -1]);
        let s = a.add(&b);
        assert_eq!(s.offset(), r(1, 2));
        assert_eq!(s.coeffs(), &[BigInt::from(2), BigInt::zero()]);
    }

    #[test]
    fn add_zero_is_identity() {
        let a = ShiftedSeries::from_ints(&[1, -1, -1]);
        assert_eq!(a.add(&ShiftedSeries::zero(2)), a);
    }

    #[test]
    fn add_refines_grid() {
        let a = ShiftedSeries::from_ints(&[1, 1, 1]);
        let b = ShiftedSeries::from_i64s(r(1, 2), &[1, 1]);
        let s = a.add(&b);
        assert_eq!(s.grid_denominator(), 2);
        assert_eq!(s.bound(), r(3, 2));
        assert_eq!(s.coefficient_at(r(1, 2)), Some(BigInt::one()));
        assert_eq!(s.coefficient_at(r(1, 1)), Some(BigInt::one()));
        assert_eq!(s.coefficient_at(r(3, 2)), Some(BigInt::one()));
        assert_eq!(s.coefficient_at(r(2, 1)), None);
    }

    #[test]
    fn add_truncates_to_smaller_bound() {
        let a = ShiftedSeries::from_ints(&[1, 1, 1, 1, 1]);
        let b = ShiftedSeries::from_ints(&[1, 1]);
        assert_eq!(a.add(&b).bound(), r(1, 1));
    }

    #[test]
    fn geometric_inverse() {
        let n = 10;
        let mut one_minus_q = vec![BigInt::zero(); n + 1];
        one_minus_q[0] = BigInt::one();
        one_minus_q[1] = BigInt::from(-1);
        let a = ShiftedSeries::new(Rational::zero(), one_minus_q);
        let geo = ShiftedSeries::from_ints(&[1; 11]);
        assert_eq!(a.mul(&geo), ShiftedSeries::one(n));
        assert_eq!(a.invert().unwrap(), geo);
    }

    #[test]
    fn offsets_add_in_product() {
        let h = ShiftedSeries::monomial(r(1, 2), 4);
        let p = h.mul(&h);
        assert_eq!(p.offset(), r(1, 1));
        assert_eq!(p, ShiftedSeries::monomial(r(1, 1), 4));
    }

    #[test]
    fn hand_convolution() {
        // brute force over all index pairs
        let a = [1i64, -1, -1, 1, 0, 0, 0];
        let b = [1i64, 0, 0, 0, -1, -1, 0];
        let mut expected = [0i64; 7];
        for i in 0..7 {
            for j in 0..7 {
                if i + j < 7 {
                    expected[i + j] += a[i] * b[j];
                }
            }
        }
        assert_eq!(expected, [1, -1, -1, 1, -1, 0, 2]);
        let p = ShiftedSeries::from_ints(&a).mul(&ShiftedSeries::from_ints(&b));
        assert_eq!(ints(&p, 6), expected.to_vec());
    }

    #[test]
    fn invert_identity_and_errors() {
        assert_eq!(ShiftedSeries::one(5).invert().unwrap(), ShiftedSeries::one(5));
        let two = ShiftedSeries::from_ints(&[2, 1]);
        assert!(matches!(two.invert(), Err(Error::NonInvertible(_))));
        let zero_lead = ShiftedSeries::from_ints(&[0, 1]);
        assert!(zero_lead.invert().is_err());
    }

    #[test]
    fn invert_negates_offset() {
        let a = ShiftedSeries::from_i64s(r(3, 5), &[-1, 2, 0]);
        let inv = a.invert().unwrap();
        assert_eq!(inv.offset(), r(-3, 5));
        assert_eq!(a.mul(&inv), ShiftedSeries::one(2));
    }

    #[test]
    fn substitute_power_examples() {
        let a = ShiftedSeries::from_ints(&[1, -1]);
        assert_eq!(a.substitute_power(3), ShiftedSeries::from_ints(&[1, 0, 0, -1]));
        let h = ShiftedSeries::monomial(r(1, 2), 0);
        let s = h.substitute_power(2);
        assert_eq!(s.offset(), r(1, 1));
        let b = ShiftedSeries::from_ints(&[1, -1, -1]);
        let s = b.substitute_power(2);
        assert_eq!(s.order(), r(4, 1));
        assert_eq!(ints(&s, 4), vec![1, 0, -1, 0, -1]);
    }

    #[test]
    fn assert_integral_cases() {
        let h = ShiftedSeries::monomial(r(1, 2), 3);
        let s = h.mul(&h.mul(&ShiftedSeries::from_ints(&[1, 1, 0, 0])));
        let z = s.assert_integral().unwrap();
        assert_eq!(z.offset(), r(1, 1));
        assert_eq!(z, ShiftedSeries::from_i64s(r(1, 1), &[1, 1, 0, 0]));

        let zero = ShiftedSeries::zero(4).shift(r(-1, 5));
        assert!(zero.assert_integral().unwrap().is_zero());

        let third = ShiftedSeries::from_i64s(r(1, 3), &[1, 1]);
        assert_eq!(third.assert_integral(), Err(Error::NonIntegral(r(1, 3))));

        let negative = ShiftedSeries::from_i64s(r(-1, 1), &[1, 1]);
        assert_eq!(negative.assert_integral(), Err(Error::NonIntegral(r(-1, 1))));
    }

    #[test]
    fn equality_sees_one_sided_terms() {
        let a = ShiftedSeries::from_ints(&[1, 0, 0]);
        let b = ShiftedSeries::from_i64s(r(1, 2), &[1, 0]);
        assert_ne!(a, b);
        // beyond the smaller bound nothing is compared
        let c = ShiftedSeries::from_ints(&[1, 0, 5]);
        let d = ShiftedSeries::from_ints(&[1, 0]);
        assert_eq!(c, d);
    }

    #[test]
    fn truncate_and_display() {
        let a = ShiftedSeries::from_ints(&[1, -1, 0, 2]);
        let t = a.truncate(r(1, 1));
        assert_eq!(t.bound(), r(1, 1));
        assert_eq!(format!("{t}"), "1 - q^1 + O(q^2)");
    }

    #[test]
    fn binomial_helpers_round_trip() {
        let mut v: Vec<BigInt> = [1, 2, 3, 4, 5, 6].iter().map(|&x| BigInt::from(x)).collect();
        let orig = v.clone();
        mul_binomial(&mut v, true, 2);
        div_binomial(&mut v, true, 2);
        assert_eq!(v, orig);
        mul_binomial(&mut v, false, 0);
        assert!(v.iter().all(Zero::is_zero));
    }
}
