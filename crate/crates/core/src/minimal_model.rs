//! Virasoro minimal models `(p, p')`, their labels, conformal dimensions and
//! exact characters from the Rocha-Caridi bosonic formula.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qseries::{div_binomial, Rational, ShiftedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalModel {
    p: i64,
    p_prime: i64,
}

/// Label `(r, s)` with `1 <= r <= p - 1` and `1 <= s <= p' - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterLabel {
    pub r: i64,
    pub s: i64,
}

impl CharacterLabel {
    pub fn new(r: i64, s: i64) -> Self {
        CharacterLabel { r, s }
    }
}

impl MinimalModel {
    pub fn new(p: i64, p_prime: i64) -> Result<Self> {
        if p < 2 || p_prime < 2 {
            return Err(Error::InvalidModel {
                p,
                p_prime,
                reason: "p and p' must be at least 2",
            });
        }
        if p.gcd(&p_prime) != 1 {
            return Err(Error::InvalidModel {
                p,
                p_prime,
                reason: "p and p' must be coprime",
            });
        }
        Ok(MinimalModel { p, p_prime })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn p_prime(&self) -> i64 {
        self.p_prime
    }

    /// Every valid label, ordered by `(r, s)`.
    pub fn labels(&self) -> impl Iterator<Item = CharacterLabel> + '_ {
        (1..self.p).flat_map(move |r| (1..self.p_prime).map(move |s| CharacterLabel { r, s }))
    }

    pub fn check_label(&self, l: CharacterLabel) -> Result<()> {
        if (1..self.p).contains(&l.r) && (1..self.p_prime).contains(&l.s) {
            Ok(())
        } else {
            Err(Error::InvalidLabel {
                p: self.p,
                p_prime: self.p_prime,
                r: l.r,
                s: l.s,
            })
        }
    }

    /// The label of the same module under `(r, s) -> (p - r, p' - s)`.
    pub fn dual(&self, l: CharacterLabel) -> CharacterLabel {
        CharacterLabel {
            r: self.p - l.r,
            s: self.p_prime - l.s,
        }
    }

    /// `Delta_{r,s} = ((p' r - p s)^2 - (p' - p)^2) / (4 p p')`.
    pub fn conformal_dim(&self, l: CharacterLabel) -> Result<Rational> {
        self.check_label(l)?;
        let (p, pp) = (self.p, self.p_prime);
        let num = (pp * l.r - p * l.s).pow(2) - (pp - p).pow(2);
        Ok(Rational::new(num, 4 * p * pp))
    }

    /// `1 - 6 (p - p')^2 / (p p')`. Informational only.
    pub fn central_charge(&self) -> Rational {
        let (p, pp) = (self.p, self.p_prime);
        Rational::from_integer(1) - Rational::new(6 * (p - pp).pow(2), p * pp)
    }

    /// Exact character, offset `Delta_{r,s}`, trusted `order` steps past the offset.
    pub fn character(&self, l: CharacterLabel, order: usize) -> Result<ShiftedSeries> {
        let delta = self.conformal_dim(l)?;
        Ok(self.normalized_character(l, order)?.shift(delta))
    }

    /// Character divided by `q^Delta`: a power series with constant term 1.
    pub fn normalized_character(&self, l: CharacterLabel, order: usize) -> Result<ShiftedSeries> {
        self.check_label(l)?;
        let mut coeffs = vec![BigInt::zero(); order + 1];
        let pp = self.p * self.p_prime;
        let lin_plus = self.p_prime * l.r - self.p * l.s;
        let lin_minus = self.p_prime * l.r + self.p * l.s;
        let rs = l.r * l.s;
        let top = order as i64;
        // Both quadratics are positive-definite with every exponent >= 0 for
        // valid labels, so each direction stops once the exponent passes `top`
        // after the vertex.
        for (lin, constant, sign) in [(lin_plus, 0, 1i64), (lin_minus, rs, -1)] {
            let exponent = |j: i64| pp * j * j + lin * j + constant;
            for step in [1i64, -1] {
                let mut j = if step == 1 { 0 } else { -1 };
                let mut last = i64::MIN;
                loop {
                    let e = exponent(j);
                    debug_assert!(e >= 0);
                    if e > top && e > last {
                        break;
                    }
                    if e <= top {
                        coeffs[e as usize] += sign;
                    }
                    last = e;
                    j += step;
                }
            }
        }
        for k in 1..=order {
            div_binomial(&mut coeffs, false, k);
        }
        Ok(ShiftedSeries::new(Rational::zero(), coeffs))
    }
}
