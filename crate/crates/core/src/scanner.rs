//! The product series `phi` (triple) and `psi` (quintuple), and a bounded
//! scan of the sign pattern `x_j x_{j+n} >= 0` of their coefficients.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::params::{canonicalize, ProductParams, Scheme};
use crate::qseries::{Rational, ShiftedSeries};
use crate::verifier::{product_side, IdentityKind};

/// Which positivity theorem, if any, covers a quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coverage {
    /// Every odd prime of `n` divides `a'` (triple), or every prime of `n`
    /// other than 3 divides `a'` (quintuple).
    Covered1,
    /// `n` prime and `B` odd (triple only).
    Covered2,
    NotCovered,
}

impl Coverage {
    pub fn name(self) -> &'static str {
        match self {
            Coverage::Covered1 => "case1",
            Coverage::Covered2 => "case2",
            Coverage::NotCovered => "none",
        }
    }

    pub fn is_covered(self) -> bool {
        self != Coverage::NotCovered
    }
}

impl Serialize for Coverage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A pair of coefficients at distance `n` with strictly opposite signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub j: usize,
    #[serde(serialize_with = "as_decimal")]
    pub lo: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub hi: BigInt,
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignReport {
    pub scheme: Scheme,
    pub ap: i64,
    #[serde(rename = "B")]
    pub big_b: i64,
    pub c: i64,
    pub n: i64,
    pub order: usize,
    pub covered: Coverage,
    pub support: Vec<i64>,
    pub violations: Vec<Violation>,
    /// Degrees with a nonzero coefficient outside the support residues.
    #[serde(skip)]
    pub off_support: Vec<usize>,
}

impl SignReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn require(pp: &ProductParams, scheme: Scheme) -> Result<()> {
    if pp.scheme != scheme {
        return Err(Error::Precondition(format!("expected a {scheme} quadruple, got {pp}")));
    }
    Ok(())
}

/// `(q^{B(a'-c)/2}, q^{B(a'+c)/2}, q^{Ba'}; q^{Ba'})_inf / (q^n; q^n)_inf`.
pub fn phi_series(pp: &ProductParams, order: usize) -> Result<ShiftedSeries> {
    require(pp, Scheme::Triple)?;
    product_side(IdentityKind::Main, pp, order)
}

/// `(q^{Bc}, q^{B(2a'-c)}, q^{2Ba'}; q^{2Ba'})_inf (q^{2B(a'+c)}, q^{2B(a'-c)}; q^{4Ba'})_inf / (q^n; q^n)_inf`.
pub fn psi_series(pp: &ProductParams, order: usize) -> Result<ShiftedSeries> {
    require(pp, Scheme::Quintuple)?;
    product_side(IdentityKind::Quint, pp, order)
}

/// `phi` or `psi` according to the scheme.
pub fn product_series(pp: &ProductParams, order: usize) -> Result<ShiftedSeries> {
    match pp.scheme {
        Scheme::Triple => phi_series(pp, order),
        Scheme::Quintuple => psi_series(pp, order),
    }
}

/// Distinct prime divisors of `n`.
fn prime_divisors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Classification of the canonical form of `pp`.
pub fn covered_case(pp: &ProductParams) -> Coverage {
    let (cp, _) = canonicalize(pp);
    let primes = prime_divisors(cp.n);
    match cp.scheme {
        Scheme::Triple => {
            if primes.iter().all(|&q| q == 2 || cp.a_prime % q == 0) {
                Coverage::Covered1
            } else if primes == [cp.n] && cp.big_b % 2 == 1 {
                Coverage::Covered2
            } else {
                Coverage::NotCovered
            }
        }
        Scheme::Quintuple => {
            if primes.iter().all(|&q| q == 3 || cp.a_prime % q == 0) {
                Coverage::Covered1
            } else {
                Coverage::NotCovered
            }
        }
    }
}

/// The values whose residues mod `n` bound the support: `m B (a'm + c) / 2`
/// for `m = 0..2n` (triple) or `m B (3a'm + a' - 3c)` for `m = 0..n` (quintuple).
pub fn support_values(pp: &ProductParams) -> Vec<i64> {
    let (ap, big_b, c, n) = (pp.a_prime, pp.big_b, pp.c, pp.n);
    match pp.scheme {
        Scheme::Triple => (0..2 * n).map(|m| m * big_b * (ap * m + c) / 2).collect(),
        Scheme::Quintuple => (0..n).map(|m| m * big_b * (3 * ap * m + ap - 3 * c)).collect(),
    }
}

/// How many support values land on each residue `0..n`.
pub fn residue_multiplicities(pp: &ProductParams) -> Vec<usize> {
    let mut counts = vec![0; pp.n as usize];
    for v in support_values(pp) {
        counts[v.rem_euclid(pp.n) as usize] += 1;
    }
    counts
}

/// Sorted set of support residues mod `n`.
pub fn support_residues(pp: &ProductParams) -> Vec<i64> {
    let set: BTreeSet<i64> = support_values(pp).into_iter().map(|v| v.rem_euclid(pp.n)).collect();
    set.into_iter().collect()
}

/// Coefficients `x_0..=x_order` of `phi` or `psi`, computed on the canonical
/// quadruple and expanded back with `q -> q^k`.
pub fn coefficients(pp: &ProductParams, order: usize) -> Result<Vec<BigInt>> {
    pp.check()?;
    let (cp, k) = canonicalize(pp);
    let k = k as usize;
    let reduced = product_series(&cp, order.div_ceil(k))?;
    let full = reduced.substitute_power(k as u64).truncate(Rational::from_integer(order as i64));
    Ok(full.coeffs().to_vec())
}

/// Scan `x_j x_{j+n} >= 0` for `j + n <= order`.
pub fn scan(pp: &ProductParams, order: usize) -> Result<SignReport> {
    let xs = coefficients(pp, order)?;
    let n = pp.n as usize;
    let violations = (0..xs.len().saturating_sub(n))
        .filter(|&j| (&xs[j] * &xs[j + n]).is_negative())
        .map(|j| Violation {
            j,
            lo: xs[j].clone(),
            hi: xs[j + n].clone(),
        })
        .collect();
    let support = support_residues(pp);
    let mut in_support = vec![false; n];
    for &r in &support {
        in_support[r as usize] = true;
    }
    let off_support = (0..xs.len()).filter(|&j| !xs[j].is_zero() && !in_support[j % n]).collect();
    Ok(SignReport {
        scheme: pp.scheme,
        ap: pp.a_prime,
        big_b: pp.big_b,
        c: pp.c,
        n: pp.n,
        order,
        covered: covered_case(pp),
        support,
        violations,
        off_support,
    })
}
