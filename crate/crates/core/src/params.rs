//! Factorization parameter tuples `(p, p', a, a', b, b', c)` and the product
//! quadruples `(a', B, c, n)` they induce.
//!
//! `b, b'` are the scaling factors, `a, a'` the moduli and `c` the common
//! residue; `B = b b'` and `n = p p' / (a a' b b')`. The scheme fixes `a`:
//! `a = 2` for triple products and `a = 3` for quintuple products.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// `a = 2`, expanded with the Jacobi triple product.
    Triple,
    /// `a = 3`, expanded with the quintuple product.
    Quintuple,
}

impl Scheme {
    /// The modulus `a`.
    pub fn a(self) -> i64 {
        match self {
            Scheme::Triple => 2,
            Scheme::Quintuple => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Triple => "triple",
            Scheme::Quintuple => "quintuple",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated tuple `(p, p', a, a', b, b', c)` with derived `B` and `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorizationParams {
    pub scheme: Scheme,
    pub p: i64,
    pub p_prime: i64,
    pub a_prime: i64,
    pub b: i64,
    pub b_prime: i64,
    pub c: i64,
    pub big_b: i64,
    pub n: i64,
}

impl FactorizationParams {
    pub fn a(&self) -> i64 {
        self.scheme.a()
    }

    /// `p / b`
    pub fn p_reduced(&self) -> i64 {
        self.p / self.b
    }

    /// `p' / b'`
    pub fn p_prime_reduced(&self) -> i64 {
        self.p_prime / self.b_prime
    }
}

impl fmt::Display for FactorizationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (p,p',a',b,b',c)=({},{},{},{},{},{}) B={} n={}",
            self.scheme, self.p, self.p_prime, self.a_prime, self.b, self.b_prime, self.c, self.big_b, self.n
        )
    }
}

/// Check every constraint on a factorization tuple and derive `B`, `n`.
pub fn validate(
    scheme: Scheme,
    p: i64,
    p_prime: i64,
    a_prime: i64,
    b: i64,
    b_prime: i64,
    c: i64,
) -> Result<FactorizationParams> {
    let a = scheme.a();
    if p < 2 || p_prime < 2 {
        return Err(Error::params("range", format!("p = {p} and p' = {p_prime} must be at least 2")));
    }
    if a_prime < 1 || b < 1 || b_prime < 1 {
        return Err(Error::params("range", "a', b, b' must be positive"));
    }
    if !(0 <= c && c < a_prime) {
        return Err(Error::params("range", format!("need 0 <= c < a', got c = {c}, a' = {a_prime}")));
    }
    if p.gcd(&p_prime) != 1 {
        return Err(Error::params("coprimality", format!("gcd({p}, {p_prime}) != 1")));
    }
    if p % (a * b) != 0 {
        return Err(Error::params("divisibility", format!("a*b = {} does not divide p = {p}", a * b)));
    }
    if p_prime % (a_prime * b_prime) != 0 {
        return Err(Error::params(
            "divisibility",
            format!("a'*b' = {} does not divide p' = {p_prime}", a_prime * b_prime),
        ));
    }
    if scheme == Scheme::Triple && c % 2 == 0 {
        return Err(Error::params("parity", format!("c = {c} must be odd for triple products")));
    }
    let big_b = b * b_prime;
    let n = p * p_prime / (a * a_prime * big_b);
    Ok(FactorizationParams {
        scheme,
        p,
        p_prime,
        a_prime,
        b,
        b_prime,
        c,
        big_b,
        n,
    })
}

/// Product-side quadruple `(a', B, c, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductParams {
    pub scheme: Scheme,
    pub a_prime: i64,
    pub big_b: i64,
    pub c: i64,
    pub n: i64,
}

impl ProductParams {
    /// Validated quadruple: `a' > c >= 0`, `B, n >= 1`, and the scheme's
    /// arithmetic condition (`a' c` odd for triple, `3 ∤ a'` for quintuple).
    pub fn new(scheme: Scheme, a_prime: i64, big_b: i64, c: i64, n: i64) -> Result<Self> {
        let pp = ProductParams {
            scheme,
            a_prime,
            big_b,
            c,
            n,
        };
        pp.check()?;
        Ok(pp)
    }

    pub fn check(&self) -> Result<()> {
        if self.big_b < 1 || self.n < 1 {
            return Err(Error::params("range", "B and n must be positive"));
        }
        if !(0 <= self.c && self.c < self.a_prime) {
            return Err(Error::params(
                "range",
                format!("need 0 <= c < a', got c = {}, a' = {}", self.c, self.a_prime),
            ));
        }
        match self.scheme {
            Scheme::Triple if (self.a_prime * self.c) % 2 == 0 => Err(Error::params(
                "parity",
                format!("a' c = {} must be odd", self.a_prime * self.c),
            )),
            Scheme::Quintuple if self.a_prime % 3 == 0 => Err(Error::params(
                "coprimality",
                format!("a' = {} must be prime to 3", self.a_prime),
            )),
            _ => Ok(()),
        }
    }

    pub fn is_canonical(&self) -> bool {
        canonicalize(self).0 == *self
    }
}

impl fmt::Display for ProductParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (a',B,c,n)=({},{},{},{})",
            self.scheme, self.a_prime, self.big_b, self.c, self.n
        )
    }
}

pub fn product_params_of(fp: &FactorizationParams) -> ProductParams {
    ProductParams {
        scheme: fp.scheme,
        a_prime: fp.a_prime,
        big_b: fp.big_b,
        c: fp.c,
        n: fp.n,
    }
}

/// Reduce to `gcd(a', c) = 1` and `gcd(B, n) = 1`.
///
/// Returns the reduced quadruple and the power `k` with
/// `series(original)(q) = series(reduced)(q^k)`. Uses
/// `(k a', B, k c, n) ~ (a', k B, c, n)` and `(a', k B, c, k n)(q) = (a', B, c, n)(q^k)`.
pub fn canonicalize(pp: &ProductParams) -> (ProductParams, i64) {
    let mut out = *pp;
    if out.c > 0 {
        let g = out.a_prime.gcd(&out.c);
        out.a_prime /= g;
        out.c /= g;
        out.big_b *= g;
    }
    let h = out.big_b.gcd(&out.n);
    out.big_b /= h;
    out.n /= h;
    (out, h)
}

/// Every tuple realizing `pp`, ordered by `p` then `b`, at most `limit` of them.
pub fn find_realizations(pp: &ProductParams, limit: usize) -> Vec<FactorizationParams> {
    let a = pp.scheme.a();
    let total = a * pp.a_prime * pp.big_b * pp.n;
    let mut out = Vec::new();
    for p in (2..=total / 2).filter(|p| total % p == 0) {
        let p_prime = total / p;
        if p_prime < 2 || p.gcd(&p_prime) != 1 {
            continue;
        }
        for b in (1..=pp.big_b).filter(|b| pp.big_b % b == 0) {
            if let Ok(fp) = validate(pp.scheme, p, p_prime, pp.a_prime, b, pp.big_b / b, pp.c) {
                out.push(fp);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

/// Every valid tuple of `scheme` with `p p' <= max_product`, in lexicographic
/// order of `(p, p', a', b, b', c)`.
pub fn enumerate_tuples(scheme: Scheme, max_product: i64) -> Vec<FactorizationParams> {
    let mut out = Vec::new();
    for p in 2..=max_product / 2 {
        for p_prime in 2..=max_product / p {
            if p.gcd(&p_prime) != 1 {
                continue;
            }
            for a_prime in (1..=p_prime).filter(|d| p_prime % d == 0) {
                for b in (1..=p).filter(|d| p % d == 0) {
                    for b_prime in (1..=p_prime / a_prime).filter(|d| (p_prime / a_prime) % d == 0) {
                        for c in 0..a_prime {
                            if let Ok(fp) = validate(scheme, p, p_prime, a_prime, b, b_prime, c) {
                                out.push(fp);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        let fp = validate(Scheme::Triple, 2, 9, 3, 1, 1, 1).unwrap();
        assert_eq!((fp.big_b, fp.n), (1, 3));
        let fp = validate(Scheme::Triple, 4, 3, 3, 1, 1, 1).unwrap();
        assert_eq!((fp.big_b, fp.n), (1, 2));
        let fp = validate(Scheme::Quintuple, 9, 2, 2, 1, 1, 1).unwrap();
        assert_eq!((fp.big_b, fp.n), (1, 3));
    }

    fn constraint(e: Error) -> &'static str {
        match e {
            Error::InvalidParams { constraint, .. } => constraint,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_reports_constraint_by_name() {
        let t = Scheme::Triple;
        assert_eq!(constraint(validate(t, 4, 6, 3, 1, 1, 1).unwrap_err()), "coprimality");
        assert_eq!(constraint(validate(t, 3, 9, 3, 1, 1, 1).unwrap_err()), "coprimality");
        assert_eq!(constraint(validate(t, 3, 5, 5, 1, 1, 1).unwrap_err()), "divisibility");
        assert_eq!(constraint(validate(t, 2, 9, 3, 1, 1, 2).unwrap_err()), "parity");
        assert_eq!(constraint(validate(t, 2, 9, 3, 1, 1, 3).unwrap_err()), "range");
        assert_eq!(constraint(validate(t, 1, 9, 3, 1, 1, 1).unwrap_err()), "range");
        assert_eq!(
            constraint(validate(Scheme::Quintuple, 4, 3, 3, 1, 1, 1).unwrap_err()),
            "divisibility"
        );
    }

    #[test]
    fn product_projection() {
        let cases = [
            (Scheme::Triple, 2, 9, (3, 1, 1, 3)),
            (Scheme::Triple, 4, 3, (3, 1, 1, 2)),
            (Scheme::Quintuple, 9, 2, (2, 1, 1, 3)),
        ];
        for (scheme, p, pp, (ap, bb, c, n)) in cases {
            let fp = validate(scheme, p, pp, ap, 1, 1, 1).unwrap();
            assert_eq!(
                product_params_of(&fp),
                ProductParams { scheme, a_prime: ap, big_b: bb, c, n }
            );
        }
    }

    #[test]
    fn canonicalize_examples() {
        let raw = |a_prime, big_b, c, n| ProductParams {
            scheme: Scheme::Triple,
            a_prime,
            big_b,
            c,
            n,
        };
        assert_eq!(canonicalize(&raw(6, 1, 2, 5)), (raw(3, 2, 1, 5), 1));
        assert_eq!(canonicalize(&raw(3, 1, 1, 3)), (raw(3, 1, 1, 3), 1));
        assert_eq!(canonicalize(&raw(3, 2, 1, 2)), (raw(3, 1, 1, 1), 2));
    }

    #[test]
    fn realization_examples() {
        let has = |pp: ProductParams, p, p_prime| {
            find_realizations(&pp, usize::MAX)
                .iter()
                .any(|fp| fp.p == p && fp.p_prime == p_prime && fp.b == 1 && fp.b_prime == 1)
        };
        let t = |a, b, c, n| ProductParams::new(Scheme::Triple, a, b, c, n).unwrap();
        assert!(has(t(3, 1, 1, 3), 2, 9));
        assert!(has(t(3, 1, 1, 1), 2, 3));
        let q = ProductParams::new(Scheme::Quintuple, 2, 1, 1, 3).unwrap();
        assert!(has(q, 9, 2));
    }

    #[test]
    fn realizations_round_trip() {
        for ap in [1, 3, 5, 7] {
            for c in 0..ap {
                for big_b in 1..=4 {
                    for n in 1..=6 {
                        for scheme in [Scheme::Triple, Scheme::Quintuple] {
                            let Ok(pp) = ProductParams::new(scheme, ap, big_b, c, n) else {
                                continue;
                            };
                            let found = find_realizations(&pp, usize::MAX);
                            for fp in &found {
                                assert_eq!(product_params_of(fp), pp);
                            }
                            let mut sorted = found.clone();
                            sorted.sort_by_key(|fp| (fp.p, fp.b));
                            assert_eq!(found, sorted);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn realization_limit() {
        let pp = ProductParams::new(Scheme::Triple, 3, 1, 1, 5).unwrap();
        let all = find_realizations(&pp, usize::MAX);
        assert!(all.len() >= 2);
        assert_eq!(find_realizations(&pp, 1), all[..1].to_vec());
    }

    #[test]
    fn enumerated_tuples_are_valid_and_sorted() {
        let tuples = enumerate_tuples(Scheme::Triple, 60);
        assert!(tuples.iter().any(|fp| (fp.p, fp.p_prime) == (2, 9)));
        for fp in &tuples {
            assert_eq!(
                validate(fp.scheme, fp.p, fp.p_prime, fp.a_prime, fp.b, fp.b_prime, fp.c).as_ref(),
                Ok(fp)
            );
        }
    }
}
