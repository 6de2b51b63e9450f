//! Both sides of the factorization identities, built exactly and compared
//! coefficient by coefficient.
//!
//! The product side of every kind is a theta product divided by
//! `(q^n; q^n)_inf`; the sum side is a signed combination of characters
//! `chi_{rb, sb'}(q^n)` over the contributing pairs, times a fixed power of `q`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::minimal_model::{CharacterLabel, MinimalModel};
use crate::pairs::{enumerate_pairs, ContributingPair};
use crate::params::{product_params_of, FactorizationParams, ProductParams, Scheme};
use crate::qseries::{divide_pochhammer, parity_sign, pochhammer, Rational, ShiftedSeries, SignedMonomial};

/// Number of coefficients recorded in a certificate prefix.
pub const PREFIX_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityKind {
    Main,
    MainAEven,
    MainBEven,
    Quint,
    QuintA,
    QuintB,
    QuintC,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 7] = [
        IdentityKind::Main,
        IdentityKind::MainAEven,
        IdentityKind::MainBEven,
        IdentityKind::Quint,
        IdentityKind::QuintA,
        IdentityKind::QuintB,
        IdentityKind::QuintC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Main => "main",
            IdentityKind::MainAEven => "main_a_even",
            IdentityKind::MainBEven => "main_b_even",
            IdentityKind::Quint => "quint",
            IdentityKind::QuintA => "quint_a",
            IdentityKind::QuintB => "quint_b",
            IdentityKind::QuintC => "quint_c",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn scheme(self) -> Scheme {
        match self {
            IdentityKind::Main | IdentityKind::MainAEven | IdentityKind::MainBEven => Scheme::Triple,
            _ => Scheme::Quintuple,
        }
    }

    /// Kinds whose sign rule is searched over two variants.
    pub fn has_variants(self) -> bool {
        !matches!(self, IdentityKind::Main | IdentityKind::Quint)
    }

    /// `Ok` when the kind's hypotheses hold for `fp`, otherwise the failed condition.
    pub fn check_applicable(self, fp: &FactorizationParams) -> Result<()> {
        let fail = |cond: &str| Err(Error::Precondition(format!("{}: {cond}", self.name())));
        if fp.scheme != self.scheme() {
            return fail(&format!("needs a {} tuple", self.scheme()));
        }
        let (n, c, ap) = (fp.n, fp.c, fp.a_prime);
        let (pr, ppr) = (fp.p_reduced(), fp.p_prime_reduced());
        let div = |d: i64, x: i64| x.rem_euclid(d) == 0;
        match self {
            IdentityKind::Main | IdentityKind::Quint => Ok(()),
            IdentityKind::MainAEven if !div(2, n) || !div(4, ap - c) => fail("n even and a' = c mod 4"),
            IdentityKind::MainBEven if !div(2, n) || div(4, ap - c) => fail("n even and a' != c mod 4"),
            IdentityKind::QuintA if !(div(2, n) && (div(2, ppr) || (div(2, pr) && !div(2, c)))) => {
                fail("n even, and p'/b' even or (p/b even and c odd)")
            }
            IdentityKind::QuintB if !(div(4, n) && (div(4, ppr) || (div(4, pr) && div(4, c)))) => {
                fail("4 | n, and 4 | p'/b' or (4 | p/b and 4 | c)")
            }
            IdentityKind::QuintC if !(div(4, n) && (div(4, ppr) || (div(4, pr) && div(4, c + 2)))) => {
                fail("4 | n, and 4 | p'/b' or (4 | p/b and 4 | c + 2)")
            }
            _ => Ok(()),
        }
    }

    pub fn is_applicable(self, fp: &FactorizationParams) -> bool {
        self.check_applicable(fp).is_ok()
    }

    /// `(u, v)` of the triple or quintuple product this kind specializes.
    ///
    /// Triple kinds: `(u, v/u, v; v)`. Quintuple kinds: `(v, u, v/u; v)(u^2 v, v/u^2; v^2)`.
    pub fn theta_arguments(self, pp: &ProductParams) -> (SignedMonomial, SignedMonomial) {
        let big_b = pp.big_b as u64;
        let (ap, c) = (pp.a_prime as u64, pp.c as u64);
        let (neg_u, neg_v) = match self {
            IdentityKind::Main | IdentityKind::Quint => (false, false),
            IdentityKind::MainAEven | IdentityKind::QuintC => (true, true),
            IdentityKind::MainBEven | IdentityKind::QuintB => (false, true),
            IdentityKind::QuintA => (true, false),
        };
        match self.scheme() {
            Scheme::Triple => (
                SignedMonomial::new(neg_u, big_b * (ap + c) / 2),
                SignedMonomial::new(neg_v, big_b * ap),
            ),
            Scheme::Quintuple => (
                SignedMonomial::new(neg_u, big_b * c),
                SignedMonomial::new(neg_v, 2 * big_b * ap),
            ),
        }
    }

    /// Sign of a pair's character in the sum under `variant`.
    pub fn pair_sign(self, pair: &ContributingPair, variant: SignVariant) -> i64 {
        let w = pair.weight;
        let eps = pair.ptype.sign();
        let stated = match self {
            IdentityKind::Main | IdentityKind::Quint => eps,
            IdentityKind::MainAEven => parity_sign(w * (w + 1) / 2),
            IdentityKind::MainBEven => parity_sign(w * (w - 1) / 2),
            IdentityKind::QuintA => eps * parity_sign(w),
            IdentityKind::QuintB => eps * parity_sign(w * (w - 1) / 2),
            IdentityKind::QuintC => eps * parity_sign(w * (w + 1) / 2),
        };
        match variant {
            SignVariant::Swapped if self.has_variants() => stated * parity_sign(w),
            _ => stated,
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for IdentityKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Which sign rule an identity was checked against.
///
/// For the even-n kinds `Swapped` multiplies each stated sign by
/// `(-1)^weight`, which exchanges `t(t+1)/2` and `t(t-1)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVariant {
    AsStated,
    Swapped,
    Failed,
}

impl SignVariant {
    pub fn name(self) -> &'static str {
        match self {
            SignVariant::AsStated => "as_stated",
            SignVariant::Swapped => "swapped",
            SignVariant::Failed => "failed",
        }
    }
}

impl fmt::Display for SignVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The product side `theta_kind / (q^n; q^n)_inf` of a quadruple, to order `order`.
pub fn product_side(kind: IdentityKind, pp: &ProductParams, order: usize) -> Result<ShiftedSeries> {
    if pp.scheme != kind.scheme() {
        return Err(Error::Precondition(format!("{kind} needs a {} quadruple", kind.scheme())));
    }
    pp.check()?;
    let (u, v) = kind.theta_arguments(pp);
    let mut coeffs = match kind.scheme() {
        Scheme::Triple => {
            let w = u.divide_into(v).expect("a' > c");
            pochhammer(&[w, u, v], v, order)?
        }
        Scheme::Quintuple => {
            let u2 = u.square();
            let first = pochhammer(&[v, u, u.divide_into(v).expect("2a' > c")], v, order)?;
            let second = pochhammer(&[u2.times(v), u2.divide_into(v).expect("a' > c")], v.square(), order)?;
            first.mul(&second)
        }
    }
    .coeffs()
    .to_vec();
    let qn = SignedMonomial::plus(pp.n as u64);
    divide_pochhammer(&mut coeffs, &[qn], qn)?;
    Ok(ShiftedSeries::new(Rational::zero(), coeffs))
}

/// Left-hand side for a factorization tuple.
pub fn build_lhs(kind: IdentityKind, fp: &FactorizationParams, order: usize) -> Result<ShiftedSeries> {
    kind.check_applicable(fp)?;
    product_side(kind, &product_params_of(fp), order)
}

/// Exponent of the `q` prefactor on the sum side.
pub fn prefactor_exponent(fp: &FactorizationParams) -> Rational {
    let shift = match fp.scheme {
        Scheme::Triple => fp.c * fp.big_b,
        Scheme::Quintuple => (fp.a_prime - 3 * fp.c) * fp.big_b,
    };
    Rational::new(
        (fp.p - fp.p_prime).pow(2) - shift * shift,
        4 * fp.big_b * fp.a() * fp.a_prime,
    )
}

/// One summand `sign * q^offset * chibar(q^n)` of the sum side.
#[derive(Clone, Debug)]
struct Summand {
    offset: usize,
    sign: i64,
    normalized: Option<ShiftedSeries>,
}

/// Offsets and normalized characters for every pair, independent of signs.
fn summands(fp: &FactorizationParams, pairs: &[ContributingPair], order: usize) -> Result<Vec<Summand>> {
    let model = MinimalModel::new(fp.p, fp.p_prime)?;
    let pref = prefactor_exponent(fp);
    let n = fp.n as usize;
    pairs
        .iter()
        .map(|pair| {
            let label = CharacterLabel::new(pair.r * fp.b, pair.s * fp.b_prime);
            let off = pref + model.conformal_dim(label)? * fp.n;
            if !off.is_integer() || off < Rational::zero() {
                return Err(Error::NonIntegralIdentitySide(format!(
                    "{fp}: chi_{{{},{}}} enters at q^{off}",
                    label.r, label.s
                )));
            }
            let offset = off.to_integer() as usize;
            let normalized = if offset <= order {
                Some(model.normalized_character(label, (order - offset) / n)?)
            } else {
                None
            };
            Ok(Summand {
                offset,
                sign: 0,
                normalized,
            })
        })
        .collect()
}

fn assemble(terms: &[Summand], n: usize, order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for t in terms {
        let Some(chi) = &t.normalized else { continue };
        for (k, c) in chi.coeffs().iter().enumerate() {
            let e = t.offset + n * k;
            if e > order {
                break;
            }
            if t.sign > 0 {
                out[e] += c;
            } else {
                out[e] -= c;
            }
        }
    }
    out
}

/// Right-hand side for a factorization tuple under `variant`.
pub fn build_rhs(
    kind: IdentityKind,
    fp: &FactorizationParams,
    order: usize,
    variant: SignVariant,
) -> Result<ShiftedSeries> {
    kind.check_applicable(fp)?;
    let pairs = enumerate_pairs(fp)?;
    let mut terms = summands(fp, &pairs, order)?;
    for (t, pair) in terms.iter_mut().zip(&pairs) {
        t.sign = kind.pair_sign(pair, variant);
    }
    ShiftedSeries::new(Rational::zero(), assemble(&terms, fp.n as usize, order)).assert_integral()
}

/// Machine-readable verdict of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCertificate {
    pub kind: IdentityKind,
    pub p: i64,
    pub pp: i64,
    pub a: i64,
    pub ap: i64,
    pub b: i64,
    pub bp: i64,
    pub c: i64,
    #[serde(rename = "B")]
    pub big_b: i64,
    pub n: i64,
    pub order: usize,
    pub pairs: Vec<ContributingPair>,
    #[serde(rename = "match")]
    pub matched: bool,
    pub sign_variant: SignVariant,
    pub first_mismatch: Option<usize>,
    pub lhs_prefix: Vec<i64>,
    pub rhs_prefix: Vec<i64>,
}

fn first_mismatch(a: &[BigInt], b: &[BigInt]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

fn prefix(coeffs: &[BigInt]) -> Vec<i64> {
    (0..PREFIX_LEN)
        .map(|i| coeffs.get(i).map_or(0, |c| c.to_i64().unwrap_or(if c < &BigInt::zero() { i64::MIN } else { i64::MAX })))
        .collect()
}

/// Compare both sides to `order`, trying the stated sign rule first and the
/// swapped rule second for the even-n kinds.
pub fn verify(kind: IdentityKind, fp: &FactorizationParams, order: usize) -> Result<IdentityCertificate> {
    let lhs = build_lhs(kind, fp, order)?;
    let lhs = lhs.coeffs();
    let pairs = enumerate_pairs(fp)?;
    let mut terms = summands(fp, &pairs, order)?;
    let variants: &[SignVariant] = if kind.has_variants() {
        &[SignVariant::AsStated, SignVariant::Swapped]
    } else {
        &[SignVariant::AsStated]
    };
    let mut outcome: Option<(SignVariant, Vec<BigInt>)> = None;
    let mut stated: Option<(usize, Vec<BigInt>)> = None;
    for &variant in variants {
        for (t, pair) in terms.iter_mut().zip(&pairs) {
            t.sign = kind.pair_sign(pair, variant);
        }
        let rhs = assemble(&terms, fp.n as usize, order);
        match first_mismatch(lhs, &rhs) {
            None => {
                outcome = Some((variant, rhs));
                break;
            }
            Some(d) if stated.is_none() => stated = Some((d, rhs)),
            Some(_) => {}
        }
    }
    let (matched, sign_variant, mismatch, rhs) = match (outcome, stated) {
        (Some((v, rhs)), _) => (true, v, None, rhs),
        (None, Some((d, rhs))) => (false, SignVariant::Failed, Some(d), rhs),
        (None, None) => unreachable!("at least one variant is tried"),
    };
    Ok(IdentityCertificate {
        kind,
        p: fp.p,
        pp: fp.p_prime,
        a: fp.a(),
        ap: fp.a_prime,
        b: fp.b,
        bp: fp.b_prime,
        c: fp.c,
        big_b: fp.big_b,
        n: fp.n,
        order,
        pairs,
        matched,
        sign_variant,
        first_mismatch: mismatch,
        lhs_prefix: prefix(lhs),
        rhs_prefix: prefix(&rhs),
    })
}

/// `phi_{a',1,c,1} * prod_{j != (c+1)/2} phi_{a',1,2j-1,a'} == 1` to `order`.
pub fn verify_remark_products(a_prime: i64, c: i64, order: usize) -> Result<bool> {
    if a_prime % 2 == 0 || c % 2 == 0 || !(0 < c && c < a_prime) {
        return Err(Error::Precondition(format!(
            "need a', c odd with 0 < c < a', got a' = {a_prime}, c = {c}"
        )));
    }
    let phi = |c, n| ProductParams::new(Scheme::Triple, a_prime, 1, c, n).and_then(|pp| product_side(IdentityKind::Main, &pp, order));
    let mut acc = phi(c, 1)?;
    for j in (1..=(a_prime - 1) / 2).filter(|&j| j != (c + 1) / 2) {
        acc = acc.mul(&phi(2 * j - 1, a_prime)?);
    }
    Ok(acc == ShiftedSeries::one(order))
}
