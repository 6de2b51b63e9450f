//! Contributing pairs `(r, s)` and their weights.
//!
//! A pair with `0 < r < p/b`, `0 < s < p'/b'` contributes the character
//! `chi_{rb, sb'}` to the alternating sum of a factorization identity.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{FactorizationParams, Scheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairType {
    First,
    Second,
}

impl PairType {
    /// `1` or `2`.
    pub fn index(self) -> u8 {
        match self {
            PairType::First => 1,
            PairType::Second => 2,
        }
    }

    /// `+1` for the first type, `-1` for the second.
    pub fn sign(self) -> i64 {
        match self {
            PairType::First => 1,
            PairType::Second => -1,
        }
    }
}

impl Serialize for PairType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ContributingPair {
    pub r: i64,
    pub s: i64,
    #[serde(rename = "type")]
    pub ptype: PairType,
    /// `t_{r,s}` for triple tuples, `f_{r,s}` for quintuple tuples.
    pub weight: i64,
}

impl fmt::Display for ContributingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) type {} weight {}", self.r, self.s, self.ptype.index(), self.weight)
    }
}

/// Contributing pairs of either scheme, sorted by `(s, r)`.
pub fn enumerate_pairs(fp: &FactorizationParams) -> Result<Vec<ContributingPair>> {
    match fp.scheme {
        Scheme::Triple => enumerate_triple_pairs(fp),
        Scheme::Quintuple => enumerate_quintuple_pairs(fp),
    }
}

/// Range of `(r, s)` in `(s, r)` order, with `p' r / b'` and `p s / b`.
fn labels(fp: &FactorizationParams) -> impl Iterator<Item = (i64, i64, i64, i64)> + '_ {
    let (pr, ps) = (fp.p_reduced(), fp.p_prime_reduced());
    (1..ps).flat_map(move |s| (1..pr).map(move |r| (r, s, fp.p_prime * r / fp.b_prime, fp.p * s / fp.b)))
}

/// Whether `(r, s)` satisfies either membership congruence, ignoring the range.
fn solves_membership(fp: &FactorizationParams, r: i64, s: i64) -> bool {
    let (x, y, c, ap) = (fp.p_prime * r / fp.b_prime, fp.p * s / fp.b, fp.c, fp.a_prime);
    let modulus = 2 * fp.a() * ap;
    let (u1, u2) = match fp.scheme {
        Scheme::Triple => (x - y + c, x + y - c),
        Scheme::Quintuple => (x - y - ap + 3 * c, x + y + ap - 3 * c),
    };
    u1.rem_euclid(modulus) == 0 || u2.rem_euclid(modulus) == 0
}

/// Solutions of the membership congruences on the edges `r = 0` or `s = 0`.
///
/// These index vanishing characters. They occur only for quintuple tuples
/// with `c = 0`, where they make up the shortfall of the pair count.
pub fn boundary_solutions(fp: &FactorizationParams) -> Vec<(i64, i64)> {
    let (pr, ps) = (fp.p_reduced(), fp.p_prime_reduced());
    let edge = (0..ps).map(|s| (0, s)).chain((1..pr).map(|r| (r, 0)));
    edge.filter(|&(r, s)| solves_membership(fp, r, s)).collect()
}

fn finish(fp: &FactorizationParams, pairs: Vec<ContributingPair>) -> Result<Vec<ContributingPair>> {
    let boundary = boundary_solutions(fp).len();
    if (pairs.len() + boundary) as i64 != fp.n || (boundary > 0 && fp.c != 0) {
        return Err(Error::LemmaViolation(format!(
            "{fp}: found {} contributing pairs and {boundary} boundary solutions, expected n = {}",
            pairs.len(),
            fp.n
        )));
    }
    Ok(pairs)
}

/// Pairs for `a = 2`. Weight `t = (p'r/b' - ps/b + c) / 2`.
pub fn enumerate_triple_pairs(fp: &FactorizationParams) -> Result<Vec<ContributingPair>> {
    if fp.scheme != Scheme::Triple {
        return Err(Error::Precondition("triple pairs need a = 2".into()));
    }
    let modulus = 4 * fp.a_prime;
    let mut out = Vec::new();
    for (r, s, x, y) in labels(fp) {
        let first = (x - y + fp.c).rem_euclid(modulus) == 0;
        let second = (x + y - fp.c).rem_euclid(modulus) == 0;
        let lemma = r % 2 == 1 && (fp.p * s - fp.b * fp.c).rem_euclid(fp.a_prime) == 0;
        if first && second {
            return Err(Error::LemmaViolation(format!("{fp}: ({r}, {s}) is of both types")));
        }
        if (first || second) != lemma {
            return Err(Error::LemmaViolation(format!(
                "{fp}: ({r}, {s}) membership disagrees with r odd and ps = bc mod a'"
            )));
        }
        if first || second {
            let t = (x - y + fp.c) / 2;
            let ptype = if first { PairType::First } else { PairType::Second };
            if (t.rem_euclid(2) == 0) != first {
                return Err(Error::LemmaViolation(format!("{fp}: ({r}, {s}) weight parity")));
            }
            out.push(ContributingPair { r, s, ptype, weight: t });
        }
    }
    finish(fp, out)
}

/// Pairs for `a = 3`.
///
/// Type 1: `f = (p'r/b' - ps/b - a' + 3c) / (6a')`.
/// Type 2: `f = -(p'r/b' + ps/b + a' - 3c) / (6a')`.
pub fn enumerate_quintuple_pairs(fp: &FactorizationParams) -> Result<Vec<ContributingPair>> {
    if fp.scheme != Scheme::Quintuple {
        return Err(Error::Precondition("quintuple pairs need a = 3".into()));
    }
    let (ap, c) = (fp.a_prime, fp.c);
    let modulus = 6 * ap;
    let mut out = Vec::new();
    for (r, s, x, y) in labels(fp) {
        let u1 = x - y - ap + 3 * c;
        let u2 = x + y + ap - 3 * c;
        let first = u1.rem_euclid(modulus) == 0;
        let second = u2.rem_euclid(modulus) == 0;
        let lemma_first = (x + y - ap - 3 * c).rem_euclid(modulus) == 0;
        let lemma_second = (x - y + ap + 3 * c).rem_euclid(modulus) == 0;
        if first && second {
            return Err(Error::LemmaViolation(format!("{fp}: ({r}, {s}) is of both types")));
        }
        if first != lemma_first || second != lemma_second {
            return Err(Error::LemmaViolation(format!(
                "{fp}: ({r}, {s}) membership disagrees with the 6a' criterion"
            )));
        }
        if first {
            out.push(ContributingPair {
                r,
                s,
                ptype: PairType::First,
                weight: u1 / modulus,
            });
        } else if second {
            out.push(ContributingPair {
                r,
                s,
                ptype: PairType::Second,
                weight: -u2 / modulus,
            });
        }
    }
    finish(fp, out)
}
