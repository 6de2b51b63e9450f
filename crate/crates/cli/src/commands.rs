use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use charfactor_core::params::{canonicalize, enumerate_tuples, find_realizations, validate};
use charfactor_core::qseries::{pochhammer, quintuple_product_sum, triple_product_sum, SignedMonomial};
use charfactor_core::scanner::{self, covered_case, scan, SignReport};
use charfactor_core::verifier::{verify, verify_remark_products, IdentityCertificate};
use charfactor_core::{enumerate_pairs, FactorizationParams, IdentityKind, ProductParams, Scheme};

use crate::render;
use crate::{Command, PairsArgs, QuadArgs, RealizeArgs, RemarkArgs, ScanArgs, SelftestArgs, SeriesArgs, TupleArgs, VerifyArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

type CmdResult = Result<i32, String>;

pub fn run(command: Command, out: &mut String) -> CmdResult {
    match command {
        Command::Verify(a) => run_verify(a, out),
        Command::Pairs(a) => run_pairs(a, out),
        Command::Phi(a) => run_series(Scheme::Triple, a, out),
        Command::Psi(a) => run_series(Scheme::Quintuple, a, out),
        Command::Scan(a) => run_scan(a, out),
        Command::Realize(a) => run_realize(a, out),
        Command::Remark(a) => run_remark(a, out),
        Command::Selftest(a) => run_selftest(a, out),
    }
}

/// Thread pool for sweeps, capped by `CHARFACTOR_THREADS` when set.
fn pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("CHARFACTOR_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| format!("CHARFACTOR_THREADS must be a positive integer, got {v:?}"))?;
        builder = builder.num_threads(n.max(1));
    }
    builder.build().map_err(|e| e.to_string())
}

fn required(name: &str, v: Option<i64>) -> Result<i64, String> {
    v.ok_or_else(|| format!("--{name} is required"))
}

fn tuple(scheme: Scheme, t: &TupleArgs) -> Result<FactorizationParams, String> {
    validate(
        scheme,
        required("p", t.p)?,
        required("pp", t.pp)?,
        required("ap", t.ap)?,
        t.b,
        t.bp,
        required("c", t.c)?,
    )
    .map_err(|e| e.to_string())
}

fn quad(scheme: Scheme, q: &QuadArgs) -> Result<ProductParams, String> {
    ProductParams::new(scheme, required("ap", q.ap)?, q.big_b, required("c", q.c)?, required("n", q.n)?)
        .map_err(|e| e.to_string())
}

fn json<T: Serialize + ?Sized>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("serializable"));
    out.push('\n');
}

fn run_verify(a: VerifyArgs, out: &mut String) -> CmdResult {
    let kind: IdentityKind = a.kind.into();
    let certs: Vec<IdentityCertificate> = match a.sweep {
        None => {
            let fp = tuple(kind.scheme(), &a.tuple)?;
            vec![verify(kind, &fp, a.order).map_err(|e| e.to_string())?]
        }
        Some(bound) => {
            let tuples: Vec<_> = enumerate_tuples(kind.scheme(), bound)
                .into_iter()
                .filter(|fp| kind.is_applicable(fp))
                .collect();
            let order = a.order;
            let certs: Result<Vec<_>, _> =
                pool()?.install(|| tuples.par_iter().map(|fp| verify(kind, fp, order)).collect());
            certs.map_err(|e| e.to_string())?
        }
    };
    let all_match = certs.iter().all(|c| c.matched);
    match (a.json, a.sweep.is_some()) {
        (true, false) => json(out, &certs[0]),
        (true, true) => json(out, &certs),
        (false, false) => render::certificate(out, &certs[0]),
        (false, true) => render::certificate_table(out, &certs),
    }
    Ok(if all_match { EXIT_OK } else { EXIT_FAILED })
}

fn run_pairs(a: PairsArgs, out: &mut String) -> CmdResult {
    let fp = tuple(a.scheme.into(), &a.tuple)?;
    let pairs = enumerate_pairs(&fp).map_err(|e| e.to_string())?;
    if a.json {
        json(out, &pairs);
    } else {
        render::pairs(out, &fp, &pairs);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SeriesOutput<'a> {
    scheme: Scheme,
    ap: i64,
    #[serde(rename = "B")]
    big_b: i64,
    c: i64,
    n: i64,
    order: usize,
    coefficients: &'a [String],
}

fn run_series(scheme: Scheme, a: SeriesArgs, out: &mut String) -> CmdResult {
    let pp = quad(scheme, &a.quad)?;
    let xs: Vec<String> = scanner::coefficients(&pp, a.order)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|x| x.to_string())
        .collect();
    if a.json {
        json(
            out,
            &SeriesOutput {
                scheme,
                ap: pp.a_prime,
                big_b: pp.big_b,
                c: pp.c,
                n: pp.n,
                order: a.order,
                coefficients: &xs,
            },
        );
    } else {
        render::coefficients(out, &pp, &xs);
    }
    Ok(EXIT_OK)
}

/// Canonical quadruples of `scheme` with `a' B n <= bound`, in `(a', B, n, c)` order.
fn canonical_quadruples(scheme: Scheme, bound: i64) -> Vec<ProductParams> {
    let mut out = Vec::new();
    for ap in 1..=bound {
        for big_b in 1..=bound / ap {
            for n in 1..=bound / (ap * big_b) {
                for c in 0..ap {
                    if let Ok(pp) = ProductParams::new(scheme, ap, big_b, c, n) {
                        if canonicalize(&pp).0 == pp {
                            out.push(pp);
                        }
                    }
                }
            }
        }
    }
    out
}

fn run_scan(a: ScanArgs, out: &mut String) -> CmdResult {
    let scheme: Scheme = a.scheme.into();
    let reports: Vec<SignReport> = match a.sweep {
        None => vec![scan(&quad(scheme, &a.quad)?, a.order).map_err(|e| e.to_string())?],
        Some(bound) => {
            let quads = canonical_quadruples(scheme, bound);
            let order = a.order;
            let reports: Result<Vec<_>, _> = pool()?.install(|| quads.par_iter().map(|pp| scan(pp, order)).collect());
            reports.map_err(|e| e.to_string())?
        }
    };
    let clean = reports.iter().all(|r| r.holds());
    match (a.json, a.sweep.is_some()) {
        (true, false) => json(out, &reports[0]),
        (true, true) => json(out, &reports),
        (false, false) => render::report(out, &reports[0]),
        (false, true) => render::report_table(out, &reports),
    }
    Ok(if clean { EXIT_OK } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct Realization {
    p: i64,
    pp: i64,
    a: i64,
    ap: i64,
    b: i64,
    bp: i64,
    c: i64,
    #[serde(rename = "B")]
    big_b: i64,
    n: i64,
}

fn run_realize(a: RealizeArgs, out: &mut String) -> CmdResult {
    let pp = quad(a.scheme.into(), &a.quad)?;
    let found = find_realizations(&pp, a.limit);
    if a.json {
        let rows: Vec<Realization> = found
            .iter()
            .map(|fp| Realization {
                p: fp.p,
                pp: fp.p_prime,
                a: fp.a(),
                ap: fp.a_prime,
                b: fp.b,
                bp: fp.b_prime,
                c: fp.c,
                big_b: fp.big_b,
                n: fp.n,
            })
            .collect();
        json(out, &rows);
    } else {
        render::realizations(out, &pp, &found);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RemarkOutput {
    ap: i64,
    c: i64,
    order: usize,
    holds: bool,
}

fn run_remark(a: RemarkArgs, out: &mut String) -> CmdResult {
    let holds = verify_remark_products(a.ap, a.c, a.order).map_err(|e| e.to_string())?;
    if a.json {
        json(
            out,
            &RemarkOutput {
                ap: a.ap,
                c: a.c,
                order: a.order,
                holds,
            },
        );
    } else {
        let _ = writeln!(
            out,
            "product relation for a'={} c={} to order {}: {}",
            a.ap,
            a.c,
            a.order,
            if holds { "holds" } else { "FAILS" }
        );
    }
    Ok(if holds { EXIT_OK } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn signed_monomials(max: u64) -> Vec<SignedMonomial> {
    (0..=max)
        .flat_map(|e| [SignedMonomial::plus(e), SignedMonomial::minus(e)])
        .collect()
}

fn selftest_checks() -> Vec<Check> {
    const ORDER: usize = 60;
    let mut checks = Vec::new();

    let ms = signed_monomials(6);
    let uv: Vec<_> = ms.iter().flat_map(|&u| ms.iter().map(move |&v| (u, v))).collect();
    let bad = uv
        .par_iter()
        .filter(|&&(u, v)| v.exponent > 0 && u.exponent <= v.exponent)
        .filter(|&&(u, v)| {
            let w = u.divide_into(v).unwrap();
            triple_product_sum(u, v, ORDER).ok() != pochhammer(&[v, u, w], v, ORDER).ok()
        })
        .count();
    checks.push(Check {
        name: "triple product oracle",
        pass: bad == 0,
        detail: format!("{bad} mismatches"),
    });

    let bad = uv
        .par_iter()
        .filter(|&&(u, v)| v.exponent > 2 * u.exponent)
        .filter(|&&(u, v)| {
            let u2 = u.square();
            let first = pochhammer(&[v, u, u.divide_into(v).unwrap()], v, ORDER).unwrap();
            let second = pochhammer(&[u2.times(v), u2.divide_into(v).unwrap()], v.square(), ORDER).unwrap();
            quintuple_product_sum(u, v, ORDER).ok() != Some(first.mul(&second))
        })
        .count();
    checks.push(Check {
        name: "quintuple product oracle",
        pass: bad == 0,
        detail: format!("{bad} mismatches"),
    });

    for kind in IdentityKind::ALL {
        let tuples: Vec<_> = enumerate_tuples(kind.scheme(), 80)
            .into_iter()
            .filter(|fp| kind.is_applicable(fp) && fp.c > 0)
            .collect();
        let failed = tuples
            .par_iter()
            .filter(|fp| !verify(kind, fp, ORDER).map(|c| c.matched).unwrap_or(false))
            .count();
        checks.push(Check {
            name: kind.name(),
            pass: failed == 0,
            detail: format!("{} tuples with pp' <= 80, {failed} failed", tuples.len()),
        });
    }

    let tuples: Vec<_> = [Scheme::Triple, Scheme::Quintuple]
        .iter()
        .flat_map(|&s| enumerate_tuples(s, 150))
        .collect();
    let bad = tuples.par_iter().filter(|fp| enumerate_pairs(fp).is_err()).count();
    checks.push(Check {
        name: "pair count",
        pass: bad == 0,
        detail: format!("{} tuples with pp' <= 150, {bad} failed", tuples.len()),
    });

    let quads: Vec<_> = [Scheme::Triple, Scheme::Quintuple]
        .iter()
        .flat_map(|&s| canonical_quadruples(s, 20))
        .filter(|pp| covered_case(pp).is_covered())
        .collect();
    let bad = quads
        .par_iter()
        .filter(|pp| {
            let r = scan(pp, 200).unwrap();
            !r.holds() || !r.off_support.is_empty()
        })
        .count();
    checks.push(Check {
        name: "covered sign scan",
        pass: bad == 0,
        detail: format!("{} quadruples with a'Bn <= 20 to 200, {bad} failed", quads.len()),
    });

    let remark = [(3, 1), (5, 1), (5, 3), (7, 1), (7, 3), (7, 5)]
        .iter()
        .all(|&(ap, c)| verify_remark_products(ap, c, ORDER).unwrap_or(false));
    checks.push(Check {
        name: "product relations",
        pass: remark,
        detail: format!("a' in {{3, 5, 7}} to {ORDER}"),
    });
    checks
}

fn run_selftest(a: SelftestArgs, out: &mut String) -> CmdResult {
    let checks = pool()?.install(selftest_checks);
    let pass = checks.iter().all(|c| c.pass);
    if a.json {
        json(out, &checks);
    } else {
        for c in &checks {
            let _ = writeln!(out, "{} {:<26} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
    }
    Ok(if pass { EXIT_OK } else { EXIT_FAILED })
}
