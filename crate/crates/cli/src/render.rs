//! Plain-text tables for terminal output.

use std::fmt::Write;

use charfactor_core::scanner::SignReport;
use charfactor_core::verifier::IdentityCertificate;
use charfactor_core::{ContributingPair, FactorizationParams, ProductParams};

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn certificate(out: &mut String, c: &IdentityCertificate) {
    let _ = writeln!(out, "kind          {}", c.kind);
    let _ = writeln!(
        out,
        "tuple         p={} p'={} a={} a'={} b={} b'={} c={}",
        c.p, c.pp, c.a, c.ap, c.b, c.bp, c.c
    );
    let _ = writeln!(out, "derived       B={} n={}", c.big_b, c.n);
    let _ = writeln!(out, "order         {}", c.order);
    for (i, pr) in c.pairs.iter().enumerate() {
        let label = if i == 0 { "pairs" } else { "" };
        let _ = writeln!(out, "{label:<13} {pr}");
    }
    let verdict = if c.matched { "match" } else { "MISMATCH" };
    let _ = writeln!(out, "result        {verdict} ({})", c.sign_variant);
    if let Some(d) = c.first_mismatch {
        let _ = writeln!(out, "first diff    q^{d}");
    }
    let _ = writeln!(out, "lhs prefix    {}", join(&c.lhs_prefix));
    let _ = writeln!(out, "rhs prefix    {}", join(&c.rhs_prefix));
}

pub fn certificate_table(out: &mut String, certs: &[IdentityCertificate]) {
    let _ = writeln!(
        out,
        "{:<12} {:>4} {:>4} {:>3} {:>3} {:>3} {:>3} {:>4} {:>4}  {:<9} variant",
        "kind", "p", "p'", "a'", "b", "b'", "c", "B", "n", "result"
    );
    for c in certs {
        let _ = writeln!(
            out,
            "{:<12} {:>4} {:>4} {:>3} {:>3} {:>3} {:>3} {:>4} {:>4}  {:<9} {}",
            c.kind.name(),
            c.p,
            c.pp,
            c.ap,
            c.b,
            c.bp,
            c.c,
            c.big_b,
            c.n,
            if c.matched { "match" } else { "MISMATCH" },
            c.sign_variant
        );
    }
    let matched = certs.iter().filter(|c| c.matched).count();
    let _ = writeln!(out, "{matched} of {} identities matched", certs.len());
}

pub fn pairs(out: &mut String, fp: &FactorizationParams, pairs: &[ContributingPair]) {
    let _ = writeln!(out, "{fp}");
    let _ = writeln!(out, "{:>4} {:>4} {:>5} {:>7}", "r", "s", "type", "weight");
    for p in pairs {
        let _ = writeln!(out, "{:>4} {:>4} {:>5} {:>7}", p.r, p.s, p.ptype.index(), p.weight);
    }
}

pub fn coefficients(out: &mut String, pp: &ProductParams, xs: &[String]) {
    let _ = writeln!(out, "{pp}");
    for (row, chunk) in xs.chunks(10).enumerate() {
        let _ = writeln!(out, "q^{:<4} {}", row * 10, chunk.join(" "));
    }
}

pub fn report(out: &mut String, r: &SignReport) {
    let _ = writeln!(out, "{} (a',B,c,n)=({},{},{},{})", r.scheme, r.ap, r.big_b, r.c, r.n);
    let _ = writeln!(out, "order         {}", r.order);
    let _ = writeln!(out, "covered       {}", r.covered.name());
    let _ = writeln!(out, "support       {}", join(&r.support));
    let _ = writeln!(out, "violations    {}", r.violations.len());
    for v in r.violations.iter().take(20) {
        let _ = writeln!(out, "  j={} x_j={} x_(j+n)={}", v.j, v.lo, v.hi);
    }
    if r.violations.len() > 20 {
        let _ = writeln!(out, "  ... {} more", r.violations.len() - 20);
    }
}

pub fn report_table(out: &mut String, reports: &[SignReport]) {
    let _ = writeln!(
        out,
        "{:<9} {:>4} {:>4} {:>4} {:>4}  {:<7} {:>10} first",
        "scheme", "a'", "B", "c", "n", "covered", "violations"
    );
    for r in reports {
        let first = r.violations.first().map(|v| v.j.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<9} {:>4} {:>4} {:>4} {:>4}  {:<7} {:>10} {}",
            r.scheme.name(),
            r.ap,
            r.big_b,
            r.c,
            r.n,
            r.covered.name(),
            r.violations.len(),
            first
        );
    }
    let clean = reports.iter().filter(|r| r.holds()).count();
    let _ = writeln!(out, "{clean} of {} quadruples without violations", reports.len());
}

pub fn realizations(out: &mut String, pp: &ProductParams, found: &[FactorizationParams]) {
    let _ = writeln!(out, "{pp}");
    if found.is_empty() {
        let _ = writeln!(out, "no realizations");
        return;
    }
    let _ = writeln!(out, "{:>5} {:>5} {:>4} {:>4}", "p", "p'", "b", "b'");
    for fp in found {
        let _ = writeln!(out, "{:>5} {:>5} {:>4} {:>4}", fp.p, fp.p_prime, fp.b, fp.b_prime);
    }
}
