//! `charfactor`: verify factorization identities, enumerate contributing
//! pairs, expand product series and scan their sign patterns.
//!
//! Exit status: 0 when everything checked holds, 1 on a mismatch or sign
//! violation, 2 on invalid flags or parameters.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use charfactor_core::{IdentityKind, Scheme};

#[derive(Parser, Debug)]
#[command(name = "charfactor", version, about = "Exact checks of product = alternating character sum identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify one identity, or every applicable tuple with --sweep.
    Verify(VerifyArgs),
    /// List the contributing pairs of a tuple.
    Pairs(PairsArgs),
    /// Coefficients of the triple-type product series.
    Phi(SeriesArgs),
    /// Coefficients of the quintuple-type product series.
    Psi(SeriesArgs),
    /// Scan coefficient signs at distance n.
    Scan(ScanArgs),
    /// Tuples realizing a product quadruple.
    Realize(RealizeArgs),
    /// Check that the product relations multiply out to 1.
    Remark(RemarkArgs),
    /// Run reduced-size oracle and identity sweeps.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Main,
    MainAEven,
    MainBEven,
    Quint,
    QuintA,
    QuintB,
    QuintC,
}

impl From<KindArg> for IdentityKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Main => IdentityKind::Main,
            KindArg::MainAEven => IdentityKind::MainAEven,
            KindArg::MainBEven => IdentityKind::MainBEven,
            KindArg::Quint => IdentityKind::Quint,
            KindArg::QuintA => IdentityKind::QuintA,
            KindArg::QuintB => IdentityKind::QuintB,
            KindArg::QuintC => IdentityKind::QuintC,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Triple,
    Quintuple,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Triple => Scheme::Triple,
            SchemeArg::Quintuple => Scheme::Quintuple,
        }
    }
}

/// The tuple `(p, p', a', b, b', c)`.
#[derive(Args, Debug, Clone)]
pub struct TupleArgs {
    #[arg(long)]
    pub p: Option<i64>,
    /// p'
    #[arg(long)]
    pub pp: Option<i64>,
    /// a'
    #[arg(long)]
    pub ap: Option<i64>,
    #[arg(long, default_value_t = 1)]
    pub b: i64,
    /// b'
    #[arg(long, default_value_t = 1)]
    pub bp: i64,
    #[arg(long)]
    pub c: Option<i64>,
}

/// The quadruple `(a', B, c, n)`.
#[derive(Args, Debug, Clone)]
pub struct QuadArgs {
    /// a'
    #[arg(long)]
    pub ap: Option<i64>,
    #[arg(long = "B", default_value_t = 1)]
    pub big_b: i64,
    #[arg(long)]
    pub c: Option<i64>,
    #[arg(long)]
    pub n: Option<i64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Main)]
    pub kind: KindArg,
    #[command(flatten)]
    pub tuple: TupleArgs,
    #[arg(long, default_value_t = 200)]
    pub order: usize,
    /// Verify every applicable tuple with p p' up to this bound.
    #[arg(long, value_name = "MAX_PP")]
    pub sweep: Option<i64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct PairsArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::Triple)]
    pub scheme: SchemeArg,
    #[command(flatten)]
    pub tuple: TupleArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub quad: QuadArgs,
    #[arg(long, default_value_t = 30)]
    pub order: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::Triple)]
    pub scheme: SchemeArg,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[arg(long, default_value_t = 1000)]
    pub order: usize,
    /// Scan every canonical quadruple with a' B n up to this bound.
    #[arg(long, value_name = "MAX_ABN")]
    pub sweep: Option<i64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::Triple)]
    pub scheme: SchemeArg,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[arg(long, default_value_t = 100)]
    pub limit: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct RemarkArgs {
    /// a'
    #[arg(long)]
    pub ap: i64,
    #[arg(long)]
    pub c: i64,
    #[arg(long, default_value_t = 150)]
    pub order: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long)]
    pub json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let status = commands::run(cli.command, &mut out);
    print!("{out}");
    match status {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::EXIT_INVALID as u8)
        }
    }
}
