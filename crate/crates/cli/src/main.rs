use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flipcount::counting::CountTable;
use flipcount::krieger::{ChainKind, DEFAULT_MONOID_CAP};
use flipcount::oracle::{oracle_flip_fixed, oracle_periodic};
use flipcount::series::{flip_zeta_series, generating_rational, zeta_rational};
use flipcount::signed_subsets::Levels;
use flipcount::system::System;
use flipcount::{Error, IntMatrix, QRationalFunction};

/// Periodic and flip-fixed point counts of sofic flip systems.
#[derive(Parser)]
#[command(name = "flipcount", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print p_m, p_{m,0} and p_{m,1} for m = 1..=M as a TSV table.
    Count {
        #[arg(long)]
        system: PathBuf,
        #[arg(long = "max-m", value_parser = clap::value_parser!(u64).range(1..))]
        max_m: u64,
        #[arg(long, value_enum, default_value_t = Chain::Joint)]
        chain: Chain,
        /// Append brute-force columns and exit with status 4 on any mismatch.
        #[arg(long)]
        verify: bool,
        /// Use the transition matrix of an `sft` system directly.
        #[arg(long, conflicts_with = "chain")]
        direct: bool,
    },
    /// Print the coefficients of the flip zeta function through t^K.
    Zeta {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        order: usize,
        /// Also print ζ and G as normalized rational functions.
        #[arg(long)]
        closed_form: bool,
    },
    /// Write a chain as DOT, or the level matrices as a plain-text dump.
    Export {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum)]
        what: Export,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Chain {
    Joint,
    Finitary,
    Component,
}

impl From<Chain> for ChainKind {
    fn from(c: Chain) -> ChainKind {
        match c {
            Chain::Joint => ChainKind::Joint,
            Chain::Finitary => ChainKind::Finitary,
            Chain::Component => ChainKind::Component,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Export {
    Joint,
    Finitary,
    Component,
    Matrices,
}

/// A failure with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Schema(_) | Error::BadSymbol(_) | Error::InvalidGraph(_) | Error::EmptyShift => 2,
            Error::FlipIncompatible
            | Error::NotReversing { .. }
            | Error::NotInvolution { .. }
            | Error::IncompleteFlipTable(_) => 3,
            Error::NotIrreducible => 5,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn monoid_cap() -> CliResult<usize> {
    match std::env::var("FLIPCOUNT_MONOID_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| fail(2, format!("FLIPCOUNT_MONOID_CAP: not a count: {v:?}"))),
        Err(_) => Ok(DEFAULT_MONOID_CAP),
    }
}

fn load(path: &Path) -> CliResult<System> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    Ok(System::from_json(&text)?)
}

fn levels(sys: &System, chain: ChainKind) -> CliResult<Levels> {
    Ok(Levels::build(&sys.build_chain(chain, monoid_cap()?)?))
}

fn count(sys: &System, max_m: usize, chain: Chain, verify: bool, direct: bool) -> CliResult<String> {
    let table = if direct {
        let sft = sys.sft.as_ref().ok_or_else(|| fail(2, "--direct needs a system of kind \"sft\""))?;
        let j = sys.sft_flip_matrix().ok_or(Error::FlipIncompatible)?;
        let a: IntMatrix = sft.entries().map(|&x| x.into());
        CountTable::from_sft(&a, &j.map(|&x| x.into()), max_m)?
    } else {
        CountTable::from_levels(&levels(sys, chain.into())?, max_m)?
    };
    let mut out = table.to_string();
    if !verify {
        return Ok(out);
    }
    out.clear();
    writeln!(out, "m\tp_m\tp_{{m,0}}\tp_{{m,1}}\toracle_p_m\toracle_p_{{m,0}}\toracle_p_{{m,1}}").unwrap();
    let mut mismatches = Vec::new();
    for row in &table.rows {
        let m = row.m;
        let p = oracle_periodic(&sys.graph, m);
        let p0 = oracle_flip_fixed(sys, m, 0);
        let p1 = (m % 2 == 0).then(|| oracle_flip_fixed(sys, m, 1));
        if row.p != p.into() || row.p0 != p0.into() || row.p1 != p1.map(Into::into) {
            mismatches.push(m);
        }
        let dash = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{m}\t{}\t{}\t{}\t{p}\t{p0}\t{}",
            row.p,
            row.p0,
            dash(row.p1.as_ref().map(ToString::to_string)),
            dash(p1.map(|x| x.to_string()))
        )
        .unwrap();
    }
    if mismatches.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(fail(4, format!("counts disagree with brute force at m = {mismatches:?}")))
    }
}

fn coefficient_line(name: &str, f: &QRationalFunction) -> String {
    let list = |p: &flipcount::QPoly| {
        p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    };
    format!("{name}.num\t{}\n{name}.den\t{}\n", list(f.numerator()), list(f.denominator()))
}

fn zeta(sys: &System, order: usize, closed_form: bool) -> CliResult<String> {
    let levels = levels(sys, ChainKind::Joint)?;
    let z = zeta_rational(&levels)?;
    let g = generating_rational(&levels)?;
    let mut out = String::from("m\tzeta_{T,F}\n");
    out.push_str(&flip_zeta_series(&z, &g, order)?.to_string());
    if closed_form {
        writeln!(out, "zeta_T = {z}").unwrap();
        out.push_str(&coefficient_line("zeta_T", &z));
        writeln!(out, "G = {g}").unwrap();
        out.push_str(&coefficient_line("G", &g));
    }
    Ok(out)
}

fn export(sys: &System, what: Export) -> CliResult<String> {
    let cap = monoid_cap()?;
    Ok(match what {
        Export::Joint => sys.build_chain(ChainKind::Joint, cap)?.to_dot(),
        Export::Finitary => sys.build_chain(ChainKind::Finitary, cap)?.to_dot(),
        Export::Component => sys.build_chain(ChainKind::Component, cap)?.to_dot(),
        Export::Matrices => Levels::build(&sys.build_chain(ChainKind::Joint, cap)?).dump(),
    })
}

/// Writes `contents` to a temporary file next to `path`, then renames it.
fn write_atomically(path: &Path, contents: &str) -> CliResult<()> {
    let io = |e: std::io::Error| fail(1, format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Count { system, max_m, chain, verify, direct } => {
            let sys = load(&system)?;
            print!("{}", count(&sys, max_m as usize, chain, verify, direct)?);
        }
        Command::Zeta { system, order, closed_form } => {
            print!("{}", zeta(&load(&system)?, order, closed_form)?);
        }
        Command::Export { system, what, out } => {
            write_atomically(&out, &export(&load(&system)?, what)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("flipcount: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
