//! Command-line front end, JSON interchange and acceptance suites for `zmackey`.

pub mod json;
pub mod lewis;
pub mod suites;

use std::collections::BTreeMap;
use std::fmt::Write;

use clap::{Args, Parser, Subcommand};
use zmackey::bredon::rep_homology;
use zmackey::exactalg::{divisors, Int};
use zmackey::families::{family_ideal, family_quotient, Family};
use zmackey::mackey::{label, NamedModule, ZModule};
use zmackey::resolutions::{ext_all, free_resolution, standard_resolution, tor_all, Resolution};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "zmackey", version, about = "Exact computations with Z-modules over cyclic groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a named module.
    Module {
        #[arg(long)]
        n: u64,
        /// z, zero, ideal:A, quotient:A, formz:E,D, iamodib:A,B, quotientrel:B,X,C,
        /// colonkernel:B,X,C, free:D1,D2,..., zmod:K, fpsign, family-ideal:K1,..., family-quotient:K1,...
        #[arg(long)]
        name: String,
        #[arg(long, conflicts_with = "lewis")]
        json: bool,
        #[arg(long)]
        lewis: bool,
    },
    /// Graded Tor of two named modules.
    Tor(PairArgs),
    /// Graded Ext of two named modules.
    Ext(PairArgs),
    /// Homology of boxed representation spheres.
    Bredon {
        #[arg(long)]
        n: u64,
        /// Comma-separated divisors d with one sphere S^{λ_d} each.
        #[arg(long, value_delimiter = ',')]
        spheres: Vec<u64>,
        /// How many of the leading spheres are dualized.
        #[arg(long, default_value_t = 0)]
        dual: usize,
    },
    /// Load a module from JSON, validate it and print it.
    Load {
        file: std::path::PathBuf,
        #[arg(long)]
        lewis: bool,
    },
    /// Run acceptance suites: `all`, a suite name or its number.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    /// Inclusive range `LO..HI`.
    #[arg(long, default_value = "0..5")]
    degrees: String,
}

/// Output of one invocation.
#[derive(Debug, Default)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<zmackey::Error> for Failure {
    fn from(e: zmackey::Error) -> Failure {
        Failure::Compute(e.to_string())
    }
}

impl From<json::JsonError> for Failure {
    fn from(e: json::JsonError) -> Failure {
        Failure::Compute(e.to_string())
    }
}

enum Source {
    Named(NamedModule),
    Family(Family, bool),
}

fn parse_source(n: u64, tag: &str) -> Result<Source, Failure> {
    let family = |t: &str| -> Result<Family, Failure> {
        let ks: Result<Vec<u64>, _> = t.split(',').map(|x| x.trim().parse::<u64>()).collect();
        let ks = ks.map_err(|_| Failure::Usage(format!("bad family `{}`", t)))?;
        Ok(Family::new(n, ks)?)
    };
    if let Some(t) = tag.strip_prefix("family-ideal:") {
        return Ok(Source::Family(family(t)?, true));
    }
    if let Some(t) = tag.strip_prefix("family-quotient:") {
        return Ok(Source::Family(family(t)?, false));
    }
    NamedModule::parse(tag).map(Source::Named).map_err(|e| Failure::Usage(e.to_string()))
}

fn build(n: u64, tag: &str) -> Result<ZModule, Failure> {
    Ok(match parse_source(n, tag)? {
        Source::Named(m) => m.build(n)?,
        Source::Family(f, true) => family_ideal(&f)?,
        Source::Family(f, false) => family_quotient(&f)?,
    })
}

/// Generators `g_d·1` when the module is an ideal of `Z`.
fn ambient(n: u64, tag: &str) -> Result<Option<BTreeMap<u64, Int>>, Failure> {
    Ok(match parse_source(n, tag)? {
        Source::Named(NamedModule::Ideal(a)) => Some(divisors(n).into_iter().map(|d| (d, Int::from(a / zmackey::exactalg::gcd(a, d)))).collect()),
        Source::Named(NamedModule::Z) => Some(divisors(n).into_iter().map(|d| (d, Int::ONE)).collect()),
        Source::Family(f, true) => Some(divisors(n).into_iter().map(|d| (d, Int::from(f.order_at(d)))).collect()),
        _ => None,
    })
}

fn summary(m: &ZModule) -> String {
    let mut out = format!("{}\n", label(m));
    for d in m.divisors() {
        let _ = writeln!(out, "  Θ_{:<5} {}", d, m.value(d));
    }
    out
}

fn parse_degrees(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("degrees must look like `0..5`, got `{}`", s));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn resolve(n: u64, tag: &str, m: &ZModule, hi: usize) -> Result<Resolution, Failure> {
    Ok(match parse_source(n, tag)? {
        Source::Named(NamedModule::Quotient(a)) => standard_resolution(n, a)?,
        _ => free_resolution(m, hi + 1)?,
    })
}

fn pair(p: &PairArgs, ext: bool) -> Result<String, Failure> {
    let (lo, hi) = parse_degrees(&p.degrees)?;
    let l = build(p.n, &p.left)?;
    let r = build(p.n, &p.right)?;
    let res = resolve(p.n, &p.left, &l, hi)?;
    let gs = if ext { ext_all(&res, &r, hi)? } else { tor_all(&res, &r, hi)? };
    let mut out = String::new();
    for (i, g) in gs.iter().enumerate().skip(lo) {
        let _ = writeln!(out, "i={}: {}", i, label(g));
    }
    Ok(out)
}

fn verify(suite: &str) -> Result<(String, bool), Failure> {
    let ids = suites::select(suite).ok_or_else(|| Failure::Usage(format!("unknown suite `{}`; known: all, {}", suite, suites::names().join(", "))))?;
    let mut out = String::new();
    let mut passed = 0;
    for &i in &ids {
        let o = suites::run_one(i);
        passed += o.passed as usize;
        let _ = writeln!(out, "{}", suites::format_outcome(&o));
    }
    let _ = writeln!(out, "{}/{} passed", passed, ids.len());
    Ok((out, passed == ids.len()))
}

fn dispatch(cli: Cli) -> Result<(String, bool), Failure> {
    match cli.command {
        Command::Module { n, name, json, lewis } => {
            let m = build(n, &name)?;
            let out = if json {
                json::to_string(&m)? + "\n"
            } else if lewis {
                lewis::render(&m, &label(&m), ambient(n, &name)?.as_ref())
            } else {
                summary(&m)
            };
            Ok((out, true))
        }
        Command::Tor(p) => Ok((pair(&p, false)?, true)),
        Command::Ext(p) => Ok((pair(&p, true)?, true)),
        Command::Bredon { n, spheres, dual } => {
            let h = rep_homology(n, &spheres, dual)?;
            let mut out = String::new();
            for (i, m) in h.iter().rev() {
                let _ = writeln!(out, "H_{}: {}", i, label(m));
            }
            Ok((out, true))
        }
        Command::Load { file, lewis } => {
            let s = std::fs::read_to_string(&file).map_err(|e| Failure::Usage(format!("{}: {}", file.display(), e)))?;
            let m = json::from_str(&s)?;
            Ok((if lewis { lewis::render(&m, &label(&m), None) } else { summary(&m) }, true))
        }
        Command::Verify { suite } => verify(&suite),
    }
}

/// Parses arguments (including the program name) and runs one command.
pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Run { code: EXIT_USAGE, stdout: String::new(), stderr: text } } else { Run { code: 0, stdout: text, stderr: String::new() } };
        }
    };
    match dispatch(cli) {
        Ok((stdout, true)) => Run { code: 0, stdout, stderr: String::new() },
        Ok((stdout, false)) => Run { code: EXIT_FAILURE, stdout, stderr: String::new() },
        Err(Failure::Usage(s)) => Run { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n\nRun with --help for usage.\n", s) },
        Err(Failure::Compute(s)) => Run { code: EXIT_FAILURE, stdout: String::new(), stderr: format!("error: {}\n", s) },
    }
}
