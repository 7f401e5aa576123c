//! `clgroup`: class groups, canonical classes and torsion numbers from the
//! command line.
//!
//! Exit codes: 0 success, 1 input error, 2 internal invariant violation (or a
//! failed sweep).

mod document;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use clgroup::semigroup::{cone_report, determinantal_invariants, segre_veronese_cone, veronese_cone};
use clgroup::sweep::{self, SweepConfig, MAX_SWEEP_N};
use clgroup::{joinmeet, BigInt, Poset};

use document::{FamilyDocument, InputDocument, Instance, ReportDocument, SweepDocument};

/// Largest chain length accepted by the two-chains family.
const MAX_CHAIN: u64 = 200;
/// Largest number of variables accepted by the veronese and segre families.
const MAX_VARIABLES: u64 = 200;

#[derive(Parser, Debug)]
#[command(name = "clgroup", version, about = "Divisor class groups and torsion numbers of normal affine semigroup rings")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a poset or cone document (JSON) from a file or stdin.
    Analyze {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Build and analyze a member of a standard family.
    Family {
        #[arg(value_enum)]
        name: Family,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Check the join-meet invariants on seeded random posets.
    Sweep {
        #[arg(long)]
        count: usize,
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Disjoint chains of lengths a and b (--a --b).
    TwoChains,
    /// r-th Veronese of a polynomial ring in n variables (--n --r).
    Veronese,
    /// Segre product of the p-th and q-th Veronese of rings in m and n variables (--m --p --n --q).
    Segre,
    /// Determinantal ring of an m x n generic matrix (--m --n).
    Determinantal,
}

enum Failure {
    Input(String),
    Internal(String),
    /// Output already written; exit with this code.
    Exit(u8),
}

impl From<clgroup::Error> for Failure {
    fn from(e: clgroup::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Exit(code)) => ExitCode::from(code),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Analyze { input } => {
            let text = match input {
                Some(path) => fs::read_to_string(&path)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                None => {
                    let mut s = String::new();
                    io::stdin()
                        .read_to_string(&mut s)
                        .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
                    s
                }
            };
            let doc: InputDocument = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("malformed input document: {e}")))?;
            let report = analyze(doc, None)?;
            Ok(emit(&report, cli.output, ReportDocument::to_text))
        }
        Command::Family {
            name,
            a,
            b,
            n,
            r,
            m,
            p,
            q,
        } => {
            let params = Params { a, b, n, r, m, p, q };
            let report = family(name, &params)?;
            Ok(emit(&report, cli.output, ReportDocument::to_text))
        }
        Command::Sweep { count, max_n, seed } => {
            if count == 0 {
                return Err(Failure::Input("--count must be at least 1".into()));
            }
            if max_n > MAX_SWEEP_N {
                return Err(Failure::Input(format!("--max-n must be at most {MAX_SWEEP_N}")));
            }
            let summary = sweep::run(SweepConfig { count, max_n, seed })?;
            let doc = SweepDocument::from(&summary);
            print!("{}", emit(&doc, cli.output, SweepDocument::to_text));
            if doc.all_passed {
                Err(Failure::Exit(0))
            } else {
                Err(Failure::Exit(2))
            }
        }
    }
}

fn emit<T: serde::Serialize>(doc: &T, format: Format, text: impl Fn(&T) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
            s.push('\n');
            s
        }
        Format::Text => text(doc),
    }
}

fn analyze(doc: InputDocument, family: Option<FamilyDocument>) -> Result<ReportDocument, Failure> {
    match doc.instance()? {
        Instance::Poset(poset) => {
            let report = joinmeet::joinmeet_report::<BigInt>(&poset)?;
            Ok(ReportDocument::from_report(Some(doc), family, &report, Some(&poset)))
        }
        Instance::Cone(cone) => {
            let report = cone_report(&cone)?;
            Ok(ReportDocument::from_report(Some(doc), family, &report, None))
        }
    }
}

struct Params {
    a: Option<u64>,
    b: Option<u64>,
    n: Option<u64>,
    r: Option<u64>,
    m: Option<u64>,
    p: Option<u64>,
    q: Option<u64>,
}

impl Params {
    fn require(&self, name: &'static str, min: u64, max: u64) -> Result<u64, Failure> {
        let value = match name {
            "a" => self.a,
            "b" => self.b,
            "n" => self.n,
            "r" => self.r,
            "m" => self.m,
            "p" => self.p,
            "q" => self.q,
            _ => unreachable!("unknown parameter {name}"),
        };
        let v = value.ok_or_else(|| Failure::Input(format!("missing --{name}")))?;
        if v < min || v > max {
            return Err(Failure::Input(format!("--{name} must be in {min}..={max}, got {v}")));
        }
        Ok(v)
    }
}

fn family(name: Family, params: &Params) -> Result<ReportDocument, Failure> {
    const HUGE: u64 = i64::MAX as u64;
    let mut used = BTreeMap::new();
    let mut take = |key: &'static str, min, max| -> Result<u64, Failure> {
        let v = params.require(key, min, max)?;
        used.insert(key.to_string(), v);
        Ok(v)
    };
    match name {
        Family::TwoChains => {
            let a = take("a", 0, MAX_CHAIN)?;
            let b = take("b", 0, MAX_CHAIN)?;
            let poset = Poset::disjoint_chains(&[a as usize, b as usize]);
            let doc = InputDocument::from_poset(&poset);
            analyze(doc, Some(family_doc("two-chains", used)))
        }
        Family::Veronese => {
            let n = take("n", 1, MAX_VARIABLES)?;
            let r = take("r", 1, HUGE)?;
            let cone = veronese_cone::<BigInt>(n as usize, r)?;
            analyze(InputDocument::from_cone(&cone), Some(family_doc("veronese", used)))
        }
        Family::Segre => {
            let m = take("m", 2, MAX_VARIABLES)?;
            let p = take("p", 1, HUGE)?;
            let n = take("n", 2, MAX_VARIABLES)?;
            let q = take("q", 1, HUGE)?;
            let cone = segre_veronese_cone::<BigInt>(m as usize, p, n as usize, q)?;
            analyze(InputDocument::from_cone(&cone), Some(family_doc("segre", used)))
        }
        Family::Determinantal => {
            let m = take("m", 1, HUGE)?;
            let n = take("n", 1, HUGE)?;
            let inv = determinantal_invariants::<BigInt>(m, n)?;
            Ok(ReportDocument::from_determinantal(family_doc("determinantal", used), &inv))
        }
    }
}

fn family_doc(name: &str, parameters: BTreeMap<String, u64>) -> FamilyDocument {
    FamilyDocument {
        name: name.to_string(),
        parameters,
    }
}
