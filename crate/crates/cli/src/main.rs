use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use posetqsym::classes::{
    count_njoinfree, enumerate_all_posets, enumerate_njoinfree, enumerate_rooted_trees, RootedTree,
};
use posetqsym::format::{parse_posets, write_posets, PosetRecord};
use posetqsym::partitions::{gamma, gamma_strict, gamma_weak};
use posetqsym::qsym::{set_cross_check, QSymElement};
use posetqsym::verify::{property_suite, verify_counterexample, verify_injectivity, ScanClass, VerificationReport};

#[derive(Parser)]
#[command(name = "posetqsym", version, about = "Order quasisymmetric functions of finite posets")]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Check the two overlapping-shuffle routes against each other on every product.
    #[arg(long, global = true)]
    cross_check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Γ of every poset (or rooted tree) in a file; `-` reads stdin.
    Gamma {
        file: String,
        #[arg(long, value_enum, default_value_t = Labeling::Strict)]
        labeling: Labeling,
        #[arg(long)]
        json: bool,
    },
    /// Multiply two elements given as JSON or compact rendering.
    Mul {
        #[arg(long, value_enum)]
        op: Op,
        left: String,
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare Γ and isomorphism type of the first two posets across the given files.
    Compare {
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<String>,
        #[arg(long, value_enum, default_value_t = Labeling::Strict)]
        labeling: Labeling,
        #[arg(long)]
        json: bool,
    },
    /// List the isomorphism classes of a family in the poset text format.
    Enumerate {
        #[arg(long, value_enum)]
        class: EnumClass,
        #[arg(long)]
        n: usize,
    },
    #[command(subcommand)]
    Verify(VerifyCommand),
    #[command(subcommand)]
    Count(CountCommand),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Search a class for two members with equal Γ^<.
    Injectivity {
        #[arg(long, value_enum)]
        class: ScanArg,
        #[arg(long)]
        nmax: Option<usize>,
        /// Lift the default size bounds.
        #[arg(long)]
        unbounded: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check the bundled pair of non-isomorphic posets with equal Γ^<.
    Counterexample {
        #[arg(long)]
        json: bool,
    },
    /// Seeded randomized and exhaustive property checks.
    Properties {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CountCommand {
    /// Number of (N,⋈)-free posets for each n up to nmax.
    Njoinfree {
        #[arg(long)]
        nmax: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Labeling {
    Strict,
    Weak,
    FromFile,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Oshuffle,
    Concat,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumClass {
    Trees,
    Njoinfree,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanArg {
    Trees,
    Njoinfree,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

/// Poset records, or one rooted tree per line when the input starts with `(`.
fn read_records(path: &str) -> Result<Vec<PosetRecord>> {
    let text = read_input(path)?;
    let is_tree = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with('('));
    if !is_tree {
        return parse_posets(&text).with_context(|| format!("parsing {path}"));
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tree: RootedTree = line.parse().with_context(|| format!("{path}:{}: bad tree", i + 1))?;
        out.push(PosetRecord::unlabeled(line, tree.to_poset()?));
    }
    Ok(out)
}

fn gamma_of(rec: &PosetRecord, labeling: Labeling) -> Result<QSymElement> {
    Ok(match labeling {
        Labeling::Strict => gamma_strict(&rec.poset),
        Labeling::Weak => gamma_weak(&rec.poset),
        Labeling::FromFile => {
            let lp = rec
                .labeled()
                .ok_or_else(|| anyhow!("poset {:?} has no labels; `from-file` needs `label` lines", rec.name))??;
            gamma(&lp)
        }
    })
}

fn parse_element(s: &str) -> Result<QSymElement> {
    let s = s.trim();
    if s.starts_with('{') {
        Ok(QSymElement::from_json(s)?)
    } else {
        s.parse().map_err(|e| anyhow!("cannot parse {s:?}: {e}"))
    }
}

fn emit_reports(reports: &[VerificationReport], as_json: bool) -> Result<bool> {
    if as_json {
        let v = if reports.len() == 1 { serde_json::to_value(&reports[0])? } else { serde_json::to_value(reports)? };
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        for r in reports {
            print!("{}", r.body());
        }
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    set_cross_check(cli.cross_check);
    match cli.command {
        Command::Gamma { file, labeling, json } => {
            let recs = read_records(&file)?;
            for rec in &recs {
                let g = gamma_of(rec, labeling)?;
                if json {
                    println!("{}", json!({ "name": rec.name, "gamma": g.to_json_value() }));
                } else if recs.len() == 1 {
                    println!("{g}");
                } else {
                    println!("{}: {g}", rec.name);
                }
            }
        }
        Command::Mul { op, left, right, json } => {
            let (a, b) = (parse_element(&left)?, parse_element(&right)?);
            let p = match op {
                Op::Oshuffle => a.mul_oshuffle(&b),
                Op::Concat => a.mul_concat(&b),
            };
            if json {
                println!("{}", p.to_json());
            } else {
                println!("{p}");
            }
        }
        Command::Compare { files, labeling, json } => {
            let mut recs = Vec::new();
            for f in &files {
                recs.extend(read_records(f)?);
            }
            if recs.len() < 2 {
                bail!("compare needs two posets, found {}", recs.len());
            }
            let (a, b) = (&recs[0], &recs[1]);
            let (ga, gb) = (gamma_of(a, labeling)?, gamma_of(b, labeling)?);
            let same = ga == gb;
            let iso = a.poset.is_isomorphic(&b.poset)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "left": a.name, "right": b.name,
                        "equal_gamma": same, "isomorphic": iso,
                        "gamma_left": ga.to_json_value(), "gamma_right": gb.to_json_value(),
                    })
                );
            } else {
                println!("{}: {ga}", a.name);
                println!("{}: {gb}", b.name);
                println!("equal gamma: {}", if same { "yes" } else { "no" });
                println!("isomorphic: {}", if iso { "yes" } else { "no" });
            }
        }
        Command::Enumerate { class, n } => {
            let recs: Vec<PosetRecord> = match class {
                EnumClass::Trees => enumerate_rooted_trees(n)
                    .iter()
                    .map(|t| Ok(PosetRecord::unlabeled(t.encoding(), t.to_poset()?)))
                    .collect::<Result<_>>()?,
                EnumClass::Njoinfree => named(enumerate_njoinfree(n)?, "njoinfree", n),
                EnumClass::All => named(enumerate_all_posets(n)?, "poset", n),
            };
            print!("{}", write_posets(&recs));
        }
        Command::Verify(VerifyCommand::Injectivity { class, nmax, unbounded, json }) => {
            let class = match class {
                ScanArg::Trees => ScanClass::RootedTrees,
                ScanArg::Njoinfree => ScanClass::NjoinFree,
            };
            let report = verify_injectivity(class, nmax.unwrap_or(class.default_nmax()), unbounded)?;
            return emit_reports(&[report], json);
        }
        Command::Verify(VerifyCommand::Counterexample { json }) => {
            return emit_reports(&[verify_counterexample()], json);
        }
        Command::Verify(VerifyCommand::Properties { seed, budget, json }) => {
            return emit_reports(&property_suite(seed, budget)?, json);
        }
        Command::Count(CountCommand::Njoinfree { nmax }) => {
            for (i, c) in count_njoinfree(nmax)?.iter().enumerate() {
                println!("{}\t{c}", i + 1);
            }
        }
    }
    Ok(true)
}

fn named(posets: Vec<posetqsym::poset::Poset>, stem: &str, n: usize) -> Vec<PosetRecord> {
    posets
        .into_iter()
        .enumerate()
        .map(|(i, p)| PosetRecord::unlabeled(format!("{stem}-{n}-{i}"), p))
        .collect()
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
