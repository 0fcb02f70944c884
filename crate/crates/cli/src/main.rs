use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use hopfext_core::cohomology::{ClassPoint, ClassSpace};
use hopfext_core::cp_module::{BlockProfile, CpModule};
use hopfext_core::hopf::{build_hopf, check_axioms, is_cocommutative, BialgebraMode, HopfJson, HopfStructure};
use hopfext_core::orbit::{enumerate_automorphisms, enumerate_orbits, Slice, SymmetryGroup};
use hopfext_core::verify::{run_case, Caps, Case, VerificationRow};
use hopfext_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "hopfext",
    version,
    about = "Classify Hopf algebra extensions of kC_p by k^G, G elementary abelian"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads; 1 is the reference mode.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest classifying space that is enumerated.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    cap_points: u128,
    /// Largest centralizer that is enumerated to cross-check |A|.
    #[arg(long, global = true, default_value_t = 20_000_000)]
    cap_group: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct GroupSpec {
    #[arg(long)]
    p: u32,
    /// Jordan block multiplicities m1,m2,... (trailing zeros optional).
    #[arg(long, conflicts_with = "n")]
    blocks: Option<String>,
    /// Trivial action on Z_p^N.
    #[arg(long)]
    n: Option<usize>,
}

impl GroupSpec {
    fn profile(&self) -> Result<BlockProfile, Error> {
        match (&self.blocks, self.n) {
            (Some(b), _) => BlockProfile::parse(self.p, b),
            (None, Some(n)) => BlockProfile::trivial(self.p, n),
            (None, None) => Err(Error::InvalidProfile("give --blocks or --n".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions, symmetry groups and isoclass counts for one action.
    Classify(GroupSpec),
    /// Check the closed-form counts against enumeration.
    Verify {
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', default_value = "3,5")]
        p: Vec<u32>,
        #[arg(long)]
        case: Option<String>,
        /// Rank for the commutative case.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Write the structure constants of one extension as JSON, or check a file.
    Export {
        #[arg(long, required_unless_present = "check")]
        p: Option<u32>,
        #[arg(long, conflicts_with = "n")]
        blocks: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Coordinates of the character class.
        #[arg(long, value_delimiter = ',')]
        chi: Vec<u32>,
        /// Coordinates of the form class.
        #[arg(long, value_delimiter = ',')]
        beta: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check the bialgebra identity on all basis pairs.
        #[arg(long)]
        exhaustive: bool,
        /// Load and check an exported file instead.
        #[arg(long, conflicts_with_all = ["blocks", "n", "chi", "beta", "out"])]
        check: Option<PathBuf>,
    },
    /// All block profiles of rank n.
    ProfileList {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Mismatch(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let g = &cli.global;
    let res = match &cli.command {
        Command::Classify(group_spec) => classify(g, group_spec),
        Command::Verify { p, case, n } => verify(g, p, case.as_deref(), *n),
        Command::Export {
            p,
            blocks,
            n,
            chi,
            beta,
            out,
            exhaustive,
            check,
        } => match check {
            Some(path) => check_file(g, path, *exhaustive),
            None => {
                let group_spec = GroupSpec {
                    p: p.unwrap_or(0),
                    blocks: blocks.clone(),
                    n: *n,
                };
                export(g, &group_spec, chi, beta, out.as_ref(), *exhaustive)
            }
        },
        Command::ProfileList { p, n } => profile_list(g, *p, *n),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn digits(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct RepOut {
    cocommutative: bool,
    chi: Vec<u32>,
    beta: Vec<u32>,
    orbit_size: u64,
}

#[derive(Serialize)]
struct ClassifyOut {
    p: u32,
    profile: String,
    blocks: Vec<usize>,
    n: usize,
    chi_dim: usize,
    alt_dim: usize,
    dim_x: usize,
    points: String,
    aut_order: String,
    aut_order_enumerated: Option<String>,
    twists: Vec<u32>,
    gamma_order: String,
    cocommutative: usize,
    noncocommutative: usize,
    total: usize,
    representatives: Vec<RepOut>,
}

fn classify(g: &Global, group_spec: &GroupSpec) -> Result<(), Failure> {
    let profile = group_spec.profile()?;
    let module = CpModule::from_blocks(&profile);
    let space = ClassSpace::build(&module);
    let group = SymmetryGroup::build(&module)?;
    let coc = enumerate_orbits(&space, &group, Slice::BetaZero, g.cap_points)?;
    let non = enumerate_orbits(&space, &group, Slice::BetaNonzero, g.cap_points)?;
    let enumerated = match enumerate_automorphisms(&module, g.cap_group) {
        Ok(list) => {
            if list.len() as u128 != group.aut_order() {
                return Err(Failure::Mismatch(format!(
                    "|A| = {} by formula but {} by enumeration",
                    group.aut_order(),
                    list.len()
                )));
            }
            Some(list.len().to_string())
        }
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let reps = |r: &hopfext_core::orbit::OrbitReport, coc: bool| -> Vec<RepOut> {
        r.representatives
            .iter()
            .zip(&r.sizes)
            .map(|(pt, &s)| RepOut {
                cocommutative: coc,
                chi: pt.chi.clone(),
                beta: pt.beta.clone(),
                orbit_size: s,
            })
            .collect()
    };
    let mut representatives = reps(&coc, true);
    representatives.extend(reps(&non, false));
    let out = ClassifyOut {
        p: group_spec.p,
        profile: profile.describe(),
        blocks: profile.multiplicities().to_vec(),
        n: profile.n(),
        chi_dim: space.chi_dim(),
        alt_dim: space.alt_dim(),
        dim_x: space.dim(),
        points: space.size().to_string(),
        aut_order: group.aut_order().to_string(),
        aut_order_enumerated: enumerated,
        twists: group.c_group(),
        gamma_order: group.gamma_order().to_string(),
        cocommutative: coc.representatives.len(),
        noncocommutative: non.representatives.len(),
        total: coc.representatives.len() + non.representatives.len(),
        representatives,
    };
    match g.format {
        Format::Json => print_json(&out),
        Format::Csv => {
            println!("p,profile,cocommutative,chi,beta,orbit_size");
            for r in &out.representatives {
                println!(
                    "{},{},{},{},{},{}",
                    out.p,
                    out.profile,
                    r.cocommutative,
                    digits(&r.chi),
                    digits(&r.beta),
                    r.orbit_size
                );
            }
        }
        Format::Table => {
            println!("p = {}, G = {} (n = {})", out.p, out.profile, out.n);
            println!(
                "dim X = {} (characters {}, forms {}), {} points",
                out.dim_x, out.chi_dim, out.alt_dim, out.points
            );
            match &out.aut_order_enumerated {
                Some(e) => println!("|A| = {} (enumerated {e})", out.aut_order),
                None => println!("|A| = {}", out.aut_order),
            }
            println!("C = {:?}, |Gamma| = {}", out.twists, out.gamma_order);
            println!(
                "isoclasses: cocommutative {}, noncocommutative {}, total {}",
                out.cocommutative, out.noncocommutative, out.total
            );
            println!("{:<6} {:<16} {:<24} {:>10}", "kind", "chi", "beta", "orbit");
            for r in &out.representatives {
                println!(
                    "{:<6} {:<16} {:<24} {:>10}",
                    if r.cocommutative { "coc" } else { "noncoc" },
                    digits(&r.chi),
                    digits(&r.beta),
                    r.orbit_size
                );
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct RowOut<'a> {
    case: &'a str,
    claim: &'a str,
    expected: u64,
    computed: u64,
    matched: bool,
    runtime_s: f64,
}

fn verify(g: &Global, primes: &[u32], case: Option<&str>, n: Option<usize>) -> Result<(), Failure> {
    let cases: Vec<Case> = match case {
        Some(c) => vec![c.parse()?],
        None => Case::ALL.to_vec(),
    };
    let caps = Caps {
        points: g.cap_points,
        seed: g.seed,
        ..Caps::default()
    };
    let jobs: Vec<(Case, u32)> = primes
        .iter()
        .flat_map(|&p| cases.iter().map(move |&c| (c, p)))
        .collect();
    let results: Vec<Result<Vec<VerificationRow>, Error>> =
        jobs.par_iter().map(|&(c, p)| run_case(c, p, n, caps)).collect();
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    let out: Vec<RowOut> = rows
        .iter()
        .map(|r| RowOut {
            case: &r.case,
            claim: &r.claim,
            expected: r.expected,
            computed: r.computed,
            matched: r.matched,
            runtime_s: r.runtime.as_secs_f64(),
        })
        .collect();
    match g.format {
        Format::Json => print_json(&out),
        Format::Csv => {
            println!("case,claim,expected,computed,matched,runtime_s");
            for r in &out {
                println!(
                    "{},\"{}\",{},{},{},{:.3}",
                    r.case, r.claim, r.expected, r.computed, r.matched, r.runtime_s
                );
            }
        }
        Format::Table => {
            for r in &rows {
                println!("{r}");
            }
        }
    }
    let failed = rows.iter().filter(|r| !r.matched).count();
    if failed > 0 {
        return Err(Failure::Mismatch(format!(
            "{failed} of {} rows did not match",
            rows.len()
        )));
    }
    Ok(())
}

fn pad(v: &[u32], len: usize, what: &str) -> Result<Vec<u32>, Failure> {
    if v.is_empty() {
        return Ok(vec![0; len]);
    }
    if v.len() != len {
        return Err(Failure::Usage(format!(
            "{what} needs {len} coordinates, got {}",
            v.len()
        )));
    }
    Ok(v.to_vec())
}

fn report_axioms(g: &Global, h: &HopfStructure, space: &ClassSpace, mode: BialgebraMode) -> Result<(), Failure> {
    let report = check_axioms(h, mode);
    let point = h.class_point(space).ok();
    let coc = is_cocommutative(h);
    let mut err = std::io::stderr();
    match g.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Check<'a> {
                name: &'a str,
                passed: bool,
                witness: Option<&'a str>,
            }
            #[derive(Serialize)]
            struct Report<'a> {
                dim: usize,
                cocommutative: bool,
                chi: Option<Vec<u32>>,
                beta: Option<Vec<u32>>,
                checks: Vec<Check<'a>>,
            }
            let r = Report {
                dim: h.dim(),
                cocommutative: coc,
                chi: point.as_ref().map(|p| p.chi.clone()),
                beta: point.as_ref().map(|p| p.beta.clone()),
                checks: report
                    .checks
                    .iter()
                    .map(|c| Check {
                        name: c.name,
                        passed: c.passed,
                        witness: c.witness.as_deref(),
                    })
                    .collect(),
            };
            let _ = writeln!(err, "{}", serde_json::to_string_pretty(&r).expect("serializable"));
        }
        _ => {
            let _ = writeln!(err, "dim {}, cocommutative {coc}", h.dim());
            if let Some(pt) = &point {
                let _ = writeln!(err, "class chi [{}] beta [{}]", digits(&pt.chi), digits(&pt.beta));
            }
            let _ = write!(err, "{report}");
        }
    }
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Failure::Mismatch(format!(
            "axiom {} failed: {}",
            c.name,
            c.witness.as_deref().unwrap_or("")
        ))),
    }
}

fn mode(exhaustive: bool) -> BialgebraMode {
    if exhaustive {
        BialgebraMode::Exhaustive
    } else {
        BialgebraMode::Generators
    }
}

fn export(
    g: &Global,
    group_spec: &GroupSpec,
    chi: &[u32],
    beta: &[u32],
    out: Option<&PathBuf>,
    exhaustive: bool,
) -> Result<(), Failure> {
    let profile = group_spec.profile()?;
    let module = CpModule::from_blocks(&profile);
    let space = ClassSpace::build(&module);
    let pt = ClassPoint {
        chi: pad(chi, space.chi_dim(), "--chi")?,
        beta: pad(beta, space.alt_dim(), "--beta")?,
    };
    space.check_point(&pt)?;
    let h = build_hopf(&space, &pt)?;
    let text = serde_json::to_string(&h.to_json()).expect("serializable");
    match out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    report_axioms(g, &h, &space, mode(exhaustive))
}

fn check_file(g: &Global, path: &PathBuf, exhaustive: bool) -> Result<(), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let j: HopfJson =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("rejected {}: {e}", path.display())))?;
    let h = HopfStructure::from_json(&j).map_err(|e| Failure::Usage(format!("rejected {}: {e}", path.display())))?;
    let space = ClassSpace::build(h.module());
    report_axioms(g, &h, &space, mode(exhaustive))
}

#[derive(Serialize)]
struct ProfileOut {
    profile: String,
    blocks: Vec<usize>,
    dim_x: usize,
    aut_order: String,
}

fn profile_list(g: &Global, p: u32, n: usize) -> Result<(), Failure> {
    let rows: Vec<ProfileOut> = BlockProfile::all(p, n)?
        .into_iter()
        .map(|pr| {
            let module = CpModule::from_blocks(&pr);
            ProfileOut {
                profile: pr.describe(),
                blocks: pr.multiplicities().to_vec(),
                dim_x: ClassSpace::build(&module).dim(),
                aut_order: hopfext_core::orbit::aut_order(&pr).to_string(),
            }
        })
        .collect();
    match g.format {
        Format::Json => print_json(&rows),
        Format::Csv => {
            println!("profile,blocks,dim_x,aut_order");
            for r in &rows {
                let b: Vec<String> = r.blocks.iter().map(|x| x.to_string()).collect();
                println!("{},\"{}\",{},{}", r.profile, b.join(","), r.dim_x, r.aut_order);
            }
        }
        Format::Table => {
            println!("{:<20} {:<12} {:>6} {:>24}", "profile", "blocks", "dim X", "|A|");
            for r in &rows {
                let b: Vec<String> = r.blocks.iter().map(|x| x.to_string()).collect();
                println!(
                    "{:<20} {:<12} {:>6} {:>24}",
                    r.profile,
                    b.join(","),
                    r.dim_x,
                    r.aut_order
                );
            }
        }
    }
    Ok(())
}
