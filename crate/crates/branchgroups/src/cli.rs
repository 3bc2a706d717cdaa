//! Command line front end. Exit codes: 0 success, 1 check failure,
//! 2 usage error, 3 resource cap.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::Error;
use crate::kernel::{self, IndexAssignment};
use crate::quotient::{self, Quotient};
use crate::verify::{self, CheckReport, Verdict};
use crate::words::{AccompanyingVector, Family, FamilyKind, parse_word};

pub const CACHE_ENV: &str = "BRANCHGROUPS_CACHE_DIR";

#[derive(Parser)]
#[command(name = "branchgroups", version, about = "Exact computation with GGS and EGS groups acting on rooted p-ary trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Odd prime arity of the tree
    #[arg(long, default_value_t = 3)]
    p: u32,
    /// Accompanying vector, comma separated (p-1 entries)
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1i64, 2i64])]
    alpha: Vec<i64>,
    /// Group family: ggs, egs, or f
    #[arg(long, default_value = "egs")]
    family: String,
    /// Named preset overriding p and alpha (gupta-sidki = p 3, alpha 1,2)
    #[arg(long)]
    preset: Option<String>,
}

impl FamilyArgs {
    fn build(&self) -> Result<Family, Error> {
        let (p, alpha) = match self.preset.as_deref() {
            Some("gupta-sidki") => (3, vec![1i64, 2]),
            Some(other) => {
                return Err(Error::Parameter(format!("unknown preset '{}'", other)))
            }
            None => (self.p, self.alpha.clone()),
        };
        let kind = match self.family.as_str() {
            "ggs" => FamilyKind::Ggs,
            "egs" => FamilyKind::Egs,
            "f" => FamilyKind::FSubgroup,
            other => {
                return Err(Error::Parameter(format!(
                    "unknown family '{}' (expected ggs, egs, or f)",
                    other
                )))
            }
        };
        Ok(Family::new(kind, AccompanyingVector::new(p, &alpha)?))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Family parameters: periodicity, symmetry, generator recursions
    Group {
        #[command(subcommand)]
        sub: GroupCommand,
    },
    /// Finite level quotient: order, derived index, stabilizer indices
    Quotient {
        #[command(flatten)]
        family: FamilyArgs,
        /// Quotient level
        #[arg(long)]
        level: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite
    Verify {
        /// Suite: all, kernel-sum, stab2-derived, gamma3, no-congruence,
        /// small-cong, conjugate, density, section-reach, tower
        suite: String,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Portrait of a word or builtin element
    Portrait {
        #[command(flatten)]
        family: FamilyArgs,
        /// Word over a, b, c (e.g. "[b,a]^2 * c^-1")
        #[arg(long, conflicts_with = "builtin")]
        word: Option<String>,
        /// Builtin element: t_n (with --n)
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Emit GraphViz DOT instead of JSON
        #[arg(long)]
        dot: bool,
    },
    /// Index assignments and kernel cosets
    Kernel {
        #[command(subcommand)]
        sub: KernelCommand,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    Info {
        #[command(flatten)]
        family: FamilyArgs,
    },
}

#[derive(Subcommand)]
enum KernelCommand {
    /// Validate the summation condition of an assignment file
    Check {
        /// JSON file: {p, depth, indices}
        #[arg(long)]
        file: PathBuf,
        /// Require the root index to be zero as well
        #[arg(long)]
        zero_root: bool,
    },
    /// Extend an assignment one level down
    Extend {
        #[arg(long)]
        file: PathBuf,
        /// Sample a random valid extension instead of the default one
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search a CH_n coset witness for a word
    Witness {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        word: String,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exit.
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::DepthCap { .. } | Error::ResourceCap(_) => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Group { sub: GroupCommand::Info { family } } => group_info(&family),
        Command::Quotient { family, level, json } => quotient_info(&family, level, json),
        Command::Verify { suite, family, n, m, word, seed, json } => {
            run_verify(&suite, &family, n, m, word.as_deref(), seed, json)
        }
        Command::Portrait { family, word, builtin, n, depth, dot } => {
            portrait(&family, word.as_deref(), builtin.as_deref(), n, depth, dot)
        }
        Command::Kernel { sub } => kernel_cmd(sub),
    }
}

fn group_info(args: &FamilyArgs) -> Result<i32, Error> {
    let family = args.build()?;
    let v = family.vector();
    println!("family: {}", family.kind());
    println!("p: {}", family.p());
    println!("alpha: {:?}", v.alpha());
    println!("periodic: {}", v.is_periodic());
    println!("symmetric: {}", v.is_symmetric());
    println!("generators:");
    println!("  a = rooted cycle (0 1 ... {})", family.p() - 1);
    if family.kind() != FamilyKind::FSubgroup {
        let alphas: Vec<String> = (1..family.p() as usize)
            .map(|i| format!("a^{}", v.coeff(i)))
            .collect();
        println!("  b = ({}, b)", alphas.join(", "));
    }
    if family.kind() != FamilyKind::Ggs {
        let alphas: Vec<String> = (1..family.p() as usize)
            .map(|i| format!("a^{}", v.coeff(i)))
            .collect();
        println!("  c = (c, {})", alphas.join(", "));
    }
    Ok(0)
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

fn quotient_info(args: &FamilyArgs, level: usize, as_json: bool) -> Result<i32, Error> {
    let family = args.build()?;
    let q = Quotient::new(&family, level)?;
    if let Some(dir) = cache_dir() {
        let key = quotient::cache_key(&family, level, "full");
        let _ = quotient::cache_store(&dir, &key, q.bsgs());
    }
    let derived = q.derived_subgroup();
    let derived_index = (q.order() / derived.order()).to_string();
    let mut stab_indices = Vec::new();
    for k in 0..=level {
        let stab = q.stab_image(k)?;
        stab_indices.push((q.order() / stab.order()).to_string());
    }
    if as_json {
        let out = json!({
            "family": family.kind().to_string(),
            "p": family.p(),
            "alpha": family.vector().alpha(),
            "level": level,
            "order": q.order().to_string(),
            "derived_index": derived_index,
            "stab_indices": stab_indices,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("quotient of {} at level {}", family.kind(), level);
        println!("order: {}", q.order());
        println!("derived subgroup index: {}", derived_index);
        for (k, idx) in stab_indices.iter().enumerate() {
            println!("[Q : Stab({})-image] = {}", k, idx);
        }
    }
    Ok(0)
}

fn emit_reports(reports: &[CheckReport], as_json: bool) -> i32 {
    let mut failed = false;
    for r in reports {
        if as_json {
            println!("{}", r.to_json());
        } else {
            println!(
                "{:<20} {:<12} seed={} {}",
                r.check,
                match r.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                    Verdict::Skipped => "skipped",
                    Verdict::NotAsserted => "not asserted",
                },
                r.seed,
                r.params
            );
        }
        failed |= !r.passed();
    }
    if failed {
        1
    } else {
        0
    }
}

fn run_verify(
    suite: &str,
    args: &FamilyArgs,
    n: Option<usize>,
    m: Option<usize>,
    word: Option<&str>,
    seed: u64,
    as_json: bool,
) -> Result<i32, Error> {
    let reports: Vec<CheckReport> = match suite {
        "all" => verify::suite_all(seed)?,
        "kernel-sum" => vec![verify::check_kernel_sum(args.p, &args.alpha)?],
        "stab2-derived" => vec![verify::check_stab2_in_derived(
            args.p,
            &args.alpha,
            m.unwrap_or(3),
            500,
            seed,
        )?],
        "gamma3" => vec![verify::check_gamma3_inclusion(&args.build()?, m.unwrap_or(3))?],
        "no-congruence" => {
            let n = n.unwrap_or(2);
            vec![verify::check_no_congruence(
                &args.build()?,
                n,
                m.unwrap_or(n + 1),
            )?]
        }
        "small-cong" => {
            let family = args.build()?;
            let w = parse_word(word.unwrap_or("b"), &family)?;
            vec![verify::check_small_cong(&family, &w, m.unwrap_or(3))?]
        }
        "conjugate" => vec![verify::check_conjugate_groups(
            &args.build()?,
            m.unwrap_or(5),
        )?],
        "density" => vec![verify::check_density_bomega(
            args.p,
            n.unwrap_or(2),
            100,
            seed,
        )?],
        "section-reach" => vec![verify::check_section_reach(&args.build()?, seed)?],
        "tower" => vec![verify::check_tower(&args.build()?, m.unwrap_or(4))?],
        other => {
            return Err(Error::Parameter(format!("unknown suite '{}'", other)));
        }
    };
    Ok(emit_reports(&reports, as_json))
}

fn portrait(
    args: &FamilyArgs,
    word: Option<&str>,
    builtin: Option<&str>,
    n: Option<usize>,
    depth: usize,
    dot: bool,
) -> Result<i32, Error> {
    let family = args.build()?;
    let aut = match (word, builtin) {
        (Some(w), None) => parse_word(w, &family)?.to_aut(),
        (None, Some("t_n")) => kernel::t_element(&family, n.unwrap_or(1))?,
        (None, Some(other)) => {
            return Err(Error::Parameter(format!("unknown builtin '{}'", other)))
        }
        _ => return Err(Error::Parameter("provide exactly one of --word, --builtin".into())),
    };
    let portrait = aut.portrait(depth)?;
    if dot {
        print!("{}", portrait.to_dot());
    } else {
        println!("{}", serde_json::to_string_pretty(&portrait.to_json())?);
    }
    Ok(0)
}

fn kernel_cmd(sub: KernelCommand) -> Result<i32, Error> {
    match sub {
        KernelCommand::Check { file, zero_root } => {
            let asg: IndexAssignment = serde_json::from_slice(&std::fs::read(file)?)?;
            let ok = asg.check_summation(zero_root);
            println!(
                "{}",
                json!({"p": asg.p, "depth": asg.depth, "valid": ok, "zero_root_required": zero_root})
            );
            Ok(if ok { 0 } else { 1 })
        }
        KernelCommand::Extend { file, random, seed } => {
            let asg: IndexAssignment = serde_json::from_slice(&std::fs::read(file)?)?;
            if !asg.check_summation(false) {
                return Err(Error::Precondition(
                    "input assignment violates the summation condition".into(),
                ));
            }
            let out = if random {
                asg.extend_random(seed)
            } else {
                asg.extend_default()
            };
            println!("{}", serde_json::to_string(&out)?);
            Ok(0)
        }
        KernelCommand::Witness { family, n, m, word } => {
            let family = family.build()?;
            let x = parse_word(&word, &family)?.to_aut();
            match kernel::kernel_coset_witness(&family, n, m, &x)? {
                Some(w) => {
                    println!(
                        "{}",
                        json!({"witness_found": true, "exponents": w.exponents})
                    );
                    Ok(0)
                }
                None => {
                    println!("{}", json!({"witness_found": false}));
                    Ok(1)
                }
            }
        }
    }
}
