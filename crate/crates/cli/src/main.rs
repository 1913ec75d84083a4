use std::fs;
use std::process::ExitCode;

use bspid::arith::Rat;
use bspid::dmod::{
    bernstein_sato_monomial, functional_equation_bfunction, generalized_bfunction, paper_example_suite,
    parse_graded_element, v_membership, verify_theorem_monomials, BFunctionResult, DmodError, EngineConfig,
    DEFAULT_WINDOW,
};
use bspid::par::Execution;
use bspid::parse::{print_poly, print_rat};
use bspid::report::{emit_report, OutputMode};
use bspid::snf::{MatrixJson, ModuleJson};
use bspid::ts::{counterexample_without_hypothesis, exhaustive_sweep, random_sweep, run_trial, run_trials, InstanceJson, Mode};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bspid", version, about = "Exact annihilator and b-function computations")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    /// Generation window of the graded engine.
    #[arg(long, env = "BSPID_WINDOW", default_value_t = DEFAULT_WINDOW, global = true)]
    window: i64,
    /// Run independent jobs on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of a matrix file, with transforms.
    Snf { file: String },
    /// Annihilator of an element of a finitely presented module file.
    Ann { file: String },
    /// Randomized check of the tensor annihilator formula.
    TsVerify {
        #[arg(long, default_value = "theorem")]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replay a single trial.
        #[arg(long)]
        trial: Option<u64>,
        /// Verify an instance file instead of random trials.
        #[arg(long, conflicts_with_all = ["trial"])]
        input: Option<String>,
    },
    /// Randomized (and optionally exhaustive) check of the exponent identity.
    Maxid {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also sweep all tables with up to this many indices per factor.
        #[arg(long)]
        exhaustive_len: Option<usize>,
        /// Largest exponent in the exhaustive sweep.
        #[arg(long, default_value_t = 3)]
        exhaustive_max: u32,
    },
    /// Bernstein-Sato polynomial of x^n or x^n y^m.
    Bfun {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Generalized b-function of an element such as 'x*dt^2 @ fs'.
    Gbf {
        /// Monomial, e.g. "x", "x2,y".
        #[arg(long)]
        f: String,
        #[arg(long)]
        expr: String,
    },
    /// Whether an element lies in V^alpha.
    Vmem {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        expr: String,
    },
    /// b of x^n y^m against b of x^n times b of y^m.
    TsTheorem {
        #[arg(long, default_value_t = 5)]
        nmax: u32,
        #[arg(long, default_value_t = 5)]
        mmax: u32,
    },
    /// Every computation of the worked example.
    PaperExample,
}

/// Exit status: 0 all checks pass, 1 a check failed, 2 bad input.
enum Outcome {
    Pass,
    Fail,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &str) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
}

fn verdict(pass: bool) -> Outcome {
    if pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn print_b(cli: &Cli, input: &str, b: &BFunctionResult) {
    match cli.output {
        Output::Json => print_json(&b.to_json(input)),
        Output::Text => println!("{b}"),
    }
}

/// Input mistakes exit 2; engine failures are failed checks.
fn dmod_result<T>(r: Result<T, DmodError>) -> Result<Result<T, DmodError>, InputError> {
    match r {
        Err(e @ (DmodError::Config(_) | DmodError::UnknownLetter(_) | DmodError::Parse(_))) => Err(InputError(e.to_string())),
        Err(e @ (DmodError::NonHomogeneous(_) | DmodError::ZeroElement | DmodError::Unsupported(_))) => {
            Err(InputError(e.to_string()))
        }
        other => Ok(other),
    }
}

fn engine_failure(e: DmodError) -> Outcome {
    eprintln!("failure: {e}");
    Outcome::Fail
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    let mode = match cli.output {
        Output::Text => OutputMode::Text,
        Output::Json => OutputMode::Json,
    };
    match &cli.command {
        Command::Snf { file } => {
            let m: MatrixJson = serde_json::from_str(&read(file)?)?;
            let snf = m.to_matrix()?.snf_json();
            match cli.output {
                Output::Json => print_json(&snf),
                Output::Text => {
                    println!("rank {}", snf.rank);
                    println!("d = [{}]", snf.d.join(", "));
                    for (name, rows) in [("U", &snf.u), ("V", &snf.v)] {
                        println!("{name} =");
                        for row in rows {
                            println!("  [{}]", row.join(", "));
                        }
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Ann { file } => {
            let m: ModuleJson = serde_json::from_str(&read(file)?)?;
            let ann = m.annihilator()?;
            match cli.output {
                Output::Json => print_json(&json!({ "annihilator": ann })),
                Output::Text => println!("{ann}"),
            }
            Ok(Outcome::Pass)
        }
        Command::TsVerify { mode: ts_mode, trials, seed, trial, input } => {
            if let Some(path) = input {
                let file: InstanceJson = serde_json::from_str(&read(path)?)?;
                let report = file.to_instance()?.verify()?;
                match cli.output {
                    Output::Json => print_json(&report),
                    Output::Text => println!(
                        "b = {}\nl = {}\nbruteforce = {}\nsnf = {}\n{}",
                        report.b,
                        report.l,
                        report.bruteforce,
                        report.snf.as_deref().unwrap_or("-"),
                        if report.pass { "pass" } else { "FAIL" }
                    ),
                }
                return Ok(verdict(report.pass));
            }
            let reports = match trial {
                Some(k) => vec![run_trial(*ts_mode, *seed, *k)],
                None => run_trials(*ts_mode, *seed, *trials, exec),
            };
            if reports.is_empty() {
                println!("no checks executed");
                return Err(InputError("no trials requested".into()));
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            match cli.output {
                Output::Json => reports.iter().for_each(print_json),
                Output::Text => {
                    for r in reports.iter().filter(|r| !r.pass) {
                        println!("FAIL trial {} (replay with --seed {} --trial {}): {}", r.trial, r.seed, r.trial, r.b);
                    }
                    println!("{passed}/{} pass", reports.len());
                }
            }
            Ok(verdict(passed == reports.len()))
        }
        Command::Maxid { trials, seed, exhaustive_len, exhaustive_max } => {
            if *trials == 0 && exhaustive_len.is_none() {
                println!("no checks executed");
                return Err(InputError("no tables requested".into()));
            }
            let random = random_sweep(*seed, *trials, exec);
            let sweep = exhaustive_len.map(|len| exhaustive_sweep(len, *exhaustive_max, exec));
            let mut ok = random.passed == random.checked;
            match cli.output {
                Output::Json => print_json(&json!({
                    "check": "random", "seed": seed, "checked": random.checked, "passed": random.passed,
                    "first_failure": random.first_failure,
                })),
                Output::Text => println!("{}/{} pass", random.passed, random.checked),
            }
            if let Some(s) = sweep {
                ok &= s.passed == s.checked;
                let witness = counterexample_without_hypothesis(exhaustive_len.unwrap_or(1), *exhaustive_max);
                ok &= witness.is_some();
                match cli.output {
                    Output::Json => print_json(&json!({
                        "check": "exhaustive", "checked": s.checked, "passed": s.passed,
                        "first_failure": s.first_failure, "counterexample_without_hypothesis": witness,
                    })),
                    Output::Text => {
                        println!("exhaustive {}/{} pass", s.passed, s.checked);
                        match witness {
                            Some(t) => println!("without the hypothesis: gamma {:?}, alpha {:?} differ", t.gamma, t.alpha),
                            None => println!("FAIL no counterexample without the hypothesis"),
                        }
                    }
                }
            }
            Ok(verdict(ok))
        }
        Command::Bfun { n, m } => {
            let cfg = match m {
                Some(m) => EngineConfig::pair(*n, *m),
                None => EngineConfig::parse(&format!("x{n}"))?,
            }
            .with_window(cli.window)?;
            let input = cfg.to_string();
            match dmod_result(bernstein_sato_monomial(&cfg))? {
                Ok(b) => {
                    let oracle = functional_equation_bfunction(&cfg)?;
                    print_b(cli, &input, &b);
                    if oracle != b.poly {
                        eprintln!("failure: functional equation gives {}", print_poly(&oracle));
                    }
                    Ok(verdict(oracle == b.poly))
                }
                Err(e) => Ok(engine_failure(e)),
            }
        }
        Command::Gbf { f, expr } => {
            let cfg = EngineConfig::parse(f)?.with_window(cli.window)?;
            let u = dmod_result(parse_graded_element(expr, &cfg))?;
            let u = u.map_err(InputError::from)?;
            match dmod_result(generalized_bfunction(&u, &cfg))? {
                Ok(b) => {
                    print_b(cli, expr, &b);
                    // a nonzero element never has b = 1 here
                    Ok(verdict(!b.is_one()))
                }
                Err(e) => Ok(engine_failure(e)),
            }
        }
        Command::Vmem { alpha, f, expr } => {
            let alpha: Rat = alpha.trim().parse().map_err(|_| InputError(format!("'{alpha}' is not a rational number")))?;
            let cfg = EngineConfig::parse(f)?.with_window(cli.window)?;
            let u = dmod_result(parse_graded_element(expr, &cfg))?.map_err(InputError::from)?;
            match dmod_result(v_membership(&u, &alpha, &cfg))? {
                Ok(member) => {
                    match cli.output {
                        Output::Json => print_json(&json!({ "input": expr, "alpha": print_rat(&alpha), "member": member })),
                        Output::Text => println!("{member}"),
                    }
                    Ok(Outcome::Pass)
                }
                Err(e) => Ok(engine_failure(e)),
            }
        }
        Command::TsTheorem { nmax, mmax } => {
            let checks = verify_theorem_monomials(*nmax, *mmax, cli.window, exec);
            report(&checks, mode)
        }
        Command::PaperExample => report(&paper_example_suite(cli.window), mode),
    }
}

fn report(checks: &[bspid::report::Check], mode: OutputMode) -> Result<Outcome, InputError> {
    let (text, pass) = emit_report(checks, mode);
    print!("{text}");
    if checks.is_empty() {
        return Err(InputError("no checks executed".into()));
    }
    Ok(verdict(pass))
}
