//! The `msp` command line: simulate, estimate, sweep, replay, verify,
//! certify, plus `dump` for instance files.
//!
//! Exit codes: 0 success, 1 a check or bound failed (or a run errored),
//! 2 bad usage.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    certify_no_size1_strong_fs, dynkin_best_probability, estimate, modified_hat_bounds, round_sig9,
    BoundDirection, EstimateReport,
};
use crate::fixtures::{Fixture, FIXTURES};
use crate::instances::{
    double_triangle, hat_graph, modified_hat_graph, random_graphic, triangle, uniform_instance,
    InstanceBundle, WeightSpec,
};
use crate::matroid::format::{parse_instance, write_instance};
use crate::policy::PolicyName;
use crate::sim::{draw_schedule, run_trial, trial_rng, ArrivalSchedule, SimConfig};
use crate::suites::{run_suite, SuiteParams, SUITES};

#[derive(Parser, Debug)]
#[command(name = "msp", version, about = "Matroid secretary simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one trial and write its decision trace as JSON lines.
    Simulate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, env = "MSP_SEED", default_value_t = 0)]
        seed: u64,
        /// Trial index within the seed's stream family.
        #[arg(long, default_value_t = 0)]
        trial: u64,
        /// Replay this schedule file instead of drawing one.
        #[arg(long)]
        schedule: Option<PathBuf>,
        /// Also write the schedule used.
        #[arg(long)]
        schedule_out: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo acceptance frequencies and utility ratio.
    Estimate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, env = "MSP_SEED", default_value_t = 0)]
        seed: u64,
        /// Compare min-over-MWB against this value instead of the built-in bound.
        #[arg(long, requires = "direction")]
        bound: Option<f64>,
        #[arg(long, value_enum)]
        direction: Option<Direction>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid of estimates over n and p, one CSV row per cell.
    Sweep {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        ps: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, env = "MSP_SEED", default_value_t = 0)]
        seed: u64,
        /// Report this named element instead of the least accepted optimal one.
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a forced schedule and compare with the known decisions.
    Replay {
        /// One of: triangle-sample, triangle-greedy, uniform-virtual-stream,
        /// hat-claw, modified-hat-lemma1.
        fixture: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an invariant suite.
    Verify {
        /// One of: matroid-axioms, mwb-lemmas, equivalences, claw-blocker,
        /// forbidden-consistency.
        suite: String,
        /// Number of random cases (or trials for the hat-graph suites).
        #[arg(long, alias = "trials")]
        cases: Option<u64>,
        #[arg(long, env = "MSP_SEED", default_value_t = 0)]
        seed: u64,
        /// Claws in the hat graph.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive refutation of size-1 strong forbidden sets.
    Certify {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an instance in the text format.
    Dump {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Hat,
    ModifiedHat,
    Triangle,
    DoubleTriangle,
    Uniform,
    RandomGraphic,
    File,
}

#[derive(Args, Debug, Clone)]
struct InstanceArgs {
    #[arg(long, value_enum)]
    instance: Family,
    /// Claws (hat families) or ground-set size (uniform).
    #[arg(long)]
    n: Option<usize>,
    /// Rank of the uniform matroid; also used by the k-uniform policies.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 4)]
    vertices: usize,
    #[arg(long, default_value_t = 8)]
    edges: usize,
    /// Seed for random-graphic instances and shuffled uniform weights.
    #[arg(long)]
    instance_seed: Option<u64>,
    /// Instance file for `--instance file`.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct PolicyArgs {
    #[arg(long)]
    policy: String,
    /// Reference rule for the greedy framework.
    #[arg(long)]
    reference: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    Lower,
    Upper,
}

/// A run-time failure: exit code and message.
struct Failure(i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn failed(e: impl std::fmt::Display) -> Failure {
    Failure(1, e.to_string())
}

impl InstanceArgs {
    fn build(&self) -> Result<InstanceBundle, Failure> {
        let need_n = || self.n.ok_or_else(|| usage("this instance needs --n"));
        let bundle = match self.instance {
            Family::Hat => hat_graph(need_n()?),
            Family::ModifiedHat => modified_hat_graph(need_n()?),
            Family::Triangle => Ok(triangle()),
            Family::DoubleTriangle => Ok(double_triangle()),
            Family::Uniform => {
                let k = self.k.ok_or_else(|| usage("uniform instance needs --k"))?;
                let spec = match self.instance_seed {
                    Some(s) => WeightSpec::Shuffled(s),
                    None => WeightSpec::Identity,
                };
                uniform_instance(need_n()?, k, spec)
            }
            Family::RandomGraphic => {
                let mut rng = trial_rng(self.instance_seed.unwrap_or(0), 0);
                random_graphic(self.vertices, self.edges, &mut rng)
            }
            Family::File => {
                let path = self.file.as_ref().ok_or_else(|| usage("--instance file needs --file"))?;
                let text = fs::read_to_string(path)
                    .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                let parsed = parse_instance(&text).map_err(|e| usage(e.to_string()))?;
                let named = parsed
                    .weights
                    .ids()
                    .map(|id| (parsed.weights.label(id).to_owned(), id))
                    .collect();
                InstanceBundle::from_parts("file", parsed.base, parsed.weights, named)
            }
        };
        bundle.map_err(|e| usage(e.to_string()))
    }

    fn with_n(&self, n: usize) -> InstanceArgs {
        InstanceArgs {
            n: Some(n),
            ..self.clone()
        }
    }
}

impl PolicyArgs {
    fn resolve(&self, k: Option<usize>, bundle: &InstanceBundle) -> Result<PolicyName, Failure> {
        let k = k.or_else(|| bundle.view.base().uniform_rank());
        let name = PolicyName::parse(&self.policy, k, self.reference.as_deref()).map_err(usage)?;
        name.instantiate(&bundle.view).map_err(|e| usage(e.to_string()))?;
        Ok(name)
    }
}

/// Built-in comparison value for `(family, policy)` pairs covered by a
/// known result. `element` selects a single element instead of the
/// minimum over the optimal basis.
fn known_bound(
    bundle: &InstanceBundle,
    policy: &PolicyName,
    n: Option<usize>,
    p: f64,
    element: Option<&str>,
) -> Option<(f64, Option<BoundDirection>)> {
    match (bundle.family.as_str(), policy) {
        ("hat", PolicyName::VirtualMsp) => match element {
            Some("e_inf") => Some((p * p * (1.0 - p), Some(BoundDirection::Lower))),
            None if p == 0.5 => Some((0.25, Some(BoundDirection::Lower))),
            _ => None,
        },
        ("modified-hat", PolicyName::VirtualMsp) if element.is_none_or(|e| e == "e_inf") => {
            let b = modified_hat_bounds(n?, p).ok()?;
            Some((1.0 - b.rejection_lower_bound, Some(BoundDirection::Upper)))
        }
        ("uniform", PolicyName::Dynkin) => Some((dynkin_best_probability(p), None)),
        _ => None,
    }
}

fn write_output(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| failed(format!("cannot write {}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(failed),
    }
}

fn estimate_report(
    instance: &InstanceArgs,
    policy: &PolicyArgs,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<(InstanceBundle, PolicyName, EstimateReport), Failure> {
    let bundle = instance.build()?;
    let name = policy.resolve(instance.k, &bundle)?;
    let config = SimConfig::new(p, seed, trials).map_err(|e| usage(e.to_string()))?;
    let report = estimate(&name, &bundle, &config).map_err(failed)?;
    Ok((bundle, name, report))
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Simulate {
            instance,
            policy,
            p,
            seed,
            trial,
            schedule,
            schedule_out,
            out,
        } => {
            let bundle = instance.build()?;
            let name = policy.resolve(instance.k, &bundle)?;
            let schedule = match schedule {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    ArrivalSchedule::from_text(&text).map_err(|e| usage(e.to_string()))?
                }
                None => draw_schedule(bundle.len(), &mut trial_rng(seed, trial)),
            };
            if let Some(path) = &schedule_out {
                fs::write(path, schedule.to_text()).map_err(failed)?;
            }
            let trace = run_trial(&name, &bundle.view, &bundle.weights, &schedule, p).map_err(failed)?;
            write_output(&out, &trace.to_jsonl(), stdout)?;
            Ok(0)
        }
        Command::Estimate {
            instance,
            policy,
            p,
            trials,
            seed,
            bound,
            direction,
            out,
        } => {
            let (bundle, name, mut report) = estimate_report(&instance, &policy, p, trials, seed)?;
            let chosen = match (bound, direction) {
                (Some(b), Some(d)) => Some((
                    b,
                    Some(match d {
                        Direction::Lower => BoundDirection::Lower,
                        Direction::Upper => BoundDirection::Upper,
                    }),
                )),
                _ => known_bound(&bundle, &name, instance.n, p, None),
            };
            if let Some((b, d)) = chosen {
                report.analytic_bound = Some(b);
                report.bound_direction = d;
            }
            write_output(&out, &(report.to_json() + "\n"), stdout)?;
            Ok(if report.meets_bound() == Some(false) { 1 } else { 0 })
        }
        Command::Sweep {
            instance,
            policy,
            ns,
            ps,
            trials,
            seed,
            element,
            out,
        } => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["instance", "n", "policy", "p", "trials", "element", "freq", "ci", "bound"])
                .map_err(failed)?;
            for &n in &ns {
                for &p in &ps {
                    let args = instance.with_n(n);
                    let (bundle, name, report) = estimate_report(&args, &policy, p, trials, seed)?;
                    let freq = match &element {
                        Some(label) => {
                            let id = *bundle
                                .named
                                .get(label)
                                .ok_or_else(|| usage(format!("no element named `{label}`")))?;
                            report
                                .freq(id)
                                .cloned()
                                .ok_or_else(|| usage(format!("`{label}` is not in the optimal basis")))?
                        }
                        None => report
                            .min_over_mwb_element
                            .and_then(|id| report.freq(id).cloned())
                            .ok_or_else(|| usage("empty optimal basis"))?,
                    };
                    let bound = known_bound(&bundle, &name, Some(n), p, element.as_deref())
                        .map(|(b, _)| round_sig9(b).to_string())
                        .unwrap_or_default();
                    writer
                        .write_record([
                            bundle.family.clone(),
                            n.to_string(),
                            name.to_string(),
                            round_sig9(p).to_string(),
                            trials.to_string(),
                            freq.label.clone(),
                            round_sig9(freq.freq).to_string(),
                            round_sig9(freq.ci_radius_3sigma).to_string(),
                            bound,
                        ])
                        .map_err(failed)?;
                }
            }
            let bytes = writer.into_inner().map_err(failed)?;
            write_output(&out, &String::from_utf8(bytes).expect("csv is utf-8"), stdout)?;
            Ok(0)
        }
        Command::Replay { fixture, out } => {
            let f = Fixture::load(&fixture)
                .ok_or_else(|| usage(format!("unknown fixture `{fixture}`; expected one of {FIXTURES:?}")))?;
            let outcome = f.replay().map_err(failed)?;
            write_output(&out, &outcome.trace.to_jsonl(), stdout)?;
            if outcome.mismatches.is_empty() {
                Ok(0)
            } else {
                Err(Failure(1, format!("{}: {}", f.name, outcome.mismatches.join("; "))))
            }
        }
        Command::Verify {
            suite,
            cases,
            seed,
            n,
            p,
            out,
        } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(usage(format!("unknown suite `{suite}`; expected one of {SUITES:?}")));
            }
            let (default_cases, default_n) = match suite.as_str() {
                "matroid-axioms" | "mwb-lemmas" => (200, 0),
                "equivalences" => (1000, 0),
                "claw-blocker" => (10_000, 8),
                _ => (10_000, 5),
            };
            let params = SuiteParams {
                cases: cases.unwrap_or(default_cases),
                seed,
                n: n.unwrap_or(default_n),
                p,
            };
            let report = run_suite(&suite, &params).map_err(failed)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            match &out {
                Some(_) => write_output(&out, &json, stdout)?,
                None => writeln!(stdout, "{report}").map_err(failed)?,
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Certify { out } => {
            let cert = certify_no_size1_strong_fs().map_err(failed)?;
            write_output(&out, &(cert.to_json() + "\n"), stdout)?;
            Ok(if cert.complete() { 0 } else { 1 })
        }
        Command::Dump { instance, out } => {
            let bundle = instance.build()?;
            let text = write_instance(bundle.view.base(), &bundle.weights).map_err(failed)?;
            write_output(&out, &text, stdout)?;
            Ok(0)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}
