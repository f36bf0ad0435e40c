use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use roundsim::existential::{existential_equivalence_observed, existential_search_observed, ExistentialOptions, ProfileEntry, RoundAnswer};
use roundsim::format::{parse_nfa, parse_transducer};
use roundsim::generators::{prime_family_with_limit, round_robin_bundle, two_letter_bundle, universality_reduction, InstanceBundle, PRIME_FAMILY_MAX};
use roundsim::oracles::{oracle_fixed_simulation, OracleBudget};
use roundsim::report::{self, Report};
use roundsim::simulation::{closure_pair, fixed_round_equivalent_with, fixed_round_simulates_with, CheckOptions};
use roundsim::symmetry::{existential_symmetry, is_round_symmetric, is_round_symmetric_wrt, Permutation, ProcessAlphabet, DEFAULT_MAX_PROCESSES};
use roundsim::trace::{ProductAlphabet, RedundantProduct};
use roundsim::{Error, Nfa, RoundSpec, Transducer};

/// Decide k-round simulation, equivalence and process symmetry of transducers.
#[derive(Parser)]
#[command(name = "roundsim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the report as JSON instead of key: value lines.
    #[arg(long, global = true)]
    json: bool,

    /// Largest quotient alphabet (Parikh pairs) a single check may sweep.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    quotient_cap: u128,

    /// Disable antichain pruning in the containment search.
    #[arg(long, global = true)]
    no_antichain: bool,
}

#[derive(Args)]
struct Pair {
    /// Transducer T₁.
    t1: PathBuf,
    /// Transducer T₂.
    t2: PathBuf,
    /// Restricting input language; all inputs when omitted.
    #[arg(long)]
    lambda: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check T₁ ≺_{k,Λ} T₂ for one k.
    Fixed {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Write the type profile at k, one hex matrix per line.
        #[arg(long)]
        dump_profile: Option<PathBuf>,
        /// Cross-check with the brute-force oracle on inputs of up to two rounds.
        #[arg(long, hide = true)]
        oracle: bool,
    },
    /// Check T₁ ≡_{k,Λ} T₂ for one k.
    Equiv {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
    },
    /// Search k = 1..max-k for a round length at which simulation holds.
    Existential {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        max_k: u64,
        /// Search for equivalence instead of simulation.
        #[arg(long)]
        equiv: bool,
        /// Recompute every answer reused from an equal type profile.
        #[arg(long)]
        verify_reuse: bool,
    },
    /// Check round symmetry of a 2^P/2^P transducer.
    Symmetry {
        transducer: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), conflicts_with = "max_k", required_unless_present = "max_k")]
        k: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_k: Option<u64>,
        /// A single permutation, e.g. "(1 2)(3)" or "2,1,3"; requires --k.
        #[arg(long, requires = "k")]
        perm: Option<String>,
        /// Accept more than 6 processes.
        #[arg(long)]
        allow_large: bool,
    },
    /// Write a generated instance bundle with a manifest of expected verdicts.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Output directory.
        #[arg(long, global = true, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Round-robin schedulers started at processes 0 and 1.
    RoundRobin {
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// The prime family needing rounds of length m·p₁⋯p_m.
    Primes {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        allow_large: bool,
    },
    /// Reduction from universality of an all-accepting NFA over {0,1}.
    Universality {
        nfa: PathBuf,
        /// Add ## padding blocks.
        #[arg(long)]
        padded: bool,
    },
    /// The two-letter pair separated at k = 2.
    TwoLetter,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_transducer(path: &Path) -> Result<Transducer, Error> {
    parse_transducer(&read(path)?).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_pair(p: &Pair) -> Result<(Transducer, Transducer, Nfa), Error> {
    let t1 = load_transducer(&p.t1)?;
    let t2 = load_transducer(&p.t2)?;
    let lambda = match &p.lambda {
        Some(path) => parse_nfa(&read(path)?).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?,
        None => Nfa::universal(t1.input().clone()),
    };
    Ok((t1, t2, lambda))
}

fn round_length(k: u64) -> Result<RoundSpec, Error> {
    RoundSpec::new(k as usize)
}

fn progress(direction: Option<&str>, e: &ProfileEntry) {
    let answer = match &e.answer {
        RoundAnswer::Computed { holds } => format!("computed {holds}"),
        RoundAnswer::Reused { from, holds, verified } => match verified {
            Some(ok) => format!("reused from k={from} {holds} (recomputed, agrees: {ok})"),
            None => format!("reused from k={from} {holds}"),
        },
        RoundAnswer::Skipped { reason } => format!("skipped ({reason})"),
    };
    let size = e.profile_size.map_or("-".to_string(), |s| s.to_string());
    let prefix = direction.map_or(String::new(), |d| format!("{d} "));
    eprintln!(
        "{prefix}k={} letters={} profile={} {} {:.1}ms",
        e.k,
        e.quotient_letters,
        size,
        answer,
        e.elapsed.as_secs_f64() * 1000.0
    );
}

/// The result of a command and whether the checked property holds.
struct Outcome {
    result: Value,
    holds: bool,
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let check = CheckOptions { antichain: !cli.no_antichain, quotient_cap: cli.quotient_cap };
    match &cli.command {
        Command::Fixed { pair, k, dump_profile, oracle } => {
            let (t1, t2, lambda) = load_pair(pair)?;
            let k = round_length(*k)?;
            let v = fixed_round_simulates_with(&t1, &t2, &lambda, k, &check)?;
            let product = ProductAlphabet::of(&t1);
            let mut result = report::simulation_json(&v, &product);
            if let Some(path) = dump_profile {
                let rp = RedundantProduct::build(&t1, &t2, &lambda)?;
                let profile = closure_pair(&rp, k)?.0.profile();
                fs::write(path, profile.dump_hex()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                result["profile"] = json!({ "size": profile.len(), "fingerprint": profile.fingerprint_hex() });
            }
            if *oracle {
                let o = oracle_fixed_simulation(&t1, &t2, &lambda, k.get(), &OracleBudget::rounds(2))?;
                let bounded_refutation = v.counterexample.as_ref().is_some_and(|c| c.rounds() <= 2);
                result["oracle"] = json!({
                    "holds_up_to_two_rounds": o.holds,
                    "agrees": o.holds != bounded_refutation,
                    "witness": o.witness.map(|w| t1.input().names(&w)),
                });
            }
            Ok(Outcome { holds: v.holds, result })
        }
        Command::Equiv { pair, k } => {
            let (t1, t2, lambda) = load_pair(pair)?;
            let v = fixed_round_equivalent_with(&t1, &t2, &lambda, round_length(*k)?, &check)?;
            Ok(Outcome { holds: v.holds(), result: report::equivalence_json(&v, &ProductAlphabet::of(&t1)) })
        }
        Command::Existential { pair, max_k, equiv, verify_reuse } => {
            let (t1, t2, lambda) = load_pair(pair)?;
            let opts = ExistentialOptions { k_max: *max_k as usize, verify_reuse: *verify_reuse, check };
            if *equiv {
                let v = existential_equivalence_observed(&t1, &t2, &lambda, &opts, &mut |d, e| progress(Some(d), e))?;
                Ok(Outcome { holds: v.outcome().is_found(), result: report::equivalence_search_json(&v) })
            } else {
                let v = existential_search_observed(&t1, &t2, &lambda, &opts, &mut |e| progress(None, e))?;
                Ok(Outcome { holds: v.outcome.is_found(), result: report::existential_json(&v) })
            }
        }
        Command::Symmetry { transducer, k, max_k, perm, allow_large } => {
            let t = load_transducer(transducer)?;
            let pa = ProcessAlphabet::from_alphabet(t.input())?;
            if pa.m() > DEFAULT_MAX_PROCESSES && !allow_large {
                return Err(Error::Input(format!(
                    "{} processes exceed the default limit of {DEFAULT_MAX_PROCESSES}; pass --allow-large",
                    pa.m()
                )));
            }
            let product = ProductAlphabet::of(&t);
            match (k, max_k, perm) {
                (Some(k), _, Some(text)) => {
                    let pi = Permutation::parse(text, pa.labels())?;
                    let v = is_round_symmetric_wrt(&t, &pi, round_length(*k)?, &check)?;
                    let mut result = report::simulation_json(&v, &product);
                    result["permutation"] = json!(pi.to_cycles(pa.labels()));
                    Ok(Outcome { holds: v.holds, result })
                }
                (Some(k), _, None) => {
                    let v = is_round_symmetric(&t, round_length(*k)?, &check)?;
                    Ok(Outcome { holds: v.holds(), result: report::symmetry_json(&v, &product, pa.labels()) })
                }
                (None, _, Some(_)) => Err(Error::Input("--perm needs --k".into())),
                (None, Some(max_k), None) => {
                    let opts = ExistentialOptions { k_max: *max_k as usize, verify_reuse: false, check };
                    let v = existential_symmetry(&t, &opts)?;
                    Ok(Outcome { holds: v.outcome().is_found(), result: report::symmetry_search_json(&v, pa.labels()) })
                }
                (None, None, None) => Err(Error::Input("symmetry needs --k or --max-k".into())),
            }
        }
        Command::Gen { family, out } => {
            let bundle: InstanceBundle = match family {
                Family::RoundRobin { m } => round_robin_bundle(*m)?,
                Family::Primes { m, allow_large } => {
                    prime_family_with_limit(*m, if *allow_large { usize::MAX } else { PRIME_FAMILY_MAX })?
                }
                Family::Universality { nfa, padded } => {
                    let n = parse_nfa(&read(nfa)?).map_err(|e| Error::Input(format!("{}: {e}", nfa.display())))?;
                    universality_reduction(&n, *padded)?
                }
                Family::TwoLetter => two_letter_bundle(),
            };
            bundle.write_to(out)?;
            let manifest: Value = serde_json::from_str(&bundle.manifest_json()).expect("manifest is JSON");
            Ok(Outcome { holds: true, result: json!({ "directory": out.display().to_string(), "manifest": manifest }) })
        }
    }
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(outcome) => {
            let report = Report {
                command: command_echo(),
                result: outcome.result,
                elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
            };
            let text = if cli.json { report.to_json() + "\n" } else { report.to_text() };
            let _ = std::io::stdout().write_all(text.as_bytes());
            if outcome.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
