//! Searching for a round length, showing the type profile at each k and
//! where answers were reused.

use roundsim::existential::{existential_search_observed, ExistentialOptions, RoundAnswer};
use roundsim::generators::prime_family;

fn main() -> roundsim::Result<()> {
    let b = prime_family(2)?;
    let opts = ExistentialOptions { k_max: 12, verify_reuse: true, ..Default::default() };
    let verdict = existential_search_observed(&b.t1, &b.t2, &b.lambda, &opts, &mut |e| {
        let answer = match &e.answer {
            RoundAnswer::Computed { holds } => format!("computed {holds}"),
            RoundAnswer::Reused { from, holds, .. } => format!("reused from k={from}: {holds}"),
            RoundAnswer::Skipped { reason } => format!("skipped: {reason}"),
        };
        println!(
            "k={:<2} letters={:<5} profile={:<4} {}",
            e.k,
            e.quotient_letters,
            e.profile_size.map_or("-".into(), |s| s.to_string()),
            answer
        );
    })?;
    println!("outcome: {:?}", verdict.outcome);
    println!("reused {} answers, {} rechecked, {} mismatches", verdict.reuse_count, verdict.reuse_checks, verdict.reuse_mismatches);
    Ok(())
}
