//! Fixed-k simulation in both directions, with the counterexample and the
//! brute-force cross-check.

use roundsim::generators::two_letter_pair;
use roundsim::oracles::{oracle_fixed_simulation, OracleBudget};
use roundsim::simulation::fixed_round_simulates;
use roundsim::{Nfa, RoundSpec};

fn main() -> roundsim::Result<()> {
    let (t1, t2) = two_letter_pair();
    let lambda = Nfa::universal(t1.input().clone());

    for k in 1..=3 {
        let round = RoundSpec::new(k)?;
        for (name, a, b) in [("T1 < T2", &t1, &t2), ("T2 < T1", &t2, &t1)] {
            let v = fixed_round_simulates(a, b, &lambda, round)?;
            let oracle = oracle_fixed_simulation(a, b, &lambda, k, &OracleBudget::rounds(2))?;
            print!("k={k} {name}: {} (oracle on two rounds: {})", v.holds, oracle.holds);
            if let Some(c) = &v.counterexample {
                print!("  input {} output {}", t1.input().render(&c.input), t1.output().render(&c.output));
            }
            println!("  [{} configurations]", v.stats.configs_explored);
        }
    }
    Ok(())
}
