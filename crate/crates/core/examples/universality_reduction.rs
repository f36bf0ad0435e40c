//! NFA universality as 2-round equivalence, on a universal and a
//! non-universal automaton.

use roundsim::generators::universality_reduction;
use roundsim::oracles::oracle_nfa_universality;
use roundsim::simulation::fixed_round_equivalent;
use roundsim::{Alphabet, Nfa, RoundSpec};

fn main() -> roundsim::Result<()> {
    let bits = Alphabet::new(["0", "1"])?;
    let mut everything = Nfa::with_states(bits.clone(), 1, 0)?;
    everything.set_accepting(0, true);
    everything.add_transition(0, 0, 0)?;
    everything.add_transition(0, 1, 0)?;

    // no factor 11
    let mut no_11 = Nfa::with_states(bits, 2, 0)?;
    no_11.set_accepting(0, true);
    no_11.set_accepting(1, true);
    no_11.add_transition(0, 0, 0)?;
    no_11.add_transition(0, 1, 1)?;
    no_11.add_transition(1, 0, 0)?;

    for (name, n) in [("Σ*", &everything), ("no 11", &no_11)] {
        let b = universality_reduction(n, false)?;
        let v = fixed_round_equivalent(&b.t1, &b.t2, &b.lambda, RoundSpec::new(2)?)?;
        println!(
            "{name}: universal={} equivalent={} (T1 {} states, T2 {} states)",
            oracle_nfa_universality(n, 1 << 10)?,
            v.holds(),
            b.t1.num_states(),
            b.t2.num_states()
        );
        if let Some(c) = v.forward.counterexample.as_ref().or(v.backward.counterexample.as_ref()) {
            println!("  unmatched input: {}", b.t1.input().render(&c.input));
        }
    }
    Ok(())
}
