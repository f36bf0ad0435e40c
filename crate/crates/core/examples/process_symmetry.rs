//! Round symmetry of the round-robin scheduler under renaming of processes.

use roundsim::existential::ExistentialOptions;
use roundsim::generators::round_robin;
use roundsim::simulation::CheckOptions;
use roundsim::symmetry::{apply_permutation, existential_symmetry, is_round_symmetric, permute_transducer, Permutation, ProcessAlphabet};
use roundsim::RoundSpec;

fn main() -> roundsim::Result<()> {
    let t = round_robin(3, 0)?;
    let pa = ProcessAlphabet::from_alphabet(t.input())?;
    let show = |w: &[usize]| t.output().names(w).concat();

    let x = pa.parse_word("{1,2}{0}{0}")?;
    let swap = Permutation::parse("(0 2)", pa.labels())?;
    println!("T({}) = {}", show(&x), show(&t.run(&x)?));
    let px = apply_permutation(&swap, &pa, &x)?;
    println!("T({}) = {}", show(&px), show(&t.run(&px)?));
    println!("T^(0 2)({}) = {}", show(&x), show(&permute_transducer(&t, &swap)?.run(&x)?));

    for k in 1..=3 {
        let v = is_round_symmetric(&t, RoundSpec::new(k)?, &CheckOptions::default())?;
        println!("k={k} symmetric={}", v.holds());
    }
    let search = existential_symmetry(&t, &ExistentialOptions { k_max: 6, ..Default::default() })?;
    println!("least k: {:?}", search.outcome());
    Ok(())
}
