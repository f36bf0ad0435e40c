#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use roundsim::{Alphabet, Nfa, Transducer, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn letters(n: usize, base: &str) -> Alphabet {
    let names: Vec<String> = if base == "a" {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| i.to_string()).collect()
    };
    Alphabet::new(names).unwrap()
}

pub fn random_transducer(rng: &mut impl Rng, input: &Alphabet, output: &Alphabet, states: usize) -> Transducer {
    let delta: Vec<Vec<usize>> = (0..states).map(|_| (0..input.len()).map(|_| rng.gen_range(0..states)).collect()).collect();
    let labels: Vec<usize> = (0..states).map(|_| rng.gen_range(0..output.len())).collect();
    Transducer::from_fn(
        input.clone(),
        output.clone(),
        states,
        0,
        |q| format!("q{q}"),
        |q, a| delta[q][a],
        |q| labels[q],
    )
    .unwrap()
}

/// A pair over shared alphabets: `|Σ_I|, |Σ_O| ∈ {1,2}`, up to `max_states` states each.
pub fn random_pair(rng: &mut impl Rng, max_states: usize) -> (Transducer, Transducer) {
    let input = letters(rng.gen_range(1..=2), "a");
    let output = letters(rng.gen_range(1..=2), "0");
    let s1 = rng.gen_range(1..=max_states);
    let s2 = rng.gen_range(1..=max_states);
    (random_transducer(rng, &input, &output, s1), random_transducer(rng, &input, &output, s2))
}

/// Each state accepting with probability `accept`, each transition present with probability `density`.
pub fn random_nfa(rng: &mut impl Rng, alphabet: &Alphabet, states: usize, density: f64, accept: f64) -> Nfa {
    let mut n = Nfa::with_states(alphabet.clone(), states, 0).unwrap();
    for q in 0..states {
        n.set_accepting(q, rng.gen_bool(accept));
        for a in 0..alphabet.len() {
            for r in 0..states {
                if rng.gen_bool(density) {
                    n.add_transition(q, a, r).unwrap();
                }
            }
        }
    }
    n
}

/// An all-accepting NFA over {0,1} with at most two successors per state and letter.
pub fn random_reduction_nfa(rng: &mut impl Rng, states: usize) -> Nfa {
    let bits = Alphabet::new(["0", "1"]).unwrap();
    let mut n = Nfa::with_states(bits, states, 0).unwrap();
    for q in 0..states {
        n.set_accepting(q, true);
        for a in 0..2 {
            let degree = match rng.gen_range(0..10) {
                0 => 0,
                1..=5 => 1,
                _ => 2,
            };
            let mut targets: Vec<usize> = (0..states).collect();
            for _ in 0..degree.min(states) {
                let i = rng.gen_range(0..targets.len());
                n.add_transition(q, a, targets.swap_remove(i)).unwrap();
            }
        }
    }
    n
}

pub fn random_word(rng: &mut impl Rng, alphabet_len: usize, len: usize) -> Word {
    (0..len).map(|_| rng.gen_range(0..alphabet_len)).collect()
}

/// Shuffle each k-block of `w` independently.
pub fn shuffle_rounds(rng: &mut impl Rng, w: &[usize], k: usize) -> Word {
    use rand::seq::SliceRandom;
    let mut out = w.to_vec();
    for block in out.chunks_mut(k) {
        block.shuffle(rng);
    }
    out
}
