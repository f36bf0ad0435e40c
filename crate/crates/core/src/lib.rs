//! k-round simulation, equivalence and process symmetry of letter-to-letter
//! transducers.
//!
//! A transducer `T₂` k-round simulates `T₁` on inputs `Λ` when for every
//! input `x ∈ Λ` made of rounds of length `k` there is an `x'` that agrees
//! with `x` up to reordering inside each round, such that `T₁(x)` and
//! `T₂(x')` also agree up to reordering inside each round.
//!
//! Checks reduce to language containment between permutation closures of
//! trace automata, run over a quotient alphabet of Parikh pairs:
//!
//! ```
//! use roundsim::{generators, simulation, Nfa, RoundSpec};
//!
//! let (t1, t2) = generators::two_letter_pair();
//! let lambda = Nfa::universal(t1.input().clone());
//! let k = RoundSpec::new(2).unwrap();
//! assert!(simulation::fixed_round_simulates(&t1, &t2, &lambda, k).unwrap().holds);
//! assert!(!simulation::fixed_round_simulates(&t2, &t1, &lambda, k).unwrap().holds);
//! ```

pub mod alphabet;
pub mod error;
pub mod existential;
pub mod format;
pub mod generators;
pub mod matrix;
pub mod nfa;
pub mod oracles;
pub mod perm;
pub mod report;
pub mod simulation;
pub mod symmetry;
pub mod trace;
pub mod transducer;
pub mod words;

pub use alphabet::{Alphabet, Symbol, Word};
pub use error::{Error, Result};
pub use matrix::{StateSet, TypeMatrix};
pub use nfa::Nfa;
pub use transducer::Transducer;
pub use words::{ParikhVector, RoundSpec};
