//! Deterministic letter-to-letter transducers with state labels as outputs.

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{input_err, Error, Result};

/// A complete deterministic `Σ_I/Σ_O` transducer `⟨Σ_I, Σ_O, Q, q₀, δ, ℓ⟩`.
///
/// The output on `σ₁⋯σₙ` is `ℓ(q₁)⋯ℓ(qₙ)`; the label of the initial state of
/// the run is never emitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer {
    input: Alphabet,
    output: Alphabet,
    state_names: Vec<String>,
    initial: usize,
    delta: Vec<Vec<usize>>,
    label: Vec<Symbol>,
}

impl Transducer {
    /// Builds a transducer from a total transition table `delta[q][σ]` and
    /// labels `label[q]`.
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        state_names: Vec<String>,
        initial: usize,
        delta: Vec<Vec<usize>>,
        label: Vec<Symbol>,
    ) -> Result<Self> {
        let n = state_names.len();
        if n == 0 {
            return input_err("transducer needs at least one state");
        }
        if initial >= n {
            return input_err(format!("initial state {initial} out of range"));
        }
        if delta.len() != n || label.len() != n {
            return input_err("transition table and labelling must cover every state");
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != input.len() {
                return input_err(format!(
                    "state {} has {} transitions, expected {}",
                    state_names[q],
                    row.len(),
                    input.len()
                ));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return input_err(format!("transition target {t} out of range"));
            }
        }
        if let Some(&l) = label.iter().find(|&&l| l >= output.len()) {
            return input_err(format!("label index {l} outside output alphabet"));
        }
        Ok(Transducer { input, output, state_names, initial, delta, label })
    }

    /// Builds a transducer with states `0..n` named by `name`, from
    /// closures for the transition function and labelling.
    pub fn from_fn(
        input: Alphabet,
        output: Alphabet,
        num_states: usize,
        initial: usize,
        name: impl Fn(usize) -> String,
        delta: impl Fn(usize, Symbol) -> usize,
        label: impl Fn(usize) -> Symbol,
    ) -> Result<Self> {
        let names = (0..num_states).map(&name).collect();
        let table = (0..num_states)
            .map(|q| (0..input.len()).map(|a| delta(q, a)).collect())
            .collect();
        let labels = (0..num_states).map(label).collect();
        Self::new(input, output, names, initial, table, labels)
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.state_names[q]
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn next(&self, q: usize, a: Symbol) -> usize {
        self.delta[q][a]
    }

    pub fn label(&self, q: usize) -> Symbol {
        self.label[q]
    }

    /// The same machine started from `q` (written `T^q`).
    pub fn with_initial(&self, q: usize) -> Result<Self> {
        if q >= self.num_states() {
            return input_err(format!("state {q} out of range"));
        }
        Ok(Transducer { initial: q, ..self.clone() })
    }

    /// `T(x)`: the labels along the unique run, excluding the initial state.
    pub fn run(&self, x: &[Symbol]) -> Result<Word> {
        self.input.check_word(x)?;
        let mut q = self.initial;
        Ok(x.iter()
            .map(|&a| {
                q = self.delta[q][a];
                self.label[q]
            })
            .collect())
    }

    /// Name-level convenience around [`Transducer::run`].
    pub fn run_names<S: AsRef<str>>(&self, x: &[S]) -> Result<Vec<String>> {
        let word = self.input.word(x)?;
        Ok(self.output.names(&self.run(&word)?))
    }

    pub(crate) fn same_alphabets(&self, other: &Transducer) -> Result<()> {
        if self.input != other.input || self.output != other.output {
            return Err(Error::AlphabetMismatch(format!(
                "transducers over {}/{} and {}/{}",
                self.input, self.output, other.input, other.output
            )));
        }
        Ok(())
    }
}
