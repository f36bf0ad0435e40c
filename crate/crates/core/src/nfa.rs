//! Nondeterministic finite acceptors without ε-moves.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{input_err, Error, Result};
use crate::matrix::{StateSet, TypeMatrix};

/// An NFA `⟨Σ, S, s₀, δ, F⟩` with named states.
///
/// States are `0..num_states()`; `δ(q, σ)` is kept as a sorted, deduplicated
/// list of targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    state_names: Vec<String>,
    initial: usize,
    delta: Vec<Vec<Vec<usize>>>,
    accepting: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet, state_names: Vec<String>, initial: usize) -> Result<Self> {
        if initial >= state_names.len() {
            return input_err(format!("initial state {initial} out of range"));
        }
        let n = state_names.len();
        let delta = vec![vec![Vec::new(); alphabet.len()]; n];
        Ok(Nfa { alphabet, state_names, initial, delta, accepting: vec![false; n] })
    }

    /// An NFA with states named `s0, s1, …`.
    pub fn with_states(alphabet: Alphabet, num_states: usize, initial: usize) -> Result<Self> {
        Self::new(alphabet, (0..num_states).map(|i| format!("s{i}")).collect(), initial)
    }

    /// The one-state acceptor of `Σ*`.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut n = Self::with_states(alphabet.clone(), 1, 0).expect("one state");
        for a in 0..alphabet.len() {
            n.add_transition(0, a, 0).expect("in range");
        }
        n.set_accepting(0, true);
        n
    }

    /// The one-state acceptor of the empty language.
    pub fn empty_language(alphabet: Alphabet) -> Self {
        Self::with_states(alphabet, 1, 0).expect("one state")
    }

    pub fn add_transition(&mut self, from: usize, sym: Symbol, to: usize) -> Result<()> {
        let n = self.num_states();
        if from >= n || to >= n {
            return input_err(format!("transition endpoint out of range ({from} -> {to}, {n} states)"));
        }
        if sym >= self.alphabet.len() {
            return input_err(format!("symbol index {sym} outside alphabet"));
        }
        let targets = &mut self.delta[from][sym];
        if let Err(pos) = targets.binary_search(&to) {
            targets.insert(pos, to);
        }
        Ok(())
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.state_names[s]
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.state_names.iter().position(|s| s == name)
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&s| self.accepting[s])
    }

    pub fn accepting_set(&self) -> StateSet {
        StateSet::from_states(self.num_states(), self.accepting_states())
    }

    pub fn successors(&self, state: usize, sym: Symbol) -> &[usize] {
        &self.delta[state][sym]
    }

    /// Number of `(state, symbol, state)` triples.
    pub fn num_transitions(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    /// Largest `|δ(q, σ)|`.
    pub fn max_degree(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_deterministic(&self) -> bool {
        self.max_degree() <= 1
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().flatten().all(|t| !t.is_empty())
    }

    fn check_symbol(&self, sym: Symbol) -> Result<()> {
        if sym < self.alphabet.len() {
            Ok(())
        } else {
            input_err(format!("symbol index {sym} outside alphabet of size {}", self.alphabet.len()))
        }
    }

    /// `τ(σ)`: entry `(q, q')` is set iff `q' ∈ δ(q, σ)`.
    pub fn letter_type(&self, sym: Symbol) -> Result<TypeMatrix> {
        self.check_symbol(sym)?;
        let mut m = TypeMatrix::zero(self.num_states());
        for q in 0..self.num_states() {
            for &t in &self.delta[q][sym] {
                m.set(q, t, true);
            }
        }
        Ok(m)
    }

    /// Letter types for the whole alphabet, in alphabet order.
    pub fn letter_types(&self) -> Vec<TypeMatrix> {
        (0..self.alphabet.len())
            .map(|a| self.letter_type(a).expect("in range"))
            .collect()
    }

    /// `τ(w)`, the left-to-right Boolean product of the letter types.
    pub fn word_type(&self, word: &[Symbol]) -> Result<TypeMatrix> {
        self.alphabet.check_word(word)?;
        let mut acc = TypeMatrix::identity(self.num_states());
        for &a in word {
            acc = acc.mul(&self.letter_type(a)?);
        }
        Ok(acc)
    }

    /// States reachable from `from` by reading `word`.
    pub fn run_set(&self, from: &StateSet, word: &[Symbol]) -> Result<StateSet> {
        self.alphabet.check_word(word)?;
        let mut cur = from.clone();
        for &a in word {
            let mut next = StateSet::empty(self.num_states());
            for q in cur.iter() {
                for &t in &self.delta[q][a] {
                    next.insert(t);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Membership: some run on `word` ends in an accepting state.
    pub fn accepts(&self, word: &[Symbol]) -> Result<bool> {
        let start = StateSet::singleton(self.num_states(), self.initial);
        let end = self.run_set(&start, word)?;
        Ok(end.intersects(&self.accepting_set()))
    }

    /// Product automaton restricted to states reachable from the initial pair.
    pub fn intersection(&self, other: &Nfa) -> Result<Nfa> {
        let (mut out, pairs) = self.product_with_pairs(other)?;
        for (id, &(p, q)) in pairs.iter().enumerate() {
            out.set_accepting(id, self.accepting[p] && other.accepting[q]);
        }
        Ok(out)
    }

    /// Reachable synchronous product with no accepting states, together with
    /// the component pair behind every product state. State 0 is the initial
    /// pair.
    pub fn product_with_pairs(&self, other: &Nfa) -> Result<(Nfa, Vec<(usize, usize)>)> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "product of NFAs over {} and {}",
                self.alphabet, other.alphabet
            )));
        }
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        ids.insert((self.initial, other.initial), 0);
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let (p, q) = pairs[id];
            for a in 0..self.alphabet.len() {
                for &p2 in &self.delta[p][a] {
                    for &q2 in &other.delta[q][a] {
                        let next = *ids.entry((p2, q2)).or_insert_with(|| {
                            pairs.push((p2, q2));
                            queue.push_back(pairs.len() - 1);
                            pairs.len() - 1
                        });
                        edges.push((id, a, next));
                    }
                }
            }
        }
        let names = pairs
            .iter()
            .map(|&(p, q)| format!("({},{})", self.state_names[p], other.state_names[q]))
            .collect();
        let mut out = Nfa::new(self.alphabet.clone(), names, 0)?;
        for (from, a, to) in edges {
            out.add_transition(from, a, to)?;
        }
        Ok((out, pairs))
    }

    /// The same automaton over `target`, which must hold exactly the same
    /// symbol names (possibly in a different order).
    pub fn reorder_alphabet(&self, target: &Alphabet) -> Result<Nfa> {
        if target == &self.alphabet {
            return Ok(self.clone());
        }
        if target.len() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch(format!("{} vs {}", self.alphabet, target)));
        }
        let mut map = Vec::with_capacity(self.alphabet.len());
        for name in self.alphabet.symbols() {
            match target.index_of(name) {
                Some(i) => map.push(i),
                None => {
                    return Err(Error::AlphabetMismatch(format!(
                        "symbol {name:?} missing from {target}"
                    )))
                }
            }
        }
        let mut out = Nfa::new(target.clone(), self.state_names.clone(), self.initial)?;
        for q in 0..self.num_states() {
            for (a, targets) in self.delta[q].iter().enumerate() {
                for &t in targets {
                    out.add_transition(q, map[a], t)?;
                }
            }
            out.set_accepting(q, self.accepting[q]);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// Accepts words over {a,b} ending in `ab`.
    fn ends_in_ab() -> Nfa {
        let mut n = Nfa::with_states(ab(), 3, 0).unwrap();
        n.add_transition(0, 0, 0).unwrap();
        n.add_transition(0, 1, 0).unwrap();
        n.add_transition(0, 0, 1).unwrap();
        n.add_transition(1, 1, 2).unwrap();
        n.set_accepting(2, true);
        n
    }

    #[test]
    fn letter_type_of_missing_letter_is_zero() {
        let mut n = Nfa::with_states(ab(), 2, 0).unwrap();
        n.add_transition(0, 0, 1).unwrap();
        assert!(n.letter_type(1).unwrap().is_zero());
        assert!(n.letter_type(2).is_err());
    }

    #[test]
    fn deterministic_complete_rows_have_one_bit() {
        let mut n = Nfa::with_states(ab(), 3, 0).unwrap();
        for q in 0..3 {
            n.add_transition(q, 0, (q + 1) % 3).unwrap();
            n.add_transition(q, 1, q).unwrap();
        }
        for a in 0..2 {
            let m = n.letter_type(a).unwrap();
            for q in 0..3 {
                assert_eq!(m.row_ones(q).count(), 1);
            }
        }
    }

    #[test]
    fn empty_word_has_identity_type() {
        let n = ends_in_ab();
        assert_eq!(n.word_type(&[]).unwrap(), TypeMatrix::identity(3));
        assert_eq!(n.word_type(&[1]).unwrap(), n.letter_type(1).unwrap());
    }

    #[test]
    fn membership() {
        let n = ends_in_ab();
        let a = ab();
        assert!(n.accepts(&a.chars("bab").unwrap()).unwrap());
        assert!(!n.accepts(&a.chars("ba").unwrap()).unwrap());
        assert!(!n.accepts(&[]).unwrap());
        assert!(Nfa::universal(a.clone()).accepts(&[]).unwrap());
        assert!(n.accepts(&[5]).is_err());
    }

    #[test]
    fn intersection_with_universal_and_empty() {
        let n = ends_in_ab();
        let u = n.intersection(&Nfa::universal(ab())).unwrap();
        let e = n.intersection(&Nfa::empty_language(ab())).unwrap();
        for w in ["", "ab", "aab", "ba", "abab", "bb"] {
            let w = ab().chars(w).unwrap();
            assert_eq!(u.accepts(&w).unwrap(), n.accepts(&w).unwrap());
            assert!(!e.accepts(&w).unwrap());
        }
        let other = Nfa::universal(Alphabet::new(["a", "c"]).unwrap());
        assert!(matches!(n.intersection(&other), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn reorder_alphabet_preserves_language() {
        let n = ends_in_ab();
        let ba = Alphabet::new(["b", "a"]).unwrap();
        let r = n.reorder_alphabet(&ba).unwrap();
        assert!(r.accepts(&ba.chars("bab").unwrap()).unwrap());
        assert!(!r.accepts(&ba.chars("ba").unwrap()).unwrap());
    }
}
