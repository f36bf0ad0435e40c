//! Trace DFAs, lifting of input languages to the product alphabet, and the
//! redundant product pair `B₁/B₂`.

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::transducer::Transducer;

/// `Σ_I × Σ_O`, with pairs enumerated lexicographically: `(i, o) ↦ i·|Σ_O| + o`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductAlphabet {
    input: Alphabet,
    output: Alphabet,
    pairs: Alphabet,
}

impl ProductAlphabet {
    pub fn new(input: Alphabet, output: Alphabet) -> Self {
        let names: Vec<String> = input
            .symbols()
            .iter()
            .flat_map(|i| output.symbols().iter().map(move |o| format!("({i},{o})")))
            .collect();
        let pairs = Alphabet::new(names).expect("pair names are distinct");
        ProductAlphabet { input, output, pairs }
    }

    pub fn of(t: &Transducer) -> Self {
        Self::new(t.input().clone(), t.output().clone())
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    /// The product alphabet as a flat alphabet of `(i,o)` names.
    pub fn alphabet(&self) -> &Alphabet {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn pair(&self, i: Symbol, o: Symbol) -> Symbol {
        i * self.output.len() + o
    }

    pub fn split(&self, letter: Symbol) -> (Symbol, Symbol) {
        (letter / self.output.len(), letter % self.output.len())
    }

    /// Zips equal-length words into a product word.
    pub fn zip(&self, x: &[Symbol], y: &[Symbol]) -> Result<Word> {
        if x.len() != y.len() {
            return Err(Error::Input(format!("word lengths differ ({} vs {})", x.len(), y.len())));
        }
        self.input.check_word(x)?;
        self.output.check_word(y)?;
        Ok(x.iter().zip(y).map(|(&i, &o)| self.pair(i, o)).collect())
    }

    pub fn unzip(&self, w: &[Symbol]) -> (Word, Word) {
        w.iter().map(|&l| self.split(l)).unzip()
    }
}

/// `Tr(T)`: a deterministic acceptor over `Σ_I × Σ_O` of `{(x, T(x))}`.
///
/// States are `Q ∪ {q⊥}` with `q⊥` the last state, a rejecting sink; every
/// state of `Q` accepts.
pub fn trace_dfa(t: &Transducer) -> Nfa {
    let pa = ProductAlphabet::of(t);
    let n = t.num_states();
    let sink = n;
    let mut names: Vec<String> = t.state_names().to_vec();
    names.push("⊥".to_string());
    let mut dfa = Nfa::new(pa.alphabet().clone(), names, t.initial()).expect("initial in range");
    for q in 0..n {
        dfa.set_accepting(q, true);
        for i in 0..pa.input().len() {
            let next = t.next(q, i);
            for o in 0..pa.output().len() {
                let to = if t.label(next) == o { next } else { sink };
                dfa.add_transition(q, pa.pair(i, o), to).expect("in range");
            }
        }
    }
    for l in 0..pa.len() {
        dfa.add_transition(sink, l, sink).expect("in range");
    }
    dfa
}

/// Identifies `Λ ⊆ Σ_I*` with `Λ × Σ_O*`, reusing the states of `Λ`.
pub fn lift_lambda(lambda: &Nfa, product: &ProductAlphabet) -> Result<Nfa> {
    let lambda = lambda.reorder_alphabet(product.input())?;
    let mut out = Nfa::new(product.alphabet().clone(), lambda.state_names().to_vec(), lambda.initial())?;
    for q in 0..lambda.num_states() {
        out.set_accepting(q, lambda.is_accepting(q));
        for i in 0..product.input().len() {
            for &t in lambda.successors(q, i) {
                for o in 0..product.output().len() {
                    out.add_transition(q, product.pair(i, o), t)?;
                }
            }
        }
    }
    Ok(out)
}

/// `n` itself when every state moves on every letter, otherwise `n` plus a
/// rejecting dead state. Without this a partial `Λ` would also block the
/// runs `b2` needs on inputs outside `Λ`.
fn completed(n: &Nfa) -> Result<Nfa> {
    if n.is_complete() {
        return Ok(n.clone());
    }
    let dead = n.num_states();
    let mut names = n.state_names().to_vec();
    names.push("dead".into());
    let mut out = Nfa::new(n.alphabet().clone(), names, n.initial())?;
    for q in 0..dead {
        out.set_accepting(q, n.is_accepting(q));
        for a in 0..n.alphabet().len() {
            match n.successors(q, a) {
                [] => out.add_transition(q, a, dead)?,
                succ => {
                    for &t in succ {
                        out.add_transition(q, a, t)?;
                    }
                }
            }
        }
    }
    for a in 0..n.alphabet().len() {
        out.add_transition(dead, a, dead)?;
    }
    Ok(out)
}

/// The product of `D₁ = Tr(T₁) ∩ Λ` and `D₂ = Tr(T₂)` carrying two
/// acceptance conditions: `b1` accepts with `F₁ × Q₂`, `b2` with `Q₁ × F₂`.
///
/// Both automata have bit-identical transitions, so every letter (and every
/// Parikh pair) has the same type in each.
#[derive(Clone, Debug)]
pub struct RedundantProduct {
    product: ProductAlphabet,
    b1: Nfa,
    b2: Nfa,
    components: Vec<(usize, usize)>,
}

impl RedundantProduct {
    pub fn build(t1: &Transducer, t2: &Transducer, lambda: &Nfa) -> Result<Self> {
        t1.same_alphabets(t2)?;
        let product = ProductAlphabet::of(t1);
        let d1 = completed(&trace_dfa(t1).intersection(&lift_lambda(lambda, &product)?)?)?;
        let d2 = trace_dfa(t2);
        let (shape, components) = d1.product_with_pairs(&d2)?;
        let mut b1 = shape.clone();
        let mut b2 = shape;
        for (s, &(p, q)) in components.iter().enumerate() {
            b1.set_accepting(s, d1.is_accepting(p));
            b2.set_accepting(s, d2.is_accepting(q));
        }
        Ok(RedundantProduct { product, b1, b2, components })
    }

    pub fn product(&self) -> &ProductAlphabet {
        &self.product
    }

    pub fn b1(&self) -> &Nfa {
        &self.b1
    }

    pub fn b2(&self) -> &Nfa {
        &self.b2
    }

    /// `(D₁ state, D₂ state)` behind each product state.
    pub fn components(&self) -> &[(usize, usize)] {
        &self.components
    }

    pub fn num_states(&self) -> usize {
        self.b1.num_states()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::two_letter_pair;

    #[test]
    fn trace_accepts_exactly_the_runs() {
        let (t1, t2) = two_letter_pair();
        let pa = ProductAlphabet::of(&t1);
        let tr = trace_dfa(&t1);
        assert!(tr.is_deterministic() && tr.is_complete());
        let x = pa.input().chars("ab").unwrap();
        let ok = pa.zip(&x, &pa.output().chars("01").unwrap()).unwrap();
        let bad = pa.zip(&x, &pa.output().chars("00").unwrap()).unwrap();
        assert!(tr.accepts(&ok).unwrap());
        assert!(!tr.accepts(&bad).unwrap());
        assert!(tr.accepts(&[]).unwrap());
        assert!(trace_dfa(&t2).accepts(&bad).unwrap());
    }

    #[test]
    fn lifted_universal_is_universal() {
        let (t1, _) = two_letter_pair();
        let pa = ProductAlphabet::of(&t1);
        let lifted = lift_lambda(&Nfa::universal(pa.input().clone()), &pa).unwrap();
        for w in [vec![], vec![0, 3, 2], vec![1, 1]] {
            assert!(lifted.accepts(&w).unwrap());
        }
    }

    #[test]
    fn redundant_product_shares_letter_types() {
        let (t1, t2) = two_letter_pair();
        let lambda = Nfa::universal(t1.input().clone());
        let rp = RedundantProduct::build(&t1, &t2, &lambda).unwrap();
        for l in 0..rp.product().len() {
            assert_eq!(rp.b1().letter_type(l).unwrap(), rp.b2().letter_type(l).unwrap());
        }
        let x = rp.product().input().chars("abba").unwrap();
        let w = rp.product().zip(&x, &t1.run(&x).unwrap()).unwrap();
        assert!(rp.b1().accepts(&w).unwrap());
    }

    #[test]
    fn mismatched_alphabets_are_rejected() {
        let (t1, _) = two_letter_pair();
        let other = crate::generators::round_robin(2, 0).unwrap();
        let lambda = Nfa::universal(t1.input().clone());
        assert!(matches!(
            RedundantProduct::build(&t1, &other, &lambda),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn partial_lambda_does_not_restrict_b2() {
        let (t1, t2) = two_letter_pair();
        // Λ = {ε, a}, with no transitions out of the second state
        let mut lambda = Nfa::with_states(t1.input().clone(), 2, 0).unwrap();
        lambda.set_accepting(0, true);
        lambda.set_accepting(1, true);
        lambda.add_transition(0, 0, 1).unwrap();
        let rp = RedundantProduct::build(&t1, &t2, &lambda).unwrap();
        let tr2 = trace_dfa(&t2);
        let pa = rp.product();
        for x in [vec![], vec![0], vec![1, 1], vec![0, 1, 0]] {
            let y2 = t2.run(&x).unwrap();
            let w = pa.zip(&x, &y2).unwrap();
            assert_eq!(rp.b2().accepts(&w).unwrap(), tr2.accepts(&w).unwrap());
            let w1 = pa.zip(&x, &t1.run(&x).unwrap()).unwrap();
            assert_eq!(rp.b1().accepts(&w1).unwrap(), x.len() <= 1 && (x.is_empty() || x[0] == 0));
        }
    }
}
