//! Permutation closure over the quotient alphabet of Parikh pairs.
//!
//! A round `(α, β) ∈ Σ_I^k × Σ_O^k` is identified with its Parikh pair
//! `(𝔓(α), 𝔓(β))`. The type of a pair is the OR of the types of all words
//! with that Parikh image; it is computed by dynamic programming over
//! sub-pairs, peeling the last letter.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{input_err, Error, Result};
use crate::matrix::{StateSet, TypeMatrix};
use crate::nfa::Nfa;
use crate::trace::ProductAlphabet;
use crate::words::{parikh_unchecked, ParikhVector, RoundSpec};

/// A quotient letter: input and output Parikh vectors of equal norm.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ParikhPair {
    pub input: ParikhVector,
    pub output: ParikhVector,
}

impl ParikhPair {
    pub fn new(input: ParikhVector, output: ParikhVector) -> Result<Self> {
        if input.norm() != output.norm() {
            return input_err(format!(
                "Parikh vectors of different norms ({} vs {})",
                input.norm(),
                output.norm()
            ));
        }
        Ok(ParikhPair { input, output })
    }

    /// The Parikh pair of one round `(α, β)`.
    pub fn of_round(alpha: &[Symbol], beta: &[Symbol], product: &ProductAlphabet) -> Result<Self> {
        product.input().check_word(alpha)?;
        product.output().check_word(beta)?;
        Self::new(
            parikh_unchecked(alpha, product.input().len()),
            parikh_unchecked(beta, product.output().len()),
        )
    }

    pub fn norm(&self) -> usize {
        self.input.norm()
    }

    pub fn render(&self, product: &ProductAlphabet) -> String {
        format!("{}/{}", self.input.render(product.input()), self.output.render(product.output()))
    }

    fn key(&self) -> Vec<u32> {
        let mut key = self.input.counts().to_vec();
        key.extend_from_slice(self.output.counts());
        key
    }
}

/// All vectors of `parts` non-negative counts summing to `n`, starting with
/// `(n, 0, …, 0)` and descending lexicographically.
pub fn compositions(n: usize, parts: usize) -> Vec<ParikhVector> {
    fn go(n: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<ParikhVector>) {
        if parts == 1 {
            prefix.push(n);
            out.push(ParikhVector::from_counts(prefix.clone()));
            prefix.pop();
            return;
        }
        for c in (0..=n).rev() {
            prefix.push(c);
            go(n - c, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(n as u32, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

fn binomial(n: u128, r: u128) -> u128 {
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `C(k+|Σ_I|−1, |Σ_I|−1) · C(k+|Σ_O|−1, |Σ_O|−1)`.
pub fn parikh_pair_count(inputs: usize, outputs: usize, k: RoundSpec) -> u128 {
    let k = k.get() as u128;
    let c = |n: usize| binomial(k + n as u128 - 1, n as u128 - 1);
    c(inputs).saturating_mul(c(outputs))
}

/// Every Parikh pair of norm `k`, in a fixed order: input compositions
/// outermost, output compositions innermost.
pub fn enumerate_parikh_pairs(sigma_i: &Alphabet, sigma_o: &Alphabet, k: RoundSpec) -> Vec<ParikhPair> {
    let outs = compositions(k.get(), sigma_o.len());
    compositions(k.get(), sigma_i.len())
        .into_iter()
        .flat_map(|p| {
            outs.iter()
                .map(move |o| ParikhPair { input: p.clone(), output: o.clone() })
        })
        .collect()
}

/// Memo table for `τ(p, o)` over one base automaton, shared by all round
/// lengths.
#[derive(Debug)]
pub struct ParikhTypeTable {
    dim: usize,
    inputs: usize,
    outputs: usize,
    letters: Vec<TypeMatrix>,
    memo: HashMap<Vec<u32>, TypeMatrix>,
}

impl ParikhTypeTable {
    pub fn new(base: &Nfa, product: &ProductAlphabet) -> Result<Self> {
        if base.alphabet() != product.alphabet() {
            return Err(Error::AlphabetMismatch(format!(
                "automaton over {} is not over {}",
                base.alphabet(),
                product.alphabet()
            )));
        }
        Ok(ParikhTypeTable {
            dim: base.num_states(),
            inputs: product.input().len(),
            outputs: product.output().len(),
            letters: base.letter_types(),
            memo: HashMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of memoized sub-pairs.
    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    fn check(&self, pair: &ParikhPair) -> Result<()> {
        if pair.input.dimension() != self.inputs || pair.output.dimension() != self.outputs {
            return input_err("Parikh pair over different alphabets");
        }
        if pair.input.norm() != pair.output.norm() {
            return input_err("Parikh vectors of different norms");
        }
        Ok(())
    }

    /// `τ(p, o)`: entry `(s, s')` is set iff some `(α, β)` with
    /// `𝔓(α) = p`, `𝔓(β) = o` leads from `s` to `s'`.
    pub fn type_of(&mut self, pair: &ParikhPair) -> Result<TypeMatrix> {
        self.check(pair)?;
        Ok(self.lookup(pair.key()))
    }

    fn lookup(&mut self, key: Vec<u32>) -> TypeMatrix {
        if let Some(m) = self.memo.get(&key) {
            return m.clone();
        }
        let (p, o) = key.split_at(self.inputs);
        let m = if p.iter().all(|&c| c == 0) {
            TypeMatrix::identity(self.dim)
        } else {
            let mut acc = TypeMatrix::zero(self.dim);
            for a in (0..self.inputs).filter(|&a| p[a] > 0) {
                for b in (0..self.outputs).filter(|&b| o[b] > 0) {
                    let mut sub = key.clone();
                    sub[a] -= 1;
                    sub[self.inputs + b] -= 1;
                    let prefix = self.lookup(sub);
                    prefix.mul_into(&self.letters[a * self.outputs + b], &mut acc);
                }
            }
            acc
        };
        self.memo.insert(key, m.clone());
        m
    }

    /// A product word with Parikh image `pair` leading from `from` to `to`.
    pub fn witness(&mut self, pair: &ParikhPair, from: usize, to: usize) -> Result<Option<Word>> {
        self.check(pair)?;
        let mut key = pair.key();
        if !self.lookup(key.clone()).get(from, to) {
            return Ok(None);
        }
        let mut word = Vec::with_capacity(pair.norm());
        let mut target = to;
        while key[..self.inputs].iter().any(|&c| c > 0) {
            let (a, b, u, sub) = self.last_step(&key, from, target).expect("set entry has a predecessor");
            word.push(a * self.outputs + b);
            target = u;
            key = sub;
        }
        debug_assert_eq!(target, from);
        word.reverse();
        Ok(Some(word))
    }

    fn last_step(&mut self, key: &[u32], from: usize, to: usize) -> Option<(Symbol, Symbol, usize, Vec<u32>)> {
        let (inputs, outputs) = (self.inputs, self.outputs);
        for a in (0..inputs).filter(|&a| key[a] > 0) {
            for b in (0..outputs).filter(|&b| key[inputs + b] > 0) {
                let mut sub = key.to_vec();
                sub[a] -= 1;
                sub[inputs + b] -= 1;
                let prefix = self.lookup(sub.clone());
                let letter = &self.letters[a * outputs + b];
                let found = prefix.row_ones(from).find(|&u| letter.get(u, to));
                if let Some(u) = found {
                    return Some((a, b, u, sub));
                }
            }
        }
        None
    }
}

/// `τ_N(p, o)` computed with a fresh table.
pub fn type_of_parikh(n: &Nfa, product: &ProductAlphabet, p: &ParikhVector, o: &ParikhVector) -> Result<TypeMatrix> {
    let pair = ParikhPair::new(p.clone(), o.clone())?;
    ParikhTypeTable::new(n, product)?.type_of(&pair)
}

/// `Perm_k(N)` over the quotient alphabet of Parikh pairs of norm `k`.
///
/// The type table lives behind an `Arc<Mutex<_>>` so that automata with
/// identical transitions (and the same automaton at other round lengths)
/// can share it.
#[derive(Clone, Debug)]
pub struct PermClosureAutomaton {
    base: Nfa,
    product: ProductAlphabet,
    k: RoundSpec,
    table: Arc<Mutex<ParikhTypeTable>>,
}

impl PermClosureAutomaton {
    pub fn new(base: &Nfa, product: &ProductAlphabet, k: RoundSpec) -> Result<Self> {
        let table = ParikhTypeTable::new(base, product)?;
        Ok(PermClosureAutomaton {
            base: base.clone(),
            product: product.clone(),
            k,
            table: Arc::new(Mutex::new(table)),
        })
    }

    /// A closure of `base`, which must have exactly the transitions of
    /// `self`'s base, sharing `self`'s type table.
    pub fn sharing_types(&self, base: &Nfa) -> Result<Self> {
        if base.alphabet() != self.base.alphabet() || base.letter_types() != self.base.letter_types() {
            return input_err("cannot share types between automata with different transitions");
        }
        Ok(PermClosureAutomaton { base: base.clone(), ..self.clone() })
    }

    /// The same automaton at another round length, sharing the type table.
    pub fn at_round(&self, k: RoundSpec) -> Self {
        PermClosureAutomaton { k, ..self.clone() }
    }

    pub fn base(&self) -> &Nfa {
        &self.base
    }

    pub fn product(&self) -> &ProductAlphabet {
        &self.product
    }

    pub fn k(&self) -> RoundSpec {
        self.k
    }

    pub(crate) fn shares_table(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table)
    }

    pub fn quotient_size(&self) -> u128 {
        parikh_pair_count(self.product.input().len(), self.product.output().len(), self.k)
    }

    pub fn quotient_alphabet(&self) -> Vec<ParikhPair> {
        enumerate_parikh_pairs(self.product.input(), self.product.output(), self.k)
    }

    /// `μ` on the quotient letter `pair`, as a type matrix.
    pub fn transition_type(&self, pair: &ParikhPair) -> Result<TypeMatrix> {
        if pair.norm() != self.k.get() {
            return input_err(format!("quotient letter of norm {} at k={}", pair.norm(), self.k));
        }
        self.table.lock().expect("type table poisoned").type_of(pair)
    }

    pub fn witness(&self, pair: &ParikhPair, from: usize, to: usize) -> Result<Option<Word>> {
        self.table.lock().expect("type table poisoned").witness(pair, from, to)
    }

    /// Membership of `(x, y)`: both k-round words of the same length and
    /// some per-round rearrangement lies in `L(base)`.
    pub fn accepts(&self, x: &[Symbol], y: &[Symbol]) -> Result<bool> {
        let k = self.k.get();
        if x.len() != y.len() || !x.len().is_multiple_of(k) {
            return Ok(false);
        }
        let mut cur = StateSet::singleton(self.base.num_states(), self.base.initial());
        for (alpha, beta) in x.chunks(k).zip(y.chunks(k)) {
            let pair = ParikhPair::of_round(alpha, beta, &self.product)?;
            cur = cur.image(&self.transition_type(&pair)?);
        }
        Ok(cur.intersects(&self.base.accepting_set()))
    }

    /// `Υ(base, k)`.
    pub fn profile(&self) -> TypeProfile {
        let mut table = self.table.lock().expect("type table poisoned");
        let matrices = self
            .quotient_alphabet()
            .iter()
            .map(|pair| table.type_of(pair).expect("pair from own alphabet"))
            .collect();
        TypeProfile { matrices }
    }
}

/// `Perm_k(N)`.
pub fn perm_closure(n: &Nfa, product: &ProductAlphabet, k: RoundSpec) -> Result<PermClosureAutomaton> {
    PermClosureAutomaton::new(n, product, k)
}

/// The set of types of all Parikh pairs of one norm.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TypeProfile {
    matrices: BTreeSet<TypeMatrix>,
}

impl TypeProfile {
    pub fn from_matrices(matrices: impl IntoIterator<Item = TypeMatrix>) -> Self {
        TypeProfile { matrices: matrices.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn contains(&self, m: &TypeMatrix) -> bool {
        self.matrices.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &TypeMatrix> {
        self.matrices.iter()
    }

    /// SHA-256 over the sorted canonical matrix bytes.
    pub fn fingerprint(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update((self.matrices.len() as u64).to_le_bytes());
        for m in &self.matrices {
            let bytes = m.to_bytes();
            h.update((bytes.len() as u64).to_le_bytes());
            h.update(&bytes);
        }
        h.finalize().into()
    }

    pub fn fingerprint_hex(&self) -> String {
        self.fingerprint().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// One hex-serialized matrix per line.
    pub fn dump_hex(&self) -> String {
        self.matrices.iter().map(|m| m.to_hex() + "\n").collect()
    }
}

impl fmt::Display for TypeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} types, fingerprint {}", self.len(), &self.fingerprint_hex()[..16])
    }
}

/// `Υ(b, k)` computed with a fresh table.
pub fn type_profile(b: &Nfa, product: &ProductAlphabet, k: RoundSpec) -> Result<TypeProfile> {
    Ok(PermClosureAutomaton::new(b, product, k)?.profile())
}
