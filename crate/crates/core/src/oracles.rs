//! Brute-force reference implementations, written directly from the
//! definitions and sharing no code with the matrix and containment kernels.

use std::collections::{BTreeSet, VecDeque};

use crate::alphabet::{Symbol, Word};
use crate::error::{input_err, Error, Result};
use crate::nfa::Nfa;
use crate::trace::ProductAlphabet;
use crate::transducer::Transducer;

/// Limits for the enumerating oracles. Exceeding any of them is reported as
/// [`Error::Resource`], never as a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_rounds: usize,
    pub max_word_length: usize,
    pub max_enumerations: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_rounds: 2, max_word_length: 12, max_enumerations: 5_000_000 }
    }
}

impl OracleBudget {
    pub fn rounds(max_rounds: usize) -> Self {
        OracleBudget { max_rounds, ..Self::default() }
    }
}

struct Meter {
    used: usize,
    limit: usize,
}

impl Meter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::Resource(format!("oracle enumeration budget of {} exhausted", self.limit)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub holds: bool,
    /// An input with no matching rearrangement, when `holds` is false.
    pub witness: Option<Word>,
    pub inputs_checked: usize,
}

/// Distinct rearrangements of `block`, in lexicographic order.
pub fn multiset_permutations(block: &[Symbol]) -> Vec<Word> {
    let mut cur = block.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot has a successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Every word obtained by rearranging each k-block of `w` independently.
fn round_rearrangements(w: &[Symbol], k: usize, meter: &mut Meter) -> Result<Vec<Word>> {
    let mut words = vec![Vec::with_capacity(w.len())];
    for block in w.chunks(k) {
        let perms = multiset_permutations(block);
        let mut next = Vec::with_capacity(words.len() * perms.len());
        for prefix in &words {
            for p in &perms {
                meter.tick()?;
                let mut v = prefix.clone();
                v.extend_from_slice(p);
                next.push(v);
            }
        }
        words = next;
    }
    Ok(words)
}

fn sorted_rounds(w: &[Symbol], k: usize) -> Vec<Word> {
    w.chunks(k)
        .map(|c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c
        })
        .collect()
}

/// All words of length `len` over `n` letters.
fn all_words(n: usize, len: usize, meter: &mut Meter) -> Result<Vec<Word>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(words.len() * n);
        for w in &words {
            for a in 0..n {
                meter.tick()?;
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        words = next;
    }
    Ok(words)
}

/// `T₁ ≺_{k,Λ} T₂` restricted to inputs of at most `max_rounds` rounds,
/// checked literally: for each k-round `x ∈ Λ`, some `x' ≈_k x` has
/// `T₁(x) ≈_k T₂(x')`.
pub fn oracle_fixed_simulation(
    t1: &Transducer,
    t2: &Transducer,
    lambda: &Nfa,
    k: usize,
    budget: &OracleBudget,
) -> Result<OracleVerdict> {
    if k == 0 {
        return input_err("round length must be at least 1");
    }
    if t1.input() != t2.input() || t1.output() != t2.output() || lambda.alphabet() != t1.input() {
        return Err(Error::AlphabetMismatch("oracle inputs over different alphabets".into()));
    }
    if k * budget.max_rounds > budget.max_word_length {
        return Err(Error::Resource(format!(
            "{} rounds of length {k} exceed the word length budget {}",
            budget.max_rounds, budget.max_word_length
        )));
    }
    let mut meter = Meter { used: 0, limit: budget.max_enumerations };
    let mut checked = 0;
    for rounds in 0..=budget.max_rounds {
        for x in all_words(t1.input().len(), k * rounds, &mut meter)? {
            if !lambda.accepts(&x)? {
                continue;
            }
            checked += 1;
            let target = sorted_rounds(&t1.run(&x)?, k);
            let mut matched = false;
            for x2 in round_rearrangements(&x, k, &mut meter)? {
                if sorted_rounds(&t2.run(&x2)?, k) == target {
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Ok(OracleVerdict { holds: false, witness: Some(x), inputs_checked: checked });
            }
        }
    }
    Ok(OracleVerdict { holds: true, witness: None, inputs_checked: checked })
}

/// Membership of `(x, y)` in the permutation closure of `n`: some
/// `x' ≈_k x`, `y' ≈_k y` with `(x', y') ∈ L(n)`.
pub fn oracle_perm_membership(
    n: &Nfa,
    product: &ProductAlphabet,
    k: usize,
    x: &[Symbol],
    y: &[Symbol],
    budget: &OracleBudget,
) -> Result<bool> {
    if k == 0 {
        return input_err("round length must be at least 1");
    }
    if x.len() != y.len() || !x.len().is_multiple_of(k) {
        return Ok(false);
    }
    if x.len() > budget.max_word_length {
        return Err(Error::Resource(format!("word of length {} exceeds the budget", x.len())));
    }
    let mut meter = Meter { used: 0, limit: budget.max_enumerations };
    let xs = round_rearrangements(x, k, &mut meter)?;
    let ys = round_rearrangements(y, k, &mut meter)?;
    for x2 in &xs {
        for y2 in &ys {
            meter.tick()?;
            if n.accepts(&product.zip(x2, y2)?)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Exact universality by subset construction: `L(n) = Σ*` iff no reachable
/// subset (including the empty one) misses every accepting state.
/// `cutoff` bounds the number of subsets visited.
pub fn oracle_nfa_universality(n: &Nfa, cutoff: usize) -> Result<bool> {
    let start: Vec<usize> = vec![n.initial()];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(set) = queue.pop_front() {
        if !set.iter().any(|&q| n.is_accepting(q)) {
            return Ok(false);
        }
        for a in 0..n.alphabet().len() {
            let next: BTreeSet<usize> = set.iter().flat_map(|&q| n.successors(q, a).iter().copied()).collect();
            let next: Vec<usize> = next.into_iter().collect();
            if seen.insert(next.clone()) {
                if seen.len() > cutoff {
                    return Err(Error::Resource(format!("more than {cutoff} subsets")));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(true)
}
