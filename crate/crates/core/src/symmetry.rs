//! Round symmetry of `2^P/2^P` transducers under renaming of processes.

use std::fmt;
use std::thread;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{input_err, Error, Result};
use crate::existential::{common_round_length, existential_search, CommonRound, ExistentialOptions, ExistentialVerdict, Outcome};
use crate::nfa::Nfa;
use crate::simulation::{fixed_round_simulates_with, CheckOptions, SimulationVerdict};
use crate::transducer::Transducer;
use crate::words::RoundSpec;

/// Largest process count accepted by the command line without an override.
pub const DEFAULT_MAX_PROCESSES: usize = 6;

/// The powerset `2^P` of a list of process labels, with one symbol per
/// subset named like `{}` or `{0,2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessAlphabet {
    labels: Vec<String>,
    alphabet: Alphabet,
    mask_of: Vec<u32>,
    symbol_of: Vec<Symbol>,
}

fn set_name(labels: &[String], mask: u32) -> String {
    let parts: Vec<&str> = (0..labels.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| labels[i].as_str())
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn split_set(name: &str) -> Result<Vec<&str>> {
    let inner = name
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::Input(format!("{name:?} is not a set symbol")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(str::trim).collect())
}

impl ProcessAlphabet {
    /// Symbols ordered by bitmask: label `i` is bit `i`.
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        if labels.is_empty() || labels.len() > 16 {
            return input_err(format!("process count {} outside 1..=16", labels.len()));
        }
        if let Some(bad) = labels.iter().find(|l| l.is_empty() || l.contains([',', '{', '}'])) {
            return input_err(format!("invalid process label {bad:?}"));
        }
        let n = 1u32 << labels.len();
        let names: Vec<String> = (0..n).map(|mask| set_name(&labels, mask)).collect();
        let alphabet = Alphabet::new(names)?;
        Ok(ProcessAlphabet {
            labels,
            alphabet,
            mask_of: (0..n).collect(),
            symbol_of: (0..n as usize).collect(),
        })
    }

    /// Processes labelled `first, first+1, …, first+m−1`.
    pub fn numbered(m: usize, first: usize) -> Result<Self> {
        let labels: Vec<String> = (first..first + m).map(|i| i.to_string()).collect();
        Self::new(&labels)
    }

    /// Recognizes an existing alphabet as a full powerset. Labels are
    /// ordered by the position of their singleton symbols.
    pub fn from_alphabet(alphabet: &Alphabet) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        for name in alphabet.symbols() {
            if let [one] = split_set(name)?.as_slice() {
                if !labels.iter().any(|l| l == one) {
                    labels.push(one.to_string());
                }
            }
        }
        if labels.is_empty() || labels.len() > 16 || alphabet.len() != 1 << labels.len() {
            return input_err(format!("{alphabet} is not a full powerset alphabet"));
        }
        let mut mask_of = Vec::with_capacity(alphabet.len());
        let mut symbol_of = vec![usize::MAX; alphabet.len()];
        for (sym, name) in alphabet.symbols().iter().enumerate() {
            let mut mask = 0u32;
            for part in split_set(name)? {
                let i = labels
                    .iter()
                    .position(|l| l == part)
                    .ok_or_else(|| Error::Input(format!("{name:?} mentions unknown process {part:?}")))?;
                mask |= 1 << i;
            }
            if symbol_of[mask as usize] != usize::MAX {
                return input_err(format!("{name:?} repeats a subset"));
            }
            symbol_of[mask as usize] = sym;
            mask_of.push(mask);
        }
        Ok(ProcessAlphabet { labels, alphabet: alphabet.clone(), mask_of, symbol_of })
    }

    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn mask(&self, sym: Symbol) -> u32 {
        self.mask_of[sym]
    }

    pub fn symbol(&self, mask: u32) -> Symbol {
        self.symbol_of[mask as usize]
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Accepts set symbols with members in any order, such as `{3,2}`.
    pub fn parse_symbol(&self, name: &str) -> Result<Symbol> {
        if let Some(s) = self.alphabet.index_of(name) {
            return Ok(s);
        }
        let mut mask = 0u32;
        for part in split_set(name)? {
            let i = self
                .label_index(part)
                .ok_or_else(|| Error::Input(format!("unknown process {part:?} in {name:?}")))?;
            mask |= 1 << i;
        }
        Ok(self.symbol(mask))
    }

    /// Parses a concatenation of set symbols such as `{1,2}{3}{}`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let end = rest
                .find('}')
                .ok_or_else(|| Error::Input(format!("unterminated set in {text:?}")))?;
            out.push(self.parse_symbol(&rest[..=end])?);
            rest = rest[end + 1..].trim_start();
        }
        Ok(out)
    }
}

/// A bijection on process positions `0..m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    map: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut inverse = vec![usize::MAX; map.len()];
        for (i, &j) in map.iter().enumerate() {
            if j >= map.len() || inverse[j] != usize::MAX {
                return input_err(format!("{map:?} is not a permutation"));
            }
            inverse[j] = i;
        }
        Ok(Permutation { map, inverse })
    }

    pub fn identity(m: usize) -> Self {
        Self::new((0..m).collect()).expect("identity is a bijection")
    }

    pub fn transposition(m: usize, i: usize, j: usize) -> Result<Self> {
        if i >= m || j >= m {
            return input_err(format!("transposition ({i} {j}) outside {m} processes"));
        }
        let mut map: Vec<usize> = (0..m).collect();
        map.swap(i, j);
        Self::new(map)
    }

    /// `i ↦ i+1 mod m`.
    pub fn cycle(m: usize) -> Self {
        Self::new((0..m).map(|i| (i + 1) % m).collect()).expect("cycle is a bijection")
    }

    pub fn m(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        Permutation { map: self.inverse.clone(), inverse: self.map.clone() }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.m() != other.m() {
            return input_err("composing permutations of different sizes");
        }
        Self::new(other.map.iter().map(|&i| self.map[i]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The image of a subset given as a bitmask.
    pub fn apply_mask(&self, mask: u32) -> u32 {
        (0..self.m())
            .filter(|&i| mask >> i & 1 == 1)
            .fold(0, |acc, i| acc | 1 << self.map[i])
    }

    /// Parses cycle notation `(1 2)(3)` or a mapping `2,1,3` listing the
    /// image of each label in order.
    pub fn parse(text: &str, labels: &[String]) -> Result<Self> {
        let text = text.trim();
        let index = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::Input(format!("unknown process {s:?}")))
        };
        if !text.starts_with('(') {
            let images: Vec<usize> = text.split(',').map(|s| index(s.trim())).collect::<Result<_>>()?;
            if images.len() != labels.len() {
                return input_err(format!("mapping lists {} images for {} processes", images.len(), labels.len()));
            }
            return Self::new(images);
        }
        let mut map: Vec<usize> = (0..labels.len()).collect();
        let mut touched = vec![false; labels.len()];
        for chunk in text.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::Input(format!("malformed cycle notation {text:?}")))?;
            let members: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(index)
                .collect::<Result<_>>()?;
            for (pos, &i) in members.iter().enumerate() {
                if std::mem::replace(&mut touched[i], true) {
                    return input_err(format!("process {} appears twice in {text:?}", labels[i]));
                }
                map[i] = members[(pos + 1) % members.len()];
            }
        }
        Self::new(map)
    }

    /// Cycle notation over `labels`, omitting fixed points.
    pub fn to_cycles(&self, labels: &[String]) -> String {
        let mut seen = vec![false; self.m()];
        let mut out = String::new();
        for start in 0..self.m() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(labels[i].as_str());
                i = self.map[i];
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.m()).map(|i| i.to_string()).collect();
        f.write_str(&self.to_cycles(&labels))
    }
}

fn check_size(pi: &Permutation, pa: &ProcessAlphabet) -> Result<()> {
    if pi.m() != pa.m() {
        return input_err(format!("permutation of {} processes on an alphabet of {}", pi.m(), pa.m()));
    }
    Ok(())
}

/// The letter-wise image `π(w)`.
pub fn apply_permutation(pi: &Permutation, pa: &ProcessAlphabet, w: &[Symbol]) -> Result<Word> {
    check_size(pi, pa)?;
    pa.alphabet().check_word(w)?;
    Ok(w.iter().map(|&s| pa.symbol(pi.apply_mask(pa.mask(s)))).collect())
}

/// `T^π`: `δ^π(q, σ) = δ(q, π⁻¹(σ))` and `ℓ^π(q) = π(ℓ(q))`.
pub fn permute_transducer(t: &Transducer, pi: &Permutation) -> Result<Transducer> {
    let pin = ProcessAlphabet::from_alphabet(t.input())?;
    let pout = ProcessAlphabet::from_alphabet(t.output())?;
    if pin.labels() != pout.labels() {
        return input_err("input and output alphabets name different processes");
    }
    check_size(pi, &pin)?;
    let inv = pi.inverse();
    let delta = (0..t.num_states())
        .map(|q| {
            (0..pin.alphabet().len())
                .map(|s| t.next(q, pin.symbol(inv.apply_mask(pin.mask(s)))))
                .collect()
        })
        .collect();
    let label = (0..t.num_states())
        .map(|q| pout.symbol(pi.apply_mask(pout.mask(t.label(q)))))
        .collect();
    Transducer::new(
        t.input().clone(),
        t.output().clone(),
        t.state_names().to_vec(),
        t.initial(),
        delta,
        label,
    )
}

/// `T^π ≺_k T` over unrestricted inputs.
pub fn is_round_symmetric_wrt(t: &Transducer, pi: &Permutation, k: RoundSpec, opts: &CheckOptions) -> Result<SimulationVerdict> {
    let tp = permute_transducer(t, pi)?;
    fixed_round_simulates_with(&tp, t, &Nfa::universal(t.input().clone()), k, opts)
}

/// The transposition of the first two processes and the full cycle.
pub fn generators(m: usize) -> Result<[Permutation; 2]> {
    if m < 2 {
        return input_err("symmetry needs at least two processes");
    }
    Ok([Permutation::transposition(m, 0, 1)?, Permutation::cycle(m)])
}

fn process_count(t: &Transducer) -> Result<usize> {
    Ok(ProcessAlphabet::from_alphabet(t.input())?.m())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryVerdict {
    pub k: RoundSpec,
    pub generators: Vec<(Permutation, SimulationVerdict)>,
}

impl SymmetryVerdict {
    pub fn holds(&self) -> bool {
        self.generators.iter().all(|(_, v)| v.holds)
    }
}

/// k-round symmetry under every permutation, decided on the two generators.
pub fn is_round_symmetric(t: &Transducer, k: RoundSpec, opts: &CheckOptions) -> Result<SymmetryVerdict> {
    let gens = generators(process_count(t)?)?;
    let results: Vec<Result<SimulationVerdict>> = thread::scope(|s| {
        let handles: Vec<_> = gens
            .iter()
            .map(|pi| s.spawn(move || is_round_symmetric_wrt(t, pi, k, opts)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("generator check panicked")).collect()
    });
    let mut out = Vec::new();
    for (pi, r) in gens.into_iter().zip(results) {
        out.push((pi, r?));
    }
    Ok(SymmetryVerdict { k, generators: out })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrySearch {
    pub generators: Vec<(Permutation, ExistentialVerdict)>,
    pub common: CommonRound,
}

impl SymmetrySearch {
    pub fn outcome(&self) -> Outcome {
        self.common.outcome
    }
}

/// Least `k ≤ k_max` at which `t` is k-round symmetric.
pub fn existential_symmetry(t: &Transducer, opts: &ExistentialOptions) -> Result<SymmetrySearch> {
    let gens = generators(process_count(t)?)?;
    let lambda = Nfa::universal(t.input().clone());
    let mut per = Vec::new();
    for pi in gens {
        let tp = permute_transducer(t, &pi)?;
        per.push((pi, existential_search(&tp, t, &lambda, opts)?));
    }
    let found: Vec<Option<usize>> = per.iter().map(|(_, v)| v.outcome.found()).collect();
    let common = common_round_length(&found, opts.k_max, |k| Ok(is_round_symmetric(t, k, &opts.check)?.holds()))?;
    Ok(SymmetrySearch { generators: per, common })
}
