//! Factories for named instances: worked examples, a family needing long
//! rounds, and the reductions from NFA universality.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::error::{input_err, Error, Result};
use crate::format::{write_nfa, write_transducer};
use crate::matrix::StateSet;
use crate::nfa::Nfa;
use crate::oracles::oracle_nfa_universality;
use crate::symmetry::ProcessAlphabet;
use crate::transducer::Transducer;

/// Largest prime-family size generated without an explicit override.
pub const PRIME_FAMILY_MAX: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    FixedSimulation,
    FixedEquivalence,
    ExistentialSimulation,
    ExistentialEquivalence,
}

/// Where an expected verdict comes from: read off the construction's
/// published analysis, or computed by an oracle or brute force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Stated,
    Derived,
}

/// An expected verdict for `t1` against `t2`. For existential relations,
/// `k`, when given, is the least round length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub relation: Relation,
    pub k: Option<usize>,
    pub holds: bool,
    pub source: Source,
}

#[derive(Clone, Debug)]
pub struct InstanceBundle {
    pub name: String,
    pub t1: Transducer,
    pub t2: Transducer,
    pub lambda: Nfa,
    pub expected: Vec<Expected>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    name: &'a str,
    t1: &'static str,
    t2: &'static str,
    lambda: &'static str,
    expected: &'a [Expected],
}

impl InstanceBundle {
    fn new(name: impl Into<String>, t1: Transducer, t2: Transducer, lambda: Nfa) -> Result<Self> {
        if t1.input() != t2.input() || t1.output() != t2.output() || lambda.alphabet() != t1.input() {
            return Err(Error::AlphabetMismatch("bundle members disagree on alphabets".into()));
        }
        Ok(InstanceBundle { name: name.into(), t1, t2, lambda, expected: Vec::new() })
    }

    fn expect(mut self, relation: Relation, k: Option<usize>, holds: bool, source: Source) -> Self {
        self.expected.push(Expected { relation, k, holds, source });
        self
    }

    pub fn manifest_json(&self) -> String {
        let m = Manifest {
            name: &self.name,
            t1: "t1.txt",
            t2: "t2.txt",
            lambda: "lambda.txt",
            expected: &self.expected,
        };
        serde_json::to_string_pretty(&m).expect("manifest serializes")
    }

    /// Writes `t1.txt`, `t2.txt`, `lambda.txt` and `manifest.json`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        fs::write(dir.join("t1.txt"), write_transducer(&self.t1)).map_err(io)?;
        fs::write(dir.join("t2.txt"), write_transducer(&self.t2)).map_err(io)?;
        fs::write(dir.join("lambda.txt"), write_nfa(&self.lambda)).map_err(io)?;
        fs::write(dir.join("manifest.json"), self.manifest_json() + "\n").map_err(io)?;
        Ok(())
    }
}

/// Two 5-state `{a,b}/{0,1}` transducers. `T₁(ab) = T₁(ba) = 01` and
/// `T₂(ab) = 00`, `T₂(ba) = 01`: the first is 2-round simulated by the
/// second but not conversely.
pub fn two_letter_pair() -> (Transducer, Transducer) {
    let input = Alphabet::new(["a", "b"]).expect("valid");
    let output = Alphabet::new(["0", "1"]).expect("valid");
    let names = ["q0", "qa", "qb", "qbb", "sink"];
    // a, b
    let delta = |q: usize, s: usize| match (q, s) {
        (0, 0) => 1,
        (0, 1) => 2,
        (1, 1) => 0,
        (2, 0) => 0,
        (2, 1) => 3,
        _ => 4,
    };
    let build = |labels: [usize; 5]| {
        Transducer::from_fn(input.clone(), output.clone(), 5, 0, |q| names[q].to_string(), delta, |q| labels[q])
            .expect("valid")
    };
    (build([1, 0, 0, 1, 1]), build([0, 0, 1, 0, 1]))
}

pub fn two_letter_bundle() -> InstanceBundle {
    let (t1, t2) = two_letter_pair();
    let lambda = Nfa::universal(t1.input().clone());
    InstanceBundle::new("two-letter", t1, t2, lambda)
        .expect("consistent")
        .expect(Relation::FixedSimulation, Some(2), true, Source::Stated)
        .expect(Relation::FixedSimulation, Some(1), false, Source::Derived)
        .expect(Relation::ExistentialSimulation, Some(2), true, Source::Stated)
}

/// Round-robin scheduler over processes `0..m`, granting process `start`
/// first. States `q_i` (label `{i}`) and `q'_i` (label `{}`); from either,
/// with `j = i+1 mod m`, input `σ` leads to `q_j` if `j ∈ σ` and to `q'_j`
/// otherwise. The run starts in `q_{start−1 mod m}`.
pub fn round_robin(m: usize, start: usize) -> Result<Transducer> {
    if m < 2 || start >= m {
        return input_err(format!("round robin needs m ≥ 2 and start < m (got m={m}, start={start})"));
    }
    let pa = ProcessAlphabet::numbered(m, 0)?;
    let name = |q: usize| if q < m { format!("q{q}") } else { format!("q'{}", q - m) };
    Transducer::from_fn(
        pa.alphabet().clone(),
        pa.alphabet().clone(),
        2 * m,
        (start + m - 1) % m,
        name,
        |q, s| {
            let j = (q % m + 1) % m;
            if pa.mask(s) >> j & 1 == 1 {
                j
            } else {
                m + j
            }
        },
        |q| if q < m { pa.symbol(1 << q) } else { pa.symbol(0) },
    )
}

/// Schedulers started at processes 0 and 1, expected m-round equivalent.
pub fn round_robin_bundle(m: usize) -> Result<InstanceBundle> {
    let t1 = round_robin(m, 0)?;
    let t2 = round_robin(m, 1)?;
    let lambda = Nfa::universal(t1.input().clone());
    let source = if m == 3 { Source::Stated } else { Source::Derived };
    Ok(InstanceBundle::new(format!("round-robin-{m}"), t1, t2, lambda)?
        .expect(Relation::FixedEquivalence, Some(m), true, source)
        .expect(Relation::FixedEquivalence, Some(1), false, Source::Derived))
}

/// One state labelled `{}` over `2^{1..m}`.
pub fn constant_transducer(m: usize) -> Result<Transducer> {
    let pa = ProcessAlphabet::numbered(m, 1)?;
    Transducer::from_fn(pa.alphabet().clone(), pa.alphabet().clone(), 1, 0, |_| "q".into(), |_, _| 0, |_| 0)
}

/// Over `2^{1..m}`, outputs `{1}` after inputs containing process 1 and
/// `{}` otherwise. Not round symmetric for any k.
pub fn first_process_echo(m: usize) -> Result<Transducer> {
    let pa = ProcessAlphabet::numbered(m, 1)?;
    Transducer::from_fn(
        pa.alphabet().clone(),
        pa.alphabet().clone(),
        2,
        0,
        |q| ["idle", "seen"][q].into(),
        |_, s| (pa.mask(s) & 1) as usize,
        |q| pa.symbol(q as u32),
    )
}

pub fn first_primes(m: usize) -> Vec<usize> {
    let mut primes = Vec::with_capacity(m);
    let mut n = 2;
    while primes.len() < m {
        if primes.iter().all(|p| n % p != 0) {
            primes.push(n);
        }
        n += 1;
    }
    primes
}

/// The family `(T₁, T₂, (1·2⋯m)*)` whose least round length is
/// `m · p₁ ⋯ p_m` for the first `m` primes.
///
/// Inputs are the singletons `{1}..{m}`; outputs add `{}`. `T₁` cycles
/// through `s_1..s_m` echoing its input (other inputs fall into a sink).
/// `T₂` has a hub `s_0` and one spoke `s_i^1..s_i^{p_i}` labelled `{i}` per
/// process: a spoke is entered on input `{i}` and then followed to its end
/// regardless of input.
pub fn prime_family(m: usize) -> Result<InstanceBundle> {
    prime_family_with_limit(m, PRIME_FAMILY_MAX)
}

pub fn prime_family_with_limit(m: usize, limit: usize) -> Result<InstanceBundle> {
    if m == 0 || m > limit {
        return input_err(format!("prime family size {m} outside 1..={limit}"));
    }
    let procs: Vec<String> = (1..=m).map(|i| format!("{{{i}}}")).collect();
    let input = Alphabet::new(&procs)?;
    let output = Alphabet::new(std::iter::once("{}".to_string()).chain(procs.iter().cloned()))?;

    // T₁: s_i is state i−1, the sink is state m
    let t1 = Transducer::from_fn(
        input.clone(),
        output.clone(),
        m + 1,
        m - 1,
        |q| if q < m { format!("s{}", q + 1) } else { "sink".into() },
        |q, s| if q < m && s == (q + 1) % m { s } else { m },
        |q| if q < m { q + 1 } else { 0 },
    )?;

    // T₂: hub 0, spokes in order, sink last
    let primes = first_primes(m);
    let mut spoke_start = Vec::with_capacity(m);
    let mut owner = vec![(0usize, 0usize)];
    for (i, &p) in primes.iter().enumerate() {
        spoke_start.push(owner.len());
        owner.extend((1..=p).map(|j| (i + 1, j)));
    }
    let sink = owner.len();
    let n = sink + 1;
    let t2 = Transducer::from_fn(
        input.clone(),
        output,
        n,
        0,
        |q| match q {
            _ if q == sink => "sink".into(),
            0 => "s0".into(),
            _ => format!("s{}^{}", owner[q].0, owner[q].1),
        },
        |q, s| {
            if q == sink {
                return sink;
            }
            let (i, j) = owner[q];
            if i > 0 && j < primes[i - 1] {
                q + 1
            } else {
                spoke_start[s]
            }
        },
        |q| if q == sink { 0 } else { owner[q].0 },
    )?;

    let mut lambda = Nfa::with_states(input, m, 0)?;
    lambda.set_accepting(0, true);
    for q in 0..m {
        lambda.add_transition(q, q, (q + 1) % m)?;
    }
    let k = m * primes.iter().product::<usize>();
    let bundle = InstanceBundle::new(format!("primes-{m}"), t1, t2, lambda)?
        .expect(Relation::FixedSimulation, Some(k), true, Source::Stated);
    // T₂ may finish a spoke in the next round, so shorter rounds can already
    // suffice; for m = 2 the least one is 4.
    Ok(if m == 2 {
        bundle
            .expect(Relation::FixedSimulation, Some(2), false, Source::Derived)
            .expect(Relation::ExistentialSimulation, Some(4), true, Source::Derived)
    } else {
        bundle
    })
}

fn binary_symbols(n: &Nfa) -> Result<(usize, usize)> {
    let a = n.alphabet();
    match (a.len(), a.index_of("0"), a.index_of("1")) {
        (2, Some(zero), Some(one)) => Ok((zero, one)),
        _ => input_err(format!("reduction needs an NFA over {{0,1}}, got {a}")),
    }
}

/// An all-accepting NFA over `{0,1}` with the same language and at most two
/// successors per state and letter. Inputs already in that form are
/// returned unchanged; otherwise the reachable non-empty subsets are used.
pub fn normalize_for_reduction(n: &Nfa) -> Result<Nfa> {
    binary_symbols(n)?;
    if (0..n.num_states()).any(|q| !n.is_accepting(q)) {
        return input_err("reduction needs every NFA state to be accepting");
    }
    if n.max_degree() <= 2 {
        return Ok(n.clone());
    }
    let dim = n.num_states();
    let mut subsets = vec![StateSet::singleton(dim, n.initial())];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        for a in 0..2 {
            let next = n.run_set(&subsets[i], &[a])?;
            if next.is_empty() {
                continue;
            }
            let j = match subsets.iter().position(|s| *s == next) {
                Some(j) => j,
                None => {
                    subsets.push(next);
                    subsets.len() - 1
                }
            };
            edges.push((i, a, j));
        }
        i += 1;
    }
    let mut out = Nfa::with_states(n.alphabet().clone(), subsets.len(), 0)?;
    for q in 0..subsets.len() {
        out.set_accepting(q, true);
    }
    for (from, a, to) in edges {
        out.add_transition(from, a, to)?;
    }
    Ok(out)
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const HASH: usize = 4;

/// `(T₁, T₂, Λ)` over inputs `{a,b,c,d}` (plus `#` when padded) and outputs
/// `{top,bot}` such that `n` is universal iff `T₁ ≡_{2,Λ} T₂`, with
/// `Λ = (ab+cd)*`. Letter 0 is encoded by `ab` or `ba`, letter 1 by `cd` or
/// `dc`; the two orders select the two successors of an NFA state. The
/// padded variant adds `##` blocks to `Λ` and loops of length two on them,
/// and `n` is universal iff `T₁ ≡_{k,Λ} T₂` for some k.
pub fn universality_reduction(n: &Nfa, padded: bool) -> Result<InstanceBundle> {
    let n = normalize_for_reduction(n)?;
    let (zero, one) = binary_symbols(&n)?;
    let letters: &[&str] = if padded { &["a", "b", "c", "d", "#"] } else { &["a", "b", "c", "d"] };
    let input = Alphabet::new(letters.iter().copied())?;
    let output = Alphabet::new(["top", "bot"])?;
    let (top, bot) = (0, 1);

    // T₁: q0, after a, after c, sink, and (padded) after #
    let sink1 = 3;
    let t1 = Transducer::from_fn(
        input.clone(),
        output.clone(),
        if padded { 5 } else { 4 },
        0,
        |q| ["q0", "q_a", "q_c", "q_bot", "q_#"][q].into(),
        |q, s| match (q, s) {
            (0, A) => 1,
            (0, C) => 2,
            (0, HASH) => 4,
            (1, B) | (2, D) | (4, HASH) => 0,
            _ => sink1,
        },
        |q| if q == sink1 { bot } else { top },
    )?;

    // T₂: per NFA state q the block q, q_a, q_b, q_c, q_d (, q_#); q_bot last
    let width = if padded { 6 } else { 5 };
    let sink2 = width * n.num_states();
    let succ = |q: usize, letter: usize, choice: usize| {
        match n.successors(q, letter) {
            [] => sink2,
            s => width * s[choice.min(s.len() - 1)],
        }
    };
    let t2 = Transducer::from_fn(
        input.clone(),
        output,
        sink2 + 1,
        width * n.initial(),
        |id| {
            if id == sink2 {
                return "q_bot".into();
            }
            let q = n.state_name(id / width);
            match id % width {
                0 => q.to_string(),
                r => format!("{q}_{}", ["a", "b", "c", "d", "#"][r - 1]),
            }
        },
        |id, s| {
            if id == sink2 {
                return sink2;
            }
            let (q, r) = (id / width, id % width);
            let has0 = !n.successors(q, zero).is_empty();
            let has1 = !n.successors(q, one).is_empty();
            match (r, s) {
                (0, A) | (0, B) if has0 => id + 1 + s,
                (0, C) | (0, D) if has1 => id + 1 + s,
                (0, HASH) => id + 5,
                (1, B) => succ(q, zero, 0),
                (2, A) => succ(q, zero, 1),
                (3, D) => succ(q, one, 0),
                (4, C) => succ(q, one, 1),
                (5, HASH) => id - 5,
                _ => sink2,
            }
        },
        |id| if id == sink2 { bot } else { top },
    )?;

    // Λ: start, after a, after c, dead, and (padded) after #
    let mut lambda = Nfa::new(
        input,
        ["l0", "l_a", "l_c", "dead", "l_#"][..if padded { 5 } else { 4 }]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        0,
    )?;
    lambda.set_accepting(0, true);
    for q in 0..lambda.num_states() {
        for s in 0..lambda.alphabet().len() {
            let to = match (q, s) {
                (0, A) => 1,
                (0, C) => 2,
                (0, HASH) => 4,
                (1, B) | (2, D) | (4, HASH) => 0,
                _ => 3,
            };
            lambda.add_transition(q, s, to)?;
        }
    }

    let universal = oracle_nfa_universality(&n, 1 << 16)?;
    let name = if padded { "universality-padded" } else { "universality" };
    let bundle = InstanceBundle::new(name, t1, t2, lambda)?.expect(
        Relation::FixedEquivalence,
        Some(2),
        universal,
        Source::Derived,
    );
    Ok(if padded {
        bundle.expect(Relation::ExistentialEquivalence, None, universal, Source::Derived)
    } else {
        bundle
    })
}
