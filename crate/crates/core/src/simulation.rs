//! Fixed-k round simulation and equivalence via containment of permutation
//! closures over the quotient alphabet.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::alphabet::Word;
use crate::error::{input_err, Error, Result};
use crate::matrix::{StateSet, TypeMatrix};
use crate::nfa::Nfa;
use crate::perm::{ParikhPair, PermClosureAutomaton};
use crate::trace::RedundantProduct;
use crate::transducer::Transducer;
use crate::words::RoundSpec;

/// Tuning for the containment search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Skip `(s, S)` when some `(s, S')` with `S' ⊆ S` was already explored.
    pub antichain: bool,
    /// Largest quotient alphabet (number of Parikh pairs) a check may sweep.
    pub quotient_cap: u128,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { antichain: true, quotient_cap: 1_000_000 }
    }
}

/// A word pair in `L(A₁)` outside `L(A₂)`. For simulation checks,
/// `output = T₁(input)` and `input ∈ Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub input: Word,
    pub output: Word,
    /// The quotient letter of each round.
    pub letters: Vec<ParikhPair>,
}

impl Counterexample {
    pub fn rounds(&self) -> usize {
        self.letters.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimulationStats {
    /// Configurations `(s₁, S₂)` expanded by the search.
    pub configs_explored: usize,
    /// Configurations discarded by the antichain check.
    pub pruned: usize,
    /// Parikh pairs enumerated.
    pub quotient_letters: usize,
    /// Distinct (type in A₁, type in A₂) classes among them.
    pub letter_classes: usize,
    /// `A₁` accepts no word with at least one round.
    pub vacuous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationVerdict {
    pub holds: bool,
    pub k: RoundSpec,
    pub counterexample: Option<Counterexample>,
    pub stats: SimulationStats,
}

struct Config {
    s1: usize,
    set: StateSet,
    parent: Option<(usize, usize)>,
}

struct Explored {
    antichain: bool,
    seen: HashSet<(usize, StateSet)>,
    minimal: Vec<Vec<StateSet>>,
}

impl Explored {
    fn new(antichain: bool, states: usize) -> Self {
        Explored { antichain, seen: HashSet::new(), minimal: vec![Vec::new(); states] }
    }

    /// Records `(s, set)` and returns `true` if it needs exploring.
    fn insert(&mut self, s: usize, set: &StateSet) -> bool {
        if !self.antichain {
            return self.seen.insert((s, set.clone()));
        }
        let sets = &mut self.minimal[s];
        if sets.iter().any(|old| old.is_subset(set)) {
            return false;
        }
        sets.retain(|old| !set.is_subset(old));
        sets.push(set.clone());
        true
    }
}

/// Decides `L(a1) ⊆ L(a2)` by breadth-first search over pairs of an
/// `a1`-state and a subset of `a2`-states.
pub fn quotient_containment(
    a1: &PermClosureAutomaton,
    a2: &PermClosureAutomaton,
    opts: &CheckOptions,
) -> Result<SimulationVerdict> {
    if a1.product() != a2.product() {
        return Err(Error::AlphabetMismatch("containment between closures over different alphabets".into()));
    }
    if a1.k() != a2.k() {
        return input_err(format!("round lengths differ ({} vs {})", a1.k(), a2.k()));
    }
    let size = a1.quotient_size();
    if size > opts.quotient_cap {
        return Err(Error::Resource(format!(
            "{size} quotient letters at k={} exceed the cap of {}",
            a1.k(),
            opts.quotient_cap
        )));
    }
    let shared = a1.shares_table(a2);
    let letters = a1.quotient_alphabet();
    let mut class_of: HashMap<(TypeMatrix, TypeMatrix), usize> = HashMap::new();
    let mut classes: Vec<(TypeMatrix, TypeMatrix, usize)> = Vec::new();
    for (idx, pair) in letters.iter().enumerate() {
        let t1 = a1.transition_type(pair)?;
        let t2 = if shared { t1.clone() } else { a2.transition_type(pair)? };
        class_of.entry((t1.clone(), t2.clone())).or_insert_with(|| {
            classes.push((t1, t2, idx));
            classes.len() - 1
        });
    }

    let n1 = a1.base().num_states();
    let n2 = a2.base().num_states();
    let g1 = a1.base().accepting_set();
    let g2 = a2.base().accepting_set();
    let mut stats = SimulationStats {
        quotient_letters: letters.len(),
        letter_classes: classes.len(),
        vacuous: is_vacuous(a1.base(), &g1, classes.iter().map(|c| &c.0)),
        ..SimulationStats::default()
    };

    let start = Config {
        s1: a1.base().initial(),
        set: StateSet::singleton(n2, a2.base().initial()),
        parent: None,
    };
    let mut explored = Explored::new(opts.antichain, n1);
    explored.insert(start.s1, &start.set);
    let mut configs = vec![start];
    let mut queue = VecDeque::from([0usize]);
    let mut found = None;
    'search: while let Some(id) = queue.pop_front() {
        stats.configs_explored += 1;
        if g1.contains(configs[id].s1) && !configs[id].set.intersects(&g2) {
            found = Some(id);
            break;
        }
        for (c, (t1, t2, _)) in classes.iter().enumerate() {
            let next_set = configs[id].set.image(t2);
            let succ: Vec<usize> = t1.row_ones(configs[id].s1).collect();
            for s in succ {
                if !explored.insert(s, &next_set) {
                    stats.pruned += 1;
                    continue;
                }
                configs.push(Config { s1: s, set: next_set.clone(), parent: Some((id, c)) });
                let new_id = configs.len() - 1;
                if g1.contains(s) && !next_set.intersects(&g2) {
                    stats.configs_explored += 1;
                    found = Some(new_id);
                    break 'search;
                }
                queue.push_back(new_id);
            }
        }
    }
    if n2 < 100 {
        let bound = (n1 as f64) * 2f64.powi(n2 as i32);
        assert!(configs.len() as f64 <= bound, "containment search exceeded |A1|·2^|A2| configurations");
    }

    let counterexample = match found {
        None => None,
        Some(id) => Some(reconstruct(a1, &configs, id, &classes, &letters)?),
    };
    Ok(SimulationVerdict { holds: counterexample.is_none(), k: a1.k(), counterexample, stats })
}

fn is_vacuous<'a>(base: &Nfa, accepting: &StateSet, types: impl Iterator<Item = &'a TypeMatrix>) -> bool {
    let n = base.num_states();
    let mut step = TypeMatrix::zero(n);
    for t in types {
        step.or_assign(t);
    }
    // states reachable after at least one round
    let mut seen = StateSet::empty(n);
    let mut frontier = StateSet::singleton(n, base.initial()).image(&step);
    while !frontier.is_empty() {
        seen.union_with(&frontier);
        frontier = StateSet::from_states(n, frontier.image(&step).iter().filter(|&s| !seen.contains(s)));
    }
    !seen.intersects(accepting)
}

fn reconstruct(
    a1: &PermClosureAutomaton,
    configs: &[Config],
    mut id: usize,
    classes: &[(TypeMatrix, TypeMatrix, usize)],
    letters: &[ParikhPair],
) -> Result<Counterexample> {
    let mut steps = Vec::new();
    while let Some((parent, class)) = configs[id].parent {
        steps.push((configs[parent].s1, configs[id].s1, &letters[classes[class].2]));
        id = parent;
    }
    steps.reverse();
    let product = a1.product();
    let (mut input, mut output, mut pairs) = (Vec::new(), Vec::new(), Vec::new());
    for (from, to, pair) in steps {
        let word = a1.witness(pair, from, to)?.expect("search only follows set entries");
        let (x, y) = product.unzip(&word);
        input.extend(x);
        output.extend(y);
        pairs.push(pair.clone());
    }
    Ok(Counterexample { input, output, letters: pairs })
}

/// The closures `Perm_k(B₁)` and `Perm_k(B₂)` of a redundant product,
/// sharing one type table.
pub fn closure_pair(rp: &RedundantProduct, k: RoundSpec) -> Result<(PermClosureAutomaton, PermClosureAutomaton)> {
    let a1 = PermClosureAutomaton::new(rp.b1(), rp.product(), k)?;
    let a2 = a1.sharing_types(rp.b2())?;
    Ok((a1, a2))
}

/// `T₁ ≺_{k,Λ} T₂` with default options.
pub fn fixed_round_simulates(t1: &Transducer, t2: &Transducer, lambda: &Nfa, k: RoundSpec) -> Result<SimulationVerdict> {
    fixed_round_simulates_with(t1, t2, lambda, k, &CheckOptions::default())
}

pub fn fixed_round_simulates_with(
    t1: &Transducer,
    t2: &Transducer,
    lambda: &Nfa,
    k: RoundSpec,
    opts: &CheckOptions,
) -> Result<SimulationVerdict> {
    let rp = RedundantProduct::build(t1, t2, lambda)?;
    let (a1, a2) = closure_pair(&rp, k)?;
    quotient_containment(&a1, &a2, opts)
}

/// Both directions of a round-equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub forward: SimulationVerdict,
    pub backward: SimulationVerdict,
}

impl EquivalenceVerdict {
    pub fn holds(&self) -> bool {
        self.forward.holds && self.backward.holds
    }
}

/// `T₁ ≡_{k,Λ} T₂`.
pub fn fixed_round_equivalent(t1: &Transducer, t2: &Transducer, lambda: &Nfa, k: RoundSpec) -> Result<EquivalenceVerdict> {
    fixed_round_equivalent_with(t1, t2, lambda, k, &CheckOptions::default())
}

pub fn fixed_round_equivalent_with(
    t1: &Transducer,
    t2: &Transducer,
    lambda: &Nfa,
    k: RoundSpec,
    opts: &CheckOptions,
) -> Result<EquivalenceVerdict> {
    Ok(EquivalenceVerdict {
        forward: fixed_round_simulates_with(t1, t2, lambda, k, opts)?,
        backward: fixed_round_simulates_with(t2, t1, lambda, k, opts)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::two_letter_pair;
    use crate::perm::perm_closure;
    use crate::trace::{trace_dfa, ProductAlphabet};
    use crate::words::round_equivalent;

    fn k(n: usize) -> RoundSpec {
        RoundSpec::new(n).unwrap()
    }

    #[test]
    fn containment_is_reflexive() {
        let (t1, _) = two_letter_pair();
        let pa = ProductAlphabet::of(&t1);
        let a = perm_closure(&trace_dfa(&t1), &pa, k(2)).unwrap();
        let b = perm_closure(&trace_dfa(&t1), &pa, k(2)).unwrap();
        assert!(quotient_containment(&a, &b, &CheckOptions::default()).unwrap().holds);
    }

    #[test]
    fn plain_closures_refute_reverse_direction() {
        let (t1, t2) = two_letter_pair();
        let pa = ProductAlphabet::of(&t1);
        let a2 = perm_closure(&trace_dfa(&t2), &pa, k(2)).unwrap();
        let a1 = perm_closure(&trace_dfa(&t1), &pa, k(2)).unwrap();
        let v = quotient_containment(&a2, &a1, &CheckOptions::default()).unwrap();
        assert!(!v.holds);
        let cex = v.counterexample.unwrap();
        assert!(round_equivalent(&cex.input, &pa.input().chars("ab").unwrap(), k(2)));
        assert_eq!(pa.output().render(&cex.output), "0 0");
    }

    #[test]
    fn two_letter_pair_directions() {
        let (t1, t2) = two_letter_pair();
        let lambda = Nfa::universal(t1.input().clone());
        assert!(fixed_round_simulates(&t1, &t2, &lambda, k(2)).unwrap().holds);
        assert!(!fixed_round_simulates(&t1, &t2, &lambda, k(1)).unwrap().holds);
        let v = fixed_round_simulates(&t2, &t1, &lambda, k(2)).unwrap();
        let cex = v.counterexample.expect("refuted");
        assert_eq!(t2.run(&cex.input).unwrap(), cex.output);
        assert_eq!(cex.rounds(), 1);
        assert!(!fixed_round_equivalent(&t1, &t2, &lambda, k(2)).unwrap().holds());
    }

    #[test]
    fn antichain_does_not_change_verdicts() {
        let (t1, t2) = two_letter_pair();
        let lambda = Nfa::universal(t1.input().clone());
        let off = CheckOptions { antichain: false, ..CheckOptions::default() };
        for kk in 1..5 {
            for (a, b) in [(&t1, &t2), (&t2, &t1)] {
                let on = fixed_round_simulates(a, b, &lambda, k(kk)).unwrap();
                let plain = fixed_round_simulates_with(a, b, &lambda, k(kk), &off).unwrap();
                assert_eq!(on.holds, plain.holds);
                assert_eq!(
                    on.counterexample.map(|c| c.rounds()),
                    plain.counterexample.map(|c| c.rounds())
                );
            }
        }
    }

    #[test]
    fn empty_lambda_is_vacuous() {
        let (t1, t2) = two_letter_pair();
        let lambda = Nfa::empty_language(t1.input().clone());
        let v = fixed_round_simulates(&t2, &t1, &lambda, k(2)).unwrap();
        assert!(v.holds && v.stats.vacuous);
    }

    #[test]
    fn quotient_cap_is_enforced() {
        let (t1, t2) = two_letter_pair();
        let lambda = Nfa::universal(t1.input().clone());
        let opts = CheckOptions { quotient_cap: 3, ..CheckOptions::default() };
        let r = fixed_round_simulates_with(&t1, &t2, &lambda, k(2), &opts);
        assert!(matches!(r, Err(Error::Resource(_))));
    }
}
