//! Bounded search for a round length at which simulation holds.
//!
//! Round lengths are tried in ascending order. Before running a
//! containment check at `k`, the type profile `Υ(B₁, k)` is compared with
//! the profiles of earlier round lengths; equal profiles give equal
//! containment answers, so earlier answers are reused.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::perm::{PermClosureAutomaton, TypeProfile};
use crate::simulation::{closure_pair, fixed_round_simulates_with, quotient_containment, CheckOptions};
use crate::trace::RedundantProduct;
use crate::transducer::Transducer;
use crate::words::RoundSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExistentialOptions {
    pub k_max: usize,
    /// Re-run containment on every reused answer and count disagreements.
    pub verify_reuse: bool,
    pub check: CheckOptions,
}

impl Default for ExistentialOptions {
    fn default() -> Self {
        ExistentialOptions { k_max: 16, verify_reuse: false, check: CheckOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(usize),
    /// No round length up to the bound works. Says nothing about larger k.
    NotFoundUpTo(usize),
}

impl Outcome {
    pub fn found(self) -> Option<usize> {
        match self {
            Outcome::Found(k) => Some(k),
            Outcome::NotFoundUpTo(_) => None,
        }
    }

    pub fn is_found(self) -> bool {
        self.found().is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoundAnswer {
    Computed { holds: bool },
    /// Copied from round length `from`, whose profile is identical.
    /// `verified` is set when the answer was also recomputed.
    Reused { from: usize, holds: bool, verified: Option<bool> },
    Skipped { reason: String },
}

impl RoundAnswer {
    pub fn holds(&self) -> Option<bool> {
        match self {
            RoundAnswer::Computed { holds } | RoundAnswer::Reused { holds, .. } => Some(*holds),
            RoundAnswer::Skipped { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileEntry {
    pub k: usize,
    pub quotient_letters: u128,
    pub profile_size: Option<usize>,
    pub fingerprint: Option<String>,
    pub answer: RoundAnswer,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistentialVerdict {
    pub outcome: Outcome,
    pub log: Vec<ProfileEntry>,
    pub reuse_count: usize,
    pub reuse_checks: usize,
    pub reuse_mismatches: usize,
}

/// Profiles seen so far, with the round length and answer for each.
#[derive(Default)]
struct ProfileMemo {
    seen: Vec<(TypeProfile, [u8; 32], usize, bool)>,
}

impl ProfileMemo {
    fn lookup(&self, profile: &TypeProfile, digest: &[u8; 32]) -> Option<(usize, bool)> {
        self.seen
            .iter()
            .find(|(p, d, _, _)| d == digest && p == profile)
            .map(|&(_, _, k, holds)| (k, holds))
    }
}

struct Search {
    a1: PermClosureAutomaton,
    a2: PermClosureAutomaton,
    memo: ProfileMemo,
    opts: ExistentialOptions,
    verdict: ExistentialVerdict,
}

impl Search {
    fn new(t1: &Transducer, t2: &Transducer, lambda: &Nfa, opts: &ExistentialOptions) -> Result<Self> {
        let rp = RedundantProduct::build(t1, t2, lambda)?;
        let (a1, a2) = closure_pair(&rp, RoundSpec::new(1)?)?;
        Ok(Search {
            a1,
            a2,
            memo: ProfileMemo::default(),
            opts: *opts,
            verdict: ExistentialVerdict {
                outcome: Outcome::NotFoundUpTo(opts.k_max),
                log: Vec::new(),
                reuse_count: 0,
                reuse_checks: 0,
                reuse_mismatches: 0,
            },
        })
    }

    fn round(&mut self, k: usize) -> Result<ProfileEntry> {
        let start = Instant::now();
        let round = RoundSpec::new(k)?;
        let a1 = self.a1.at_round(round);
        let a2 = self.a2.at_round(round);
        let letters = a1.quotient_size();
        let mut entry = ProfileEntry {
            k,
            quotient_letters: letters,
            profile_size: None,
            fingerprint: None,
            answer: RoundAnswer::Skipped { reason: String::new() },
            elapsed: Duration::ZERO,
        };
        if letters > self.opts.check.quotient_cap {
            entry.answer = RoundAnswer::Skipped {
                reason: format!("{letters} quotient letters exceed the cap of {}", self.opts.check.quotient_cap),
            };
            entry.elapsed = start.elapsed();
            return Ok(entry);
        }
        let profile = a1.profile();
        let digest = profile.fingerprint();
        entry.profile_size = Some(profile.len());
        entry.fingerprint = Some(profile.fingerprint_hex());
        entry.answer = match self.memo.lookup(&profile, &digest) {
            Some((from, holds)) => {
                self.verdict.reuse_count += 1;
                let verified = if self.opts.verify_reuse {
                    let fresh = quotient_containment(&a1, &a2, &self.opts.check)?.holds;
                    self.verdict.reuse_checks += 1;
                    if fresh != holds {
                        self.verdict.reuse_mismatches += 1;
                    }
                    Some(fresh == holds)
                } else {
                    None
                };
                RoundAnswer::Reused { from, holds, verified }
            }
            None => {
                let holds = quotient_containment(&a1, &a2, &self.opts.check)?.holds;
                self.memo.seen.push((profile, digest, k, holds));
                RoundAnswer::Computed { holds }
            }
        };
        entry.elapsed = start.elapsed();
        Ok(entry)
    }
}

/// Searches `k = 1..=k_max` for the least `k` with `T₁ ≺_{k,Λ} T₂`.
pub fn existential_search(
    t1: &Transducer,
    t2: &Transducer,
    lambda: &Nfa,
    opts: &ExistentialOptions,
) -> Result<ExistentialVerdict> {
    existential_search_observed(t1, t2, lambda, opts, &mut |_| {})
}

/// As [`existential_search`], reporting each log entry as soon as it is
/// committed.
pub fn existential_search_observed(
    t1: &Transducer,
    t2: &Transducer,
    lambda: &Nfa,
    opts: &ExistentialOptions,
    observer: &mut dyn FnMut(&ProfileEntry),
) -> Result<ExistentialVerdict> {
    if opts.k_max == 0 {
        return Err(Error::Input("k_max must be at least 1".into()));
    }
    let mut search = Search::new(t1, t2, lambda, opts)?;
    for k in 1..=opts.k_max {
        let entry = search.round(k)?;
        observer(&entry);
        let holds = entry.answer.holds() == Some(true);
        search.verdict.log.push(entry);
        if holds {
            search.verdict.outcome = Outcome::Found(k);
            break;
        }
    }
    Ok(search.verdict)
}

/// `Υ(B₁, k)` for the redundant product of `(t1, t2, lambda)`.
pub fn profile_at(t1: &Transducer, t2: &Transducer, lambda: &Nfa, k: RoundSpec) -> Result<TypeProfile> {
    let rp = RedundantProduct::build(t1, t2, lambda)?;
    Ok(closure_pair(&rp, k)?.0.profile())
}

/// `SHA-256` digest of a profile's canonical serialization.
pub fn profile_fingerprint(p: &TypeProfile) -> [u8; 32] {
    p.fingerprint()
}

/// Result of combining several per-check round lengths into one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonRound {
    pub outcome: Outcome,
    /// `lcm` of the individual round lengths, where all were found.
    pub candidate: Option<usize>,
    /// Round lengths in the scan that exceeded the quotient cap.
    pub skipped: Vec<usize>,
}

/// Least `k ≤ k_max` at which `check` passes, given that each underlying
/// check first passes at the corresponding entry of `found`. Holding at `k`
/// implies holding at every multiple of `k`, so the lcm is always a
/// solution; the scan runs from the largest entry up to it.
pub(crate) fn common_round_length(
    found: &[Option<usize>],
    k_max: usize,
    mut check: impl FnMut(RoundSpec) -> Result<bool>,
) -> Result<CommonRound> {
    let mut result = CommonRound { outcome: Outcome::NotFoundUpTo(k_max), candidate: None, skipped: Vec::new() };
    let Some(ks) = found.iter().copied().collect::<Option<Vec<usize>>>() else {
        return Ok(result);
    };
    let lcm = ks.iter().fold(1usize, |acc, &k| {
        let g = gcd(acc, k);
        (acc / g).saturating_mul(k)
    });
    result.candidate = Some(lcm);
    let lo = ks.iter().copied().max().unwrap_or(1);
    for k in lo..=lcm.min(k_max) {
        match check(RoundSpec::new(k)?) {
            Ok(true) => {
                result.outcome = Outcome::Found(k);
                return Ok(result);
            }
            Ok(false) => {}
            Err(Error::Resource(_)) => result.skipped.push(k),
            Err(e) => return Err(e),
        }
    }
    Ok(result)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceSearch {
    pub forward: ExistentialVerdict,
    pub backward: ExistentialVerdict,
    pub common: CommonRound,
}

impl EquivalenceSearch {
    pub fn outcome(&self) -> Outcome {
        self.common.outcome
    }
}

/// Least `k ≤ k_max` with `T₁ ≡_{k,Λ} T₂`.
pub fn existential_equivalence(
    t1: &Transducer,
    t2: &Transducer,
    lambda: &Nfa,
    opts: &ExistentialOptions,
) -> Result<EquivalenceSearch> {
    existential_equivalence_observed(t1, t2, lambda, opts, &mut |_, _| {})
}

pub fn existential_equivalence_observed(
    t1: &Transducer,
    t2: &Transducer,
    lambda: &Nfa,
    opts: &ExistentialOptions,
    observer: &mut dyn FnMut(&str, &ProfileEntry),
) -> Result<EquivalenceSearch> {
    let forward = existential_search_observed(t1, t2, lambda, opts, &mut |e| observer("forward", e))?;
    let backward = existential_search_observed(t2, t1, lambda, opts, &mut |e| observer("backward", e))?;
    let found = [forward.outcome.found(), backward.outcome.found()];
    let common = common_round_length(&found, opts.k_max, |k| {
        Ok(fixed_round_simulates_with(t1, t2, lambda, k, &opts.check)?.holds
            && fixed_round_simulates_with(t2, t1, lambda, k, &opts.check)?.holds)
    })?;
    Ok(EquivalenceSearch { forward, backward, common })
}
