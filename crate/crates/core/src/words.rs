//! Rounds, Parikh vectors and k-round equivalence of words.

use std::fmt;
use std::ops::Add;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{input_err, Error, Result};

/// Round length `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoundSpec(usize);

impl RoundSpec {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return input_err("round length must be at least 1");
        }
        Ok(RoundSpec(k))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Number of rounds `R = |w|/k`, if `w` is a k-round word.
    pub fn num_rounds(self, len: usize) -> Option<usize> {
        len.is_multiple_of(self.0).then_some(len / self.0)
    }
}

impl fmt::Display for RoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Letter counts of a word, indexed by alphabet position.
///
/// The alphabet itself is not stored; vectors are interpreted against the
/// alphabet they were computed over.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParikhVector(Vec<u32>);

impl ParikhVector {
    pub fn zero(len: usize) -> Self {
        ParikhVector(vec![0; len])
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        ParikhVector(counts)
    }

    /// The unit vector `e_a`.
    pub fn unit(len: usize, a: Symbol) -> Self {
        let mut v = Self::zero(len);
        v.0[a] = 1;
        v
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn count(&self, a: Symbol) -> u32 {
        self.0[a]
    }

    /// `|p| = Σ p(σ)`.
    pub fn norm(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `p − e_a`, if `p(a) > 0`.
    pub fn decrement(&self, a: Symbol) -> Option<Self> {
        if self.0[a] == 0 {
            return None;
        }
        let mut v = self.clone();
        v.0[a] -= 1;
        Some(v)
    }

    pub fn support(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().enumerate().filter(|&(_, &c)| c > 0).map(|(a, _)| a)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|a| format!("{}:{}", alphabet.name(a), self.0[a]))
            .collect();
        format!("({})", parts.join(", "))
    }
}

impl Add for &ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        assert_eq!(self.0.len(), rhs.0.len(), "Parikh vectors over different alphabets");
        ParikhVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{:?}", self.0)
    }
}

/// `𝔓(w)`: occurrence counts of each symbol.
pub fn parikh(word: &[Symbol], alphabet: &Alphabet) -> Result<ParikhVector> {
    alphabet.check_word(word)?;
    Ok(parikh_unchecked(word, alphabet.len()))
}

pub(crate) fn parikh_unchecked(word: &[Symbol], len: usize) -> ParikhVector {
    let mut v = vec![0u32; len];
    for &a in word {
        v[a] += 1;
    }
    ParikhVector(v)
}

/// Splits a k-round word into its `R = |w|/k` rounds.
pub fn rounds(word: &[Symbol], k: RoundSpec) -> Result<Vec<&[Symbol]>> {
    if k.num_rounds(word.len()).is_none() {
        return Err(Error::NotARoundWord { len: word.len(), k: k.get() });
    }
    Ok(word.chunks(k.get()).collect())
}

/// `x ≈_k y`: equal lengths divisible by `k`, and equal Parikh vectors
/// round by round. Total: mismatched or non-round inputs give `false`.
pub fn round_equivalent(x: &[Symbol], y: &[Symbol], k: RoundSpec) -> bool {
    if x.len() != y.len() || k.num_rounds(x.len()).is_none() {
        return false;
    }
    let len = x.iter().chain(y).max().map_or(0, |&m| m + 1);
    x.chunks(k.get())
        .zip(y.chunks(k.get()))
        .all(|(a, b)| parikh_unchecked(a, len) == parikh_unchecked(b, len))
}

/// The word with Parikh image `p` whose symbols appear in alphabet order.
pub fn canonical_representative(p: &ParikhVector) -> Word {
    p.0.iter()
        .enumerate()
        .flat_map(|(a, &c)| std::iter::repeat_n(a, c as usize))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn k(n: usize) -> RoundSpec {
        RoundSpec::new(n).unwrap()
    }

    #[test]
    fn parikh_counts() {
        let a = ab();
        assert_eq!(parikh(&[], &a).unwrap(), ParikhVector::zero(2));
        let p = parikh(&a.chars("aba").unwrap(), &a).unwrap();
        assert_eq!(p.counts(), &[2, 1]);
        assert_eq!(parikh(&a.chars("abb").unwrap(), &a).unwrap().norm(), 3);
        assert!(parikh(&[2], &a).is_err());
    }

    #[test]
    fn rounds_split() {
        let a = ab();
        let w = a.chars("abaabbabbbaa").unwrap();
        let r: Vec<String> = rounds(&w, k(3))
            .unwrap()
            .into_iter()
            .map(|r| a.names(r).concat())
            .collect();
        assert_eq!(r, ["aba", "abb", "abb", "baa"]);
        assert!(rounds(&[], k(3)).unwrap().is_empty());
        assert_eq!(rounds(&[0, 1], k(3)), Err(Error::NotARoundWord { len: 2, k: 3 }));
        assert!(RoundSpec::new(0).is_err());
    }

    #[test]
    fn word_tables() {
        let a = ab();
        let x = a.chars("abaabbabbbaa").unwrap();
        let y = a.chars("baabbaabbaba").unwrap();
        assert!(round_equivalent(&x, &y, k(3)));
        assert!(!round_equivalent(&x, &y, k(4)));
        assert!(!round_equivalent(&x, &y[..11], k(1)));
    }

    #[test]
    fn canonical_representative_sorts() {
        let a = ab();
        let p = ParikhVector::from_counts(vec![2, 1]);
        assert_eq!(a.names(&canonical_representative(&p)).concat(), "aab");
        assert!(canonical_representative(&ParikhVector::zero(2)).is_empty());
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0usize..3, 0..max)
    }

    proptest! {
        #[test]
        fn canonical_is_one_round_equivalent(w in arb_word(10)) {
            prop_assume!(!w.is_empty());
            let p = parikh_unchecked(&w, 3);
            let c = canonical_representative(&p);
            prop_assert!(round_equivalent(&c, &w, k(w.len())));
            prop_assert_eq!(parikh_unchecked(&c, 3), p);
        }

        #[test]
        fn parikh_is_additive(u in arb_word(8), v in arb_word(8)) {
            let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
            prop_assert_eq!(parikh_unchecked(&uv, 3), &parikh_unchecked(&u, 3) + &parikh_unchecked(&v, 3));
        }

        #[test]
        fn equivalence_implies_parikh_equality(x in arb_word(9), perm in any::<u64>(), kk in 1usize..4) {
            // shuffle each round of x to get y
            let mut y = x.clone();
            let mut s = perm | 1;
            for chunk in y.chunks_mut(kk) {
                for i in (1..chunk.len()).rev() {
                    s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                    chunk.swap(i, (s % (i as u64 + 1)) as usize);
                }
            }
            if x.len() % kk == 0 {
                prop_assert!(round_equivalent(&x, &y, k(kk)));
                prop_assert_eq!(parikh_unchecked(&x, 3), parikh_unchecked(&y, 3));
            } else {
                prop_assert!(!round_equivalent(&x, &y, k(kk)));
            }
        }
    }
}
