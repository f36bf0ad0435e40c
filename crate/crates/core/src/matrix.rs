//! Packed Boolean matrices (the transition monoid) and state sets.
//!
//! Rows are stored as `u64` blocks. The product `A·B` is computed row by row:
//! row `i` of the result is the OR of the rows of `B` selected by the set bits
//! of row `i` of `A`.

use std::fmt;

const BITS: usize = 64;

fn blocks(dim: usize) -> usize {
    dim.div_ceil(BITS).max(1)
}

/// A set of states of an automaton with a fixed number of states.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    bits: Vec<u64>,
}

impl StateSet {
    pub fn empty(dim: usize) -> Self {
        StateSet { bits: vec![0; blocks(dim)] }
    }

    pub fn singleton(dim: usize, s: usize) -> Self {
        let mut set = Self::empty(dim);
        set.insert(s);
        set
    }

    pub fn from_states(dim: usize, states: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(dim);
        for s in states {
            set.insert(s);
        }
        set
    }

    pub fn insert(&mut self, s: usize) {
        self.bits[s / BITS] |= 1 << (s % BITS);
    }

    pub fn contains(&self, s: usize) -> bool {
        self.bits[s / BITS] >> (s % BITS) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.bits.iter().zip(&other.bits).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    fn union_with_row(&mut self, row: &[u64]) {
        for (a, b) in self.bits.iter_mut().zip(row) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.bits)
    }

    /// The set of states reachable from some member in one step of `m`.
    pub fn image(&self, m: &TypeMatrix) -> StateSet {
        let mut out = StateSet::empty(m.dim);
        for s in self.iter() {
            out.union_with_row(m.row(s));
        }
        out
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

fn iter_bits(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(blk, &word)| {
        let mut w = word;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(blk * BITS + tz)
            }
        })
    })
}

/// A Boolean `dim × dim` matrix: the type of a letter, word or Parikh pair.
///
/// Ordering and hashing follow the canonical byte serialization, so sets of
/// matrices have a representation-independent order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeMatrix {
    dim: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl TypeMatrix {
    pub fn zero(dim: usize) -> Self {
        let stride = blocks(dim);
        TypeMatrix { dim, stride, bits: vec![0; stride * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / BITS] >> (j % BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let cell = &mut self.bits[i * self.stride + j / BITS];
        if value {
            *cell |= 1 << (j % BITS);
        } else {
            *cell &= !(1 << (j % BITS));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Row `i` as a state set: the successors of state `i`.
    pub fn successors(&self, i: usize) -> StateSet {
        StateSet { bits: self.row(i).to_vec() }
    }

    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Boolean matrix product `self · rhs`.
    pub fn mul(&self, rhs: &TypeMatrix) -> TypeMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        let mut out = TypeMatrix::zero(self.dim);
        self.mul_into(rhs, &mut out);
        out
    }

    /// ORs `self · rhs` into `acc`.
    pub fn mul_into(&self, rhs: &TypeMatrix, acc: &mut TypeMatrix) {
        let stride = self.stride;
        for i in 0..self.dim {
            let (lo, hi) = (i * stride, (i + 1) * stride);
            for j in iter_bits(&self.bits[lo..hi]) {
                let src = rhs.row(j);
                for (a, b) in acc.bits[lo..hi].iter_mut().zip(src) {
                    *a |= b;
                }
            }
        }
    }

    pub fn or_assign(&mut self, rhs: &TypeMatrix) {
        for (a, b) in self.bits.iter_mut().zip(&rhs.bits) {
            *a |= b;
        }
    }

    /// `true` iff every set entry of `self` is also set in `rhs`.
    pub fn le(&self, rhs: &TypeMatrix) -> bool {
        self.bits.iter().zip(&rhs.bits).all(|(a, b)| a & !b == 0)
    }

    /// Canonical serialization: dimension followed by row-major bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.bits.len() * 8);
        out.extend_from_slice(&(self.dim as u64).to_le_bytes());
        for b in &self.bits {
            out.extend_from_slice(&b.to_le_bytes());
        }
        out
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for TypeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TypeMatrix({})", self.dim)?;
        for i in 0..self.dim {
            let row: String = (0..self.dim).map(|j| if self.get(i, j) { '1' } else { '.' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}
