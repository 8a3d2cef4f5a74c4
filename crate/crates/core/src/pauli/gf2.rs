//! Dense bit vectors over GF(2) and the row-reduction routines built on them.

use std::fmt;

/// A fixed-length vector over GF(2), packed into 64-bit words.
///
/// Bits past `len` are always zero so the derived equality and hashing
/// compare only meaningful entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the bitwise AND, i.e. the GF(2) dot product.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Number of positions set in both vectors.
    pub fn and_count(&self, other: &BitVec) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        let mut out = BitVec::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                out.set(i - start, true);
            }
        }
        out
    }

    /// Low 64 bits as an integer with bit `i` at position `i`.
    pub fn to_u64(&self) -> u64 {
        debug_assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Incrementally maintained row-echelon basis of a GF(2) subspace.
///
/// Each stored row has a distinct pivot (its lowest set bit) and no other
/// stored row has that bit set below it, so membership tests are a single
/// sweep.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    width: usize,
    rows: Vec<(usize, BitVec)>,
}

impl EchelonBasis {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` against the basis, returning the remainder.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (pivot, row) in &self.rows {
            if r.get(*pivot) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor_assign(&r);
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }
}

/// Rank of a list of equal-width rows.
pub fn rank(rows: &[BitVec]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut basis = EchelonBasis::new(first.len());
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

/// Basis of `{ v : row · v = 0 for every row }`, the right null space.
///
/// The basis is read off the reduced row-echelon form, one vector per free
/// column in increasing column order, so the output is deterministic.
pub fn null_space(rows: &[BitVec], width: usize) -> Vec<BitVec> {
    let mut m: Vec<BitVec> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(sel) = (r..m.len()).find(|&i| m[i].get(col)) else {
            continue;
        };
        m.swap(r, sel);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }

    let mut is_pivot = vec![false; width];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..width).filter(|&c| !is_pivot[c]) {
        let mut v = BitVec::zeros(width);
        v.set(free, true);
        for (row_idx, &p) in pivots.iter().enumerate() {
            if m[row_idx].get(free) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}

/// Some `v` with `rows[i] · v = rhs[i]` for every `i`, if the system is
/// consistent. Free variables are set to zero.
pub fn solve(rows: &[BitVec], rhs: &[bool], width: usize) -> Option<BitVec> {
    debug_assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<(BitVec, bool)> = rows.iter().cloned().zip(rhs.iter().copied()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(sel) = (r..m.len()).find(|&i| m[i].0.get(col)) else {
            continue;
        };
        m.swap(r, sel);
        let (pivot_row, pivot_rhs) = m[r].clone();
        for (i, (row, b)) in m.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot_row);
                *b ^= pivot_rhs;
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    if m[r..].iter().any(|(_, b)| *b) {
        return None;
    }
    let mut v = BitVec::zeros(width);
    for (i, &p) in pivots.iter().enumerate() {
        v.set(p, m[i].1);
    }
    Some(v)
}
