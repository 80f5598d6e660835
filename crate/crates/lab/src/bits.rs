//! Word-packed bit vectors sized at construction time.
//!
//! All Pauli and GF(2) machinery stores bits in little-endian `u64` words:
//! bit `k` lives in word `k / 64` at position `k % 64`. Operations never
//! grow the backing storage.

/// Fixed-length bit vector backed by `u64` words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec64 {
    len: usize,
    words: Vec<u64>,
}

impl BitVec64 {
    pub fn zeros(len: usize) -> Self {
        BitVec64 {
            len,
            words: vec![0; len.div_ceil(64).max(1)],
        }
    }

    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        let mut v = BitVec64 { len, words };
        v.mask_tail();
        v
    }

    /// Low `len` bits of `value`; `len` must be at most 64.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64);
        let mut v = BitVec64 {
            len,
            words: vec![value],
        };
        v.mask_tail();
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn as_u64(&self) -> u64 {
        debug_assert!(self.len <= 64);
        self.words[0]
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / 64];
        if v {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_with(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Parity of the AND of two vectors, i.e. the GF(2) dot product.
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc & 1 == 1
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterator over indices of set bits.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
        let need = self.len.div_ceil(64).max(1);
        debug_assert_eq!(self.words.len(), need);
    }
}
