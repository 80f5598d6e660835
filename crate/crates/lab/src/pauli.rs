//! Bit-level algebra of n-qubit Pauli strings in symplectic GF(2) form.
//!
//! A string is a pair of n-bit vectors (x, z); qubit k carries the letter
//! with bits (x_k, z_k) under the encoding I=(0,0), X=(1,0), Z=(0,1),
//! Y=(1,1). Two strings commute iff the symplectic form
//! sum_k (x_k z'_k + z_k x'_k) vanishes mod 2.
//!
//! Bell-basis outcomes are labelled by the letter W such that the observed
//! two-qubit state is (I (x) W)|Omega>, |Omega> = (|00>+|11>)/sqrt(2). The
//! eigenvalue of sigma (x) sigma on that state is a fixed 4x4 sign table,
//! baked in below and revalidated against a dense oracle in the tests. Note
//! the table is not the commutation rule: sigma = Y picks up an extra sign
//! from transposition (sigma W sigma^T = +/- W fixes the convention).

use crate::bits::BitVec64;
use crate::{Error, Result};
use std::fmt;

/// Single-qubit Pauli letter. Discriminants follow the x + 2z bit encoding,
/// which is also the documented enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Pauli {
    I = 0,
    X = 1,
    Z = 2,
    Y = 3,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Z, Pauli::Y];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn from_index(i: u8) -> Self {
        Self::from_bits(i & 1 == 1, i & 2 == 2)
    }

    pub fn x_bit(self) -> bool {
        (self as u8) & 1 == 1
    }

    pub fn z_bit(self) -> bool {
        (self as u8) & 2 == 2
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Z => 'Z',
            Pauli::Y => 'Y',
        }
    }

    pub fn from_letter(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Z' => Ok(Pauli::Z),
            'Y' => Ok(Pauli::Y),
            other => Err(Error::InvalidLetter(other)),
        }
    }
}

/// Eigenvalue of sigma (x) sigma on the Bell state (I (x) W)|Omega>,
/// indexed as BELL_SIGN[sigma][W] with the x + 2z letter index.
///
/// Derivation: sigma W sigma^T = s W; the transpose flips the sign of Y,
/// so s = (commutation sign of sigma, W) * (-1 if sigma = Y).
pub const BELL_SIGN: [[i8; 4]; 4] = [
    // W:  I   X   Z   Y
    [1, 1, 1, 1],     // sigma = I
    [1, 1, -1, -1],   // sigma = X
    [1, -1, 1, -1],   // sigma = Z
    [-1, 1, 1, -1],   // sigma = Y
];

/// Eigenvalue of sigma (x) sigma on the Bell state labelled by `w`.
#[inline]
pub fn bell_sign(sigma: Pauli, w: Pauli) -> i8 {
    BELL_SIGN[sigma as usize][w as usize]
}

/// An n-qubit Pauli observable, phase-free, in symplectic bit form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec64,
    z: BitVec64,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "qubit count must be positive");
        PauliString {
            x: BitVec64::zeros(n),
            z: BitVec64::zeros(n),
        }
    }

    pub fn from_bits(x: BitVec64, z: BitVec64) -> Self {
        assert_eq!(x.len(), z.len());
        assert!(!x.is_empty());
        PauliString { x, z }
    }

    /// String of uppercase letters, leftmost letter = qubit 0.
    pub fn from_letters(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("empty Pauli string".into()));
        }
        let n = s.chars().count();
        let mut x = BitVec64::zeros(n);
        let mut z = BitVec64::zeros(n);
        for (k, c) in s.chars().enumerate() {
            let p = Pauli::from_letter(c)?;
            x.set(k, p.x_bit());
            z.set(k, p.z_bit());
        }
        Ok(PauliString { x, z })
    }

    /// Enumeration index: per-qubit digit x_k + 2 z_k, qubit 0 fastest.
    /// Inverse of [`PauliString::index`]; only usable for n <= 32.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!(n <= 32);
        debug_assert!(index < 1u64 << (2 * n));
        let mut x = 0u64;
        let mut z = 0u64;
        for k in 0..n {
            let digit = (index >> (2 * k)) & 3;
            x |= (digit & 1) << k;
            z |= ((digit >> 1) & 1) << k;
        }
        PauliString {
            x: BitVec64::from_u64(n, x),
            z: BitVec64::from_u64(n, z),
        }
    }

    pub fn index(&self) -> u64 {
        let n = self.n();
        assert!(n <= 32);
        let (x, z) = (self.x.as_u64(), self.z.as_u64());
        let mut idx = 0u64;
        for k in 0..n {
            let digit = ((x >> k) & 1) | (((z >> k) & 1) << 1);
            idx |= digit << (2 * k);
        }
        idx
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec64 {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec64 {
        &self.z
    }

    pub fn letter(&self, k: usize) -> Pauli {
        Pauli::from_bits(self.x.get(k), self.z.get(k))
    }

    pub fn set_letter(&mut self, k: usize, p: Pauli) {
        self.x.set(k, p.x_bit());
        self.z.set(k, p.z_bit());
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> u32 {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones())
            .sum()
    }

    /// Parity of the number of Y letters; used by the Bell-sample decoder.
    pub fn y_weight_parity(&self) -> bool {
        let mut acc = 0u32;
        for (a, b) in self.x.words().iter().zip(self.z.words()) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc == 1
    }

    /// True iff the symplectic form of the two strings vanishes mod 2.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(!(self.x.dot(&other.z) ^ self.z.dot(&other.x)))
    }

    /// Product over qubits of `bell_sign(self_k, w_k)`, the eigenvalue of
    /// `self (x) self` on the Bell-outcome state labelled by `w`.
    pub fn bell_product_sign(&self, w: &PauliString) -> Result<i8> {
        if self.n() != w.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: w.n(),
            });
        }
        // (-1)^(symplectic form) * (-1)^(Y count of self), per the table.
        let sym = self.x.dot(&w.z) ^ self.z.dot(&w.x);
        let neg = sym ^ self.y_weight_parity();
        Ok(if neg { -1 } else { 1 })
    }

    /// All 4^n strings in enumeration order; n <= 12 to keep this sane.
    pub fn enumerate(n: usize) -> impl Iterator<Item = PauliString> {
        assert!(n <= 12);
        (0..1u64 << (2 * n)).map(move |i| PauliString::from_index(n, i))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.n() {
            write!(f, "{}", self.letter(k).letter())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PauliString::from_letters(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;

    #[test]
    fn letter_round_trip() {
        let p = PauliString::from_letters("IZ").unwrap();
        assert!(!p.x_bits().get(0) && !p.x_bits().get(1));
        assert!(!p.z_bits().get(0) && p.z_bits().get(1));
        assert_eq!(p.to_string(), "IZ");
        let y = PauliString::from_letters("Y").unwrap();
        assert!(y.x_bits().get(0) && y.z_bits().get(0));
        assert!(PauliString::from_letters("XQ").is_err());
    }

    #[test]
    fn enumeration_order_n1() {
        let order: Vec<String> = PauliString::enumerate(1).map(|p| p.to_string()).collect();
        assert_eq!(order, ["I", "X", "Z", "Y"]);
    }

    #[test]
    fn encode_decode_inverse_exhaustive() {
        for n in 1..=4 {
            for i in 0..1u64 << (2 * n) {
                let p = PauliString::from_index(n, i);
                assert_eq!(p.index(), i);
                let q = PauliString::from_letters(&p.to_string()).unwrap();
                assert_eq!(p, q);
            }
        }
    }

    #[test]
    fn commutes_matches_dense_oracle() {
        // Exhaustive over 2 qubits against the dense matrix commutator.
        for p in PauliString::enumerate(2) {
            for q in PauliString::enumerate(2) {
                let a = dense::pauli_matrix(&p);
                let b = dense::pauli_matrix(&q);
                let comm = (&a * &b - &b * &a).norm() < 1e-12;
                assert_eq!(p.commutes(&q).unwrap(), comm, "{p} vs {q}");
            }
        }
    }

    #[test]
    fn commutes_examples() {
        let z = PauliString::from_letters("Z").unwrap();
        let x = PauliString::from_letters("X").unwrap();
        assert!(z.commutes(&z).unwrap());
        assert!(!x.commutes(&z).unwrap());
        let xx = PauliString::from_letters("XX").unwrap();
        let zz = PauliString::from_letters("ZZ").unwrap();
        assert!(xx.commutes(&zz).unwrap());
        assert!(xx.commutes(&z).is_err());
    }

    #[test]
    fn bell_sign_table_matches_dense_oracle() {
        // All 16 (sigma, W) pairs against the eigenvalue of sigma (x) sigma
        // on (I (x) W)|Omega>, computed densely.
        for sigma in Pauli::ALL {
            for w in Pauli::ALL {
                let oracle = dense::bell_sign_oracle(sigma, w);
                assert_eq!(
                    bell_sign(sigma, w),
                    oracle,
                    "sigma={sigma:?} w={w:?}"
                );
            }
        }
    }

    #[test]
    fn bell_sign_spec_values() {
        assert_eq!(bell_sign(Pauli::Z, Pauli::I), 1);
        assert_eq!(bell_sign(Pauli::Z, Pauli::X), -1);
        assert_eq!(bell_sign(Pauli::Y, Pauli::Z), 1);
        for w in Pauli::ALL {
            assert_eq!(bell_sign(Pauli::I, w), 1);
        }
    }

    #[test]
    fn bell_product_sign_examples() {
        let id = PauliString::identity(2);
        let w = PauliString::from_letters("XY").unwrap();
        assert_eq!(id.bell_product_sign(&w).unwrap(), 1);
        let zz = PauliString::from_letters("ZZ").unwrap();
        let ii = PauliString::identity(2);
        assert_eq!(zz.bell_product_sign(&ii).unwrap(), 1);
        let zx = PauliString::from_letters("ZX").unwrap();
        let xi = PauliString::from_letters("XI").unwrap();
        assert_eq!(zx.bell_product_sign(&xi).unwrap(), -1);
    }

    #[test]
    fn bell_product_sign_is_product_of_letters() {
        // Against the per-letter product for every pair at n = 2.
        for p in PauliString::enumerate(2) {
            for w in PauliString::enumerate(2) {
                let prod: i8 = (0..2)
                    .map(|k| bell_sign(p.letter(k), w.letter(k)))
                    .product();
                assert_eq!(p.bell_product_sign(&w).unwrap(), prod);
            }
        }
    }

    #[test]
    fn bell_product_ignores_identity_support() {
        // Identity letters contribute +1, so the sign only depends on the
        // non-identity support of p.
        let p = PauliString::from_letters("XIZ").unwrap();
        for w in PauliString::enumerate(3) {
            let restricted: i8 = [0usize, 2]
                .iter()
                .map(|&k| bell_sign(p.letter(k), w.letter(k)))
                .product();
            assert_eq!(p.bell_product_sign(&w).unwrap(), restricted);
        }
    }
}
