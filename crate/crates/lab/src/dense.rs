//! Dense complex-matrix helpers used by the small-n oracles and the
//! information-theoretic checks. Nothing here scales past a few qubits and
//! nothing here is on a sampling hot path.
//!
//! Basis convention: qubit 0 is the most significant bit of a computational
//! basis index, matching a Kronecker product taken in qubit order.

use crate::bits::BitVec64;
use crate::pauli::{Pauli, PauliString};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

/// 2x2 matrix of a single Pauli letter.
pub fn single_pauli(p: Pauli) -> CMat {
    let i = Complex64::new(0.0, 1.0);
    match p {
        Pauli::I => CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ONE]),
        Pauli::X => CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        Pauli::Y => CMat::from_row_slice(2, 2, &[ZERO, -i, i, ZERO]),
        Pauli::Z => CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    }
}

/// Dense 2^n x 2^n matrix of an n-qubit Pauli string.
pub fn pauli_matrix(p: &PauliString) -> CMat {
    let mut m = single_pauli(p.letter(0));
    for k in 1..p.n() {
        m = kron(&m, &single_pauli(p.letter(k)));
    }
    m
}

/// Computational-basis index of a bit vector (qubit 0 most significant).
pub fn basis_index(bits: &BitVec64) -> usize {
    let n = bits.len();
    let mut idx = 0usize;
    for k in 0..n {
        idx = (idx << 1) | bits.get(k) as usize;
    }
    let _ = n;
    idx
}

/// Two-qubit Bell state (I (x) W)|Omega>, |Omega> = (|00>+|11>)/sqrt(2).
pub fn bell_state(w: Pauli) -> CVec {
    let omega = CVec::from_vec(vec![
        ONE / Complex64::new(2f64.sqrt(), 0.0),
        ZERO,
        ZERO,
        ONE / Complex64::new(2f64.sqrt(), 0.0),
    ]);
    let op = kron(&identity(2), &single_pauli(w));
    op * omega
}

/// Dense eigenvalue of sigma (x) sigma on the Bell state labelled by w.
/// Panics if the state is not an eigenvector, which would mean the labels
/// are wrong.
pub fn bell_sign_oracle(sigma: Pauli, w: Pauli) -> i8 {
    let v = bell_state(w);
    let op = kron(&single_pauli(sigma), &single_pauli(sigma));
    let u = &op * &v;
    let plus = (&u - &v).norm();
    let minus = (&u + &v).norm();
    if plus < 1e-12 {
        1
    } else if minus < 1e-12 {
        -1
    } else {
        panic!("Bell state for {w:?} is not an eigenvector of {sigma:?}x{sigma:?}");
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    debug_assert!((m - m.adjoint()).norm() < 1e-9 * (1.0 + m.norm()));
    let mut ev: Vec<f64> = m
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Von Neumann entropy -Tr(rho ln rho) in nats. Eigenvalues within
/// numerical noise of zero are dropped.
pub fn von_neumann_entropy_nats(rho: &CMat) -> f64 {
    hermitian_eigenvalues(rho)
        .into_iter()
        .filter(|&p| p > 1e-14)
        .map(|p| -p * p.ln())
        .sum()
}

/// Haar-ish random unitary via QR of a Ginibre matrix with the standard
/// phase correction. Distribution exactness is not needed anywhere; this
/// only feeds invariance tests.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> CMat {
    let g = CMat::from_fn(dim, dim, |_, _| {
        Complex64::new(gauss(rng), gauss(rng))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..dim {
            q[(i, j)] *= phase.conj();
        }
    }
    q
}

/// Random unit vector under the Haar-ish measure.
pub fn random_pure_state<R: Rng>(dim: usize, rng: &mut R) -> CVec {
    let mut v = CVec::from_fn(dim, |_, _| Complex64::new(gauss(rng), gauss(rng)));
    let norm = v.norm();
    v /= Complex64::new(norm, 0.0);
    v
}

fn gauss<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; good enough for test-state generation.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Real part of Tr(O rho); the imaginary part must vanish for Hermitian
/// arguments and is asserted small in debug builds.
pub fn trace_product_re(o: &CMat, rho: &CMat) -> f64 {
    let t = (o * rho).trace();
    debug_assert!(t.im.abs() < 1e-9);
    t.re
}

/// Dense single-qubit gates used by the tableau oracle tests.
pub fn gate_h() -> CMat {
    let s = 1.0 / 2f64.sqrt();
    CMat::from_row_slice(2, 2, &[
        Complex64::new(s, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(-s, 0.0),
    ])
}

pub fn gate_s() -> CMat {
    CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, Complex64::new(0.0, 1.0)])
}

/// Embed a single-qubit operator at position k of n qubits.
pub fn embed_single(n: usize, k: usize, op: &CMat) -> CMat {
    let mut m = if k == 0 { op.clone() } else { identity(1 << k) };
    if k > 0 {
        m = kron(&m, op);
    }
    if k + 1 < n {
        m = kron(&m, &identity(1 << (n - k - 1)));
    }
    m
}

/// Dense CX with the given control and target positions among n qubits.
pub fn gate_cx(n: usize, control: usize, target: usize) -> CMat {
    assert_ne!(control, target);
    let p0 = CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]);
    let p1 = CMat::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE]);
    let x = single_pauli(Pauli::X);
    embed_single(n, control, &p0) + embed_single(n, control, &p1) * embed_single(n, target, &x)
}
