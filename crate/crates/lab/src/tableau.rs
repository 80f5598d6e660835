//! Clifford tableaux over the symplectic GF(2) representation: images of
//! the X/Z generators with sign bits, exact uniform sampling, conjugation
//! of Pauli strings, inversion, and computational-basis measurement in a
//! rotated Clifford frame.
//!
//! Internally a Pauli with bits (x, z) is the Hermitian operator
//! i^(|x AND z|) X^x Z^z, so products carry a power of i that is tracked
//! mod 4; Clifford images of Hermitian Paulis always come out with phase
//! +/-1, which is asserted in debug builds.

use crate::bits::BitVec64;
use crate::dense::{self, CMat};
use crate::gf2::Gf2Matrix;
use crate::pauli::PauliString;
use crate::state::LearnableState;
use crate::{Error, Result};
use rand::Rng;

/// A Pauli string together with a +/-1 prefactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPauli {
    pub pauli: PauliString,
    pub neg: bool,
}

impl SignedPauli {
    pub fn sign(&self) -> i8 {
        if self.neg {
            -1
        } else {
            1
        }
    }
}

/// Unnormalized operator form i^phase * X^x Z^z with phase mod 4.
#[derive(Debug, Clone)]
struct OpForm {
    x: BitVec64,
    z: BitVec64,
    phase: u8,
}

impl OpForm {
    fn identity(n: usize) -> Self {
        OpForm {
            x: BitVec64::zeros(n),
            z: BitVec64::zeros(n),
            phase: 0,
        }
    }

    fn from_hermitian(p: &PauliString, neg: bool) -> Self {
        let y_count: u32 = p
            .x_bits()
            .words()
            .iter()
            .zip(p.z_bits().words())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        OpForm {
            x: p.x_bits().clone(),
            z: p.z_bits().clone(),
            phase: ((y_count as u8) + if neg { 2 } else { 0 }) & 3,
        }
    }

    /// Right-multiply by another operator: Z^z1 X^x2 = (-1)^(z1.x2) X^x2 Z^z1.
    fn mul_assign(&mut self, rhs: &OpForm) {
        let swaps: u32 = self
            .z
            .words()
            .iter()
            .zip(rhs.x.words())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        self.phase = (self.phase + rhs.phase + 2 * (swaps as u8 & 1)) & 3;
        self.x.xor_with(&rhs.x);
        self.z.xor_with(&rhs.z);
    }

    /// Back to Hermitian form; the leftover phase must be +/-1.
    fn into_signed(self) -> SignedPauli {
        let y_count: u32 = self
            .x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        let residual = (self.phase + 4 - ((y_count as u8) & 3)) & 3;
        debug_assert!(residual == 0 || residual == 2, "non-Hermitian image");
        SignedPauli {
            pauli: PauliString::from_bits(self.x, self.z),
            neg: residual == 2,
        }
    }
}

/// A Clifford unitary, stored as the signed images of the 2n generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordTableau {
    n: usize,
    /// Images C X_j C^dag, then C Z_j C^dag.
    images: Vec<SignedPauli>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        assert!(n > 0);
        let mut images = Vec::with_capacity(2 * n);
        for j in 0..n {
            let mut p = PauliString::identity(n);
            p.set_letter(j, crate::pauli::Pauli::X);
            images.push(SignedPauli { pauli: p, neg: false });
        }
        for j in 0..n {
            let mut p = PauliString::identity(n);
            p.set_letter(j, crate::pauli::Pauli::Z);
            images.push(SignedPauli { pauli: p, neg: false });
        }
        CliffordTableau { n, images }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_image(&self, j: usize) -> &SignedPauli {
        &self.images[j]
    }

    pub fn z_image(&self, j: usize) -> &SignedPauli {
        &self.images[self.n + j]
    }

    /// Conjugate a Pauli string: returns (Q, s) with C P C^dag = s Q.
    pub fn conjugate(&self, p: &PauliString) -> Result<(PauliString, i8)> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.n(),
            });
        }
        let mut acc = OpForm::identity(self.n);
        // P = i^(#Y) prod_j X_j^(x_j) prod_j Z_j^(z_j); conjugation is
        // multiplicative, so multiply the images in the same order.
        for j in 0..self.n {
            if p.x_bits().get(j) {
                let img = &self.images[j];
                acc.mul_assign(&OpForm::from_hermitian(&img.pauli, img.neg));
            }
        }
        for j in 0..self.n {
            if p.z_bits().get(j) {
                let img = &self.images[self.n + j];
                acc.mul_assign(&OpForm::from_hermitian(&img.pauli, img.neg));
            }
        }
        let y_count: u32 = p
            .x_bits()
            .words()
            .iter()
            .zip(p.z_bits().words())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        acc.phase = (acc.phase + (y_count as u8 & 3)) & 3;
        let signed = acc.into_signed();
        let sign = signed.sign();
        Ok((signed.pauli, sign))
    }

    /// Append a Hadamard on qubit k (post-compose the unitary).
    pub fn apply_h(&mut self, k: usize) {
        for img in &mut self.images {
            let x = img.pauli.x_bits().get(k);
            let z = img.pauli.z_bits().get(k);
            img.neg ^= x & z;
            let mut p = img.pauli.clone();
            p.set_letter(
                k,
                crate::pauli::Pauli::from_bits(z, x),
            );
            img.pauli = p;
        }
    }

    /// Append a phase gate S on qubit k.
    pub fn apply_s(&mut self, k: usize) {
        for img in &mut self.images {
            let x = img.pauli.x_bits().get(k);
            let z = img.pauli.z_bits().get(k);
            img.neg ^= x & z;
            let mut p = img.pauli.clone();
            p.set_letter(k, crate::pauli::Pauli::from_bits(x, z ^ x));
            img.pauli = p;
        }
    }

    /// Append a CX with the given control and target.
    pub fn apply_cx(&mut self, c: usize, t: usize) {
        assert_ne!(c, t);
        for img in &mut self.images {
            let xc = img.pauli.x_bits().get(c);
            let zc = img.pauli.z_bits().get(c);
            let xt = img.pauli.x_bits().get(t);
            let zt = img.pauli.z_bits().get(t);
            img.neg ^= xc & zt & (xt == zc);
            let mut p = img.pauli.clone();
            p.set_letter(t, crate::pauli::Pauli::from_bits(xt ^ xc, zt));
            p.set_letter(c, crate::pauli::Pauli::from_bits(xc, zc ^ zt));
            img.pauli = p;
        }
    }

    /// Symplectic-form invariant: images pair exactly like the generators.
    pub fn satisfies_symplectic_invariant(&self) -> bool {
        let n = self.n;
        for j in 0..2 * n {
            for k in j..2 * n {
                let want = (j + n == k) || (k + n == j);
                let commute = self.images[j]
                    .pauli
                    .commutes(&self.images[k].pauli)
                    .unwrap();
                if commute != !want {
                    return false;
                }
            }
        }
        true
    }

    /// The inverse Clifford. Bit part is the symplectic inverse
    /// Omega S^T Omega; signs are fixed by conjugating each candidate
    /// preimage forward.
    pub fn inverse(&self) -> CliffordTableau {
        let n = self.n;
        let sigma = |i: usize| if i < n { i + n } else { i - n };
        // S[r][c] = bit r of the image of generator c.
        let bit = |r: usize, c: usize| {
            let img = &self.images[c].pauli;
            if r < n {
                img.x_bits().get(r)
            } else {
                img.z_bits().get(r - n)
            }
        };
        let mut images = Vec::with_capacity(2 * n);
        for i in 0..2 * n {
            let mut x = BitVec64::zeros(n);
            let mut z = BitVec64::zeros(n);
            for j in 0..2 * n {
                // S_inv[j][i] = S[sigma(i)][sigma(j)]
                if bit(sigma(i), sigma(j)) {
                    if j < n {
                        x.set(j, true);
                    } else {
                        z.set(j - n, true);
                    }
                }
            }
            let preimage = PauliString::from_bits(x, z);
            // Forward conjugation recovers the generator up to sign; that
            // sign is also the sign of the inverse image.
            let (q, s) = self.conjugate(&preimage).unwrap();
            debug_assert_eq!(q, generator_pauli(n, i));
            images.push(SignedPauli {
                pauli: preimage,
                neg: s < 0,
            });
        }
        CliffordTableau { n, images }
    }

    /// Exactly uniform random Clifford modulo global phase: a uniformly
    /// random symplectic basis (sequential hyperbolic-pair sampling) plus
    /// uniform sign bits.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> CliffordTableau {
        assert!(n > 0);
        let dim = 2 * n;
        // Constraint rows are symplectic duals: <u, v> = dual(v) . u.
        let dual = |v: &BitVec64| -> BitVec64 {
            let mut d = BitVec64::zeros(dim);
            for i in 0..n {
                d.set(i, v.get(n + i));
                d.set(n + i, v.get(i));
            }
            d
        };
        let mut x_rows: Vec<BitVec64> = Vec::with_capacity(n);
        let mut z_rows: Vec<BitVec64> = Vec::with_capacity(n);
        for _ in 0..n {
            let mut constraints: Vec<BitVec64> = x_rows
                .iter()
                .chain(z_rows.iter())
                .map(dual)
                .collect();
            let m = Gf2Matrix::from_rows(dim, constraints.clone());
            let zero_rhs = BitVec64::zeros(m.nrows());
            // f: any nonzero vector pairing trivially with all prior pairs.
            let f = loop {
                let cand = m.sample_solution(&zero_rhs, rng).expect("consistent");
                if !cand.is_zero() {
                    break cand;
                }
            };
            // g: pairs trivially with prior pairs and hyperbolically with f.
            constraints.push(dual(&f));
            let m2 = Gf2Matrix::from_rows(dim, constraints);
            let mut rhs = BitVec64::zeros(m2.nrows());
            rhs.set(m2.nrows() - 1, true);
            let g = m2
                .sample_solution(&rhs, rng)
                .expect("symplectic complement is nondegenerate");
            x_rows.push(f);
            z_rows.push(g);
        }
        let to_signed = |v: &BitVec64, rng: &mut R| {
            let mut x = BitVec64::zeros(n);
            let mut z = BitVec64::zeros(n);
            for i in 0..n {
                x.set(i, v.get(i));
                z.set(i, v.get(n + i));
            }
            SignedPauli {
                pauli: PauliString::from_bits(x, z),
                neg: rng.gen(),
            }
        };
        let mut images = Vec::with_capacity(dim);
        for v in &x_rows {
            images.push(to_signed(v, rng));
        }
        for v in &z_rows {
            images.push(to_signed(v, rng));
        }
        let t = CliffordTableau { n, images };
        debug_assert!(t.satisfies_symplectic_invariant());
        t
    }

    /// Canonical byte key, used by the uniformity frequency tests.
    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for img in &self.images {
            for w in img.pauli.x_bits().words() {
                out.extend_from_slice(&w.to_le_bytes());
            }
            for w in img.pauli.z_bits().words() {
                out.extend_from_slice(&w.to_le_bytes());
            }
            out.push(img.neg as u8);
        }
        out
    }
}

fn generator_pauli(n: usize, i: usize) -> PauliString {
    let mut p = PauliString::identity(n);
    if i < n {
        p.set_letter(i, crate::pauli::Pauli::X);
    } else {
        p.set_letter(i - n, crate::pauli::Pauli::Z);
    }
    p
}

/// Sample z with Pr(z) = <z| C rho C^dag |z>.
///
/// For the mixed family with C P C^dag = s' Q: if Q has any X or Y letter
/// the distribution is uniform; otherwise it is uniform on the half-space
/// of z with the parity <q, z> fixed by s * s'.
pub fn measure_in_clifford_basis<R: Rng>(
    state: &LearnableState,
    t: &CliffordTableau,
    rng: &mut R,
) -> Result<BitVec64> {
    let n = state.n();
    if t.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: t.n(),
        });
    }
    match state {
        LearnableState::Mixed(s) => {
            let (q, sp) = t.conjugate(s.hidden())?;
            let mut z = BitVec64::zeros(n);
            for k in 0..n {
                z.set(k, rng.gen());
            }
            if q.x_bits().is_zero() {
                let want_odd = s.sign() as i32 * sp as i32 == -1;
                let parity = q.z_bits().dot(&z);
                if parity != want_odd {
                    let k = q.z_bits().first_one().expect("Q is not the identity");
                    z.flip(k);
                }
            }
            Ok(z)
        }
        LearnableState::Dense(s) => {
            let probs = dense_clifford_distribution(s.matrix(), t)?;
            let mut u = rng.gen::<f64>();
            let mut pick = 0usize;
            for (i, pr) in probs.iter().enumerate() {
                if u < *pr {
                    pick = i;
                    break;
                }
                u -= pr;
            }
            let mut z = BitVec64::zeros(n);
            for k in 0..n {
                z.set(k, (pick >> (n - 1 - k)) & 1 == 1);
            }
            Ok(z)
        }
        LearnableState::Product(_) => Err(Error::InvalidParameter(
            "Clifford-basis sampling is implemented for mixed and dense states".into(),
        )),
    }
}

/// Exact Born distribution over basis outcomes (index: qubit 0 most
/// significant) computed from projector products of inverse images.
pub fn dense_clifford_distribution(rho: &CMat, t: &CliffordTableau) -> Result<Vec<f64>> {
    let n = t.n();
    if rho.nrows() != 1 << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            got: rho.nrows(),
        });
    }
    if n > 5 {
        return Err(Error::DenseCapExceeded("dense Clifford Born rule".into()));
    }
    let inv = t.inverse();
    let dim = 1usize << n;
    // B_j = C^dag Z_j C as dense matrices.
    let bs: Vec<CMat> = (0..n)
        .map(|j| {
            let img = inv.z_image(j);
            dense::pauli_matrix(&img.pauli).scale(img.sign() as f64)
        })
        .collect();
    let mut probs = Vec::with_capacity(dim);
    for z in 0..dim {
        let mut m = dense::identity(dim);
        for (j, b) in bs.iter().enumerate() {
            let sgn = if (z >> (n - 1 - j)) & 1 == 1 { -1.0 } else { 1.0 };
            m *= (dense::identity(dim) + b.scale(sgn)).scale(0.5);
        }
        probs.push(dense::trace_product_re(&m, rho).max(0.0));
    }
    Ok(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;
    use crate::state::PauliMixedState;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    /// Random circuit built simultaneously as a tableau and a dense unitary.
    fn random_circuit<R: Rng>(n: usize, gates: usize, rng: &mut R) -> (CliffordTableau, CMat) {
        let mut t = CliffordTableau::identity(n);
        let mut u = dense::identity(1 << n);
        for _ in 0..gates {
            match rng.gen_range(0..3) {
                0 => {
                    let k = rng.gen_range(0..n);
                    t.apply_h(k);
                    u = dense::embed_single(n, k, &dense::gate_h()) * u;
                }
                1 => {
                    let k = rng.gen_range(0..n);
                    t.apply_s(k);
                    u = dense::embed_single(n, k, &dense::gate_s()) * u;
                }
                _ => {
                    if n < 2 {
                        continue;
                    }
                    let c = rng.gen_range(0..n);
                    let mut tt = rng.gen_range(0..n);
                    while tt == c {
                        tt = rng.gen_range(0..n);
                    }
                    t.apply_cx(c, tt);
                    u = dense::gate_cx(n, c, tt) * u;
                }
            }
        }
        (t, u)
    }

    #[test]
    fn identity_tableau_conjugation() {
        let t = CliffordTableau::identity(3);
        for p in PauliString::enumerate(3) {
            let (q, s) = t.conjugate(&p).unwrap();
            assert_eq!(q, p);
            assert_eq!(s, 1);
        }
    }

    #[test]
    fn hadamard_and_phase_examples() {
        let mut h = CliffordTableau::identity(1);
        h.apply_h(0);
        let (q, s) = h.conjugate(&PauliString::from_letters("Z").unwrap()).unwrap();
        assert_eq!((q.to_string().as_str(), s), ("X", 1));

        let mut sgate = CliffordTableau::identity(1);
        sgate.apply_s(0);
        let (q, s) = sgate
            .conjugate(&PauliString::from_letters("X").unwrap())
            .unwrap();
        assert_eq!((q.to_string().as_str(), s), ("Y", 1));
    }

    #[test]
    fn conjugation_matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=3 {
            for _ in 0..8 {
                let (t, u) = random_circuit(n, 20, &mut rng);
                assert!(t.satisfies_symplectic_invariant());
                for p in PauliString::enumerate(n) {
                    let (q, s) = t.conjugate(&p).unwrap();
                    let lhs = &u * dense::pauli_matrix(&p) * u.adjoint();
                    let rhs = dense::pauli_matrix(&q).scale(s as f64);
                    assert!(
                        (lhs - rhs).norm() < 1e-9,
                        "n={n} p={p} -> {q} sign {s}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_undoes_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for n in 1..=4 {
            for _ in 0..10 {
                let t = CliffordTableau::random(n, &mut rng);
                let inv = t.inverse();
                assert!(inv.satisfies_symplectic_invariant());
                for p in PauliString::enumerate(n).take(64) {
                    let (q, s1) = t.conjugate(&p).unwrap();
                    let (back, s2) = inv.conjugate(&q).unwrap();
                    assert_eq!(back, p);
                    assert_eq!(s1 * s2, 1);
                }
            }
        }
    }

    #[test]
    fn random_tableau_satisfies_symplectic_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2, 3, 5, 8] {
            for _ in 0..20 {
                let t = CliffordTableau::random(n, &mut rng);
                assert!(t.satisfies_symplectic_invariant());
            }
        }
    }

    #[test]
    fn single_qubit_cliffords_uniform_over_24() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let draws = 100_000;
        let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
        for _ in 0..draws {
            let t = CliffordTableau::random(1, &mut rng);
            *counts.entry(t.key()).or_default() += 1;
        }
        assert_eq!(counts.len(), 24);
        for (_, c) in counts {
            let freq = c as f64 / draws as f64;
            assert!((freq - 1.0 / 24.0).abs() < 0.01, "freq {freq}");
        }
    }

    #[test]
    fn conjugation_orbit_uniform_at_n2() {
        // The orbit of ZI under random conjugation is enumerated by brute
        // force, then the empirical image distribution is compared against
        // uniform over that orbit.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let zi = PauliString::from_letters("ZI").unwrap();

        let mut orbit: std::collections::HashSet<(u64, i8)> = std::collections::HashSet::new();
        // BFS over the group generated by H/S/CX tableaux.
        let mut frontier = vec![(zi.index(), 1i8)];
        orbit.insert(frontier[0]);
        while let Some((idx, s)) = frontier.pop() {
            let p = PauliString::from_index(2, idx);
            for gate in 0..4 {
                let mut t = CliffordTableau::identity(2);
                match gate {
                    0 => t.apply_h(0),
                    1 => t.apply_s(0),
                    2 => t.apply_cx(0, 1),
                    _ => t.apply_cx(1, 0),
                }
                let (q, s2) = t.conjugate(&p).unwrap();
                let entry = (q.index(), s * s2);
                if orbit.insert(entry) {
                    frontier.push(entry);
                }
            }
        }
        // Every signed non-identity Pauli pair is reachable.
        assert_eq!(orbit.len(), 30);

        let draws = 120_000;
        let mut counts: HashMap<(u64, i8), u64> = HashMap::new();
        for _ in 0..draws {
            let t = CliffordTableau::random(2, &mut rng);
            let (q, s) = t.conjugate(&zi).unwrap();
            *counts.entry((q.index(), s)).or_default() += 1;
        }
        assert_eq!(counts.len(), orbit.len());
        for (_, c) in counts {
            let freq = c as f64 / draws as f64;
            assert!((freq - 1.0 / 30.0).abs() < 0.01, "freq {freq}");
        }
    }

    #[test]
    fn clifford_measurement_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let state = LearnableState::Mixed(
            PauliMixedState::new(PauliString::from_letters("Z").unwrap(), 1).unwrap(),
        );
        // Identity frame: rho = |0><0|, so z = 0 always.
        let t = CliffordTableau::identity(1);
        for _ in 0..200 {
            let z = measure_in_clifford_basis(&state, &t, &mut rng).unwrap();
            assert!(!z.get(0));
        }
        // Hadamard frame: C Z C^dag = X is off-diagonal, so z is uniform.
        let mut h = CliffordTableau::identity(1);
        h.apply_h(0);
        let mut ones = 0u64;
        let draws = 100_000;
        for _ in 0..draws {
            ones += measure_in_clifford_basis(&state, &h, &mut rng).unwrap().get(0) as u64;
        }
        let freq = ones as f64 / draws as f64;
        assert!((freq - 0.5).abs() < 0.01, "freq {freq}");
    }

    #[test]
    fn clifford_measurement_matches_dense_born_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let draws = 100_000usize;
        for trial in 0..50 {
            let n = 2;
            let state = PauliMixedState::random(n, true, &mut rng);
            let learnable = LearnableState::Mixed(state);
            let (t, u) = random_circuit(n, 16, &mut rng);
            // Direct dense Born probabilities <z| U rho U^dag |z>.
            let rho = learnable.to_dense().unwrap();
            let rotated = &u * rho.matrix() * u.adjoint();
            let direct: Vec<f64> = (0..4).map(|z| rotated[(z, z)].re.max(0.0)).collect();
            // Projector-product route through the tableau.
            let via_tableau = dense_clifford_distribution(rho.matrix(), &t).unwrap();
            for z in 0..4 {
                assert!(
                    (direct[z] - via_tableau[z]).abs() < 1e-9,
                    "trial {trial} z {z}"
                );
            }
            // Fast sampler agrees within TV 0.02.
            let mut counts = [0f64; 4];
            for _ in 0..draws {
                let z = measure_in_clifford_basis(&learnable, &t, &mut rng).unwrap();
                counts[dense::basis_index(&z)] += 1.0;
            }
            let tv: f64 = (0..4)
                .map(|z| (counts[z] / draws as f64 - direct[z]).abs())
                .sum::<f64>()
                / 2.0;
            assert!(tv < 0.02, "trial {trial} TV {tv}");
        }
    }
}
