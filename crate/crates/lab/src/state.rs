//! The learnable state families and their exact samplers.
//!
//! Three families back the experiments: `PauliMixedState` is (I + s P)/2^n
//! for a hidden non-identity Pauli P and sign s; `StabilizerProductState`
//! is a tensor product of single-qubit stabilizer states; `DenseState` is
//! an explicit density matrix capped at small dimension and used only as a
//! property-test oracle.
//!
//! Every sampler takes an explicit RNG stream, and strategies draw copies
//! through [`Sampler`], which counts state preparations so copy ledgers are
//! structural rather than bookkept by hand.

use crate::bits::BitVec64;
use crate::dense::{self, CMat};
use crate::pauli::{Pauli, PauliString};
use crate::tableau::CliffordTableau;
use crate::{Error, Result};
use rand::Rng;
use std::fmt;

/// A Bell-measurement outcome: per qubit, the label W for which the
/// observed pair state is (I (x) W)|Omega>.
pub type BellOutcome = PauliString;

/// Hard cap for the dense oracle: single-system qubits and total dimension.
pub const DENSE_QUBIT_CAP: usize = 6;
pub const DENSE_DIM_CAP: usize = 4096;

/// One of the six single-qubit stabilizer states, named by axis and sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizerLabel {
    pub axis: Pauli,
    pub sign: i8,
}

impl StabilizerLabel {
    pub const ALL: [StabilizerLabel; 6] = [
        StabilizerLabel { axis: Pauli::Z, sign: 1 },
        StabilizerLabel { axis: Pauli::Z, sign: -1 },
        StabilizerLabel { axis: Pauli::X, sign: 1 },
        StabilizerLabel { axis: Pauli::X, sign: -1 },
        StabilizerLabel { axis: Pauli::Y, sign: 1 },
        StabilizerLabel { axis: Pauli::Y, sign: -1 },
    ];

    pub fn new(axis: Pauli, sign: i8) -> Result<Self> {
        if axis == Pauli::I {
            return Err(Error::InvalidParameter("stabilizer axis cannot be I".into()));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidParameter("stabilizer sign must be +/-1".into()));
        }
        Ok(StabilizerLabel { axis, sign })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let axis = chars
            .next()
            .ok_or_else(|| Error::Parse("empty stabilizer label".into()))?;
        let sign = match chars.next() {
            Some('+') => 1,
            Some('-') => -1,
            _ => return Err(Error::Parse(format!("bad stabilizer label {s:?}"))),
        };
        if chars.next().is_some() {
            return Err(Error::Parse(format!("bad stabilizer label {s:?}")));
        }
        StabilizerLabel::new(Pauli::from_letter(axis)?, sign)
    }

    /// Dense 2x2 density matrix (I + sign * axis)/2.
    pub fn density(&self) -> CMat {
        let m = dense::identity(2) + dense::single_pauli(self.axis).scale(self.sign as f64);
        m.scale(0.5)
    }
}

impl fmt::Display for StabilizerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.axis.letter(),
            if self.sign > 0 { '+' } else { '-' }
        )
    }
}

/// The mixed-state family (I + sign * P)/2^n with P a non-identity Pauli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliMixedState {
    pauli: PauliString,
    sign: i8,
}

impl PauliMixedState {
    pub fn new(pauli: PauliString, sign: i8) -> Result<Self> {
        if pauli.is_identity() {
            return Err(Error::InvalidParameter(
                "hidden Pauli cannot be the identity".into(),
            ));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidParameter("sign must be +/-1".into()));
        }
        Ok(PauliMixedState { pauli, sign })
    }

    /// Uniform non-identity hidden Pauli; sign is +1 unless `both_signs`.
    pub fn random<R: Rng>(n: usize, both_signs: bool, rng: &mut R) -> Self {
        let pauli = loop {
            let mut x = BitVec64::zeros(n);
            let mut z = BitVec64::zeros(n);
            for k in 0..n {
                x.set(k, rng.gen());
                z.set(k, rng.gen());
            }
            let p = PauliString::from_bits(x, z);
            if !p.is_identity() {
                break p;
            }
        };
        let sign = if both_signs && rng.gen::<bool>() { -1 } else { 1 };
        PauliMixedState { pauli, sign }
    }

    pub fn n(&self) -> usize {
        self.pauli.n()
    }

    pub fn hidden(&self) -> &PauliString {
        &self.pauli
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }
}

/// Tensor product of single-qubit stabilizer states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerProductState {
    labels: Vec<StabilizerLabel>,
}

impl StabilizerProductState {
    pub fn new(labels: Vec<StabilizerLabel>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidParameter("need at least one qubit".into()));
        }
        Ok(StabilizerProductState { labels })
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let labels = (0..n)
            .map(|_| StabilizerLabel::ALL[rng.gen_range(0..6)])
            .collect();
        StabilizerProductState { labels }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[StabilizerLabel] {
        &self.labels
    }
}

/// Explicit small-n density matrix, validated on construction.
#[derive(Debug, Clone)]
pub struct DenseState {
    mat: CMat,
    n: usize,
}

impl DenseState {
    pub fn new(mat: CMat) -> Result<Self> {
        let dim = mat.nrows();
        if mat.ncols() != dim || !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(
                "density matrix must be square with power-of-two dimension".into(),
            ));
        }
        let n = dim.trailing_zeros() as usize;
        if n > DENSE_QUBIT_CAP || dim > DENSE_DIM_CAP {
            return Err(Error::DenseCapExceeded(format!(
                "dim {dim} exceeds the dense oracle cap"
            )));
        }
        if (mat.trace().re - 1.0).abs() > 1e-10 || mat.trace().im.abs() > 1e-10 {
            return Err(Error::InvalidParameter("trace must be 1".into()));
        }
        if (&mat - mat.adjoint()).norm() > 1e-10 {
            return Err(Error::InvalidParameter("matrix must be Hermitian".into()));
        }
        if dense::hermitian_eigenvalues(&mat)
            .iter()
            .any(|&e| e < -1e-10)
        {
            return Err(Error::InvalidParameter(
                "matrix must be positive semidefinite".into(),
            ));
        }
        Ok(DenseState { mat, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }
}

/// Any state the strategies can learn.
#[derive(Debug, Clone)]
pub enum LearnableState {
    Mixed(PauliMixedState),
    Product(StabilizerProductState),
    Dense(DenseState),
}

impl LearnableState {
    pub fn n(&self) -> usize {
        match self {
            LearnableState::Mixed(s) => s.n(),
            LearnableState::Product(s) => s.n(),
            LearnableState::Dense(s) => s.n(),
        }
    }

    /// Exact Tr(P rho).
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        if p.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: p.n(),
            });
        }
        Ok(match self {
            LearnableState::Mixed(s) => {
                if p.is_identity() {
                    1.0
                } else if p == s.hidden() {
                    s.sign() as f64
                } else {
                    0.0
                }
            }
            LearnableState::Product(s) => {
                let mut acc = 1.0;
                for (k, label) in s.labels().iter().enumerate() {
                    let letter = p.letter(k);
                    acc *= if letter == Pauli::I {
                        1.0
                    } else if letter == label.axis {
                        label.sign as f64
                    } else {
                        0.0
                    };
                    if acc == 0.0 {
                        break;
                    }
                }
                acc
            }
            LearnableState::Dense(s) => {
                dense::trace_product_re(&dense::pauli_matrix(p), s.matrix())
            }
        })
    }

    /// Single-shot +/-1 measurement of the observable P on one fresh copy.
    pub fn measure_pauli<R: Rng>(&self, p: &PauliString, rng: &mut R) -> Result<i8> {
        let e = self.expectation(p)?;
        let p_plus = (1.0 + e) / 2.0;
        Ok(if rng.gen::<f64>() < p_plus { 1 } else { -1 })
    }

    /// One Bell-basis measurement round on two fresh copies.
    pub fn sample_bell_pairs<R: Rng>(&self, rng: &mut R) -> Result<BellOutcome> {
        let n = self.n();
        match self {
            LearnableState::Mixed(s) => {
                // Pr(W) = (1 + sign * bell_product_sign(P, W)) / 4^n: uniform
                // over the half-space where the product sign equals `sign`.
                // Sample uniformly, then reflect wrong-side draws by flipping
                // one bit inside the constraint support (a bijection between
                // the two half-spaces, so uniformity is preserved).
                let mut wx = BitVec64::zeros(n);
                let mut wz = BitVec64::zeros(n);
                for k in 0..n {
                    wx.set(k, rng.gen());
                    wz.set(k, rng.gen());
                }
                let target = s.hidden().y_weight_parity() ^ (s.sign() < 0);
                let parity = s.hidden().x_bits().dot(&wz) ^ s.hidden().z_bits().dot(&wx);
                if parity != target {
                    if let Some(k) = s.hidden().x_bits().first_one() {
                        wz.flip(k);
                    } else {
                        let k = s.hidden().z_bits().first_one().expect("non-identity");
                        wx.flip(k);
                    }
                }
                let w = PauliString::from_bits(wx, wz);
                debug_assert_eq!(
                    s.hidden().bell_product_sign(&w).unwrap(),
                    s.sign()
                );
                Ok(w)
            }
            LearnableState::Product(s) => {
                // Per qubit the two outcomes with bell_sign(axis, W) = +1
                // are equally likely; the label sign never matters.
                let mut w = PauliString::identity(n);
                for (k, label) in s.labels().iter().enumerate() {
                    let options = bell_support(label.axis);
                    w.set_letter(k, options[rng.gen_range(0..2)]);
                }
                Ok(w)
            }
            LearnableState::Dense(s) => {
                if n > 5 {
                    return Err(Error::DenseCapExceeded(
                        "dense Bell sampling enumerates 4^n outcomes; n <= 5".into(),
                    ));
                }
                let probs = dense_bell_distribution(s);
                let mut u = rng.gen::<f64>();
                let mut pick = 0u64;
                for (i, pr) in probs.iter().enumerate() {
                    if u < *pr {
                        pick = i as u64;
                        break;
                    }
                    u -= pr;
                }
                Ok(PauliString::from_index(n, pick))
            }
        }
    }

    /// Dense-matrix form, for oracle comparisons.
    pub fn to_dense(&self) -> Result<DenseState> {
        let n = self.n();
        if n > DENSE_QUBIT_CAP {
            return Err(Error::DenseCapExceeded(format!("n = {n}")));
        }
        match self {
            LearnableState::Dense(s) => Ok(s.clone()),
            LearnableState::Mixed(s) => {
                let dim = 1usize << n;
                let m = (dense::identity(dim)
                    + dense::pauli_matrix(s.hidden()).scale(s.sign() as f64))
                .scale(1.0 / dim as f64);
                DenseState::new(m)
            }
            LearnableState::Product(s) => {
                let mut m = s.labels()[0].density();
                for label in &s.labels()[1..] {
                    m = dense::kron(&m, &label.density());
                }
                DenseState::new(m)
            }
        }
    }

    /// Parse a textual state descriptor: `mixed:+XZ` or `product:Z+,X-`.
    pub fn parse(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("mixed:") {
            let sign = match rest.chars().next() {
                Some('+') => 1,
                Some('-') => -1,
                _ => {
                    return Err(Error::Parse(format!(
                        "mixed state needs a sign: {s:?}"
                    )))
                }
            };
            let pauli = PauliString::from_letters(&rest[1..])?;
            Ok(LearnableState::Mixed(PauliMixedState::new(pauli, sign)?))
        } else if let Some(rest) = s.strip_prefix("product:") {
            let labels = rest
                .split(',')
                .map(StabilizerLabel::parse)
                .collect::<Result<Vec<_>>>()?;
            Ok(LearnableState::Product(StabilizerProductState::new(labels)?))
        } else {
            Err(Error::Parse(format!("unknown state descriptor {s:?}")))
        }
    }
}

impl fmt::Display for LearnableState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LearnableState::Mixed(s) => write!(
                f,
                "mixed:{}{}",
                if s.sign() > 0 { '+' } else { '-' },
                s.hidden()
            ),
            LearnableState::Product(s) => {
                write!(f, "product:")?;
                for (i, label) in s.labels().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{label}")?;
                }
                Ok(())
            }
            LearnableState::Dense(_) => write!(f, "dense:<matrix>"),
        }
    }
}

/// The two Bell labels W with bell_sign(axis, W) = +1.
fn bell_support(axis: Pauli) -> [Pauli; 2] {
    match axis {
        Pauli::X => [Pauli::I, Pauli::X],
        Pauli::Z => [Pauli::I, Pauli::Z],
        Pauli::Y => [Pauli::X, Pauli::Z],
        Pauli::I => unreachable!("axis is never I"),
    }
}

/// Exact Bell-outcome distribution of rho (x) rho for a dense state,
/// indexed by the outcome's enumeration index.
pub fn dense_bell_distribution(s: &DenseState) -> Vec<f64> {
    let n = s.n();
    let dim = 1usize << n;
    let rho = s.matrix();
    let rho_t = rho.transpose();
    let mut probs = Vec::with_capacity(1 << (2 * n));
    for idx in 0..1u64 << (2 * n) {
        let w = PauliString::from_index(n, idx);
        // <Omega_W| (rho (x) rho) |Omega_W> = Tr(O^dag rho O rho^T) where O
        // is the 2^n x 2^n reshape of the paired Bell vector.
        let mut o = CMat::zeros(dim, dim);
        for i1 in 0..dim {
            for i2 in 0..dim {
                let mut amp = dense::ONE;
                for k in 0..n {
                    let b1 = (i1 >> (n - 1 - k)) & 1;
                    let b2 = (i2 >> (n - 1 - k)) & 1;
                    let bell = dense::bell_state(w.letter(k));
                    amp *= bell[(b1 << 1) | b2];
                }
                o[(i1, i2)] = amp;
            }
        }
        let val = (o.adjoint() * rho * &o * &rho_t).trace();
        debug_assert!(val.im.abs() < 1e-10);
        probs.push(val.re.max(0.0));
    }
    probs
}

/// Copy-counting wrapper: every state preparation consumed by a strategy
/// goes through here, so `copies()` is the ledger.
pub struct Sampler<'a> {
    state: &'a LearnableState,
    copies: u64,
}

impl<'a> Sampler<'a> {
    pub fn new(state: &'a LearnableState) -> Self {
        Sampler { state, copies: 0 }
    }

    pub fn state(&self) -> &LearnableState {
        self.state
    }

    pub fn copies(&self) -> u64 {
        self.copies
    }

    /// Two-copy Bell round.
    pub fn bell_round<R: Rng>(&mut self, rng: &mut R) -> Result<BellOutcome> {
        self.copies += 2;
        self.state.sample_bell_pairs(rng)
    }

    /// Single-copy measurement of the observable P.
    pub fn measure<R: Rng>(&mut self, p: &PauliString, rng: &mut R) -> Result<i8> {
        self.copies += 1;
        self.state.measure_pauli(p, rng)
    }

    /// Single-copy measurement in a rotated Clifford basis.
    pub fn measure_clifford<R: Rng>(
        &mut self,
        t: &CliffordTableau,
        rng: &mut R,
    ) -> Result<BitVec64> {
        self.copies += 1;
        crate::tableau::measure_in_clifford_basis(self.state, t, rng)
    }

    /// Single copy, each qubit read out in a per-qubit Pauli basis.
    /// Only defined for product states, where outcomes factorize.
    pub fn measure_qubitwise<R: Rng>(&mut self, bases: &[Pauli], rng: &mut R) -> Result<Vec<i8>> {
        let LearnableState::Product(s) = self.state else {
            return Err(Error::InvalidParameter(
                "qubitwise readout is for product states".into(),
            ));
        };
        if bases.len() != s.n() {
            return Err(Error::DimensionMismatch {
                expected: s.n(),
                got: bases.len(),
            });
        }
        self.copies += 1;
        Ok(bases
            .iter()
            .zip(s.labels())
            .map(|(b, label)| {
                if *b == label.axis {
                    label.sign
                } else if rng.gen::<bool>() {
                    1
                } else {
                    -1
                }
            })
            .collect())
    }
}
