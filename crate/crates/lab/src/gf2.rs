//! Dense GF(2) linear algebra on word-packed rows: Gaussian elimination,
//! solving with explicit nullspace bases, incremental rank tracking, and
//! uniform sampling from affine solution sets.

use crate::bits::BitVec64;
use rand::Rng;

/// Row-major bit matrix over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<BitVec64>,
    cols: usize,
}

/// Outcome of solving `m x = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Solution {
    /// One particular solution plus a basis of the homogeneous nullspace;
    /// the full solution set is particular + span(nullspace).
    Solved {
        particular: BitVec64,
        nullspace: Vec<BitVec64>,
    },
    Inconsistent,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows: (0..rows).map(|_| BitVec64::zeros(cols)).collect(),
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec64>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Gf2Matrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    pub fn row(&self, r: usize) -> &BitVec64 {
        &self.rows[r]
    }

    pub fn push_row(&mut self, row: BitVec64) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, v: &BitVec64) -> BitVec64 {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec64::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            out.set(i, row.dot(v));
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut basis = RankBasis::new(self.cols);
        for row in &self.rows {
            basis.insert(row.clone());
        }
        basis.rank()
    }

    /// Solve `self * x = rhs`, returning a particular solution and a
    /// nullspace basis, or `Inconsistent`. `rhs` length must equal the row
    /// count.
    pub fn solve(&self, rhs: &BitVec64) -> Gf2Solution {
        assert_eq!(rhs.len(), self.nrows());
        let ncols = self.cols;
        // Augmented elimination: work rows carry the rhs bit at the end.
        let mut work: Vec<(BitVec64, bool)> = self
            .rows
            .iter()
            .cloned()
            .zip((0..self.nrows()).map(|i| rhs.get(i)))
            .collect();

        let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
        let mut next = 0usize;
        for col in 0..ncols {
            let Some(r) = (next..work.len()).find(|&r| work[r].0.get(col)) else {
                continue;
            };
            work.swap(next, r);
            let (prow, pb) = work[next].clone();
            for (i, (row, b)) in work.iter_mut().enumerate() {
                if i != next && row.get(col) {
                    row.xor_with(&prow);
                    *b ^= pb;
                }
            }
            pivot_of_col[col] = Some(next);
            next += 1;
        }
        // Any leftover nonzero rhs on a zero row means no solution.
        for (row, b) in &work[next..] {
            debug_assert!(row.is_zero());
            if *b {
                return Gf2Solution::Inconsistent;
            }
        }
        let mut particular = BitVec64::zeros(ncols);
        for col in 0..ncols {
            if let Some(r) = pivot_of_col[col] {
                particular.set(col, work[r].1);
            }
        }
        // One basis vector per free column: the free bit plus the pivot
        // bits needed to stay in the nullspace.
        let mut nullspace = Vec::new();
        for free in 0..ncols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = BitVec64::zeros(ncols);
            v.set(free, true);
            for col in 0..ncols {
                if let Some(r) = pivot_of_col[col] {
                    if work[r].0.get(free) {
                        v.set(col, true);
                    }
                }
            }
            nullspace.push(v);
        }
        Gf2Solution::Solved {
            particular,
            nullspace,
        }
    }

    /// Uniformly random solution of `self * x = rhs`, if one exists.
    pub fn sample_solution<R: Rng>(&self, rhs: &BitVec64, rng: &mut R) -> Option<BitVec64> {
        match self.solve(rhs) {
            Gf2Solution::Inconsistent => None,
            Gf2Solution::Solved {
                mut particular,
                nullspace,
            } => {
                for v in &nullspace {
                    if rng.gen::<bool>() {
                        particular.xor_with(v);
                    }
                }
                Some(particular)
            }
        }
    }
}

/// Incremental row basis in echelon form; tracks the rank of a growing set
/// of vectors in O(rank) words per insertion.
#[derive(Debug, Clone)]
pub struct RankBasis {
    cols: usize,
    // (pivot column, reduced row)
    rows: Vec<(usize, BitVec64)>,
}

impl RankBasis {
    pub fn new(cols: usize) -> Self {
        RankBasis {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Insert a vector; returns true iff it increased the rank.
    pub fn insert(&mut self, mut v: BitVec64) -> bool {
        assert_eq!(v.len(), self.cols);
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_with(row);
            }
        }
        match v.first_one() {
            None => false,
            Some(pivot) => {
                // Back-reduce existing rows so lookups stay cheap.
                for (_, row) in self.rows.iter_mut() {
                    if row.get(pivot) {
                        row.xor_with(&v);
                    }
                }
                self.rows.push((pivot, v));
                true
            }
        }
    }

    /// Does `v` lie in the span of the inserted vectors?
    pub fn contains(&self, v: &BitVec64) -> bool {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_with(row);
            }
        }
        v.is_zero()
    }

    /// Basis of the nullspace of the matrix whose rows were inserted
    /// (vectors x with r . x = 0 for every inserted r).
    pub fn nullspace(&self) -> Vec<BitVec64> {
        let m = Gf2Matrix::from_rows(
            self.cols,
            self.rows.iter().map(|(_, r)| r.clone()).collect(),
        );
        match m.solve(&BitVec64::zeros(self.rows.len())) {
            Gf2Solution::Solved { nullspace, .. } => nullspace,
            Gf2Solution::Inconsistent => unreachable!("homogeneous system"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_vec<R: Rng>(len: usize, rng: &mut R) -> BitVec64 {
        let mut v = BitVec64::zeros(len);
        for i in 0..len {
            v.set(i, rng.gen());
        }
        v
    }

    #[test]
    fn identity_solve() {
        let m = Gf2Matrix::identity(5);
        let mut rhs = BitVec64::zeros(5);
        rhs.set(1, true);
        rhs.set(4, true);
        match m.solve(&rhs) {
            Gf2Solution::Solved {
                particular,
                nullspace,
            } => {
                assert_eq!(particular, rhs);
                assert!(nullspace.is_empty());
            }
            _ => panic!("identity must be solvable"),
        }
    }

    #[test]
    fn zero_matrix_full_nullspace() {
        let m = Gf2Matrix::zeros(3, 4);
        let rhs = BitVec64::zeros(3);
        match m.solve(&rhs) {
            Gf2Solution::Solved {
                particular,
                nullspace,
            } => {
                assert!(particular.is_zero());
                assert_eq!(nullspace.len(), 4);
            }
            _ => panic!(),
        }
        let mut bad = BitVec64::zeros(3);
        bad.set(0, true);
        assert_eq!(m.solve(&bad), Gf2Solution::Inconsistent);
    }

    #[test]
    fn multiply_back_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let rows = rng.gen_range(1..12);
            let cols = rng.gen_range(1..12);
            let m = Gf2Matrix::from_rows(
                cols,
                (0..rows).map(|_| random_vec(cols, &mut rng)).collect(),
            );
            let rhs = random_vec(rows, &mut rng);
            if let Gf2Solution::Solved {
                particular,
                nullspace,
            } = m.solve(&rhs)
            {
                assert_eq!(m.mul_vec(&particular), rhs);
                for v in &nullspace {
                    let mut x = particular.clone();
                    x.xor_with(v);
                    assert_eq!(m.mul_vec(&x), rhs);
                }
                // Rank-nullity.
                assert_eq!(m.rank() + nullspace.len(), cols);
            }
        }
    }

    #[test]
    fn full_rank_square_systems_unique() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut found = 0;
        while found < 50 {
            let n = rng.gen_range(1..10);
            let m = Gf2Matrix::from_rows(
                n,
                (0..n).map(|_| random_vec(n, &mut rng)).collect(),
            );
            if m.rank() < n {
                continue;
            }
            found += 1;
            let rhs = random_vec(n, &mut rng);
            match m.solve(&rhs) {
                Gf2Solution::Solved {
                    particular,
                    nullspace,
                } => {
                    assert!(nullspace.is_empty());
                    assert_eq!(m.mul_vec(&particular), rhs);
                }
                _ => panic!("full-rank square system must be solvable"),
            }
        }
    }

    #[test]
    fn rank_basis_tracks_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let cols = rng.gen_range(1..20);
            let count = rng.gen_range(0..30);
            let vecs: Vec<BitVec64> = (0..count).map(|_| random_vec(cols, &mut rng)).collect();
            let mut basis = RankBasis::new(cols);
            for v in &vecs {
                basis.insert(v.clone());
            }
            let m = Gf2Matrix::from_rows(cols, vecs);
            assert_eq!(basis.rank(), m.rank());
            // Nullspace vectors annihilate every inserted row.
            for x in basis.nullspace() {
                assert!(m.mul_vec(&x).is_zero());
            }
        }
    }
}
