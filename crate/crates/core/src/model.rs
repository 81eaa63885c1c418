//! The local model of a log-symplectic germ: ambient dimension, branch
//! count, and residue matrix.
//!
//! A [`Model`] packages `(N, m, B)`: an even ambient dimension `N = 2n`, a
//! number `m <= N` of normal-crossing branches (the first `m` coordinates),
//! and a nondegenerate skew residue matrix `B`.  The associated 2-form in
//! the dlog basis is
//!
//! ```text
//! Phi = sum_{i<j} b_ij w_i /\ w_j,   w_k = dlog z_k (k < m),  w_k = dz_k (k >= m)
//! ```
//!
//! and `dz_k` is represented internally as `z^{e_k} eta_k`, so `Phi` is an
//! honest closed log form whose biresidue at a branch pair `(i, j)` is
//! exactly `b_ij`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::form::{ExpVec, IndexSet, LogForm, LogTerm};
use crate::rational::Rat;
use crate::skew::SkewMatrix;

/// A validated local model `(N, m, B)` with nonvanishing Pfaffian.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Model {
    branches: usize,
    matrix: SkewMatrix,
    pfaffian: Rat,
}

impl Model {
    /// Validates and builds a model: `branches <= N` and `Pf(B) != 0`.
    pub fn new(matrix: SkewMatrix, branches: usize) -> Result<Self> {
        if branches > matrix.size() {
            return Err(Error::BranchCountTooLarge { branches, dim: matrix.size() });
        }
        let pfaffian = matrix.pfaffian();
        if pfaffian.is_zero() {
            return Err(Error::DegenerateStructure);
        }
        Ok(Model { branches, matrix, pfaffian })
    }

    /// Ambient dimension `N`.
    pub fn dim(&self) -> usize {
        self.matrix.size()
    }

    /// Half-dimension `n = N/2`.
    pub fn half_dim(&self) -> usize {
        self.matrix.size() / 2
    }

    /// Number of normal-crossing branches `m` (coordinates `0..m`).
    pub fn branches(&self) -> usize {
        self.branches
    }

    /// The residue matrix `B`.
    pub fn matrix(&self) -> &SkewMatrix {
        &self.matrix
    }

    /// The (cached) Pfaffian of `B`.
    pub fn pfaffian(&self) -> &Rat {
        &self.pfaffian
    }

    /// The same model with matrix `q * B` (`q != 0`).
    pub fn rescale(&self, q: &Rat) -> Result<Model> {
        Model::new(self.matrix.scale(q), self.branches)
    }

    /// Exponent shift of the basis 1-form at coordinate `k`: zero for a
    /// branch (`eta_k` is dlog there), `e_k` otherwise (`dz_k = z^{e_k} eta_k`).
    fn basis_shift(&self, k: usize) -> ExpVec {
        if k < self.branches {
            ExpVec::zero(self.dim())
        } else {
            ExpVec::unit(self.dim(), k)
        }
    }

    /// The structure form `Phi` as a [`LogForm`] in the internal basis.
    pub fn phi(&self) -> LogForm {
        let n = self.dim();
        let terms = (0..n).flat_map(|i| {
            ((i + 1)..n).filter_map(move |j| {
                let b = self.matrix.entry(i, j);
                if b.is_zero() {
                    return None;
                }
                Some(LogTerm {
                    coeff: b.clone(),
                    exp: self.basis_shift(i).add(&self.basis_shift(j)),
                    idx: IndexSet::new(alloc::vec![i, j]).expect("i < j"),
                })
            })
        });
        LogForm::from_terms(n, terms).expect("model data is well-formed")
    }

    /// Row 1-form `rho_i = sum_l b_il w_l` in the internal basis; this is
    /// `z_i` times the contraction of `Phi` with `d/dz_i` when `i` is a
    /// branch, and the contraction itself otherwise.
    pub fn row_form(&self, i: usize) -> Result<LogForm> {
        let n = self.dim();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        let terms = (0..n).filter_map(|l| {
            let b = self.matrix.entry(i, l);
            if b.is_zero() {
                return None;
            }
            Some(LogTerm { coeff: b.clone(), exp: self.basis_shift(l), idx: IndexSet::singleton(l) })
        });
        LogForm::from_terms(n, terms)
    }
}
