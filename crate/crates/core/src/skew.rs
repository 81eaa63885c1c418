//! Skew-symmetric rational matrices: Pfaffian, inversion, span certificates.
//!
//! The residue data of a log-symplectic germ is a skew matrix `B`; this
//! module provides the exact linear algebra the analysis needs.  Input
//! matrices are accepted either as full matrices (validated for
//! skew-symmetry) or as upper-triangular data via [`SkewMatrix::complete_skew`],
//! where the strict upper triangle is authoritative and the rest is filled
//! in by skewness.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rat};

/// A validated skew-symmetric matrix of even size over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewMatrix {
    size: usize,
    rows: Vec<Vec<Rat>>,
}

impl SkewMatrix {
    /// Validating constructor for a full matrix: square of even size, zero
    /// diagonal, `a_ij = -a_ji` everywhere.
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::BadShape(alloc::format!(
                "expected a square matrix of size {size}"
            )));
        }
        if size % 2 != 0 {
            return Err(Error::OddDimension(size));
        }
        for i in 0..size {
            for j in i..size {
                if rows[i][j] != -rows[j][i].clone() {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(SkewMatrix { size, rows })
    }

    /// Builds from data whose strict upper triangle is authoritative: the
    /// diagonal is zeroed and the lower triangle is the negated transpose,
    /// regardless of what the input carries there.
    pub fn complete_skew(data: Vec<Vec<Rat>>) -> Result<Self> {
        let size = data.len();
        if data.iter().any(|r| r.len() != size) {
            return Err(Error::BadShape(alloc::format!(
                "expected a square matrix of size {size}"
            )));
        }
        if size % 2 != 0 {
            return Err(Error::OddDimension(size));
        }
        let mut rows = vec![vec![Rat::zero(); size]; size];
        for i in 0..size {
            for j in (i + 1)..size {
                rows[i][j] = data[i][j].clone();
                rows[j][i] = -data[i][j].clone();
            }
        }
        Ok(SkewMatrix { size, rows })
    }

    /// Matrix size `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry `a_ij`.
    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.size).map(|i| self.rows[i][j].clone()).collect()
    }

    /// All rows.
    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// The matrix `q * B`.
    pub fn scale(&self, q: &Rat) -> SkewMatrix {
        SkewMatrix {
            size: self.size,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.clone() * q).collect())
                .collect(),
        }
    }

    /// Pfaffian via recursive expansion along the first active row.
    ///
    /// `Pf(B)^2 = det(B)`, and `Pf` of the standard symplectic block matrix
    /// is 1; the empty matrix has Pfaffian 1.
    pub fn pfaffian(&self) -> Rat {
        let active: Vec<usize> = (0..self.size).collect();
        self.pf_on(&active)
    }

    fn pf_on(&self, active: &[usize]) -> Rat {
        if active.is_empty() {
            return rat_int(1);
        }
        let k0 = active[0];
        let mut total = Rat::zero();
        for (t, &kt) in active.iter().enumerate().skip(1) {
            let a = &self.rows[k0][kt];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = active[1..].iter().copied().filter(|&x| x != kt).collect();
            let signed = if (t - 1) % 2 == 0 { a.clone() } else { -a.clone() };
            total += signed * self.pf_on(&rest);
        }
        total
    }

    /// Exact inverse, which is again skew; errors when the matrix is
    /// singular (equivalently, when the Pfaffian vanishes).
    pub fn invert(&self) -> Result<SkewMatrix> {
        let n = self.size;
        // Gauss-Jordan on [B | I].
        let mut work: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { rat_int(1) } else { Rat::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !work[r][col].is_zero()) else {
                return Err(Error::DegenerateStructure);
            };
            work.swap(col, src);
            let pivot = work[col][col].clone();
            for c in 0..2 * n {
                work[col][c] = work[col][c].clone() / pivot.clone();
            }
            for r in 0..n {
                if r == col || work[r][col].is_zero() {
                    continue;
                }
                let factor = work[r][col].clone();
                for c in 0..2 * n {
                    let delta = factor.clone() * work[col][c].clone();
                    work[r][c] = work[r][c].clone() - delta;
                }
            }
        }
        let inv_rows: Vec<Vec<Rat>> = work.into_iter().map(|r| r[n..].to_vec()).collect();
        // Exact arithmetic: the inverse of a skew matrix is skew, so the
        // validating constructor cannot fail here.
        SkewMatrix::new(inv_rows)
    }
}

/// Certificate that `c = lambda * r1 + mu * r2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanCertificate {
    pub lambda: Rat,
    pub mu: Rat,
}

/// Solves `c = lambda * r1 + mu * r2` exactly, returning a certificate when
/// one exists (`None` when `c` is outside the span).  When `r1` and `r2`
/// are linearly independent the certificate is unique.
pub fn span_solve(c: &[Rat], r1: &[Rat], r2: &[Rat]) -> Option<SpanCertificate> {
    assert_eq!(c.len(), r1.len());
    assert_eq!(c.len(), r2.len());
    let candidate = span_candidate(c, r1, r2)?;
    let fits = (0..c.len()).all(|k| {
        candidate.lambda.clone() * r1[k].clone() + candidate.mu.clone() * r2[k].clone() == c[k]
    });
    fits.then_some(candidate)
}

/// Produces one candidate solution of the 2-unknown system (verified by the
/// caller against every coordinate).
fn span_candidate(c: &[Rat], r1: &[Rat], r2: &[Rat]) -> Option<SpanCertificate> {
    let n = c.len();
    let Some(k0) = (0..n).find(|&k| !r1[k].is_zero()) else {
        // r1 = 0: solve mu * r2 = c with lambda = 0.
        let mu = match (0..n).find(|&k| !r2[k].is_zero()) {
            Some(k) => c[k].clone() / r2[k].clone(),
            None => Rat::zero(),
        };
        return Some(SpanCertificate { lambda: Rat::zero(), mu });
    };
    // Eliminate lambda from every other equation.
    let mu = (0..n)
        .filter(|&k| k != k0)
        .find_map(|k| {
            let r2_red = r2[k].clone() - r1[k].clone() / r1[k0].clone() * r2[k0].clone();
            if r2_red.is_zero() {
                None
            } else {
                let c_red = c[k].clone() - r1[k].clone() / r1[k0].clone() * c[k0].clone();
                Some(c_red / r2_red)
            }
        })
        .unwrap_or_else(Rat::zero);
    let lambda = (c[k0].clone() - mu.clone() * r2[k0].clone()) / r1[k0].clone();
    Some(SpanCertificate { lambda, mu })
}
