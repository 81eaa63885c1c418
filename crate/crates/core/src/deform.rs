//! Constructive search for monomial first-order deformations.
//!
//! A monomial bivector `z^a d/dz_i /\ d/dz_j` corresponds, under contraction
//! with the structure form, to the 2-form
//!
//! ```text
//! omega = z^(a - e_i - e_j) rho_i /\ rho_j
//! ```
//!
//! with `rho_i` the row 1-forms of the residue matrix.  The bivector is a
//! first-order deformation exactly when `omega` is closed, and it moves the
//! polar divisor nontrivially when `omega` is moreover not exact in the
//! complex of forms with (at worst first-order) poles on the branch locus.
//! This module decides both questions exactly:
//!
//! * *Closedness.*  `d(omega) = z^c gamma_c /\ rho_i /\ rho_j` with
//!   `c = a - e_i - e_j` and `gamma_c = sum_k c_k eta_k`; for a fully
//!   logarithmic model (`m = N`) this vanishes iff `c` lies in the span of
//!   rows `i` and `j` of `B`, which [`span_solve`] certifies.  The span
//!   route and the direct expansion of `d` are *both* evaluated on every
//!   candidate and must agree — a mismatch aborts, since it would mean an
//!   internal bug rather than a property of the input.
//! * *Exactness.*  `d` preserves the exponent multidegree, so any
//!   primitive of `omega` can be assumed multidegree-homogeneous piece by
//!   piece: if `omega = d(beta)` with `beta` in the pole-bounded complex,
//!   then each multidegree component `omega_mu` equals `d(beta_mu)`, and
//!   `beta_mu = z^mu * (constant 1-form)` ranges over a finite-dimensional
//!   space cut out by pole admissibility.  Exactness is therefore a finite
//!   rational rank computation per multidegree — no truncation parameter
//!   and no approximation is involved.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::form::{ExpVec, IndexSet, LogForm};
use crate::linalg;
use crate::model::Model;
use crate::rational::{rat_int, Rat};
use crate::skew::{span_solve, SpanCertificate};

/// One closed monomial candidate found by [`search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationCandidate {
    pub i: usize,
    pub j: usize,
    /// The monomial exponent `a` of the bivector `z^a d_i /\ d_j`.
    pub exponent: ExpVec,
    pub closed: bool,
    /// Span certificate for closedness (fully logarithmic models only).
    pub certificate: Option<SpanCertificate>,
    /// Exactness of the associated 2-form; `None` when untested.
    pub exact: Option<bool>,
}

fn check_candidate_args(model: &Model, i: usize, j: usize, a: &ExpVec) -> Result<()> {
    let n = model.dim();
    if i >= j {
        return Err(Error::DomainError(alloc::format!(
            "pair indices must satisfy i < j, got ({i}, {j})"
        )));
    }
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, bound: n });
    }
    if a.len() != n {
        return Err(Error::DimensionMismatch { left: a.len(), right: n });
    }
    if !a.is_nonneg() {
        return Err(Error::DomainError(alloc::string::String::from(
            "candidate exponent must be entrywise nonnegative",
        )));
    }
    Ok(())
}

/// The candidate 2-form `z^(a - e_i - e_j) rho_i /\ rho_j`.
pub fn candidate_form(model: &Model, i: usize, j: usize, a: &ExpVec) -> Result<LogForm> {
    check_candidate_args(model, i, j, a)?;
    let n = model.dim();
    let offset = a.sub(&ExpVec::unit(n, i)).sub(&ExpVec::unit(n, j));
    let wedge = model.row_form(i)?.wedge(&model.row_form(j)?)?;
    // Rows of a nonsingular skew matrix are linearly independent.
    debug_assert!(!wedge.is_zero(), "row forms of a valid model cannot be dependent");
    Ok(wedge.shift(&offset))
}

/// Decides closedness of the candidate `(i, j, a)`.
///
/// For `m = N` the span certificate `c = lambda row_i + mu row_j`
/// (with `c = a - e_i - e_j`) is computed *and* cross-checked against the
/// direct exterior derivative; disagreement panics, as it can only arise
/// from an internal bug.  For `m < N` only the direct derivative decides,
/// and no certificate is produced.
pub fn is_closed(
    model: &Model,
    i: usize,
    j: usize,
    a: &ExpVec,
) -> Result<(bool, Option<SpanCertificate>)> {
    check_candidate_args(model, i, j, a)?;
    let candidate = candidate_form(model, i, j, a)?;
    let direct = candidate.d().is_zero();
    if model.branches() != model.dim() {
        return Ok((direct, None));
    }
    let n = model.dim();
    let c: Vec<Rat> = (0..n)
        .map(|k| {
            let unit = i64::from(k == i) + i64::from(k == j);
            rat_int(a.get(k) - unit)
        })
        .collect();
    let cert = span_solve(&c, model.matrix().row(i), model.matrix().row(j));
    assert_eq!(
        cert.is_some(),
        direct,
        "internal consistency failure: span certificate and direct exterior \
         derivative disagree for pair ({i}, {j})"
    );
    Ok((direct, cert))
}

/// Generator 1-forms of the multidegree-`mu` slice of the pole-bounded
/// complex in degree 1.
///
/// The degree-1 part of the complex is spanned over holomorphic functions
/// by the contractions of the structure form with the coordinate vector
/// fields; picking out the multidegree-`mu` component of `z^p` times each
/// generator (over all monomials `p >= 0`) leaves finitely many spanning
/// 1-forms, returned here.
fn multidegree_one_forms(model: &Model, mu: &ExpVec) -> Vec<LogForm> {
    let n = model.dim();
    let m = model.branches();
    let mut gens: Vec<LogForm> = Vec::new();
    let pole_shift = |k: usize| {
        if k < m {
            ExpVec::unit(n, k)
        } else {
            ExpVec::zero(n)
        }
    };
    for k in 0..n {
        // Branch-direction component: one generator when the required
        // monomial z^(mu + shift_k) is holomorphic.
        if mu.add(&pole_shift(k)).is_nonneg() {
            let branch_part: Vec<_> = (0..m)
                .filter_map(|l| {
                    let b = model.matrix().entry(k, l);
                    if b.is_zero() {
                        return None;
                    }
                    Some(crate::form::LogTerm {
                        coeff: b.clone(),
                        exp: mu.clone(),
                        idx: IndexSet::singleton(l),
                    })
                })
                .collect();
            if !branch_part.is_empty() {
                gens.push(LogForm::from_terms(n, branch_part).expect("well-formed"));
            }
        }
    }
    // Non-branch directions contribute singly, coordinate by coordinate.
    for l in m..n {
        let reachable = (0..n).any(|k| {
            !model.matrix().entry(k, l).is_zero()
                && mu.add(&pole_shift(k)).sub(&ExpVec::unit(n, l)).is_nonneg()
        });
        if reachable {
            gens.push(
                LogForm::term(n, rat_int(1), mu.clone(), IndexSet::singleton(l))
                    .expect("well-formed"),
            );
        }
    }
    gens
}

/// Coefficient vectors of `forms` over the union of their term keys.
fn vectorize(forms: &[LogForm], target: &LogForm) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let mut keys: Vec<(ExpVec, IndexSet)> = Vec::new();
    for f in forms.iter().chain(core::iter::once(target)) {
        for t in f.terms() {
            let key = (t.exp, t.idx);
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
    }
    keys.sort();
    let to_vec = |f: &LogForm| -> Vec<Rat> {
        keys.iter().map(|(exp, idx)| f.coeff(exp, idx)).collect()
    };
    (forms.iter().map(to_vec).collect(), to_vec(target))
}

/// Decides exactness of a (closed) candidate in the pole-bounded complex.
///
/// Splits the candidate by multidegree and tests each component for
/// membership in the image of `d` from the corresponding finite slice of
/// degree-1 forms.
pub fn is_exact(model: &Model, i: usize, j: usize, a: &ExpVec) -> Result<bool> {
    let candidate = candidate_form(model, i, j, a)?;
    for (mu, part) in candidate.multidegree_split() {
        let images: Vec<LogForm> =
            multidegree_one_forms(model, &mu).iter().map(LogForm::d).collect();
        let (rows, target) = vectorize(&images, &part);
        if !linalg::in_row_span(&rows, &target) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All exponent vectors of length `dim`, supported on `support`, with
/// entries `>= 0` summing to `total`; ascending lexicographic order.
pub(crate) fn exponents_with_total(dim: usize, support: &[usize], total: i64) -> Vec<ExpVec> {
    fn go(support: &[usize], remaining: i64, current: &mut Vec<i64>, out: &mut Vec<ExpVec>) {
        match support {
            [] => {
                if remaining == 0 {
                    out.push(ExpVec::new(current.clone()));
                }
            }
            [first, rest @ ..] => {
                for val in 0..=remaining {
                    current[*first] = val;
                    go(rest, remaining - val, current, out);
                    current[*first] = 0;
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut current = alloc::vec![0i64; dim];
    go(support, total, &mut current, &mut out);
    out
}

/// Sweeps all pairs `i < j` and monomials `a >= 0` with `a_i = a_j = 0`
/// and `1 <= |a| <= max_degree`, returning the closed candidates (with
/// exactness evaluated) in canonical order: pair, then degree, then
/// lexicographic.
///
/// Candidates whose 2-form leaves the pole-bounded complex (pairs
/// involving a non-branch coordinate) are discarded.
pub fn search(model: &Model, max_degree: i64) -> Vec<DeformationCandidate> {
    let n = model.dim();
    let m = model.branches();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let support: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
            for degree in 1..=max_degree.max(0) {
                for a in exponents_with_total(n, &support, degree) {
                    let form = candidate_form(model, i, j, &a).expect("validated arguments");
                    if !form.is_honest(m) {
                        continue;
                    }
                    let (closed, certificate) =
                        is_closed(model, i, j, &a).expect("validated arguments");
                    if !closed {
                        continue;
                    }
                    let exact = is_exact(model, i, j, &a).expect("validated arguments");
                    out.push(DeformationCandidate {
                        i,
                        j,
                        exponent: a,
                        closed,
                        certificate,
                        exact: Some(exact),
                    });
                }
            }
        }
    }
    out
}

/// Integer (or rational) relation among two columns of `B` and unit
/// vectors, derived from a closedness certificate.
///
/// From `c = lambda row_i + mu row_j` and `row_k = -col_k` one gets
///
/// ```text
/// (-lambda) col_i + (-mu) col_j + e_i + e_j - a = 0,
/// ```
///
/// which is the column relation reported here; `verified` re-checks it
/// entry by entry with exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnRelation {
    pub i: usize,
    pub j: usize,
    /// Coefficient of column `i` (that is, `-lambda`).
    pub coefficient_i: Rat,
    /// Coefficient of column `j` (that is, `-mu`).
    pub coefficient_j: Rat,
    /// The candidate exponent `a` entering as `-a`.
    pub exponent: ExpVec,
    /// Whether both coefficients are integers.
    pub integer_coefficients: bool,
    /// Exact re-verification of the relation.
    pub verified: bool,
}

/// Renders and re-verifies the column relation of a certified candidate.
pub fn column_relation(model: &Model, cand: &DeformationCandidate) -> Result<ColumnRelation> {
    let cert = cand.certificate.as_ref().ok_or(Error::MissingCertificate)?;
    let n = model.dim();
    let coefficient_i = -cert.lambda.clone();
    let coefficient_j = -cert.mu.clone();
    let col_i = model.matrix().column(cand.i);
    let col_j = model.matrix().column(cand.j);
    let verified = (0..n).all(|k| {
        let unit = rat_int(i64::from(k == cand.i) + i64::from(k == cand.j));
        let lhs = coefficient_i.clone() * col_i[k].clone()
            + coefficient_j.clone() * col_j[k].clone()
            + unit
            - rat_int(cand.exponent.get(k));
        lhs.is_zero()
    });
    Ok(ColumnRelation {
        i: cand.i,
        j: cand.j,
        coefficient_i: coefficient_i.clone(),
        coefficient_j: coefficient_j.clone(),
        exponent: cand.exponent.clone(),
        integer_coefficients: coefficient_i.is_integer() && coefficient_j.is_integer(),
        verified,
    })
}
