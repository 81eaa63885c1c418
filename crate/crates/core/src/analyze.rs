//! Biresidue classification of branch pairs and the unobstructedness
//! criterion verdict.
//!
//! For a branch pair `{i, j}` with biresidue `c_ij = b_ij` and a third
//! branch `l`, the *triple ratio* is `(c_jl + c_li) / c_ij`.  A triple is
//! *special* when its ratio is a nonnegative integer (zero included).  A
//! residual pair (one with `c_ij != 0`) is *special* when at least one
//! triple exists and every triple is special.
//!
//! The criterion verdict scans all branch pairs and collects witnesses:
//! non-residual pairs, residual pairs meeting no triple locus (`m < 3`),
//! and special pairs.  The criterion *holds* exactly when no witness
//! exists; with at most one branch it holds vacuously.  A failing verdict
//! never claims obstructedness — it only reports that the unobstructedness
//! guarantee does not apply, with the witnesses that block it.
//!
//! [`g2_kernel_diagnostic`] connects the ratio arithmetic to geometry: it
//! sweeps monomial exponents `b >= 0` supported off the pair and reports
//! those whose associated 2-form `z^b phi_i /\ phi_j` is closed.  For a
//! fully logarithmic model the closed exponents are forced coordinatewise
//! to equal the triple ratios, which is the content of the special-pair
//! equivalence exercised by the integration suites.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::deform;
use crate::error::{Error, Result};
use crate::form::ExpVec;
use crate::model::Model;
use crate::rational::{as_i64, is_nonneg_integer, Rat};

/// Classification of one triple `(pair {i, j}, third branch)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleReport {
    pub i: usize,
    pub j: usize,
    pub third: usize,
    /// `(c_jl + c_li) / c_ij`; `None` when the pair is non-residual.
    pub ratio: Option<Rat>,
    /// Whether the ratio exists and is a nonnegative integer.
    pub special: bool,
}

/// Classification of one branch pair `{i, j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    /// The biresidue `c_ij = b_ij`.
    pub biresidue: Rat,
    /// Whether the biresidue is nonzero.
    pub residual: bool,
    /// Whether triple points exist at all (`m >= 3` in this local model).
    pub meets_triple_locus: bool,
    /// Specialness of the pair; `None` (not applicable) when non-residual.
    pub special: Option<bool>,
    /// One entry per third branch `l`, ascending.
    pub triples: Vec<TripleReport>,
}

/// Reason a pair witnesses failure of the criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessReason {
    /// The pair's biresidue vanishes.
    NonResidual,
    /// The pair is residual but no third branch exists (`m < 3`).
    NoTriplePoints,
    /// The pair is special: every triple ratio is a nonnegative integer.
    Special,
}

/// A pair blocking the criterion, with its reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub reason: WitnessReason,
}

/// Outcome of the criterion scan over all branch pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// True exactly when no witness exists.
    pub criterion_holds: bool,
    /// Blocking pairs in lexicographic order.
    pub witnesses: Vec<Witness>,
}

fn check_pair_indices(model: &Model, i: usize, j: usize) -> Result<()> {
    if i >= j {
        return Err(Error::DomainError(alloc::format!(
            "pair indices must satisfy i < j, got ({i}, {j})"
        )));
    }
    if j >= model.branches() {
        return Err(Error::IndexOutOfRange { index: j, bound: model.branches() });
    }
    Ok(())
}

/// Triple ratio `(c_jl + c_li) / c_ij` for third branch `l`; `None` when
/// the pair is non-residual.
pub fn triple_ratio(model: &Model, i: usize, j: usize, l: usize) -> Result<Option<Rat>> {
    check_pair_indices(model, i, j)?;
    if l >= model.branches() {
        return Err(Error::IndexOutOfRange { index: l, bound: model.branches() });
    }
    if l == i || l == j {
        return Err(Error::EqualIndices(l));
    }
    let b = model.matrix();
    let c_ij = b.entry(i, j);
    if c_ij.is_zero() {
        return Ok(None);
    }
    let numerator = b.entry(j, l).clone() + b.entry(l, i).clone();
    Ok(Some(numerator / c_ij.clone()))
}

/// Classifies the branch pair `{i, j}`: biresidue, residuality, and the
/// specialness of every triple through it.
pub fn classify_pair(model: &Model, i: usize, j: usize) -> Result<PairReport> {
    check_pair_indices(model, i, j)?;
    let m = model.branches();
    let biresidue = model.matrix().entry(i, j).clone();
    let residual = !biresidue.is_zero();
    let triples: Vec<TripleReport> = (0..m)
        .filter(|&l| l != i && l != j)
        .map(|l| {
            let ratio = triple_ratio(model, i, j, l).expect("indices validated");
            let special = ratio.as_ref().is_some_and(is_nonneg_integer);
            TripleReport { i, j, third: l, ratio, special }
        })
        .collect();
    let special = residual.then(|| !triples.is_empty() && triples.iter().all(|t| t.special));
    Ok(PairReport {
        i,
        j,
        biresidue,
        residual,
        meets_triple_locus: m >= 3,
        special,
        triples,
    })
}

/// Scans every branch pair and returns the criterion verdict with all
/// blocking witnesses.
pub fn verdict(model: &Model) -> Verdict {
    let m = model.branches();
    let mut witnesses = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let report = classify_pair(model, i, j).expect("indices in range");
            if !report.residual {
                witnesses.push(Witness { i, j, reason: WitnessReason::NonResidual });
            } else if !report.meets_triple_locus {
                witnesses.push(Witness { i, j, reason: WitnessReason::NoTriplePoints });
            } else if report.special == Some(true) {
                witnesses.push(Witness { i, j, reason: WitnessReason::Special });
            }
        }
    }
    Verdict { criterion_holds: witnesses.is_empty(), witnesses }
}

/// Monomial kernel sweep for a residual pair: all exponents `b >= 0`
/// supported off `{i, j}` with `|b| <= max_degree` whose associated 2-form
/// `z^b phi_i /\ phi_j` is closed.  Ascending degree, then lexicographic.
pub fn g2_kernel_diagnostic(
    model: &Model,
    i: usize,
    j: usize,
    max_degree: i64,
) -> Result<Vec<ExpVec>> {
    check_pair_indices(model, i, j)?;
    if model.matrix().entry(i, j).is_zero() {
        return Err(Error::NonResidualPair { i, j });
    }
    let support: Vec<usize> = (0..model.dim()).filter(|&k| k != i && k != j).collect();
    let mut found = Vec::new();
    for degree in 0..=max_degree.max(0) {
        for b in deform::exponents_with_total(model.dim(), &support, degree) {
            let (closed, _cert) = deform::is_closed(model, i, j, &b)?;
            if closed {
                found.push(b);
            }
        }
    }
    Ok(found)
}

/// Comparison of the two sign readings of the monomial kernel equation
/// against the direct closedness sweep.
///
/// The kernel equation predicts one candidate exponent vector per sign
/// convention: coordinatewise `+ratio` or `-ratio`, admissible only when
/// every entry is a nonnegative integer.  `found` is the direct sweep at
/// the implied degree; each `*_agrees` flag records whether that
/// convention's prediction (possibly "no admissible monomial") matches the
/// sweep exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2SignCheck {
    pub i: usize,
    pub j: usize,
    /// Admissible exponent vector with entries `+(c_jl + c_li)/c_ij`.
    pub prediction_plus: Option<ExpVec>,
    /// Admissible exponent vector with entries `-(c_jl + c_li)/c_ij`.
    pub prediction_minus: Option<ExpVec>,
    /// Direct closed-monomial sweep up to the implied degree.
    pub found: Vec<ExpVec>,
    pub sweep_degree: i64,
    pub plus_agrees: bool,
    pub minus_agrees: bool,
}

/// Evaluates both sign readings of the kernel equation for a residual pair
/// and reports which of them the direct computation confirms.
pub fn g2_sign_check(model: &Model, i: usize, j: usize) -> Result<G2SignCheck> {
    check_pair_indices(model, i, j)?;
    let b = model.matrix();
    let c_ij = b.entry(i, j);
    if c_ij.is_zero() {
        return Err(Error::NonResidualPair { i, j });
    }
    let n = model.dim();
    let ratios: Vec<Rat> = (0..n)
        .map(|l| {
            if l == i || l == j {
                Rat::zero()
            } else {
                (b.entry(j, l).clone() + b.entry(l, i).clone()) / c_ij.clone()
            }
        })
        .collect();
    let admissible = |signed: &dyn Fn(&Rat) -> Rat| -> Option<ExpVec> {
        let entries: Option<Vec<i64>> = ratios
            .iter()
            .map(|r| {
                let v = signed(r);
                is_nonneg_integer(&v).then(|| as_i64(&v)).flatten()
            })
            .collect();
        entries.map(ExpVec::new)
    };
    let prediction_plus = admissible(&|r: &Rat| r.clone());
    let prediction_minus = admissible(&|r: &Rat| -r.clone());
    let sweep_degree = prediction_plus
        .iter()
        .chain(prediction_minus.iter())
        .map(ExpVec::total_degree)
        .max()
        .unwrap_or(0);
    let found = g2_kernel_diagnostic(model, i, j, sweep_degree)?;
    let agrees = |p: &Option<ExpVec>| match p {
        Some(v) => found.len() == 1 && &found[0] == v,
        None => found.is_empty(),
    };
    let plus_agrees = agrees(&prediction_plus);
    let minus_agrees = agrees(&prediction_minus);
    Ok(G2SignCheck {
        i,
        j,
        prediction_plus,
        prediction_minus,
        found,
        sweep_degree,
        plus_agrees,
        minus_agrees,
    })
}
