//! Finite verification of the homological identities the pair analysis
//! rests on.
//!
//! Three independent checks live here, each reduced to exact finite linear
//! algebra:
//!
//! * *Mapping-cone contractibility.*  On pairs `(alpha, beta)` with
//!   `deg beta = deg alpha + 1` the cone differential is
//!   `D(alpha, beta) = (d alpha + beta, -d beta)` and the contracting
//!   homotopy is `h(alpha, beta) = (0, alpha)`; then `hD + Dh = id` and
//!   `D^2 = h^2 = 0`.  [`verify_cone`] confirms this exhaustively on a
//!   truncated monomial basis, and also exercises the sign-dropped /
//!   slot-swapped variant `D'(alpha, beta) = (d alpha + beta, d beta)`,
//!   `h'(alpha, beta) = (beta, 0)`, which fails the identity — the failure
//!   is reported rather than asserted, as a guard against transcribing the
//!   wrong convention elsewhere.
//! * *Acyclicity of the normal complex.*  Twisting the log complex by one
//!   inverse power of the first branch coordinate fixes the first exponent
//!   of every multidegree at `-1`; the differential restricted to a single
//!   multidegree `mu` is the Koszul-type map `gamma_mu /\ -` with
//!   `gamma_mu = sum_k mu_k eta_k`, whose first coefficient `-1` never
//!   vanishes.  [`normal_log_homology`] computes the homology of every
//!   multidegree slice in a truncation box and reports the dimensions —
//!   all zero for the twisted complex, visibly nonzero for the untwisted
//!   control slice.
//! * *Principal-parts exactness.*  [`principal_parts_exactness`] replaces
//!   `d` by `d + j eta_0 /\ -` for a positive twist order `j`; on the slice
//!   of multidegree `mu` this is the Koszul map for
//!   `(mu_0 + j) eta_0 + sum_{k >= 1} mu_k eta_k`, whose `eta_0`
//!   coefficient is at least `j >= 1` on holomorphic slices, so every slice
//!   is exact.
//!
//! Because the differential preserves multidegrees, each truncated check
//! decides the full statement on its box exactly; there is no sampling and
//! no tolerance anywhere.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::form::{ExpVec, IndexSet, LogForm};
use crate::linalg;
use crate::rational::{rat_int, Rat};

/// Truncation box for multidegree sweeps: coordinates `1..dim` range over
/// `0..=max_exp`; the first coordinate is pinned to `first_exp` when set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationSpec {
    pub dim: usize,
    pub max_exp: i64,
    /// Fixed exponent of the first coordinate, when the complex under
    /// study twists it (required by [`normal_log_homology`]).
    pub first_exp: Option<i64>,
}

/// An element `(alpha, beta)` of the cone, with `deg beta = deg alpha + 1`
/// whenever both slots are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeElement {
    alpha: LogForm,
    beta: LogForm,
}

impl ConeElement {
    /// Validating constructor: equal ambient dimensions, and homogeneous
    /// degrees differing by one when both slots are nonzero.
    pub fn new(alpha: LogForm, beta: LogForm) -> Result<Self> {
        if alpha.dim() != beta.dim() {
            return Err(Error::DimensionMismatch { left: alpha.dim(), right: beta.dim() });
        }
        if !alpha.is_zero() && !beta.is_zero() {
            match (alpha.degree(), beta.degree()) {
                (Some(a), Some(b)) if b == a + 1 => {}
                _ => {
                    return Err(Error::BadShape(String::from(
                        "cone element slots must be homogeneous with deg beta = deg alpha + 1",
                    )))
                }
            }
        }
        Ok(ConeElement { alpha, beta })
    }

    /// First slot.
    pub fn alpha(&self) -> &LogForm {
        &self.alpha
    }

    /// Second slot.
    pub fn beta(&self) -> &LogForm {
        &self.beta
    }

    /// Whether both slots vanish.
    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }
}

fn add_elements(a: &ConeElement, b: &ConeElement) -> ConeElement {
    ConeElement {
        alpha: a.alpha.add(&b.alpha).expect("same ambient dimension"),
        beta: a.beta.add(&b.beta).expect("same ambient dimension"),
    }
}

fn cone_differential_with<F: Fn(&LogForm) -> LogForm>(e: &ConeElement, d: &F) -> ConeElement {
    ConeElement {
        alpha: d(&e.alpha).add(&e.beta).expect("same ambient dimension"),
        beta: d(&e.beta).neg(),
    }
}

/// The cone differential `D(alpha, beta) = (d alpha + beta, -d beta)`.
pub fn cone_differential(e: &ConeElement) -> ConeElement {
    cone_differential_with(e, &LogForm::d)
}

/// The contracting homotopy `h(alpha, beta) = (0, alpha)`.
pub fn cone_homotopy(e: &ConeElement) -> ConeElement {
    ConeElement { alpha: LogForm::zero(e.alpha.dim()), beta: e.alpha.clone() }
}

fn face_value_differential_with<F: Fn(&LogForm) -> LogForm>(e: &ConeElement, d: &F) -> ConeElement {
    ConeElement { alpha: d(&e.alpha).add(&e.beta).expect("same ambient dimension"), beta: d(&e.beta) }
}

fn face_value_homotopy(e: &ConeElement) -> ConeElement {
    ConeElement { alpha: e.beta.clone(), beta: LogForm::zero(e.alpha.dim()) }
}

/// Outcome of the exhaustive cone verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub dim: usize,
    pub max_exp: i64,
    /// Number of `(slot, basis monomial)` placements checked.
    pub elements_checked: usize,
    /// `hD + Dh = id` on every checked element.
    pub identity_holds: bool,
    /// `D^2 = 0` (and `h^2 = 0`) on every checked element.
    pub d_squared_zero: bool,
    /// Whether the sign-dropped, slot-swapped variant satisfies the same
    /// identity; expected `false` on any nonempty basis.
    pub face_value_identity_holds: bool,
}

/// Monomials `z^a eta_I` with `I` inside `excluded_below..dim` and
/// `a_k` in `1..=max_exp` when `k` is wedged, `0..=max_exp` otherwise.
fn honest_monomial_basis(dim: usize, max_exp: i64, excluded_below: usize) -> Vec<LogForm> {
    fn fill(
        dim: usize,
        max_exp: i64,
        idx: &IndexSet,
        k: usize,
        current: &mut Vec<i64>,
        out: &mut Vec<LogForm>,
    ) {
        if k == dim {
            let form = LogForm::term(
                dim,
                rat_int(1),
                ExpVec::new(current.clone()),
                idx.clone(),
            )
            .expect("well-formed basis monomial");
            out.push(form);
            return;
        }
        let lo = if idx.contains(k) { 1 } else { 0 };
        for val in lo..=max_exp {
            current[k] = val;
            fill(dim, max_exp, idx, k + 1, current, out);
        }
        current[k] = 0;
    }
    let free = dim - excluded_below.min(dim);
    let mut out = Vec::new();
    for mask in 0..(1usize << free) {
        let indices: Vec<usize> =
            (0..free).filter(|b| mask >> b & 1 == 1).map(|b| excluded_below + b).collect();
        let idx = IndexSet::new(indices).expect("increasing by construction");
        let mut current = vec![0i64; dim];
        fill(dim, max_exp, &idx, 0, &mut current, &mut out);
    }
    out
}

fn verify_cone_with<F: Fn(&LogForm) -> LogForm>(
    dim: usize,
    max_exp: i64,
    excluded_below: usize,
    d: &F,
) -> ConeReport {
    let basis = honest_monomial_basis(dim, max_exp, excluded_below);
    let zero = LogForm::zero(dim);
    let mut elements_checked = 0usize;
    let mut identity_holds = true;
    let mut d_squared_zero = true;
    let mut face_value_identity_holds = true;
    let placements = basis.iter().flat_map(|omega| {
        [
            ConeElement { alpha: omega.clone(), beta: zero.clone() },
            ConeElement { alpha: zero.clone(), beta: omega.clone() },
        ]
    });
    for e in placements {
        elements_checked += 1;
        let hd = cone_homotopy(&cone_differential_with(&e, d));
        let dh = cone_differential_with(&cone_homotopy(&e), d);
        identity_holds &= add_elements(&hd, &dh) == e;
        d_squared_zero &= cone_differential_with(&cone_differential_with(&e, d), d).is_zero()
            && cone_homotopy(&cone_homotopy(&e)).is_zero();
        let fv_hd = face_value_homotopy(&face_value_differential_with(&e, d));
        let fv_dh = face_value_differential_with(&face_value_homotopy(&e), d);
        face_value_identity_holds &= add_elements(&fv_hd, &fv_dh) == e;
    }
    ConeReport {
        dim,
        max_exp,
        elements_checked,
        identity_holds,
        d_squared_zero,
        face_value_identity_holds,
    }
}

/// Exhaustively verifies `hD + Dh = id`, `D^2 = 0` and `h^2 = 0` on the
/// truncated monomial basis, together with the (expected) failure of the
/// face-value variant.
pub fn verify_cone(dim: usize, max_exp: i64) -> ConeReport {
    verify_cone_with(dim, max_exp, 0, &LogForm::d)
}

/// Drops every term wedging a coordinate below `corank`.
fn project_leafwise(form: &LogForm, corank: usize) -> LogForm {
    LogForm::from_terms(form.dim(), form.terms().filter(|t| t.idx.iter().all(|k| k >= corank)))
        .expect("projection preserves well-formedness")
}

/// Same verification for the leafwise complex of a coordinate foliation:
/// forms omit the first `corank` basis directions and the differential is
/// the leafwise projection of `d`.  The homotopy identity is formal, so it
/// survives the quotient; this check pins that down.
pub fn verify_foliated_cone(dim: usize, max_exp: i64, corank: usize) -> Result<ConeReport> {
    if corank > dim {
        return Err(Error::DomainError(alloc::format!(
            "foliation corank {corank} exceeds the ambient dimension {dim}"
        )));
    }
    let d = move |f: &LogForm| project_leafwise(&f.d(), corank);
    Ok(verify_cone_with(dim, max_exp, corank, &d))
}

/// Homology dimensions of one multidegree slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyEntry {
    pub multidegree: ExpVec,
    /// `dims[p]` is the dimension of the degree-`p` homology; length
    /// `dim + 1`.
    pub dims: Vec<usize>,
}

/// Homology dimensions across a truncation box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub entries: Vec<HomologyEntry>,
}

impl HomologyReport {
    /// Whether every slice is exact everywhere.
    pub fn all_zero(&self) -> bool {
        self.entries.iter().all(|e| e.dims.iter().all(|&d| d == 0))
    }

    /// Largest homology dimension across all slices.
    pub fn max_dim(&self) -> usize {
        self.entries.iter().flat_map(|e| e.dims.iter().copied()).max().unwrap_or(0)
    }
}

/// Rank-based homology of one multidegree slice of a monomial complex.
///
/// `admissible` selects the wedge index sets spanning the slice and
/// `differential` must preserve the slice (asserted in debug builds).
fn slice_homology<A, F>(dim: usize, multidegree: &ExpVec, admissible: A, differential: F) -> Vec<usize>
where
    A: Fn(&IndexSet) -> bool,
    F: Fn(&LogForm) -> LogForm,
{
    let mut by_degree: Vec<Vec<IndexSet>> = vec![Vec::new(); dim + 2];
    for mask in 0..(1usize << dim) {
        let indices: Vec<usize> = (0..dim).filter(|k| mask >> k & 1 == 1).collect();
        let set = IndexSet::new(indices).expect("increasing by construction");
        if admissible(&set) {
            by_degree[set.len()].push(set);
        }
    }
    for sets in &mut by_degree {
        sets.sort();
    }
    // ranks[p + 1] is the rank of the differential out of degree p.
    let mut ranks = vec![0usize; dim + 2];
    for p in 0..=dim {
        let targets = &by_degree[p + 1];
        let rows: Vec<Vec<Rat>> = by_degree[p]
            .iter()
            .map(|set| {
                let elem = LogForm::term(dim, rat_int(1), multidegree.clone(), set.clone())
                    .expect("well-formed slice monomial");
                let image = differential(&elem);
                let row: Vec<Rat> =
                    targets.iter().map(|t| image.coeff(multidegree, t)).collect();
                debug_assert_eq!(
                    image.num_terms(),
                    row.iter().filter(|c| !c.is_zero()).count(),
                    "differential left the admissible slice"
                );
                row
            })
            .collect();
        ranks[p + 1] = linalg::rank(&rows);
    }
    (0..=dim)
        .map(|p| {
            by_degree[p]
                .len()
                .checked_sub(ranks[p + 1] + ranks[p])
                .expect("differential failed to form a complex")
        })
        .collect()
}

/// All exponent tails of length `len` with entries in `0..=max_exp`,
/// ascending lexicographic.
fn exponent_box(len: usize, max_exp: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn go(len: usize, max_exp: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for val in 0..=max_exp {
            current.push(val);
            go(len, max_exp, current, out);
            current.pop();
        }
    }
    go(len, max_exp, &mut Vec::new(), &mut out);
    out
}

/// Per-multidegree homology of the normal complex: the log complex of the
/// first `branches` coordinates twisted so that the first exponent is
/// pinned at `spec.first_exp` (the value `-1` gives the normal complex
/// proper; `0` gives the untwisted control, which is *not* acyclic).
///
/// Coordinates `1..branches` carry log poles with holomorphic
/// coefficients; coordinates `branches..dim` are pole-free, which
/// constrains their wedge factors to carry a positive exponent.
pub fn normal_log_homology(spec: &TruncationSpec, branches: usize) -> Result<HomologyReport> {
    let n = spec.dim;
    if branches == 0 {
        return Err(Error::DomainError(String::from(
            "the normal complex needs at least one branch",
        )));
    }
    if branches > n {
        return Err(Error::BranchCountTooLarge { branches, dim: n });
    }
    let first = spec.first_exp.ok_or_else(|| {
        Error::DomainError(String::from(
            "a pinned first-coordinate exponent is required for the normal complex",
        ))
    })?;
    let mut entries = Vec::new();
    for tail in exponent_box(n - 1, spec.max_exp) {
        let mut v = vec![first];
        v.extend(tail);
        let mu = ExpVec::new(v);
        let admissible = |set: &IndexSet| {
            (branches..n).all(|k| mu.get(k) >= i64::from(set.contains(k)))
        };
        let dims = slice_homology(n, &mu, admissible, |f| f.d());
        entries.push(HomologyEntry { multidegree: mu, dims });
    }
    Ok(HomologyReport { entries })
}

/// Per-multidegree homology of the principal-parts complex of twist order
/// `order >= 1`: the differential is `d + order * eta_0 /\ -` on forms
/// that are logarithmic along the first coordinate and pole-free along the
/// rest.  Every holomorphic slice is exact because the `eta_0` coefficient
/// of the slice covector is `mu_0 + order >= 1`.
pub fn principal_parts_exactness(spec: &TruncationSpec, order: i64) -> Result<HomologyReport> {
    let n = spec.dim;
    if order <= 0 {
        return Err(Error::DomainError(alloc::format!(
            "twist order must be positive, got {order}"
        )));
    }
    if n == 0 {
        return Err(Error::DomainError(String::from(
            "the principal-parts complex needs at least one coordinate",
        )));
    }
    let first_range: Vec<i64> = match spec.first_exp {
        Some(v) => vec![v],
        None => (0..=spec.max_exp).collect(),
    };
    let eta0 = LogForm::eta(n, 0)?;
    let twist = rat_int(order);
    let mut entries = Vec::new();
    for first in &first_range {
        for tail in exponent_box(n - 1, spec.max_exp) {
            let mut v = vec![*first];
            v.extend(tail);
            let mu = ExpVec::new(v);
            let admissible = |set: &IndexSet| {
                mu.get(0) >= 0 && (1..n).all(|k| mu.get(k) >= i64::from(set.contains(k)))
            };
            let differential = |f: &LogForm| {
                f.d()
                    .add(&eta0.wedge(f).expect("same ambient dimension").scale(&twist))
                    .expect("same ambient dimension")
            };
            let dims = slice_homology(n, &mu, admissible, differential);
            entries.push(HomologyEntry { multidegree: mu, dims });
        }
    }
    Ok(HomologyReport { entries })
}
