//! Laurent-monomial logarithmic differential forms and their exterior
//! calculus.
//!
//! A [`LogForm`] is a finite sum of terms `c * z^a * eta_I` where `c` is a
//! rational coefficient, `a` is an integer exponent vector (`z^a` is a
//! Laurent monomial), and `eta_I = eta_{i_1} /\ ... /\ eta_{i_r}` over a
//! strictly increasing index set `I`.  Every basis 1-form is a dlog:
//! `eta_k = dz_k / z_k`.  Honest `dz_k` directions are represented as
//! `z^{e_k} eta_k`, so a single multidegree-graded calculus covers both log
//! and holomorphic directions; see [`LogForm::is_honest`] for the membership
//! test that pins down which coordinates are genuine poles.
//!
//! Design notes:
//!
//! * All operations are exact over [`Rat`] and total: no floats, no
//!   rounding, no iteration-order nondeterminism.
//! * Terms are kept normalized at all times — merged on equal
//!   `(exponent, index set)` keys, zero coefficients dropped — and iterate
//!   in the canonical order (form degree, index set lex, exponent lex).
//! * `d(z^a eta_I) = sum_k a_k z^a eta_k /\ eta_I`, which preserves the
//!   exponent vector.  Splitting by multidegree therefore turns every
//!   homological question here into finite linear algebra.
//! * The residue along coordinate `k` uses the trailing-slot convention:
//!   write `omega = alpha /\ eta_k + beta` with `eta_k` in the *last* wedge
//!   slot and neither `alpha` nor `beta` involving `eta_k`; the residue is
//!   `alpha` restricted to `z_k = 0`.  Under this convention the residue
//!   commutes with `d` with no sign (a frozen regression test guards this).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rat};

/// Integer exponent vector of a Laurent monomial `z^a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpVec(Vec<i64>);

impl ExpVec {
    /// The zero exponent vector of length `dim`.
    pub fn zero(dim: usize) -> Self {
        ExpVec(vec![0; dim])
    }

    /// The standard unit vector `e_k`.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = vec![0; dim];
        v[k] = 1;
        ExpVec(v)
    }

    /// Builds from explicit entries.
    pub fn new(entries: Vec<i64>) -> Self {
        ExpVec(entries)
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the vector has no coordinates.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry at coordinate `k`.
    pub fn get(&self, k: usize) -> i64 {
        self.0[k]
    }

    /// All entries as a slice.
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Sum of entries.
    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Entrywise sum.
    pub fn add(&self, other: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.len(), other.len());
        ExpVec(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.len(), other.len());
        ExpVec(self.0.iter().zip(&other.0).map(|(x, y)| x - y).collect())
    }

    /// Whether every entry is `>= 0`.
    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Whether this is the zero vector.
    pub fn is_zero_vec(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

/// Strictly increasing set of wedge indices (0-based coordinates).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// The empty index set (scalar part of the exterior algebra).
    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// A single index.
    pub fn singleton(k: usize) -> Self {
        IndexSet(vec![k])
    }

    /// Builds from indices, which must be strictly increasing.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedIndexSet);
        }
        Ok(IndexSet(indices))
    }

    /// Form degree contributed by this wedge.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether no indices are present.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether `k` appears.
    pub fn contains(&self, k: usize) -> bool {
        self.0.binary_search(&k).is_ok()
    }

    /// Indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Largest index, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Concatenation sign and merged set for `eta_self /\ eta_other`:
    /// `None` when the sets intersect (the wedge vanishes), otherwise the
    /// merged set together with the parity of the shuffle that sorts the
    /// concatenation.
    pub fn merge_sign(&self, other: &IndexSet) -> Option<(IndexSet, i8)> {
        let mut inversions = 0usize;
        for &j in &other.0 {
            if self.contains(j) {
                return None;
            }
            // eta_j must move left past every eta_i of `self` with i > j.
            inversions += self.0.iter().filter(|&&i| i > j).count();
        }
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        merged.extend_from_slice(&self.0);
        merged.extend_from_slice(&other.0);
        merged.sort_unstable();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((IndexSet(merged), sign))
    }

    /// Sign and result of prepending `eta_k`: `eta_k /\ eta_self`.
    pub fn prepend_sign(&self, k: usize) -> Option<(IndexSet, i8)> {
        IndexSet::singleton(k).merge_sign(self)
    }

    /// Removes `k`, returning the remaining set and the sign of moving
    /// `eta_k` to the trailing wedge slot: for `k` at 0-based position `p`
    /// in a set of `r` indices the sign is `(-1)^(r-1-p)`.
    pub fn extract_trailing(&self, k: usize) -> Option<(IndexSet, i8)> {
        let p = self.0.binary_search(&k).ok()?;
        let mut rest = self.0.clone();
        rest.remove(p);
        let moves = self.0.len() - 1 - p;
        let sign = if moves % 2 == 0 { 1 } else { -1 };
        Some((IndexSet(rest), sign))
    }
}

/// One monomial term `coeff * z^exp * eta_idx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTerm {
    pub coeff: Rat,
    pub exp: ExpVec,
    pub idx: IndexSet,
}

/// Map key for a term: ordered by (form degree, index set, exponent).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct TermKey {
    idx: IndexSet,
    exp: ExpVec,
}

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.idx
            .len()
            .cmp(&other.idx.len())
            .then_with(|| self.idx.cmp(&other.idx))
            .then_with(|| self.exp.cmp(&other.exp))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite rational combination of Laurent-monomial log form generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogForm {
    dim: usize,
    terms: BTreeMap<TermKey, Rat>,
}

impl LogForm {
    /// The zero form in ambient dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        LogForm { dim, terms: BTreeMap::new() }
    }

    /// Normalizing constructor: merges equal generators, drops zero
    /// coefficients, and stores terms in canonical order.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = LogTerm>,
    {
        let mut form = LogForm::zero(dim);
        for t in terms {
            if t.exp.len() != dim {
                return Err(Error::DimensionMismatch { left: t.exp.len(), right: dim });
            }
            if let Some(k) = t.idx.max_index() {
                if k >= dim {
                    return Err(Error::IndexOutOfRange { index: k, bound: dim });
                }
            }
            form.accumulate(TermKey { idx: t.idx, exp: t.exp }, t.coeff);
        }
        Ok(form)
    }

    /// Single-term convenience constructor.
    pub fn term(dim: usize, coeff: Rat, exp: ExpVec, idx: IndexSet) -> Result<Self> {
        LogForm::from_terms(dim, [LogTerm { coeff, exp, idx }])
    }

    /// The constant 0-form `c`.
    pub fn constant(dim: usize, c: Rat) -> Self {
        LogForm::term(dim, c, ExpVec::zero(dim), IndexSet::empty())
            .expect("constant term is always well-formed")
    }

    /// The basis 1-form `eta_k`.
    pub fn eta(dim: usize, k: usize) -> Result<Self> {
        LogForm::term(dim, rat_int(1), ExpVec::zero(dim), IndexSet::singleton(k))
    }

    fn accumulate(&mut self, key: TermKey, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether the form is identically zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = LogTerm> + '_ {
        self.terms.iter().map(|(k, c)| LogTerm {
            coeff: c.clone(),
            exp: k.exp.clone(),
            idx: k.idx.clone(),
        })
    }

    /// Coefficient of the generator `z^exp eta_idx` (zero if absent).
    pub fn coeff(&self, exp: &ExpVec, idx: &IndexSet) -> Rat {
        self.terms
            .get(&TermKey { idx: idx.clone(), exp: exp.clone() })
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the constant generator `z^0` (empty wedge).
    pub fn constant_coefficient(&self) -> Rat {
        self.coeff(&ExpVec::zero(self.dim), &IndexSet::empty())
    }

    /// Homogeneous form degree, when all terms agree; `None` for the zero
    /// form or a mixed-degree sum.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|k| k.idx.len());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Sum of two forms.
    pub fn add(&self, other: &LogForm) -> Result<LogForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Difference of two forms.
    pub fn sub(&self, other: &LogForm) -> Result<LogForm> {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> LogForm {
        self.scale(&rat_int(-1))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> LogForm {
        if c.is_zero() {
            return LogForm::zero(self.dim);
        }
        LogForm {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c)).collect(),
        }
    }

    /// Multiplication by the Laurent monomial `z^e`.
    pub fn shift(&self, e: &ExpVec) -> LogForm {
        debug_assert_eq!(e.len(), self.dim);
        LogForm {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    (TermKey { idx: k.idx.clone(), exp: k.exp.add(e) }, c.clone())
                })
                .collect(),
        }
    }

    /// Exterior (wedge) product.
    pub fn wedge(&self, other: &LogForm) -> Result<LogForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut out = LogForm::zero(self.dim);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if let Some((idx, sign)) = ka.idx.merge_sign(&kb.idx) {
                    let coeff = ca.clone() * cb.clone() * rat_int(sign as i64);
                    out.accumulate(TermKey { idx, exp: ka.exp.add(&kb.exp) }, coeff);
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative: `d(z^a eta_I) = sum_k a_k z^a eta_k /\ eta_I`.
    ///
    /// Preserves the exponent vector of every term.
    pub fn d(&self) -> LogForm {
        let mut out = LogForm::zero(self.dim);
        for (key, c) in &self.terms {
            for k in 0..self.dim {
                let a_k = key.exp.get(k);
                if a_k == 0 {
                    continue;
                }
                if let Some((idx, sign)) = key.idx.prepend_sign(k) {
                    let coeff = c.clone() * rat_int(a_k) * rat_int(sign as i64);
                    out.accumulate(TermKey { idx, exp: key.exp.clone() }, coeff);
                }
            }
        }
        out
    }

    /// Whether every term has exponent `>= 0` at coordinate `k` — the form
    /// has at worst a dlog pole along `z_k = 0`.
    pub fn is_log_along(&self, k: usize) -> bool {
        self.terms.keys().all(|key| key.exp.get(k) >= 0)
    }

    /// Residue along coordinate `k`, trailing-slot convention.
    ///
    /// Writes `omega = alpha /\ eta_k + beta` with neither `alpha` nor
    /// `beta` involving `eta_k` and returns `alpha` restricted to
    /// `z_k = 0` (terms with positive `z_k`-exponent vanish).  Errors when
    /// the form is not logarithmic along `k`.
    pub fn residue(&self, k: usize) -> Result<LogForm> {
        if k >= self.dim {
            return Err(Error::IndexOutOfRange { index: k, bound: self.dim });
        }
        if !self.is_log_along(k) {
            return Err(Error::NotLogAlong(k));
        }
        let mut out = LogForm::zero(self.dim);
        for (key, c) in &self.terms {
            if key.exp.get(k) != 0 {
                continue; // restricted to z_k = 0, positive powers vanish
            }
            if let Some((idx, sign)) = key.idx.extract_trailing(k) {
                out.accumulate(TermKey { idx, exp: key.exp.clone() }, c.clone() * rat_int(sign as i64));
            }
        }
        Ok(out)
    }

    /// Iterated residue `Res_i Res_j` of a 2-form, reported as the
    /// rational value of its constant part.
    pub fn biresidue(&self, i: usize, j: usize) -> Result<Rat> {
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        Ok(self.residue(j)?.residue(i)?.constant_coefficient())
    }

    /// Splits into multidegree-homogeneous parts, keyed by exponent vector.
    pub fn multidegree_split(&self) -> BTreeMap<ExpVec, LogForm> {
        let mut out: BTreeMap<ExpVec, LogForm> = BTreeMap::new();
        for (key, c) in &self.terms {
            out.entry(key.exp.clone())
                .or_insert_with(|| LogForm::zero(self.dim))
                .accumulate(key.clone(), c.clone());
        }
        out
    }

    /// Membership test for the complex with poles confined to the first `m`
    /// coordinates: every term must satisfy `exp_k >= 1` when `eta_k` is
    /// wedged in and `exp_k >= 0` otherwise, for all non-branch `k >= m`.
    pub fn is_honest(&self, branches: usize) -> bool {
        self.terms.keys().all(|key| {
            (branches..self.dim).all(|k| {
                let needed = if key.idx.contains(k) { 1 } else { 0 };
                key.exp.get(k) >= needed
            })
        })
    }
}
