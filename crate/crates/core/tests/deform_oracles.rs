//! Brute-force oracle for the exactness decision, plus integration-level
//! checks of the search output and the column relations.
//!
//! The oracle rebuilds the degree-1 piece of the pole-bounded complex the
//! slow way: it sweeps *all* monomial multiples `z^p iota_k(Phi)` over an
//! entrywise exponent box, takes `d`, slices by multidegree, and decides
//! membership by rank — a different construction route from the
//! closed-form admissibility groups used by `deform::is_exact`.

use logsym_core::deform::{candidate_form, column_relation, is_closed, is_exact, search};
use logsym_core::linalg;
use logsym_core::rational::{rat, rat_int};
use logsym_core::{ExpVec, IndexSet, LogForm, Model, Rat, SkewMatrix};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn model_from_upper(data: &[&[i64]], m: usize) -> Model {
    let rows: Vec<Vec<Rat>> =
        data.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect();
    Model::new(SkewMatrix::complete_skew(rows).unwrap(), m).unwrap()
}

fn sample() -> Model {
    model_from_upper(&[&[0, 1, 2, 4], &[0, 0, 3, 5], &[0, 0, 0, 6], &[0, 0, 0, 0]], 4)
}

/// All `p >= 0` with `p_t <= bound_t` entrywise.
fn entrywise_box(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &bound in bounds {
        let mut next = Vec::new();
        for prefix in &out {
            for v in 0..=bound.max(-1) {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Membership of `target` in the span of `forms`, by vectorizing over the
/// union of `(exponent, index set)` keys.
fn in_span(forms: &[LogForm], target: &LogForm) -> bool {
    let mut keys: BTreeSet<(ExpVec, IndexSet)> = BTreeSet::new();
    for f in forms.iter().chain(std::iter::once(target)) {
        for t in f.terms() {
            keys.insert((t.exp, t.idx));
        }
    }
    let keys: Vec<_> = keys.into_iter().collect();
    let vectorize = |f: &LogForm| -> Vec<Rat> {
        keys.iter().map(|(exp, idx)| f.coeff(exp, idx)).collect()
    };
    let rows: Vec<Vec<Rat>> = forms.iter().map(vectorize).collect();
    linalg::in_row_span(&rows, &vectorize(target))
}

/// Brute-force exactness decision for the candidate `(i, j, a)`.
fn exactness_oracle(model: &Model, i: usize, j: usize, a: &ExpVec) -> bool {
    let n = model.dim();
    let m = model.branches();
    let candidate = candidate_form(model, i, j, a).unwrap();
    // iota_k(Phi) = z^(delta_k - e_k) * rho_k.
    let contractions: Vec<LogForm> = (0..n)
        .map(|k| {
            let mut shift = vec![0i64; n];
            if k < m {
                shift[k] = -1;
            }
            model.row_form(k).unwrap().shift(&ExpVec::new(shift))
        })
        .collect();
    for (mu, part) in candidate.multidegree_split() {
        // Any monomial multiple whose image meets this multidegree has
        // p <= mu + 1 entrywise; sweep that whole box.
        let bounds: Vec<i64> = mu.entries().iter().map(|&t| t + 1).collect();
        let mut slices: Vec<LogForm> = Vec::new();
        for gen in &contractions {
            for p in entrywise_box(&bounds) {
                let image = gen.shift(&ExpVec::new(p)).d();
                if let Some(slice) = image.multidegree_split().remove(&mu) {
                    slices.push(slice);
                }
            }
        }
        if !in_span(&slices, &part) {
            return false;
        }
    }
    true
}

#[test]
fn oracle_agrees_on_the_worked_candidates() {
    let model = sample();
    let cases: &[(usize, usize, [i64; 4], bool)] = &[
        (0, 1, [0, 0, 1, 1], false), // the closed search hit
        (0, 1, [1, 1, 0, 0], false), // the trivial diagonal exponent
        (0, 1, [1, 2, 2, 4], true),  // c = row 0: candidate is d(z^c rho_1)
        (0, 1, [0, 2, 5, 9], true),  // c = row 0 + row 1: one admissible generator
        (0, 1, [0, 0, 1, 0], false), // not even closed
        (0, 2, [1, 1, 1, 1], false),
        (2, 3, [2, 2, 1, 1], false), // not closed, full holomorphic support
    ];
    for &(i, j, ref a, expected) in cases {
        let a = ExpVec::new(a.to_vec());
        let got = is_exact(&model, i, j, &a).unwrap();
        assert_eq!(got, exactness_oracle(&model, i, j, &a), "oracle split at ({i},{j},{a:?})");
        assert_eq!(got, expected, "frozen expectation at ({i},{j},{a:?})");
    }
}

#[test]
fn oracle_agrees_on_the_partial_branch_model() {
    let model = model_from_upper(&[&[0, 1, 2, 0], &[0, 0, 3, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]], 3);
    let found = search(&model, 3);
    assert_eq!(found.len(), 1);
    let a = &found[0].exponent;
    assert_eq!(found[0].exact, Some(false));
    assert!(!exactness_oracle(&model, 0, 1, a));
    for probe in [[1, 0, 1, 0], [0, 1, 1, 0], [1, 1, 2, 1]] {
        let a = ExpVec::new(probe.to_vec());
        assert_eq!(
            is_exact(&model, 0, 1, &a).unwrap(),
            exactness_oracle(&model, 0, 1, &a),
            "oracle split at {a:?}"
        );
    }
}

#[test]
fn oracle_agrees_on_random_candidates() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd803_0001);
    let mut checked = 0usize;
    while checked < 48 {
        let n = 4;
        let branches = if checked % 3 == 0 { 3 } else { 4 };
        let mut rows = vec![vec![rat_int(0); n]; n];
        for r in 0..n {
            for c in (r + 1)..n {
                rows[r][c] = rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=2));
            }
        }
        let Ok(skew) = SkewMatrix::complete_skew(rows) else { continue };
        let Ok(model) = Model::new(skew, branches) else { continue };
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        let a = ExpVec::new((0..n).map(|_| rng.gen_range(0i64..=2)).collect());
        assert_eq!(
            is_exact(&model, i, j, &a).unwrap(),
            exactness_oracle(&model, i, j, &a),
            "oracle split at ({i},{j},{a:?}) on {:?}",
            model.matrix().rows()
        );
        checked += 1;
    }
}

#[test]
fn search_finds_at_most_one_candidate_per_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd803_0002);
    for _ in 0..12 {
        let n = 4;
        let mut rows = vec![vec![rat_int(0); n]; n];
        for r in 0..n {
            for c in (r + 1)..n {
                rows[r][c] = rat_int(rng.gen_range(-4i64..=4));
            }
        }
        let Ok(skew) = SkewMatrix::complete_skew(rows) else { continue };
        let Ok(model) = Model::new(skew, n) else { continue };
        let found = search(&model, 5);
        let mut pairs: Vec<(usize, usize)> = found.iter().map(|c| (c.i, c.j)).collect();
        pairs.dedup();
        assert_eq!(pairs.len(), found.len(), "duplicate pair in search output");
        for candidate in &found {
            assert!(candidate.closed);
            let (closed, cert) =
                is_closed(&model, candidate.i, candidate.j, &candidate.exponent).unwrap();
            assert!(closed);
            assert_eq!(cert, candidate.certificate);
            assert_eq!(
                is_exact(&model, candidate.i, candidate.j, &candidate.exponent).unwrap(),
                candidate.exact.unwrap()
            );
        }
    }
}

#[test]
fn column_relations_verify_for_certified_candidates() {
    let model = sample();
    for candidate in search(&model, 2) {
        let relation = column_relation(&model, &candidate).unwrap();
        assert!(relation.verified);
        // Re-derive the defining identity entry by entry.
        let b = model.matrix();
        for k in 0..model.dim() {
            let lhs = relation.coefficient_i.clone() * b.column(candidate.i)[k].clone()
                + relation.coefficient_j.clone() * b.column(candidate.j)[k].clone()
                + rat_int(i64::from(k == candidate.i) + i64::from(k == candidate.j))
                - rat_int(candidate.exponent.get(k));
            assert!(lhs.is_zero());
        }
        let cert = candidate.certificate.as_ref().unwrap();
        assert_eq!(
            relation.integer_coefficients,
            cert.lambda.is_integer() && cert.mu.is_integer()
        );
    }
}

#[test]
fn column_relation_requires_a_certificate() {
    let model = model_from_upper(&[&[0, 1, 2, 0], &[0, 0, 3, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]], 3);
    let found = search(&model, 3);
    assert_eq!(found.len(), 1);
    assert!(found[0].certificate.is_none());
    assert!(column_relation(&model, &found[0]).is_err());
}
