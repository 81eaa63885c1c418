//! Independent oracles for the skew-matrix layer: the Pfaffian against a
//! perfect-matching expansion and against `Pf^2 = det`, span certificates
//! against a rank oracle, and inversion against direct multiplication.

use logsym_core::linalg;
use logsym_core::rational::{rat, rat_int};
use logsym_core::{span_solve, Rat, SkewMatrix};
use num_traits::Zero;
use proptest::prelude::*;

/// Exact determinant by fraction-free-ordered Gaussian elimination;
/// independent of the Pfaffian recursion under test.
fn det(rows_in: &[Vec<Rat>]) -> Rat {
    let n = rows_in.len();
    let mut rows = rows_in.to_vec();
    let mut sign = rat_int(1);
    let mut product = rat_int(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return rat_int(0);
        };
        if pivot != col {
            rows.swap(pivot, col);
            sign = -sign;
        }
        let pv = rows[col][col].clone();
        product *= pv.clone();
        for r in (col + 1)..n {
            let factor = rows[r][col].clone() / pv.clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let sub = factor.clone() * rows[col][c].clone();
                rows[r][c] = rows[r][c].clone() - sub;
            }
        }
    }
    sign * product
}

/// Pfaffian by summing over perfect matchings, with the permutation sign
/// computed by inversion counting — combinatorial, no recursion on minors.
fn pfaffian_by_matchings(s: &SkewMatrix) -> Rat {
    fn go(remaining: &[usize], pairs: &mut Vec<(usize, usize)>, s: &SkewMatrix, total: &mut Rat) {
        if remaining.is_empty() {
            let flat: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            let mut inversions = 0usize;
            for x in 0..flat.len() {
                for y in (x + 1)..flat.len() {
                    if flat[x] > flat[y] {
                        inversions += 1;
                    }
                }
            }
            let mut prod = if inversions % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            for &(a, b) in pairs.iter() {
                prod *= s.entry(a, b).clone();
            }
            *total += prod;
            return;
        }
        let first = remaining[0];
        for pos in 1..remaining.len() {
            let partner = remaining[pos];
            let rest: Vec<usize> =
                remaining[1..].iter().copied().filter(|&x| x != partner).collect();
            pairs.push((first, partner));
            go(&rest, pairs, s, total);
            pairs.pop();
        }
    }
    let indices: Vec<usize> = (0..s.size()).collect();
    let mut total = rat_int(0);
    go(&indices, &mut Vec::new(), s, &mut total);
    total
}

fn skew_from_raw(n: usize, vals: &[(i64, i64)]) -> SkewMatrix {
    let mut rows = vec![vec![rat_int(0); n]; n];
    let mut it = vals.iter();
    for i in 0..n {
        for j in (i + 1)..n {
            let &(p, q) = it.next().expect("enough raw entries");
            rows[i][j] = rat(p, q);
        }
    }
    SkewMatrix::complete_skew(rows).unwrap()
}

fn multiply(a: &SkewMatrix, b: &SkewMatrix) -> Vec<Vec<Rat>> {
    let n = a.size();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| a.entry(i, k).clone() * b.entry(k, j).clone())
                        .fold(rat_int(0), |acc, x| acc + x)
                })
                .collect()
        })
        .collect()
}

fn check_pfaffian_oracles(s: &SkewMatrix) {
    let pf = s.pfaffian();
    assert_eq!(pf.clone() * pf.clone(), det(s.rows()), "Pf^2 = det");
    assert_eq!(pf, pfaffian_by_matchings(s), "matching expansion");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pfaffian_squares_to_the_determinant_dim2(
        vals in proptest::collection::vec((-6i64..=6, 1i64..=4), 1),
    ) {
        check_pfaffian_oracles(&skew_from_raw(2, &vals));
    }

    #[test]
    fn pfaffian_squares_to_the_determinant_dim4(
        vals in proptest::collection::vec((-6i64..=6, 1i64..=4), 6),
    ) {
        check_pfaffian_oracles(&skew_from_raw(4, &vals));
    }

    #[test]
    fn pfaffian_squares_to_the_determinant_dim6(
        vals in proptest::collection::vec((-6i64..=6, 1i64..=4), 15),
    ) {
        check_pfaffian_oracles(&skew_from_raw(6, &vals));
    }

    #[test]
    fn span_solve_agrees_with_the_rank_oracle(
        c in proptest::collection::vec((-4i64..=4, 1i64..=3), 4),
        r1 in proptest::collection::vec((-4i64..=4, 1i64..=3), 4),
        r2 in proptest::collection::vec((-4i64..=4, 1i64..=3), 4),
    ) {
        let to_rats = |v: &[(i64, i64)]| -> Vec<Rat> {
            v.iter().map(|&(p, q)| rat(p, q)).collect()
        };
        let (c, r1, r2) = (to_rats(&c), to_rats(&r1), to_rats(&r2));
        let cert = span_solve(&c, &r1, &r2);
        let base = linalg::rank(&[r1.clone(), r2.clone()]);
        let extended = linalg::rank(&[r1.clone(), r2.clone(), c.clone()]);
        prop_assert_eq!(cert.is_some(), base == extended);
        if let Some(cert) = cert {
            for k in 0..c.len() {
                let combo = cert.lambda.clone() * r1[k].clone()
                    + cert.mu.clone() * r2[k].clone();
                prop_assert_eq!(&combo, &c[k]);
            }
        }
    }

    #[test]
    fn inversion_multiplies_to_the_identity(
        vals in proptest::collection::vec((-6i64..=6, 1i64..=4), 6),
    ) {
        let s = skew_from_raw(4, &vals);
        if let Ok(inv) = s.invert() {
            let product = multiply(&s, &inv);
            for i in 0..4 {
                for j in 0..4 {
                    let expected = rat_int(i64::from(i == j));
                    prop_assert_eq!(&product[i][j], &expected);
                }
            }
        } else {
            prop_assert!(s.pfaffian().is_zero());
        }
    }

    #[test]
    fn completion_ignores_the_lower_triangle(
        vals in proptest::collection::vec((-6i64..=6, 1i64..=4), 6),
        noise in proptest::collection::vec(-9i64..=9, 6),
    ) {
        let clean = skew_from_raw(4, &vals);
        // Same upper triangle, arbitrary junk below the diagonal.
        let mut noisy = clean.rows().to_vec();
        let mut it = noise.iter();
        for i in 0..4 {
            for j in 0..i {
                noisy[i][j] = rat_int(*it.next().unwrap());
            }
        }
        let completed = SkewMatrix::complete_skew(noisy).unwrap();
        prop_assert_eq!(completed.rows(), clean.rows());
        prop_assert_eq!(completed.pfaffian(), clean.pfaffian());
    }
}

#[test]
fn pfaffian_of_odd_sizes_is_rejected_upstream() {
    let rows = vec![vec![rat_int(0); 3]; 3];
    assert!(SkewMatrix::complete_skew(rows).is_err());
}

#[test]
fn matching_oracle_on_the_worked_sample() {
    // Upper triangle 1, 2, 4, 3, 5, 6: Pf = 1*6 - 2*5 + 4*3 = 8.
    let s = skew_from_raw(4, &[(1, 1), (2, 1), (4, 1), (3, 1), (5, 1), (6, 1)]);
    assert_eq!(s.pfaffian(), rat_int(8));
    assert_eq!(pfaffian_by_matchings(&s), rat_int(8));
    assert_eq!(det(s.rows()), rat_int(64));
}
