//! Exact Gaussian elimination over the rationals.
//!
//! Small dense routines backing the homological rank computations and span
//! membership tests.  Everything works on row-major `Vec<Vec<Rat>>` data
//! and never leaves exact arithmetic.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::rational::Rat;

/// Rank of the row span of `rows` (all rows must share a length).
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    debug_assert!(m.iter().all(|r| r.len() == ncols));
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        let Some(src) = (pivot_row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, src);
        let pivot = m[pivot_row][col].clone();
        for r in (pivot_row + 1)..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..ncols {
                let delta = factor.clone() * m[pivot_row][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }
    pivot_row
}

/// Whether `target` lies in the row span of `rows`.
pub fn in_row_span(rows: &[Vec<Rat>], target: &[Rat]) -> bool {
    if target.iter().all(Zero::is_zero) {
        return true;
    }
    let base = rank(rows);
    let mut augmented = rows.to_vec();
    augmented.push(target.to_vec());
    rank(&augmented) == base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use alloc::vec;

    fn row(entries: &[i64]) -> Vec<Rat> {
        entries.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn rank_of_identity_and_deficient_matrices() {
        assert_eq!(rank(&[row(&[1, 0]), row(&[0, 1])]), 2);
        assert_eq!(rank(&[row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank(&[row(&[0, 0])]), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn rank_handles_rational_entries() {
        let rows = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 2), rat_int(1)],
            vec![rat_int(1), rat(2, 3)],
        ];
        assert_eq!(rank(&rows), 1);
    }

    #[test]
    fn span_membership() {
        let rows = [row(&[1, 0, 1]), row(&[0, 1, 1])];
        assert!(in_row_span(&rows, &row(&[2, 3, 5])));
        assert!(!in_row_span(&rows, &row(&[0, 0, 1])));
        assert!(in_row_span(&[], &row(&[0, 0, 0])));
        assert!(!in_row_span(&[], &row(&[1, 0, 0])));
    }
}
