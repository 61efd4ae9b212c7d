//! Exact rank over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank of the matrix whose rows are given, by Gaussian elimination over Q.
#[allow(clippy::needless_range_loop)]
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][col].clone();
        for c in col..cols {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for i in 0..m.len() {
            if i == rank || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for c in col..cols {
                let delta = &f * &m[rank][c];
                m[i][c] -= delta;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Whether `v` lies in the row space of `rows`.
pub fn in_row_span(rows: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let base = rank(rows);
    let mut extended = rows.to_vec();
    extended.push(v.to_vec());
    rank(&extended) == base
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(&m(&[&[0, 0, 0]])), 0);
        assert_eq!(rank(&m(&[])), 0);
        assert_eq!(rank(&m(&[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1]])), 2);
    }

    #[test]
    fn span_membership() {
        let rows = m(&[&[1, -1, 0, 0], &[0, 1, -1, 0]]);
        assert!(in_row_span(&rows, &m(&[&[1, 0, -1, 0]])[0]));
        assert!(!in_row_span(&rows, &m(&[&[0, 0, 1, -1]])[0]));
    }
}
