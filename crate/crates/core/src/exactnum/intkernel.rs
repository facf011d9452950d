//! Integer kernels via unimodular row reduction (Hermite form).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::linalg::IntMatrix;

/// Row-reduces `rows` over ℤ to Hermite normal form (positive pivots,
/// entries above a pivot reduced into `[0, pivot)`), applying the same
/// unimodular operations to `transform` when given. Returns the rank.
pub fn hermite_rows(rows: &mut [Vec<BigInt>], mut transform: Option<&mut [Vec<BigInt>]>) -> usize {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        loop {
            // Smallest nonzero entry (in absolute value) becomes the pivot.
            let pivot = (rank..n_rows)
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { break };
            rows.swap(rank, p);
            if let Some(t) = transform.as_deref_mut() {
                t.swap(rank, p);
            }
            let mut done = true;
            for r in rank + 1..n_rows {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[rank][col]);
                sub_multiple(rows, r, rank, &q);
                if let Some(t) = transform.as_deref_mut() {
                    sub_multiple(t, r, rank, &q);
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rank < n_rows && !rows[rank][col].is_zero() {
            if rows[rank][col].is_negative() {
                negate(&mut rows[rank]);
                if let Some(t) = transform.as_deref_mut() {
                    negate(&mut t[rank]);
                }
            }
            for r in 0..rank {
                let q = rows[r][col].div_floor(&rows[rank][col]);
                if q.is_zero() {
                    continue;
                }
                sub_multiple(rows, r, rank, &q);
                if let Some(t) = transform.as_deref_mut() {
                    sub_multiple(t, r, rank, &q);
                }
            }
            rank += 1;
        }
    }
    rank
}

fn sub_multiple(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (src, dst) = if target < source {
        let (a, b) = rows.split_at_mut(source);
        (&b[0], &mut a[target])
    } else {
        let (a, b) = rows.split_at_mut(target);
        (&a[source], &mut b[0])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

fn negate(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -x.clone();
    }
}

/// Columns form a ℤ-basis of `ker A ∩ ℤⁿ`, reduced to Hermite form so that
/// the result depends only on the lattice. Each column is primitive.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let mut rows: Vec<Vec<BigInt>> = (0..n).map(|j| a.column(j)).collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(i32::from(i == j))).collect())
        .collect();
    let rank = hermite_rows(&mut rows, Some(&mut u));
    let mut basis: Vec<Vec<BigInt>> = u.split_off(rank);
    let k = hermite_rows(&mut basis, None);
    basis.truncate(k);
    for v in &mut basis {
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g > BigInt::from(1) {
            for x in v.iter_mut() {
                *x = &*x / &g;
            }
        }
    }
    IntMatrix::from_columns(n, &basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_matrix_gives_identity() {
        let k = integer_kernel(&IntMatrix::zeros(2, 2));
        assert_eq!(k, IntMatrix::identity(2));
    }

    #[test]
    fn full_rank_gives_empty() {
        let a = IntMatrix::from_rows(&[[-1, -1, 1, 0], [-1, 0, -1, 1]]).transpose();
        assert_eq!(integer_kernel(&a).cols(), 0);
    }

    #[test]
    fn lattice_not_just_rational_span() {
        // ker of [2 4] over ℤ is spanned by (-2, 1), not by a multiple.
        let k = integer_kernel(&IntMatrix::from_rows(&[[2, 4]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), ints(&[2, -1]));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = IntMatrix::from_rows(&[[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        for col in k.columns() {
            assert!(a.mul_vec(&col).iter().all(Zero::is_zero));
        }
    }
}
