use crate::exactnum::gf2::{GF2Matrix, GF2Vector};
use crate::exactnum::linalg::IntMatrix;

use super::NiceLieAlgebra;

/// One row per bracket: `+1` at `k`, `-1` at `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMatrix {
    /// `(i, j, k)` per row, 0-based, in bracket order.
    pub rows: Vec<(usize, usize, usize)>,
    pub matrix: IntMatrix,
    pub mod2: GF2Matrix,
}

pub fn root_matrix(alg: &NiceLieAlgebra) -> RootMatrix {
    let n = alg.dim();
    let rows: Vec<(usize, usize, usize)> = alg.brackets().iter().map(|b| (b.i, b.j, b.k)).collect();
    let int_rows: Vec<Vec<i64>> = rows
        .iter()
        .map(|&(i, j, k)| {
            let mut r = vec![0i64; n];
            r[i] -= 1;
            r[j] -= 1;
            r[k] += 1;
            r
        })
        .collect();
    let matrix = if int_rows.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::from_rows(&int_rows)
    };
    let mod2 = GF2Matrix::new(
        n,
        rows.iter()
            .map(|&(i, j, k)| GF2Vector::from_support(n, &[i, j, k]))
            .collect(),
    );
    RootMatrix { rows, matrix, mod2 }
}

impl RootMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_nice_algebra;
    use std::collections::BTreeMap;

    #[test]
    fn heisenberg_row() {
        let g = parse_nice_algebra("0,0,e^{12}", &BTreeMap::new()).unwrap();
        let m = g.root_matrix();
        assert_eq!(m.matrix, IntMatrix::from_rows(&[[-1, -1, 1]]));
        assert_eq!(m.mod2.row(0).to_string(), "111");
    }
}
