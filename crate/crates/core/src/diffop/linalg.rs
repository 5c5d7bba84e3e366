//! Gauss-Jordan elimination over a [`Scalar`] field.

use crate::scalar::Scalar;

/// Reduced row-echelon form of `rows` (each of length `ncols`).
///
/// Returns the nonzero rows, normalized so each pivot is 1, together with
/// the pivot column of each row.
pub(crate) fn rref<S: Scalar>(mut rows: Vec<Vec<S>>, ncols: usize) -> (Vec<Vec<S>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = S::one() / rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.clone() - factor.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Basis of the solution space of the homogeneous system given in RREF.
pub(crate) fn nullspace<S: Scalar>(rows: &[Vec<S>], pivots: &[usize], ncols: usize) -> Vec<Vec<S>> {
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![S::zero(); ncols];
            v[fc] = S::one();
            for (row, &pc) in rows.iter().zip(pivots) {
                v[pc] = -row[fc].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn reduces_and_drops_dependent_rows() {
        let rows = vec![row(&[2, 4, 0]), row(&[1, 2, 1]), row(&[3, 6, 1])];
        let (r, p) = rref(rows, 3);
        assert_eq!(p, vec![0, 2]);
        assert_eq!(r, vec![row(&[1, 2, 0]), row(&[0, 0, 1])]);
    }

    #[test]
    fn nullspace_solves_system() {
        let rows = vec![row(&[1, 1, 0, -1]), row(&[0, 1, 1, 0])];
        let (r, p) = rref(rows.clone(), 4);
        let basis = nullspace(&r, &p, 4);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for eq in &rows {
                let dot = eq.iter().zip(v).fold(Rational::from_i64(0), |acc, (a, b)| acc + a * b);
                assert_eq!(dot, Rational::from_i64(0));
            }
        }
    }
}
