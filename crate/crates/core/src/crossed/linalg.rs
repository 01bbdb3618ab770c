//! Exact linear algebra over the central fraction field.
//!
//! Determinants and linear solves go through fraction-free (Bareiss-style)
//! elimination on denominator-cleared Laurent-polynomial matrices, which
//! keeps intermediate entries polynomial instead of compounding fractions.
//! Nullspace and rank, used by the center computation on small sparse
//! systems, use ordinary fraction elimination.

use crate::crossed::laurent::{CentralFraction, LaurentPoly};
use crate::error::{Error, Result};

/// Clears denominators row by row; returns the polynomial matrix together
/// with the per-row multiplier that was applied.
fn clear_denominators(
    rows: &[Vec<CentralFraction>],
    nvars: usize,
) -> (Vec<Vec<LaurentPoly>>, Vec<LaurentPoly>) {
    let mut cleared = Vec::with_capacity(rows.len());
    let mut multipliers = Vec::with_capacity(rows.len());
    for row in rows {
        // repeated denominators (common when entries share a source fraction)
        // must be multiplied in only once
        let mut m = LaurentPoly::one(nvars);
        let mut seen: Vec<&LaurentPoly> = Vec::new();
        for entry in row {
            if !entry.den().is_one() && !seen.contains(&entry.den()) {
                seen.push(entry.den());
                m = m.mul(entry.den());
            }
        }
        let poly_row: Vec<LaurentPoly> = row
            .iter()
            .map(|entry| entry.num().mul(&m.exact_div(entry.den())))
            .collect();
        cleared.push(poly_row);
        multipliers.push(m);
    }
    (cleared, multipliers)
}

/// Bareiss forward elimination in place over the leading `n` columns of an
/// `n × m` polynomial matrix.  Returns the sign of the row permutation, or
/// `None` when a pivot column is identically zero (singular leading block).
fn bareiss_forward(mat: &mut [Vec<LaurentPoly>], nvars: usize) -> Option<i32> {
    let n = mat.len();
    let mut sign = 1i32;
    let mut prev = LaurentPoly::one(nvars);
    for k in 0..n {
        // pick the sparsest nonzero pivot to limit fill-in
        let pivot = (k..n)
            .filter(|&r| !mat[r][k].is_zero())
            .min_by_key(|&r| mat[r][k].num_terms())?;
        if pivot != k {
            mat.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in (k + 1..mat[i].len()).rev() {
                let num = mat[k][k].mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num.exact_div(&prev);
            }
            mat[i][k] = LaurentPoly::zero(nvars);
        }
        prev = mat[k][k].clone();
    }
    Some(sign)
}

/// Determinant of a square matrix over the central fraction field.
pub fn determinant(rows: &[Vec<CentralFraction>], nvars: usize) -> CentralFraction {
    let n = rows.len();
    if n == 0 {
        return CentralFraction::one(nvars);
    }
    let (mut mat, multipliers) = clear_denominators(rows, nvars);
    let sign = match bareiss_forward(&mut mat, nvars) {
        Some(s) => s,
        None => return CentralFraction::zero(nvars),
    };
    let mut det_poly = mat[n - 1][n - 1].clone();
    if sign < 0 {
        det_poly = det_poly.neg();
    }
    let mut den = LaurentPoly::one(nvars);
    for m in multipliers {
        den = den.mul(&m);
    }
    CentralFraction::new(det_poly, den).expect("row multipliers are nonzero")
}

/// Solves `A x = b` for square nonsingular `A`.
pub fn solve(
    rows: &[Vec<CentralFraction>],
    rhs: &[CentralFraction],
    nvars: usize,
) -> Result<Vec<CentralFraction>> {
    let n = rows.len();
    assert_eq!(rhs.len(), n);
    let augmented: Vec<Vec<CentralFraction>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (mut mat, _) = clear_denominators(&augmented, nvars);
    // Fraction-free Gauss-Jordan: eliminate column k in every other row, with
    // each update divided exactly by the previous pivot.  Entries stay
    // polynomial throughout; back substitution over fractions would let
    // numerators and denominators compound instead.
    let mut prev = LaurentPoly::one(nvars);
    for k in 0..n {
        let Some(pivot) = (k..n)
            .filter(|&r| !mat[r][k].is_zero())
            .min_by_key(|&r| mat[r][k].num_terms())
        else {
            return Err(Error::Normalization("singular linear system".into()));
        };
        mat.swap(pivot, k);
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in (k + 1..=n).rev() {
                let num = mat[k][k].mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num.exact_div(&prev);
            }
            mat[i][k] = LaurentPoly::zero(nvars);
        }
        prev = mat[k][k].clone();
    }
    // every processed diagonal would equal the final pivot, so the leading
    // block is prev·I and x_i = mat[i][n] / prev
    let mut x = Vec::with_capacity(n);
    for row in &mat {
        x.push(CentralFraction::new(row[n].clone(), prev.clone())?);
    }
    Ok(x)
}

/// Row-reduces over the fraction field; returns (pivot columns, reduced rows).
fn row_reduce(rows: &mut Vec<Vec<CentralFraction>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for e in rows[r].iter_mut() {
            *e = e.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = factor.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a matrix over the central fraction field.
pub fn rank(rows: &[Vec<CentralFraction>], ncols: usize) -> usize {
    let mut m: Vec<Vec<CentralFraction>> = rows.to_vec();
    row_reduce(&mut m, ncols).len()
}

/// A basis of the right nullspace `{v : A v = 0}`.
pub fn nullspace(rows: &[Vec<CentralFraction>], ncols: usize, nvars: usize) -> Vec<Vec<CentralFraction>> {
    let mut m: Vec<Vec<CentralFraction>> = rows.to_vec();
    let pivots = row_reduce(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![CentralFraction::zero(nvars); ncols];
        v[f] = CentralFraction::one(nvars);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = m[r][f].neg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rat;

    fn c(nvars: usize, n: i64, d: i64) -> CentralFraction {
        CentralFraction::constant(nvars, rat(n, d))
    }

    #[test]
    fn determinant_rational() {
        // |1 2; 3 4| = -2
        let rows = vec![
            vec![c(0, 1, 1), c(0, 2, 1)],
            vec![c(0, 3, 1), c(0, 4, 1)],
        ];
        assert_eq!(determinant(&rows, 0), c(0, -2, 1));
    }

    #[test]
    fn determinant_with_variables() {
        // |t 1; 1 t| = t² - 1
        let t = CentralFraction::from_poly(LaurentPoly::var(1, 0));
        let rows = vec![
            vec![t.clone(), c(1, 1, 1)],
            vec![c(1, 1, 1), t.clone()],
        ];
        let expected = CentralFraction::from_poly(
            LaurentPoly::var(1, 0)
                .mul(&LaurentPoly::var(1, 0))
                .sub(&LaurentPoly::one(1)),
        );
        assert_eq!(determinant(&rows, 1), expected);
        // singular matrix
        let rows = vec![
            vec![t.clone(), t.clone()],
            vec![t.clone(), t],
        ];
        assert!(determinant(&rows, 1).is_zero());
    }

    #[test]
    fn solve_small_system() {
        // x + 2y = 5, 3x + 4y = 11 → x = 1, y = 2
        let rows = vec![
            vec![c(0, 1, 1), c(0, 2, 1)],
            vec![c(0, 3, 1), c(0, 4, 1)],
        ];
        let rhs = vec![c(0, 5, 1), c(0, 11, 1)];
        let x = solve(&rows, &rhs, 0).unwrap();
        assert_eq!(x, vec![c(0, 1, 1), c(0, 2, 1)]);
        // fractional entries
        let t = CentralFraction::from_poly(LaurentPoly::var(1, 0));
        let tinv = t.inv().unwrap();
        let rows = vec![vec![tinv.clone()]];
        let rhs = vec![CentralFraction::one(1)];
        assert_eq!(solve(&rows, &rhs, 1).unwrap(), vec![t]);
    }

    #[test]
    fn rank_and_nullspace() {
        // [1 1 0; 0 0 1] has rank 2 and nullspace spanned by (-1, 1, 0)
        let rows = vec![
            vec![c(0, 1, 1), c(0, 1, 1), c(0, 0, 1)],
            vec![c(0, 0, 1), c(0, 0, 1), c(0, 1, 1)],
        ];
        assert_eq!(rank(&rows, 3), 2);
        let ns = nullspace(&rows, 3, 0);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![c(0, -1, 1), c(0, 1, 1), c(0, 0, 1)]);
    }
}
