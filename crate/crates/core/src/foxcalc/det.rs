//! Exact determinants over Z[x, x^-1].

use crate::laurent::{AlgebraError, LaurentPoly, Var};

/// Fraction-free elimination. Each column is first shifted into Z[x] so the
/// Bareiss quotients are polynomial divisions; the shifts are restored at the end.
pub fn determinant(m: &[Vec<LaurentPoly>], var: Var) -> Result<LaurentPoly, AlgebraError> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one(var));
    }
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut shift = 0;
    for c in 0..n {
        let Some(lo) = (0..n).filter_map(|r| a[r][c].min_exp()).min() else {
            return Ok(LaurentPoly::zero(var));
        };
        for row in a.iter_mut() {
            row[c] = row[c].shift(-lo);
        }
        shift += lo;
    }
    let mut sign = 1;
    let mut prev = LaurentPoly::one(var);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(LaurentPoly::zero(var));
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.try_div_exact(&prev)?;
            }
            a[i][k] = LaurentPoly::zero(var);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].shift(shift);
    Ok(if sign < 0 { -d } else { d })
}
