use num_traits::Zero;

use crate::rational::Rational;

/// Solves the square system `a x = b` exactly. `None` if `a` is singular.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for k in col..n {
            a[col][k] = &a[col][k] / &p;
        }
        b[col] = &b[col] / &p;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in col..n {
                let d = &f * &a[col][k];
                a[r][k] -= d;
            }
            let d = &f * &b[col];
            b[r] -= d;
        }
    }
    Some(b)
}
