//! Exact Gaussian elimination over the rationals, just enough to solve the
//! small dense systems produced by the homogeneous-bracket equations.

use num::Zero;

use crate::Rat;

/// Solves `A x = b` exactly. Returns a particular solution with free
/// variables set to zero, or `None` when the system is inconsistent.
pub(crate) fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    debug_assert_eq!(b.len(), rows);
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = Rat::new(a[r][c].denom().clone(), a[r][c].numer().clone());
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
                let t = &b[r] * &f;
                b[i] -= t;
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent row: all-zero coefficients with nonzero right side.
    for i in r..rows {
        if !b[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (c, pr) in pivot_of_col.iter().enumerate() {
        if let Some(pr) = pr {
            x[c] = b[*pr].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    #[test]
    fn solves_and_detects_inconsistency() {
        let a = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(3), rat_int(4)],
        ];
        let x = solve(a, vec![rat_int(5), rat_int(11)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(2)]);

        let a = vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(2), rat_int(2)],
        ];
        assert!(solve(a.clone(), vec![rat_int(1), rat_int(3)]).is_none());
        // Underdetermined consistent system: free variable pinned to zero.
        let x = solve(a, vec![rat_int(1), rat_int(2)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(0)]);
    }
}
