//! Phase-I simplex over exact rationals.
//!
//! Decides feasibility of `A x = b, x >= 0` and returns a feasible point.
//! Pivoting uses Bland's rule, so termination is unconditional; all
//! arithmetic is exact, so the verdict is too.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Returns some `x >= 0` with `A x = b`, or `None` when infeasible.
/// `a` is row-major with `a.len()` constraint rows.
pub(crate) fn feasible_nonneg_solution(
    a: &[Vec<Rational>],
    b: &[Rational],
) -> Option<Vec<Rational>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, Vec::len);
    if rows == 0 {
        return Some(vec![Rational::zero(); cols]);
    }

    // tableau: [A | I | b], artificials start basic; rows flipped so b >= 0
    let width = cols + rows + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), cols, "ragged constraint matrix");
        let flip = b[i].is_negative();
        let mut r: Vec<Rational> = Vec::with_capacity(width);
        r.extend(row.iter().map(|c| if flip { -c } else { c.clone() }));
        for j in 0..rows {
            r.push(if j == i {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            });
        }
        r.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    // objective: minimize the sum of artificials; reduced costs for the
    // current all-artificial basis are the negated column sums
    let mut obj = vec![Rational::zero(); width];
    for r in &t {
        for (j, c) in r.iter().enumerate() {
            if j < cols || j == width - 1 {
                let upd = &obj[j] - c;
                obj[j] = upd;
            }
        }
    }

    loop {
        // Bland: entering = smallest column index with negative reduced cost
        let entering = (0..cols + rows).find(|&j| obj[j].is_negative());
        let Some(enter) = entering else { break };

        // ratio test, ties broken by smallest basis variable (Bland)
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // phase-I objective is bounded below by zero, so an unbounded
            // direction cannot occur with exact arithmetic
            unreachable!("phase-I simplex found an unbounded direction");
        };

        pivot(&mut t, &mut obj, leave, enter);
        basis[leave] = enter;
    }

    // optimum reached: the objective row's rhs is -(sum of artificials)
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < cols {
            x[bv] = t[i][width - 1].clone();
        }
        // artificials still basic carry value zero at a zero optimum
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], obj: &mut [Rational], leave: usize, enter: usize) {
    let width = obj.len();
    let inv = t[leave][enter].recip();
    for c in t[leave].iter_mut() {
        *c = &*c * &inv;
    }
    for i in 0..t.len() {
        if i == leave {
            continue;
        }
        let factor = t[i][enter].clone();
        if factor.is_zero() {
            continue;
        }
        for j in 0..width {
            let upd = &t[i][j] - &(&factor * &t[leave][j]);
            t[i][j] = upd;
        }
    }
    let factor = obj[enter].clone();
    if !factor.is_zero() {
        for j in 0..width {
            let upd = &obj[j] - &(&factor * &t[leave][j]);
            obj[j] = upd;
        }
    }
}
