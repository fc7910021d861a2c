//! Incremental double description: extreme rays of `{x : A x >= 0}`.
//!
//! Classical Motzkin-style insertion with the combinatorial adjacency
//! test. Requires the cone to be pointed, i.e. `rank(A) = dim`; callers
//! check this. All arithmetic is exact over integers after primitive
//! scaling.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ConeError;
use crate::rational::{primitive_integer_ray, Rational};

/// Extreme rays (primitive, lex-sorted) of the cone `{x : <a_i, x> >= 0}`.
///
/// Errors with `NotPointed` when the constraint matrix has rank below the
/// ambient dimension, and `TooManyConstraints` past the 128-row active-set
/// budget.
pub(crate) fn extreme_rays_of_inequalities(
    constraints: &[Vec<Rational>],
    dim: usize,
) -> Result<Vec<Vec<BigInt>>, ConeError> {
    assert!(dim > 0);
    if constraints.len() > 128 {
        return Err(ConeError::TooManyConstraints(constraints.len()));
    }
    let rows: Vec<Vec<BigInt>> = constraints
        .iter()
        .map(|r| {
            assert_eq!(r.len(), dim, "ragged constraint row");
            primitive_integer_ray(r)
        })
        .collect();

    let basis = independent_rows(&rows, dim);
    if basis.len() < dim {
        return Err(ConeError::NotPointed {
            constraint_rank: basis.len(),
        });
    }

    // initial simplicial cone: rays are the columns of the inverse of the
    // chosen row submatrix, so <a_i, r_j> = delta_ij on the basis rows
    let inverse = invert(&basis.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>());
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let coords: Vec<Rational> = (0..dim).map(|i| inverse[i][j].clone()).collect();
            Ray::new(primitive_integer_ray(&coords), &rows, 0)
        })
        .collect();

    let mut processed: Vec<usize> = basis.clone();
    for (idx, row) in rows.iter().enumerate() {
        if basis.contains(&idx) {
            continue;
        }
        processed.push(idx);
        insert_constraint(&mut rays, row, idx, &rows, &processed);
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

struct Ray {
    coords: Vec<BigInt>,
    /// active-constraint bitmask over original constraint indices
    active: u128,
}

impl Ray {
    fn new(coords: Vec<BigInt>, rows: &[Vec<BigInt>], _hint: usize) -> Ray {
        let mut active = 0u128;
        for (i, row) in rows.iter().enumerate() {
            if dot(row, &coords).is_zero() {
                active |= 1 << i;
            }
        }
        Ray { coords, active }
    }
}

fn insert_constraint(
    rays: &mut Vec<Ray>,
    row: &[BigInt],
    _row_idx: usize,
    all_rows: &[Vec<BigInt>],
    processed: &[usize],
) {
    let mut pos: Vec<usize> = Vec::new();
    let mut neg: Vec<usize> = Vec::new();
    let mut values: Vec<BigInt> = Vec::with_capacity(rays.len());
    for (i, ray) in rays.iter().enumerate() {
        let v = dot(row, &ray.coords);
        if v.is_positive() {
            pos.push(i);
        } else if v.is_negative() {
            neg.push(i);
        }
        values.push(v);
    }
    if neg.is_empty() {
        return;
    }

    let processed_mask: u128 = processed.iter().fold(0, |m, &i| m | (1 << i));
    let mut fresh: Vec<Ray> = Vec::new();
    for &p in &pos {
        for &n in &neg {
            if !adjacent(rays, p, n, processed_mask) {
                continue;
            }
            // w = <a, r_p> r_n - <a, r_n> r_p lies on the new hyperplane
            let coords: Vec<BigInt> = rays[p]
                .coords
                .iter()
                .zip(&rays[n].coords)
                .map(|(cp, cn)| &values[p] * cn - &values[n] * cp)
                .collect();
            let coords = primitive_big(&coords);
            fresh.push(Ray::new(coords, all_rows, 0));
        }
    }
    let keep: Vec<Ray> = std::mem::take(rays)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !values[*i].is_negative())
        .map(|(_, r)| r)
        .collect();
    *rays = keep;
    rays.extend(fresh);
}

/// Combinatorial adjacency over the processed constraints: `p` and `n`
/// are adjacent unless some third ray's active set contains both of
/// theirs.
fn adjacent(rays: &[Ray], p: usize, n: usize, processed_mask: u128) -> bool {
    let shared = rays[p].active & rays[n].active & processed_mask;
    for (i, r) in rays.iter().enumerate() {
        if i == p || i == n {
            continue;
        }
        if shared & r.active & processed_mask == shared {
            return false;
        }
    }
    true
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive_big(v: &[BigInt]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &g).collect()
}

/// Indices of a maximal set of linearly independent rows, scanned in
/// order (deterministic).
fn independent_rows(rows: &[Vec<BigInt>], dim: usize) -> Vec<usize> {
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v: Vec<Rational> = row
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        for e in &echelon {
            let lead = e.iter().position(|c| !c.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let factor = &v[lead] / &e[lead];
                for j in 0..dim {
                    let upd = &v[j] - &(&factor * &e[j]);
                    v[j] = upd;
                }
            }
        }
        if v.iter().any(|c| !c.is_zero()) {
            echelon.push(v);
            picked.push(idx);
            if picked.len() == dim {
                break;
            }
        }
    }
    picked
}

/// Exact inverse of a square integer matrix by Gauss-Jordan elimination.
fn invert(m: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::from_integer(1.into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("matrix chosen to be invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &scale;
            inv[col][j] = &inv[col][j] * &scale;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[r][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                let ua = &a[r][j] - &(&factor * &a[col][j]);
                a[r][j] = ua;
                let ui = &inv[r][j] - &(&factor * &inv[col][j]);
                inv[r][j] = ui;
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn rows(data: &[&[i64]]) -> Vec<Vec<Rational>> {
        data.iter()
            .map(|r| r.iter().map(|&c| int(c)).collect())
            .collect()
    }

    fn big(data: &[&[i64]]) -> Vec<Vec<BigInt>> {
        data.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn orthant_is_self_dual() {
        let rays = extreme_rays_of_inequalities(&rows(&[&[1, 0], &[0, 1]]), 2).unwrap();
        assert_eq!(rays, big(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn redundant_constraint_ignored() {
        let rays =
            extreme_rays_of_inequalities(&rows(&[&[1, 0], &[0, 1], &[1, 1]]), 2).unwrap();
        assert_eq!(rays, big(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn wedge_cut_from_orthant() {
        // x >= 0, y >= 0, x - y >= 0 is the wedge between (1,0) and (1,1)
        let rays =
            extreme_rays_of_inequalities(&rows(&[&[1, 0], &[0, 1], &[1, -1]]), 2).unwrap();
        assert_eq!(rays, big(&[&[1, 0], &[1, 1]]));
    }

    #[test]
    fn simplicial_three_dim() {
        let rays =
            extreme_rays_of_inequalities(&rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3)
                .unwrap();
        assert_eq!(rays.len(), 3);
    }

    #[test]
    fn flattened_to_lower_dimension() {
        // x >= 0, -x >= 0, y >= 0 forces x = 0
        let rays =
            extreme_rays_of_inequalities(&rows(&[&[1, 0], &[-1, 0], &[0, 1]]), 2).unwrap();
        assert_eq!(rays, big(&[&[0, 1]]));
    }

    #[test]
    fn trivial_cone_has_no_rays() {
        let rays = extreme_rays_of_inequalities(
            &rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]),
            2,
        )
        .unwrap();
        assert!(rays.is_empty());
    }

    #[test]
    fn unpointed_input_rejected() {
        let err = extreme_rays_of_inequalities(&rows(&[&[1, 0]]), 2).unwrap_err();
        assert!(matches!(err, ConeError::NotPointed { constraint_rank: 1 }));
    }

    #[test]
    fn square_pyramid_cross_check() {
        // cone over the square: 4 constraints in R^3, 4 extreme rays
        let rays = extreme_rays_of_inequalities(
            &rows(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]),
            3,
        )
        .unwrap();
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert_eq!(r[2], BigInt::from(1));
            assert_eq!((r[0].clone().abs(), r[1].clone().abs()),
                (BigInt::from(1), BigInt::from(1)));
        }
    }
}
