//! Shared test support: the brute-force truncated-linear-algebra oracle
//! for local intersection multiplicities, and small random generators.
//!
//! The oracle is deliberately independent of the library's reduction
//! algorithm: it computes `dim Q[[x,y]]/(g,h)` as the dimension of the
//! degree-truncated quotient, raising the truncation until the dimension
//! stabilizes for two consecutive cutoffs (which pins the exact value).

#![allow(dead_code)]

use cmcone::poly::BivariatePoly;
use cmcone::{int, Rational};
use num_traits::Zero;
use rand::Rng;

/// Colength of `(g, h)` in `Q[[x,y]]` by Macaulay-matrix truncation, or
/// `None` when the dimension fails to stabilize below the cap (the
/// infinite case, or a cap set too low).
pub fn macaulay_colength(g: &BivariatePoly, h: &BivariatePoly, cap: usize) -> Option<u64> {
    let mut prev: Option<u64> = None;
    for n in 1..cap {
        let q = truncated_quotient_dim(g, h, n);
        if prev == Some(q) {
            return Some(q);
        }
        prev = Some(q);
    }
    None
}

/// `dim V_N - rank{ trunc_N(mono * g), trunc_N(mono * h) }` where `V_N`
/// is spanned by the monomials of total degree below `N`.
fn truncated_quotient_dim(g: &BivariatePoly, h: &BivariatePoly, n: usize) -> u64 {
    let monomials: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|ex| (0..n as u32 - ex).map(move |ey| (ex, ey)))
        .collect();
    let index = |ex: u32, ey: u32| -> Option<usize> {
        if (ex + ey) < n as u32 {
            Some(monomials.iter().position(|&m| m == (ex, ey)).unwrap())
        } else {
            None
        }
    };
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for poly in [g, h] {
        if poly.is_zero() {
            continue;
        }
        for &(mx, my) in &monomials {
            let mut row = vec![Rational::zero(); monomials.len()];
            let mut nonzero = false;
            for (&(ex, ey), c) in poly.terms() {
                if let Some(i) = index(ex + mx, ey + my) {
                    row[i] = &row[i] + c;
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    monomials.len() as u64 - row_rank(rows)
}

fn row_rank(mut rows: Vec<Vec<Rational>>) -> u64 {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone().recip();
        for c in rows[rank].iter_mut() {
            *c = &*c * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..cols {
                    let upd = &rows[r][c] - &(&factor * &rows[rank][c]);
                    rows[r][c] = upd;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank as u64
}

/// A random small germ vanishing at the origin: a handful of low-degree
/// terms with small integer coefficients, never zero.
pub fn random_origin_germ(rng: &mut impl Rng) -> BivariatePoly {
    loop {
        let n_terms = rng.random_range(1..=3usize);
        let mut terms = Vec::new();
        for _ in 0..n_terms {
            let ex = rng.random_range(0..=3u32);
            let ey = rng.random_range(0..=3u32);
            if ex == 0 && ey == 0 {
                continue;
            }
            let c = rng.random_range(-3i64..=3);
            if c != 0 {
                terms.push(((ex, ey), int(c)));
            }
        }
        let p = BivariatePoly::from_terms(terms, ("x", "y"));
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random class with small rational coordinates, never the zero class.
pub fn random_nonzero_class(rng: &mut impl Rng, m: usize) -> cmcone::grothendieck::GClass {
    loop {
        let coords: Vec<Rational> = (0..m)
            .map(|_| {
                let num = rng.random_range(-9i64..=9);
                let den = rng.random_range(1i64..=9);
                Rational::new(num.into(), den.into())
            })
            .collect();
        let class = cmcone::grothendieck::GClass(coords);
        if !class.is_zero() {
            return class;
        }
    }
}
