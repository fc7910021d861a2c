//! Finitely generated lattices in `Q^n`, with a Hermite-normal-form
//! basis for exact coordinate arithmetic and point enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ConeError;
use crate::rational::Rational;

/// The integer span of a finite set of rational vectors.
///
/// Internally scaled so the lattice is `(1/denominator) * (Z-span of
/// integer basis rows)`; the basis is in row-style Hermite normal form,
/// so equal lattices get equal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    denominator: BigInt,
    /// HNF basis rows of the scaled integer lattice, full row rank.
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// Lattice generated by the given vectors in `Q^dim`.
    pub fn from_generators(dim: usize, generators: &[Vec<Rational>]) -> Result<Self, ConeError> {
        let mut den = BigInt::one();
        for g in generators {
            if g.len() != dim {
                return Err(ConeError::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            for c in g {
                den = den.lcm(c.denom());
            }
        }
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| g.iter().map(|c| c.numer() * (&den / c.denom())).collect())
            .collect();
        let basis = hermite_normal_form(rows, dim);
        Ok(Lattice {
            dim,
            denominator: den,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of independent basis vectors.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The `i`-th basis vector as a rational point.
    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        self.basis[i]
            .iter()
            .map(|c| Rational::new(c.clone(), self.denominator.clone()))
            .collect()
    }

    /// Integer-coordinate representation of `point` over the basis, or
    /// `None` when the point lies outside the rational span or has
    /// non-integer coordinates (not a lattice point). Use
    /// [`Lattice::span_coordinates`] for the rational solve alone.
    pub fn integer_coordinates(&self, point: &[Rational]) -> Option<Vec<BigInt>> {
        let coords = self.span_coordinates(point)?;
        coords
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    Some(c.numer().clone())
                } else {
                    None
                }
            })
            .collect()
    }

    /// Rational coordinates of `point` over the basis rows, or `None`
    /// when the point is outside the span.
    pub fn span_coordinates(&self, point: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(point.len(), self.dim);
        // scaled target: solve sum_i z_i * basis_i = denominator * point
        let mut target: Vec<Rational> = point
            .iter()
            .map(|c| c * Rational::from_integer(self.denominator.clone()))
            .collect();
        let mut coords = vec![Rational::zero(); self.basis.len()];
        // HNF rows have strictly increasing pivot columns; back-solve by
        // scanning them in order
        for (i, row) in self.basis.iter().enumerate() {
            let pivot = row.iter().position(|c| !c.is_zero()).expect("nonzero row");
            if target[pivot].is_zero() {
                continue;
            }
            let c = &target[pivot] / Rational::from_integer(row[pivot].clone());
            for (t, b) in target.iter_mut().zip(row) {
                let upd = &*t - &(&c * &Rational::from_integer(b.clone()));
                *t = upd;
            }
            coords[i] = c;
        }
        if target.iter().all(|c| c.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// The rational point with the given integer coordinates.
    pub fn point(&self, coords: &[BigInt]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.basis.len());
        let mut acc = vec![BigInt::zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (a, b) in acc.iter_mut().zip(row) {
                *a += c * b;
            }
        }
        acc.into_iter()
            .map(|n| Rational::new(n, self.denominator.clone()))
            .collect()
    }
}

/// Row-style Hermite normal form: unimodular row operations only, so the
/// row span over `Z` is preserved. Returns the nonzero rows, pivots
/// positive, entries above each pivot reduced to `[0, pivot)`.
fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    let mut pivot_row = 0;
    for col in 0..dim {
        loop {
            // find the row (at or below pivot_row) with the smallest
            // nonzero magnitude in this column
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if rows[r][col].magnitude() < rows[b][col].magnitude() {
                            best = Some(r);
                        }
                    }
                }
            }
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            if rows[pivot_row][col].is_negative() {
                for c in rows[pivot_row].iter_mut() {
                    *c = -std::mem::take(c);
                }
            }
            let mut done = true;
            let pivot_val = rows[pivot_row][col].clone();
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&pivot_val);
                for c in 0..dim {
                    let sub = &rows[r][c] - &q * &rows[pivot_row][c];
                    rows[r][c] = sub;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            // reduce the entries above the pivot into [0, pivot)
            let pivot_val = rows[pivot_row][col].clone();
            for r in 0..pivot_row {
                let q = rows[r][col].div_floor(&pivot_val);
                if q.is_zero() {
                    continue;
                }
                for c in 0..dim {
                    let sub = &rows[r][c] - &q * &rows[pivot_row][c];
                    rows[r][c] = sub;
                }
            }
            pivot_row += 1;
        }
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn standard_lattice() {
        let l = Lattice::from_generators(2, &[vec![int(1), int(0)], vec![int(0), int(1)]])
            .unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(
            l.integer_coordinates(&[int(3), int(-4)]),
            Some(vec![BigInt::from(3), BigInt::from(-4)])
        );
        assert_eq!(l.integer_coordinates(&[rat(1, 2), int(0)]), None);
    }

    #[test]
    fn half_integer_diagonal_refinement() {
        // Z^2 extended by (1/2, 1/2)
        let l = Lattice::from_generators(
            2,
            &[
                vec![int(1), int(0)],
                vec![int(0), int(1)],
                vec![rat(1, 2), rat(1, 2)],
            ],
        )
        .unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.integer_coordinates(&[rat(1, 2), rat(1, 2)]).is_some());
        assert!(l.integer_coordinates(&[rat(3, 2), rat(1, 2)]).is_some());
        assert!(l.integer_coordinates(&[rat(1, 2), int(1)]).is_none());
        assert!(l.integer_coordinates(&[int(2), int(5)]).is_some());
    }

    #[test]
    fn lower_rank_lattice() {
        let l = Lattice::from_generators(3, &[vec![int(1), int(1), int(0)]]).unwrap();
        assert_eq!(l.rank(), 1);
        assert!(l.integer_coordinates(&[int(4), int(4), int(0)]).is_some());
        assert!(l.span_coordinates(&[int(1), int(2), int(0)]).is_none());
    }

    #[test]
    fn hnf_basis_is_canonical() {
        let a = Lattice::from_generators(2, &[vec![int(2), int(1)], vec![int(1), int(2)]])
            .unwrap();
        let b = Lattice::from_generators(
            2,
            &[
                vec![int(1), int(2)],
                vec![int(2), int(1)],
                vec![int(3), int(3)],
            ],
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn point_and_coordinates_invert() {
        let l = Lattice::from_generators(
            2,
            &[vec![int(1), int(0)], vec![rat(1, 3), rat(1, 3)]],
        )
        .unwrap();
        let coords = vec![BigInt::from(-2), BigInt::from(5)];
        let p = l.point(&coords);
        assert_eq!(l.integer_coordinates(&p), Some(coords));
    }
}
