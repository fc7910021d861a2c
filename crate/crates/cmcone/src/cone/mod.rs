//! Exact rational polyhedral cone engine.
//!
//! Builds the Cohen-Macaulay cone of `xi*eta + f` hypersurfaces from the
//! subset ideal classes, converts between generator and facet
//! descriptions by the double description method, decides membership by
//! two independent exact routes (Fourier-Motzkin projection and phase-I
//! simplex), and enumerates lattice points on bounded rank slices.

mod chain;
mod dd;
mod fm;
mod lattice;
mod simplex;

pub use chain::{chain_decompose, ChainDecomposition};
pub use lattice::Lattice;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::grothendieck::{class_of_ideal, class_of_structure_sheaf, GClass, SubsetIdeal};
use crate::rational::{format_rational, primitive_integer_ray, Rational};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("the ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("cone generators must be nonzero")]
    ZeroGenerator,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone is not full-dimensional (span has dimension {span_dimension})")]
    NotFullDimensional { span_dimension: usize },
    #[error("constraint system is not pointed (rank {constraint_rank})")]
    NotPointed { constraint_rank: usize },
    #[error("rank slice is unbounded: the cone must be pointed with positive rank on every extremal ray")]
    UnboundedSlice,
    #[error("slice rank must be positive")]
    RankMustBePositive,
    #[error("lattice rank {lattice_rank} below ambient dimension {dim}; enumeration needs a full-rank lattice")]
    LatticeNotFullRank { lattice_rank: usize, dim: usize },
    #[error("chain decomposition needs at least two branches, got {0}")]
    NeedAtLeastTwoBranches(usize),
    #[error("too many branches: {0} (limit 16)")]
    TooManyBranches(usize),
    #[error("too many constraints for the double description pass: {0} (limit 128)")]
    TooManyConstraints(usize),
    #[error("Fourier-Motzkin projection exceeded its row budget")]
    ProjectionTooLarge,
    #[error("integer overflow while serializing cone data")]
    IntegerOverflow,
}

/// How membership queries are decided. Both engines are exact; they are
/// independent implementations cross-checked in the test suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipEngine {
    /// Fourier-Motzkin at low dimension, simplex otherwise.
    Auto,
    FourierMotzkin,
    Simplex,
}

/// A membership verdict with its certificate: a nonnegative combination
/// over the generators, or a separating normal (nonnegative on the cone,
/// negative on the point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Inside { combination: Vec<Rational> },
    Outside { separator: Vec<BigInt> },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// A rational polyhedral cone given by ray generators, with lazily
/// derived facet normals and extremal rays.
///
/// Derived data is computed at most once per cone value; concurrent
/// readers observe a single consistent result.
#[derive(Debug)]
pub struct Cone {
    dim: usize,
    generators: Vec<Vec<Rational>>,
    facets: OnceLock<Result<Vec<Vec<BigInt>>, ConeError>>,
    extremal: OnceLock<Vec<Vec<BigInt>>>,
    projection: OnceLock<Result<fm::FmProjection, ConeError>>,
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        Cone {
            dim: self.dim,
            generators: self.generators.clone(),
            facets: self.facets.clone(),
            extremal: self.extremal.clone(),
            projection: self.projection.clone(),
        }
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl Eq for Cone {}

impl Cone {
    /// Cone spanned by the given rays in `Q^dim`. Rays must be nonzero.
    pub fn from_rays(dim: usize, rays: Vec<Vec<Rational>>) -> Result<Cone, ConeError> {
        if dim == 0 {
            return Err(ConeError::ZeroDimension);
        }
        for r in &rays {
            if r.len() != dim {
                return Err(ConeError::DimensionMismatch {
                    expected: dim,
                    got: r.len(),
                });
            }
            if r.iter().all(|c| c.is_zero()) {
                return Err(ConeError::ZeroGenerator);
            }
        }
        Ok(Cone {
            dim,
            generators: rays,
            facets: OnceLock::new(),
            extremal: OnceLock::new(),
            projection: OnceLock::new(),
        })
    }

    /// Cone spanned by Grothendieck classes.
    pub fn from_classes(classes: &[GClass]) -> Result<Cone, ConeError> {
        let dim = classes.first().map_or(0, GClass::dim);
        Cone::from_rays(dim, classes.iter().map(|c| c.coords().to_vec()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    /// Dimension of the linear span of the generators.
    pub fn span_dimension(&self) -> usize {
        let mut echelon: Vec<Vec<Rational>> = Vec::new();
        for g in &self.generators {
            let mut v = g.clone();
            for e in &echelon {
                let lead = e.iter().position(|c| !c.is_zero()).unwrap();
                if !v[lead].is_zero() {
                    let factor = &v[lead] / &e[lead];
                    for j in 0..self.dim {
                        let upd = &v[j] - &(&factor * &e[j]);
                        v[j] = upd;
                    }
                }
            }
            if v.iter().any(|c| !c.is_zero()) {
                echelon.push(v);
                if echelon.len() == self.dim {
                    break;
                }
            }
        }
        echelon.len()
    }

    /// Irredundant facet normals `n` with `<n, x> >= 0`, primitive and
    /// lex-sorted: the double description dual of the rays. Requires a
    /// full-dimensional cone; otherwise reports the span dimension.
    pub fn facets(&self) -> Result<&[Vec<BigInt>], ConeError> {
        let result = self.facets.get_or_init(|| {
            let span = self.span_dimension();
            if span < self.dim {
                return Err(ConeError::NotFullDimensional {
                    span_dimension: span,
                });
            }
            dd::extreme_rays_of_inequalities(&self.generators, self.dim)
        });
        match result {
            Ok(f) => Ok(f),
            Err(e) => Err(e.clone()),
        }
    }

    /// The generators that cannot be written as nonnegative combinations
    /// of the others, decided by exact LP feasibility per generator.
    /// Primitive integer scaling, sorted lexicographically. Generators
    /// equal up to positive scaling are treated as one ray.
    pub fn extremal_rays(&self) -> &[Vec<BigInt>] {
        self.extremal.get_or_init(|| {
            let mut unique: Vec<Vec<BigInt>> = Vec::new();
            for g in &self.generators {
                let p = primitive_integer_ray(g);
                if !unique.contains(&p) {
                    unique.push(p);
                }
            }
            let mut extremal: Vec<Vec<BigInt>> = Vec::new();
            for (i, ray) in unique.iter().enumerate() {
                let others: Vec<&Vec<BigInt>> = unique
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, r)| r)
                    .collect();
                let a: Vec<Vec<Rational>> = (0..self.dim)
                    .map(|row| {
                        others
                            .iter()
                            .map(|r| Rational::from_integer(r[row].clone()))
                            .collect()
                    })
                    .collect();
                let b: Vec<Rational> = ray
                    .iter()
                    .map(|c| Rational::from_integer(c.clone()))
                    .collect();
                if simplex::feasible_nonneg_solution(&a, &b).is_none() {
                    extremal.push(ray.clone());
                }
            }
            extremal.sort();
            extremal
        })
    }

    fn fm_projection(&self) -> Result<&fm::FmProjection, ConeError> {
        let result = self
            .projection
            .get_or_init(|| fm::FmProjection::build(&self.generators, self.dim));
        match result {
            Ok(p) => Ok(p),
            Err(e) => Err(e.clone()),
        }
    }

    /// Membership with certificate, using Fourier-Motzkin below
    /// dimension five and simplex from there on.
    pub fn contains(&self, point: &[Rational]) -> Result<Membership, ConeError> {
        self.contains_via(point, MembershipEngine::Auto)
    }

    pub fn contains_via(
        &self,
        point: &[Rational],
        engine: MembershipEngine,
    ) -> Result<Membership, ConeError> {
        if point.len() != self.dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        let engine = match engine {
            MembershipEngine::Auto if self.dim <= 4 => MembershipEngine::FourierMotzkin,
            MembershipEngine::Auto => MembershipEngine::Simplex,
            other => other,
        };
        let combination = match engine {
            MembershipEngine::FourierMotzkin => self.fm_projection()?.certificate(point),
            MembershipEngine::Simplex => {
                let a: Vec<Vec<Rational>> = (0..self.dim)
                    .map(|row| self.generators.iter().map(|g| g[row].clone()).collect())
                    .collect();
                simplex::feasible_nonneg_solution(&a, point)
            }
            MembershipEngine::Auto => unreachable!(),
        };
        match combination {
            Some(combination) => Ok(Membership::Inside { combination }),
            None => Ok(Membership::Outside {
                separator: self.separating_normal(point)?,
            }),
        }
    }

    /// A normal that is nonnegative on the cone and negative on `point`:
    /// the first violated facet when the cone is full-dimensional, or a
    /// violated projected inequality otherwise.
    fn separating_normal(&self, point: &[Rational]) -> Result<Vec<BigInt>, ConeError> {
        if self.span_dimension() == self.dim {
            let facets = self.facets()?;
            for n in facets {
                let value: Rational = n
                    .iter()
                    .zip(point)
                    .map(|(c, x)| Rational::from_integer(c.clone()) * x)
                    .sum();
                if value.is_negative() {
                    return Ok(n.clone());
                }
            }
            unreachable!("point outside a full-dimensional cone violates some facet");
        }
        let proj = self.fm_projection()?;
        let row = fm::violated_row(proj, point)
            .expect("point outside the cone violates some projected row");
        Ok(primitive_integer_ray(&row))
    }

    /// True exactly when the cone meets its negative only at the origin
    /// and the coordinate-sum functional is strictly positive on every
    /// extremal ray; equivalently, the cone meets the rank-zero
    /// hyperplane only at the origin, which is what makes rank slices
    /// compact.
    pub fn is_pointed_with_positive_rank(&self) -> bool {
        if self.generators.is_empty() {
            return true;
        }
        // pointed <=> no nonnegative combination of generators vanishes
        // with total weight one
        let mut a: Vec<Vec<Rational>> = (0..self.dim)
            .map(|row| self.generators.iter().map(|g| g[row].clone()).collect())
            .collect();
        a.push(vec![Rational::from_integer(1.into()); self.generators.len()]);
        let mut b = vec![Rational::zero(); self.dim];
        b.push(Rational::from_integer(1.into()));
        if simplex::feasible_nonneg_solution(&a, &b).is_some() {
            return false;
        }
        self.extremal_rays()
            .iter()
            .all(|r| r.iter().sum::<BigInt>().is_positive())
    }

    /// All lattice points on the bounded slice `{x in C : sum x_i = r}`.
    ///
    /// The slice polytope is the convex hull of `r * ray / rank(ray)`
    /// over the extremal rays; enumeration walks integer lattice
    /// coordinates over the vertex bounding box with exact pruning and
    /// filters by membership. Output is lex-sorted.
    pub fn rank_slice_lattice_points(
        &self,
        r: u32,
        lattice: &Lattice,
    ) -> Result<Vec<Vec<Rational>>, ConeError> {
        if r == 0 {
            return Err(ConeError::RankMustBePositive);
        }
        if !self.is_pointed_with_positive_rank() {
            return Err(ConeError::UnboundedSlice);
        }
        if lattice.dim() != self.dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim,
                got: lattice.dim(),
            });
        }
        if lattice.rank() != self.dim {
            return Err(ConeError::LatticeNotFullRank {
                lattice_rank: lattice.rank(),
                dim: self.dim,
            });
        }
        let rays = self.extremal_rays();
        if rays.is_empty() {
            return Ok(Vec::new());
        }

        let rank_target = Rational::from_integer(BigInt::from(r));
        let vertices: Vec<Vec<Rational>> = rays
            .iter()
            .map(|ray| {
                let total: BigInt = ray.iter().sum();
                ray.iter()
                    .map(|c| Rational::new(c * BigInt::from(r), total.clone()))
                    .collect()
            })
            .collect();
        let vertex_coords: Vec<Vec<Rational>> = vertices
            .iter()
            .map(|v| {
                lattice
                    .span_coordinates(v)
                    .expect("full-rank lattice spans the ambient space")
            })
            .collect();

        // integer bounding box per lattice coordinate
        let n = self.dim;
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for j in 0..n {
            let min = vertex_coords.iter().map(|z| &z[j]).min().unwrap();
            let max = vertex_coords.iter().map(|z| &z[j]).max().unwrap();
            lo.push(min.ceil().to_integer());
            hi.push(max.floor().to_integer());
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(Vec::new());
        }

        // constraints over lattice coordinates z: facet rows (when
        // available) and the rank equality, scaled to integers
        let mut constraints: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
        let basis: Vec<Vec<Rational>> = (0..n).map(|i| lattice.basis_vector(i)).collect();
        let mut push_geq = |normal: &[Rational], rhs: &Rational| {
            let coeffs: Vec<Rational> = basis
                .iter()
                .map(|bv| normal.iter().zip(bv).map(|(a, b)| a * b).sum())
                .collect();
            let mut scaled = coeffs.clone();
            scaled.push(rhs.clone());
            let ints = scale_to_integers(&scaled);
            let rhs_int = ints[n].clone();
            constraints.push((ints[..n].to_vec(), rhs_int));
        };
        let ones = vec![Rational::from_integer(1.into()); n];
        push_geq(&ones, &rank_target);
        let neg_ones: Vec<Rational> = ones.iter().map(|c| -c).collect();
        push_geq(&neg_ones, &-rank_target.clone());
        let full_dim = self.span_dimension() == self.dim;
        if full_dim {
            let facets = self.facets()?.to_vec();
            for f in facets {
                let normal: Vec<Rational> =
                    f.iter().map(|c| Rational::from_integer(c.clone())).collect();
                push_geq(&normal, &Rational::zero());
            }
        }

        // suffix extremes for pruning: tightest possible remaining
        // contribution of coordinates >= depth. Coefficients and bounds
        // are small, so the walk runs in i128 once an explicit range
        // check rules out overflow.
        let lo_i: Vec<i64> = lo
            .iter()
            .map(|v| i64::try_from(v).map_err(|_| ConeError::IntegerOverflow))
            .collect::<Result<_, _>>()?;
        let hi_i: Vec<i64> = hi
            .iter()
            .map(|v| i64::try_from(v).map_err(|_| ConeError::IntegerOverflow))
            .collect::<Result<_, _>>()?;
        let mut narrow: Vec<(Vec<i128>, i128)> = Vec::with_capacity(constraints.len());
        for (coeffs, rhs) in &constraints {
            let cs: Vec<i128> = coeffs
                .iter()
                .map(|c| i128::try_from(c).map_err(|_| ConeError::IntegerOverflow))
                .collect::<Result<_, _>>()?;
            let rhs = i128::try_from(rhs).map_err(|_| ConeError::IntegerOverflow)?;
            let reach: i128 = cs
                .iter()
                .zip(lo_i.iter().zip(&hi_i))
                .map(|(c, (&l, &h))| {
                    c.unsigned_abs() as i128 * i128::from(l.unsigned_abs().max(h.unsigned_abs()))
                })
                .sum();
            if reach >= i128::MAX / 4 || rhs.unsigned_abs() >= (i128::MAX / 4) as u128 {
                return Err(ConeError::IntegerOverflow);
            }
            narrow.push((cs, rhs));
        }
        let mut suffix_max: Vec<Vec<i128>> = Vec::new();
        for (coeffs, _) in &narrow {
            let mut acc = vec![0i128; n + 1];
            for j in (0..n).rev() {
                let best = if coeffs[j] > 0 {
                    coeffs[j] * i128::from(hi_i[j])
                } else {
                    coeffs[j] * i128::from(lo_i[j])
                };
                acc[j] = acc[j + 1] + best;
            }
            suffix_max.push(acc);
        }

        let mut found: Vec<Vec<Rational>> = Vec::new();
        let mut z = vec![0i64; n];
        let mut partial: Vec<Vec<i128>> = vec![vec![0i128; narrow.len()]; n + 1];
        enumerate(
            0,
            n,
            &lo_i,
            &hi_i,
            &narrow,
            &suffix_max,
            &mut z,
            &mut partial,
            &mut |z| {
                let coords: Vec<BigInt> = z.iter().map(|&v| BigInt::from(v)).collect();
                let point = lattice.point(&coords);
                let rank: Rational = point.iter().sum();
                if rank != rank_target {
                    return;
                }
                let inside = if full_dim {
                    // the facet constraints already hold exactly
                    true
                } else {
                    matches!(self.contains(&point), Ok(m) if m.is_inside())
                };
                if inside {
                    found.push(point);
                }
            },
        );
        found.sort();
        Ok(found)
    }

    /// Serializable summary: generators as `p/q` strings, facet normals
    /// and extremal rays as integer vectors. `facets` is absent (with the
    /// span dimension reported) when the cone is not full-dimensional.
    pub fn summary(&self) -> Result<ConeSummary, ConeError> {
        let generators = self
            .generators
            .iter()
            .map(|g| g.iter().map(format_rational).collect())
            .collect();
        let (facets, span_dimension) = match self.facets() {
            Ok(f) => (Some(int_rows(f)?), None),
            Err(ConeError::NotFullDimensional { span_dimension }) => {
                (None, Some(span_dimension))
            }
            Err(e) => return Err(e),
        };
        let extremal = int_rows(self.extremal_rays())?;
        Ok(ConeSummary {
            m: self.dim,
            generators,
            facets,
            span_dimension,
            extremal,
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    depth: usize,
    n: usize,
    lo: &[i64],
    hi: &[i64],
    constraints: &[(Vec<i128>, i128)],
    suffix_max: &[Vec<i128>],
    z: &mut Vec<i64>,
    partial: &mut Vec<Vec<i128>>,
    visit: &mut impl FnMut(&[i64]),
) {
    if depth == n {
        let ok = constraints
            .iter()
            .enumerate()
            .all(|(c, (_, rhs))| partial[n][c] >= *rhs);
        if ok {
            visit(z);
        }
        return;
    }
    for v in lo[depth]..=hi[depth] {
        z[depth] = v;
        let mut feasible = true;
        for (c, (coeffs, rhs)) in constraints.iter().enumerate() {
            let acc = partial[depth][c] + coeffs[depth] * i128::from(v);
            if acc + suffix_max[c][depth + 1] < *rhs {
                feasible = false;
            }
            partial[depth + 1][c] = acc;
            if !feasible {
                break;
            }
        }
        if feasible {
            enumerate(
                depth + 1,
                n,
                lo,
                hi,
                constraints,
                suffix_max,
                z,
                partial,
                visit,
            );
        }
    }
}

fn scale_to_integers(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    use num_traits::One;
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

fn int_rows(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>, ConeError> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|c| i64::try_from(c).map_err(|_| ConeError::IntegerOverflow))
                .collect()
        })
        .collect()
}

/// JSON-facing cone description with a stable field order.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ConeSummary {
    pub m: usize,
    pub generators: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span_dimension: Option<usize>,
    pub extremal: Vec<Vec<i64>>,
}

/// The nonempty proper subsets of `{1, ..., m}` in canonical order:
/// ascending size, then ascending indices. These index the minimal
/// generators of the Cohen-Macaulay cone for `m >= 2`.
pub fn cm_cone_subsets(m: usize) -> Vec<SubsetIdeal> {
    let mut masks: Vec<u32> = (1..(1u32 << m) - 1).collect();
    masks.sort_by_key(|&mask| (mask.count_ones(), mask));
    masks.into_iter().map(SubsetIdeal::from_mask).collect()
}

/// The Cohen-Macaulay cone of the hypersurface `xi*eta + f` with `m`
/// pairwise coprime branches, in the ideal basis.
///
/// For `m = 1` this is the single ray through `[R##]`; for `m >= 2` it
/// is spanned by the `2^m - 2` subset ideal classes over nonempty proper
/// subsets, and that spanning set is minimal.
pub fn cm_cone(m: usize) -> Result<Cone, ConeError> {
    if m == 0 {
        return Err(ConeError::ZeroDimension);
    }
    if m > 16 {
        return Err(ConeError::TooManyBranches(m));
    }
    if m == 1 {
        let sheaf = class_of_structure_sheaf(1).expect("m = 1");
        return Cone::from_classes(&[sheaf]);
    }
    let classes: Vec<GClass> = cm_cone_subsets(m)
        .iter()
        .map(|s| class_of_ideal(s, m).expect("valid proper subset"))
        .collect();
    Cone::from_classes(&classes)
}

/// The Cohen-Macaulay cone on the curve side: the coordinate orthant
/// over the basis `[R/(f_i)]`.
pub fn cm_cone_curve(m: usize) -> Result<Cone, ConeError> {
    if m == 0 {
        return Err(ConeError::ZeroDimension);
    }
    let rays = (0..m)
        .map(|i| {
            let mut v = vec![Rational::zero(); m];
            v[i] = Rational::from_integer(1.into());
            v
        })
        .collect();
    Cone::from_rays(m, rays)
}
