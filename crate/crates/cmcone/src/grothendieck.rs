//! Rational Grothendieck classes for the hypersurface `xi*eta + f` and
//! its plane-curve counterpart, in explicit bases.
//!
//! For `f = f_1^{a_1} ... f_m^{a_m}` with pairwise coprime branches:
//!
//! * [`GClass`] holds coordinates over the basis `[I_1], ..., [I_m]`,
//!   where `I_S = (eta, prod_{i in S} f_i^{a_i})` and `I_i` abbreviates
//!   the singleton ideal. The subset ideals satisfy
//!   `[I_S] + (|S|-1)[R##] = sum_{i in S} [I_i]`, and in particular
//!   `m[R##] = sum_i [I_i]`.
//! * [`RClass`] holds coordinates over the basis
//!   `[R/(f_1^{a_1})], ..., [R/(f_m^{a_m})]` on the curve side.
//! * [`knorrer_image`] transports the curve basis to the ideal basis the
//!   way the matrix-factorization equivalence does, sending
//!   `[R/(f_i^{a_i})]` to `[I_i]`; the image is canonical only modulo
//!   integer multiples of `[R##]`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::Lattice;
use crate::rational::{rational_vec_serde, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrothendieckError {
    #[error("the number of branches must be at least 1")]
    ZeroBranches,
    #[error("subset of branch indices must be nonempty")]
    EmptySubset,
    #[error("subset index {index} out of range for {m} branches")]
    SubsetOutOfRange { index: usize, m: usize },
    #[error("coordinate vectors have mismatched lengths ({0} vs {1})")]
    DimensionMismatch(usize, usize),
}

/// A class in the rational Grothendieck group of the hypersurface,
/// written over the ideal basis `[I_1], ..., [I_m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GClass(#[serde(with = "rational_vec_serde")] pub Vec<Rational>);

/// A class on the curve side, over the basis `[R/(f_i^{a_i})]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RClass(#[serde(with = "rational_vec_serde")] pub Vec<Rational>);

impl GClass {
    pub fn zero(m: usize) -> Self {
        GClass(vec![Rational::zero(); m])
    }

    pub fn basis_vector(i: usize, m: usize) -> Self {
        let mut v = vec![Rational::zero(); m];
        v[i] = Rational::one();
        GClass(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// The rank functional: the sum of coordinates. Each ideal basis
    /// class has rank one, so this is the multiplicity-normalized rank
    /// and is linear.
    pub fn rank(&self) -> Rational {
        self.0.iter().sum()
    }

    /// Projection onto the rank-zero summand: subtracts
    /// `rank(self) * [R##]`. Idempotent, with kernel exactly the line
    /// through `[R##]`.
    pub fn rank_zero_part(&self) -> GClass {
        let m = self.dim();
        let share = self.rank() / Rational::from_integer(m.into());
        GClass(self.0.iter().map(|c| c - &share).collect())
    }

    pub fn scale(&self, c: &Rational) -> GClass {
        GClass(self.0.iter().map(|a| a * c).collect())
    }
}

impl RClass {
    pub fn zero(m: usize) -> Self {
        RClass(vec![Rational::zero(); m])
    }

    pub fn basis_vector(i: usize, m: usize) -> Self {
        let mut v = vec![Rational::zero(); m];
        v[i] = Rational::one();
        RClass(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl Add for &GClass {
    type Output = GClass;
    fn add(self, rhs: &GClass) -> GClass {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        GClass(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &GClass {
    type Output = GClass;
    fn sub(self, rhs: &GClass) -> GClass {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        GClass(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &GClass {
    type Output = GClass;
    fn neg(self) -> GClass {
        GClass(self.0.iter().map(|a| -a).collect())
    }
}

/// A nonempty subset of the branch indices `{1, ..., m}`, naming the
/// ideal `I_S = (eta, prod_{i in S} f_i^{a_i})`. Indices are 0-based in
/// the API and 1-based in display output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIdeal {
    mask: u32,
}

impl SubsetIdeal {
    pub fn from_indices(indices: &[usize]) -> Result<Self, GrothendieckError> {
        if indices.is_empty() {
            return Err(GrothendieckError::EmptySubset);
        }
        let mut mask = 0u32;
        for &i in indices {
            if i >= 32 {
                return Err(GrothendieckError::SubsetOutOfRange { index: i, m: 32 });
            }
            mask |= 1 << i;
        }
        Ok(SubsetIdeal { mask })
    }

    pub fn singleton(i: usize) -> Self {
        SubsetIdeal::from_indices(&[i]).expect("singleton subset")
    }

    pub fn full(m: usize) -> Self {
        assert!(m >= 1 && m <= 32);
        SubsetIdeal {
            mask: if m == 32 { u32::MAX } else { (1 << m) - 1 },
        }
    }

    pub(crate) fn from_mask(mask: u32) -> Self {
        debug_assert!(mask != 0);
        SubsetIdeal { mask }
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 32 && self.mask & (1 << i) != 0
    }

    /// Member indices, ascending, 0-based.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.indices().last().copied()
    }

    fn check_range(&self, m: usize) -> Result<(), GrothendieckError> {
        match self.max_index() {
            Some(i) if i >= m => Err(GrothendieckError::SubsetOutOfRange { index: i, m }),
            Some(_) => Ok(()),
            None => Err(GrothendieckError::EmptySubset),
        }
    }
}

impl fmt::Display for SubsetIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.indices();
        let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
        if idx.last().is_some_and(|&i| i + 1 > 9) {
            write!(f, "I_{{{}}}", parts.join(","))
        } else {
            write!(f, "I_{{{}}}", parts.concat())
        }
    }
}

/// `[R##]` in the ideal basis: `(1/m, ..., 1/m)`, the unique rank-one
/// solution of `m[R##] = sum_i [I_i]`.
pub fn class_of_structure_sheaf(m: usize) -> Result<GClass, GrothendieckError> {
    if m == 0 {
        return Err(GrothendieckError::ZeroBranches);
    }
    let share = Rational::new(1.into(), (m as i64).into());
    Ok(GClass(vec![share; m]))
}

/// `[I_S]` in the ideal basis:
/// `sum_{i in S} e_i - ((|S|-1)/m) * (1, ..., 1)`.
///
/// The full subset is allowed and yields `[R##]`, consistent with
/// `(eta)` being generated by a nonzerodivisor. Every subset ideal class
/// has rank one.
pub fn class_of_ideal(subset: &SubsetIdeal, m: usize) -> Result<GClass, GrothendieckError> {
    if m == 0 {
        return Err(GrothendieckError::ZeroBranches);
    }
    subset.check_range(m)?;
    let t = subset.len() as i64;
    let shift = Rational::new((t - 1).into(), (m as i64).into());
    let coords = (0..m)
        .map(|i| {
            let unit = if subset.contains(i) {
                Rational::one()
            } else {
                Rational::zero()
            };
            unit - &shift
        })
        .collect();
    Ok(GClass(coords))
}

/// Transport of a curve-side class to the ideal basis: coordinates pass
/// through unchanged, because the stable equivalence sends
/// `R/(f_i^{a_i})` to `I_i`. The result is one fixed representative of a
/// coset modulo `Z[R##]`; callers comparing images should work modulo
/// multiples of the structure sheaf class.
pub fn knorrer_image(class: &RClass) -> GClass {
    GClass(class.0.clone())
}

/// The canonical module lattice: the integer span of every subset ideal
/// class together with `[R##]`. These are exactly the classes of actual
/// modules this crate certifies, and the lattice feeds the finiteness
/// enumeration of rank slices.
pub fn module_lattice(m: usize) -> Result<Lattice, GrothendieckError> {
    if m == 0 {
        return Err(GrothendieckError::ZeroBranches);
    }
    assert!(m <= 16, "module lattice limited to m <= 16");
    let mut gens: Vec<Vec<Rational>> = Vec::new();
    for mask in 1u32..(1 << m) {
        let s = SubsetIdeal::from_mask(mask);
        gens.push(class_of_ideal(&s, m)?.0);
    }
    gens.push(class_of_structure_sheaf(m)?.0);
    Ok(Lattice::from_generators(m, &gens).expect("module lattice generators are consistent"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn structure_sheaf_examples() {
        assert_eq!(
            class_of_structure_sheaf(2).unwrap(),
            GClass(vec![rat(1, 2), rat(1, 2)])
        );
        assert_eq!(class_of_structure_sheaf(1).unwrap(), GClass(vec![int(1)]));
        assert_eq!(
            class_of_structure_sheaf(3).unwrap(),
            GClass(vec![rat(1, 3), rat(1, 3), rat(1, 3)])
        );
        assert_eq!(
            class_of_structure_sheaf(0),
            Err(GrothendieckError::ZeroBranches)
        );
        assert_eq!(class_of_structure_sheaf(5).unwrap().rank(), int(1));
    }

    #[test]
    fn ideal_class_examples() {
        let s1 = SubsetIdeal::singleton(0);
        assert_eq!(
            class_of_ideal(&s1, 2).unwrap(),
            GClass(vec![int(1), int(0)])
        );
        let s23 = SubsetIdeal::from_indices(&[1, 2]).unwrap();
        assert_eq!(
            class_of_ideal(&s23, 3).unwrap(),
            GClass(vec![rat(-1, 3), rat(2, 3), rat(2, 3)])
        );
        assert_eq!(class_of_ideal(&s23, 3).unwrap().rank(), int(1));
        // the full subset recovers the structure sheaf class
        let full = SubsetIdeal::full(3);
        assert_eq!(
            class_of_ideal(&full, 3).unwrap(),
            class_of_structure_sheaf(3).unwrap()
        );
    }

    #[test]
    fn every_subset_class_has_rank_one() {
        for m in 1..=8usize {
            for mask in 1u32..(1 << m) {
                let s = SubsetIdeal::from_mask(mask);
                assert_eq!(class_of_ideal(&s, m).unwrap().rank(), int(1));
            }
        }
    }

    #[test]
    fn disjoint_union_relation() {
        // [I_S] + [I_T] - [I_{S u T}] = [R##] for disjoint nonempty S, T
        let m = 5;
        let s = SubsetIdeal::from_indices(&[0, 2]).unwrap();
        let t = SubsetIdeal::from_indices(&[1, 4]).unwrap();
        let union = SubsetIdeal::from_indices(&[0, 1, 2, 4]).unwrap();
        let lhs = &(&class_of_ideal(&s, m).unwrap() + &class_of_ideal(&t, m).unwrap())
            - &class_of_ideal(&union, m).unwrap();
        assert_eq!(lhs, class_of_structure_sheaf(m).unwrap());
    }

    #[test]
    fn rank_linearity() {
        let c = GClass(vec![int(3), int(-1)]);
        assert_eq!(c.rank(), int(2));
    }

    #[test]
    fn rank_zero_part_is_idempotent_projection() {
        let sheaf = class_of_structure_sheaf(4).unwrap();
        assert!(sheaf.rank_zero_part().is_zero());
        let c = GClass(vec![int(1), int(0)]);
        assert_eq!(
            c.rank_zero_part(),
            GClass(vec![rat(1, 2), rat(-1, 2)])
        );
        let z = c.rank_zero_part();
        assert_eq!(z.rank_zero_part(), z);
        assert_eq!(z.rank(), int(0));
        // kernel is exactly the line through [R##]
        for i in 0..4 {
            let e = GClass::basis_vector(i, 4);
            assert!(!e.rank_zero_part().is_zero());
        }
    }

    #[test]
    fn knorrer_basis_correspondence() {
        let m = 3;
        for i in 0..m {
            let img = knorrer_image(&RClass::basis_vector(i, m));
            assert_eq!(img, GClass::basis_vector(i, m));
        }
        // [R] = (1,...,1) maps into Z[R##]
        let img = knorrer_image(&RClass(vec![int(1); m]));
        let sheaf = class_of_structure_sheaf(m).unwrap();
        assert_eq!(img, sheaf.scale(&int(m as i64)));
        assert_eq!(knorrer_image(&RClass::zero(m)), GClass::zero(m));
    }

    #[test]
    fn knorrer_is_linear() {
        let a = RClass(vec![rat(1, 2), int(2), int(0)]);
        let b = RClass(vec![int(1), rat(-1, 3), int(4)]);
        let sum = RClass(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| x + y)
                .collect::<Vec<_>>(),
        );
        assert_eq!(
            knorrer_image(&sum),
            &knorrer_image(&a) + &knorrer_image(&b)
        );
    }

    #[test]
    fn subset_display() {
        let s = SubsetIdeal::from_indices(&[0, 2]).unwrap();
        assert_eq!(s.to_string(), "I_{13}");
        let wide = SubsetIdeal::from_indices(&[0, 11]).unwrap();
        assert_eq!(wide.to_string(), "I_{1,12}");
    }

    #[test]
    fn serde_round_trip_as_strings() {
        let c = GClass(vec![rat(1, 2), int(-3)]);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"["1/2","-3"]"#);
        let back: GClass = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
