//! Suffix-chain rewriting of a class over the subset ideal generators.
//!
//! Sorting the coordinates ascending as `x_{s(1)} <= ... <= x_{s(m)}`
//! turns `sum_i x_i [I_i]` into
//!
//! ```text
//! (rank + x_min - x_max) [R##]
//!   + (x_{s(2)} - x_{s(1)}) [I_{ {s(2),...,s(m)} }]
//!   + ...
//!   + (x_{s(m)} - x_{s(m-1)}) [I_{ {s(m)} }]
//! ```
//!
//! Every chain coefficient is nonnegative by construction, so the class
//! lies in the Cohen-Macaulay cone exactly when the `[R##]` coefficient
//! does too. The reconstruction identity is checked on every call.

use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::ConeError;
use crate::grothendieck::{class_of_ideal, class_of_structure_sheaf, GClass, SubsetIdeal};
use crate::rational::{format_rational, Rational};

/// Exact rewrite of a class as a structure-sheaf multiple plus a chain
/// of nested subset ideal classes with nonnegative coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    /// coordinate indices sorted by ascending value, ties by index
    order: Vec<usize>,
    /// coefficient on `[R##]`; negative exactly when the class is
    /// outside the cone
    c0: Rational,
    /// `(suffix subset, coefficient)` entries, coefficients `>= 0`
    chain: Vec<(SubsetIdeal, Rational)>,
}

impl ChainDecomposition {
    /// Sorted coordinate order (0-based indices into the input class).
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn structure_sheaf_coefficient(&self) -> &Rational {
        &self.c0
    }

    pub fn chain(&self) -> &[(SubsetIdeal, Rational)] {
        &self.chain
    }

    /// Membership criterion: the class lies in the Cohen-Macaulay cone
    /// exactly when the `[R##]` coefficient is nonnegative.
    pub fn in_cone(&self) -> bool {
        !self.c0.is_negative()
    }

    /// Rebuilds the class from the decomposition (an exact identity).
    pub fn reconstruct(&self, m: usize) -> GClass {
        let sheaf = class_of_structure_sheaf(m).expect("m >= 2");
        let mut acc = sheaf.scale(&self.c0);
        for (subset, coeff) in &self.chain {
            let part = class_of_ideal(subset, m).expect("valid suffix subset");
            acc = &acc + &part.scale(coeff);
        }
        acc
    }
}

impl Serialize for ChainDecomposition {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            subset: Vec<usize>,
            coefficient: String,
        }
        let mut s = ser.serialize_struct("ChainDecomposition", 4)?;
        let order: Vec<usize> = self.order.iter().map(|i| i + 1).collect();
        s.serialize_field("order", &order)?;
        s.serialize_field("c0", &format_rational(&self.c0))?;
        let chain: Vec<Entry> = self
            .chain
            .iter()
            .map(|(subset, coeff)| Entry {
                subset: subset.indices().iter().map(|i| i + 1).collect(),
                coefficient: format_rational(coeff),
            })
            .collect();
        s.serialize_field("chain", &chain)?;
        s.serialize_field("in_cone", &self.in_cone())?;
        s.end()
    }
}

/// Decomposes `class` along the sorted-coordinate chain. Requires at
/// least two coordinates.
pub fn chain_decompose(class: &GClass) -> Result<ChainDecomposition, ConeError> {
    let m = class.dim();
    if m < 2 {
        return Err(ConeError::NeedAtLeastTwoBranches(m));
    }
    let coords = class.coords();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| coords[a].cmp(&coords[b]).then(a.cmp(&b)));

    let min = &coords[order[0]];
    let max = &coords[order[m - 1]];
    let c0 = &(&class.rank() + min) - max;

    let mut chain = Vec::with_capacity(m - 1);
    for k in 1..m {
        let coeff = &coords[order[k]] - &coords[order[k - 1]];
        let subset = SubsetIdeal::from_indices(&order[k..]).expect("nonempty suffix");
        chain.push((subset, coeff));
    }

    let decomposition = ChainDecomposition { order, c0, chain };
    assert_eq!(
        &decomposition.reconstruct(m),
        class,
        "chain decomposition must reconstruct its input exactly"
    );
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn basis_vector_decomposition() {
        let d = chain_decompose(&GClass(vec![int(1), int(0)])).unwrap();
        assert_eq!(d.structure_sheaf_coefficient(), &int(0));
        assert_eq!(d.order(), &[1, 0]);
        assert_eq!(d.chain().len(), 1);
        let (subset, coeff) = &d.chain()[0];
        assert_eq!(subset.indices(), vec![0]);
        assert_eq!(coeff, &int(1));
        assert!(d.in_cone());
    }

    #[test]
    fn structure_sheaf_has_empty_effective_chain() {
        let d = chain_decompose(&GClass(vec![rat(1, 2), rat(1, 2)])).unwrap();
        assert_eq!(d.structure_sheaf_coefficient(), &int(1));
        assert!(d.chain().iter().all(|(_, c)| c == &int(0)));
        assert!(d.in_cone());
    }

    #[test]
    fn three_branch_example() {
        let d = chain_decompose(&GClass(vec![int(0), int(1), int(1)])).unwrap();
        assert_eq!(d.structure_sheaf_coefficient(), &int(1));
        assert_eq!(d.order(), &[0, 1, 2]);
        let entries: Vec<(Vec<usize>, Rational)> = d
            .chain()
            .iter()
            .map(|(s, c)| (s.indices(), c.clone()))
            .collect();
        assert_eq!(entries, vec![(vec![1, 2], int(1)), (vec![2], int(0))]);
    }

    #[test]
    fn outside_class_has_negative_coefficient() {
        let d = chain_decompose(&GClass(vec![int(1), int(-1)])).unwrap();
        assert_eq!(d.structure_sheaf_coefficient(), &int(-2));
        assert!(!d.in_cone());
    }

    #[test]
    fn single_coordinate_rejected() {
        assert!(matches!(
            chain_decompose(&GClass(vec![int(1)])),
            Err(ConeError::NeedAtLeastTwoBranches(1))
        ));
    }

    #[test]
    fn serialized_form() {
        let d = chain_decompose(&GClass(vec![int(1), int(0)])).unwrap();
        let json = serde_json::to_value(&d).unwrap();
        assert_eq!(json["order"], serde_json::json!([2, 1]));
        assert_eq!(json["c0"], "0");
        assert_eq!(json["in_cone"], true);
    }
}
