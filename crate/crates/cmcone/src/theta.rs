//! The Hochster theta pairing on the hypersurface `xi*eta + f`, computed
//! from pairwise branch intersection multiplicities, and the resulting
//! numerical-triviality certificates.
//!
//! Over the ideal basis the pairing is the integer matrix with
//! `-I(f_i^{a_i}, f_j^{a_j})` off the diagonal and
//! `I(f_i^{a_i}, prod_{j != i} f_j^{a_j})` on it. Additivity of the
//! intersection number over products forces every row to sum to zero,
//! which the construction re-derives and checks at runtime.

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::grothendieck::GClass;
use crate::hypersurface::BranchSpec;
use crate::poly::{intersection_multiplicity, multiplicity_power_law, BivariatePoly};
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThetaError {
    #[error("theta matrix needs explicit branch polynomials, not a symbolic spec")]
    SymbolicSpec,
    #[error("branches {i} and {j} are not coprime: infinite intersection multiplicity between `{gi}` and `{gj}`")]
    NonCoprimeBranches {
        i: usize,
        j: usize,
        gi: String,
        gj: String,
    },
    #[error("intersection number overflows an i64")]
    Overflow,
    #[error("dimension mismatch: matrix is {m}x{m}, class has {got} coordinates")]
    DimensionMismatch { m: usize, got: usize },
}

/// The symmetric integer matrix of theta values over the ideal basis.
/// Rows sum to zero; for two or more branches the off-diagonal entries
/// are negative and the diagonal ones positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ThetaMatrix {
    entries: Vec<Vec<i64>>,
}

impl ThetaMatrix {
    /// Builds the matrix for an explicit branch spec. Every pair of
    /// branches must be coprime (finite pairwise multiplicity).
    pub fn from_spec(spec: &BranchSpec) -> Result<ThetaMatrix, ThetaError> {
        let BranchSpec::Explicit { branches, .. } = spec else {
            return Err(ThetaError::SymbolicSpec);
        };
        let m = branches.len();
        let mut entries = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let value = multiplicity_power_law(
                    &branches[i].poly,
                    &branches[j].poly,
                    branches[i].mult,
                    branches[j].mult,
                )
                .map_err(|_| ThetaError::NonCoprimeBranches {
                    i: i + 1,
                    j: j + 1,
                    gi: branches[i].poly.to_string(),
                    gj: branches[j].poly.to_string(),
                })?;
                let value = i64::try_from(value).map_err(|_| ThetaError::Overflow)?;
                entries[i][j] = -value;
                entries[j][i] = -value;
            }
        }
        for i in 0..m {
            let row_sum_diagonal: i64 = (0..m)
                .filter(|&j| j != i)
                .map(|j| -entries[i][j])
                .sum();
            let direct = diagonal_entry(branches, i)?;
            assert_eq!(
                direct, row_sum_diagonal,
                "diagonal theta value disagrees with the row-sum identity"
            );
            entries[i][i] = direct;
        }
        let matrix = ThetaMatrix { entries };
        matrix.check_invariants();
        Ok(matrix)
    }

    /// Wraps a precomputed matrix, checking symmetry, zero row sums, and
    /// the sign pattern.
    pub fn from_entries(entries: Vec<Vec<i64>>) -> ThetaMatrix {
        let matrix = ThetaMatrix { entries };
        matrix.check_invariants();
        matrix
    }

    fn check_invariants(&self) {
        let m = self.entries.len();
        for row in &self.entries {
            assert_eq!(row.len(), m, "theta matrix must be square");
        }
        for i in 0..m {
            assert_eq!(
                self.entries[i].iter().sum::<i64>(),
                0,
                "theta row {i} must sum to zero"
            );
            for j in 0..m {
                assert_eq!(
                    self.entries[i][j], self.entries[j][i],
                    "theta matrix must be symmetric"
                );
                if m >= 2 {
                    if i == j {
                        assert!(self.entries[i][i] >= 1, "diagonal theta entries are positive");
                    } else {
                        assert!(
                            self.entries[i][j] <= -1,
                            "off-diagonal theta entries are negative"
                        );
                    }
                }
            }
        }
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// The bilinear extension `a^T theta b`.
    pub fn pair(&self, a: &GClass, b: &GClass) -> Result<Rational, ThetaError> {
        let m = self.m();
        if a.dim() != m {
            return Err(ThetaError::DimensionMismatch { m, got: a.dim() });
        }
        if b.dim() != m {
            return Err(ThetaError::DimensionMismatch { m, got: b.dim() });
        }
        let mut acc = Rational::zero();
        for (i, ai) in a.coords().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords().iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let term = ai * bj * Rational::from_integer(self.entries[i][j].into());
                acc = &acc + &term;
            }
        }
        Ok(acc)
    }

    /// Decides whether a class is numerically trivial and certifies the
    /// verdict. Over this family only the zero class is trivial: equal
    /// nonzero coordinates are detected by the rank functional (the class
    /// is a nonzero multiple of `[R##]`), and otherwise pairing against
    /// the ideal with the smallest coordinate is strictly negative.
    pub fn certificate(&self, class: &GClass) -> Result<TrivialityVerdict, ThetaError> {
        let m = self.m();
        if class.dim() != m {
            return Err(ThetaError::DimensionMismatch {
                m,
                got: class.dim(),
            });
        }
        if class.is_zero() {
            return Ok(TrivialityVerdict::Trivial);
        }
        let coords = class.coords();
        let all_equal = coords.windows(2).all(|w| w[0] == w[1]);
        if all_equal {
            let rank = class.rank();
            debug_assert!(!rank.is_zero());
            return Ok(TrivialityVerdict::NonTrivial(Witness::Rank { rank }));
        }
        let min_index = (0..m)
            .min_by(|&a, &b| coords[a].cmp(&coords[b]))
            .expect("nonempty coordinates");
        let probe = GClass::basis_vector(min_index, m);
        let value = self.pair(&probe, class)?;
        assert!(
            value.is_negative(),
            "theta witness against the minimal coordinate must be strictly negative"
        );
        Ok(TrivialityVerdict::NonTrivial(Witness::Theta {
            index: min_index,
            value,
        }))
    }
}

/// Outcome of a numerical-triviality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivialityVerdict {
    Trivial,
    NonTrivial(Witness),
}

/// Evidence that a class survives in the numerical quotient: either its
/// rank is nonzero, or its theta value against a named ideal basis class
/// is strictly negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Rank { rank: Rational },
    Theta { index: usize, value: Rational },
}

impl Serialize for TrivialityVerdict {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        use serde_json::json;
        let mut map = ser.serialize_map(None)?;
        match self {
            TrivialityVerdict::Trivial => {
                map.serialize_entry("verdict", "trivial")?;
            }
            TrivialityVerdict::NonTrivial(witness) => {
                map.serialize_entry("verdict", "nontrivial")?;
                match witness {
                    Witness::Rank { rank } => {
                        map.serialize_entry(
                            "witness",
                            &json!({
                                "kind": "rank",
                                "rank": crate::rational::format_rational(rank),
                            }),
                        )?;
                    }
                    Witness::Theta { index, value } => {
                        map.serialize_entry(
                            "witness",
                            &json!({
                                "kind": "theta",
                                "index": index + 1,
                                "value": crate::rational::format_rational(value),
                            }),
                        )?;
                    }
                }
            }
        }
        map.end()
    }
}

fn diagonal_entry(
    branches: &[crate::hypersurface::Branch],
    i: usize,
) -> Result<i64, ThetaError> {
    let vars = branches[i].poly.vars();
    let mut product = BivariatePoly::constant(Rational::from_integer(1.into()), vars);
    for (j, b) in branches.iter().enumerate() {
        if j != i {
            product = &product * &b.poly.pow(b.mult);
        }
    }
    let powered = branches[i].poly.pow(branches[i].mult);
    match intersection_multiplicity(&powered, &product) {
        crate::poly::Multiplicity::Finite(n) => {
            i64::try_from(n).map_err(|_| ThetaError::Overflow)
        }
        crate::poly::Multiplicity::Infinite => unreachable!(
            "pairwise coprimality was checked before the diagonal computation"
        ),
    }
}
