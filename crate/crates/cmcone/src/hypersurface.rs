//! Problem ingestion, validation, and the end-to-end analysis pipeline.
//!
//! A [`BranchSpec`] describes the hypersurface `xi*eta + f` through the
//! factorization `f = f_1^{a_1} ... f_m^{a_m}`: either with explicit
//! plane-curve branches over two variables, or symbolically by the
//! branch count alone (the cone geometry depends only on `m`).
//! [`analyze`] assembles the Grothendieck-group data, the cone, the
//! theta matrix, and a set of named property checks into one
//! deterministic report.

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::cone::{cm_cone, ConeError, ConeSummary};
use crate::grothendieck::GClass;
use crate::poly::{
    intersection_multiplicity, parse_poly, BivariatePoly, Multiplicity, PolyError,
};
use crate::rational::Rational;
use crate::theta::{ThetaMatrix, TrivialityVerdict};

/// Seed for the randomized numerical-triviality spot suite inside
/// [`analyze`]; fixed so reports are byte-identical across runs.
const KERNEL_SUITE_SEED: u64 = 0x5eed_c0de;
const KERNEL_SUITE_SIZE: usize = 25;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("{path}: {source}")]
    Poly {
        path: String,
        #[source]
        source: PolyError,
    },
    #[error("branch {index} (`{poly}`) does not vanish at the origin")]
    UnitGerm { index: usize, poly: String },
    #[error("branches {i} (`{gi}`) and {j} (`{gj}`) are not coprime: infinite intersection multiplicity")]
    NonCoprime {
        i: usize,
        j: usize,
        gi: String,
        gj: String,
    },
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("theta computation failed: {0}")]
    Theta(#[from] crate::theta::ThetaError),
}

/// One branch of the factorization: an irreducible germ and its
/// multiplicity. Irreducibility is the caller's declaration; it is
/// assumed, not verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub poly: BivariatePoly,
    pub mult: u32,
}

/// The factorization data defining `f` and the hypersurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchSpec {
    Explicit {
        vars: (String, String),
        branches: Vec<Branch>,
    },
    Symbolic {
        m: usize,
        mults: Vec<u32>,
    },
}

impl BranchSpec {
    pub fn m(&self) -> usize {
        match self {
            BranchSpec::Explicit { branches, .. } => branches.len(),
            BranchSpec::Symbolic { m, .. } => *m,
        }
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self, BranchSpec::Explicit { .. })
    }

    pub fn symbolic(m: usize, mults: Vec<u32>) -> Result<BranchSpec, SpecError> {
        if m == 0 {
            return Err(SpecError::Schema {
                path: "/symbolic/m".into(),
                msg: "must be a positive integer".into(),
            });
        }
        if mults.len() != m {
            return Err(SpecError::Schema {
                path: "/symbolic/mults".into(),
                msg: format!("expected {m} entries, got {}", mults.len()),
            });
        }
        if mults.iter().any(|&a| a == 0) {
            return Err(SpecError::Schema {
                path: "/symbolic/mults".into(),
                msg: "multiplicities must be positive".into(),
            });
        }
        Ok(BranchSpec::Symbolic { m, mults })
    }

    /// Convenience constructor from expression strings.
    pub fn explicit_from_strings(
        vars: (&str, &str),
        branches: &[(&str, u32)],
    ) -> Result<BranchSpec, SpecError> {
        let parsed: Result<Vec<Branch>, SpecError> = branches
            .iter()
            .enumerate()
            .map(|(i, (text, mult))| {
                let poly = parse_poly(text, vars).map_err(|source| SpecError::Poly {
                    path: format!("/branches/{i}/poly"),
                    source,
                })?;
                Ok(Branch { poly, mult: *mult })
            })
            .collect();
        Ok(BranchSpec::Explicit {
            vars: (vars.0.to_owned(), vars.1.to_owned()),
            branches: parsed?,
        })
    }

    /// Canonical JSON echo of the spec (polynomials printed in canonical
    /// form), used for report provenance.
    pub fn to_canonical_json(&self) -> Value {
        match self {
            BranchSpec::Explicit { vars, branches } => json!({
                "variables": [vars.0, vars.1],
                "branches": branches.iter().map(|b| json!({
                    "poly": b.poly.to_string(),
                    "mult": b.mult,
                })).collect::<Vec<_>>(),
            }),
            BranchSpec::Symbolic { m, mults } => json!({
                "symbolic": { "m": m, "mults": mults },
            }),
        }
    }
}

/// Parses a spec document. The schema is
/// `{"variables": [x, y], "branches": [{"poly": "...", "mult": n}, ...]}`
/// or `{"symbolic": {"m": n, "mults": [a_1, ..., a_m]}}`; errors carry
/// JSON-path locations.
pub fn load_spec(document: &str) -> Result<BranchSpec, SpecError> {
    let value: Value = serde_json::from_str(document).map_err(|e| SpecError::Schema {
        path: "/".into(),
        msg: format!("invalid JSON: {e}"),
    })?;
    let obj = as_object(&value, "/")?;
    let has_explicit = obj.contains_key("variables") || obj.contains_key("branches");
    let has_symbolic = obj.contains_key("symbolic");
    match (has_explicit, has_symbolic) {
        (true, true) | (false, false) => Err(SpecError::Schema {
            path: "/".into(),
            msg: "provide either `variables` + `branches` or `symbolic`".into(),
        }),
        (true, false) => load_explicit(obj),
        (false, true) => load_symbolic(&obj["symbolic"]),
    }
}

fn load_explicit(obj: &Map<String, Value>) -> Result<BranchSpec, SpecError> {
    let vars_value = obj.get("variables").ok_or_else(|| SpecError::Schema {
        path: "/variables".into(),
        msg: "missing".into(),
    })?;
    let vars_arr = vars_value.as_array().ok_or_else(|| SpecError::Schema {
        path: "/variables".into(),
        msg: "must be an array of two strings".into(),
    })?;
    if vars_arr.len() != 2 {
        return Err(SpecError::Schema {
            path: "/variables".into(),
            msg: format!("must have exactly 2 entries, got {}", vars_arr.len()),
        });
    }
    let var = |i: usize| -> Result<&str, SpecError> {
        vars_arr[i].as_str().ok_or_else(|| SpecError::Schema {
            path: format!("/variables/{i}"),
            msg: "must be a string".into(),
        })
    };
    let (x, y) = (var(0)?, var(1)?);

    let branches_value = obj.get("branches").ok_or_else(|| SpecError::Schema {
        path: "/branches".into(),
        msg: "missing".into(),
    })?;
    let arr = branches_value.as_array().ok_or_else(|| SpecError::Schema {
        path: "/branches".into(),
        msg: "must be an array".into(),
    })?;
    if arr.is_empty() {
        return Err(SpecError::Schema {
            path: "/branches".into(),
            msg: "must not be empty".into(),
        });
    }
    let mut branches = Vec::with_capacity(arr.len());
    for (i, entry) in arr.iter().enumerate() {
        let path = format!("/branches/{i}");
        let b = as_object(entry, &path)?;
        let poly_text = b
            .get("poly")
            .and_then(Value::as_str)
            .ok_or_else(|| SpecError::Schema {
                path: format!("{path}/poly"),
                msg: "must be a string".into(),
            })?;
        let mult_value = b.get("mult").ok_or_else(|| SpecError::Schema {
            path: format!("{path}/mult"),
            msg: "missing".into(),
        })?;
        let mult = mult_value
            .as_u64()
            .filter(|&v| v >= 1 && v <= u64::from(u32::MAX))
            .ok_or_else(|| SpecError::Schema {
                path: format!("{path}/mult"),
                msg: "must be a positive integer".into(),
            })? as u32;
        let poly = parse_poly(poly_text, (x, y)).map_err(|source| SpecError::Poly {
            path: format!("{path}/poly"),
            source,
        })?;
        branches.push(Branch { poly, mult });
    }
    Ok(BranchSpec::Explicit {
        vars: (x.to_owned(), y.to_owned()),
        branches,
    })
}

fn load_symbolic(value: &Value) -> Result<BranchSpec, SpecError> {
    let obj = as_object(value, "/symbolic")?;
    let m = obj
        .get("m")
        .and_then(Value::as_u64)
        .filter(|&v| v >= 1)
        .ok_or_else(|| SpecError::Schema {
            path: "/symbolic/m".into(),
            msg: "must be a positive integer".into(),
        })? as usize;
    let mults_value = obj.get("mults").ok_or_else(|| SpecError::Schema {
        path: "/symbolic/mults".into(),
        msg: "missing".into(),
    })?;
    let arr = mults_value.as_array().ok_or_else(|| SpecError::Schema {
        path: "/symbolic/mults".into(),
        msg: "must be an array of positive integers".into(),
    })?;
    let mut mults = Vec::with_capacity(arr.len());
    for (i, v) in arr.iter().enumerate() {
        let a = v
            .as_u64()
            .filter(|&v| v >= 1 && v <= u64::from(u32::MAX))
            .ok_or_else(|| SpecError::Schema {
                path: format!("/symbolic/mults/{i}"),
                msg: "must be a positive integer".into(),
            })? as u32;
        mults.push(a);
    }
    BranchSpec::symbolic(m, mults)
}

fn as_object<'v>(value: &'v Value, path: &str) -> Result<&'v Map<String, Value>, SpecError> {
    value.as_object().ok_or_else(|| SpecError::Schema {
        path: path.to_owned(),
        msg: "must be an object".into(),
    })
}

/// A spec that passed validation, together with validation warnings.
/// Only [`validate`] constructs these.
#[derive(Debug, Clone)]
pub struct ValidatedSpec {
    spec: BranchSpec,
    warnings: Vec<String>,
}

impl ValidatedSpec {
    pub fn spec(&self) -> &BranchSpec {
        &self.spec
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

/// Checks the hypotheses the analysis relies on: every explicit branch
/// vanishes at the origin and each pair of branches is coprime (finite
/// pairwise intersection multiplicity). Analytic irreducibility of the
/// branches cannot be decided here and is recorded as a warning instead.
pub fn validate(spec: BranchSpec) -> Result<ValidatedSpec, SpecError> {
    let mut warnings = Vec::new();
    if let BranchSpec::Explicit { branches, .. } = &spec {
        for (i, b) in branches.iter().enumerate() {
            match b.poly.origin_order() {
                Multiplicity::Finite(0) | Multiplicity::Infinite => {
                    return Err(SpecError::UnitGerm {
                        index: i + 1,
                        poly: b.poly.to_string(),
                    });
                }
                Multiplicity::Finite(_) => {}
            }
        }
        for i in 0..branches.len() {
            for j in i + 1..branches.len() {
                let mult = intersection_multiplicity(&branches[i].poly, &branches[j].poly);
                if !mult.is_finite() {
                    return Err(SpecError::NonCoprime {
                        i: i + 1,
                        j: j + 1,
                        gi: branches[i].poly.to_string(),
                        gj: branches[j].poly.to_string(),
                    });
                }
            }
        }
        warnings.push(
            "analytic irreducibility of the branches is assumed, not verified".to_owned(),
        );
    }
    Ok(ValidatedSpec { spec, warnings })
}

/// Result of one named property check inside a report.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub pass: bool,
    pub detail: String,
}

/// Report provenance: the canonical input echo, the library version, and
/// the hypotheses the conclusions are conditional on.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Provenance {
    pub input: Value,
    pub version: String,
    pub assumed_hypotheses: Vec<String>,
    pub warnings: Vec<String>,
}

/// The full analysis of one hypersurface: Grothendieck rank, cone
/// geometry, theta pairing (explicit mode), and named checks.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AnalysisReport {
    pub m: usize,
    pub grothendieck_rank: usize,
    pub cone: ConeSummary,
    pub theta: Option<ThetaMatrix>,
    pub checks: BTreeMap<String, CheckResult>,
    pub provenance: Provenance,
}

impl AnalysisReport {
    /// Deterministic pretty JSON; byte-identical across runs for the
    /// same input and version.
    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.values().all(|c| c.pass)
    }
}

/// Runs the full pipeline on a validated spec.
pub fn analyze(validated: &ValidatedSpec) -> Result<AnalysisReport, SpecError> {
    let spec = validated.spec();
    let m = spec.m();
    let cone = cm_cone(m)?;
    let mut checks = BTreeMap::new();

    let expected_rays = if m == 1 { 1 } else { (1usize << m) - 2 };
    let ray_count = cone.extremal_rays().len();
    checks.insert(
        "extremal_ray_count".to_owned(),
        CheckResult {
            pass: ray_count == expected_rays,
            detail: format!("{ray_count} extremal rays, expected {expected_rays}"),
        },
    );

    let pointed = cone.is_pointed_with_positive_rank();
    checks.insert(
        "cone_pointed_positive_rank".to_owned(),
        CheckResult {
            pass: pointed,
            detail: if pointed {
                "cone is pointed and the rank functional is positive on every extremal ray"
                    .to_owned()
            } else {
                "cone fails pointedness or carries a rank-zero extremal ray".to_owned()
            },
        },
    );

    checks.insert("generators_on_facets".to_owned(), facet_support_check(&cone)?);

    let theta = if spec.is_explicit() {
        let matrix = ThetaMatrix::from_spec(spec)?;
        checks.insert("theta_row_sums".to_owned(), theta_row_check(&matrix));
        checks.insert(
            "numerical_triviality_kernel".to_owned(),
            kernel_spot_suite(&matrix),
        );
        Some(matrix)
    } else {
        None
    };

    let provenance = Provenance {
        input: spec.to_canonical_json(),
        version: env!("CARGO_PKG_VERSION").to_owned(),
        assumed_hypotheses: vec![
            "each declared branch is analytically irreducible".to_owned(),
            "a resolution of singularities exists for the hypersurface, \
             as required for identifying numerical equivalence classes"
                .to_owned(),
        ],
        warnings: validated.warnings().to_vec(),
    };

    Ok(AnalysisReport {
        m,
        grothendieck_rank: m,
        cone: cone.summary()?,
        theta,
        checks,
        provenance,
    })
}

fn facet_support_check(cone: &crate::cone::Cone) -> Result<CheckResult, SpecError> {
    let facets = cone.facets()?;
    let dim = cone.dim();
    let mut min_saturated = usize::MAX;
    for g in cone.generators() {
        let mut saturated: Vec<&Vec<num_bigint::BigInt>> = Vec::new();
        for n in facets {
            let value: Rational = n
                .iter()
                .zip(g)
                .map(|(c, x)| Rational::from_integer(c.clone()) * x)
                .sum();
            if value < Rational::zero() {
                return Ok(CheckResult {
                    pass: false,
                    detail: "a generator violates a facet inequality".to_owned(),
                });
            }
            if value.is_zero() {
                saturated.push(n);
            }
        }
        let rank = integer_row_rank(&saturated, dim);
        min_saturated = min_saturated.min(rank);
    }
    let needed = dim.saturating_sub(1);
    Ok(CheckResult {
        pass: min_saturated >= needed,
        detail: format!(
            "every generator satisfies all facets and lies on >= {min_saturated} independent facets (needed {needed})"
        ),
    })
}

fn integer_row_rank(rows: &[&Vec<num_bigint::BigInt>], dim: usize) -> usize {
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for row in rows {
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
        }
    }
    echelon.len()
}

fn theta_row_check(matrix: &ThetaMatrix) -> CheckResult {
    // construction already asserts these; restate them as report data
    let m = matrix.m();
    let entries = matrix.entries();
    let symmetric = (0..m).all(|i| (0..m).all(|j| entries[i][j] == entries[j][i]));
    let zero_sums = entries.iter().all(|row| row.iter().sum::<i64>() == 0);
    let signs = m < 2
        || (0..m).all(|i| {
            (0..m).all(|j| {
                if i == j {
                    entries[i][j] >= 1
                } else {
                    entries[i][j] <= -1
                }
            })
        });
    CheckResult {
        pass: symmetric && zero_sums && signs,
        detail: format!(
            "symmetric: {symmetric}; zero row sums: {zero_sums}; sign pattern: {signs}"
        ),
    }
}

/// Randomized spot suite: no nonzero class in a seeded sample may be
/// numerically trivial.
fn kernel_spot_suite(matrix: &ThetaMatrix) -> CheckResult {
    let m = matrix.m();
    let mut rng = StdRng::seed_from_u64(KERNEL_SUITE_SEED);
    let mut passed = 0usize;
    for _ in 0..KERNEL_SUITE_SIZE {
        let class = random_nonzero_class(&mut rng, m);
        match matrix.certificate(&class) {
            Ok(TrivialityVerdict::NonTrivial(_)) => passed += 1,
            _ => {}
        }
    }
    let zero_ok = matches!(
        matrix.certificate(&GClass::zero(m)),
        Ok(TrivialityVerdict::Trivial)
    );
    CheckResult {
        pass: passed == KERNEL_SUITE_SIZE && zero_ok,
        detail: format!(
            "{passed}/{KERNEL_SUITE_SIZE} random nonzero classes certified non-trivial; zero class trivial: {zero_ok} (seed {KERNEL_SUITE_SEED:#x})"
        ),
    }
}

pub(crate) fn random_nonzero_class(rng: &mut impl Rng, m: usize) -> GClass {
    loop {
        let coords: Vec<Rational> = (0..m)
            .map(|_| {
                let num = rng.random_range(-9i64..=9);
                let den = rng.random_range(1i64..=9);
                Rational::new(num.into(), den.into())
            })
            .collect();
        let class = GClass(coords);
        if !class.is_zero() {
            return class;
        }
    }
}
