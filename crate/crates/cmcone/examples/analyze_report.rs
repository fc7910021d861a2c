//! The full JSON report for a richer input: a cusp branch with a doubled
//! tangent-line branch. Reports are deterministic and carry the input
//! echo, version, and assumed hypotheses in their provenance block.

use cmcone::hypersurface::{analyze, validate, BranchSpec};

fn main() {
    let spec = BranchSpec::explicit_from_strings(
        ("x", "y"),
        &[("y^2 - x^3", 1), ("y", 2)],
    )
    .expect("valid branches");
    let validated = validate(spec).expect("hypotheses hold");
    let report = analyze(&validated).expect("analysis succeeds");
    print!("{}", report.to_json_string());
}
