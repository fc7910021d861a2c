//! Exact computation of Cohen-Macaulay cones, Grothendieck classes, and
//! Hochster theta pairings for hypersurface singularities of the form
//! `xi*eta + f_1^{a_1} ... f_m^{a_m}` with pairwise coprime plane-curve
//! branches.
//!
//! Everything is computed over arbitrary-precision rationals: polynomial
//! arithmetic, local intersection multiplicities, polyhedral cone
//! geometry (double description, membership certificates, lattice point
//! enumeration on rank slices), and the theta-based numerical-equivalence
//! certificates.
//!
//! # Examples
//!
//! The `examples/` directory is the front door, one runnable program per
//! capability:
//!
//! ```text
//! cargo run --example figure1                    # two-branch wedge end to end
//! cargo run --example intersection_multiplicity  # plane-curve germ pairings
//! cargo run --example theta_certificates         # theta matrices and witnesses
//! cargo run --example cone_geometry              # rays, facets, extremality
//! cargo run --example membership                 # certificates and the chain criterion
//! cargo run --example rank_slices                # lattice points on bounded slices
//! cargo run --example knorrer_classes            # curve-side to ideal-side classes
//! cargo run --example analyze_report             # the full JSON report
//! ```
//!
//! A thin `cmcone` binary exposes the same operations as subcommands
//! (`analyze`, `theta`, `member`, `decompose`, `numeq`, `slice`,
//! `imult`, `plot`).
//!
//! # Quick start
//!
//! ```
//! use cmcone::hypersurface::{analyze, validate, BranchSpec};
//!
//! // the hypersurface xi*eta + x*y
//! let spec = BranchSpec::explicit_from_strings(("x", "y"), &[("x", 1), ("y", 1)]).unwrap();
//! let report = analyze(&validate(spec).unwrap()).unwrap();
//! assert_eq!(report.grothendieck_rank, 2);
//! assert_eq!(report.cone.extremal.len(), 2);
//! ```

pub mod cli;
pub mod cone;
pub mod grothendieck;
pub mod hypersurface;
pub mod poly;
mod rational;
pub mod svg;
pub mod theta;

pub use rational::{
    format_rational, int, parse_rational, primitive_integer_ray, primitive_signed_normal, rat,
    rational_vec_serde, Rational, RationalParseError,
};
