//! Theta matrices from branch data and the certificates they produce:
//! every nonzero class in the ideal basis is numerically nontrivial,
//! witnessed either by nonzero rank or a strictly negative theta value.

use cmcone::grothendieck::GClass;
use cmcone::hypersurface::BranchSpec;
use cmcone::theta::{ThetaMatrix, TrivialityVerdict, Witness};
use cmcone::{int, rat};

fn main() {
    let specs: [(&str, &[(&str, u32)]); 3] = [
        ("x*y", &[("x", 1), ("y", 1)]),
        ("x^2*y^3", &[("x", 2), ("y", 3)]),
        ("x*y*(x+y)", &[("x", 1), ("y", 1), ("x+y", 1)]),
    ];
    for (label, branches) in specs {
        let spec = BranchSpec::explicit_from_strings(("x", "y"), branches).unwrap();
        let theta = ThetaMatrix::from_spec(&spec).unwrap();
        println!("f = {label}: theta = {:?}", theta.entries());
    }

    let spec =
        BranchSpec::explicit_from_strings(("x", "y"), &[("x", 1), ("y", 1)]).unwrap();
    let theta = ThetaMatrix::from_spec(&spec).unwrap();
    let probes = [
        GClass(vec![int(0), int(0)]),
        GClass(vec![int(1), int(-1)]),
        GClass(vec![int(3), int(3)]),
        GClass(vec![rat(1, 2), rat(-1, 3)]),
    ];
    println!();
    for class in probes {
        match theta.certificate(&class).unwrap() {
            TrivialityVerdict::Trivial => println!("{class:?}: numerically trivial"),
            TrivialityVerdict::NonTrivial(Witness::Rank { rank }) => {
                println!("{class:?}: nontrivial, rank witness {rank}")
            }
            TrivialityVerdict::NonTrivial(Witness::Theta { index, value }) => println!(
                "{class:?}: nontrivial, theta against basis class {} is {value}",
                index + 1
            ),
        }
    }
}
