//! The Cohen-Macaulay cone across branch counts: generators indexed by
//! nonempty proper subsets, their extremality, and the facet description
//! computed by the double description method.

use cmcone::cone::{cm_cone, cm_cone_subsets};

fn main() {
    for m in 2..=5usize {
        let cone = cm_cone(m).unwrap();
        let extremal = cone.extremal_rays();
        let facets = cone.facets().unwrap();
        println!(
            "m = {m}: {} generators, {} extremal rays, {} facets",
            cone.generators().len(),
            extremal.len(),
            facets.len()
        );
        assert_eq!(extremal.len(), (1 << m) - 2);
        assert_eq!(facets.len(), m * (m - 1));
    }

    println!("\ngenerators for m = 3, by subset:");
    let cone = cm_cone(3).unwrap();
    for (subset, g) in cm_cone_subsets(3).iter().zip(cone.generators()) {
        let coords: Vec<String> = g.iter().map(cmcone::format_rational).collect();
        println!("  {subset} -> ({})", coords.join(", "));
    }
    println!("facet normals for m = 3 (each of the form 1 + e_i - e_j):");
    for n in cone.facets().unwrap() {
        println!("  {n:?}");
    }
}
