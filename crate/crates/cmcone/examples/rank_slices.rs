//! Finiteness made concrete: the cone meets each rank hyperplane in a
//! bounded polytope, so only finitely many module-lattice classes can
//! occur at any fixed rank. This enumerates them.

use cmcone::cone::cm_cone;
use cmcone::grothendieck::module_lattice;

fn main() {
    for m in 1..=4usize {
        let cone = cm_cone(m).unwrap();
        let lattice = module_lattice(m).unwrap();
        for r in 1..=3u32 {
            let points = cone.rank_slice_lattice_points(r, &lattice).unwrap();
            println!("m = {m}, rank {r}: {} lattice points", points.len());
            if m == 2 {
                for p in &points {
                    let coords: Vec<String> =
                        p.iter().map(cmcone::format_rational).collect();
                    println!("    ({})", coords.join(", "));
                }
            }
        }
    }
}
