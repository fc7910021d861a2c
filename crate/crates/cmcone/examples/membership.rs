//! Membership in the Cohen-Macaulay cone with exact certificates, the
//! two independent decision routes, and the sorted-coordinate chain
//! criterion.

use cmcone::cone::{chain_decompose, cm_cone, Membership, MembershipEngine};
use cmcone::grothendieck::GClass;
use cmcone::{int, rat};

fn main() {
    let cone = cm_cone(3).unwrap();
    let queries = [
        GClass(vec![rat(1, 3), rat(4, 3), rat(1, 3)]), // [I_{12}] + [I_{23}]
        GClass(vec![rat(1, 3), rat(1, 3), rat(1, 3)]), // [R##]
        GClass(vec![int(1), int(-1), int(0)]),
        GClass(vec![int(2), int(1), int(1)]),
    ];
    for class in &queries {
        let fm = cone
            .contains_via(class.coords(), MembershipEngine::FourierMotzkin)
            .unwrap();
        let simplex = cone
            .contains_via(class.coords(), MembershipEngine::Simplex)
            .unwrap();
        assert_eq!(fm.is_inside(), simplex.is_inside());

        let chain = chain_decompose(class).unwrap();
        assert_eq!(fm.is_inside(), chain.in_cone());

        match fm {
            Membership::Inside { combination } => {
                let used: Vec<String> = combination
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(i, c)| format!("{} * g{}", cmcone::format_rational(c), i))
                    .collect();
                println!(
                    "{class:?}: inside, c0 = {}, combination {}",
                    cmcone::format_rational(chain.structure_sheaf_coefficient()),
                    used.join(" + ")
                );
            }
            Membership::Outside { separator } => {
                println!(
                    "{class:?}: outside, c0 = {}, separated by {separator:?}",
                    cmcone::format_rational(chain.structure_sheaf_coefficient())
                );
            }
        }
    }
}
