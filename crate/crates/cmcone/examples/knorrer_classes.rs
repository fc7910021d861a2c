//! The matrix-factorization correspondence on classes: curve-side basis
//! classes map to ideal-side basis classes, and the relation
//! `[R] = sum [R/(f_i^{a_i})]` lands on an integer multiple of `[R##]`,
//! as it must for a map defined modulo the structure sheaf class.

use cmcone::grothendieck::{
    class_of_ideal, class_of_structure_sheaf, knorrer_image, GClass, RClass, SubsetIdeal,
};
use cmcone::int;

fn main() {
    let m = 3;
    for i in 0..m {
        let curve = RClass::basis_vector(i, m);
        let image = knorrer_image(&curve);
        println!(
            "[R/(f_{}^a)] -> {:?} (the ideal class I_{})",
            i + 1,
            image.coords(),
            i + 1
        );
        assert_eq!(image, GClass::basis_vector(i, m));
    }

    let total = RClass(vec![int(1); m]);
    let image = knorrer_image(&total);
    let sheaf = class_of_structure_sheaf(m).unwrap();
    assert_eq!(image, sheaf.scale(&int(m as i64)));
    println!("[R] = (1,1,1) -> {m} * [R##], trivial modulo Z[R##]");

    // subset ideal classes have rank one and assemble from singletons
    let pair = SubsetIdeal::from_indices(&[1, 2]).unwrap();
    let class = class_of_ideal(&pair, m).unwrap();
    println!(
        "[{pair}] = {:?}, rank {}",
        class.coords(),
        class.rank()
    );
    let rebuilt = &(&GClass::basis_vector(1, m) + &GClass::basis_vector(2, m)) - &sheaf;
    assert_eq!(class, rebuilt);
    println!("[I_{{23}}] = [I_2] + [I_3] - [R##], checked exactly");
}
