//! Local intersection numbers of plane-curve germs at the origin,
//! computed by exact reduction. The infinite case marks a shared
//! branch through the origin.

use cmcone::poly::{intersection_multiplicity, multiplicity_power_law, parse_poly, resultant_y};

fn main() {
    let cases = [
        ("x", "y"),
        ("x^2", "y^3"),
        ("y - x^2", "y + x^2"),
        ("y^2 - x^3", "y"),
        ("y^2 - x^3", "y^2 + x^3"),
        ("(x + y)^2", "y^3"),
        ("x*y", "x"),
        ("1 + x", "y"),
    ];
    println!("{:<18} {:<18} multiplicity", "g", "h");
    for (gs, hs) in cases {
        let g = parse_poly(gs, ("x", "y")).unwrap();
        let h = parse_poly(hs, ("x", "y")).unwrap();
        let m = intersection_multiplicity(&g, &h);
        println!("{gs:<18} {hs:<18} {m}");
    }

    // powers scale the intersection number multiplicatively
    let g = parse_poly("y - x^2", ("x", "y")).unwrap();
    let h = parse_poly("y", ("x", "y")).unwrap();
    let scaled = multiplicity_power_law(&g, &h, 1, 2).unwrap();
    println!("\nI((y - x^2)^1, y^2) = {scaled}");

    // the resultant's vanishing order at x = 0 recovers the same number
    // for y-monic germs meeting the line x = 0 only at the origin
    let r = resultant_y(&g, &h);
    println!("res_y(y - x^2, y) = {r}, order at x = 0: {:?}", r.ord_at_zero());
}
