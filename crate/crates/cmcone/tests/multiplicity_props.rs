//! Oracle cross-checks and axioms for the intersection-multiplicity
//! engine, plus parser round-trip properties.

mod support;

use cmcone::poly::{
    intersection_multiplicity, multiplicity_power_law, parse_poly, resultant_y,
    BivariatePoly, Multiplicity,
};
use cmcone::{int, rat};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{macaulay_colength, random_origin_germ};

const XY: (&str, &str) = ("x", "y");

fn q(s: &str) -> BivariatePoly {
    parse_poly(s, XY).unwrap()
}

#[test]
fn oracle_agrees_on_small_finite_cases() {
    let cases = [
        ("x", "y"),
        ("y - x^2", "y + x^2"),
        ("y^2 - x^3", "y"),
        ("x^2", "y^3"),
        ("y - x^2", "x*y"),
        ("x^2 + y^2", "x"),
    ];
    for (gs, hs) in cases {
        let (g, h) = (q(gs), q(hs));
        let algo = intersection_multiplicity(&g, &h)
            .finite()
            .expect("finite corpus case");
        let oracle = macaulay_colength(&g, &h, 20).expect("oracle stabilizes");
        assert_eq!(algo, oracle, "case ({gs}, {hs})");
    }
}

#[test]
fn oracle_agrees_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut checked = 0usize;
    while checked < 40 {
        let g = random_origin_germ(&mut rng);
        let h = random_origin_germ(&mut rng);
        match intersection_multiplicity(&g, &h) {
            Multiplicity::Finite(n) if n <= 12 => {
                let oracle = macaulay_colength(&g, &h, 18).expect("oracle stabilizes");
                assert_eq!(n, oracle, "pair ({g}, {h})");
                checked += 1;
            }
            _ => {}
        }
    }
}

#[test]
fn shift_invariance_under_random_multiplier() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0usize;
    while checked < 60 {
        let g = random_origin_germ(&mut rng);
        let h = random_origin_germ(&mut rng);
        let m = intersection_multiplicity(&g, &h);
        if !m.is_finite() {
            continue;
        }
        let qmul = random_origin_germ(&mut rng);
        let shifted = &h + &(&qmul * &g);
        assert_eq!(
            intersection_multiplicity(&g, &shifted),
            m,
            "shift by ({qmul}) on ({g}, {h})"
        );
        checked += 1;
    }
}

#[test]
fn multiplicativity_over_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut checked = 0usize;
    while checked < 60 {
        let g = random_origin_germ(&mut rng);
        let h1 = random_origin_germ(&mut rng);
        let h2 = random_origin_germ(&mut rng);
        let (m1, m2) = (
            intersection_multiplicity(&g, &h1),
            intersection_multiplicity(&g, &h2),
        );
        let (Multiplicity::Finite(a), Multiplicity::Finite(b)) = (m1, m2) else {
            continue;
        };
        let product = &h1 * &h2;
        assert_eq!(
            intersection_multiplicity(&g, &product),
            Multiplicity::Finite(a + b),
            "additivity on ({g}; {h1}, {h2})"
        );
        checked += 1;
    }
}

#[test]
fn power_law_matches_oracle() {
    let pairs = [("x", "y", 2, 3), ("y - x^2", "y", 1, 2), ("x + y", "x - y", 2, 2)];
    for (gs, hs, a, b) in pairs {
        let (g, h) = (q(gs), q(hs));
        let scaled = multiplicity_power_law(&g, &h, a, b).unwrap();
        let oracle = macaulay_colength(&g.pow(a), &h.pow(b), 22).expect("oracle stabilizes");
        assert_eq!(scaled, oracle);
    }
}

#[test]
fn resultant_order_bounds_and_matches_on_monic_pairs() {
    // germs monic in y whose curves meet x = 0 only at the origin
    let cases = [("y - x^2", "y + x^2"), ("y^2 - x^3", "y"), ("y - x^2", "y - x^3")];
    for (gs, hs) in cases {
        let (g, h) = (q(gs), q(hs));
        let res = resultant_y(&g, &h);
        let ord = res.ord_at_zero().expect("nonzero resultant");
        let mult = intersection_multiplicity(&g, &h).finite().unwrap();
        assert_eq!(ord as u64, mult, "case ({gs}, {hs})");
    }
}

// small strategies for proptest: terms over a bounded grid
fn arb_poly() -> impl Strategy<Value = BivariatePoly> {
    proptest::collection::vec(((0u32..4, 0u32..4), -4i64..=4), 0..5).prop_map(|terms| {
        BivariatePoly::from_terms(
            terms
                .into_iter()
                .map(|((ex, ey), c)| ((ex, ey), int(c))),
            XY,
        )
    })
}

fn arb_origin_germ() -> impl Strategy<Value = BivariatePoly> {
    arb_poly().prop_filter_map("needs a nonunit nonzero germ", |p| {
        match p.origin_order() {
            Multiplicity::Finite(k) if k >= 1 => Some(p),
            _ => None,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(p in arb_poly()) {
        let reparsed = parse_poly(&p.to_string(), XY).unwrap();
        prop_assert_eq!(reparsed, p);
    }

    #[test]
    fn intersection_is_symmetric(g in arb_origin_germ(), h in arb_origin_germ()) {
        prop_assert_eq!(
            intersection_multiplicity(&g, &h),
            intersection_multiplicity(&h, &g)
        );
    }

    #[test]
    fn intersection_bounded_below_by_orders(g in arb_origin_germ(), h in arb_origin_germ()) {
        if let Multiplicity::Finite(m) = intersection_multiplicity(&g, &h) {
            let og = g.origin_order().finite().unwrap();
            let oh = h.origin_order().finite().unwrap();
            prop_assert!(m >= og * oh);
        }
    }

    #[test]
    fn scaling_by_units_is_invisible(g in arb_origin_germ(), h in arb_origin_germ()) {
        // multiplying by the unit germ 1 + x changes nothing
        let unit = parse_poly("1 + x", XY).unwrap();
        let gu = &g * &unit;
        prop_assert_eq!(
            intersection_multiplicity(&gu, &h),
            intersection_multiplicity(&g, &h)
        );
    }
}

#[test]
fn rational_coefficients_supported_end_to_end() {
    let g = q("1/2*y - 3/4*x^2");
    let h = q("y");
    assert_eq!(intersection_multiplicity(&g, &h), Multiplicity::Finite(2));
    assert_eq!(macaulay_colength(&g, &h, 10), Some(2));
    assert_eq!(g.coeff(2, 0), rat(-3, 4));
}
