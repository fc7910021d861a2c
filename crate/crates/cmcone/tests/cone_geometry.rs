//! Cross-checks between the independent cone routes: LP extremality vs
//! the double-description round trip, Fourier-Motzkin vs simplex
//! membership, the chain criterion vs membership, and the closed-form
//! facet family vs the computed dual description.

mod support;

use cmcone::cone::{
    chain_decompose, cm_cone, cm_cone_subsets, Cone, Membership, MembershipEngine,
};
use cmcone::grothendieck::{class_of_ideal, module_lattice, GClass};
use cmcone::{int, primitive_integer_ray, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::random_nonzero_class;

/// rays -> facets -> rays: the double description applied twice must
/// reproduce the extremal rays exactly (up to primitive scaling and
/// order), independently of the LP route.
#[test]
fn double_description_round_trip_reproduces_extremal_rays() {
    for m in 2..=6usize {
        let cone = cm_cone(m).unwrap();
        let facets = cone.facets().unwrap();
        let dual_rays: Vec<Vec<Rational>> = facets
            .iter()
            .map(|n| n.iter().map(|c| Rational::from_integer(c.clone())).collect())
            .collect();
        let dual = Cone::from_rays(m, dual_rays).unwrap();
        let round_trip = dual.facets().unwrap();
        assert_eq!(
            round_trip,
            cone.extremal_rays(),
            "round trip disagrees with LP extremality at m = {m}"
        );
    }
}

#[test]
fn minimal_generation_counts() {
    for m in 2..=5usize {
        let cone = cm_cone(m).unwrap();
        let extremal = cone.extremal_rays();
        assert_eq!(extremal.len(), (1 << m) - 2, "m = {m}");
        let mut generators: Vec<Vec<BigInt>> = cone
            .generators()
            .iter()
            .map(|g| primitive_integer_ray(g))
            .collect();
        generators.sort();
        assert_eq!(extremal, &generators[..], "m = {m}");
    }
}

/// The facet normals are exactly the vectors `1 + e_i - e_j` (i != j),
/// confirmed against the double-description dual rather than assumed.
#[test]
fn facet_family_closed_form_confirmed() {
    for m in 2..=5usize {
        let cone = cm_cone(m).unwrap();
        let mut expected: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let normal: Vec<Rational> = (0..m)
                    .map(|k| {
                        let mut v = int(1);
                        if k == i {
                            v = &v + &int(1);
                        }
                        if k == j {
                            v = &v - &int(1);
                        }
                        v
                    })
                    .collect();
                expected.push(primitive_integer_ray(&normal));
            }
        }
        expected.sort();
        expected.dedup();
        assert_eq!(cone.facets().unwrap(), &expected[..], "m = {m}");
        assert_eq!(cone.facets().unwrap().len(), m * (m - 1));
    }
}

/// Both membership engines must agree, and inside verdicts must come
/// with combinations that reconstruct the query point exactly.
#[test]
fn membership_engines_agree_on_overlap_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for m in 2..=4usize {
        let cone = cm_cone(m).unwrap();
        for _ in 0..100 {
            let class = random_nonzero_class(&mut rng, m);
            let fm = cone
                .contains_via(class.coords(), MembershipEngine::FourierMotzkin)
                .unwrap();
            let sx = cone
                .contains_via(class.coords(), MembershipEngine::Simplex)
                .unwrap();
            assert_eq!(fm.is_inside(), sx.is_inside(), "m = {m}, class {class:?}");
            for verdict in [&fm, &sx] {
                if let Membership::Inside { combination } = verdict {
                    assert_combination_reconstructs(&cone, combination, class.coords());
                }
            }
        }
    }
}

fn assert_combination_reconstructs(cone: &Cone, combination: &[Rational], point: &[Rational]) {
    assert_eq!(combination.len(), cone.generators().len());
    assert!(combination.iter().all(|c| c >= &Rational::zero()));
    for i in 0..cone.dim() {
        let acc: Rational = cone
            .generators()
            .iter()
            .zip(combination)
            .map(|(g, l)| &g[i] * l)
            .sum();
        assert_eq!(acc, point[i]);
    }
}

/// Membership is equivalent to a nonnegative structure-sheaf coefficient
/// in the chain decomposition.
#[test]
fn chain_criterion_matches_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for m in 2..=4usize {
        let cone = cm_cone(m).unwrap();
        for _ in 0..120 {
            let class = random_nonzero_class(&mut rng, m);
            let inside = cone.contains(class.coords()).unwrap().is_inside();
            let decomposition = chain_decompose(&class).unwrap();
            assert_eq!(inside, decomposition.in_cone(), "m = {m}, class {class:?}");
        }
    }
}

#[test]
fn chain_reconstruction_is_exact_for_arbitrary_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    for m in 2..=6usize {
        for _ in 0..50 {
            let class = random_nonzero_class(&mut rng, m);
            // the constructor asserts exact reconstruction internally
            let d = chain_decompose(&class).unwrap();
            assert_eq!(d.reconstruct(m), class);
            assert!(d
                .chain()
                .iter()
                .all(|(_, coeff)| coeff >= &Rational::zero()));
        }
    }
}

/// Every facet inequality is satisfied by every generator, and each
/// generator saturates enough independent facets to be a ray.
#[test]
fn generators_saturate_facets() {
    for m in 2..=5usize {
        let cone = cm_cone(m).unwrap();
        let facets = cone.facets().unwrap().to_vec();
        for g in cone.generators() {
            let mut saturated = 0usize;
            for n in &facets {
                let v: Rational = n
                    .iter()
                    .zip(g)
                    .map(|(c, x)| Rational::from_integer(c.clone()) * x)
                    .sum();
                assert!(v >= Rational::zero());
                if v.is_zero() {
                    saturated += 1;
                }
            }
            assert!(
                saturated >= m - 1,
                "generator {g:?} saturates only {saturated} facets at m = {m}"
            );
        }
    }
}

#[test]
fn pointedness_with_positive_rank_through_dimension_six() {
    for m in 1..=6usize {
        assert!(cm_cone(m).unwrap().is_pointed_with_positive_rank());
    }
}

/// Slice enumeration returns exactly the lattice points that pass
/// membership and the rank equality.
#[test]
fn slice_points_are_members_with_exact_rank() {
    for m in 2..=4usize {
        let cone = cm_cone(m).unwrap();
        let lattice = module_lattice(m).unwrap();
        for r in 1..=3u32 {
            let points = cone.rank_slice_lattice_points(r, &lattice).unwrap();
            assert!(!points.is_empty());
            for p in &points {
                let rank: Rational = p.iter().sum();
                assert_eq!(rank, int(i64::from(r)));
                assert!(cone.contains(p).unwrap().is_inside());
                assert!(lattice.integer_coordinates(p).is_some());
            }
            // no duplicates; sorted
            let mut sorted = points.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, points);
        }
    }
}

/// All generator classes and the structure sheaf sit inside the cone;
/// the slice at rank one contains every subset ideal class.
#[test]
fn subset_ideal_classes_are_rank_one_lattice_points() {
    for m in 2..=4usize {
        let cone = cm_cone(m).unwrap();
        let lattice = module_lattice(m).unwrap();
        let slice = cone.rank_slice_lattice_points(1, &lattice).unwrap();
        for subset in cm_cone_subsets(m) {
            let class = class_of_ideal(&subset, m).unwrap();
            assert!(
                slice.contains(&class.coords().to_vec()),
                "missing {subset} at m = {m}"
            );
        }
        let sheaf = cmcone::grothendieck::class_of_structure_sheaf(m).unwrap();
        assert!(slice.contains(&sheaf.coords().to_vec()));
    }
}

/// Scaling a class by a positive rational never changes the verdict.
#[test]
fn membership_is_scale_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let cone = cm_cone(3).unwrap();
    for _ in 0..40 {
        let class = random_nonzero_class(&mut rng, 3);
        let scaled = class.scale(&cmcone::rat(7, 3));
        assert_eq!(
            cone.contains(class.coords()).unwrap().is_inside(),
            cone.contains(scaled.coords()).unwrap().is_inside()
        );
    }
}

#[test]
fn knorrer_images_of_effective_curve_classes_lie_in_the_cone() {
    use cmcone::grothendieck::{knorrer_image, RClass};
    let mut rng = ChaCha8Rng::seed_from_u64(123);
    let cone = cm_cone(3).unwrap();
    for _ in 0..30 {
        // a nonnegative curve-side class maps to a cone member
        let coords: Vec<Rational> = random_nonzero_class(&mut rng, 3)
            .coords()
            .iter()
            .map(|c| if c < &Rational::zero() { -c } else { c.clone() })
            .collect();
        let image = knorrer_image(&RClass(coords));
        assert!(cone.contains(image.coords()).unwrap().is_inside());
    }
}

#[test]
fn module_lattice_contains_unit_vectors_and_sheaf() {
    for m in 1..=5usize {
        let lattice = module_lattice(m).unwrap();
        assert_eq!(lattice.rank(), m);
        for i in 0..m {
            let e = GClass::basis_vector(i, m);
            assert!(lattice.integer_coordinates(e.coords()).is_some());
        }
        let sheaf = cmcone::grothendieck::class_of_structure_sheaf(m).unwrap();
        assert!(lattice.integer_coordinates(sheaf.coords()).is_some());
    }
}
