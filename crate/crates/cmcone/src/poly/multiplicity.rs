//! Local intersection multiplicity of plane-curve germs at the origin.
//!
//! `intersection_multiplicity(g, h)` computes the colength
//! `dim_Q Q[[x,y]]/(g,h)` by the classical axiomatic reduction: split off
//! `y`-factors against the order of the other germ on the `x`-axis, and
//! otherwise cancel leading `x`-terms of the restrictions to `y = 0` by
//! subtracting a scaled multiple of the other polynomial. Each step
//! preserves the ideal or splits the colength additively, so the result
//! is exact. A polynomial gcd test decides the infinite case up front,
//! which also guarantees termination of the reduction.

use num_traits::Zero;

use super::univariate::UniPoly;
use super::{BivariatePoly, Multiplicity, PolyError};

/// The local intersection number of `g` and `h` at the origin;
/// `Infinite` exactly when the germs share an irreducible factor
/// vanishing there.
pub fn intersection_multiplicity(g: &BivariatePoly, h: &BivariatePoly) -> Multiplicity {
    match (g.is_zero(), h.is_zero()) {
        (true, true) => return Multiplicity::Infinite,
        (true, false) => {
            // ideal is (h): colength 0 for a unit germ, infinite otherwise
            return if h.constant_term().is_zero() {
                Multiplicity::Infinite
            } else {
                Multiplicity::Finite(0)
            };
        }
        (false, true) => {
            return if g.constant_term().is_zero() {
                Multiplicity::Infinite
            } else {
                Multiplicity::Finite(0)
            };
        }
        (false, false) => {}
    }
    if !g.constant_term().is_zero() || !h.constant_term().is_zero() {
        return Multiplicity::Finite(0);
    }
    let common = gcd_bivariate(g, h);
    if common.constant_term().is_zero() {
        return Multiplicity::Infinite;
    }
    Multiplicity::Finite(reduce(g.clone(), h.clone()))
}

/// `a*b*I(g,h)`, cross-checked against the direct computation of
/// `I(g^a, h^b)`. Errors when the base multiplicity is infinite.
pub fn multiplicity_power_law(
    g: &BivariatePoly,
    h: &BivariatePoly,
    a: u32,
    b: u32,
) -> Result<u64, PolyError> {
    assert!(a >= 1 && b >= 1, "exponents must be positive");
    let base = match intersection_multiplicity(g, h) {
        Multiplicity::Finite(n) => n,
        Multiplicity::Infinite => return Err(PolyError::InfiniteMultiplicity),
    };
    let scaled = base * u64::from(a) * u64::from(b);
    let direct = intersection_multiplicity(&g.pow(a), &h.pow(b));
    assert_eq!(
        direct,
        Multiplicity::Finite(scaled),
        "power law violated for I({g}, {h}) with exponents ({a}, {b})"
    );
    Ok(scaled)
}

/// Reduction loop. Precondition: `f`, `g` nonzero, both vanish at the
/// origin, and they share no factor through the origin (so the total is
/// finite and the loop terminates).
fn reduce(mut f: BivariatePoly, mut g: BivariatePoly) -> u64 {
    let mut total: u64 = 0;
    loop {
        if f.is_zero() || g.is_zero() {
            unreachable!("finite multiplicity cannot reduce to a zero polynomial");
        }
        if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
            return total;
        }
        let fx = f.subst_y_zero();
        let gx = g.subst_y_zero();
        match (fx.ord_at_zero(), gx.ord_at_zero()) {
            (None, None) => {
                unreachable!("both germs divisible by y despite coprimality check")
            }
            (None, Some(ord_g)) => {
                // y divides f: I(f, g) = I(y, g) + I(f / y, g)
                total += ord_g as u64;
                f = f.div_y();
            }
            (Some(ord_f), None) => {
                total += ord_f as u64;
                g = g.div_y();
            }
            (Some(_), Some(_)) => {
                let df = fx.degree().unwrap();
                let dg = gx.degree().unwrap();
                if df > dg {
                    std::mem::swap(&mut f, &mut g);
                    continue;
                }
                // cancel the leading x-term of g's restriction to y = 0
                let c = gx.leading_coeff().unwrap() / fx.leading_coeff().unwrap();
                g = g.sub_scaled_xpow(&c, (dg - df) as u32, &f);
            }
        }
    }
}

/// Greatest common divisor in `Q[x,y]`, up to a scalar.
///
/// Computed as content times primitive-part gcd with respect to `y`,
/// using a primitive pseudo-remainder sequence over `Q[x]`.
pub fn gcd_bivariate(g: &BivariatePoly, h: &BivariatePoly) -> BivariatePoly {
    if g.is_zero() {
        return h.clone();
    }
    if h.is_zero() {
        return g.clone();
    }
    let vars = g.vars();
    let (gc, gp) = content_and_primitive(g);
    let (hc, hp) = content_and_primitive(h);
    let content_gcd = gc.gcd(&hc);
    let pp_gcd = primitive_gcd(gp, hp);
    let content_poly = BivariatePoly::from_y_coefficients(&[content_gcd], vars);
    let pp_poly = BivariatePoly::from_y_coefficients(&pp_gcd, vars);
    &content_poly * &pp_poly
}

/// Splits `p` into (content in Q[x], primitive y-coefficient vector).
fn content_and_primitive(p: &BivariatePoly) -> (UniPoly, Vec<UniPoly>) {
    let coeffs = p.y_coefficients();
    let mut content = UniPoly::zero();
    for c in &coeffs {
        content = content.gcd(c);
    }
    let primitive: Vec<UniPoly> = coeffs.iter().map(|c| c.exact_div(&content)).collect();
    (content, primitive)
}

fn make_primitive(coeffs: &mut Vec<UniPoly>) {
    let mut content = UniPoly::zero();
    for c in coeffs.iter() {
        content = content.gcd(c);
    }
    if !content.is_zero() {
        for c in coeffs.iter_mut() {
            *c = c.exact_div(&content);
        }
    }
}

/// Gcd of two primitive polynomials in `(Q[x])[y]` via pseudo-remainders.
fn primitive_gcd(mut a: Vec<UniPoly>, mut b: Vec<UniPoly>) -> Vec<UniPoly> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let mut r = pseudo_rem(&a, &b);
        trim(&mut r);
        make_primitive(&mut r);
        a = b;
        b = r;
    }
    a
}

fn trim(coeffs: &mut Vec<UniPoly>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

/// Pseudo-remainder of `a` by `b` in `(Q[x])[y]`; `b` nonempty with
/// `deg_y a >= deg_y b`.
fn pseudo_rem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<UniPoly> = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        // r <- lb * r - lr * y^(dr-db) * b
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let t = &r[shift + i] - &(&lr * bc);
            r[shift + i] = t;
        }
        // the leading term cancels by construction
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            if r.len() <= db {
                break;
            }
            r.pop();
        }
    }
    r
}
