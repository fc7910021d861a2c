//! Dense univariate polynomials over the rationals.
//!
//! Small and exact; backs the Sylvester resultant, content computations,
//! and the intersection-multiplicity reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{format_rational, Rational};

/// Polynomial in one variable with exact rational coefficients, stored in
/// ascending degree order with no trailing zeros (the zero polynomial is
/// the empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// `c * x^deg`
    pub fn monomial(c: Rational, deg: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at 0: the lowest exponent with nonzero
    /// coefficient. `None` for the zero polynomial.
    pub fn ord_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, deg: usize) -> Rational {
        self.coeffs.get(deg).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lc = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().unwrap() / &lc;
            let shift = rd - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let t = &rem.coeffs[shift + i] - c * &factor;
                rem.coeffs[shift + i] = t;
            }
            rem.trim();
            quot[shift] = factor;
        }
        (UniPoly::from_coeffs(quot), rem)
    }

    /// Division known to be exact; panics if a remainder appears.
    pub fn exact_div(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading_coeff() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.recip();
                a.scale(&inv)
            }
            _ => a,
        }
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Canonical text form in the given variable, ascending exponents.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut out = String::new();
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    out.push_str("-");
                }
                first = false;
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_part = format_rational(&mag);
            if deg == 0 {
                out.push_str(&coeff_part);
            } else {
                if !mag.is_one() {
                    out.push_str(&coeff_part);
                    out.push('*');
                }
                out.push_str(var);
                if deg > 1 {
                    out.push_str(&format!("^{deg}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = t;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn arithmetic_and_trim() {
        let a = p(&[1, 2]); // 1 + 2x
        let b = p(&[-1, -2]);
        assert!((&a + &b).is_zero());
        assert_eq!(&a * &a, p(&[1, 4, 4]));
        assert_eq!(a.degree(), Some(1));
        assert_eq!(UniPoly::zero().degree(), None);
    }

    #[test]
    fn division() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[-1, 1]); // x - 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let (q2, r2) = p(&[1, 0, 1]).div_rem(&b);
        assert_eq!(q2, p(&[1, 1]));
        assert_eq!(r2, p(&[2]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[-1, 1]) * &p(&[2, 2]); // (x-1)(2+2x)
        let b = &p(&[-1, 1]) * &p(&[0, 3]); // (x-1)3x
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[0, 2]).gcd(&p(&[0, 0, 4])), p(&[0, 1]));
    }

    #[test]
    fn ord_at_zero() {
        assert_eq!(p(&[0, 0, 5, 1]).ord_at_zero(), Some(2));
        assert_eq!(UniPoly::zero().ord_at_zero(), None);
    }

    #[test]
    fn display_canonical() {
        assert_eq!(p(&[0, -1, 2]).display("x"), "-x + 2*x^2");
        assert_eq!(
            UniPoly::from_coeffs(vec![rat(1, 2)]).display("t"),
            "1/2"
        );
        assert_eq!(UniPoly::zero().display("x"), "0");
    }
}
