//! Exact bivariate polynomial arithmetic over the rationals, expression
//! parsing, and local intersection multiplicity of plane-curve germs at
//! the origin.
//!
//! Polynomials stand in for power-series germs in two variables: the
//! colength `dim_Q Q[[x,y]]/(g,h)` computed by
//! [`intersection_multiplicity`] only sees the origin, so polynomial
//! input loses nothing at desk scale.

mod multiplicity;
mod parse;
mod univariate;

pub use multiplicity::{gcd_bivariate, intersection_multiplicity, multiplicity_power_law};
pub use parse::parse_poly;
pub use univariate::UniPoly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at byte {pos} (variables are `{x}`, `{y}`)")]
    UnknownIdentifier {
        name: String,
        pos: usize,
        x: String,
        y: String,
    },
    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },
    #[error("exponent at byte {pos} does not fit in 32 bits")]
    ExponentTooLarge { pos: usize },
    #[error("invalid variable pair (`{0}`, `{1}`): need two distinct identifiers")]
    BadVariables(String, String),
    #[error("infinite intersection multiplicity: the germs share a factor through the origin")]
    InfiniteMultiplicity,
    #[error("variable mismatch: ({0}, {1}) vs ({2}, {3})")]
    VariableMismatch(String, String, String, String),
}

/// A local intersection number: a nonnegative integer, or infinite when
/// the two germs share a component through the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn is_finite(&self) -> bool {
        matches!(self, Multiplicity::Finite(_))
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(*n),
            Multiplicity::Infinite => None,
        }
    }
}

impl PartialOrd for Multiplicity {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multiplicity {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Multiplicity::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(n) => ser.serialize_u64(*n),
            Multiplicity::Infinite => ser.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(de)?;
        match v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(Multiplicity::Finite)
                .ok_or_else(|| D::Error::custom("multiplicity must be a nonnegative integer")),
            serde_json::Value::String(s) if s == "infinite" => Ok(Multiplicity::Infinite),
            _ => Err(D::Error::custom("expected integer or \"infinite\"")),
        }
    }
}

/// Sparse polynomial in two variables over the rationals.
///
/// Terms map exponent pairs `(e_x, e_y)` to nonzero coefficients; the map
/// is kept in lex order on the pair, which fixes a canonical form for
/// equality, hashing, and printing. The zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
    vars: (String, String),
}

impl BivariatePoly {
    pub fn zero(vars: (&str, &str)) -> Self {
        BivariatePoly {
            terms: BTreeMap::new(),
            vars: (vars.0.to_owned(), vars.1.to_owned()),
        }
    }

    pub fn constant(c: Rational, vars: (&str, &str)) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(0, 0, c);
        p
    }

    pub fn var_x(vars: (&str, &str)) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(1, 0, Rational::one());
        p
    }

    pub fn var_y(vars: (&str, &str)) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(0, 1, Rational::one());
        p
    }

    pub fn from_terms<I>(terms: I, vars: (&str, &str)) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Rational)>,
    {
        let mut p = Self::zero(vars);
        for ((ex, ey), c) in terms {
            p.add_term(ex, ey, c);
        }
        p
    }

    fn add_term(&mut self, ex: u32, ey: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((ex, ey)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> (&str, &str) {
        (&self.vars.0, &self.vars.1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lex order on `(e_x, e_y)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, ex: u32, ey: u32) -> Rational {
        self.terms
            .get(&(ex, ey))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    /// Order of vanishing at the origin: the minimum total degree over the
    /// support. `Infinite` for the zero polynomial.
    pub fn origin_order(&self) -> Multiplicity {
        self.terms
            .keys()
            .map(|&(ex, ey)| u64::from(ex) + u64::from(ey))
            .min()
            .map_or(Multiplicity::Infinite, Multiplicity::Finite)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms
            .keys()
            .map(|&(ex, ey)| u64::from(ex) + u64::from(ey))
            .max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, ey)| ey).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(ex, _)| ex).max()
    }

    fn assert_same_vars(&self, other: &BivariatePoly) {
        assert_eq!(
            self.vars, other.vars,
            "polynomial arithmetic requires matching variables"
        );
    }

    pub fn pow(&self, mut e: u32) -> BivariatePoly {
        let mut base = self.clone();
        let mut acc = BivariatePoly::constant(Rational::one(), self.vars());
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

    /// Substitutes `y = 0`, returning the result as a polynomial in `x`.
    pub fn subst_y_zero(&self) -> UniPoly {
        let deg = self.degree_x().map_or(0, |d| d as usize);
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (&(ex, ey), c) in &self.terms {
            if ey == 0 {
                coeffs[ex as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Coefficients with respect to `y`: entry `k` is the coefficient of
    /// `y^k` as a polynomial in `x`. Empty for the zero polynomial.
    pub fn y_coefficients(&self) -> Vec<UniPoly> {
        let Some(dy) = self.degree_y() else {
            return Vec::new();
        };
        let dx = self.degree_x().unwrap_or(0) as usize;
        let mut rows = vec![vec![Rational::zero(); dx + 1]; dy as usize + 1];
        for (&(ex, ey), c) in &self.terms {
            rows[ey as usize][ex as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::from_coeffs).collect()
    }

    pub fn from_y_coefficients(coeffs: &[UniPoly], vars: (&str, &str)) -> BivariatePoly {
        let mut p = BivariatePoly::zero(vars);
        for (ey, row) in coeffs.iter().enumerate() {
            for (ex, c) in row.coeffs().iter().enumerate() {
                p.add_term(ex as u32, ey as u32, c.clone());
            }
        }
        p
    }

    /// Exact division by `y`; panics when some term has no `y` factor.
    pub(crate) fn div_y(&self) -> BivariatePoly {
        let mut p = BivariatePoly::zero(self.vars());
        for (&(ex, ey), c) in &self.terms {
            assert!(ey > 0, "polynomial not divisible by y");
            p.add_term(ex, ey - 1, c.clone());
        }
        p
    }

    /// `self - c * x^k * other`, the elimination step of the
    /// intersection-multiplicity reduction.
    pub(crate) fn sub_scaled_xpow(&self, c: &Rational, k: u32, other: &BivariatePoly) -> Self {
        self.assert_same_vars(other);
        let mut p = self.clone();
        for (&(ex, ey), a) in &other.terms {
            p.add_term(ex.checked_add(k).expect("exponent overflow"), ey, -(c * a));
        }
        p
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        self.assert_same_vars(rhs);
        let mut p = self.clone();
        for (&(ex, ey), c) in &rhs.terms {
            p.add_term(ex, ey, c.clone());
        }
        p
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self.assert_same_vars(rhs);
        let mut p = self.clone();
        for (&(ex, ey), c) in &rhs.terms {
            p.add_term(ex, ey, -c.clone());
        }
        p
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        self.assert_same_vars(rhs);
        let mut p = BivariatePoly::zero(self.vars());
        for (&(ax, ay), a) in &self.terms {
            for (&(bx, by), b) in &rhs.terms {
                p.add_term(
                    ax.checked_add(bx).expect("exponent overflow"),
                    ay.checked_add(by).expect("exponent overflow"),
                    a * b,
                );
            }
        }
        p
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
            vars: self.vars.clone(),
        }
    }
}

impl fmt::Display for BivariatePoly {
    /// Canonical printing: terms ascending in lex order on `(e_x, e_y)`,
    /// explicit `^` and `*`, coefficients as `p/q`. Parsing the output
    /// reproduces the polynomial exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let (x, y) = self.vars();
        let mut first = true;
        for (&(ex, ey), c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (ex == 0 && ey == 0) {
                parts.push(format_rational(&mag));
            }
            if ex > 0 {
                parts.push(if ex == 1 {
                    x.to_owned()
                } else {
                    format!("{x}^{ex}")
                });
            }
            if ey > 0 {
                parts.push(if ey == 1 {
                    y.to_owned()
                } else {
                    format!("{y}^{ey}")
                });
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// Sylvester resultant of `g` and `h` with respect to `y`, as a
/// polynomial in `x`.
///
/// The matrix puts the coefficient rows of `g` on top, so the sign is
/// pinned: `resultant_y(x, y) = x`. The resultant vanishes identically
/// exactly when `g` and `h` share a factor of positive `y`-degree, and
/// its order at `x = 0` upper-bounds intersection numbers along `x = 0`.
pub fn resultant_y(g: &BivariatePoly, h: &BivariatePoly) -> UniPoly {
    if g.is_zero() || h.is_zero() {
        return UniPoly::zero();
    }
    let gc = g.y_coefficients();
    let hc = h.y_coefficients();
    let p = gc.len() - 1; // deg_y g
    let q = hc.len() - 1; // deg_y h
    let n = p + q;
    if n == 0 {
        return UniPoly::one();
    }
    // Sylvester matrix over Q[x]: q shifted rows of g, then p shifted rows
    // of h, coefficients in descending y-degree.
    let mut m = vec![vec![UniPoly::zero(); n]; n];
    for row in 0..q {
        for (i, c) in gc.iter().rev().enumerate() {
            m[row][row + i] = c.clone();
        }
    }
    for row in 0..p {
        for (i, c) in hc.iter().rev().enumerate() {
            m[q + row][row + i] = c.clone();
        }
    }
    bareiss_determinant(m)
}

/// Fraction-free determinant over the integral domain Q[x].
fn bareiss_determinant(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign_flip = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UniPoly::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -&det
    } else {
        det
    }
}
