//! Monomials and polynomials in `x_1..x_n` with coefficients in the base ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::scalar::{BaseRing, BaseScalar, Rational};
use crate::error::{Error, Result};

/// Exponent vector of a ring monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

/// All monomials of total degree `d` in `n` variables, in a fixed
/// deterministic order (lexicographically decreasing exponent vectors).
pub fn monomials_of_degree(n: usize, d: i64) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(n, d as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Ring signature `A[x_1..x_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub base: BaseRing,
    pub vars: Vec<String>,
    /// Name of the parameter of `QQ[t]`; unused over `QQ`.
    pub param: String,
}

impl Ring {
    pub fn new(base: BaseRing, vars: &[&str]) -> Self {
        Ring {
            base,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            param: "t".to_string(),
        }
    }

    /// `QQ[x_1..x_n]` with default variable names.
    pub fn rational(n: usize) -> Self {
        Ring::new(BaseRing::Rational, &default_names(n))
    }

    /// `QQ[t][x_1..x_n]` with default variable names.
    pub fn rational_poly(n: usize) -> Self {
        Ring::new(BaseRing::RationalPoly, &default_names(n))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Same variables over `QQ`.
    pub fn over_rationals(&self) -> Self {
        Ring {
            base: BaseRing::Rational,
            ..self.clone()
        }
    }

    pub fn show(&self, p: &Polynomial) -> String {
        p.display_with(&self.vars, &self.param)
    }
}

fn default_names(n: usize) -> Vec<&'static str> {
    const XYZ: [&str; 3] = ["x", "y", "z"];
    const XS: [&str; 8] = ["x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"];
    if n <= 3 {
        XYZ[..n].to_vec()
    } else {
        XS[..n.min(8)].to_vec()
    }
}

/// A polynomial in `A[x_1..x_n]`: a finite map from monomials to nonzero
/// base-ring coefficients.
///
/// Homogeneity is not forced here so that ideal-level computations can use
/// weighted gradings; module presentations check it at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BaseScalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BaseScalar) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BaseScalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), BaseScalar::one())
    }

    pub fn term(m: Monomial, c: BaseScalar) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BaseScalar)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BaseScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> BaseScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &BaseScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Total x-degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<u32> {
        if self.is_homogeneous() {
            self.terms.keys().next().map(Monomial::degree)
        } else {
            None
        }
    }

    /// True if every coefficient is a constant.
    pub fn has_constant_coeffs(&self) -> bool {
        self.terms.values().all(BaseScalar::is_constant)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.nvars != other.nvars {
            return Err(Error::Structural(format!(
                "variable count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BaseScalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, a)| (m.clone(), a * c)))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Evaluates every coefficient at `t = c`.
    pub fn specialize(&self, c: &Rational) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, a)| (m.clone(), BaseScalar::constant(a.eval(c)))),
        )
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Renders in infix notation, highest-degree terms first. Coefficients
    /// that are not single terms are parenthesised, so the output reparses.
    pub fn display_with(&self, vars: &[String], param: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (m, c) in terms {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = vars.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (neg, coeff) = if c.is_monomial() && c.leading_coeff().is_some_and(|l| l.is_negative()) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let cs = coeff.display_with(param);
            let cs = if coeff.is_monomial() { cs } else { format!("({cs})") };
            if mono.is_empty() {
                out.push_str(&cs);
            } else if coeff.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{cs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "Polynomial({})", self.display_with(&names, "t"))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Panics on a variable-count mismatch; use [`poly_mul`] for a checked product.
impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

/// Product of two polynomials over the same ring signature.
pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.checked_mul(q)
}
