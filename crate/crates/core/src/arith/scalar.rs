//! Elements of the base ring `A`, either `QQ` or `QQ[t]`.
//!
//! Both base rings share one representation: a univariate polynomial in the
//! parameter `t` with exact rational coefficients. Elements of `QQ` are the
//! constant polynomials. Which ring a computation lives over is recorded on
//! the [`BaseRing`] tag carried by ring signatures, not on each scalar.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Which base ring a ring signature is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Rational,
    /// `QQ[t]`; the parameter name is kept on the ring signature.
    RationalPoly,
}

impl BaseRing {
    pub fn has_parameter(self) -> bool {
        matches!(self, BaseRing::RationalPoly)
    }
}

/// A univariate polynomial in `t` over `QQ`.
///
/// Coefficients are stored lowest degree first and the leading coefficient is
/// never zero; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BaseScalar {
    coeffs: Vec<Rational>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl BaseScalar {
    pub fn zero() -> Self {
        BaseScalar { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BaseScalar { coeffs }
    }

    /// Convenience constructor from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for nonzero constants, i.e. the units of `QQ[t]`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Constant term as a rational, if the scalar is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Degree in `t`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BaseScalar {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Exact evaluation at `t = c`.
    pub fn eval(&self, c: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * c + a;
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    ///
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading_coeff().expect("division by zero scalar").clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common multiple; zero if either argument is zero.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        (self * other).exact_div(&g).expect("gcd divides product").monic()
    }

    /// Extended gcd: `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut u0, mut u1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let u = &u0 - &(&q * &u1);
            u0 = std::mem::replace(&mut u1, u);
        }
        match r0.leading_coeff().cloned() {
            None => (r0, s0, u0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), u0.scale(&inv))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Renders with the given parameter name, e.g. `t^2 - 1/2*t + 3`.
    pub fn display_with(&self, param: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => param.to_string(),
                _ => format!("{param}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }

    /// True if the rendering is a single signed term, so it needs no
    /// parentheses as a coefficient.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

impl fmt::Display for BaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for BaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseScalar({self})")
    }
}

impl PartialOrd for BaseScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top. Only used to sort factor
/// lists deterministically.
impl Ord for BaseScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<'a> Add<&'a BaseScalar> for &'a BaseScalar {
    type Output = BaseScalar;
    fn add(self, rhs: &BaseScalar) -> BaseScalar {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = rhs.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        BaseScalar::from_coeffs(out)
    }
}

impl<'a> Sub<&'a BaseScalar> for &'a BaseScalar {
    type Output = BaseScalar;
    fn sub(self, rhs: &BaseScalar) -> BaseScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a BaseScalar> for &'a BaseScalar {
    type Output = BaseScalar;
    fn mul(self, rhs: &BaseScalar) -> BaseScalar {
        if self.is_zero() || rhs.is_zero() {
            return BaseScalar::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BaseScalar::from_coeffs(out)
    }
}

impl Neg for &BaseScalar {
    type Output = BaseScalar;
    fn neg(self) -> BaseScalar {
        BaseScalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for BaseScalar {
    type Output = BaseScalar;
    fn neg(self) -> BaseScalar {
        -&self
    }
}

impl Add for BaseScalar {
    type Output = BaseScalar;
    fn add(self, rhs: BaseScalar) -> BaseScalar {
        &self + &rhs
    }
}

impl Sub for BaseScalar {
    type Output = BaseScalar;
    fn sub(self, rhs: BaseScalar) -> BaseScalar {
        &self - &rhs
    }
}

impl Mul for BaseScalar {
    type Output = BaseScalar;
    fn mul(self, rhs: BaseScalar) -> BaseScalar {
        &self * &rhs
    }
}

impl AddAssign<&BaseScalar> for BaseScalar {
    fn add_assign(&mut self, rhs: &BaseScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&BaseScalar> for BaseScalar {
    fn sub_assign(&mut self, rhs: &BaseScalar) {
        *self = &*self - rhs;
    }
}

/// Exact evaluation of a scalar at `t = c`; the identity on constants.
pub fn specialize_scalar(s: &BaseScalar, c: &Rational) -> Rational {
    s.eval(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specialize_examples() {
        assert_eq!(specialize_scalar(&BaseScalar::from_ints(&[1, 0, 1]), &rat(2)), rat(5));
        assert_eq!(specialize_scalar(&BaseScalar::from_int(3), &rat(7)), rat(3));
        assert_eq!(specialize_scalar(&BaseScalar::from_ints(&[-1, 1]), &rat(1)), rat(0));
    }

    #[test]
    fn canonical_zero() {
        assert!(BaseScalar::from_ints(&[0, 0]).is_zero());
        assert_eq!(BaseScalar::from_ints(&[1, 1]) - BaseScalar::from_ints(&[1, 1]), BaseScalar::zero());
    }

    #[test]
    fn gcd_and_lcm() {
        let a = BaseScalar::from_ints(&[0, 2]); // 2t
        let b = BaseScalar::from_ints(&[0, 0, 3]); // 3t^2
        assert_eq!(a.gcd(&b), BaseScalar::t());
        assert_eq!(a.lcm(&b), BaseScalar::from_ints(&[0, 0, 1]));
        let (g, s, u) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&u * &b), g);
    }

    #[test]
    fn display() {
        assert_eq!(BaseScalar::from_ints(&[-1, 1]).to_string(), "t - 1");
        assert_eq!(BaseScalar::from_ints(&[1, 0, -2]).to_string(), "-2*t^2 + 1");
        assert_eq!(BaseScalar::zero().to_string(), "0");
        assert_eq!(BaseScalar::constant(Rational::new(1.into(), 2.into())).to_string(), "1/2");
    }

    #[test]
    fn division() {
        let t2m1 = BaseScalar::from_ints(&[-1, 0, 1]);
        let tm1 = BaseScalar::from_ints(&[-1, 1]);
        assert_eq!(t2m1.exact_div(&tm1), Some(BaseScalar::from_ints(&[1, 1])));
        assert!(BaseScalar::t().exact_div(&tm1).is_none());
    }
}
