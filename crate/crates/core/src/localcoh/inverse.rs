//! The module of inverse monomials `E = H^n_I(R)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::arith::{monomials_of_degree, BaseScalar, Polynomial};

/// A finite `A`-combination of inverse monomials `x^a`, every exponent at
/// most `-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InverseElement {
    terms: BTreeMap<Vec<i64>, BaseScalar>,
}

impl InverseElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(alpha: Vec<i64>) -> Self {
        Self::term(alpha, BaseScalar::one())
    }

    pub fn term(alpha: Vec<i64>, c: BaseScalar) -> Self {
        assert!(alpha.iter().all(|&a| a <= -1), "inverse monomial exponents must be negative");
        let mut e = Self::zero();
        e.add_term(alpha, c);
        e
    }

    pub fn add_term(&mut self, alpha: Vec<i64>, c: BaseScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BaseScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &InverseElement) -> InverseElement {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BaseScalar) -> InverseElement {
        let mut out = Self::zero();
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v * c);
        }
        out
    }
}

/// Exponents of the basis of `E_d`: vectors with entries `<= -1` summing
/// to `d`, in a fixed order. Empty unless `d <= -n`.
pub fn e_basis(n: usize, d: i64) -> Vec<Vec<i64>> {
    monomials_of_degree(n, -d - n as i64)
        .into_iter()
        .map(|m| m.0.iter().map(|&b| -(b as i64) - 1).collect())
        .collect()
}

/// `x^b * x^a`, which is `x^(a+b)` while every exponent stays negative and
/// zero otherwise.
pub fn shift_exponent(alpha: &[i64], beta: &[u32]) -> Option<Vec<i64>> {
    let out: Vec<i64> = alpha.iter().zip(beta).map(|(a, b)| a + *b as i64).collect();
    out.iter().all(|&e| e <= -1).then_some(out)
}

/// The `R`-action on `E`.
pub fn e_act(p: &Polynomial, e: &InverseElement) -> InverseElement {
    let mut out = InverseElement::zero();
    for (m, c) in p.terms() {
        for (alpha, v) in e.terms() {
            if let Some(a) = shift_exponent(alpha, &m.0) {
                out.add_term(a, c * v);
            }
        }
    }
    out
}

/// The pairing between `x^a` in `E` and `x^b` in `R`: `1` exactly when
/// `b = -a - 1`, since `x^(a+b+1)` is nonzero modulo `I` only for the
/// constant monomial.
pub fn phi_pairing(alpha: &[i64], beta: &[u32]) -> BaseScalar {
    assert_eq!(alpha.len(), beta.len(), "exponent vector lengths differ");
    if alpha.iter().zip(beta).all(|(a, b)| *b as i64 == -a - 1) {
        BaseScalar::one()
    } else {
        BaseScalar::zero()
    }
}
