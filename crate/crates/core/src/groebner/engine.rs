//! Flat term representation and the Buchberger loop.
//!
//! Module elements are converted to sorted term lists over `QQ` whose
//! exponent vectors hold the x-exponents followed, when coefficients involve
//! the parameter, by the `t` exponent. All reduction happens in this form.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};

use super::element::FreeElement;
use crate::arith::{BaseScalar, Monomial, Polynomial, Rational, TermOrder};

#[derive(Clone, Debug)]
pub(crate) struct Ctx {
    pub nx: usize,
    pub has_t: bool,
    pub order: TermOrder,
    pub twists: Vec<i64>,
}

impl Ctx {
    /// Context for a family of elements in a common ambient module.
    pub fn for_elements<'a>(
        elems: impl IntoIterator<Item = &'a FreeElement> + Clone,
        twists: &[i64],
        nx: usize,
        order: &TermOrder,
    ) -> Ctx {
        let has_t = elems.into_iter().any(|e| !e.has_constant_coeffs());
        Ctx {
            nx,
            has_t,
            order: order.clone(),
            twists: twists.to_vec(),
        }
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order.cmp_terms((a.comp, &a.exp), (b.comp, &b.exp), self.nx)
    }

    /// Degree used by the normal selection strategy: weighted x-degree plus
    /// the twist of the component.
    pub fn sugar(&self, comp: usize, exp: &[u32]) -> i64 {
        self.order.weighted_degree(&exp[..self.nx]) as i64 + self.twists.get(comp).copied().unwrap_or(0)
    }

    pub fn to_vector(&self, e: &FreeElement) -> Vector {
        let mut terms = Vec::new();
        for (comp, p) in e.comps().iter().enumerate() {
            for (m, s) in p.terms() {
                if self.has_t {
                    for (k, c) in s.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            let mut exp = m.0.clone();
                            exp.push(k as u32);
                            terms.push(Term { comp, exp, coeff: c.clone() });
                        }
                    }
                } else {
                    let c = s.as_constant().expect("parameter coefficient in constant context");
                    terms.push(Term { comp, exp: m.0.clone(), coeff: c });
                }
            }
        }
        terms.sort_by(|a, b| self.cmp(b, a));
        Vector { terms }
    }

    pub fn to_element(&self, v: &Vector, twists: &[i64]) -> FreeElement {
        let mut comps: Vec<Vec<(Monomial, BaseScalar)>> = vec![Vec::new(); twists.len()];
        for t in &v.terms {
            let m = Monomial(t.exp[..self.nx].to_vec());
            let s = if self.has_t {
                let k = t.exp[self.nx] as usize;
                let mut cs = vec![Rational::zero(); k + 1];
                cs[k] = t.coeff.clone();
                BaseScalar::from_coeffs(cs)
            } else {
                BaseScalar::constant(t.coeff.clone())
            };
            comps[t.comp].push((m, s));
        }
        FreeElement::new(
            comps
                .into_iter()
                .map(|ts| Polynomial::from_terms(self.nx, ts))
                .collect(),
            twists.to_vec(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub exp: Vec<u32>,
    pub coeff: Rational,
}

/// Terms sorted in decreasing order; the first term is the lead term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_exp(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn make_monic(&mut self) {
        if let Some(lc) = self.terms.first().map(|t| t.coeff.clone()) {
            if !lc.is_one() {
                let inv = lc.recip();
                for t in &mut self.terms {
                    t.coeff *= &inv;
                }
            }
        }
    }

    /// `self - c * x^shift * other`, where only terms from index `from` on
    /// can interact with the product.
    fn sub_mul_from(&mut self, from: usize, c: &Rational, shift: &[u32], other: &Vector, ctx: &Ctx) {
        let tail = self.terms.split_off(from);
        let mut out = Vec::with_capacity(tail.len() + other.terms.len());
        let mut a = tail.into_iter().peekable();
        let mut b = other.terms.iter().map(|t| Term {
            comp: t.comp,
            exp: t.exp.iter().zip(shift).map(|(x, y)| x + y).collect(),
            coeff: -(c * &t.coeff),
        });
        let mut nb = b.next();
        loop {
            match (a.peek(), &nb) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    out.push(nb.take().unwrap());
                    nb = b.next();
                }
                (Some(ta), Some(tb)) => match ctx.cmp(ta, tb) {
                    Ordering::Greater => out.push(a.next().unwrap()),
                    Ordering::Less => {
                        out.push(nb.take().unwrap());
                        nb = b.next();
                    }
                    Ordering::Equal => {
                        let mut ta = a.next().unwrap();
                        ta.coeff += &nb.take().unwrap().coeff;
                        if !ta.coeff.is_zero() {
                            out.push(ta);
                        }
                        nb = b.next();
                    }
                },
            }
        }
        self.terms.extend(out);
    }

    pub fn sub_mul(&mut self, c: &Rational, shift: &[u32], other: &Vector, ctx: &Ctx) {
        self.sub_mul_from(0, c, shift, other, ctx);
    }

    pub fn mul_term(&self, c: &Rational, shift: &[u32]) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    exp: t.exp.iter().zip(shift).map(|(x, y)| x + y).collect(),
                    coeff: c * &t.coeff,
                })
                .collect(),
        }
    }
}

/// Quotient record of a division: `(basis index, coefficient, monomial shift)`.
pub(crate) type QuotientTerm = (usize, Rational, Vec<u32>);

fn find_reducer(t: &Term, basis: &[Vector]) -> Option<usize> {
    basis.iter().position(|b| {
        b.lead()
            .is_some_and(|l| l.comp == t.comp && divides(&l.exp, &t.exp))
    })
}

/// Full reduction of `v` by `basis`. If `quotients` is given, every
/// subtraction `c * x^shift * basis[k]` is recorded there.
pub(crate) fn reduce(
    mut v: Vector,
    basis: &[Vector],
    ctx: &Ctx,
    mut quotients: Option<&mut Vec<QuotientTerm>>,
) -> Vector {
    let mut pos = 0;
    while pos < v.terms.len() {
        let t = &v.terms[pos];
        match find_reducer(t, basis) {
            None => pos += 1,
            Some(k) => {
                let l = basis[k].lead().unwrap();
                let c = &t.coeff / &l.coeff;
                let shift = sub_exp(&t.exp, &l.exp);
                if let Some(q) = quotients.as_deref_mut() {
                    q.push((k, c.clone(), shift.clone()));
                }
                v.sub_mul_from(pos, &c, &shift, &basis[k], ctx);
            }
        }
    }
    v
}

/// Lead-term-only reduction; cheaper when only zero-ness matters.
pub(crate) fn top_reduce(mut v: Vector, basis: &[Vector], ctx: &Ctx) -> Vector {
    while let Some(t) = v.lead() {
        match find_reducer(t, basis) {
            None => break,
            Some(k) => {
                let l = basis[k].lead().unwrap();
                let c = &t.coeff / &l.coeff;
                let shift = sub_exp(&t.exp, &l.exp);
                v.sub_mul(&c, &shift, &basis[k], ctx);
            }
        }
    }
    v
}

/// S-vector of two basis elements with leads in the same component, with
/// the multipliers used: `c_i x^{m_i} f_i - c_j x^{m_j} f_j`.
pub(crate) fn s_vector(f: &Vector, g: &Vector, ctx: &Ctx) -> (Vector, (Rational, Vec<u32>), (Rational, Vec<u32>)) {
    let (lf, lg) = (f.lead().unwrap(), g.lead().unwrap());
    let l = lcm(&lf.exp, &lg.exp);
    let mf = sub_exp(&l, &lf.exp);
    let mg = sub_exp(&l, &lg.exp);
    let cf = lf.coeff.recip();
    let cg = lg.coeff.recip();
    let mut s = f.mul_term(&cf, &mf);
    s.sub_mul(&cg, &mg, g, ctx);
    (s, (cf, mf), (cg, mg))
}

/// Incremental Buchberger state.
pub(crate) struct Groebner<'c> {
    ctx: &'c Ctx,
    pub basis: Vec<Vector>,
    queue: BTreeSet<(i64, usize, usize)>,
    pending: HashSet<(usize, usize)>,
}

impl<'c> Groebner<'c> {
    pub fn new(ctx: &'c Ctx) -> Self {
        Groebner {
            ctx,
            basis: Vec::new(),
            queue: BTreeSet::new(),
            pending: HashSet::new(),
        }
    }

    fn push(&mut self, mut v: Vector) {
        v.make_monic();
        let j = self.basis.len();
        let lj = v.lead().unwrap().clone();
        for (i, b) in self.basis.iter().enumerate() {
            let li = b.lead().unwrap();
            if li.comp != lj.comp {
                continue;
            }
            let deg = self.ctx.sugar(lj.comp, &lcm(&li.exp, &lj.exp));
            self.queue.insert((deg, i, j));
            self.pending.insert((i, j));
        }
        self.basis.push(v);
    }

    fn pair_is_redundant(&self, i: usize, j: usize) -> bool {
        let (li, lj) = (self.basis[i].lead().unwrap(), self.basis[j].lead().unwrap());
        let l = lcm(&li.exp, &lj.exp);
        // Product criterion; only valid for ideals.
        if self.ctx.twists.len() == 1 && li.exp.iter().zip(&lj.exp).all(|(a, b)| *a == 0 || *b == 0) {
            return true;
        }
        // Chain criterion.
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        self.basis.iter().enumerate().any(|(k, bk)| {
            if k == i || k == j {
                return false;
            }
            let lk = bk.lead().unwrap();
            lk.comp == li.comp
                && divides(&lk.exp, &l)
                && !self.pending.contains(&key(i, k))
                && !self.pending.contains(&key(j, k))
        })
    }

    /// Adds generators and completes to a Gröbner basis.
    pub fn extend(&mut self, gens: impl IntoIterator<Item = Vector>) {
        for g in gens {
            let r = reduce(g, &self.basis, self.ctx, None);
            if !r.is_zero() {
                self.push(r);
            }
        }
        self.complete();
    }

    fn complete(&mut self) {
        while let Some(&(deg, i, j)) = self.queue.iter().next() {
            self.queue.remove(&(deg, i, j));
            if self.pair_is_redundant(i, j) {
                self.pending.remove(&(i, j));
                continue;
            }
            self.pending.remove(&(i, j));
            let (s, _, _) = s_vector(&self.basis[i], &self.basis[j], self.ctx);
            let r = reduce(s, &self.basis, self.ctx, None);
            if !r.is_zero() {
                self.push(r);
            }
        }
    }

    /// Reduced Gröbner basis: drop elements whose lead is divisible by
    /// another lead, then tail-reduce.
    pub fn reduced(&self) -> Vec<Vector> {
        let mut keep: Vec<Vector> = Vec::new();
        for (i, b) in self.basis.iter().enumerate() {
            let lb = b.lead().unwrap();
            let redundant = self.basis.iter().enumerate().any(|(k, o)| {
                let lo = o.lead().unwrap();
                k != i
                    && lo.comp == lb.comp
                    && divides(&lo.exp, &lb.exp)
                    && (lo.exp != lb.exp || k < i)
            });
            if !redundant {
                keep.push(b.clone());
            }
        }
        let mut out = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let head = Vector {
                terms: vec![keep[i].terms[0].clone()],
            };
            let tail = Vector {
                terms: keep[i].terms[1..].to_vec(),
            };
            let others: Vec<Vector> = keep
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, v)| v.clone())
                .collect();
            let mut r = reduce(tail, &others, self.ctx, None);
            let mut terms = head.terms;
            terms.append(&mut r.terms);
            let mut v = Vector { terms };
            v.make_monic();
            out.push(v);
        }
        out.sort_by(|a, b| self.ctx.cmp(b.lead().unwrap(), a.lead().unwrap()));
        out
    }
}

/// Every S-vector of `basis` reduces to zero.
pub(crate) fn is_groebner(basis: &[Vector], ctx: &Ctx) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (li, lj) = (basis[i].lead().unwrap(), basis[j].lead().unwrap());
            if li.comp != lj.comp {
                continue;
            }
            let (s, _, _) = s_vector(&basis[i], &basis[j], ctx);
            if !top_reduce(s, basis, ctx).is_zero() {
                return false;
            }
        }
    }
    true
}
