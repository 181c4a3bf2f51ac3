//! Gröbner bases of submodules of graded free modules, normal forms,
//! syzygies and free resolutions.
//!
//! Over `QQ[t]` the parameter is treated as one more ring variable of
//! x-degree 0, ordered below every x-variable, so all reduction happens over
//! the field `QQ`.

mod element;
mod engine;
mod resolution;

pub use element::{FreeElement, ModulePresentation};
pub use resolution::{free_resolution, subquotient_presentation, ChainComplex, Direction};

use engine::{Ctx, Groebner, Vector};

use num_traits::One;

use crate::arith::{Polynomial, Rational, TermOrder};

fn context(elems: &[FreeElement], order: &TermOrder) -> Option<Ctx> {
    let first = elems.first()?;
    Some(Ctx::for_elements(elems, first.twists(), first.nvars(), order))
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
///
/// All generators must live in a common ambient. Elements are returned monic
/// and sorted by decreasing lead term.
pub fn buchberger(gens: &[FreeElement], order: &TermOrder) -> Vec<FreeElement> {
    let gens: Vec<FreeElement> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(ctx) = context(&gens, order) else {
        return Vec::new();
    };
    let mut gb = Groebner::new(&ctx);
    gb.extend(gens.iter().map(|g| ctx.to_vector(g)));
    let reduced = gb.reduced();
    debug_assert!(engine::is_groebner(&reduced, &ctx), "S-pair check failed");
    reduced.iter().map(|v| ctx.to_element(v, &ctx.twists)).collect()
}

/// Remainder of `e` on division by `basis`; no term of the result is
/// divisible by a lead term of `basis`.
pub fn normal_form(e: &FreeElement, basis: &[FreeElement], order: &TermOrder) -> FreeElement {
    if basis.is_empty() || e.is_zero() {
        return e.clone();
    }
    let mut all = basis.to_vec();
    all.push(e.clone());
    let ctx = context(&all, order).unwrap();
    let b: Vec<Vector> = basis.iter().map(|g| ctx.to_vector(g)).collect();
    let r = engine::reduce(ctx.to_vector(e), &b, &ctx, None);
    ctx.to_element(&r, e.twists())
}

/// Division by a fixed Gröbner basis over `QQ`, reused across many
/// monomials.
pub struct Reducer {
    ctx: Ctx,
    basis: Vec<Vector>,
}

impl Reducer {
    /// `basis` must be a Gröbner basis with constant coefficients in the
    /// free module with generator degrees `twists`.
    pub fn new(basis: &[FreeElement], nvars: usize, twists: &[i64], order: &TermOrder) -> Self {
        assert!(basis.iter().all(FreeElement::has_constant_coeffs), "Reducer works over QQ");
        let ctx = Ctx {
            nx: nvars,
            has_t: false,
            order: order.clone(),
            twists: twists.to_vec(),
        };
        let basis = basis.iter().filter(|b| !b.is_zero()).map(|b| ctx.to_vector(b)).collect();
        Reducer { ctx, basis }
    }

    /// `x^m e_comp` is not divisible by any lead term.
    pub fn is_standard(&self, comp: usize, m: &crate::arith::Monomial) -> bool {
        !self.basis.iter().any(|b| {
            let l = b.lead().unwrap();
            l.comp == comp && engine::divides(&l.exp, &m.0)
        })
    }

    /// Normal form of `x^m e_comp` as `(component, monomial, coefficient)`
    /// terms, all standard.
    pub fn reduce_monomial(&self, comp: usize, m: &crate::arith::Monomial) -> Vec<(usize, crate::arith::Monomial, Rational)> {
        let v = Vector {
            terms: vec![engine::Term {
                comp,
                exp: m.0.clone(),
                coeff: Rational::one(),
            }],
        };
        engine::reduce(v, &self.basis, &self.ctx, None)
            .terms
            .into_iter()
            .map(|t| (t.comp, crate::arith::Monomial(t.exp), t.coeff))
            .collect()
    }
}

/// Whether every S-pair of `basis` reduces to zero.
pub fn is_groebner_basis(basis: &[FreeElement], order: &TermOrder) -> bool {
    let nonzero: Vec<FreeElement> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(ctx) = context(&nonzero, order) else {
        return true;
    };
    let vs: Vec<Vector> = nonzero.iter().map(|g| ctx.to_vector(g)).collect();
    engine::is_groebner(&vs, &ctx)
}

fn degrees(elems: &[FreeElement]) -> Vec<i64> {
    elems
        .iter()
        .map(|e| e.degree().expect("homogeneous nonzero element"))
        .collect()
}

/// Schreyer syzygies of a Gröbner basis, one per surviving S-pair, read off
/// from the reduction trace. They live in the free module whose generator
/// `k` has the degree of `basis[k]`.
///
/// A pair `(i, j)` is skipped when some `k` has a lead dividing `lcm(i, j)`
/// with both `lcm(i, k)` and `lcm(k, j)` strictly dividing it; its syzygy is
/// then a combination of the two smaller ones.
pub fn syzygy_basis(basis: &[FreeElement], order: &TermOrder) -> Vec<FreeElement> {
    if basis.iter().any(FreeElement::is_zero) {
        panic!("syzygy_basis needs nonzero basis elements");
    }
    let Some(ctx) = context(basis, order) else {
        return Vec::new();
    };
    let vs: Vec<Vector> = basis.iter().map(|g| ctx.to_vector(g)).collect();
    let tw = weighted_degrees(basis, order);
    let leads: Vec<_> = vs.iter().map(|v| v.lead().unwrap().clone()).collect();
    let lcm = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| *x.max(y)).collect() };
    let mut out = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if leads[i].comp != leads[j].comp {
                continue;
            }
            let lij = lcm(&leads[i].exp, &leads[j].exp);
            let pruned = (0..vs.len()).any(|k| {
                k != i
                    && k != j
                    && leads[k].comp == leads[i].comp
                    && engine::divides(&leads[k].exp, &lij)
                    && lcm(&leads[i].exp, &leads[k].exp) != lij
                    && lcm(&leads[k].exp, &leads[j].exp) != lij
            });
            if pruned {
                continue;
            }
            let (s, (cf, mf), (cg, mg)) = engine::s_vector(&vs[i], &vs[j], &ctx);
            let mut trace = Vec::new();
            let r = engine::reduce(s, &vs, &ctx, Some(&mut trace));
            debug_assert!(r.is_zero(), "syzygy_basis needs a Gröbner basis");
            // s - sum q = 0, with s = cf x^mf e_i - cg x^mg e_j.
            let mut syz = Vector::default();
            let mut add = |comp: usize, c: Rational, exp: Vec<u32>| {
                let t = Vector {
                    terms: vec![engine::Term { comp, exp, coeff: c }],
                };
                syz = add_vectors(&syz, &t, &ctx);
            };
            add(i, cf, mf);
            add(j, -cg, mg);
            for (k, c, shift) in trace {
                add(k, -c, shift);
            }
            out.push(ctx.to_element(&syz, &tw));
        }
    }
    out
}

fn weighted_degrees(basis: &[FreeElement], order: &TermOrder) -> Vec<i64> {
    match order.weights() {
        None => degrees(basis),
        Some(_) => basis
            .iter()
            .map(|e| {
                let (k, p) = e.comps().iter().enumerate().find(|(_, p)| !p.is_zero()).unwrap();
                let (m, _) = p.terms().next().unwrap();
                order.weighted_degree(&m.0) as i64 + e.twists()[k]
            })
            .collect(),
    }
}

fn add_vectors(a: &Vector, b: &Vector, ctx: &Ctx) -> Vector {
    let mut out = a.clone();
    if let Some(first) = b.terms.first() {
        out.sub_mul(&-Rational::one(), &vec![0; first.exp.len()], b, ctx);
    }
    out
}

/// Generators of the syzygy module of the nonzero homogeneous family
/// `gens`, in the free module whose generator `k` has the degree of
/// `gens[k]`.
pub fn syzygies(gens: &[FreeElement], order: &TermOrder) -> Vec<FreeElement> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    kernel(gens, first.nvars(), &degrees(gens), order)
}

/// Generators of the kernel of the map sending source generator `k` (of
/// degree `src_twists[k]`) to `cols[k]`. Zero columns give unit vectors.
///
/// Computed by a Gröbner basis of the graph `(c_k, e_k)` under a
/// position-over-term order with the target components on top; elements
/// whose lead falls in a tag component have zero target part.
pub fn kernel(cols: &[FreeElement], nvars: usize, src_twists: &[i64], order: &TermOrder) -> Vec<FreeElement> {
    let (syz, _) = graph_basis(cols, nvars, src_twists, order, &[]);
    minimal_generators(&syz, order)
}

/// Shared elimination: returns kernel generators of `cols` (unminimized)
/// and, for each `target`, coefficients expressing it in `cols` (or `None`).
pub(crate) fn graph_basis(
    cols: &[FreeElement],
    nx: usize,
    tag_tw: &[i64],
    order: &TermOrder,
    targets: &[FreeElement],
) -> (Vec<FreeElement>, Vec<Option<Vec<Polynomial>>>) {
    let Some(first) = cols.first() else {
        let res = targets.iter().map(|t| t.is_zero().then(Vec::new)).collect();
        return (Vec::new(), res);
    };
    let r = first.rank();
    let k = cols.len();
    let mut tw = first.twists().to_vec();
    tw.extend(tag_tw);
    let has_t = cols.iter().chain(targets).any(|g| !g.has_constant_coeffs());
    let ctx = Ctx {
        nx,
        has_t,
        order: order.clone(),
        twists: tw.clone(),
    };
    let zero = Polynomial::zero(nx);
    let lifted: Vec<Vector> = cols
        .iter()
        .enumerate()
        .map(|(idx, g)| {
            let mut comps = g.comps().to_vec();
            comps.extend((0..k).map(|c| if c == idx { Polynomial::one(nx) } else { zero.clone() }));
            ctx.to_vector(&FreeElement::new(comps, tw.clone()))
        })
        .collect();
    let mut gb = Groebner::new(&ctx);
    gb.extend(lifted);
    let basis = gb.reduced();
    let mut syz = Vec::new();
    for v in &basis {
        if v.lead().unwrap().comp >= r {
            let e = ctx.to_element(v, &tw);
            syz.push(FreeElement::new(e.comps()[r..].to_vec(), tag_tw.to_vec()));
        }
    }
    let exprs = targets
        .iter()
        .map(|t| {
            let mut comps = t.comps().to_vec();
            comps.extend((0..k).map(|_| zero.clone()));
            let red = engine::reduce(ctx.to_vector(&FreeElement::new(comps, tw.clone())), &basis, &ctx, None);
            if red.lead().is_some_and(|l| l.comp < r) {
                return None;
            }
            let e = ctx.to_element(&red, &tw);
            Some(e.comps()[r..].iter().map(|p| -p).collect())
        })
        .collect();
    (syz, exprs)
}

/// A subfamily of `elems` generating the same submodule, chosen greedily by
/// increasing degree. Over a field this is a minimal generating set.
pub fn minimal_generators(elems: &[FreeElement], order: &TermOrder) -> Vec<FreeElement> {
    let mut sorted: Vec<FreeElement> = elems.iter().filter(|e| !e.is_zero()).cloned().collect();
    sorted.sort_by_key(|e| e.degree().unwrap_or(0));
    let Some(ctx) = context(&sorted, order) else {
        return Vec::new();
    };
    let mut gb = Groebner::new(&ctx);
    let mut keep = Vec::new();
    for e in sorted {
        let v = ctx.to_vector(&e);
        let r = engine::reduce(v.clone(), &gb.basis, &ctx, None);
        if !r.is_zero() {
            keep.push(e);
            gb.extend([r]);
        }
    }
    keep
}
