use std::collections::HashMap;

use crate::arith::{monomials_of_degree, AMatrix, Monomial};
use crate::groebner::{FreeElement, ModulePresentation};

/// Monomial basis `(component, monomial)` of the degree-`d` piece of a
/// graded free module.
#[derive(Clone, Debug)]
pub struct AmbientBasis {
    pub elems: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl AmbientBasis {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn position(&self, comp: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(comp, m.clone())).copied()
    }
}

pub fn ambient_basis(nvars: usize, twists: &[i64], d: i64) -> AmbientBasis {
    let mut elems = Vec::new();
    for (k, &a) in twists.iter().enumerate() {
        for m in monomials_of_degree(nvars, d - a) {
            elems.push((k, m));
        }
    }
    let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    AmbientBasis { elems, index }
}

/// Writes `x^m * v` into column `col` of `out` using the target basis.
fn scatter(out: &mut AMatrix, col: usize, m: &Monomial, v: &FreeElement, tgt: &AmbientBasis) {
    for (k, p) in v.comps().iter().enumerate() {
        for (mono, c) in p.terms() {
            let row = tgt
                .position(k, &mono.mul(m))
                .expect("image term outside the target piece");
            *out.entry_mut(row, col) += c;
        }
    }
}

/// Matrix of the map sending source generator `k` to `images[k]`, restricted
/// to one degree: columns indexed by `src`, rows by `tgt`.
pub fn map_piece(images: &[FreeElement], src: &AmbientBasis, tgt: &AmbientBasis) -> AMatrix {
    let mut out = AMatrix::zeros(tgt.len(), src.len());
    for (col, (k, m)) in src.elems.iter().enumerate() {
        scatter(&mut out, col, m, &images[*k], tgt);
    }
    out
}

/// Presentation over `A` of the degree-`d` piece of `m`: rows are the
/// ambient monomial basis, columns the monomial multiples of relations that
/// land in degree `d`.
pub fn graded_piece(m: &ModulePresentation, d: i64) -> AMatrix {
    let n = m.nvars();
    let basis = ambient_basis(n, m.twists(), d);
    let mut cols: Vec<(Monomial, &FreeElement)> = Vec::new();
    for rel in m.relations() {
        if let Some(e) = rel.degree() {
            for mono in monomials_of_degree(n, d - e) {
                cols.push((mono, rel));
            }
        }
    }
    let mut out = AMatrix::zeros(basis.len(), cols.len());
    for (c, (mono, rel)) in cols.iter().enumerate() {
        scatter(&mut out, c, mono, rel, &basis);
    }
    out
}
