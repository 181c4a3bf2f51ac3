//! Local cohomology at the ideal of the x-variables.
//!
//! The main route uses `H^i_I(M) = Tor_{n-i}(M, E)` with `E` the inverse
//! monomials: every graded piece of `F ⊗ E` is a finite free `A`-module. The
//! oracle route computes `Ext^i(R/I^s, M)` for growing `s` and watches the
//! values settle.

mod inverse;
mod oracle;

pub use inverse::{e_act, e_basis, phi_pairing, shift_exponent, InverseElement};
pub use oracle::{ext_of_power, local_cohomology_extlim, ExtLimit};

use std::collections::HashMap;

use rayon::prelude::*;

use crate::arith::AMatrix;
use crate::error::{Error, Result};
use crate::groebner::{free_resolution, ChainComplex, FreeElement, ModulePresentation};
use crate::homology::{complex_cohomology_degreewise, default_maxlen, GradedAModuleData, PieceData};

/// Basis `(component, a)` of the degree-`d` piece of `F ⊗ E` for a free
/// module `F` with generator degrees `twists`.
struct TorBasis {
    elems: Vec<(usize, Vec<i64>)>,
    index: HashMap<(usize, Vec<i64>), usize>,
}

impl TorBasis {
    fn new(n: usize, twists: &[i64], d: i64) -> Self {
        let mut elems = Vec::new();
        for (k, &a) in twists.iter().enumerate() {
            for alpha in e_basis(n, d - a) {
                elems.push((k, alpha));
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        TorBasis { elems, index }
    }
}

/// `F_{j+1} ⊗ E -> F_j ⊗ E` in one degree.
fn tor_map(images: &[FreeElement], src: &TorBasis, tgt: &TorBasis) -> AMatrix {
    let mut out = AMatrix::zeros(tgt.elems.len(), src.elems.len());
    for (col, (c, alpha)) in src.elems.iter().enumerate() {
        for (r, p) in images[*c].comps().iter().enumerate() {
            for (mono, coef) in p.terms() {
                if let Some(a) = shift_exponent(alpha, &mono.0) {
                    let row = tgt.index[&(r, a)];
                    *out.entry_mut(row, col) += coef;
                }
            }
        }
    }
    out
}

/// Homology at homological slot `j` of a complex of free modules whose
/// degree-`d` pieces are all free; `basis(k)` gives the slot size and
/// `map(k, src, tgt)` the matrix of `maps[k]` (slot `k + 1` to slot `k`).
fn homology_at<B>(
    len: usize,
    j: usize,
    basis: impl Fn(usize) -> B,
    size: impl Fn(&B) -> usize,
    map: impl Fn(usize, &B, &B) -> AMatrix,
) -> Result<PieceData> {
    if j >= len {
        return Ok(PieceData::default());
    }
    let mid = basis(j);
    let mut slots = Vec::new();
    let mut maps = Vec::new();
    if j + 1 < len {
        let above = basis(j + 1);
        maps.push(map(j, &above, &mid));
        slots.push(AMatrix::zeros(size(&above), 0));
    }
    slots.push(AMatrix::zeros(size(&mid), 0));
    let spot = slots.len() - 1;
    if j >= 1 {
        let below = basis(j - 1);
        maps.push(map(j - 1, &mid, &below));
        slots.push(AMatrix::zeros(size(&below), 0));
    }
    let (rank, torsion) = complex_cohomology_degreewise(&slots, &maps, spot)?;
    Ok(PieceData { rank, torsion })
}

/// `H^i_I(M)` on a window, by the Tor route.
pub fn local_cohomology(m: &ModulePresentation, i: usize, window: (i64, i64)) -> Result<GradedAModuleData> {
    let res = free_resolution(m, default_maxlen(m.nvars()));
    local_cohomology_from(&res, i, window)
}

/// Same as [`local_cohomology`] from a given free resolution.
pub fn local_cohomology_from(res: &ChainComplex, i: usize, window: (i64, i64)) -> Result<GradedAModuleData> {
    let n = res.nvars();
    if i > n {
        return Err(Error::OutOfRange(format!("local cohomology index {i} exceeds {n}")));
    }
    let j = n - i;
    let rows: Vec<Result<(i64, PieceData)>> = (window.0..=window.1)
        .into_par_iter()
        .map(|d| {
            let piece = homology_at(
                res.len(),
                j,
                |k| TorBasis::new(n, res.twists(k), d),
                |b| b.elems.len(),
                |k, src, tgt| tor_map(res.map(k), src, tgt),
            )?;
            Ok((d, piece))
        })
        .collect();
    let mut data = GradedAModuleData::new(window);
    for r in rows {
        let (d, p) = r?;
        data.insert(d, p);
    }
    Ok(data)
}
