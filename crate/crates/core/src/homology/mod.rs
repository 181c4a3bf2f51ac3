//! Graded pieces as presented `A`-modules, degreewise cohomology of
//! complexes, and Ext against the ring.

mod data;
mod pieces;

pub use data::{GradedAModuleData, PieceData};
pub use pieces::{ambient_basis, graded_piece, map_piece, AmbientBasis};

use rayon::prelude::*;

use crate::arith::{base_invariants, kernel_basis, rank_over_rationals, AMatrix, BaseScalar, ColumnSpan};
use crate::error::{Error, Result};
use crate::groebner::{
    free_resolution, kernel, subquotient_presentation, ChainComplex, Direction, ModulePresentation,
};
use crate::arith::TermOrder;

/// `Hom_R(P, R)`.
pub fn dualize_complex(p: &ChainComplex) -> ChainComplex {
    p.dualize()
}

/// Default resolution length for an `n`-variable ring.
pub fn default_maxlen(nvars: usize) -> usize {
    nvars + 2
}

/// Presentation of `Ext^j_R(M, R)`, the cohomology at slot `j` of the dual
/// of a free resolution of `M`.
pub fn ext_module(m: &ModulePresentation, j: usize) -> Result<ModulePresentation> {
    let maxlen = default_maxlen(m.nvars());
    if j + 1 > maxlen {
        return Err(Error::OutOfRange(format!("Ext index {j} needs a longer resolution")));
    }
    ext_from_resolution(m, &free_resolution(m, maxlen), j)
}

/// `Ext^j` from a given free resolution of `m`.
pub fn ext_from_resolution(m: &ModulePresentation, res: &ChainComplex, j: usize) -> Result<ModulePresentation> {
    let ring = m.ring();
    let dual = res.dualize();
    if j >= dual.len() {
        return Ok(ModulePresentation::free(ring.clone(), Vec::new()));
    }
    let n = ring.nvars();
    let order = TermOrder::grevlex();
    let ker = if j < dual.num_maps() {
        kernel(dual.map(j), n, dual.twists(j), &order)
    } else {
        (0..dual.rank(j))
            .map(|k| crate::groebner::FreeElement::basis(n, dual.twists(j), k))
            .collect()
    };
    let im = if j > 0 { dual.map(j - 1).to_vec() } else { Vec::new() };
    subquotient_presentation(ring, &ker, &im)
}

/// Degree-`d` pieces of every module of a complex of free modules, as a
/// complex of `A`-matrices ordered cohomologically.
fn complex_pieces(c: &ChainComplex, d: i64) -> (Vec<AMatrix>, Vec<AMatrix>) {
    let n = c.nvars();
    let bases: Vec<AmbientBasis> = (0..c.len()).map(|k| ambient_basis(n, c.twists(k), d)).collect();
    let mut maps: Vec<AMatrix> = (0..c.num_maps())
        .map(|k| {
            let (s, t) = c.endpoints(k);
            map_piece(c.map(k), &bases[s], &bases[t])
        })
        .collect();
    let mut slots: Vec<AMatrix> = bases.iter().map(|b| AMatrix::zeros(b.len(), 0)).collect();
    if c.direction() == Direction::Homological {
        slots.reverse();
        maps.reverse();
    }
    (slots, maps)
}

/// Graded pieces of the cohomology at slot `spot` of a complex of free
/// modules, for every `d` in the window. Homological complexes are indexed
/// by their homological slot.
pub fn complex_homology_window(c: &ChainComplex, spot: usize, window: (i64, i64)) -> Result<GradedAModuleData> {
    let rows: Vec<Result<(i64, PieceData)>> = (window.0..=window.1)
        .into_par_iter()
        .map(|d| {
            let (slots, maps) = complex_pieces(c, d);
            let idx = match c.direction() {
                Direction::Homological => c.len() - 1 - spot,
                Direction::Cohomological => spot,
            };
            let (rank, torsion) = complex_cohomology_degreewise(&slots, &maps, idx)?;
            Ok((d, PieceData { rank, torsion }))
        })
        .collect();
    let mut data = GradedAModuleData::new(window);
    for r in rows {
        let (d, p) = r?;
        data.insert(d, p);
    }
    Ok(data)
}

/// Graded pieces of `Ext^j_R(M, R)` on a window, computed degreewise from
/// the dual resolution without building a presentation.
pub fn ext_degreewise(m: &ModulePresentation, j: usize, window: (i64, i64)) -> Result<GradedAModuleData> {
    let res = free_resolution(m, default_maxlen(m.nvars()));
    ext_degreewise_from(&res, j, window)
}

pub fn ext_degreewise_from(res: &ChainComplex, j: usize, window: (i64, i64)) -> Result<GradedAModuleData> {
    if j >= res.len() {
        return Ok(GradedAModuleData::zero(window));
    }
    complex_homology_window(&res.dualize(), j, window)
}

/// Piece data of a presented module on a window.
pub fn module_pieces(m: &ModulePresentation, window: (i64, i64)) -> GradedAModuleData {
    let rows: Vec<(i64, PieceData)> = (window.0..=window.1)
        .into_par_iter()
        .map(|d| {
            let (rank, torsion) = base_invariants(&graded_piece(m, d));
            (d, PieceData { rank, torsion })
        })
        .collect();
    let mut data = GradedAModuleData::new(window);
    for (d, p) in rows {
        data.insert(d, p);
    }
    data
}

/// Cohomology at `spot` of `slots[0] -> slots[1] -> ...`, where slot `j` is
/// the cokernel of the presentation matrix `slots[j]` and `maps[j]` acts on
/// ambient coordinates from slot `j` to slot `j + 1`.
///
/// Returns the free rank and non-unit invariant factors.
pub fn complex_cohomology_degreewise(
    slots: &[AMatrix],
    maps: &[AMatrix],
    spot: usize,
) -> Result<(usize, Vec<BaseScalar>)> {
    let p_j = &slots[spot];
    let r = p_j.rows();
    let empty_next = AMatrix::zeros(0, 0);
    let p_next = slots.get(spot + 1).unwrap_or(&empty_next);
    let out = match maps.get(spot) {
        Some(m) => m.clone(),
        None => AMatrix::zeros(0, r),
    };
    let inc = match spot.checked_sub(1).and_then(|k| maps.get(k)) {
        Some(m) => m.clone(),
        None => AMatrix::zeros(r, 0),
    };
    if out.cols() != r || inc.rows() != r || out.rows() != p_next.rows() {
        return Err(Error::Structural(format!("slot {spot}: map shapes do not match")));
    }
    let boundary = p_j.hcat(&inc);
    let all_constant =
        p_j.is_constant() && p_next.is_constant() && out.is_constant() && inc.is_constant();

    if all_constant {
        let rank_next = rank_over_rationals(p_next);
        let to_check = out.mul(&boundary);
        if !to_check.is_zero() && rank_over_rationals(&p_next.hcat(&to_check)) != rank_next {
            return Err(Error::NotAComplex(format!("maps through slot {spot} do not compose to zero")));
        }
        let dim_z = r + rank_next - rank_over_rationals(&out.hcat(p_next));
        let dim_b = rank_over_rationals(&boundary);
        return Ok((dim_z - dim_b, Vec::new()));
    }

    // Z = {z : out z in span(p_next)}, a free submodule of A^r. A boundary
    // outside Z means the maps do not compose to zero.
    let coords: AMatrix = if out.rows() == 0 || out.is_zero() {
        boundary
    } else {
        let k = kernel_basis(&out.hcat(p_next));
        let z_gens = k.row_block(0..r);
        let zspan = ColumnSpan::new(&z_gens);
        let cols = (0..boundary.cols())
            .map(|c| {
                zspan
                    .coords(&boundary.column(c))
                    .ok_or_else(|| Error::NotAComplex(format!("maps through slot {spot} do not compose to zero")))
            })
            .collect::<Result<Vec<_>>>()?;
        AMatrix::from_columns(zspan.dim(), cols)
    };
    Ok(base_invariants(&coords))
}
