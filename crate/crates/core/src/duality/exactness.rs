use rayon::prelude::*;

use crate::arith::{base_invariants, kernel_basis, AMatrix, ColumnSpan, TermOrder};
use crate::error::{Error, Result};
use crate::groebner::{kernel, minimal_generators, FreeElement, ModulePresentation};
use crate::homology::{ambient_basis, complex_cohomology_degreewise, graded_piece, map_piece, PieceData};

/// `0 -> M1 --f--> M2 --g--> M3 -> 0`, with `f` and `g` given by the images
/// of generators in the next ambient.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub m1: ModulePresentation,
    pub m2: ModulePresentation,
    pub m3: ModulePresentation,
    pub f: Vec<FreeElement>,
    pub g: Vec<FreeElement>,
}

fn check_map(name: &str, images: &[FreeElement], src: &ModulePresentation, tgt: &ModulePresentation) -> Result<()> {
    if images.len() != src.rank() {
        return Err(Error::Structural(format!(
            "{name} needs {} images, got {}",
            src.rank(),
            images.len()
        )));
    }
    for (k, img) in images.iter().enumerate() {
        if img.twists() != tgt.twists() {
            return Err(Error::Structural(format!("{name}: image {k} is not in the target ambient")));
        }
        if !img.is_zero() && img.degree() != Some(src.twists()[k]) {
            return Err(Error::NotHomogeneous(format!("{name}: image {k} has the wrong degree")));
        }
    }
    Ok(())
}

impl ShortExactSequence {
    pub fn new(
        m1: ModulePresentation,
        m2: ModulePresentation,
        m3: ModulePresentation,
        f: Vec<FreeElement>,
        g: Vec<FreeElement>,
    ) -> Result<Self> {
        check_map("first map", &f, &m1, &m2)?;
        check_map("second map", &g, &m2, &m3)?;
        Ok(ShortExactSequence { m1, m2, m3, f, g })
    }

    /// Degree-`d` pieces: presentations `[P1, P2, P3]` and maps `[F, G]`.
    fn pieces(&self, d: i64) -> (Vec<AMatrix>, Vec<AMatrix>) {
        let n = self.m2.nvars();
        let b1 = ambient_basis(n, self.m1.twists(), d);
        let b2 = ambient_basis(n, self.m2.twists(), d);
        let b3 = ambient_basis(n, self.m3.twists(), d);
        (
            vec![graded_piece(&self.m1, d), graded_piece(&self.m2, d), graded_piece(&self.m3, d)],
            vec![map_piece(&self.f, &b1, &b2), map_piece(&self.g, &b2, &b3)],
        )
    }
}

/// `0 -> <vs> -> M2 -> M2/<vs> -> 0` for homogeneous elements `vs` of the
/// ambient of `m2`.
pub fn ses_from_submodule(m2: &ModulePresentation, vs: &[FreeElement]) -> Result<ShortExactSequence> {
    let n = m2.nvars();
    let order = TermOrder::grevlex();
    let vs: Vec<FreeElement> = vs.iter().filter(|v| !v.is_zero()).cloned().collect();
    let tw1 = vs
        .iter()
        .map(|v| v.degree().ok_or_else(|| Error::NotHomogeneous("submodule generator".into())))
        .collect::<Result<Vec<i64>>>()?;
    let rels: Vec<FreeElement> = m2.relations().iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut cols = vs.clone();
    cols.extend(rels.iter().cloned());
    let mut src_tw = tw1.clone();
    src_tw.extend(rels.iter().map(|r| r.degree().unwrap()));
    let s = vs.len();
    let projected: Vec<FreeElement> = kernel(&cols, n, &src_tw, &order)
        .into_iter()
        .map(|k| FreeElement::new(k.comps()[..s].to_vec(), tw1.clone()))
        .collect();
    let m1 = ModulePresentation::new(m2.ring().clone(), tw1, minimal_generators(&projected, &order))?;
    let mut rels3 = m2.relations().to_vec();
    rels3.extend(vs.iter().cloned());
    let m3 = ModulePresentation::new(m2.ring().clone(), m2.twists().to_vec(), rels3)?;
    let g = (0..m2.rank()).map(|k| FreeElement::basis(n, m2.twists(), k)).collect();
    ShortExactSequence::new(m1, m2.clone(), m3, vs, g)
}

/// Where the dual sequence `0 -> M3^∨ -> M2^∨ -> M1^∨ -> 0` fails to be
/// exact. `spot` 0 is `M3^∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessFailure {
    pub d: i64,
    pub spot: usize,
    pub cohomology: PieceData,
}

#[derive(Clone, Debug)]
pub struct DualExactReport {
    pub window: (i64, i64),
    /// Every piece of `M3` in the window is free over `A`.
    pub hypothesis_holds: bool,
    /// Degrees where a piece of `M3` has torsion.
    pub torsion_degrees: Vec<i64>,
    pub exact: bool,
    pub failures: Vec<ExactnessFailure>,
}

/// Basis of `Hom_A(coker P, A) = ker(P^T)` as columns.
fn dual_basis(p: &AMatrix) -> AMatrix {
    if p.cols() == 0 {
        AMatrix::identity(p.rows())
    } else {
        kernel_basis(&p.transpose())
    }
}

/// Matrix of `phi -> phi ∘ map` from `Hom(tgt, A)` to `Hom(src, A)`, both
/// in the coordinates of [`ColumnSpan::basis`].
fn dual_map(map: &AMatrix, src_dual: &ColumnSpan, tgt_dual: &ColumnSpan) -> AMatrix {
    let pulled = map.transpose().mul(&tgt_dual.basis());
    let cols = (0..pulled.cols())
        .map(|c| src_dual.coords(&pulled.column(c)).expect("pullback of a functional"))
        .collect();
    AMatrix::from_columns(src_dual.dim(), cols)
}

/// Verifies that the sequence is exact in every degree of the window, then
/// dualizes it degreewise and records where exactness of the dual fails.
pub fn dual_exactness_check(s: &ShortExactSequence, window: (i64, i64)) -> Result<DualExactReport> {
    let rows: Vec<Result<(i64, bool, Vec<ExactnessFailure>)>> = (window.0..=window.1)
        .into_par_iter()
        .map(|d| {
            let (slots, maps) = s.pieces(d);
            for spot in 0..3 {
                let (rank, torsion) = complex_cohomology_degreewise(&slots, &maps, spot).map_err(|e| {
                    Error::NotShortExact(format!("degree {d}: {e}"))
                })?;
                if rank != 0 || !torsion.is_empty() {
                    return Err(Error::NotShortExact(format!("degree {d}: nonzero cohomology at spot {spot}")));
                }
            }
            let free3 = base_invariants(&slots[2]).1.is_empty();
            let duals: Vec<ColumnSpan> = slots.iter().map(|p| ColumnSpan::new(&dual_basis(p))).collect();
            let dual_slots = vec![
                AMatrix::zeros(duals[2].dim(), 0),
                AMatrix::zeros(duals[1].dim(), 0),
                AMatrix::zeros(duals[0].dim(), 0),
            ];
            let dual_maps = vec![
                dual_map(&maps[1], &duals[1], &duals[2]),
                dual_map(&maps[0], &duals[0], &duals[1]),
            ];
            let mut failures = Vec::new();
            for spot in 0..3 {
                let (rank, torsion) = complex_cohomology_degreewise(&dual_slots, &dual_maps, spot)?;
                let cohomology = PieceData { rank, torsion };
                if !cohomology.is_zero() {
                    failures.push(ExactnessFailure { d, spot, cohomology });
                }
            }
            Ok((d, free3, failures))
        })
        .collect();
    let mut torsion_degrees = Vec::new();
    let mut failures = Vec::new();
    for r in rows {
        let (d, free3, f) = r?;
        if !free3 {
            torsion_degrees.push(d);
        }
        failures.extend(f);
    }
    Ok(DualExactReport {
        window,
        hypothesis_holds: torsion_degrees.is_empty(),
        torsion_degrees,
        exact: failures.is_empty(),
        failures,
    })
}
