//! The relative dual `Hom_A(-, A)` on graded pieces, the comparison of
//! local cohomology with duals of Ext, and exactness of dual sequences.

mod exactness;

pub use exactness::{dual_exactness_check, ses_from_submodule, DualExactReport, ExactnessFailure, ShortExactSequence};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::BaseScalar;
use crate::error::Result;
use crate::groebner::{free_resolution, ModulePresentation};
use crate::homology::{default_maxlen, ext_degreewise_from, module_pieces, GradedAModuleData, PieceData};
use crate::localcoh::local_cohomology_from;

/// Degreewise `Hom_A(-, A)`: free ranks of the reflected pieces, with the
/// torsion that the dual discards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeDual {
    pub data: GradedAModuleData,
    /// Torsion of `N_{-d}`, keyed by the dual degree `d`.
    pub killed: BTreeMap<i64, Vec<BaseScalar>>,
}

/// Reflects known piece data: the dual piece at `d` comes from `-d`. The
/// window of the result is the reflection of the input window.
pub fn dual_of_data(n: &GradedAModuleData) -> RelativeDual {
    let (lo, hi) = n.window();
    let mut data = GradedAModuleData::new((-hi, -lo));
    let mut killed = BTreeMap::new();
    for (d, p) in n.iter() {
        data.insert(
            -d,
            PieceData {
                rank: p.rank,
                torsion: Vec::new(),
            },
        );
        if !p.torsion.is_empty() {
            killed.insert(-d, p.torsion.clone());
        }
    }
    RelativeDual { data, killed }
}

/// Pieces of the relative dual of `n` in the degrees of `window`.
pub fn relative_dual(n: &ModulePresentation, window: (i64, i64)) -> RelativeDual {
    dual_of_data(&module_pieces(n, (-window.1, -window.0)))
}

/// One `(i, d)` where the ranks of `H^i_d` and of the dual of
/// `Ext^{n-i}` in degree `d + n` differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMismatch {
    pub i: usize,
    pub d: i64,
    pub local_rank: usize,
    pub dual_rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionSide {
    LocalCohomology,
    Ext,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionRecord {
    pub side: TorsionSide,
    pub i: usize,
    /// Degree of the local cohomology piece being compared.
    pub d: i64,
    pub factor: BaseScalar,
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub nvars: usize,
    pub window: (i64, i64),
    /// `H^i_I(M)` for `i = 0..=n`.
    pub local: Vec<GradedAModuleData>,
    /// Dual of `Ext^{n-i}` shifted so that entry `d` is compared with `H^i_d`.
    pub dual_ext: Vec<RelativeDual>,
    pub mismatches: Vec<RankMismatch>,
    pub torsion: Vec<TorsionRecord>,
    /// Least common multiple of every torsion factor met on either side.
    pub obstruction: BaseScalar,
}

impl DualityReport {
    pub fn holds_generically(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `H^i_I(M)_d` with `(Ext^{n-i}_R(M, R)^∨)_{d+n}` for all `i` and
/// all `d` in the window. The shift by `n` is the degree of the pairing
/// between `E` and `R`.
pub fn duality_check(m: &ModulePresentation, window: (i64, i64)) -> Result<DualityReport> {
    let n = m.nvars();
    let res = free_resolution(m, default_maxlen(n));
    let shift = n as i64;
    let per_i: Vec<Result<(GradedAModuleData, RelativeDual)>> = (0..=n)
        .into_par_iter()
        .map(|i| {
            let local = local_cohomology_from(&res, i, window)?;
            let ext_window = (-(window.1 + shift), -(window.0 + shift));
            let ext = ext_degreewise_from(&res, n - i, ext_window)?;
            let dual = dual_of_data(&ext);
            // Re-key from dual degree d + n to local degree d.
            let mut data = GradedAModuleData::new(window);
            let mut killed = BTreeMap::new();
            for (e, p) in dual.data.iter() {
                data.insert(e - shift, p.clone());
            }
            for (e, t) in dual.killed {
                killed.insert(e - shift, t);
            }
            Ok((local, RelativeDual { data, killed }))
        })
        .collect();
    let mut local = Vec::new();
    let mut dual_ext = Vec::new();
    for r in per_i {
        let (l, d) = r?;
        local.push(l);
        dual_ext.push(d);
    }

    let mut mismatches = Vec::new();
    let mut torsion = Vec::new();
    let mut obstruction = BaseScalar::one();
    for i in 0..=n {
        for d in window.0..=window.1 {
            let lp = local[i].get(d).cloned().unwrap_or_default();
            let dr = dual_ext[i].data.rank(d).unwrap_or(0);
            if lp.rank != dr {
                mismatches.push(RankMismatch {
                    i,
                    d,
                    local_rank: lp.rank,
                    dual_rank: dr,
                });
            }
            for f in &lp.torsion {
                obstruction = obstruction.lcm(f);
                torsion.push(TorsionRecord {
                    side: TorsionSide::LocalCohomology,
                    i,
                    d,
                    factor: f.clone(),
                });
            }
            for f in dual_ext[i].killed.get(&d).into_iter().flatten() {
                obstruction = obstruction.lcm(f);
                torsion.push(TorsionRecord {
                    side: TorsionSide::Ext,
                    i,
                    d,
                    factor: f.clone(),
                });
            }
        }
    }
    Ok(DualityReport {
        nvars: n,
        window,
        local,
        dual_ext,
        mismatches,
        torsion,
        obstruction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Monomial, Polynomial, Ring};

    #[test]
    fn dual_of_free_plane() {
        let r = ModulePresentation::free(Ring::rational(2), vec![0]);
        let dual = relative_dual(&r, (-4, 2));
        for d in -4..=2 {
            let expect = if d <= 0 { (1 - d) as usize } else { 0 };
            assert_eq!(dual.data.rank(d), Some(expect));
        }
    }

    #[test]
    fn torsion_piece_is_killed() {
        let t = Polynomial::constant(1, BaseScalar::t());
        let x = Polynomial::var(1, 0);
        let n = ModulePresentation::from_rows(Ring::rational_poly(1), vec![vec![t, x]], None).unwrap();
        let dual = relative_dual(&n, (-1, 1));
        assert_eq!(dual.data.rank(0), Some(0));
        assert_eq!(dual.killed.get(&0), Some(&vec![BaseScalar::t()]));
    }

    #[test]
    fn duality_examples() {
        let r = ModulePresentation::free(Ring::rational(2), vec![0]);
        let rep = duality_check(&r, (-6, 2)).unwrap();
        assert!(rep.holds_generically());
        assert!(rep.torsion.is_empty());

        let k = ModulePresentation::from_rows(
            Ring::rational(2),
            vec![vec![Polynomial::var(2, 0), Polynomial::var(2, 1)]],
            None,
        )
        .unwrap();
        let rep = duality_check(&k, (-6, 2)).unwrap();
        assert!(rep.holds_generically());
        assert_eq!(rep.local[0].rank(0), Some(1));

        let tx = Polynomial::term(Monomial(vec![1]), BaseScalar::t());
        let m = ModulePresentation::from_rows(Ring::rational_poly(1), vec![vec![tx]], None).unwrap();
        let rep = duality_check(&m, (-4, 2)).unwrap();
        assert!(rep.holds_generically());
        assert_eq!(rep.obstruction, BaseScalar::t());
    }
}
