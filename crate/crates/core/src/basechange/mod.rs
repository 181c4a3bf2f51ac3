//! Specialization `t -> c`, the generic-freeness witness, and the check that
//! local cohomology commutes with specialization away from its zeros.
//!
//! For an x-homogeneous module the associated graded module for the
//! `(x)`-adic filtration is the module itself (`I^k M / I^{k+1} M = M_k` up
//! to generator shifts), so torsion of graded pieces is what has to be
//! inverted.

use rayon::prelude::*;

use crate::arith::{BaseScalar, Rational};
use crate::duality::{DualityReport, TorsionSide};
use crate::error::{Error, Result};
use crate::groebner::{free_resolution, ModulePresentation};
use crate::homology::{default_maxlen, module_pieces};
use crate::localcoh::{local_cohomology, local_cohomology_from};

/// Evaluates every coefficient at `t = c`. Modules over `QQ` are returned
/// unchanged.
pub fn specialize_module(m: &ModulePresentation, c: &Rational) -> ModulePresentation {
    if !m.ring().base.has_parameter() {
        return m.clone();
    }
    m.specialize(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WitnessSource {
    GradedPiece,
    CohomologyTorsion,
    DualTorsion,
}

impl WitnessSource {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessSource::GradedPiece => "graded-piece",
            WitnessSource::CohomologyTorsion => "cohomology-torsion",
            WitnessSource::DualTorsion => "dual-torsion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub source: WitnessSource,
    /// Cohomological index, when the factor comes from `H^i` or `Ext`.
    pub i: Option<usize>,
    pub d: i64,
    pub factor: BaseScalar,
}

/// A candidate `g` whose inversion frees every inspected piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Monic least common multiple of the provenance factors.
    pub g: BaseScalar,
    pub provenance: Vec<Provenance>,
}

impl Witness {
    pub fn one() -> Self {
        Witness {
            g: BaseScalar::one(),
            provenance: Vec::new(),
        }
    }

    pub fn record(&mut self, source: WitnessSource, i: Option<usize>, d: i64, factor: &BaseScalar) {
        self.g = self.g.lcm(factor);
        self.provenance.push(Provenance {
            source,
            i,
            d,
            factor: factor.clone(),
        });
    }

    /// Adds the Ext-side torsion met by a duality check.
    pub fn absorb_dual_torsion(&mut self, report: &DualityReport) {
        for t in &report.torsion {
            if t.side == TorsionSide::Ext {
                self.record(WitnessSource::DualTorsion, Some(t.i), t.d, &t.factor);
            }
        }
    }

    /// `g(c) = 0`.
    pub fn vanishes_at(&self, c: &Rational) -> bool {
        num_traits::Zero::is_zero(&self.g.eval(c))
    }

    /// Whether `f` divides some power of `g`, i.e. every root of `f` is a
    /// root of `g`.
    pub fn absorbs(&self, f: &BaseScalar) -> bool {
        if f.is_zero() {
            return false;
        }
        let mut rest = f.monic();
        loop {
            let common = rest.gcd(&self.g);
            if common.is_one() {
                return rest.is_one();
            }
            rest = rest.exact_div(&common).expect("gcd divides");
        }
    }
}

/// Least common multiple of the torsion of the graded pieces of `m` on the
/// window and of the torsion of `H^i_I(m)` for `i` in `i_range`.
pub fn find_witness(
    m: &ModulePresentation,
    window: (i64, i64),
    i_range: std::ops::RangeInclusive<usize>,
) -> Result<Witness> {
    let mut w = Witness::one();
    if !m.ring().base.has_parameter() {
        return Ok(w);
    }
    for (d, p) in module_pieces(m, window).iter() {
        for f in &p.torsion {
            w.record(WitnessSource::GradedPiece, None, d, f);
        }
    }
    let res = free_resolution(m, default_maxlen(m.nvars()));
    let per_i: Vec<Result<_>> = i_range
        .into_par_iter()
        .map(|i| local_cohomology_from(&res, i, window).map(|h| (i, h)))
        .collect();
    for r in per_i {
        let (i, h) = r?;
        for (d, p) in h.iter() {
            for f in &p.torsion {
                w.record(WitnessSource::CohomologyTorsion, Some(i), d, f);
            }
        }
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeEntry {
    pub d: i64,
    /// Free rank over `QQ[t]` of `H^i_I(M)_d`.
    pub generic_rank: usize,
    /// Dimension over `QQ` of `H^i_I(M_c)_d`.
    pub special_dim: usize,
}

impl BaseChangeEntry {
    pub fn matches(&self) -> bool {
        self.generic_rank == self.special_dim
    }
}

#[derive(Clone, Debug)]
pub struct BaseChangeReport {
    pub i: usize,
    pub c: Rational,
    pub window: (i64, i64),
    pub entries: Vec<BaseChangeEntry>,
    pub g: BaseScalar,
    pub g_vanishes: bool,
}

impl BaseChangeReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &BaseChangeEntry> {
        self.entries.iter().filter(|e| !e.matches())
    }

    /// A mismatch where `g(c) != 0`, which the generic freeness theorem
    /// rules out.
    pub fn violates_theorem(&self) -> bool {
        !self.g_vanishes && self.mismatches().next().is_some()
    }
}

/// Compares generic ranks of `H^i_I(M)` with dimensions after `t -> c`.
/// Without a supplied witness one is computed on the same window for all
/// cohomological indices.
pub fn base_change_check(
    m: &ModulePresentation,
    i: usize,
    c: &Rational,
    window: (i64, i64),
    witness: Option<&Witness>,
) -> Result<BaseChangeReport> {
    if !m.ring().base.has_parameter() {
        return Err(Error::BaseRing("base change needs coefficients in QQ[t]".into()));
    }
    let owned;
    let w = match witness {
        Some(w) => w,
        None => {
            owned = find_witness(m, window, 0..=m.nvars())?;
            &owned
        }
    };
    let generic = local_cohomology(m, i, window)?;
    let special = local_cohomology(&specialize_module(m, c), i, window)?;
    let entries = (window.0..=window.1)
        .map(|d| BaseChangeEntry {
            d,
            generic_rank: generic.rank(d).unwrap_or(0),
            special_dim: special.rank(d).unwrap_or(0),
        })
        .collect();
    Ok(BaseChangeReport {
        i,
        c: c.clone(),
        window,
        entries,
        g: w.g.clone(),
        g_vanishes: w.vanishes_at(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Monomial, Polynomial, Ring};

    fn tx_module() -> ModulePresentation {
        let tx = Polynomial::term(Monomial(vec![1]), BaseScalar::t());
        ModulePresentation::from_rows(Ring::rational_poly(1), vec![vec![tx]], None).unwrap()
    }

    #[test]
    fn witness_of_tx() {
        let w = find_witness(&tx_module(), (-4, 2), 0..=1).unwrap();
        assert_eq!(w.g, BaseScalar::t());
        assert!(w.provenance.iter().any(|p| p.source == WitnessSource::GradedPiece));
        assert!(w.provenance.iter().any(|p| p.source == WitnessSource::CohomologyTorsion));
        let free = ModulePresentation::free(Ring::rational_poly(2), vec![0]);
        assert!(find_witness(&free, (-4, 2), 0..=2).unwrap().g.is_one());
    }

    #[test]
    fn witness_of_shifted_parameter() {
        let rel = Polynomial::term(Monomial(vec![1, 0]), BaseScalar::from_ints(&[-1, 1]));
        let m = ModulePresentation::from_rows(Ring::rational_poly(2), vec![vec![rel]], None).unwrap();
        let w = find_witness(&m, (-4, 2), 0..=2).unwrap();
        assert_eq!(w.g, BaseScalar::from_ints(&[-1, 1]));
    }

    #[test]
    fn base_change_examples() {
        let m = tx_module();
        let r = base_change_check(&m, 0, &rat(2), (-3, 2), None).unwrap();
        assert!(r.mismatches().next().is_none());
        assert!(!r.g_vanishes);
        let r = base_change_check(&m, 0, &rat(0), (-3, 2), None).unwrap();
        assert_eq!(r.mismatches().map(|e| e.d).collect::<Vec<_>>(), vec![0]);
        assert!(r.g_vanishes && !r.violates_theorem());
        let r = base_change_check(&m, 1, &rat(0), (-5, 2), None).unwrap();
        assert_eq!(r.mismatches().map(|e| e.d).collect::<Vec<_>>(), vec![-5, -4, -3, -2, -1]);
    }

    #[test]
    fn absorbs_powers() {
        let mut w = Witness::one();
        w.record(WitnessSource::GradedPiece, None, 0, &BaseScalar::from_ints(&[0, -1, 1]));
        assert!(w.absorbs(&BaseScalar::from_ints(&[0, 0, 1])));
        assert!(w.absorbs(&BaseScalar::from_ints(&[1, -2, 1])));
        assert!(!w.absorbs(&BaseScalar::from_ints(&[1, 1])));
    }
}
