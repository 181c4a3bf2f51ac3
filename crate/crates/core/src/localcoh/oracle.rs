//! `colim_s Ext^i_R(R/I^s, M)`, computed degreewise for each `s`.
//!
//! Over `QQ` the pieces of `M` are replaced by their standard-monomial
//! bases and the linear algebra is sparse; over `QQ[t]` pieces stay
//! presented and go through the Smith form.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{monomials_of_degree, sparse_rank, AMatrix, BaseScalar, Monomial, Polynomial, Rational, Ring, TermOrder};
use crate::error::{Error, Result};
use crate::groebner::{free_resolution, ChainComplex, FreeElement, ModulePresentation, Reducer};
use crate::homology::{
    ambient_basis, complex_cohomology_degreewise, default_maxlen, graded_piece, AmbientBasis,
    GradedAModuleData, PieceData,
};

/// Outcome of the colimit oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtLimit {
    /// Data at the largest power computed.
    pub data: GradedAModuleData,
    /// The last `streak` powers agree on the whole window.
    pub stable: bool,
    /// Smallest power from which every later value agrees with the last.
    pub stable_from: usize,
    pub t_max: usize,
}

fn power_resolution(n: usize, s: usize) -> Arc<ChainComplex> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<ChainComplex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(n, s)) {
        return c.clone();
    }
    let gens: Vec<Polynomial> = monomials_of_degree(n, s as i64)
        .into_iter()
        .map(|m| Polynomial::term(m, BaseScalar::one()))
        .collect();
    let quotient = ModulePresentation::from_rows(Ring::rational(n), vec![gens], None).expect("monomial ideal");
    let res = Arc::new(free_resolution(&quotient, default_maxlen(n)));
    cache.lock().unwrap().insert((n, s), res.clone());
    res
}

/// A graded piece `M_e` with its unit pivots eliminated: the surviving
/// ambient generators `kept`, every ambient generator rewritten in terms of
/// them, and the remaining relations.
struct PrunedPiece {
    basis: AmbientBasis,
    kept: Vec<usize>,
    reduce: Vec<Vec<(usize, BaseScalar)>>,
    presentation: AMatrix,
}

impl PrunedPiece {
    fn new(m: &ModulePresentation, e: i64) -> Self {
        let basis = ambient_basis(m.nvars(), m.twists(), e);
        let p = graded_piece(m, e);
        let r = p.rows();
        let mut cols: Vec<Vec<BaseScalar>> = (0..p.cols()).map(|c| p.column(c)).collect();
        let mut row_alive = vec![true; r];
        let mut col_alive = vec![true; cols.len()];
        let mut eliminated: Vec<(usize, Vec<(usize, BaseScalar)>)> = Vec::new();
        loop {
            let pivot = (0..cols.len())
                .filter(|&c| col_alive[c])
                .filter_map(|c| {
                    let i = (0..r).find(|&i| row_alive[i] && cols[c][i].is_unit())?;
                    let weight = cols[c].iter().filter(|x| !x.is_zero()).count();
                    Some((weight, c, i))
                })
                .min();
            let Some((_, c, i)) = pivot else { break };
            let u = cols[c][i].clone();
            let expr = (0..r)
                .filter(|&j| j != i && row_alive[j] && !cols[c][j].is_zero())
                .map(|j| (j, -&cols[c][j].exact_div(&u).expect("unit pivot")))
                .collect();
            for c2 in 0..cols.len() {
                if c2 == c || !col_alive[c2] || cols[c2][i].is_zero() {
                    continue;
                }
                let f = cols[c2][i].exact_div(&u).expect("unit pivot");
                for j in 0..r {
                    if row_alive[j] && !cols[c][j].is_zero() {
                        let delta = &f * &cols[c][j];
                        cols[c2][j] -= &delta;
                    }
                }
            }
            row_alive[i] = false;
            col_alive[c] = false;
            eliminated.push((i, expr));
        }
        let kept: Vec<usize> = (0..r).filter(|&i| row_alive[i]).collect();
        let mut reduce: Vec<Vec<(usize, BaseScalar)>> = vec![Vec::new(); r];
        for (pos, &i) in kept.iter().enumerate() {
            reduce[i] = vec![(pos, BaseScalar::one())];
        }
        for (i, expr) in eliminated.into_iter().rev() {
            let mut acc: BTreeMap<usize, BaseScalar> = BTreeMap::new();
            for (j, coef) in expr {
                for (pos, x) in &reduce[j] {
                    *acc.entry(*pos).or_insert_with(BaseScalar::zero) += &(&coef * x);
                }
            }
            reduce[i] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
        let rels: Vec<Vec<BaseScalar>> = (0..cols.len())
            .filter(|&c| col_alive[c])
            .map(|c| kept.iter().map(|&i| cols[c][i].clone()).collect::<Vec<_>>())
            .filter(|col| col.iter().any(|x| !x.is_zero()))
            .collect();
        PrunedPiece {
            basis,
            reduce,
            presentation: AMatrix::from_columns(kept.len(), rels),
            kept,
        }
    }

    fn size(&self) -> usize {
        self.presentation.rows()
    }
}

/// Pruned pieces of one module, shared across degrees and slots.
struct PresentedPieces<'a> {
    m: &'a ModulePresentation,
    cache: Mutex<HashMap<i64, Arc<PrunedPiece>>>,
}

impl PresentedPieces<'_> {
    fn piece(&self, e: i64) -> Arc<PrunedPiece> {
        if let Some(p) = self.cache.lock().unwrap().get(&e) {
            return p.clone();
        }
        let p = Arc::new(PrunedPiece::new(self.m, e));
        self.cache.lock().unwrap().insert(e, p.clone());
        p
    }
}

/// `Hom(G, M)` in degree `d` for a free `G` with generator degrees `twists`:
/// one block of `M_{d + b}` per generator degree `b`.
struct HomSlot {
    blocks: Vec<Arc<PrunedPiece>>,
    offsets: Vec<usize>,
    presentation: AMatrix,
}

impl HomSlot {
    fn new(pieces: &PresentedPieces, twists: &[i64], d: i64) -> Self {
        let blocks: Vec<Arc<PrunedPiece>> = twists.iter().map(|&b| pieces.piece(d + b)).collect();
        let mut offsets = Vec::new();
        let (mut rows, mut cols) = (0, 0);
        for p in &blocks {
            offsets.push(rows);
            rows += p.size();
            cols += p.presentation.cols();
        }
        let mut presentation = AMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in &blocks {
            let p = &p.presentation;
            for i in 0..p.rows() {
                for j in 0..p.cols() {
                    presentation.set(r0 + i, c0 + j, p.get(i, j).clone());
                }
            }
            r0 += p.rows();
            c0 += p.cols();
        }
        HomSlot {
            blocks,
            offsets,
            presentation,
        }
    }

    fn size(&self) -> usize {
        self.presentation.rows()
    }
}

/// `Hom(G_j, M) -> Hom(G_{j+1}, M)`, precomposition with `images` (the map
/// `G_{j+1} -> G_j`).
fn hom_map(images: &[FreeElement], src: &HomSlot, tgt: &HomSlot) -> AMatrix {
    let mut out = AMatrix::zeros(tgt.size(), src.size());
    for (c, block) in src.blocks.iter().enumerate() {
        for (pos, &i) in block.kept.iter().enumerate() {
            let (k, m) = &block.basis.elems[i];
            let col = src.offsets[c] + pos;
            for (c2, img) in images.iter().enumerate() {
                let tb = &tgt.blocks[c2];
                for (mono, coef) in img.comp(c).terms() {
                    let row = tb.basis.position(*k, &m.mul(mono)).expect("degree bookkeeping");
                    for (p2, x) in &tb.reduce[row] {
                        *out.entry_mut(tgt.offsets[c2] + p2, col) += &(coef * x);
                    }
                }
            }
        }
    }
    out
}

fn presented_piece(pieces: &PresentedPieces, g: &ChainComplex, i: usize, d: i64) -> Result<PieceData> {
    let mid = HomSlot::new(pieces, g.twists(i), d);
    let mut slots = Vec::new();
    let mut maps = Vec::new();
    if i >= 1 {
        let below = HomSlot::new(pieces, g.twists(i - 1), d);
        maps.push(hom_map(g.map(i - 1), &below, &mid));
        slots.push(below.presentation);
    }
    let spot = slots.len();
    if i + 1 < g.len() {
        let above = HomSlot::new(pieces, g.twists(i + 1), d);
        maps.push(hom_map(g.map(i), &mid, &above));
        slots.push(mid.presentation);
        slots.push(above.presentation);
    } else {
        slots.push(mid.presentation);
    }
    let (rank, torsion) = complex_cohomology_degreewise(&slots, &maps, spot)?;
    Ok(PieceData { rank, torsion })
}

/// Standard monomials of one degree of a module over `QQ`.
struct StandardBasis {
    index: HashMap<(usize, Monomial), usize>,
    elems: Vec<(usize, Monomial)>,
}

struct StandardPieces<'a> {
    m: &'a ModulePresentation,
    reducer: Reducer,
}

impl StandardPieces<'_> {
    fn basis(&self, e: i64) -> StandardBasis {
        let elems: Vec<(usize, Monomial)> = ambient_basis(self.m.nvars(), self.m.twists(), e)
            .elems
            .into_iter()
            .filter(|(k, mono)| self.reducer.is_standard(*k, mono))
            .collect();
        let index = elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        StandardBasis { index, elems }
    }
}

/// Free slot `Hom(G_j, M)_d` with standard-monomial blocks.
struct StandardSlot {
    blocks: Vec<Arc<StandardBasis>>,
    offsets: Vec<usize>,
    size: usize,
}

impl StandardSlot {
    fn new(pieces: &StandardPieces, cache: &mut HashMap<i64, Arc<StandardBasis>>, twists: &[i64], d: i64) -> Self {
        let mut blocks = Vec::new();
        let mut offsets = Vec::new();
        let mut size = 0;
        for &b in twists {
            let basis = cache.entry(d + b).or_insert_with(|| Arc::new(pieces.basis(d + b))).clone();
            offsets.push(size);
            size += basis.elems.len();
            blocks.push(basis);
        }
        StandardSlot { blocks, offsets, size }
    }
}

type SparseVec = Vec<(usize, Rational)>;

/// Columns of `Hom(G_j, M) -> Hom(G_{j+1}, M)` on standard bases.
fn standard_hom_map(
    pieces: &StandardPieces,
    nf_cache: &mut HashMap<(usize, Monomial), Vec<(usize, Monomial, Rational)>>,
    images: &[FreeElement],
    src: &StandardSlot,
    tgt: &StandardSlot,
) -> Vec<SparseVec> {
    let mut cols = Vec::with_capacity(src.size);
    for (c, block) in src.blocks.iter().enumerate() {
        for (k, m) in &block.elems {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (c2, img) in images.iter().enumerate() {
                for (mono, coef) in img.comp(c).terms() {
                    let coef = coef.as_constant().expect("resolution of R/I^s is over QQ");
                    let target = m.mul(mono);
                    let nf = nf_cache
                        .entry((*k, target.clone()))
                        .or_insert_with(|| pieces.reducer.reduce_monomial(*k, &target));
                    for (k2, m2, c3) in nf.iter() {
                        let row = tgt.offsets[c2] + tgt.blocks[c2].index[&(*k2, m2.clone())];
                        *acc.entry(row).or_insert_with(Rational::zero) += &coef * c3;
                    }
                }
            }
            cols.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
    }
    cols
}

fn standard_piece(pieces: &StandardPieces, g: &ChainComplex, i: usize, d: i64) -> PieceData {
    let mut cache = HashMap::new();
    let mut nf_cache = HashMap::new();
    let mid = StandardSlot::new(pieces, &mut cache, g.twists(i), d);
    let dim_b = if i >= 1 {
        let below = StandardSlot::new(pieces, &mut cache, g.twists(i - 1), d);
        let cols = standard_hom_map(pieces, &mut nf_cache, g.map(i - 1), &below, &mid);
        sparse_rank(cols, mid.size)
    } else {
        0
    };
    let rank_out = if i + 1 < g.len() {
        let above = StandardSlot::new(pieces, &mut cache, g.twists(i + 1), d);
        let cols = standard_hom_map(pieces, &mut nf_cache, g.map(i), &mid, &above);
        sparse_rank(cols, above.size)
    } else {
        0
    };
    PieceData {
        rank: mid.size - rank_out - dim_b,
        torsion: Vec::new(),
    }
}

/// `Ext^i_R(R/I^s, M)` on a window.
pub fn ext_of_power(m: &ModulePresentation, i: usize, s: usize, window: (i64, i64)) -> Result<GradedAModuleData> {
    let g = power_resolution(m.nvars(), s);
    let over_q = !m.ring().base.has_parameter();
    let pieces = over_q.then(|| StandardPieces {
        m,
        reducer: Reducer::new(m.groebner_basis(), m.nvars(), m.twists(), &TermOrder::grevlex()),
    });
    let presented = PresentedPieces {
        m,
        cache: Mutex::new(HashMap::new()),
    };
    let rows: Vec<Result<(i64, PieceData)>> = (window.0..=window.1)
        .into_par_iter()
        .map(|d| {
            if i >= g.len() {
                return Ok((d, PieceData::default()));
            }
            let piece = match &pieces {
                Some(p) => standard_piece(p, &g, i, d),
                None => presented_piece(&presented, &g, i, d)?,
            };
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

/// `colim_s Ext^i(R/I^s, M)` on a window, for `s = 1..=t_max`. The result
/// is stable when the last `streak` values of `s` agree.
pub fn local_cohomology_extlim(
    m: &ModulePresentation,
    i: usize,
    window: (i64, i64),
    t_max: usize,
    streak: usize,
) -> Result<ExtLimit> {
    if t_max < 2 {
        return Err(Error::OutOfRange("t_max must be at least 2".into()));
    }
    if i > m.nvars() {
        return Err(Error::OutOfRange(format!("local cohomology index {i} exceeds {}", m.nvars())));
    }
    let history = (1..=t_max)
        .map(|s| ext_of_power(m, i, s, window))
        .collect::<Result<Vec<_>>>()?;
    let last = history.last().unwrap().clone();
    let agreeing = history.iter().rev().take_while(|h| **h == last).count();
    Ok(ExtLimit {
        data: last,
        stable: agreeing >= streak.max(1),
        stable_from: t_max + 1 - agreeing,
        t_max,
    })
}
