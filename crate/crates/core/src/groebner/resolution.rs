//! Complexes of graded free modules and free resolutions.

use super::element::{FreeElement, ModulePresentation};
use super::{graph_basis, minimal_generators, syzygies};
use crate::arith::{Polynomial, Ring, TermOrder};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `maps[k]` goes from slot `k + 1` to slot `k`.
    Homological,
    /// `maps[k]` goes from slot `k` to slot `k + 1`.
    Cohomological,
}

/// A bounded complex of graded free modules. Slot `k` has generator degrees
/// `twists[k]`; a map is stored as the images of the source generators.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    nvars: usize,
    twists: Vec<Vec<i64>>,
    maps: Vec<Vec<FreeElement>>,
    direction: Direction,
}

impl ChainComplex {
    pub fn new(
        nvars: usize,
        twists: Vec<Vec<i64>>,
        maps: Vec<Vec<FreeElement>>,
        direction: Direction,
    ) -> Result<Self> {
        if twists.is_empty() || maps.len() + 1 != twists.len() {
            return Err(Error::Structural(format!(
                "{} slots need {} maps, got {}",
                twists.len(),
                twists.len().saturating_sub(1),
                maps.len()
            )));
        }
        let c = ChainComplex {
            nvars,
            twists,
            maps,
            direction,
        };
        for k in 0..c.maps.len() {
            let (src, tgt) = c.endpoints(k);
            if c.maps[k].len() != c.twists[src].len() {
                return Err(Error::Structural(format!("map {k} has the wrong number of columns")));
            }
            for (col, img) in c.maps[k].iter().enumerate() {
                if img.twists() != c.twists[tgt].as_slice() {
                    return Err(Error::Structural(format!("map {k}, column {col}: wrong target")));
                }
                if !img.is_zero() && img.degree() != Some(c.twists[src][col]) {
                    return Err(Error::NotHomogeneous(format!(
                        "map {k}, column {col} is not degree-preserving"
                    )));
                }
            }
        }
        Ok(c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Number of slots.
    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn twists(&self, k: usize) -> &[i64] {
        &self.twists[k]
    }

    pub fn rank(&self, k: usize) -> usize {
        self.twists[k].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.twists.iter().map(Vec::len).collect()
    }

    /// `(source slot, target slot)` of `maps[k]`.
    pub fn endpoints(&self, k: usize) -> (usize, usize) {
        match self.direction {
            Direction::Homological => (k + 1, k),
            Direction::Cohomological => (k, k + 1),
        }
    }

    pub fn map(&self, k: usize) -> &[FreeElement] {
        &self.maps[k]
    }

    pub fn num_maps(&self) -> usize {
        self.maps.len()
    }

    /// Entry `(row, col)` of `maps[k]`: the `row` component of the image of
    /// source generator `col`.
    pub fn entry(&self, k: usize, row: usize, col: usize) -> &Polynomial {
        self.maps[k][col].comp(row)
    }

    /// Checks that consecutive maps compose to zero.
    pub fn check_composition(&self) -> Result<()> {
        for k in 0..self.maps.len().saturating_sub(1) {
            let (first, second) = match self.direction {
                Direction::Homological => (k + 1, k),
                Direction::Cohomological => (k, k + 1),
            };
            let (_, mid) = self.endpoints(first);
            let (_, tgt) = self.endpoints(second);
            for img in &self.maps[first] {
                let comp = FreeElement::combine(img.comps(), &self.maps[second], self.nvars, &self.twists[tgt]);
                if !comp.is_zero() {
                    return Err(Error::NotAComplex(format!(
                        "maps {first} and {second} through slot {mid} do not compose to zero"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Hom_R(-, R)`: transposed maps, negated twists, direction reversed.
    pub fn dualize(&self) -> ChainComplex {
        let twists: Vec<Vec<i64>> = self
            .twists
            .iter()
            .map(|t| t.iter().map(|a| -a).collect())
            .collect();
        let maps = (0..self.maps.len())
            .map(|k| {
                let (src, tgt) = self.endpoints(k);
                (0..self.rank(tgt))
                    .map(|row| {
                        let comps = (0..self.rank(src)).map(|col| self.entry(k, row, col).clone()).collect();
                        FreeElement::new(comps, twists[src].clone())
                    })
                    .collect()
            })
            .collect();
        let direction = match self.direction {
            Direction::Homological => Direction::Cohomological,
            Direction::Cohomological => Direction::Homological,
        };
        ChainComplex {
            nvars: self.nvars,
            twists,
            maps,
            direction,
        }
    }

    /// Adds the split summand `R(-a) --1--> R(-a)` across `maps[k]`. The
    /// result has the same homology.
    pub fn with_trivial_summand(&self, k: usize, a: i64) -> ChainComplex {
        let (src, tgt) = self.endpoints(k);
        let mut twists = self.twists.clone();
        twists[src].push(a);
        twists[tgt].push(a);
        let n = self.nvars;
        let zero = Polynomial::zero(n);
        let mut maps: Vec<Vec<FreeElement>> = Vec::with_capacity(self.maps.len());
        for (m, cols) in self.maps.iter().enumerate() {
            let (s, t) = self.endpoints(m);
            let mut new_cols: Vec<FreeElement> = cols
                .iter()
                .map(|img| {
                    let mut comps = img.comps().to_vec();
                    if t == src || t == tgt {
                        comps.push(zero.clone());
                    }
                    FreeElement::new(comps, twists[t].clone())
                })
                .collect();
            if s == src || s == tgt {
                let extra = if m == k {
                    FreeElement::basis(n, &twists[t], twists[t].len() - 1)
                } else {
                    FreeElement::zero(n, &twists[t])
                };
                new_cols.push(extra);
            }
            maps.push(new_cols);
        }
        ChainComplex {
            nvars: n,
            twists,
            maps,
            direction: self.direction,
        }
    }
}

/// Free resolution `F_maxlen -> ... -> F_1 -> F_0` of `m`, stopping early
/// once a syzygy module vanishes. Each level is a greedily minimized
/// generating set of the previous syzygies.
pub fn free_resolution(m: &ModulePresentation, maxlen: usize) -> ChainComplex {
    let order = TermOrder::grevlex();
    let n = m.nvars();
    let mut twists = vec![m.twists().to_vec()];
    let mut maps: Vec<Vec<FreeElement>> = Vec::new();
    let mut current = minimal_generators(m.relations(), &order);
    while !current.is_empty() && maps.len() < maxlen {
        twists.push(current.iter().map(|e| e.degree().unwrap()).collect());
        let next = if maps.len() + 1 < maxlen {
            syzygies(&current, &order)
        } else {
            Vec::new()
        };
        maps.push(current);
        current = next;
    }
    let c = ChainComplex::new(n, twists, maps, Direction::Homological).expect("resolution shape");
    debug_assert!(c.check_composition().is_ok());
    c
}

/// Presents `span(ker_gens) / span(im_gens)`, with one generator per nonzero
/// kernel generator. Fails if some image element is outside the kernel span.
pub fn subquotient_presentation(
    ring: &Ring,
    ker_gens: &[FreeElement],
    im_gens: &[FreeElement],
) -> Result<ModulePresentation> {
    let order = TermOrder::grevlex();
    let ker: Vec<FreeElement> = ker_gens.iter().filter(|e| !e.is_zero()).cloned().collect();
    let im: Vec<FreeElement> = im_gens.iter().filter(|e| !e.is_zero()).cloned().collect();
    let twists: Vec<i64> = ker.iter().map(|e| e.degree().unwrap()).collect();
    let (syz, exprs) = graph_basis(&ker, ring.nvars(), &twists, &order, &im);
    let mut rels = syz;
    for e in exprs {
        let coeffs = e.ok_or(Error::ImageNotInKernel)?;
        rels.push(FreeElement::new(coeffs, twists.clone()));
    }
    let rels = minimal_generators(&rels, &order);
    ModulePresentation::new(ring.clone(), twists, rels)
}
