use std::collections::BTreeMap;

use crate::arith::BaseScalar;

/// One graded piece as an `A`-module: `A^rank + sum A/(f)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PieceData {
    pub rank: usize,
    /// Non-unit invariant factors, monic, each dividing the next.
    pub torsion: Vec<BaseScalar>,
}

impl PieceData {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Graded pieces on an explicit window. Degrees outside the window are
/// unknown and [`GradedAModuleData::get`] returns `None` for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAModuleData {
    window: (i64, i64),
    pieces: BTreeMap<i64, PieceData>,
}

impl GradedAModuleData {
    pub fn new(window: (i64, i64)) -> Self {
        GradedAModuleData {
            window,
            pieces: BTreeMap::new(),
        }
    }

    /// All pieces in the window known to be zero.
    pub fn zero(window: (i64, i64)) -> Self {
        let mut d = Self::new(window);
        for k in window.0..=window.1 {
            d.insert(k, PieceData::default());
        }
        d
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn contains(&self, d: i64) -> bool {
        self.window.0 <= d && d <= self.window.1
    }

    pub fn insert(&mut self, d: i64, piece: PieceData) {
        assert!(self.contains(d), "degree {d} outside window {:?}", self.window);
        self.pieces.insert(d, piece);
    }

    pub fn get(&self, d: i64) -> Option<&PieceData> {
        self.pieces.get(&d)
    }

    pub fn rank(&self, d: i64) -> Option<usize> {
        self.get(d).map(|p| p.rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &PieceData)> {
        self.pieces.iter().map(|(d, p)| (*d, p))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (i64, &PieceData)> {
        self.iter().filter(|(_, p)| !p.is_zero())
    }

    /// Every piece of the window is computed and zero.
    pub fn is_zero(&self) -> bool {
        self.pieces.len() as i64 == self.window.1 - self.window.0 + 1 && self.nonzero().next().is_none()
    }

    pub fn torsion_factors(&self) -> impl Iterator<Item = &BaseScalar> {
        self.pieces.values().flat_map(|p| p.torsion.iter())
    }
}
