//! Monomial and module term orders.

use std::cmp::Ordering;

/// Graded reverse lexicographic order on the x-variables, optionally with
/// positive integer weights. If the exponent vectors carry a trailing
/// parameter exponent (`t` in `QQ[t][x]`), it is compared last, so the order
/// is the block order `x >> t`. Module terms are compared position over
/// term, the lower component index being larger.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TermOrder {
    weights: Option<Vec<u32>>,
}

impl TermOrder {
    pub fn grevlex() -> Self {
        TermOrder { weights: None }
    }

    pub fn weighted(weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        TermOrder { weights: Some(weights) }
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn weighted_degree(&self, x: &[u32]) -> u64 {
        match &self.weights {
            None => x.iter().map(|&e| e as u64).sum(),
            Some(w) => x.iter().zip(w).map(|(&e, &wi)| e as u64 * wi as u64).sum(),
        }
    }

    /// Compares exponent vectors whose first `nx` entries are x-exponents and
    /// whose optional last entry is the parameter exponent.
    pub fn cmp_exponents(&self, a: &[u32], b: &[u32], nx: usize) -> Ordering {
        let (ax, bx) = (&a[..nx], &b[..nx]);
        self.weighted_degree(ax)
            .cmp(&self.weighted_degree(bx))
            .then_with(|| {
                for i in (0..nx).rev() {
                    match ax[i].cmp(&bx[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            })
            .then_with(|| a[nx..].cmp(&b[nx..]))
    }

    /// Position over term: a lower component index is larger.
    pub fn cmp_terms(&self, (ca, a): (usize, &[u32]), (cb, b): (usize, &[u32]), nx: usize) -> Ordering {
        cb.cmp(&ca).then_with(|| self.cmp_exponents(a, b, nx))
    }
}
