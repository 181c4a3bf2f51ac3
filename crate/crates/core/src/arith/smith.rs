//! Smith normal form over `QQ[t]` and the linear algebra built on it.
//!
//! `U * m * V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`,
//! nonzero diagonal entries monic. The inverses of `U` and `V` are tracked
//! alongside so kernels, images and coordinates can be read off directly.

use super::matrix::{is_identity, rank_over_rationals, AMatrix};
use super::scalar::BaseScalar;

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries, monic, each dividing the next.
    pub diagonal: Vec<BaseScalar>,
    pub u: AMatrix,
    pub u_inv: AMatrix,
    pub v: AMatrix,
    pub v_inv: AMatrix,
}

impl SmithForm {
    pub fn compute(m: &AMatrix) -> SmithForm {
        let (r, c) = (m.rows(), m.cols());
        let mut a = m.clone();
        let mut u = AMatrix::identity(r);
        let mut u_inv = AMatrix::identity(r);
        let mut v = AMatrix::identity(c);
        let mut v_inv = AMatrix::identity(c);
        let mut diagonal = Vec::new();

        for k in 0..r.min(c) {
            loop {
                let Some((pi, pj)) = pivot_entry(&a, k) else {
                    break;
                };
                a.swap_rows(k, pi);
                u.swap_rows(k, pi);
                u_inv.swap_cols(k, pi);
                a.swap_cols(k, pj);
                v.swap_cols(k, pj);
                v_inv.swap_rows(k, pj);

                let pivot = a.get(k, k).clone();
                let mut clean = true;
                for i in k + 1..r {
                    if a.get(i, k).is_zero() {
                        continue;
                    }
                    let (q, rem) = a.get(i, k).div_rem(&pivot);
                    let nq = -&q;
                    a.add_row_multiple(i, k, &nq);
                    u.add_row_multiple(i, k, &nq);
                    u_inv.add_col_multiple(k, i, &q);
                    clean &= rem.is_zero();
                }
                for j in k + 1..c {
                    if a.get(k, j).is_zero() {
                        continue;
                    }
                    let (q, rem) = a.get(k, j).div_rem(&pivot);
                    let nq = -&q;
                    a.add_col_multiple(j, k, &nq);
                    v.add_col_multiple(j, k, &nq);
                    v_inv.add_row_multiple(k, j, &q);
                    clean &= rem.is_zero();
                }
                if clean {
                    break;
                }
            }
            let p = a.get(k, k).clone();
            if p.is_zero() {
                break;
            }
            let lc = p.leading_coeff().unwrap().clone();
            if !num_traits::One::is_one(&lc) {
                let s = BaseScalar::constant(lc.recip());
                let s_inv = BaseScalar::constant(lc);
                a.scale_row(k, &s);
                u.scale_row(k, &s);
                u_inv.scale_col(k, &s_inv);
            }
            diagonal.push(a.get(k, k).clone());
        }

        fix_divisibility(&mut diagonal, &mut u, &mut u_inv, &mut v, &mut v_inv);

        let sf = SmithForm {
            diagonal,
            u,
            u_inv,
            v,
            v_inv,
        };
        // The check is cubic; large forms are covered by the test suites.
        debug_assert!(r.max(c) > 64 || sf.verify(m), "Smith form reconstruction failed");
        sf
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Checks `U m V = D`, `U U^-1 = I`, `V V^-1 = I` and the divisibility chain.
    pub fn verify(&self, m: &AMatrix) -> bool {
        let d = self.u.mul(m).mul(&self.v);
        let diag_ok = (0..d.rows()).all(|i| {
            (0..d.cols()).all(|j| {
                let e = d.get(i, j);
                if i == j && i < self.diagonal.len() {
                    *e == self.diagonal[i]
                } else {
                    e.is_zero()
                }
            })
        });
        let chain_ok = self.diagonal.windows(2).all(|w| w[0].divides(&w[1]));
        diag_ok
            && chain_ok
            && is_identity(&self.u.mul(&self.u_inv))
            && is_identity(&self.v.mul(&self.v_inv))
    }

    /// Columns spanning the kernel of the original matrix (a free basis).
    pub fn kernel(&self) -> AMatrix {
        self.v.col_block(self.rank()..self.v.cols())
    }
}

/// Turns a monic diagonal into a divisibility chain: each offending pair
/// `diag(a, b)` becomes `diag(gcd, lcm)`, with the transforms updated.
fn fix_divisibility(
    diagonal: &mut [BaseScalar],
    u: &mut AMatrix,
    u_inv: &mut AMatrix,
    v: &mut AMatrix,
    v_inv: &mut AMatrix,
) {
    let one = BaseScalar::one();
    for i in 0..diagonal.len() {
        for j in i + 1..diagonal.len() {
            if diagonal[i].is_unit() {
                break;
            }
            if diagonal[i].divides(&diagonal[j]) {
                continue;
            }
            let (a, b) = (diagonal[i].clone(), diagonal[j].clone());
            let (g, s, t) = a.ext_gcd(&b);
            let (ag, bg) = (a.exact_div(&g).unwrap(), b.exact_div(&g).unwrap());
            // col_i += col_j
            v.add_col_multiple(i, j, &one);
            v_inv.add_row_multiple(j, i, &-&one);
            // rows (i, j) by [[s, t], [-b/g, a/g]], determinant 1
            u.combine_rows(i, j, [&s, &t, &-&bg, &ag]);
            u_inv.combine_cols(i, j, [&ag, &-&t, &bg, &s]);
            // col_j -= (t b / g) col_i
            let q = &t * &bg;
            v.add_col_multiple(j, i, &-&q);
            v_inv.add_row_multiple(i, j, &q);
            diagonal[j] = &ag * &b;
            diagonal[i] = g;
        }
    }
}

/// Pivot for step `k`: lowest degree first, then the smallest Markowitz
/// count `(row entries - 1) * (column entries - 1)` to limit fill-in.
fn pivot_entry(a: &AMatrix, k: usize) -> Option<(usize, usize)> {
    let (r, c) = (a.rows(), a.cols());
    let mut row_nnz = vec![0usize; r];
    let mut col_nnz = vec![0usize; c];
    for i in k..r {
        for j in k..c {
            if !a.get(i, j).is_zero() {
                row_nnz[i] += 1;
                col_nnz[j] += 1;
            }
        }
    }
    let mut best: Option<((usize, usize), usize, usize)> = None;
    for i in (k..r).filter(|&i| row_nnz[i] > 0) {
        for j in k..c {
            let Some(d) = a.get(i, j).degree() else {
                continue;
            };
            let key = (d, (row_nnz[i] - 1) * (col_nnz[j] - 1));
            if best.is_none_or(|b| key < b.0) {
                best = Some((key, i, j));
                if key == (0, 0) {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Structure of the cokernel of `m`, read as a presentation matrix whose
/// columns are relations among the row generators.
///
/// Returns the free rank and the non-unit invariant factors (monic, each
/// dividing the next): `coker m = A^rank + sum A/(f_i)`. Over `QQ` (all
/// entries constant) the factor list is always empty.
pub fn base_invariants(m: &AMatrix) -> (usize, Vec<BaseScalar>) {
    if m.is_constant() {
        return (m.rows() - rank_over_rationals(m), Vec::new());
    }
    let sf = SmithForm::compute(m);
    let factors = sf.diagonal.iter().filter(|d| !d.is_unit()).cloned().collect();
    (m.rows() - sf.rank(), factors)
}

/// Rank over the fraction field.
pub fn matrix_rank(m: &AMatrix) -> usize {
    if m.is_constant() {
        rank_over_rationals(m)
    } else {
        SmithForm::compute(m).rank()
    }
}

/// Free basis of the kernel of `m` as matrix columns.
pub fn kernel_basis(m: &AMatrix) -> AMatrix {
    SmithForm::compute(m).kernel()
}

/// The `A`-span of a set of columns, with coordinates relative to a free
/// basis of that span.
#[derive(Clone, Debug)]
pub struct ColumnSpan {
    smith: SmithForm,
}

impl ColumnSpan {
    pub fn new(generators: &AMatrix) -> Self {
        ColumnSpan {
            smith: SmithForm::compute(generators),
        }
    }

    pub fn dim(&self) -> usize {
        self.smith.rank()
    }

    /// Basis vectors `U^-1 e_i d_i`, as matrix columns.
    pub fn basis(&self) -> AMatrix {
        let mut b = self.smith.u_inv.col_block(0..self.dim());
        for (i, d) in self.smith.diagonal.iter().enumerate() {
            b.scale_col(i, d);
        }
        b
    }

    /// Coordinates of `w` in [`ColumnSpan::basis`], or `None` if `w` is not
    /// in the `A`-span.
    pub fn coords(&self, w: &[BaseScalar]) -> Option<Vec<BaseScalar>> {
        let y = self.smith.u.mul_vec(w);
        let r = self.dim();
        if y[r..].iter().any(|e| !e.is_zero()) {
            return None;
        }
        y[..r]
            .iter()
            .zip(&self.smith.diagonal)
            .map(|(yi, di)| yi.exact_div(di))
            .collect()
    }

    pub fn contains(&self, w: &[BaseScalar]) -> bool {
        self.coords(w).is_some()
    }
}
