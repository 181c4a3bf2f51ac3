//! Elements of graded free modules and graded module presentations.

use std::sync::OnceLock;

use crate::arith::{BaseScalar, Monomial, Polynomial, Rational, Ring, TermOrder};
use crate::error::{Error, Result};

/// An element of the graded free module `⊕ R(-twist_i)`; generator `i` sits
/// in degree `twists[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeElement {
    comps: Vec<Polynomial>,
    twists: Vec<i64>,
}

impl FreeElement {
    pub fn new(comps: Vec<Polynomial>, twists: Vec<i64>) -> Self {
        assert_eq!(comps.len(), twists.len(), "component count must match twists");
        FreeElement { comps, twists }
    }

    pub fn zero(nvars: usize, twists: &[i64]) -> Self {
        FreeElement {
            comps: vec![Polynomial::zero(nvars); twists.len()],
            twists: twists.to_vec(),
        }
    }

    /// The `i`-th free generator.
    pub fn basis(nvars: usize, twists: &[i64], i: usize) -> Self {
        let mut e = Self::zero(nvars, twists);
        e.comps[i] = Polynomial::one(nvars);
        e
    }

    pub fn comps(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn nvars(&self) -> usize {
        self.comps.first().map_or(0, Polynomial::nvars)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    pub fn has_constant_coeffs(&self) -> bool {
        self.comps.iter().all(Polynomial::has_constant_coeffs)
    }

    /// Degree of a nonzero homogeneous element: component degree plus twist,
    /// the same for every nonzero component.
    pub fn degree(&self) -> Option<i64> {
        let mut deg = None;
        for (p, tw) in self.comps.iter().zip(&self.twists) {
            if p.is_zero() {
                continue;
            }
            let d = p.degree()? as i64 + tw;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        assert_eq!(self.twists, other.twists, "ambient mismatch");
        FreeElement {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
            twists: self.twists.clone(),
        }
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        assert_eq!(self.twists, other.twists, "ambient mismatch");
        FreeElement {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
            twists: self.twists.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> FreeElement {
        FreeElement {
            comps: self.comps.iter().map(|c| c * p).collect(),
            twists: self.twists.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> FreeElement {
        FreeElement {
            comps: self.comps.iter().map(|c| c.mul_monomial(m)).collect(),
            twists: self.twists.clone(),
        }
    }

    pub fn scale(&self, c: &BaseScalar) -> FreeElement {
        FreeElement {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
            twists: self.twists.clone(),
        }
    }

    pub fn specialize(&self, c: &Rational) -> FreeElement {
        FreeElement {
            comps: self.comps.iter().map(|p| p.specialize(c)).collect(),
            twists: self.twists.clone(),
        }
    }

    /// `sum_k coeffs[k] * images[k]`, all images in a common ambient.
    pub fn combine(coeffs: &[Polynomial], images: &[FreeElement], nvars: usize, twists: &[i64]) -> FreeElement {
        let mut acc = FreeElement::zero(nvars, twists);
        for (c, img) in coeffs.iter().zip(images) {
            if !c.is_zero() {
                acc = acc.add(&img.mul_poly(c));
            }
        }
        acc
    }

    pub fn display(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| ring.show(p)).collect();
        format!("({})", parts.join(", "))
    }
}

impl std::fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FreeElement")
            .field("comps", &self.comps)
            .field("twists", &self.twists)
            .finish()
    }
}

/// A finitely generated graded module `R^r(twists) / span(relations)`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Ring,
    twists: Vec<i64>,
    relations: Vec<FreeElement>,
    gb: OnceLock<Vec<FreeElement>>,
}

impl PartialEq for ModulePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.twists == other.twists && self.relations == other.relations
    }
}

impl ModulePresentation {
    /// Checks arity, ambient and x-homogeneity of every relation.
    pub fn new(ring: Ring, twists: Vec<i64>, relations: Vec<FreeElement>) -> Result<Self> {
        for (k, rel) in relations.iter().enumerate() {
            if rel.twists() != twists.as_slice() {
                return Err(Error::Structural(format!("relation {} lives in a different ambient", k + 1)));
            }
            if rel.comps().iter().any(|p| p.nvars() != ring.nvars()) {
                return Err(Error::Structural(format!("relation {} has the wrong variable count", k + 1)));
            }
            if ring.base == crate::arith::BaseRing::Rational && !rel.has_constant_coeffs() {
                return Err(Error::BaseRing(format!("relation {} uses the parameter over QQ", k + 1)));
            }
            for (i, p) in rel.comps().iter().enumerate() {
                if !p.is_homogeneous() {
                    return Err(Error::NotHomogeneous(format!(
                        "relation entry not x-homogeneous at row {}, column {}: {}",
                        i + 1,
                        k + 1,
                        ring.show(p)
                    )));
                }
            }
            if !rel.is_homogeneous() {
                return Err(Error::NotHomogeneous(format!(
                    "relation column {} has inconsistent degrees across rows",
                    k + 1
                )));
            }
        }
        Ok(ModulePresentation {
            ring,
            twists,
            relations,
            gb: OnceLock::new(),
        })
    }

    /// Builds the cokernel of a matrix given by rows; columns are relations.
    pub fn from_rows(ring: Ring, rows: Vec<Vec<Polynomial>>, twists: Option<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Structural("ragged relation matrix".into()));
        }
        let twists = twists.unwrap_or_else(|| vec![0; r]);
        if twists.len() != r {
            return Err(Error::Structural(format!("{} twists for {r} rows", twists.len())));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if !p.is_homogeneous() {
                    return Err(Error::NotHomogeneous(format!(
                        "relation entry not x-homogeneous at row {}, column {}: {}",
                        i + 1,
                        j + 1,
                        ring.show(p)
                    )));
                }
            }
        }
        let relations = (0..c)
            .map(|j| FreeElement::new(rows.iter().map(|row| row[j].clone()).collect(), twists.clone()))
            .collect();
        Self::new(ring, twists, relations)
    }

    /// The free module `R^r(twists)`.
    pub fn free(ring: Ring, twists: Vec<i64>) -> Self {
        Self::new(ring, twists, Vec::new()).expect("free module")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    /// Reduced Gröbner basis of the relation submodule, computed on first use.
    pub fn groebner_basis(&self) -> &[FreeElement] {
        self.gb
            .get_or_init(|| super::buchberger(&self.relations, &TermOrder::grevlex()))
    }

    /// Whether `e` (an element of the ambient) lies in the relation span.
    pub fn is_relation(&self, e: &FreeElement) -> bool {
        super::normal_form(e, self.groebner_basis(), &TermOrder::grevlex()).is_zero()
    }

    /// Same module with an extra relation. Used to build padded presentations.
    pub fn with_relation(&self, rel: FreeElement) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.push(rel);
        Self::new(self.ring.clone(), self.twists.clone(), rels)
    }

    pub fn specialize(&self, c: &Rational) -> Self {
        ModulePresentation {
            ring: self.ring.over_rationals(),
            twists: self.twists.clone(),
            relations: self.relations.iter().map(|r| r.specialize(c)).collect(),
            gb: OnceLock::new(),
        }
    }

    /// Largest generator degree, used to size truncations.
    pub fn max_generator_degree(&self) -> i64 {
        self.twists.iter().copied().max().unwrap_or(0)
    }
}
