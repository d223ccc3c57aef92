//! Ambient and quotient character lattices, cocharacter pairings, and the
//! permutation action of Weyl group elements.
//!
//! The character lattice of the diagonal torus of `GL_n` is `Z^n`. For a
//! subtorus `T`, the character lattice `X(T)` is the quotient of `Z^n` by the
//! kernel of restriction. A [`QuotientLattice`] keeps that kernel as an
//! explicit integer basis and picks canonical coset representatives by
//! Hermite reduction, so all arithmetic on classes is carried out on plain
//! integer vectors.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Sublattice};

/// An integer vector in `Z^n`, read as a character of the diagonal torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmbientWeight(Vec<i64>);

impl AmbientWeight {
    pub fn new(coords: Vec<i64>) -> Self {
        AmbientWeight(coords)
    }

    pub fn zero(n: usize) -> Self {
        AmbientWeight(vec![0; n])
    }

    /// The standard basis vector `e_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        AmbientWeight(v)
    }

    /// Sum of `e_j` over `indices`.
    pub fn indicator(n: usize, indices: &[usize]) -> Self {
        let mut v = vec![0; n];
        for &j in indices {
            v[j] += 1;
        }
        AmbientWeight(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        AmbientWeight(self.0.iter().map(|&x| k * x).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: i64, other: &AmbientWeight) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        AmbientWeight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + k * b)
                .collect(),
        )
    }

    /// Parses a comma-separated list such as `3,-1,0`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(AmbientWeight(Vec::new()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad weight coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(AmbientWeight)
    }
}

impl From<Vec<i64>> for AmbientWeight {
    fn from(v: Vec<i64>) -> Self {
        AmbientWeight(v)
    }
}

impl Index<usize> for AmbientWeight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &AmbientWeight {
    type Output = AmbientWeight;
    fn add(self, rhs: &AmbientWeight) -> AmbientWeight {
        self.add_scaled(1, rhs)
    }
}

impl Sub for &AmbientWeight {
    type Output = AmbientWeight;
    fn sub(self, rhs: &AmbientWeight) -> AmbientWeight {
        self.add_scaled(-1, rhs)
    }
}

impl Neg for &AmbientWeight {
    type Output = AmbientWeight;
    fn neg(self) -> AmbientWeight {
        self.scale(-1)
    }
}

impl fmt::Display for AmbientWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// An integer covector acting on `Z^n` by the dot product; used for
/// cocharacters, in particular coroots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Covector(Vec<i64>);

impl Covector {
    pub fn new(coords: Vec<i64>) -> Self {
        Covector(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Covector {
    fn from(v: Vec<i64>) -> Self {
        Covector(v)
    }
}

/// The ambient pairing `<λ, c>`.
pub fn pair(lambda: &AmbientWeight, c: &Covector) -> Result<i64> {
    check_dim(lambda.dim(), c.dim())?;
    Ok(dot(lambda.coords(), c.coords()))
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `Z^n` modulo an explicit kernel sublattice; models `X(T) = X(T') / ker(π)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientLattice {
    ambient_dim: usize,
    kernel_basis: Vec<AmbientWeight>,
    echelon: Sublattice,
}

impl QuotientLattice {
    /// Builds the quotient. The kernel basis must be linearly independent and
    /// span a saturated sublattice, so that the quotient is torsion-free.
    pub fn new(ambient_dim: usize, kernel_basis: Vec<AmbientWeight>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidParameter("ambient dimension must be positive".into()));
        }
        for k in &kernel_basis {
            check_dim(ambient_dim, k.dim())?;
        }
        let rows: Vec<Vec<i64>> = kernel_basis.iter().map(|k| k.coords().to_vec()).collect();
        if linalg::rank(&rows) != rows.len() {
            return Err(Error::KernelDependent);
        }
        if !linalg::is_saturated(&rows) {
            return Err(Error::KernelNotSaturated);
        }
        let echelon = Sublattice::new(&rows, ambient_dim);
        Ok(QuotientLattice {
            ambient_dim,
            kernel_basis,
            echelon,
        })
    }

    /// `Z^n` itself (zero kernel).
    pub fn full(ambient_dim: usize) -> Self {
        QuotientLattice::new(ambient_dim, Vec::new()).expect("positive dimension")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn kernel_basis(&self) -> &[AmbientWeight] {
        &self.kernel_basis
    }

    pub fn kernel_rank(&self) -> usize {
        self.kernel_basis.len()
    }

    /// Rank of `X(T)`.
    pub fn rank(&self) -> usize {
        self.ambient_dim - self.kernel_basis.len()
    }

    pub(crate) fn kernel_rows(&self) -> Vec<Vec<i64>> {
        self.kernel_basis.iter().map(|k| k.coords().to_vec()).collect()
    }

    /// The Hermite-reduced representative of `λ + ker`.
    pub fn canonical_rep(&self, lambda: &AmbientWeight) -> Result<AmbientWeight> {
        check_dim(self.ambient_dim, lambda.dim())?;
        Ok(AmbientWeight(self.echelon.reduce(lambda.coords())))
    }

    /// True iff `λ − μ` is an integer combination of the kernel basis.
    ///
    /// Solved directly against the given basis rather than through the
    /// echelon form used by [`canonical_rep`](Self::canonical_rep).
    pub fn equal_mod_kernel(&self, lambda: &AmbientWeight, mu: &AmbientWeight) -> Result<bool> {
        check_dim(self.ambient_dim, lambda.dim())?;
        check_dim(self.ambient_dim, mu.dim())?;
        Ok(self.kernel_coefficients(&(lambda - mu)).is_some())
    }

    /// Coefficients of `v` in the kernel basis, if `v` is in the kernel.
    pub fn kernel_coefficients(&self, v: &AmbientWeight) -> Option<Vec<i64>> {
        linalg::solve_integer(&self.kernel_rows(), v.coords())
    }

    pub fn in_kernel(&self, v: &AmbientWeight) -> Result<bool> {
        check_dim(self.ambient_dim, v.dim())?;
        Ok(self.kernel_coefficients(v).is_some())
    }

    /// True iff `c` pairs to zero with every kernel basis vector.
    pub fn annihilates(&self, c: &Covector) -> bool {
        c.dim() == self.ambient_dim
            && self
                .kernel_basis
                .iter()
                .all(|k| dot(k.coords(), c.coords()) == 0)
    }

    /// Pairing of the class of `λ` with `c`; `c` must annihilate the kernel.
    pub fn pair_class(&self, lambda: &AmbientWeight, c: &Covector) -> Result<i64> {
        check_dim(self.ambient_dim, lambda.dim())?;
        check_dim(self.ambient_dim, c.dim())?;
        if !self.annihilates(c) {
            return Err(Error::CovectorNotWellDefined);
        }
        pair(lambda, c)
    }

    /// True iff `w` maps the kernel sublattice onto itself.
    pub fn is_preserved_by(&self, w: &WeylElement) -> bool {
        w.degree() == self.ambient_dim
            && self.kernel_basis.iter().all(|k| {
                let image = w.act_unchecked(k);
                self.kernel_coefficients(&image).is_some()
            })
    }
}

/// A permutation of `{0, …, n−1}` acting on weights by permuting coordinates:
/// `(w.λ)_{w(j)} = λ_j`, i.e. `(w.λ)_i = λ_{w^{-1}(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    images: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            images: (0..n).collect(),
        }
    }

    /// Builds `j ↦ images[j]`; fails unless this is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(WeylElement { images })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut w = WeylElement::identity(n);
        w.images.swap(i, j);
        w
    }

    /// Product of disjoint transpositions `(a_k b_k)`.
    pub fn product_of_transpositions(n: usize, pairs: &[(usize, usize)]) -> Self {
        pairs
            .iter()
            .fold(WeylElement::identity(n), |acc, &(a, b)| {
                acc.compose(&WeylElement::transposition(n, a, b))
            })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        WeylElement {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0; self.degree()];
        for (j, &i) in self.images.iter().enumerate() {
            inv[i] = j;
        }
        WeylElement { images: inv }
    }

    pub fn act(&self, lambda: &AmbientWeight) -> Result<AmbientWeight> {
        check_dim(self.degree(), lambda.dim())?;
        Ok(self.act_unchecked(lambda))
    }

    pub(crate) fn act_unchecked(&self, lambda: &AmbientWeight) -> AmbientWeight {
        let mut out = vec![0; lambda.dim()];
        for (j, &x) in lambda.coords().iter().enumerate() {
            out[self.images[j]] = x;
        }
        AmbientWeight(out)
    }

    /// The contragredient action on covectors, `(w.c)_{w(j)} = c_j`, so that
    /// `<w.λ, w.c> = <λ, c>`.
    pub fn act_covector(&self, c: &Covector) -> Result<Covector> {
        check_dim(self.degree(), c.dim())?;
        let mut out = vec![0; c.dim()];
        for (j, &x) in c.coords().iter().enumerate() {
            out[self.images[j]] = x;
        }
        Ok(Covector(out))
    }

    /// Cycle notation with 1-based indices, e.g. `(1 4)(2 3)`; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            out.push('(');
            let mut j = start;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(j + 1).to_string());
                first = false;
                j = self.images[j];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

/// All integer points of the closed box `[lo, hi]^n`, in lexicographic order.
pub fn box_points(n: usize, lo: i64, hi: i64) -> impl Iterator<Item = AmbientWeight> {
    let side = if hi >= lo { (hi - lo + 1) as u64 } else { 0 };
    let total = if side == 0 { 0 } else { side.pow(n as u32) };
    (0..total).map(move |mut idx| {
        let mut v = vec![0i64; n];
        for slot in v.iter_mut().rev() {
            *slot = lo + (idx % side) as i64;
            idx /= side;
        }
        AmbientWeight(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> AmbientWeight {
        AmbientWeight::new(v.to_vec())
    }

    fn gsp4_lattice() -> QuotientLattice {
        QuotientLattice::new(4, vec![w(&[1, -1, -1, 1])]).unwrap()
    }

    #[test]
    fn canonical_rep_examples() {
        let gl = QuotientLattice::full(3);
        assert_eq!(gl.canonical_rep(&w(&[3, 1, 0])).unwrap(), w(&[3, 1, 0]));
        let gsp = gsp4_lattice();
        assert_eq!(gsp.canonical_rep(&w(&[1, -1, -1, 1])).unwrap(), w(&[0, 0, 0, 0]));
        assert_eq!(
            gsp.canonical_rep(&w(&[2, 0, -1, 2])).unwrap(),
            gsp.canonical_rep(&w(&[1, 1, 0, 1])).unwrap()
        );
        assert!(matches!(
            gsp.canonical_rep(&w(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn equal_mod_kernel_examples() {
        let gl = QuotientLattice::full(3);
        let l = w(&[4, -2, 7]);
        assert!(gl.equal_mod_kernel(&l, &l).unwrap());
        assert!(!gl.equal_mod_kernel(&w(&[1, 0, 0]), &w(&[0, 1, 0])).unwrap());
        let gsp = gsp4_lattice();
        assert!(gsp.equal_mod_kernel(&w(&[2, 0, -1, 2]), &w(&[1, 1, 0, 1])).unwrap());
        assert!(gsp.equal_mod_kernel(&w(&[1]), &w(&[1])).is_err());
    }

    #[test]
    fn kernel_must_be_independent_and_saturated() {
        assert_eq!(
            QuotientLattice::new(2, vec![w(&[1, 1]), w(&[2, 2])]),
            Err(Error::KernelDependent)
        );
        assert_eq!(
            QuotientLattice::new(2, vec![w(&[2, 0])]),
            Err(Error::KernelNotSaturated)
        );
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair(&w(&[2, 1, 0]), &Covector::new(vec![1, -1, 0])).unwrap(), 1);
        assert_eq!(pair(&w(&[0, 0, 0]), &Covector::new(vec![5, 3, -2])).unwrap(), 0);
        assert!(pair(&w(&[1, 0]), &Covector::new(vec![1, 0, 0])).is_err());
        let gsp = gsp4_lattice();
        // coroot of the long simple root of C_2
        let long = Covector::new(vec![0, 1, -1, 0]);
        assert_eq!(gsp.pair_class(&w(&[1, 1, 0, 0]), &long).unwrap(), 1);
        assert_eq!(
            gsp.pair_class(&w(&[1, 1, 0, 0]), &Covector::new(vec![1, 0, 0, 0])),
            Err(Error::CovectorNotWellDefined)
        );
    }

    #[test]
    fn act_examples() {
        let id = WeylElement::identity(3);
        assert_eq!(id.act(&w(&[5, -1, 2])).unwrap(), w(&[5, -1, 2]));
        let s = WeylElement::transposition(2, 0, 1);
        assert_eq!(s.act(&w(&[3, 1])).unwrap(), w(&[1, 3]));
        let t = WeylElement::transposition(4, 0, 3);
        assert_eq!(t.act(&w(&[1, 2, 3, 4])).unwrap(), w(&[4, 2, 3, 1]));
        assert!(t.act(&w(&[1, 2])).is_err());
    }

    #[test]
    fn act_matches_inverse_index_formula() {
        let c = WeylElement::from_images(vec![1, 2, 0]).unwrap();
        let l = w(&[10, 20, 30]);
        let out = c.act(&l).unwrap();
        let inv = c.inverse();
        for i in 0..3 {
            assert_eq!(out[i], l[inv.apply(i)]);
        }
    }

    #[test]
    fn composition_is_action_composition() {
        let a = WeylElement::from_images(vec![1, 2, 0, 3]).unwrap();
        let b = WeylElement::transposition(4, 0, 3);
        let l = w(&[1, 2, 3, 4]);
        assert_eq!(
            a.compose(&b).act(&l).unwrap(),
            a.act(&b.act(&l).unwrap()).unwrap()
        );
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(WeylElement::from_images(vec![0, 0]).is_err());
        assert!(WeylElement::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn cycle_notation() {
        let t = WeylElement::product_of_transpositions(4, &[(0, 3), (1, 2)]);
        assert_eq!(t.cycle_string(), "(1 4)(2 3)");
        assert_eq!(WeylElement::identity(3).to_string(), "()");
    }

    #[test]
    fn parse_weights() {
        assert_eq!(AmbientWeight::parse("3,-1, 0").unwrap(), w(&[3, -1, 0]));
        assert_eq!(AmbientWeight::parse("(1,2)").unwrap(), w(&[1, 2]));
        assert!(AmbientWeight::parse("1,x").is_err());
    }

    #[test]
    fn box_enumeration() {
        let pts: Vec<_> = box_points(2, -1, 1).collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], w(&[-1, -1]));
        assert_eq!(pts[8], w(&[1, 1]));
    }
}
