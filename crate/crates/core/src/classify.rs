//! Membership predicates, the decomposition `λ = λ_0 + p^r λ̃`, and the
//! restricted polynomial weights `P_r(D)`.

use itertools::Itertools;

use crate::arith;
use crate::datum::GroupDatum;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{box_points, dot, AmbientWeight, WeylElement};
use crate::linalg;
use crate::phi::{phi_ambient, require_valid, PhiData};

/// A validated datum together with `p` and `r`.
#[derive(Debug, Clone)]
pub struct ClassificationContext {
    datum: GroupDatum,
    p: u64,
    r: u32,
    q: i64,
    phi: PhiData,
    /// `<u_k, α_k^∨>` for the weight lifts `u_k`; the off-diagonal pairings vanish.
    multipliers: Vec<i64>,
    /// Columns of the inverse of the basis matrix `[lifts; d; kernel]`.
    functionals: Vec<Vec<i64>>,
}

/// `λ = λ_0 + p^r λ̃` with `λ_0 ∈ P_r(D)`, both as canonical representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub lambda0: AmbientWeight,
    pub lambda_tilde: AmbientWeight,
}

impl ClassificationContext {
    /// Rejects data failing any hypothesis (in particular `go_even`), non-prime
    /// `p`, and `r = 0`.
    pub fn new(datum: GroupDatum, p: u64, r: u32) -> Result<Self> {
        let q = arith::prime_power(p, r)?;
        require_valid(&datum)?;
        if !datum.weight_basis_is_unimodular() {
            return Err(Error::Unsupported(format!(
                "{}: weight lifts and d_j are not a basis of X(T)",
                datum.label()
            )));
        }
        let lifts = datum.weight_lifts();
        let coroots = datum.simple_coroots();
        if lifts.len() != coroots.len() {
            return Err(Error::Unsupported(format!(
                "{}: need one weight lift per simple root",
                datum.label()
            )));
        }
        let mut multipliers = Vec::with_capacity(lifts.len());
        for (k, u) in lifts.iter().enumerate() {
            let row = datum.coroot_pairings(u)?;
            let diagonal_ok = row
                .iter()
                .enumerate()
                .all(|(j, &x)| if j == k { x > 0 } else { x == 0 });
            if !diagonal_ok {
                return Err(Error::Unsupported(format!(
                    "{}: weight lift {} is not dual to the simple coroots",
                    datum.label(),
                    k + 1
                )));
            }
            multipliers.push(row[k]);
        }
        let n = datum.ambient_dim();
        let rows = datum.basis_rows();
        let inverse: Vec<Vec<i64>> = (0..n)
            .map(|k| {
                let e = AmbientWeight::unit(n, k);
                linalg::solve_integer(&rows, e.coords()).expect("unimodular basis")
            })
            .collect();
        let functionals = (0..n).map(|j| inverse.iter().map(|row| row[j]).collect()).collect();
        let phi = PhiData::from_datum(&datum);
        Ok(ClassificationContext {
            datum,
            p,
            r,
            q,
            phi,
            multipliers,
            functionals,
        })
    }

    pub fn datum(&self) -> &GroupDatum {
        &self.datum
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `p^r`.
    pub fn prpower(&self) -> i64 {
        self.q
    }

    pub fn phi_data(&self) -> &PhiData {
        &self.phi
    }

    /// Pairings of the weight lifts with their own coroots.
    pub fn lift_multipliers(&self) -> &[i64] {
        &self.multipliers
    }

    /// Coordinates of `λ` in the basis of weight lifts and `d_j`:
    /// `(lift coordinates, d coordinates)`.
    pub fn basis_coordinates(&self, lambda: &AmbientWeight) -> Result<(Vec<i64>, Vec<i64>)> {
        self.check(lambda)?;
        let k = self.multipliers.len();
        let l = self.datum.x0_rank();
        let c: Vec<i64> = self.functionals[..k + l]
            .iter()
            .map(|f| dot(lambda.coords(), f))
            .collect();
        Ok((c[..k].to_vec(), c[k..].to_vec()))
    }

    fn check(&self, lambda: &AmbientWeight) -> Result<()> {
        check_dim(self.datum.ambient_dim(), lambda.dim())
    }

    pub fn phi(&self, lambda: &AmbientWeight) -> Result<Vec<i64>> {
        phi_ambient(lambda, &self.phi)
    }

    pub fn is_polynomial(&self, lambda: &AmbientWeight) -> Result<bool> {
        Ok(self.phi(lambda)?.iter().all(|&x| x >= 0))
    }

    pub fn is_restricted(&self, lambda: &AmbientWeight) -> Result<bool> {
        self.check(lambda)?;
        let q = self.q;
        Ok(self
            .datum
            .coroot_pairings(lambda)?
            .iter()
            .all(|&x| (0..q).contains(&x)))
    }

    pub fn in_x0(&self, lambda: &AmbientWeight) -> Result<bool> {
        self.datum.in_x0(lambda)
    }

    /// `λ ∈ P_r(D)`: polynomial, restricted, and `λ − p^r d_i` non-polynomial
    /// for every `i`.
    pub fn in_pr(&self, lambda: &AmbientWeight) -> Result<bool> {
        if !self.is_polynomial(lambda)? || !self.is_restricted(lambda)? {
            return Ok(false);
        }
        for d in self.datum.d() {
            if self.is_polynomial(&lambda.add_scaled(-self.q, &d))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The coordinate of `λ` along `d` in the basis of weight lifts and `d`.
    /// Defined only when `X_0(T)` has rank one. For `gl(n)` it is `λ_n`.
    pub fn rank_one_phi(&self, lambda: &AmbientWeight) -> Result<i64> {
        self.require_rank_one()?;
        Ok(self.basis_coordinates(lambda)?.1[0])
    }

    /// The rank-one description of `P_r(D)`: polynomial, restricted, and
    /// `0 ≤ rank_one_phi(λ) ≤ p^r − 1`.
    pub fn in_pr_rank_one(&self, lambda: &AmbientWeight) -> Result<bool> {
        let t = self.rank_one_phi(lambda)?;
        Ok(self.is_polynomial(lambda)? && self.is_restricted(lambda)? && (0..self.q).contains(&t))
    }

    pub(crate) fn require_rank_one(&self) -> Result<()> {
        if self.datum.x0_rank() == 1 {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{} has X_0 of rank {}, rank one required",
                self.datum.label(),
                self.datum.x0_rank()
            )))
        }
    }

    fn combine(&self, lift_coeffs: &[i64], d_coeffs: &[i64]) -> AmbientWeight {
        let n = self.datum.ambient_dim();
        let mut v = AmbientWeight::zero(n);
        for (&c, u) in lift_coeffs.iter().zip(self.datum.weight_lifts()) {
            v = v.add_scaled(c, u);
        }
        for (&c, d) in d_coeffs.iter().zip(self.datum.d()) {
            v = v.add_scaled(c, &d);
        }
        v
    }

    /// Splits `λ` as `λ_0 + p^r λ̃` with `λ_0 ∈ P_r(D)`.
    ///
    /// Fails with [`Error::Precondition`] when `λ ∉ X_r(T) + p^r X(T)`, which
    /// happens only when the derived group is not simply connected.
    pub fn decompose(&self, lambda: &AmbientWeight) -> Result<Decomposition> {
        self.check(lambda)?;
        let q = self.q;
        let (lift, dco) = self.basis_coordinates(lambda)?;
        let mut digits = Vec::with_capacity(lift.len());
        let mut carry = Vec::with_capacity(lift.len());
        for (&c, &m) in lift.iter().zip(&self.multipliers) {
            let digit = c.rem_euclid(q);
            if m * digit > q - 1 {
                return Err(Error::Precondition(format!(
                    "{lambda} is not in X_r(T) + {q}X(T) for {}",
                    self.datum.label()
                )));
            }
            digits.push(digit);
            carry.push(c.div_euclid(q));
        }
        // λ = λ0' + q μ with λ0' restricted
        let lambda0p = self.combine(&digits, &dco);
        let mu = self.combine(&carry, &vec![0; dco.len()]);
        let a: Vec<i64> = self.phi(&lambda0p)?.iter().map(|x| x.div_euclid(q)).collect();
        let shift = self.combine(&[], &a);
        let lambda0 = lambda0p.add_scaled(-q, &shift);
        let lambda_tilde = &mu + &shift;
        if !self.in_pr(&lambda0)? {
            return Err(Error::Internal(format!("digit {lambda0} of {lambda} is not in P_r(D)")));
        }
        let lat = self.datum.lattice();
        debug_assert_eq!(
            lat.canonical_rep(lambda)?,
            lat.canonical_rep(&lambda0.add_scaled(q, &lambda_tilde))?
        );
        Ok(Decomposition {
            lambda0: lat.canonical_rep(&lambda0)?,
            lambda_tilde: lat.canonical_rep(&lambda_tilde)?,
        })
    }

    /// `λ ∈ P_r(D) + p^r P(D)`.
    pub fn is_simple_polynomial(&self, lambda: &AmbientWeight) -> Result<bool> {
        let dec = self.decompose(lambda)?;
        self.is_polynomial(&dec.lambda_tilde)
    }

    /// All of `P_r(D)` as sorted canonical representatives.
    pub fn enumerate_pr(&self) -> Result<Vec<AmbientWeight>> {
        let q = self.q;
        let l = self.datum.x0_rank();
        let bounds: Vec<i64> = self.multipliers.iter().map(|&m| (q - 1) / m).collect();
        let mut out = Vec::new();
        for digits in digit_vectors(&bounds) {
            let base = self.combine(&digits, &vec![0; l]);
            let phi0 = self.phi(&base)?;
            for t in box_points(l, 0, q - 1) {
                let shift: Vec<i64> = t.coords().iter().zip(&phi0).map(|(a, b)| a - b).collect();
                let v = &base + &self.combine(&[], &shift);
                if self.in_pr(&v)? {
                    out.push(self.datum.lattice().canonical_rep(&v)?);
                }
            }
        }
        out.sort_by(|a, b| a.coords().cmp(b.coords()));
        out.dedup();
        Ok(out)
    }

    pub fn weyl_orbit_witness_nonpolynomial(
        &self,
        lambda0: &AmbientWeight,
        lambda_tilde: &AmbientWeight,
    ) -> Result<Option<WeylElement>> {
        weyl_orbit_witness_nonpolynomial(&self.datum, self.q, lambda0, lambda_tilde)
    }
}

/// All vectors `c` with `0 ≤ c_k ≤ bounds[k]`.
fn digit_vectors(bounds: &[i64]) -> Vec<Vec<i64>> {
    if bounds.is_empty() {
        return vec![Vec::new()];
    }
    bounds.iter().map(|&b| 0..=b).multi_cartesian_product().collect()
}

/// Searches `W` in breadth-first order for `w` with `w.λ_0 + q λ̃` not
/// polynomial, using φ on ambient vectors.
///
/// Accepts any datum, including `go_even`; requires `q` to be a prime power
/// and `λ_0` to pass the ambient `P_r(D)` test.
pub fn weyl_orbit_witness_nonpolynomial(
    g: &GroupDatum,
    q: i64,
    lambda0: &AmbientWeight,
    lambda_tilde: &AmbientWeight,
) -> Result<Option<WeylElement>> {
    if q < 2 || arith::as_prime_power(q as u64).is_none() {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let n = g.ambient_dim();
    check_dim(n, lambda0.dim())?;
    check_dim(n, lambda_tilde.dim())?;
    let data = PhiData::from_datum(g);
    let poly = |v: &AmbientWeight| -> bool {
        phi_ambient(v, &data)
            .expect("dimension checked")
            .iter()
            .all(|&x| x >= 0)
    };
    let restricted = g.coroot_pairings(lambda0)?.iter().all(|&x| (0..q).contains(&x));
    let minimal = g.d().iter().all(|d| !poly(&lambda0.add_scaled(-q, d)));
    if !(poly(lambda0) && restricted && minimal) {
        return Err(Error::Precondition(format!("{lambda0} is not in P_r(D)")));
    }
    let shift = lambda_tilde.scale(q);
    for w in g.weyl_elements()? {
        if !poly(&(&w.act_unchecked(lambda0) + &shift)) {
            return Ok(Some(w.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::Hypothesis;
    use crate::datum::{build_gl, build_go_even, build_go_odd, build_gsp, build_levi};

    fn w(v: &[i64]) -> AmbientWeight {
        AmbientWeight::new(v.to_vec())
    }

    fn gl(n: usize, p: u64, r: u32) -> ClassificationContext {
        ClassificationContext::new(build_gl(n).unwrap(), p, r).unwrap()
    }

    #[test]
    fn context_rejects_bad_input() {
        assert_eq!(
            ClassificationContext::new(build_go_even(8).unwrap(), 5, 1).unwrap_err(),
            Error::HypothesisFailed(Hypothesis::CLower)
        );
        assert!(ClassificationContext::new(build_gl(2).unwrap(), 6, 1).is_err());
        assert!(ClassificationContext::new(build_gl(2).unwrap(), 2, 0).is_err());
    }

    #[test]
    fn predicate_examples() {
        let c = gl(2, 2, 1);
        assert!(c.is_polynomial(&w(&[1, 0])).unwrap());
        assert!(!c.is_polynomial(&w(&[0, -1])).unwrap());
        let gsp = ClassificationContext::new(build_gsp(4).unwrap(), 2, 1).unwrap();
        assert!(!gsp.is_polynomial(&w(&[-1, 2, 0, 2])).unwrap());
        assert!(gsp.in_x0(&w(&[1, 0, 0, 1])).unwrap());

        let c3 = gl(3, 2, 1);
        assert!(c3.is_restricted(&w(&[1, 0, 0])).unwrap());
        assert!(!c3.is_restricted(&w(&[2, 0, 0])).unwrap());
        assert!(c3.is_restricted(&w(&[1, 1, 1])).unwrap());
        assert!(c3.in_x0(&w(&[1, 1, 1])).unwrap());
        assert!(!c3.in_x0(&w(&[1, 0, 0])).unwrap());

        assert!(c.in_pr(&w(&[1, 0])).unwrap());
        assert!(!c.in_pr(&w(&[3, 3])).unwrap());
        assert!(c.in_pr(&w(&[1, 1])).unwrap());
        assert!(c.is_restricted(&w(&[3])).is_err());
    }

    #[test]
    fn decompose_examples() {
        let c = gl(2, 2, 1);
        let dec = c.decompose(&w(&[3, 1])).unwrap();
        assert_eq!((dec.lambda0, dec.lambda_tilde), (w(&[1, 1]), w(&[1, 0])));
        let dec = c.decompose(&w(&[1, -1])).unwrap();
        assert_eq!((dec.lambda0, dec.lambda_tilde), (w(&[1, 1]), w(&[0, -1])));
        let dec = c.decompose(&w(&[2, 1])).unwrap();
        assert_eq!((dec.lambda0, dec.lambda_tilde), (w(&[2, 1]), w(&[0, 0])));
        assert!(c.is_simple_polynomial(&w(&[3, 1])).unwrap());
        assert!(!c.is_simple_polynomial(&w(&[1, -1])).unwrap());
    }

    #[test]
    fn go_odd_decompose_precondition() {
        let c = ClassificationContext::new(build_go_odd(5).unwrap(), 3, 1).unwrap();
        assert_eq!(c.lift_multipliers(), &[1, 2]);
        // last lift digit 2 would need pairing 4 > 2
        let u2 = &c.datum().weight_lifts()[1].clone();
        assert!(c.decompose(&u2.scale(2)).unwrap_err().is_precondition());
        assert!(c.decompose(u2).is_ok());
    }

    #[test]
    fn enumerate_examples() {
        let got = gl(2, 2, 1).enumerate_pr().unwrap();
        assert_eq!(got, vec![w(&[0, 0]), w(&[1, 0]), w(&[1, 1]), w(&[2, 1])]);
        assert_eq!(gl(3, 2, 1).enumerate_pr().unwrap().len(), 8);
        let got = gl(1, 3, 1).enumerate_pr().unwrap();
        assert_eq!(got, vec![w(&[0]), w(&[1]), w(&[2])]);
        let levi = ClassificationContext::new(build_levi(&[1, 2]).unwrap(), 2, 1).unwrap();
        assert_eq!(levi.enumerate_pr().unwrap().len(), 8);
    }

    #[test]
    fn rank_one_phi_is_last_coordinate_for_gl() {
        let c = gl(3, 2, 1);
        assert_eq!(c.rank_one_phi(&w(&[5, 2, -1])).unwrap(), -1);
        let levi = ClassificationContext::new(build_levi(&[1, 2]).unwrap(), 2, 1).unwrap();
        assert!(matches!(levi.rank_one_phi(&w(&[0, 0, 0])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn witness_search_examples() {
        let c = gl(2, 2, 1);
        let found = c.weyl_orbit_witness_nonpolynomial(&w(&[1, 1]), &w(&[0, -1])).unwrap();
        assert!(found.unwrap().is_identity());
        assert_eq!(c.weyl_orbit_witness_nonpolynomial(&w(&[1, 0]), &w(&[2, 0])).unwrap(), None);
        assert!(c
            .weyl_orbit_witness_nonpolynomial(&w(&[3, 3]), &w(&[0, 0]))
            .unwrap_err()
            .is_precondition());
    }
}
