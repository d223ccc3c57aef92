//! The `GO_8` weight for which the additivity witness of φ cannot exist.
//!
//! With `q = p^r` and `4 | q − 1`, take
//! `λ_0 = ((q−1)/2, …, (q−1)/2, (q−1)/4, …, (q−1)/4)` and
//! `λ̃ = (0, 0, 0, 0, 1, 1, −1, 1)` in the torus of connected `GO_8`. Then
//! `λ_0 ∈ P_r(D)` and `φ(λ̃) = −1`, yet `w.λ_0 + q λ̃` stays polynomial for
//! every `w ∈ W`.

use crate::arith;
use crate::classify::weyl_orbit_witness_nonpolynomial;
use crate::datum::build_go_even;
use crate::error::{Error, Result};
use crate::lattice::{AmbientWeight, WeylElement};
use crate::phi::{phi_ambient, PhiData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Go8Report {
    pub prpower: i64,
    pub lambda0: AmbientWeight,
    pub lambda_tilde: AmbientWeight,
    pub phi_lambda0: i64,
    pub phi_lambda0_minus_qd: i64,
    pub phi_lambda_tilde: i64,
    pub weyl_order: u128,
    pub witness: Option<WeylElement>,
}

/// Runs the `GO_8` scenario for `q = p^r`. Fails with a precondition error
/// unless `q` is a prime power with `4 | q − 1`.
pub fn go8(q: i64) -> Result<Go8Report> {
    let prime_power = q >= 2 && arith::as_prime_power(q as u64).is_some();
    if !prime_power || (q - 1) % 4 != 0 {
        return Err(Error::Precondition(format!(
            "p^r = {q} must be a prime power with 4 | p^r − 1"
        )));
    }
    let g = build_go_even(8)?;
    let (h, k) = ((q - 1) / 2, (q - 1) / 4);
    let lambda0 = AmbientWeight::new(vec![h, h, h, h, k, k, k, k]);
    let lambda_tilde = AmbientWeight::new(vec![0, 0, 0, 0, 1, 1, -1, 1]);
    let data = PhiData::from_datum(&g);
    let phi1 = |v: &AmbientWeight| phi_ambient(v, &data).map(|x| x[0]);
    let d = &g.d()[0];
    Ok(Go8Report {
        prpower: q,
        phi_lambda0: phi1(&lambda0)?,
        phi_lambda0_minus_qd: phi1(&lambda0.add_scaled(-q, d))?,
        phi_lambda_tilde: phi1(&lambda_tilde)?,
        weyl_order: g.weyl_order(),
        witness: weyl_orbit_witness_nonpolynomial(&g, q, &lambda0, &lambda_tilde)?,
        lambda0,
        lambda_tilde,
    })
}
