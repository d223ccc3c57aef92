//! The affine Weyl group `W ⋉ pZR`, its dot-action, orbit slices in boxes,
//! and the shift-bijection check for rank-one `X_0(T)`.

use crate::classify::ClassificationContext;
use crate::datum::GroupDatum;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{box_points, AmbientWeight, WeylElement};
use crate::linalg::Sublattice;

/// `(w, t)` with `t ∈ pZR`, acting by `λ ↦ w • λ + t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    w: WeylElement,
    translation: AmbientWeight,
    p: i64,
}

impl AffineElement {
    /// Checks that `translation` lies in `p` times the root lattice, modulo the
    /// kernel.
    pub fn new(w: WeylElement, translation: AmbientWeight, p: i64, g: &GroupDatum) -> Result<Self> {
        let n = g.ambient_dim();
        check_dim(n, w.degree())?;
        check_dim(n, translation.dim())?;
        if p < 2 {
            return Err(Error::InvalidParameter(format!("p = {p} must be at least 2")));
        }
        match g.root_coordinates(&translation)? {
            Some(c) if c.iter().all(|x| x % p == 0) => Ok(AffineElement { w, translation, p }),
            _ => Err(Error::InvalidParameter(format!(
                "translation {translation} is not in {p}ZR"
            ))),
        }
    }

    /// `(w, p Σ c_i α_i)`.
    pub fn from_root_coefficients(
        w: WeylElement,
        coeffs: &[i64],
        p: i64,
        g: &GroupDatum,
    ) -> Result<Self> {
        if coeffs.len() != g.simple_roots().len() {
            return Err(Error::DimensionMismatch {
                expected: g.simple_roots().len(),
                found: coeffs.len(),
            });
        }
        let t = g.root_combination(coeffs).scale(p);
        AffineElement::new(w, t, p, g)
    }

    pub fn identity(p: i64, g: &GroupDatum) -> Result<Self> {
        let n = g.ambient_dim();
        AffineElement::new(WeylElement::identity(n), AmbientWeight::zero(n), p, g)
    }

    pub fn w(&self) -> &WeylElement {
        &self.w
    }

    pub fn translation(&self) -> &AmbientWeight {
        &self.translation
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    /// `(w_1, t_1)(w_2, t_2) = (w_1 w_2, t_1 + w_1 t_2)`.
    pub fn compose(&self, other: &AffineElement) -> Result<AffineElement> {
        if self.p != other.p {
            return Err(Error::InvalidParameter("affine elements for different p".into()));
        }
        let t = &self.translation + &self.w.act(&other.translation)?;
        Ok(AffineElement {
            w: self.w.compose(&other.w),
            translation: t,
            p: self.p,
        })
    }
}

/// `w.ρ − ρ = (w(2ρ) − 2ρ)/2`, checked to lie in the root lattice.
pub fn rho_shift(w: &WeylElement, g: &GroupDatum) -> Result<AmbientWeight> {
    let two_rho = g.two_rho();
    let diff = &w.act(two_rho)? - two_rho;
    let coeffs = g
        .root_coordinates(&diff)?
        .ok_or_else(|| Error::Internal(format!("w(2ρ) − 2ρ = {diff} is not in ZR")))?;
    if coeffs.iter().any(|c| c % 2 != 0) {
        return Err(Error::Internal(format!("w(2ρ) − 2ρ = {diff} is not in 2ZR")));
    }
    let half: Vec<i64> = coeffs.iter().map(|c| c / 2).collect();
    Ok(g.root_combination(&half))
}

/// `(w, t) • λ = w.λ + w.ρ − ρ + t`.
pub fn dot_act(el: &AffineElement, lambda: &AmbientWeight, g: &GroupDatum) -> Result<AmbientWeight> {
    check_dim(g.ambient_dim(), lambda.dim())?;
    let moved = el.w.act(lambda)?;
    Ok(&(&moved + &rho_shift(&el.w, g)?) + &el.translation)
}

/// The part of `W_p • λ` visible in `[−box_radius, box_radius]^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSlice {
    pub base: AmbientWeight,
    pub p: i64,
    pub box_radius: i64,
    /// Sorted canonical representatives lying in the box.
    pub elements: Vec<AmbientWeight>,
}

/// Every canonical representative `μ` in the box with `μ ∈ W_p • λ`.
///
/// Membership is decided exactly: `μ` is in the orbit iff `μ − w • λ` lies in
/// `pZR` plus the kernel for some `w ∈ W`.
pub fn orbit_in_box(
    lambda: &AmbientWeight,
    p: i64,
    box_radius: i64,
    g: &GroupDatum,
) -> Result<OrbitSlice> {
    let n = g.ambient_dim();
    check_dim(n, lambda.dim())?;
    if p < 2 {
        return Err(Error::InvalidParameter(format!("p = {p} must be at least 2")));
    }
    if box_radius < 0 {
        return Err(Error::InvalidParameter("box radius must be non-negative".into()));
    }
    let mut rows: Vec<Vec<i64>> = g
        .simple_roots()
        .iter()
        .map(|a| a.scale(p).into_coords())
        .collect();
    rows.extend(g.lattice().kernel_basis().iter().map(|k| k.coords().to_vec()));
    let translations = Sublattice::new(&rows, n);
    let mut images = Vec::new();
    for w in g.weyl_elements()? {
        let img = &w.act_unchecked(lambda) + &rho_shift(w, g)?;
        images.push(translations.reduce(img.coords()));
    }
    images.sort();
    images.dedup();
    let lat = g.lattice();
    let mut elements = Vec::new();
    for mu in box_points(n, -box_radius, box_radius) {
        if lat.canonical_rep(&mu)? != mu {
            continue;
        }
        if images.binary_search(&translations.reduce(mu.coords())).is_ok() {
            elements.push(mu);
        }
    }
    Ok(OrbitSlice {
        base: lambda.clone(),
        p,
        box_radius,
        elements,
    })
}

/// `a = max_{w ∈ W} (φ(w • λ) mod p)` with the rank-one φ.
pub fn shift_bound_a(lambda: &AmbientWeight, ctx: &ClassificationContext) -> Result<i64> {
    ctx.require_rank_one()?;
    let g = ctx.datum();
    check_dim(g.ambient_dim(), lambda.dim())?;
    let p = ctx.p() as i64;
    let mut a = 0;
    for w in g.weyl_elements()? {
        let v = &w.act_unchecked(lambda) + &rho_shift(w, g)?;
        a = a.max(ctx.rank_one_phi(&v)?.rem_euclid(p));
    }
    Ok(a)
}

/// Outcome of [`check_shift_bijection`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCheck {
    pub holds: bool,
    /// First `μ` in the slice where `μ` and `μ + i b` disagree.
    pub counterexample: Option<AmbientWeight>,
    pub checked: usize,
    pub a: i64,
}

fn simple_or_false(ctx: &ClassificationContext, mu: &AmbientWeight) -> Result<bool> {
    match ctx.is_simple_polynomial(mu) {
        Err(e) if e.is_precondition() => Ok(false),
        other => other,
    }
}

/// Checks `μ ∈ P_r(D) + p^r P(D) ⟺ μ + i b ∈ P_r(D) + p^r P(D)` for every `μ`
/// in the orbit slice of `λ`, where `b` is the generator of `X_0(T)`.
///
/// Requires `λ ∈ P_r(D) + p^r P(D)` and `1 ≤ i ≤ p − a − 1`; `i = 0` is
/// accepted and trivially true.
pub fn check_shift_bijection(
    lambda: &AmbientWeight,
    i: i64,
    ctx: &ClassificationContext,
    box_radius: i64,
) -> Result<ShiftCheck> {
    ctx.require_rank_one()?;
    let a = shift_bound_a(lambda, ctx)?;
    if i == 0 {
        return Ok(ShiftCheck {
            holds: true,
            counterexample: None,
            checked: 0,
            a,
        });
    }
    if !simple_or_false(ctx, lambda)? {
        return Err(Error::Precondition(format!("{lambda} is not in P_r(D) + p^r P(D)")));
    }
    let p = ctx.p() as i64;
    if i < 1 || i > p - a - 1 {
        return Err(Error::Precondition(format!(
            "shift i = {i} outside 1..={} (a = {a})",
            p - a - 1
        )));
    }
    shift_pointwise(lambda, i, ctx, box_radius).map(|mut s| {
        s.a = a;
        s
    })
}

/// The pointwise comparison of [`check_shift_bijection`] without its range
/// checks, for probing shifts outside the admissible range.
pub fn shift_pointwise(
    lambda: &AmbientWeight,
    i: i64,
    ctx: &ClassificationContext,
    box_radius: i64,
) -> Result<ShiftCheck> {
    ctx.require_rank_one()?;
    let g = ctx.datum();
    let b = &g.d()[0];
    let slice = orbit_in_box(lambda, ctx.p() as i64, box_radius, g)?;
    for mu in &slice.elements {
        let lhs = simple_or_false(ctx, mu)?;
        let rhs = simple_or_false(ctx, &mu.add_scaled(i, b))?;
        if lhs != rhs {
            return Ok(ShiftCheck {
                holds: false,
                counterexample: Some(mu.clone()),
                checked: slice.elements.len(),
                a: shift_bound_a(lambda, ctx)?,
            });
        }
    }
    Ok(ShiftCheck {
        holds: true,
        counterexample: None,
        checked: slice.elements.len(),
        a: shift_bound_a(lambda, ctx)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{build_gl, build_go_odd, build_gsp, build_levi};

    fn w(v: &[i64]) -> AmbientWeight {
        AmbientWeight::new(v.to_vec())
    }

    #[test]
    fn dot_act_examples() {
        let g = build_gl(2).unwrap();
        let id = AffineElement::identity(2, &g).unwrap();
        assert_eq!(dot_act(&id, &w(&[4, -7]), &g).unwrap(), w(&[4, -7]));
        let s = AffineElement::new(WeylElement::transposition(2, 0, 1), w(&[0, 0]), 2, &g).unwrap();
        assert_eq!(dot_act(&s, &w(&[1, 0]), &g).unwrap(), w(&[-1, 2]));
        let t = AffineElement::from_root_coefficients(WeylElement::identity(2), &[1], 2, &g).unwrap();
        assert_eq!(t.translation(), &w(&[2, -2]));
        assert_eq!(dot_act(&t, &w(&[1, 0]), &g).unwrap(), w(&[3, -2]));
    }

    #[test]
    fn translations_must_lie_in_p_root_lattice() {
        let g = build_gl(2).unwrap();
        let id = WeylElement::identity(2);
        assert!(AffineElement::new(id.clone(), w(&[1, -1]), 2, &g).is_err());
        assert!(AffineElement::new(id.clone(), w(&[2, 0]), 2, &g).is_err());
        assert!(AffineElement::new(id, w(&[3, -3]), 3, &g).is_ok());
        // modulo the kernel for gsp
        let gsp = build_gsp(4).unwrap();
        let t = &w(&[2, -2, 0, 0]) + &w(&[1, -1, -1, 1]);
        assert!(AffineElement::new(WeylElement::identity(4), t, 2, &gsp).is_ok());
    }

    #[test]
    fn rho_shift_in_root_lattice_for_all_w() {
        for g in [
            build_gl(3).unwrap(),
            build_gsp(4).unwrap(),
            build_go_odd(5).unwrap(),
            build_levi(&[2, 2]).unwrap(),
        ] {
            for el in g.weyl_elements().unwrap() {
                rho_shift(el, &g).unwrap();
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let g1 = build_gl(1).unwrap();
        let s = orbit_in_box(&w(&[2]), 3, 5, &g1).unwrap();
        assert_eq!(s.elements, vec![w(&[2])]);
        let s = orbit_in_box(&w(&[7]), 3, 5, &g1).unwrap();
        assert!(s.elements.is_empty());

        let g = build_gl(2).unwrap();
        let s = orbit_in_box(&w(&[1, 0]), 2, 4, &g).unwrap();
        let mut expected = Vec::new();
        for k in -4..=4 {
            for base in [w(&[1, 0]), w(&[-1, 2])] {
                let v = base.add_scaled(2 * k, &w(&[1, -1]));
                if v.coords().iter().all(|x| x.abs() <= 4) {
                    expected.push(v);
                }
            }
        }
        expected.sort_by(|a, b| a.coords().cmp(b.coords()));
        expected.dedup();
        assert_eq!(s.elements, expected);
    }

    #[test]
    fn shift_bound_examples() {
        let ctx = ClassificationContext::new(build_gl(2).unwrap(), 2, 1).unwrap();
        assert_eq!(shift_bound_a(&w(&[1, 0]), &ctx).unwrap(), 0);
        let ctx1 = ClassificationContext::new(build_gl(1).unwrap(), 5, 1).unwrap();
        for x in -6..6 {
            assert_eq!(shift_bound_a(&w(&[x]), &ctx1).unwrap(), x.rem_euclid(5));
        }
        let levi = ClassificationContext::new(build_levi(&[1, 1]).unwrap(), 2, 1).unwrap();
        assert!(matches!(shift_bound_a(&w(&[0, 0]), &levi), Err(Error::Unsupported(_))));
    }

    #[test]
    fn shift_bijection_examples() {
        let ctx = ClassificationContext::new(build_gl(2).unwrap(), 2, 1).unwrap();
        let r = check_shift_bijection(&w(&[1, 0]), 1, &ctx, 4).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(check_shift_bijection(&w(&[1, 0]), 0, &ctx, 4).unwrap().holds);
        assert!(check_shift_bijection(&w(&[1, 0]), 2, &ctx, 4)
            .unwrap_err()
            .is_precondition());
        assert!(check_shift_bijection(&w(&[1, -1]), 1, &ctx, 4)
            .unwrap_err()
            .is_precondition());
    }
}
