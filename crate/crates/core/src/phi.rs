//! The φ-function `X(T) → Z^l` and finite certification of its defining
//! properties.
//!
//! For a datum with blocks `M_i` and coefficients `n_ij`,
//! `φ_j(λ) = Σ_i n_ij · min{λ_a | a ∈ M_i}`. A class is polynomial exactly
//! when every component of φ is non-negative.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::arith;
use crate::datum::{GroupDatum, Hypothesis};
use crate::error::{check_dim, Error, Result};
use crate::lattice::{box_points, AmbientWeight, WeylElement};
use crate::permgroup::ENUMERATION_CAP;

/// Blocks and coefficients defining φ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiData {
    dim: usize,
    blocks: Vec<Vec<usize>>,
    n_matrix: Vec<Vec<i64>>,
    target_rank: usize,
}

impl PhiData {
    /// Checks that the blocks partition `0..dim` and that `n_matrix` is a
    /// non-negative `s × target_rank` matrix.
    pub fn new(
        dim: usize,
        blocks: Vec<Vec<usize>>,
        n_matrix: Vec<Vec<i64>>,
        target_rank: usize,
    ) -> Result<Self> {
        if n_matrix.len() != blocks.len() || n_matrix.iter().any(|r| r.len() != target_rank) {
            return Err(Error::InvalidParameter("n_matrix must be blocks × target_rank".into()));
        }
        if n_matrix.iter().flatten().any(|&x| x < 0) {
            return Err(Error::InvalidParameter("n_matrix entries must be non-negative".into()));
        }
        let mut seen = vec![false; dim];
        for &j in blocks.iter().flatten() {
            if j >= dim || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidParameter("blocks must partition the indices".into()));
            }
        }
        if seen.contains(&false) || blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::InvalidParameter("blocks must partition the indices".into()));
        }
        Ok(PhiData {
            dim,
            blocks,
            n_matrix,
            target_rank,
        })
    }

    /// The φ-data of a datum, without consulting its validation report.
    /// Data whose blocks do not partition the indices still evaluate: empty
    /// blocks contribute nothing.
    pub fn from_datum(g: &GroupDatum) -> Self {
        PhiData {
            dim: g.ambient_dim(),
            blocks: g.blocks().to_vec(),
            n_matrix: g.n_matrix().to_vec(),
            target_rank: g.x0_rank(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n_matrix(&self) -> &[Vec<i64>] {
        &self.n_matrix
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }
}

/// Evaluates `φ` on an ambient vector.
pub fn phi_ambient(lambda: &AmbientWeight, data: &PhiData) -> Result<Vec<i64>> {
    check_dim(data.dim, lambda.dim())?;
    let mut out = vec![0i64; data.target_rank];
    for (block, row) in data.blocks.iter().zip(&data.n_matrix) {
        let Some(m) = block.iter().map(|&a| lambda[a]).min() else {
            continue;
        };
        for (o, &c) in out.iter_mut().zip(row) {
            *o += c * m;
        }
    }
    Ok(out)
}

/// `φ` on the class of `λ`. Requires every hypothesis of the datum to hold,
/// which makes the value independent of the representative.
pub fn phi(lambda: &AmbientWeight, g: &GroupDatum) -> Result<Vec<i64>> {
    require_valid(g)?;
    phi_ambient(lambda, &PhiData::from_datum(g))
}

pub(crate) fn require_valid(g: &GroupDatum) -> Result<()> {
    match g.report().failed().first() {
        Some(&h) => Err(Error::HypothesisFailed(h)),
        None => Ok(()),
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A `w ∈ W` with `φ(w.λ + λ′) = φ(λ) + φ(λ′)`.
///
/// Built blockwise: inside each block the position of the minimum of `λ` is
/// swapped onto a position where `λ′` is minimal. If that ever fails the
/// search falls back to all of `S_{M_1} × … × S_{M_s}`.
pub fn find_witness_w(
    lambda: &AmbientWeight,
    lambda2: &AmbientWeight,
    g: &GroupDatum,
) -> Result<WeylElement> {
    if !g.report().c_lower {
        return Err(Error::HypothesisFailed(Hypothesis::CLower));
    }
    let n = g.ambient_dim();
    check_dim(n, lambda.dim())?;
    check_dim(n, lambda2.dim())?;
    witness_with(lambda, lambda2, g, &PhiData::from_datum(g))
}

fn witness_with(
    lambda: &AmbientWeight,
    lambda2: &AmbientWeight,
    g: &GroupDatum,
    data: &PhiData,
) -> Result<WeylElement> {
    let n = g.ambient_dim();
    let target = add(&phi_ambient(lambda, data)?, &phi_ambient(lambda2, data)?);
    let works = |w: &WeylElement| -> bool {
        let v = &w.act_unchecked(lambda) + lambda2;
        phi_ambient(&v, data).map(|x| x == target).unwrap_or(false)
    };

    let argmin = |v: &AmbientWeight, block: &[usize]| block.iter().copied().min_by_key(|&a| v[a]);
    let mut swaps = Vec::new();
    for block in g.blocks() {
        if let (Some(a), Some(b)) = (argmin(lambda, block), argmin(lambda2, block)) {
            if a != b {
                swaps.push((a, b));
            }
        }
    }
    let w = WeylElement::product_of_transpositions(n, &swaps);
    if works(&w) {
        return Ok(w);
    }

    let size: u128 = g
        .blocks()
        .iter()
        .map(|b| (1..=b.len() as u128).product::<u128>())
        .product();
    if size > ENUMERATION_CAP as u128 {
        return Err(Error::EnumerationCap {
            size,
            cap: ENUMERATION_CAP,
        });
    }
    block_permutations(n, g.blocks())
        .into_iter()
        .find(|w| works(w))
        .ok_or_else(|| Error::Internal(format!("no witness for {lambda} and {lambda2}")))
}

/// All elements of `S_{M_1} × … × S_{M_s}`.
fn block_permutations(n: usize, blocks: &[Vec<usize>]) -> Vec<WeylElement> {
    use itertools::Itertools;
    let mut out = vec![(0..n).collect::<Vec<usize>>()];
    for block in blocks {
        let perms: Vec<Vec<usize>> = block.iter().copied().permutations(block.len()).collect();
        out = out
            .into_iter()
            .cartesian_product(perms)
            .map(|(mut images, perm)| {
                for (&src, &dst) in block.iter().zip(&perm) {
                    images[src] = dst;
                }
                images
            })
            .collect();
    }
    out.into_iter()
        .map(|im| WeylElement::from_images(im).expect("block permutation"))
        .collect()
}

/// Whether a kernel element is constant on every block.
pub fn kernel_block_constancy(mu: &AmbientWeight, g: &GroupDatum) -> Result<bool> {
    if !g.lattice().in_kernel(mu)? {
        return Err(Error::NotInKernel(mu.to_string()));
    }
    Ok(g
        .blocks()
        .iter()
        .all(|block| block.iter().all(|&a| mu[a] == mu[block[0]])))
}

/// Result of one certified property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass { cases: u64 },
    Fail { witness: Vec<AmbientWeight>, detail: String },
    Skipped { reason: String },
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass { .. })
    }
}

/// Verdicts for the four properties of φ on a box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssumptionReport {
    pub datum: String,
    pub p: u64,
    pub r: u32,
    pub box_radius: i64,
    /// (1) `φ(λ) ≥ 0` iff `λ ∈ P(D)`.
    pub polynomiality: Outcome,
    /// (2) `φ(p^r λ) = p^r φ(λ)`.
    pub homogeneity: Outcome,
    /// (3) a `w` with `φ(w.λ + λ′) = φ(λ) + φ(λ′)` exists.
    pub witness: Outcome,
    /// (4) `φ` restricts to `Σ c_j d_j ↦ c` on `X_0(T)`.
    pub x0_bijection: Outcome,
}

impl AssumptionReport {
    pub fn properties(&self) -> [(&'static str, &Outcome); 4] {
        [
            ("polynomiality", &self.polynomiality),
            ("homogeneity", &self.homogeneity),
            ("witness", &self.witness),
            ("x0_bijection", &self.x0_bijection),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.properties().iter().all(|(_, o)| o.passed())
    }
}

/// Radius used when none is given: 2 for `n ≥ 5`, 3 otherwise.
pub fn default_box_radius(n: usize) -> i64 {
    if n >= 5 {
        2
    } else {
        3
    }
}

/// Whether some representative `λ + Σ t_k κ_k` with `|t_k| ≤ window` has only
/// non-negative coordinates. Does not use φ.
pub fn has_nonnegative_representative(
    lambda: &AmbientWeight,
    kernel: &[AmbientWeight],
    window: i64,
) -> bool {
    let n = lambda.dim();
    // Coordinate j is final once every kernel vector touching it is chosen.
    let last: Vec<Option<usize>> = (0..n)
        .map(|j| (0..kernel.len()).rev().find(|&k| kernel[k][j] != 0))
        .collect();
    fn go(
        depth: usize,
        cur: &mut Vec<i64>,
        kernel: &[AmbientWeight],
        last: &[Option<usize>],
        window: i64,
    ) -> bool {
        let fixed_negative = cur
            .iter()
            .zip(last)
            .any(|(&x, l)| x < 0 && l.is_none_or(|l| l < depth));
        if fixed_negative {
            return false;
        }
        if depth == kernel.len() {
            return true;
        }
        let kappa = kernel[depth].coords();
        for t in -window..=window {
            for (c, &k) in cur.iter_mut().zip(kappa) {
                *c += t * k;
            }
            let ok = go(depth + 1, cur, kernel, last, window);
            for (c, &k) in cur.iter_mut().zip(kappa) {
                *c -= t * k;
            }
            if ok {
                return true;
            }
        }
        false
    }
    let mut cur = lambda.coords().to_vec();
    go(0, &mut cur, kernel, &last, window)
}

/// Certifies the four properties of φ over all `λ, λ′` in
/// `[−box_radius, box_radius]^n`.
///
/// Every datum is accepted. φ is evaluated on ambient vectors, and property
/// (3) is skipped when the block symmetric groups are not inside `W`.
pub fn check_assumption(g: &GroupDatum, p: u64, r: u32, box_radius: i64) -> Result<AssumptionReport> {
    let q = arith::prime_power(p, r)?;
    if box_radius < 0 {
        return Err(Error::InvalidParameter("box radius must be non-negative".into()));
    }
    let n = g.ambient_dim();
    let data = PhiData::from_datum(g);
    let pts: Vec<AmbientWeight> = box_points(n, -box_radius, box_radius).collect();
    let phi = |v: &AmbientWeight| phi_ambient(v, &data).expect("dimension checked");

    // (1)
    let kernel = g.lattice().kernel_basis();
    let spread = kernel
        .iter()
        .map(|k| k.coords().iter().max().unwrap() - k.coords().iter().min().unwrap())
        .max()
        .unwrap_or(0);
    let window = spread + box_radius;
    let bad = pts.par_iter().find_first(|v| {
        let by_phi = phi(v).iter().all(|&x| x >= 0);
        let by_oracle = if kernel.is_empty() {
            v.coords().iter().all(|&x| x >= 0)
        } else {
            has_nonnegative_representative(v, kernel, window)
        };
        by_phi != by_oracle
    });
    let polynomiality = match bad {
        None => Outcome::Pass { cases: pts.len() as u64 },
        Some(v) => Outcome::Fail {
            witness: vec![v.clone()],
            detail: "sign of φ disagrees with the non-negative representative search".into(),
        },
    };

    // (2)
    let bad = pts.par_iter().find_first(|v| {
        let lhs = phi(&v.scale(q));
        let rhs: Vec<i64> = phi(v).iter().map(|x| q * x).collect();
        lhs != rhs
    });
    let homogeneity = match bad {
        None => Outcome::Pass { cases: pts.len() as u64 },
        Some(v) => Outcome::Fail {
            witness: vec![v.clone()],
            detail: format!("φ({q}λ) ≠ {q}φ(λ)"),
        },
    };

    // (3)
    let witness = if !g.report().c_lower {
        Outcome::Skipped {
            reason: "hypothesis (c) fails".into(),
        }
    } else {
        let listed: Option<HashSet<&WeylElement>> =
            g.weyl_elements().ok().map(|ws| ws.iter().collect());
        let in_w = |w: &WeylElement| match &listed {
            Some(set) => set.contains(w),
            None => g.weyl_contains(w),
        };
        let bad = pts.par_iter().find_map_first(|v| {
            pts.iter().find_map(|v2| {
                let ok = match witness_with(v, v2, g, &data) {
                    Ok(w) => in_w(&w),
                    Err(_) => false,
                };
                (!ok).then(|| vec![v.clone(), v2.clone()])
            })
        });
        match bad {
            None => Outcome::Pass {
                cases: (pts.len() as u64).pow(2),
            },
            Some(witness) => Outcome::Fail {
                witness,
                detail: "no Weyl element realizes additivity".into(),
            },
        }
    };

    // (4)
    let ds = g.d();
    let l = ds.len();
    let mut cases = 0u64;
    let mut failure = None;
    for c in box_points(l, -box_radius, box_radius) {
        cases += 1;
        let v = c
            .coords()
            .iter()
            .zip(&ds)
            .fold(AmbientWeight::zero(n), |acc, (&k, d)| acc.add_scaled(k, d));
        if phi(&v) != c.coords() {
            failure = Some((v, "φ(Σ c_j d_j) ≠ c".to_string()));
            break;
        }
    }
    if failure.is_none() {
        for v in &pts {
            if !g.in_x0(v)? {
                continue;
            }
            cases += 1;
            let back = phi(v)
                .iter()
                .zip(&ds)
                .fold(AmbientWeight::zero(n), |acc, (&k, d)| acc.add_scaled(k, d));
            if !g.lattice().equal_mod_kernel(v, &back)? {
                failure = Some((v.clone(), "λ ∈ X_0 is not Σ φ(λ)_j d_j".to_string()));
                break;
            }
        }
    }
    let x0_bijection = match failure {
        None => Outcome::Pass { cases },
        Some((v, detail)) => Outcome::Fail {
            witness: vec![v],
            detail,
        },
    };

    Ok(AssumptionReport {
        datum: g.label().to_string(),
        p,
        r,
        box_radius,
        polynomiality,
        homogeneity,
        witness,
        x0_bijection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{build_gl, build_go_even, build_go_odd, build_gsp, build_levi};

    fn w(v: &[i64]) -> AmbientWeight {
        AmbientWeight::new(v.to_vec())
    }

    #[test]
    fn phi_ambient_examples() {
        let gl3 = build_gl(3).unwrap();
        assert_eq!(phi_ambient(&w(&[1, 1, 1]), &PhiData::from_datum(&gl3)).unwrap(), vec![1]);
        let gsp4 = build_gsp(4).unwrap();
        assert_eq!(phi(&w(&[1, 2, 0, 1]), &gsp4).unwrap(), vec![1]);
        let go5 = build_go_odd(5).unwrap();
        assert_eq!(phi(&w(&[1, 0, 2, 1, 3]), &go5).unwrap(), vec![4]);
        assert!(phi_ambient(&w(&[1, 1]), &PhiData::from_datum(&gl3)).is_err());
    }

    #[test]
    fn phi_examples() {
        let gsp4 = build_gsp(4).unwrap();
        assert_eq!(
            phi(&w(&[2, 0, -1, 2]), &gsp4).unwrap(),
            phi(&w(&[1, 1, 0, 1]), &gsp4).unwrap()
        );
        assert_eq!(phi(&w(&[2, 0, -1, 2]), &gsp4).unwrap(), vec![1]);
        assert_eq!(phi(&AmbientWeight::zero(4), &gsp4).unwrap(), vec![0]);
        assert_eq!(phi(&w(&[3, 1]), &build_gl(2).unwrap()).unwrap(), vec![1]);
        assert_eq!(
            phi(&AmbientWeight::zero(8), &build_go_even(8).unwrap()),
            Err(Error::HypothesisFailed(Hypothesis::CLower))
        );
    }

    #[test]
    fn phi_data_rejects_bad_input() {
        assert!(PhiData::new(2, vec![vec![0, 1]], vec![vec![-1]], 1).is_err());
        assert!(PhiData::new(3, vec![vec![0, 1]], vec![vec![1]], 1).is_err());
        assert!(PhiData::new(2, vec![vec![0, 1], vec![1]], vec![vec![1], vec![1]], 1).is_err());
        assert!(PhiData::new(2, vec![vec![0, 1]], vec![vec![1]], 1).is_ok());
    }

    #[test]
    fn witness_examples() {
        let gl2 = build_gl(2).unwrap();
        let w0 = find_witness_w(&w(&[0, 5]), &w(&[7, 1]), &gl2).unwrap();
        assert_eq!(w0, WeylElement::transposition(2, 0, 1));
        let id = find_witness_w(&w(&[0, 5]), &w(&[2, 2]), &gl2).unwrap();
        assert!(id.is_identity());

        let gsp4 = build_gsp(4).unwrap();
        let (a, b) = (w(&[3, 0, 2, 1]), w(&[0, 4, 1, 2]));
        let wit = find_witness_w(&a, &b, &gsp4).unwrap();
        let lhs = phi(&(&wit.act(&a).unwrap() + &b), &gsp4).unwrap();
        assert_eq!(lhs, add(&phi(&a, &gsp4).unwrap(), &phi(&b, &gsp4).unwrap()));
        // the exhaustive route agrees that some block permutation works
        let exhaustive = block_permutations(4, gsp4.blocks());
        assert_eq!(exhaustive.len(), 4);
        assert!(exhaustive.contains(&wit));

        let go8 = build_go_even(8).unwrap();
        assert_eq!(
            find_witness_w(&AmbientWeight::zero(8), &AmbientWeight::zero(8), &go8),
            Err(Error::HypothesisFailed(Hypothesis::CLower))
        );
    }

    #[test]
    fn kernel_constancy_examples() {
        let gsp4 = build_gsp(4).unwrap();
        assert!(kernel_block_constancy(&w(&[1, -1, -1, 1]), &gsp4).unwrap());
        assert!(kernel_block_constancy(&AmbientWeight::zero(4), &gsp4).unwrap());
        assert!(matches!(
            kernel_block_constancy(&w(&[1, 0, 0, 0]), &gsp4),
            Err(Error::NotInKernel(_))
        ));
        let go5 = build_go_odd(5).unwrap();
        for k in go5.lattice().kernel_basis() {
            assert!(kernel_block_constancy(k, &go5).unwrap());
        }
    }

    #[test]
    fn nonnegative_representative_search() {
        let kappa = [w(&[1, -1, -1, 1])];
        assert!(!has_nonnegative_representative(&w(&[-1, 2, 0, 2]), &kappa, 5));
        assert!(has_nonnegative_representative(&w(&[-1, 2, 1, 2]), &kappa, 5));
        assert!(has_nonnegative_representative(&w(&[0, 0]), &[], 0));
    }

    #[test]
    fn assumption_small_cases() {
        let r = check_assumption(&build_gl(2).unwrap(), 2, 1, 3).unwrap();
        assert!(r.all_pass(), "{r:?}");
        let r = check_assumption(&build_gsp(4).unwrap(), 2, 1, 2).unwrap();
        assert!(r.all_pass(), "{r:?}");
        let r = check_assumption(&build_levi(&[1, 2]).unwrap(), 3, 1, 2).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(check_assumption(&build_gl(2).unwrap(), 4, 1, 1).is_err());
    }

    #[test]
    fn assumption_go_even_skips_witness() {
        let r = check_assumption(&build_go_even(8).unwrap(), 5, 1, 1).unwrap();
        assert_eq!(
            r.witness,
            Outcome::Skipped {
                reason: "hypothesis (c) fails".into()
            }
        );
        assert!(r.polynomiality.passed());
        assert!(r.homogeneity.passed());
        assert!(r.x0_bijection.passed());
        assert!(!r.all_pass());
    }
}
