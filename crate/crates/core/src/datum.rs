//! Per-family group data and the validation of the hypotheses under which a
//! φ-function exists.
//!
//! A [`GroupDatum`] describes a reductive `G ⊆ GL_n` through its diagonal
//! torus: the quotient lattice `X(T)`, simple roots and coroots, a
//! permutation realization of `W`, and the blocks `M_i` with their 0/1
//! weights `b_i`, of which some are the distinguished `d_j`. Indices are
//! 0-based throughout; for the similitude families the mirror of `i` is
//! `n − 1 − i`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{check_dim, Error, Result};
use crate::lattice::{dot, pair, AmbientWeight, Covector, QuotientLattice, WeylElement};
use crate::linalg;
use crate::permgroup::{self, StabilizerChain, ENUMERATION_CAP};

/// The supported group families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `GL_n`.
    Gl,
    /// Symplectic similitude group `GSp_2l`.
    Gsp,
    /// Connected odd orthogonal similitude group `GO_{2l+1}`.
    GoOdd,
    /// Connected even orthogonal similitude group `GO_{2l}`.
    GoEven,
    /// Levi subgroup `GL_{n_1} × … × GL_{n_k}`.
    Levi,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gl => "gl",
            Family::Gsp => "gsp",
            Family::GoOdd => "go_odd",
            Family::GoEven => "go_even",
            Family::Levi => "levi",
        })
    }
}

/// A parsed group spec: `gl:N`, `gsp:N`, `go:N`, or `levi:N1,N2,…`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Gl(usize),
    Gsp(usize),
    Go(usize),
    Levi(Vec<usize>),
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad group spec {s:?}"));
        let (kind, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match kind.trim() {
            "gl" => Ok(GroupSpec::Gl(num(arg)?)),
            "gsp" => Ok(GroupSpec::Gsp(num(arg)?)),
            "go" => Ok(GroupSpec::Go(num(arg)?)),
            "levi" => Ok(GroupSpec::Levi(
                arg.split(',').map(num).collect::<Result<Vec<_>>>()?,
            )),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Gl(n) => write!(f, "gl:{n}"),
            GroupSpec::Gsp(n) => write!(f, "gsp:{n}"),
            GroupSpec::Go(n) => write!(f, "go:{n}"),
            GroupSpec::Levi(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "levi:{}", parts.join(","))
            }
        }
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupDatum> {
        match self {
            GroupSpec::Gl(n) => build_gl(*n),
            GroupSpec::Gsp(n) => build_gsp(*n),
            GroupSpec::Go(n) if n % 2 == 1 => build_go_odd(*n),
            GroupSpec::Go(n) => build_go_even(*n),
            GroupSpec::Levi(parts) => build_levi(parts),
        }
    }
}

/// The hypotheses checked by [`validate_datum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    /// (a) every `b_i` has 0/1 coordinates.
    A,
    /// (b) the supports `M_i` partition the index set.
    B,
    /// (c), lower half: `S_{M_1} × … × S_{M_s} ⊆ W`.
    CLower,
    /// (c), upper half: `W` acts through `S_n`.
    CUpper,
    /// (d) the `d_j` restrict to a basis of `X_0(T)`, each `b_i` restricts to
    /// `X_0(T)` and is a non-negative combination of the `d_j`.
    D,
    /// `W` preserves the kernel, so restriction is `W`-equivariant.
    Equivariance,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::A => "(a) 0/1 coordinates",
            Hypothesis::B => "(b) blocks partition the indices",
            Hypothesis::CLower => "(c-lower) block symmetric groups contained in W",
            Hypothesis::CUpper => "(c-upper) W acts by permutations",
            Hypothesis::D => "(d) distinguished weights form a basis of X_0",
            Hypothesis::Equivariance => "W-equivariance of restriction",
        })
    }
}

/// A single failed check, with enough detail to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonBinaryCoordinate { block: usize, index: usize, value: i64 },
    BlockSupportMismatch { block: usize },
    IndexCoveredTwice { index: usize },
    IndexUncovered { index: usize },
    MissingTransposition { witness: WeylElement },
    BadGenerator { generator: usize },
    BNotInX0 { block: usize },
    DistinguishedDependent,
    NotX0Basis,
    BadDIndex { index: usize },
    NegativeCoefficient { block: usize, column: usize },
    CoefficientMismatch { block: usize },
    KernelNotPreserved { generator: usize },
}

impl Violation {
    pub fn hypothesis(&self) -> Hypothesis {
        use Violation::*;
        match self {
            NonBinaryCoordinate { .. } => Hypothesis::A,
            BlockSupportMismatch { .. } | IndexCoveredTwice { .. } | IndexUncovered { .. } => {
                Hypothesis::B
            }
            MissingTransposition { .. } => Hypothesis::CLower,
            BadGenerator { .. } => Hypothesis::CUpper,
            BNotInX0 { .. }
            | DistinguishedDependent
            | NotX0Basis
            | BadDIndex { .. }
            | NegativeCoefficient { .. }
            | CoefficientMismatch { .. } => Hypothesis::D,
            KernelNotPreserved { .. } => Hypothesis::Equivariance,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NonBinaryCoordinate { block, index, value } => write!(
                f,
                "b_{} has coordinate {} at index {}",
                block + 1,
                value,
                index + 1
            ),
            BlockSupportMismatch { block } => {
                write!(f, "block M_{} is not the support of b_{}", block + 1, block + 1)
            }
            IndexCoveredTwice { index } => write!(f, "index {} lies in two blocks", index + 1),
            IndexUncovered { index } => write!(f, "index {} lies in no block", index + 1),
            MissingTransposition { witness } => {
                write!(f, "transposition {witness} is not in W")
            }
            BadGenerator { generator } => {
                write!(f, "Weyl generator {} is not a permutation of the indices", generator + 1)
            }
            BNotInX0 { block } => write!(f, "b_{} does not restrict into X_0(T)", block + 1),
            DistinguishedDependent => write!(f, "restrictions of the d_j are dependent"),
            NotX0Basis => write!(f, "the d_j do not span X_0(T) over Z"),
            BadDIndex { index } => write!(f, "d index {} does not name a block", index + 1),
            NegativeCoefficient { block, column } => write!(
                f,
                "n_{{{},{}}} is negative",
                block + 1,
                column + 1
            ),
            CoefficientMismatch { block } => write!(
                f,
                "restriction of b_{} differs from its stated combination of the d_j",
                block + 1
            ),
            KernelNotPreserved { generator } => {
                write!(f, "Weyl generator {} does not preserve the kernel", generator + 1)
            }
        }
    }
}

/// Per-hypothesis verdicts for a datum, plus the violations found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub a: bool,
    pub b: bool,
    pub c_lower: bool,
    pub c_upper: bool,
    pub d: bool,
    pub equivariance: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn all_hold(&self) -> bool {
        self.a && self.b && self.c_lower && self.c_upper && self.d && self.equivariance
    }

    pub fn holds(&self, h: Hypothesis) -> bool {
        match h {
            Hypothesis::A => self.a,
            Hypothesis::B => self.b,
            Hypothesis::CLower => self.c_lower,
            Hypothesis::CUpper => self.c_upper,
            Hypothesis::D => self.d,
            Hypothesis::Equivariance => self.equivariance,
        }
    }

    pub fn failed(&self) -> Vec<Hypothesis> {
        [
            Hypothesis::A,
            Hypothesis::B,
            Hypothesis::CLower,
            Hypothesis::CUpper,
            Hypothesis::D,
            Hypothesis::Equivariance,
        ]
        .into_iter()
        .filter(|&h| !self.holds(h))
        .collect()
    }
}

/// The raw fields of a datum. Building a [`GroupDatum`] from parts checks only
/// shapes and dimensions; the mathematical hypotheses are judged by
/// [`validate_datum`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumParts {
    pub family: Family,
    pub label: String,
    pub lattice: QuotientLattice,
    pub blocks: Vec<Vec<usize>>,
    pub b: Vec<AmbientWeight>,
    pub d_indices: Vec<usize>,
    /// `n_matrix[i][j]` is the coefficient of `d_j` in the restriction of `b_i`.
    pub n_matrix: Vec<Vec<i64>>,
    pub simple_roots: Vec<AmbientWeight>,
    pub simple_coroots: Vec<Covector>,
    pub weyl_generators: Vec<WeylElement>,
    /// Twice the half-sum of the positive roots.
    pub two_rho: AmbientWeight,
    /// Lifts of a basis of `X(T)/X_0(T)`, normalized to be polynomial with
    /// `u − d` not polynomial. For `gl`, `gsp` and `levi` these are lifts of
    /// the fundamental weights.
    pub weight_lifts: Vec<AmbientWeight>,
}

/// An immutable, validated-on-construction group datum.
#[derive(Debug, Clone)]
pub struct GroupDatum {
    parts: DatumParts,
    report: ValidationReport,
    chain: StabilizerChain,
    elements: OnceLock<std::result::Result<Vec<WeylElement>, u128>>,
}

impl GroupDatum {
    pub fn from_parts(parts: DatumParts) -> Result<Self> {
        let n = parts.lattice.ambient_dim();
        let s = parts.blocks.len();
        if parts.b.len() != s || parts.n_matrix.len() != s {
            return Err(Error::InvalidParameter(
                "blocks, b and n_matrix must have the same length".into(),
            ));
        }
        let l = parts.d_indices.len();
        if parts.n_matrix.iter().any(|row| row.len() != l) {
            return Err(Error::InvalidParameter("n_matrix rows must have one entry per d_j".into()));
        }
        if parts.simple_roots.len() != parts.simple_coroots.len() {
            return Err(Error::InvalidParameter(
                "need as many simple coroots as simple roots".into(),
            ));
        }
        for block in &parts.blocks {
            if let Some(&j) = block.iter().find(|&&j| j >= n) {
                return Err(Error::InvalidParameter(format!("block index {} out of range", j + 1)));
            }
        }
        for v in parts
            .b
            .iter()
            .chain(&parts.simple_roots)
            .chain(&parts.weight_lifts)
            .chain(std::iter::once(&parts.two_rho))
        {
            check_dim(n, v.dim())?;
        }
        for c in &parts.simple_coroots {
            check_dim(n, c.dim())?;
        }
        let valid_gens: Vec<WeylElement> = parts
            .weyl_generators
            .iter()
            .filter(|g| g.degree() == n)
            .cloned()
            .collect();
        let chain = StabilizerChain::new(n, &valid_gens);
        let report = compute_report(&parts, &chain);
        Ok(GroupDatum {
            parts,
            report,
            chain,
            elements: OnceLock::new(),
        })
    }

    pub fn parts(&self) -> &DatumParts {
        &self.parts
    }

    pub fn into_parts(self) -> DatumParts {
        self.parts
    }

    pub fn family(&self) -> Family {
        self.parts.family
    }

    pub fn label(&self) -> &str {
        &self.parts.label
    }

    pub fn ambient_dim(&self) -> usize {
        self.parts.lattice.ambient_dim()
    }

    pub fn lattice(&self) -> &QuotientLattice {
        &self.parts.lattice
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.parts.blocks
    }

    pub fn b(&self) -> &[AmbientWeight] {
        &self.parts.b
    }

    pub fn d_indices(&self) -> &[usize] {
        &self.parts.d_indices
    }

    /// The distinguished weights `d_1, …, d_l` as ambient vectors.
    pub fn d(&self) -> Vec<AmbientWeight> {
        self.parts
            .d_indices
            .iter()
            .map(|&i| self.parts.b[i].clone())
            .collect()
    }

    /// Number `l` of distinguished weights (the rank of `X_0(T)` when valid).
    pub fn x0_rank(&self) -> usize {
        self.parts.d_indices.len()
    }

    pub fn n_matrix(&self) -> &[Vec<i64>] {
        &self.parts.n_matrix
    }

    pub fn simple_roots(&self) -> &[AmbientWeight] {
        &self.parts.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Covector] {
        &self.parts.simple_coroots
    }

    pub fn weyl_generators(&self) -> &[WeylElement] {
        &self.parts.weyl_generators
    }

    pub fn two_rho(&self) -> &AmbientWeight {
        &self.parts.two_rho
    }

    pub fn weight_lifts(&self) -> &[AmbientWeight] {
        &self.parts.weight_lifts
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn is_valid(&self) -> bool {
        self.report.all_hold()
    }

    /// Order of the generated Weyl group.
    pub fn weyl_order(&self) -> u128 {
        self.chain.order()
    }

    /// Membership in the generated Weyl group (stabilizer-chain route).
    pub fn weyl_contains(&self, w: &WeylElement) -> bool {
        self.chain.contains(w)
    }

    /// All elements of `W`, in breadth-first order from the identity. Cached.
    pub fn weyl_elements(&self) -> Result<&[WeylElement]> {
        let cached = self.elements.get_or_init(|| {
            if self.chain.order() > ENUMERATION_CAP as u128 {
                return Err(self.chain.order());
            }
            permgroup::closure(self.ambient_dim(), &self.parts.weyl_generators, ENUMERATION_CAP)
                .map_err(|_| self.chain.order())
        });
        match cached {
            Ok(v) => Ok(v),
            Err(size) => Err(Error::EnumerationCap {
                size: *size,
                cap: ENUMERATION_CAP,
            }),
        }
    }

    /// Matrix of pairings `<α_i, α_j^∨>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.parts
            .simple_roots
            .iter()
            .map(|a| {
                self.parts
                    .simple_coroots
                    .iter()
                    .map(|c| dot(a.coords(), c.coords()))
                    .collect()
            })
            .collect()
    }

    /// Pairings of `λ` with every simple coroot.
    pub fn coroot_pairings(&self, lambda: &AmbientWeight) -> Result<Vec<i64>> {
        self.parts
            .simple_coroots
            .iter()
            .map(|c| pair(lambda, c))
            .collect()
    }

    /// Membership of the class of `λ` in `X_0(T)`: all simple-coroot pairings vanish.
    pub fn in_x0(&self, lambda: &AmbientWeight) -> Result<bool> {
        Ok(self.coroot_pairings(lambda)?.iter().all(|&x| x == 0))
    }

    /// Coefficients `c` with `v ≡ Σ c_i α_i` modulo the kernel, if `v` lies in
    /// the root lattice `ZR`.
    pub fn root_coordinates(&self, v: &AmbientWeight) -> Result<Option<Vec<i64>>> {
        check_dim(self.ambient_dim(), v.dim())?;
        let k = self.parts.simple_roots.len();
        let mut rows: Vec<Vec<i64>> = self
            .parts
            .simple_roots
            .iter()
            .map(|a| a.coords().to_vec())
            .collect();
        rows.extend(self.parts.lattice.kernel_rows());
        Ok(linalg::solve_integer(&rows, v.coords()).map(|mut c| {
            c.truncate(k);
            c
        }))
    }

    /// `Σ c_i α_i` as an ambient vector.
    pub fn root_combination(&self, coeffs: &[i64]) -> AmbientWeight {
        coeffs
            .iter()
            .zip(&self.parts.simple_roots)
            .fold(AmbientWeight::zero(self.ambient_dim()), |acc, (&c, a)| {
                acc.add_scaled(c, a)
            })
    }

    /// Coordinates of the class of `λ` in the basis
    /// `weight_lifts ∪ {d_j}` of `X(T)`: `(lift coordinates, d coordinates)`.
    pub fn basis_coordinates(&self, lambda: &AmbientWeight) -> Result<(Vec<i64>, Vec<i64>)> {
        check_dim(self.ambient_dim(), lambda.dim())?;
        let k = self.parts.weight_lifts.len();
        let l = self.x0_rank();
        let rows = self.basis_rows();
        let c = linalg::solve_integer(&rows, lambda.coords()).ok_or_else(|| {
            Error::Internal(format!(
                "{} has no coordinates in the weight basis of {}",
                lambda, self.parts.label
            ))
        })?;
        Ok((c[..k].to_vec(), c[k..k + l].to_vec()))
    }

    /// Rows `weight_lifts`, then `d_j`, then the kernel basis.
    pub(crate) fn basis_rows(&self) -> Vec<Vec<i64>> {
        self.parts
            .weight_lifts
            .iter()
            .cloned()
            .chain(self.d())
            .chain(self.parts.lattice.kernel_basis().iter().cloned())
            .map(|v| v.into_coords())
            .collect()
    }

    /// True when `weight_lifts ∪ {d_j}` restricts to a Z-basis of `X(T)`.
    pub fn weight_basis_is_unimodular(&self) -> bool {
        let rows = self.basis_rows();
        rows.len() == self.ambient_dim() && linalg::determinant(&rows).abs() == 1
    }

    /// Compares every field except the family tag and label.
    pub fn same_structure(&self, other: &GroupDatum) -> bool {
        let (a, b) = (&self.parts, &other.parts);
        a.lattice == b.lattice
            && a.blocks == b.blocks
            && a.b == b.b
            && a.d_indices == b.d_indices
            && a.n_matrix == b.n_matrix
            && a.simple_roots == b.simple_roots
            && a.simple_coroots == b.simple_coroots
            && a.weyl_generators == b.weyl_generators
            && a.two_rho == b.two_rho
            && a.weight_lifts == b.weight_lifts
    }
}

/// Re-runs the hypothesis checks on a datum.
pub fn validate_datum(g: &GroupDatum) -> ValidationReport {
    compute_report(&g.parts, &g.chain)
}

/// The distinguished weights `d_1, …, d_l`, a basis of `X_0(T)`.
pub fn x0_basis(g: &GroupDatum) -> Result<Vec<AmbientWeight>> {
    if !g.report.d {
        return Err(Error::HypothesisFailed(Hypothesis::D));
    }
    Ok(g.d())
}

fn compute_report(p: &DatumParts, chain: &StabilizerChain) -> ValidationReport {
    let n = p.lattice.ambient_dim();
    let mut violations = Vec::new();

    // (a)
    for (bi, b) in p.b.iter().enumerate() {
        for (j, &x) in b.coords().iter().enumerate() {
            if x != 0 && x != 1 {
                violations.push(Violation::NonBinaryCoordinate { block: bi, index: j, value: x });
            }
        }
    }

    // (b)
    let mut owner = vec![None; n];
    for (bi, block) in p.blocks.iter().enumerate() {
        let mut support: Vec<usize> = (0..n).filter(|&j| p.b[bi][j] == 1).collect();
        let mut sorted = block.clone();
        sorted.sort_unstable();
        support.sort_unstable();
        if support != sorted {
            violations.push(Violation::BlockSupportMismatch { block: bi });
        }
        for &j in block {
            if owner[j].is_some() {
                violations.push(Violation::IndexCoveredTwice { index: j });
            }
            owner[j] = Some(bi);
        }
    }
    for (j, o) in owner.iter().enumerate() {
        if o.is_none() {
            violations.push(Violation::IndexUncovered { index: j });
        }
    }

    // (c-upper)
    for (gi, g) in p.weyl_generators.iter().enumerate() {
        if g.degree() != n {
            violations.push(Violation::BadGenerator { generator: gi });
        }
    }

    // (c-lower): every transposition inside a block must lie in W.
    let small = chain.order() <= ENUMERATION_CAP as u128;
    let listed: Option<std::collections::HashSet<WeylElement>> = if small {
        let gens: Vec<_> = p.weyl_generators.iter().filter(|g| g.degree() == n).cloned().collect();
        permgroup::closure(n, &gens, ENUMERATION_CAP)
            .ok()
            .map(|v| v.into_iter().collect())
    } else {
        None
    };
    'blocks: for block in &p.blocks {
        for (x, &i) in block.iter().enumerate() {
            for &j in &block[x + 1..] {
                let t = WeylElement::transposition(n, i, j);
                let member = match &listed {
                    Some(set) => set.contains(&t),
                    None => chain.contains(&t),
                };
                if !member {
                    violations.push(Violation::MissingTransposition { witness: t });
                    break 'blocks;
                }
            }
        }
    }

    // (d)
    for (bi, b) in p.b.iter().enumerate() {
        if p.simple_coroots.iter().any(|c| dot(b.coords(), c.coords()) != 0) {
            violations.push(Violation::BNotInX0 { block: bi });
        }
    }
    let mut d_ok = true;
    for &di in &p.d_indices {
        if di >= p.b.len() {
            violations.push(Violation::BadDIndex { index: di });
            d_ok = false;
        }
    }
    if d_ok {
        let ds: Vec<&AmbientWeight> = p.d_indices.iter().map(|&i| &p.b[i]).collect();
        let mut rows: Vec<Vec<i64>> = ds.iter().map(|d| d.coords().to_vec()).collect();
        rows.extend(p.lattice.kernel_rows());
        if linalg::rank(&rows) != rows.len() {
            violations.push(Violation::DistinguishedDependent);
        } else {
            // The lift of X_0(T) is {v : <v, α^∨> = 0}, a saturated lattice of
            // rank n − rank(coroots). The d_j with the kernel must span it.
            let coroot_rows: Vec<Vec<i64>> =
                p.simple_coroots.iter().map(|c| c.coords().to_vec()).collect();
            let x0_lift_rank = n - linalg::rank(&coroot_rows);
            if rows.len() != x0_lift_rank || !linalg::is_saturated(&rows) {
                violations.push(Violation::NotX0Basis);
            }
        }
        for (bi, row) in p.n_matrix.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c < 0 {
                    violations.push(Violation::NegativeCoefficient { block: bi, column: j });
                }
            }
            let combo = row
                .iter()
                .zip(&ds)
                .fold(AmbientWeight::zero(n), |acc, (&c, d)| acc.add_scaled(c, d));
            if p.lattice.kernel_coefficients(&(&p.b[bi] - &combo)).is_none() {
                violations.push(Violation::CoefficientMismatch { block: bi });
            }
        }
    }

    // equivariance
    for (gi, g) in p.weyl_generators.iter().enumerate() {
        if g.degree() == n && !p.lattice.is_preserved_by(g) {
            violations.push(Violation::KernelNotPreserved { generator: gi });
        }
    }

    let fails = |h: Hypothesis| violations.iter().any(|v| v.hypothesis() == h);
    ValidationReport {
        a: !fails(Hypothesis::A),
        b: !fails(Hypothesis::B),
        c_lower: !fails(Hypothesis::CLower),
        c_upper: !fails(Hypothesis::CUpper),
        d: !fails(Hypothesis::D),
        equivariance: !fails(Hypothesis::Equivariance),
        violations,
    }
}

// ---------------------------------------------------------------------------
// Builders

fn e(n: usize, i: usize) -> AmbientWeight {
    AmbientWeight::unit(n, i)
}

fn diff(n: usize, i: usize, j: usize) -> AmbientWeight {
    &e(n, i) - &e(n, j)
}

fn partial_sum(n: usize, start: usize, end: usize) -> AmbientWeight {
    AmbientWeight::indicator(n, &(start..end).collect::<Vec<_>>())
}

fn sum_all(n: usize, vs: &[AmbientWeight]) -> AmbientWeight {
    vs.iter().fold(AmbientWeight::zero(n), |acc, v| &acc + v)
}

/// Permutation swapping `i ↔ j` and their mirrors.
fn block_swap(n: usize, i: usize, j: usize) -> WeylElement {
    WeylElement::product_of_transpositions(n, &[(i, j), (n - 1 - i, n - 1 - j)])
}

/// Blocks `{i, i'}` for `i < l`, with `b_i = e_i + e_{i'}`.
fn mirrored_blocks(n: usize, l: usize) -> (Vec<Vec<usize>>, Vec<AmbientWeight>) {
    let blocks: Vec<Vec<usize>> = (0..l).map(|i| vec![i, n - 1 - i]).collect();
    let b = blocks.iter().map(|m| AmbientWeight::indicator(n, m)).collect();
    (blocks, b)
}

/// `(e_i + e_{i'}) − (e_{i+1} + e_{(i+1)'})` for `i < l − 1`.
fn similitude_kernel(n: usize, l: usize) -> Vec<AmbientWeight> {
    (0..l.saturating_sub(1))
        .map(|i| {
            let bi = AmbientWeight::indicator(n, &[i, n - 1 - i]);
            let bj = AmbientWeight::indicator(n, &[i + 1, n - 2 - i]);
            &bi - &bj
        })
        .collect()
}

/// Coroot of `ε_i − ε_{i+1}` in a similitude torus.
fn similitude_short_coroot(n: usize, i: usize) -> Covector {
    let v = &(&diff(n, i, i + 1) + &e(n, n - 2 - i)) - &e(n, n - 1 - i);
    Covector::new(v.into_coords())
}

/// `GL_n` with `d = (1, …, 1)`.
pub fn build_gl(n: usize) -> Result<GroupDatum> {
    if n == 0 {
        return Err(Error::InvalidParameter("gl needs n ≥ 1".into()));
    }
    let mut parts = levi_parts(&[n]);
    parts.family = Family::Gl;
    parts.label = format!("gl:{n}");
    GroupDatum::from_parts(parts)
}

/// `GL_{n_1} × … × GL_{n_k}` embedded block-diagonally.
pub fn build_levi(sizes: &[usize]) -> Result<GroupDatum> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidParameter("levi needs a nonempty list of positive parts".into()));
    }
    GroupDatum::from_parts(levi_parts(sizes))
}

fn levi_parts(sizes: &[usize]) -> DatumParts {
    let n: usize = sizes.iter().sum();
    let mut blocks = Vec::new();
    let mut start = 0;
    for &k in sizes {
        blocks.push((start..start + k).collect::<Vec<_>>());
        start += k;
    }
    let b: Vec<AmbientWeight> = blocks.iter().map(|m| AmbientWeight::indicator(n, m)).collect();
    let l = blocks.len();
    let n_matrix = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
    let mut simple_roots = Vec::new();
    let mut simple_coroots = Vec::new();
    let mut weyl_generators = Vec::new();
    let mut positive = Vec::new();
    let mut weight_lifts = Vec::new();
    for m in &blocks {
        let (lo, hi) = (m[0], m[m.len() - 1] + 1);
        for j in lo..hi - 1 {
            let a = diff(n, j, j + 1);
            simple_coroots.push(Covector::new(a.coords().to_vec()));
            simple_roots.push(a);
            weyl_generators.push(WeylElement::transposition(n, j, j + 1));
            weight_lifts.push(partial_sum(n, lo, j + 1));
        }
        for i in lo..hi {
            for j in i + 1..hi {
                positive.push(diff(n, i, j));
            }
        }
    }
    DatumParts {
        family: Family::Levi,
        label: format!(
            "levi:{}",
            sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
        ),
        lattice: QuotientLattice::full(n),
        blocks,
        b,
        d_indices: (0..l).collect(),
        n_matrix,
        simple_roots,
        simple_coroots,
        weyl_generators,
        two_rho: sum_all(n, &positive),
        weight_lifts,
    }
}

/// `GSp_{2l}` on the torus `t_i t_{i'} = t_j t_{j'}`, `i' = 2l + 1 − i`, with
/// `d = e_1 + e_{2l}` (the character `t ↦ t_{11} t_{nn}`).
pub fn build_gsp(two_l: usize) -> Result<GroupDatum> {
    if two_l == 0 || two_l % 2 == 1 {
        return Err(Error::InvalidParameter(format!("gsp needs an even positive size, got {two_l}")));
    }
    let n = two_l;
    let l = n / 2;
    let (blocks, b) = mirrored_blocks(n, l);
    let mut simple_roots: Vec<AmbientWeight> = (0..l).map(|i| diff(n, i, i + 1)).collect();
    // α_l = 2ε_l lifts to e_l − e_{l'} = e_l − e_{l+1}
    simple_roots[l - 1] = diff(n, l - 1, n - l);
    let mut simple_coroots: Vec<Covector> =
        (0..l - 1).map(|i| similitude_short_coroot(n, i)).collect();
    simple_coroots.push(Covector::new(diff(n, l - 1, n - l).into_coords()));
    let mut weyl_generators: Vec<WeylElement> = (0..l - 1).map(|i| block_swap(n, i, i + 1)).collect();
    weyl_generators.extend((0..l).map(|i| WeylElement::transposition(n, i, n - 1 - i)));
    let mut positive = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            positive.push(diff(n, i, j));
            positive.push(diff(n, i, n - 1 - j));
        }
        positive.push(diff(n, i, n - 1 - i));
    }
    GroupDatum::from_parts(DatumParts {
        family: Family::Gsp,
        label: format!("gsp:{n}"),
        lattice: QuotientLattice::new(n, similitude_kernel(n, l))?,
        blocks,
        b,
        d_indices: vec![0],
        n_matrix: vec![vec![1]; l],
        simple_roots,
        simple_coroots,
        weyl_generators,
        two_rho: sum_all(n, &positive),
        weight_lifts: (1..=l).map(|k| partial_sum(n, 0, k)).collect(),
    })
}

/// Connected `GO_{2l+1}` on the torus `t_i t_{i'} = t_{l+1}^2`, with
/// `d = e_{l+1}` (the character `t ↦ t_{l+1}`).
pub fn build_go_odd(two_l_plus_one: usize) -> Result<GroupDatum> {
    let n = two_l_plus_one;
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("go_odd needs an odd size ≥ 3, got {n}")));
    }
    let l = n / 2;
    let mid = l;
    let (mut blocks, mut b) = mirrored_blocks(n, l);
    blocks.push(vec![mid]);
    b.push(e(n, mid));
    let kernel: Vec<AmbientWeight> = (0..l)
        .map(|i| &AmbientWeight::indicator(n, &[i, n - 1 - i]) - &e(n, mid).scale(2))
        .collect();
    // α_l = ε_l (short) lifts to e_l − e_{l+1}; its coroot is 2ε_l^*.
    let simple_roots: Vec<AmbientWeight> = (0..l).map(|i| diff(n, i, i + 1)).collect();
    let mut simple_coroots: Vec<Covector> =
        (0..l - 1).map(|i| similitude_short_coroot(n, i)).collect();
    simple_coroots.push(Covector::new(diff(n, l - 1, n - l).scale(2).into_coords()));
    let mut weyl_generators: Vec<WeylElement> = (0..l - 1).map(|i| block_swap(n, i, i + 1)).collect();
    weyl_generators.extend((0..l).map(|i| WeylElement::transposition(n, i, n - 1 - i)));
    let mut positive = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            positive.push(diff(n, i, j));
            positive.push(diff(n, i, n - 1 - j));
        }
        positive.push(diff(n, i, mid));
    }
    let mut n_matrix = vec![vec![2]; l];
    n_matrix.push(vec![1]);
    GroupDatum::from_parts(DatumParts {
        family: Family::GoOdd,
        label: format!("go:{n}"),
        lattice: QuotientLattice::new(n, kernel)?,
        blocks,
        b,
        d_indices: vec![l],
        n_matrix,
        simple_roots,
        simple_coroots,
        weyl_generators,
        two_rho: sum_all(n, &positive),
        weight_lifts: (1..=l).map(|k| partial_sum(n, 0, k)).collect(),
    })
}

/// Connected `GO_{2l}`, `l ≥ 2`: same torus and `d` as `GSp_{2l}`, Weyl group
/// `S_l ⋉ (Z/2)^{l−1}` with only even numbers of mirror transpositions.
pub fn build_go_even(two_l: usize) -> Result<GroupDatum> {
    let n = two_l;
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("go_even needs an even size ≥ 4, got {n}")));
    }
    let l = n / 2;
    let (blocks, b) = mirrored_blocks(n, l);
    let mut simple_roots: Vec<AmbientWeight> = (0..l - 1).map(|i| diff(n, i, i + 1)).collect();
    // α_l = ε_{l−1} + ε_l lifts to e_{l−1} − e_{l'}
    simple_roots.push(diff(n, l - 2, n - l));
    let mut simple_coroots: Vec<Covector> =
        (0..l - 1).map(|i| similitude_short_coroot(n, i)).collect();
    let last = &(&(&e(n, l - 2) + &e(n, l - 1)) - &e(n, n - l)) - &e(n, n + 1 - l);
    simple_coroots.push(Covector::new(last.into_coords()));
    let mut weyl_generators: Vec<WeylElement> = (0..l - 1).map(|i| block_swap(n, i, i + 1)).collect();
    weyl_generators.push(WeylElement::product_of_transpositions(
        n,
        &[(l - 2, n + 1 - l), (l - 1, n - l)],
    ));
    let mut positive = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            positive.push(diff(n, i, j));
            positive.push(diff(n, i, n - 1 - j));
        }
    }
    GroupDatum::from_parts(DatumParts {
        family: Family::GoEven,
        label: format!("go:{n}"),
        lattice: QuotientLattice::new(n, similitude_kernel(n, l))?,
        blocks,
        b,
        d_indices: vec![0],
        n_matrix: vec![vec![1]; l],
        simple_roots,
        simple_coroots,
        weyl_generators,
        two_rho: sum_all(n, &positive),
        weight_lifts: (1..=l).map(|k| partial_sum(n, 0, k)).collect(),
    })
}
