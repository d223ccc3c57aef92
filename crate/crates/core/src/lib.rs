//! Polynomial weights of reductive groups `G ⊆ GL_n` and the φ-function
//! classification of simple polynomial modules in characteristic `p`.

mod error;

pub mod affine;
pub mod arith;
pub mod classify;
pub mod counterexample;
pub mod datum;
pub mod lattice;
pub mod linalg;
pub mod permgroup;
pub mod phi;

pub use datum::{
    build_gl, build_go_even, build_go_odd, build_gsp, build_levi, validate_datum, x0_basis,
    DatumParts, Family, GroupDatum, GroupSpec, Hypothesis, ValidationReport, Violation,
};
pub use affine::{
    check_shift_bijection, dot_act, orbit_in_box, shift_bound_a, AffineElement, OrbitSlice,
    ShiftCheck,
};
pub use classify::{weyl_orbit_witness_nonpolynomial, ClassificationContext, Decomposition};
pub use counterexample::{go8, Go8Report};
pub use error::{Error, Result};
pub use lattice::{pair, AmbientWeight, Covector, QuotientLattice, WeylElement};
pub use phi::{
    check_assumption, find_witness_w, kernel_block_constancy, phi, phi_ambient, AssumptionReport,
    Outcome, PhiData,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/lattices.md")]
    struct Lattices;
    #[doc = include_str!("../../../book/src/group-data.md")]
    struct GroupData;
    #[doc = include_str!("../../../book/src/phi.md")]
    struct Phi;
    #[doc = include_str!("../../../book/src/classification.md")]
    struct Classification;
    #[doc = include_str!("../../../book/src/affine-weyl.md")]
    struct AffineWeyl;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
