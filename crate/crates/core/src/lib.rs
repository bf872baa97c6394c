//! Equivariant geometry of smooth complete toric surfaces.
//!
//! A toric surface with a finite group of lattice symmetries is given by a
//! [`CompleteFan2D`] together with a [`SymmetryGroup`]. From that data the
//! crate computes the equivariant minimal model, the Grothendieck ring with
//! permutation bases of line bundles, exact line-bundle cohomology, full
//! exceptional collections and the symbolic motivic decomposition.

pub mod cli;
pub mod cohomology;
pub mod corpus;
pub mod derived;
pub mod fan;
pub mod grothendieck;
pub mod linalg;
pub mod minimal;
pub mod motivic;
pub mod symmetry;

pub use cohomology::{ext_line_bundles, line_bundle_cohomology, Cohomology, CohomologyVector};
pub use derived::{
    build_collection, verify_collection, CollectionCertificate, DerivedError, ExceptionalCollection,
};
pub use fan::{
    fans_isomorphic, CompleteFan2D, FanError, PrimitiveVector, SelfIntersectionSequence,
};
pub use grothendieck::{
    fa_recurrence_check, is_basis, search_line_bundle_basis, standard_permutation_basis,
    verify_klyachko, verify_permutation_basis, BasisElement, Divisor, GrothendieckError, K0Class,
    K0Model, PermutationBasis, PicardLattice,
};
pub use minimal::{
    classify_minimal, contractible_orbits, is_g_minimal, minimalize, ContractionStep,
    ContractionTrace, Family, MinimalError, MinimalKind, MinimalLabel,
};
pub use motivic::{annotate_family, decompose, AlgebraFactor, MotivicDecomposition, MotivicError};
pub use symmetry::{
    classify_subgroup, compute_aut, enumerate_subgroups, Classification, ConjugacyLabel,
    SymmetryError, SymmetryGroup, UnimodularMatrix,
};

/// Any error of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Minimal(#[from] MinimalError),
    #[error(transparent)]
    Grothendieck(#[from] GrothendieckError),
    #[error(transparent)]
    Derived(#[from] DerivedError),
    #[error(transparent)]
    Motivic(#[from] MotivicError),
}
