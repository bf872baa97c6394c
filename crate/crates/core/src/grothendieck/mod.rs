//! Picard lattice, the Grothendieck ring and permutation bases of line
//! bundles.

mod basis;
mod picard;
mod ring;

use thiserror::Error;

use crate::minimal::MinimalError;
use crate::symmetry::SymmetryError;

pub use basis::{
    core_elements, search_line_bundle_basis, standard_permutation_basis, transport_divisors,
    verify_permutation_basis, BasisCertificate, BasisElement, ElementOrigin, Orbit,
    PermutationBasis,
};
pub use picard::{Divisor, PicardLattice};
pub use ring::{
    fa_recurrence_check, hirzebruch_labels, is_basis, orbit_class, orbit_images, verify_klyachko,
    Cone, K0Class, K0Model, KlyachkoCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrothendieckError {
    #[error("class has {found} Picard coordinates, the fan needs {expected}")]
    IncompatibleFan { expected: usize, found: usize },
    #[error("K0 relation failed: {0}")]
    RelationFailure(String),
    #[error("fan is not a Hirzebruch fan")]
    NotHirzebruch,
    #[error("surface is not classified: {0}")]
    NotClassified(#[source] MinimalError),
    #[error("classes do not form a basis (determinant {determinant})")]
    NotABasis { determinant: i128 },
    #[error("image of {element} under {group_element:?} is not in the set")]
    NotInvariant {
        element: String,
        group_element: [[i64; 2]; 2],
    },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}
