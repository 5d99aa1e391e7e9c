//! Matrices over cyclotomic fields and finite-group machinery.

mod abelian;
mod group;
pub mod linalg;
mod matrix;
mod quotient;
mod subgroup;

use thiserror::Error;

pub use abelian::{abelian_basis, abelian_invariants, factorize, AbelianBasis, AbelianStructure};
pub use group::{ElemId, FiniteGroup, FiniteMatrixGroup, DEFAULT_MAX_SIZE};
pub use matrix::CycMatrix;
pub use quotient::{quotient, QuotientGroup};
pub use subgroup::{
    commutator, commutator_subgroup, is_normal, minimal_generators, normal_closure,
    subgroup_generated, SubgroupHandle, SubgroupView, ALL_PAIRS_COMMUTATOR_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("no generators given")]
    NoGenerators,
    #[error("group too large or infinite: more than {max_size} elements ({partial} found before stopping)")]
    TooLarge { max_size: usize, partial: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Conjugacy classes as orbits of conjugation by the generators.
///
/// Returns the classes (each sorted, ordered by least id, so the representative
/// is the first entry) and the class index of every element.
pub fn conjugacy_classes<G: FiniteGroup + ?Sized>(group: &G) -> (Vec<Vec<ElemId>>, Vec<usize>) {
    let n = group.order();
    let ngens = group.generator_ids().len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = classes.len();
        class_of[x] = c;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for a in 0..ngens {
                let z = group.conjugate_by_generator(y, a);
                if class_of[z] == usize::MAX {
                    class_of[z] = c;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    (classes, class_of)
}

/// Invariant factors of Ab(G) = G/[G,G].
pub fn abelianization<G: FiniteGroup + ?Sized>(group: &G) -> Result<AbelianStructure, GroupError> {
    let derived = commutator_subgroup(group);
    abelian_invariants(&quotient(group, &derived)?)
}
