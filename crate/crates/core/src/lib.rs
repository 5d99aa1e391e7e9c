//! Class groups of Q-factorial terminalizations of linear quotients V/G.
//!
//! For a finite group G ≤ SL(V) given by generator matrices over a cyclotomic
//! field, computes Cl(X) ≅ Zᵐ ⊕ Ab(G/H)^∨ where m counts junior conjugacy
//! classes and H is generated by the junior elements, together with the
//! supporting invariants: ages, the reflection subgroup and Cl(V/G), monomial
//! valuations and relative invariants in C[V]^[G,G].

pub mod classgroup;
pub mod cyclo;
pub mod invariants;
pub mod job;
pub mod matgrp;
pub mod mckay;

pub use cyclo::{parse_cyclotomic, CycloError, CyclotomicNumber};
pub use matgrp::{
    AbelianStructure, CycMatrix, FiniteGroup, FiniteMatrixGroup, GroupError, SubgroupHandle,
};
