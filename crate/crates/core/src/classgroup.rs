//! Class groups of V/G and of a Q-factorial terminalization X → V/G.
//!
//! The terminalization is never constructed. Exceptional divisors appear only
//! as labels on junior class representatives, and Hom(A, C^×) is identified
//! with A through a chosen basis (reported invariant factors do not depend on it).

use serde::Serialize;
use thiserror::Error;

use crate::matgrp::{
    abelian_basis, abelian_invariants, abelianization, commutator_subgroup, is_normal, quotient,
    subgroup_generated, AbelianBasis, AbelianStructure, ElemId, FiniteGroup, FiniteMatrixGroup,
    GroupError, SubgroupHandle, SubgroupView,
};
use crate::mckay::{self, AgeTable, GaloisTwist, JuniorClasses, McKayError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassGroupError {
    #[error("junior subgroup is not normal")]
    JuniorSubgroupNotNormal,
    #[error(transparent)]
    McKay(#[from] McKayError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Cl(V/G) ≅ Ab(G/K)^∨ with K generated by the reflections in G. GL input is fine here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientClassGroup {
    pub reflections: Vec<ElemId>,
    pub reflection_subgroup_order: usize,
    pub class_group: AbelianStructure,
}

pub fn class_group_of_quotient(
    group: &FiniteMatrixGroup,
) -> Result<QuotientClassGroup, ClassGroupError> {
    let reflections: Vec<ElemId> = (1..group.order())
        .filter(|&x| mckay::is_reflection(group.element(x)))
        .collect();
    let k = subgroup_generated(group, &reflections);
    let q = quotient(group, &k)?;
    let ab = abelianization(&q)?;
    Ok(QuotientClassGroup {
        reflection_subgroup_order: k.order(),
        reflections,
        class_group: ab,
    })
}

/// H, the subgroup generated by every junior element (not just class representatives).
pub fn junior_subgroup(
    group: &FiniteMatrixGroup,
    juniors: &JuniorClasses,
) -> Result<SubgroupHandle, ClassGroupError> {
    let h = subgroup_generated(group, &juniors.elements);
    if !is_normal(group, &h) {
        return Err(ClassGroupError::JuniorSubgroupNotNormal);
    }
    Ok(h)
}

/// A named pass/fail check with a short witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Image of a basis element of Cl(X) in Cl(V/G) ≅ Ab(G)^∨ ≅ Ab(G).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushforwardImage {
    /// Element of G representing the image (least id in its [G,G]-coset for torsion images).
    pub element: ElemId,
    /// Order of the image in Ab(G).
    pub order: u64,
    /// Coordinates against `PushforwardBasis::abelianization_basis`.
    pub coords: Vec<u64>,
}

/// φ_* on a chosen basis of Cl(X) = Zᵐ ⊕ torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushforwardBasis {
    /// Basis of Ab(G) used for the identification Ab(G)^∨ ≅ Ab(G): (element, order).
    pub abelianization_basis: Vec<(ElemId, u64)>,
    /// Images of E₁, …, E_m: the junior class representatives mod [G,G].
    pub free_images: Vec<PushforwardImage>,
    /// Generators of the torsion part, as characters trivial on H.
    pub torsion_images: Vec<PushforwardImage>,
    pub torsion_structure: AbelianStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Freeness {
    /// G = ⟨junior elements, [G,G]⟩.
    pub free: bool,
    pub generated_subgroup_order: usize,
    pub torsion_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGroupReport {
    pub group_order: usize,
    pub is_special_linear: bool,
    pub twist: i64,
    pub reflection_subgroup_order: usize,
    pub cl_quotient: AbelianStructure,
    pub abelianization: AbelianStructure,
    pub commutator_subgroup_order: usize,
    pub junior_class_count: usize,
    pub junior_representatives: Vec<ElemId>,
    pub junior_subgroup_order: usize,
    pub cl_x_free_rank: usize,
    pub cl_x_torsion: AbelianStructure,
    pub hbar: AbelianStructure,
    pub freeness: Freeness,
    pub pushforward: PushforwardBasis,
    pub consistency: Vec<Check>,
}

impl ClassGroupReport {
    pub fn all_checks_pass(&self) -> bool {
        self.consistency.iter().all(|c| c.passed)
    }

    /// `Z^2 + Z/2`, `0` when trivial.
    pub fn render_cl_x(&self) -> String {
        let mut parts = Vec::new();
        match self.cl_x_free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            m => parts.push(format!("Z^{m}")),
        }
        if !self.cl_x_torsion.is_trivial() {
            parts.push(self.cl_x_torsion.render());
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Cl(X) ≅ Zᵐ ⊕ Ab(G/H)^∨ for G ≤ SL(V), with all supporting data and checks.
pub fn terminalization_class_group(
    group: &FiniteMatrixGroup,
    table: &AgeTable,
    twist: GaloisTwist,
) -> Result<ClassGroupReport, ClassGroupError> {
    mckay::require_special_linear(group)?;
    let juniors = mckay::junior_classes(group, table, twist)?;
    let h = junior_subgroup(group, &juniors)?;
    let quotient_cl = class_group_of_quotient(group)?;

    let derived = commutator_subgroup(group);
    let ab_group = quotient(group, &derived)?;
    let ab = abelian_invariants(&ab_group)?;

    // Ab(G/H) literally as the abelianization of the quotient
    let g_mod_h = quotient(group, &h)?;
    let torsion = abelianization(&g_mod_h)?;

    // H̄ = H / (H ∩ [G,G])
    let h_view = SubgroupView::new(group, &h);
    let meet = h_view.restrict(&h.intersection(&derived));
    let hbar_group = quotient(&h_view, &meet)?;
    let hbar = abelian_invariants(&hbar_group)?;

    let freeness = freeness_from(group, &juniors, &derived, &torsion);
    let ab_basis = abelian_basis(&ab_group)?;
    let pushforward = pushforward_basis(&ab_group, &ab_basis, &juniors)?;

    let mut checks = Vec::new();
    checks.push(Check::new(
        "free_rank_equals_junior_classes",
        juniors.count == juniors.representatives.len(),
        format!("m = {}", juniors.count),
    ));
    checks.push(Check::new(
        "junior_subgroup_normal",
        is_normal(group, &h),
        format!("|H| = {}", h.order()),
    ));
    checks.push(Check::new(
        "exact_sequence_orders",
        ab.order == hbar.order * torsion.order,
        format!(
            "|Ab(G)| = {} = {} * {}",
            ab.order, hbar.order, torsion.order
        ),
    ));
    checks.push(surjectivity_check(group, &derived, &h));
    checks.push(Check::new(
        "ab_g_mod_h_via_product_subgroup",
        {
            let mut seed = h.members().to_vec();
            seed.extend_from_slice(derived.members());
            let hg = subgroup_generated(group, &seed);
            abelian_invariants(&quotient(group, &hg)?)? == torsion
        },
        "Ab(G/H) = G/(H[G,G])",
    ));
    checks.push(Check::new(
        "special_linear_has_no_reflections",
        quotient_cl.reflection_subgroup_order == 1 && quotient_cl.class_group == ab,
        format!(
            "|K| = {}, Cl(V/G) = {}",
            quotient_cl.reflection_subgroup_order,
            quotient_cl.class_group.render()
        ),
    ));
    checks.push(Check::new(
        "terminal_case_matches_quotient",
        juniors.count > 0 || torsion == quotient_cl.class_group,
        if juniors.count == 0 {
            "m = 0: Cl(X) = Cl(V/G)"
        } else {
            "m > 0: not applicable"
        },
    ));
    checks.push(Check::new(
        "freeness_criterion_agrees",
        freeness.free == freeness.torsion_trivial,
        format!("|<juniors, [G,G]>| = {}", freeness.generated_subgroup_order),
    ));
    checks.push(Check::new(
        "torsion_characters_match",
        pushforward.torsion_structure == torsion,
        format!(
            "characters trivial on H: {}",
            pushforward.torsion_structure.render()
        ),
    ));
    checks.push(hbar_generation_check(&ab_group, &juniors, &hbar)?);

    Ok(ClassGroupReport {
        group_order: group.order(),
        is_special_linear: true,
        twist: twist.0,
        reflection_subgroup_order: quotient_cl.reflection_subgroup_order,
        cl_quotient: quotient_cl.class_group,
        abelianization: ab,
        commutator_subgroup_order: derived.order(),
        junior_class_count: juniors.count,
        junior_representatives: juniors.representatives.clone(),
        junior_subgroup_order: h.order(),
        cl_x_free_rank: juniors.count,
        cl_x_torsion: torsion,
        hbar,
        freeness,
        pushforward,
        consistency: checks,
    })
}

// Ab(G) → Ab(G/H) is well defined and onto
fn surjectivity_check(
    group: &FiniteMatrixGroup,
    derived: &SubgroupHandle,
    h: &SubgroupHandle,
) -> Check {
    let Ok(g_mod_h) = quotient(group, h) else {
        return Check::new("abelianization_map_surjective", false, "H not normal");
    };
    let q_derived = commutator_subgroup(&g_mod_h);
    let Ok(target) = quotient(&g_mod_h, &q_derived) else {
        return Check::new(
            "abelianization_map_surjective",
            false,
            "derived subgroup not normal",
        );
    };
    let image = |x: ElemId| target.coset_of(g_mod_h.coset_of(x));
    let well_defined = derived.members().iter().all(|&c| image(c) == 0);
    let mut hit = vec![false; target.order()];
    for x in 0..group.order() {
        hit[image(x)] = true;
    }
    let onto = hit.iter().all(|&b| b);
    Check::new(
        "abelianization_map_surjective",
        well_defined && onto,
        format!("|Ab(G/H)| = {}", target.order()),
    )
}

// the junior representatives' images generate the image of H in Ab(G), which is H̄
fn hbar_generation_check<G: FiniteGroup + ?Sized>(
    ab_group: &crate::matgrp::QuotientGroup<'_, G>,
    juniors: &JuniorClasses,
    hbar: &AbelianStructure,
) -> Result<Check, ClassGroupError> {
    let rep_images: Vec<ElemId> = juniors
        .representatives
        .iter()
        .map(|&x| ab_group.coset_of(x))
        .collect();
    let all_images: Vec<ElemId> = juniors
        .elements
        .iter()
        .map(|&x| ab_group.coset_of(x))
        .collect();
    let from_reps = subgroup_generated(ab_group, &rep_images);
    let from_all = subgroup_generated(ab_group, &all_images);
    let view = SubgroupView::new(ab_group, &from_reps);
    let structure = abelian_invariants(&view)?;
    Ok(Check::new(
        "cokernel_generated_by_junior_representatives",
        from_reps == from_all && &structure == hbar,
        format!("image of H in Ab(G): {}", structure.render()),
    ))
}

fn freeness_from(
    group: &FiniteMatrixGroup,
    juniors: &JuniorClasses,
    derived: &SubgroupHandle,
    torsion: &AbelianStructure,
) -> Freeness {
    let mut seed = juniors.elements.clone();
    seed.extend_from_slice(derived.members());
    let generated = subgroup_generated(group, &seed);
    Freeness {
        free: generated.is_whole(),
        generated_subgroup_order: generated.order(),
        torsion_trivial: torsion.is_trivial(),
    }
}

/// Cl(X) is free iff G is generated by its junior elements together with [G,G].
pub fn freeness_criterion(
    group: &FiniteMatrixGroup,
    table: &AgeTable,
    twist: GaloisTwist,
) -> Result<Freeness, ClassGroupError> {
    mckay::require_special_linear(group)?;
    let juniors = mckay::junior_classes(group, table, twist)?;
    let h = junior_subgroup(group, &juniors)?;
    let derived = commutator_subgroup(group);
    let torsion = abelianization(&quotient(group, &h)?)?;
    Ok(freeness_from(group, &juniors, &derived, &torsion))
}

/// Images of a basis of Cl(X) under push-forward.
///
/// A character χ = (c₁, …, c_k) of Ab(G) = ⊕ Z/d_i, χ(e_i) = ζ_{d_i}^{c_i}, is
/// identified with Σ c_i e_i. The torsion of Cl(X) maps onto the characters
/// trivial on the image of H; free generators E_i map to the junior class
/// representatives.
pub fn pushforward_basis<G: FiniteGroup + ?Sized>(
    ab_group: &crate::matgrp::QuotientGroup<'_, G>,
    basis: &AbelianBasis,
    juniors: &JuniorClasses,
) -> Result<PushforwardBasis, ClassGroupError> {
    let image_of = |ab_id: ElemId, element: ElemId| PushforwardImage {
        element,
        order: ab_group.element_order(ab_id) as u64,
        coords: basis.coords[ab_id].clone(),
    };
    let free_images = juniors
        .representatives
        .iter()
        .map(|&x| image_of(ab_group.coset_of(x), x))
        .collect();

    let exponent = basis.generators.last().map_or(1, |&(_, d)| d);
    let h_images: Vec<&Vec<u64>> = juniors
        .representatives
        .iter()
        .map(|&x| &basis.coords[ab_group.coset_of(x)])
        .collect();
    let pairing = |c: &[u64], k: &[u64]| -> u64 {
        c.iter()
            .zip(k)
            .zip(&basis.generators)
            .map(|((&ci, &ki), &(_, d))| ci * ki % d * (exponent / d))
            .sum::<u64>()
            % exponent
    };
    let mut annihilator = vec![false; ab_group.order()];
    for (a, coords) in basis.coords.iter().enumerate() {
        if h_images.iter().all(|k| pairing(coords, k) == 0) {
            annihilator[a] = true;
        }
    }
    let members: Vec<ElemId> = (0..ab_group.order()).filter(|&a| annihilator[a]).collect();
    let t = subgroup_generated(ab_group, &members);
    if t.order() != members.len() {
        return Err(GroupError::Internal("annihilator is not a subgroup".into()).into());
    }
    let view = SubgroupView::new(ab_group, &t);
    let t_basis = abelian_basis(&view)?;
    let torsion_images = t_basis
        .generators
        .iter()
        .map(|&(local, _)| {
            let a = view.parent_id(local);
            image_of(a, ab_group.coset_reps()[a])
        })
        .collect();
    Ok(PushforwardBasis {
        abelianization_basis: basis
            .generators
            .iter()
            .map(|&(a, d)| (ab_group.coset_reps()[a], d))
            .collect(),
        free_images,
        torsion_images,
        torsion_structure: t_basis.structure(),
    })
}
