//! Polynomial invariants: the linear action on C[V], monomial valuations of
//! junior elements, the per-junior gradings, relative invariants in
//! C[V]^[G,G], and the congruence and H-membership criteria run as checks.
//!
//! Conventions: (g.f)(v) = f(g⁻¹v), and a character χ of ⟨g⟩ (g of order r)
//! is identified with c ∈ Z/r through χ(g) = ζ_r^(−c). A monomial y^α in
//! eigencoordinates of g then has graded degree Σ a_j α_j mod r.

mod poly;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::CyclotomicNumber;
use crate::matgrp::{
    abelian_basis, commutator_subgroup, quotient, subgroup_generated, AbelianStructure, CycMatrix,
    ElemId, FiniteGroup, FiniteMatrixGroup, GroupError, SubgroupHandle,
};
use crate::mckay::{self, GaloisTwist, GradingEntry, JuniorClasses, McKayError};

pub use poly::{monomials_of_degree, Monomial, SparsePolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("valuation of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous for the Ab(G)-grading: {0}")]
    NotHomogeneous(String),
    #[error("ill-defined character: {0}")]
    IllDefinedCharacter(String),
    #[error("polynomial has {found} variables, group acts on {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("relative invariant fails equivariance under generator {0}")]
    EquivarianceFailure(ElemId),
    #[error(transparent)]
    McKay(#[from] McKayError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// g.f with (g.f)(v) = f(g⁻¹v).
pub fn act(g: &CycMatrix, f: &SparsePolynomial) -> Result<SparsePolynomial, InvariantError> {
    if g.dim() != f.nvars() {
        return Err(InvariantError::DimensionMismatch {
            expected: g.dim(),
            found: f.nvars(),
        });
    }
    Ok(f.substitute(&linear_forms(&g.inverse()?)))
}

/// Images of the coordinate functions under x ↦ M x: x_i ↦ Σ_j M_ij x_j.
fn linear_forms(m: &CycMatrix) -> Vec<SparsePolynomial> {
    let n = m.dim();
    (0..n)
        .map(|i| {
            (0..n).fold(SparsePolynomial::zero(n), |acc, j| {
                acc.add(&SparsePolynomial::term(
                    n,
                    Monomial::var(n, j),
                    m.get(i, j).clone(),
                ))
            })
        })
        .collect()
}

/// v_g(f): minimum of Σ αⱼaⱼ over the monomials of f written in g's eigencoordinates.
pub fn monomial_valuation(
    entry: &GradingEntry,
    f: &SparsePolynomial,
) -> Result<u64, InvariantError> {
    if f.is_zero() {
        return Err(InvariantError::ZeroPolynomial);
    }
    if entry.eigenbasis.dim() != f.nvars() {
        return Err(InvariantError::DimensionMismatch {
            expected: entry.eigenbasis.dim(),
            found: f.nvars(),
        });
    }
    let in_eigen = f.substitute(&linear_forms(&entry.eigenbasis));
    Ok(in_eigen
        .terms()
        .map(|(m, _)| m.weighted_degree(&entry.weights))
        .min()
        .expect("nonzero after an invertible change of coordinates"))
}

/// The c with g.f = ζ_r^(−c)·f relative to the twisted root, if f is an
/// eigenvector of g.
pub fn graded_degree(
    g: &CycMatrix,
    order: u64,
    f: &SparsePolynomial,
    twist: GaloisTwist,
) -> Result<Option<u64>, InvariantError> {
    if f.is_zero() {
        return Ok(Some(0));
    }
    let gf = act(g, f)?;
    Ok(eigenvalue_exponent(f, &gf, order).map(|k| {
        // g.f = ζ_r^k f = ζ'^(t⁻¹ k) f with ζ' = ζ_r^t, so c = −t⁻¹k
        let tinv = twist.inverse_mod(order);
        (order - (tinv * k) % order) % order
    }))
}

// k with gf = ζ_r^k · f, if any
fn eigenvalue_exponent(f: &SparsePolynomial, gf: &SparsePolynomial, order: u64) -> Option<u64> {
    let (m, c) = f.leading_term()?;
    let lambda = gf.coefficient(m)?.checked_div(c).ok()?;
    let (o, k) = lambda.as_root_of_unity()?;
    if !order.is_multiple_of(o as u64) {
        return None;
    }
    (f.scale(&lambda) == *gf).then_some(k as u64 * (order / o as u64))
}

/// Ab(G) = G/[G,G] with an explicit invariant-factor basis.
#[derive(Clone, Debug)]
pub struct Abelianization {
    derived: SubgroupHandle,
    derived_generators: Vec<ElemId>,
    coset_of: Vec<usize>,
    coset_reps: Vec<ElemId>,
    basis: Vec<(ElemId, u64)>,
    coords: Vec<Vec<u64>>,
}

impl Abelianization {
    pub fn new(group: &FiniteMatrixGroup) -> Result<Self, GroupError> {
        let derived = commutator_subgroup(group);
        let q = quotient(group, &derived)?;
        let basis = abelian_basis(&q)?;
        let coset_of = (0..group.order()).map(|x| q.coset_of(x)).collect();
        let coset_reps = q.coset_reps().to_vec();
        Ok(Self {
            derived_generators: generating_subset(group, derived.members()),
            derived,
            coset_of,
            basis: basis
                .generators
                .iter()
                .map(|&(a, d)| (coset_reps[a], d))
                .collect(),
            coset_reps,
            coords: basis.coords,
        })
    }

    pub fn derived_subgroup(&self) -> &SubgroupHandle {
        &self.derived
    }

    pub fn structure(&self) -> AbelianStructure {
        AbelianStructure::from_factors(self.factors())
    }

    pub fn factors(&self) -> Vec<u64> {
        self.basis.iter().map(|&(_, d)| d).collect()
    }

    /// Basis elements of Ab(G) as (least-id representative in G, order).
    pub fn basis(&self) -> &[(ElemId, u64)] {
        &self.basis
    }

    pub fn order(&self) -> usize {
        self.coset_reps.len()
    }

    /// Coordinates of g[G,G] against the basis.
    pub fn coords_of(&self, g: ElemId) -> &[u64] {
        &self.coords[self.coset_of[g]]
    }

    /// Every character of Ab(G), in lexicographic order of exponents.
    pub fn characters(&self) -> Vec<CharacterOfAb> {
        let factors = self.factors();
        let mut out = Vec::new();
        let mut c = vec![0u64; factors.len()];
        loop {
            out.push(CharacterOfAb {
                exponents: c.clone(),
                factors: factors.clone(),
            });
            let mut i = factors.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                c[i] += 1;
                if c[i] < factors[i] {
                    break;
                }
                c[i] = 0;
            }
        }
    }

    /// Character with χ(e_i) = ζ_{d_i}^{c_i}; exponents are reduced mod d_i.
    pub fn character(&self, exponents: &[i64]) -> Result<CharacterOfAb, InvariantError> {
        let factors = self.factors();
        if exponents.len() != factors.len() {
            return Err(InvariantError::IllDefinedCharacter(format!(
                "{} exponents given, Ab(G) = {} has {} invariant factors",
                exponents.len(),
                self.structure().render(),
                factors.len()
            )));
        }
        Ok(CharacterOfAb {
            exponents: exponents
                .iter()
                .zip(&factors)
                .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
                .collect(),
            factors,
        })
    }

    /// Character from its values on the basis; each value must be a root of
    /// unity whose order divides the matching invariant factor.
    pub fn character_from_values(
        &self,
        values: &[CyclotomicNumber],
    ) -> Result<CharacterOfAb, InvariantError> {
        let factors = self.factors();
        if values.len() != factors.len() {
            return Err(InvariantError::IllDefinedCharacter(
                "wrong number of values".into(),
            ));
        }
        let mut exponents = Vec::with_capacity(values.len());
        for (v, &d) in values.iter().zip(&factors) {
            match v.as_root_of_unity() {
                Some((o, k)) if d % o as u64 == 0 => exponents.push(k as u64 * (d / o as u64)),
                _ => {
                    return Err(InvariantError::IllDefinedCharacter(format!(
                        "value {v} is not a root of unity of order dividing {d}"
                    )))
                }
            }
        }
        Ok(CharacterOfAb { exponents, factors })
    }
}

/// A character of Ab(G), stored as exponents against the invariant-factor basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterOfAb {
    pub exponents: Vec<u64>,
    pub factors: Vec<u64>,
}

impl CharacterOfAb {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }

    /// Exponent e with χ(x) = ζ_D^e, D the exponent of Ab(G).
    pub fn exponent_at(&self, coords: &[u64]) -> (u64, u64) {
        let big = self.factors.last().copied().unwrap_or(1);
        let e = self
            .exponents
            .iter()
            .zip(coords)
            .zip(&self.factors)
            .map(|((&c, &k), &d)| (c * k % d) * (big / d))
            .sum::<u64>()
            % big;
        (big, e)
    }

    pub fn value_at(&self, coords: &[u64]) -> CyclotomicNumber {
        let (d, e) = self.exponent_at(coords);
        CyclotomicNumber::root_of_unity(d as u32, e as i64)
    }

    pub fn product(&self, other: &Self) -> Self {
        Self {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .zip(&self.factors)
                .map(|((a, b), d)| (a + b) % d)
                .collect(),
            factors: self.factors.clone(),
        }
    }
}

/// Greedy generating subset of a subgroup given by its members.
pub fn generating_subset<G: FiniteGroup + ?Sized>(group: &G, members: &[ElemId]) -> Vec<ElemId> {
    let mut gens = Vec::new();
    let mut span = subgroup_generated(group, &[]);
    for &x in members {
        if !span.contains(x) {
            gens.push(x);
            span = subgroup_generated(group, &gens);
        }
    }
    gens
}

/// Precomputed action of every group element on the coordinate functions.
pub struct InvariantContext<'a> {
    pub group: &'a FiniteMatrixGroup,
    pub ab: Abelianization,
    forms: Vec<Vec<SparsePolynomial>>,
}

impl<'a> InvariantContext<'a> {
    pub fn new(group: &'a FiniteMatrixGroup) -> Result<Self, InvariantError> {
        let ab = Abelianization::new(group)?;
        let forms = (0..group.order())
            .map(|x| linear_forms(group.element(group.inv(x))))
            .collect();
        Ok(Self { group, ab, forms })
    }

    /// g.f for a group element given by id.
    pub fn act_by(&self, g: ElemId, f: &SparsePolynomial) -> SparsePolynomial {
        f.substitute(&self.forms[g])
    }

    pub fn nvars(&self) -> usize {
        self.group.dim()
    }

    /// Twisted average Σ_g χ(g)⁻¹ (g.μ) over the monomials μ of degree
    /// 1, 2, …, `degree_bound` in graded lexicographic enumeration; returns the
    /// first nonzero result, scaled to be monic and verified to satisfy g.f = χ(g) f on generators
    /// and h.f = f on generators of [G,G].
    pub fn relative_invariant(
        &self,
        chi: &CharacterOfAb,
        degree_bound: u32,
    ) -> Result<Option<SparsePolynomial>, InvariantError> {
        let n = self.nvars();
        let weights: Vec<CyclotomicNumber> = (0..self.group.order())
            .map(|g| chi.value_at(self.ab.coords_of(g)).conj())
            .collect();
        for d in 1..=degree_bound {
            for mu in monomials_of_degree(n, d) {
                let mu = SparsePolynomial::monomial(mu);
                let mut f = SparsePolynomial::zero(n);
                for (g, w) in weights.iter().enumerate() {
                    f = f.add(&self.act_by(g, &mu).scale(w));
                }
                if !f.is_zero() {
                    let f = f.monic();
                    self.verify_equivariance(&f, chi)?;
                    return Ok(Some(f));
                }
            }
        }
        Ok(None)
    }

    fn verify_equivariance(
        &self,
        f: &SparsePolynomial,
        chi: &CharacterOfAb,
    ) -> Result<(), InvariantError> {
        for g in self.group.generator_ids() {
            let expected = f.scale(&chi.value_at(self.ab.coords_of(g)));
            if self.act_by(g, f) != expected {
                return Err(InvariantError::EquivarianceFailure(g));
            }
        }
        for &h in &self.ab.derived_generators {
            if self.act_by(h, f) != *f {
                return Err(InvariantError::EquivarianceFailure(h));
            }
        }
        Ok(())
    }

    /// The character χ with f ∈ C[V]^[G,G]_χ, if f is homogeneous for the grading.
    pub fn character_of(&self, f: &SparsePolynomial) -> Result<CharacterOfAb, InvariantError> {
        if f.is_zero() {
            return Err(InvariantError::ZeroPolynomial);
        }
        if f.nvars() != self.nvars() {
            return Err(InvariantError::DimensionMismatch {
                expected: self.nvars(),
                found: f.nvars(),
            });
        }
        for &h in &self.ab.derived_generators {
            if self.act_by(h, f) != *f {
                return Err(InvariantError::NotHomogeneous(format!(
                    "not invariant under [G,G] element {h}"
                )));
            }
        }
        let mut values = Vec::new();
        for &(b, d) in self.ab.basis() {
            let gf = self.act_by(b, f);
            let k = eigenvalue_exponent(f, &gf, d).ok_or_else(|| {
                InvariantError::NotHomogeneous(format!("not an eigenvector of basis element {b}"))
            })?;
            values.push(CyclotomicNumber::root_of_unity(d as u32, k as i64));
        }
        let chi = self.ab.character_from_values(&values)?;
        // basis elements and [G,G] generate G, so this pins χ down; confirm on G's generators
        for g in self.group.generator_ids() {
            if self.act_by(g, f) != f.scale(&chi.value_at(self.ab.coords_of(g))) {
                return Err(InvariantError::NotHomogeneous(format!(
                    "not a semi-invariant for generator {g}"
                )));
            }
        }
        Ok(chi)
    }
}

/// Per-junior grading data: eigenbasis and weights of each junior class representative.
#[derive(Clone, Debug)]
pub struct GradingData {
    pub twist: GaloisTwist,
    pub entries: Vec<(ElemId, GradingEntry)>,
}

impl GradingData {
    pub fn new(
        group: &FiniteMatrixGroup,
        juniors: &JuniorClasses,
        twist: GaloisTwist,
    ) -> Result<Self, McKayError> {
        let entries = juniors
            .representatives
            .iter()
            .map(|&x| Ok((x, mckay::valuation_weights(group.element(x), twist)?)))
            .collect::<Result<_, McKayError>>()?;
        Ok(Self { twist, entries })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceRow {
    pub representative: ElemId,
    pub order: u64,
    pub valuation: u64,
    pub graded_degree: u64,
    pub holds: bool,
}

/// v_i(f) ≡ deḡ_i(f) (mod r_i) for every junior representative g_i, on a
/// homogeneous f ∈ C[V]^[G,G]_χ.
pub fn check_congruence_lemma(
    ctx: &InvariantContext<'_>,
    grading: &GradingData,
    f: &SparsePolynomial,
) -> Result<Vec<CongruenceRow>, InvariantError> {
    ctx.character_of(f)?;
    grading
        .entries
        .iter()
        .map(|(x, entry)| {
            let v = monomial_valuation(entry, f)?;
            let d = graded_degree(ctx.group.element(*x), entry.order, f, grading.twist)?
                .ok_or_else(|| {
                    InvariantError::NotHomogeneous(format!("not an eigenvector of junior {x}"))
                })?;
            Ok(CongruenceRow {
                representative: *x,
                order: entry.order,
                valuation: v,
                graded_degree: d,
                holds: v % entry.order == d,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    /// r_i | v_i(f) for every junior representative.
    pub divisibility: bool,
    /// h.f = f for every generator h of H.
    pub h_invariant: bool,
    pub agree: bool,
}

/// (∀i: r_i | v_i(f)) ⇔ f ∈ C[V]^H, evaluated on both sides.
pub fn check_h_membership(
    ctx: &InvariantContext<'_>,
    juniors: &JuniorClasses,
    grading: &GradingData,
    f: &SparsePolynomial,
) -> Result<MembershipReport, InvariantError> {
    ctx.character_of(f)?;
    let mut divisibility = true;
    for (_, entry) in &grading.entries {
        if monomial_valuation(entry, f)? % entry.order != 0 {
            divisibility = false;
        }
    }
    let h_gens = generating_subset(ctx.group, &juniors.elements);
    let h_invariant = h_gens.iter().all(|&h| ctx.act_by(h, f) == *f);
    Ok(MembershipReport {
        divisibility,
        h_invariant,
        agree: divisibility == h_invariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::parse_cyclotomic;

    fn diag(entries: &[&str]) -> CycMatrix {
        CycMatrix::diagonal(
            entries
                .iter()
                .map(|s| parse_cyclotomic(s).unwrap())
                .collect(),
        )
    }

    fn p(s: &str, n: usize) -> SparsePolynomial {
        SparsePolynomial::parse(s, n).unwrap()
    }

    fn g1_entry() -> GradingEntry {
        mckay::valuation_weights(&diag(&["1", "1", "E(3)^2", "E(3)"]), GaloisTwist(1)).unwrap()
    }

    #[test]
    fn action_examples() {
        let f = p("x1^2 + E(5)*x2", 2);
        assert_eq!(act(&CycMatrix::identity(2), &f).unwrap(), f);
        let g = diag(&["E(3)", "E(3)^2"]);
        assert_eq!(act(&g, &p("x1", 2)).unwrap(), p("E(3)^2*x1", 2));
    }

    #[test]
    fn valuations_with_weights_0_0_2_1() {
        let e = g1_entry();
        assert_eq!(monomial_valuation(&e, &p("x3", 4)).unwrap(), 2);
        assert_eq!(monomial_valuation(&e, &p("x3^2 + x4", 4)).unwrap(), 1);
        assert_eq!(monomial_valuation(&e, &p("x1 + x3*x4", 4)).unwrap(), 0);
        assert_eq!(
            monomial_valuation(&e, &SparsePolynomial::zero(4)),
            Err(InvariantError::ZeroPolynomial)
        );
    }

    #[test]
    fn graded_degree_examples() {
        let g1 = diag(&["1", "1", "E(3)^2", "E(3)"]);
        let t = GaloisTwist(1);
        assert_eq!(graded_degree(&g1, 3, &p("x3", 4), t).unwrap(), Some(2));
        assert_eq!(graded_degree(&g1, 3, &p("x3*x4", 4), t).unwrap(), Some(0));
        assert_eq!(
            graded_degree(&g1, 3, &p("x1^2 + x2", 4), t).unwrap(),
            Some(0)
        );
        assert_eq!(graded_degree(&g1, 3, &p("x3 + x4", 4), t).unwrap(), None);
    }
}
