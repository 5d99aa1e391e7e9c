//! Ages, junior and reflection elements, valuation weights, and sweeps over
//! the choice of primitive root.
//!
//! All exponents are relative to the global root convention: the canonical
//! primitive r-th root is `E(r)`. A [`GaloisTwist`] t replaces that choice by
//! `E(r)^t`, so an eigenvalue `E(r)^j` has exponent `t⁻¹·j mod r` afterwards.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::phi::lcm;
use crate::cyclo::CyclotomicNumber;
use crate::matgrp::linalg;
use crate::matgrp::{
    abelianization, quotient, subgroup_generated, AbelianStructure, CycMatrix, ElemId, FiniteGroup,
    FiniteMatrixGroup, GroupError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McKayError {
    #[error("eigenvalue multiplicity {index} is not a non-negative integer: {value}")]
    NonIntegralMultiplicity { index: usize, value: String },
    #[error("matrix does not have order {0}")]
    WrongOrder(u64),
    #[error("matrix has no finite order up to {0}")]
    InfiniteOrder(u64),
    #[error("twist {twist} is not coprime to the working conductor {conductor}")]
    InvalidTwist { twist: i64, conductor: u32 },
    #[error("group is not contained in SL(V): generator {0} has determinant ≠ 1")]
    NotSpecialLinear(usize),
    #[error("age is not constant on conjugacy class {0}")]
    AgeNotClassFunction(usize),
    #[error("element is not junior (age {0})")]
    NotJunior(String),
    #[error(
        "eigenspace for exponent {exponent} has dimension {found}, multiplicity says {expected}"
    )]
    EigenspaceMismatch {
        exponent: u64,
        expected: u64,
        found: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Choice of primitive root: ζ ↦ ζ^t with gcd(t, N*) = 1. The default is t = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisTwist(pub i64);

impl Default for GaloisTwist {
    fn default() -> Self {
        GaloisTwist(1)
    }
}

impl GaloisTwist {
    pub fn validate(self, conductor: u32) -> Result<Self, McKayError> {
        if self.0.gcd(&(conductor as i64)) == 1 {
            Ok(self)
        } else {
            Err(McKayError::InvalidTwist {
                twist: self.0,
                conductor,
            })
        }
    }

    /// t⁻¹ mod r.
    pub fn inverse_mod(self, r: u64) -> u64 {
        if r == 1 {
            return 0;
        }
        let t = self.0.rem_euclid(r as i64);
        let e = t.extended_gcd(&(r as i64));
        assert_eq!(e.gcd, 1, "twist not coprime to element order");
        e.x.rem_euclid(r as i64) as u64
    }

    /// Moves base multiplicities (relative to E(r)) to the twisted root.
    pub fn apply(self, multiplicities: &[u64]) -> Vec<u64> {
        let r = multiplicities.len() as u64;
        let t = self.0.rem_euclid(r as i64) as u64;
        // twisted exponent j' corresponds to base exponent t·j'
        (0..r)
            .map(|j| multiplicities[((t * j) % r) as usize])
            .collect()
    }
}

/// Per-element eigenvalue data and age.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgeRecord {
    pub element_id: ElemId,
    pub order: u64,
    /// `multiplicities[j]` = multiplicity of the eigenvalue ζ_r^j.
    pub multiplicities: Vec<u64>,
    #[serde(serialize_with = "serialize_ratio")]
    pub age: BigRational,
    pub is_junior: bool,
    pub is_reflection: bool,
    /// Eigenvalue exponents with multiplicity, ascending.
    pub weights: Vec<u64>,
}

fn serialize_ratio<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&render_ratio(q))
}

/// Exact fraction as `p/q`, integers without a denominator.
pub fn render_ratio(q: &BigRational) -> String {
    q.to_string()
}

impl AgeRecord {
    fn from_multiplicities(element_id: ElemId, multiplicities: Vec<u64>) -> Self {
        let order = multiplicities.len() as u64;
        let dim: u64 = multiplicities.iter().sum();
        let weights: Vec<u64> = multiplicities
            .iter()
            .enumerate()
            .flat_map(|(j, &m)| std::iter::repeat_n(j as u64, m as usize))
            .collect();
        let total: u64 = weights.iter().sum();
        let age = BigRational::new(BigInt::from(total), BigInt::from(order));
        Self {
            element_id,
            order,
            is_junior: age == BigRational::from_integer(1.into()),
            is_reflection: order > 1 && multiplicities[0] == dim - 1,
            multiplicities,
            age,
            weights,
        }
    }
}

/// Multiplicity of each eigenvalue ζ_r^j of `g`, by the exact trace transform
/// m_j = (1/r) Σ_k tr(g^k) ζ_r^(−jk). Verifies that g has order exactly r.
pub fn eigen_multiplicities(g: &CycMatrix, r: u64) -> Result<Vec<u64>, McKayError> {
    if r == 0 {
        return Err(McKayError::WrongOrder(0));
    }
    let mut traces = Vec::with_capacity(r as usize);
    let mut power = CycMatrix::identity(g.dim());
    for k in 0..r {
        if k > 0 && power.is_identity() {
            return Err(McKayError::WrongOrder(r));
        }
        traces.push(power.trace());
        power = power.mul(g)?;
    }
    if !power.is_identity() {
        return Err(McKayError::WrongOrder(r));
    }
    multiplicities_from_traces(&traces, g.dim())
}

/// Order of a finite-order matrix, searching up to `limit`.
pub fn matrix_order(g: &CycMatrix, limit: u64) -> Result<u64, McKayError> {
    let mut power = g.clone();
    for k in 1..=limit {
        if power.is_identity() {
            return Ok(k);
        }
        power = power.mul(g)?;
    }
    Err(McKayError::InfiniteOrder(limit))
}

/// The trace transform on a list `tr(g^0), …, tr(g^(r−1))`.
pub(crate) fn multiplicities_from_traces(
    traces: &[CyclotomicNumber],
    dim: usize,
) -> Result<Vec<u64>, McKayError> {
    let r = traces.len() as u32;
    let conductor = traces.iter().fold(r, |acc, t| lcm(acc, t.conductor()));
    let traces: Vec<CyclotomicNumber> = traces.iter().map(|t| t.lift(conductor)).collect();
    let roots: Vec<CyclotomicNumber> = (0..r)
        .map(|e| CyclotomicNumber::root_of_unity(r, -(e as i64)).lift(conductor))
        .collect();
    let mut out = Vec::with_capacity(r as usize);
    for j in 0..r as usize {
        let mut acc = CyclotomicNumber::zero();
        for (k, tr) in traces.iter().enumerate() {
            if tr.is_zero() {
                continue;
            }
            let e = (j * k) % r as usize;
            acc = &acc + &(tr * &roots[e]);
        }
        let value = acc
            .as_rational()
            .map(|q| q / BigInt::from(r))
            .filter(|q| q.is_integer() && !q.is_negative());
        match value.and_then(|q| q.to_integer().to_u64()) {
            Some(m) => out.push(m),
            None => {
                return Err(McKayError::NonIntegralMultiplicity {
                    index: j,
                    value: (&acc / &CyclotomicNumber::from_integer(r as i64)).render(),
                })
            }
        }
    }
    if out.iter().sum::<u64>() != dim as u64 {
        return Err(McKayError::NonIntegralMultiplicity {
            index: 0,
            value: format!(
                "multiplicities sum to {} in dimension {dim}",
                out.iter().sum::<u64>()
            ),
        });
    }
    Ok(out)
}

/// Age of a finite-order matrix under a twist.
pub fn age(g: &CycMatrix, twist: GaloisTwist) -> Result<BigRational, McKayError> {
    let r = matrix_order(g, 1 << 16)?;
    let base = eigen_multiplicities(g, r)?;
    Ok(AgeRecord::from_multiplicities(0, twist.apply(&base)).age)
}

/// rank(g − I) = 1.
pub fn is_reflection(g: &CycMatrix) -> bool {
    g.sub(&CycMatrix::identity(g.dim()))
        .map(|d| d.rank() == 1)
        .unwrap_or(false)
}

/// Base (untwisted) eigenvalue multiplicities of every element of a group.
#[derive(Clone, Debug)]
pub struct AgeTable {
    base: Vec<Vec<u64>>,
    working_conductor: u32,
}

impl AgeTable {
    /// Multiplicities for every element; traces of powers are read off the
    /// element table.
    pub fn new(group: &FiniteMatrixGroup) -> Result<Self, McKayError> {
        let traces: Vec<CyclotomicNumber> = group.elements().iter().map(CycMatrix::trace).collect();
        let mut base = Vec::with_capacity(group.order());
        for x in 0..group.order() {
            let r = group.element_order(x);
            let mut tr = Vec::with_capacity(r);
            let mut p = 0;
            for _ in 0..r {
                tr.push(traces[p].clone());
                p = group.mul(p, x);
            }
            base.push(multiplicities_from_traces(&tr, group.dim())?);
        }
        Ok(Self {
            base,
            working_conductor: group.working_conductor(),
        })
    }

    pub fn base_multiplicities(&self, x: ElemId) -> &[u64] {
        &self.base[x]
    }

    pub fn record(&self, x: ElemId, twist: GaloisTwist) -> AgeRecord {
        AgeRecord::from_multiplicities(x, twist.apply(&self.base[x]))
    }

    pub fn records(&self, twist: GaloisTwist) -> Result<Vec<AgeRecord>, McKayError> {
        twist.validate(self.working_conductor)?;
        Ok((0..self.base.len())
            .map(|x| self.record(x, twist))
            .collect())
    }
}

/// Junior conjugacy classes under a twist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JuniorClasses {
    pub count: usize,
    /// Least-id representative of each junior class, ascending.
    pub representatives: Vec<ElemId>,
    /// Every junior element, ascending.
    pub elements: Vec<ElemId>,
}

pub fn require_special_linear(group: &FiniteMatrixGroup) -> Result<(), McKayError> {
    match group
        .generators()
        .iter()
        .position(|g| !g.determinant().is_one())
    {
        Some(i) => Err(McKayError::NotSpecialLinear(i)),
        None => Ok(()),
    }
}

pub fn junior_classes(
    group: &FiniteMatrixGroup,
    table: &AgeTable,
    twist: GaloisTwist,
) -> Result<JuniorClasses, McKayError> {
    require_special_linear(group)?;
    let records = table.records(twist)?;
    for (c, class) in group.classes().iter().enumerate() {
        let a = &records[class[0]].age;
        if class.iter().any(|&x| &records[x].age != a) {
            return Err(McKayError::AgeNotClassFunction(c));
        }
    }
    let representatives: Vec<ElemId> = group
        .class_representatives()
        .into_iter()
        .filter(|&x| records[x].is_junior)
        .collect();
    let elements = records
        .iter()
        .filter(|r| r.is_junior)
        .map(|r| r.element_id)
        .collect();
    Ok(JuniorClasses {
        count: representatives.len(),
        representatives,
        elements,
    })
}

/// Eigenbasis of a finite-order element with the exponent of each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingEntry {
    pub order: u64,
    /// Exponent a_j of the j-th eigenbasis vector under the active twist.
    pub weights: Vec<u64>,
    /// Columns are the eigenvectors; x = P·y converts eigencoordinates y.
    pub eigenbasis: CycMatrix,
}

impl GradingEntry {
    pub fn sorted_weights(&self) -> Vec<u64> {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w
    }
}

/// Exact eigenbasis and weights a₁, …, a_n of a junior element.
///
/// Eigenvectors come from the kernels of g − ζ_r^j I; they are ordered by the
/// free column of the kernel basis, so a diagonal element gets the standard basis.
pub fn valuation_weights(g: &CycMatrix, twist: GaloisTwist) -> Result<GradingEntry, McKayError> {
    let entry = eigenbasis(g, twist)?;
    let total: u64 = entry.weights.iter().sum();
    if total != entry.order {
        return Err(McKayError::NotJunior(
            BigRational::new(total.into(), entry.order.into()).to_string(),
        ));
    }
    Ok(entry)
}

/// Eigenbasis and twisted exponents for any finite-order matrix.
pub fn eigenbasis(g: &CycMatrix, twist: GaloisTwist) -> Result<GradingEntry, McKayError> {
    let r = matrix_order(g, 1 << 16)?;
    let base = eigen_multiplicities(g, r)?;
    let tinv = twist.inverse_mod(r);
    let n = g.dim();
    let mut vectors: Vec<(usize, u64, Vec<CyclotomicNumber>)> = Vec::with_capacity(n);
    for (j, &m) in base.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let lambda =
            CycMatrix::identity(n).scale(&CyclotomicNumber::root_of_unity(r as u32, j as i64));
        let shifted = g.sub(&lambda)?;
        let ker = linalg::kernel(&shifted.rows(), n);
        if ker.len() as u64 != m {
            return Err(McKayError::EigenspaceMismatch {
                exponent: j as u64,
                expected: m,
                found: ker.len(),
            });
        }
        let weight = (tinv * j as u64) % r;
        vectors.extend(ker.into_iter().map(|(free, v)| (free, weight, v)));
    }
    vectors.sort_by_key(|(free, w, _)| (*free, *w));
    let weights = vectors.iter().map(|(_, w, _)| *w).collect();
    let cols: Vec<Vec<CyclotomicNumber>> = vectors.into_iter().map(|(_, _, v)| v).collect();
    let rows = (0..n)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    Ok(GradingEntry {
        order: r,
        weights,
        eigenbasis: CycMatrix::from_rows(rows)?,
    })
}

/// One row of a Galois sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub twist: i64,
    pub junior_class_count: usize,
    pub junior_elements: Vec<ElemId>,
    pub junior_subgroup_order: usize,
    pub torsion: AbelianStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub working_conductor: u32,
    pub rows: Vec<SweepRow>,
    /// All rows agree on the junior class count and the torsion factors.
    pub consistent: bool,
    /// Some twist changes the set of junior elements.
    pub junior_sets_differ: bool,
}

/// Representative twists: one t in (Z/N*)^× per residue class mod the group exponent,
/// since only t mod ord(g) enters any age.
pub fn representative_twists(group: &FiniteMatrixGroup) -> Vec<GaloisTwist> {
    let n = group.working_conductor() as i64;
    let e = group.group_exponent() as i64;
    let mut seen = vec![false; e as usize];
    let mut out = Vec::new();
    for t in 1..=n {
        if t.gcd(&n) != 1 {
            continue;
        }
        let class = (t % e) as usize;
        if !seen[class] {
            seen[class] = true;
            out.push(GaloisTwist(t));
        }
    }
    out
}

/// Junior data and Ab(G/H) under every representative twist.
pub fn galois_sweep(
    group: &FiniteMatrixGroup,
    table: &AgeTable,
) -> Result<SweepReport, McKayError> {
    require_special_linear(group)?;
    let mut rows = Vec::new();
    for twist in representative_twists(group) {
        let juniors = junior_classes(group, table, twist)?;
        let h = subgroup_generated(group, &juniors.elements);
        let torsion = abelianization(&quotient(group, &h)?)?;
        rows.push(SweepRow {
            twist: twist.0,
            junior_class_count: juniors.count,
            junior_elements: juniors.elements,
            junior_subgroup_order: h.order(),
            torsion,
        });
    }
    let first = &rows[0];
    let consistent = rows
        .iter()
        .all(|r| r.junior_class_count == first.junior_class_count && r.torsion == first.torsion);
    let junior_sets_differ = rows
        .iter()
        .any(|r| r.junior_elements != first.junior_elements);
    Ok(SweepReport {
        working_conductor: group.working_conductor(),
        rows,
        consistent,
        junior_sets_differ,
    })
}
