use serde::Serialize;

use super::group::{ElemId, FiniteGroup};
use super::subgroup::subgroup_generated;
use super::GroupError;

/// Invariant-factor decomposition d₁ | d₂ | … | d_k of a finite abelian group,
/// each d_i ≥ 2. The trivial group has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianStructure {
    pub invariant_factors: Vec<u64>,
    pub order: u64,
}

impl AbelianStructure {
    pub fn trivial() -> Self {
        Self::from_factors(Vec::new())
    }

    /// Builds the structure from a divisibility chain; panics if the chain is malformed.
    pub fn from_factors(invariant_factors: Vec<u64>) -> Self {
        assert!(
            invariant_factors.iter().all(|&d| d >= 2),
            "invariant factors must be at least 2"
        );
        assert!(
            invariant_factors.windows(2).all(|w| w[1] % w[0] == 0),
            "not a divisibility chain"
        );
        let order = invariant_factors.iter().product();
        Self {
            invariant_factors,
            order,
        }
    }

    /// Normal form of Z/c₁ × … × Z/c_r for arbitrary positive c_i.
    pub fn from_cyclic_factors(cyclic: &[u64]) -> Self {
        let mut partitions: Vec<(u64, Vec<u64>)> = Vec::new();
        for &c in cyclic {
            for (p, e) in factorize(c) {
                let q = p.pow(e);
                match partitions.iter_mut().find(|(pp, _)| *pp == p) {
                    Some((_, parts)) => parts.push(q),
                    None => partitions.push((p, vec![q])),
                }
            }
        }
        Self::from_factors(merge_primary(partitions))
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// `Z/2 ⊕ Z/6`, or `0` for the trivial group.
    pub fn render(&self) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        self.invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// primary components (prime, prime-power parts) to an ascending divisibility chain
fn merge_primary(mut partitions: Vec<(u64, Vec<u64>)>) -> Vec<u64> {
    let k = partitions
        .iter()
        .map(|(_, parts)| parts.len())
        .max()
        .unwrap_or(0);
    let mut factors = vec![1u64; k];
    for (_, parts) in &mut partitions {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        for (i, &q) in parts.iter().enumerate() {
            factors[i] *= q;
        }
    }
    factors.reverse();
    factors
}

fn require_abelian<G: FiniteGroup + ?Sized>(group: &G) -> Result<(), GroupError> {
    if group.is_abelian() {
        Ok(())
    } else {
        Err(GroupError::NotAbelian)
    }
}

/// Invariant factors of an abelian group from element-order counts.
///
/// For each prime p, N_k = #{x : x^(p^k) = 1} = p^(Σᵢ min(λᵢ, k)) where λ is
/// the partition of the p-primary part; successive differences of log_p N_k
/// count the parts of size ≥ k.
pub fn abelian_invariants<G: FiniteGroup + ?Sized>(
    group: &G,
) -> Result<AbelianStructure, GroupError> {
    require_abelian(group)?;
    let n = group.order() as u64;
    let orders: Vec<u64> = (0..group.order())
        .map(|x| group.element_order(x) as u64)
        .collect();
    let mut partitions = Vec::new();
    for (p, e) in factorize(n) {
        let log_count = |k: u32| -> u32 {
            let pk = p.pow(k);
            let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let mut l = 0;
            let mut c = count;
            while c > 1 {
                assert!(c.is_multiple_of(p), "order count is not a power of p");
                c /= p;
                l += 1;
            }
            l
        };
        let mut logs = vec![0u32];
        let mut k = 1;
        while *logs.last().unwrap() < e {
            logs.push(log_count(k));
            k += 1;
        }
        // parts_at_least[k] = logs[k] - logs[k-1]
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let mut parts = Vec::new();
        for (i, &c) in at_least.iter().enumerate() {
            let next = at_least.get(i + 1).copied().unwrap_or(0);
            for _ in 0..(c - next) {
                parts.push(p.pow(i as u32 + 1));
            }
        }
        partitions.push((p, parts));
    }
    Ok(AbelianStructure::from_factors(merge_primary(partitions)))
}

pub(crate) fn pow<G: FiniteGroup + ?Sized>(group: &G, x: ElemId, mut e: u64) -> ElemId {
    let mut acc = 0;
    let mut sq = x;
    while e > 0 {
        if e & 1 == 1 {
            acc = group.mul(acc, sq);
        }
        e >>= 1;
        if e > 0 {
            sq = group.mul(sq, sq);
        }
    }
    acc
}

/// An explicit basis of an abelian group matching its invariant factors.
#[derive(Clone, Debug)]
pub struct AbelianBasis {
    /// Basis elements with their orders, orders forming the divisibility chain.
    pub generators: Vec<(ElemId, u64)>,
    /// Coordinates of every element against `generators`.
    pub coords: Vec<Vec<u64>>,
}

impl AbelianBasis {
    pub fn structure(&self) -> AbelianStructure {
        AbelianStructure::from_factors(self.generators.iter().map(|&(_, d)| d).collect())
    }
}

/// Finds a basis e₁, …, e_k with ord(e_i) = d_i and A = ⟨e₁⟩ ⊕ … ⊕ ⟨e_k⟩.
///
/// Per prime, repeatedly take an element of maximal order p^j modulo the span
/// S built so far and replace it by a coset member of order exactly p^j; the
/// span stays a direct summand. Primary bases are then merged factor-wise.
pub fn abelian_basis<G: FiniteGroup + ?Sized>(group: &G) -> Result<AbelianBasis, GroupError> {
    require_abelian(group)?;
    let n = group.order();
    let mut primary: Vec<Vec<(ElemId, u64)>> = Vec::new();
    for (p, _) in factorize(n as u64) {
        let sylow: Vec<ElemId> = (0..n)
            .filter(|&x| is_power_of(group.element_order(x) as u64, p))
            .collect();
        let mut span = subgroup_generated(group, &[]);
        let mut basis: Vec<(ElemId, u64)> = Vec::new();
        while span.order() < sylow.len() {
            let quotient_order = |x: ElemId| -> u64 {
                let mut q = 1;
                let mut y = x;
                while !span.contains(y) {
                    y = pow(group, y, p);
                    q *= p;
                }
                q
            };
            let (x, q) = sylow
                .iter()
                .map(|&x| (x, quotient_order(x)))
                .fold((0, 1), |best, cur| if cur.1 > best.1 { cur } else { best });
            let y = span
                .members()
                .iter()
                .map(|&s| group.mul(x, s))
                .find(|&y| group.element_order(y) as u64 == q)
                .expect("a coset member of quotient order exists");
            basis.push((y, q));
            let gens: Vec<ElemId> = basis.iter().map(|&(b, _)| b).collect();
            span = subgroup_generated(group, &gens);
        }
        primary.push(basis);
    }
    let k = primary.iter().map(Vec::len).max().unwrap_or(0);
    let mut generators = Vec::with_capacity(k);
    for i in 0..k {
        let (mut g, mut d) = (0, 1);
        for basis in &primary {
            if let Some(&(b, o)) = basis.get(i) {
                g = group.mul(g, b);
                d *= o;
            }
        }
        generators.push((g, d));
    }
    generators.reverse();

    let mut coords: Vec<Option<Vec<u64>>> = vec![None; n];
    let mut tuple = vec![0u64; k];
    let mut x = 0;
    loop {
        if coords[x].is_some() {
            return Err(GroupError::Internal(
                "abelian basis is not independent".into(),
            ));
        }
        coords[x] = Some(tuple.clone());
        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == k {
                let coords = coords
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| GroupError::Internal("abelian basis does not span".into()))?;
                return Ok(AbelianBasis { generators, coords });
            }
            let (g, d) = generators[i];
            tuple[i] += 1;
            x = group.mul(x, g);
            if tuple[i] < d {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
