use super::group::{orders_and_inverses, ElemId, FiniteGroup};
use super::subgroup::{is_normal, SubgroupHandle};
use super::GroupError;

/// G/N for a normal subgroup N. Cosets are numbered by their least parent id,
/// so coset 0 is N itself.
pub struct QuotientGroup<'a, G: FiniteGroup + ?Sized> {
    parent: &'a G,
    normal_subgroup: SubgroupHandle,
    coset_reps: Vec<ElemId>,
    coset_of: Vec<usize>,
    orders: Vec<usize>,
    inverses: Vec<ElemId>,
    gens: Vec<ElemId>,
}

/// Quotient of `group` by `normal`; fails if `normal` is not normal.
pub fn quotient<'a, G: FiniteGroup + ?Sized>(
    group: &'a G,
    normal: &SubgroupHandle,
) -> Result<QuotientGroup<'a, G>, GroupError> {
    if !is_normal(group, normal) {
        return Err(GroupError::NotNormal);
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut coset_reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = coset_reps.len();
        coset_reps.push(x);
        for &h in normal.members() {
            coset_of[group.mul(x, h)] = c;
        }
    }
    let mut q = QuotientGroup {
        parent: group,
        normal_subgroup: normal.clone(),
        coset_reps,
        coset_of,
        orders: Vec::new(),
        inverses: Vec::new(),
        gens: Vec::new(),
    };
    let (orders, inverses) = orders_and_inverses(q.order(), |a, b| q.mul(a, b));
    q.orders = orders;
    q.inverses = inverses;
    let mut gens: Vec<ElemId> = group
        .generator_ids()
        .iter()
        .map(|&g| q.coset_of[g])
        .filter(|&c| c != 0)
        .collect();
    gens.sort_unstable();
    gens.dedup();
    q.gens = gens;
    Ok(q)
}

impl<G: FiniteGroup + ?Sized> QuotientGroup<'_, G> {
    pub fn normal_subgroup(&self) -> &SubgroupHandle {
        &self.normal_subgroup
    }

    /// Least parent id in each coset.
    pub fn coset_reps(&self) -> &[ElemId] {
        &self.coset_reps
    }

    pub fn coset_of(&self, parent_id: ElemId) -> usize {
        self.coset_of[parent_id]
    }

    /// Full multiplication table on coset indices, row-major.
    pub fn table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n)
            .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Preimage in the parent of a subgroup of the quotient.
    pub fn preimage(&self, sub: &SubgroupHandle) -> Vec<ElemId> {
        (0..self.coset_of.len())
            .filter(|&x| sub.contains(self.coset_of[x]))
            .collect()
    }
}

impl<G: FiniteGroup + ?Sized> FiniteGroup for QuotientGroup<'_, G> {
    fn order(&self) -> usize {
        self.coset_reps.len()
    }

    fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.coset_of[self.parent.mul(self.coset_reps[a], self.coset_reps[b])]
    }

    fn inv(&self, a: ElemId) -> ElemId {
        self.inverses[a]
    }

    fn generator_ids(&self) -> Vec<ElemId> {
        if self.gens.is_empty() {
            vec![0]
        } else {
            self.gens.clone()
        }
    }

    fn element_order(&self, a: ElemId) -> usize {
        self.orders[a]
    }
}
