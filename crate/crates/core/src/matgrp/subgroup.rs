use super::group::{ElemId, FiniteGroup};

/// Guard for the all-pairs commutator scan.
pub const ALL_PAIRS_COMMUTATOR_LIMIT: usize = 4096;

/// A subgroup of some parent group, stored as a sorted set of parent ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupHandle {
    parent_order: usize,
    members: Vec<ElemId>,
    mask: Vec<bool>,
}

impl SubgroupHandle {
    fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Self {
            parent_order: mask.len(),
            members,
            mask,
        }
    }

    pub fn trivial(parent_order: usize) -> Self {
        let mut mask = vec![false; parent_order];
        mask[0] = true;
        Self::from_mask(mask)
    }

    pub fn whole(parent_order: usize) -> Self {
        Self::from_mask(vec![true; parent_order])
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.mask[x]
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::from_mask(
            self.mask
                .iter()
                .zip(&other.mask)
                .map(|(&a, &b)| a && b)
                .collect(),
        )
    }

    /// Checks closure under multiplication and inverses in `group`.
    pub fn is_closed_in<G: FiniteGroup + ?Sized>(&self, group: &G) -> bool {
        self.contains(0)
            && self.members.iter().all(|&a| {
                self.contains(group.inv(a))
                    && self.members.iter().all(|&b| self.contains(group.mul(a, b)))
            })
    }
}

/// Smallest subgroup containing `seed`.
///
/// Seeds already inside the subgroup built so far are skipped, so the closure
/// is re-run at most log₂|G| times.
pub fn subgroup_generated<G: FiniteGroup + ?Sized>(group: &G, seed: &[ElemId]) -> SubgroupHandle {
    let n = group.order();
    let mut mask = vec![false; n];
    mask[0] = true;
    let mut members = vec![0];
    let mut gens: Vec<ElemId> = Vec::new();
    for &s in seed {
        if mask[s] {
            continue;
        }
        gens.push(s);
        // old members are already closed under the old generators
        let mut frontier: Vec<(ElemId, bool)> = members.iter().map(|&m| (m, true)).collect();
        while let Some((x, only_new)) = frontier.pop() {
            let todo = if only_new {
                &gens[gens.len() - 1..]
            } else {
                &gens[..]
            };
            for &g in todo {
                let y = group.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                    frontier.push((y, false));
                }
            }
        }
    }
    SubgroupHandle::from_mask(mask)
}

/// Smallest normal subgroup containing `seed`.
pub fn normal_closure<G: FiniteGroup + ?Sized>(group: &G, seed: &[ElemId]) -> SubgroupHandle {
    let ngens = group.generator_ids().len();
    let mut sub = subgroup_generated(group, seed);
    loop {
        let extra: Vec<ElemId> = sub
            .members()
            .iter()
            .flat_map(|&h| (0..ngens).map(move |a| (h, a)))
            .map(|(h, a)| group.conjugate_by_generator(h, a))
            .filter(|&c| !sub.contains(c))
            .collect();
        if extra.is_empty() {
            return sub;
        }
        let mut seed = sub.members().to_vec();
        seed.extend(extra);
        sub = subgroup_generated(group, &seed);
    }
}

pub fn commutator(group: &(impl FiniteGroup + ?Sized), a: ElemId, b: ElemId) -> ElemId {
    group.mul(group.mul(group.inv(a), group.inv(b)), group.mul(a, b))
}

/// The derived subgroup [G, G].
///
/// Up to [`ALL_PAIRS_COMMUTATOR_LIMIT`] elements every commutator is formed;
/// above it, the normal closure of generator commutators is taken.
pub fn commutator_subgroup<G: FiniteGroup + ?Sized>(group: &G) -> SubgroupHandle {
    let n = group.order();
    if n <= ALL_PAIRS_COMMUTATOR_LIMIT {
        let mut seen = vec![false; n];
        let mut seed = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let c = commutator(group, a, b);
                if !seen[c] {
                    seen[c] = true;
                    seed.push(c);
                }
            }
        }
        seed.sort_unstable();
        subgroup_generated(group, &seed)
    } else {
        let gens = group.generator_ids();
        let seed: Vec<ElemId> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| commutator(group, a, b))
            .collect();
        normal_closure(group, &seed)
    }
}

/// True when conjugation by every generator maps the subgroup into itself.
pub fn is_normal<G: FiniteGroup + ?Sized>(group: &G, sub: &SubgroupHandle) -> bool {
    let ngens = group.generator_ids().len();
    sub.members()
        .iter()
        .all(|&h| (0..ngens).all(|a| sub.contains(group.conjugate_by_generator(h, a))))
}

/// A subgroup viewed as a group in its own right, with ids `0..|H|` in the
/// order of the parent's sorted member list.
pub struct SubgroupView<'a, G: FiniteGroup + ?Sized> {
    parent: &'a G,
    members: Vec<ElemId>,
    position: Vec<usize>,
    orders: Vec<usize>,
    inverses: Vec<ElemId>,
    gens: Vec<ElemId>,
}

impl<'a, G: FiniteGroup + ?Sized> SubgroupView<'a, G> {
    pub fn new(parent: &'a G, sub: &SubgroupHandle) -> Self {
        let members = sub.members().to_vec();
        let mut position = vec![usize::MAX; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            position[m] = i;
        }
        let orders = members.iter().map(|&m| parent.element_order(m)).collect();
        let inverses = members.iter().map(|&m| position[parent.inv(m)]).collect();
        let mut view = Self {
            parent,
            members,
            position,
            orders,
            inverses,
            gens: Vec::new(),
        };
        view.gens = minimal_generators(&view);
        view
    }

    pub fn parent_id(&self, local: ElemId) -> ElemId {
        self.members[local]
    }

    pub fn local_id(&self, parent_id: ElemId) -> Option<ElemId> {
        self.position
            .get(parent_id)
            .copied()
            .filter(|&p| p != usize::MAX)
    }

    /// Re-expresses a subgroup of the parent contained in this one in local ids.
    pub fn restrict(&self, sub: &SubgroupHandle) -> SubgroupHandle {
        let mut mask = vec![false; self.members.len()];
        for &m in sub.members() {
            if let Some(i) = self.local_id(m) {
                mask[i] = true;
            }
        }
        SubgroupHandle::from_mask(mask)
    }
}

impl<G: FiniteGroup + ?Sized> FiniteGroup for SubgroupView<'_, G> {
    fn order(&self) -> usize {
        self.members.len()
    }

    fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.position[self.parent.mul(self.members[a], self.members[b])]
    }

    fn inv(&self, a: ElemId) -> ElemId {
        self.inverses[a]
    }

    fn generator_ids(&self) -> Vec<ElemId> {
        self.gens.clone()
    }

    fn element_order(&self, a: ElemId) -> usize {
        self.orders[a]
    }
}

/// A generating set picked greedily in id order.
pub fn minimal_generators<G: FiniteGroup + ?Sized>(group: &G) -> Vec<ElemId> {
    let mut gens = Vec::new();
    let mut sub = SubgroupHandle::trivial(group.order());
    for x in 0..group.order() {
        if !sub.contains(x) {
            gens.push(x);
            sub = subgroup_generated(group, &gens);
        }
        if sub.is_whole() {
            break;
        }
    }
    gens
}
