use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use crate::cyclo::phi::lcm;

use super::{CycMatrix, GroupError};

/// Index of an element inside its group's element table. The identity is always 0.
pub type ElemId = usize;

/// Default cap on the number of elements produced by [`FiniteMatrixGroup::close`].
pub const DEFAULT_MAX_SIZE: usize = 20_000;

/// A finite group presented by an element table with integer ids.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul(&self, a: ElemId, b: ElemId) -> ElemId;
    fn inv(&self, a: ElemId) -> ElemId;
    /// Ids of a generating set (may contain the identity or repeats).
    fn generator_ids(&self) -> Vec<ElemId>;
    fn element_order(&self, a: ElemId) -> usize;

    fn identity(&self) -> ElemId {
        0
    }

    /// `g x g⁻¹` for the `gen_index`-th generator `g`.
    fn conjugate_by_generator(&self, x: ElemId, gen_index: usize) -> ElemId {
        let g = self.generator_ids()[gen_index];
        self.mul(self.mul(g, x), self.inv(g))
    }

    fn is_abelian(&self) -> bool {
        let gens = self.generator_ids();
        gens.iter().enumerate().all(|(i, &a)| {
            gens[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, x| num_integer::lcm(acc, self.element_order(x)))
    }
}

/// Orders and inverses of all elements, by walking the cyclic subgroup of each
/// element not yet covered: if x has order r then x^k has order r / gcd(k, r)
/// and inverse x^(r-k).
pub(crate) fn orders_and_inverses(
    n: usize,
    mul: impl Fn(ElemId, ElemId) -> ElemId,
) -> (Vec<usize>, Vec<ElemId>) {
    let mut order = vec![0usize; n];
    let mut inverse = vec![usize::MAX; n];
    order[0] = 1;
    inverse[0] = 0;
    for x in 1..n {
        if order[x] != 0 {
            continue;
        }
        let mut powers = vec![0, x];
        let mut cur = x;
        loop {
            cur = mul(cur, x);
            if cur == 0 {
                break;
            }
            powers.push(cur);
            assert!(
                powers.len() <= n,
                "element of infinite order in a finite table"
            );
        }
        let r = powers.len();
        for (k, &p) in powers.iter().enumerate().skip(1) {
            order[p] = r / num_integer::gcd(k, r);
            inverse[p] = powers[r - k];
        }
    }
    (order, inverse)
}

type MatKey = Vec<BigInt>;

fn key_of(m: &CycMatrix) -> MatKey {
    let mut key = Vec::new();
    for e in m.entries() {
        let (_, num, den) = e.key();
        key.push(den.clone());
        key.extend(num.iter().cloned());
    }
    key
}

/// A finite matrix group, closed from generators.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    dim: usize,
    conductor: u32,
    generators: Vec<CycMatrix>,
    generator_ids: Vec<ElemId>,
    elements: Vec<CycMatrix>,
    index: HashMap<MatKey, ElemId>,
    /// BFS parent and the generator that was left-multiplied onto it.
    parent: Vec<(ElemId, usize)>,
    /// `right[x][a]` = x · g_a
    right: Vec<Vec<ElemId>>,
    /// `right_inv[a][z]` = z · g_a⁻¹
    right_inv: Vec<Vec<ElemId>>,
    /// `left[x][a]` = g_a · x
    left: Vec<Vec<ElemId>>,
    orders: Vec<usize>,
    inverses: Vec<ElemId>,
    exponent: usize,
    classes: Vec<Vec<ElemId>>,
    class_of: Vec<usize>,
}

impl FiniteMatrixGroup {
    /// Breadth-first closure of `generators` under left multiplication.
    ///
    /// Element ids follow BFS insertion order with generators applied in input
    /// order, so ids and class representatives are reproducible.
    pub fn close(generators: &[CycMatrix], max_size: usize) -> Result<Self, GroupError> {
        let Some(first) = generators.first() else {
            return Err(GroupError::NoGenerators);
        };
        let dim = first.dim();
        let mut conductor = 1;
        for g in generators {
            if g.dim() != dim {
                return Err(GroupError::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            if g.determinant().is_zero() {
                return Err(GroupError::Singular);
            }
            conductor = lcm(conductor, g.conductor());
        }
        let gens: Vec<CycMatrix> = generators.iter().map(|g| g.lift(conductor)).collect();

        let identity = CycMatrix::identity(dim).lift(conductor);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(key_of(&identity), 0)]);
        let mut parent = vec![(0, usize::MAX)];
        let mut left: Vec<Vec<ElemId>> = Vec::new();
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(gens.len());
            for (a, g) in gens.iter().enumerate() {
                let y = g.mul(&elements[x])?;
                let k = key_of(&y);
                let id = match index.get(&k) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= max_size {
                            return Err(GroupError::TooLarge {
                                max_size,
                                partial: elements.len(),
                            });
                        }
                        let id = elements.len();
                        index.insert(k, id);
                        elements.push(y);
                        parent.push((x, a));
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            if left.len() <= x {
                left.resize(x + 1, Vec::new());
            }
            left[x] = row;
        }

        let n = elements.len();
        let generator_ids: Vec<ElemId> = (0..gens.len()).map(|a| left[0][a]).collect();
        let mut right = vec![Vec::with_capacity(gens.len()); n];
        let mut right_inv = vec![vec![0; n]; gens.len()];
        for (x, m) in elements.iter().enumerate() {
            for (a, g) in gens.iter().enumerate() {
                let y = m.mul(g)?;
                let id = *index
                    .get(&key_of(&y))
                    .expect("closed under right multiplication");
                right[x].push(id);
                right_inv[a][id] = x;
            }
        }

        let mut group = Self {
            dim,
            conductor,
            generators: gens,
            generator_ids,
            elements,
            index,
            parent,
            right,
            right_inv,
            left,
            orders: Vec::new(),
            inverses: Vec::new(),
            exponent: 1,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        let (orders, inverses) = orders_and_inverses(n, |a, b| group.mul(a, b));
        group.exponent = orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o));
        group.orders = orders;
        group.inverses = inverses;
        let (classes, class_of) = super::conjugacy_classes(&group);
        group.classes = classes;
        group.class_of = class_of;
        Ok(group)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Common conductor of all entries of all elements.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// The working conductor N*: lcm of the entry conductor and the group exponent.
    pub fn working_conductor(&self) -> u32 {
        lcm(self.conductor, self.exponent as u32)
    }

    pub fn generators(&self) -> &[CycMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn element(&self, id: ElemId) -> &CycMatrix {
        &self.elements[id]
    }

    /// Id of a matrix, if it belongs to the group.
    pub fn id_of(&self, m: &CycMatrix) -> Option<ElemId> {
        if m.dim() != self.dim || !self.conductor.is_multiple_of(m.conductor()) {
            return None;
        }
        self.index.get(&key_of(&m.lift(self.conductor))).copied()
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn group_exponent(&self) -> usize {
        self.exponent
    }

    /// Conjugacy classes, each sorted, ordered by least element id.
    pub fn classes(&self) -> &[Vec<ElemId>] {
        &self.classes
    }

    pub fn class_of(&self, x: ElemId) -> usize {
        self.class_of[x]
    }

    /// Representative (least id) of each conjugacy class.
    pub fn class_representatives(&self) -> Vec<ElemId> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Every element has determinant exactly 1 (checked on generators).
    pub fn is_special_linear(&self) -> bool {
        self.generators.iter().all(|g| g.determinant().is_one())
    }

    /// BFS depth of an element (word length in the generators).
    pub fn depth(&self, mut x: ElemId) -> usize {
        let mut d = 0;
        while x != 0 {
            x = self.parent[x].0;
            d += 1;
        }
        d
    }

    /// `g_a · x`, read from the table built during closure.
    pub fn left_mul_generator(&self, a: usize, x: ElemId) -> ElemId {
        self.left[x][a]
    }
}

impl FiniteGroup for FiniteMatrixGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    // x · y with y = g_{c_k} ⋯ g_{c_1}: walk y's BFS ancestry, applying right
    // multiplications in the order g_{c_k}, …, g_{c_1}.
    fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        let mut z = x;
        let mut y = y;
        while y != 0 {
            let (p, a) = self.parent[y];
            z = self.right[z][a];
            y = p;
        }
        z
    }

    fn inv(&self, a: ElemId) -> ElemId {
        self.inverses[a]
    }

    fn generator_ids(&self) -> Vec<ElemId> {
        self.generator_ids.clone()
    }

    fn element_order(&self, a: ElemId) -> usize {
        self.orders[a]
    }

    fn conjugate_by_generator(&self, x: ElemId, gen_index: usize) -> ElemId {
        self.right_inv[gen_index][self.left[x][gen_index]]
    }

    fn exponent(&self) -> usize {
        self.exponent
    }
}
