use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use super::perm::Perm;
use crate::error::{Error, Result};

/// Default closure cap; override with `QUASIK_MAX_ORDER`.
pub const DEFAULT_MAX_ORDER: usize = 10_000;

const TABLE_LIMIT: usize = 1024;

pub fn max_order() -> usize {
    std::env::var("QUASIK_MAX_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

/// A conjugacy class: its lexicographically minimal member and all members,
/// as element indices of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A finite permutation group with its elements enumerated in lexicographic
/// order. Element index 0 is always the identity.
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
    classes: OnceLock<(Vec<ConjugacyClass>, Vec<usize>)>,
    orders: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::from_generators_capped(degree, generators, max_order())
    }

    /// Closure of `generators` under composition; fails once more than `cap`
    /// elements are found.
    pub fn from_generators_capped(
        degree: usize,
        generators: Vec<Perm>,
        cap: usize,
    ) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.then(g);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "group closure",
                            cap,
                        });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Perm> = seen.into_keys().collect();
        Ok(Self::from_sorted(degree, generators, elements))
    }

    fn from_sorted(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.then(b)] as u32);
                }
            }
            t
        });
        FiniteGroup {
            degree,
            generators,
            elements,
            index,
            inverses,
            table,
            classes: OnceLock::new(),
            orders: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    /// The subgroup consisting of the given element indices, which must form a
    /// subgroup. A generating set is chosen greedily in element order.
    pub fn subgroup(&self, members: &[usize]) -> FiniteGroup {
        let mut in_closure = vec![false; self.order()];
        let mut closure = vec![0usize];
        in_closure[0] = true;
        let mut gens = Vec::new();
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        for &m in &sorted {
            if in_closure[m] {
                continue;
            }
            gens.push(m);
            // re-close under the enlarged generating set
            let mut queue: VecDeque<usize> = closure.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !in_closure[y] {
                        in_closure[y] = true;
                        closure.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        debug_assert_eq!(closure.len(), sorted.len(), "members are not a subgroup");
        let elements = sorted.iter().map(|&i| self.elements[i].clone()).collect();
        let generators = gens.iter().map(|&i| self.elements[i].clone()).collect();
        Self::from_sorted(self.degree, generators, elements)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub const IDENTITY: usize = 0;

    /// Index of the product "first `a`, then `b`".
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, a: usize, k: u32) -> usize {
        let mut acc = Self::IDENTITY;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_orders(&self) -> &[u32] {
        self.orders
            .get_or_init(|| self.elements.iter().map(Perm::order).collect())
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.element_orders()[a]
    }

    pub fn exponent(&self) -> u32 {
        self.element_orders()
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64)) as u32
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.commute(a, b)))
    }

    pub fn same_elements(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    /// Stable content hash of the element set, used as a cache key.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.degree as u64).to_le_bytes());
        for p in &self.elements {
            for i in p.images() {
                h.update((i as u32).to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }

    fn class_data(&self) -> &(Vec<ConjugacyClass>, Vec<usize>) {
        self.classes.get_or_init(|| {
            let n = self.order();
            let gens = self.generator_indices();
            let mut class_id = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for start in 0..n {
                if class_id[start] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                class_id[start] = id;
                let mut members = vec![start];
                let mut queue = VecDeque::from([start]);
                while let Some(x) = queue.pop_front() {
                    for &g in &gens {
                        let y = self.conj(x, g);
                        if class_id[y] == usize::MAX {
                            class_id[y] = id;
                            members.push(y);
                            queue.push_back(y);
                        }
                    }
                }
                members.sort_unstable();
                classes.push(ConjugacyClass {
                    representative: start,
                    members,
                });
            }
            classes.sort_by_key(|c| (c.size(), c.representative));
            let mut class_of = vec![0; n];
            for (i, c) in classes.iter().enumerate() {
                for &m in &c.members {
                    class_of[m] = i;
                }
            }
            (classes, class_of)
        })
    }

    /// Conjugacy classes sorted by (size, representative); the identity class is first.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.class_data().0
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_data().1[a]
    }

    /// Element indices commuting with every given element index.
    pub fn centralizer_indices(&self, of: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| of.iter().all(|&s| self.commute(g, s)))
            .collect()
    }

    pub fn centralizer_of(&self, of: &[usize]) -> FiniteGroup {
        self.subgroup(&self.centralizer_indices(of))
    }

    pub fn is_central(&self, a: usize) -> bool {
        self.generator_indices().iter().all(|&g| self.commute(a, g))
    }

    /// Maps element indices of `sub` (a subgroup on the same points) into `self`.
    pub fn embed_indices(&self, sub: &FiniteGroup) -> Result<Vec<usize>> {
        sub.elements()
            .iter()
            .map(|p| self.index_of(p).ok_or(Error::NotAMember))
            .collect()
    }

    /// Element indices of the subgroup generated by the given elements, ascending.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[Self::IDENTITY] = true;
        let mut out = vec![Self::IDENTITY];
        let mut queue = VecDeque::from([Self::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Every subgroup as an ascending list of element indices, sorted by
    /// order and then lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let trivial = vec![Self::IDENTITY];
        found.insert((1, trivial.clone()));
        let mut queue = vec![trivial];
        while let Some(k) = queue.pop() {
            let mut inside = vec![false; self.order()];
            for &x in &k {
                inside[x] = true;
            }
            for g in 0..self.order() {
                if inside[g] {
                    continue;
                }
                let mut gens = k.clone();
                gens.push(g);
                let next = self.generated_by(&gens);
                if found.insert((next.len(), next.clone())) {
                    queue.push(next);
                }
            }
        }
        found.into_iter().map(|(_, s)| s).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_generators(
            3,
            vec![
                Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(s3().order(), 6);
        assert_eq!(FiniteGroup::from_generators(1, vec![]).unwrap().order(), 1);
        let c4 =
            FiniteGroup::from_generators(4, vec![Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()])
                .unwrap();
        assert_eq!(c4.order(), 4);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let r = FiniteGroup::from_generators(3, vec![Perm::identity(4)]);
        assert!(matches!(r, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![
            Perm::from_cycles(5, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ];
        let r = FiniteGroup::from_generators_capped(5, gens, 100);
        assert!(matches!(r, Err(Error::CapExceeded { cap: 100, .. })));
    }

    #[test]
    fn elements_sorted_and_identity_first() {
        let g = s3();
        assert!(g.element(0).is_identity());
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn s3_classes() {
        let g = s3();
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        for c in g.conjugacy_classes() {
            assert_eq!(c.representative, c.members[0]);
        }
    }

    #[test]
    fn subgroup_keeps_members() {
        let g = s3();
        let t = g
            .index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap())
            .unwrap();
        let c = g.centralizer_of(&[t]);
        assert_eq!(c.order(), 2);
        assert!(c.contains(g.element(t)));
        assert_eq!(c.generators().len(), 1);
    }
}

#[cfg(test)]
mod subgroup_tests {
    use crate::corpus::corpus_group;

    #[test]
    fn subgroup_counts() {
        for (name, count) in [
            ("trivial", 1),
            ("Z6", 4),
            ("S3", 6),
            ("Q8", 6),
            ("D4", 10),
            ("A4", 10),
            ("S4", 30),
        ] {
            let g = corpus_group(name).unwrap();
            let subs = g.subgroups();
            assert_eq!(subs.len(), count, "{name}");
            assert_eq!(subs[0], vec![0]);
            assert_eq!(subs.last().unwrap().len(), g.order());
        }
    }
}
