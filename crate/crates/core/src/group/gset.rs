use std::collections::VecDeque;
use std::sync::Arc;

use super::finite_group::FiniteGroup;
use super::hom::GroupHom;
use super::perm::Perm;
use crate::error::{Error, Result};

/// A finite set with a right action `x·g` of a permutation group.
#[derive(Clone, Debug)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    points: usize,
    generator_action: Vec<Perm>,
    element_action: Vec<Perm>,
}

impl GSet {
    /// Validates that the generator actions extend to a group action.
    pub fn new(
        group: Arc<FiniteGroup>,
        points: usize,
        generator_action: Vec<Perm>,
    ) -> Result<Self> {
        if generator_action.len() != group.generators().len() {
            return Err(Error::InvalidAction(format!(
                "{} generator actions given for {} generators",
                generator_action.len(),
                group.generators().len()
            )));
        }
        for a in &generator_action {
            if a.degree() != points {
                return Err(Error::DegreeMismatch {
                    expected: points,
                    found: a.degree(),
                });
            }
        }
        let gens = group.generator_indices();
        let mut action: Vec<Option<Perm>> = vec![None; group.order()];
        action[FiniteGroup::IDENTITY] = Some(Perm::identity(points));
        let mut queue = VecDeque::from([FiniteGroup::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            let ax = action[x].clone().expect("visited");
            for (&s, a) in gens.iter().zip(&generator_action) {
                let y = group.mul(x, s);
                let ay = ax.then(a);
                match &action[y] {
                    None => {
                        action[y] = Some(ay);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != ay => {
                        return Err(Error::InvalidAction(
                            "generator actions violate a group relation".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(GSet {
            group,
            points,
            generator_action,
            element_action: action
                .into_iter()
                .map(|a| a.expect("closure is connected"))
                .collect(),
        })
    }

    /// Builds the set from a rule giving each element's permutation of the points.
    pub fn from_element_rule(
        group: Arc<FiniteGroup>,
        points: usize,
        rule: impl Fn(usize) -> Perm,
    ) -> Result<Self> {
        let gens = group.generator_indices().into_iter().map(&rule).collect();
        Self::new(group, points, gens)
    }

    pub fn point(group: Arc<FiniteGroup>) -> Self {
        let gens = vec![Perm::identity(1); group.generators().len()];
        Self::new(group, 1, gens).expect("trivial action")
    }

    /// The defining permutation action on `{0..degree}`.
    pub fn natural(group: Arc<FiniteGroup>) -> Self {
        let gens = group.generators().to_vec();
        let d = group.degree();
        Self::new(group, d, gens).expect("natural action")
    }

    /// Right multiplication on the group's own elements.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let g = group.clone();
        Self::from_element_rule(group, g.order(), |s| {
            Perm::from_images((0..g.order()).map(|x| g.mul(x, s)).collect()).expect("bijection")
        })
        .expect("regular action")
    }

    /// Right cosets `Hx` of a subgroup given by element indices, acted on by
    /// right multiplication. Cosets are ordered by their minimal element.
    pub fn right_cosets(group: Arc<FiniteGroup>, subgroup: &[usize]) -> Result<Self> {
        let (coset_of, reps) = right_coset_data(&group, subgroup);
        let g = group.clone();
        let k = reps.len();
        Self::from_element_rule(group, k, |s| {
            Perm::from_images((0..k).map(|j| coset_of[g.mul(reps[j], s)]).collect())
                .expect("coset action is a bijection")
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn generator_action(&self) -> &[Perm] {
        &self.generator_action
    }

    /// `x·g` for an element index `g`.
    #[inline]
    pub fn act(&self, x: usize, g: usize) -> usize {
        self.element_action[g].image(x)
    }

    pub fn act_perm(&self, x: usize, g: &Perm) -> Option<usize> {
        self.group.index_of(g).map(|i| self.act(x, i))
    }

    pub fn fixes(&self, x: usize, g: usize) -> bool {
        self.act(x, g) == x
    }

    pub fn is_free(&self) -> bool {
        (1..self.group.order()).all(|g| (0..self.points).all(|x| !self.fixes(x, g)))
    }

    pub fn is_trivial(&self) -> bool {
        self.generator_action.iter().all(Perm::is_identity)
    }

    /// Orbits of the subgroup spanned by the given element indices, restricted to
    /// `domain` (which must be invariant). Each orbit lists its points ascending;
    /// orbits are ordered by minimal point.
    pub fn orbits_of(&self, generators: &[usize], domain: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut orbits = Vec::new();
        let mut sorted = domain.to_vec();
        sorted.sort_unstable();
        for &x in &sorted {
            if seen[x] {
                continue;
            }
            seen[x] = true;
            let mut orbit = vec![x];
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &g in generators {
                    let z = self.act(y, g);
                    if !seen[z] {
                        seen[z] = true;
                        orbit.push(z);
                        queue.push_back(z);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn orbit_count(&self) -> usize {
        let all: Vec<usize> = (0..self.points).collect();
        self.orbits_of(&self.group.generator_indices(), &all).len()
    }

    /// Pullback `φ*X` along `hom: G → H` of an `H`-set.
    pub fn pullback(&self, hom: &GroupHom) -> Result<GSet> {
        if !hom.target().same_elements(&self.group) {
            return Err(Error::RingMismatch);
        }
        let x = self.clone();
        Self::from_element_rule(hom.source().clone(), self.points, |g| {
            x.element_action[hom.apply(g)].clone()
        })
    }

    /// The action transported to a group with identical elements (e.g. the same
    /// group with a different generating set).
    pub fn with_group(&self, group: Arc<FiniteGroup>) -> Result<GSet> {
        if !group.same_elements(&self.group) {
            return Err(Error::RingMismatch);
        }
        let x = self.clone();
        Self::from_element_rule(group.clone(), self.points, |g| {
            x.element_action[x.group.index_of(group.element(g)).expect("same elements")].clone()
        })
    }
}

/// Right cosets `Hx`: the coset index of every element, and the minimal
/// element of each coset (coset 0 is `H` itself).
pub(crate) fn right_coset_data(
    group: &FiniteGroup,
    subgroup: &[usize],
) -> (Vec<usize>, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    for x in 0..group.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &h in subgroup {
            coset_of[group.mul(h, x)] = id;
        }
    }
    (coset_of, reps)
}

/// The induced set `G ×_H X` of an `H`-set along an injective `H → G`, with the
/// `H`-equivariant embedding `x ↦ [e, x]`.
#[derive(Clone, Debug)]
pub struct InducedGSet {
    pub gset: GSet,
    /// Point of the induced set for each point of `X`.
    pub embedding: Vec<usize>,
    /// Minimal element of each right coset `Hr`; point `(j, x)` has index `j·|X| + x`.
    pub coset_representatives: Vec<usize>,
}

/// Classes `[x, g]` with `[x·h, g] = [x, h g]`, acted on by `[x, g]·g′ = [x, g g′]`.
/// Every class has a unique form `[x, r_j]` with `r_j` a right-coset representative.
pub fn induced_gset(group: Arc<FiniteGroup>, incl: &GroupHom, x: &GSet) -> Result<InducedGSet> {
    if !incl.is_injective() {
        return Err(Error::NotInjective);
    }
    if !incl.target().same_elements(&group) {
        return Err(Error::RingMismatch);
    }
    if !incl.source().same_elements(x.group()) {
        return Err(Error::RingMismatch);
    }
    let image = incl.image_indices();
    let (coset_of, reps) = right_coset_data(&group, &image);
    let m = x.points();
    let k = reps.len();
    // preimage lookup for H-elements of G
    let mut back = vec![usize::MAX; group.order()];
    for h in 0..incl.source().order() {
        back[incl.apply(h)] = h;
    }
    let xg = x.clone();
    let g = group.clone();
    let gset = GSet::from_element_rule(group, k * m, |s| {
        let mut images = vec![0; k * m];
        for j in 0..k {
            let rs = g.mul(reps[j], s);
            let j2 = coset_of[rs];
            let h = g.mul(rs, g.inv(reps[j2]));
            let h_src = back[h];
            for p in 0..m {
                images[j * m + p] = j2 * m + xg.act(p, h_src);
            }
        }
        Perm::from_images(images).expect("induced action is a bijection")
    })?;
    debug_assert!(g.element(reps[0]).is_identity());
    Ok(InducedGSet {
        gset,
        embedding: (0..m).collect(),
        coset_representatives: reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_generators(
                3,
                vec![
                    Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
                    Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn rejects_broken_action() {
        let g = s3();
        // (0 1) acting by a 3-cycle violates s^2 = e
        let bad = GSet::new(
            g,
            3,
            vec![
                Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
                Perm::identity(3),
            ],
        );
        assert!(matches!(bad, Err(Error::InvalidAction(_))));
    }

    #[test]
    fn cosets_of_transposition() {
        let g = s3();
        let t = g
            .index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap())
            .unwrap();
        let x = GSet::right_cosets(g.clone(), &[0, t]).unwrap();
        assert_eq!(x.points(), 3);
        assert_eq!(x.orbit_count(), 1);
        let fixed_by_t: Vec<usize> = (0..3).filter(|&p| x.fixes(p, t)).collect();
        assert_eq!(fixed_by_t.len(), 1);
    }

    #[test]
    fn regular_action_is_free_and_transitive() {
        let g = s3();
        let r = GSet::regular(g);
        assert!(r.is_free());
        assert_eq!(r.orbit_count(), 1);
    }

    #[test]
    fn induced_from_subgroup_to_point() {
        let g = s3();
        let t = g
            .index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap())
            .unwrap();
        let h = Arc::new(g.subgroup(&[0, t]));
        let incl = GroupHom::inclusion(h.clone(), g.clone()).unwrap();
        let ind = induced_gset(g, &incl, &GSet::point(h)).unwrap();
        assert_eq!(ind.gset.points(), 3);
        assert_eq!(ind.gset.orbit_count(), 1);
    }

    #[test]
    fn induced_from_trivial_is_regular() {
        let z2 = Arc::new(
            FiniteGroup::from_generators(2, vec![Perm::from_cycles(2, &[&[0, 1]]).unwrap()])
                .unwrap(),
        );
        let e = Arc::new(FiniteGroup::trivial(2));
        let incl = GroupHom::inclusion(e.clone(), z2.clone()).unwrap();
        let ind = induced_gset(z2, &incl, &GSet::point(e)).unwrap();
        assert_eq!(ind.gset.points(), 2);
        assert!(ind.gset.is_free());
    }

    #[test]
    fn induced_along_identity_keeps_orbits() {
        let g = s3();
        let x = GSet::natural(g.clone());
        let ind = induced_gset(g.clone(), &GroupHom::identity(g), &x).unwrap();
        assert_eq!(ind.gset.points(), 3);
        assert_eq!(ind.gset.orbit_count(), x.orbit_count());
    }

    #[test]
    fn non_injective_inclusion_is_rejected() {
        let g = s3();
        let e = Arc::new(FiniteGroup::trivial(3));
        let triv = GroupHom::trivial(g.clone(), e.clone());
        let r = induced_gset(e, &triv, &GSet::point(g));
        assert!(matches!(r, Err(Error::NotInjective)));
    }
}
