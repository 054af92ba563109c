use std::collections::VecDeque;
use std::sync::Arc;

use super::finite_group::FiniteGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

/// A homomorphism between finite permutation groups, given by the images of
/// the source generators and stored as a full element map.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl GroupHom {
    /// Extends generator images to all of `source`, checking every relation by
    /// walking the full Cayley graph.
    pub fn from_generator_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        generator_images: &[Perm],
    ) -> Result<Self> {
        if generator_images.len() != source.generators().len() {
            return Err(Error::input(
                "generator_images",
                format!(
                    "expected {} images, found {}",
                    source.generators().len(),
                    generator_images.len()
                ),
            ));
        }
        let gen_src = source.generator_indices();
        let gen_img = generator_images
            .iter()
            .map(|p| target.index_of(p).ok_or(Error::NotAMember))
            .collect::<Result<Vec<_>>>()?;
        let mut images = vec![usize::MAX; source.order()];
        images[FiniteGroup::IDENTITY] = FiniteGroup::IDENTITY;
        let mut queue = VecDeque::from([FiniteGroup::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gen_src.iter().zip(&gen_img) {
                let y = source.mul(x, s);
                let img = target.mul(images[x], t);
                if images[y] == usize::MAX {
                    images[y] = img;
                    queue.push_back(y);
                } else if images[y] != img {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    /// Builds a homomorphism from an arbitrary element map, checking it on all pairs.
    pub fn from_element_map(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: impl Fn(&Perm) -> Perm,
    ) -> Result<Self> {
        let images = source
            .elements()
            .iter()
            .map(|p| target.index_of(&map(p)).ok_or(Error::NotAMember))
            .collect::<Result<Vec<_>>>()?;
        let n = source.order();
        for a in 0..n {
            for b in 0..n {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let images = (0..group.order()).collect();
        GroupHom {
            source: group.clone(),
            target: group,
            images,
        }
    }

    /// Inclusion of a subgroup acting on the same points.
    pub fn inclusion(sub: Arc<FiniteGroup>, group: Arc<FiniteGroup>) -> Result<Self> {
        let images = group.embed_indices(&sub)?;
        Ok(GroupHom {
            source: sub,
            target: group,
            images,
        })
    }

    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let images = vec![FiniteGroup::IDENTITY; source.order()];
        GroupHom {
            source,
            target,
            images,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    /// Image of a source element index, as a target element index.
    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn apply_perm(&self, p: &Perm) -> Option<&Perm> {
        self.source
            .index_of(p)
            .map(|i| self.target.element(self.images[i]))
    }

    pub fn generator_images(&self) -> Vec<Perm> {
        self.source
            .generator_indices()
            .into_iter()
            .map(|g| self.target.element(self.images[g]).clone())
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.images
            .iter()
            .filter(|&&i| i == FiniteGroup::IDENTITY)
            .count()
            == 1
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if !self.target.same_elements(&other.source) {
            return Err(Error::RingMismatch);
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    /// Element indices of the image subgroup.
    pub fn image_indices(&self) -> Vec<usize> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Some preimage of a target element index, if it lies in the image.
    pub fn preimage(&self, t: usize) -> Option<usize> {
        self.images.iter().position(|&i| i == t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let cycle: Vec<usize> = (0..n).collect();
        Arc::new(
            FiniteGroup::from_generators(n, vec![Perm::from_cycles(n, &[&cycle]).unwrap()])
                .unwrap(),
        )
    }

    #[test]
    fn rejects_non_homomorphism() {
        // generator of Z3 cannot map to an involution
        let z3 = cyclic(3);
        let z2 = cyclic(2);
        let r = GroupHom::from_generator_images(z3, z2.clone(), &[z2.element(1).clone()]);
        assert!(matches!(r, Err(Error::NotAHomomorphism)));
    }

    #[test]
    fn quotient_z4_to_z2() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let h = GroupHom::from_generator_images(z4.clone(), z2.clone(), &[z2.element(1).clone()])
            .unwrap();
        assert!(!h.is_injective());
        let sq = z4.pow(z4.generator_indices()[0], 2);
        assert_eq!(h.apply(sq), 0);
    }

    #[test]
    fn composition_and_identity() {
        let z4 = cyclic(4);
        let id = GroupHom::identity(z4.clone());
        let c = id.then(&id).unwrap();
        assert!(c.is_injective());
        assert_eq!(c.generator_images(), z4.generators().to_vec());
    }
}
