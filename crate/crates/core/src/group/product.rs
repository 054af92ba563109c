use std::sync::Arc;

use super::finite_group::FiniteGroup;
use super::gset::GSet;
use super::hom::GroupHom;
use super::perm::Perm;
use super::tuples::CommutingTuple;
use crate::error::{Error, Result};

/// `G × H` acting on the disjoint union of the two point sets.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: Arc<FiniteGroup>,
    pub left: Arc<FiniteGroup>,
    pub right: Arc<FiniteGroup>,
}

pub fn direct_product(left: Arc<FiniteGroup>, right: Arc<FiniteGroup>) -> Result<DirectProduct> {
    let idl = Perm::identity(left.degree());
    let idr = Perm::identity(right.degree());
    let mut gens: Vec<Perm> = left
        .generators()
        .iter()
        .map(|g| g.disjoint_sum(&idr))
        .collect();
    gens.extend(right.generators().iter().map(|h| idl.disjoint_sum(h)));
    let group = FiniteGroup::from_generators(left.degree() + right.degree(), gens)?;
    Ok(DirectProduct {
        group: Arc::new(group),
        left,
        right,
    })
}

impl DirectProduct {
    pub fn pair(&self, g: &Perm, h: &Perm) -> Perm {
        g.disjoint_sum(h)
    }

    pub fn split(&self, p: &Perm) -> (Perm, Perm) {
        p.split_at(self.left.degree())
            .expect("element of the product")
    }

    pub fn left_inclusion(&self) -> GroupHom {
        let idr = Perm::identity(self.right.degree());
        GroupHom::from_generator_images(
            self.left.clone(),
            self.group.clone(),
            &self
                .left
                .generators()
                .iter()
                .map(|g| g.disjoint_sum(&idr))
                .collect::<Vec<_>>(),
        )
        .expect("factor inclusion")
    }

    pub fn right_inclusion(&self) -> GroupHom {
        let idl = Perm::identity(self.left.degree());
        GroupHom::from_generator_images(
            self.right.clone(),
            self.group.clone(),
            &self
                .right
                .generators()
                .iter()
                .map(|h| idl.disjoint_sum(h))
                .collect::<Vec<_>>(),
        )
        .expect("factor inclusion")
    }

    /// Product of a subgroup of each factor, as a subgroup of `G × H`.
    pub fn product_subgroup(&self, a: &FiniteGroup, b: &FiniteGroup) -> Vec<usize> {
        let mut out = Vec::with_capacity(a.order() * b.order());
        for g in a.elements() {
            for h in b.elements() {
                out.push(
                    self.group
                        .index_of(&self.pair(g, h))
                        .expect("product element"),
                );
            }
        }
        out.sort_unstable();
        out
    }

    /// The tuple `((σ_1, τ_1), …, (σ_n, τ_n))`.
    pub fn pair_tuple(
        &self,
        sigma: &CommutingTuple,
        tau: &CommutingTuple,
    ) -> Result<CommutingTuple> {
        if sigma.len() != tau.len() {
            return Err(Error::ArityMismatch {
                expected: sigma.len(),
                found: tau.len(),
            });
        }
        let entries = sigma
            .entries()
            .iter()
            .zip(tau.entries())
            .map(|(s, t)| self.pair(s, t))
            .collect();
        CommutingTuple::new(&self.group, entries)
    }

    /// `X × Y` with `G` acting on the first and `H` on the second coordinate;
    /// the point `(x, y)` has index `x·|Y| + y`.
    pub fn product_gset(&self, x: &GSet, y: &GSet) -> Result<GSet> {
        if !x.group().same_elements(&self.left) || !y.group().same_elements(&self.right) {
            return Err(Error::RingMismatch);
        }
        let (nx, ny) = (x.points(), y.points());
        let mut actions = Vec::new();
        for a in x.generator_action() {
            actions.push(
                Perm::from_images(
                    (0..nx * ny)
                        .map(|p| a.image(p / ny) * ny + p % ny)
                        .collect(),
                )
                .expect("bijection"),
            );
        }
        for b in y.generator_action() {
            actions.push(
                Perm::from_images(
                    (0..nx * ny)
                        .map(|p| (p / ny) * ny + b.image(p % ny))
                        .collect(),
                )
                .expect("bijection"),
            );
        }
        GSet::new(self.group.clone(), nx * ny, actions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_generators(2, vec![Perm::from_cycles(2, &[&[0, 1]]).unwrap()])
                .unwrap(),
        )
    }

    #[test]
    fn orders_multiply() {
        let p = direct_product(z2(), z2()).unwrap();
        assert_eq!(p.group.order(), 4);
        let t = direct_product(Arc::new(FiniteGroup::trivial(1)), z2()).unwrap();
        assert_eq!(t.group.order(), 2);
    }

    #[test]
    fn pair_tuple_order_is_lcm() {
        let p = direct_product(z2(), z2()).unwrap();
        let s = CommutingTuple::new(&p.left, vec![p.left.element(1).clone()]).unwrap();
        let t = CommutingTuple::new(&p.right, vec![p.right.element(1).clone()]).unwrap();
        let st = p.pair_tuple(&s, &t).unwrap();
        assert_eq!(st.orders(), &[2]);
    }

    #[test]
    fn product_gset_counts_points() {
        let p = direct_product(z2(), z2()).unwrap();
        let x = GSet::regular(p.left.clone());
        let y = GSet::point(p.right.clone());
        let xy = p.product_gset(&x, &y).unwrap();
        assert_eq!(xy.points(), 2);
        assert_eq!(xy.orbit_count(), 1);
    }
}
