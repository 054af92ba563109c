//! The constant-loop groupoid `Λⁿ(X//G)` of a finite `G`-set and its skeleton.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{canonical_form, commuting_tuples, CommutingTuple, FiniteGroup, GSet};

/// `X^σ = ⋂_i X^{σ_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointSet {
    pub sigma: CommutingTuple,
    pub points: Vec<usize>,
}

pub fn fixed_points(x: &GSet, sigma: &CommutingTuple) -> Result<FixedPointSet> {
    let idx = sigma.indices_in(x.group())?;
    Ok(FixedPointSet {
        sigma: sigma.clone(),
        points: fixed_point_indices(x, &idx),
    })
}

fn fixed_point_indices(x: &GSet, sigma: &[usize]) -> Vec<usize> {
    (0..x.points())
        .filter(|&p| sigma.iter().all(|&s| x.fixes(p, s)))
        .collect()
}

/// One isomorphism class of objects: a tuple representative `σ` and a
/// `C_G(σ)`-orbit on `X^σ`, with the stabilizer of its minimal point.
#[derive(Clone, Debug)]
pub struct SkeletonComponent {
    pub tuple_index: usize,
    pub sigma: CommutingTuple,
    pub sigma_indices: Vec<usize>,
    pub orbit_rep: usize,
    pub orbit_size: usize,
    pub stabilizer: Arc<FiniteGroup>,
    /// Element indices (in `G`) of the stabilizer, ascending; position `i`
    /// is the stabilizer's own element `i`.
    pub stabilizer_indices: Vec<usize>,
    /// For each orbit point `p`, some `t ∈ C_G(σ)` with `p·t = orbit_rep`.
    transversal: HashMap<usize, usize>,
}

impl SkeletonComponent {
    /// The stabilizer's own index of a `G`-element, if it lies in the stabilizer.
    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.stabilizer_indices.binary_search(&g).ok()
    }

    pub fn orbit(&self) -> Vec<usize> {
        let mut o: Vec<usize> = self.transversal.keys().copied().collect();
        o.sort_unstable();
        o
    }
}

/// Components ordered by (tuple index, minimal orbit point).
#[derive(Clone, Debug)]
pub struct LoopGroupoidSkeleton {
    group: Arc<FiniteGroup>,
    gset: GSet,
    n: usize,
    tuples: Vec<CommutingTuple>,
    components: Vec<SkeletonComponent>,
    by_tuple: Vec<HashMap<usize, usize>>,
}

/// A component found for an arbitrary object `(τ, y)`, with `k` such that
/// `k⁻¹ τ k = σ` and `y·k = orbit_rep` of the component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub component: usize,
    pub witness: usize,
}

pub fn lambda_skeleton(x: &GSet, n: usize) -> Result<LoopGroupoidSkeleton> {
    if n == 0 {
        return Err(Error::input("n", "must be at least 1"));
    }
    let group = x.group().clone();
    let tuples = commuting_tuples(&group, n);
    let mut components = Vec::new();
    let mut by_tuple = Vec::with_capacity(tuples.len());
    for (ti, sigma) in tuples.iter().enumerate() {
        let sidx = sigma.indices_in(&group)?;
        let cent = group.centralizer_indices(&sidx);
        let cent_gens = group.subgroup(&cent).generators().to_vec();
        let cent_gens: Vec<usize> = cent_gens
            .iter()
            .map(|p| group.index_of(p).expect("subgroup element"))
            .collect();
        let fixed = fixed_point_indices(x, &sidx);
        let mut lookup = HashMap::new();
        for orbit in x.orbits_of(&cent_gens, &fixed) {
            let rep = orbit[0];
            // BFS from the representative records u with rep·u = p; store u⁻¹
            let mut transversal = HashMap::from([(rep, FiniteGroup::IDENTITY)]);
            let mut queue = vec![(rep, FiniteGroup::IDENTITY)];
            let mut to_here: HashMap<usize, usize> = HashMap::from([(rep, FiniteGroup::IDENTITY)]);
            while let Some((p, u)) = queue.pop() {
                for &g in &cent_gens {
                    let q = x.act(p, g);
                    if let std::collections::hash_map::Entry::Vacant(e) = to_here.entry(q) {
                        let v = group.mul(u, g);
                        e.insert(v);
                        transversal.insert(q, group.inv(v));
                        queue.push((q, v));
                    }
                }
            }
            let stab_idx: Vec<usize> = cent.iter().copied().filter(|&g| x.fixes(rep, g)).collect();
            let stabilizer = Arc::new(group.subgroup(&stab_idx));
            let ci = components.len();
            for &p in &orbit {
                lookup.insert(p, ci);
            }
            components.push(SkeletonComponent {
                tuple_index: ti,
                sigma: sigma.clone(),
                sigma_indices: sidx.clone(),
                orbit_rep: rep,
                orbit_size: orbit.len(),
                stabilizer,
                stabilizer_indices: stab_idx,
                transversal,
            });
        }
        by_tuple.push(lookup);
    }
    Ok(LoopGroupoidSkeleton {
        group,
        gset: x.clone(),
        n,
        tuples,
        components,
        by_tuple,
    })
}

impl LoopGroupoidSkeleton {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tuples(&self) -> &[CommutingTuple] {
        &self.tuples
    }

    pub fn components(&self) -> &[SkeletonComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Finds the component of the object `(τ, y)`, where `τ` is any commuting
    /// tuple of element indices and `y ∈ X^τ`.
    pub fn locate(&self, tau: &[usize], y: usize) -> Result<Location> {
        let (rep, h) = canonical_form(&self.group, tau);
        let ti = self
            .tuples
            .binary_search_by(|t| {
                t.indices_in(&self.group)
                    .expect("tuple of this group")
                    .cmp(&rep)
            })
            .map_err(|_| Error::NotCommuting)?;
        let y0 = self.gset.act(y, h);
        let ci = *self.by_tuple[ti]
            .get(&y0)
            .ok_or_else(|| Error::InvalidAction(format!("point {y} is not fixed by the tuple")))?;
        let c = self.components[ci].transversal[&y0];
        Ok(Location {
            component: ci,
            witness: self.group.mul(h, c),
        })
    }

    pub fn to_json(&self) -> Vec<SkeletonComponentJson> {
        self.components
            .iter()
            .map(|c| SkeletonComponentJson {
                sigma: c.sigma.images(),
                orbit_rep: c.orbit_rep,
                orbit_size: c.orbit_size,
                stabilizer_order: c.stabilizer.order(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonComponentJson {
    pub sigma: Vec<Vec<usize>>,
    pub orbit_rep: usize,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
}

/// Component count of `Λⁿ(X//G)` computed as the `n`-fold iterate of the
/// `n = 1` construction: for each class representative `s`, recurse into
/// `C_G(s)` acting on `X^s`.
///
/// Two tuples `(s, σ′)` and `(s, σ″)` with the same first entry are
/// `G`-conjugate exactly when they are `C_G(s)`-conjugate, so summing over
/// `G`-classes of `s` and then over `C_G(s)`-data needs no further fusion.
pub fn iterated_component_count(x: &GSet, n: usize) -> usize {
    let group = x.group();
    let points: Vec<usize> = (0..x.points()).collect();
    let all: Vec<usize> = (0..group.order()).collect();
    count_within(x, group, &all, &points, n)
}

/// Components for the subgroup `sub` (element indices of the ambient group)
/// acting on the invariant subset `domain`.
fn count_within(x: &GSet, group: &FiniteGroup, sub: &[usize], domain: &[usize], n: usize) -> usize {
    let sub_group = group.subgroup(sub);
    let gens: Vec<usize> = sub_group
        .generators()
        .iter()
        .map(|p| group.index_of(p).expect("subgroup element"))
        .collect();
    if n == 0 {
        return x.orbits_of(&gens, domain).len();
    }
    sub_group
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let s = sub[c.representative];
            let cent: Vec<usize> = sub
                .iter()
                .copied()
                .filter(|&g| group.commute(g, s))
                .collect();
            let fixed: Vec<usize> = domain.iter().copied().filter(|&p| x.fixes(p, s)).collect();
            count_within(x, group, &cent, &fixed, n - 1)
        })
        .sum()
}
