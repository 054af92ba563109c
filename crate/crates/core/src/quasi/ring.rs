use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{CommutingTuple, FiniteGroup, GSet};
use crate::io::{GSetFile, GroupFile};
use crate::laurent::{
    add_into, LambdaModule, LaurentPoly, ModuleElement, ModuleElementJson, SparseVec,
};
use crate::loop_groupoid::{lambda_skeleton, LoopGroupoidSkeleton, SkeletonComponent};

/// `QK_{n,G}(X) = ∏_σ K_{Λ_G(σ)}(X^σ)`, one factor `RΛ_S(σ)` per skeleton
/// component with stabilizer `S`. Basis elements are numbered globally,
/// component by component.
#[derive(Debug)]
pub struct QTheoryRing {
    skeleton: LoopGroupoidSkeleton,
    modules: Vec<Arc<LambdaModule>>,
    offsets: Vec<usize>,
    owner: Vec<usize>,
}

pub fn qk_compute(x: &GSet, n: usize) -> Result<Arc<QTheoryRing>> {
    let skeleton = lambda_skeleton(x, n)?;
    let modules = skeleton
        .components()
        .par_iter()
        .map(|c| {
            let sigma = CommutingTuple::new(&c.stabilizer, c.sigma.entries().to_vec())?;
            LambdaModule::new(c.stabilizer.clone(), sigma).map(Arc::new)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut offsets = Vec::with_capacity(modules.len() + 1);
    let mut owner = Vec::new();
    offsets.push(0);
    for (ci, m) in modules.iter().enumerate() {
        owner.extend(std::iter::repeat(ci).take(m.rank()));
        offsets.push(offsets[ci] + m.rank());
    }
    Ok(Arc::new(QTheoryRing {
        skeleton,
        modules,
        offsets,
        owner,
    }))
}

impl QTheoryRing {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.skeleton.group()
    }

    pub fn gset(&self) -> &GSet {
        self.skeleton.gset()
    }

    pub fn n(&self) -> usize {
        self.skeleton.n()
    }

    pub fn skeleton(&self) -> &LoopGroupoidSkeleton {
        &self.skeleton
    }

    pub fn components(&self) -> &[SkeletonComponent] {
        self.skeleton.components()
    }

    pub fn module(&self, component: usize) -> &Arc<LambdaModule> {
        &self.modules[component]
    }

    pub fn offset(&self, component: usize) -> usize {
        self.offsets[component]
    }

    /// Total rank over `ℤ[q_1^±, …, q_n^±]`.
    pub fn rank(&self) -> usize {
        self.owner.len()
    }

    /// `(component, local index)` of a global basis index.
    pub fn locate_basis(&self, global: usize) -> (usize, usize) {
        let c = self.owner[global];
        (c, global - self.offsets[c])
    }

    pub fn to_json(&self) -> QTheoryRingJson {
        QTheoryRingJson {
            group: GroupFile::of(self.group()),
            gset: GSetFile::of(self.gset()),
            n: self.n(),
            components: self
                .components()
                .iter()
                .zip(&self.modules)
                .map(|(c, m)| ComponentJson {
                    sigma: c.sigma.images(),
                    orbit_rep: c.orbit_rep,
                    stabilizer_order: c.stabilizer.order(),
                    basis: m
                        .basis()
                        .iter()
                        .map(|b| BasisJson {
                            char_degree: b.char_degree,
                            q_degree: b.q_degree.to_strings(),
                        })
                        .collect(),
                })
                .collect(),
            total_rank: self.rank(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisJson {
    pub char_degree: u32,
    pub q_degree: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentJson {
    pub sigma: Vec<Vec<usize>>,
    pub orbit_rep: usize,
    pub stabilizer_order: usize,
    pub basis: Vec<BasisJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QTheoryRingJson {
    pub group: GroupFile,
    pub gset: GSetFile,
    pub n: usize,
    pub components: Vec<ComponentJson>,
    pub total_rank: usize,
}

/// An element of a quasi-theory ring, as coordinates on the global basis.
#[derive(Clone, Debug)]
pub struct QTheoryClass {
    ring: Arc<QTheoryRing>,
    coords: SparseVec,
}

impl PartialEq for QTheoryClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.coords == other.coords
    }
}

impl QTheoryClass {
    pub fn zero(ring: Arc<QTheoryRing>) -> Self {
        QTheoryClass {
            ring,
            coords: SparseVec::new(),
        }
    }

    pub fn from_coords(ring: Arc<QTheoryRing>, coords: SparseVec) -> Self {
        let coords = coords.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        QTheoryClass { ring, coords }
    }

    pub fn basis(ring: Arc<QTheoryRing>, global: usize) -> Self {
        let n = ring.n();
        Self::from_coords(ring, [(global, LaurentPoly::one(n))].into_iter().collect())
    }

    /// `π*(p)` in every component.
    pub fn scalar(ring: Arc<QTheoryRing>, p: &LaurentPoly) -> Result<Self> {
        if p.nvars() != ring.n() {
            return Err(Error::VariableMismatch(ring.n(), p.nvars()));
        }
        let coords = (0..ring.components().len())
            .map(|c| {
                (
                    ring.offset(c) + ring.module(c).table().trivial_index(),
                    p.clone(),
                )
            })
            .collect();
        Ok(Self::from_coords(ring, coords))
    }

    /// The multiplicative unit: `V_triv` in every component.
    pub fn unit(ring: Arc<QTheoryRing>) -> Self {
        let n = ring.n();
        Self::scalar(ring, &LaurentPoly::one(n)).expect("matching variable count")
    }

    /// The class `q_i` (0-based `i`).
    pub fn q(ring: Arc<QTheoryRing>, i: usize) -> Self {
        let n = ring.n();
        Self::scalar(ring, &LaurentPoly::var(n, i)).expect("matching variable count")
    }

    /// A random class supported on at most three basis elements, each with a
    /// coefficient of at most three terms, coefficients in `[−3, 3]` and
    /// exponents in `[−2, 2]`.
    pub fn random(ring: Arc<QTheoryRing>, rng: &mut impl Rng) -> Self {
        let n = ring.n();
        let mut coords = SparseVec::new();
        if ring.rank() > 0 {
            for _ in 0..rng.gen_range(1..=3) {
                let i = rng.gen_range(0..ring.rank());
                let terms: Vec<(Vec<i32>, i64)> = (0..rng.gen_range(1..=3))
                    .map(|_| {
                        (
                            (0..n).map(|_| rng.gen_range(-2..=2)).collect(),
                            rng.gen_range(-3..=3),
                        )
                    })
                    .collect();
                add_into(
                    &mut coords,
                    i,
                    LaurentPoly::from_terms(n, terms).expect("n variables"),
                );
            }
        }
        Self::from_coords(ring, coords)
    }

    pub fn ring(&self) -> &Arc<QTheoryRing> {
        &self.ring
    }

    pub fn coords(&self) -> &SparseVec {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut c = self.coords.clone();
        for (&i, p) in &other.coords {
            add_into(&mut c, i, p.clone());
        }
        Ok(Self::from_coords(self.ring.clone(), c))
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        Self::from_coords(
            self.ring.clone(),
            self.coords.iter().map(|(&i, a)| (i, a * p)).collect(),
        )
    }

    /// Componentwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut c = SparseVec::new();
        for (&i, a) in &self.coords {
            let (ci, l) = self.ring.locate_basis(i);
            let module = self.ring.module(ci);
            let off = self.ring.offset(ci);
            for (&j, b) in other.coords.range(off..off + module.rank()) {
                let ab = a * b;
                for t in module.product(l, j - off)? {
                    add_into(
                        &mut c,
                        off + t.target,
                        ab.shift(&t.shift).scale(t.multiplicity),
                    );
                }
            }
        }
        Ok(Self::from_coords(self.ring.clone(), c))
    }

    /// The component of the class as a Λ-module element.
    pub fn component(&self, c: usize) -> ModuleElement {
        let off = self.ring.offset(c);
        let module = self.ring.module(c).clone();
        let coords = self
            .coords
            .range(off..off + module.rank())
            .map(|(&i, p)| (i - off, p.clone()))
            .collect();
        ModuleElement::from_coords(module, coords)
    }

    pub fn to_json(&self) -> Vec<ModuleElementJson> {
        (0..self.ring.components().len())
            .map(|c| self.component(c).to_json())
            .collect()
    }
}

/// Shorthand for `qk_mul`.
pub fn qk_mul(x: &QTheoryClass, y: &QTheoryClass) -> Result<QTheoryClass> {
    x.mul(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_group;
    use rand::SeedableRng;

    fn point_ring(name: &str, n: usize) -> Arc<QTheoryRing> {
        qk_compute(&GSet::point(corpus_group(name).unwrap()), n).unwrap()
    }

    fn degrees(r: &QTheoryRing, c: usize) -> Vec<String> {
        let mut d: Vec<String> = r
            .module(c)
            .basis()
            .iter()
            .map(|b| b.q_degree.to_strings().join(","))
            .collect();
        d.sort();
        d
    }

    #[test]
    fn s3_point_ring() {
        let r = point_ring("S3", 1);
        assert_eq!(r.rank(), 8);
        let ranks: Vec<usize> = (0..3).map(|c| r.module(c).rank()).collect();
        assert_eq!(ranks, vec![3, 2, 3]);
        assert_eq!(degrees(&r, 1), vec!["0/1", "1/2"]);
        assert_eq!(degrees(&r, 2), vec!["0/1", "1/3", "2/3"]);
    }

    #[test]
    fn small_rings() {
        for n in 1..4 {
            assert_eq!(point_ring("trivial", n).rank(), 1);
        }
        let z2 = point_ring("Z2", 1);
        assert_eq!(z2.rank(), 4);
        assert_eq!(degrees(&z2, 0), vec!["0/1", "0/1"]);
        assert_eq!(degrees(&z2, 1), vec!["0/1", "1/2"]);
    }

    #[test]
    fn products_in_z2_ring() {
        let r = point_ring("Z2", 1);
        let sign = QTheoryClass::basis(r.clone(), r.offset(1) + 1);
        let expected = QTheoryClass::from_coords(
            r.clone(),
            [(r.offset(1), LaurentPoly::var(1, 0))]
                .into_iter()
                .collect(),
        );
        assert_eq!(qk_mul(&sign, &sign).unwrap(), expected);
        // classes supported on different components multiply to zero
        let e = QTheoryClass::basis(r.clone(), 1);
        assert!(e.mul(&sign).unwrap().is_zero());
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let unit = QTheoryClass::unit(r.clone());
        for _ in 0..20 {
            let x = QTheoryClass::random(r.clone(), &mut rng);
            assert_eq!(unit.mul(&x).unwrap(), x);
            let q = QTheoryClass::q(r.clone(), 0);
            assert_eq!(q.mul(&x).unwrap(), x.scale(&LaurentPoly::var(1, 0)));
        }
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = point_ring("Z2", 1);
        let b = point_ring("Z2", 1);
        let x = QTheoryClass::unit(a);
        let y = QTheoryClass::unit(b);
        assert!(matches!(x.mul(&y), Err(Error::RingMismatch)));
    }
}
