use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::ring::{qk_compute, QTheoryClass, QTheoryRing};
use crate::character::QDegree;
use crate::error::{Error, Result};
use crate::group::{induced_gset, FiniteGroup, GSet, GroupHom, InducedGSet};
use crate::laurent::{integral_shift, LaurentPoly, LinearMap, MatrixEntry};

/// A `ℤ[q^±]`-linear map between quasi-theory rings, with its matrix on the
/// global bases.
#[derive(Clone, Debug)]
pub struct QkMap {
    pub name: String,
    pub source: Arc<QTheoryRing>,
    pub target: Arc<QTheoryRing>,
    pub matrix: LinearMap,
}

/// `{map, source_rank, target_rank, bijective, matrix}`.
#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub map: String,
    pub source_rank: usize,
    pub target_rank: usize,
    pub bijective: bool,
    pub matrix: Vec<MatrixEntry>,
}

impl QkMap {
    pub fn apply(&self, x: &QTheoryClass) -> Result<QTheoryClass> {
        if !Arc::ptr_eq(x.ring(), &self.source) {
            return Err(Error::RingMismatch);
        }
        Ok(QTheoryClass::from_coords(
            self.target.clone(),
            self.matrix.apply(x.coords()),
        ))
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &QkMap, name: impl Into<String>) -> Result<QkMap> {
        if !Arc::ptr_eq(&self.target, &then.source) {
            return Err(Error::RingMismatch);
        }
        Ok(QkMap {
            name: name.into(),
            source: self.source.clone(),
            target: then.target.clone(),
            matrix: self.matrix.compose(&then.matrix),
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn report(&self) -> MapReport {
        MapReport {
            map: self.name.clone(),
            source_rank: self.source.rank(),
            target_rank: self.target.rank(),
            bijective: self.is_bijective(),
            matrix: self.matrix.entries(),
        }
    }
}

/// The map `QK_{n,H}(Y) → QK_{n,G}(X)` induced by `φ: G → H` and a
/// `φ`-equivariant `f: X → Y`.
///
/// Each `G`-component `(σ, x)` with stabilizer `S` is sent to the component
/// of `(φ(σ), f(x))`; with the witness `k` found there, `g ↦ k⁻¹ φ(g) k`
/// maps `S` into the target stabilizer and the target characters are
/// decomposed along it.
pub fn pullback(
    name: impl Into<String>,
    phi: &GroupHom,
    f: &[usize],
    source: Arc<QTheoryRing>,
    target: Arc<QTheoryRing>,
) -> Result<QkMap> {
    let (h, g) = (source.group(), target.group());
    if !phi.source().same_elements(g) || !phi.target().same_elements(h) || source.n() != target.n()
    {
        return Err(Error::RingMismatch);
    }
    let (x, y) = (target.gset(), source.gset());
    if f.len() != x.points() || f.iter().any(|&p| p >= y.points()) {
        return Err(Error::InvalidAction("point map has the wrong shape".into()));
    }
    for s in g.generator_indices() {
        if (0..x.points()).any(|p| f[x.act(p, s)] != y.act(f[p], phi.apply(s))) {
            return Err(Error::InvalidAction("point map is not equivariant".into()));
        }
    }
    let n = target.n();
    let zero = QDegree::zero(n);
    let blocks = (0..target.components().len())
        .into_par_iter()
        .map(|ci| {
            let comp = &target.components()[ci];
            let image: Vec<usize> = comp.sigma_indices.iter().map(|&s| phi.apply(s)).collect();
            let loc = source.skeleton().locate(&image, f[comp.orbit_rep])?;
            let dc = &source.components()[loc.component];
            let k = loc.witness;
            let psi: Vec<usize> = comp
                .stabilizer_indices
                .iter()
                .map(|&s| {
                    dc.local_index(h.conj(phi.apply(s), k)).ok_or_else(|| {
                        Error::InvalidAction("stabilizer does not map into stabilizer".into())
                    })
                })
                .collect::<Result<_>>()?;
            let (sm, dm) = (target.module(ci), source.module(loc.component));
            let mut entries = Vec::new();
            for mu in 0..dm.rank() {
                let dec = sm
                    .table()
                    .decompose_with(|s| dm.table().value(mu, psi[s]).clone())?;
                for (lambda, mult) in dec {
                    let shift = integral_shift(
                        &dm.basis()[mu].q_degree,
                        &zero,
                        &sm.basis()[lambda].q_degree,
                    )?;
                    entries.push((
                        target.offset(ci) + lambda,
                        source.offset(loc.component) + mu,
                        LaurentPoly::monomial(shift, mult),
                    ));
                }
            }
            Ok(entries)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut matrix = LinearMap::zero(n, source.rank(), target.rank());
    for (row, col, p) in blocks.into_iter().flatten() {
        matrix.add_entry(row, col, p);
    }
    Ok(QkMap {
        name: name.into(),
        source,
        target,
        matrix,
    })
}

/// `φ*: QK_{n,H}(Y) → QK_{n,G}(φ*Y)`.
pub fn qk_restriction(phi: &GroupHom, y: &GSet, n: usize) -> Result<QkMap> {
    let source = qk_compute(y, n)?;
    restriction_from(phi, source)
}

/// Restriction out of an already computed ring.
pub fn restriction_from(phi: &GroupHom, source: Arc<QTheoryRing>) -> Result<QkMap> {
    let pulled = source.gset().pullback(phi)?;
    let target = qk_compute(&pulled, source.n())?;
    let id: Vec<usize> = (0..pulled.points()).collect();
    pullback("restriction", phi, &id, source, target)
}

/// The change-of-group map `ρ: QK_{n,G}(G ×_H X) → QK_{n,H}(X)` together
/// with its two factors.
#[derive(Clone, Debug)]
pub struct ChangeOfGroup {
    pub induced: InducedGSet,
    /// Restriction along `H → G`.
    pub restriction: QkMap,
    /// Pullback along the embedding `x ↦ [x, e]`.
    pub embedding: QkMap,
    pub rho: QkMap,
}

impl ChangeOfGroup {
    pub fn verify_iso(&self) -> bool {
        self.rho.is_bijective()
    }
}

pub fn change_of_group(
    group: Arc<FiniteGroup>,
    incl: &GroupHom,
    x: &GSet,
    n: usize,
) -> Result<ChangeOfGroup> {
    let induced = induced_gset(group, incl, x)?;
    let big = qk_compute(&induced.gset, n)?;
    let restriction = restriction_from(incl, big)?;
    let target = qk_compute(x, n)?;
    let id_h = GroupHom::identity(x.group().clone());
    let embedding = pullback(
        "embedding",
        &id_h,
        &induced.embedding,
        restriction.target.clone(),
        target,
    )?;
    let rho = restriction.then(&embedding, "change-of-group")?;
    Ok(ChangeOfGroup {
        induced,
        restriction,
        embedding,
        rho,
    })
}
