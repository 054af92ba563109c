use std::sync::Arc;

use rayon::prelude::*;

use super::maps::MapReport;
use super::ring::{qk_compute, QTheoryClass, QTheoryRing};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{direct_product, DirectProduct, GSet};
use crate::laurent::{add_into, integral_shift, LaurentPoly, LinearMap, SparseVec};

/// The external product `QK_{n,G}(X) ⊗ QK_{n,H}(Y) → QK_{n,G×H}(X × Y)`.
///
/// The source basis is `e_i ⊗ f_j`, numbered `i·rank(right) + j`.
#[derive(Clone, Debug)]
pub struct KunnethMap {
    pub product: DirectProduct,
    pub left: Arc<QTheoryRing>,
    pub right: Arc<QTheoryRing>,
    pub target: Arc<QTheoryRing>,
    pub matrix: LinearMap,
}

pub fn kunneth(left: Arc<QTheoryRing>, right: Arc<QTheoryRing>) -> Result<KunnethMap> {
    if left.n() != right.n() {
        return Err(Error::ArityMismatch {
            expected: left.n(),
            found: right.n(),
        });
    }
    let product = direct_product(left.group().clone(), right.group().clone())?;
    let xy = product.product_gset(left.gset(), right.gset())?;
    let target = qk_compute(&xy, left.n())?;
    let ny = right.gset().points();
    let (lc, rc) = (left.components().len(), right.components().len());
    let pg = &product.group;
    let blocks = (0..lc * rc)
        .into_par_iter()
        .map(|pair| {
            let (a, b) = (pair / rc, pair % rc);
            let (ca, cb) = (&left.components()[a], &right.components()[b]);
            let tuple: Vec<usize> = ca
                .sigma
                .entries()
                .iter()
                .zip(cb.sigma.entries())
                .map(|(s, t)| pg.index_of(&product.pair(s, t)).expect("product element"))
                .collect();
            let loc = target
                .skeleton()
                .locate(&tuple, ca.orbit_rep * ny + cb.orbit_rep)?;
            let ce = &target.components()[loc.component];
            let k = loc.witness;
            let kinv = pg.inv(k);
            // ψ⁻¹(s) = k s k⁻¹ split into its two factors, as local stabilizer indices
            let back: Vec<(usize, usize)> = ce
                .stabilizer_indices
                .iter()
                .map(|&s| {
                    let (g, h) = product.split(pg.element(pg.mul(pg.mul(k, s), kinv)));
                    let gi = left.group().index_of(&g).and_then(|i| ca.local_index(i));
                    let hi = right.group().index_of(&h).and_then(|i| cb.local_index(i));
                    gi.zip(hi)
                        .ok_or_else(|| Error::InvalidAction("stabilizers do not factor".into()))
                })
                .collect::<Result<_>>()?;
            let (ma, mb, me) = (
                left.module(a),
                right.module(b),
                target.module(loc.component),
            );
            let classes = me.group().conjugacy_classes();
            let mut entries = Vec::new();
            for lambda in 0..ma.rank() {
                for mu in 0..mb.rank() {
                    let f: Vec<Cyclotomic> = classes
                        .iter()
                        .map(|c| {
                            let (g, h) = back[c.representative];
                            ma.table().value(lambda, g) * mb.table().value(mu, h)
                        })
                        .collect();
                    let nu = (0..me.rank())
                        .find(|&nu| me.table().row(nu).values == f)
                        .ok_or_else(|| {
                            Error::CharacterTable("external product is not irreducible".into())
                        })?;
                    let shift = integral_shift(
                        &ma.basis()[lambda].q_degree,
                        &mb.basis()[mu].q_degree,
                        &me.basis()[nu].q_degree,
                    )?;
                    entries.push((
                        target.offset(loc.component) + nu,
                        (left.offset(a) + lambda) * right.rank() + right.offset(b) + mu,
                        LaurentPoly::monomial(shift, 1),
                    ));
                }
            }
            Ok(entries)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut matrix = LinearMap::zero(left.n(), left.rank() * right.rank(), target.rank());
    for (row, col, p) in blocks.into_iter().flatten() {
        matrix.add_entry(row, col, p);
    }
    Ok(KunnethMap {
        product,
        left,
        right,
        target,
        matrix,
    })
}

impl KunnethMap {
    /// `x ⊗ y ↦ T(x ⊗ y)`, extended `ℤ[q^±]`-bilinearly.
    pub fn apply(&self, x: &QTheoryClass, y: &QTheoryClass) -> Result<QTheoryClass> {
        if !Arc::ptr_eq(x.ring(), &self.left) || !Arc::ptr_eq(y.ring(), &self.right) {
            return Err(Error::RingMismatch);
        }
        let mut tensor = SparseVec::new();
        let r = self.right.rank();
        for (&i, a) in x.coords() {
            for (&j, b) in y.coords() {
                add_into(&mut tensor, i * r + j, a * b);
            }
        }
        Ok(QTheoryClass::from_coords(
            self.target.clone(),
            self.matrix.apply(&tensor),
        ))
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn report(&self) -> MapReport {
        MapReport {
            map: "kunneth".into(),
            source_rank: self.matrix.source_dim(),
            target_rank: self.target.rank(),
            bijective: self.is_bijective(),
            matrix: self.matrix.entries(),
        }
    }
}

/// `kunneth(x, y)` for classes of two rings; builds the map on each call.
pub fn kunneth_map(x: &QTheoryClass, y: &QTheoryClass) -> Result<QTheoryClass> {
    kunneth(x.ring().clone(), y.ring().clone())?.apply(x, y)
}

/// For a `G × H`-set `X` on which `H` acts trivially, whether the external
/// product `QK_{n,G}(X) ⊗ QK_{n,H}(pt) → QK_{n,G×H}(X)` is bijective.
pub fn verify_trivial_action_split(product: &DirectProduct, x: &GSet, n: usize) -> Result<bool> {
    if !x.group().same_elements(&product.group) {
        return Err(Error::RingMismatch);
    }
    // identical element lists share indices
    for h in product.right_inclusion().image_indices() {
        if (0..x.points()).any(|p| !x.fixes(p, h)) {
            return Err(Error::NontrivialAction);
        }
    }
    let xg = x.pullback(&product.left_inclusion())?;
    let left = qk_compute(&xg, n)?;
    let pt = qk_compute(&GSet::point(product.right.clone()), n)?;
    let k = kunneth(left, pt)?;
    Ok(k.matrix.source_dim() == k.target.rank() && k.is_bijective())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_group;
    use rand::SeedableRng;

    fn pt(name: &str, n: usize) -> Arc<QTheoryRing> {
        qk_compute(&GSet::point(corpus_group(name).unwrap()), n).unwrap()
    }

    #[test]
    fn z2_times_z2() {
        let k = kunneth(pt("Z2", 1), pt("Z2", 1)).unwrap();
        assert_eq!(k.matrix.source_dim(), 16);
        assert_eq!(k.target.rank(), 16);
        assert!(k.is_bijective());
        // V_sign at (s) ⊗ V_sign at (t) ↦ q·V_{sign⊠sign} at ((s,t))
        let (l, r) = (k.left.clone(), k.right.clone());
        let x = QTheoryClass::basis(l.clone(), l.offset(1) + 1);
        let y = QTheoryClass::basis(r.clone(), r.offset(1) + 1);
        let image = k.apply(&x, &y).unwrap();
        assert_eq!(image.coords().len(), 1);
        let (&row, p) = image.coords().iter().next().unwrap();
        assert_eq!(*p, LaurentPoly::var(1, 0));
        let (c, local) = k.target.locate_basis(row);
        assert_eq!(
            k.target.module(c).basis()[local].q_degree.to_strings(),
            vec!["0/1"]
        );
        assert_eq!(k.target.components()[c].sigma.orders(), &[2]);
    }

    #[test]
    fn units_balancedness_and_multiplicativity() {
        let k = kunneth(pt("S3", 1), pt("Z4", 1)).unwrap();
        assert!(k.is_bijective());
        let one = k
            .apply(
                &QTheoryClass::unit(k.left.clone()),
                &QTheoryClass::unit(k.right.clone()),
            )
            .unwrap();
        assert_eq!(one, QTheoryClass::unit(k.target.clone()));
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let q = LaurentPoly::var(1, 0);
        for _ in 0..30 {
            let x = QTheoryClass::random(k.left.clone(), &mut rng);
            let y = QTheoryClass::random(k.right.clone(), &mut rng);
            let x2 = QTheoryClass::random(k.left.clone(), &mut rng);
            let y2 = QTheoryClass::random(k.right.clone(), &mut rng);
            assert_eq!(
                k.apply(&x.scale(&q), &y).unwrap(),
                k.apply(&x, &y.scale(&q)).unwrap()
            );
            let lhs = k.apply(&x.mul(&x2).unwrap(), &y.mul(&y2).unwrap()).unwrap();
            let rhs = k
                .apply(&x, &y)
                .unwrap()
                .mul(&k.apply(&x2, &y2).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn trivial_action_splittings() {
        let z2 = corpus_group("Z2").unwrap();
        let dp = direct_product(z2.clone(), z2.clone()).unwrap();
        let free = GSet::regular(z2.clone());
        let x = dp.product_gset(&free, &GSet::point(z2.clone())).unwrap();
        assert!(verify_trivial_action_split(&dp, &x, 1).unwrap());

        let dp = direct_product(
            corpus_group("trivial").unwrap(),
            corpus_group("S3").unwrap(),
        )
        .unwrap();
        let x = GSet::point(dp.group.clone());
        assert!(verify_trivial_action_split(&dp, &x, 1).unwrap());

        let dp = direct_product(z2.clone(), z2.clone()).unwrap();
        let moved = dp
            .product_gset(&GSet::point(z2.clone()), &GSet::regular(z2))
            .unwrap();
        assert!(matches!(
            verify_trivial_action_split(&dp, &moved, 1),
            Err(Error::NontrivialAction)
        ));
    }
}
