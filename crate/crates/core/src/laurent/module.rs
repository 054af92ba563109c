use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::Ratio;
use serde::Serialize;

use super::matrix::{add_into, SparseVec};
use super::poly::{LaurentPoly, Term};
use crate::character::{character_table, q_degree, CharacterTable, QDegree};
use crate::error::{Error, Result};
use crate::group::{CommutingTuple, FiniteGroup};

/// The basis element `V_λ` of normalised q-degree attached to an irreducible
/// `λ` of the finite part of the Λ-group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaBasisElement {
    pub character_index: usize,
    pub char_degree: u32,
    pub q_degree: QDegree,
}

/// Basis of `RΛ_C(σ)` over `ℤ[q^±]`: one element per irreducible of `C`, in
/// character-table order. Every `σ_i` must be central in `C`.
pub fn lambda_basis(
    table: &CharacterTable,
    sigma: &CommutingTuple,
) -> Result<Vec<LambdaBasisElement>> {
    (0..table.len())
        .map(|i| {
            Ok(LambdaBasisElement {
                character_index: i,
                char_degree: table.row(i).degree,
                q_degree: q_degree(table, i, sigma)?,
            })
        })
        .collect()
}

/// One term `c·q^shift·V_ν` of a basis product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTerm {
    pub target: usize,
    pub multiplicity: i64,
    pub shift: Vec<i32>,
}

/// The ring `RΛ_C(σ)` as a free `ℤ[q_1^±, …, q_n^±]`-module.
pub struct LambdaModule {
    group: Arc<FiniteGroup>,
    sigma: CommutingTuple,
    table: Arc<CharacterTable>,
    basis: Vec<LambdaBasisElement>,
    products: OnceLock<Result<Vec<Vec<ProductTerm>>>>,
}

impl fmt::Debug for LambdaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LambdaModule")
            .field("group_order", &self.group.order())
            .field("sigma", &self.sigma)
            .field("rank", &self.basis.len())
            .finish()
    }
}

/// `Σ_i (a_i + b_i − c_i)`, which must be a vector of integers.
pub(crate) fn integral_shift(a: &QDegree, b: &QDegree, c: &QDegree) -> Result<Vec<i32>> {
    a.fractions()
        .iter()
        .zip(b.fractions())
        .zip(c.fractions())
        .map(|((x, y), z)| {
            let d: Ratio<i64> = x + y - z;
            if d.is_integer() {
                Ok(d.to_integer() as i32)
            } else {
                Err(Error::NonIntegralShift(format!("{a} + {b} - {c}")))
            }
        })
        .collect()
}

impl LambdaModule {
    pub fn new(group: Arc<FiniteGroup>, sigma: CommutingTuple) -> Result<Self> {
        let table = character_table(&group)?;
        let basis = lambda_basis(&table, &sigma)?;
        Ok(LambdaModule {
            group,
            sigma,
            table,
            basis,
            products: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn sigma(&self) -> &CommutingTuple {
        &self.sigma
    }

    pub fn nvars(&self) -> usize {
        self.sigma.len()
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn basis(&self) -> &[LambdaBasisElement] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `V_λ · V_μ = Σ_ν c^ν_{λμ} q^{a(λ)+a(μ)−a(ν)} V_ν`.
    pub fn product(&self, lambda: usize, mu: usize) -> Result<&[ProductTerm]> {
        let all = self.products.get_or_init(|| self.structure_constants());
        match all {
            Ok(p) => Ok(&p[lambda * self.rank() + mu]),
            Err(e) => Err(Error::NonIntegralShift(e.to_string())),
        }
    }

    fn structure_constants(&self) -> Result<Vec<Vec<ProductTerm>>> {
        let r = self.rank();
        let mut out = vec![Vec::new(); r * r];
        for l in 0..r {
            for m in l..r {
                let terms = self
                    .table
                    .tensor_decompose(l, m)?
                    .into_iter()
                    .map(|(nu, c)| {
                        Ok(ProductTerm {
                            target: nu,
                            multiplicity: c,
                            shift: integral_shift(
                                &self.basis[l].q_degree,
                                &self.basis[m].q_degree,
                                &self.basis[nu].q_degree,
                            )?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                out[m * r + l] = terms.clone();
                out[l * r + m] = terms;
            }
        }
        Ok(out)
    }
}

/// An element `Σ_λ p_λ V_λ` of a Λ-module.
#[derive(Clone, Debug)]
pub struct ModuleElement {
    module: Arc<LambdaModule>,
    coords: SparseVec,
}

impl PartialEq for ModuleElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.module, &other.module) && self.coords == other.coords
    }
}

impl ModuleElement {
    pub fn zero(module: Arc<LambdaModule>) -> Self {
        ModuleElement {
            module,
            coords: SparseVec::new(),
        }
    }

    pub fn basis(module: Arc<LambdaModule>, i: usize) -> Self {
        let n = module.nvars();
        Self::from_coords(module, [(i, LaurentPoly::one(n))].into_iter().collect())
    }

    pub fn from_coords(module: Arc<LambdaModule>, coords: SparseVec) -> Self {
        let coords = coords.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        ModuleElement { module, coords }
    }

    /// `π*(p) = p·V_triv`.
    pub fn pi_star(module: Arc<LambdaModule>, p: LaurentPoly) -> Result<Self> {
        if p.nvars() != module.nvars() {
            return Err(Error::VariableMismatch(module.nvars(), p.nvars()));
        }
        let t = module.table().trivial_index();
        Ok(Self::from_coords(module, [(t, p)].into_iter().collect()))
    }

    pub fn module(&self) -> &Arc<LambdaModule> {
        &self.module
    }

    pub fn coords(&self) -> &SparseVec {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> LaurentPoly {
        self.coords
            .get(&i)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.module.nvars()))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    fn same_module(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.module, &other.module) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_module(other)?;
        let mut c = self.coords.clone();
        for (&i, p) in &other.coords {
            add_into(&mut c, i, p.clone());
        }
        Ok(Self::from_coords(self.module.clone(), c))
    }

    pub fn neg(&self) -> Self {
        Self::from_coords(
            self.module.clone(),
            self.coords.iter().map(|(&i, p)| (i, -p)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        Self::from_coords(
            self.module.clone(),
            self.coords.iter().map(|(&i, a)| (i, a * p)).collect(),
        )
    }

    /// The ring product, extended bilinearly from the basis products.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_module(other)?;
        let mut c = SparseVec::new();
        for (&l, a) in &self.coords {
            for (&m, b) in &other.coords {
                let ab = a * b;
                for t in self.module.product(l, m)? {
                    add_into(&mut c, t.target, ab.shift(&t.shift).scale(t.multiplicity));
                }
            }
        }
        Ok(Self::from_coords(self.module.clone(), c))
    }

    pub fn to_json(&self) -> ModuleElementJson {
        ModuleElementJson {
            sigma: self.module.sigma().images(),
            terms: self
                .coords
                .iter()
                .map(|(&i, p)| ModuleTermJson {
                    character_index: i,
                    q_degree: self.module.basis()[i].q_degree.to_strings(),
                    coeff: p.to_terms(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleTermJson {
    pub character_index: usize,
    pub q_degree: Vec<String>,
    pub coeff: Vec<Term>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleElementJson {
    pub sigma: Vec<Vec<usize>>,
    pub terms: Vec<ModuleTermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus_group;
    use crate::cyclotomic::Cyclotomic;
    use proptest::prelude::*;

    fn cyclic_module(name: &str, power: u32, n: usize) -> Arc<LambdaModule> {
        let g = corpus_group(name).unwrap();
        let s = g
            .element(g.index_of(&g.generators()[0]).unwrap())
            .pow(power);
        let sigma = CommutingTuple::new(&g, vec![s; n]).unwrap();
        Arc::new(LambdaModule::new(g, sigma).unwrap())
    }

    fn degrees(m: &LambdaModule) -> Vec<String> {
        let mut d: Vec<String> = m.basis().iter().map(|b| b.q_degree.to_string()).collect();
        d.sort();
        d
    }

    #[test]
    fn bases() {
        let z2 = cyclic_module("Z2", 1, 1);
        assert_eq!(degrees(&z2), vec!["(0/1)", "(1/2)"]);
        assert_eq!(z2.basis()[0].q_degree.to_string(), "(0/1)");
        let z3 = cyclic_module("Z3", 1, 1);
        assert_eq!(degrees(&z3), vec!["(0/1)", "(1/3)", "(2/3)"]);
        let s3 = corpus_group("S3").unwrap();
        let m = LambdaModule::new(s3, CommutingTuple::identity(3, 2)).unwrap();
        assert_eq!(m.rank(), 3);
        assert!(m.basis().iter().all(|b| b.q_degree.is_zero()));
        let triv = LambdaModule::new(
            corpus_group("trivial").unwrap(),
            CommutingTuple::identity(1, 1),
        )
        .unwrap();
        assert_eq!(triv.rank(), 1);
    }

    #[test]
    fn sign_squared_is_q() {
        let z2 = cyclic_module("Z2", 1, 1);
        let sign = ModuleElement::basis(z2.clone(), 1);
        let expected = ModuleElement::pi_star(z2.clone(), LaurentPoly::var(1, 0)).unwrap();
        assert_eq!(sign.mul(&sign).unwrap(), expected);
    }

    #[test]
    fn conjugate_characters_of_z3_multiply_to_q() {
        let z3 = cyclic_module("Z3", 1, 1);
        let g = z3.group().clone();
        let gen = g.index_of(&g.generators()[0]).unwrap();
        let find = |k| {
            (0..3)
                .find(|&i| *z3.table().value(i, gen) == Cyclotomic::root_of_unity(3, k))
                .unwrap()
        };
        let a = ModuleElement::basis(z3.clone(), find(1));
        let b = ModuleElement::basis(z3.clone(), find(2));
        let expected = ModuleElement::pi_star(z3.clone(), LaurentPoly::var(1, 0)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn non_central_tuple_is_rejected() {
        let s3 = corpus_group("S3").unwrap();
        let t = s3.element(1).clone();
        let sigma = CommutingTuple::new(&s3, vec![t]).unwrap();
        assert!(matches!(
            LambdaModule::new(s3, sigma),
            Err(Error::NotCentral)
        ));
    }

    fn arb_element(m: Arc<LambdaModule>) -> impl Strategy<Value = ModuleElement> {
        let r = m.rank();
        let n = m.nvars();
        prop::collection::vec(
            prop::collection::vec((prop::collection::vec(-2i32..=2, n), -3i64..=3), 0..=3),
            r,
        )
        .prop_map(move |cs| {
            let coords = cs
                .into_iter()
                .enumerate()
                .map(|(i, ts)| (i, LaurentPoly::from_terms(n, ts).unwrap()))
                .collect();
            ModuleElement::from_coords(m.clone(), coords)
        })
    }

    fn q8_module() -> Arc<LambdaModule> {
        // the centre of Q8 gives degree-2 characters with scalar 1/2
        let q8 = corpus_group("Q8").unwrap();
        let z = (1..q8.order()).find(|&i| q8.is_central(i)).unwrap();
        let sigma =
            CommutingTuple::new(&q8, vec![q8.element(z).clone(), q8.element(0).clone()]).unwrap();
        Arc::new(LambdaModule::new(q8, sigma).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ring_laws(
            (x, y, z) in Just(q8_module()).prop_flat_map(|m| (arb_element(m.clone()), arb_element(m.clone()), arb_element(m)))
        ) {
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
            prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
            let one = ModuleElement::pi_star(x.module().clone(), LaurentPoly::one(2)).unwrap();
            prop_assert_eq!(one.mul(&x).unwrap(), x.clone());
            // multiplication by q_1 is injective on coordinates
            let q1 = LaurentPoly::var(2, 0);
            let qx = x.scale(&q1);
            prop_assert_eq!(qx.is_zero(), x.is_zero());
            let p = ModuleElement::pi_star(x.module().clone(), q1.clone()).unwrap();
            prop_assert_eq!(p.mul(&x).unwrap(), qx);
        }

        #[test]
        fn pi_star_is_multiplicative(
            a in prop::collection::vec((prop::collection::vec(-2i32..=2, 2), -3i64..=3), 0..=3),
            b in prop::collection::vec((prop::collection::vec(-2i32..=2, 2), -3i64..=3), 0..=3),
        ) {
            let m = q8_module();
            let (a, b) = (LaurentPoly::from_terms(2, a).unwrap(), LaurentPoly::from_terms(2, b).unwrap());
            let pa = ModuleElement::pi_star(m.clone(), a.clone()).unwrap();
            let pb = ModuleElement::pi_star(m.clone(), b.clone()).unwrap();
            prop_assert_eq!(pa.mul(&pb).unwrap(), ModuleElement::pi_star(m, &a * &b).unwrap());
        }
    }
}
