use std::cmp::Reverse;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::modp::{charpoly, eval, nullspace, prime_congruent_one, primitive_root, rref, Fp};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, Perm};

/// One irreducible character, as its values on the conjugacy classes of the
/// owning table's group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleCharacter {
    pub degree: u32,
    pub values: Vec<Cyclotomic>,
}

impl IrreducibleCharacter {
    pub fn is_trivial(&self) -> bool {
        self.degree == 1 && self.values.iter().all(|v| v.as_integer() == Some(1))
    }
}

/// The complete character table of a finite group. Rows are sorted by degree,
/// trivial character first, then by descending coefficient vectors.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    conductor: u32,
    rows: Vec<IrreducibleCharacter>,
}

/// A class function given by its values on conjugacy classes.
pub type ClassFunction = Vec<Cyclotomic>;

impl CharacterTable {
    /// Computes the table by simultaneous diagonalisation of the class-sum
    /// matrices over `F_p` with `p ≡ 1 (mod exponent)` and `p > |G|`, then lifts
    /// each value to `ℤ[ζ_e]` from its eigenvalue multiplicities.
    pub fn compute(group: Arc<FiniteGroup>) -> Result<Self> {
        let rows = dixon(&group)?;
        Ok(Self::from_rows(group, rows))
    }

    pub(crate) fn from_rows(group: Arc<FiniteGroup>, mut rows: Vec<IrreducibleCharacter>) -> Self {
        rows.sort_by_cached_key(|r| (r.degree, !r.is_trivial(), Reverse(row_key(r))));
        CharacterTable {
            conductor: group.exponent(),
            group,
            rows,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn rows(&self) -> &[IrreducibleCharacter] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &IrreducibleCharacter {
        &self.rows[i]
    }

    pub fn trivial_index(&self) -> usize {
        self.rows
            .iter()
            .position(IrreducibleCharacter::is_trivial)
            .expect("every table has a trivial character")
    }

    /// `χ_row(g)` for an element index `g` of the table's group.
    pub fn value(&self, row: usize, g: usize) -> &Cyclotomic {
        &self.rows[row].values[self.group.class_of(g)]
    }

    pub fn value_at(&self, row: usize, p: &Perm) -> Result<&Cyclotomic> {
        let g = self.group.index_of(p).ok_or(Error::NotAMember)?;
        Ok(self.value(row, g))
    }

    /// `(1/|G|) Σ_g f(g)·conj(h(g))`, which must be an integer.
    pub fn inner_product(&self, f: &[Cyclotomic], h: &[Cyclotomic]) -> Result<i64> {
        let classes = self.group.conjugacy_classes();
        let mut acc: Option<Cyclotomic> = None;
        for (c, class) in classes.iter().enumerate() {
            let term = &(&f[c] * &h[c].conj()) * class.size() as i64;
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
        let total = acc.expect("nonempty group");
        let n = self.group.order() as i64;
        match total.as_integer() {
            Some(v) if v % n == 0 => Ok(v / n),
            _ => Err(Error::CharacterTable(format!(
                "inner product {total} is not an integer multiple of |G| = {n}"
            ))),
        }
    }

    /// Multiplicities of the irreducibles in a class function.
    pub fn decompose(&self, f: &[Cyclotomic]) -> Result<Vec<(usize, i64)>> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let m = self.inner_product(f, &row.values)?;
            if m != 0 {
                out.push((i, m));
            }
        }
        Ok(out)
    }

    /// Decomposes the class function `g ↦ value(g)` given on element indices.
    pub fn decompose_with(&self, value: impl Fn(usize) -> Cyclotomic) -> Result<Vec<(usize, i64)>> {
        let f: ClassFunction = self
            .group
            .conjugacy_classes()
            .iter()
            .map(|c| value(c.representative))
            .collect();
        self.decompose(&f)
    }

    /// Constituents of `λ ⊗ μ`.
    pub fn tensor_decompose(&self, lambda: usize, mu: usize) -> Result<Vec<(usize, i64)>> {
        let f: ClassFunction = self.rows[lambda]
            .values
            .iter()
            .zip(&self.rows[mu].values)
            .map(|(a, b)| a * b)
            .collect();
        self.decompose(&f)
    }

    /// Serializable form: conductor, class representatives and per-class
    /// coefficient vectors.
    pub fn to_json(&self) -> CharacterTableJson {
        let classes = self.group.conjugacy_classes();
        CharacterTableJson {
            conductor: self.conductor,
            class_representatives: classes
                .iter()
                .map(|c| self.group.element(c.representative).images())
                .collect(),
            class_sizes: classes.iter().map(|c| c.size()).collect(),
            characters: self
                .rows
                .iter()
                .map(|r| CharacterJson {
                    degree: r.degree,
                    values: r.values.iter().map(|v| v.coeffs().to_vec()).collect(),
                })
                .collect(),
        }
    }

    /// Rebuilds a table from its serialized form, if it matches `group`.
    pub fn from_json(group: Arc<FiniteGroup>, json: &CharacterTableJson) -> Option<Self> {
        let classes = group.conjugacy_classes();
        if json.conductor != group.exponent()
            || json.class_representatives.len() != classes.len()
            || json.characters.len() != classes.len()
        {
            return None;
        }
        for (c, reps) in classes.iter().zip(&json.class_representatives) {
            if group.element(c.representative).images() != *reps {
                return None;
            }
        }
        let rows = json
            .characters
            .iter()
            .map(|c| IrreducibleCharacter {
                degree: c.degree,
                values: c
                    .values
                    .iter()
                    .map(|v| Cyclotomic::from_power_coeffs(json.conductor, v))
                    .collect(),
            })
            .collect();
        Some(Self::from_rows(group, rows))
    }
}

fn row_key(r: &IrreducibleCharacter) -> Vec<Vec<i64>> {
    r.values.iter().map(|v| v.coeffs().to_vec()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub degree: u32,
    pub values: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableJson {
    pub conductor: u32,
    pub class_representatives: Vec<Vec<usize>>,
    pub class_sizes: Vec<usize>,
    pub characters: Vec<CharacterJson>,
}

/// Decomposes `χ_μ ∘ φ` over the irreducibles of the source of `φ`.
pub fn restrict_decompose(
    source: &CharacterTable,
    target: &CharacterTable,
    mu: usize,
    phi: &GroupHom,
) -> Result<Vec<(usize, i64)>> {
    if !phi.source().same_elements(source.group()) || !phi.target().same_elements(target.group()) {
        return Err(Error::RingMismatch);
    }
    // identical sorted element lists share element indices
    source.decompose_with(|g| target.value(mu, phi.apply(g)).clone())
}

struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn dixon(group: &FiniteGroup) -> Result<Vec<IrreducibleCharacter>> {
    let classes = group.conjugacy_classes();
    let k = classes.len();
    let order = group.order() as u64;
    let exponent = group.exponent() as u64;
    let f = Fp {
        p: prime_congruent_one(exponent, order.max(2)),
    };

    // class_matrices[j][l][c] = #{x ∈ C_j : x⁻¹ z_c ∈ C_l} for a fixed z_c ∈ C_c
    let class_matrices: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|j| {
            let mut m = vec![vec![0u64; k]; k];
            for (c, cc) in classes.iter().enumerate() {
                let z = cc.representative;
                for &x in &classes[j].members {
                    let l = group.class_of(group.mul(group.inv(x), z));
                    m[l][c] += 1;
                }
            }
            m
        })
        .collect();

    let mut spaces = vec![Subspace {
        basis: (0..k)
            .map(|i| (0..k).map(|c| u64::from(i == c)).collect())
            .collect(),
        pivots: (0..k).collect(),
    }];
    for m in class_matrices.iter().skip(1) {
        if spaces.iter().all(|s| s.basis.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.basis.len() == 1 {
                next.push(space);
            } else {
                next.extend(split(f, m, space)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.basis.len() != 1) {
        return Err(Error::CharacterTable(
            "class-sum matrices did not separate the characters".into(),
        ));
    }

    let inverse_class: Vec<usize> = classes
        .iter()
        .map(|c| group.class_of(group.inv(c.representative)))
        .collect();
    let power_class: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut acc = FiniteGroup::IDENTITY;
            (0..exponent)
                .map(|_| {
                    let cls = group.class_of(acc);
                    acc = group.mul(acc, c.representative);
                    cls
                })
                .collect()
        })
        .collect();
    let zeta = f.pow(primitive_root(f), (f.p - 1) / exponent);
    let zeta_inv = f.inv(zeta);
    let e_inv = f.inv(exponent % f.p);

    let mut rows = Vec::with_capacity(k);
    for space in spaces {
        let w = &space.basis[0];
        let scale = f.inv(w[0]);
        let omega: Vec<u64> = w.iter().map(|&x| f.mul(x, scale)).collect();
        let mut s = 0u64;
        for c in 0..k {
            let term = f.mul(
                f.mul(omega[c], omega[inverse_class[c]]),
                f.inv(classes[c].size() as u64),
            );
            s = f.add(s, term);
        }
        let deg_sq = f.mul(order % f.p, f.inv(s));
        let degree = (1..=order)
            .take_while(|d| d * d <= order)
            .find(|d| d * d == deg_sq)
            .ok_or_else(|| Error::CharacterTable(format!("{deg_sq} is not a square degree")))?;
        let modp_values: Vec<u64> = (0..k)
            .map(|c| f.mul(f.mul(degree, omega[c]), f.inv(classes[c].size() as u64)))
            .collect();
        let mut values = Vec::with_capacity(k);
        for c in 0..k {
            // multiplicity of ζ^t among the eigenvalues of the representing matrix
            let mut mult = vec![0i64; exponent as usize];
            for (t, slot) in mult.iter_mut().enumerate() {
                let step = f.pow(zeta_inv, t as u64);
                let mut acc = 0u64;
                let mut z = 1u64;
                for l in 0..exponent as usize {
                    acc = f.add(acc, f.mul(modp_values[power_class[c][l]], z));
                    z = f.mul(z, step);
                }
                let m = f.mul(acc, e_inv);
                if m > degree {
                    return Err(Error::CharacterTable(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree}"
                    )));
                }
                *slot = m as i64;
            }
            values.push(Cyclotomic::from_power_coeffs(exponent as u32, &mult));
        }
        rows.push(IrreducibleCharacter {
            degree: degree as u32,
            values,
        });
    }
    let sum_sq: u64 = rows.iter().map(|r| (r.degree as u64).pow(2)).sum();
    if sum_sq != order {
        return Err(Error::CharacterTable(format!(
            "degrees square-sum to {sum_sq}, not |G| = {order}"
        )));
    }
    Ok(rows)
}

/// Splits an invariant subspace into the eigenspaces of `m` restricted to it.
fn split(f: Fp, m: &[Vec<u64>], space: Subspace) -> Result<Vec<Subspace>> {
    let d = space.basis.len();
    let k = m.len();
    // restricted operator: column c holds the coordinates of m·b_c
    let images: Vec<Vec<u64>> = space
        .basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|l| (0..k).fold(0, |acc, c| f.add(acc, f.mul(m[l][c], b[c]))))
                .collect()
        })
        .collect();
    let a: Vec<Vec<u64>> = (0..d)
        .map(|r| (0..d).map(|c| images[c][space.pivots[r]]).collect())
        .collect();
    let cp = charpoly(f, &a);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..f.p {
        if eval(f, &cp, lambda) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        if r == c {
                            f.sub(a[r][c], lambda)
                        } else {
                            a[r][c]
                        }
                    })
                    .collect()
            })
            .collect();
        let mut vecs: Vec<Vec<u64>> = nullspace(f, &shifted)
            .into_iter()
            .map(|y| {
                (0..k)
                    .map(|i| (0..d).fold(0, |acc, c| f.add(acc, f.mul(y[c], space.basis[c][i]))))
                    .collect()
            })
            .collect();
        let pivots = rref(f, &mut vecs);
        total += vecs.len();
        out.push(Subspace {
            basis: vecs,
            pivots,
        });
    }
    if total != d {
        return Err(Error::CharacterTable(
            "class-sum matrix is not diagonalisable over the chosen prime".into(),
        ));
    }
    Ok(out)
}
