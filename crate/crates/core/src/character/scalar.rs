use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use super::table::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::CommutingTuple;

/// Normalised fractional q-degree `(k_1/l_1, …, k_n/l_n)` with `0 ≤ k_i/l_i < 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QDegree(Vec<Ratio<i64>>);

impl QDegree {
    pub fn zero(n: usize) -> Self {
        QDegree(vec![Ratio::from_integer(0); n])
    }

    pub fn new(fractions: Vec<Ratio<i64>>) -> Self {
        debug_assert!(fractions
            .iter()
            .all(|r| *r >= Ratio::from_integer(0) && *r < Ratio::from_integer(1)));
        QDegree(fractions)
    }

    pub fn fractions(&self) -> &[Ratio<i64>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|r| *r.numer() == 0)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0
            .iter()
            .map(|r| format!("{}/{}", r.numer(), r.denom()))
            .collect()
    }
}

impl fmt::Display for QDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for QDegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// The unique `k/l`, `0 ≤ k < l = ord(z)`, with `χ(z) = χ(e)·ζ_l^k`, for `z`
/// central in the table's group.
pub fn central_scalar(table: &CharacterTable, row: usize, z: usize) -> Result<Ratio<i64>> {
    let group = table.group();
    if !group.is_central(z) {
        return Err(Error::NotCentral);
    }
    let l = group.element_order(z);
    let value = table.value(row, z);
    let degree = table.row(row).degree as i64;
    for k in 0..l as i64 {
        if &Cyclotomic::root_of_unity(l, k) * degree == *value {
            return Ok(Ratio::new(k, l as i64));
        }
    }
    Err(Error::NoScalarMatch)
}

/// Componentwise central scalars of the tuple entries.
pub fn q_degree(table: &CharacterTable, row: usize, sigma: &CommutingTuple) -> Result<QDegree> {
    let idx = sigma.indices_in(table.group())?;
    let fractions = idx
        .into_iter()
        .map(|z| central_scalar(table, row, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(QDegree::new(fractions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::character_table;
    use crate::corpus::corpus_group;
    use crate::group::FiniteGroup;

    fn r(k: i64, l: i64) -> Ratio<i64> {
        Ratio::new(k, l)
    }

    #[test]
    fn scalars_on_small_cyclic_groups() {
        let z2 = character_table(&corpus_group("Z2").unwrap()).unwrap();
        assert_eq!(central_scalar(&z2, 0, 1).unwrap(), r(0, 1));
        assert_eq!(central_scalar(&z2, 1, 1).unwrap(), r(1, 2));
        let triv = character_table(&corpus_group("trivial").unwrap()).unwrap();
        assert_eq!(
            central_scalar(&triv, 0, FiniteGroup::IDENTITY).unwrap(),
            r(0, 1)
        );

        let z3 = character_table(&corpus_group("Z3").unwrap()).unwrap();
        let g = z3.group().clone();
        let gen = g.index_of(&g.generators()[0]).unwrap();
        let row = (0..3)
            .find(|&i| *z3.value(i, gen) == Cyclotomic::root_of_unity(3, 1))
            .unwrap();
        assert_eq!(central_scalar(&z3, row, gen).unwrap(), r(1, 3));
        let row2 = (0..3)
            .find(|&i| *z3.value(i, gen) == Cyclotomic::root_of_unity(3, 2))
            .unwrap();
        let sigma = CommutingTuple::new(&g, vec![g.element(gen).clone(); 2]).unwrap();
        let q = q_degree(&z3, row2, &sigma).unwrap();
        assert_eq!(q.to_strings(), vec!["2/3", "2/3"]);
        assert_eq!(q.to_string(), "(2/3, 2/3)");
    }

    #[test]
    fn noncentral_elements_are_rejected() {
        let s3 = character_table(&corpus_group("S3").unwrap()).unwrap();
        let g = s3.group().clone();
        let t = (1..g.order()).find(|&i| !g.is_central(i)).unwrap();
        assert!(matches!(central_scalar(&s3, 2, t), Err(Error::NotCentral)));
    }

    #[test]
    fn scalars_are_additive_on_commuting_products() {
        // for z, w central: scalar(zw) ≡ scalar(z) + scalar(w) mod 1
        for name in ["Z4", "Q8", "Z6", "D4", "Z2xZ2"] {
            let t = character_table(&corpus_group(name).unwrap()).unwrap();
            let g = t.group().clone();
            let centre: Vec<usize> = (0..g.order()).filter(|&z| g.is_central(z)).collect();
            for row in 0..t.len() {
                for &z in &centre {
                    for &w in &centre {
                        let s = central_scalar(&t, row, z).unwrap()
                            + central_scalar(&t, row, w).unwrap();
                        let s = s - Ratio::from_integer(s.to_integer());
                        assert_eq!(s, central_scalar(&t, row, g.mul(z, w)).unwrap(), "{name}");
                    }
                }
            }
        }
    }
}
