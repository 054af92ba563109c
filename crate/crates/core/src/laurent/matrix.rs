use std::collections::BTreeMap;

use serde::Serialize;

use super::poly::{LaurentPoly, Term};

/// A sparse vector over `ℤ[q^±]`, keyed by basis index.
pub type SparseVec = BTreeMap<usize, LaurentPoly>;

/// A `ℤ[q^±]`-linear map between free modules of finite rank, stored by
/// columns: column `j` is the image of the `j`-th source basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    nvars: usize,
    target_dim: usize,
    columns: Vec<SparseVec>,
}

/// One nonzero matrix entry, as serialized in map reports.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub coeff: Vec<Term>,
}

pub(crate) fn add_into(v: &mut SparseVec, i: usize, p: LaurentPoly) {
    if p.is_zero() {
        return;
    }
    match v.get_mut(&i) {
        Some(old) => {
            *old = &*old + &p;
            if old.is_zero() {
                v.remove(&i);
            }
        }
        None => {
            v.insert(i, p);
        }
    }
}

impl LinearMap {
    pub fn zero(nvars: usize, source_dim: usize, target_dim: usize) -> Self {
        LinearMap {
            nvars,
            target_dim,
            columns: vec![SparseVec::new(); source_dim],
        }
    }

    pub fn identity(nvars: usize, dim: usize) -> Self {
        let mut m = Self::zero(nvars, dim, dim);
        for i in 0..dim {
            m.add_entry(i, i, LaurentPoly::one(nvars));
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn source_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn add_entry(&mut self, row: usize, col: usize, p: LaurentPoly) {
        assert!(row < self.target_dim && col < self.columns.len());
        add_into(&mut self.columns[col], row, p);
    }

    pub fn entry(&self, row: usize, col: usize) -> LaurentPoly {
        self.columns[col]
            .get(&row)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.nvars))
    }

    pub fn column(&self, col: usize) -> &SparseVec {
        &self.columns[col]
    }

    pub fn entries(&self) -> Vec<MatrixEntry> {
        let mut out: Vec<MatrixEntry> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(col, c)| {
                c.iter().map(move |(&row, p)| MatrixEntry {
                    row,
                    col,
                    coeff: p.to_terms(),
                })
            })
            .collect();
        out.sort_by_key(|e| (e.row, e.col));
        out
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, p) in v {
            for (&i, a) in &self.columns[j] {
                add_into(&mut out, i, a * p);
            }
        }
        out
    }

    /// `then ∘ self`.
    pub fn compose(&self, then: &LinearMap) -> LinearMap {
        assert_eq!(
            self.target_dim,
            then.source_dim(),
            "dimensions do not chain"
        );
        LinearMap {
            nvars: self.nvars,
            target_dim: then.target_dim,
            columns: self.columns.iter().map(|c| then.apply(c)).collect(),
        }
    }

    /// Whether every column and every row holds exactly one entry, and that
    /// entry is a unit.
    pub fn is_monomial_permutation(&self) -> bool {
        if self.target_dim != self.source_dim() {
            return false;
        }
        let mut hit = vec![false; self.target_dim];
        for c in &self.columns {
            if c.len() != 1 {
                return false;
            }
            let (&row, p) = c.iter().next().expect("one entry");
            if hit[row] || !p.is_unit() {
                return false;
            }
            hit[row] = true;
        }
        true
    }

    /// Invertibility over `ℤ[q^±]`: the matrix is square and its determinant
    /// is `±q^a`. The determinant is taken block by block over the connected
    /// components of the row/column incidence graph.
    pub fn is_invertible(&self) -> bool {
        if self.target_dim != self.source_dim() {
            return false;
        }
        if self.is_monomial_permutation() {
            return true;
        }
        self.blocks().into_iter().all(|(rows, cols)| {
            rows.len() == cols.len() && {
                let m: Vec<Vec<LaurentPoly>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| self.entry(r, c)).collect())
                    .collect();
                determinant(self.nvars, m).is_unit()
            }
        })
    }

    fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        // union-find over rows 0..R and columns R..R+C
        let r = self.target_dim;
        let mut parent: Vec<usize> = (0..r + self.columns.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (j, c) in self.columns.iter().enumerate() {
            for &i in c.keys() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, r + j));
                parent[a] = b;
            }
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for x in 0..parent.len() {
            let root = find(&mut parent, x);
            let g = groups.entry(root).or_default();
            if x < r {
                g.0.push(x);
            } else {
                g.1.push(x - r);
            }
        }
        groups.into_values().collect()
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(nvars: usize, mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(nvars);
    }
    let mut sign = 1;
    let mut prev = LaurentPoly::one(nvars);
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return LaurentPoly::zero(nvars);
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss quotients are exact");
            }
            m[i][k] = LaurentPoly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(sign)
}
