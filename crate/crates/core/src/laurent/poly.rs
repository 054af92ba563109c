use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `ℤ[q_1^±, …, q_n^±]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, i64>,
}

/// One serialized term `c·q^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exp: Vec<i32>,
    pub c: i64,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn monomial(exp: Vec<i32>, c: i64) -> Self {
        let mut p = Self::zero(exp.len());
        if c != 0 {
            p.terms.insert(exp, c);
        }
        p
    }

    /// `q_i` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, k: i32) -> Self {
        assert!(i < nvars, "variable q{} out of range", i + 1);
        let mut exp = vec![0; nvars];
        exp[i] = k;
        Self::monomial(exp, 1)
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<i32>, i64)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::VariableMismatch(nvars, exp.len()));
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Vec<i32>, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, i64> {
        &self.terms
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(e, &c)| Term { exp: e.clone(), c })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&vec![0; self.nvars]) == Some(&1)
    }

    pub fn coefficient(&self, exp: &[i32]) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` if the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&[i32], i64)> {
        if self.terms.len() == 1 {
            let (e, &c) = self.terms.iter().next().expect("one term");
            Some((e, c))
        } else {
            None
        }
    }

    /// The units of `ℤ[q^±]` are `±q^a`.
    pub fn is_unit(&self) -> bool {
        matches!(self.as_monomial(), Some((_, c)) if c == 1 || c == -1)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &x)| (e.clone(), x * c))
                .collect(),
        }
    }

    /// Multiplication by the monomial `q^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    fn min_exponents(&self) -> Vec<i32> {
        (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).min().unwrap_or(0))
            .collect()
    }

    fn max_exponents(&self) -> Vec<i32> {
        (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect()
    }

    /// `self / d` if `d` divides `self` in `ℤ[q^±]`.
    ///
    /// Both sides are shifted by monomials so that every variable has minimal
    /// exponent zero; the quotient is then an ordinary polynomial, found by
    /// division on lex-leading terms with its exponents confined to a box.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() || self.nvars != d.nvars {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<i32>>();
        let (nmin, dmin) = (self.min_exponents(), d.min_exponents());
        let mut rem = self.shift(&neg(&nmin));
        let den = d.shift(&neg(&dmin));
        let bound: Vec<i32> = rem
            .max_exponents()
            .iter()
            .zip(den.max_exponents())
            .map(|(a, b)| a - b)
            .collect();
        let (lead_e, &lead_c) = den.terms.iter().next_back().expect("nonzero");
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.terms.iter().next_back().map(|(e, &c)| (e.clone(), c)) {
            let qe: Vec<i32> = re.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if rc % lead_c != 0 || qe.iter().zip(&bound).any(|(&e, &b)| e < 0 || e > b) {
                return None;
            }
            let term = Self::monomial(qe.clone(), rc / lead_c);
            rem = &rem - &(&term * &den);
            quot.add_term(qe, rc / lead_c);
        }
        let back: Vec<i32> = nmin.iter().zip(&dmin).map(|(a, b)| a - b).collect();
        Some(quot.shift(&back))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable counts agree")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("variable counts agree")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable counts agree")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, &c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let mono = monomial_string(e);
            match (c.abs(), mono.is_empty()) {
                (a, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{mono}")?,
                (a, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn monomial_string(e: &[i32]) -> String {
    let name = |i: usize| {
        if e.len() == 1 {
            "q".to_string()
        } else {
            format!("q{}", i + 1)
        }
    };
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| {
            if x == 1 {
                name(i)
            } else {
                format!("{}^{x}", name(i))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(n, i)
    }

    #[test]
    fn small_identities() {
        let q1 = q(1, 0);
        let inv = LaurentPoly::var_pow(1, 0, -1);
        assert_eq!(&(&q1 + &inv) * &q1, &(&q1 * &q1) + &LaurentPoly::one(1));
        let a = &q(2, 0) + &q(2, 1);
        assert_eq!(&a * &LaurentPoly::one(2), a);
        let sq = &a * &a;
        assert_eq!(sq.coefficient(&[1, 1]), 2);
        assert_eq!(sq.coefficient(&[2, 0]), 1);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.to_string(), "q1^2 + 2*q1*q2 + q2^2");
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        assert!(matches!(
            q(1, 0).checked_add(&q(2, 0)),
            Err(Error::VariableMismatch(1, 2))
        ));
    }

    #[test]
    fn units() {
        assert!(LaurentPoly::var_pow(2, 1, -3).is_unit());
        assert!(LaurentPoly::constant(2, -1).is_unit());
        assert!(!LaurentPoly::constant(2, 2).is_unit());
        assert!(!(&q(1, 0) + &LaurentPoly::one(1)).is_unit());
    }

    #[test]
    fn division() {
        let one = LaurentPoly::one(1);
        let x = q(1, 0);
        let a = &x - &one;
        let b = &(&x * &x) - &one;
        assert_eq!(b.exact_div(&a), Some(&x + &one));
        assert_eq!(a.exact_div(&b), None);
        let shifted = b.shift(&[-5]);
        assert_eq!(shifted.exact_div(&a), Some((&x + &one).shift(&[-5])));
        assert_eq!(
            LaurentPoly::constant(1, 3).exact_div(&LaurentPoly::constant(1, 2)),
            None
        );
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-2i32..=2, n), -3i64..=3), 0..=3)
            .prop_map(move |ts| LaurentPoly::from_terms(n, ts).unwrap())
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
            }
        }
    }
}
