//! Exact arithmetic in `ℤ[ζ_m]`, stored in the power basis modulo `Φ_m`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1);
    if let Some(p) = poly_cache().read().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &den);
        }
    }
    let p = Arc::new(num);
    poly_cache().write().unwrap().insert(m, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn euler_phi(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

/// An element of `ℤ[ζ_m]` with `ζ_m = e^{2πi/m}`.
#[derive(Clone, Serialize, Deserialize)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    /// Reduces an arbitrary coefficient vector `Σ c_t ζ^t` modulo `Φ_m`.
    pub fn from_power_coeffs(conductor: u32, coeffs: &[i64]) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        let mut v = coeffs.to_vec();
        if v.len() < deg {
            v.resize(deg, 0);
        }
        for top in (deg..v.len()).rev() {
            let c = v[top];
            if c != 0 {
                for (j, &p) in phi.iter().enumerate() {
                    v[top - deg + j] -= c * p;
                }
            }
        }
        v.truncate(deg);
        Cyclotomic {
            conductor,
            coeffs: v,
        }
    }

    pub fn zero(conductor: u32) -> Self {
        Cyclotomic {
            conductor,
            coeffs: vec![0; euler_phi(conductor)],
        }
    }

    pub fn integer(conductor: u32, c: i64) -> Self {
        Self::from_power_coeffs(conductor, &[c])
    }

    pub fn one(conductor: u32) -> Self {
        Self::integer(conductor, 1)
    }

    /// `ζ_m^k`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let m = conductor as i64;
        let mut v = vec![0i64; conductor as usize];
        v[k.rem_euclid(m) as usize] = 1;
        Self::from_power_coeffs(conductor, &v)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the element in `ℤ[ζ_M]` for a multiple `M` of the conductor.
    pub fn lift(&self, to: u32) -> Self {
        assert!(
            to % self.conductor == 0,
            "conductor {} does not divide {}",
            self.conductor,
            to
        );
        if to == self.conductor {
            return self.clone();
        }
        let step = (to / self.conductor) as usize;
        let mut v = vec![0i64; to as usize];
        for (t, &c) in self.coeffs.iter().enumerate() {
            v[t * step] += c;
        }
        Self::from_power_coeffs(to, &v)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = num_integer::lcm(a.conductor, b.conductor);
        (a.lift(m), b.lift(m))
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        let m = self.conductor as usize;
        let mut v = vec![0i64; m.max(1)];
        for (t, &c) in self.coeffs.iter().enumerate() {
            v[(m - t) % m] += c;
        }
        Self::from_power_coeffs(self.conductor, &v)
    }

    /// Floating-point value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (t, &c)| {
                let a = 2.0 * std::f64::consts::PI * t as f64 / m;
                (re + c as f64 * a.cos(), im + c as f64 * a.sin())
            })
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let mut v = vec![0i64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        Cyclotomic::from_power_coeffs(a.conductor, &v)
    }
}

impl Mul<i64> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: i64) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * rhs).collect(),
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (t, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "z{}^{t}", self.conductor)?,
                _ => write!(f, "{a}*z{}^{t}", self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(9), 6);
    }

    #[test]
    fn roots_of_unity_cycle() {
        for m in [1u32, 2, 3, 4, 5, 6, 8, 12, 24] {
            let z = Cyclotomic::root_of_unity(m, 1);
            let mut acc = Cyclotomic::one(m);
            for _ in 0..m {
                acc = &acc * &z;
            }
            assert_eq!(acc, Cyclotomic::one(m), "m = {m}");
            // sum of all m-th roots vanishes for m > 1
            let sum = (0..m as i64).fold(Cyclotomic::zero(m), |s, k| {
                &s + &Cyclotomic::root_of_unity(m, k)
            });
            assert_eq!(sum.is_zero(), m > 1);
        }
    }

    #[test]
    fn conj_times_self_for_roots() {
        let z = Cyclotomic::root_of_unity(12, 5);
        assert_eq!(&z * &z.conj(), Cyclotomic::one(12));
        assert_eq!(Cyclotomic::root_of_unity(2, 1).as_integer(), Some(-1));
    }

    #[test]
    fn lifting_preserves_values() {
        let z3 = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(z3.lift(12), Cyclotomic::root_of_unity(12, 4));
        assert_eq!(z3, Cyclotomic::root_of_unity(6, 2));
        assert_eq!(
            &z3 + &Cyclotomic::root_of_unity(4, 1),
            &Cyclotomic::root_of_unity(12, 4) + &Cyclotomic::root_of_unity(12, 3)
        );
    }

    proptest! {
        #[test]
        fn ring_laws(m in prop::sample::select(vec![3u32, 4, 5, 8, 12]),
                     a in prop::collection::vec(-3i64..=3, 12),
                     b in prop::collection::vec(-3i64..=3, 12),
                     c in prop::collection::vec(-3i64..=3, 12)) {
            let x = Cyclotomic::from_power_coeffs(m, &a);
            let y = Cyclotomic::from_power_coeffs(m, &b);
            let z = Cyclotomic::from_power_coeffs(m, &c);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            let (re, im) = (&x * &y).to_complex();
            let (xr, xi) = x.to_complex();
            let (yr, yi) = y.to_complex();
            prop_assert!((re - (xr * yr - xi * yi)).abs() < 1e-6);
            prop_assert!((im - (xr * yi + xi * yr)).abs() < 1e-6);
        }
    }
}
