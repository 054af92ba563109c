//! Prime-field arithmetic and the small amount of linear algebra the
//! class-sum eigenvalue method needs.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }
    #[cfg(test)]
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod modulus)` with `p > lower`.
pub(crate) fn prime_congruent_one(modulus: u64, lower: u64) -> u64 {
    let mut p = lower + 1;
    while p % modulus != 1 % modulus {
        p += 1;
    }
    while !is_prime(p) {
        p += modulus;
    }
    p
}

pub(crate) fn primitive_root(f: Fp) -> u64 {
    let phi = f.p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..f.p)
        .find(|&g| factors.iter().all(|&q| f.pow(g, phi / q) != 1))
        .unwrap_or(1)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(f: Fp, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let v = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{y : A y = 0}` for a square matrix `A`.
pub(crate) fn nullspace(f: Fp, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut rows = a.to_vec();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, rows[r][fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI − A)`, lowest degree first, via reduction
/// to upper Hessenberg form.
pub(crate) fn charpoly(f: Fp, a: &[Vec<u64>]) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = f.inv(h[m][m - 1]);
        for i in (m + 1)..n {
            let u = f.mul(h[i][m - 1], t);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let v = f.mul(u, h[m][j]);
                h[i][j] = f.sub(h[i][j], v);
            }
            for row in h.iter_mut() {
                let v = f.mul(u, row[i]);
                row[m] = f.add(row[m], v);
            }
        }
    }
    // p_k for the leading k×k block, built by the Hessenberg recurrence
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[m][m], c));
        }
        let mut t = 1u64;
        for i in (0..m).rev() {
            t = f.mul(t, h[i + 1][i]);
            let coef = f.mul(h[i][m], t);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 polynomials")
}

pub(crate) fn eval(f: Fp, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots() {
        assert_eq!(prime_congruent_one(12, 24), 37);
        assert_eq!(prime_congruent_one(2, 2), 3);
        let f = Fp { p: 13 };
        let g = primitive_root(f);
        assert_eq!(g, 2);
        assert_eq!(f.mul(f.inv(5), 5), 1);
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // companion matrix of x^3 - 2x^2 + 3x - 5 over F_101
        let f = Fp { p: 101 };
        let a = vec![vec![0, 0, 5], vec![1, 0, f.from_i64(-3)], vec![0, 1, 2]];
        assert_eq!(charpoly(f, &a), vec![f.from_i64(-5), 3, f.from_i64(-2), 1]);
    }

    #[test]
    fn charpoly_matches_determinant_definition() {
        // det(xI - A) evaluated at sample points equals the brute-force 3x3 determinant
        let f = Fp { p: 97 };
        let a = vec![vec![4, 7, 1], vec![3, 0, 9], vec![8, 2, 5]];
        let cp = charpoly(f, &a);
        for x in 0..10u64 {
            let m: Vec<Vec<u64>> = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| f.sub(if i == j { x } else { 0 }, a[i][j]))
                        .collect()
                })
                .collect();
            let det = f.sub(
                f.add(
                    f.add(
                        f.mul(m[0][0], f.mul(m[1][1], m[2][2])),
                        f.mul(m[0][1], f.mul(m[1][2], m[2][0])),
                    ),
                    f.mul(m[0][2], f.mul(m[1][0], m[2][1])),
                ),
                f.add(
                    f.add(
                        f.mul(m[0][2], f.mul(m[1][1], m[2][0])),
                        f.mul(m[0][0], f.mul(m[1][2], m[2][1])),
                    ),
                    f.mul(m[0][1], f.mul(m[1][0], m[2][2])),
                ),
            );
            assert_eq!(eval(f, &cp, x), det);
        }
    }

    #[test]
    fn nullspace_dimension() {
        let f = Fp { p: 7 };
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let ns = nullspace(f, &a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s = row
                    .iter()
                    .zip(&v)
                    .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
    }
}
