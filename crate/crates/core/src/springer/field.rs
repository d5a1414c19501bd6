//! Small finite fields and subspaces of `F_q^d` in reduced echelon form.

use crate::error::{Error, Result};

/// Prime powers with a table-driven field implementation.
pub const FIELD_SIZES: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

/// `GF(p^k)` with elements `0..q` read as base-`p` digit vectors.
#[derive(Clone, Debug)]
pub struct Field {
    q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|p| q % p == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        if !FIELD_SIZES.contains(&q) {
            return Err(Error::OutOfRange(format!("field size {q}")));
        }
        let (p, k) = factor_prime_power(q).ok_or_else(|| Error::OutOfRange(format!("{q} is not a prime power")))?;
        let digits = |x: u32| -> Vec<u32> { (0..k).map(|i| x / p.pow(i) % p).collect() };
        let number = |d: &[u32]| -> u32 { d.iter().enumerate().map(|(i, &c)| c * p.pow(i as u32)).sum() };
        // Monic modulus of degree k without roots; for k <= 3 that is irreducible.
        let modulus: Vec<u32> = (0..p.pow(k))
            .map(|x| {
                let mut m = digits(x);
                m.push(1);
                m
            })
            .find(|m| {
                k == 1 || (0..p).all(|t| m.iter().rev().fold(0, |acc, &c| (acc * t + c) % p) != 0)
            })
            .expect("an irreducible polynomial exists");
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = number(&s) as u8;
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for top in (k as usize..prod.len()).rev() {
                    let c = prod[top];
                    if c != 0 {
                        for (t, m) in modulus.iter().enumerate() {
                            let idx = top - k as usize + t;
                            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                        }
                    }
                }
                mul[(a * q + b) as usize] = number(&prod[..k as usize]) as u8;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u8).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as u8 })
            .collect();
        Ok(Field { q, add, mul, neg, inv })
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// `a += c * b`.
    pub fn axpy(&self, a: &mut [u8], c: u8, b: &[u8]) {
        if c == 0 {
            return;
        }
        for (x, &y) in a.iter_mut().zip(b) {
            *x = self.add(*x, self.mul(c, y));
        }
    }

    /// Reduced row echelon form, dropping zero rows.
    pub fn rref(&self, mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, p);
            let s = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, s);
            }
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = self.neg(row[c]);
                    self.axpy(row, f, &pivot);
                }
            }
            r += 1;
        }
        rows.truncate(r);
        rows
    }

    /// Reduces `v` modulo the span of an RREF basis.
    pub fn reduce(&self, basis: &[Vec<u8>], v: &mut [u8]) {
        for b in basis {
            let c = b.iter().position(|&x| x != 0).unwrap();
            if v[c] != 0 {
                let f = self.neg(v[c]);
                self.axpy(v, f, b);
            }
        }
    }

    /// Basis of the kernel of the map `v -> (M v)` for `M` given by rows.
    pub fn kernel(&self, m: Vec<Vec<u8>>, cols: usize) -> Vec<Vec<u8>> {
        let r = self.rref(m);
        let pivots: Vec<usize> = r.iter().map(|row| row.iter().position(|&x| x != 0).unwrap()).collect();
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u8; cols];
                v[free] = 1;
                for (row, &p) in r.iter().zip(&pivots) {
                    v[p] = self.neg(row[free]);
                }
                v
            })
            .collect()
    }

    /// All `r x m` matrices in reduced row echelon form of rank `r`.
    pub fn echelon_matrices(&self, r: usize, m: usize) -> Vec<Vec<Vec<u8>>> {
        let mut out = Vec::new();
        for pivots in combinations(m, r) {
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| (pivots[i] + 1..m).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
                .collect();
            let total = (self.q as u64).pow(free.len() as u32);
            for mut code in 0..total {
                let mut rows = vec![vec![0u8; m]; r];
                for (i, &p) in pivots.iter().enumerate() {
                    rows[i][p] = 1;
                }
                for &(i, c) in &free {
                    rows[i][c] = (code % self.q as u64) as u8;
                    code /= self.q as u64;
                }
                out.push(rows);
            }
        }
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in FIELD_SIZES {
            let f = Field::new(q).unwrap();
            let q = q as u8;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
        assert!(Field::new(6).is_err());
    }

    #[test]
    fn echelon_counts_are_gaussian_binomials() {
        let f = Field::new(4).unwrap();
        // [4 choose 2]_4 = (4^4-1)(4^3-1)/((4^2-1)(4-1)) = 357
        assert_eq!(f.echelon_matrices(2, 4).len(), 357);
        assert_eq!(f.echelon_matrices(0, 3).len(), 1);
    }
}
