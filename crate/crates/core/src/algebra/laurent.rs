use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of `Z[q, q^{-1}]`, stored as exponent to coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, PartialOrd, Ord)]
pub struct LaurentScalar(BTreeMap<i32, BigInt>);

impl LaurentScalar {
    /// `c q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i32) -> Self {
        let c = c.into();
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        LaurentScalar(m)
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(1, k)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `(-q)^k`.
    pub fn neg_q_pow(k: i32) -> Self {
        Self::monomial(if k.rem_euclid(2) == 0 { 1 } else { -1 }, k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.0.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i32) -> BigInt {
        self.0.get(&k).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    /// Units of `Z[q, q^{-1}]` are `±q^k`.
    pub fn is_unit(&self) -> bool {
        self.0.len() == 1 && self.0.values().all(|c| c.abs().is_one())
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentScalar(self.0.iter().map(|(&k, c)| (-k, c.clone())).collect())
    }

    pub fn shift(&self, k: i32) -> Self {
        LaurentScalar(self.0.iter().map(|(&e, c)| (e + k, c.clone())).collect())
    }

    /// Value at a nonzero rational `q0`.
    pub fn eval(&self, q0: &BigRational) -> BigRational {
        self.0
            .iter()
            .map(|(&k, c)| BigRational::from_integer(c.clone()) * pow_rational(q0, k))
            .sum()
    }

    fn add_term(&mut self, k: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }
}

pub(crate) fn pow_rational(q0: &BigRational, k: i32) -> BigRational {
    let p = num_traits::pow(q0.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

impl Zero for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar(BTreeMap::new())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for LaurentScalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for LaurentScalar {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for LaurentScalar {
    fn add_assign(&mut self, rhs: Self) {
        for (k, c) in rhs.0 {
            self.add_term(k, c);
        }
    }
}

impl Sub for LaurentScalar {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for LaurentScalar {
    fn sub_assign(&mut self, rhs: Self) {
        for (k, c) in rhs.0 {
            self.add_term(k, -c);
        }
    }
}

impl Neg for LaurentScalar {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentScalar(self.0.into_iter().map(|(k, c)| (k, -c)).collect())
    }
}

impl Mul for LaurentScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (a, x) in &self.0 {
            for (b, y) in &rhs.0 {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Sum for LaurentScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

fn format_term(c: &BigInt, k: i32) -> String {
    let q = match k {
        0 => String::new(),
        1 => "q".into(),
        _ => format!("q^{k}"),
    };
    if k == 0 {
        c.to_string()
    } else if c.is_one() {
        q
    } else if (-c).is_one() {
        format!("-{q}")
    } else {
        format!("{c}{q}")
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (n, (&k, c)) in self.0.iter().enumerate() {
            let t = format_term(c, k);
            if n == 0 {
                write!(f, "{t}")?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentScalar {
    type Err = Error;

    /// Parses sums such as `-q^-1 + 3 + 2q^2`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("bad Laurent polynomial `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let bytes = t.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&t[start..i]);
                start = i;
            }
        }
        pieces.push(&t[start..]);
        let mut out = LaurentScalar::zero();
        for p in pieces {
            let (neg, body) = match p.as_bytes().first() {
                Some(b'-') => (true, &p[1..]),
                Some(b'+') => (false, &p[1..]),
                _ => (false, p),
            };
            let (coef, rest) = match body.find('q') {
                Some(i) => (&body[..i], Some(&body[i + 1..])),
                None => (body, None),
            };
            let mut c: BigInt = if coef.is_empty() {
                if rest.is_none() {
                    return Err(err());
                }
                BigInt::one()
            } else {
                coef.parse().map_err(|_| err())?
            };
            let k: i32 = match rest {
                None => 0,
                Some("") => 1,
                Some(r) => r.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?,
            };
            if neg {
                c = -c;
            }
            out.add_term(k, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let q = LaurentScalar::q();
        let qi = LaurentScalar::q_pow(-1);
        let x = qi.clone() - q.clone();
        assert_eq!((x.clone() * x.clone()).to_string(), "q^-2 - 2 + q^2");
        assert_eq!(q.clone() * qi, LaurentScalar::one());
        assert!(LaurentScalar::neg_q_pow(-1).is_unit());
        assert!(!(q.clone() + LaurentScalar::one()).is_unit());
        assert_eq!(LaurentScalar::neg_q_pow(3), -LaurentScalar::q_pow(3));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(x.eval(&half), BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "-q^-1 + 3 + 2q^2", "q", "-7q^-3 - q^5"] {
            let x: LaurentScalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!("q^".parse::<LaurentScalar>().is_err());
        assert!("".parse::<LaurentScalar>().is_err());
        assert_eq!("q+q".parse::<LaurentScalar>().unwrap(), LaurentScalar::monomial(2, 1));
    }
}
