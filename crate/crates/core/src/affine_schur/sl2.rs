//! The rank one bimodule `H~ x_mu` for `SL_2`, where `x_mu = H - q^{-1}`.
//!
//! `H~ x_mu = R(T) x_mu` is free of rank two over `R(G) = Z[q, q^{-1}][z]`,
//! `z = e^w + e^{-w}`, with basis `x_mu, e^{-w} x_mu`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{AffineHeckeAlgebra, AffineHeckeElement, HeckeAlgebra, LatticeElement, LaurentScalar};
use crate::cartan::{CartanDatum, FiniteType, OrbitTable, Subset, Weight, WeylGroup};
use crate::error::{Error, Result};

/// Polynomial in `z` with Laurent coefficients; entry `k` multiplies `z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly(Vec<LaurentScalar>);

impl ZPoly {
    pub fn new(mut coeffs: Vec<LaurentScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly(coeffs)
    }

    pub fn constant(c: LaurentScalar) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn z() -> Self {
        ZPoly::new(vec![LaurentScalar::zero(), LaurentScalar::one()])
    }

    pub fn coeffs(&self) -> &[LaurentScalar] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Units of `Z[q, q^{-1}][z]` are the constants `±q^k`.
    pub fn is_unit(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_unit()
    }

    pub fn eval(&self, q: &BigRational, z: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * z.clone() + c.eval(q))
    }
}

impl Zero for ZPoly {
    fn zero() -> Self {
        ZPoly(Vec::new())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for ZPoly {
    fn one() -> Self {
        ZPoly::constant(LaurentScalar::one())
    }
}

impl Add for ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: ZPoly) -> ZPoly {
        let n = self.0.len().max(rhs.0.len());
        let at = |v: &[LaurentScalar], k: usize| v.get(k).cloned().unwrap_or_else(LaurentScalar::zero);
        ZPoly::new((0..n).map(|k| at(&self.0, k) + at(&rhs.0, k)).collect())
    }
}

impl Neg for ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Sub for ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: ZPoly) -> ZPoly {
        self + (-rhs)
    }
}

impl Mul for ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![LaurentScalar::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        ZPoly::new(out)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                _ => {
                    let z = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if c.is_one() { z } else { format!("({c})*{z}") }
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub type Matrix2 = [[ZPoly; 2]; 2];

/// Left action matrices of `1, e^{-w}, H, e^{-w} H` on `H~ x_mu`.
#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub basis: Vec<String>,
    pub matrices: Vec<(String, [[String; 2]; 2])>,
    pub determinant: String,
    pub determinant_is_unit: bool,
    /// Rank of the four matrices over the fraction field of `R(G)`.
    pub image_rank: usize,
    pub finite_shadow_rank: usize,
    pub free_rank: usize,
}

pub struct Sl2Bimodule {
    aff: AffineHeckeAlgebra<LaurentScalar>,
    x_mu: AffineHeckeElement,
}

impl Sl2Bimodule {
    pub fn new() -> Result<Self> {
        let g = WeylGroup::new(Arc::new(CartanDatum::abstract_type(FiniteType::A, 1)?))?;
        let finite = HeckeAlgebra::generic(g);
        let x_mu = finite.x_gamma(Subset::full(1));
        let aff = AffineHeckeAlgebra::new(finite)?;
        let x_mu = aff.embed_finite(&x_mu);
        Ok(Sl2Bimodule { aff, x_mu })
    }

    pub fn algebra(&self) -> &AffineHeckeAlgebra<LaurentScalar> {
        &self.aff
    }

    pub fn e(&self, k: i64) -> AffineHeckeElement {
        self.aff.e(Weight(vec![k]))
    }

    pub fn s(&self) -> AffineHeckeElement {
        self.aff.h(self.aff.group().simple(0))
    }

    /// `f x_mu` for `f ∈ R(T)`.
    pub fn times_x(&self, f: &LatticeElement) -> AffineHeckeElement {
        let f = f.map_keys(|l| (self.aff.group().identity(), l.clone()));
        self.aff.mul(&f, &self.x_mu)
    }

    /// Recovers `f` from `a = f x_mu`; the `H e^{s lambda}` terms of `a` carry `f_lambda`.
    pub fn coordinate(&self, a: &AffineHeckeElement) -> Result<LatticeElement> {
        let g = self.aff.group();
        let s = g.simple(0);
        let f: LatticeElement = a
            .iter()
            .filter(|((w, _), _)| *w == s)
            .map(|((_, l), c)| (g.datum().reflect(l, 0), c.clone()))
            .collect();
        if &self.times_x(&f) != a {
            return Err(Error::NotInParabolicModule { slot: 0, reason: "not of the form f x_mu".into() });
        }
        Ok(f)
    }

    /// Matrix of left multiplication by `h` in the basis `x_mu, e^{-w} x_mu`.
    pub fn matrix(&self, h: &AffineHeckeElement) -> Result<Matrix2> {
        let mut cols = Vec::new();
        for k in [0, -1] {
            let image = self.aff.mul(h, &self.times_x(&LatticeElement::basis(Weight(vec![k]))));
            cols.push(decompose(&self.coordinate(&image)?));
        }
        let [(a, b), (c, d)] = [cols[0].clone(), cols[1].clone()];
        Ok([[a, c], [b, d]])
    }

    pub fn remark_matrices(&self) -> Result<Vec<(String, Matrix2)>> {
        let em = self.e(-1);
        let gens = [
            ("1", self.e(0)),
            ("e^{-w}", em.clone()),
            ("H", self.s()),
            ("e^{-w} H", self.aff.mul(&em, &self.s())),
        ];
        gens.into_iter().map(|(n, h)| Ok((n.to_string(), self.matrix(&h)?))).collect()
    }
}

/// `f = A(z) + B(z) e^{-w}` using `X^n = z X^{n-1} - X^{n-2}`.
pub fn decompose(f: &LatticeElement) -> (ZPoly, ZPoly) {
    let (mut a, mut b) = (ZPoly::zero(), ZPoly::zero());
    for (l, c) in f {
        let (pa, pb) = power(l.0[0]);
        let c = ZPoly::constant(c.clone());
        a = a + c.clone() * pa;
        b = b + c * pb;
    }
    (a, b)
}

fn power(n: i64) -> (ZPoly, ZPoly) {
    let z = ZPoly::z;
    let mut prev = (ZPoly::zero(), ZPoly::one());
    let mut cur = (ZPoly::one(), ZPoly::zero());
    if n >= 0 {
        for _ in 0..n {
            let next = (z() * cur.0.clone() - prev.0.clone(), z() * cur.1.clone() - prev.1.clone());
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    } else {
        // walk down from (X^0, X^{-1})
        let (mut hi, mut lo) = (cur, prev);
        for _ in 1..-n {
            let next = (z() * lo.0.clone() - hi.0.clone(), z() * lo.1.clone() - hi.1.clone());
            hi = std::mem::replace(&mut lo, next);
        }
        lo
    }
}

/// Leibniz expansion; fine for the 4x4 case.
pub fn determinant(m: &[Vec<ZPoly>]) -> ZPoly {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = ZPoly::zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let term = (0..n).fold(ZPoly::one(), |acc, i| acc * m[i][p[i]].clone());
        total = if inversions % 2 == 0 { total.clone() + term } else { total.clone() - term };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Lower bound for the rank, exact unless the sample point is special.
fn sampled_rank(rows: &[Vec<ZPoly>]) -> usize {
    let (q, z) = (BigRational::new(7.into(), 3.into()), BigRational::new(11.into(), 5.into()));
    crate::linalg::rank(&rows.iter().map(|r| r.iter().map(|p| p.eval(&q, &z)).collect()).collect())
}

/// Flattens the four action matrices into the rows of a 4x4 matrix over `R(G)`;
/// they span `Mat_2(R(G))` only if its determinant is a unit.
pub fn remark_report() -> Result<RemarkReport> {
    let b = Sl2Bimodule::new()?;
    let mats = b.remark_matrices()?;
    let rows: Vec<Vec<ZPoly>> =
        mats.iter().map(|(_, m)| vec![m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone()]).collect();
    let det = determinant(&rows);
    let g = b.aff.group().clone();
    let table = OrbitTable::from_subsets(g.clone(), &[Subset::empty(), Subset::full(1)]);
    let shadow = table.double_coset_reps(0, 1).len();
    let show = |m: &Matrix2| {
        [[m[0][0].to_string(), m[0][1].to_string()], [m[1][0].to_string(), m[1][1].to_string()]]
    };
    Ok(RemarkReport {
        basis: vec!["x_mu".into(), "e^{-w} x_mu".into()],
        matrices: mats.iter().map(|(n, m)| (n.clone(), show(m))).collect(),
        determinant: det.to_string(),
        determinant_is_unit: det.is_unit(),
        image_rank: if det.is_zero() { sampled_rank(&rows) } else { rows.len() },
        finite_shadow_rank: shadow,
        free_rank: shadow * g.order(),
    })
}
