use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentScalar;
use super::lincomb::{LinComb, Scalar};
use crate::cartan::{Subset, Weight, WeylElement, WeylGroup};
use crate::error::{Error, Result};

/// `sum c_w H_w`.
pub type HeckeElement<R = LaurentScalar> = LinComb<WeylElement, R>;
/// `sum c_{w,lambda} H_w e^lambda`, Bernstein normal form with the lattice
/// part on the right.
pub type AffineHeckeElement<R = LaurentScalar> = LinComb<(WeylElement, Weight), R>;
/// `sum c_lambda e^lambda` in the group ring of the weight lattice.
pub type LatticeElement<R = LaurentScalar> = LinComb<Weight, R>;

/// Where to evaluate `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// `q = 1`, sending `H_w` to `w`.
    Classical,
    Value(BigRational),
}

impl Specialization {
    pub fn value(&self) -> BigRational {
        match self {
            Specialization::Classical => BigRational::one(),
            Specialization::Value(v) => v.clone(),
        }
    }

    pub fn checked(&self) -> Result<BigRational> {
        let v = self.value();
        if v.is_zero() {
            return Err(Error::SingularSpecialization("0".into()));
        }
        Ok(v)
    }
}

/// The Iwahori-Hecke algebra of a Weyl group with parameter `q`, normalized
/// by `(H_i - q^{-1})(H_i + q) = 0`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra<R> {
    group: Arc<WeylGroup>,
    q: R,
    q_inv: R,
}

impl HeckeAlgebra<LaurentScalar> {
    /// Generic parameter over `Z[q, q^{-1}]`.
    pub fn generic(group: Arc<WeylGroup>) -> Self {
        HeckeAlgebra { group, q: LaurentScalar::q(), q_inv: LaurentScalar::q_pow(-1) }
    }
}

impl HeckeAlgebra<BigRational> {
    /// Parameter specialized to a nonzero rational.
    pub fn specialized(group: Arc<WeylGroup>, at: &Specialization) -> Result<Self> {
        let q0 = at.checked()?;
        Ok(HeckeAlgebra { group, q_inv: q0.recip(), q: q0 })
    }
}

impl<R: Scalar> HeckeAlgebra<R> {
    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn q(&self) -> &R {
        &self.q
    }

    /// `q^{-1} - q`.
    pub fn q_diff(&self) -> R {
        self.q_inv.clone() - self.q.clone()
    }

    /// `(-q)^k`.
    pub fn neg_q_pow(&self, k: i64) -> R {
        let base = if k >= 0 { -self.q.clone() } else { -self.q_inv.clone() };
        (0..k.unsigned_abs()).fold(R::one(), |acc, _| acc * base.clone())
    }

    pub fn one(&self) -> HeckeElement<R> {
        HeckeElement::basis(self.group.identity())
    }

    pub fn h(&self, w: WeylElement) -> HeckeElement<R> {
        HeckeElement::basis(w)
    }

    pub fn generator(&self, i: usize) -> HeckeElement<R> {
        self.h(self.group.simple(i))
    }

    /// `a H_i`, using `H_w H_i = H_{ws_i}` when `ws_i > w` and
    /// `H_{ws_i} + (q^{-1} - q) H_w` otherwise.
    pub fn mul_gen(&self, a: &HeckeElement<R>, i: usize) -> HeckeElement<R> {
        let g = &self.group;
        let qd = self.q_diff();
        let mut out = HeckeElement::zero();
        for (&w, c) in a {
            let v = g.rmul(w, i);
            out.add_term(v, c.clone());
            if g.len(v) < g.len(w) {
                out.add_term(w, c.clone() * qd.clone());
            }
        }
        out
    }

    pub fn mul_word(&self, a: &HeckeElement<R>, word: &[u8]) -> HeckeElement<R> {
        word.iter().fold(a.clone(), |x, &i| self.mul_gen(&x, i as usize))
    }

    pub fn mul(&self, a: &HeckeElement<R>, b: &HeckeElement<R>) -> HeckeElement<R> {
        let mut out = HeckeElement::zero();
        for (&v, c) in b {
            out.add_scaled(&self.mul_word(a, self.group.word(v)), c);
        }
        out
    }

    /// Left multiplication by `H_i`.
    pub fn gen_mul(&self, i: usize, a: &HeckeElement<R>) -> HeckeElement<R> {
        let g = &self.group;
        let qd = self.q_diff();
        let mut out = HeckeElement::zero();
        for (&w, c) in a {
            let v = g.lmul(i, w);
            out.add_term(v, c.clone());
            if g.len(v) < g.len(w) {
                out.add_term(w, c.clone() * qd.clone());
            }
        }
        out
    }

    /// `x_J = sum_{w in W_J} (-q)^{l(w) - l(theta_J)} H_w`.
    pub fn x_gamma(&self, j: Subset) -> HeckeElement<R> {
        let g = &self.group;
        let top = g.len(g.longest_in(j)) as i64;
        g.parabolic(j).into_iter().map(|w| (w, self.neg_q_pow(g.len(w) as i64 - top))).collect()
    }

    /// The anti-involution `H_w -> H_{w^{-1}}`.
    pub fn flip(&self, a: &HeckeElement<R>) -> HeckeElement<R> {
        a.map_keys(|&w| self.group.inverse(w))
    }
}

/// Evaluates every coefficient at `q0`.
pub fn specialize<K: Ord + Clone>(
    a: &LinComb<K, LaurentScalar>,
    at: &Specialization,
) -> Result<LinComb<K, BigRational>> {
    let q0 = at.checked()?;
    Ok(a.map_coeffs(|c| c.eval(&q0)))
}

/// The affine Hecke algebra `H ⊗ Z[X]` with the Bernstein relation
/// `e^lambda H_i - H_i e^{s_i lambda} = (q^{-1} - q)(e^lambda - e^{s_i lambda})/(1 - e^{-alpha_i})`.
#[derive(Clone, Debug)]
pub struct AffineHeckeAlgebra<R> {
    finite: HeckeAlgebra<R>,
}

impl<R: Scalar> AffineHeckeAlgebra<R> {
    /// The weight lattice must be the coordinate lattice, so data with
    /// doubled coordinates are rejected.
    pub fn new(finite: HeckeAlgebra<R>) -> Result<Self> {
        if finite.group.datum().is_doubled() {
            return Err(Error::UnsupportedType("affine algebra over half-integer coordinates".into()));
        }
        Ok(AffineHeckeAlgebra { finite })
    }

    pub fn finite(&self) -> &HeckeAlgebra<R> {
        &self.finite
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.finite.group
    }

    pub fn lattice_rank(&self) -> usize {
        self.group().datum().lattice_rank()
    }

    pub fn e(&self, lambda: Weight) -> AffineHeckeElement<R> {
        AffineHeckeElement::basis((self.group().identity(), lambda))
    }

    pub fn h(&self, w: WeylElement) -> AffineHeckeElement<R> {
        AffineHeckeElement::basis((w, Weight::zero(self.lattice_rank())))
    }

    pub fn embed_finite(&self, a: &HeckeElement<R>) -> AffineHeckeElement<R> {
        let z = Weight::zero(self.lattice_rank());
        a.map_keys(|&w| (w, z.clone()))
    }

    /// `(e^lambda - e^{s_i lambda}) / (1 - e^{-alpha_i})`.
    pub fn theta(&self, lambda: &Weight, i: usize) -> LatticeElement<R> {
        let datum = self.group().datum();
        let n = datum.raw_pairing(lambda, i);
        let alpha = datum.simple_root(i);
        let mut out = LatticeElement::zero();
        if n > 0 {
            for k in 0..n {
                out.add_term(lambda.sub(&alpha.scaled(k)), R::one());
            }
        } else {
            for k in 1..=-n {
                out.add_term(lambda.add(&alpha.scaled(k)), -R::one());
            }
        }
        out
    }

    /// `e^lambda H_i` in normal form.
    pub fn bernstein_cross(&self, lambda: &Weight, i: usize) -> AffineHeckeElement<R> {
        let g = self.group();
        let datum = g.datum();
        let mut out = AffineHeckeElement::term((g.simple(i), datum.reflect(lambda, i)), R::one());
        let qd = self.finite.q_diff();
        for (mu, c) in &self.theta(lambda, i) {
            out.add_term((g.identity(), mu.clone()), c.clone() * qd.clone());
        }
        out
    }

    /// `a H_i`.
    pub fn mul_gen(&self, a: &AffineHeckeElement<R>, i: usize) -> AffineHeckeElement<R> {
        let g = self.group();
        let datum = g.datum();
        let qd = self.finite.q_diff();
        let mut out = AffineHeckeElement::zero();
        for ((w, lambda), c) in a {
            let s_lambda = datum.reflect(lambda, i);
            let v = g.rmul(*w, i);
            out.add_term((v, s_lambda.clone()), c.clone());
            if g.len(v) < g.len(*w) {
                out.add_term((*w, s_lambda), c.clone() * qd.clone());
            }
            let cq = c.clone() * qd.clone();
            for (mu, t) in &self.theta(lambda, i) {
                out.add_term((*w, mu.clone()), t.clone() * cq.clone());
            }
        }
        out
    }

    pub fn mul_word(&self, a: &AffineHeckeElement<R>, word: &[u8]) -> AffineHeckeElement<R> {
        word.iter().fold(a.clone(), |x, &i| self.mul_gen(&x, i as usize))
    }

    /// `a e^mu`.
    pub fn mul_lattice(&self, a: &AffineHeckeElement<R>, mu: &Weight) -> AffineHeckeElement<R> {
        a.map_keys(|(w, l)| (*w, l.add(mu)))
    }

    pub fn mul(&self, a: &AffineHeckeElement<R>, b: &AffineHeckeElement<R>) -> AffineHeckeElement<R> {
        let mut by_w: BTreeMap<WeylElement, Vec<(&Weight, &R)>> = BTreeMap::new();
        for ((w, mu), c) in b {
            by_w.entry(*w).or_default().push((mu, c));
        }
        let mut out = AffineHeckeElement::zero();
        for (w, terms) in by_w {
            let aw = self.mul_word(a, self.group().word(w));
            for (mu, c) in terms {
                out.add_scaled(&self.mul_lattice(&aw, mu), c);
            }
        }
        out
    }

    /// Splits `a = sum_lambda h_lambda e^lambda` into its finite parts.
    pub fn split_by_weight(&self, a: &AffineHeckeElement<R>) -> BTreeMap<Weight, HeckeElement<R>> {
        let mut out: BTreeMap<Weight, HeckeElement<R>> = BTreeMap::new();
        for ((w, l), c) in a {
            out.entry(l.clone()).or_default().add_term(*w, c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanDatum, FiniteType};

    fn algebra(ty: FiniteType, r: usize) -> HeckeAlgebra<LaurentScalar> {
        HeckeAlgebra::generic(WeylGroup::new(Arc::new(CartanDatum::abstract_type(ty, r).unwrap())).unwrap())
    }

    fn braid_order(a: &[Vec<i64>], i: usize, j: usize) -> usize {
        match a[i][j] * a[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            _ => 6,
        }
    }

    #[test]
    fn quadratic_and_braid_relations() {
        for (ty, r) in [(FiniteType::A, 1), (FiniteType::A, 3), (FiniteType::B, 3), (FiniteType::G, 2)] {
            let h = algebra(ty, r);
            let a = h.group().datum().cartan_matrix().to_vec();
            for i in 0..r {
                let hi = h.generator(i);
                let l = hi.clone() - h.one().scaled(&LaurentScalar::q_pow(-1));
                let rr = hi.clone() + h.one().scaled(&LaurentScalar::q());
                assert!(h.mul(&l, &rr).is_zero());
                for j in 0..r {
                    if i == j {
                        continue;
                    }
                    let m = braid_order(&a, i, j);
                    let alt = |s: usize, t: usize| {
                        (0..m).fold(h.one(), |x, k| h.mul_gen(&x, if k % 2 == 0 { s } else { t }))
                    };
                    assert_eq!(alt(i, j), alt(j, i));
                }
            }
        }
    }

    #[test]
    fn symmetrizer_is_an_eigenvector() {
        let h = algebra(FiniteType::B, 3);
        let q = LaurentScalar::q();
        for mask in 0..8u32 {
            let j = Subset(mask);
            let x = h.x_gamma(j);
            for i in j.iter() {
                assert_eq!(h.mul_gen(&x, i), x.scaled(&-q.clone()));
                assert_eq!(h.gen_mul(i, &x), x.scaled(&-q.clone()));
            }
            let c = specialize(&x, &Specialization::Classical).unwrap();
            let g = h.group();
            let top = g.len(g.longest_in(j)) as i64;
            for (w, v) in &c {
                let sign = if (g.len(*w) as i64 - top) % 2 == 0 { 1 } else { -1 };
                assert_eq!(*v, BigRational::from_integer(sign.into()));
            }
        }
    }

    #[test]
    fn specialization_rejects_zero() {
        let h = algebra(FiniteType::A, 1);
        let zero = Specialization::Value(BigRational::zero());
        assert!(specialize(&h.one(), &zero).is_err());
        assert!(HeckeAlgebra::specialized(h.group().clone(), &zero).is_err());
    }

    #[test]
    fn bernstein_cross_matches_division() {
        let g = WeylGroup::new(Arc::new(CartanDatum::abstract_type(FiniteType::B, 2).unwrap())).unwrap();
        let aff = AffineHeckeAlgebra::new(HeckeAlgebra::generic(g.clone())).unwrap();
        let datum = g.datum().clone();
        for a in -3..=3 {
            for b in -3..=3 {
                let l = Weight(vec![a, b]);
                for i in 0..2 {
                    // theta * (1 - e^{-alpha}) = e^lambda - e^{s lambda}
                    let th = aff.theta(&l, i);
                    let alpha = datum.simple_root(i);
                    let mut prod = LatticeElement::<LaurentScalar>::zero();
                    for (m, c) in &th {
                        prod.add_term(m.clone(), c.clone());
                        prod.add_term(m.sub(&alpha), -c.clone());
                    }
                    let mut expect = LatticeElement::zero();
                    expect.add_term(l.clone(), LaurentScalar::one());
                    expect.add_term(datum.reflect(&l, i), -LaurentScalar::one());
                    assert_eq!(prod, expect);
                    let lhs = aff.mul(&aff.e(l.clone()), &aff.h(g.simple(i)));
                    assert_eq!(lhs, aff.bernstein_cross(&l, i));
                }
            }
        }
    }

    #[test]
    fn sl2_cross_relation() {
        let g = WeylGroup::new(Arc::new(CartanDatum::abstract_type(FiniteType::A, 1).unwrap())).unwrap();
        let aff = AffineHeckeAlgebra::new(HeckeAlgebra::generic(g.clone())).unwrap();
        let x = aff.bernstein_cross(&Weight(vec![1]), 0);
        let mut expect = AffineHeckeElement::basis((g.simple(0), Weight(vec![-1])));
        expect.add_term((g.identity(), Weight(vec![1])), LaurentScalar::q_pow(-1) - LaurentScalar::q());
        assert_eq!(x, expect);
    }

    #[test]
    fn affine_rejects_doubled_data() {
        let g = WeylGroup::new(Arc::new(CartanDatum::so(2, true).unwrap())).unwrap();
        assert!(AffineHeckeAlgebra::new(HeckeAlgebra::generic(g)).is_err());
    }
}
