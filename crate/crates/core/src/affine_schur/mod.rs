//! Affine parabolic Schur algebras `End_{H~}(⊕ x_gamma H~)`.
//!
//! Endomorphisms are described by the images `a_nu` of the generators
//! `x_nu`; an image is admissible exactly when `a_nu H_i = -q a_nu` for
//! every `i ∈ J_nu`.

pub mod sl2;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{
    specialize, AffineHeckeAlgebra, AffineHeckeElement, HeckeAlgebra, LatticeElement, LaurentScalar, LinComb,
    Specialization,
};
use crate::cartan::{weyl_orbit, OrbitTable, Subset, Weight, WeylElement, WeylGroup};
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::schur::{FockElement, SchurAlgebra, Xi};

/// `sum c x_gamma H_w e^lambda`, keyed by `(gamma, w, lambda)`.
pub type AffineFockElement = LinComb<(usize, WeylElement, Weight), LaurentScalar>;

/// Order in which weight blocks are eliminated by [`AffineSchur::affine_peel_ordered`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightOrder {
    Ascending,
    Descending,
}

/// A validated endomorphism, stored by the images of the `x_nu`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSchurElement {
    pub images: BTreeMap<usize, AffineFockElement>,
}

pub struct AffineSchur {
    aff: AffineHeckeAlgebra<LaurentScalar>,
    finite: SchurAlgebra<LaurentScalar>,
}

impl AffineSchur {
    pub fn new(table: Arc<OrbitTable>) -> Result<Self> {
        let g = table.group().clone();
        let aff = AffineHeckeAlgebra::new(HeckeAlgebra::generic(g.clone()))?;
        let finite = SchurAlgebra::new(HeckeAlgebra::generic(g), table)?;
        Ok(AffineSchur { aff, finite })
    }

    pub fn algebra(&self) -> &AffineHeckeAlgebra<LaurentScalar> {
        &self.aff
    }

    pub fn finite(&self) -> &SchurAlgebra<LaurentScalar> {
        &self.finite
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        self.aff.group()
    }

    pub fn table(&self) -> &Arc<OrbitTable> {
        self.finite.table()
    }

    fn zero_weight(&self) -> Weight {
        Weight::zero(self.aff.lattice_rank())
    }

    /// Lifts a finite module element with all weights zero.
    pub fn lift(&self, f: &FockElement) -> AffineFockElement {
        let z = self.zero_weight();
        f.map_keys(|&(g, w)| (g, w, z.clone()))
    }

    /// `f H_i`.
    pub fn act_gen(&self, f: &AffineFockElement, i: usize) -> AffineFockElement {
        let datum = self.group().datum().clone();
        let qd = self.aff.finite().q_diff();
        let mut out = AffineFockElement::zero();
        for ((gamma, w, lambda), c) in f {
            let s_lambda = datum.reflect(lambda, i);
            let moved = self.finite.fock_act_gen(&FockElement::term((*gamma, *w), c.clone()), i);
            for (&(g2, w2), c2) in &moved {
                out.add_term((g2, w2, s_lambda.clone()), c2.clone());
            }
            let cq = c.clone() * qd.clone();
            for (mu, t) in &self.aff.theta(lambda, i) {
                out.add_term((*gamma, *w, mu.clone()), t.clone() * cq.clone());
            }
        }
        out
    }

    pub fn act_word(&self, f: &AffineFockElement, word: &[u8]) -> AffineFockElement {
        word.iter().fold(f.clone(), |x, &i| self.act_gen(&x, i as usize))
    }

    /// `f e^mu`.
    pub fn act_lattice(&self, f: &AffineFockElement, mu: &Weight) -> AffineFockElement {
        f.map_keys(|(g, w, l)| (*g, *w, l.add(mu)))
    }

    /// `f h` for an affine Hecke element `h`.
    pub fn affine_fock_act(&self, f: &AffineFockElement, h: &AffineHeckeElement) -> AffineFockElement {
        let mut by_w: BTreeMap<WeylElement, Vec<(&Weight, &LaurentScalar)>> = BTreeMap::new();
        for ((w, mu), c) in h {
            by_w.entry(*w).or_default().push((mu, c));
        }
        let mut out = AffineFockElement::zero();
        for (w, terms) in by_w {
            let fw = self.act_word(f, self.group().word(w));
            for (mu, c) in terms {
                out.add_scaled(&self.act_lattice(&fw, mu), c);
            }
        }
        out
    }

    pub fn affine_embed(&self, f: &AffineFockElement) -> AffineHeckeElement {
        let mut out = AffineHeckeElement::zero();
        for ((gamma, w, lambda), c) in f {
            for (v, d) in &self.finite.embed_basis(*gamma, *w) {
                out.add_term((*v, lambda.clone()), d.clone() * c.clone());
            }
        }
        out
    }

    pub fn affine_peel(&self, gamma: usize, a: &AffineHeckeElement) -> Result<AffineFockElement> {
        self.affine_peel_ordered(gamma, a, WeightOrder::Descending)
    }

    /// Peels each weight block `h_lambda` of `a = sum h_lambda e^lambda`;
    /// the blocks are independent because `{H_w e^lambda}` is a basis.
    pub fn affine_peel_ordered(
        &self,
        gamma: usize,
        a: &AffineHeckeElement,
        order: WeightOrder,
    ) -> Result<AffineFockElement> {
        let mut blocks: Vec<(Weight, _)> = self.aff.split_by_weight(a).into_iter().collect();
        if order == WeightOrder::Ascending {
            blocks.reverse();
        }
        let mut out = AffineFockElement::zero();
        for (lambda, h) in blocks {
            for (&(g, w), c) in &self.finite.peel(gamma, &h)? {
                out.add_term((g, w, lambda.clone()), c.clone());
            }
        }
        Ok(out)
    }

    /// Validates the eigencondition on every image.
    pub fn make_endo(&self, images: BTreeMap<usize, AffineFockElement>) -> Result<AffineSchurElement> {
        let mq = -LaurentScalar::q();
        for (&nu, a) in &images {
            if nu >= self.table().len() {
                return Err(Error::OutOfRange(format!("slot {nu}")));
            }
            for i in self.table().get(nu).j.iter() {
                if self.act_gen(a, i) != a.scaled(&mq) {
                    return Err(Error::EigenconditionFails { slot: nu, index: i + 1 });
                }
            }
        }
        let images = images.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        Ok(AffineSchurElement { images })
    }

    /// `phi(f)`.
    pub fn apply(&self, phi: &AffineSchurElement, f: &AffineFockElement) -> AffineFockElement {
        let mut out = AffineFockElement::zero();
        for ((gamma, w, lambda), c) in f {
            if let Some(img) = phi.images.get(gamma) {
                let moved = self.act_lattice(&self.act_word(img, self.group().word(*w)), lambda);
                out.add_scaled(&moved, c);
            }
        }
        out
    }

    /// `a ∘ b`.
    pub fn endo_compose(&self, a: &AffineSchurElement, b: &AffineSchurElement) -> AffineSchurElement {
        let images = b
            .images
            .iter()
            .map(|(&nu, f)| (nu, self.apply(a, f)))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        AffineSchurElement { images }
    }

    pub fn identity(&self) -> AffineSchurElement {
        let g = self.group();
        let z = self.zero_weight();
        AffineSchurElement {
            images: (0..self.table().len())
                .map(|k| (k, AffineFockElement::basis((k, g.identity(), z.clone()))))
                .collect(),
        }
    }

    /// Sum over the `W_J`-orbit of `mu`; it commutes with `H_i` for `i ∈ J`.
    pub fn orbit_sum(&self, j: Subset, mu: &Weight) -> LatticeElement {
        let g = self.group();
        g.parabolic(j).into_iter().map(|w| g.act(w, mu)).collect::<BTreeSet<_>>().into_iter().map(|l| (l, LaurentScalar::from_int(1))).collect()
    }

    pub fn act_lattice_element(&self, f: &AffineFockElement, z: &LatticeElement) -> AffineFockElement {
        let mut out = AffineFockElement::zero();
        for (mu, c) in z {
            out.add_scaled(&self.act_lattice(f, mu), c);
        }
        out
    }

    /// `x_nu -> phi^w_{gamma nu}(x_nu) m_mu` with `m_mu` the `W_nu`-orbit sum.
    pub fn generator(&self, xi: Xi, mu: &Weight) -> Result<AffineSchurElement> {
        let m = self.orbit_sum(self.table().get(xi.nu).j, mu);
        let img = self.act_lattice_element(&self.lift(self.finite.phi_image(xi)), &m);
        self.make_endo(BTreeMap::from([(xi.nu, img)]))
    }

    /// Right multiplication by a W-invariant `z`, acting as `x_nu -> x_nu z`.
    pub fn central(&self, z: &LatticeElement) -> Result<AffineSchurElement> {
        let g = self.group();
        let images = (0..self.table().len())
            .map(|k| {
                let x = AffineFockElement::basis((k, g.identity(), self.zero_weight()));
                (k, self.act_lattice_element(&x, z))
            })
            .collect();
        self.make_endo(images)
    }

    /// The whole W-orbit sum of `mu`.
    pub fn invariant_sum(&self, mu: &Weight) -> Result<LatticeElement> {
        let o = weyl_orbit(self.group().datum(), mu)?;
        Ok(o.weights.into_iter().map(|l| (l, LaurentScalar::from_int(1))).collect())
    }
}

/// All weights with every coordinate in `-k..=k`.
pub fn weight_window(n: usize, k: i64) -> Vec<Weight> {
    let mut out = vec![Weight(Vec::new())];
    for _ in 0..n {
        out = out.into_iter().flat_map(|w| (-k..=k).map(move |c| {
            let mut v = w.0.clone();
            v.push(c);
            Weight(v)
        })).collect();
    }
    out
}

/// Result of a center or freeness computation.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Certificate {
    pub check: String,
    pub window: String,
    pub result: bool,
    pub witnesses: Vec<String>,
}

/// Checks that `sum_{lambda ∈ W mu} e^lambda` commutes with every generator
/// `phi^w_{gamma nu} m_lambda` with `lambda` in the window.
pub fn center_check(schur: &AffineSchur, mu: &Weight, k: i64) -> Result<Certificate> {
    let datum = schur.group().datum().clone();
    datum.check_weight(mu)?;
    if (0..datum.rank()).any(|i| datum.raw_pairing(mu, i) < 0) {
        return Err(Error::OutOfRange(format!("{} is not dominant", datum.format_weight(mu))));
    }
    let z = schur.invariant_sum(mu)?;
    let zc = schur.central(&z)?;
    let mut witnesses = Vec::new();
    let mut ok = true;
    let mut checked = 0usize;
    for &xi in schur.finite().basis() {
        let mut seen = BTreeSet::new();
        for lambda in weight_window(datum.lattice_rank(), k) {
            let m = schur.orbit_sum(schur.table().get(xi.nu).j, &lambda);
            if !seen.insert(m.keys().cloned().collect::<Vec<_>>()) {
                continue;
            }
            let gen = schur.generator(xi, &lambda)?;
            checked += 1;
            if schur.endo_compose(&zc, &gen) != schur.endo_compose(&gen, &zc) {
                ok = false;
                let l = schur.finite().label(xi);
                witnesses.push(format!("({}|{}|{}) * m{}", l.gamma, l.w, l.nu, lambda));
            }
        }
    }
    if ok {
        witnesses.push(format!("{checked} generators commute with the orbit sum of {}", datum.format_weight(mu)));
    }
    Ok(Certificate {
        check: "center".into(),
        window: format!("|lambda_i| <= {k}"),
        result: ok,
        witnesses,
    })
}

/// Certifies that `{x_gamma H_w e^lambda : w ∈ D_gamma, lambda ∈ window}` is
/// linearly independent: full rank after specializing `q` to `q0` implies
/// independence over `Z[q, q^{-1}]`.
pub fn freeness_probe(schur: &AffineSchur, gamma: usize, k: i64, q0: &BigRational) -> Result<Certificate> {
    if gamma >= schur.table().len() {
        return Err(Error::OutOfRange(format!("slot {gamma}")));
    }
    let at = Specialization::Value(q0.clone());
    let window = weight_window(schur.group().datum().lattice_rank(), k);
    let reps = schur.table().get(gamma).min_reps.clone();
    let vectors: Vec<LinComb<(WeylElement, Weight), BigRational>> = reps
        .iter()
        .flat_map(|&w| window.iter().map(move |l| (w, l.clone())))
        .map(|(w, l)| {
            let f = AffineFockElement::basis((gamma, w, l));
            specialize(&schur.affine_embed(&f), &at)
        })
        .collect::<Result<_>>()?;
    let columns: Vec<(WeylElement, Weight)> =
        vectors.iter().flat_map(|v| v.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<_, _> = columns.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
    let mut rows = RowSpace::new(columns.len());
    for v in &vectors {
        let mut row = vec![BigRational::from_integer(0.into()); columns.len()];
        for (key, c) in v {
            row[index[key]] = c.clone();
        }
        rows.insert(row);
    }
    let expected = vectors.len();
    Ok(Certificate {
        check: "freeness".into(),
        window: format!("|lambda_i| <= {k}, q = {q0}"),
        result: rows.dim() == expected,
        witnesses: vec![format!("rank {} of {} vectors", rows.dim(), expected)],
    })
}

#[cfg(test)]
mod tests;
