//! Finite parabolic Schur algebras `End_H(⊕_gamma x_gamma H)`.
//!
//! A module element `sum c x_gamma H_w` with `w ∈ D_gamma` is a
//! [`FockElement`] keyed by `(slot, w)`. An endomorphism is stored both by
//! its coordinates in the basis `phi^w_{gamma nu}` and by the images of the
//! generators `x_nu`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{HeckeAlgebra, HeckeElement, LaurentScalar, LinComb, Scalar};
use crate::cartan::{longest_elements, OrbitTable, WeylElement, WeylGroup};
use crate::error::{Error, Result};

/// `sum c x_gamma H_w`, keyed by `(gamma, w)` with `w ∈ D_gamma`.
pub type FockElement<R = LaurentScalar> = LinComb<(usize, WeylElement), R>;

/// Basis label `(gamma, w, nu)` with `w ∈ D_{gamma nu}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Xi {
    pub gamma: usize,
    pub nu: usize,
    pub w: WeylElement,
}

impl Xi {
    pub fn new(gamma: usize, w: WeylElement, nu: usize) -> Self {
        Xi { gamma, nu, w }
    }
}

/// An endomorphism with its coordinates and its images of each `x_nu`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurElement<R = LaurentScalar> {
    pub coords: LinComb<Xi, R>,
    pub images: BTreeMap<usize, FockElement<R>>,
}

/// The algebra `S = End_H(⊕ x_gamma H)` over the slots of an orbit table.
#[derive(Debug)]
pub struct SchurAlgebra<R> {
    hecke: HeckeAlgebra<R>,
    table: Arc<OrbitTable>,
    xs: Vec<HeckeElement<R>>,
    basis: Vec<Xi>,
    /// Leading Fock key `theta_gamma w+` of each basis image.
    tops: BTreeMap<Xi, WeylElement>,
    images: BTreeMap<Xi, FockElement<R>>,
}

impl<R: Scalar> SchurAlgebra<R> {
    pub fn new(hecke: HeckeAlgebra<R>, table: Arc<OrbitTable>) -> Result<Self> {
        let g = hecke.group().clone();
        if table.group().datum() != g.datum() {
            return Err(Error::IncompatibleBlocks("orbit table over a different datum".into()));
        }
        let xs = table.orbits().iter().map(|o| hecke.x_gamma(o.j)).collect();
        let mut basis = Vec::new();
        for gamma in 0..table.len() {
            for nu in 0..table.len() {
                basis.extend(table.double_coset_reps(gamma, nu).into_iter().map(|w| Xi::new(gamma, w, nu)));
            }
        }
        let mut alg = SchurAlgebra { hecke, table, xs, basis, tops: BTreeMap::new(), images: BTreeMap::new() };
        let computed: Vec<(Xi, WeylElement, FockElement<R>)> = alg
            .basis
            .par_iter()
            .map(|&xi| {
                let (top, img) = alg.compute_phi_image(xi)?;
                Ok((xi, top, img))
            })
            .collect::<Result<_>>()?;
        for (xi, top, img) in computed {
            alg.tops.insert(xi, top);
            alg.images.insert(xi, img);
        }
        Ok(alg)
    }

    pub fn hecke(&self) -> &HeckeAlgebra<R> {
        &self.hecke
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        self.hecke.group()
    }

    pub fn table(&self) -> &Arc<OrbitTable> {
        &self.table
    }

    pub fn x(&self, gamma: usize) -> &HeckeElement<R> {
        &self.xs[gamma]
    }

    /// The basis `Xi_f` in order `(gamma, nu, w)`.
    pub fn basis(&self) -> &[Xi] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn block(&self, gamma: usize, nu: usize) -> impl Iterator<Item = Xi> + '_ {
        self.basis.iter().copied().filter(move |x| x.gamma == gamma && x.nu == nu)
    }

    /// Leading Fock key of the image of `x_nu` under `phi^w_{gamma nu}`.
    pub fn top(&self, xi: Xi) -> WeylElement {
        self.tops[&xi]
    }

    /// `f H_i` by the three-case rule on `x_gamma H_w`.
    pub fn fock_act_gen(&self, f: &FockElement<R>, i: usize) -> FockElement<R> {
        let g = self.group();
        let qd = self.hecke.q_diff();
        let mq = -self.hecke.q().clone();
        let mut out = FockElement::zero();
        for (&(gamma, w), c) in f {
            let j = self.table.get(gamma).j;
            let v = g.rmul(w, i);
            if g.in_min_coset(j, v) {
                out.add_term((gamma, v), c.clone());
                if g.len(v) < g.len(w) {
                    out.add_term((gamma, w), c.clone() * qd.clone());
                }
            } else {
                out.add_term((gamma, w), c.clone() * mq.clone());
            }
        }
        out
    }

    pub fn fock_act_word(&self, f: &FockElement<R>, word: &[u8]) -> FockElement<R> {
        word.iter().fold(f.clone(), |x, &i| self.fock_act_gen(&x, i as usize))
    }

    /// `f h` for a Hecke element `h`.
    pub fn fock_act(&self, f: &FockElement<R>, h: &HeckeElement<R>) -> FockElement<R> {
        let mut out = FockElement::zero();
        for (&v, c) in h {
            out.add_scaled(&self.fock_act_word(f, self.group().word(v)), c);
        }
        out
    }

    /// `x_gamma H_w` as an element of H.
    pub fn embed_basis(&self, gamma: usize, w: WeylElement) -> HeckeElement<R> {
        self.hecke.mul_word(&self.xs[gamma], self.group().word(w))
    }

    pub fn embed(&self, f: &FockElement<R>) -> HeckeElement<R> {
        let mut out = HeckeElement::zero();
        for (&(gamma, w), c) in f {
            out.add_scaled(&self.embed_basis(gamma, w), c);
        }
        out
    }

    /// Writes `h ∈ x_gamma H` as a Fock element by leading-term
    /// elimination; the top term of `x_gamma H_w` is `H_{theta_gamma w}`
    /// with coefficient one.
    pub fn peel(&self, gamma: usize, h: &HeckeElement<R>) -> Result<FockElement<R>> {
        let g = self.group();
        let o = self.table.get(gamma);
        let mut rest = h.clone();
        let mut out = FockElement::zero();
        loop {
            let last = rest.iter().next_back().map(|(&u, c)| (u, c.clone()));
            let Some((u, c)) = last else { break };
            let w = g.mul(o.theta, u);
            if !g.in_min_coset(o.j, w) || g.len(w) + g.len(o.theta) != g.len(u) {
                return Err(Error::NotInParabolicModule {
                    slot: gamma,
                    reason: format!("leading term {} is not the top of a coset", g.display(u)),
                });
            }
            rest.add_scaled(&self.embed_basis(gamma, w), &-c.clone());
            out.add_term((gamma, w), c);
        }
        Ok(out)
    }

    /// `sum_{w' ∈ W_gamma w W_nu} (-q)^{l(w') - l(w+)} H_{w'}`.
    pub fn double_coset_sum(&self, xi: Xi) -> (WeylElement, HeckeElement<R>) {
        let g = self.group();
        let (j, k) = (self.table.get(xi.gamma).j, self.table.get(xi.nu).j);
        let (_, top) = longest_elements(g, j, xi.w, k);
        let lt = g.len(top) as i64;
        let sum = g
            .double_coset(j, xi.w, k)
            .into_iter()
            .map(|v| (v, self.hecke.neg_q_pow(g.len(v) as i64 - lt)))
            .collect();
        (top, sum)
    }

    fn compute_phi_image(&self, xi: Xi) -> Result<(WeylElement, FockElement<R>)> {
        let g = self.group();
        let (top, sum) = self.double_coset_sum(xi);
        let img = self.peel(xi.gamma, &sum)?;
        let lead = g.mul(self.table.get(xi.gamma).theta, top);
        debug_assert_eq!(img.coeff(&(xi.gamma, lead)), R::one());
        // The image must also satisfy the eigencondition for x_nu.
        for i in self.table.get(xi.nu).j.iter() {
            if self.fock_act_gen(&img, i) != img.scaled(&-self.hecke.q().clone()) {
                return Err(Error::EigenconditionFails { slot: xi.nu, index: i + 1 });
            }
        }
        Ok((lead, img))
    }

    /// Image of `x_nu` under `phi^w_{gamma nu}`.
    pub fn phi_image(&self, xi: Xi) -> &FockElement<R> {
        &self.images[&xi]
    }

    pub fn element(&self, coords: LinComb<Xi, R>) -> SchurElement<R> {
        let mut images: BTreeMap<usize, FockElement<R>> = BTreeMap::new();
        for (xi, c) in &coords {
            images.entry(xi.nu).or_default().add_scaled(&self.images[xi], c);
        }
        images.retain(|_, f| !f.is_zero());
        SchurElement { coords, images }
    }

    pub fn basis_element(&self, xi: Xi) -> SchurElement<R> {
        self.element(LinComb::basis(xi))
    }

    pub fn identity(&self) -> SchurElement<R> {
        let g = self.group();
        self.element((0..self.table.len()).map(|k| (Xi::new(k, g.identity(), k), R::one())).collect())
    }

    /// `phi(f)` for a module element `f`.
    pub fn apply(&self, phi: &SchurElement<R>, f: &FockElement<R>) -> FockElement<R> {
        let mut out = FockElement::zero();
        for (&(nu, w), c) in f {
            if let Some(img) = phi.images.get(&nu) {
                out.add_scaled(&self.fock_act_word(img, self.group().word(w)), c);
            }
        }
        out
    }

    /// Coordinates of the endomorphism with the given images. Each image
    /// of `x_nu` is expanded block by block using the disjoint supports of
    /// the basis images.
    pub fn expand(&self, images: &BTreeMap<usize, FockElement<R>>) -> Result<LinComb<Xi, R>> {
        let mut coords = LinComb::zero();
        for (&nu, f) in images {
            let mut rest = f.clone();
            for gamma in 0..self.table.len() {
                for xi in self.block(gamma, nu) {
                    let c = rest.coeff(&(gamma, self.tops[&xi]));
                    if c.is_zero() {
                        continue;
                    }
                    rest.add_scaled(&self.images[&xi], &-c.clone());
                    coords.add_term(xi, c);
                }
            }
            if !rest.is_zero() {
                return Err(Error::Residue(format!("image of x_{nu} is not in the span of the basis")));
            }
        }
        Ok(coords)
    }

    /// Composition `a ∘ b`.
    pub fn mul(&self, a: &SchurElement<R>, b: &SchurElement<R>) -> Result<SchurElement<R>> {
        let images: BTreeMap<usize, FockElement<R>> =
            b.images.iter().map(|(&nu, f)| (nu, self.apply(a, f))).filter(|(_, f)| !f.is_zero()).collect();
        let coords = self.expand(&images)?;
        Ok(SchurElement { coords, images })
    }

    /// `phi^x ∘ phi^y`, defined when the source of `x` is the target of `y`.
    pub fn mul_basis(&self, x: Xi, y: Xi) -> Result<LinComb<Xi, R>> {
        if x.nu != y.gamma {
            return Err(Error::IncompatibleBlocks(format!(
                "source slot {} differs from target slot {}",
                x.nu, y.gamma
            )));
        }
        Ok(self.mul(&self.basis_element(x), &self.basis_element(y))?.coords)
    }

    /// The anti-automorphism `phi^w_{gamma nu} -> phi^{w^{-1}}_{nu gamma}`.
    pub fn transpose(&self, a: &SchurElement<R>) -> SchurElement<R> {
        let g = self.group();
        self.element(a.coords.map_keys(|x| Xi::new(x.nu, g.inverse(x.w), x.gamma)))
    }

    pub fn label(&self, xi: Xi) -> XiLabel {
        XiLabel {
            gamma: self.table.label(xi.gamma),
            w: self.group().display(xi.w),
            nu: self.table.label(xi.nu),
        }
    }
}

/// Printable basis label.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct XiLabel {
    pub gamma: String,
    pub w: String,
    pub nu: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConstTerm {
    pub xi: XiLabel,
    pub coef: String,
}

/// One nonzero-or-composable product in a structure-constant table.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConstEntry {
    pub left_xi: XiLabel,
    pub right_xi: XiLabel,
    pub result: Vec<ConstTerm>,
}

/// All products `phi^x ∘ phi^y` with composable blocks.
pub fn structure_constants(alg: &SchurAlgebra<LaurentScalar>) -> Result<Vec<ConstEntry>> {
    let pairs: Vec<(Xi, Xi)> = alg
        .basis()
        .iter()
        .flat_map(|&x| alg.basis().iter().filter(move |y| y.gamma == x.nu).map(move |&y| (x, y)))
        .collect();
    pairs
        .par_iter()
        .map(|&(x, y)| {
            let r = alg.mul_basis(x, y)?;
            Ok(ConstEntry {
                left_xi: alg.label(x),
                right_xi: alg.label(y),
                result: r.iter().map(|(z, c)| ConstTerm { xi: alg.label(*z), coef: c.to_string() }).collect(),
            })
        })
        .collect()
}

/// `|Xi_f|`.
pub fn dim_schur(table: &OrbitTable) -> usize {
    (0..table.len()).flat_map(|g| (0..table.len()).map(move |n| (g, n))).map(|(g, n)| table.double_coset_reps(g, n).len()).sum()
}

#[cfg(test)]
mod tests;
