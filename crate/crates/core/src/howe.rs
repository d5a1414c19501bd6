//! The bimodule `T_fg = ⊕ x_gamma H x_mu` between two parabolic Schur
//! algebras, and exact double-centralizer checks at rational `q0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::affine_schur::sl2::{remark_report, RemarkReport};
use crate::algebra::{HeckeAlgebra, Specialization};
use crate::cartan::{DatumKind, FiniteType, OrbitTable, Subset};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Matrix, RowSpace};
use crate::schur::{SchurAlgebra, Xi};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Action matrices of both algebras on the double coset basis of `T_fg`.
pub struct Bimodule {
    pub q0: BigRational,
    pub basis: Vec<Xi>,
    /// One matrix per basis element of `S_f`, acting by `a ∘ t`.
    pub left: Vec<Matrix>,
    /// One matrix per basis element of `S_g`, acting by `t ∘ b`.
    pub right: Vec<Matrix>,
    pub f_subsets: Vec<Subset>,
    pub g_subsets: Vec<Subset>,
}

fn zero_matrix(n: usize) -> Matrix {
    vec![vec![BigRational::zero(); n]; n]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += a[i][k].clone() * b[k][j].clone();
                }
            }
        }
    }
    out
}

/// Builds `T_fg` inside the Schur algebra of the disjoint union of the two tables.
pub fn build_bimodule(f: &OrbitTable, g: &OrbitTable, at: &Specialization) -> Result<Bimodule> {
    let q0 = at.checked()?;
    let group = f.group().clone();
    let union = Arc::new(f.disjoint_union(g)?);
    let hecke = HeckeAlgebra::specialized(group, at)?;
    for k in 0..union.len() {
        let x = hecke.x_gamma(union.get(k).j);
        let sq = hecke.mul(&x, &x);
        let theta = union.get(k).theta;
        if sq.coeff(&theta).is_zero() {
            return Err(Error::SingularSpecialization(format!("{q0}: x_{} squares to zero", k + 1)));
        }
    }
    let alg = SchurAlgebra::new(hecke, union)?;
    let nf = f.len();
    let in_f = |k: usize| k < nf;
    let basis: Vec<Xi> = alg.basis().iter().copied().filter(|x| in_f(x.gamma) && !in_f(x.nu)).collect();
    let index: BTreeMap<Xi, usize> = basis.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = basis.len();
    let action = |pairs: &mut dyn Iterator<Item = (usize, Result<crate::algebra::LinComb<Xi, BigRational>>)>| -> Result<Matrix> {
        let mut m = zero_matrix(n);
        for (col, r) in pairs {
            for (xi, c) in &r? {
                m[index[xi]][col] = c.clone();
            }
        }
        Ok(m)
    };
    let mut left = Vec::new();
    for &a in alg.basis().iter().filter(|x| in_f(x.gamma) && in_f(x.nu)) {
        let mut it = basis.iter().enumerate().filter(|(_, t)| t.gamma == a.nu).map(|(i, &t)| (i, alg.mul_basis(a, t)));
        left.push(action(&mut it)?);
    }
    let mut right = Vec::new();
    for &b in alg.basis().iter().filter(|x| !in_f(x.gamma) && !in_f(x.nu)) {
        let mut it = basis.iter().enumerate().filter(|(_, t)| t.nu == b.gamma).map(|(i, &t)| (i, alg.mul_basis(t, b)));
        right.push(action(&mut it)?);
    }
    Ok(Bimodule {
        q0,
        basis,
        left,
        right,
        f_subsets: f.orbits().iter().map(|o| o.j).collect(),
        g_subsets: g.orbits().iter().map(|o| o.j).collect(),
    })
}

impl Bimodule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn matrices(&self, side: Side) -> &[Matrix] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Dimension of the span of the action matrices of one side.
    pub fn image_dim(&self, side: Side) -> usize {
        let n = self.dim();
        let mut span = RowSpace::new(n * n);
        for m in self.matrices(side) {
            span.insert(m.iter().flatten().cloned().collect());
        }
        span.dim()
    }

    /// Basis of the matrices commuting with every action matrix of `side`.
    /// The identity idempotents of that side force the commutant to preserve
    /// its grading, so only those entries are unknowns.
    pub fn commutant(&self, side: Side) -> Vec<Matrix> {
        let n = self.dim();
        let grade = |i: usize| match side {
            Side::Left => self.basis[i].gamma,
            Side::Right => self.basis[i].nu,
        };
        let unknowns: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| grade(i) == grade(j)).collect();
        let mut rows = Vec::new();
        for a in self.matrices(side) {
            // (X A - A X)_{ij} as a linear form in the unknowns
            for i in 0..n {
                for j in 0..n {
                    let mut row = vec![BigRational::zero(); unknowns.len()];
                    for (u, &(r, c)) in unknowns.iter().enumerate() {
                        if r == i {
                            row[u] += a[c][j].clone();
                        }
                        if c == j {
                            row[u] -= a[i][r].clone();
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        kernel(&rows, unknowns.len())
            .into_iter()
            .map(|v| {
                let mut m = zero_matrix(n);
                for (&(r, c), x) in unknowns.iter().zip(v) {
                    m[r][c] = x;
                }
                m
            })
            .collect()
    }

    pub fn commutant_dim(&self, side: Side) -> usize {
        self.commutant(side).len()
    }

    /// Every left matrix commutes with every right matrix.
    pub fn actions_commute(&self) -> bool {
        self.left.iter().all(|a| self.right.iter().all(|b| mat_mul(a, b) == mat_mul(b, a)))
    }

    /// The `⊆`-minimal parabolic subsets on the two sides coincide.
    pub fn hypothesis(&self) -> bool {
        minimal_subsets(&self.f_subsets) == minimal_subsets(&self.g_subsets)
    }
}

pub fn minimal_subsets(sets: &[Subset]) -> Vec<Subset> {
    let mut out: Vec<Subset> =
        sets.iter().copied().filter(|s| !sets.iter().any(|t| t != s && t.is_subset_of(*s))).collect();
    out.sort();
    out.dedup();
    out
}

/// The rank one affine witness: left action of `H~` on `H~ x_mu` over `R(G)`.
#[derive(Clone, Debug, Serialize)]
pub struct AffineWitness {
    pub report: RemarkReport,
    pub commutant_rank: usize,
    pub image_rank: usize,
    pub image_is_proper: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub hypothesis: bool,
    pub dim_bimodule: usize,
    pub dim_commutant_left: usize,
    pub dim_commutant_right: usize,
    pub dim_image_left: usize,
    pub dim_image_right: usize,
    pub actions_commute: bool,
    pub verdict: String,
    pub q0: String,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine: Option<AffineWitness>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.verdict == "holds"
    }
}

fn is_sl2_remark(f: &OrbitTable, g: &OrbitTable) -> bool {
    let datum = f.group().datum();
    matches!(datum.kind(), DatumKind::Abstract { ty: FiniteType::A, rank: 1, .. })
        && f.orbits().iter().all(|o| o.j.is_empty())
        && g.orbits().iter().all(|o| !o.j.is_empty())
        && f.len() == 1
        && g.len() == 1
}

/// Compares images with commutants on both sides. For the rank one
/// regular/zero configuration the affine module over `R(G)` is checked too.
pub fn double_centralizer_check(f: &OrbitTable, g: &OrbitTable, at: &Specialization) -> Result<Verdict> {
    let b = build_bimodule(f, g, at)?;
    let (il, ir) = (b.image_dim(Side::Left), b.image_dim(Side::Right));
    let (cl, cr) = (b.commutant_dim(Side::Left), b.commutant_dim(Side::Right));
    let commute = b.actions_commute();
    let mut witnesses = Vec::new();
    if il != cr {
        witnesses.push(format!("image of S_f has dim {il}, commutant of S_g has dim {cr}"));
    }
    if ir != cl {
        witnesses.push(format!("image of S_g has dim {ir}, commutant of S_f has dim {cl}"));
    }
    if !commute {
        witnesses.push("left and right actions do not commute".into());
    }
    let affine = if is_sl2_remark(f, g) {
        let report = remark_report()?;
        let w = AffineWitness {
            image_is_proper: !report.determinant_is_unit,
            commutant_rank: 4,
            image_rank: report.image_rank,
            report,
        };
        if w.image_is_proper {
            witnesses.push(format!(
                "over R(G) the image of H~ in Mat_2(R(G)) has determinant {}, not a unit",
                w.report.determinant
            ));
        }
        Some(w)
    } else {
        None
    };
    let hypothesis = b.hypothesis();
    let holds = witnesses.is_empty();
    Ok(Verdict {
        hypothesis,
        dim_bimodule: b.dim(),
        dim_commutant_left: cl,
        dim_commutant_right: cr,
        dim_image_left: il,
        dim_image_right: ir,
        actions_commute: commute,
        verdict: if holds { "holds" } else { "fails" }.into(),
        q0: b.q0.to_string(),
        witnesses,
        affine,
    })
}

/// Default specializations used by the checks.
pub fn default_q0() -> Vec<Specialization> {
    vec![
        Specialization::Classical,
        Specialization::Value(BigRational::from_integer(3.into())),
        Specialization::Value(BigRational::new(5.into(), 2.into())),
    ]
}
