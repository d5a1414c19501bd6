use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CheckFn;
use crate::affine_schur::sl2::{self, Sl2Bimodule, ZPoly};
use crate::affine_schur::{center_check, freeness_probe, AffineFockElement, AffineSchur, WeightOrder};
use crate::algebra::text::{format_affine, format_hecke, parse_affine, parse_hecke};
use crate::algebra::{
    specialize, AffineHeckeAlgebra, AffineHeckeElement, HeckeAlgebra, HeckeElement, LatticeElement, LaurentScalar,
    LinComb, Specialization,
};
use crate::cartan::{
    census, langlands_dim_check, longest_elements, CartanDatum, FiniteType, OrbitTable, QfSpec, Subset, Weight,
    WeylElement, WeylGroup,
};
use crate::howe::{build_bimodule, double_centralizer_check};
use crate::schur::{dim_schur, structure_constants, FockElement, SchurAlgebra, Xi};
use crate::springer::{self, PairRecord};

type Outcome = Result<String, String>;

pub(super) const REGISTRY: &[(&str, CheckFn)] = &[
    ("cartan.parabolic_factorization", parabolic_factorization),
    ("cartan.min_coset_criteria", min_coset_criteria),
    ("cartan.double_coset_sizes", double_coset_sizes),
    ("cartan.longest_parabolic", longest_parabolic),
    ("cartan.closure_cells", closure_cells),
    ("cartan.dual_involution", dual_involution),
    ("cartan.flag_dims", flag_dims),
    ("cartan.gl2_box2_dim", gl2_box2_dim),
    ("hecke.quadratic", quadratic),
    ("hecke.braid", braid),
    ("hecke.affine_associativity", affine_associativity),
    ("hecke.symmetrizer", symmetrizer),
    ("hecke.symmetrizer_classical", symmetrizer_classical),
    ("hecke.calc_identity", calc_identity),
    ("hecke.bernstein_theta", bernstein_theta),
    ("schur.associative_unital", associative_unital),
    ("schur.integrality", integrality),
    ("schur.classical_limit", classical_limit),
    ("schur.triangularity", triangularity),
    ("schur.p_symmetry", p_symmetry),
    ("schur.module_compatibility", module_compatibility),
    ("schur.symmetrizer_expansion", symmetrizer_expansion),
    ("affine.endo_validation", endo_validation),
    ("affine.associativity", affine_endo_associativity),
    ("affine.peel_round_trip", peel_round_trip),
    ("affine.peel_order_independence", peel_order_independence),
    ("affine.regular_block_iso", regular_block_iso),
    ("affine.symmetrizer", affine_symmetrizer),
    ("affine.rank_accounting", rank_accounting),
    ("affine.center", center),
    ("affine.freeness", freeness),
    ("affine.sl2_remark", sl2_remark),
    ("springer.gaussian_count", gaussian_count),
    ("springer.nonempty_dominance", nonempty_dominance),
    ("springer.kostka_components", kostka_components),
    ("springer.relevance", relevance),
    ("springer.lemma_inequality", lemma_inequality),
    ("springer.wedderburn", wedderburn),
    ("howe.actions_commute", actions_commute),
    ("howe.image_in_commutant", image_in_commutant),
    ("howe.swap_symmetry", swap_symmetry),
    ("howe.q0_agreement", q0_agreement),
    ("howe.positive_case", positive_case),
    ("howe.sl2_witness", sl2_witness),
    ("langlands.b2_c2", langlands_b2_c2),
    ("cli.round_trip", round_trip),
    ("cli.determinism", determinism),
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn group(ty: FiniteType, r: usize) -> Arc<WeylGroup> {
    WeylGroup::new(Arc::new(CartanDatum::abstract_type(ty, r).expect("datum"))).expect("group")
}

/// Types A1-A3, B2, B3, G2.
fn small_groups() -> Vec<Arc<WeylGroup>> {
    use FiniteType::*;
    [(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (G, 2)].into_iter().map(|(t, r)| group(t, r)).collect()
}

fn subsets(rank: usize) -> impl Iterator<Item = Subset> {
    (0u32..1 << rank).map(Subset)
}

fn table(datum: CartanDatum, spec: QfSpec) -> Arc<OrbitTable> {
    let g = WeylGroup::new(Arc::new(datum)).expect("group");
    Arc::new(OrbitTable::build(g, &spec).expect("table"))
}

/// Tables used by the finite Schur checks.
fn schur_tables() -> Vec<Arc<OrbitTable>> {
    vec![
        table(CartanDatum::gl(2).unwrap(), QfSpec::Box(2)),
        table(CartanDatum::gl(3).unwrap(), QfSpec::Box(2)),
        table(
            CartanDatum::abstract_type(FiniteType::B, 2).unwrap(),
            QfSpec::Explicit(vec![Weight(vec![0, -1]), Weight(vec![-1, 0]), Weight(vec![0, 0])]),
        ),
        table(
            CartanDatum::abstract_type(FiniteType::G, 2).unwrap(),
            QfSpec::Explicit(vec![Weight(vec![0, -1]), Weight(vec![-1, 0])]),
        ),
    ]
}

fn generic(t: &Arc<OrbitTable>) -> Result<SchurAlgebra<LaurentScalar>, String> {
    SchurAlgebra::new(HeckeAlgebra::generic(t.group().clone()), t.clone()).map_err(err)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_laurent(r: &mut ChaCha8Rng) -> LaurentScalar {
    let mut c = LaurentScalar::monomial(r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 }, r.gen_range(-2..=2));
    if r.gen_bool(0.3) {
        c = c + LaurentScalar::monomial(r.gen_range(-2..=2), r.gen_range(-2..=2));
    }
    c
}

fn random_hecke(g: &WeylGroup, r: &mut ChaCha8Rng, terms: usize) -> HeckeElement {
    let mut a = HeckeElement::zero();
    for _ in 0..terms {
        let w = WeylElement(r.gen_range(0..g.order() as u32));
        a.add_term(w, random_laurent(r));
    }
    a
}

fn random_affine(g: &WeylGroup, r: &mut ChaCha8Rng, terms: usize, k: i64) -> AffineHeckeElement {
    let n = g.datum().lattice_rank();
    let mut a = AffineHeckeElement::zero();
    for _ in 0..terms {
        let w = WeylElement(r.gen_range(0..g.order() as u32));
        let l = Weight((0..n).map(|_| r.gen_range(-k..=k)).collect());
        a.add_term((w, l), random_laurent(r));
    }
    a
}

// ---- cartan ----

fn parabolic_factorization() -> Outcome {
    let mut n = 0;
    for g in small_groups() {
        for j in subsets(g.rank()) {
            let wj = g.parabolic(j);
            let dj: Vec<WeylElement> = g.elements().filter(|&w| g.in_min_coset(j, w)).collect();
            let mut seen = BTreeSet::new();
            for &v in &wj {
                for &u in &dj {
                    let w = g.mul(v, u);
                    ensure(g.len(w) == g.len(v) + g.len(u), || format!("{}: lengths do not add", g.datum().label()))?;
                    seen.insert(w);
                }
            }
            ensure(seen.len() == g.order() && wj.len() * dj.len() == g.order(), || {
                format!("{} J={j}: factorization not unique", g.datum().label())
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} (group, J) pairs"))
}

fn min_coset_criteria() -> Outcome {
    let mut n = 0;
    for g in small_groups() {
        for j in subsets(g.rank()) {
            let wj = g.parabolic(j);
            for w in g.elements() {
                let by_length = wj.iter().all(|&v| g.len(g.mul(v, w)) >= g.len(w));
                let by_descent = g.in_min_coset(j, w);
                let by_roots = g.is_min_coset_rep(j, w);
                // w^{-1} sends positive roots of W_J to positive roots
                let inv = g.inverse(w);
                let by_all_roots = g
                    .positive_roots()
                    .iter()
                    .filter(|b| b.iter().enumerate().all(|(i, &c)| c == 0 || j.contains(i)))
                    .all(|b| g.act_on_root(inv, b).iter().all(|&c| c >= 0));
                ensure(by_length == by_descent && by_descent == by_roots && by_roots == by_all_roots, || {
                    format!("{} J={j} w={}: criteria disagree", g.datum().label(), g.display(w))
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (J, w) pairs"))
}

fn double_coset_sizes() -> Outcome {
    let mut n = 0;
    for g in small_groups() {
        for j in subsets(g.rank()) {
            for k in subsets(g.rank()) {
                let reps = crate::cartan::double_coset_reps(&g, j, k);
                let (wj, wk) = (g.parabolic(j), g.parabolic(k));
                let mut total = 0;
                for &w in &reps {
                    let size = g.double_coset(j, w, k).len();
                    let inv = g.inverse(w);
                    let meet = wj.iter().filter(|&&v| g.in_parabolic(g.mul(g.mul(inv, v), w), k)).count();
                    ensure(size * meet == wj.len() * wk.len(), || format!("{}: coset size formula", g.datum().label()))?;
                    total += size;
                }
                ensure(total == g.order(), || format!("{} J={j} K={k}: sizes sum to {total}", g.datum().label()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (J, K) pairs"))
}

fn positive_roots_in(g: &WeylGroup, j: Subset) -> usize {
    g.positive_roots().iter().filter(|b| b.iter().enumerate().all(|(i, &c)| c == 0 || j.contains(i))).count()
}

fn longest_parabolic() -> Outcome {
    for g in small_groups() {
        for j in subsets(g.rank()) {
            let t = g.longest_in(j);
            ensure(g.mul(t, t) == g.identity(), || format!("{} J={j}: theta^2 != e", g.datum().label()))?;
            ensure(g.len(t) == positive_roots_in(&g, j), || format!("{} J={j}: length of theta", g.datum().label()))?;
        }
    }
    Ok("theta_J^2 = e and l(theta_J) = #roots of J".into())
}

fn closure_cells() -> Outcome {
    for g in small_groups() {
        for j in subsets(g.rank()) {
            for k in subsets(g.rank()) {
                let reps = crate::cartan::double_coset_reps(&g, j, k);
                let cell = |w: WeylElement| -> BTreeSet<WeylElement> {
                    reps.iter().copied().filter(|&y| g.bruhat_leq(y, w)).collect()
                };
                for &w in &reps {
                    let c = cell(w);
                    ensure(c.iter().all(|&y| cell(y).is_subset(&c)), || {
                        format!("{}: closure of {} not downward closed", g.datum().label(), g.display(w))
                    })?;
                }
            }
        }
    }
    Ok("closures downward closed in every D_JK".into())
}

fn dual_involution() -> Outcome {
    use FiniteType::*;
    let mut data = Vec::new();
    for (t, r) in [(A, 3), (B, 3), (C, 3), (D, 4), (E, 6), (F, 4), (G, 2)] {
        data.push(CartanDatum::abstract_type(t, r).map_err(err)?);
    }
    data.push(CartanDatum::gl(3).map_err(err)?);
    data.push(CartanDatum::so(3, false).map_err(err)?);
    data.push(CartanDatum::sp(2, true).map_err(err)?);
    for d in &data {
        ensure(&d.dual().dual() == d, || format!("{}: dual is not an involution", d.label()))?;
        let dual = d.dual();
        let (a, b) = (d.cartan_matrix(), dual.cartan_matrix());
        let n = d.rank();
        ensure((0..n).all(|i| (0..n).all(|j| a[i][j] == b[j][i])), || format!("{}: dual is not the transpose", d.label()))?;
    }
    Ok(format!("{} data", data.len()))
}

fn flag_dims() -> Outcome {
    let tables = [
        table(CartanDatum::gl(2).unwrap(), QfSpec::Box(2)),
        table(CartanDatum::gl(3).unwrap(), QfSpec::Box(2)),
        table(CartanDatum::so(2, false).unwrap(), QfSpec::Jmath(1)),
    ];
    for t in &tables {
        let g = t.group();
        let c = census(t);
        let dims: BTreeMap<String, usize> =
            (0..t.len()).map(|k| (t.label(k), g.num_positive_roots() - positive_roots_in(g, t.get(k).j))).collect();
        for r in &c.records {
            ensure(r.dim_f_gamma == dims[&r.gamma] && r.dim_z == dims[&r.gamma] + dims[&r.nu], || {
                format!("{}: dimension of {}", c.datum, r.gamma)
            })?;
        }
    }
    Ok("partial flag dimensions equal root counts".into())
}

fn gl2_box2_dim() -> Outcome {
    let t = table(CartanDatum::gl(2).unwrap(), QfSpec::Box(2));
    let alg = generic(&t)?;
    let c = census(&t);
    ensure(dim_schur(&t) == 10 && alg.dim() == 10 && c.total == 10, || {
        format!("dims {} {} {}", dim_schur(&t), alg.dim(), c.total)
    })?;
    Ok("dim S_f = |Xi_f| = 10".into())
}

// ---- hecke ----

fn quadratic() -> Outcome {
    for g in small_groups() {
        let h = HeckeAlgebra::generic(g.clone());
        for i in 0..g.rank() {
            let a = h.generator(i) - h.one().scaled(&LaurentScalar::q_pow(-1));
            let b = h.generator(i) + h.one().scaled(&LaurentScalar::q());
            ensure(h.mul(&a, &b).is_zero(), || format!("{} generator {}", g.datum().label(), i + 1))?;
        }
    }
    Ok("(H_i - q^-1)(H_i + q) = 0 for A1-A3, B2, B3, G2".into())
}

fn braid() -> Outcome {
    let mut n = 0;
    for g in small_groups() {
        let h = HeckeAlgebra::generic(g.clone());
        let a = g.datum().cartan_matrix();
        for i in 0..g.rank() {
            for j in i + 1..g.rank() {
                let m = match a[i][j] * a[j][i] {
                    0 => 2,
                    1 => 3,
                    2 => 4,
                    _ => 6,
                };
                let word = |s: u8, t: u8| -> Vec<u8> { (0..m).map(|k| if k % 2 == 0 { s } else { t }).collect() };
                let (x, y) = (h.mul_word(&h.one(), &word(i as u8, j as u8)), h.mul_word(&h.one(), &word(j as u8, i as u8)));
                ensure(x == y, || format!("{} braid ({}, {})", g.datum().label(), i + 1, j + 1))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} braid relations"))
}

fn affine_associativity() -> Outcome {
    let mut r = rng(2024);
    let groups = [group(FiniteType::A, 1), group(FiniteType::A, 2), group(FiniteType::B, 2), group(FiniteType::G, 2)];
    let algs: Vec<AffineHeckeAlgebra<LaurentScalar>> =
        groups.iter().map(|g| AffineHeckeAlgebra::new(HeckeAlgebra::generic(g.clone())).unwrap()).collect();
    for k in 0..500 {
        let a = &algs[k % algs.len()];
        let g = a.group();
        let (x, y, z) = (random_affine(g, &mut r, 3, 2), random_affine(g, &mut r, 3, 2), random_affine(g, &mut r, 3, 2));
        ensure(a.mul(&a.mul(&x, &y), &z) == a.mul(&x, &a.mul(&y, &z)), || format!("triple {k} over {}", g.datum().label()))?;
    }
    Ok("500 random triples".into())
}

fn built_tables() -> Vec<Arc<OrbitTable>> {
    let mut t = schur_tables();
    t.push(table(CartanDatum::gl(3).unwrap(), QfSpec::Box(3)));
    t.push(table(CartanDatum::so(2, true).unwrap(), QfSpec::Iota(1)));
    t.push(table(CartanDatum::sp(3, false).unwrap(), QfSpec::Jmath(1)));
    t.push(table(CartanDatum::abstract_type(FiniteType::A, 3).unwrap(), QfSpec::Zero));
    t
}

fn symmetrizer() -> Outcome {
    let mut n = 0;
    for t in built_tables() {
        let h = HeckeAlgebra::generic(t.group().clone());
        for o in t.orbits() {
            let x = h.x_gamma(o.j);
            for i in o.j.iter() {
                ensure(h.mul_gen(&x, i) == x.scaled(&-LaurentScalar::q()), || format!("{} {}", t.group().datum().label(), o.j))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (orbit, i) pairs"))
}

fn symmetrizer_classical() -> Outcome {
    for t in built_tables() {
        let g = t.group();
        let h = HeckeAlgebra::generic(g.clone());
        for o in t.orbits() {
            let x = specialize(&h.x_gamma(o.j), &Specialization::Classical).map_err(err)?;
            for i in o.j.iter() {
                let xs = x.map_keys(|&w| g.rmul(w, i));
                ensure(xs == x.scaled(&-BigRational::one()), || format!("{} {}", g.datum().label(), o.j))?;
            }
        }
    }
    Ok("x_gamma s_i = -x_gamma at q = 1".into())
}

/// Under `H_i -> q E_i + q^{-1}`, the eigenvalue `-q` of `x_gamma` becomes `-(1 + q^{-2})` for `E_i`.
fn calc_identity() -> Outcome {
    for t in built_tables() {
        let h = HeckeAlgebra::generic(t.group().clone());
        for o in t.orbits() {
            let x = h.x_gamma(o.j);
            for i in o.j.iter() {
                let e = (h.generator(i) - h.one().scaled(&LaurentScalar::q_pow(-1))).scaled(&LaurentScalar::q_pow(-1));
                let want = x.scaled(&-(LaurentScalar::one() + LaurentScalar::q_pow(-2)));
                ensure(h.mul(&x, &e) == want, || format!("{} {}", t.group().datum().label(), o.j))?;
            }
        }
    }
    Ok("x_gamma E_i = -(1 + q^-2) x_gamma".into())
}

fn lattice_mul(a: &LatticeElement, b: &LatticeElement) -> LatticeElement {
    let mut out = LatticeElement::zero();
    for (l, c) in a {
        for (m, d) in b {
            out.add_term(l.add(m), c.clone() * d.clone());
        }
    }
    out
}

fn bernstein_theta() -> Outcome {
    let mut r = rng(7);
    let mut n = 0;
    for g in [group(FiniteType::A, 2), group(FiniteType::B, 2), group(FiniteType::G, 2), group(FiniteType::A, 3)] {
        let aff = AffineHeckeAlgebra::new(HeckeAlgebra::<LaurentScalar>::generic(g.clone())).map_err(err)?;
        let datum = g.datum();
        for _ in 0..50 {
            let l = Weight((0..datum.lattice_rank()).map(|_| r.gen_range(-4..=4)).collect());
            for i in 0..datum.rank() {
                let one_minus = LatticeElement::basis(Weight::zero(datum.lattice_rank()))
                    - LatticeElement::basis(datum.simple_root(i).neg());
                let lhs = lattice_mul(&one_minus, &aff.theta(&l, i));
                let rhs = LatticeElement::basis(l.clone()) - LatticeElement::basis(datum.reflect(&l, i));
                ensure(lhs == rhs, || format!("{} weight {l}", datum.label()))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} sampled weights"))
}

// ---- schur ----

fn associative_unital() -> Outcome {
    let mut n = 0;
    for t in schur_tables() {
        let alg = generic(&t)?;
        if alg.dim() > 200 {
            continue;
        }
        let one = alg.identity();
        let b = alg.basis();
        for &x in b {
            let e = alg.basis_element(x);
            ensure(alg.mul(&one, &e).map_err(err)?.coords == e.coords, || "left unit".into())?;
            ensure(alg.mul(&e, &one).map_err(err)?.coords == e.coords, || "right unit".into())?;
            for &y in b.iter().filter(|y| y.gamma == x.nu) {
                let xy = alg.mul_basis(x, y).map_err(err)?;
                let xy = alg.element(xy);
                for &z in b.iter().filter(|z| z.gamma == y.nu) {
                    let ez = alg.basis_element(z);
                    let l = alg.mul(&xy, &ez).map_err(err)?;
                    let yz = alg.element(alg.mul_basis(y, z).map_err(err)?);
                    let r = alg.mul(&e, &yz).map_err(err)?;
                    ensure(l.coords == r.coords, || format!("{}: {x:?} {y:?} {z:?}", t.group().datum().label()))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} basis triples"))
}

fn integrality() -> Outcome {
    let t = table(CartanDatum::gl(2).unwrap(), QfSpec::Box(2));
    let alg = generic(&t)?;
    let consts = structure_constants(&alg).map_err(err)?;
    ensure(consts.len() == 34, || format!("{} composable pairs", consts.len()))?;
    for e in &consts {
        for term in &e.result {
            let parsed: LaurentScalar = term.coef.parse().map_err(err)?;
            ensure(!parsed.is_zero(), || "zero coefficient listed".into())?;
        }
    }
    Ok("gl(2) box(2): 34 products with coefficients in Z[q, q^-1]".into())
}

/// Product computed in the group algebra from signed double coset sums.
fn group_algebra_product(alg: &SchurAlgebra<LaurentScalar>, x: Xi, y: Xi) -> Result<LinComb<Xi, BigRational>, String> {
    type Q = LinComb<WeylElement, BigRational>;
    let g = alg.group().clone();
    let t = alg.table().clone();
    let sign = |k: usize| BigRational::from_integer(if k % 2 == 0 { 1 } else { -1 }.into());
    let signed_sum = |xi: Xi| -> (WeylElement, Q) {
        let (j, k) = (t.get(xi.gamma).j, t.get(xi.nu).j);
        let (_, top) = longest_elements(&g, j, xi.w, k);
        let s = g.double_coset(j, xi.w, k).into_iter().map(|v| (v, sign(g.len(v) + g.len(top)))).collect();
        (top, s)
    };
    let (_, a) = signed_sum(x);
    let (_, b) = signed_sum(y);
    let mut prod = Q::zero();
    for (u, c) in &a {
        for (v, d) in &b {
            prod.add_term(g.mul(*u, *v), c.clone() * d.clone());
        }
    }
    let o = t.get(x.nu);
    let scale = sign(g.len(o.theta)) * BigRational::from_integer(o.stabilizer_order.into());
    let mut rest = prod.scaled(&scale.recip());
    let mut out = LinComb::zero();
    for z in alg.block(x.gamma, y.nu).collect::<Vec<_>>() {
        let (top, s) = signed_sum(z);
        let c = rest.coeff(&top);
        if !c.is_zero() {
            rest.add_scaled(&s, &-c.clone());
            out.add_term(z, c);
        }
    }
    ensure(rest.is_zero(), || "group algebra product is not in the span".into())?;
    Ok(out)
}

fn classical_limit() -> Outcome {
    let mut n = 0;
    for t in schur_tables() {
        let alg = generic(&t)?;
        for &x in alg.basis() {
            for &y in alg.basis().iter().filter(|y| y.gamma == x.nu) {
                let c = specialize(&alg.mul_basis(x, y).map_err(err)?, &Specialization::Classical).map_err(err)?;
                ensure(c == group_algebra_product(&alg, x, y)?, || format!("{}: {x:?} {y:?}", t.group().datum().label()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} products agree at q = 1"))
}

fn triangularity() -> Outcome {
    let mut n = 0;
    for t in schur_tables() {
        let alg = generic(&t)?;
        let g = alg.group().clone();
        for &x in alg.basis() {
            for &y in alg.basis().iter().filter(|y| y.gamma == x.nu) {
                let (j, k, m) = (t.get(x.gamma).j, t.get(x.nu).j, t.get(y.nu).j);
                let (_, xt) = longest_elements(&g, j, x.w, k);
                let (_, yt) = longest_elements(&g, k, y.w, m);
                // Demazure product of the two longest elements
                let top = g.word(yt).iter().fold(xt, |a, &i| {
                    let b = g.rmul(a, i as usize);
                    if g.len(b) > g.len(a) { b } else { a }
                });
                let lead = *g.double_coset(j, top, m).iter().min_by_key(|&&p| g.len(p)).unwrap();
                for (z, _) in &alg.mul_basis(x, y).map_err(err)? {
                    ensure(g.bruhat_leq(z.w, lead), || format!("{}: {x:?} {y:?}", g.datum().label()))?;
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} products below their leading double coset"))
}

fn p_symmetry() -> Outcome {
    let mut n = 0;
    for t in schur_tables() {
        let alg = generic(&t)?;
        for &x in alg.basis() {
            for &y in alg.basis().iter().filter(|y| y.gamma == x.nu) {
                let (ex, ey) = (alg.basis_element(x), alg.basis_element(y));
                let lhs = alg.transpose(&alg.mul(&ex, &ey).map_err(err)?);
                let rhs = alg.mul(&alg.transpose(&ey), &alg.transpose(&ex)).map_err(err)?;
                ensure(lhs.coords == rhs.coords, || format!("{}: {x:?} {y:?}", t.group().datum().label()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} products"))
}

fn module_compatibility() -> Outcome {
    let mut r = rng(99);
    let mut n = 0;
    for t in schur_tables() {
        let alg = generic(&t)?;
        let g = alg.group().clone();
        for &xi in alg.basis() {
            let phi = alg.basis_element(xi);
            let reps = &t.get(xi.nu).min_reps;
            let mut f = FockElement::zero();
            for _ in 0..2 {
                f.add_term((xi.nu, reps[r.gen_range(0..reps.len())]), random_laurent(&mut r));
            }
            let h = random_hecke(&g, &mut r, 2);
            let lhs = alg.apply(&phi, &alg.fock_act(&f, &h));
            let rhs = alg.fock_act(&alg.apply(&phi, &f), &h);
            ensure(lhs == rhs, || format!("{}: {xi:?}", g.datum().label()))?;
            n += 1;
        }
    }
    Ok(format!("{n} random (phi, f, h)"))
}

fn symmetrizer_expansion() -> Outcome {
    for t in built_tables() {
        let g = t.group();
        let h = HeckeAlgebra::generic(g.clone());
        for o in t.orbits() {
            let x = specialize(&h.x_gamma(o.j), &Specialization::Classical).map_err(err)?;
            let lt = g.len(g.longest_in(o.j));
            for w in g.elements() {
                let want = if g.in_parabolic(w, o.j) {
                    BigRational::from_integer(if (lt - g.len(w)) % 2 == 0 { 1 } else { -1 }.into())
                } else {
                    BigRational::zero()
                };
                ensure(x.coeff(&w) == want, || format!("{} {}", g.datum().label(), o.j))?;
            }
        }
    }
    Ok("x_gamma = sum (-1)^(l(theta) - l(w)) w at q = 1".into())
}

// ---- affine ----

fn affine_tables() -> Vec<AffineSchur> {
    vec![
        AffineSchur::new(table(
            CartanDatum::abstract_type(FiniteType::A, 1).unwrap(),
            QfSpec::Explicit(vec![Weight(vec![-1]), Weight(vec![0])]),
        ))
        .unwrap(),
        AffineSchur::new(table(CartanDatum::gl(2).unwrap(), QfSpec::Box(2))).unwrap(),
    ]
}

fn generators(s: &AffineSchur) -> Vec<crate::affine_schur::AffineSchurElement> {
    let n = s.algebra().lattice_rank();
    let mut out = Vec::new();
    for &xi in s.finite().basis() {
        for k in [0i64, 1, -1] {
            let mut mu = vec![0; n];
            mu[0] = k;
            out.push(s.generator(xi, &Weight(mu)).unwrap());
        }
    }
    out
}

fn endo_validation() -> Outcome {
    let mut n = 0;
    for s in affine_tables() {
        let gens = generators(&s);
        for a in &gens {
            for b in gens.iter().take(12) {
                let c = s.endo_compose(a, b);
                s.make_endo(c.images).map_err(err)?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} compositions validated"))
}

fn affine_endo_associativity() -> Outcome {
    let mut r = rng(5);
    let mut n = 0;
    for s in affine_tables() {
        let gens = generators(&s);
        for _ in 0..60 {
            let mut pick = || gens[r.gen_range(0..gens.len())].clone();
            let (a, b, c) = (pick(), pick(), pick());
            let l = s.endo_compose(&s.endo_compose(&a, &b), &c);
            let rr = s.endo_compose(&a, &s.endo_compose(&b, &c));
            ensure(l == rr, || format!("{}: triple", s.group().datum().label()))?;
            n += 1;
        }
    }
    Ok(format!("{n} random triples"))
}

fn random_affine_fock(s: &AffineSchur, gamma: usize, r: &mut ChaCha8Rng) -> AffineFockElement {
    let reps = s.table().get(gamma).min_reps.clone();
    let n = s.algebra().lattice_rank();
    let mut f = AffineFockElement::zero();
    for _ in 0..3 {
        let w = reps[r.gen_range(0..reps.len())];
        let l = Weight((0..n).map(|_| r.gen_range(-2..=2)).collect());
        f.add_term((gamma, w, l), random_laurent(r));
    }
    f
}

fn a2_two_orbits() -> AffineSchur {
    AffineSchur::new(table(
        CartanDatum::abstract_type(FiniteType::A, 2).unwrap(),
        QfSpec::Explicit(vec![Weight(vec![-1, -1]), Weight(vec![0, -1])]),
    ))
    .unwrap()
}

fn peel_round_trip() -> Outcome {
    let mut r = rng(8);
    let mut n = 0;
    for s in [a2_two_orbits(), affine_tables().remove(1)] {
        for gamma in 0..s.table().len() {
            for _ in 0..20 {
                let f = random_affine_fock(&s, gamma, &mut r);
                let a = s.affine_embed(&f);
                ensure(s.affine_peel(gamma, &a).map_err(err)? == f, || "peel(embed(f)) != f".into())?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} random elements"))
}

fn peel_order_independence() -> Outcome {
    let mut r = rng(9);
    let s = a2_two_orbits();
    let gens = generators(&s);
    for _ in 0..20 {
        let g = &gens[r.gen_range(0..gens.len())];
        let peeled = |order| -> Result<_, String> {
            let images = g
                .images
                .iter()
                .map(|(&nu, a)| {
                    let gamma = a.iter().next().map_or(nu, |((g, _, _), _)| *g);
                    Ok((nu, s.affine_peel_ordered(gamma, &s.affine_embed(a), order).map_err(err)?))
                })
                .collect::<Result<BTreeMap<_, _>, String>>()?;
            s.make_endo(images).map_err(err)
        };
        let (x, y) = (peeled(WeightOrder::Ascending)?, peeled(WeightOrder::Descending)?);
        ensure(x == *g && y == *g, || "peeling does not recover the generator".into())?;
        let h = &gens[r.gen_range(0..gens.len())];
        ensure(s.endo_compose(h, &x) == s.endo_compose(h, &y), || "composition depends on peel order".into())?;
    }
    Ok("20 generators, both elimination orders".into())
}

fn regular_block_iso() -> Outcome {
    let s = AffineSchur::new(table(CartanDatum::abstract_type(FiniteType::A, 2).unwrap(), QfSpec::Regular)).unwrap();
    let aff = s.algebra();
    let g = s.group().clone();
    let mut elems: Vec<AffineHeckeElement> = (0..2).map(|i| aff.h(g.simple(i))).collect();
    for j in 0..2 {
        for sign in [1, -1] {
            let mut w = vec![0; 2];
            w[j] = sign;
            elems.push(aff.e(Weight(w)));
        }
    }
    let endo = |a: &AffineHeckeElement| -> Result<_, String> {
        s.make_endo(BTreeMap::from([(0, s.affine_peel(0, a).map_err(err)?)])).map_err(err)
    };
    let mut n = 0;
    for a in &elems {
        for b in &elems {
            ensure(s.endo_compose(&endo(a)?, &endo(b)?) == endo(&aff.mul(a, b))?, || "generator products differ".into())?;
            n += 1;
        }
    }
    let mut r = rng(10);
    for _ in 0..10 {
        let (a, b) = (random_affine(&g, &mut r, 3, 1), random_affine(&g, &mut r, 3, 1));
        ensure(s.endo_compose(&endo(&a)?, &endo(&b)?) == endo(&aff.mul(&a, &b))?, || "random products differ".into())?;
        n += 1;
    }
    Ok(format!("{n} products in A2"))
}

fn affine_symmetrizer() -> Outcome {
    for s in [a2_two_orbits(), affine_tables().remove(1)] {
        let g = s.group().clone();
        let z = Weight::zero(s.algebra().lattice_rank());
        for (k, o) in s.table().orbits().iter().enumerate() {
            let x = AffineFockElement::basis((k, g.identity(), z.clone()));
            for i in o.j.iter() {
                ensure(s.act_gen(&x, i) == x.scaled(&-LaurentScalar::q()), || format!("slot {k}, index {}", i + 1))?;
            }
        }
    }
    Ok("x_gamma H_i = -q x_gamma in the affine module".into())
}

fn rank_accounting() -> Outcome {
    let q0 = Specialization::Value(BigRational::from_integer(2.into()));
    for t in schur_tables() {
        let g = t.group().clone();
        let h = HeckeAlgebra::specialized(g.clone(), &q0).map_err(err)?;
        let mut total = 0;
        for o in t.orbits() {
            let x = h.x_gamma(o.j);
            let rows: Vec<Vec<BigRational>> = g
                .elements()
                .map(|w| {
                    let v = h.mul(&x, &h.h(w));
                    g.elements().map(|u| v.coeff(&u)).collect()
                })
                .collect();
            total += crate::linalg::rank(&rows);
        }
        let reps: usize = t.orbits().iter().map(|o| o.min_reps.len()).sum();
        ensure(total == reps, || format!("{}: dim {total} vs {reps}", g.datum().label()))?;
    }
    Ok("dim ⊕ x_gamma H = sum |D_gamma|".into())
}

fn center() -> Outcome {
    let s = affine_tables().remove(0);
    let a = center_check(&s, &Weight(vec![1]), 2).map_err(err)?;
    let s2 = a2_two_orbits();
    let b = center_check(&s2, &Weight(vec![1, 0]), 1).map_err(err)?;
    ensure(a.result && b.result, || format!("{:?} {:?}", a.witnesses, b.witnesses))?;
    Ok(format!("SL2: {}; A2: {}", a.witnesses[0], b.witnesses[0]))
}

fn freeness() -> Outcome {
    let s = a2_two_orbits();
    let q0 = BigRational::from_integer(2.into());
    let mut out = Vec::new();
    for gamma in 0..s.table().len() {
        let c = freeness_probe(&s, gamma, 1, &q0).map_err(err)?;
        ensure(c.result, || c.witnesses.join("; "))?;
        out.push(c.witnesses.join(""));
    }
    Ok(out.join("; "))
}

fn sl2_remark() -> Outcome {
    let b = Sl2Bimodule::new().map_err(err)?;
    let q = || ZPoly::constant(LaurentScalar::q());
    let qi = || ZPoly::constant(LaurentScalar::q_pow(-1));
    let (o, i, z) = (ZPoly::zero, ZPoly::one, ZPoly::z);
    let expected = [
        [[i(), o()], [o(), i()]],
        [[o(), -i()], [i(), z()]],
        [[-q(), -(qi() * z())], [o(), qi()]],
        [[o(), -qi()], [-q(), o()]],
    ];
    let got = b.remark_matrices().map_err(err)?;
    for ((name, m), e) in got.iter().zip(expected.iter()) {
        ensure(m == e, || format!("matrix of {name}"))?;
    }
    let r = sl2::remark_report().map_err(err)?;
    ensure(!r.determinant_is_unit, || "determinant is a unit".into())?;
    Ok(format!("four matrices reproduced; determinant {} is not a unit", r.determinant))
}

// ---- springer ----

fn survey() -> Result<&'static Vec<PairRecord>, String> {
    static SURVEY: OnceLock<Result<Vec<PairRecord>, String>> = OnceLock::new();
    SURVEY
        .get_or_init(|| {
            let mut all = Vec::new();
            for d in 1..=4 {
                all.extend(springer::survey(d).map_err(err)?);
            }
            Ok(all)
        })
        .as_ref()
        .map_err(Clone::clone)
}

fn gaussian_count() -> Outcome {
    for d in 1..=4usize {
        let zero = vec![1; d];
        for q in [2u64, 3, 4, 5] {
            let gauss: u64 = (1..=d as u32).map(|k| (q.pow(k) - 1) / (q - 1)).product();
            let c = springer::count_stable_flags(&zero, &zero, q as u32).map_err(err)?;
            ensure(c == gauss, || format!("d={d} q={q}: {c} vs {gauss}"))?;
        }
    }
    Ok("x = 0 full flag counts are Gaussian".into())
}

fn nonempty_dominance() -> Outcome {
    let s = survey()?;
    for r in s {
        ensure(r.profile.is_empty() != r.nonempty_by_dominance, || format!("{:?} {:?}", r.profile.lambda, r.profile.gamma))?;
    }
    Ok(format!("{} pairs with d <= 4", s.len()))
}

fn kostka_components() -> Outcome {
    let s = survey()?;
    for r in s.iter().filter(|r| !r.profile.is_empty()) {
        ensure(r.profile.top_coefficient as u64 == r.kostka, || {
            format!("{:?} {:?}: {} vs {}", r.profile.lambda, r.profile.gamma, r.profile.top_coefficient, r.kostka)
        })?;
    }
    Ok(format!("{} nonempty pairs", s.iter().filter(|r| !r.profile.is_empty()).count()))
}

fn relevance() -> Outcome {
    let s = survey()?;
    for r in s {
        ensure(r.relevant == !r.profile.is_empty(), || format!("{:?} {:?}", r.profile.lambda, r.profile.gamma))?;
    }
    Ok(format!("relevant = nonempty on {} pairs", s.len()))
}

fn lemma_inequality() -> Outcome {
    let s = survey()?;
    for r in s {
        ensure(r.inequality_holds, || format!("{:?} {:?}", r.profile.lambda, r.profile.gamma))?;
    }
    Ok(format!("2 dim fiber + dim orbit <= dim T*(G/P) on {} pairs", s.len()))
}

fn wedderburn() -> Outcome {
    let mut out = Vec::new();
    for d in 1..=3 {
        for n in 1..=3 {
            let t = table(CartanDatum::gl(d).unwrap(), QfSpec::Box(n));
            let r = springer::irreducible_dims(&t).map_err(err)?;
            ensure(r.wedderburn_holds, || format!("gl({d}) box({n}): {} vs {}", r.wedderburn_sum, r.schur_dim))?;
            out.push(format!("gl({d}) box({n}) {}", r.schur_dim));
        }
    }
    Ok(out.join(", "))
}

// ---- howe ----

fn howe_configs() -> Vec<(Arc<OrbitTable>, Arc<OrbitTable>)> {
    vec![
        (table(CartanDatum::gl(2).unwrap(), QfSpec::Box(2)), table(CartanDatum::gl(2).unwrap(), QfSpec::Box(2))),
        (table(CartanDatum::gl(2).unwrap(), QfSpec::Box(2)), table(CartanDatum::gl(2).unwrap(), QfSpec::Box(3))),
        (
            table(CartanDatum::abstract_type(FiniteType::A, 2).unwrap(), QfSpec::Regular),
            table(CartanDatum::abstract_type(FiniteType::A, 2).unwrap(), QfSpec::Zero),
        ),
    ]
}

fn same_group(f: &OrbitTable, g: &OrbitTable) -> OrbitTable {
    OrbitTable::from_subsets(f.group().clone(), &g.orbits().iter().map(|o| o.j).collect::<Vec<_>>())
}

fn actions_commute() -> Outcome {
    for (f, g) in howe_configs() {
        let g = same_group(&f, &g);
        let b = build_bimodule(&f, &g, &Specialization::Value(BigRational::from_integer(3.into()))).map_err(err)?;
        ensure(b.actions_commute(), || format!("{} / {}", f.spec(), g.spec()))?;
    }
    Ok("left and right actions commute".into())
}

fn image_in_commutant() -> Outcome {
    for (f, g) in howe_configs() {
        let g = same_group(&f, &g);
        let v = double_centralizer_check(&f, &g, &Specialization::Classical).map_err(err)?;
        ensure(v.dim_image_left <= v.dim_commutant_right && v.dim_image_right <= v.dim_commutant_left, || "dims".into())?;
        let eq = v.dim_image_left == v.dim_commutant_right && v.dim_image_right == v.dim_commutant_left;
        ensure(eq == v.holds(), || "equality does not match the verdict".into())?;
    }
    Ok("images inside commutants, equal exactly when the verdict holds".into())
}

fn swap_symmetry() -> Outcome {
    for (f, g) in howe_configs() {
        let g = same_group(&f, &g);
        let at = Specialization::Value(BigRational::new(5.into(), 2.into()));
        let a = double_centralizer_check(&f, &g, &at).map_err(err)?;
        let b = double_centralizer_check(&g, &f, &at).map_err(err)?;
        ensure(
            a.verdict == b.verdict
                && (a.dim_image_left, a.dim_commutant_right) == (b.dim_image_right, b.dim_commutant_left),
            || format!("{} / {}", f.spec(), g.spec()),
        )?;
    }
    Ok("verdicts symmetric under swapping sides".into())
}

fn q0_agreement() -> Outcome {
    for (f, g) in howe_configs() {
        let g = same_group(&f, &g);
        let verdicts: Vec<String> = crate::howe::default_q0()
            .iter()
            .map(|at| double_centralizer_check(&f, &g, at).map(|v| v.verdict).map_err(err))
            .collect::<Result<_, _>>()?;
        ensure(verdicts.iter().all(|v| *v == verdicts[0]), || format!("{} / {}: {verdicts:?}", f.spec(), g.spec()))?;
    }
    Ok("q0 = 1, 3, 5/2 agree".into())
}

fn positive_case() -> Outcome {
    let (f, g) = howe_configs().remove(0);
    for at in crate::howe::default_q0() {
        let v = double_centralizer_check(&f, &g, &at).map_err(err)?;
        ensure(v.hypothesis && v.holds() && v.dim_image_left == 10, || format!("q0 = {}: {v:?}", v.q0))?;
    }
    Ok("gl(2) box(2)/box(2) holds at q0 = 1, 3, 5/2".into())
}

fn sl2_witness() -> Outcome {
    let f = table(CartanDatum::abstract_type(FiniteType::A, 1).unwrap(), QfSpec::Regular);
    let g = same_group(&f, &table(CartanDatum::abstract_type(FiniteType::A, 1).unwrap(), QfSpec::Zero));
    let v = double_centralizer_check(&f, &g, &Specialization::Classical).map_err(err)?;
    let w = v.affine.as_ref().ok_or("no affine witness")?;
    ensure(!v.hypothesis && !v.holds() && w.image_is_proper && w.commutant_rank == 4, || format!("{v:?}"))?;
    Ok(v.witnesses.join("; "))
}

// ---- langlands ----

fn langlands_b2_c2() -> Outcome {
    let r = langlands_dim_check(&CartanDatum::so(2, false).unwrap(), &QfSpec::Jmath(1)).map_err(err)?;
    ensure(r.equal, || format!("{} {} vs {} {}", r.datum, r.total, r.dual, r.total_dual))?;
    Ok(format!("{} and {} both give {}", r.datum, r.dual, r.total))
}

// ---- cli ----

fn round_trip() -> Outcome {
    let mut r = rng(12);
    for g in [group(FiniteType::A, 2), group(FiniteType::B, 2)] {
        let h = HeckeAlgebra::generic(g.clone());
        let aff = AffineHeckeAlgebra::new(h.clone()).map_err(err)?;
        for _ in 0..20 {
            let a = h.mul(&random_hecke(&g, &mut r, 3), &random_hecke(&g, &mut r, 2));
            ensure(parse_hecke(&g, &format_hecke(&g, &a)).map_err(err)? == a, || "hecke".into())?;
            let b = aff.mul(&random_affine(&g, &mut r, 2, 2), &random_affine(&g, &mut r, 2, 2));
            ensure(parse_affine(&g, &format_affine(&g, &b)).map_err(err)? == b, || "affine".into())?;
        }
    }
    Ok("40 random elements reparse".into())
}

fn determinism() -> Outcome {
    let run = || -> Result<(String, String), String> {
        let t = table(CartanDatum::gl(3).unwrap(), QfSpec::Box(2));
        let c = serde_json::to_string(&census(&t)).map_err(err)?;
        let k = serde_json::to_string(&structure_constants(&generic(&t)?).map_err(err)?).map_err(err)?;
        Ok((c, k))
    };
    ensure(run()? == run()?, || "outputs differ between runs".into())?;
    Ok("census and structure constants are byte-identical across runs".into())
}
