use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sl2::{self, Sl2Bimodule, ZPoly};
use super::*;
use crate::cartan::{CartanDatum, FiniteType, QfSpec};

fn schur(ty: FiniteType, r: usize, spec: QfSpec) -> AffineSchur {
    let g = WeylGroup::new(Arc::new(CartanDatum::abstract_type(ty, r).unwrap())).unwrap();
    AffineSchur::new(Arc::new(OrbitTable::build(g, &spec).unwrap())).unwrap()
}

fn a2_two_orbits() -> AffineSchur {
    schur(FiniteType::A, 2, QfSpec::Explicit(vec![Weight(vec![-1, -1]), Weight(vec![0, -1])]))
}

fn random_fock(s: &AffineSchur, gamma: usize, rng: &mut ChaCha8Rng) -> AffineFockElement {
    let reps = s.table().get(gamma).min_reps.clone();
    let n = s.algebra().lattice_rank();
    let mut f = AffineFockElement::zero();
    for _ in 0..3 {
        let w = reps[rng.gen_range(0..reps.len())];
        let l = Weight((0..n).map(|_| rng.gen_range(-2..=2)).collect());
        f.add_term((gamma, w, l), LaurentScalar::monomial(rng.gen_range(-3..=3), rng.gen_range(-2..=2)));
    }
    f
}

#[test]
fn peel_inverts_embed_in_every_order() {
    let s = a2_two_orbits();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for gamma in 0..s.table().len() {
        for _ in 0..10 {
            let f = random_fock(&s, gamma, &mut rng);
            let a = s.affine_embed(&f);
            assert_eq!(s.affine_peel(gamma, &a).unwrap(), f);
            assert_eq!(s.affine_peel_ordered(gamma, &a, WeightOrder::Ascending).unwrap(), f);
            for i in 0..2 {
                assert_eq!(s.affine_embed(&s.act_gen(&f, i)), s.algebra().mul_gen(&a, i));
            }
        }
    }
}

#[test]
fn peel_rejects_elements_outside_the_module() {
    let s = schur(FiniteType::A, 1, QfSpec::Zero);
    let bad = s.algebra().e(Weight(vec![1]));
    assert!(s.affine_peel(0, &bad).is_err());
}

#[test]
fn eigencondition_is_enforced() {
    let s = schur(FiniteType::A, 1, QfSpec::Zero);
    let g = s.group().clone();
    let bad = AffineFockElement::basis((0, g.identity(), Weight(vec![1])));
    assert!(matches!(s.make_endo(BTreeMap::from([(0, bad)])), Err(Error::EigenconditionFails { .. })));
    let z = s.invariant_sum(&Weight(vec![1])).unwrap();
    assert!(s.central(&z).is_ok());
}

#[test]
fn composition_is_associative_on_generators() {
    let s = a2_two_orbits();
    let mut gens = Vec::new();
    for &xi in s.finite().basis() {
        for mu in [Weight(vec![0, 0]), Weight(vec![1, 0]), Weight(vec![-1, 1])] {
            gens.push(s.generator(xi, &mu).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let pick = |rng: &mut ChaCha8Rng| gens[rng.gen_range(0..gens.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let l = s.endo_compose(&s.endo_compose(&a, &b), &c);
        let r = s.endo_compose(&a, &s.endo_compose(&b, &c));
        assert_eq!(l, r);
    }
    let one = s.identity();
    for g in &gens {
        assert_eq!(&s.endo_compose(&one, g), g);
        assert_eq!(&s.endo_compose(g, &one), g);
    }
}

#[test]
fn regular_block_is_the_affine_hecke_algebra() {
    let s = schur(FiniteType::A, 2, QfSpec::Regular);
    let aff = s.algebra();
    let g = s.group().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let random = |rng: &mut ChaCha8Rng| {
        let mut a = AffineHeckeElement::zero();
        for _ in 0..3 {
            let w = g.elements().nth(rng.gen_range(0..g.order())).unwrap();
            let l = Weight(vec![rng.gen_range(-1..=1), rng.gen_range(-1..=1)]);
            a.add_term((w, l), LaurentScalar::monomial(rng.gen_range(-2..=2), rng.gen_range(-1..=1)));
        }
        a
    };
    let endo = |a: &AffineHeckeElement| s.make_endo(BTreeMap::from([(0, s.affine_peel(0, a).unwrap())])).unwrap();
    for _ in 0..15 {
        let (a, b) = (random(&mut rng), random(&mut rng));
        let composed = s.endo_compose(&endo(&a), &endo(&b));
        assert_eq!(composed, endo(&aff.mul(&a, &b)));
    }
}

#[test]
fn centers_for_sl2_and_a2() {
    let s = schur(FiniteType::A, 1, QfSpec::Explicit(vec![Weight(vec![-1]), Weight(vec![0])]));
    let c = center_check(&s, &Weight(vec![1]), 2).unwrap();
    assert!(c.result, "{:?}", c.witnesses);
    let s = a2_two_orbits();
    let c = center_check(&s, &Weight(vec![1, 0]), 1).unwrap();
    assert!(c.result, "{:?}", c.witnesses);
    assert!(center_check(&s, &Weight(vec![-1, 0]), 1).is_err());
}

#[test]
fn non_invariant_sum_is_not_central() {
    let s = schur(FiniteType::A, 1, QfSpec::Regular);
    let e = s.make_endo(BTreeMap::from([(0, AffineFockElement::basis((0, s.group().identity(), Weight(vec![1]))))])).unwrap();
    let h = s.generator(Xi::new(0, s.group().simple(0), 0), &Weight(vec![0])).unwrap();
    assert_ne!(s.endo_compose(&e, &h), s.endo_compose(&h, &e));
}

#[test]
fn window_modules_are_free() {
    let s = a2_two_orbits();
    let q0 = BigRational::from_integer(2.into());
    for gamma in 0..2 {
        assert!(freeness_probe(&s, gamma, 1, &q0).unwrap().result);
    }
}

#[test]
fn sl2_remark_matrices() {
    let b = Sl2Bimodule::new().unwrap();
    let q = || ZPoly::constant(LaurentScalar::q());
    let qi = || ZPoly::constant(LaurentScalar::q_pow(-1));
    let (o, i, z) = (ZPoly::zero, ZPoly::one, ZPoly::z);
    let expected = [
        [[i(), o()], [o(), i()]],
        [[o(), -i()], [i(), z()]],
        [[-q(), -(qi() * z())], [o(), qi()]],
        [[o(), -qi()], [-q(), o()]],
    ];
    let got = b.remark_matrices().unwrap();
    for ((_, m), e) in got.iter().zip(expected.iter()) {
        assert_eq!(m, e);
    }
    let r = sl2::remark_report().unwrap();
    assert!(!r.determinant_is_unit, "{}", r.determinant);
    assert_eq!((r.finite_shadow_rank, r.free_rank), (1, 2));
}

#[test]
fn decomposition_round_trip() {
    // Evaluate A(z) + B(z) X^{-1} back into Laurent polynomials in X.
    for n in -5i64..=5 {
        let (a, b) = sl2::decompose(&LatticeElement::basis(Weight(vec![n])));
        let eval = |p: &ZPoly, shift: i64| {
            let mut out: BTreeMap<i64, i64> = BTreeMap::new();
            let mut zk: BTreeMap<i64, i64> = BTreeMap::from([(shift, 1)]);
            for c in p.coeffs() {
                let c: i64 = c.terms().map(|(_, v)| i64::try_from(v.clone()).unwrap()).sum();
                for (&e, &v) in &zk {
                    *out.entry(e).or_default() += c * v;
                }
                let mut next = BTreeMap::new();
                for (&e, &v) in &zk {
                    *next.entry(e + 1).or_default() += v;
                    *next.entry(e - 1).or_default() += v;
                }
                zk = next;
            }
            out
        };
        let mut total = eval(&a, 0);
        for (e, v) in eval(&b, -1) {
            *total.entry(e).or_default() += v;
        }
        total.retain(|_, v| *v != 0);
        assert_eq!(total, BTreeMap::from([(n, 1)]), "X^{n}");
    }
    assert!(ZPoly::one().is_unit() && !ZPoly::z().is_unit() && !ZPoly::zero().is_unit());
}
