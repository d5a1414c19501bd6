use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::*;
use crate::algebra::{specialize, LaurentScalar, Specialization};
use crate::cartan::{longest_elements, CartanDatum, FiniteType, OrbitTable, QfSpec, Weight, WeylGroup};

fn generic(datum: CartanDatum, spec: QfSpec) -> SchurAlgebra<LaurentScalar> {
    let g = WeylGroup::new(Arc::new(datum)).unwrap();
    let t = Arc::new(OrbitTable::build(g.clone(), &spec).unwrap());
    SchurAlgebra::new(HeckeAlgebra::generic(g), t).unwrap()
}

fn gl(d: usize, n: usize) -> SchurAlgebra<LaurentScalar> {
    generic(CartanDatum::gl(d).unwrap(), QfSpec::Box(n))
}

/// Number of non-negative integer matrices with the given margins.
fn margin_count(rows: &[usize], cols: &[usize]) -> usize {
    if rows.is_empty() {
        return usize::from(cols.iter().all(|&c| c == 0));
    }
    fn fill(r: usize, k: usize, cols: &mut Vec<usize>, rows: &[usize]) -> usize {
        if k == cols.len() {
            return if r == 0 { margin_count(&rows[1..], cols) } else { 0 };
        }
        let mut total = 0;
        for x in 0..=r.min(cols[k]) {
            cols[k] -= x;
            total += fill(r - x, k + 1, cols, rows);
            cols[k] += x;
        }
        total
    }
    fill(rows[0], 0, &mut cols.to_vec(), rows)
}

#[test]
fn dimension_matches_matrix_count() {
    for (d, n) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)] {
        let alg = gl(d, n);
        let t = alg.table();
        let mut total = 0;
        for a in 0..t.len() {
            for b in 0..t.len() {
                let ra = t.get(a).composition.clone().unwrap();
                let rb = t.get(b).composition.clone().unwrap();
                let m = margin_count(&ra, &rb);
                assert_eq!(t.double_coset_reps(a, b).len(), m);
                total += m;
            }
        }
        assert_eq!(alg.dim(), total);
        assert_eq!(dim_schur(t), total);
    }
    assert_eq!(gl(2, 2).dim(), 10);
    assert_eq!(gl(3, 2).dim(), 20);
}

#[test]
fn peel_rejects_elements_outside_the_module() {
    let alg = generic(CartanDatum::abstract_type(FiniteType::A, 1).unwrap(), QfSpec::Zero);
    let g = alg.group().clone();
    let h = alg.hecke();
    let bad = h.generator(0) + h.one().scaled(&LaurentScalar::q());
    assert!(matches!(alg.peel(0, &bad), Err(Error::NotInParabolicModule { .. })));
    let good = h.mul(alg.x(0), &h.generator(0));
    let f = alg.peel(0, &good).unwrap();
    assert_eq!(f, FockElement::term((0, g.identity()), -LaurentScalar::q()));
}

#[test]
fn peel_inverts_embed() {
    let alg = generic(CartanDatum::abstract_type(FiniteType::B, 3).unwrap(), QfSpec::Explicit(vec![Weight(vec![0, -1, 0])]));
    let g = alg.group().clone();
    let o = alg.table().get(0).clone();
    let mut f = FockElement::zero();
    for (k, &w) in o.min_reps.iter().enumerate() {
        f.add_term((0, w), LaurentScalar::monomial(k as i64 - 3, (k % 5) as i32 - 2));
    }
    assert_eq!(alg.peel(0, &alg.embed(&f)).unwrap(), f);
    for i in 0..3 {
        let acted = alg.fock_act_gen(&f, i);
        assert_eq!(alg.embed(&acted), alg.hecke().mul_gen(&alg.embed(&f), i));
    }
    assert!(g.order() > 0);
}

#[test]
fn unit_and_associativity() {
    for alg in [gl(2, 2), gl(3, 2), generic(CartanDatum::abstract_type(FiniteType::G, 2).unwrap(), QfSpec::Explicit(vec![Weight(vec![0, -1]), Weight(vec![-1, 0])]))] {
        let one = alg.identity();
        for &x in alg.basis() {
            let e = alg.basis_element(x);
            assert_eq!(alg.mul(&one, &e).unwrap().coords, e.coords);
            assert_eq!(alg.mul(&e, &one).unwrap().coords, e.coords);
        }
        let b = alg.basis();
        for &x in b {
            for &y in b.iter().filter(|y| y.gamma == x.nu) {
                let xy = alg.mul(&alg.basis_element(x), &alg.basis_element(y)).unwrap();
                for &z in b.iter().filter(|z| z.gamma == y.nu) {
                    let ez = alg.basis_element(z);
                    let yz = alg.mul(&alg.basis_element(y), &ez).unwrap();
                    let l = alg.mul(&xy, &ez).unwrap();
                    let r = alg.mul(&alg.basis_element(x), &yz).unwrap();
                    assert_eq!(l.coords, r.coords);
                }
            }
        }
    }
}

#[test]
fn transpose_is_an_anti_automorphism() {
    let alg = gl(3, 2);
    for &x in alg.basis() {
        for &y in alg.basis().iter().filter(|y| y.gamma == x.nu) {
            let (ex, ey) = (alg.basis_element(x), alg.basis_element(y));
            let lhs = alg.transpose(&alg.mul(&ex, &ey).unwrap());
            let rhs = alg.mul(&alg.transpose(&ey), &alg.transpose(&ex)).unwrap();
            assert_eq!(lhs.coords, rhs.coords);
        }
    }
}

#[test]
fn incompatible_blocks_are_rejected() {
    let alg = gl(2, 2);
    let x = alg.basis()[0];
    let y = *alg.basis().iter().find(|y| y.gamma != x.nu).unwrap();
    assert!(matches!(alg.mul_basis(x, y), Err(Error::IncompatibleBlocks(_))));
}

/// Classical table computed in the group algebra: basis elements are signed
/// double coset sums and the product is divided by `x_nu^2 / x_nu`.
fn group_algebra_product(alg: &SchurAlgebra<LaurentScalar>, x: Xi, y: Xi) -> LinComb<Xi, BigRational> {
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
    let prod = prod.scaled(&scale.recip());
    let mut out = LinComb::zero();
    let mut rest = prod;
    for z in alg.block(x.gamma, y.nu).collect::<Vec<_>>() {
        let (top, s) = signed_sum(z);
        let c = rest.coeff(&top);
        if !c.is_zero() {
            rest.add_scaled(&s, &-c.clone());
            out.add_term(z, c);
        }
    }
    assert!(rest.is_zero());
    out
}

#[test]
fn classical_limit_matches_group_algebra() {
    for alg in [gl(2, 2), gl(3, 2), generic(CartanDatum::abstract_type(FiniteType::B, 2).unwrap(), QfSpec::Explicit(vec![Weight(vec![0, -1]), Weight(vec![-1, 0]), Weight(vec![0, 0])]))] {
        for &x in alg.basis() {
            for &y in alg.basis().iter().filter(|y| y.gamma == x.nu) {
                let q = alg.mul_basis(x, y).unwrap();
                let c = specialize(&q, &Specialization::Classical).unwrap();
                assert_eq!(c, group_algebra_product(&alg, x, y), "{x:?} {y:?}");
            }
        }
    }
}

#[test]
fn products_are_bruhat_triangular() {
    let alg = gl(3, 2);
    let g = alg.group().clone();
    let t = alg.table().clone();
    for &x in alg.basis() {
        for &y in alg.basis().iter().filter(|y| y.gamma == x.nu) {
            let (j, k, m) = (t.get(x.gamma).j, t.get(x.nu).j, t.get(y.nu).j);
            // Demazure product of the two longest elements bounds the support.
            let (_, xt) = longest_elements(&g, j, x.w, k);
            let (_, yt) = longest_elements(&g, k, y.w, m);
            let biggest = g.word(yt).iter().fold(xt, |a, &i| {
                let b = g.rmul(a, i as usize);
                if g.len(b) > g.len(a) { b } else { a }
            });
            let lead = *g.double_coset(j, biggest, m).iter().min_by_key(|&&p| g.len(p)).unwrap();
            for (z, _) in &alg.mul_basis(x, y).unwrap() {
                assert!(g.bruhat_leq(z.w, lead));
            }
        }
    }
}

#[test]
fn gl2_box2_products_are_integral_and_unital() {
    let alg = gl(2, 2);
    let mut count = 0;
    for &x in alg.basis() {
        for &y in alg.basis().iter().filter(|y| y.gamma == x.nu) {
            let r = alg.mul_basis(x, y).unwrap();
            count += 1;
            for (_, c) in &r {
                assert!(c.terms().all(|(_, n)| !n.is_zero()));
            }
        }
    }
    // Composable pairs: sum over nu of (column count) * (row count).
    assert_eq!(count, 3 * 3 + 4 * 4 + 3 * 3);
    let one = specialize(&alg.identity().coords, &Specialization::Classical).unwrap();
    assert!(one.iter().all(|(_, c)| c.is_one()));
}

#[test]
fn regular_orbit_algebra_is_the_hecke_algebra() {
    // With a single regular slot phi^w is left multiplication by H_w.
    let alg = generic(CartanDatum::abstract_type(FiniteType::A, 2).unwrap(), QfSpec::Regular);
    let g = alg.group().clone();
    let h = alg.hecke();
    for x in g.elements() {
        for y in g.elements() {
            let p = alg.mul_basis(Xi::new(0, x, 0), Xi::new(0, y, 0)).unwrap();
            let expect = h.mul(&h.h(x), &h.h(y));
            let got: BTreeMap<_, _> = p.iter().map(|(z, c)| (z.w, c.clone())).collect();
            let want: BTreeMap<_, _> = expect.iter().map(|(w, c)| (*w, c.clone())).collect();
            assert_eq!(got, want);
        }
    }
}
