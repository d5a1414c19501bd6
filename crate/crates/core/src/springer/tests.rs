use std::collections::BTreeSet;

use super::*;
use crate::cartan::{CartanDatum, QfSpec, WeylGroup};
use std::sync::Arc;

type Space = BTreeSet<Vec<u8>>;

fn all_vectors(p: u8, d: usize) -> Vec<Vec<u8>> {
    (0..(p as usize).pow(d as u32))
        .map(|mut n| {
            (0..d)
                .map(|_| {
                    let c = (n % p as usize) as u8;
                    n /= p as usize;
                    c
                })
                .collect()
        })
        .collect()
}

/// Every subspace of `F_p^d` as its full set of vectors.
fn all_subspaces(p: u8, d: usize) -> Vec<Space> {
    let vecs = all_vectors(p, d);
    let mut spaces: BTreeSet<Space> = BTreeSet::new();
    spaces.insert([vec![0; d]].into_iter().collect());
    let mut frontier: Vec<Space> = spaces.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for v in &vecs {
            if s.contains(v) {
                continue;
            }
            let mut t = s.clone();
            for u in &s {
                for c in 1..p {
                    t.insert(u.iter().zip(v).map(|(a, b)| (a + c * b) % p).collect());
                }
            }
            if spaces.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    spaces.into_iter().collect()
}

/// Chain count by direct search over all subspaces, prime fields only.
fn brute_count(lambda: &[usize], gamma: &[usize], p: u8) -> u64 {
    let d: usize = lambda.iter().sum();
    let spaces = all_subspaces(p, d);
    let dim = |s: &Space| (s.len() as f64).log(p as f64).round() as usize;
    fn go(prev: &Space, k: usize, targets: &[usize], spaces: &[Space], lambda: &[usize], dim: &dyn Fn(&Space) -> usize) -> u64 {
        if k == targets.len() {
            return 1;
        }
        spaces
            .iter()
            .filter(|s| dim(s) == targets[k] && prev.is_subset(s))
            .filter(|s| s.iter().all(|v| prev.contains(&apply_nilpotent(lambda, v))))
            .map(|s| go(s, k + 1, targets, spaces, lambda, dim))
            .sum()
    }
    let targets: Vec<usize> = gamma.iter().scan(0, |a, &g| {
        *a += g;
        Some(*a)
    }).collect();
    let zero: Space = [vec![0; d]].into_iter().collect();
    go(&zero, 0, &targets, &spaces, lambda, &dim)
}

#[test]
fn counts_match_brute_force() {
    for d in 1..=3 {
        for l in partitions(d).unwrap() {
            for g in compositions(d) {
                for p in [2u8, 3] {
                    assert_eq!(count_stable_flags(&l, &g, p as u32).unwrap(), brute_count(&l, &g, p), "{l:?} {g:?} {p}");
                }
            }
        }
    }
}

#[test]
fn count_examples() {
    assert_eq!(count_stable_flags(&[1, 1], &[1, 1], 2).unwrap(), 3);
    for q in [2, 3, 4, 5] {
        assert_eq!(count_stable_flags(&[2], &[1, 1], q).unwrap(), 1);
    }
    // x = 0: the full flag variety, prod (q^k - 1)/(q - 1)
    for q in [2u64, 3, 4, 5, 7] {
        let gauss: u64 = (1..=4).map(|k| (q.pow(k) - 1) / (q - 1)).product();
        assert_eq!(count_stable_flags(&[1, 1, 1, 1], &[1, 1, 1, 1], q as u32).unwrap(), gauss);
    }
    assert!(count_stable_flags(&[2, 1], &[1, 1], 2).is_err());
    assert!(count_stable_flags(&[1, 1, 1, 1, 1], &[5], 2).is_err());
}

#[test]
fn partition_listing() {
    assert_eq!(partitions(2).unwrap(), vec![vec![2], vec![1, 1]]);
    assert_eq!(partitions(3).unwrap().len(), 3);
    assert_eq!(partitions(4).unwrap().len(), 5);
    assert!(partitions(0).is_err() && partitions(7).is_err());
    for d in 1..=6 {
        let ps = partitions(d).unwrap();
        for (i, a) in ps.iter().enumerate() {
            assert_eq!(transpose(&transpose(a)), *a);
            for b in &ps[i + 1..] {
                assert!(!dominates(b, a));
            }
        }
    }
    assert_eq!(PartitionData::new(vec![2, 1]).unwrap().n, 1);
}

/// `dim gl_d - dim` of the linear centralizer, counted over a prime field.
fn centralizer_orbit_dim(lambda: &[usize], p: u8) -> usize {
    let d: usize = lambda.iter().sum();
    let mut count = 0u64;
    for entries in all_vectors(p, d * d) {
        let a: Vec<&[u8]> = entries.chunks(d).collect();
        let mat = |v: &[u8]| -> Vec<u8> { (0..d).map(|r| (0..d).map(|c| a[r][c] * v[c]).sum::<u8>() % p).collect() };
        let commutes = (0..d).all(|c| {
            let mut e = vec![0u8; d];
            e[c] = 1;
            mat(&apply_nilpotent(lambda, &e)) == apply_nilpotent(lambda, &mat(&e))
        });
        count += u64::from(commutes);
    }
    let k = (count as f64).log(p as f64).round() as usize;
    assert_eq!((p as u64).pow(k as u32), count);
    d * d - k
}

#[test]
fn orbit_dimensions() {
    assert_eq!(orbit_dim(&[1, 1, 1]), 0);
    assert_eq!(orbit_dim(&[2]), 2);
    assert_eq!(orbit_dim(&[2, 1]), 4);
    for d in 1..=3 {
        for l in partitions(d).unwrap() {
            assert_eq!(orbit_dim(&l), centralizer_orbit_dim(&l, 2));
            assert_eq!(orbit_dim(&l), centralizer_orbit_dim(&l, 3));
        }
    }
    for l in partitions(4).unwrap() {
        assert_eq!(orbit_dim(&l), centralizer_orbit_dim(&l, 2));
    }
}

/// Fills the shape cell by cell, row-major.
fn brute_kostka(lambda: &[usize], mu: &[usize]) -> u64 {
    let cells: Vec<(usize, usize)> = lambda.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    fn go(k: usize, cells: &[(usize, usize)], t: &mut Vec<Vec<usize>>, left: &mut Vec<usize>) -> u64 {
        if k == cells.len() {
            return u64::from(left.iter().all(|&x| x == 0));
        }
        let (r, c) = cells[k];
        let mut total = 0;
        for v in 0..left.len() {
            if left[v] == 0 || (c > 0 && t[r][c - 1] > v) || (r > 0 && t[r - 1][c] >= v) {
                continue;
            }
            left[v] -= 1;
            t[r][c] = v;
            total += go(k + 1, cells, t, left);
            left[v] += 1;
        }
        total
    }
    let mut t: Vec<Vec<usize>> = lambda.iter().map(|&l| vec![0; l]).collect();
    go(0, &cells, &mut t, &mut mu.to_vec())
}

#[test]
fn kostka_numbers() {
    assert_eq!(kostka(&[2], &[1, 1]), 1);
    assert_eq!(kostka(&[2, 1], &[1, 1, 1]), 2);
    for d in 1..=5 {
        for l in partitions(d).unwrap() {
            assert_eq!(kostka(&l, &l), 1);
            for g in compositions(d) {
                assert_eq!(kostka(&l, &g), brute_kostka(&l, &g), "{l:?} {g:?}");
            }
        }
    }
}

#[test]
fn profile_examples() {
    let p = fiber_profile(&[1, 1], &[1, 1]).unwrap();
    assert_eq!((p.coefficients.clone(), p.dimension, p.top_coefficient), (vec![1, 1], Some(1), 1));
    let p = fiber_profile(&[2], &[1, 1]).unwrap();
    assert_eq!((p.coefficients.clone(), p.dimension, p.top_coefficient), (vec![1], Some(0), 1));
    let p = fiber_profile(&[2], &[2]).unwrap();
    assert!(p.is_empty() && p.counts.iter().all(|&(_, c)| c == 0));
    assert!(!nonempty_by_dominance(&[2], &[2]));
    let p = fiber_profile(&[3], &[1, 2]).unwrap();
    assert!(p.is_empty());
    assert!(!is_relevant(&[2], &[2]).unwrap());
    assert!(is_relevant(&[2], &[1, 1]).unwrap());
    assert!(is_relevant(&[1, 1, 1], &[1, 1, 1]).unwrap());
}

#[test]
fn interpolation_is_exact() {
    let pts: Vec<(u32, u64)> = [2u32, 3, 4, 5].iter().map(|&q| (q, (q * q * q + 2 * q + 7) as u64)).collect();
    let c = interpolate(&pts);
    let want = [7, 2, 0, 1].map(|n: i64| BigRational::from_integer(n.into()));
    assert_eq!(c, want);
}

#[test]
fn survey_up_to_four() {
    for d in 1..=4 {
        for r in survey(d).unwrap() {
            assert!(r.consistent(), "{r:?}");
        }
    }
}

fn gl_table(d: usize, n: usize) -> OrbitTable {
    let g = WeylGroup::new(Arc::new(CartanDatum::gl(d).unwrap())).unwrap();
    OrbitTable::build(g, &QfSpec::Box(n)).unwrap()
}

#[test]
fn irreducible_dimensions_and_wedderburn() {
    let t = irreducible_dims(&gl_table(2, 2)).unwrap();
    let dims: Vec<(Vec<usize>, u64)> = t.entries.iter().map(|e| (e.label.clone(), e.dim_from_counts)).collect();
    assert_eq!(dims, vec![(vec![1, 1], 1), (vec![2], 3)]);
    assert_eq!((t.wedderburn_sum, t.schur_dim), (10, 10));
    let t = irreducible_dims(&gl_table(2, 1)).unwrap();
    assert!(t.wedderburn_holds && t.schur_dim == 1);
    for (d, n) in [(2, 3), (3, 1), (3, 2), (3, 3)] {
        let t = irreducible_dims(&gl_table(d, n)).unwrap();
        assert!(t.wedderburn_holds, "gl({d}) box({n}): {} vs {}", t.wedderburn_sum, t.schur_dim);
    }
    let csv = counts_csv(&t.profiles);
    assert!(csv.starts_with("lambda,gamma,q,count\n"));
}
