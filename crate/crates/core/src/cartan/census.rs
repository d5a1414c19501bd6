use std::sync::Arc;

use serde::Serialize;

use super::datum::{CartanDatum, Subset, Weight};
use super::orbits::{OrbitTable, QfSpec};
use super::weyl::{WeylElement, WeylGroup};
use crate::error::{Error, Result};

/// `(theta_J, w+)`: the longest element of `W_J` and of `W_J w W_K`.
pub fn longest_elements(group: &WeylGroup, j: Subset, w: WeylElement, k: Subset) -> (WeylElement, WeylElement) {
    let coset = group.double_coset(j, w, k);
    let top = *coset.iter().max_by_key(|&&x| group.len(x)).unwrap();
    debug_assert_eq!(coset.iter().filter(|&&x| group.len(x) == group.len(top)).count(), 1);
    (group.longest_in(j), top)
}

/// Longest element of `W_J w W_K ∩ D_J ∩ D_M^{-1}` for `M ⊆ K`.
pub fn longest_in_coset_intersection(
    group: &WeylGroup,
    j: Subset,
    w: WeylElement,
    k: Subset,
    m: Subset,
) -> Result<WeylElement> {
    if !m.is_subset_of(k) {
        return Err(Error::NotSubset(m.to_string(), k.to_string()));
    }
    let cands: Vec<WeylElement> = group
        .double_coset(j, w, k)
        .into_iter()
        .filter(|&x| group.in_min_double_coset(j, m, x))
        .collect();
    let best = cands.iter().map(|&x| group.len(x)).max().expect("the coset meets D_J");
    let tops: Vec<_> = cands.into_iter().filter(|&x| group.len(x) == best).collect();
    assert_eq!(tops.len(), 1, "longest element of the intersection is unique");
    Ok(tops[0])
}

/// Sum of the positive roots of the root subsystem spanned by `J`, in
/// lattice storage coordinates.
pub fn omega_weight(group: &WeylGroup, j: Subset) -> Weight {
    let n = group.datum().lattice_rank();
    group
        .positive_roots()
        .iter()
        .filter(|b| b.iter().enumerate().all(|(i, &c)| c == 0 || j.contains(i)))
        .fold(Weight::zero(n), |acc, b| acc.add(&group.root_to_weight(b)))
}

/// One record of the census of `Xi_f`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CensusRecord {
    pub gamma: String,
    pub w_word: String,
    pub nu: String,
    #[serde(rename = "dim_F_gamma")]
    pub dim_f_gamma: usize,
    #[serde(rename = "dim_Z")]
    pub dim_z: usize,
    pub coset_size: usize,
    pub closure_cells: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrbitSummary {
    pub label: String,
    pub rep: String,
    pub stabilizer_type: String,
    pub orbit_size: usize,
    pub dim_partial_flag: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Census {
    pub datum: String,
    pub weights: String,
    pub group_order: usize,
    pub num_weights: usize,
    pub total: usize,
    pub orbits: Vec<OrbitSummary>,
    pub records: Vec<CensusRecord>,
}

/// Complex dimension of the partial flag variety `G/P_J`.
pub fn partial_flag_dim(group: &WeylGroup, j: Subset) -> usize {
    group.num_positive_roots() - group.len(group.longest_in(j))
}

pub fn census(table: &OrbitTable) -> Census {
    let g = table.group();
    let dims: Vec<usize> = table.orbits().iter().map(|o| partial_flag_dim(g, o.j)).collect();
    let mut records = Vec::new();
    for gamma in 0..table.len() {
        for nu in 0..table.len() {
            let (j, k) = (table.get(gamma).j, table.get(nu).j);
            let reps = table.double_coset_reps(gamma, nu);
            for &w in &reps {
                let closure = reps.iter().filter(|&&y| g.bruhat_leq(y, w)).map(|&y| g.display(y)).collect();
                records.push(CensusRecord {
                    gamma: table.label(gamma),
                    w_word: g.display(w),
                    nu: table.label(nu),
                    dim_f_gamma: dims[gamma],
                    dim_z: dims[gamma] + dims[nu],
                    coset_size: g.double_coset(j, w, k).len(),
                    closure_cells: closure,
                });
            }
        }
    }
    Census {
        datum: g.datum().label(),
        weights: table.spec().to_string(),
        group_order: g.order(),
        num_weights: table.num_weights(),
        total: records.len(),
        orbits: table
            .orbits()
            .iter()
            .enumerate()
            .map(|(k, o)| OrbitSummary {
                label: table.label(k),
                rep: g.datum().format_weight(&o.rep),
                stabilizer_type: o.j.to_string(),
                orbit_size: o.orbit_size,
                dim_partial_flag: dims[k],
            })
            .collect(),
        records,
    }
}

/// Per-pair block sizes `|D_{gamma nu}|`.
pub fn block_sizes(table: &OrbitTable) -> Vec<Vec<usize>> {
    (0..table.len())
        .map(|g| (0..table.len()).map(|n| table.double_coset_reps(g, n).len()).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LanglandsReport {
    pub datum: String,
    pub dual: String,
    pub total: usize,
    pub total_dual: usize,
    pub blocks: Vec<Vec<usize>>,
    pub blocks_dual: Vec<Vec<usize>>,
    pub equal: bool,
}

/// Compares the census of `(datum, spec)` with that of the dual datum.
pub fn langlands_dim_check(datum: &CartanDatum, spec: &QfSpec) -> Result<LanglandsReport> {
    let dual = datum.dual();
    let mut tables = Vec::new();
    for d in [datum.clone(), dual.clone()] {
        let t = OrbitTable::build(WeylGroup::new(Arc::new(d.clone()))?, spec)?;
        for o in t.orbits() {
            for i in 0..d.rank() {
                d.pairing(&o.rep, i).map_err(|_| {
                    Error::OrbitSpec(format!("{spec} is not a set of integral weights on {}", d.label()))
                })?;
            }
        }
        tables.push(t);
    }
    let blocks = block_sizes(&tables[0]);
    let blocks_dual = block_sizes(&tables[1]);
    let total = blocks.iter().flatten().sum();
    let total_dual = blocks_dual.iter().flatten().sum();
    Ok(LanglandsReport {
        datum: datum.label(),
        dual: dual.label(),
        total,
        total_dual,
        equal: total == total_dual && blocks == blocks_dual,
        blocks,
        blocks_dual,
    })
}
