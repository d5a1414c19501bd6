//! Nilpotent orbits of `GL_d`, point counts of partial Springer fibers over
//! finite fields and the dimensions of irreducible Schur algebra modules.
//!
//! The fiber over a nilpotent `x` of Jordan type `lambda` for the step
//! composition `gamma` is the set of flags `0 = V_0 ⊂ ... ⊂ V_n = F^d` with
//! `dim V_k / V_{k-1} = gamma_k` and `x V_k ⊆ V_{k-1}`.

pub mod field;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::{DatumKind, OrbitTable};
use crate::error::{Error, Result};
use crate::schur::dim_schur;
use field::{Field, FIELD_SIZES};

pub const MAX_PARTITION_SIZE: usize = 6;
pub const MAX_FIBER_SIZE: usize = 4;

pub type Partition = Vec<usize>;

/// A partition with its transpose and `n(lambda) = sum (i-1) lambda_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionData {
    pub parts: Partition,
    pub transpose: Partition,
    pub n: usize,
}

impl PartitionData {
    pub fn new(parts: Partition) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::OutOfRange(format!("{parts:?} is not a partition")));
        }
        let n = parts.iter().enumerate().map(|(i, p)| i * p).sum();
        Ok(PartitionData { transpose: transpose(&parts), parts, n })
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// Partitions of `d` in reverse lexicographic order, which refines dominance.
pub fn partitions(d: usize) -> Result<Vec<Partition>> {
    if !(1..=MAX_PARTITION_SIZE).contains(&d) {
        return Err(Error::OutOfRange(format!("partition size {d}")));
    }
    fn go(rest: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Compositions of `d` with positive parts.
pub fn compositions(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    (1..=d)
        .flat_map(|first| {
            compositions(d - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

pub fn transpose(lambda: &[usize]) -> Partition {
    let max = lambda.first().copied().unwrap_or(0);
    (1..=max).map(|k| lambda.iter().filter(|&&p| p >= k).count()).collect()
}

/// `a` dominates `b` (same size assumed).
pub fn dominates(a: &[usize], b: &[usize]) -> bool {
    let n = a.len().max(b.len());
    let (mut sa, mut sb) = (0, 0);
    (0..n).all(|i| {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        sa >= sb
    })
}

/// Complex dimension of the nilpotent orbit of Jordan type `lambda`.
pub fn orbit_dim(lambda: &[usize]) -> usize {
    let d: usize = lambda.iter().sum();
    d * d - transpose(lambda).iter().map(|c| c * c).sum::<usize>()
}

/// `dim G / P_gamma`.
pub fn flag_variety_dim(gamma: &[usize]) -> usize {
    let d: usize = gamma.iter().sum();
    (d * d - gamma.iter().map(|g| g * g).sum::<usize>()) / 2
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`,
/// by stripping horizontal strips for the largest entry.
pub fn kostka(lambda: &[usize], mu: &[usize]) -> u64 {
    let Some((&last, rest)) = mu.split_last() else {
        return u64::from(lambda.iter().all(|&p| p == 0));
    };
    if lambda.iter().sum::<usize>() != mu.iter().sum::<usize>() {
        return 0;
    }
    // nu ⊆ lambda with lambda/nu a horizontal strip of size `last`
    fn strips(lambda: &[usize], i: usize, left: usize, nu: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == lambda.len() {
            if left == 0 {
                out.push(nu.clone());
            }
            return;
        }
        let floor = lambda.get(i + 1).copied().unwrap_or(0);
        for take in 0..=left.min(lambda[i] - floor) {
            nu.push(lambda[i] - take);
            strips(lambda, i + 1, left - take, nu, out);
            nu.pop();
        }
    }
    let mut out = Vec::new();
    strips(lambda, 0, last, &mut Vec::new(), &mut out);
    out.iter().map(|nu| kostka(nu, rest)).sum()
}

/// Fibers are nonempty exactly below the Richardson orbit of `P_gamma`.
pub fn nonempty_by_dominance(lambda: &[usize], gamma: &[usize]) -> bool {
    let mut g: Vec<usize> = gamma.iter().copied().filter(|&x| x > 0).collect();
    g.sort_unstable_by(|a, b| b.cmp(a));
    dominates(&transpose(&g), lambda)
}

/// `x e_j = e_{j-1}` inside each Jordan block.
fn apply_nilpotent(lambda: &[usize], v: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; v.len()];
    let mut o = 0;
    for &m in lambda {
        for j in 1..m {
            out[o + j - 1] = v[o + j];
        }
        o += m;
    }
    out
}

fn check_pair(lambda: &[usize], gamma: &[usize]) -> Result<usize> {
    PartitionData::new(lambda.to_vec())?;
    let d: usize = lambda.iter().sum();
    if gamma.iter().sum::<usize>() != d || gamma.contains(&0) {
        return Err(Error::OutOfRange(format!("{gamma:?} is not a composition of {d}")));
    }
    if d == 0 || d > MAX_FIBER_SIZE {
        return Err(Error::OutOfRange(format!("fiber size {d}, cap {MAX_FIBER_SIZE}")));
    }
    Ok(d)
}

struct FlagCounter<'a> {
    f: Field,
    lambda: &'a [usize],
    gamma: &'a [usize],
    d: usize,
    memo: HashMap<(usize, Vec<Vec<u8>>), u64>,
    echelon: HashMap<(usize, usize), Vec<Vec<Vec<u8>>>>,
}

impl FlagCounter<'_> {
    fn count(&mut self, level: usize, v: Vec<Vec<u8>>) -> u64 {
        if level == self.gamma.len() {
            return 1;
        }
        if let Some(&c) = self.memo.get(&(level, v.clone())) {
            return c;
        }
        let (f, d) = (&self.f, self.d);
        // x^{-1}(V) as the kernel of v -> x v mod V
        let cols: Vec<Vec<u8>> = (0..d)
            .map(|c| {
                let mut e = vec![0u8; d];
                e[c] = 1;
                let mut xe = apply_nilpotent(self.lambda, &e);
                f.reduce(&v, &mut xe);
                xe
            })
            .collect();
        let m: Vec<Vec<u8>> = (0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let pre: Vec<Vec<u8>> = f
            .kernel(m, d)
            .into_iter()
            .map(|mut w| {
                f.reduce(&v, &mut w);
                w
            })
            .collect();
        let complement = f.rref(pre);
        let r = self.gamma[level];
        let ms = complement.len();
        let mut total = 0;
        if r <= ms {
            let shapes = self.echelon.entry((r, ms)).or_insert_with(|| f.echelon_matrices(r, ms)).clone();
            for a in shapes {
                let mut rows = v.clone();
                for arow in &a {
                    let mut nv = vec![0u8; d];
                    for (c, &coef) in complement.iter().zip(arow) {
                        self.f.axpy(&mut nv, coef, c);
                    }
                    rows.push(nv);
                }
                let u = self.f.rref(rows);
                total += self.count(level + 1, u);
            }
        }
        self.memo.insert((level, v), total);
        total
    }
}

/// Exact number of `F_q`-points of the fiber, by enumerating echelon forms.
pub fn count_stable_flags(lambda: &[usize], gamma: &[usize], q: u32) -> Result<u64> {
    let d = check_pair(lambda, gamma)?;
    let mut c = FlagCounter {
        f: Field::new(q)?,
        lambda,
        gamma,
        d,
        memo: HashMap::new(),
        echelon: HashMap::new(),
    };
    Ok(c.count(0, Vec::new()))
}

/// Point counts at several `q` with the interpolating polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FqCountRecord {
    pub lambda: Partition,
    pub gamma: Vec<usize>,
    pub counts: Vec<(u32, u64)>,
    /// Coefficients in increasing degree.
    pub coefficients: Vec<i64>,
    pub dimension: Option<usize>,
    pub top_coefficient: i64,
}

impl FqCountRecord {
    pub fn is_empty(&self) -> bool {
        self.dimension.is_none()
    }
}

/// Newton interpolation through `points`, returned in the monomial basis.
fn interpolate(points: &[(u32, u64)]) -> Vec<BigRational> {
    let n = points.len();
    let xs: Vec<BigRational> = points.iter().map(|&(x, _)| BigRational::from_integer(x.into())).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|&(_, y)| BigRational::from_integer(y.into())).collect();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / (xs[i].clone() - xs[i - k].clone());
        }
    }
    let mut poly = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for i in 0..n {
            if i + 1 < n {
                next[i + 1] += poly[i].clone();
            }
            next[i] -= poly[i].clone() * xs[k].clone();
        }
        next[0] += dd[k].clone();
        poly = next;
    }
    poly
}

fn evaluate(coeffs: &[i64], x: u32) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, &c| acc * BigInt::from(x) + BigInt::from(c))
}

/// Fits the count polynomial. Its degree is at most `dim G/P_gamma`, so that
/// many plus one samples determine it and one more sample checks it.
pub fn fiber_profile(lambda: &[usize], gamma: &[usize]) -> Result<FqCountRecord> {
    check_pair(lambda, gamma)?;
    let bound = flag_variety_dim(gamma);
    let needed = bound + 2;
    if needed > FIELD_SIZES.len() {
        return Err(Error::OutOfRange(format!("degree bound {bound} needs {needed} fields")));
    }
    let qs = &FIELD_SIZES[..needed];
    let counts: Vec<(u32, u64)> =
        qs.par_iter().map(|&q| count_stable_flags(lambda, gamma, q).map(|c| (q, c))).collect::<Result<_>>()?;
    let fit = interpolate(&counts[..bound + 1]);
    let mut coefficients = Vec::with_capacity(fit.len());
    for c in &fit {
        let n = c.is_integer().then(|| c.to_integer().to_i64()).flatten().ok_or_else(|| {
            Error::NotPolynomial(format!("lambda {lambda:?}, gamma {gamma:?}: coefficient {c}"))
        })?;
        coefficients.push(n);
    }
    while coefficients.last() == Some(&0) {
        coefficients.pop();
    }
    for &(q, c) in &counts {
        if evaluate(&coefficients, q) != BigInt::from(c) {
            return Err(Error::NotPolynomial(format!("lambda {lambda:?}, gamma {gamma:?}: mismatch at q = {q}")));
        }
    }
    let dimension = coefficients.len().checked_sub(1);
    let top_coefficient = coefficients.last().copied().unwrap_or(0);
    Ok(FqCountRecord { lambda: lambda.to_vec(), gamma: gamma.to_vec(), counts, coefficients, dimension, top_coefficient })
}

/// Equality in `2 dim fiber + dim O_lambda <= dim T^*(G/P_gamma)`, fiber nonempty.
pub fn is_relevant(lambda: &[usize], gamma: &[usize]) -> Result<bool> {
    let p = fiber_profile(lambda, gamma)?;
    Ok(relevant(&p))
}

fn relevant(p: &FqCountRecord) -> bool {
    p.dimension.is_some_and(|dim| 2 * dim + orbit_dim(&p.lambda) == 2 * flag_variety_dim(&p.gamma))
}

/// Everything measured about one pair `(lambda, gamma)`.
#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub profile: FqCountRecord,
    pub nonempty_by_dominance: bool,
    pub orbit_dim: usize,
    pub total_dim: usize,
    pub relevant: bool,
    pub inequality_holds: bool,
    pub kostka: u64,
}

impl PairRecord {
    pub fn consistent(&self) -> bool {
        let nonempty = !self.profile.is_empty();
        let top = u64::try_from(self.profile.top_coefficient).unwrap_or(0);
        nonempty == self.nonempty_by_dominance
            && self.relevant == nonempty
            && self.inequality_holds
            && (if nonempty { top } else { 0 }) == self.kostka
    }
}

pub fn pair_record(lambda: &[usize], gamma: &[usize]) -> Result<PairRecord> {
    let profile = fiber_profile(lambda, gamma)?;
    let od = orbit_dim(lambda);
    let total = 2 * flag_variety_dim(gamma);
    Ok(PairRecord {
        nonempty_by_dominance: nonempty_by_dominance(lambda, gamma),
        orbit_dim: od,
        total_dim: total,
        relevant: relevant(&profile),
        inequality_holds: profile.dimension.is_none_or(|dim| 2 * dim + od <= total),
        kostka: kostka(&transpose(lambda), gamma),
        profile,
    })
}

/// All pairs of a partition and a composition of `d`.
pub fn survey(d: usize) -> Result<Vec<PairRecord>> {
    if d > MAX_FIBER_SIZE {
        return Err(Error::OutOfRange(format!("fiber size {d}, cap {MAX_FIBER_SIZE}")));
    }
    let pairs: Vec<(Partition, Vec<usize>)> =
        partitions(d)?.into_iter().flat_map(|l| compositions(d).into_iter().map(move |g| (l.clone(), g))).collect();
    pairs.par_iter().map(|(l, g)| pair_record(l, g)).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IrrepEntry {
    /// `lambda^t` for the Jordan type `lambda`.
    pub label: Partition,
    pub jordan_type: Partition,
    pub dim_from_counts: u64,
    pub dim_from_kostka: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepTable {
    pub datum: String,
    pub weights: String,
    pub entries: Vec<IrrepEntry>,
    pub wedderburn_sum: u64,
    pub schur_dim: u64,
    pub wedderburn_holds: bool,
    pub profiles: Vec<FqCountRecord>,
}

/// `dim L` is the number of top components over the relevant slots; the
/// Kostka sum is computed alongside and any disagreement is an error.
pub fn irreducible_dims(table: &OrbitTable) -> Result<IrrepTable> {
    let datum = table.group().datum();
    let DatumKind::Gl { d } = datum.kind() else {
        return Err(Error::UnsupportedType(format!("{} (type A general linear data only)", datum.label())));
    };
    let d = *d;
    if d > MAX_FIBER_SIZE {
        return Err(Error::OutOfRange(format!("fiber size {d}, cap {MAX_FIBER_SIZE}")));
    }
    let gammas: Vec<Vec<usize>> = table
        .orbits()
        .iter()
        .map(|o| {
            o.composition
                .as_ref()
                .map(|c| c.iter().copied().filter(|&x| x > 0).collect())
                .ok_or_else(|| Error::UnsupportedType("orbits without a composition".into()))
        })
        .collect::<Result<_>>()?;
    let mut distinct: Vec<Vec<usize>> = gammas.clone();
    distinct.sort();
    distinct.dedup();
    let lambdas = partitions(d)?;
    let jobs: Vec<(Partition, Vec<usize>)> =
        lambdas.iter().flat_map(|l| distinct.iter().map(move |g| (l.clone(), g.clone()))).collect();
    let records: BTreeMap<(Partition, Vec<usize>), PairRecord> = jobs
        .par_iter()
        .map(|(l, g)| pair_record(l, g).map(|r| ((l.clone(), g.clone()), r)))
        .collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for l in &lambdas {
        let (mut by_counts, mut by_kostka) = (0u64, 0u64);
        for g in &gammas {
            let r = &records[&(l.clone(), g.clone())];
            if !r.consistent() {
                return Err(Error::CrossCheck(format!(
                    "lambda {l:?}, gamma {g:?}: counts give top {} (dim {:?}), Kostka gives {}",
                    r.profile.top_coefficient, r.profile.dimension, r.kostka
                )));
            }
            if r.relevant {
                by_counts += r.profile.top_coefficient as u64;
            }
            by_kostka += r.kostka;
        }
        if by_counts != by_kostka {
            return Err(Error::CrossCheck(format!("lambda {l:?}: {by_counts} vs {by_kostka}")));
        }
        if by_counts > 0 {
            entries.push(IrrepEntry {
                label: transpose(l),
                jordan_type: l.clone(),
                dim_from_counts: by_counts,
                dim_from_kostka: by_kostka,
            });
        }
    }
    let wedderburn_sum = entries.iter().map(|e| e.dim_from_counts.pow(2)).sum();
    let schur_dim = dim_schur(table) as u64;
    Ok(IrrepTable {
        datum: datum.label(),
        weights: table.spec().to_string(),
        entries,
        wedderburn_sum,
        schur_dim,
        wedderburn_holds: wedderburn_sum == schur_dim,
        profiles: records.into_values().map(|r| r.profile).collect(),
    })
}

/// `lambda,gamma,q,count` rows.
pub fn counts_csv(records: &[FqCountRecord]) -> String {
    let show = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::from("lambda,gamma,q,count\n");
    for r in records {
        for (q, c) in &r.counts {
            out.push_str(&format!("{},{},{q},{c}\n", show(&r.lambda), show(&r.gamma)));
        }
    }
    out
}

#[cfg(test)]
mod tests;
