use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted for abstract Cartan types.
pub const MAX_RANK: usize = 8;
/// Largest `d` accepted for the gl/so/sp coordinate models.
pub const MAX_EPSILON_RANK: usize = 6;

/// A weight in storage coordinates.
///
/// For abstract types these are fundamental-weight coordinates. For the
/// gl/so/sp models they are epsilon coordinates, doubled when the datum
/// carries the half-integer flag.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scaled(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A subset of the simple reflections, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub fn empty() -> Self {
        Subset(0)
    }

    pub fn full(rank: usize) -> Self {
        Subset(((1u64 << rank) - 1) as u32)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Subset(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum FiniteType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FiniteType {
    pub fn parse(s: &str) -> Option<FiniteType> {
        Some(match s {
            "A" => FiniteType::A,
            "B" => FiniteType::B,
            "C" => FiniteType::C,
            "D" => FiniteType::D,
            "E" => FiniteType::E,
            "F" => FiniteType::F,
            "G" => FiniteType::G,
            _ => return None,
        })
    }
}

/// Which realization of the root datum is in use.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DatumKind {
    /// Abstract Cartan type in fundamental-weight coordinates. `transposed`
    /// marks the dual of a non-simply-laced type whose dual keeps its letter.
    Abstract {
        ty: FiniteType,
        rank: usize,
        transposed: bool,
    },
    /// gl(d) on Z^d.
    Gl { d: usize },
    /// so(2d+1) on Z^d, type B_d with the short root first.
    So { d: usize },
    /// sp(2d) on Z^d, type C_d with the long root first.
    Sp { d: usize },
}

/// A root datum: Cartan matrix plus a realization of roots and coroots on a
/// lattice.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CartanDatum {
    kind: DatumKind,
    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`.
    cartan: Vec<Vec<i64>>,
    /// Simple roots in undoubled storage coordinates.
    roots: Vec<Weight>,
    /// Simple coroots as integer functionals on undoubled coordinates.
    coroots: Vec<Vec<i64>>,
    doubled: bool,
}

fn abstract_matrix(ty: FiniteType, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::UnsupportedType(format!("{ty:?}{n}"));
    let ok = match ty {
        FiniteType::A => n >= 1,
        FiniteType::B | FiniteType::C => n >= 2,
        FiniteType::D => n >= 3,
        FiniteType::E => (6..=8).contains(&n),
        FiniteType::F => n == 4,
        FiniteType::G => n == 2,
    };
    if n > MAX_RANK {
        return Err(Error::RankCap { rank: n, cap: MAX_RANK });
    }
    if !ok {
        return Err(bad());
    }
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match ty {
        FiniteType::A | FiniteType::B | FiniteType::C | FiniteType::F | FiniteType::G => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        FiniteType::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        FiniteType::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    match ty {
        FiniteType::B => a[n - 1][n - 2] = -2,
        FiniteType::C => a[n - 2][n - 1] = -2,
        FiniteType::F => a[2][1] = -2,
        FiniteType::G => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

impl CartanDatum {
    /// Abstract Cartan type in fundamental-weight coordinates.
    pub fn abstract_type(ty: FiniteType, rank: usize) -> Result<Self> {
        let cartan = abstract_matrix(ty, rank)?;
        Ok(Self::from_matrix(
            DatumKind::Abstract { ty, rank, transposed: false },
            cartan,
        ))
    }

    fn from_matrix(kind: DatumKind, cartan: Vec<Vec<i64>>) -> Self {
        let n = cartan.len();
        let roots = (0..n).map(|j| Weight((0..n).map(|k| cartan[k][j]).collect())).collect();
        let coroots = (0..n).map(|i| unit(n, i)).collect();
        CartanDatum { kind, cartan, roots, coroots, doubled: false }
    }

    pub fn gl(d: usize) -> Result<Self> {
        Self::epsilon(DatumKind::Gl { d }, false)
    }

    pub fn so(d: usize, doubled: bool) -> Result<Self> {
        Self::epsilon(DatumKind::So { d }, doubled)
    }

    pub fn sp(d: usize, doubled: bool) -> Result<Self> {
        Self::epsilon(DatumKind::Sp { d }, doubled)
    }

    fn epsilon(kind: DatumKind, doubled: bool) -> Result<Self> {
        let d = match kind {
            DatumKind::Gl { d } | DatumKind::So { d } | DatumKind::Sp { d } => d,
            DatumKind::Abstract { .. } => unreachable!(),
        };
        if d > MAX_EPSILON_RANK {
            return Err(Error::RankCap { rank: d, cap: MAX_EPSILON_RANK });
        }
        let (roots, coroots): (Vec<Weight>, Vec<Vec<i64>>) = match kind {
            DatumKind::Gl { .. } => {
                if d == 0 {
                    return Err(Error::UnsupportedType("gl(0)".into()));
                }
                (0..d - 1)
                    .map(|i| {
                        let mut v = vec![0; d];
                        v[i] = 1;
                        v[i + 1] = -1;
                        (Weight(v.clone()), v)
                    })
                    .unzip()
            }
            DatumKind::So { .. } | DatumKind::Sp { .. } => {
                if d < 2 {
                    return Err(Error::UnsupportedType(format!("{kind:?} needs d >= 2")));
                }
                let long_first = matches!(kind, DatumKind::Sp { .. });
                let mut pairs = Vec::new();
                let e0 = unit(d, 0);
                let two_e0: Vec<i64> = e0.iter().map(|x| 2 * x).collect();
                if long_first {
                    pairs.push((Weight(two_e0), e0));
                } else {
                    pairs.push((Weight(e0), two_e0));
                }
                for i in 1..d {
                    let mut v = vec![0; d];
                    v[i] = 1;
                    v[i - 1] = -1;
                    pairs.push((Weight(v.clone()), v));
                }
                pairs.into_iter().unzip()
            }
            DatumKind::Abstract { .. } => unreachable!(),
        };
        let n = roots.len();
        let cartan = (0..n)
            .map(|i| (0..n).map(|j| dot(&coroots[i], &roots[j].0)).collect())
            .collect();
        Ok(CartanDatum { kind, cartan, roots, coroots, doubled })
    }

    /// The Langlands dual datum: transposed Cartan matrix, roots and
    /// coroots exchanged.
    pub fn dual(&self) -> CartanDatum {
        match &self.kind {
            DatumKind::Abstract { ty, rank, transposed } => {
                let (ty, transposed) = match ty {
                    FiniteType::B => (FiniteType::C, false),
                    FiniteType::C => (FiniteType::B, false),
                    FiniteType::F | FiniteType::G => (*ty, !transposed),
                    _ => (*ty, false),
                };
                Self::from_matrix(
                    DatumKind::Abstract { ty, rank: *rank, transposed },
                    transpose(&self.cartan),
                )
            }
            DatumKind::Gl { d } => Self::epsilon(DatumKind::Gl { d: *d }, self.doubled).unwrap(),
            DatumKind::So { d } => Self::epsilon(DatumKind::Sp { d: *d }, self.doubled).unwrap(),
            DatumKind::Sp { d } => Self::epsilon(DatumKind::So { d: *d }, self.doubled).unwrap(),
        }
    }

    pub fn kind(&self) -> &DatumKind {
        &self.kind
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Number of weight coordinates.
    pub fn lattice_rank(&self) -> usize {
        match self.kind {
            DatumKind::Abstract { rank, .. } => rank,
            DatumKind::Gl { d } | DatumKind::So { d } | DatumKind::Sp { d } => d,
        }
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn is_doubled(&self) -> bool {
        self.doubled
    }

    /// Coordinate scale: weights are stored multiplied by this.
    pub fn scale(&self) -> i64 {
        if self.doubled {
            2
        } else {
            1
        }
    }

    pub fn is_epsilon(&self) -> bool {
        !matches!(self.kind, DatumKind::Abstract { .. })
    }

    /// Simple root in storage coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        self.roots[i].scaled(self.scale())
    }

    /// Coroot functional applied to storage coordinates, not divided by the
    /// scale. Its sign is the sign of the true pairing.
    pub fn raw_pairing(&self, lambda: &Weight, i: usize) -> i64 {
        dot(&self.coroots[i], &lambda.0)
    }

    /// The pairing `<lambda, alpha_i^vee>`, if it is an integer.
    pub fn pairing(&self, lambda: &Weight, i: usize) -> Result<i64> {
        let raw = self.raw_pairing(lambda, i);
        if raw % self.scale() != 0 {
            return Err(Error::NonIntegralPairing { weight: self.format_weight(lambda), index: i + 1 });
        }
        Ok(raw / self.scale())
    }

    /// `s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, lambda: &Weight, i: usize) -> Weight {
        let raw = self.raw_pairing(lambda, i);
        lambda.sub(&self.roots[i].scaled(raw))
    }

    pub fn check_weight(&self, lambda: &Weight) -> Result<()> {
        if lambda.len() != self.lattice_rank() {
            return Err(Error::WeightShape(lambda.to_string()));
        }
        Ok(())
    }

    /// Human-readable label, e.g. `A2`, `gl(3)`, `so(5)`.
    pub fn label(&self) -> String {
        match &self.kind {
            DatumKind::Abstract { ty, rank, transposed } => {
                format!("{ty:?}{rank}{}", if *transposed { "^t" } else { "" })
            }
            DatumKind::Gl { d } => format!("gl({d})"),
            DatumKind::So { d } => format!("so({})", 2 * d + 1),
            DatumKind::Sp { d } => format!("sp({})", 2 * d),
        }
    }

    /// Weight with coordinates divided by the scale, e.g. `[-1/2,-3/2]`.
    pub fn format_weight(&self, lambda: &Weight) -> String {
        let parts: Vec<String> = lambda
            .0
            .iter()
            .map(|&c| {
                if self.doubled && c % 2 != 0 {
                    format!("{c}/2")
                } else {
                    format!("{}", c / self.scale())
                }
            })
            .collect();
        format!("[{}]", parts.join(","))
    }

    /// Checks that the Cartan matrix is of finite type: `a_ii = 2`,
    /// compatible zero pattern, and a positive definite symmetrization.
    pub fn is_finite_type(&self) -> bool {
        let a = &self.cartan;
        let n = a.len();
        for i in 0..n {
            if a[i][i] != 2 {
                return false;
            }
            for j in 0..n {
                if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                    return false;
                }
            }
        }
        let Some(sym) = symmetrizer(a) else { return false };
        let m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| sym[i].clone() * BigRational::from_integer(a[i][j].into())).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return false;
                }
            }
        }
        (1..=n).all(|k| {
            let minor: Vec<Vec<BigRational>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            crate::linalg::determinant(minor).is_positive()
        })
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Diagonal `d` with `d_i a_ij = d_j a_ji`, found by propagation along the
/// Dynkin diagram.
fn symmetrizer(a: &[Vec<i64>]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::from_integer(1.into()));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = d[i].clone().unwrap() * BigRational::new(a[i][j].into(), a[j][i].into());
                match &d[j] {
                    Some(old) if *old != dj => return None,
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                }
            }
        }
    }
    let d: Vec<BigRational> = d.into_iter().map(Option::unwrap).collect();
    if d.iter().any(|x| x.is_zero() || x.is_negative()) {
        return None;
    }
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_abstract_types_are_finite() {
        let cases = [
            (FiniteType::A, 1..=8),
            (FiniteType::B, 2..=8),
            (FiniteType::C, 2..=8),
            (FiniteType::D, 3..=8),
            (FiniteType::E, 6..=8),
            (FiniteType::F, 4..=4),
            (FiniteType::G, 2..=2),
        ];
        for (ty, ranks) in cases {
            for r in ranks {
                let d = CartanDatum::abstract_type(ty, r).unwrap();
                assert!(d.is_finite_type(), "{}", d.label());
                assert!(d.dual().is_finite_type());
                assert_eq!(d.dual().dual(), d);
            }
        }
    }

    #[test]
    fn known_matrices() {
        let b2 = CartanDatum::abstract_type(FiniteType::B, 2).unwrap();
        assert_eq!(b2.cartan_matrix(), &[vec![2, -1], vec![-2, 2]]);
        let g2 = CartanDatum::abstract_type(FiniteType::G, 2).unwrap();
        assert_eq!(g2.cartan_matrix(), &[vec![2, -3], vec![-1, 2]]);
        assert_eq!(b2.dual().cartan_matrix(), CartanDatum::abstract_type(FiniteType::C, 2).unwrap().cartan_matrix());
        let so5 = CartanDatum::so(2, false).unwrap();
        let sp4 = CartanDatum::sp(2, false).unwrap();
        assert_eq!(so5.dual(), sp4);
        assert_eq!(transpose(so5.cartan_matrix()), sp4.cartan_matrix());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(CartanDatum::abstract_type(FiniteType::A, 99), Err(Error::RankCap { .. })));
        assert!(CartanDatum::abstract_type(FiniteType::E, 5).is_err());
        assert!(CartanDatum::abstract_type(FiniteType::G, 3).is_err());
        let bad = CartanDatum::from_matrix(
            DatumKind::Abstract { ty: FiniteType::A, rank: 2, transposed: false },
            vec![vec![2, -2], vec![-2, 2]],
        );
        assert!(!bad.is_finite_type());
    }

    #[test]
    fn reflections_in_epsilon_models() {
        let so = CartanDatum::so(2, true).unwrap();
        // (1/2, 3/2) stored doubled
        let l = Weight(vec![1, 3]);
        assert_eq!(so.reflect(&l, 0), Weight(vec![-1, 3]));
        assert_eq!(so.reflect(&l, 1), Weight(vec![3, 1]));
        assert_eq!(so.pairing(&l, 0).unwrap(), 1);
        let sp = CartanDatum::sp(2, true).unwrap();
        assert!(sp.pairing(&l, 0).is_err());
        assert_eq!(sp.reflect(&l, 0), Weight(vec![-1, 3]));
    }
}
