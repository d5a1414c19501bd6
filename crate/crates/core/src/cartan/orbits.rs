use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::datum::{CartanDatum, DatumKind, Subset, Weight};
use super::weyl::{WeylElement, WeylGroup};
use crate::error::{Error, Result};

/// Largest box size accepted by `build_orbit_table`.
pub const MAX_BOX: usize = 12;

/// A finite W-stable set of weights, described by a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QfSpec {
    /// Saturation of an explicit weight list.
    Explicit(Vec<Weight>),
    /// `{a : 0 <= a_i <= n-1}` in gl-mode.
    Box(usize),
    /// Half-integer coordinates with `|a_i| <= n` in so/sp-mode.
    Iota(usize),
    /// Integer coordinates with `|a_i| <= n` in so/sp-mode.
    Jmath(usize),
    /// A single regular orbit.
    Regular,
    /// The zero weight.
    Zero,
}

impl fmt::Display for QfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QfSpec::Explicit(ws) => {
                let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                write!(f, "list:{}", parts.join(";"))
            }
            QfSpec::Box(n) => write!(f, "box:{n}"),
            QfSpec::Iota(n) => write!(f, "iota:{n}"),
            QfSpec::Jmath(n) => write!(f, "jmath:{n}"),
            QfSpec::Regular => write!(f, "regular"),
            QfSpec::Zero => write!(f, "zero"),
        }
    }
}

/// The W-orbit of a weight, found by breadth-first search.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub weights: Vec<Weight>,
    /// The unique anti-dominant element.
    pub rep: Weight,
    /// Stabilizer type `{k : <rep, alpha_k^vee> = 0}`.
    pub j: Subset,
}

pub fn weyl_orbit(datum: &CartanDatum, lambda: &Weight) -> Result<Orbit> {
    datum.check_weight(lambda)?;
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(l) = queue.pop_front() {
        for i in 0..datum.rank() {
            let m = datum.reflect(&l, i);
            if seen.insert(m.clone()) {
                queue.push_back(m);
            }
        }
    }
    let rep = seen
        .iter()
        .find(|l| (0..datum.rank()).all(|i| datum.raw_pairing(l, i) <= 0))
        .expect("every orbit has an anti-dominant element")
        .clone();
    let j = stabilizer_type(datum, &rep);
    Ok(Orbit { weights: seen.into_iter().collect(), rep, j })
}

fn stabilizer_type(datum: &CartanDatum, rep: &Weight) -> Subset {
    Subset::from_indices((0..datum.rank()).filter(|&i| datum.raw_pairing(rep, i) == 0))
}

/// One W-orbit in a table, with its parabolic data.
#[derive(Clone, Debug)]
pub struct OrbitData {
    /// Composition label for box/iota/jmath generators.
    pub composition: Option<Vec<usize>>,
    pub rep: Weight,
    pub j: Subset,
    /// Longest element of `W_J`.
    pub theta: WeylElement,
    pub stabilizer_order: usize,
    pub orbit_size: usize,
    /// Minimal length representatives of `W_J \ W`.
    pub min_reps: Vec<WeylElement>,
}

/// Orbits of a W-stable weight set, sorted by anti-dominant representative.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    group: Arc<WeylGroup>,
    spec: String,
    orbits: Vec<OrbitData>,
}

impl OrbitTable {
    pub fn build(group: Arc<WeylGroup>, spec: &QfSpec) -> Result<Self> {
        let datum = group.datum().clone();
        let reps: Vec<(Weight, Option<Vec<usize>>)> = match spec {
            QfSpec::Explicit(ws) => {
                if ws.is_empty() {
                    return Err(Error::OrbitSpec("empty weight list".into()));
                }
                let mut reps = BTreeSet::new();
                for w in ws {
                    reps.insert(weyl_orbit(&datum, w)?.rep);
                }
                reps.into_iter().map(|r| (r, None)).collect()
            }
            QfSpec::Zero => vec![(Weight::zero(datum.lattice_rank()), None)],
            QfSpec::Regular => vec![(regular_rep(&datum), None)],
            QfSpec::Box(n) => box_reps(&datum, *n)?,
            QfSpec::Iota(n) | QfSpec::Jmath(n) => {
                signed_reps(&datum, *n, matches!(spec, QfSpec::Iota(_)))?
            }
        };
        let mut reps = reps;
        reps.sort_by(|a, b| a.0.cmp(&b.0));
        let orbits = reps
            .into_iter()
            .map(|(rep, composition)| Self::orbit_data(&group, rep, composition))
            .collect();
        Ok(OrbitTable { group, spec: spec.to_string(), orbits })
    }

    fn orbit_data(group: &WeylGroup, rep: Weight, composition: Option<Vec<usize>>) -> OrbitData {
        let j = stabilizer_type(group.datum(), &rep);
        let stabilizer_order = group.parabolic(j).len();
        OrbitData {
            composition,
            rep,
            j,
            theta: group.longest_in(j),
            stabilizer_order,
            orbit_size: group.order() / stabilizer_order,
            min_reps: group.elements().filter(|&w| group.is_min_coset_rep(j, w)).collect(),
        }
    }

    /// A table whose slots are given directly by parabolic subsets.
    pub fn from_subsets(group: Arc<WeylGroup>, subsets: &[Subset]) -> Self {
        let n = group.datum().lattice_rank();
        let orbits = subsets
            .iter()
            .map(|&j| {
                let mut d = Self::orbit_data(&group, Weight::zero(n), None);
                let stabilizer_order = group.parabolic(j).len();
                d.j = j;
                d.theta = group.longest_in(j);
                d.stabilizer_order = stabilizer_order;
                d.orbit_size = group.order() / stabilizer_order;
                d.min_reps = group.elements().filter(|&w| group.in_min_coset(j, w)).collect();
                d
            })
            .collect();
        OrbitTable { group, spec: "subsets".into(), orbits }
    }

    /// Slots of `self` followed by slots of `other`, without merging.
    pub fn disjoint_union(&self, other: &OrbitTable) -> Result<OrbitTable> {
        if !Arc::ptr_eq(&self.group, &other.group) && self.group.datum() != other.group.datum() {
            return Err(Error::IncompatibleBlocks("tables over different data".into()));
        }
        let mut orbits = self.orbits.clone();
        orbits.extend(other.orbits.iter().cloned());
        Ok(OrbitTable { group: self.group.clone(), spec: format!("{} + {}", self.spec, other.spec), orbits })
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[OrbitData] {
        &self.orbits
    }

    pub fn get(&self, k: usize) -> &OrbitData {
        &self.orbits[k]
    }

    /// Total number of weights `|Q_f|`.
    pub fn num_weights(&self) -> usize {
        self.orbits.iter().map(|o| o.orbit_size).sum()
    }

    /// Printable label of slot `k`: the composition when known, otherwise
    /// the anti-dominant representative.
    pub fn label(&self, k: usize) -> String {
        let o = &self.orbits[k];
        match &o.composition {
            Some(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            None => self.group.datum().format_weight(&o.rep),
        }
    }

    /// `D_{gamma nu}`: elements minimal in both `W_gamma w` and `w W_nu`.
    pub fn double_coset_reps(&self, gamma: usize, nu: usize) -> Vec<WeylElement> {
        double_coset_reps(&self.group, self.orbits[gamma].j, self.orbits[nu].j)
    }
}

/// `D_J ∩ D_K^{-1}` in canonical order.
pub fn double_coset_reps(group: &WeylGroup, j: Subset, k: Subset) -> Vec<WeylElement> {
    group.elements().filter(|&w| group.in_min_double_coset(j, k, w)).collect()
}

fn regular_rep(datum: &CartanDatum) -> Weight {
    let n = datum.lattice_rank();
    match datum.kind() {
        DatumKind::Abstract { .. } => Weight(vec![-1; n]),
        DatumKind::Gl { .. } => Weight((0..n as i64).collect()),
        DatumKind::So { .. } | DatumKind::Sp { .. } => {
            Weight((1..=n as i64).map(|k| -k * datum.scale()).collect())
        }
    }
}

/// Weakly increasing sequences with entries in `0..n` (gl-mode).
fn box_reps(datum: &CartanDatum, n: usize) -> Result<Vec<(Weight, Option<Vec<usize>>)>> {
    if !matches!(datum.kind(), DatumKind::Gl { .. }) {
        return Err(Error::OrbitSpec("box:n needs gl-mode".into()));
    }
    if n == 0 || n > MAX_BOX {
        return Err(Error::OrbitSpec(format!("box size {n} outside 1..={MAX_BOX}")));
    }
    let d = datum.lattice_rank();
    Ok(compositions(d, n)
        .into_iter()
        .map(|c| {
            let w: Vec<i64> = c.iter().enumerate().flat_map(|(k, &m)| std::iter::repeat(k as i64).take(m)).collect();
            (Weight(w), Some(c))
        })
        .collect())
}

/// Anti-dominant representatives `0 >= a_1 >= ... >= a_d` in so/sp-mode.
fn signed_reps(datum: &CartanDatum, n: usize, half: bool) -> Result<Vec<(Weight, Option<Vec<usize>>)>> {
    if !matches!(datum.kind(), DatumKind::So { .. } | DatumKind::Sp { .. }) {
        return Err(Error::OrbitSpec("iota/jmath need so- or sp-mode".into()));
    }
    if half && !datum.is_doubled() {
        return Err(Error::OrbitSpec("half-integer weights need the doubled flag".into()));
    }
    if n > MAX_BOX || (half && n == 0) {
        return Err(Error::OrbitSpec(format!("bound {n} out of range")));
    }
    let d = datum.lattice_rank();
    let s = datum.scale();
    // Part k counts coordinates of absolute value k (jmath) or k + 1/2 (iota).
    let parts = if half { n } else { n + 1 };
    Ok(compositions(d, parts)
        .into_iter()
        .map(|c| {
            let w: Vec<i64> = c
                .iter()
                .enumerate()
                .flat_map(|(k, &m)| {
                    let v = if half { -(2 * k as i64 + 1) } else { -(k as i64) * s };
                    std::iter::repeat(v).take(m)
                })
                .collect();
            (Weight(w), Some(c))
        })
        .collect())
}

/// Weak compositions of `d` into `parts` parts, in reverse lexicographic
/// order so that the first part is largest first.
pub fn compositions(d: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(d: usize, parts: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            acc.push(d);
            out.push(acc.clone());
            acc.pop();
            return;
        }
        for k in (0..=d).rev() {
            acc.push(k);
            go(d - k, parts - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(d, parts, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::datum::FiniteType;

    fn table(datum: CartanDatum, spec: QfSpec) -> OrbitTable {
        OrbitTable::build(WeylGroup::new(Arc::new(datum)).unwrap(), &spec).unwrap()
    }

    #[test]
    fn sl2_orbit_of_fundamental_weight() {
        let a1 = CartanDatum::abstract_type(FiniteType::A, 1).unwrap();
        let o = weyl_orbit(&a1, &Weight(vec![1])).unwrap();
        assert_eq!(o.weights, vec![Weight(vec![-1]), Weight(vec![1])]);
        assert_eq!(o.rep, Weight(vec![-1]));
        assert!(o.j.is_empty());
        let z = weyl_orbit(&a1, &Weight(vec![0])).unwrap();
        assert_eq!(z.j, Subset::from_indices([0]));
        assert!(weyl_orbit(&a1, &Weight(vec![0, 1])).is_err());
    }

    #[test]
    fn gl2_box2() {
        let t = table(CartanDatum::gl(2).unwrap(), QfSpec::Box(2));
        let labels: Vec<String> = (0..t.len()).map(|k| t.label(k)).collect();
        assert_eq!(labels, ["(2,0)", "(1,1)", "(0,2)"]);
        let js: Vec<usize> = t.orbits().iter().map(|o| o.j.len()).collect();
        assert_eq!(js, [1, 0, 1]);
        assert_eq!(t.num_weights(), 4);
    }

    #[test]
    fn generated_sets_have_the_right_size() {
        for d in 1..=4 {
            for n in 1..=3 {
                let t = table(CartanDatum::gl(d).unwrap(), QfSpec::Box(n));
                assert_eq!(t.num_weights(), n.pow(d as u32));
                for o in t.orbits() {
                    assert_eq!(o.min_reps.len() * o.stabilizer_order, t.group().order());
                }
            }
        }
        for d in 2..=3 {
            for n in 0..=2 {
                let t = table(CartanDatum::so(d, false).unwrap(), QfSpec::Jmath(n));
                assert_eq!(t.num_weights(), (2 * n + 1).pow(d as u32));
            }
            for n in 1..=2 {
                let t = table(CartanDatum::sp(d, true).unwrap(), QfSpec::Iota(n));
                assert_eq!(t.num_weights(), (2 * n).pow(d as u32));
            }
        }
    }

    #[test]
    fn generated_orbits_match_saturation() {
        // Saturating every weight of the box by brute force gives the same
        // orbit representatives.
        let datum = CartanDatum::so(2, false).unwrap();
        let t = table(datum.clone(), QfSpec::Jmath(1));
        let all: Vec<Weight> = (-1..=1).flat_map(|a| (-1..=1).map(move |b| Weight(vec![a, b]))).collect();
        let s = table(datum, QfSpec::Explicit(all));
        let a: Vec<_> = t.orbits().iter().map(|o| (o.rep.clone(), o.j)).collect();
        let b: Vec<_> = s.orbits().iter().map(|o| (o.rep.clone(), o.j)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn stabilizer_types_follow_partial_sums() {
        // gl(4), composition (1,2,1): J excludes the partial sums 1 and 3.
        let t = table(CartanDatum::gl(4).unwrap(), QfSpec::Box(3));
        let k = t.orbits().iter().position(|o| o.composition == Some(vec![1, 2, 1])).unwrap();
        assert_eq!(t.get(k).j, Subset::from_indices([1]));
        // jmath: s_1 (the sign change) is in J iff some coordinate is zero.
        let t = table(CartanDatum::sp(3, false).unwrap(), QfSpec::Jmath(2));
        for o in t.orbits() {
            let c = o.composition.as_ref().unwrap();
            assert_eq!(o.j.contains(0), c[0] > 0);
        }
    }

    #[test]
    fn regular_orbit_has_trivial_stabilizer() {
        for datum in [
            CartanDatum::abstract_type(FiniteType::G, 2).unwrap(),
            CartanDatum::gl(3).unwrap(),
            CartanDatum::so(3, true).unwrap(),
        ] {
            let t = table(datum, QfSpec::Regular);
            assert!(t.get(0).j.is_empty());
            assert_eq!(t.get(0).orbit_size, t.group().order());
        }
    }
}
