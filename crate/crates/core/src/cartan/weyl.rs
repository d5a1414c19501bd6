use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::datum::{CartanDatum, DatumKind, FiniteType, Subset, Weight};
use crate::error::{Error, Result};

/// Largest Weyl group that will be enumerated.
pub const MAX_GROUP_ORDER: usize = 60_000;

/// An element of an enumerated Weyl group.
///
/// The index is a position in the group's canonical table, which is sorted
/// by length and then by the lexicographically least reduced word. Two
/// elements are equal exactly when their canonical keys `w(rho)` agree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeylElement(pub u32);

impl WeylElement {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite Weyl group with multiplication tables.
#[derive(Debug)]
pub struct WeylGroup {
    datum: Arc<CartanDatum>,
    rank: usize,
    keys: Vec<Vec<i64>>,
    words: Vec<Vec<u8>>,
    lens: Vec<u32>,
    index: HashMap<Vec<i64>, u32>,
    lmul: Vec<u32>,
    rmul: Vec<u32>,
    inv: Vec<u32>,
    ldesc: Vec<u32>,
    rdesc: Vec<u32>,
    /// All roots in simple-root coordinates, positive ones first.
    roots: Vec<Vec<i64>>,
    num_positive: usize,
}

/// Order of the Weyl group of a datum, from the classification.
pub fn weyl_order(datum: &CartanDatum) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    match *datum.kind() {
        DatumKind::Gl { d } => fact(d),
        DatumKind::So { d } | DatumKind::Sp { d } => fact(d) << d,
        DatumKind::Abstract { ty, rank, .. } => match ty {
            FiniteType::A => fact(rank + 1),
            FiniteType::B | FiniteType::C => fact(rank) << rank,
            FiniteType::D => fact(rank) << (rank - 1),
            FiniteType::E => match rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            FiniteType::F => 1152,
            FiniteType::G => 12,
        },
    }
}

impl WeylGroup {
    pub fn new(datum: Arc<CartanDatum>) -> Result<Arc<Self>> {
        let order = weyl_order(&datum);
        if order > MAX_GROUP_ORDER as u128 {
            return Err(Error::GroupTooLarge { order, cap: MAX_GROUP_ORDER });
        }
        let a = datum.cartan_matrix().to_vec();
        let r = a.len();
        let act = |v: &[i64], i: usize| -> Vec<i64> {
            let c = v[i];
            (0..r).map(|k| v[k] - c * a[k][i]).collect()
        };

        // Breadth-first search from rho by left multiplication.
        let rho = vec![1i64; r];
        let mut keys = vec![rho.clone()];
        let mut lens = vec![0u32];
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::from([(rho, 0)]);
        let mut frontier = vec![0usize];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for i in 0..r {
                    if keys[u][i] <= 0 {
                        continue;
                    }
                    let v = act(&keys[u], i);
                    if !seen.contains_key(&v) {
                        seen.insert(v.clone(), keys.len());
                        next.push(keys.len());
                        keys.push(v);
                        lens.push(level);
                    }
                }
            }
            frontier = next;
        }
        assert_eq!(keys.len() as u128, order, "enumeration disagrees with the group order");

        // Lexicographically least reduced words, built in order of length.
        let mut words: Vec<Vec<u8>> = vec![Vec::new(); keys.len()];
        for u in 1..keys.len() {
            let i = (0..r).find(|&i| keys[u][i] < 0).unwrap();
            let v = seen[&act(&keys[u], i)];
            let mut w = vec![i as u8];
            w.extend_from_slice(&words[v]);
            words[u] = w;
        }

        let mut order_ix: Vec<usize> = (0..keys.len()).collect();
        order_ix.sort_by(|&x, &y| (lens[x], &words[x]).cmp(&(lens[y], &words[y])));
        let keys: Vec<Vec<i64>> = order_ix.iter().map(|&k| keys[k].clone()).collect();
        let words: Vec<Vec<u8>> = order_ix.iter().map(|&k| words[k].clone()).collect();
        let lens: Vec<u32> = order_ix.iter().map(|&k| lens[k]).collect();
        let index: HashMap<Vec<i64>, u32> =
            keys.iter().enumerate().map(|(k, v)| (v.clone(), k as u32)).collect();
        let n = keys.len();

        let mut lmul = vec![0u32; n * r];
        let mut ldesc = vec![0u32; n];
        for u in 0..n {
            for i in 0..r {
                lmul[u * r + i] = index[&act(&keys[u], i)];
                if keys[u][i] < 0 {
                    ldesc[u] |= 1 << i;
                }
            }
        }
        let mut inv = vec![0u32; n];
        for u in 0..n {
            let mut x = 0u32;
            for &i in &words[u] {
                x = lmul[x as usize * r + i as usize];
            }
            inv[u] = x;
        }
        let mut rmul = vec![0u32; n * r];
        let mut rdesc = vec![0u32; n];
        for u in 0..n {
            for i in 0..r {
                let v = inv[lmul[inv[u] as usize * r + i] as usize];
                rmul[u * r + i] = v;
                if lens[v as usize] < lens[u] {
                    rdesc[u] |= 1 << i;
                }
            }
        }

        let roots = root_system(&a);
        let num_positive = roots.iter().filter(|b| b.iter().all(|&c| c >= 0)).count();
        Ok(Arc::new(WeylGroup {
            datum,
            rank: r,
            keys,
            words,
            lens,
            index,
            lmul,
            rmul,
            inv,
            ldesc,
            rdesc,
            roots,
            num_positive,
        }))
    }

    pub fn datum(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + Clone {
        (0..self.keys.len() as u32).map(WeylElement)
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement(0)
    }

    pub fn longest(&self) -> WeylElement {
        WeylElement(self.keys.len() as u32 - 1)
    }

    pub fn len(&self, w: WeylElement) -> usize {
        self.lens[w.index()] as usize
    }

    /// Lexicographically least reduced word, with 0-based letters.
    pub fn word(&self, w: WeylElement) -> &[u8] {
        &self.words[w.index()]
    }

    /// Canonical key `w(rho)` in fundamental-weight coordinates.
    pub fn key(&self, w: WeylElement) -> &[i64] {
        &self.keys[w.index()]
    }

    pub fn from_key(&self, key: &[i64]) -> Option<WeylElement> {
        self.index.get(key).map(|&k| WeylElement(k))
    }

    pub fn simple(&self, i: usize) -> WeylElement {
        self.lmul(i, self.identity())
    }

    /// `s_i w`.
    pub fn lmul(&self, i: usize, w: WeylElement) -> WeylElement {
        WeylElement(self.lmul[w.index() * self.rank + i])
    }

    /// `w s_i`.
    pub fn rmul(&self, w: WeylElement, i: usize) -> WeylElement {
        WeylElement(self.rmul[w.index() * self.rank + i])
    }

    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        WeylElement(self.inv[w.index()])
    }

    pub fn mul(&self, a: WeylElement, b: WeylElement) -> WeylElement {
        self.word(a).iter().rev().fold(b, |x, &i| self.lmul(i as usize, x))
    }

    /// Product of an arbitrary word of 0-based letters.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut x = self.identity();
        for &i in word.iter().rev() {
            if i >= self.rank {
                return Err(Error::IndexOutOfRange(i + 1));
            }
            x = self.lmul(i, x);
        }
        Ok(x)
    }

    /// Product of a word that must be reduced.
    pub fn from_reduced_word(&self, word: &[usize]) -> Result<WeylElement> {
        let x = self.from_word(word)?;
        if self.len(x) != word.len() {
            return Err(Error::NotReduced(format_word(word.iter().map(|&i| i as u8))));
        }
        Ok(x)
    }

    /// `{i : l(s_i w) < l(w)}`.
    pub fn left_descents(&self, w: WeylElement) -> Subset {
        Subset(self.ldesc[w.index()])
    }

    /// `{i : l(w s_i) < l(w)}`.
    pub fn right_descents(&self, w: WeylElement) -> Subset {
        Subset(self.rdesc[w.index()])
    }

    pub fn display(&self, w: WeylElement) -> String {
        format_word(self.word(w).iter().copied())
    }

    /// `w(lambda)` on the lattice of the datum.
    pub fn act(&self, w: WeylElement, lambda: &Weight) -> Weight {
        self.word(w).iter().rev().fold(lambda.clone(), |l, &i| self.datum.reflect(&l, i as usize))
    }

    /// All roots in simple-root coordinates, positive roots first.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.num_positive]
    }

    pub fn num_positive_roots(&self) -> usize {
        self.num_positive
    }

    /// Reflection of a root given in simple-root coordinates.
    pub fn reflect_root(&self, beta: &[i64], i: usize) -> Vec<i64> {
        let a = self.datum.cartan_matrix();
        let p: i64 = (0..self.rank).map(|j| beta[j] * a[i][j]).sum();
        let mut out = beta.to_vec();
        out[i] -= p;
        out
    }

    pub fn act_on_root(&self, w: WeylElement, beta: &[i64]) -> Vec<i64> {
        self.word(w).iter().rev().fold(beta.to_vec(), |b, &i| self.reflect_root(&b, i as usize))
    }

    /// Converts simple-root coordinates into lattice storage coordinates.
    pub fn root_to_weight(&self, beta: &[i64]) -> Weight {
        let n = self.datum.lattice_rank();
        let mut out = Weight::zero(n);
        for (j, &c) in beta.iter().enumerate() {
            out = out.add(&self.datum.simple_root(j).scaled(c));
        }
        out
    }

    /// Whether every reduced word of `w` uses only letters in `j`.
    pub fn in_parabolic(&self, w: WeylElement, j: Subset) -> bool {
        self.word(w).iter().all(|&i| j.contains(i as usize))
    }

    /// Elements of the parabolic subgroup `W_J`, in canonical order.
    pub fn parabolic(&self, j: Subset) -> Vec<WeylElement> {
        let mut seen = BTreeSet::from([self.identity()]);
        let mut stack = vec![self.identity()];
        while let Some(u) = stack.pop() {
            for i in j.iter() {
                let v = self.rmul(u, i);
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The longest element `theta_J` of `W_J`.
    pub fn longest_in(&self, j: Subset) -> WeylElement {
        let mut w = self.identity();
        // Ascend until every simple reflection of J is a right descent.
        while let Some(i) = j.iter().find(|&i| !self.right_descents(w).contains(i)) {
            w = self.rmul(w, i);
        }
        w
    }

    /// Whether `w` is the unique shortest element of `W_J w`, tested with
    /// the criterion `w^{-1}(alpha_j) > 0` for all `j` in `J`.
    pub fn is_min_coset_rep(&self, j: Subset, w: WeylElement) -> bool {
        let winv = self.inverse(w);
        j.iter().all(|k| {
            let mut e = vec![0; self.rank];
            e[k] = 1;
            self.act_on_root(winv, &e).iter().all(|&c| c >= 0)
        })
    }

    /// Fast membership in `D_J` using left descents.
    pub fn in_min_coset(&self, j: Subset, w: WeylElement) -> bool {
        self.ldesc[w.index()] & j.0 == 0
    }

    /// Membership in `D_J ∩ D_K^{-1}`.
    pub fn in_min_double_coset(&self, j: Subset, k: Subset, w: WeylElement) -> bool {
        self.ldesc[w.index()] & j.0 == 0 && self.rdesc[w.index()] & k.0 == 0
    }

    /// The double coset `W_J w W_K` in canonical order.
    pub fn double_coset(&self, j: Subset, w: WeylElement, k: Subset) -> Vec<WeylElement> {
        let mut seen = BTreeSet::from([w]);
        let mut stack = vec![w];
        while let Some(u) = stack.pop() {
            let next = j.iter().map(|i| self.lmul(i, u)).chain(k.iter().map(|i| self.rmul(u, i)));
            for v in next.collect::<Vec<_>>() {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Bruhat order, by descent recursion.
    pub fn bruhat_leq(&self, x: WeylElement, y: WeylElement) -> bool {
        let (mut x, mut y) = (x, y);
        loop {
            if y == self.identity() {
                return x == self.identity();
            }
            if self.len(x) > self.len(y) {
                return false;
            }
            let d = self.left_descents(y);
            let s = d.iter().next().unwrap();
            if self.left_descents(x).contains(s) {
                x = self.lmul(s, x);
            }
            y = self.lmul(s, y);
        }
    }
}

/// Formats a 0-based word as `s1s2...`, or `e` when empty.
pub fn format_word<I: IntoIterator<Item = u8>>(word: I) -> String {
    let s: String = word.into_iter().map(|i| format!("s{}", i + 1)).collect();
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

fn root_system(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = a.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        })
        .collect();
    for e in &stack {
        seen.insert(e.clone());
    }
    while let Some(b) = stack.pop() {
        for i in 0..r {
            let p: i64 = (0..r).map(|j| b[j] * a[i][j]).sum();
            let mut c = b.clone();
            c[i] -= p;
            if seen.insert(c.clone()) {
                stack.push(c);
            }
        }
    }
    let (mut pos, neg): (Vec<_>, Vec<_>) = seen.into_iter().partition(|b| b.iter().all(|&c| c >= 0));
    pos.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
    pos.extend(neg);
    pos
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
