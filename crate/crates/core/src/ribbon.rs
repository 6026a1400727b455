//! Horizontal n-ribbon strips, ribbon tableaux, spin polynomials and the
//! q-analogues c^λ(q) of Littlewood-Richardson coefficients.
//!
//! Diagrams use English coordinates (row, column), both 0-based.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::laurent::Poly;
use crate::partitions::{ascents_inversions, from_quotient, Partition, Weight};
use crate::symfun::inverse_kostka;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::Invalid(format!("{} does not contain {}", outer, inner)));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn conjugate(&self) -> SkewShape {
        SkewShape { outer: self.outer.conjugate(), inner: self.inner.conjugate() }
    }
}

/// Core of the strip lemma, stated on conjugates: with x = ν'+ρ and y = λ'+ρ in
/// rank R, find ξ = x + n·1_S that rearranges to y. Returns the inversions of ξ.
fn lemma_inversions(outer_c: &Partition, inner_c: &Partition, n: usize, k: usize) -> Option<usize> {
    let rank = outer_c.len().max(inner_c.len()).max(k).max(1);
    let x = &inner_c.to_weight(rank).ok()? + &Weight::rho(rank);
    let y = &outer_c.to_weight(rank).ok()? + &Weight::rho(rank);
    let n = n as i64;
    let mut xi = x.clone().into_vec();
    let mut shifts = 0;
    for c in 0..n {
        let xs: Vec<usize> = (0..rank).filter(|&i| x[i].rem_euclid(n) == c).collect();
        let ys: Vec<i64> = y.iter().copied().filter(|v| v.rem_euclid(n) == c).collect();
        if xs.len() != ys.len() {
            return None;
        }
        // Both are already decreasing; the matching is order-preserving.
        for (&i, &target) in xs.iter().zip(&ys) {
            match target - x[i] {
                0 => {}
                d if d == n => {
                    xi[i] += n;
                    shifts += 1;
                }
                _ => return None,
            }
        }
    }
    if shifts != k {
        return None;
    }
    Some(ascents_inversions(&xi))
}

/// Spin of a horizontal n-ribbon strip, or `None` if the shape is not one.
pub fn horizontal_strip_spin(shape: &SkewShape, n: usize) -> Option<usize> {
    if n == 0 || !shape.outer.contains(&shape.inner) {
        return None;
    }
    let size = shape.size();
    if size % n != 0 {
        return None;
    }
    let k = size / n;
    if k == 0 {
        return Some(0);
    }
    let inv = lemma_inversions(&shape.outer.conjugate(), &shape.inner.conjugate(), n, k)?;
    ((n - 1) * k).checked_sub(inv)
}

/// One ribbon, cells listed from head (top-right) to tail (bottom-left).
pub type Ribbon = Vec<(usize, usize)>;

/// Explicit tiling of a horizontal strip by peeling, from the right, the ribbon
/// whose head is the top cell of the rightmost column. Heads must be top cells
/// of their columns in the original shape. Returns the ribbons and total spin.
pub fn strip_tiling(shape: &SkewShape, n: usize) -> Option<(Vec<Ribbon>, usize)> {
    if n == 0 || shape.size() % n != 0 {
        return None;
    }
    let rows = shape.outer.len();
    let inner: Vec<usize> = (0..rows).map(|i| shape.inner.part(i)).collect();
    let mut outer: Vec<usize> = shape.outer.parts().to_vec();
    let top_of_column = |c: usize| (0..rows).find(|&i| inner[i] <= c && c < shape.outer.part(i));
    let mut ribbons = Vec::new();
    let mut spin = 0;
    while outer.iter().zip(&inner).any(|(o, i)| o > i) {
        let c = (0..rows).filter(|&i| outer[i] > inner[i]).map(|i| outer[i] - 1).max()?;
        let i = (0..rows).find(|&i| inner[i] <= c && c < outer[i])?;
        if outer[i] != c + 1 || top_of_column(c) != Some(i) {
            return None;
        }
        let mut cells = vec![(i, c)];
        let (mut a, mut b) = (i, c);
        while cells.len() < n {
            if a + 1 < rows && outer[a + 1] > b {
                a += 1;
            } else if b > 0 {
                b -= 1;
            } else {
                return None;
            }
            if b < inner[a] {
                return None;
            }
            cells.push((a, b));
        }
        if a + 1 < rows && outer[a + 1] > b {
            return None;
        }
        for &(ra, cb) in &cells {
            outer[ra] = outer[ra].min(cb);
        }
        spin += cells.last().unwrap().0 - i;
        ribbons.push(cells);
    }
    Some((ribbons, spin))
}

/// Outer shapes α with α/inner a horizontal strip of weight k, with spins.
/// Bounds limit the number of rows and columns of α.
pub fn strips_outward(
    inner: &Partition,
    n: usize,
    k: usize,
    max_rows: Option<usize>,
    max_cols: Option<usize>,
) -> Vec<(Partition, usize)> {
    if k == 0 {
        return vec![(inner.clone(), 0)];
    }
    let c = inner.conjugate();
    let rank = inner.part(0) + n * k;
    let x = &c.to_weight(rank).unwrap() + &Weight::rho(rank);
    let rho = Weight::rho(rank);
    let mut out = Vec::new();
    for subset in k_subsets(rank, k) {
        let mut xi = x.clone().into_vec();
        for &s in &subset {
            xi[s] += n as i64;
        }
        let mut y = xi.clone();
        y.sort_unstable_by(|a, b| b.cmp(a));
        if y.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let parts: Vec<usize> = y.iter().zip(rho.iter()).map(|(a, b)| (a - b) as usize).collect();
        let outer_c = Partition::new(parts).unwrap();
        if max_rows.is_some_and(|m| outer_c.part(0) > m) || max_cols.is_some_and(|m| outer_c.len() > m) {
            continue;
        }
        let inv = ascents_inversions(&xi);
        out.push((outer_c.conjugate(), (n - 1) * k - inv));
    }
    out.sort();
    out
}

/// Inner shapes β with outer/β a horizontal strip of weight k, with spins.
pub fn strips_inward(outer: &Partition, n: usize, k: usize) -> Vec<(Partition, usize)> {
    if k == 0 {
        return vec![(outer.clone(), 0)];
    }
    let c = outer.conjugate();
    let rank = c.len().max(k);
    let x = &c.to_weight(rank).unwrap() + &Weight::rho(rank);
    let rho = Weight::rho(rank);
    let mut out = Vec::new();
    for subset in k_subsets(rank, k) {
        let mut y = x.clone().into_vec();
        for &s in &subset {
            y[s] -= n as i64;
        }
        if y.iter().any(|&v| v < 0) {
            continue;
        }
        y.sort_unstable_by(|a, b| b.cmp(a));
        if y.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let parts: Vec<usize> = y.iter().zip(rho.iter()).map(|(a, b)| (a - b) as usize).collect();
        let inner = Partition::new(parts).unwrap().conjugate();
        let spin = horizontal_strip_spin(&SkewShape { outer: outer.clone(), inner: inner.clone() }, n)
            .expect("inward strip must satisfy the strip lemma");
        out.push((inner, spin));
    }
    out.sort();
    out
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// A chain inner = α⁰ ⊆ α¹ ⊆ … ⊆ α^s = outer of horizontal n-ribbon strips.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RibbonTableau {
    pub n: usize,
    pub chain: Vec<Partition>,
    pub spin: usize,
}

impl RibbonTableau {
    /// Number of ribbons added at each step.
    pub fn weight(&self) -> Vec<usize> {
        self.chain.windows(2).map(|w| (w[1].size() - w[0].size()) / self.n).collect()
    }
}

/// Memoized strip lists keyed by (inner, weight part), bounded by an outer shape.
struct StripCache<'a> {
    n: usize,
    outer: &'a Partition,
    cache: HashMap<(Partition, usize), Vec<(Partition, usize)>>,
}

impl StripCache<'_> {
    fn strips(&mut self, inner: &Partition, k: usize) -> Vec<(Partition, usize)> {
        let key = (inner.clone(), k);
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let v: Vec<(Partition, usize)> =
            strips_outward(inner, self.n, k, Some(self.outer.len()), Some(self.outer.part(0)))
                .into_iter()
                .filter(|(a, _)| self.outer.contains(a))
                .collect();
        self.cache.insert(key, v.clone());
        v
    }
}

/// All ribbon tableaux of the given shape and weight.
pub fn enumerate_tableaux(shape: &SkewShape, n: usize, weight: &[usize]) -> Vec<RibbonTableau> {
    if n == 0 || shape.size() != n * weight.iter().sum::<usize>() {
        return Vec::new();
    }
    let mut cache = StripCache { n, outer: &shape.outer, cache: HashMap::new() };
    let mut out = Vec::new();
    let mut chain = vec![shape.inner.clone()];
    fn rec(
        cache: &mut StripCache,
        weight: &[usize],
        target: &Partition,
        chain: &mut Vec<Partition>,
        spin: usize,
        out: &mut Vec<RibbonTableau>,
    ) {
        let Some((&k, rest)) = weight.split_first() else {
            if chain.last() == Some(target) {
                out.push(RibbonTableau { n: cache.n, chain: chain.clone(), spin });
            }
            return;
        };
        let cur = chain.last().unwrap().clone();
        for (next, s) in cache.strips(&cur, k) {
            chain.push(next);
            rec(cache, rest, target, chain, spin + s, out);
            chain.pop();
        }
    }
    rec(&mut cache, weight, &shape.outer, &mut chain, 0, &mut out);
    out
}

/// L_{λ/ν,μ}(q) = Σ_T q^{spin(T)} over ribbon tableaux of shape λ/ν and weight μ.
pub fn spin_polynomial(shape: &SkewShape, n: usize, weight: &[usize]) -> Poly {
    if n == 0 || shape.size() != n * weight.iter().sum::<usize>() {
        return Poly::zero();
    }
    let mut cache = StripCache { n, outer: &shape.outer, cache: HashMap::new() };
    let mut memo: HashMap<(Partition, usize), Poly> = HashMap::new();
    fn rec(
        cache: &mut StripCache,
        memo: &mut HashMap<(Partition, usize), Poly>,
        weight: &[usize],
        step: usize,
        cur: &Partition,
    ) -> Poly {
        if step == weight.len() {
            return if cur == cache.outer { Poly::one() } else { Poly::zero() };
        }
        let key = (cur.clone(), step);
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let mut acc = Poly::zero();
        for (next, s) in cache.strips(cur, weight[step]) {
            let tail = rec(cache, memo, weight, step + 1, &next);
            acc += &tail.shift(s as i64);
        }
        memo.insert(key, acc.clone());
        acc
    }
    rec(&mut cache, &mut memo, weight, 0, &shape.inner)
}

/// Σ over outer shapes of L_{α/inner, weight}(q), tableaux grown outward from
/// `inner` within the row/column bounds.
pub fn spin_generating_outward(
    inner: &Partition,
    n: usize,
    weight: &[usize],
    max_rows: Option<usize>,
    max_cols: Option<usize>,
) -> BTreeMap<Partition, Poly> {
    let mut layer: BTreeMap<Partition, Poly> = BTreeMap::new();
    layer.insert(inner.clone(), Poly::one());
    let mut cache: HashMap<(Partition, usize), Vec<(Partition, usize)>> = HashMap::new();
    for &k in weight {
        let mut next: BTreeMap<Partition, Poly> = BTreeMap::new();
        for (shape, c) in &layer {
            let strips = cache
                .entry((shape.clone(), k))
                .or_insert_with(|| strips_outward(shape, n, k, max_rows, max_cols))
                .clone();
            for (outer, s) in strips {
                *next.entry(outer).or_default() += &c.shift(s as i64);
            }
        }
        next.retain(|_, p| !p.is_zero());
        layer = next;
    }
    layer
}

/// Σ over inner shapes of L_{outer/β, weight}(q), tableaux shrunk inward from `outer`.
/// The weight is consumed from its last part, so the tableau steps read in order.
pub fn spin_generating_inward(outer: &Partition, n: usize, weight: &[usize]) -> BTreeMap<Partition, Poly> {
    let mut layer: BTreeMap<Partition, Poly> = BTreeMap::new();
    layer.insert(outer.clone(), Poly::one());
    for &k in weight.iter().rev() {
        let mut next: BTreeMap<Partition, Poly> = BTreeMap::new();
        for (shape, c) in &layer {
            for (inner, s) in strips_inward(shape, n, k) {
                *next.entry(inner).or_default() += &c.shift(s as i64);
            }
        }
        next.retain(|_, p| !p.is_zero());
        layer = next;
    }
    layer
}

/// c^λ(q) for the partition μ with the given n-quotient: c^λ = Σ_ν κ_{λν} L_{μ,ν}(q).
pub fn qlr(quotient: &[Partition], n: usize) -> Result<BTreeMap<Partition, Poly>> {
    let mu = from_quotient(quotient, n as i64)?;
    let k = mu.size() / n;
    let kappa = inverse_kostka(k);
    let shape = SkewShape::straight(mu);
    let ls: Vec<Poly> = kappa.labels.iter().map(|nu| spin_polynomial(&shape, n, nu.parts())).collect();
    let mut out = BTreeMap::new();
    for (i, lam) in kappa.labels.iter().enumerate() {
        let mut c = Poly::zero();
        for (j, l) in ls.iter().enumerate() {
            let kij: &BigInt = &kappa.entries[i][j];
            if !kij.is_zero() && !l.is_zero() {
                c += &l.scale(kij);
            }
        }
        if !c.is_zero() {
            out.insert(lam.clone(), c);
        }
    }
    Ok(out)
}

/// Negative coefficients of c^λ(q), reported rather than assumed away.
pub fn negative_coefficients(c: &BTreeMap<Partition, Poly>) -> Vec<(Partition, i64)> {
    let mut bad = Vec::new();
    for (lam, p) in c {
        for (e, x) in p.terms() {
            if x < &BigInt::zero() {
                bad.push((lam.clone(), *e));
            }
        }
    }
    bad
}
