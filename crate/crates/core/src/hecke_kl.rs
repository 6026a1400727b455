//! The affine Hecke algebra acting on Z[q,q⁻¹] ⊗ Z^r through the descent
//! function, and the recursive construction of the bases C± of each orbit.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::affine_weyl::{alcove_rep, coset_length, descent, reflect, same_orbit, AffineElement};
use crate::laurent::Poly;
use crate::partitions::Weight;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// A finite linear combination of weights of one rank and level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightVector {
    pub r: usize,
    pub m: i64,
    pub terms: BTreeMap<Weight, Poly>,
}

impl WeightVector {
    pub fn zero(r: usize, m: i64) -> Self {
        WeightVector { r, m, terms: BTreeMap::new() }
    }

    pub fn basis(lambda: &Weight, m: i64) -> Self {
        let mut v = Self::zero(lambda.rank(), m);
        v.add_term(lambda.clone(), &Poly::one());
        v
    }

    pub fn add_term(&mut self, w: Weight, c: &Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &WeightVector, c: &Poly) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn coeff(&self, w: &Weight) -> Poly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Π_m(T_i): swap when desc = sgn(m), q⁻¹ when desc = 0, swap plus (q⁻¹−q) otherwise.
pub fn act_ti(i: usize, v: &WeightVector) -> WeightVector {
    let s = v.m.signum() as i32;
    let mut out = WeightVector::zero(v.r, v.m);
    for (lam, c) in &v.terms {
        let d = descent(lam, i, v.m);
        let swapped = Weight::new(reflect(lam, i, v.m));
        if d == s {
            out.add_term(swapped, c);
        } else if d == 0 {
            out.add_term(lam.clone(), &c.shift(-1));
        } else {
            out.add_term(swapped, c);
            out.add_term(lam.clone(), &(c * &(Poly::q_pow(-1) - Poly::q())));
        }
    }
    out
}

/// C'_i = T_i + q (sign +) or C_i = T_i − q⁻¹ (sign −).
pub fn act_c(i: usize, v: &WeightVector, sign: Sign) -> WeightVector {
    let s = v.m.signum() as i32;
    let mut out = WeightVector::zero(v.r, v.m);
    for (lam, c) in &v.terms {
        let d = descent(lam, i, v.m);
        if d == 0 {
            if sign == Sign::Plus {
                out.add_term(lam.clone(), &(c * &(Poly::q() + Poly::q_pow(-1))));
            }
            continue;
        }
        out.add_term(Weight::new(reflect(lam, i, v.m)), c);
        let e = match (sign, d == s) {
            (Sign::Plus, true) => 1,
            (Sign::Plus, false) => -1,
            (Sign::Minus, true) => -1,
            (Sign::Minus, false) => 1,
        };
        let coef = if sign == Sign::Minus { -c.shift(e) } else { c.shift(e) };
        out.add_term(lam.clone(), &coef);
    }
    out
}

/// Π_m(τ^k).
pub fn act_tau(v: &WeightVector, k: i64) -> WeightVector {
    let t = AffineElement::tau_pow(v.r, k);
    let mut out = WeightVector::zero(v.r, v.m);
    for (lam, c) in &v.terms {
        out.add_term(Weight::new(t.act_raw(lam, v.m)), c);
    }
    out
}

/// How the recursion picks the reflection when several are available.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Choice {
    Smallest,
    Largest,
    Seeded(u64),
}

/// Componentwise bounds and a length cap; `None` entries are unbounded.
#[derive(Clone, Debug, Default)]
pub struct Window {
    pub lower: Option<Vec<i64>>,
    pub upper: Option<Vec<i64>>,
    pub max_length: Option<usize>,
}

impl Window {
    fn admits(&self, w: &[i64], len: usize) -> bool {
        self.lower.as_ref().map_or(true, |lo| w.iter().zip(lo).all(|(a, b)| a >= b))
            && self.upper.as_ref().map_or(true, |hi| w.iter().zip(hi).all(|(a, b)| a <= b))
            && self.max_length.map_or(true, |l| len <= l)
    }
}

pub type Basis = Arc<BTreeMap<Weight, Poly>>;

/// A memoized C± stored in flat arrays: a full orbit interval holds millions
/// of terms, and boxed weights with big-integer coefficients do not fit in memory.
struct Packed {
    r: usize,
    /// r entries per weight, weights in increasing order.
    entries: Vec<i16>,
    /// End of each weight's run in `terms`.
    ends: Vec<u32>,
    terms: Vec<(i32, i64)>,
}

fn overflow(what: &str) -> Error {
    Error::Invalid(format!("{} exceeds the compact memo range", what))
}

impl Packed {
    fn pack(r: usize, map: &BTreeMap<Weight, Poly>) -> Result<Packed> {
        let mut p = Packed { r, entries: Vec::with_capacity(r * map.len()), ends: Vec::with_capacity(map.len()), terms: Vec::new() };
        for (w, c) in map {
            for &x in w.iter() {
                p.entries.push(i16::try_from(x).map_err(|_| overflow("weight entry"))?);
            }
            for (e, a) in c.terms() {
                let e = i32::try_from(*e).map_err(|_| overflow("exponent"))?;
                p.terms.push((e, a.to_i64().ok_or_else(|| overflow("coefficient"))?));
            }
            p.ends.push(u32::try_from(p.terms.len()).map_err(|_| overflow("term count"))?);
        }
        Ok(p)
    }

    fn len(&self) -> usize {
        self.ends.len()
    }

    fn weight(&self, k: usize) -> Weight {
        Weight::new(self.entries[k * self.r..(k + 1) * self.r].iter().map(|&x| x as i64).collect())
    }

    fn coeff(&self, k: usize) -> Poly {
        let start = if k == 0 { 0 } else { self.ends[k - 1] as usize };
        Poly::from_terms(self.terms[start..self.ends[k] as usize].iter().map(|&(e, a)| (e as i64, BigInt::from(a))))
    }

    fn get(&self, w: &Weight) -> Option<Poly> {
        if w.rank() != self.r {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            let row = &self.entries[mid * self.r..(mid + 1) * self.r];
            match row.iter().map(|&x| x as i64).cmp(w.iter().copied()) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(self.coeff(mid)),
            }
        }
        None
    }

    fn iter(&self) -> impl Iterator<Item = (Weight, Poly)> + '_ {
        (0..self.len()).map(|k| (self.weight(k), self.coeff(k)))
    }

    fn unpack(&self) -> BTreeMap<Weight, Poly> {
        self.iter().collect()
    }
}

/// Memoized C± for all orbits of one rank, level and sign.
pub struct KlEngine {
    r: usize,
    m: i64,
    sign: Sign,
    choice: Choice,
    window: Window,
    memo: HashMap<Weight, Arc<Packed>>,
    lengths: HashMap<Weight, usize>,
}

fn mix(seed: u64, w: &[i64]) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &x in w {
        h ^= x as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
        h ^= h >> 29;
    }
    h
}

impl KlEngine {
    pub fn new(r: usize, m: i64, sign: Sign) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroLevel);
        }
        Ok(KlEngine {
            r,
            m,
            sign,
            choice: Choice::Smallest,
            window: Window::default(),
            memo: HashMap::new(),
            lengths: HashMap::new(),
        })
    }

    pub fn with_choice(mut self, choice: Choice) -> Self {
        self.choice = choice;
        self
    }

    pub fn with_window(mut self, window: Window) -> Self {
        self.window = window;
        self
    }

    pub fn len_of(&mut self, w: &Weight) -> usize {
        if let Some(&l) = self.lengths.get(w) {
            return l;
        }
        let l = coset_length(w, self.m);
        self.lengths.insert(w.clone(), l);
        l
    }

    fn pick(&self, lam: &[i64]) -> Option<usize> {
        let target = -(self.m.signum() as i32);
        let cands: Vec<usize> = (0..self.r).filter(|&i| descent(lam, i, self.m) == target).collect();
        if cands.is_empty() || self.r < 2 {
            return None;
        }
        Some(match self.choice {
            Choice::Smallest => cands[0],
            Choice::Largest => *cands.last().unwrap(),
            Choice::Seeded(s) => cands[(mix(s, lam) % cands.len() as u64) as usize],
        })
    }

    /// C±_λ as a map weight → coefficient.
    pub fn basis(&mut self, lambda: &Weight) -> Result<Basis> {
        Ok(Arc::new(self.packed(lambda)?.unpack()))
    }

    fn packed(&mut self, lambda: &Weight) -> Result<Arc<Packed>> {
        if lambda.rank() != self.r {
            return Err(Error::RankMismatch { expected: self.r, got: lambda.rank() });
        }
        if let Some(b) = self.memo.get(lambda) {
            return Ok(b.clone());
        }
        // Walk down to the first memoized weight or a τ-translate of the alcove.
        let mut chain = vec![(lambda.clone(), usize::MAX)];
        loop {
            let cur = chain.last().unwrap().0.clone();
            let len = self.len_of(&cur);
            if !self.window.admits(&cur, len) {
                return Err(Error::WindowViolation(cur.to_string()));
            }
            if self.memo.contains_key(&cur) {
                break;
            }
            match self.pick(&cur) {
                Some(i) => chain.push((Weight::new(reflect(&cur, i, self.m)), i)),
                None => {
                    let mut b = BTreeMap::new();
                    b.insert(cur.clone(), Poly::one());
                    let packed = Packed::pack(self.r, &b)?;
                    self.memo.insert(cur, Arc::new(packed));
                    break;
                }
            }
        }
        for j in (0..chain.len() - 1).rev() {
            let (lam, _) = chain[j].clone();
            let i = chain[j + 1].1;
            let mu = chain[j + 1].0.clone();
            let below = self.memo[&mu].clone();
            let v = WeightVector { r: self.r, m: self.m, terms: below.unpack() };
            let mut v = act_c(i, &v, self.sign);
            self.correct(&lam, &mut v)?;
            let packed = Packed::pack(self.r, &v.terms)?;
            self.memo.insert(lam, Arc::new(packed));
        }
        Ok(self.memo[lambda].clone())
    }

    /// Subtracts b_β C_β for every non-leading β with nonzero constant term.
    fn correct(&mut self, lam: &Weight, v: &mut WeightVector) -> Result<()> {
        // C_β only touches weights strictly below β, so one sweep by
        // decreasing length suffices; subtractions can only queue shorter weights.
        let mut pending: BTreeSet<(usize, Weight)> = BTreeSet::new();
        let initial: Vec<Weight> =
            v.terms.iter().filter(|(w, c)| *w != lam && !c.constant_term().is_zero()).map(|(w, _)| w.clone()).collect();
        for w in initial {
            pending.insert((self.len_of(&w), w));
        }
        while let Some((_, beta)) = pending.pop_last() {
            let b = match v.terms.get(&beta) {
                Some(c) if !c.constant_term().is_zero() => Poly::constant(c.constant_term()),
                _ => continue,
            };
            let cb = self.packed(&beta)?;
            for (w, c) in cb.iter() {
                v.add_term(w.clone(), &-(&c * &b));
                if w != beta && v.terms.get(&w).is_some_and(|x| !x.constant_term().is_zero()) {
                    pending.insert((self.len_of(&w), w));
                }
            }
        }
        let ok = v.terms.iter().all(|(w, c)| {
            if w == lam {
                c.is_one()
            } else {
                match self.sign {
                    Sign::Minus => c.max_exp().map_or(true, |e| e < 0),
                    Sign::Plus => c.min_exp().map_or(true, |e| e > 0),
                }
            }
        });
        if !ok {
            return Err(Error::Invalid(format!("lattice condition fails for C at {}", lam)));
        }
        Ok(())
    }

    /// P±_{μ,λ}(q), in the normalization C⁺_λ = Σ P⁺(q) μ and C⁻_λ = Σ P⁻(−q⁻¹) μ.
    pub fn kl(&mut self, mu: &Weight, lambda: &Weight) -> Result<Poly> {
        let c = self.packed(lambda)?.get(mu).unwrap_or_default();
        Ok(match self.sign {
            Sign::Plus => c,
            Sign::Minus => c.substitute_neg_inv(),
        })
    }
}

/// A KL value together with whether the two weights shared an orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlValue {
    pub poly: Poly,
    pub same_orbit: bool,
}

/// One-shot P±_{μ,λ} at level m.
pub fn parabolic_kl(mu: &Weight, lambda: &Weight, m: i64, sign: Sign) -> Result<KlValue> {
    if m == 0 {
        return Err(Error::ZeroLevel);
    }
    if !same_orbit(mu, lambda, m) {
        return Ok(KlValue { poly: Poly::zero(), same_orbit: false });
    }
    let mut e = KlEngine::new(lambda.rank(), m, sign)?;
    Ok(KlValue { poly: e.kl(mu, lambda)?, same_orbit: true })
}

/// A regular point of the alcove at the level sgn(m)·max(|m|, r).
pub fn regular_point(r: usize, m: i64) -> (Weight, i64) {
    let level = m.signum() * m.abs().max(r as i64);
    let nu: Vec<i64> = if level < 0 { (0..r).map(|i| i as i64 - (r as i64 - 1)).collect() } else { Weight::rho(r).into_vec() };
    (Weight::new(nu), level)
}

/// Ordinary KL polynomial P_{x,y} read off a regular orbit.
pub fn ordinary_kl(x: &AffineElement, y: &AffineElement, m: i64) -> Result<Poly> {
    let mut e = OrdinaryKl::new(y.rank(), m)?;
    e.p(x, y)
}

/// Ordinary KL polynomials through a shared regular-orbit engine.
pub struct OrdinaryKl {
    nu: Weight,
    level: i64,
    engine: KlEngine,
}

impl OrdinaryKl {
    pub fn new(r: usize, m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroLevel);
        }
        let (nu, level) = regular_point(r, m);
        debug_assert_eq!(alcove_rep(&nu, level).unwrap(), nu);
        Ok(OrdinaryKl { nu, level, engine: KlEngine::new(r, level, Sign::Plus)? })
    }

    pub fn p(&mut self, x: &AffineElement, y: &AffineElement) -> Result<Poly> {
        let xl = Weight::new(x.act_raw(&self.nu, self.level));
        let yl = Weight::new(y.act_raw(&self.nu, self.level));
        self.engine.kl(&xl, &yl)
    }
}

/// The finite stabilizer of ν at level m, by closure under the simple reflections fixing ν.
pub fn stabilizer(nu: &Weight, m: i64) -> Vec<AffineElement> {
    let r = nu.rank();
    if r < 2 {
        return vec![AffineElement::identity(r)];
    }
    let gens: Vec<AffineElement> = (0..r)
        .filter(|&i| reflect(nu, i, m) == **nu)
        .map(|i| AffineElement::s(i, r).unwrap())
        .collect();
    let mut seen: HashSet<AffineElement> = HashSet::new();
    let id = AffineElement::identity(r);
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let u = w.mul(g);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    let mut out: Vec<AffineElement> = seen.into_iter().collect();
    out.sort_by_key(|w| (w.length(), w.to_string()));
    out
}
