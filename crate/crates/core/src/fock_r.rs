//! The finite q-Fock space ℱ_r at level m = −n: straightening of q-wedges, the
//! bar involution, canonical bases G±, the U_q(ŝl_n) generators, the central
//! operators B_k and the 𝒰/𝒱 families, Schur operators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::hecke_kl::Sign;
use crate::laurent::Poly;
use crate::matrix::PolyMatrix;
use crate::partitions::{partitions_bounded, Partition, Weight};
use crate::ribbon::{spin_generating_inward, spin_generating_outward};
use crate::symfun::inverse_kostka;
use crate::{Error, Result};

/// A vector of ℱ_r on the basis |λ⟩, λ strictly decreasing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WedgeVector {
    pub n: usize,
    pub r: usize,
    pub terms: BTreeMap<Weight, Poly>,
}

impl WedgeVector {
    pub fn zero(n: usize, r: usize) -> Self {
        WedgeVector { n, r, terms: BTreeMap::new() }
    }

    /// The basis vector |λ⟩; λ must be strictly decreasing.
    pub fn basis(lambda: &Weight, n: usize) -> Result<Self> {
        if !lambda.is_strict() {
            return Err(Error::NotStrict(lambda.to_string()));
        }
        let mut v = Self::zero(n, lambda.rank());
        v.terms.insert(lambda.clone(), Poly::one());
        Ok(v)
    }

    pub fn add_term(&mut self, w: Weight, c: &Poly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
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

    pub fn add_scaled(&mut self, other: &WedgeVector, c: &Poly) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let mut out = Self::zero(self.n, self.r);
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, w: &Weight) -> Poly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &WedgeVector) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Poly::from(-1));
        out
    }

    /// Coefficients keyed by λ−ρ when every index is ρ-shifted partition.
    pub fn by_partition(&self) -> Option<BTreeMap<Partition, Poly>> {
        let rho = Weight::rho(self.r);
        self.terms.iter().map(|(w, c)| Some(((w - &rho).minus_rho_partition_of_shift()?, c.clone()))).collect()
    }
}

trait ShiftedPartition {
    fn minus_rho_partition_of_shift(&self) -> Option<Partition>;
}

impl ShiftedPartition for Weight {
    /// Reads an already ρ-subtracted weight as a partition.
    fn minus_rho_partition_of_shift(&self) -> Option<Partition> {
        if self.iter().any(|&x| x < 0) {
            return None;
        }
        Partition::new(self.iter().map(|&x| x as usize).collect()).ok()
    }
}

impl fmt::Display for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter().rev() {
            let entries: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            let ket = format!("|{}>", entries.join(","));
            let cs = c.to_string();
            let body = if c.is_one() {
                ket
            } else if cs == "-1" {
                format!("-{}", ket)
            } else if c.terms().len() == 1 {
                format!("{}{}", cs, ket)
            } else {
                format!("({}){}", cs, ket)
            };
            if first {
                write!(f, "{}", body)?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {}", rest)?;
            } else {
                write!(f, " + {}", body)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Which central family to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UvKind {
    /// Ũ_d = e_d(Y).
    UTilde,
    /// Ṽ_d = e_d(Y⁻¹).
    VTilde,
    /// 𝒰_m = h_m(Y).
    U,
    /// 𝒱_m = h_m(Y⁻¹).
    V,
}

/// How to evaluate a central operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    /// Shift wedges by Y-monomials and straighten.
    Y,
    /// Sum ribbon-tableau spin polynomials.
    Ribbon,
}

type Expansion = BTreeMap<Vec<i64>, Poly>;

/// ℱ_r for fixed n and r, with memoized straightening and bar images.
pub struct FockR {
    n: usize,
    r: usize,
    straight: HashMap<Vec<i64>, Rc<Expansion>>,
    bars: HashMap<Vec<i64>, Rc<Expansion>>,
}

fn translate(v: &[i64], c: i64) -> Vec<i64> {
    v.iter().map(|x| x + c).collect()
}

fn add_into(acc: &mut Expansion, w: Vec<i64>, c: &Poly) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(w) {
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

impl FockR {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadModulus(0));
        }
        if r == 0 {
            return Err(Error::RankTooSmall { rank: 0, what: "Fock space".into() });
        }
        Ok(FockR { n, r, straight: HashMap::new(), bars: HashMap::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    fn check_rank(&self, w: &[i64]) -> Result<()> {
        if w.len() != self.r {
            return Err(Error::RankMismatch { expected: self.r, got: w.len() });
        }
        Ok(())
    }

    fn wrap(&self, e: &Expansion) -> WedgeVector {
        let mut v = WedgeVector::zero(self.n, self.r);
        for (w, c) in e {
            v.add_term(Weight::new(w.clone()), c);
        }
        v
    }

    /// Expansion of |μ⟩ on the strictly decreasing basis.
    pub fn straighten(&mut self, mu: &Weight) -> Result<WedgeVector> {
        self.check_rank(mu)?;
        let e = self.straighten_raw(mu);
        Ok(self.wrap(&e))
    }

    /// Straightens every term of a formal combination of wedges.
    pub fn straighten_all<'a>(&mut self, terms: impl IntoIterator<Item = (&'a Weight, &'a Poly)>) -> WedgeVector {
        let mut acc = Expansion::new();
        for (w, c) in terms {
            let e = self.straighten_raw(w);
            for (x, d) in e.iter() {
                add_into(&mut acc, x.clone(), &(c * d));
            }
        }
        self.wrap(&acc)
    }

    fn straighten_raw(&mut self, mu: &[i64]) -> Rc<Expansion> {
        // The rules only see differences, so cache modulo translation.
        let shift = mu.iter().copied().min().unwrap_or(0);
        let key = translate(mu, -shift);
        let normal = match self.straight.get(&key) {
            Some(e) => e.clone(),
            None => {
                let e = Rc::new(self.straighten_normalized(&key));
                self.straight.insert(key, e.clone());
                e
            }
        };
        if shift == 0 {
            return normal;
        }
        Rc::new(normal.iter().map(|(w, c)| (translate(w, shift), c.clone())).collect())
    }

    fn straighten_normalized(&mut self, mu: &[i64]) -> Expansion {
        let mut out = Expansion::new();
        if mu.windows(2).any(|w| w[0] == w[1]) {
            return out;
        }
        let Some(i) = mu.windows(2).position(|w| w[0] < w[1]) else {
            out.insert(mu.to_vec(), Poly::one());
            return out;
        };
        let n = self.n as i64;
        let (l, m) = (mu[i], mu[i + 1]);
        let (k, j) = ((m - l) / n, (m - l) % n);
        let mut swapped = mu.to_vec();
        swapped.swap(i, i + 1);
        let minus_inv_q = Poly::monomial(-1, BigInt::from(-1));
        let mut pieces: Vec<(Vec<i64>, Poly)> = Vec::with_capacity(3);
        if j == 0 {
            pieces.push((swapped, Poly::from(-1)));
        } else if k == 0 {
            pieces.push((swapped, minus_inv_q));
        } else {
            let mut a = mu.to_vec();
            a[i] = l + k * n;
            a[i + 1] = m - k * n;
            let mut b = swapped.clone();
            b[i] = m - k * n;
            b[i + 1] = l + k * n;
            pieces.push((swapped, minus_inv_q.clone()));
            pieces.push((a, Poly::from(-1)));
            pieces.push((b, minus_inv_q));
        }
        for (w, c) in pieces {
            let e = self.straighten_raw(&w);
            for (x, d) in e.iter() {
                add_into(&mut out, x.clone(), &(&c * d));
            }
        }
        out
    }

    /// bar|λ⟩ for λ strictly decreasing.
    fn bar_basis(&mut self, lambda: &[i64]) -> Rc<Expansion> {
        let shift = lambda.last().copied().unwrap_or(0);
        let key = translate(lambda, -shift);
        let normal = match self.bars.get(&key) {
            Some(e) => e.clone(),
            None => {
                let n = self.n as i64;
                let r = self.r;
                let d = (0..r)
                    .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
                    .filter(|&(i, j)| (key[i] - key[j]).rem_euclid(n) != 0)
                    .count() as i64;
                let sign = if (r * (r - 1) / 2) % 2 == 0 { 1 } else { -1 };
                let prefactor = Poly::monomial(d, BigInt::from(sign));
                let rev: Vec<i64> = key.iter().rev().copied().collect();
                let e = self.straighten_raw(&rev);
                let out: Expansion = e.iter().map(|(w, c)| (w.clone(), c * &prefactor)).collect();
                let out = Rc::new(out);
                self.bars.insert(key, out.clone());
                out
            }
        };
        if shift == 0 {
            return normal;
        }
        Rc::new(normal.iter().map(|(w, c)| (translate(w, shift), c.clone())).collect())
    }

    /// The semi-linear bar involution.
    pub fn bar(&mut self, v: &WedgeVector) -> Result<WedgeVector> {
        let mut acc = Expansion::new();
        for (w, c) in &v.terms {
            self.check_rank(w)?;
            if !w.is_strict() {
                return Err(Error::NotStrict(w.to_string()));
            }
            let cb = c.bar();
            for (x, d) in self.bar_basis(w).iter() {
                add_into(&mut acc, x.clone(), &(&cb * d));
            }
        }
        Ok(self.wrap(&acc))
    }

    /// Coefficient a_{λμ} of |λ⟩ in bar|μ⟩.
    pub fn bar_coeff(&mut self, lambda: &Weight, mu: &Weight) -> Poly {
        self.bar_basis(mu).get(lambda.as_ref()).cloned().unwrap_or_default()
    }

    /// Labels λ+ρ for λ ⊢ k with at most r parts, decreasing lexicographic.
    pub fn labels(&self, k: usize) -> Vec<Weight> {
        let rho = Weight::rho(self.r);
        partitions_bounded(k, k, self.r).iter().map(|p| &p.to_weight(self.r).unwrap() + &rho).collect()
    }

    /// A_k = [a_{λμ}], rows and columns labelled by `labels(k)`.
    pub fn bar_matrix(&mut self, k: usize) -> (Vec<Weight>, PolyMatrix) {
        let labels = self.labels(k);
        let mut m = PolyMatrix::zero(labels.len());
        for (j, mu) in labels.iter().enumerate() {
            let col = self.bar_basis(mu);
            for (i, lam) in labels.iter().enumerate() {
                if let Some(c) = col.get(lam.as_ref()) {
                    m.set(i, j, c.clone());
                }
            }
        }
        (labels, m)
    }

    /// Strict weights of the same block as λ and lexicographically ≤ λ,
    /// in decreasing order, after translating λ to end in 0.
    fn lower_block(&self, lambda: &[i64]) -> Vec<Vec<i64>> {
        let n = self.n as i64;
        let rho = Weight::rho(self.r);
        let k: i64 = lambda.iter().zip(rho.iter()).map(|(a, b)| a - b).sum();
        let residues = |w: &[i64]| {
            let mut v: Vec<i64> = w.iter().map(|x| x.rem_euclid(n)).collect();
            v.sort_unstable();
            v
        };
        let target = residues(lambda);
        partitions_bounded(k as usize, k as usize, self.r)
            .iter()
            .map(|p| (&p.to_weight(self.r).unwrap() + &rho).into_vec())
            .filter(|w| w.as_slice() <= lambda && residues(w) == target)
            .collect()
    }

    /// G^±_λ: bar-invariant and ≡ |λ⟩ modulo q𝓛⁺ (resp. q⁻¹𝓛⁻).
    pub fn canonical(&mut self, lambda: &Weight, sign: Sign) -> Result<WedgeVector> {
        self.check_rank(lambda)?;
        if !lambda.is_strict() {
            return Err(Error::NotStrict(lambda.to_string()));
        }
        let shift = lambda[self.r - 1];
        let top = translate(lambda, -shift);
        let block = self.lower_block(&top);
        let mut coeffs: Vec<Poly> = Vec::with_capacity(block.len());
        let mut columns: Vec<Rc<Expansion>> = Vec::with_capacity(block.len());
        for (idx, nu) in block.iter().enumerate() {
            columns.push(self.bar_basis(nu));
            if idx == 0 {
                coeffs.push(Poly::one());
                continue;
            }
            // x_ν − x̄_ν = Σ_{μ > ν} a_{νμ} x̄_μ
            let mut rhs = Poly::zero();
            for (j, x) in coeffs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if let Some(a) = columns[j].get(nu) {
                    rhs += &(a * &x.bar());
                }
            }
            debug_assert!(rhs.constant_term().is_zero(), "bar matrix not unitriangular at {:?}", nu);
            coeffs.push(match sign {
                Sign::Minus => rhs.negative_part(),
                Sign::Plus => rhs.positive_part(),
            });
        }
        let mut v = WedgeVector::zero(self.n, self.r);
        for (nu, c) in block.iter().zip(&coeffs) {
            v.add_term(Weight::new(translate(nu, shift)), c);
        }
        Ok(v)
    }

    /// C_k (columns G⁺_μ, entries c_{λμ}(q)) or L_k (rows G⁻_λ, entries l_{λμ}(q)).
    pub fn canonical_matrix(&mut self, k: usize, sign: Sign) -> Result<(Vec<Weight>, PolyMatrix)> {
        let labels = self.labels(k);
        let mut m = PolyMatrix::zero(labels.len());
        for (j, lam) in labels.iter().enumerate() {
            let g = self.canonical(lam, sign)?;
            for (i, mu) in labels.iter().enumerate() {
                let c = g.coeff(mu);
                if c.is_zero() {
                    continue;
                }
                match sign {
                    Sign::Plus => m.set(i, j, c),
                    Sign::Minus => m.set(j, i, c.substitute_neg_inv()),
                }
            }
        }
        Ok((labels, m))
    }

    fn delta(&self, x: i64, i: i64) -> i64 {
        let n = self.n as i64;
        i64::from(x.rem_euclid(n) == i.rem_euclid(n)) - i64::from(x.rem_euclid(n) == (i + 1).rem_euclid(n))
    }

    /// f_i on ℱ_r; no straightening is ever needed.
    pub fn fi(&self, i: usize, v: &WedgeVector) -> WedgeVector {
        let n = self.n as i64;
        let i = i as i64;
        let mut out = WedgeVector::zero(self.n, self.r);
        for (w, c) in &v.terms {
            let mut exp = 0;
            for j in 0..w.len() {
                if w[j].rem_euclid(n) == i.rem_euclid(n) {
                    let mut x = w.clone().into_vec();
                    x[j] += 1;
                    if j == 0 || x[j - 1] != x[j] {
                        out.add_term(Weight::new(x), &c.shift(exp));
                    }
                }
                exp += self.delta(w[j], i);
            }
        }
        out
    }

    /// e_i on ℱ_r.
    pub fn ei(&self, i: usize, v: &WedgeVector) -> WedgeVector {
        let n = self.n as i64;
        let i = i as i64;
        let mut out = WedgeVector::zero(self.n, self.r);
        for (w, c) in &v.terms {
            let mut exp = 0;
            for j in (0..w.len()).rev() {
                if w[j].rem_euclid(n) == (i + 1).rem_euclid(n) {
                    let mut x = w.clone().into_vec();
                    x[j] -= 1;
                    if j + 1 == x.len() || x[j + 1] != x[j] {
                        out.add_term(Weight::new(x), &c.shift(-exp));
                    }
                }
                exp += self.delta(w[j], i);
            }
        }
        out
    }

    /// Applies Σ over shift patterns s of |λ + n·s⟩ to every term, then straightens.
    fn shift_sum(&mut self, v: &WedgeVector, patterns: &[Vec<i64>]) -> WedgeVector {
        let n = self.n as i64;
        let mut formal: BTreeMap<Weight, Poly> = BTreeMap::new();
        for (w, c) in &v.terms {
            for p in patterns {
                let x: Vec<i64> = w.iter().zip(p).map(|(a, b)| a + n * b).collect();
                *formal.entry(Weight::new(x)).or_default() += c;
            }
        }
        self.straighten_all(formal.iter())
    }

    /// B_k|λ⟩ = Σ_j |λ − nkε_j⟩.
    pub fn bk(&mut self, k: i64, v: &WedgeVector) -> WedgeVector {
        let patterns: Vec<Vec<i64>> = (0..self.r)
            .map(|j| {
                let mut p = vec![0; self.r];
                p[j] = -k;
                p
            })
            .collect();
        self.shift_sum(v, &patterns)
    }

    fn patterns(&self, kind: UvKind, d: usize) -> Vec<Vec<i64>> {
        let r = self.r;
        let mut out = Vec::new();
        let sign = match kind {
            UvKind::UTilde | UvKind::U => -1,
            UvKind::VTilde | UvKind::V => 1,
        };
        let distinct = matches!(kind, UvKind::UTilde | UvKind::VTilde);
        fn rec(pos: usize, left: usize, r: usize, distinct: bool, sign: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if pos == r {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let max = if distinct { left.min(1) } else { left };
            for m in 0..=max {
                cur[pos] = sign * m as i64;
                rec(pos + 1, left - m, r, distinct, sign, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, d, r, distinct, sign, &mut vec![0; r], &mut out);
        out
    }

    /// Ũ_β, Ṽ_β, 𝒰_β or 𝒱_β applied to v.
    pub fn uv(&mut self, kind: UvKind, beta: &[usize], v: &WedgeVector, route: Route) -> Result<WedgeVector> {
        match route {
            Route::Y => {
                let mut cur = v.clone();
                for &d in beta {
                    let pats = self.patterns(kind, d);
                    cur = self.shift_sum(&cur, &pats);
                }
                Ok(cur)
            }
            Route::Ribbon => self.uv_ribbon(kind, beta, v),
        }
    }

    fn uv_ribbon(&mut self, kind: UvKind, beta: &[usize], v: &WedgeVector) -> Result<WedgeVector> {
        let n = self.n;
        let r = self.r;
        let k: usize = beta.iter().sum();
        // (−q)^{−(n−1)k}
        let pre = Poly::monomial(-(((n - 1) * k) as i64), BigInt::from(if (n - 1) * k % 2 == 0 { 1 } else { -1 }));
        let rho = Weight::rho(r);
        let mut out = WedgeVector::zero(n, r);
        for (w, c) in &v.terms {
            let nu = (w - &rho)
                .minus_rho_partition_of_shift()
                .ok_or_else(|| Error::Invalid(format!("{} is not a ρ-shifted partition", w)))?;
            let images: Vec<(Partition, Poly)> = match kind {
                UvKind::VTilde => spin_generating_outward(&nu.conjugate(), n, beta, None, Some(r))
                    .into_iter()
                    .map(|(l, p)| (l.conjugate(), &pre * &p.substitute_neg()))
                    .collect(),
                UvKind::UTilde => spin_generating_inward(&nu.conjugate(), n, beta)
                    .into_iter()
                    .map(|(l, p)| (l.conjugate(), &pre * &p.substitute_neg()))
                    .collect(),
                UvKind::V => spin_generating_outward(&nu, n, beta, Some(r), None)
                    .into_iter()
                    .map(|(l, p)| (l, p.substitute_neg_inv()))
                    .collect(),
                UvKind::U => spin_generating_inward(&nu, n, beta)
                    .into_iter()
                    .map(|(l, p)| (l, p.substitute_neg_inv()))
                    .collect(),
            };
            for (lam, p) in images {
                let w = &lam.to_weight(r)? + &rho;
                out.add_term(w, &(c * &p));
            }
        }
        Ok(out)
    }

    /// S_α = s_α(Y⁻¹) = Σ_ν κ_{αν} 𝒱_ν.
    pub fn schur_operator(&mut self, alpha: &Partition, v: &WedgeVector) -> Result<WedgeVector> {
        let kappa = inverse_kostka(alpha.size());
        let row = kappa.labels.iter().position(|l| l == alpha).expect("label present");
        let mut out = WedgeVector::zero(self.n, self.r);
        for (j, nu) in kappa.labels.iter().enumerate() {
            let c = &kappa.entries[row][j];
            if c.is_zero() {
                continue;
            }
            let image = self.uv(UvKind::V, nu.parts(), v, Route::Y)?;
            out.add_scaled(&image, &Poly::constant(c.clone()));
        }
        Ok(out)
    }

    /// Checks G⁻_{λ+ρ} = S_{λ⁽¹⁾} G⁻_{λ⁽⁰⁾+ρ} with λ = λ⁽⁰⁾ + nλ⁽¹⁾, λ⁽⁰⁾ n-restricted.
    pub fn steinberg_check(&mut self, lambda: &Weight) -> Result<bool> {
        self.check_rank(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let (l0, l1) = restricted_decomposition(lambda, self.n as i64);
        let rho = Weight::rho(self.r);
        let lhs = self.canonical(&(lambda + &rho), Sign::Minus)?;
        let inner = self.canonical(&(&l0 + &rho), Sign::Minus)?;
        let p1 = Partition::new(l1.iter().map(|&x| x as usize).collect())?;
        let rhs = self.schur_operator(&p1, &inner)?;
        Ok(lhs == rhs)
    }
}

/// λ = λ⁽⁰⁾ + nλ⁽¹⁾ with 0 ≤ λ⁽⁰⁾_i − λ⁽⁰⁾_{i+1} < n, λ⁽⁰⁾_r ∈ [0,n) and λ⁽¹⁾_r ≥ 0
/// when λ_r ≥ 0.
pub fn restricted_decomposition(lambda: &Weight, n: i64) -> (Weight, Weight) {
    let r = lambda.rank();
    let mut l0 = vec![0; r];
    let mut l1 = vec![0; r];
    if r == 0 {
        return (Weight::new(l0), Weight::new(l1));
    }
    l0[r - 1] = lambda[r - 1].rem_euclid(n);
    l1[r - 1] = lambda[r - 1].div_euclid(n);
    for i in (0..r - 1).rev() {
        let d = lambda[i] - lambda[i + 1];
        l0[i] = l0[i + 1] + d.rem_euclid(n);
        l1[i] = l1[i + 1] + d.div_euclid(n);
    }
    (Weight::new(l0), Weight::new(l1))
}
