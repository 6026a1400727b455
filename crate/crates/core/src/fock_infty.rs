//! The stable limit ℱ_∞ with basis |α), α a partition. Everything is computed in
//! finite-rank blocks of ℱ_r large enough for the coefficients to have stabilized.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use crate::fock_r::{FockR, Route, UvKind, WedgeVector};
use crate::hecke_kl::Sign;
use crate::laurent::Poly;
use crate::matrix::PolyMatrix;
use crate::partitions::{partitions_of, Partition, Weight};
use crate::ribbon::{spin_generating_inward, spin_generating_outward};
use crate::{Error, Result};

/// A finite combination of the |α).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockVector {
    pub n: usize,
    pub terms: BTreeMap<Partition, Poly>,
}

impl FockVector {
    pub fn zero(n: usize) -> Self {
        FockVector { n, terms: BTreeMap::new() }
    }

    pub fn basis(alpha: &Partition, n: usize) -> Self {
        let mut v = Self::zero(n);
        v.terms.insert(alpha.clone(), Poly::one());
        v
    }

    pub fn add_term(&mut self, alpha: Partition, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(alpha).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, p| !p.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &Poly) {
        for (a, x) in &other.terms {
            self.add_term(a.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let mut out = Self::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &FockVector) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Poly::from(-1));
        out
    }

    pub fn coeff(&self, alpha: &Partition) -> Poly {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn max_degree(&self) -> usize {
        self.terms.keys().map(Partition::size).max().unwrap_or(0)
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(a, c)| format!("({})|{})", c, a)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// |α) ↦ α + ρ*_r.
pub fn embed_stable(alpha: &Partition, r: usize) -> Result<Weight> {
    if alpha.len() > r {
        return Err(Error::RankTooSmall { rank: r, what: format!("embedding {}", alpha) });
    }
    Ok(&alpha.to_weight(r)? + &Weight::rho_star(r))
}

/// The partition α with λ = α + ρ*_r, or None when φ_r kills |λ⟩.
pub fn unembed(lambda: &Weight) -> Option<Partition> {
    let parts: Vec<i64> = lambda.iter().enumerate().map(|(i, &x)| x + i as i64).collect();
    if parts.iter().any(|&x| x < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some(Partition::new(parts.into_iter().map(|x| x as usize).collect()).expect("checked"))
}

/// Bar, D, E and G matrices of the degree-k block, labels in decreasing lex order.
#[derive(Clone, Debug)]
pub struct InftyMatrices {
    pub n: usize,
    pub k: usize,
    pub labels: Vec<Partition>,
    /// b_{αβ}: coefficient of |α) in the bar image of |β).
    pub b: PolyMatrix,
    /// d_{αβ}(q): coefficient of |α) in G⁺_β.
    pub d: PolyMatrix,
    /// e_{αβ}(q), with e_{αβ}(−q⁻¹) the coefficient of |β) in G⁻_α.
    pub e: PolyMatrix,
    /// D⁻¹.
    pub g: PolyMatrix,
}

impl InftyMatrices {
    pub fn index(&self, alpha: &Partition) -> Option<usize> {
        self.labels.iter().position(|l| l == alpha)
    }

    /// J_k = [e_{α′β′}(−q)]⁻¹.
    pub fn j(&self) -> Result<PolyMatrix> {
        let size = self.labels.len();
        let conj: Vec<usize> = self.labels.iter().map(|a| self.index(&a.conjugate()).expect("closed")).collect();
        let mut m = PolyMatrix::zero(size);
        for a in 0..size {
            for b in 0..size {
                m.set(a, b, self.e.get(conj[a], conj[b]).substitute_neg());
            }
        }
        m.unitriangular_inverse()
    }
}

pub fn infty_matrices(k: usize, n: usize) -> Result<InftyMatrices> {
    let r = k.max(1);
    let mut f = FockR::new(n, r)?;
    let labels: Vec<Partition> = partitions_of(k);
    let (wl, b) = f.bar_matrix(k);
    debug_assert_eq!(wl.len(), labels.len());
    let (_, d) = f.canonical_matrix(k, Sign::Plus)?;
    let (_, e) = f.canonical_matrix(k, Sign::Minus)?;
    let g = d.unitriangular_inverse()?;
    Ok(InftyMatrices { n, k, labels, b, d, e, g })
}

/// Corollary-style inversion check: J_k = D_k.
pub fn inversion_check(k: usize, n: usize) -> Result<bool> {
    let m = infty_matrices(k, n)?;
    Ok(m.j()? == m.d)
}

fn residue(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

/// Contents of addable cells, row by row (None where the row has none).
fn addable(alpha: &Partition) -> Vec<Option<i64>> {
    (0..=alpha.len())
        .map(|a| (a == 0 || alpha.part(a - 1) > alpha.part(a)).then(|| alpha.part(a) as i64 - a as i64))
        .collect()
}

/// Contents of removable cells, row by row.
fn removable(alpha: &Partition) -> Vec<Option<i64>> {
    (0..=alpha.len())
        .map(|a| (alpha.part(a) > alpha.part(a + 1)).then(|| alpha.part(a) as i64 - 1 - a as i64))
        .collect()
}

fn with_row(alpha: &Partition, a: usize, delta: i64) -> Partition {
    let mut p: Vec<usize> = alpha.parts().to_vec();
    if a == p.len() {
        p.push(0);
    }
    p[a] = (p[a] as i64 + delta) as usize;
    Partition::from_unsorted(p)
}

/// #addable i-cells − #removable i-cells, the eigenvalue exponent of q^{h_i}.
pub fn hi_exponent(alpha: &Partition, i: usize, n: usize) -> i64 {
    let count = |cells: Vec<Option<i64>>| cells.into_iter().flatten().filter(|&c| residue(c, n) == i % n).count() as i64;
    count(addable(alpha)) - count(removable(alpha))
}

/// Net count of addable minus removable i-cells of α in the given rows.
fn net_cells(alpha: &Partition, i: usize, n: usize, rows: impl Iterator<Item = usize> + Clone) -> i64 {
    let add = addable(alpha);
    let rem = removable(alpha);
    let hit = |c: &Option<i64>| c.is_some_and(|c| residue(c, n) == i % n);
    rows.clone().filter(|&a| add.get(a).is_some_and(hit)).count() as i64
        - rows.filter(|&a| rem.get(a).is_some_and(hit)).count() as i64
}

/// f_i: add an i-cell, weighted by q^{N_i^r}, the net i-cells to its right.
pub fn fi_cells(i: usize, v: &FockVector) -> FockVector {
    let n = v.n;
    let mut out = FockVector::zero(n);
    for (alpha, c) in &v.terms {
        for (a, cell) in addable(alpha).into_iter().enumerate() {
            if cell.is_some_and(|x| residue(x, n) == i % n) {
                let exp = net_cells(alpha, i, n, 0..a);
                out.add_term(with_row(alpha, a, 1), &c.shift(exp));
            }
        }
    }
    out
}

/// e_i: remove an i-cell, weighted by q^{−N_i^l}, the net i-cells to its left.
pub fn ei_cells(i: usize, v: &FockVector) -> FockVector {
    let n = v.n;
    let mut out = FockVector::zero(n);
    for (beta, c) in &v.terms {
        for (a, cell) in removable(beta).into_iter().enumerate() {
            if cell.is_some_and(|x| residue(x, n) == i % n) {
                let exp = net_cells(beta, i, n, a + 1..beta.len() + 1);
                out.add_term(with_row(beta, a, -1), &c.shift(-exp));
            }
        }
    }
    out
}

/// q^{h_i} acting diagonally, times an extra q-power.
pub fn qh(i: usize, shift: i64, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.n);
    for (a, c) in &v.terms {
        out.add_term(a.clone(), &c.shift(hi_exponent(a, i, v.n) + shift));
    }
    out
}

/// ⟨u, v⟩ with the |α) orthonormal, bilinear over ℤ[q,q⁻¹].
pub fn scalar_product(u: &FockVector, v: &FockVector) -> Poly {
    let mut acc = Poly::zero();
    for (a, c) in &u.terms {
        if let Some(d) = v.terms.get(a) {
            acc += &(c * d);
        }
    }
    acc
}

/// The semi-linear involution |α) ↦ |α′).
pub fn conjugate_vector(v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.n);
    for (a, c) in &v.terms {
        out.add_term(a.conjugate(), &c.bar());
    }
    out
}

/// Computes in ℱ_r blocks of a chosen rank, memoized per rank.
pub struct FockInfty {
    n: usize,
    ranks: HashMap<usize, FockR>,
}

impl FockInfty {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadModulus(0));
        }
        Ok(FockInfty { n, ranks: HashMap::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn at(&mut self, r: usize) -> &mut FockR {
        let n = self.n;
        self.ranks.entry(r).or_insert_with(|| FockR::new(n, r).expect("valid rank"))
    }

    /// Applies an ℱ_r operator at rank s(α) per term and reads the image back.
    fn through_rank(
        &mut self,
        v: &FockVector,
        rank: impl Fn(usize) -> usize,
        op: impl Fn(&mut FockR, &WedgeVector) -> Result<WedgeVector>,
    ) -> Result<FockVector> {
        let mut out = FockVector::zero(self.n);
        for (alpha, c) in &v.terms {
            let s = rank(alpha.size()).max(alpha.len()).max(1);
            let w = WedgeVector::basis(&embed_stable(alpha, s)?, self.n)?;
            let image = op(self.at(s), &w)?;
            for (lam, d) in &image.terms {
                if let Some(beta) = unembed(lam) {
                    out.add_term(beta, &(c * d));
                }
            }
        }
        Ok(out)
    }

    /// The bar involution, block by block at rank max(k, 1).
    pub fn bar(&mut self, v: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero(self.n);
        for (alpha, c) in &v.terms {
            let r = alpha.size().max(1);
            let f = self.at(r);
            let rho = Weight::rho(r);
            let image = f.bar(&WedgeVector::basis(&(&alpha.to_weight(r)? + &rho), f.n())?)?;
            for (lam, d) in &image.terms {
                let beta = unembed(&(&(lam - &rho) + &Weight::rho_star(r))).expect("bar stays in the block");
                out.add_term(beta, &(&c.bar() * d));
            }
        }
        Ok(out)
    }

    /// G^±_α in the |β) basis.
    pub fn canonical(&mut self, alpha: &Partition, sign: Sign) -> Result<FockVector> {
        let r = alpha.size().max(1);
        let f = self.at(r);
        let rho = Weight::rho(r);
        let g = f.canonical(&(&alpha.to_weight(r)? + &rho), sign)?;
        let mut out = FockVector::zero(self.n);
        for (lam, d) in &g.terms {
            out.add_term(unembed(&(&(lam - &rho) + &Weight::rho_star(r))).expect("block"), d);
        }
        Ok(out)
    }

    /// B_k, stable for rank ≥ degree + n|k| + 1.
    pub fn heisenberg_bk(&mut self, k: i64, v: &FockVector) -> Result<FockVector> {
        if k == 0 {
            return Err(Error::Invalid("B_0 is not defined".into()));
        }
        let shift = self.n * k.unsigned_abs() as usize;
        self.through_rank(v, |d| d + shift + 1, |f, w| Ok(f.bk(k, w)))
    }

    /// Ũ_β, Ṽ_β, 𝒰_β, 𝒱_β on ℱ_∞.
    pub fn uv(&mut self, kind: UvKind, beta: &[usize], v: &FockVector, route: Route) -> Result<FockVector> {
        match route {
            Route::Y => {
                let shift = self.n * beta.iter().sum::<usize>();
                self.through_rank(v, |d| d + shift + 1, |f, w| f.uv(kind, beta, w, Route::Y))
            }
            Route::Ribbon => Ok(self.uv_ribbon(kind, beta, v)),
        }
    }

    fn uv_ribbon(&self, kind: UvKind, beta: &[usize], v: &FockVector) -> FockVector {
        let n = self.n;
        let k: usize = beta.iter().sum();
        let pre = Poly::monomial(-(((n - 1) * k) as i64), BigInt::from(if (n - 1) * k % 2 == 0 { 1 } else { -1 }));
        let mut out = FockVector::zero(n);
        for (nu, c) in &v.terms {
            let images: Vec<(Partition, Poly)> = match kind {
                UvKind::VTilde => spin_generating_outward(&nu.conjugate(), n, beta, None, None)
                    .into_iter()
                    .map(|(l, p)| (l.conjugate(), &pre * &p.substitute_neg()))
                    .collect(),
                UvKind::UTilde => spin_generating_inward(&nu.conjugate(), n, beta)
                    .into_iter()
                    .map(|(l, p)| (l.conjugate(), &pre * &p.substitute_neg()))
                    .collect(),
                UvKind::V => spin_generating_outward(nu, n, beta, None, None)
                    .into_iter()
                    .map(|(l, p)| (l, p.substitute_neg_inv()))
                    .collect(),
                UvKind::U => spin_generating_inward(nu, n, beta)
                    .into_iter()
                    .map(|(l, p)| (l, p.substitute_neg_inv()))
                    .collect(),
            };
            for (lam, p) in images {
                out.add_term(lam, &(c * &p));
            }
        }
        out
    }

    /// The rank needed for a degree bound, exposed for callers embedding by hand.
    pub fn stable_rank(&self, degree: usize, k: usize) -> usize {
        degree + self.n * k + 1
    }

    pub fn degree_bound(v: &FockVector) -> usize {
        v.max_degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::qlr;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn vec_of(n: usize, terms: &[(&str, &str)]) -> FockVector {
        let mut v = FockVector::zero(n);
        for (a, c) in terms {
            v.add_term(p(a), &poly(c));
        }
        v
    }

    #[test]
    fn embedding() {
        assert_eq!(embed_stable(&p("4"), 2).unwrap(), Weight::new(vec![4, -1]));
        assert_eq!(embed_stable(&Partition::empty(), 3).unwrap(), Weight::new(vec![0, -1, -2]));
        assert!(embed_stable(&p("1,1,1"), 2).is_err());
        assert_eq!(unembed(&Weight::new(vec![4, -1])), Some(p("4")));
        assert_eq!(unembed(&Weight::new(vec![0, -2])), None);
    }

    #[test]
    fn matrices_small() {
        let m = infty_matrices(4, 2).unwrap();
        let col = m.index(&p("4")).unwrap();
        let e: Vec<Poly> = ["4", "3,1", "2,2"].iter().map(|b| m.e.get(col, m.index(&p(b)).unwrap()).substitute_neg_inv()).collect();
        assert_eq!(e, vec![poly("1"), poly("-q^-1"), poly("q^-2")]);
        let col = m.index(&p("3,1")).unwrap();
        let d: Vec<Poly> = ["3,1", "2,2", "2,1,1"].iter().map(|a| m.d.get(m.index(&p(a)).unwrap(), col).clone()).collect();
        assert_eq!(d, vec![poly("1"), poly("q"), poly("q^2")]);
        let z = infty_matrices(0, 2).unwrap();
        for x in [&z.b, &z.d, &z.e, &z.g] {
            assert!(x.is_identity());
        }
        assert!(m.g.mul(&m.d).is_identity());
    }

    #[test]
    fn stability_in_rank() {
        for k in 0..=5 {
            let r0 = k.max(1);
            let mut a = FockR::new(2, r0).unwrap();
            let mut b = FockR::new(2, r0 + 2).unwrap();
            let (_, d0) = a.canonical_matrix(k, Sign::Plus).unwrap();
            let (_, d2) = b.canonical_matrix(k, Sign::Plus).unwrap();
            assert_eq!(d0, d2, "k={}", k);
        }
    }

    #[test]
    fn inversion_formula() {
        for k in 0..=8 {
            assert!(inversion_check(k, 2).unwrap(), "n=2 k={}", k);
        }
        for k in 0..=6 {
            assert!(inversion_check(k, 3).unwrap(), "n=3 k={}", k);
        }
    }

    #[test]
    fn generator_examples() {
        assert_eq!(fi_cells(0, &FockVector::basis(&Partition::empty(), 2)), vec_of(2, &[("1", "1")]));
        // In ℱ_1, e_1|2⟩ = |1⟩; the rank correction turns this into q⁻¹ on ℱ_∞.
        let f1 = FockR::new(2, 1).unwrap();
        let w = WedgeVector::basis(&Weight::new(vec![2]), 2).unwrap();
        assert_eq!(f1.ei(1, &w), WedgeVector::basis(&Weight::new(vec![1]), 2).unwrap());
        assert_eq!(ei_cells(1, &FockVector::basis(&p("2"), 2)), vec_of(2, &[("1", "q^-1")]));
        assert!(ei_cells(0, &FockVector::basis(&Partition::empty(), 2)).is_zero());
        assert_eq!(hi_exponent(&Partition::empty(), 0, 2), 1);
        assert_eq!(hi_exponent(&p("1"), 0, 2), -1);
    }

    /// φ_r intertwines f_i exactly and e_i up to q^{−δ_{i≡−r}}.
    #[test]
    fn generators_match_finite_rank() {
        for n in [2usize, 3] {
            let f_inf = FockInfty::new(n).unwrap();
            let _ = f_inf.n();
            for k in 0..=6 {
                for alpha in partitions_of(k) {
                    for r in [k + 1, k + 2] {
                        let fr = FockR::new(n, r).unwrap();
                        let w = WedgeVector::basis(&embed_stable(&alpha, r).unwrap(), n).unwrap();
                        let back = |x: &WedgeVector| {
                            let mut v = FockVector::zero(n);
                            for (l, c) in &x.terms {
                                if let Some(b) = unembed(l) {
                                    v.add_term(b, c);
                                }
                            }
                            v
                        };
                        let v = FockVector::basis(&alpha, n);
                        for i in 0..n {
                            assert_eq!(back(&fr.fi(i, &w)), fi_cells(i, &v));
                            let corr = i64::from(i == (n - r % n) % n);
                            assert_eq!(back(&fr.ei(i, &w)).scale(&Poly::q_pow(-corr)), ei_cells(i, &v), "{} i={} r={}", alpha, i, r);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn heisenberg_examples() {
        let mut f = FockInfty::new(2).unwrap();
        let empty = FockVector::basis(&Partition::empty(), 2);
        assert_eq!(f.heisenberg_bk(-1, &empty).unwrap(), vec_of(2, &[("2", "1"), ("1,1", "-q^-1")]));
        assert!(f.heisenberg_bk(1, &empty).unwrap().is_zero());
        let x = f.heisenberg_bk(-1, &empty).unwrap();
        let ab = f.heisenberg_bk(1, &x).unwrap();
        let ba = { let y = f.heisenberg_bk(1, &empty).unwrap(); f.heisenberg_bk(-1, &y).unwrap() };
        assert_eq!(ab.sub(&ba), empty.scale(&poly("1+q^-2")));
        assert!(f.heisenberg_bk(0, &empty).is_err());
    }

    fn heisenberg_constant(k: i64, n: usize) -> Poly {
        let mut acc = Poly::zero();
        for j in 0..n as i64 {
            acc += &Poly::q_pow(-2 * k * j);
        }
        acc.scale(&BigInt::from(k))
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(conjugate_vector(&FockVector::basis(&p("2,1"), 2)), FockVector::basis(&p("2,1"), 2));
        assert_eq!(conjugate_vector(&vec_of(2, &[("3", "q")])), vec_of(2, &[("1,1,1", "q^-1")]));
        for n in [2usize, 3] {
            let mut f = FockInfty::new(n).unwrap();
            for k in 0..=4 {
                for lam in partitions_of(k) {
                    let g = f.canonical(&lam.scaled(n), Sign::Minus).unwrap();
                    let h = f.canonical(&lam.conjugate().scaled(n), Sign::Minus).unwrap();
                    let pre = Poly::monomial(((n - 1) * k) as i64, BigInt::from(if (n - 1) * k % 2 == 0 { 1 } else { -1 }));
                    assert_eq!(conjugate_vector(&g), h.scale(&pre), "n={} λ={}", n, lam);
                }
            }
        }
    }

    /// c^λ_{μ}(q⁻¹) = q^{−(n−1)|λ|} c^{λ′}_{reversed conjugate quotient}(q)
    #[test]
    fn qlr_conjugation_symmetry() {
        for n in [2usize, 3] {
            for total in 0..=4 {
                for comp in crate::partitions::compositions_of(total).into_iter().filter(|c| c.len() <= n) {
                    let mut sizes = comp.clone();
                    sizes.resize(n, 0);
                    let mut quotients: Vec<Vec<Partition>> = vec![vec![]];
                    for &s in &sizes {
                        quotients = quotients
                            .into_iter()
                            .flat_map(|q| partitions_of(s).into_iter().map(move |x| {
                                let mut q = q.clone();
                                q.push(x);
                                q
                            }))
                            .collect();
                    }
                    for quot in quotients {
                        let rev: Vec<Partition> = quot.iter().rev().map(Partition::conjugate).collect();
                        let a = qlr(&quot, n).unwrap();
                        let b = qlr(&rev, n).unwrap();
                        let shift = -(((n - 1) * total) as i64);
                        for lam in a.keys().chain(b.keys()) {
                            let lhs = a.get(lam).cloned().unwrap_or_default().bar();
                            let rhs = b.get(&lam.conjugate()).cloned().unwrap_or_default().shift(shift);
                            assert_eq!(lhs, rhs, "n={} {:?} {}", n, quot, lam);
                        }
                    }
                }
            }
        }
    }

    fn arb_vector(n: usize, max_deg: usize) -> impl Strategy<Value = FockVector> {
        let shapes: Vec<Partition> = (0..=max_deg).flat_map(partitions_of).collect();
        proptest::collection::vec((proptest::sample::select(shapes), -2i64..3, -2i64..3), 1..4).prop_map(move |terms| {
            let mut v = FockVector::zero(n);
            for (a, e, c) in terms {
                v.add_term(a, &Poly::monomial(e, BigInt::from(c)));
            }
            v
        })
    }

    fn arb_n_vector(max_deg: usize) -> impl Strategy<Value = FockVector> {
        (2usize..4).prop_flat_map(move |n| arb_vector(n, max_deg))
    }

    fn arb_pair(du: usize, dv: usize) -> impl Strategy<Value = (FockVector, FockVector)> {
        (2usize..4).prop_flat_map(move |n| (arb_vector(n, du), arb_vector(n, dv)))
    }

    proptest! {
        #![proptest_config(crate::testutil::config(1000))]

        #[test]
        fn heisenberg_commutator(v in arb_n_vector(4), k in 1i64..3) {
            let n = v.n;
            let mut f = FockInfty::new(n).unwrap();
            let ab = { let x = f.heisenberg_bk(-k, &v).unwrap(); f.heisenberg_bk(k, &x).unwrap() };
            let ba = { let x = f.heisenberg_bk(k, &v).unwrap(); f.heisenberg_bk(-k, &x).unwrap() };
            prop_assert_eq!(ab.sub(&ba), v.scale(&heisenberg_constant(k, n)));
        }

        #[test]
        fn bar_symmetry_and_involution((u, v) in arb_pair(6, 6)) {
            let n = u.n;
            let mut f = FockInfty::new(n).unwrap();
            let ub = f.bar(&u).unwrap();
            prop_assert_eq!(f.bar(&ub).unwrap(), u.clone());
            let vcb = { let c = conjugate_vector(&v); f.bar(&c).unwrap() };
            prop_assert_eq!(scalar_product(&ub, &v), scalar_product(&conjugate_vector(&u), &vcb));
        }

        #[test]
        fn ef_commutator(v in arb_n_vector(6), i in 0usize..3, j in 0usize..3) {
            let n = v.n;
            let (i, j) = (i % n, j % n);
            let lhs = ei_cells(i, &fi_cells(j, &v)).sub(&fi_cells(j, &ei_cells(i, &v)));
            let mut rhs = FockVector::zero(n);
            if i == j {
                for (a, c) in &v.terms {
                    let h = hi_exponent(a, i, n);
                    // [h]_q = (q^h − q^{−h}) / (q − q⁻¹)
                    let mut qint = Poly::zero();
                    for t in 0..h.abs() {
                        qint += &Poly::q_pow(h.abs() - 1 - 2 * t);
                    }
                    if h < 0 {
                        qint = -qint;
                    }
                    rhs.add_term(a.clone(), &(c * &qint));
                }
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn generator_adjointness((u, v) in arb_pair(5, 6), i in 0usize..3) {
            let n = u.n;
            let i = i % n;
            prop_assert_eq!(scalar_product(&fi_cells(i, &u), &v), scalar_product(&u, &qh(i, -1, &ei_cells(i, &v))));
        }

        #[test]
        fn operator_routes_and_adjointness((u, v) in arb_pair(3, 5), beta in proptest::collection::vec(1usize..3, 0..3)) {
            let n = u.n;
            let mut f = FockInfty::new(n).unwrap();
            for kind in [UvKind::UTilde, UvKind::VTilde, UvKind::U, UvKind::V] {
                let y = f.uv(kind, &beta, &u, Route::Y).unwrap();
                prop_assert_eq!(&y, &f.uv(kind, &beta, &u, Route::Ribbon).unwrap(), "{:?}", kind);
            }
            for (raise, lower) in [(UvKind::VTilde, UvKind::UTilde), (UvKind::V, UvKind::U)] {
                let a = f.uv(raise, &beta, &u, Route::Ribbon).unwrap();
                let b = f.uv(lower, &beta, &v, Route::Ribbon).unwrap();
                prop_assert_eq!(scalar_product(&a, &v), scalar_product(&u, &b));
            }
            let k = beta.iter().sum::<usize>();
            let pre = Poly::monomial(((n - 1) * k) as i64, BigInt::from(if (n - 1) * k % 2 == 0 { 1 } else { -1 }));
            let lhs = conjugate_vector(&f.uv(UvKind::V, &beta, &u, Route::Ribbon).unwrap());
            let rhs = f.uv(UvKind::VTilde, &beta, &conjugate_vector(&u), Route::Ribbon).unwrap().scale(&pre);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
