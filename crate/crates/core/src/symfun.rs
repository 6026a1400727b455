//! Kostka numbers, inverse Kostka matrices, a brute-force Littlewood-Richardson
//! oracle, and the plethysm p_n ∘ s_λ.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::partitions::{littlewood_decompose, partitions_bounded, partitions_of, Partition};

/// Schur-basis expansion; all keys have the same size.
pub type SchurExpansion<C> = BTreeMap<Partition, C>;

/// Square integer matrix indexed by partitions of one integer, decreasing lex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub labels: Vec<Partition>,
    pub entries: Vec<Vec<BigInt>>,
}

/// Number of semistandard tableaux of shape λ and content μ (μ may be any composition).
pub fn kostka(lambda: &Partition, mu: &[usize]) -> u64 {
    if lambda.size() != mu.iter().sum::<usize>() {
        return 0;
    }
    let target = lambda.parts().to_vec();
    let mut memo = HashMap::new();
    kostka_rec(&target, mu, vec![0; target.len()], &mut memo)
}

fn kostka_rec(target: &[usize], mu: &[usize], cur: Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), u64>) -> u64 {
    let Some((&first, rest)) = mu.split_first() else {
        return u64::from(cur.as_slice() == target);
    };
    let key = (mu.len(), cur.clone());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for next in horizontal_strips(&cur, target, first) {
        total += kostka_rec(target, rest, next, memo);
    }
    memo.insert(key, total);
    total
}

/// Shapes ν ⊆ bound with ν/cur a horizontal strip of `size` cells (row-length vectors).
fn horizontal_strips(cur: &[usize], bound: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, left: usize, cur: &[usize], bound: &[usize], acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let cap = if i == 0 { bound[0] } else { bound[i].min(cur[i - 1]) };
        let lo = cur[i];
        for v in lo..=cap.min(lo + left) {
            acc.push(v);
            rec(i + 1, left - (v - lo), cur, bound, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, size, cur, bound, &mut Vec::new(), &mut out);
    out
}

/// K[λ][μ] over partitions of k in decreasing lex order.
pub fn kostka_matrix(k: usize) -> IntMatrix {
    let labels = partitions_of(k);
    let entries = labels
        .iter()
        .map(|l| labels.iter().map(|m| BigInt::from(kostka(l, m.parts()))).collect())
        .collect();
    IntMatrix { labels, entries }
}

/// κ with s_λ = Σ_ν κ[λ][ν] h_ν, i.e. κ·Kᵀ = I.
pub fn inverse_kostka(k: usize) -> IntMatrix {
    let km = kostka_matrix(k);
    let n = km.labels.len();
    // Kᵀ is lower unitriangular; solve κ Kᵀ = I row by row from the right.
    let mut kappa = vec![vec![BigInt::zero(); n]; n];
    for (row, out) in kappa.iter_mut().enumerate() {
        // Row of κ: x with Σ_ν x_ν K[μ][ν] = δ_{row,μ}. K[μ][ν] ≠ 0 only for ν ≥ μ in index.
        for mu in (0..n).rev() {
            let mut acc = if mu == row { BigInt::one() } else { BigInt::zero() };
            for nu in mu + 1..n {
                acc -= &out[nu] * &km.entries[mu][nu];
            }
            out[mu] = acc;
        }
    }
    IntMatrix { labels: km.labels, entries: kappa }
}

type Monomials = HashMap<Vec<u8>, BigInt>;

/// All distinct rearrangements of `v`.
fn distinct_permutations(v: &[u8]) -> Vec<Vec<u8>> {
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // Standard next-permutation walk.
    loop {
        let Some(i) = (0..sorted.len().saturating_sub(1)).rev().find(|&i| sorted[i] < sorted[i + 1]) else {
            break;
        };
        let j = (i + 1..sorted.len()).rev().find(|&j| sorted[j] > sorted[i]).unwrap();
        sorted.swap(i, j);
        sorted[i + 1..].reverse();
        out.push(sorted.clone());
    }
    out
}

/// s_λ(x_1..x_N) as a monomial map.
pub fn schur_polynomial(lambda: &Partition, nvars: usize) -> HashMap<Vec<u8>, BigInt> {
    let mut out = Monomials::new();
    if lambda.len() > nvars {
        return out;
    }
    for mu in partitions_bounded(lambda.size(), lambda.size(), nvars) {
        let k = kostka(lambda, mu.parts());
        if k == 0 {
            continue;
        }
        let mut exps: Vec<u8> = mu.parts().iter().map(|&p| p as u8).collect();
        exps.resize(nvars, 0);
        for perm in distinct_permutations(&exps) {
            out.insert(perm, BigInt::from(k));
        }
    }
    out
}

fn multiply(a: &Monomials, b: &Monomials) -> Monomials {
    let mut out = Monomials::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Reads a symmetric polynomial in N variables back on the Schur basis.
pub fn schur_coefficients(poly: &HashMap<Vec<u8>, BigInt>, nvars: usize) -> SchurExpansion<BigInt> {
    let Some(deg) = poly.keys().next().map(|e| e.iter().map(|&x| x as usize).sum::<usize>()) else {
        return SchurExpansion::new();
    };
    let shapes = partitions_bounded(deg, deg, nvars);
    let mut out = SchurExpansion::new();
    for mu in &shapes {
        let mut key: Vec<u8> = mu.parts().iter().map(|&p| p as u8).collect();
        key.resize(nvars, 0);
        let mut a = poly.get(&key).cloned().unwrap_or_default();
        for (lam, c) in &out {
            a -= c * BigInt::from(kostka(lam, mu.parts()));
        }
        if !a.is_zero() {
            out.insert(mu.clone(), a);
        }
    }
    out
}

/// Multiplicities of s_λ in Π s_{factor}, by monomial expansion in Σ|factor| variables.
pub fn lr_product(factors: &[Partition]) -> SchurExpansion<BigInt> {
    let nvars: usize = factors.iter().map(|f| f.size()).sum::<usize>().max(1);
    let mut acc = Monomials::new();
    acc.insert(vec![0; nvars], BigInt::one());
    for f in factors {
        acc = multiply(&acc, &schur_polynomial(f, nvars));
    }
    if factors.iter().all(|f| f.is_empty()) {
        let mut out = SchurExpansion::new();
        out.insert(Partition::empty(), BigInt::one());
        return out;
    }
    schur_coefficients(&acc, nvars)
}

/// p_n ∘ s_λ restricted to shapes with at most r rows, via Littlewood's sign/quotient rule.
pub fn plethysm_pn_schur(lambda: &Partition, n: i64, r: usize) -> SchurExpansion<BigInt> {
    let mut out = SchurExpansion::new();
    let mut cache: HashMap<Vec<Partition>, SchurExpansion<BigInt>> = HashMap::new();
    let k = n as usize * lambda.size();
    for mu in partitions_bounded(k, k, r) {
        let Ok(l) = littlewood_decompose(&mu, n, r) else { continue };
        if l.sign == 0 {
            continue;
        }
        let prod = cache.entry(l.quotient.clone()).or_insert_with(|| lr_product(&l.quotient));
        if let Some(c) = prod.get(lambda) {
            out.insert(mu, c * BigInt::from(l.sign));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p("3,1"), &[3, 1]), 1);
        assert_eq!(kostka(&p("2,1"), &[1, 1, 1]), 2);
        assert_eq!(kostka(&p("1,1"), &[2]), 0);
        assert_eq!(kostka(&p("3,2"), &[1, 2, 2]), kostka(&p("3,2"), &[2, 2, 1]));
    }

    #[test]
    fn inverse_kostka_examples() {
        let k1 = inverse_kostka(1);
        assert_eq!(k1.entries, vec![vec![big(1)]]);
        let k2 = inverse_kostka(2);
        assert_eq!(k2.labels, vec![p("2"), p("1,1")]);
        assert_eq!(k2.entries, vec![vec![big(1), big(0)], vec![big(-1), big(1)]]);
    }

    #[test]
    fn kappa_times_kostka_transpose_is_identity() {
        for k in 0..=7 {
            let km = kostka_matrix(k);
            let kappa = inverse_kostka(k);
            let n = km.labels.len();
            for i in 0..n {
                for j in 0..n {
                    let s: BigInt = (0..n).map(|l| &kappa.entries[i][l] * &km.entries[j][l]).sum();
                    assert_eq!(s, big((i == j) as i64), "k={} ({},{})", k, i, j);
                }
            }
        }
    }

    #[test]
    fn lr_examples() {
        let e = lr_product(&[p("1"), p("1")]);
        assert_eq!(e, [(p("2"), big(1)), (p("1,1"), big(1))].into_iter().collect());
        assert_eq!(lr_product(&[p("2,1"), p("2,1")])[&p("3,2,1")], big(2));
        assert_eq!(lr_product(&[p("1"), p("1,1")])[&p("2,1")], big(1));
        assert_eq!(lr_product(&[]), [(Partition::empty(), big(1))].into_iter().collect());
    }

    /// Brute force: substitute x_i ↦ x_i^n in s_λ and re-expand.
    fn plethysm_oracle(lambda: &Partition, n: usize) -> SchurExpansion<BigInt> {
        let nvars = (n * lambda.size()).max(1);
        let s = schur_polynomial(lambda, nvars);
        let powered: HashMap<Vec<u8>, BigInt> =
            s.into_iter().map(|(e, c)| (e.iter().map(|x| x * n as u8).collect(), c)).collect();
        schur_coefficients(&powered, nvars)
    }

    #[test]
    fn plethysm_examples() {
        let e = plethysm_pn_schur(&p("1"), 2, 2);
        assert_eq!(e, [(p("2"), big(1)), (p("1,1"), big(-1))].into_iter().collect());
        let e = plethysm_pn_schur(&p("1"), 3, 3);
        assert_eq!(e, [(p("3"), big(1)), (p("2,1"), big(-1)), (p("1,1,1"), big(1))].into_iter().collect());
        let e = plethysm_pn_schur(&Partition::empty(), 2, 1);
        assert_eq!(e, [(Partition::empty(), big(1))].into_iter().collect());
    }

    #[test]
    fn plethysm_matches_brute_force() {
        for (n, maxk) in [(2usize, 4usize), (3, 3)] {
            for k in 1..=maxk {
                for lam in partitions_of(k) {
                    let r = n * k;
                    assert_eq!(plethysm_pn_schur(&lam, n as i64, r), plethysm_oracle(&lam, n), "{} n={}", lam, n);
                }
            }
        }
    }

    #[test]
    fn lr_symmetric() {
        let a = p("2,1");
        let b = p("2");
        let c = p("1,1");
        assert_eq!(lr_product(&[a.clone(), b.clone(), c.clone()]), lr_product(&[c, a, b]));
    }
}
