//! The extended affine symmetric group acting on Z^r at level m.
//!
//! Elements are stored as w = y^β σ, acting by π_m(w)λ = σλ + mβ where
//! (σλ)_{σ(i)} = λ_i. Indices are 0-based internally; `s(i)` uses the usual
//! labels 0..r−1 with s_0 the affine reflection.

use std::fmt;

use crate::partitions::Weight;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineElement {
    beta: Vec<i64>,
    sigma: Vec<usize>,
}

fn apply_perm(sigma: &[usize], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[sigma[i]] = x;
    }
    out
}

fn invert_perm(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

fn check_level(m: i64) -> Result<()> {
    if m == 0 {
        Err(Error::ZeroLevel)
    } else {
        Ok(())
    }
}

impl AffineElement {
    pub fn identity(r: usize) -> Self {
        AffineElement { beta: vec![0; r], sigma: (0..r).collect() }
    }

    /// Builds y^β σ; `sigma[i]` is the image of position i.
    pub fn from_parts(beta: Vec<i64>, sigma: Vec<usize>) -> Result<Self> {
        let r = sigma.len();
        if beta.len() != r {
            return Err(Error::RankMismatch { expected: r, got: beta.len() });
        }
        let mut seen = vec![false; r];
        for &s in &sigma {
            if s >= r || seen[s] {
                return Err(Error::Invalid(format!("{:?} is not a permutation", sigma)));
            }
            seen[s] = true;
        }
        Ok(AffineElement { beta, sigma })
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn beta(&self) -> &[i64] {
        &self.beta
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Simple reflection s_i, 0 ≤ i < r (requires r ≥ 2).
    pub fn s(i: usize, r: usize) -> Result<Self> {
        if r < 2 || i >= r {
            return Err(Error::Invalid(format!("no generator s{} in rank {}", i, r)));
        }
        let mut w = Self::identity(r);
        if i == 0 {
            w.sigma.swap(0, r - 1);
            w.beta[0] = 1;
            w.beta[r - 1] = -1;
        } else {
            w.sigma.swap(i - 1, i);
        }
        Ok(w)
    }

    /// τ: λ ↦ (λ_r + m, λ_1, …, λ_{r−1}).
    pub fn tau(r: usize) -> Self {
        let mut beta = vec![0; r];
        if r > 0 {
            beta[0] = 1;
        }
        AffineElement { beta, sigma: (0..r).map(|i| (i + 1) % r).collect() }
    }

    pub fn tau_pow(r: usize, k: i64) -> Self {
        let t = if k >= 0 { Self::tau(r) } else { Self::tau(r).inverse() };
        (0..k.unsigned_abs()).fold(Self::identity(r), |acc, _| acc.mul(&t))
    }

    /// The translation y^β.
    pub fn translation(beta: &[i64]) -> Self {
        AffineElement { beta: beta.to_vec(), sigma: (0..beta.len()).collect() }
    }

    /// y_i for 1 ≤ i ≤ r.
    pub fn y(i: usize, r: usize) -> Self {
        let mut beta = vec![0; r];
        beta[i - 1] = 1;
        Self::translation(&beta)
    }

    /// The longest element w₀ of the finite symmetric group.
    pub fn w0(r: usize) -> Self {
        AffineElement { beta: vec![0; r], sigma: (0..r).rev().collect() }
    }

    pub fn mul(&self, o: &AffineElement) -> AffineElement {
        let sg = apply_perm(&self.sigma, &o.beta);
        AffineElement {
            beta: self.beta.iter().zip(&sg).map(|(a, b)| a + b).collect(),
            sigma: o.sigma.iter().map(|&p| self.sigma[p]).collect(),
        }
    }

    pub fn inverse(&self) -> AffineElement {
        let inv = invert_perm(&self.sigma);
        let b = apply_perm(&inv, &self.beta);
        AffineElement { beta: b.iter().map(|x| -x).collect(), sigma: inv }
    }

    /// π_m(w)(λ) = σλ + mβ.
    pub fn act(&self, lambda: &[i64], m: i64) -> Result<Weight> {
        check_level(m)?;
        if lambda.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: lambda.len() });
        }
        Ok(Weight::new(self.act_raw(lambda, m)))
    }

    pub(crate) fn act_raw(&self, lambda: &[i64], m: i64) -> Vec<i64> {
        let mut out = apply_perm(&self.sigma, lambda);
        for (o, b) in out.iter_mut().zip(&self.beta) {
            *o += m * b;
        }
        out
    }

    /// The exponent k in w = τ^k v with v in the non-extended affine group.
    pub fn tau_exponent(&self) -> i64 {
        self.beta.iter().sum()
    }

    /// Length by the Iwahori-Matsumoto formula, writing w = σ y^λ with λ = σ⁻¹β.
    pub fn length(&self) -> usize {
        let r = self.rank();
        let s = &self.sigma;
        let lam: Vec<i64> = (0..r).map(|j| self.beta[s[j]]).collect();
        let mut l = 0;
        for i in 0..r {
            for j in i + 1..r {
                let d = lam[i] - lam[j];
                l += if s[i] < s[j] { d.abs() } else { (d + 1).abs() } as usize;
            }
        }
        l
    }

    /// (k, [i_1, …, i_l]) with w = τ^k s_{i_1} ⋯ s_{i_l} and l = ℓ(w).
    pub fn word(&self) -> (i64, Vec<usize>) {
        let r = self.rank();
        let k = self.tau_exponent();
        let mut v = Self::tau_pow(r, -k).mul(self);
        let mut word = Vec::new();
        let mut len = v.length();
        while len > 0 {
            let mut reduced = false;
            for i in 0..r {
                let u = Self::s(i, r).unwrap().mul(&v);
                let lu = u.length();
                if lu < len {
                    word.push(i);
                    v = u;
                    len = lu;
                    reduced = true;
                    break;
                }
            }
            assert!(reduced, "no descent found for element of positive length");
        }
        (k, word)
    }

    /// Parses whitespace-separated tokens `s<i>`, `t`, `t^<k>`, `y^(a,b,…)`, `w0`, `1`.
    pub fn parse_word(s: &str, r: usize) -> Result<Self> {
        let bad = |pos: usize, msg: &str| Error::Parse { input: s.to_string(), pos, msg: msg.to_string() };
        let mut acc = Self::identity(r);
        let mut pos = 0;
        for tok in s.split_whitespace() {
            let at = s[pos..].find(tok).map(|x| x + pos).unwrap_or(pos);
            pos = at + tok.len();
            let g = if tok == "1" {
                Self::identity(r)
            } else if tok == "w0" {
                Self::w0(r)
            } else if tok == "t" {
                Self::tau(r)
            } else if let Some(e) = tok.strip_prefix("t^") {
                let k: i64 = e.trim_matches(|c| c == '{' || c == '}').parse().map_err(|_| bad(at, "bad exponent"))?;
                Self::tau_pow(r, k)
            } else if let Some(e) = tok.strip_prefix("y^") {
                let w: Weight = e.parse()?;
                if w.rank() != r {
                    return Err(bad(at, "translation has wrong rank"));
                }
                Self::translation(&w)
            } else if let Some(e) = tok.strip_prefix('s') {
                let i: usize = e.parse().map_err(|_| bad(at, "bad generator index"))?;
                Self::s(i, r).map_err(|_| bad(at, "generator index out of range"))?
            } else {
                return Err(bad(at, "unknown token"));
            };
            acc = acc.mul(&g);
        }
        Ok(acc)
    }
}

impl fmt::Display for AffineElement {
    /// `t^k s_i s_j …`, or `1` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, word) = self.word();
        let mut toks: Vec<String> = Vec::new();
        if k != 0 {
            toks.push(format!("t^{}", k));
        }
        toks.extend(word.iter().map(|i| format!("s{}", i)));
        if toks.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", toks.join(" "))
        }
    }
}

/// Sign of λ_i − λ_{i+1} with λ_0 = λ_r + m (1-based entries, 0 ≤ i < r).
pub fn descent(lambda: &[i64], i: usize, m: i64) -> i32 {
    let r = lambda.len();
    let d = if i == 0 { lambda[r - 1] + m - lambda[0] } else { lambda[i - 1] - lambda[i] };
    d.signum() as i32
}

/// s_i acting at level m.
pub fn reflect(lambda: &[i64], i: usize, m: i64) -> Vec<i64> {
    let r = lambda.len();
    let mut v = lambda.to_vec();
    if i == 0 {
        v[0] = lambda[r - 1] + m;
        v[r - 1] = lambda[0] - m;
    } else {
        v.swap(i - 1, i);
    }
    v
}

/// The representative of λ's orbit in the fundamental alcove:
/// m < ν_1 ≤ … ≤ ν_r ≤ 0 for m < 0, and m > ν_1 ≥ … ≥ ν_r ≥ 0 for m > 0.
pub fn alcove_rep(lambda: &[i64], m: i64) -> Result<Weight> {
    check_level(m)?;
    let a = m.abs();
    let mut v: Vec<i64> = if m < 0 {
        lambda.iter().map(|x| -((-x).rem_euclid(a))).collect()
    } else {
        lambda.iter().map(|x| x.rem_euclid(a)).collect()
    };
    if m < 0 {
        v.sort_unstable();
    } else {
        v.sort_unstable_by(|x, y| y.cmp(x));
    }
    Ok(Weight::new(v))
}

/// Reduces λ by s_i whenever desc(λ,i,m) = −sgn(m), smallest i first.
/// Returns the applied indices and the terminal weight.
pub fn descend(lambda: &[i64], m: i64) -> (Vec<usize>, Vec<i64>) {
    let r = lambda.len();
    let target = -(m.signum() as i32);
    let mut cur = lambda.to_vec();
    let mut steps = Vec::new();
    if r < 2 {
        return (steps, cur);
    }
    while let Some(i) = (0..r).find(|&i| descent(&cur, i, m) == target) {
        cur = reflect(&cur, i, m);
        steps.push(i);
    }
    (steps, cur)
}

/// ℓ(w(λ,m)).
pub fn coset_length(lambda: &[i64], m: i64) -> usize {
    descend(lambda, m).0.len()
}

/// The minimal-length w(λ,m) with w(λ,m)·ν = λ, ν the alcove representative.
pub fn min_coset_rep(lambda: &[i64], m: i64) -> Result<AffineElement> {
    let nu = alcove_rep(lambda, m)?;
    let r = lambda.len();
    let (steps, stuck) = descend(lambda, m);
    let diff: i64 = stuck.iter().sum::<i64>() - nu.sum();
    if diff % m != 0 {
        return Err(Error::Invalid(format!("τ-power not integral for {:?}", lambda)));
    }
    let k = diff / m;
    let t = AffineElement::tau_pow(r, k);
    if t.act_raw(&nu, m) != stuck {
        return Err(Error::Invalid(format!("terminal weight {:?} is not a τ-translate of the alcove", stuck)));
    }
    let mut w = AffineElement::identity(r);
    for &i in &steps {
        w = w.mul(&AffineElement::s(i, r)?);
    }
    Ok(w.mul(&t))
}

/// n_λ = w₀ y^λ for dominant λ.
pub fn max_double_coset_rep(lambda: &[i64]) -> Result<AffineElement> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDominant(Weight::new(lambda.to_vec()).to_string()));
    }
    Ok(AffineElement::w0(lambda.len()).mul(&AffineElement::translation(lambda)))
}

/// True if λ and μ lie in the same π_m-orbit.
pub fn same_orbit(lambda: &[i64], mu: &[i64], m: i64) -> bool {
    lambda.len() == mu.len()
        && Weight::new(lambda.to_vec()).residues(m) == Weight::new(mu.to_vec()).residues(m)
}
