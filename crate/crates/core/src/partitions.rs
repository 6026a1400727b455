//! Partitions, integer weights, conjugation and the Littlewood n-quotient.

use std::fmt;
use std::ops::{Add, Deref, DerefMut, Sub};
use std::str::FromStr;

use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Trims trailing zeros; errors if the parts are not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{:?} is not a partition", parts)));
        }
        Ok(Partition { parts })
    }

    /// Sorts the given parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts.retain(|&p| p > 0);
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part i (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        let parts = (0..w).map(|j| self.parts.iter().take_while(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// Young diagram containment.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Padded to r entries; errors if longer than r.
    pub fn to_weight(&self, r: usize) -> Result<Weight> {
        if self.len() > r {
            return Err(Error::RankTooSmall { rank: r, what: format!("partition {}", self) });
        }
        let mut v: Vec<i64> = self.parts.iter().map(|&p| p as i64).collect();
        v.resize(r, 0);
        Ok(Weight(v))
    }

    /// Reads a dominant weight with nonnegative entries as a partition.
    pub fn from_weight(w: &[i64]) -> Option<Partition> {
        if w.iter().any(|&x| x < 0) || w.windows(2).any(|p| p[0] < p[1]) {
            return None;
        }
        Partition::new(w.iter().map(|&x| x as usize).collect()).ok()
    }

    /// Multiplies every part by n.
    pub fn scaled(&self, n: usize) -> Partition {
        Partition { parts: self.parts.iter().map(|p| p * n).collect() }
    }

    /// Compact label in the style `(42^2)` when all parts are below 10.
    pub fn compact(&self) -> String {
        if self.parts.iter().any(|&p| p >= 10) {
            return self.to_string();
        }
        let mut s = String::from("(");
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == p {
                j += 1;
            }
            s.push_str(&p.to_string());
            if j - i > 1 {
                s.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        s.push(')');
        s
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(4,2,2)`, `4,2,2`, `(4,2^2)`, the compact `(42^2)`, `()` and `∅`.
    /// In compact form every digit is a part, except that `10` is ten.
    fn from_str(s: &str) -> Result<Partition> {
        let bad = |pos: usize, msg: &str| Error::Parse { input: s.to_string(), pos, msg: msg.to_string() };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() || t == "∅" || t == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let chars: Vec<char> = t.chars().collect();
        let compact = !t.contains(',');
        let mut i = 0;
        while i < chars.len() {
            let start = i;
            let value = if compact {
                if !chars[i].is_ascii_digit() {
                    return Err(bad(i, "expected digit"));
                }
                i += 1;
                if chars[start] == '1' && i < chars.len() && chars[i] == '0' {
                    i += 1;
                    10
                } else {
                    chars[start].to_digit(10).unwrap() as usize
                }
            } else {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let d: String = chars[start..i].iter().collect();
                d.parse::<usize>().map_err(|_| bad(start, "expected part"))?
            };
            let mut mult = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let es = i;
                let d: String = if i < chars.len() && chars[i] == '{' {
                    let close = chars[i..].iter().position(|&c| c == '}').ok_or_else(|| bad(i, "unclosed brace"))?;
                    let d = chars[i + 1..i + close].iter().collect();
                    i += close + 1;
                    d
                } else if compact {
                    // Without braces a compact multiplicity is one digit: (4^21^2) = (4,4,1,1).
                    i += 1;
                    chars[es..i.min(chars.len())].iter().collect()
                } else {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    chars[es..i].iter().collect()
                };
                mult = d.parse::<usize>().map_err(|_| bad(es, "expected multiplicity"))?;
            }
            if !compact && i < chars.len() {
                if chars[i] != ',' {
                    return Err(bad(i, "expected ','"));
                }
                i += 1;
            }
            parts.extend(std::iter::repeat(value).take(mult));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad(0, "parts must be weakly decreasing"));
        }
        Partition::new(parts)
    }
}

/// All partitions of k, in decreasing lexicographic order.
pub fn partitions_of(k: usize) -> Vec<Partition> {
    partitions_bounded(k, k, usize::MAX)
}

/// Partitions of k with parts ≤ max_part and at most max_len parts, decreasing lex.
pub fn partitions_bounded(k: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
    fn rec(k: usize, max_part: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if k == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=max_part.min(k)).rev() {
            cur.push(p);
            rec(k - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// All compositions of k (positive parts).
pub fn compositions_of(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=k {
        for mut rest in compositions_of(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// An integer vector of fixed length r.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(v: Vec<i64>) -> Self {
        Weight(v)
    }

    pub fn zero(r: usize) -> Self {
        Weight(vec![0; r])
    }

    /// ρ = (r−1, …, 1, 0).
    pub fn rho(r: usize) -> Self {
        Weight((0..r).rev().map(|x| x as i64).collect())
    }

    /// ρ* = (0, −1, …, −r+1).
    pub fn rho_star(r: usize) -> Self {
        Weight((0..r).map(|x| -(x as i64)).collect())
    }

    /// The all-ones vector times c.
    pub fn constant(r: usize, c: i64) -> Self {
        Weight(vec![c; r])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// w₀λ, the reversed vector.
    pub fn reversed(&self) -> Weight {
        Weight(self.0.iter().rev().copied().collect())
    }

    /// Entries sorted in decreasing order.
    pub fn sorted_desc(&self) -> Weight {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight(v)
    }

    /// Entry residues mod |m| in increasing order.
    pub fn residues(&self, m: i64) -> Vec<i64> {
        let mut v: Vec<i64> = self.0.iter().map(|x| x.rem_euclid(m.abs())).collect();
        v.sort_unstable();
        v
    }

    /// If this is α + ρ for a partition α, return α.
    pub fn minus_rho_partition(&self) -> Option<Partition> {
        let r = self.rank();
        let d: Vec<i64> = self.0.iter().zip(Weight::rho(r).0).map(|(a, b)| a - b).collect();
        Partition::from_weight(&d)
    }
}

impl Deref for Weight {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl DerefMut for Weight {
    fn deref_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl<const N: usize> From<[i64; N]> for Weight {
    fn from(v: [i64; N]) -> Self {
        Weight(v.to_vec())
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        assert_eq!(self.rank(), o.rank(), "rank mismatch");
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        assert_eq!(self.rank(), o.rank(), "rank mismatch");
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// `(a,b,c)` or `a,b,c`; entries may be negative.
    fn from_str(s: &str) -> Result<Weight> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Weight(Vec::new()));
        }
        let mut v = Vec::new();
        let mut pos = s.find(t).unwrap_or(0);
        for tok in t.split(',') {
            let x = tok.trim().parse::<i64>().map_err(|_| Error::Parse {
                input: s.to_string(),
                pos,
                msg: format!("bad entry {:?}", tok),
            })?;
            v.push(x);
            pos += tok.len() + 1;
        }
        Ok(Weight(v))
    }
}

/// Number of pairs i < j with v[i] < v[j].
pub fn ascents_inversions(v: &[i64]) -> usize {
    let mut c = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] < v[j] {
                c += 1;
            }
        }
    }
    c
}

/// Result of the Littlewood decomposition: the n-sign and n-quotient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Littlewood {
    /// +1, −1, or 0 when μ+ρ is not in the orbit of ρ.
    pub sign: i32,
    /// Empty when `sign == 0`.
    pub quotient: Vec<Partition>,
}

/// Writes μ+ρ = γ + nα with γ a permutation of ρ whose equal-residue entries
/// appear in decreasing order; α read along each residue class gives the quotient.
pub fn littlewood_decompose(mu: &Partition, n: i64, r: usize) -> Result<Littlewood> {
    if n <= 0 {
        return Err(Error::BadModulus(n));
    }
    if mu.len() > r {
        return Err(Error::RankTooSmall { rank: r, what: format!("partition {}", mu) });
    }
    let lam = &mu.to_weight(r)? + &Weight::rho(r);
    let zero = Littlewood { sign: 0, quotient: Vec::new() };
    if lam.residues(n) != Weight::rho(r).residues(n) {
        return Ok(zero);
    }
    // Within each residue class, entries of μ+ρ (already decreasing) take the
    // ρ-values of that class in decreasing order.
    let mut gamma = vec![0i64; r];
    for c in 0..n {
        let targets: Vec<i64> = (0..r as i64).rev().filter(|x| x % n == c).collect();
        let positions: Vec<usize> = (0..r).filter(|&i| lam[i].rem_euclid(n) == c).collect();
        for (pos, g) in positions.iter().zip(targets) {
            gamma[*pos] = g;
        }
    }
    let alpha: Vec<i64> = (0..r).map(|i| (lam[i] - gamma[i]) / n).collect();
    if alpha.iter().any(|&a| a < 0) {
        return Ok(zero);
    }
    let sign = if ascents_inversions(&gamma) % 2 == 0 { 1 } else { -1 };
    let mut quotient = Vec::with_capacity(n as usize);
    for k in 0..n {
        let res = (k + r as i64).rem_euclid(n);
        let seq: Vec<usize> =
            (0..r).filter(|&i| gamma[i].rem_euclid(n) == res).map(|i| alpha[i] as usize).collect();
        quotient.push(Partition::new(seq).map_err(|e| Error::Invalid(format!("quotient: {}", e)))?);
    }
    Ok(Littlewood { sign, quotient })
}

/// The unique partition with empty n-core and the given n-quotient.
pub fn from_quotient(quotient: &[Partition], n: i64) -> Result<Partition> {
    if n <= 0 || quotient.len() != n as usize {
        return Err(Error::BadModulus(n));
    }
    let longest = quotient.iter().map(|p| p.len()).max().unwrap_or(0);
    let r = (n as usize) * (longest + 1);
    let mut entries = Vec::with_capacity(r);
    for (k, q) in quotient.iter().enumerate() {
        let res = (k as i64 + r as i64).rem_euclid(n);
        let class: Vec<i64> = (0..r as i64).rev().filter(|x| x % n == res).collect();
        for (i, g) in class.iter().enumerate() {
            entries.push(g + n * q.part(i) as i64);
        }
    }
    entries.sort_unstable_by(|a, b| b.cmp(a));
    let rho = Weight::rho(r);
    let parts: Vec<usize> = entries.iter().zip(rho.iter()).map(|(a, b)| (a - b) as usize).collect();
    Partition::new(parts)
}
