//! Sparse Laurent polynomials in q over an exact coefficient ring.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::Error;

/// Coefficient ring: anything with exact `+`, `-`, `*`, `0` and `1`.
pub trait Coeff:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
}

impl<T> Coeff for T where
    T: Clone
        + Eq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Send
        + Sync
{
}

/// Terms are kept sorted by exponent with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<C> {
    terms: Vec<(i64, C)>,
}

pub type Poly = LaurentPoly<BigInt>;

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    /// The variable q.
    pub fn q() -> Self {
        Self::monomial(1, C::one())
    }

    /// `c * q^e`.
    pub fn monomial(e: i64, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// Builds from arbitrary (exponent, coefficient) pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(it: I) -> Self {
        let mut v: Vec<(i64, C)> = it.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut terms: Vec<(i64, C)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match terms.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.clone() + c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|t| !t.1.is_zero());
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(i64, C)] {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> C {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    /// q ↦ q⁻¹.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// q ↦ −q⁻¹.
    pub fn substitute_neg_inv(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| (-e, if e % 2 == 0 { c.clone() } else { -c.clone() }))
                .collect(),
        }
    }

    /// q ↦ −q.
    pub fn substitute_neg(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e % 2 == 0 { c.clone() } else { -c.clone() }))
                .collect(),
        }
    }

    pub fn eval_at_one(&self) -> C {
        self.terms.iter().fold(C::zero(), |acc, t| acc + t.1.clone())
    }

    /// Multiplies by q^e.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x.clone() * c.clone())).collect(),
        }
    }

    /// Terms with exponent < 0.
    pub fn negative_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|t| t.0 < 0).cloned().collect(),
        }
    }

    /// Terms with exponent > 0.
    pub fn positive_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|t| t.0 > 0).cloned().collect(),
        }
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0)
    }

    /// True if all exponents are ≤ 0 (element of Z[q⁻¹]).
    pub fn in_neg_lattice(&self) -> bool {
        self.max_exp().map_or(true, |e| e <= 0)
    }

    /// True if all exponents are ≥ 0 (element of Z[q]).
    pub fn in_pos_lattice(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 0)
    }

    /// Raises to a non-negative power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn merge(a: &[(i64, C)], b: &[(i64, C)], negate_b: bool) -> Self {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let nb = |c: &C| if negate_b { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, nb(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.clone() + nb(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| (t.0, nb(&t.1))));
        LaurentPoly { terms: out }
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        LaurentPoly::merge(&self.terms, &o.terms, false)
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        LaurentPoly::merge(&self.terms, &o.terms, true)
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        if o.terms.len() == 1 {
            let (e, c) = &o.terms[0];
            return LaurentPoly {
                terms: self.terms.iter().map(|(x, d)| (x + e, d.clone() * c.clone())).collect(),
            };
        }
        let mut v = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                v.push((a + b, x.clone() * y.clone()));
            }
        }
        LaurentPoly::from_terms(v)
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, o: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$m(&o)
            }
        }
        impl<C: Coeff> $tr<&LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coeff> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, o: &LaurentPoly<C>) {
        if o.is_zero() {
            return;
        }
        *self = LaurentPoly::merge(&self.terms, &o.terms, false);
    }
}

impl<C: Coeff> SubAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn sub_assign(&mut self, o: &LaurentPoly<C>) {
        if o.is_zero() {
            return;
        }
        *self = LaurentPoly::merge(&self.terms, &o.terms, true);
    }
}

impl<C: Coeff> AddAssign for LaurentPoly<C> {
    fn add_assign(&mut self, o: LaurentPoly<C>) {
        *self += &o;
    }
}

impl<C: Coeff> SubAssign for LaurentPoly<C> {
    fn sub_assign(&mut self, o: LaurentPoly<C>) {
        *self -= &o;
    }
}

impl<C: Coeff> From<i64> for LaurentPoly<C>
where
    C: From<i64>,
{
    fn from(c: i64) -> Self {
        Self::constant(C::from(c))
    }
}

/// Canonical text: increasing exponents, e.g. `-q^-1+q`, `2q^3`, `1`, `0`.
impl<C: Coeff + PartialOrd> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = *c < C::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            if *e == 0 {
                write!(f, "{}", abs)?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}", abs)?;
            }
            if *e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{}", e)?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff + FromStr> FromStr for LaurentPoly<C> {
    type Err = Error;

    /// Accepts the canonical form plus optional spaces, `*`, and braces (`q^{-2}`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |pos: usize, msg: &str| Error::Parse {
            input: s.to_string(),
            pos,
            msg: msg.to_string(),
        };
        let chars: Vec<char> = s.chars().filter(|c| !matches!(c, ' ' | '{' | '}' | '*')).collect();
        if chars.is_empty() {
            return Err(bad(0, "empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let mut neg = false;
            if chars[i] == '+' || chars[i] == '-' {
                neg = chars[i] == '-';
                i += 1;
            } else if i > 0 {
                return Err(bad(i, "expected sign"));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let mut coeff = if digits.is_empty() {
                C::one()
            } else {
                digits.parse::<C>().map_err(|_| bad(start, "bad coefficient"))?
            };
            let mut e = 0i64;
            if i < chars.len() && chars[i] == 'q' {
                i += 1;
                e = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let es = i;
                    if i < chars.len() && chars[i] == '-' {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let t: String = chars[es..i].iter().collect();
                    e = t.parse().map_err(|_| bad(es, "bad exponent"))?;
                }
            } else if digits.is_empty() {
                return Err(bad(i, "expected coefficient or q"));
            }
            if neg {
                coeff = -coeff;
            }
            terms.push((e, coeff));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn bar_examples() {
        assert_eq!(Poly::zero().bar(), Poly::zero());
        assert_eq!(p("3+q").bar(), p("q^-1+3"));
        assert_eq!(p("-q^-1+q").bar(), -p("-q^-1+q"));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("q^-2+1").eval_at_one(), BigInt::from(2));
        assert_eq!(p("q^3+q^5").eval_at_one(), BigInt::from(2));
        assert_eq!(Poly::zero().eval_at_one(), BigInt::from(0));
    }

    #[test]
    fn neg_inv_examples() {
        assert_eq!(p("q^2").substitute_neg_inv(), p("q^-2"));
        assert_eq!(p("q").substitute_neg_inv(), p("-q^-1"));
        assert_eq!(p("q+q^2").substitute_neg_inv(), p("-q^-1+q^-2"));
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "1", "-1", "q", "-q^-1+q", "2q^3", "-3q^-2+5+q^4", "q^-1"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("{q}^{2} + 2*q").to_string(), "2q+q^2");
    }

    #[test]
    fn arithmetic() {
        let a = p("q-q^-1");
        assert_eq!(&a * &a, p("q^-2-2+q^2"));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(p("1+q").pow(3), p("1+3q+3q^2+q^3"));
    }

    #[test]
    fn generic_over_i64() {
        let a: LaurentPoly<i64> = LaurentPoly::from_terms([(1, 2), (-1, 3), (1, -2)]);
        assert_eq!(a, LaurentPoly::monomial(-1, 3));
    }

    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-6i64..6, -4i64..5), 0..6)
            .prop_map(|v| Poly::from_terms(v.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
    }

    proptest! {
        #![proptest_config(crate::testutil::config(1000))]
        #[test]
        fn involutions(a in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!(a.substitute_neg_inv().substitute_neg_inv(), a.clone());
            prop_assert_eq!(a.to_string().parse::<Poly>().unwrap(), a);
        }

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }
    }
}
