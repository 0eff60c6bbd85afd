//! Exact bivariate polynomials in `x` (homological placeholder) and `t`
//! (total degree) with arbitrary-precision integer coefficients.
//!
//! Terms are kept sorted by `(x, t)` with no zero coefficients and no
//! repeated exponent pairs, so two equal polynomials always have identical
//! term vectors and identical serializations.

mod modular;
mod rational;
mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use rational::{parse_rational, ExactRational};
pub use univariate::UniPoly;

/// Product size (in term pairs) above which the multi-modular transform
/// product replaces the schoolbook product.
const SCHOOLBOOK_PAIR_LIMIT: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub x: u32,
    pub t: u32,
    pub coeff: BigInt,
}

impl Term {
    pub fn new(x: u32, t: u32, coeff: impl Into<BigInt>) -> Self {
        Term {
            x,
            t,
            coeff: coeff.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    terms: Vec<Term>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(x: u32, t: u32, coeff: impl Into<BigInt>) -> Self {
        Self::from_terms([Term::new(x, t, coeff)])
    }

    /// Builds a polynomial from arbitrary terms, merging repeated exponents
    /// and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        terms.sort_by_key(|term| (term.x, term.t));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for term in terms {
            match out.last_mut() {
                Some(last) if last.x == term.x && last.t == term.t => last.coeff += term.coeff,
                _ => {
                    if out.last().is_some_and(|l| l.coeff.is_zero()) {
                        out.pop();
                    }
                    out.push(term);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff.is_zero()) {
            out.pop();
        }
        BivarPoly { terms: out }
    }

    /// Convenience constructor from small integer triples `(x, t, c)`.
    pub fn from_triples(triples: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(triples.iter().map(|&(x, t, c)| Term::new(x, t, c)))
    }

    /// Caller guarantees canonical order and no zeros.
    pub(crate) fn from_sorted_unchecked(terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| (w[0].x, w[0].t) < (w[1].x, w[1].t)));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        BivarPoly { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.last().map(|term| term.x)
    }

    pub fn min_deg_x(&self) -> Option<u32> {
        self.terms.first().map(|term| term.x)
    }

    pub fn deg_t(&self) -> Option<u32> {
        self.terms.iter().map(|term| term.t).max()
    }

    pub fn coeff(&self, x: u32, t: u32) -> BigInt {
        match self
            .terms
            .binary_search_by_key(&(x, t), |term| (term.x, term.t))
        {
            Ok(idx) => self.terms[idx].coeff.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Coefficient of `x^i` as a polynomial in `t`.
    pub fn x_coefficient(&self, i: u32) -> UniPoly {
        UniPoly::from_pairs(
            self.terms
                .iter()
                .filter(|term| term.x == i)
                .map(|term| (term.t, term.coeff.clone())),
        )
    }

    /// Largest coefficient magnitude, in bits.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|term| term.coeff.bits())
            .max()
            .unwrap_or(0)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.iter().all(|term| !term.coeff.is_negative())
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        self.merge(other, true)
    }

    fn merge(&self, other: &BivarPoly, negate_other: bool) -> BivarPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let rhs = |term: &Term| {
            if negate_other {
                Term::new(term.x, term.t, -&term.coeff)
            } else {
                term.clone()
            }
        };
        while i < a.len() && j < b.len() {
            match (a[i].x, a[i].t).cmp(&(b[j].x, b[j].t)) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(rhs(&b[j]));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].coeff - &b[j].coeff
                    } else {
                        &a[i].coeff + &b[j].coeff
                    };
                    if !c.is_zero() {
                        out.push(Term::new(a[i].x, a[i].t, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(rhs));
        BivarPoly { terms: out }
    }

    pub fn neg(&self) -> BivarPoly {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|term| Term::new(term.x, term.t, -&term.coeff))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> BivarPoly {
        if factor.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|term| Term::new(term.x, term.t, &term.coeff * factor))
                .collect(),
        }
    }

    /// Multiplies by the monomial `x^dx t^dt`.
    pub fn shift(&self, dx: u32, dt: u32) -> BivarPoly {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|term| Term::new(term.x + dx, term.t + dt, term.coeff.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        self.mul_truncated(other, None)
    }

    /// Product with every term of x-degree above `x_limit` discarded.
    pub fn mul_truncated(&self, other: &BivarPoly, x_limit: Option<u32>) -> BivarPoly {
        if self.is_zero() || other.is_zero() {
            return BivarPoly::zero();
        }
        let (a, b) = match x_limit {
            Some(m) => {
                let lo_a = self.min_deg_x().unwrap_or(0);
                let lo_b = other.min_deg_x().unwrap_or(0);
                if lo_a + lo_b > m {
                    return BivarPoly::zero();
                }
                (
                    std::borrow::Cow::Owned(self.truncate_x(m - lo_b)),
                    std::borrow::Cow::Owned(other.truncate_x(m - lo_a)),
                )
            }
            None => (
                std::borrow::Cow::Borrowed(self),
                std::borrow::Cow::Borrowed(other),
            ),
        };
        let squaring = std::ptr::eq(self, other);
        let product = if a.len().saturating_mul(b.len()) <= SCHOOLBOOK_PAIR_LIMIT {
            a.mul_schoolbook(&b)
        } else if squaring {
            modular::multiply(&a, &a, true)
        } else {
            modular::multiply(&a, &b, false)
        };
        match x_limit {
            Some(m) => product.truncate_x(m),
            None => product,
        }
    }

    /// Reference product: every pair of terms multiplied and accumulated.
    pub fn mul_schoolbook(&self, other: &BivarPoly) -> BivarPoly {
        let mut acc: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                *acc.entry((a.x + b.x, a.t + b.t)).or_default() += &a.coeff * &b.coeff;
            }
        }
        BivarPoly {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((x, t), c)| Term::new(x, t, c))
                .collect(),
        }
    }

    pub fn square(&self) -> BivarPoly {
        self.mul_truncated(self, None)
    }

    /// `self^e`, optionally truncated at x-degree `x_truncation` after every
    /// multiplication.
    pub fn pow(&self, e: u32, x_truncation: Option<u32>) -> BivarPoly {
        let mut result = BivarPoly::one();
        if e == 0 {
            return match x_truncation {
                Some(m) => result.truncate_x(m),
                None => result,
            };
        }
        let mut base = match x_truncation {
            Some(m) => self.truncate_x(m),
            None => self.clone(),
        };
        let mut e = e;
        let mut first = true;
        loop {
            if e & 1 == 1 {
                if first {
                    result = base.clone();
                    first = false;
                } else {
                    result = result.mul_truncated(&base, x_truncation);
                }
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul_truncated(&base, x_truncation);
        }
        result
    }

    /// Keeps the terms with x-degree at most `m`.
    pub fn truncate_x(&self, m: u32) -> BivarPoly {
        let end = self.terms.partition_point(|term| term.x <= m);
        BivarPoly {
            terms: self.terms[..end].to_vec(),
        }
    }

    /// Substitutes `x -> -x`.
    pub fn negate_x(&self) -> BivarPoly {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|term| {
                    let c = if term.x % 2 == 1 {
                        -&term.coeff
                    } else {
                        term.coeff.clone()
                    };
                    Term::new(term.x, term.t, c)
                })
                .collect(),
        }
    }

    /// Divides by `x^d`; fails if some term has x-degree below `d`.
    pub fn exact_divide_x(&self, d: u32) -> Result<BivarPoly> {
        if let Some(lo) = self.min_deg_x() {
            if lo < d {
                return Err(Error::NotDivisible {
                    divisor: d,
                    found: lo,
                });
            }
        }
        Ok(BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|term| Term::new(term.x - d, term.t, term.coeff.clone()))
                .collect(),
        })
    }

    /// Sets `x = 1`, collecting coefficients per t-degree.
    pub fn eval_x1(&self) -> UniPoly {
        UniPoly::from_pairs(self.terms.iter().map(|term| (term.t, term.coeff.clone())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<BivarPoly> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, term) in self.terms.iter().enumerate() {
            let negative = term.coeff.is_negative();
            let mag = term.coeff.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (term.x == 0 && term.t == 0) {
                factors.push(mag.to_string());
            }
            match term.t {
                0 => {}
                1 => factors.push("t".into()),
                e => factors.push(format!("t^{e}")),
            }
            match term.x {
                0 => {}
                1 => factors.push("x".into()),
                e => factors.push(format!("x^{e}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly::add(self, rhs)
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly::sub(self, rhs)
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly::mul(self, rhs)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly::neg(self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    x: u32,
    t: u32,
    c: String,
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|term| TermRepr {
                x: term.x,
                t: term.t,
                c: term.coeff.to_string(),
            })
            .collect();
        reprs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let reprs = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(reprs.len());
        for r in reprs {
            let coeff: BigInt =
                r.c.parse()
                    .map_err(|_| serde::de::Error::custom(format!("bad coefficient {:?}", r.c)))?;
            terms.push(Term::new(r.x, r.t, coeff));
        }
        Ok(BivarPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(triples: &[(u32, u32, i64)]) -> BivarPoly {
        BivarPoly::from_triples(triples)
    }

    fn one_plus_tx() -> BivarPoly {
        p(&[(0, 0, 1), (1, 1, 1)])
    }

    #[test]
    fn add_examples() {
        assert_eq!(
            p(&[(1, 1, 2)]).add(&p(&[(2, 2, 1)])),
            p(&[(1, 1, 2), (2, 2, 1)])
        );
        let q = p(&[(0, 3, 4), (2, 1, -7)]);
        assert!(q.add(&q.neg()).is_zero());
        assert_eq!(
            one_plus_tx().add(&one_plus_tx()),
            p(&[(0, 0, 2), (1, 1, 2)])
        );
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            one_plus_tx().mul(&one_plus_tx()),
            p(&[(0, 0, 1), (1, 1, 2), (2, 2, 1)])
        );
        assert!(one_plus_tx().mul(&BivarPoly::zero()).is_zero());
        // (t + t^2 + t^3 x)^2 expanded by hand
        let a = p(&[(0, 1, 1), (0, 2, 1), (1, 3, 1)]);
        let expected = p(&[
            (0, 2, 1),
            (0, 3, 2),
            (0, 4, 1),
            (1, 4, 2),
            (1, 5, 2),
            (2, 6, 1),
        ]);
        assert_eq!(a.mul(&a), expected);
        assert_eq!(a.square(), expected);
    }

    #[test]
    fn pow_examples() {
        assert_eq!(
            one_plus_tx().pow(2, None),
            p(&[(0, 0, 1), (1, 1, 2), (2, 2, 1)])
        );
        assert_eq!(p(&[(3, 1, 5)]).pow(0, None), BivarPoly::one());
        assert_eq!(one_plus_tx().pow(3, Some(1)), p(&[(0, 0, 1), (1, 1, 3)]));
    }

    #[test]
    fn truncate_examples() {
        let q = p(&[(1, 1, 2), (2, 2, 1)]);
        assert_eq!(q.truncate_x(1), p(&[(1, 1, 2)]));
        assert_eq!(q.truncate_x(q.deg_x().unwrap()), q);
    }

    #[test]
    fn negate_examples() {
        let q = p(&[(1, 1, 2), (2, 2, 1)]);
        assert_eq!(q.negate_x(), p(&[(1, 1, -2), (2, 2, 1)]));
        assert_eq!(q.negate_x().negate_x(), q);
        let g21 = one_plus_tx().pow(2, None).sub(&BivarPoly::one());
        assert_eq!(g21.negate_x().neg(), p(&[(1, 1, 2), (2, 2, -1)]));
    }

    #[test]
    fn exact_divide_examples() {
        let q = p(&[(1, 2, 1), (1, 3, 2)]);
        assert_eq!(q.exact_divide_x(1).unwrap(), p(&[(0, 2, 1), (0, 3, 2)]));
        assert_eq!(q.exact_divide_x(0).unwrap(), q);
        let inner = p(&[(0, 0, 1), (1, 1, 1)])
            .mul(&p(&[(0, 0, 1), (1, 2, 1)]))
            .sub(&BivarPoly::one());
        let expected = p(&[
            (1, 2, 1),
            (1, 3, 2),
            (1, 4, 1),
            (2, 4, 2),
            (2, 5, 2),
            (3, 6, 1),
        ]);
        assert_eq!(inner.square().exact_divide_x(1).unwrap(), expected);
        assert_eq!(
            p(&[(0, 1, 1), (2, 1, 1)]).exact_divide_x(1),
            Err(Error::NotDivisible {
                divisor: 1,
                found: 0
            })
        );
    }

    #[test]
    fn eval_x1_examples() {
        let u = p(&[(1, 1, 2), (2, 2, -1)]).eval_x1();
        assert_eq!(u, UniPoly::from_small(&[(1, 2), (2, -1)]));
        assert!(BivarPoly::zero().eval_x1().is_zero());
        // x-terms cancelling at x=1 disappear
        assert!(p(&[(1, 3, 1), (2, 3, -1)]).eval_x1().is_zero());
    }

    #[test]
    fn json_uses_decimal_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let q = BivarPoly::from_terms([Term::new(0, 1, big), Term::new(2, 0, -3)]);
        let s = q.to_json();
        assert_eq!(
            s,
            r#"[{"x":0,"t":1,"c":"123456789012345678901234567890"},{"x":2,"t":0,"c":"-3"}]"#
        );
        assert_eq!(BivarPoly::from_json(&s).unwrap(), q);
        assert!(BivarPoly::from_json(r#"[{"x":0,"t":0,"c":"1.5"}]"#).is_err());
    }

    #[test]
    fn from_terms_canonicalizes() {
        let q = BivarPoly::from_terms([
            Term::new(2, 0, 1),
            Term::new(0, 1, 3),
            Term::new(2, 0, -1),
            Term::new(0, 1, 2),
        ]);
        assert_eq!(q.terms(), &[Term::new(0, 1, 5)]);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(
            p(&[(0, 0, 1), (1, 1, -2), (2, 3, 1)]).to_string(),
            "1 - 2*t*x + t^3*x^2"
        );
        assert_eq!(BivarPoly::zero().to_string(), "0");
    }
}
