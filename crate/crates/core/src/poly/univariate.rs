use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactRational;

/// Sparse polynomial in `t`, terms sorted by ascending degree, no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    terms: Vec<(u32, BigInt)>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { terms: Vec::new() }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, BigInt)>) -> Self {
        let mut pairs: Vec<(u32, BigInt)> = pairs.into_iter().collect();
        pairs.sort_by_key(|(d, _)| *d);
        let mut terms: Vec<(u32, BigInt)> = Vec::with_capacity(pairs.len());
        for (d, c) in pairs {
            match terms.last_mut() {
                Some((ld, lc)) if *ld == d => *lc += c,
                _ => terms.push((d, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        UniPoly { terms }
    }

    pub fn from_small(pairs: &[(u32, i64)]) -> Self {
        Self::from_pairs(pairs.iter().map(|&(d, c)| (d, BigInt::from(c))))
    }

    pub fn terms(&self) -> &[(u32, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(d, _)| *d)
    }

    pub fn coeff(&self, d: u32) -> BigInt {
        match self.terms.binary_search_by_key(&d, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        Self::from_pairs(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        Self::from_pairs(
            self.terms
                .iter()
                .cloned()
                .chain(other.terms.iter().map(|(d, c)| (*d, -c))),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        Self::from_pairs(
            self.terms
                .iter()
                .flat_map(|(da, ca)| other.terms.iter().map(move |(db, cb)| (da + db, ca * cb))),
        )
    }

    /// Substitutes `t -> 1 - t`.
    pub fn reflect(&self) -> UniPoly {
        // sum c_d (1-t)^d, expanded with binomial coefficients
        let mut out: Vec<(u32, BigInt)> = Vec::new();
        for (d, c) in &self.terms {
            let mut binom = BigInt::one();
            for i in 0..=*d {
                let term = &binom * c;
                out.push((i, if i % 2 == 1 { -term } else { term }));
                binom = binom * BigInt::from(d - i) / BigInt::from(i + 1);
            }
        }
        Self::from_pairs(out)
    }

    /// Exact evaluation at a rational point, done over the integers by
    /// homogeneous Horner: `sum c_i n^i d^(deg-i) / d^deg`.
    pub fn eval_rational(&self, p: &ExactRational) -> ExactRational {
        let Some(deg) = self.degree() else {
            return ExactRational::zero();
        };
        let num = p.numer();
        let den = p.denom();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        let mut idx = self.terms.len();
        for d in (0..=deg).rev() {
            acc *= num;
            if idx > 0 && self.terms[idx - 1].0 == d {
                idx -= 1;
                acc += &self.terms[idx].1 * &den_pow;
            }
            den_pow *= den;
        }
        // den_pow is now den^(deg+1); one factor too many
        ExactRational::new(acc, den_pow / den)
    }

    /// Floating-point Horner evaluation. Accurate only when the polynomial
    /// does not suffer heavy cancellation at `p`.
    pub fn eval_f64(&self, p: f64) -> f64 {
        let Some(deg) = self.degree() else {
            return 0.0;
        };
        let mut acc = 0.0;
        let mut idx = self.terms.len();
        for d in (0..=deg).rev() {
            acc *= p;
            if idx > 0 && self.terms[idx - 1].0 == d {
                idx -= 1;
                acc += self.terms[idx].1.to_f64().unwrap_or(f64::NAN);
            }
        }
        acc
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (d, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (*d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (e, true) => write!(f, "t^{e}")?,
                (e, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}
