//! Catalan and Mandelbrot numbers and the depth-independent limit of the
//! k = 2 cut Betti tables.
//!
//! `z_0 = 0`, `z_n = z_{n-1}^2 + q`, and `M_{n,j}` is the coefficient of
//! `q^j` in `z_n`. As `n` grows `z_n` tends to `(1 - sqrt(1 - 4q)) / 2`,
//! whose `q^j` coefficient is the Catalan number `c_{j-1}`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::resolution::{betti_table, cut_gf_with, BettiTable, Budget};

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `c_r = C(2r, r) / (r + 1)`.
pub fn catalan(r: u64) -> BigUint {
    binomial(2 * r, r) / (r + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MandelbrotPolynomial {
    pub n: u32,
    /// `coefficients[j] = M_{n,j}`.
    pub coefficients: Vec<BigUint>,
}

impl MandelbrotPolynomial {
    pub fn coefficient(&self, j: usize) -> BigUint {
        self.coefficients.get(j).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// The full iterate `z_n`, of degree `2^{n-1}`.
pub fn mandelbrot_poly(n: u32, budget: &Budget) -> Result<MandelbrotPolynomial> {
    if n == 0 {
        return Ok(MandelbrotPolynomial {
            n,
            coefficients: vec![BigUint::zero()],
        });
    }
    let degree = 1u128.checked_shl(n - 1).unwrap_or(u128::MAX);
    if degree >= budget.max_terms as u128 {
        return Err(Error::Budget {
            what: "Mandelbrot polynomial degree",
            required: degree,
            limit: budget.max_terms as u128,
        });
    }
    // the t-variable of a bivariate polynomial with x-degree 0 stands in for q
    let q = BivarPoly::monomial(0, 1, 1);
    let mut z = BivarPoly::zero();
    for _ in 0..n {
        z = z.square().add(&q);
    }
    let mut coefficients = vec![BigUint::zero(); degree as usize + 1];
    for term in z.terms() {
        coefficients[term.t as usize] = term.coeff.magnitude().clone();
    }
    Ok(MandelbrotPolynomial { n, coefficients })
}

/// `z_n` modulo `q^{max_degree + 1}`; cheap for any `n`.
pub fn mandelbrot_poly_truncated(n: u32, max_degree: usize) -> MandelbrotPolynomial {
    let mut z = vec![BigUint::zero(); max_degree + 1];
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); max_degree + 1];
        for (a, za) in z.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, zb) in z[..=max_degree - a].iter().enumerate() {
                if !zb.is_zero() {
                    next[a + b] += za * zb;
                }
            }
        }
        if max_degree >= 1 {
            next[1] += 1u32;
        }
        z = next;
    }
    while z.len() > 1 && z.last().is_some_and(|c| c.is_zero()) {
        z.pop();
    }
    MandelbrotPolynomial { n, coefficients: z }
}

/// `beta_{i,j}(S/J_{2,inf}) = [2(j-i)]! / ((j-i+1)(j-i)(j-i)!(j-2i)!(i-1)!)`
/// for `j >= 2i`, zero otherwise.
pub fn asymptotic_betti_k2(i: u64, j: u64) -> Result<BigUint> {
    if i < 1 {
        return Err(Error::invalid("homological degree i must be >= 1"));
    }
    if j < 2 * i {
        return Ok(BigUint::zero());
    }
    let r = j - i;
    let numerator = factorial(2 * r);
    let denominator =
        BigUint::from((r + 1) * r) * factorial(r) * factorial(j - 2 * i) * factorial(i - 1);
    let (quotient, remainder) = numerator.div_rem(&denominator);
    if !remainder.is_zero() {
        return Err(Error::Invariant(format!(
            "asymptotic Betti formula is not integral at (i={i}, j={j})"
        )));
    }
    Ok(quotient)
}

/// `beta_{i,i+j}(S/J_{2,n}) = M_{n+1,j+1} C(j-1, i-1)`.
pub fn betti_from_mandelbrot(n: u32, i: u64, j_offset: u64) -> Result<BigUint> {
    if n < 1 || i < 1 || j_offset < 1 {
        return Err(Error::invalid("betti_from_mandelbrot needs n, i, j >= 1"));
    }
    let z = mandelbrot_poly_truncated(n + 1, j_offset as usize + 1);
    Ok(z.coefficient(j_offset as usize + 1) * binomial(j_offset - 1, i - 1))
}

/// `beta_{i,i+j}(S/J_{2,inf}) = c_j C(j-1, i-1)`.
pub fn asymptotic_betti_catalan(i: u64, j_offset: u64) -> Result<BigUint> {
    if i < 1 || j_offset < 1 {
        return Err(Error::invalid("asymptotic_betti_catalan needs i, j >= 1"));
    }
    Ok(catalan(j_offset) * binomial(j_offset - 1, i - 1))
}

/// The asymptotic table restricted to offsets `r = j - i <= max_offset`.
pub fn asymptotic_table(max_offset: u64) -> Result<BettiTable> {
    let mut entries = Vec::new();
    for r in 1..=max_offset {
        for i in 1..=r {
            entries.push((i as u32, (i + r) as u32, asymptotic_betti_catalan(i, r)?));
        }
    }
    BettiTable::from_entries(entries)
}

/// The asymptotic table as CSV `n,i,j,beta` with `n = inf`.
pub fn asymptotic_table_csv(max_offset: u64) -> Result<String> {
    let table = asymptotic_table(max_offset)?;
    let mut out = String::from("n,i,j,beta\n");
    for (i, j, beta) in table.iter() {
        let _ = writeln!(out, "inf,{i},{j},{beta}");
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationPrefix {
    pub n: u32,
    /// `(i, N)`: `beta_{i,j}(S/J_{2,n})` equals the asymptotic value for
    /// every `j < N`, and differs at `j = N`.
    pub prefix: Vec<(u32, u32)>,
}

impl StabilizationPrefix {
    pub fn get(&self, i: u32) -> Option<u32> {
        self.prefix.iter().find(|(ii, _)| *ii == i).map(|(_, b)| *b)
    }
}

pub fn stabilization_prefix(n: u32, budget: &Budget) -> Result<StabilizationPrefix> {
    let table = betti_table(&cut_gf_with(2, n, budget, None)?)?;
    stabilization_prefix_of(n, &table)
}

/// As [`stabilization_prefix`] for an already computed table of `S/J_{2,n}`.
pub fn stabilization_prefix_of(n: u32, table: &BettiTable) -> Result<StabilizationPrefix> {
    let max_j = table.iter().map(|(_, j, _)| j).max().unwrap_or(0);
    let mut prefix = Vec::new();
    for i in 1..=table.max_homological_degree() {
        // past max_j the finite table vanishes while the limit does not
        let mut bound = max_j + 1;
        for j in 0..=max_j + 1 {
            if table.get(i, j) != asymptotic_betti_k2(i as u64, j as u64)? {
                bound = j;
                break;
            }
        }
        prefix.push((i, bound));
    }
    Ok(StabilizationPrefix { n, prefix })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitCheck {
    pub j: u64,
    /// `(n, M_{n,j})` for `n = 1 ..= n_max`.
    pub values: Vec<(u32, BigUint)>,
    /// `c_{j-1}`, the actual limit.
    pub limit: BigUint,
    /// `c_j`, the limit under the reference indexing.
    pub printed_limit: BigUint,
    /// Smallest `n` from which `M_{n,j}` equals `limit` through `n_max`.
    pub stabilized_at: Option<u32>,
}

impl LimitCheck {
    pub fn matches_printed_alignment(&self) -> bool {
        self.values
            .last()
            .is_some_and(|(_, v)| *v == self.printed_limit)
    }
}

pub fn mandelbrot_catalan_limit_check(j: u64, n_max: u32) -> Result<LimitCheck> {
    if j < 1 {
        return Err(Error::invalid("coefficient index j must be >= 1"));
    }
    let limit = catalan(j - 1);
    let values: Vec<(u32, BigUint)> = (1..=n_max)
        .map(|n| {
            (
                n,
                mandelbrot_poly_truncated(n, j as usize).coefficient(j as usize),
            )
        })
        .collect();
    let stabilized_at = values
        .iter()
        .rposition(|(_, v)| *v != limit)
        .map_or(Some(1), |pos| values.get(pos + 1).map(|(n, _)| *n));
    Ok(LimitCheck {
        j,
        values,
        limit,
        printed_limit: catalan(j),
        stabilized_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn coeffs(z: &MandelbrotPolynomial) -> Vec<u64> {
        z.coefficients
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect()
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(4), big(14));
        assert_eq!(catalan(7), big(429));
    }

    #[test]
    fn mandelbrot_examples() {
        let b = Budget::default();
        assert_eq!(coeffs(&mandelbrot_poly(2, &b).unwrap()), vec![0, 1, 1]);
        assert_eq!(
            coeffs(&mandelbrot_poly(3, &b).unwrap()),
            vec![0, 1, 1, 2, 1]
        );
        assert_eq!(
            coeffs(&mandelbrot_poly(4, &b).unwrap()),
            vec![0, 1, 1, 2, 5, 6, 6, 4, 1]
        );
        assert_eq!(coeffs(&mandelbrot_poly(0, &b).unwrap()), vec![0]);
        for n in 1..=8 {
            let z = mandelbrot_poly(n, &b).unwrap();
            assert_eq!(z.degree(), 1 << (n - 1));
            assert_eq!(z.coefficients.last().unwrap(), &big(1));
            assert_eq!(
                mandelbrot_poly_truncated(n, 5).coefficients[..],
                z.coefficients[..z.coefficients.len().min(6)]
            );
        }
        let tiny = Budget {
            max_terms: 10,
            max_coeff_bits: 64,
        };
        assert!(mandelbrot_poly(6, &tiny).is_err());
    }

    #[test]
    fn asymptotic_examples() {
        assert_eq!(asymptotic_betti_k2(2, 6).unwrap(), big(42));
        let column: Vec<BigUint> = (1..=10)
            .map(|r| asymptotic_betti_k2(1, 1 + r).unwrap())
            .collect();
        let expected = [1u64, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796].map(big);
        assert_eq!(column, expected);
        assert!(asymptotic_betti_k2(3, 5).unwrap().is_zero());
        assert!(asymptotic_betti_k2(0, 5).is_err());
    }

    #[test]
    fn factorial_and_mandelbrot_forms_agree() {
        for i in 1..=12 {
            for j in i..=12 {
                assert_eq!(
                    asymptotic_betti_k2(i, i + j).unwrap(),
                    asymptotic_betti_catalan(i, j).unwrap()
                );
            }
        }
        assert_eq!(asymptotic_betti_catalan(2, 4).unwrap(), big(42));
        assert!(asymptotic_betti_catalan(5, 3).unwrap().is_zero());
    }

    #[test]
    fn rows_are_symmetric() {
        for r in 1..=12 {
            for i in 1..=r {
                assert_eq!(
                    asymptotic_betti_catalan(i, r).unwrap(),
                    asymptotic_betti_catalan(r - i + 1, r).unwrap()
                );
            }
        }
    }

    #[test]
    fn betti_from_mandelbrot_matches_tables() {
        assert_eq!(betti_from_mandelbrot(2, 2, 2).unwrap(), big(2));
        assert_eq!(betti_from_mandelbrot(2, 1, 2).unwrap(), big(2));
        assert!(betti_from_mandelbrot(2, 3, 2).unwrap().is_zero());
        let b = Budget::default();
        for n in 2..=4 {
            let table = betti_table(&cut_gf_with(2, n, &b, None).unwrap()).unwrap();
            for (i, j, beta) in table.iter().filter(|(i, _, _)| *i >= 1) {
                let offset = (j - i) as u64;
                assert_eq!(
                    &betti_from_mandelbrot(n, i as u64, offset).unwrap(),
                    beta,
                    "n={n} i={i} j={j}"
                );
            }
        }
    }

    #[test]
    fn limit_alignment() {
        let check = mandelbrot_catalan_limit_check(4, 6).unwrap();
        assert_eq!(check.values[3], (4, big(5)));
        assert_eq!(check.limit, big(5));
        assert_eq!(check.stabilized_at, Some(4));
        assert!(!check.matches_printed_alignment());
        let one = mandelbrot_catalan_limit_check(1, 5).unwrap();
        assert!(one.values.iter().all(|(_, v)| *v == big(1)));
        assert_eq!(one.stabilized_at, Some(1));
        let five = mandelbrot_catalan_limit_check(5, 8).unwrap();
        assert_eq!(five.values[3].1, big(6));
        assert_eq!(five.stabilized_at, Some(5));
        assert_eq!(
            mandelbrot_catalan_limit_check(5, 4).unwrap().stabilized_at,
            None
        );
    }

    #[test]
    fn stabilization_examples() {
        let b = Budget::default();
        let s4 = stabilization_prefix(4, &b).unwrap();
        let s5 = stabilization_prefix(5, &b).unwrap();
        for (i, bound) in &s4.prefix {
            assert_eq!(*bound, i + 5.max(*i), "n=4 i={i}");
            assert!(s5.get(*i).unwrap() >= *bound);
        }
        for (i, bound) in &s5.prefix {
            assert_eq!(*bound, i + 6.max(*i), "n=5 i={i}");
        }
    }

    #[test]
    fn csv_has_inf_column() {
        let csv = asymptotic_table_csv(3).unwrap();
        assert!(csv.starts_with("n,i,j,beta\ninf,0,0,1\ninf,1,2,1\ninf,1,3,2\n"));
    }
}
