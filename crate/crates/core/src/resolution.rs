//! Graded Betti numbers of path and cut ideals of `T_{k,n}` from their
//! generating-function recursions, plus the tensor rules for sums and
//! products of ideals in disjoint variables.
//!
//! Every [`BettiTable`] uses the quotient convention `beta_{i,j}(S/I)`, so
//! `beta_{0,0} = 1` is always present and `beta_{i,j}(S/I) = beta_{i-1,j}(I)`.
//! A [`GeneratingFunction`] is `G(x,t) = sum_{i,j>0} beta_{i,j} x^i t^j` and
//! the Hilbert numerator is `H(x,t) = -G(-x,t)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{BivarPoly, Term};

/// Resource caps for the recursions. Coefficients grow doubly exponentially
/// in the depth, so both the term count and the coefficient size are capped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_terms: usize,
    pub max_coeff_bits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: 4_000_000,
            max_coeff_bits: 1 << 16,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_terms: usize::MAX,
            max_coeff_bits: u64::MAX,
        }
    }

    fn check(&self, terms: u128, bits: u128) -> Result<()> {
        if terms > self.max_terms as u128 {
            return Err(Error::Budget {
                what: "term count",
                required: terms,
                limit: self.max_terms as u128,
            });
        }
        if bits > self.max_coeff_bits as u128 {
            return Err(Error::Budget {
                what: "coefficient bits",
                required: bits,
                limit: self.max_coeff_bits as u128,
            });
        }
        Ok(())
    }
}

fn log2_ceil(n: usize) -> u128 {
    (usize::BITS - n.saturating_sub(1).leading_zeros()) as u128
}

fn validate_kn(k: u32, n: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid(format!(
            "branching factor k must be >= 2, got {k}"
        )));
    }
    if n < 1 {
        return Err(Error::invalid("depth n must be >= 1"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingFunction {
    poly: BivarPoly,
}

impl GeneratingFunction {
    pub fn new(poly: BivarPoly) -> Self {
        GeneratingFunction { poly }
    }

    pub fn poly(&self) -> &BivarPoly {
        &self.poly
    }

    pub fn into_poly(self) -> BivarPoly {
        self.poly
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertNumerator {
    poly: BivarPoly,
}

impl HilbertNumerator {
    pub fn new(poly: BivarPoly) -> Self {
        HilbertNumerator { poly }
    }

    pub fn poly(&self) -> &BivarPoly {
        &self.poly
    }

    pub fn into_poly(self) -> BivarPoly {
        self.poly
    }
}

/// `H(x,t) = -G(-x,t)`
pub fn gf_to_numerator(g: &GeneratingFunction) -> HilbertNumerator {
    HilbertNumerator::new(g.poly.negate_x().neg())
}

pub fn numerator_to_gf(h: &HilbertNumerator) -> GeneratingFunction {
    GeneratingFunction::new(h.poly.negate_x().neg())
}

/// `G_{k,n}` for the path ideal `I_{k,n}`: `G_{k,1} = (1+tx)^k - 1`,
/// `G_{k,n} = (1 + t G_{k,n-1})^k - 1`.
pub fn path_gf(k: u32, n: u32) -> Result<GeneratingFunction> {
    path_gf_with(k, n, &Budget::default(), None)
}

/// As [`path_gf`], keeping only x-degrees up to `x_truncation`.
pub fn path_gf_with(
    k: u32,
    n: u32,
    budget: &Budget,
    x_truncation: Option<u32>,
) -> Result<GeneratingFunction> {
    validate_kn(k, n)?;
    let one_plus_tx = BivarPoly::from_triples(&[(0, 0, 1), (1, 1, 1)]);
    let base = one_plus_tx.pow(k, x_truncation).sub(&BivarPoly::one());
    path_gf_from_base(k, n, &GeneratingFunction::new(base), budget, x_truncation)
}

/// Runs the path recursion from an arbitrary `G_{k,1}`. Used to check that
/// the verification suite notices a wrong base case.
pub fn path_gf_from_base(
    k: u32,
    n: u32,
    base: &GeneratingFunction,
    budget: &Budget,
    x_truncation: Option<u32>,
) -> Result<GeneratingFunction> {
    validate_kn(k, n)?;
    let one = BivarPoly::one();
    let mut g = match x_truncation {
        Some(m) => base.poly.truncate_x(m),
        None => base.poly.clone(),
    };
    for _ in 1..n {
        let dx = g.deg_x().unwrap_or(0) as u128 * k as u128;
        let dx = x_truncation.map_or(dx, |m| dx.min(m as u128));
        let dt = (g.deg_t().unwrap_or(0) as u128 + 1) * k as u128;
        let bits =
            k as u128 * g.max_coeff_bits() as u128 + (k as u128 - 1) * log2_ceil(g.len() + 1) + 1;
        budget.check((dx + 1) * (dt + 1), bits)?;
        g = one.add(&g.shift(0, 1)).pow(k, x_truncation).sub(&one);
    }
    Ok(GeneratingFunction::new(g))
}

/// `G~_{k,n}` for the cut ideal `J_{k,n}`: `G~_{k,1} = t^k x`,
/// `G~_{k,n} = x^{-(k-1)} ((1+tx)(1 + G~_{k,n-1}) - 1)^k`.
pub fn cut_gf(k: u32, n: u32) -> Result<GeneratingFunction> {
    cut_gf_with(k, n, &Budget::default(), None)
}

pub fn cut_gf_with(
    k: u32,
    n: u32,
    budget: &Budget,
    x_truncation: Option<u32>,
) -> Result<GeneratingFunction> {
    let mut levels = cut_gf_levels_with(k, n, budget, x_truncation)?;
    Ok(levels.pop().expect("n >= 1 levels"))
}

/// All of `G~_{k,1} .. G~_{k,n}`; each level is needed for the next.
///
/// With `x_truncation = m`, level `l` is computed only up to x-degree
/// `m + (n - l)(k - 1)`, which is exactly what the final level needs after
/// its division by `x^{k-1}`, so the last entry equals the full `G~_{k,n}`
/// truncated at `m`.
pub fn cut_gf_levels_with(
    k: u32,
    n: u32,
    budget: &Budget,
    x_truncation: Option<u32>,
) -> Result<Vec<GeneratingFunction>> {
    validate_kn(k, n)?;
    let limit_at = |level: u32| {
        x_truncation.map(|m| {
            let extra = (n - level) as u64 * (k - 1) as u64;
            u32::try_from(m as u64 + extra).unwrap_or(u32::MAX)
        })
    };
    let one = BivarPoly::one();
    let one_plus_tx = BivarPoly::from_triples(&[(0, 0, 1), (1, 1, 1)]);
    let mut g = BivarPoly::monomial(1, k, 1);
    if let Some(m) = limit_at(1) {
        g = g.truncate_x(m);
    }
    let mut levels = vec![GeneratingFunction::new(g.clone())];
    for level in 2..=n {
        let dx = g.deg_x().unwrap_or(0) as u128 * k as u128 + 1;
        let dx = limit_at(level).map_or(dx, |m| dx.min(m as u128));
        let dt = (g.deg_t().unwrap_or(0) as u128 + 1) * k as u128;
        let bits = k as u128 * (g.max_coeff_bits() as u128 + 2)
            + (k as u128 - 1) * log2_ceil(2 * g.len() + 2);
        budget.check((dx + 1) * (dt + 1), bits)?;

        let inner = one_plus_tx.mul(&one.add(&g)).sub(&one);
        // truncation before the division by x^{k-1}
        let power_limit = limit_at(level).map(|m| m + (k - 1));
        let power = inner.pow(k, power_limit);
        g = power.exact_divide_x(k - 1).map_err(|e| {
            Error::Invariant(format!(
                "cut recursion at level {level} is not divisible: {e}"
            ))
        })?;
        levels.push(GeneratingFunction::new(g.clone()));
    }
    Ok(levels)
}

/// Graded Betti numbers `beta_{i,j}(S/I)`, quotient convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(u32, u32), BigUint>,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    i: u32,
    j: u32,
    beta: String,
}

/// Accepted JSON shapes: a bare entry array, or an object carrying it
/// under `entries` (as written by the command-line tool).
#[derive(Deserialize)]
#[serde(untagged)]
enum TableRepr {
    Bare(Vec<EntryRepr>),
    Wrapped { entries: Vec<EntryRepr> },
}

impl BettiTable {
    /// The table of `S/S` with only `beta_{0,0} = 1` (unit for the sum rule).
    pub fn unit() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert((0, 0), BigUint::one());
        BettiTable { entries }
    }

    /// Builds a table from `(i, j, beta)` entries with `i >= 1`; zero entries
    /// are dropped and `beta_{0,0} = 1` is added.
    pub fn from_entries(entries: impl IntoIterator<Item = (u32, u32, BigUint)>) -> Result<Self> {
        let mut table = Self::unit();
        for (i, j, beta) in entries {
            if i == 0 {
                if (j, beta.clone()) == (0, BigUint::one()) {
                    continue;
                }
                return Err(Error::invalid(format!(
                    "homological degree 0 admits only beta_(0,0) = 1, got beta_(0,{j}) = {beta}"
                )));
            }
            if beta.is_zero() {
                continue;
            }
            if table.entries.insert((i, j), beta).is_some() {
                return Err(Error::invalid(format!("duplicate entry ({i},{j})")));
            }
        }
        Ok(table)
    }

    pub fn from_small(entries: &[(u32, u32, u64)]) -> Self {
        Self::from_entries(entries.iter().map(|&(i, j, b)| (i, j, BigUint::from(b))))
            .expect("valid small table")
    }

    /// Reads the table off a generating function; fails if a coefficient is
    /// negative or lies in homological degree 0.
    pub fn from_gf(g: &GeneratingFunction) -> Result<Self> {
        let mut entries = Vec::with_capacity(g.poly.len());
        for term in g.poly.terms() {
            if term.coeff.is_negative() {
                return Err(Error::Invariant(format!(
                    "negative Betti coefficient at x^{} t^{}",
                    term.x, term.t
                )));
            }
            entries.push((term.x, term.t, term.coeff.magnitude().clone()));
        }
        Self::from_entries(entries)
    }

    pub fn to_gf(&self) -> GeneratingFunction {
        GeneratingFunction::new(BivarPoly::from_terms(
            self.entries
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), b)| Term::new(i, j, BigInt::from(b.clone()))),
        ))
    }

    /// `1 + G(x,t)` including `beta_{0,0}`.
    fn full_poly(&self) -> BivarPoly {
        BivarPoly::from_terms(
            self.entries
                .iter()
                .map(|(&(i, j), b)| Term::new(i, j, BigInt::from(b.clone()))),
        )
    }

    pub fn get(&self, i: u32, j: u32) -> BigUint {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &BigUint)> {
        self.entries.iter().map(|(&(i, j), b)| (i, j, b))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_homological_degree(&self) -> u32 {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `beta_i = sum_j beta_{i,j}` for `i = 0 ..= max`.
    pub fn totals(&self) -> Vec<BigUint> {
        let mut totals = vec![BigUint::zero(); self.max_homological_degree() as usize + 1];
        for (&(i, _), b) in &self.entries {
            totals[i as usize] += b;
        }
        totals
    }

    /// Entries `(i-1, j, beta_{i,j}(S/I))`, i.e. `beta_{i-1,j}(I)`.
    pub fn ideal_convention(&self) -> Vec<(u32, u32, BigUint)> {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i > 0)
            .map(|(&(i, j), b)| (i - 1, j, b.clone()))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,beta\n");
        for (&(i, j), b) in &self.entries {
            let _ = writeln!(out, "{i},{j},{b}");
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "i,j,beta" => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected header i,j,beta, got {other:?}"
                )))
            }
        }
        let mut entries = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.trim().split(',').collect();
            let [i, j, b] = fields.as_slice() else {
                return Err(Error::Parse(format!("bad CSV row {line:?}")));
            };
            let parse_err = |_| Error::Parse(format!("bad CSV row {line:?}"));
            entries.push((
                i.parse().map_err(parse_err)?,
                j.parse().map_err(parse_err)?,
                b.parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("bad CSV row {line:?}")))?,
            ));
        }
        Self::from_entries(entries)
    }

    pub fn to_json(&self) -> String {
        let reprs: Vec<EntryRepr> = self
            .entries
            .iter()
            .map(|(&(i, j), b)| EntryRepr {
                i,
                j,
                beta: b.to_string(),
            })
            .collect();
        serde_json::to_string(&reprs).expect("table serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let reprs = match serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))? {
            TableRepr::Bare(reprs) | TableRepr::Wrapped { entries: reprs } => reprs,
        };
        let mut entries = Vec::with_capacity(reprs.len());
        for r in reprs {
            let beta: BigUint = r
                .beta
                .parse()
                .map_err(|_| Error::Parse(format!("bad Betti number {:?}", r.beta)))?;
            entries.push((r.i, r.j, beta));
        }
        Self::from_entries(entries)
    }

    /// Printed layout: one column per homological degree `i`, one row per
    /// offset `r = j - i`, with a `total` row on top.
    pub fn render_layout(&self) -> String {
        let max_i = self.max_homological_degree() as usize;
        let max_r = self
            .entries
            .keys()
            .map(|&(i, j)| j.saturating_sub(i))
            .max()
            .unwrap_or(0) as usize;
        let mut grid = vec![vec![String::new(); max_i + 1]; max_r + 1];
        for (&(i, j), b) in &self.entries {
            grid[(j - i) as usize][i as usize] = b.to_string();
        }
        let mut rows: Vec<Vec<String>> = Vec::with_capacity(max_r + 3);
        rows.push(
            std::iter::once("i\\j".to_string())
                .chain((0..=max_i).map(|i| i.to_string()))
                .collect(),
        );
        rows.push(
            std::iter::once("total".to_string())
                .chain(self.totals().iter().map(|b| b.to_string()))
                .collect(),
        );
        for (r, cells) in grid.into_iter().enumerate() {
            rows.push(std::iter::once(r.to_string()).chain(cells).collect());
        }
        let widths: Vec<usize> = (0..=max_i + 1)
            .map(|c| rows.iter().map(|row| row[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in rows {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join(" ").trim_end());
        }
        out
    }
}

pub fn betti_table(g: &GeneratingFunction) -> Result<BettiTable> {
    BettiTable::from_gf(g)
}

type SparseTable = BTreeMap<(u32, u32), BigUint>;

fn convolve(a: &SparseTable, b: &SparseTable) -> SparseTable {
    let mut out = SparseTable::new();
    for (&(i1, j1), b1) in a {
        for (&(i2, j2), b2) in b {
            *out.entry((i1 + i2, j1 + j2)).or_default() += b1 * b2;
        }
    }
    out
}

fn binomial(n: u32, r: u32) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `beta_{i,j}(S/I_{k,n})` by the explicit convolution
/// `sum_s C(k,s) sum beta_{i_1,j_1} .. beta_{i_s,j_s}` over positive
/// `i_1 + .. + i_s = i` and `j_1 + .. + j_s = j - s`, starting from
/// `beta_{i,i}(S/I_{k,1}) = C(k,i)`.
pub fn path_betti_recursive(k: u32, n: u32, budget: &Budget) -> Result<BettiTable> {
    validate_kn(k, n)?;
    let mut prev: SparseTable = (1..=k).map(|i| ((i, i), binomial(k, i))).collect();
    for _ in 1..n {
        let terms_bound = prev.len() as u128 * k as u128 * prev.len() as u128;
        budget.check(
            terms_bound.min(u128::MAX / 2),
            prev.values().map(|b| b.bits()).max().unwrap_or(0) as u128 * k as u128,
        )?;
        let mut next = SparseTable::new();
        let mut power = prev.clone(); // s-fold convolution, s = 1
        for s in 1..=k {
            let weight = binomial(k, s);
            for (&(i, j), b) in &power {
                *next.entry((i, j + s)).or_default() += &weight * b;
            }
            if s < k {
                power = convolve(&power, &prev);
            }
        }
        prev = next;
    }
    BettiTable::from_entries(prev.into_iter().map(|((i, j), b)| (i, j, b)))
}

/// Betti table of `S/(I_1 + .. + I_r)` for ideals in disjoint variables:
/// the tables convolve, homological and internal degrees adding.
pub fn tensor_sum_betti(tables: &[BettiTable]) -> BettiTable {
    let mut acc: SparseTable = BettiTable::unit().entries;
    for table in tables {
        acc = convolve(&acc, &table.entries);
    }
    BettiTable { entries: acc }
}

/// Betti table of `S/(I_1 .. I_r)` for ideals in disjoint variables. The
/// ideal-convention tables `beta_{i-1,j}(I_l)` convolve, which on generating
/// functions reads `G = x^{-(r-1)} prod G_l`.
pub fn tensor_product_betti(tables: &[BettiTable]) -> Result<BettiTable> {
    let Some((first, rest)) = tables.split_first() else {
        return Err(Error::invalid("product of an empty list of ideals"));
    };
    let ideal = |t: &BettiTable| -> SparseTable {
        t.ideal_convention()
            .into_iter()
            .map(|(i, j, b)| ((i, j), b))
            .collect()
    };
    let mut acc = ideal(first);
    for table in rest {
        acc = convolve(&acc, &ideal(table));
    }
    BettiTable::from_entries(acc.into_iter().map(|((i, j), b)| (i + 1, j, b)))
}

/// The same product rule as [`tensor_product_betti`], computed on the
/// generating functions with an exact division by `x^{r-1}`.
pub fn tensor_product_gf(gfs: &[GeneratingFunction]) -> Result<GeneratingFunction> {
    if gfs.is_empty() {
        return Err(Error::invalid("product of an empty list of ideals"));
    }
    let product = gfs
        .iter()
        .skip(1)
        .fold(gfs[0].poly.clone(), |acc, g| acc.mul(&g.poly));
    let shift = (gfs.len() - 1) as u32;
    Ok(GeneratingFunction::new(
        product
            .exact_divide_x(shift)
            .map_err(|e| Error::Invariant(format!("product rule shift is inexact: {e}")))?,
    ))
}

/// Hilbert-series numerator `1 - H = 1 + G(-x,t)` of the quotient, as
/// printed in the tensor examples (`1 - x(...) + x^2(...) - ...`).
pub fn quotient_numerator(table: &BettiTable) -> BivarPoly {
    table.full_poly().negate_x()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(triples: &[(u32, u32, i64)]) -> BivarPoly {
        BivarPoly::from_triples(triples)
    }

    #[test]
    fn path_gf_examples() {
        assert_eq!(path_gf(2, 1).unwrap().poly(), &p(&[(1, 1, 2), (2, 2, 1)]));
        assert_eq!(
            path_gf(2, 2).unwrap().poly(),
            &p(&[(1, 2, 4), (2, 3, 2), (2, 4, 4), (3, 5, 4), (4, 6, 1)])
        );
    }

    #[test]
    fn cut_gf_examples() {
        assert_eq!(cut_gf(2, 1).unwrap().poly(), &p(&[(1, 2, 1)]));
        assert_eq!(
            cut_gf(2, 2).unwrap().poly(),
            &p(&[
                (1, 2, 1),
                (1, 3, 2),
                (1, 4, 1),
                (2, 4, 2),
                (2, 5, 2),
                (3, 6, 1)
            ])
        );
        assert_eq!(cut_gf(3, 1).unwrap().poly(), &p(&[(1, 3, 1)]));
        assert!(cut_gf(1, 2).is_err());
        assert!(cut_gf(2, 0).is_err());
    }

    #[test]
    fn truncated_recursions_match_full() {
        for (k, n) in [(2, 3), (3, 2), (2, 4)] {
            let full = cut_gf(k, n).unwrap();
            let fullp = path_gf(k, n).unwrap();
            for m in 0..6 {
                let b = Budget::default();
                assert_eq!(
                    cut_gf_with(k, n, &b, Some(m)).unwrap().poly(),
                    &full.poly().truncate_x(m),
                    "cut k={k} n={n} m={m}"
                );
                assert_eq!(
                    path_gf_with(k, n, &b, Some(m)).unwrap().poly(),
                    &fullp.poly().truncate_x(m),
                    "path k={k} n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let tiny = Budget {
            max_terms: 100,
            max_coeff_bits: 1 << 20,
        };
        assert!(matches!(
            cut_gf_with(2, 5, &tiny, None),
            Err(Error::Budget { .. })
        ));
        let narrow = Budget {
            max_terms: usize::MAX,
            max_coeff_bits: 8,
        };
        assert!(matches!(
            path_gf_with(2, 4, &narrow, None),
            Err(Error::Budget { .. })
        ));
        assert!(path_gf_with(2, 2, &narrow, None).is_ok());
    }

    #[test]
    fn numerator_examples() {
        let h = gf_to_numerator(&path_gf(2, 1).unwrap());
        assert_eq!(h.poly(), &p(&[(1, 1, 2), (2, 2, -1)]));
        assert!(gf_to_numerator(&GeneratingFunction::new(BivarPoly::zero()))
            .poly()
            .is_zero());
        let g = cut_gf(2, 3).unwrap();
        assert_eq!(numerator_to_gf(&gf_to_numerator(&g)), g);
    }

    #[test]
    fn betti_table_examples() {
        let t = betti_table(&path_gf(2, 2).unwrap()).unwrap();
        let totals: Vec<u64> = t.totals().iter().map(|b| b.try_into().unwrap()).collect();
        assert_eq!(totals, vec![1, 4, 6, 4, 1]);
        let t = betti_table(&cut_gf(2, 3).unwrap()).unwrap();
        let totals: Vec<u64> = t.totals().iter().map(|b| b.try_into().unwrap()).collect();
        assert_eq!(totals, vec![1, 25, 80, 114, 90, 41, 10, 1]);
        assert_eq!(t.get(0, 0), BigUint::one());
        assert!(betti_table(&GeneratingFunction::new(p(&[(1, 1, -1)]))).is_err());
    }

    #[test]
    fn path_betti_recursive_examples() {
        let b = Budget::default();
        assert_eq!(
            path_betti_recursive(2, 1, &b).unwrap(),
            BettiTable::from_small(&[(1, 1, 2), (2, 2, 1)])
        );
        assert_eq!(
            path_betti_recursive(2, 2, &b).unwrap(),
            BettiTable::from_small(&[(1, 2, 4), (2, 3, 2), (2, 4, 4), (3, 5, 4), (4, 6, 1)])
        );
        assert_eq!(
            path_betti_recursive(3, 1, &b).unwrap(),
            BettiTable::from_small(&[(1, 1, 3), (2, 2, 3), (3, 3, 1)])
        );
    }

    #[test]
    fn table_validation() {
        assert!(BettiTable::from_entries([(0, 1, BigUint::one())]).is_err());
        assert!(
            BettiTable::from_entries([(1, 1, BigUint::one()), (1, 1, BigUint::one())]).is_err()
        );
        let t = BettiTable::from_entries([(1, 2, BigUint::zero())]).unwrap();
        assert_eq!(t, BettiTable::unit());
    }

    #[test]
    fn ideal_convention_is_index_shift() {
        let t = BettiTable::from_small(&[(1, 2, 3), (2, 5, 1)]);
        assert_eq!(
            t.ideal_convention(),
            vec![(0, 2, BigUint::from(3u32)), (1, 5, BigUint::one())]
        );
    }

    #[test]
    fn csv_and_json_roundtrip() {
        let t = betti_table(&cut_gf(2, 3).unwrap()).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("i,j,beta\n0,0,1\n1,2,1\n"));
        assert_eq!(BettiTable::from_csv(&csv).unwrap(), t);
        let json = t.to_json();
        assert!(json.starts_with(r#"[{"i":0,"j":0,"beta":"1"},{"i":1,"j":2,"beta":"1"}"#));
        assert_eq!(BettiTable::from_json(&json).unwrap(), t);
        let wrapped = format!(r#"{{"k":2,"entries":{json}}}"#);
        assert_eq!(BettiTable::from_json(&wrapped).unwrap(), t);
        assert!(BettiTable::from_csv("a,b,c\n").is_err());
        assert!(BettiTable::from_csv("i,j,beta\n1,2\n").is_err());
        assert!(BettiTable::from_json(r#"[{"i":1,"j":2,"beta":"-4"}]"#).is_err());
    }

    #[test]
    fn layout_rendering() {
        let t = betti_table(&cut_gf(2, 2).unwrap()).unwrap();
        let expected = [
            "  i\\j 0 1 2 3",
            "total 1 4 4 1",
            "    0 1",
            "    1   1",
            "    2   2 2",
            "    3   1 2 1",
        ]
        .map(|l| format!("{l}\n"))
        .concat();
        assert_eq!(t.render_layout(), expected);
    }

    #[test]
    fn tensor_sum_unit() {
        let t = betti_table(&cut_gf(2, 2).unwrap()).unwrap();
        assert_eq!(tensor_sum_betti(&[t.clone(), BettiTable::unit()]), t);
        assert_eq!(tensor_sum_betti(&[]), BettiTable::unit());
    }

    #[test]
    fn tensor_product_singleton_and_gf_route() {
        let t = betti_table(&cut_gf(2, 2).unwrap()).unwrap();
        assert_eq!(tensor_product_betti(std::slice::from_ref(&t)).unwrap(), t);
        assert!(tensor_product_betti(&[]).is_err());
        let a = betti_table(&path_gf(2, 1).unwrap()).unwrap();
        let by_table = tensor_product_betti(&[a.clone(), t.clone(), a.clone()]).unwrap();
        let by_gf = tensor_product_gf(&[a.to_gf(), t.to_gf(), a.to_gf()]).unwrap();
        assert_eq!(by_table.to_gf(), by_gf);
    }

    #[test]
    fn cut_recursion_is_product_of_sums() {
        // J_{k,n} = prod_i (<x_i> + J_{k,n-1}); check level 3 from level 2
        let edge = BettiTable::from_small(&[(1, 1, 1)]);
        let below = betti_table(&cut_gf(2, 2).unwrap()).unwrap();
        let branch = tensor_sum_betti(&[edge, below]);
        let level3 = tensor_product_betti(&[branch.clone(), branch]).unwrap();
        assert_eq!(level3, betti_table(&cut_gf(2, 3).unwrap()).unwrap());
    }
}
