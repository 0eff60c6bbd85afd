//! Reference data: printed cut Betti tables for `k = 2`, the
//! numerators of `H~_{2,2}` and `H~_{2,3}`, and the two-ideal tensor example.

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::oracle::MonomialSet;
use crate::poly::{BivarPoly, Term, UniPoly};
use crate::resolution::BettiTable;

const CUT_K2_N2: &str = include_str!("../fixtures/cut_k2_n2.txt");
const CUT_K2_N3: &str = include_str!("../fixtures/cut_k2_n3.txt");
const CUT_K2_N4: &str = include_str!("../fixtures/cut_k2_n4.txt");
const CUT_K2_N5: &str = include_str!("../fixtures/cut_k2_n5.txt");
const CUT_K2_NINF: &str = include_str!("../fixtures/cut_k2_ninf.txt");

/// A table in printed layout: row `r = j - i`, column `i`, cell
/// `beta_{i,i+r}`; `None` marks a printed blank (a zero entry). Cells right
/// of the printed columns are unknown and never compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedTable {
    pub totals: Option<Vec<BigUint>>,
    pub rows: Vec<(u32, Vec<Option<BigUint>>)>,
}

impl PrintedTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut totals = None;
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let head = fields.next().expect("nonempty line");
            let cells: Vec<&str> = fields.collect();
            let parse_cell = |c: &str| -> Result<Option<BigUint>> {
                if c == "." {
                    Ok(None)
                } else {
                    c.parse()
                        .map(Some)
                        .map_err(|_| Error::Parse(format!("bad table cell {c:?}")))
                }
            };
            if head == "total" {
                let values: Result<Vec<BigUint>> = cells
                    .iter()
                    .map(|c| parse_cell(c)?.ok_or_else(|| Error::Parse("blank total".into())))
                    .collect();
                totals = Some(values?);
            } else {
                let r: u32 = head
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad row label {head:?}")))?;
                let values: Result<Vec<Option<BigUint>>> =
                    cells.iter().map(|c| parse_cell(c)).collect();
                rows.push((r, values?));
            }
        }
        Ok(PrintedTable { totals, rows })
    }

    /// Number of printed cells, totals included.
    pub fn cell_count(&self) -> usize {
        self.totals.as_ref().map_or(0, Vec::len)
            + self
                .rows
                .iter()
                .map(|(_, cells)| cells.len())
                .sum::<usize>()
    }

    /// Every printed cell that disagrees with `table`, as a description.
    pub fn mismatches(&self, table: &BettiTable) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(totals) = &self.totals {
            let actual = table.totals();
            for (i, expected) in totals.iter().enumerate() {
                let got = actual.get(i).cloned().unwrap_or_default();
                if &got != expected {
                    out.push(format!(
                        "total beta_{i}: printed {expected}, computed {got}"
                    ));
                }
            }
        }
        for (r, cells) in &self.rows {
            for (i, cell) in cells.iter().enumerate() {
                let expected = cell.clone().unwrap_or_default();
                let got = table.get(i as u32, i as u32 + r);
                if got != expected {
                    out.push(format!(
                        "beta_({i},{}): printed {expected}, computed {got}",
                        i as u32 + r
                    ));
                }
            }
        }
        out
    }
}

/// The printed table of `S/J_{2,n}` for `n = 2..=5`.
pub fn printed_cut_table(n: u32) -> Option<PrintedTable> {
    let text = match n {
        2 => CUT_K2_N2,
        3 => CUT_K2_N3,
        4 => CUT_K2_N4,
        5 => CUT_K2_N5,
        _ => return None,
    };
    Some(PrintedTable::parse(text).expect("embedded fixture parses"))
}

/// The printed limiting table of `S/J_{2,inf}`.
pub fn printed_asymptotic_table() -> PrintedTable {
    PrintedTable::parse(CUT_K2_NINF).expect("embedded fixture parses")
}

fn uni(coeffs: &[i64]) -> UniPoly {
    UniPoly::from_pairs(
        coeffs
            .iter()
            .enumerate()
            .map(|(d, &c)| (d as u32, BigInt::from(c))),
    )
}

fn t_pow(e: u32) -> UniPoly {
    UniPoly::from_pairs([(e, BigInt::from(1))])
}

fn scalar(c: i64) -> UniPoly {
    uni(&[c])
}

fn bivariate(parts: &[(u32, UniPoly)]) -> BivarPoly {
    BivarPoly::from_terms(parts.iter().flat_map(|(x, u)| {
        u.terms()
            .iter()
            .map(move |(t, c)| Term::new(*x, *t, c.clone()))
    }))
}

/// `H~_{2,2} = t^2(t+1)^2 x - 2t^4(t+1) x^2 + t^6 x^3`.
pub fn cut_numerator_k2_n2() -> BivarPoly {
    let t1 = uni(&[1, 1]);
    bivariate(&[
        (1, t_pow(2).mul(&t1).mul(&t1)),
        (2, scalar(-2).mul(&t_pow(4)).mul(&t1)),
        (3, t_pow(6)),
    ])
}

/// `H~_{2,3}` in factored form.
pub fn cut_numerator_k2_n3() -> BivarPoly {
    let a = uni(&[1, 1, 2, 1]); // t^3 + 2t^2 + t + 1
    bivariate(&[
        (1, t_pow(2).mul(&a).mul(&a)),
        (
            2,
            scalar(-2)
                .mul(&t_pow(4))
                .mul(&a)
                .mul(&uni(&[1, 1]))
                .mul(&uni(&[1, 3])),
        ),
        (3, t_pow(6).mul(&uni(&[5, 18, 36, 40, 15]))),
        (4, scalar(-2).mul(&t_pow(8)).mul(&uni(&[3, 12, 20, 10]))),
        (5, t_pow(10).mul(&uni(&[6, 20, 15]))),
        (6, scalar(-2).mul(&t_pow(12)).mul(&uni(&[2, 3]))),
        (7, t_pow(14)),
    ])
}

/// `I = <x1 x2 x3, x2 x4, x1 x5 x6>` and `J = <y1 y2 y3, y2 y4 y5>`, in
/// disjoint variables.
pub fn tensor_example_ideals() -> (MonomialSet, MonomialSet) {
    let i = MonomialSet::from_names(
        &["x1", "x2", "x3", "x4", "x5", "x6"],
        &[&["x1", "x2", "x3"], &["x2", "x4"], &["x1", "x5", "x6"]],
    )
    .expect("fixture is a clutter");
    let j = MonomialSet::from_names(
        &["y1", "y2", "y3", "y4", "y5"],
        &[&["y1", "y2", "y3"], &["y2", "y4", "y5"]],
    )
    .expect("fixture is a clutter");
    (i, j)
}

/// Reference tables of `S/I` and `S/J`, read off
/// `G_I = x(t^2 + 2t^3) + x^2(t^4 + 2t^5) + x^3 t^6` and `G_J = 2x t^3 + x^2 t^5`.
pub fn tensor_example_tables() -> (BettiTable, BettiTable) {
    (
        BettiTable::from_small(&[(1, 2, 1), (1, 3, 2), (2, 4, 1), (2, 5, 2), (3, 6, 1)]),
        BettiTable::from_small(&[(1, 3, 2), (2, 5, 1)]),
    )
}

/// Hilbert numerator of `S/(I + J)`:
/// `1 - x(t^2+4t^3) + x^2(t^4+5t^5+4t^6) - x^3(t^6+3t^7+6t^8) + x^4(3t^9+2t^10) - x^5 t^11`.
pub fn tensor_example_sum_numerator() -> BivarPoly {
    BivarPoly::from_triples(&[
        (0, 0, 1),
        (1, 2, -1),
        (1, 3, -4),
        (2, 4, 1),
        (2, 5, 5),
        (2, 6, 4),
        (3, 6, -1),
        (3, 7, -3),
        (3, 8, -6),
        (4, 9, 3),
        (4, 10, 2),
        (5, 11, -1),
    ])
}

/// Hilbert numerator of `S/(IJ)`:
/// `1 - x(2t^5+4t^6) + x^2(3t^7+6t^8) - x^3(3t^9+2t^10) + x^4 t^11`.
pub fn tensor_example_product_numerator() -> BivarPoly {
    BivarPoly::from_triples(&[
        (0, 0, 1),
        (1, 5, -2),
        (1, 6, -4),
        (2, 7, 3),
        (2, 8, 6),
        (3, 9, -3),
        (3, 10, -2),
        (4, 11, 1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        let t3 = printed_cut_table(3).unwrap();
        let totals: Vec<u64> = t3
            .totals
            .unwrap()
            .iter()
            .map(|b| b.try_into().unwrap())
            .collect();
        assert_eq!(totals, vec![1, 25, 80, 114, 90, 41, 10, 1]);
        assert!(printed_cut_table(6).is_none());
        assert_eq!(printed_asymptotic_table().rows.len(), 15);
        assert!(PrintedTable::parse("x 1 2").is_err());
        assert!(PrintedTable::parse("total 1 .").is_err());
    }

    #[test]
    fn mismatch_reporting() {
        let printed = PrintedTable::parse("total 1 2\n0 1\n1 . 2\n").unwrap();
        assert!(printed
            .mismatches(&BettiTable::from_small(&[(1, 2, 2)]))
            .is_empty());
        let wrong = printed.mismatches(&BettiTable::from_small(&[(1, 2, 3)]));
        assert_eq!(wrong.len(), 2);
    }

    #[test]
    fn factored_numerators_have_expected_shape() {
        let h3 = cut_numerator_k2_n3();
        assert_eq!(h3.deg_x(), Some(7));
        assert_eq!(h3.x_coefficient(7), t_pow(14));
        let h2 = cut_numerator_k2_n2();
        assert_eq!(h2.coeff(2, 5), BigInt::from(-2));
    }
}
