//! Sampled bound curves for plotting.
//!
//! Every row is expressed in terms of the operating probability `p`. For the
//! cut family the failure bounds `C_{k,n,m}(1-p)` are turned into bounds on
//! `P(p) = 1 - P~(1-p)`, so an odd cut truncation gives the lower curve and
//! an even one the upper curve. Values are computed exactly and rounded to
//! `f64` only when written out.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::percolation::{cut_bound_polynomial, path_bound_polynomial, percolation_exact};
use crate::poly::{ExactRational, UniPoly};
use crate::resolution::Budget;

pub const CURVE_HEADER: &str = "p,exact,lower,upper,k,n,m_lower,m_upper";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path,
    Cut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub family: Family,
    pub k: u32,
    pub n: u32,
    pub m_lower: u32,
    pub m_upper: u32,
}

impl CurveSpec {
    /// Assigns two truncation depths of opposite parity to the lower and
    /// upper curves of the family.
    pub fn new(family: Family, k: u32, n: u32, m_a: u32, m_b: u32) -> Result<Self> {
        if m_a % 2 == m_b % 2 {
            return Err(Error::invalid(format!(
                "truncation depths {m_a} and {m_b} must have opposite parity"
            )));
        }
        let (even, odd) = if m_a.is_multiple_of(2) {
            (m_a, m_b)
        } else {
            (m_b, m_a)
        };
        let (m_lower, m_upper) = match family {
            Family::Path => (even, odd),
            Family::Cut => (odd, even),
        };
        Ok(CurveSpec {
            family,
            k,
            n,
            m_lower,
            m_upper,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveRow {
    pub p: f64,
    pub exact: f64,
    pub lower: f64,
    pub upper: f64,
    pub k: u32,
    pub n: u32,
    pub m_lower: u32,
    pub m_upper: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCurve {
    pub rows: Vec<CurveRow>,
}

fn to_f64(v: &ExactRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// `samples` equally spaced points `0, 1/(s-1), .., 1`.
pub fn grid(samples: u32) -> Result<Vec<ExactRational>> {
    if samples < 2 {
        return Err(Error::invalid("a curve needs at least 2 samples"));
    }
    let d = samples as i64 - 1;
    Ok((0..=d)
        .map(|i| ExactRational::new(i.into(), d.into()))
        .collect())
}

fn family_bound(spec: &CurveSpec, m: u32, budget: &Budget) -> Result<UniPoly> {
    match spec.family {
        Family::Path => path_bound_polynomial(spec.k, spec.n, m, budget),
        Family::Cut => cut_bound_polynomial(spec.k, spec.n, m, budget),
    }
}

pub fn sample_curve(spec: &CurveSpec, samples: u32, budget: &Budget) -> Result<BoundCurve> {
    let lower_poly = family_bound(spec, spec.m_lower, budget)?;
    let upper_poly = family_bound(spec, spec.m_upper, budget)?;
    let one = ExactRational::from_integer(1.into());
    let mut rows = Vec::with_capacity(samples as usize);
    for p in grid(samples)? {
        let exact = percolation_exact(spec.k, spec.n, &p)?;
        let (lower, upper) = match spec.family {
            Family::Path => (lower_poly.eval_rational(&p), upper_poly.eval_rational(&p)),
            Family::Cut => {
                let q = &one - &p;
                (
                    &one - lower_poly.eval_rational(&q),
                    &one - upper_poly.eval_rational(&q),
                )
            }
        };
        rows.push(CurveRow {
            p: to_f64(&p),
            exact: to_f64(&exact),
            lower: to_f64(&lower),
            upper: to_f64(&upper),
            k: spec.k,
            n: spec.n,
            m_lower: spec.m_lower,
            m_upper: spec.m_upper,
        });
    }
    Ok(BoundCurve { rows })
}

/// Path and cut bounds for `k = 2`, `n = 4`, `m = 3, 4`.
pub fn figure3_specs() -> Vec<CurveSpec> {
    vec![
        CurveSpec::new(Family::Path, 2, 4, 3, 4).expect("opposite parity"),
        CurveSpec::new(Family::Cut, 2, 4, 3, 4).expect("opposite parity"),
    ]
}

/// Cut bounds for `k = 2`, `n = 6`, `m = 3, 4`, which leave the unit
/// interval close to `q = 1/4`.
pub fn figure4_specs() -> Vec<CurveSpec> {
    vec![CurveSpec::new(Family::Cut, 2, 6, 3, 4).expect("opposite parity")]
}

pub fn preset_specs(name: &str) -> Result<Vec<CurveSpec>> {
    match name {
        "figure3" => Ok(figure3_specs()),
        "figure4" => Ok(figure4_specs()),
        other => Err(Error::invalid(format!(
            "unknown preset {other:?}; expected figure3 or figure4"
        ))),
    }
}

pub fn sample_specs(specs: &[CurveSpec], samples: u32, budget: &Budget) -> Result<BoundCurve> {
    let mut rows = Vec::new();
    for spec in specs {
        rows.extend(sample_curve(spec, samples, budget)?.rows);
    }
    Ok(BoundCurve { rows })
}

impl BoundCurve {
    /// CSV with [`CURVE_HEADER`]; with `clamp` the bounds are clipped to
    /// `[0, 1]` for display.
    pub fn to_csv(&self, clamp: bool) -> String {
        let mut out = format!("{CURVE_HEADER}\n");
        for row in &self.rows {
            let (lower, upper) = if clamp {
                (row.lower.clamp(0.0, 1.0), row.upper.clamp(0.0, 1.0))
            } else {
                (row.lower, row.upper)
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                row.p, row.exact, lower, upper, row.k, row.n, row.m_lower, row.m_upper
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_assignment() {
        let path = CurveSpec::new(Family::Path, 2, 4, 3, 4).unwrap();
        assert_eq!((path.m_lower, path.m_upper), (4, 3));
        let cut = CurveSpec::new(Family::Cut, 2, 4, 4, 3).unwrap();
        assert_eq!((cut.m_lower, cut.m_upper), (3, 4));
        assert!(CurveSpec::new(Family::Cut, 2, 4, 2, 4).is_err());
    }

    #[test]
    fn figure3_endpoints() {
        let curve = sample_specs(&figure3_specs(), 11, &Budget::default()).unwrap();
        assert_eq!(curve.rows.len(), 22);
        // the path side vanishes at p = 0, the cut side is exact at p = 1
        for row in curve.rows.iter().filter(|r| r.p == 0.0 && r.m_lower == 4) {
            assert_eq!((row.exact, row.lower, row.upper), (0.0, 0.0, 0.0));
        }
        for row in curve.rows.iter().filter(|r| r.p == 1.0 && r.m_lower == 3) {
            assert_eq!((row.exact, row.lower, row.upper), (1.0, 1.0, 1.0));
        }
        for row in curve.rows.iter().filter(|r| r.p == 1.0) {
            assert_eq!(row.exact, 1.0);
        }
        for row in &curve.rows {
            assert!(row.lower <= row.exact + 1e-12 && row.exact <= row.upper + 1e-12);
        }
    }

    #[test]
    fn figure4_leaves_unit_interval_near_quarter() {
        let curve = sample_specs(&figure4_specs(), 101, &Budget::default()).unwrap();
        let outside = |r: &CurveRow| r.lower < 0.0 || r.upper > 1.0;
        // inside for q = 1 - p <= 1/4, outside somewhere in (1/4, 0.35]
        assert!(curve
            .rows
            .iter()
            .filter(|r| r.p >= 0.75)
            .all(|r| !outside(r)));
        assert!(curve
            .rows
            .iter()
            .filter(|r| (0.65..0.75).contains(&r.p))
            .any(outside));
    }

    #[test]
    fn csv_shape_and_clamping() {
        let curve = sample_specs(&figure4_specs(), 5, &Budget::default()).unwrap();
        let raw = curve.to_csv(false);
        let clamped = curve.to_csv(true);
        assert!(raw.starts_with("p,exact,lower,upper,k,n,m_lower,m_upper\n0,0,"));
        assert_eq!(raw.lines().count(), 6);
        for line in clamped.lines().skip(1) {
            let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
            assert!((0.0..=1.0).contains(&fields[2]) && (0.0..=1.0).contains(&fields[3]));
        }
        assert!(preset_specs("figure5").is_err());
        assert!(grid(1).is_err());
    }
}
