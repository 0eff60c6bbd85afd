//! Percolation on `T_{k,n}`: exact probabilities, the infinite-depth limit,
//! truncated-resolution bounds and the critical values.
//!
//! `p` is the probability that a bond works and `q = 1 - p` that it fails.
//! Path bounds `B_{k,n,m}(p)` truncate `H_{k,n}` at x-degree `m`; cut bounds
//! `C_{k,n,m}(q)` truncate `H~_{k,n}`. Odd `m` bounds from above, even `m`
//! from below.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{ExactRational, UniPoly};
use crate::resolution::{cut_gf_with, gf_to_numerator, path_gf_with, Budget};

/// Truncation depth matched by `C_n = (C_{n-1} + q)^k, C_1 = q^k`.
///
/// The recursion is usually labelled `m = 2`, but `C_1 = q^k` is the full
/// x-linear part of `H~_{k,1} = t^k x`, and for `n = 2, 3` the recursion
/// reproduces the x-linear coefficient of `H~_{k,n}` exactly.
pub const CUT_M2_RECURSION_TRUNCATION: u32 = 1;

fn rational(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

pub fn validate_probability(p: &ExactRational) -> Result<()> {
    if p.is_negative() || *p > ExactRational::one() {
        return Err(Error::invalid(format!("probability {p} is outside [0, 1]")));
    }
    Ok(())
}

fn validate_probability_f64(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("probability {p} is outside [0, 1]")));
    }
    Ok(())
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

fn validate_m(m: u32) -> Result<()> {
    if m < 1 {
        return Err(Error::invalid("truncation depth m must be >= 1"));
    }
    Ok(())
}

/// `P_{k,n}(p)` by `P_{k,n} = 1 - (1 - p P_{k,n-1})^k`, `P_{k,0} = 1`.
pub fn percolation_exact(k: u32, n: u32, p: &ExactRational) -> Result<ExactRational> {
    validate_kn(k, n)?;
    validate_probability(p)?;
    let one = ExactRational::one();
    let mut value = one.clone();
    for _ in 0..n {
        value = &one - num_traits::pow(&one - p * &value, k as usize);
    }
    Ok(value)
}

/// Floating-point version of the same recursion, for depths where the exact
/// denominators become impractical.
pub fn percolation_recursive_f64(k: u32, n: u32, p: f64) -> Result<f64> {
    validate_kn(k, n)?;
    validate_probability_f64(p)?;
    let mut value = 1.0f64;
    for _ in 0..n {
        value = 1.0 - (1.0 - p * value).powi(k as i32);
    }
    Ok(value)
}

/// `H_{k,n}(1, t)`, the operating probability as a polynomial in `p`.
pub fn percolation_polynomial(k: u32, n: u32, budget: &Budget) -> Result<UniPoly> {
    Ok(gf_to_numerator(&path_gf_with(k, n, budget, None)?)
        .poly()
        .eval_x1())
}

/// `H~_{k,n}(1, t)`, the failure probability as a polynomial in `q`.
pub fn failure_polynomial(k: u32, n: u32, budget: &Budget) -> Result<UniPoly> {
    Ok(gf_to_numerator(&cut_gf_with(k, n, budget, None)?)
        .poly()
        .eval_x1())
}

/// Smallest root in `[lo, hi]` of a function that is positive at `lo` and
/// nonpositive at `hi`.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

const ROOT_TOLERANCE: f64 = 1e-12;

/// `P_{k,inf}(p) = max(0, 1 - u)` with `u` the smallest root in `[0,1]` of
/// `u = (1 - p(1 - u))^k`.
pub fn percolation_infinite(k: u32, p: f64) -> Result<f64> {
    validate_kn(k, 1)?;
    validate_probability_f64(p)?;
    let kp = k as f64 * p;
    if kp <= 1.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    let kf = k as i32;
    let f = |u: f64| (1.0 - p + p * u).powi(kf) - u;
    let slope = |u: f64| kp * (1.0 - p + p * u).powi(kf - 1) - 1.0;
    // f is convex with f(1) = 0 and f'(1) = kp - 1 > 0, so its minimum
    // lies inside (0, 1) and the smaller root lies to the left of it
    let u_min = bisect(|u| -slope(u), 0.0, 1.0, ROOT_TOLERANCE);
    let u = bisect(f, 0.0, u_min, ROOT_TOLERANCE);
    Ok((1.0 - u).max(0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Exact,
    PathLower,
    PathUpper,
    CutLower,
    CutUpper,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::PathLower => "path_lower",
            BoundKind::PathUpper => "path_upper",
            BoundKind::CutLower => "cut_lower",
            BoundKind::CutUpper => "cut_upper",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub value: ExactRational,
    pub kind: BoundKind,
    pub k: u32,
    pub n: u32,
    pub m: u32,
}

impl BoundResult {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    /// The value clipped to `[0, 1]` for display.
    pub fn clamped(&self) -> f64 {
        self.to_f64().clamp(0.0, 1.0)
    }
}

fn kind_for(m: u32, full_degree: u32, lower: BoundKind, upper: BoundKind) -> BoundKind {
    if m >= full_degree {
        BoundKind::Exact
    } else if m % 2 == 1 {
        upper
    } else {
        lower
    }
}

/// `B_{k,n,m}(t) = T_m(H_{k,n})(1, t)` as a polynomial.
pub fn path_bound_polynomial(k: u32, n: u32, m: u32, budget: &Budget) -> Result<UniPoly> {
    validate_m(m)?;
    let g = path_gf_with(k, n, budget, Some(m))?;
    Ok(gf_to_numerator(&g).poly().eval_x1())
}

/// `C_{k,n,m}(t) = T_m(H~_{k,n})(1, t)` as a polynomial.
pub fn cut_bound_polynomial(k: u32, n: u32, m: u32, budget: &Budget) -> Result<UniPoly> {
    validate_m(m)?;
    let g = cut_gf_with(k, n, budget, Some(m))?;
    Ok(gf_to_numerator(&g).poly().eval_x1())
}

fn path_degree(k: u32, n: u32) -> u32 {
    (k as u64)
        .checked_pow(n)
        .map_or(u32::MAX, |d| d.min(u32::MAX as u64) as u32)
}

fn cut_degree(k: u32, n: u32) -> u32 {
    let mut d: u64 = 1;
    for _ in 1..n {
        d = d.saturating_mul(k as u64).saturating_add(1);
    }
    d.min(u32::MAX as u64) as u32
}

pub fn path_bound(k: u32, n: u32, m: u32, p: &ExactRational) -> Result<BoundResult> {
    validate_probability(p)?;
    let poly = path_bound_polynomial(k, n, m, &Budget::default())?;
    Ok(BoundResult {
        value: poly.eval_rational(p),
        kind: kind_for(
            m,
            path_degree(k, n),
            BoundKind::PathLower,
            BoundKind::PathUpper,
        ),
        k,
        n,
        m,
    })
}

pub fn cut_bound(k: u32, n: u32, m: u32, q: &ExactRational) -> Result<BoundResult> {
    validate_probability(q)?;
    let poly = cut_bound_polynomial(k, n, m, &Budget::default())?;
    Ok(BoundResult {
        value: poly.eval_rational(q),
        kind: kind_for(
            m,
            cut_degree(k, n),
            BoundKind::CutLower,
            BoundKind::CutUpper,
        ),
        k,
        n,
        m,
    })
}

/// Closed forms for `B_{k,n,m}`, `m = 1, 2, 3`, obtained by multiplying the
/// bound by `(1 - kp)` and `(1 - kp)(1 - k^2 p^2)`.
pub fn closed_form_path_bound(k: u32, n: u32, m: u32, p: &ExactRational) -> Result<ExactRational> {
    validate_kn(k, n)?;
    validate_probability(p)?;
    let kr = ExactRational::from_integer(k.into());
    let one = ExactRational::one();
    let pw = |base: &ExactRational, e: u32| num_traits::pow(base.clone(), e as usize);
    let kn = pw(&kr, n);
    let lead = pw(p, n) * &kn;
    let kp = &kr * p;
    let pole = |at: &str| Error::Pole {
        op: "closed_form_path_bound",
        at: format!("p = {p} ({at})"),
    };
    match m {
        1 => Ok(lead),
        2 => {
            let factor = &one - &kp;
            if factor.is_zero() {
                return Err(pole("kp = 1"));
            }
            let inner = &one - rational(3 * k as i64 - 1, 2) * p
                + rational(k as i64 - 1, 2) * &kn * pw(p, n + 1);
            Ok(lead * inner / factor)
        }
        3 => {
            let factor = (&one - &kp) * (&one - &kp * &kp);
            if factor.is_zero() {
                return Err(pole("kp = 1"));
            }
            let ki = k as i64;
            let k2n = &kn * &kn;
            let inner = &one
                - rational(3 * ki - 1, 2) * p
                - rational((ki + 1) * (5 * ki - 2), 6) * pw(p, 2)
                + rational(ki * (11 * ki * ki - 6 * ki + 1), 6) * pw(p, 3)
                + rational(ki - 1, 2) * &kn * pw(p, n + 1)
                - rational((ki - 1) * (ki - 1), 2) * &kn * pw(p, n + 2)
                - rational((2 * ki - 1) * (ki - 1), 2) * &kn * &kr * pw(p, n + 3)
                + rational((2 * ki - 1) * (ki - 1), 6) * &k2n * pw(p, 2 * n + 2)
                + rational((ki - 1) * (ki - 2), 6) * &k2n * &kr * pw(p, 2 * n + 3);
            Ok(lead * inner / factor)
        }
        _ => Err(Error::invalid(format!(
            "closed forms exist only for m in 1..=3, got {m}"
        ))),
    }
}

/// `C_{k,1} = q^k`, `C_{k,n} = (C_{k,n-1} + q)^k`, exact.
pub fn cut_bound_m2_recursive(k: u32, n: u32, q: &ExactRational) -> Result<ExactRational> {
    validate_kn(k, n)?;
    validate_probability(q)?;
    let mut c = num_traits::pow(q.clone(), k as usize);
    for _ in 1..n {
        c = num_traits::pow(c + q, k as usize);
    }
    Ok(c)
}

/// Floating-point version of [`cut_bound_m2_recursive`]. Stops early once
/// the value is infinite.
pub fn cut_bound_m2_recursive_f64(k: u32, n: u32, q: f64) -> Result<f64> {
    validate_kn(k, n)?;
    validate_probability_f64(q)?;
    let mut c = q.powi(k as i32);
    for _ in 1..n {
        if c.is_infinite() {
            break;
        }
        c = (c + q).powi(k as i32);
    }
    Ok(c)
}

/// `q*_k = (k-1)/k^2 * k^((k-2)/(k-1))`.
pub fn q_star(k: u32) -> Result<f64> {
    validate_kn(k, 1)?;
    let kf = k as f64;
    Ok((kf - 1.0) / (kf * kf) * kf.powf((kf - 2.0) / (kf - 1.0)))
}

/// `q*_k` as an exact rational when `k^((k-2)/(k-1))` is rational, which
/// happens iff `k` is a perfect `(k-1)`-th power.
pub fn q_star_exact(k: u32) -> Result<Option<ExactRational>> {
    validate_kn(k, 1)?;
    let e = k - 1;
    // integer r with r^e = k
    let mut r: u64 = 1;
    while (r + 1).checked_pow(e).is_some_and(|v| v <= k as u64) {
        r += 1;
    }
    if r.pow(e) != k as u64 {
        return Ok(None);
    }
    // k^((k-2)/(k-1)) = r^(k-2)
    let root_power = ExactRational::from_integer(num_traits::pow(r.into(), (k - 2) as usize));
    let k2 = ExactRational::from_integer((k as u64 * k as u64).into());
    Ok(Some(
        ExactRational::from_integer((k - 1).into()) / k2 * root_power,
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalValues {
    pub p_c: ExactRational,
    pub q_star: f64,
    pub q_star_exact: Option<ExactRational>,
}

pub fn critical_values(k: u32) -> Result<CriticalValues> {
    Ok(CriticalValues {
        p_c: rational(1, k as i64),
        q_star: q_star(k)?,
        q_star_exact: q_star_exact(k)?,
    })
}

/// Smallest nonnegative root of `z = (z + q)^k`, which exists iff
/// `q <= q*_k`. At `q = q*_k` the root is double and is returned.
pub fn cut_fixed_point_m2(k: u32, q: f64) -> Result<f64> {
    validate_kn(k, 1)?;
    validate_probability_f64(q)?;
    let qs = q_star(k)?;
    if q > qs + 1e-15 {
        return Err(Error::NoRealRoot(format!(
            "z = (z + {q})^{k} has no real root: q exceeds q* = {qs}"
        )));
    }
    let kf = k as f64;
    let h = |z: f64| (z + q).powi(k as i32) - z;
    if h(0.0) <= 0.0 {
        return Ok(0.0);
    }
    // h is convex with its minimum where k (z+q)^(k-1) = 1
    let z_min = (kf.powf(-1.0 / (kf - 1.0)) - q).max(0.0);
    if h(z_min) >= 0.0 {
        return Ok(z_min);
    }
    Ok(bisect(h, 0.0, z_min, ROOT_TOLERANCE))
}

/// `1/2 - q^2 + (1/2)(6q^2 + 2q - 1)/sqrt(1 - 4q)`, the closed form offered
/// for the limit of the k = 2 cut recursion. It does not agree with
/// [`cut_fixed_point_m2`] for `q > 0`; both are reported side by side.
pub fn cut_asymptote_closed_form_k2_m2(q: f64) -> Result<f64> {
    if !(0.0..0.25).contains(&q) {
        return Err(Error::Domain {
            op: "cut_asymptote_closed_form_k2_m2",
            detail: format!("requires 0 <= q < 1/4, got {q}"),
        });
    }
    Ok(0.5 - q * q + 0.5 * (6.0 * q * q + 2.0 * q - 1.0) / (1.0 - 4.0 * q).sqrt())
}
