//! Self-verification: cross-route identities, oracle comparisons and the
//! reference fixtures, collected into a JSON report.
//!
//! A check either passes, fails, or is `flagged`: the computation is sound
//! but disagrees with a reference value, and the disagreement is reported
//! rather than counted as a failure.

use std::fmt::Display;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::asymptotics::{
    asymptotic_table, mandelbrot_catalan_limit_check, mandelbrot_poly, stabilization_prefix_of,
};
use crate::error::Result;
use crate::fixtures;
use crate::oracle::{
    alexander_dual, cut_ideal, multigraded_betti_homology, path_ideal, reliability_exhaustive,
    taylor_numerator, DoubleBridge,
};
use crate::percolation::{
    closed_form_path_bound, cut_asymptote_closed_form_k2_m2, cut_bound_m2_recursive,
    cut_bound_m2_recursive_f64, cut_bound_polynomial, cut_fixed_point_m2, failure_polynomial,
    path_bound_polynomial, percolation_exact, percolation_infinite, percolation_recursive_f64,
    q_star, q_star_exact, CUT_M2_RECURSION_TRUNCATION,
};
use crate::poly::{parse_rational, BivarPoly, ExactRational, UniPoly};
use crate::resolution::{
    betti_table, cut_gf_with, gf_to_numerator, path_betti_recursive, path_gf_from_base,
    path_gf_with, quotient_numerator, tensor_product_betti, tensor_sum_betti, BettiTable, Budget,
    GeneratingFunction,
};
use crate::tree::TreeSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Quick,
    Full,
}

/// Deliberate corruption used to confirm that the checks can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FaultInjection {
    /// Replace `G_{2,1} = 2tx + t^2x^2` by `2tx + 2t^2x^2`.
    pub corrupt_path_base: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

struct Ctx {
    budget: Budget,
    faults: FaultInjection,
}

impl Ctx {
    fn path_gf(&self, k: u32, n: u32) -> Result<GeneratingFunction> {
        if self.faults.corrupt_path_base && k == 2 {
            let base = GeneratingFunction::new(BivarPoly::from_triples(&[(1, 1, 2), (2, 2, 2)]));
            return path_gf_from_base(k, n, &base, &self.budget, None);
        }
        path_gf_with(k, n, &self.budget, None)
    }

    fn cut_gf(&self, k: u32, n: u32) -> Result<GeneratingFunction> {
        cut_gf_with(k, n, &self.budget, None)
    }
}

fn outcome(
    name: &str,
    ok: bool,
    lhs: impl Display,
    rhs: impl Display,
    detail: impl Into<String>,
) -> CheckResult {
    CheckResult {
        check_name: name.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        detail: detail.into(),
    }
}

fn r(s: &str) -> ExactRational {
    parse_rational(s).expect("literal rational")
}

type Check = fn(&Ctx) -> Result<CheckResult>;

fn run_check(ctx: &Ctx, name: &str, check: Check) -> CheckResult {
    check(ctx).unwrap_or_else(|e| CheckResult {
        check_name: name.to_string(),
        status: Status::Fail,
        lhs: String::new(),
        rhs: String::new(),
        detail: format!("error: {e}"),
    })
}

fn golden(ctx: &Ctx, n: u32) -> Result<CheckResult> {
    let printed = fixtures::printed_cut_table(n).expect("fixture exists");
    let table = betti_table(&ctx.cut_gf(2, n)?)?;
    let mismatches = printed.mismatches(&table);
    Ok(outcome(
        &format!("golden_table_cut_k2_n{n}"),
        mismatches.is_empty(),
        format!("{} printed cells", printed.cell_count()),
        format!("{} mismatches", mismatches.len()),
        mismatches
            .into_iter()
            .take(5)
            .collect::<Vec<_>>()
            .join("; "),
    ))
}

fn check_golden_n2(ctx: &Ctx) -> Result<CheckResult> {
    golden(ctx, 2)
}

fn check_golden_n3(ctx: &Ctx) -> Result<CheckResult> {
    golden(ctx, 3)
}

fn check_golden_n4(ctx: &Ctx) -> Result<CheckResult> {
    golden(ctx, 4)
}

fn check_golden_n5(ctx: &Ctx) -> Result<CheckResult> {
    golden(ctx, 5)
}

fn numerator(ctx: &Ctx, n: u32, expected: BivarPoly) -> Result<CheckResult> {
    let h = gf_to_numerator(&ctx.cut_gf(2, n)?).into_poly();
    Ok(outcome(
        &format!("numerator_cut_k2_n{n}"),
        h == expected,
        &h,
        &expected,
        "recursion vs reference polynomial",
    ))
}

fn check_numerator_n2(ctx: &Ctx) -> Result<CheckResult> {
    numerator(ctx, 2, fixtures::cut_numerator_k2_n2())
}

fn check_numerator_n3(ctx: &Ctx) -> Result<CheckResult> {
    numerator(ctx, 3, fixtures::cut_numerator_k2_n3())
}

fn small_kn() -> impl Iterator<Item = (u32, u32)> {
    (2..=3).flat_map(|k| (1..=3).map(move |n| (k, n)))
}

fn check_path_totals(ctx: &Ctx) -> Result<CheckResult> {
    let mut bad = Vec::new();
    for (k, n) in small_kn() {
        let totals = betti_table(&ctx.path_gf(k, n)?)?.totals();
        let leaves = (k as u64).pow(n);
        let expected: Vec<BigUint> = (0..=leaves)
            .map(|i| crate::asymptotics::binomial(leaves, i))
            .collect();
        if totals != expected {
            bad.push(format!("k={k} n={n}"));
        }
    }
    Ok(outcome(
        "path_totals_binomial",
        bad.is_empty(),
        "sum_j beta_ij",
        "C(k^n, i)",
        bad.join(", "),
    ))
}

fn check_path_two_routes(ctx: &Ctx) -> Result<CheckResult> {
    let mut bad = Vec::new();
    for (k, n) in small_kn() {
        if betti_table(&ctx.path_gf(k, n)?)? != path_betti_recursive(k, n, &ctx.budget)? {
            bad.push(format!("k={k} n={n}"));
        }
    }
    Ok(outcome(
        "path_betti_two_routes",
        bad.is_empty(),
        "generating function",
        "explicit convolution",
        bad.join(", "),
    ))
}

fn check_duality(ctx: &Ctx) -> Result<CheckResult> {
    let mut bad = Vec::new();
    for (k, n) in small_kn() {
        let operating = gf_to_numerator(&ctx.path_gf(k, n)?).poly().eval_x1();
        let failing = failure_polynomial(k, n, &ctx.budget)?;
        let dual = UniPoly::from_small(&[(0, 1)]).sub(&failing.reflect());
        if operating != dual {
            bad.push(format!("k={k} n={n}"));
        }
    }
    Ok(outcome(
        "duality_identity",
        bad.is_empty(),
        "P(p)",
        "1 - P~(1-p)",
        bad.join(", "),
    ))
}

fn check_reliability(ctx: &Ctx) -> Result<CheckResult> {
    let mut bad = Vec::new();
    for (k, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let spec = TreeSpec::new(k, n)?;
        let poly = gf_to_numerator(&ctx.path_gf(k, n)?).poly().eval_x1();
        for p in ["1/3", "1/2", "2/3"] {
            let p = r(p);
            let brute = reliability_exhaustive(&spec, &p)?;
            let recursive = percolation_exact(k, n, &p)?;
            let series = poly.eval_rational(&p);
            if brute != recursive || brute != series {
                bad.push(format!("k={k} n={n} p={p}: {brute} {recursive} {series}"));
            }
        }
    }
    Ok(outcome(
        "reliability_oracle",
        bad.is_empty(),
        "exhaustive enumeration",
        "recursion and H(1,p)",
        bad.join("; "),
    ))
}

fn check_taylor_path(ctx: &Ctx) -> Result<CheckResult> {
    let mut bad = Vec::new();
    for (k, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let taylor = taylor_numerator(&path_ideal(&TreeSpec::new(k, n)?)?)?;
        if taylor != gf_to_numerator(&ctx.path_gf(k, n)?) {
            bad.push(format!("k={k} n={n}"));
        }
    }
    Ok(outcome(
        "taylor_minimal_path",
        bad.is_empty(),
        "Taylor numerator",
        "H_{k,n}",
        bad.join(", "),
    ))
}

fn check_taylor_cut(ctx: &Ctx) -> Result<CheckResult> {
    let mut bad = Vec::new();
    for (k, n) in [(2, 1), (2, 2), (3, 2)] {
        let taylor = taylor_numerator(&cut_ideal(&TreeSpec::new(k, n)?)?)?;
        let minimal = gf_to_numerator(&ctx.cut_gf(k, n)?);
        if taylor.poly().eval_x1() != minimal.poly().eval_x1() {
            bad.push(format!("k={k} n={n}"));
        }
    }
    Ok(outcome(
        "taylor_hilbert_invariance_cut",
        bad.is_empty(),
        "Taylor numerator at x=1",
        "H~_{k,n} at x=1",
        bad.join(", "),
    ))
}

fn check_dual_trees(_: &Ctx) -> Result<CheckResult> {
    let mut bad = Vec::new();
    for (k, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let spec = TreeSpec::new(k, n)?;
        let (paths, cuts) = (path_ideal(&spec)?, cut_ideal(&spec)?);
        if alexander_dual(&paths)? != cuts || alexander_dual(&cuts)? != paths {
            bad.push(format!("k={k} n={n}"));
        }
    }
    Ok(outcome(
        "alexander_duality_trees",
        bad.is_empty(),
        "dual(path ideal)",
        "cut ideal",
        bad.join(", "),
    ))
}

fn check_dual_double_bridge(_: &Ctx) -> Result<CheckResult> {
    let dual = alexander_dual(&DoubleBridge::path_ideal())?;
    let cuts = DoubleBridge::cut_ideal();
    Ok(outcome(
        "alexander_duality_double_bridge",
        dual == cuts,
        &dual,
        &cuts,
        "minimal transversals of the 1-5 paths vs the listed cuts",
    ))
}

fn check_closed_forms(ctx: &Ctx) -> Result<CheckResult> {
    let mut bad = Vec::new();
    let points = ["1/7", "2/9", "3/5", "5/8"];
    for k in 2..=3 {
        for n in 2..=4 {
            for m in 1..=3 {
                let poly = path_bound_polynomial(k, n, m, &ctx.budget)?;
                for p in points {
                    let p = r(p);
                    if closed_form_path_bound(k, n, m, &p)? != poly.eval_rational(&p) {
                        bad.push(format!("k={k} n={n} m={m} p={p}"));
                    }
                }
            }
        }
    }
    Ok(outcome(
        "closed_form_path_bounds",
        bad.is_empty(),
        "closed form",
        "truncated numerator",
        bad.join(", "),
    ))
}

fn check_cut_labeling(ctx: &Ctx) -> Result<CheckResult> {
    let mut bad = Vec::new();
    for (k, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2)] {
        let poly = cut_bound_polynomial(k, n, CUT_M2_RECURSION_TRUNCATION, &ctx.budget)?;
        for q in ["1/5", "1/3"] {
            let q = r(q);
            if cut_bound_m2_recursive(k, n, &q)? != poly.eval_rational(&q) {
                bad.push(format!("k={k} n={n} q={q}"));
            }
        }
    }
    Ok(outcome(
        "cut_recursion_truncation_degree",
        bad.is_empty(),
        "(C_{n-1} + q)^k",
        format!("truncation at x-degree {CUT_M2_RECURSION_TRUNCATION}"),
        bad.join(", "),
    ))
}

fn check_q_star(_: &Ctx) -> Result<CheckResult> {
    let exact = q_star_exact(2)?;
    let float = q_star(2)?;
    Ok(outcome(
        "q_star_k2",
        exact == Some(r("1/4")) && (float - 0.25).abs() < 1e-12,
        format!("{exact:?} / {float}"),
        "1/4",
        "exact and floating point",
    ))
}

fn check_fixed_point(_: &Ctx) -> Result<CheckResult> {
    let expected = (0.6 - 0.2f64.sqrt()) / 2.0;
    let root = cut_fixed_point_m2(2, 0.2)?;
    let iterate = cut_bound_m2_recursive_f64(2, 60, 0.2)?;
    Ok(outcome(
        "cut_fixed_point_q0.2",
        (root - expected).abs() < 1e-12 && (iterate - expected).abs() < 1e-9,
        format!("root {root}, C_60 {iterate}"),
        expected,
        "smallest root of z = (z + 0.2)^2",
    ))
}

fn check_divergence(_: &Ctx) -> Result<CheckResult> {
    let crossing = (1..=25)
        .map(|n| (n, cut_bound_m2_recursive_f64(2, n, 0.3)))
        .find(|(_, v)| v.as_ref().is_ok_and(|v| *v > 1e6));
    Ok(outcome(
        "cut_divergence_q0.3",
        crossing.is_some(),
        crossing.map_or("none".to_string(), |(n, _)| format!("n = {n}")),
        "some n <= 25",
        "first n with C_n(0.3) > 1e6",
    ))
}

fn check_infinite(_: &Ctx) -> Result<CheckResult> {
    let v = percolation_infinite(2, 0.75)?;
    let zeros = (2..=4).all(|k| {
        [0.0, 0.5 / k as f64, 1.0 / k as f64]
            .iter()
            .all(|&p| percolation_infinite(k, p).is_ok_and(|x| x == 0.0))
    });
    Ok(outcome(
        "percolation_infinite",
        (v - 8.0 / 9.0).abs() < 1e-10 && zeros,
        v,
        8.0 / 9.0,
        "k=2 at p=3/4; zero for p <= 1/k, k=2..4",
    ))
}

fn check_asymptotic_table(_: &Ctx) -> Result<CheckResult> {
    let printed = fixtures::printed_asymptotic_table();
    let mismatches = printed.mismatches(&asymptotic_table(14)?);
    Ok(outcome(
        "asymptotic_table_printed",
        mismatches.is_empty(),
        format!("{} printed cells", printed.cell_count()),
        format!("{} mismatches", mismatches.len()),
        mismatches.join("; "),
    ))
}

fn check_mandelbrot(ctx: &Ctx) -> Result<CheckResult> {
    let z4 = mandelbrot_poly(4, &ctx.budget)?;
    let got: Vec<String> = z4.coefficients[1..].iter().map(|c| c.to_string()).collect();
    let expected = "1,1,2,5,6,6,4,1";
    Ok(outcome(
        "mandelbrot_z4",
        got.join(",") == expected,
        got.join(","),
        expected,
        "coefficients of q^1..q^8",
    ))
}

fn check_mandelbrot_limit(_: &Ctx) -> Result<CheckResult> {
    let checks: Vec<_> = (1..=8)
        .map(|j| mandelbrot_catalan_limit_check(j, 12))
        .collect::<Result<_>>()?;
    let shifted = checks.iter().all(|c| c.stabilized_at.is_some());
    let printed = checks.iter().all(|c| c.matches_printed_alignment());
    Ok(CheckResult {
        check_name: "mandelbrot_catalan_limit".into(),
        status: if !shifted {
            Status::Fail
        } else if printed {
            Status::Pass
        } else {
            Status::Flagged
        },
        lhs: "lim M_{n,j}".into(),
        rhs: "c_{j-1}".into(),
        detail: format!(
            "limit equals c_(j-1) for j = 1..8, stabilizing at n = {:?}; the index c_j as printed does not hold",
            checks.iter().map(|c| c.stabilized_at.unwrap_or(0)).collect::<Vec<_>>()
        ),
    })
}

fn check_stabilization(ctx: &Ctx) -> Result<CheckResult> {
    let t4 = betti_table(&ctx.cut_gf(2, 4)?)?;
    let t5 = betti_table(&ctx.cut_gf(2, 5)?)?;
    let s4 = stabilization_prefix_of(4, &t4)?;
    let s5 = stabilization_prefix_of(5, &t5)?;
    let monotone = s4
        .prefix
        .iter()
        .all(|&(i, b)| s5.get(i).is_some_and(|b5| b5 >= b));
    let row = |t: &BettiTable| -> String {
        (1..=5)
            .map(|i| t.get(i, i + 5).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let (r4, r5) = (row(&t4), row(&t5));
    Ok(outcome(
        "stabilization_n4_n5",
        monotone && r4 == "26,104,156,104,26" && r5 == "42,168,252,168,42",
        format!("row 5: n=4 {r4}; n=5 {r5}"),
        "26,104,156,104,26; 42,168,252,168,42",
        "offset row 5 and nondecreasing stabilization prefixes",
    ))
}

fn check_tensor_sum(_: &Ctx) -> Result<CheckResult> {
    let (ti, tj) = fixtures::tensor_example_tables();
    let sum = tensor_sum_betti(&[ti, tj]);
    let got = quotient_numerator(&sum);
    let expected = fixtures::tensor_example_sum_numerator();
    Ok(outcome(
        "tensor_sum_example",
        got == expected,
        &got,
        &expected,
        "S/(I+J)",
    ))
}

fn check_tensor_product(_: &Ctx) -> Result<CheckResult> {
    let (ti, tj) = fixtures::tensor_example_tables();
    let product = tensor_product_betti(&[ti, tj])?;
    let got = quotient_numerator(&product);
    let expected = fixtures::tensor_example_product_numerator();
    Ok(outcome(
        "tensor_product_example",
        got == expected,
        &got,
        &expected,
        "S/(IJ)",
    ))
}

fn check_tensor_inputs(_: &Ctx) -> Result<CheckResult> {
    let (i, j) = fixtures::tensor_example_ideals();
    let (ti, tj) = fixtures::tensor_example_tables();
    let (hi, hj) = (
        multigraded_betti_homology(&i)?,
        multigraded_betti_homology(&j)?,
    );
    Ok(outcome(
        "tensor_example_inputs",
        hi == ti && hj == tj,
        "homology of I and J",
        "reference tables",
        "",
    ))
}

fn check_asymptote_discrepancy(_: &Ctx) -> Result<CheckResult> {
    let q = 0.1;
    let closed = cut_asymptote_closed_form_k2_m2(q)?;
    let fixed = cut_fixed_point_m2(2, q)?;
    let at_zero =
        cut_asymptote_closed_form_k2_m2(0.0)?.abs() < 1e-15 && cut_fixed_point_m2(2, 0.0)? == 0.0;
    Ok(CheckResult {
        check_name: "cut_asymptote_closed_form_vs_fixed_point".into(),
        status: if !at_zero {
            Status::Fail
        } else if (closed - fixed).abs() < 1e-9 {
            Status::Pass
        } else {
            Status::Flagged
        },
        lhs: format!("{closed:.10}"),
        rhs: format!("{fixed:.10}"),
        detail: format!(
            "open issue: at q = {q} the closed form gives {closed:.10} and the fixed point of z = (z+q)^2 gives {fixed:.10}; \
             the reference approximations 0.0123310 and 0.0123457 reproduce neither exactly; both agree at q = 0"
        ),
    })
}

fn check_homology(ctx: &Ctx) -> Result<CheckResult> {
    let mut bad = Vec::new();
    for (k, n) in [(2, 2), (3, 2), (2, 3)] {
        let homology = multigraded_betti_homology(&cut_ideal(&TreeSpec::new(k, n)?)?)?;
        if homology != betti_table(&ctx.cut_gf(k, n)?)? {
            bad.push(format!("k={k} n={n}"));
        }
    }
    Ok(outcome(
        "homology_oracle_cut",
        bad.is_empty(),
        "upper Koszul homology",
        "cut recursion",
        bad.join(", "),
    ))
}

fn sandwich_grid() -> Vec<ExactRational> {
    (1..=99)
        .map(|i| ExactRational::new(i.into(), 100.into()))
        .collect()
}

fn check_sandwich(ctx: &Ctx) -> Result<CheckResult> {
    let grid = sandwich_grid();
    let mut violations = 0usize;
    let mut first = String::new();
    for n in 1..=4 {
        let operating = gf_to_numerator(&ctx.path_gf(2, n)?).poly().eval_x1();
        let failing = failure_polynomial(2, n, &ctx.budget)?;
        for m in 1..=6 {
            let path = path_bound_polynomial(2, n, m, &ctx.budget)?;
            let cut = cut_bound_polynomial(2, n, m, &ctx.budget)?;
            for x in &grid {
                let checks = [
                    (path.eval_rational(x), operating.eval_rational(x)),
                    (cut.eval_rational(x), failing.eval_rational(x)),
                ];
                for (bound, exact) in checks {
                    let ok = if m % 2 == 1 {
                        bound >= exact
                    } else {
                        bound <= exact
                    };
                    if !ok {
                        violations += 1;
                        if first.is_empty() {
                            first = format!("n={n} m={m} at {x}");
                        }
                    }
                }
            }
        }
    }
    Ok(outcome(
        "sandwich_bounds",
        violations == 0,
        format!("{violations} violations"),
        "0 violations",
        first,
    ))
}

fn check_convergence(_: &Ctx) -> Result<CheckResult> {
    let mut status = Status::Pass;
    let mut notes = Vec::new();
    for p in [0.6, 0.75, 0.9] {
        let finite = percolation_recursive_f64(2, 30, p)?;
        let infinite = percolation_infinite(2, p)?;
        let gap = (finite - infinite).abs();
        // linear convergence with ratio f'(u*) = 2p(1 - p + p u*)
        let u = 1.0 - infinite;
        let rate = 2.0 * p * (1.0 - p + p * u);
        if gap >= 1e-6 {
            let predicted = rate.powi(30);
            if gap <= 10.0 * predicted {
                status = status.max_severity(Status::Flagged);
                notes.push(format!(
                    "p={p}: gap {gap:.3e} exceeds 1e-6 but matches the convergence rate {rate:.3} (rate^30 = {predicted:.3e})"
                ));
            } else {
                status = Status::Fail;
                notes.push(format!("p={p}: gap {gap:.3e}"));
            }
        } else {
            notes.push(format!("p={p}: gap {gap:.3e}"));
        }
    }
    Ok(CheckResult {
        check_name: "finite_depth_convergence".into(),
        status,
        lhs: "|P_{2,30}(p) - P_{2,inf}(p)|".into(),
        rhs: "< 1e-6".into(),
        detail: notes.join("; "),
    })
}

impl Status {
    fn max_severity(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Flagged, _) | (_, Status::Flagged) => Status::Flagged,
            _ => Status::Pass,
        }
    }
}

fn check_exact_vs_float(_: &Ctx) -> Result<CheckResult> {
    let p = r("3/5");
    let exact = percolation_exact(2, 6, &p)?.to_f64().unwrap_or(f64::NAN);
    let float = percolation_recursive_f64(2, 6, 0.6)?;
    Ok(outcome(
        "exact_vs_float_recursion",
        (exact - float).abs() < 1e-12,
        exact,
        float,
        "P_{2,6}(3/5)",
    ))
}

const QUICK: &[(&str, Check)] = &[
    ("golden_table_cut_k2_n2", check_golden_n2),
    ("golden_table_cut_k2_n3", check_golden_n3),
    ("numerator_cut_k2_n2", check_numerator_n2),
    ("numerator_cut_k2_n3", check_numerator_n3),
    ("path_totals_binomial", check_path_totals),
    ("path_betti_two_routes", check_path_two_routes),
    ("duality_identity", check_duality),
    ("reliability_oracle", check_reliability),
    ("taylor_minimal_path", check_taylor_path),
    ("taylor_hilbert_invariance_cut", check_taylor_cut),
    ("alexander_duality_trees", check_dual_trees),
    ("alexander_duality_double_bridge", check_dual_double_bridge),
    ("closed_form_path_bounds", check_closed_forms),
    ("cut_recursion_truncation_degree", check_cut_labeling),
    ("q_star_k2", check_q_star),
    ("cut_fixed_point_q0.2", check_fixed_point),
    ("cut_divergence_q0.3", check_divergence),
    ("percolation_infinite", check_infinite),
    ("exact_vs_float_recursion", check_exact_vs_float),
    ("asymptotic_table_printed", check_asymptotic_table),
    ("mandelbrot_z4", check_mandelbrot),
    ("mandelbrot_catalan_limit", check_mandelbrot_limit),
    ("stabilization_n4_n5", check_stabilization),
    ("tensor_sum_example", check_tensor_sum),
    ("tensor_product_example", check_tensor_product),
    (
        "cut_asymptote_closed_form_vs_fixed_point",
        check_asymptote_discrepancy,
    ),
];

const FULL_ONLY: &[(&str, Check)] = &[
    ("golden_table_cut_k2_n4", check_golden_n4),
    ("golden_table_cut_k2_n5", check_golden_n5),
    ("tensor_example_inputs", check_tensor_inputs),
    ("homology_oracle_cut", check_homology),
    ("sandwich_bounds", check_sandwich),
    ("finite_depth_convergence", check_convergence),
];

pub fn run(scope: Scope, faults: FaultInjection, budget: Budget) -> Report {
    let ctx = Ctx { budget, faults };
    let mut checks: Vec<CheckResult> = QUICK
        .iter()
        .map(|(name, check)| run_check(&ctx, name, *check))
        .collect();
    if scope == Scope::Full {
        checks.extend(
            FULL_ONLY
                .iter()
                .map(|(name, check)| run_check(&ctx, name, *check)),
        );
    }
    Report { checks }
}
