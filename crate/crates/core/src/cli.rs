//! Command-line front end. Every subcommand renders a deterministic artifact
//! as CSV or JSON, written to stdout or `--out`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::asymptotics::{asymptotic_table, mandelbrot_poly};
use crate::curve::{preset_specs, sample_specs, CurveSpec, Family};
use crate::error::{Error, Result};
use crate::percolation::{
    critical_values, cut_bound, cut_fixed_point_m2, path_bound, percolation_exact,
    percolation_infinite, q_star,
};
use crate::poly::{parse_rational, BivarPoly, ExactRational};
use crate::resolution::{
    betti_table, cut_gf_with, gf_to_numerator, path_gf_with, BettiTable, Budget, GeneratingFunction,
};
use crate::verify::{self, FaultInjection, Scope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "treeperc",
    version,
    about = "Betti tables and percolation bounds for k-ary tree ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Cap on the number of polynomial terms.
    #[arg(long, global = true, default_value_t = Budget::default().max_terms)]
    pub budget_terms: usize,

    /// Cap on the bit length of any coefficient.
    #[arg(long, global = true, default_value_t = Budget::default().max_coeff_bits)]
    pub budget_bits: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Ideal {
    Path,
    Cut,
}

impl Ideal {
    fn name(self) -> &'static str {
        match self {
            Ideal::Path => "path",
            Ideal::Cut => "cut",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Figure3,
    Figure4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyScope {
    Quick,
    Full,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TreeArgs {
    /// Branching number.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub k: u32,
    /// Depth.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Graded Betti table of S/I (quotient convention) with its printed layout.
    Betti {
        #[arg(long, value_enum)]
        ideal: Ideal,
        #[command(flatten)]
        tree: TreeArgs,
    },
    /// Hilbert numerator H (path) or H~ (cut) as a polynomial in x and t.
    Hilbert {
        #[arg(long, value_enum)]
        ideal: Ideal,
        #[command(flatten)]
        tree: TreeArgs,
        /// Keep only homological degrees up to m.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: Option<u32>,
    },
    /// Probability that the root reaches a leaf.
    Percolation {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        /// Depth; omit for the infinite tree.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: Option<u32>,
        /// Bond operating probability, "a/b" or decimal.
        #[arg(long)]
        p: String,
    },
    /// Truncated path bound on P(p) or cut bound on the failure probability at q.
    Bound {
        #[arg(long, value_enum)]
        ideal: Ideal,
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        /// Operating probability.
        #[arg(long, conflicts_with = "q", required_unless_present = "q")]
        p: Option<String>,
        /// Failure probability.
        #[arg(long)]
        q: Option<String>,
    },
    /// Sampled exact curve with lower and upper bounds, as plot-ready CSV.
    Curve {
        #[arg(long, value_enum, conflicts_with_all = ["ideal", "k", "n", "m"])]
        preset: Option<Preset>,
        #[arg(long, value_enum, required_unless_present = "preset")]
        ideal: Option<Ideal>,
        #[arg(long, required_unless_present = "preset", value_parser = clap::value_parser!(u32).range(2..))]
        k: Option<u32>,
        #[arg(long, required_unless_present = "preset", value_parser = clap::value_parser!(u32).range(1..))]
        n: Option<u32>,
        /// Two truncation depths of opposite parity, e.g. `--m 3,4`.
        #[arg(long, value_delimiter = ',', required_unless_present = "preset")]
        m: Vec<u32>,
        #[arg(long, default_value_t = 101)]
        samples: u32,
        /// Clip the bound columns to [0, 1].
        #[arg(long)]
        clamp: bool,
    },
    /// Critical values p_c and q*, with fixed points of z = (z + q)^k.
    Critical {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        /// Sample points for the fixed point; defaults to 0.05, 0.1, 0.15, 0.2.
        #[arg(long, value_delimiter = ',')]
        q: Vec<f64>,
    },
    /// Limiting Betti table of S/J_{2,n} as n grows.
    Asymptotic {
        /// Largest row offset j - i.
        #[arg(long, default_value_t = 14)]
        max_offset: u64,
    },
    /// Coefficients of z_n = z_{n-1}^2 + q, z_1 = q.
    Mandelbrot {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Run the verification suite and print a JSON report.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyScope::Quick)]
        scope: VerifyScope,
        /// Corrupt the base case of the path recursion to exercise the checks.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// A rendered artifact and the exit status it implies.
#[derive(Debug)]
pub struct Artifact {
    pub text: String,
    pub exit_code: i32,
}

impl Artifact {
    fn ok(text: String) -> Self {
        Artifact {
            text,
            exit_code: EXIT_OK,
        }
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Budget { .. } | Error::TooLarge { .. } => EXIT_BUDGET,
        Error::Invariant(_) | Error::NotDivisible { .. } => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

fn rational(s: &str) -> Result<ExactRational> {
    parse_rational(s)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn json_value(s: &str) -> Value {
    serde_json::from_str(s).expect("library JSON is well formed")
}

fn generating_function(
    ideal: Ideal,
    tree: TreeArgs,
    budget: &Budget,
    m: Option<u32>,
) -> Result<GeneratingFunction> {
    match ideal {
        Ideal::Path => path_gf_with(tree.k, tree.n, budget, m),
        Ideal::Cut => cut_gf_with(tree.k, tree.n, budget, m),
    }
}

fn betti(ideal: Ideal, tree: TreeArgs, budget: &Budget, format: Format) -> Result<String> {
    let table = betti_table(&generating_function(ideal, tree, budget, None)?)?;
    Ok(match format {
        Format::Csv => table.to_csv(),
        Format::Json => json_text(&betti_json(ideal, tree, &table)),
    })
}

fn betti_json(ideal: Ideal, tree: TreeArgs, table: &BettiTable) -> Value {
    let totals: Vec<String> = table.totals().iter().map(ToString::to_string).collect();
    json!({
        "ideal": ideal.name(),
        "k": tree.k,
        "n": tree.n,
        "convention": "quotient",
        "entries": json_value(&table.to_json()),
        "totals": totals,
        "layout": table.render_layout(),
    })
}

fn hilbert(
    ideal: Ideal,
    tree: TreeArgs,
    m: Option<u32>,
    budget: &Budget,
    format: Format,
) -> Result<String> {
    let g = generating_function(ideal, tree, budget, m)?;
    let h: BivarPoly = gf_to_numerator(&g).into_poly();
    let h = match m {
        Some(m) => h.truncate_x(m),
        None => h,
    };
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("x,t,c\n");
            for term in h.terms() {
                let _ = writeln!(out, "{},{},{}", term.x, term.t, term.coeff);
            }
            out
        }
        Format::Json => json_text(&json!({
            "ideal": ideal.name(),
            "k": tree.k,
            "n": tree.n,
            "m": m,
            "terms": json_value(&h.to_json()),
            "text": h.to_string(),
        })),
    })
}

fn percolation(k: u32, n: Option<u32>, p: &str, format: Format) -> Result<String> {
    let p_exact = rational(p)?;
    let (exact, value) = match n {
        Some(n) => {
            let v = percolation_exact(k, n, &p_exact)?;
            let f = v.to_f64().unwrap_or(f64::NAN);
            (Some(v.to_string()), f)
        }
        None => {
            let p = p_exact
                .to_f64()
                .ok_or_else(|| Error::invalid(format!("p = {p} is not representable")))?;
            (None, percolation_infinite(k, p)?)
        }
    };
    let depth = n.map_or("inf".to_string(), |n| n.to_string());
    Ok(match format {
        Format::Csv => format!(
            "k,n,p,exact,value\n{k},{depth},{p_exact},{},{value}\n",
            exact.as_deref().unwrap_or("")
        ),
        Format::Json => json_text(&json!({
            "k": k,
            "n": depth,
            "p": p_exact.to_string(),
            "exact": exact,
            "value": value,
        })),
    })
}

fn bound(
    ideal: Ideal,
    tree: TreeArgs,
    m: u32,
    p: Option<&str>,
    q: Option<&str>,
    format: Format,
) -> Result<String> {
    let one = ExactRational::one();
    // path bounds are stated in p, cut bounds in q = 1 - p
    let (p, q) = match (p, q) {
        (Some(p), _) => {
            let p = rational(p)?;
            let q = &one - &p;
            (p, q)
        }
        (None, Some(q)) => {
            let q = rational(q)?;
            (&one - &q, q)
        }
        (None, None) => return Err(Error::invalid("one of --p or --q is required")),
    };
    let result = match ideal {
        Ideal::Path => path_bound(tree.k, tree.n, m, &p)?,
        Ideal::Cut => cut_bound(tree.k, tree.n, m, &q)?,
    };
    let (var, at) = match ideal {
        Ideal::Path => ("p", &p),
        Ideal::Cut => ("q", &q),
    };
    Ok(match format {
        Format::Csv => format!(
            "ideal,k,n,m,{var},kind,value,value_f64\n{},{},{},{},{at},{},{},{}\n",
            ideal.name(),
            tree.k,
            tree.n,
            m,
            result.kind.as_str(),
            result.value,
            result.to_f64()
        ),
        Format::Json => json_text(&json!({
            "ideal": ideal.name(),
            "k": tree.k,
            "n": tree.n,
            "m": m,
            var: at.to_string(),
            "kind": result.kind.as_str(),
            "value": result.value.to_string(),
            "value_f64": result.to_f64(),
        })),
    })
}

#[allow(clippy::too_many_arguments)]
fn curve(
    preset: Option<Preset>,
    ideal: Option<Ideal>,
    k: Option<u32>,
    n: Option<u32>,
    m: &[u32],
    samples: u32,
    clamp: bool,
    budget: &Budget,
    format: Format,
) -> Result<String> {
    let specs = match preset {
        Some(Preset::Figure3) => preset_specs("figure3")?,
        Some(Preset::Figure4) => preset_specs("figure4")?,
        None => {
            let missing = || Error::invalid("a custom curve needs --ideal, --k, --n and --m");
            let family = match ideal.ok_or_else(missing)? {
                Ideal::Path => Family::Path,
                Ideal::Cut => Family::Cut,
            };
            let [m_a, m_b] = m else {
                return Err(Error::invalid(
                    "--m takes exactly two truncation depths, e.g. --m 3,4",
                ));
            };
            vec![CurveSpec::new(
                family,
                k.ok_or_else(missing)?,
                n.ok_or_else(missing)?,
                *m_a,
                *m_b,
            )?]
        }
    };
    let curve = sample_specs(&specs, samples, budget)?;
    Ok(match format {
        Format::Csv => curve.to_csv(clamp),
        Format::Json => {
            let rows: Vec<Value> = curve
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "p": r.p,
                        "exact": r.exact,
                        "lower": r.lower,
                        "upper": r.upper,
                        "lower_clamped": r.lower.clamp(0.0, 1.0),
                        "upper_clamped": r.upper.clamp(0.0, 1.0),
                        "k": r.k,
                        "n": r.n,
                        "m_lower": r.m_lower,
                        "m_upper": r.m_upper,
                    })
                })
                .collect();
            json_text(&Value::Array(rows))
        }
    })
}

fn critical(k: u32, samples: &[f64], format: Format) -> Result<String> {
    let values = critical_values(k)?;
    let threshold = q_star(k)?;
    let samples: Vec<f64> = if samples.is_empty() {
        vec![0.05, 0.1, 0.15, 0.2]
    } else {
        samples.to_vec()
    };
    let mut points = Vec::with_capacity(samples.len());
    for q in samples {
        // past q* the fixed point does not exist; report null
        let z = if q <= threshold {
            Some(cut_fixed_point_m2(k, q)?)
        } else {
            cut_fixed_point_m2(k, q).ok()
        };
        points.push((q, z));
    }
    let q_exact = values.q_star_exact.as_ref().map(ToString::to_string);
    Ok(match format {
        Format::Csv => {
            let mut out = format!(
                "k,p_c,q_star,q_star_exact\n{k},{},{},{}\nq,fixed_point\n",
                values.p_c,
                values.q_star,
                q_exact.as_deref().unwrap_or("")
            );
            for (q, z) in &points {
                let _ = writeln!(out, "{q},{}", z.map_or(String::new(), |z| z.to_string()));
            }
            out
        }
        Format::Json => json_text(&json!({
            "k": k,
            "p_c": values.p_c.to_string(),
            "q_star": values.q_star,
            "q_star_exact": q_exact,
            "fixed_points": points
                .iter()
                .map(|(q, z)| json!({"q": q, "z": z}))
                .collect::<Vec<_>>(),
        })),
    })
}

fn asymptotic(max_offset: u64, format: Format) -> Result<String> {
    let table = asymptotic_table(max_offset)?;
    Ok(match format {
        Format::Csv => crate::asymptotics::asymptotic_table_csv(max_offset)?,
        Format::Json => json_text(&json!({
            "n": "inf",
            "max_offset": max_offset,
            "entries": json_value(&table.to_json()),
            "layout": table.render_layout(),
        })),
    })
}

fn mandelbrot(n: u32, budget: &Budget, format: Format) -> Result<String> {
    let z = mandelbrot_poly(n, budget)?;
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("j,coefficient\n");
            for (j, c) in z.coefficients.iter().enumerate() {
                let _ = writeln!(out, "{j},{c}");
            }
            out
        }
        Format::Json => {
            let coefficients: Vec<String> =
                z.coefficients.iter().map(ToString::to_string).collect();
            json_text(&json!({ "n": n, "coefficients": coefficients }))
        }
    })
}

/// Runs a parsed command and returns its artifact.
pub fn execute(cli: &Cli) -> Result<Artifact> {
    let budget = Budget {
        max_terms: cli.budget_terms,
        max_coeff_bits: cli.budget_bits,
    };
    let format = cli.format;
    let text = match &cli.command {
        Command::Betti { ideal, tree } => betti(*ideal, *tree, &budget, format)?,
        Command::Hilbert { ideal, tree, m } => hilbert(*ideal, *tree, *m, &budget, format)?,
        Command::Percolation { k, n, p } => percolation(*k, *n, p, format)?,
        Command::Bound {
            ideal,
            tree,
            m,
            p,
            q,
        } => bound(*ideal, *tree, *m, p.as_deref(), q.as_deref(), format)?,
        Command::Curve {
            preset,
            ideal,
            k,
            n,
            m,
            samples,
            clamp,
        } => curve(
            *preset, *ideal, *k, *n, m, *samples, *clamp, &budget, format,
        )?,
        Command::Critical { k, q } => critical(*k, q, format)?,
        Command::Asymptotic { max_offset } => asymptotic(*max_offset, format)?,
        Command::Mandelbrot { n } => mandelbrot(*n, &budget, format)?,
        Command::Verify {
            scope,
            inject_fault,
        } => {
            let scope = match scope {
                VerifyScope::Quick => Scope::Quick,
                VerifyScope::Full => Scope::Full,
            };
            let faults = FaultInjection {
                corrupt_path_base: *inject_fault,
            };
            let report = verify::run(scope, faults, budget);
            return Ok(Artifact {
                text: report.to_json() + "\n",
                exit_code: if report.passed() {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                },
            });
        }
    };
    Ok(Artifact::ok(text))
}

/// Parses `args`, runs the command and writes the artifact; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let artifact = match execute(&cli) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("treeperc: {e}");
            if matches!(e, Error::Budget { .. }) {
                eprintln!(
                    "treeperc: raise --budget-terms or --budget-bits to allow this computation"
                );
            }
            return exit_code_for(&e);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &artifact.text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(artifact.text.as_bytes())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    };
    if let Err(msg) = written {
        eprintln!("treeperc: {msg}");
        return EXIT_USAGE;
    }
    artifact.exit_code
}
