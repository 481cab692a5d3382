//! Command-line front end: parses diagram and curve files, dispatches to the
//! library, and emits deterministic JSON (12 significant digits on all
//! numeric output).
//!
//! Exit codes: 0 success, 2 input validation error (machine-readable JSON on
//! stderr), 3 I/O failure.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use skeincalc::bracket::{
    ambient_normalized_capped, homfly_poly, kauffman_bracket_capped,
};
use skeincalc::coupling::{
    gln_matrices, gln_resolution_coeffs, homfly_params, su2_coeffs, su2_resolution_coeffs,
    Coupling,
};
use skeincalc::diagram::pd::parse_pd;
use skeincalc::expectation::{
    gauge_expectation_capped, state_count, u1_expectation, GaugeSpec, Group,
    DEFAULT_MAX_CROSSINGS,
};
use skeincalc::goldman::{goldman_gl, goldman_su2, torus_bracket, CurveSystem, TorusCurve};
use skeincalc::verify::{run_suite, Suite};
use skeincalc::LinkDiagram;

#[derive(Parser)]
#[command(name = "skeincalc", version, about = "Link-diagram invariants from skein calculus")]
struct Cli {
    /// Human-readable output instead of compact JSON
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a diagram file, reporting its combinatorics
    Parse(DiagramInput),
    /// Kauffman bracket polynomial of a diagram
    Bracket {
        #[command(flatten)]
        input: DiagramInput,
        /// Apply the writhe correction (-q^3)^(-w)
        #[arg(long)]
        normalized: bool,
    },
    /// Writhe-corrected bracket (ambient isotopy invariant)
    Jones(DiagramInput),
    /// Gauge state-sum expectation of a diagram
    Expect {
        #[command(flatten)]
        input: DiagramInput,
        /// Gauge group: u1, su2, gl, un
        #[arg(long)]
        group: String,
        /// Rank for gl/un
        #[arg(long)]
        n: Option<u32>,
        /// Coupling lambda as RE or RE,IM
        #[arg(long, conflicts_with = "beta")]
        lambda: Option<String>,
        /// Coupling beta = 1/(2 lambda) as RE or RE,IM
        #[arg(long)]
        beta: Option<String>,
    },
    /// Writhe and linking matrix
    Linking(DiagramInput),
    /// HOMFLY polynomial, or its numeric value at coupling-derived (q_n, z_n)
    Homfly {
        #[command(flatten)]
        input: DiagramInput,
        /// Rank n for numeric evaluation
        #[arg(long, requires = "beta")]
        n: Option<u32>,
        /// Coupling beta for numeric evaluation
        #[arg(long, requires = "n")]
        beta: Option<String>,
    },
    /// All coupling-derived scalars as JSON
    Coeffs {
        /// Coupling beta as RE or RE,IM
        #[arg(long)]
        beta: String,
        /// Also emit rank-n data
        #[arg(long)]
        n: Option<u32>,
    },
    /// Goldman bracket of curves (file) or torus classes
    Goldman {
        /// JSON curve-system file
        #[arg(long, conflicts_with = "torus", required_unless_present = "torus")]
        curves: Option<String>,
        /// SU(2) form (default is the GL form)
        #[arg(long)]
        su2: bool,
        /// GL form (the default; flag accepted for symmetry)
        #[arg(long)]
        gl: bool,
        /// Two torus classes "P,Q" "R,S"
        #[arg(long, num_args = 2, value_names = ["P,Q", "R,S"])]
        torus: Option<Vec<String>>,
    },
    /// Run a named verification suite
    Verify {
        /// One of: reidemeister, skein, cross-group, goldman
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Args)]
struct DiagramInput {
    /// Diagram file: PD code text or native JSON
    #[arg(long)]
    pd: String,
}

enum CliError {
    Input(String),
    Io(String),
}

impl CliError {
    fn report(&self) -> (Value, u8) {
        match self {
            CliError::Input(m) => (json!({"kind": "input", "error": m}), 2),
            CliError::Io(m) => (json!({"kind": "io", "error": m}), 3),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(value) => {
            if cli.pretty {
                println!("{}", render_pretty(&value));
            } else {
                println!("{value}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (value, code) = e.report();
            eprintln!("{value}");
            ExitCode::from(code)
        }
    }
}

/// Round to 12 significant digits for stable, documented numeric output.
fn sig12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x == 0.0 {
        return 0.0;
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

fn complex_json(z: Complex64) -> Value {
    json!([sig12(z.re), sig12(z.im)])
}

fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let mut parts = text.splitn(2, ',');
    let re: f64 = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("bad number in {text:?}")))?;
    let im: f64 = match parts.next() {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("bad number in {text:?}")))?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

fn load_diagram(input: &DiagramInput) -> Result<LinkDiagram, CliError> {
    let text = read_file(&input.pd)?;
    let trimmed = text.trim_start();
    let result = if trimmed.starts_with('{') {
        LinkDiagram::from_json(&text)
    } else {
        parse_pd(&text)
    };
    result.map_err(|e| CliError::Input(e.to_string()))
}

fn crossing_cap() -> usize {
    std::env::var("SKEIN_MAX_CROSSINGS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_CROSSINGS)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn coupling_from(
    lambda: &Option<String>,
    beta: &Option<String>,
) -> Result<Coupling, CliError> {
    match (lambda, beta) {
        (Some(l), None) => {
            let lam = parse_complex(l)?;
            Coupling::from_lambda(lam).map_err(|e| CliError::Input(e.to_string()))
        }
        (None, Some(b)) => Ok(Coupling::from_beta(parse_complex(b)?)),
        (None, None) => Err(CliError::Input("need --lambda or --beta".into())),
        (Some(_), Some(_)) => Err(CliError::Input("--lambda conflicts with --beta".into())),
    }
}

fn run(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Parse(input) => {
            let d = load_diagram(input)?;
            Ok(json!({
                "crossings": d.crossing_count(),
                "arcs": d.arc_count(),
                "unknots": d.unknot_count(),
                "components": d.component_count(),
                "writhe": d.writhe(),
                "valid": d.validate().is_empty(),
                "diagram": to_value(&d),
            }))
        }
        Command::Bracket { input, normalized } => {
            let d = load_diagram(input)?;
            let poly = if *normalized {
                ambient_normalized_capped(&d, crossing_cap())
            } else {
                kauffman_bracket_capped(&d, crossing_cap())
            }
            .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(to_value(&poly))
        }
        Command::Jones(input) => {
            let d = load_diagram(input)?;
            let poly = ambient_normalized_capped(&d, crossing_cap())
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(to_value(&poly))
        }
        Command::Expect { input, group, n, lambda, beta } => {
            let d = load_diagram(input)?;
            let coupling = coupling_from(lambda, beta)?;
            let group = match (group.as_str(), n) {
                ("u1", _) => Group::U1,
                ("su2", _) => Group::Su2,
                ("gl", Some(n)) => Group::Gln(*n),
                ("un", Some(n)) => Group::Un(*n),
                ("gl" | "un", None) => {
                    return Err(CliError::Input("--group gl/un requires --n".into()))
                }
                (g, _) => return Err(CliError::Input(format!("unknown group {g:?}"))),
            };
            // the abelian value has a closed form; every other group runs
            // the state sum
            let value = if group == Group::U1 {
                u1_expectation(&d, coupling)
            } else {
                let spec = GaugeSpec::new(group, coupling)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                gauge_expectation_capped(&d, &spec, crossing_cap())
                    .map_err(|e| CliError::Input(e.to_string()))?
            };
            Ok(json!({
                "group": group_name(group),
                "beta": complex_json(coupling.beta()),
                "value_re": sig12(value.re),
                "value_im": sig12(value.im),
                "writhe": d.writhe(),
                "components": d.component_count(),
                "states": state_count(&d),
            }))
        }
        Command::Linking(input) => {
            let d = load_diagram(input)?;
            Ok(json!({
                "components": d.component_count(),
                "writhe": d.writhe(),
                "matrix": d.linking_matrix(),
            }))
        }
        Command::Homfly { input, n, beta } => {
            let d = load_diagram(input)?;
            let poly = homfly_poly(&d).map_err(|e| CliError::Input(e.to_string()))?;
            match (n, beta) {
                (Some(n), Some(beta)) => {
                    let coupling = Coupling::from_beta(parse_complex(beta)?);
                    let (qn, zn) =
                        homfly_params(*n, coupling).map_err(|e| CliError::Input(e.to_string()))?;
                    let value = poly.eval(qn, zn).map_err(|e| CliError::Input(e.to_string()))?;
                    Ok(json!({
                        "n": n,
                        "q_n": complex_json(qn),
                        "z_n": complex_json(zn),
                        "value_re": sig12(value.re),
                        "value_im": sig12(value.im),
                    }))
                }
                _ => Ok(to_value(&poly)),
            }
        }
        Command::Coeffs { beta, n } => {
            let coupling = Coupling::from_beta(parse_complex(beta)?);
            let s = su2_coeffs(coupling);
            let (fp, sp) = su2_resolution_coeffs(coupling, 1);
            let (fm, sm) = su2_resolution_coeffs(coupling, -1);
            let mut out = BTreeMap::from([
                ("beta".to_string(), complex_json(coupling.beta())),
                (
                    "lambda".to_string(),
                    coupling.lambda().map(complex_json).unwrap_or(Value::Null),
                ),
                ("a".to_string(), complex_json(s.a)),
                ("b".to_string(), complex_json(s.b)),
                ("sqrt_ab".to_string(), complex_json(s.sqrt_ab)),
                ("q".to_string(), complex_json(s.q)),
                ("delta".to_string(), complex_json(s.delta)),
                ("su2_flat_pos".to_string(), complex_json(fp)),
                ("su2_smooth_pos".to_string(), complex_json(sp)),
                ("su2_flat_neg".to_string(), complex_json(fm)),
                ("su2_smooth_neg".to_string(), complex_json(sm)),
            ]);
            if let Some(n) = n {
                let (_, _, delta_n) =
                    gln_matrices(*n).map_err(|e| CliError::Input(e.to_string()))?;
                let (gfp, gsp) = gln_resolution_coeffs(*n, coupling, 1)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                let (gfm, gsm) = gln_resolution_coeffs(*n, coupling, -1)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                out.insert("n".to_string(), json!(n));
                out.insert("delta_n".to_string(), json!(sig12(delta_n)));
                out.insert(
                    "framing".to_string(),
                    complex_json(skeincalc::coupling::framing_factor(*n, coupling)),
                );
                out.insert("gln_flat_pos".to_string(), complex_json(gfp));
                out.insert("gln_smooth_pos".to_string(), complex_json(gsp));
                out.insert("gln_flat_neg".to_string(), complex_json(gfm));
                out.insert("gln_smooth_neg".to_string(), complex_json(gsm));
                match homfly_params(*n, coupling) {
                    Ok((qn, zn)) => {
                        out.insert("q_n".to_string(), complex_json(qn));
                        out.insert("z_n".to_string(), complex_json(zn));
                    }
                    Err(e) => {
                        out.insert("homfly_params_error".to_string(), json!(e.to_string()));
                    }
                }
            }
            Ok(to_value(&out))
        }
        Command::Goldman { curves, su2, gl, torus } => {
            if *su2 && *gl {
                return Err(CliError::Input("choose one of --su2 / --gl".into()));
            }
            if let Some(specs) = torus {
                let parse_class = |s: &str| -> Result<TorusCurve, CliError> {
                    let nums: Vec<i64> = s
                        .split(',')
                        .map(|t| t.trim().parse())
                        .collect::<Result<_, _>>()
                        .map_err(|_| CliError::Input(format!("bad torus class {s:?}")))?;
                    if nums.len() != 2 {
                        return Err(CliError::Input(format!("bad torus class {s:?}")));
                    }
                    TorusCurve::new(nums[0], nums[1]).map_err(|e| CliError::Input(e.to_string()))
                };
                let c1 = parse_class(&specs[0])?;
                let c2 = parse_class(&specs[1])?;
                let sum = torus_bracket(c1, c2).map_err(|e| CliError::Input(e.to_string()))?;
                return Ok(json!({
                    "variant": "torus",
                    "curves": [[c1.p, c1.q], [c2.p, c2.q]],
                    "bracket": to_value(&sum),
                }));
            }
            let path = curves.as_ref().expect("clap enforces curves or torus");
            let text = read_file(path)?;
            let cs: CurveSystem = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("bad curve system: {e}")))?;
            let (variant, sum) = if *su2 {
                ("su2", goldman_su2(&cs))
            } else {
                ("gl", goldman_gl(&cs))
            };
            let sum = sum.map_err(|e| CliError::Input(e.to_string()))?;
            Ok(json!({
                "variant": variant,
                "bracket": to_value(&sum),
            }))
        }
        Command::Verify { suite, seed, count } => {
            let suite = Suite::parse(suite)
                .ok_or_else(|| CliError::Input(format!("unknown suite {suite:?}")))?;
            let report = run_suite(suite, *seed, *count);
            if report.passed {
                Ok(to_value(&report))
            } else {
                // report still goes to stdout; the exit code flags failure
                println!("{}", to_value(&report));
                Err(CliError::Input(format!(
                    "{} of {} checks failed",
                    report.failures,
                    report.checks.len()
                )))
            }
        }
    }
}

fn group_name(g: Group) -> String {
    match g {
        Group::U1 => "u1".into(),
        Group::Su2 => "su2".into(),
        Group::Gln(n) => format!("gl({n})"),
        Group::Un(n) => format!("u({n})"),
    }
}

/// Aligned key/value rendering for flat objects, indented JSON otherwise.
fn render_pretty(v: &Value) -> String {
    if let Value::Object(map) = v {
        if map.values().all(|v| !matches!(v, Value::Object(_) | Value::Array(_))) {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            return map
                .iter()
                .map(|(k, v)| format!("{k:width$}  {v}"))
                .collect::<Vec<_>>()
                .join("\n");
        }
    }
    serde_json::to_string_pretty(v).expect("serializable")
}
