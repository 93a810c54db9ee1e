use std::fmt::Write as _;

use anyhow::anyhow;
use bowen::coloring::{
    color_complete_graph, doubling_coloring, emit_certificate, find_mono_clique,
    verify_certificate, CertificateError, ColoringError, EdgeColoring, RamseyCertificate,
};
use bowen::dynamics::DynamicsError;
use bowen::separated::{
    build_separation_graph, greedy_max_separated, grid, is_separated, max_separated_exact,
    SeparatedError, SeparatedSetReport,
};
use bowen::verify::{
    capacity_claim, min_expansion_p, shadow_many, transfer_separated, verify_ball_measure,
    verify_capacity_circle, verify_component_thirds, verify_dyadic_grid,
    verify_translation_equivariance, Verdict, VerificationReport, VerifyError,
};
use bowen::{bowen_ball, format_rational, ArcUnion, CirclePoint, Rational};
use serde::Serialize;

use crate::io::{
    load_map, load_points, parse_json, read_json, save_report, target_path, write_atomic,
};
use crate::{CertifyCmd, Cli, ColorCmd, Command, Format, SeparatedCmd, VerifyCmd};

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

type Res<T> = Result<T, Failure>;

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: USAGE,
        error: error.into(),
    }
}

trait ExitClass {
    fn exit_code(&self) -> u8;
}

impl ExitClass for DynamicsError {
    fn exit_code(&self) -> u8 {
        match self {
            DynamicsError::UnsupportedDegenerate { .. } | DynamicsError::DigitLimit(_) => INTERNAL,
            _ => USAGE,
        }
    }
}

impl ExitClass for SeparatedError {
    fn exit_code(&self) -> u8 {
        match self {
            SeparatedError::BudgetExceeded { .. } | SeparatedError::UnsupportedParameters(_) => {
                INTERNAL
            }
            SeparatedError::Dynamics(d) => d.exit_code(),
            _ => USAGE,
        }
    }
}

impl ExitClass for ColoringError {
    fn exit_code(&self) -> u8 {
        match self {
            ColoringError::NotSeparatedPair(..) => NEGATIVE,
            ColoringError::Separated(e) => e.exit_code(),
            _ => USAGE,
        }
    }
}

impl ExitClass for CertificateError {
    fn exit_code(&self) -> u8 {
        match self {
            CertificateError::CapacityMismatch { .. } => USAGE,
            CertificateError::Coloring(e) => e.exit_code(),
            _ => NEGATIVE,
        }
    }
}

impl ExitClass for VerifyError {
    fn exit_code(&self) -> u8 {
        match self {
            VerifyError::InvalidParameters(_) => USAGE,
            VerifyError::Dynamics(d) => d.exit_code(),
            VerifyError::Separated(s) => s.exit_code(),
            _ => NEGATIVE,
        }
    }
}

fn fail<E: ExitClass + std::error::Error + Send + Sync + 'static>(e: E) -> Failure {
    Failure {
        code: e.exit_code(),
        error: e.into(),
    }
}

/// What a command produced: the JSON report, a text summary and the exit
/// code the outcome calls for.
struct Output {
    name: &'static str,
    command: String,
    json: String,
    text: String,
    code: u8,
}

impl Output {
    fn new<T: Serialize>(
        name: &'static str,
        command: &str,
        value: &T,
        text: String,
        code: u8,
    ) -> Self {
        Output {
            name,
            command: command.to_string(),
            json: serde_json::to_string_pretty(value).expect("serialisable"),
            text,
            code,
        }
    }
}

pub fn run(cli: &Cli) -> Res<u8> {
    let out = dispatch(&cli.command)?;
    if let Some(path) = target_path(cli.out.as_deref(), out.name) {
        save_report(&path, &out.json, &out.command, cli.force).map_err(usage)?;
    }
    match cli.format {
        Format::Json => println!("{}", out.json),
        Format::Text => print!("{}", out.text),
    }
    Ok(out.code)
}

fn q(x: &Rational) -> String {
    format_rational(x)
}

fn dispatch(command: &Command) -> Res<Output> {
    match command {
        Command::BowenBall(a) => {
            let map = load_map(&a.map).map_err(usage)?;
            let ball = bowen_ball(&map, &a.x, a.n, &a.eps).map_err(fail)?;
            #[derive(Serialize)]
            struct BallOut<'a> {
                x: &'a CirclePoint,
                n: usize,
                #[serde(with = "bowen::rational::serde_str")]
                eps: Rational,
                ball: &'a ArcUnion,
                #[serde(with = "bowen::rational::serde_str")]
                measure: Rational,
            }
            let measure = ball.measure();
            let text = format!(
                "B_{}({}, {}) = {}\ncomponents: {}\nmeasure: {}\n",
                a.n,
                a.x,
                q(&a.eps),
                ball,
                ball.components().len(),
                q(&measure)
            );
            let value = BallOut {
                x: &a.x,
                n: a.n,
                eps: a.eps.clone(),
                ball: &ball,
                measure,
            };
            Ok(Output::new("bowen-ball", "bowen-ball", &value, text, OK))
        }
        Command::Separated(SeparatedCmd::Search(a)) => {
            let map = load_map(&a.map).map_err(usage)?;
            let cands = grid(a.grid);
            let result = if a.exact {
                let graph = build_separation_graph(&map, &cands, a.n, &a.eps).map_err(fail)?;
                max_separated_exact(&graph, a.budget)
            } else {
                greedy_max_separated(&map, &cands, a.n, &a.eps)
            };
            match result {
                Ok(r) => Ok(Output::new(
                    "separated",
                    "separated search",
                    &r,
                    set_text(&r),
                    OK,
                )),
                Err(SeparatedError::BudgetExceeded { best, nodes }) => {
                    let text = format!(
                        "budget of {} nodes exhausted after {nodes}; best set so far:\n{}",
                        a.budget,
                        set_text(&best)
                    );
                    Ok(Output::new(
                        "separated",
                        "separated search",
                        &*best,
                        text,
                        INTERNAL,
                    ))
                }
                Err(e) => Err(fail(e)),
            }
        }
        Command::Separated(SeparatedCmd::Check(a)) => {
            let map = load_map(&a.map).map_err(usage)?;
            let points = load_points(&a.set).map_err(usage)?;
            let r = is_separated(&map, &points, a.n, &a.eps).map_err(fail)?;
            let code = if r.certified { OK } else { NEGATIVE };
            Ok(Output::new(
                "separated",
                "separated check",
                &r,
                set_text(&r),
                code,
            ))
        }
        Command::Color(ColorCmd::Prop12 { r }) => {
            if !(1..=16).contains(r) {
                return Err(usage(anyhow!("--r must be between 1 and 16")));
            }
            let c = doubling_coloring(*r).map_err(fail)?;
            Ok(Output::new(
                "coloring",
                "color prop12",
                &c,
                coloring_text(&c),
                OK,
            ))
        }
        Command::Color(ColorCmd::Dyn(a)) => {
            let map = load_map(&a.map).map_err(usage)?;
            let points = load_points(&a.set).map_err(usage)?;
            let c = color_complete_graph(&map, &points, a.n, &a.eps).map_err(fail)?;
            Ok(Output::new(
                "coloring",
                "color dyn",
                &c,
                coloring_text(&c),
                OK,
            ))
        }
        Command::Clique(a) => {
            let c: EdgeColoring = read_json(&a.coloring).map_err(usage)?;
            if let (Some(path), Some(color)) = (&a.dimacs, a.dimacs_color) {
                if color as usize >= c.num_colors() {
                    return Err(usage(anyhow!(
                        "color {color} is not below {}",
                        c.num_colors()
                    )));
                }
                write_atomic(path, c.dimacs_color_class(color).as_bytes(), true).map_err(usage)?;
            }
            let hit = find_mono_clique(&c, a.k).map_err(fail)?;
            #[derive(Serialize)]
            struct CliqueOut<'a> {
                k: usize,
                clique: &'a Option<bowen::coloring::MonoClique>,
            }
            let (text, code) = match &hit {
                None => ("none\n".to_string(), OK),
                Some(h) => (format!("color {}: {:?}\n", h.color, h.vertices), NEGATIVE),
            };
            Ok(Output::new(
                "clique",
                "clique",
                &CliqueOut {
                    k: a.k,
                    clique: &hit,
                },
                text,
                code,
            ))
        }
        Command::Certify(a) => certify(a),
        Command::Verify(v) => {
            let (command, report) = match v {
                VerifyCmd::Lemma21 { l, p, n, eps, x } => {
                    let p = match (l, p) {
                        (Some(l), _) => 6u64
                            .checked_pow(*l)
                            .ok_or_else(|| usage(anyhow!("6^{l} overflows")))?,
                        (None, Some(p)) => *p,
                        (None, None) => return Err(usage(anyhow!("pass --l or --p"))),
                    };
                    let samples = if x.is_empty() { grid(12) } else { x.clone() };
                    (
                        "verify lemma21",
                        verify_translation_equivariance(p, *n, eps, &samples),
                    )
                }
                VerifyCmd::Lemma22 { l, n } => ("verify lemma22", verify_component_thirds(*l, *n)),
                VerifyCmd::Prop23 { l, n } => ("verify prop23", verify_ball_measure(*l, *n)),
                VerifyCmd::Grid { r } => ("verify grid", verify_dyadic_grid(*r)),
            };
            let report = report.map_err(fail)?;
            Ok(report_output("verify", command, &report))
        }
        Command::Shadow(a) => shadow(a),
        Command::Transfer(a) => {
            let g = load_map(&a.map_g).map_err(usage)?;
            let points = load_points(&a.set).map_err(usage)?;
            let t = transfer_separated(&g, &points, a.n, &a.eps).map_err(fail)?;
            let mut text = format!(
                "p = {}\nd_min = {}\ndelta = {}\n",
                t.p,
                t.d_min.as_ref().map_or("-".into(), q),
                q(&t.delta)
            );
            for (x, s) in points.iter().zip(&t.shadows) {
                let _ = writeln!(text, "{x} -> {}", s.y);
            }
            let _ = writeln!(text, "certified for ×{}: {}", t.p, t.report.certified);
            Ok(Output::new("transfer", "transfer", &t, text, OK))
        }
        Command::Capacity(a) => {
            let report = verify_capacity_circle(a.samples, a.seed);
            Ok(report_output("capacity", "capacity", &report))
        }
    }
}

fn certify(a: &crate::CertifyArgs) -> Res<Output> {
    if let Some(CertifyCmd::Verify { cert, coloring }) = &a.action {
        let cert: RamseyCertificate = read_json(cert).map_err(usage)?;
        let c: EdgeColoring = read_json(coloring).map_err(usage)?;
        #[derive(Serialize)]
        struct VerifyOut {
            valid: bool,
            reason: Option<String>,
        }
        let out = match verify_certificate(&cert, &c) {
            Ok(true) => VerifyOut {
                valid: true,
                reason: None,
            },
            Ok(false) => VerifyOut {
                valid: false,
                reason: Some("certificate does not match the coloring".into()),
            },
            Err(e @ CertificateError::DigestMismatch { .. }) => VerifyOut {
                valid: false,
                reason: Some(e.to_string()),
            },
            Err(e) => return Err(fail(e)),
        };
        let text = match &out.reason {
            None => format!("valid: {}\n", cert.claim),
            Some(r) => format!("invalid: {r}\n"),
        };
        let code = if out.valid { OK } else { NEGATIVE };
        return Ok(Output::new(
            "certificate-check",
            "certify verify",
            &out,
            text,
            code,
        ));
    }
    let path = a
        .coloring
        .as_ref()
        .ok_or_else(|| usage(anyhow!("--coloring is required")))?;
    let c: EdgeColoring = read_json(path).map_err(usage)?;
    let report: VerificationReport = match (&a.capacity, a.seed) {
        (Some(file), _) => read_json(file).map_err(usage)?,
        (None, Some(seed)) => verify_capacity_circle(a.samples, seed),
        (None, None) => return Err(usage(anyhow!("pass --capacity FILE or --seed S"))),
    };
    let claim = capacity_claim(&report).map_err(fail)?;
    let cert = emit_certificate(&c, a.k, &claim).map_err(fail)?;
    let text = format!("{}\ndigest: {}\n", cert.claim, cert.digest);
    Ok(Output::new("certificate", "certify", &cert, text, OK))
}

fn shadow(a: &crate::ShadowArgs) -> Res<Output> {
    let text = std::fs::read_to_string(&a.targets)
        .map_err(|e| usage(anyhow!("reading {}: {e}", a.targets.display())))?;
    let nested = serde_json::from_str::<serde_json::Value>(&text)
        .ok()
        .and_then(|v| v.as_array().and_then(|a| a.first()).map(|f| f.is_array()))
        .unwrap_or(false);
    let lists: Vec<Vec<CirclePoint>> = if nested {
        parse_json(&text).map_err(usage)?
    } else {
        vec![parse_json(&text).map_err(usage)?]
    };
    let p = match a.p {
        Some(p) => p,
        None => min_expansion_p(&a.delta).map_err(fail)?,
    };
    let results = shadow_many(&lists, &a.delta, p);
    let mut summary = format!("p = {p}, delta = {}\n", q(&a.delta));
    let mut code = OK;
    let mut values = Vec::new();
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(s) => {
                let worst = s.deviations.iter().max().expect("nonempty targets");
                let _ = writeln!(summary, "[{i}] y = {}  max deviation {}", s.y, q(worst));
                values.push(serde_json::to_value(s).expect("serialisable"));
            }
            Err(e) => {
                if let VerifyError::InvalidParameters(_) = e {
                    return Err(usage(anyhow!("target list {i}: {e}")));
                }
                code = code.max(NEGATIVE);
                let _ = writeln!(summary, "[{i}] {e}");
                values.push(serde_json::json!({ "error": e.to_string() }));
            }
        }
    }
    let value = if nested {
        serde_json::Value::Array(values)
    } else {
        values.pop().expect("one list")
    };
    Ok(Output::new("shadow", "shadow", &value, summary, code))
}

fn set_text(r: &SeparatedSetReport) -> String {
    let mut t = format!(
        "size {} ({:?}, certified {}, maximal {})\n",
        r.size, r.method, r.certified, r.maximal
    );
    let pts: Vec<String> = r.points.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(t, "points: {}", pts.join(", "));
    if let Some(ok) = r.exponential_bound_holds() {
        let _ = writeln!(t, "size <= 3^{}: {ok}", r.n);
    }
    t
}

fn coloring_text(c: &EdgeColoring) -> String {
    format!(
        "K_{} with {} colors ({} used)\ndigest: {}\n",
        c.vertex_count(),
        c.num_colors(),
        c.colors_used(),
        c.digest()
    )
}

fn report_output(name: &'static str, command: &str, r: &VerificationReport) -> Output {
    let verdict = match r.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Unsupported => "unsupported",
    };
    let params: Vec<String> = r
        .parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let mut text = format!("{}: {verdict} ({})\n", command, params.join(", "));
    for d in &r.details {
        let row: Vec<String> = d.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(text, "  {}", row.join(" "));
    }
    if let Some(c) = &r.counterexample {
        let row: Vec<String> = c.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(text, "counterexample: {}", row.join(" "));
    }
    let code = match r.verdict {
        Verdict::Pass => OK,
        Verdict::Fail => NEGATIVE,
        Verdict::Unsupported => INTERNAL,
    };
    Output::new(name, command, r, text, code)
}
