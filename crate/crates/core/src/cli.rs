//! Batch front end: commands over scene files with text or machine output
//! and a fixed exit-code contract.

use crate::classifier::{self, ComponentKind, ConfigurationReport, GroupPresentation};
use crate::curves::{self, Parametrization};
use crate::error::Error;
use crate::linalg::{Mat3, C64};
use crate::poly::{BinaryForm, HomPoly};
use crate::projective::{self, Kernel, ProjLine, ProjPoint, Tol};
use crate::scene::Scene;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;

pub const SCHEMA_VERSION: &str = "1";
pub const TOL_ENV: &str = "KLEINCURVE_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MISSING_LABEL: i32 = 3;
pub const EXIT_NON_CONVERGENT: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;
pub const EXIT_NOT_INVARIANT: i32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "kleincurve", version, about = "Invariant curves of projective transformation groups")]
pub struct Cli {
    /// Numerical tolerance; overrides the KLEINCURVE_TOL environment variable.
    #[arg(long, global = true, env = TOL_ENV, default_value_t = 1e-9, value_parser = parse_tol)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized auxiliary choices.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elliptic, parabolic or loxodromic, with eigenvalues and the determinant-1 lift.
    ClassifyElement { file: PathBuf, label: String },
    /// Limit of the rescaled powers of a generator.
    PowerLimit { file: PathBuf, label: String },
    /// Singular points, inflections and numeric invariants of a component.
    CurveInvariants { file: PathBuf, label: String },
    /// Whether generators leave components invariant; all pairs by default.
    InvarianceCheck {
        file: PathBuf,
        #[arg(long)]
        generator: Option<String>,
        #[arg(long)]
        component: Option<String>,
    },
    /// Dual curve of a component, through its parametrization when the scene gives one.
    DualCurve { file: PathBuf, label: String },
    /// Full configuration report with compliance verdicts.
    Report { file: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ClassifyElement { .. } => "classify-element",
            Command::PowerLimit { .. } => "power-limit",
            Command::CurveInvariants { .. } => "curve-invariants",
            Command::InvarianceCheck { .. } => "invariance-check",
            Command::DualCurve { .. } => "dual-curve",
            Command::Report { .. } => "report",
        }
    }

    fn file(&self) -> &PathBuf {
        match self {
            Command::ClassifyElement { file, .. }
            | Command::PowerLimit { file, .. }
            | Command::CurveInvariants { file, .. }
            | Command::InvarianceCheck { file, .. }
            | Command::DualCurve { file, .. }
            | Command::Report { file } => file,
        }
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("tolerance must lie in (0, 1), got {s}"))
    }
}

/// What a command printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Load(String),
    MissingLabel { what: &'static str, label: String },
    Op(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Op(e)
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidInput(_) => "invalid-input",
        Error::EqualPoints => "equal-points",
        Error::IllConditioned { .. } => "ill-conditioned",
        Error::NonConvergent(_) => "non-convergent",
        Error::NotFixed => "not-fixed",
        Error::PointOnLine => "point-on-line",
        Error::RepeatedFactor => "repeated-factor",
        Error::DegreeUnsupported { .. } => "degree-unsupported",
        Error::LineIsComponent => "line-is-component",
        Error::NegativeGenus { .. } => "negative-genus",
        Error::Inconsistent { .. } => "inconsistent",
        Error::Degenerate => "degenerate",
        Error::Unsupported(_) => "unsupported",
        Error::ZeroParameter => "zero-parameter",
        Error::WrongType(_) => "wrong-type",
        Error::FrameDegenerate => "frame-degenerate",
        Error::NotDiagonal => "not-diagonal",
        Error::NotInvariant { .. } => "not-invariant",
        Error::Reducible(_) => "reducible",
        Error::DuplicateComponent(_) => "duplicate-component",
        Error::DuplicateLines(..) => "duplicate-lines",
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergent(_) => EXIT_NON_CONVERGENT,
        Error::NotInvariant { .. } => EXIT_NOT_INVARIANT,
        _ => EXIT_ERROR,
    }
}

/// A command's result: machine fields, text lines, and the exit code.
struct Report {
    fields: Value,
    text: String,
    code: i32,
}

/// Parses arguments and runs; argument errors exit 2 with clap's message.
pub fn main_with<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code, stdout: rendered, stderr: String::new() }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = load(cli.command.file()).and_then(|scene| execute(&cli.command, &scene, Tol(cli.tol), cli.seed));
    render(cli.command.name(), cli.format, result)
}

/// The machine-format report for scene text, and its exit code.
pub fn report_machine(scene_text: &str, tol: f64, seed: u64) -> (i32, String) {
    let result = Scene::parse(scene_text).map_err(|e| Failure::Load(e.to_string())).and_then(|s| report(&s, Tol(tol), seed));
    let out = render("report", Format::Machine, result);
    (out.code, out.stdout)
}

fn render(name: &str, format: Format, result: Result<Report, Failure>) -> Outcome {
    match result {
        Ok(rep) => {
            let stdout = match format {
                Format::Text => rep.text,
                Format::Machine => {
                    let mut doc = rep.fields;
                    doc["schema_version"] = json!(SCHEMA_VERSION);
                    doc["command"] = json!(name);
                    doc["exit_code"] = json!(rep.code);
                    machine(&doc)
                }
            };
            Outcome { code: rep.code, stdout, stderr: String::new() }
        }
        Err(f) => {
            let (code, kind, message, extra) = match &f {
                Failure::Load(msg) => (EXIT_PARSE, "parse", msg.clone(), json!({})),
                Failure::MissingLabel { what, label } => {
                    (EXIT_MISSING_LABEL, "missing-label", format!("no {what} labeled {label:?}"), json!({"label": label}))
                }
                Failure::Op(e) => {
                    let extra = match e {
                        Error::NotInvariant { generator, component, residual } => {
                            json!({"generator": generator, "component": component, "residual": residual})
                        }
                        _ => json!({}),
                    };
                    (exit_code(e), error_kind(e), e.to_string(), extra)
                }
            };
            match format {
                Format::Text => Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") },
                Format::Machine => {
                    let mut err = extra;
                    err["kind"] = json!(kind);
                    err["message"] = json!(message);
                    let doc = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": name,
                        "exit_code": code,
                        "error": err,
                    });
                    Outcome { code, stdout: machine(&doc), stderr: String::new() }
                }
            }
        }
    }
}

fn machine(doc: &Value) -> String {
    let mut s = serde_json::to_string(doc).expect("json value serializes");
    s.push('\n');
    s
}

fn load(path: &PathBuf) -> Result<Scene, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Load(format!("cannot read {}: {e}", path.display())))?;
    Scene::parse(&text).map_err(|e| Failure::Load(format!("{}: {e}", path.display())))
}

fn execute(cmd: &Command, scene: &Scene, tol: Tol, seed: u64) -> Result<Report, Failure> {
    match cmd {
        Command::ClassifyElement { label, .. } => classify_element(scene, label, tol),
        Command::PowerLimit { label, .. } => power_limit(scene, label, tol),
        Command::CurveInvariants { label, .. } => curve_invariants(scene, label),
        Command::InvarianceCheck { generator, component, .. } => {
            invariance(scene, generator.as_deref(), component.as_deref(), tol)
        }
        Command::DualCurve { label, .. } => dual(scene, label, tol),
        Command::Report { .. } => report(scene, tol, seed),
    }
}

fn generator<'a>(scene: &'a Scene, label: &str) -> Result<&'a projective::ProjTransform, Failure> {
    scene.generator(label).ok_or_else(|| Failure::MissingLabel { what: "generator", label: label.into() })
}

fn component<'a>(scene: &'a Scene, label: &str) -> Result<&'a crate::scene::Component, Failure> {
    scene.component(label).ok_or_else(|| Failure::MissingLabel { what: "component", label: label.into() })
}

fn clean(v: f64) -> f64 {
    if v.abs() < 5e-13 {
        0.0
    } else {
        v
    }
}

fn cx(z: C64) -> Value {
    json!([clean(z.re), clean(z.im)])
}

fn mat(m: &Mat3) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(|z| cx(*z)).collect())).collect())
}

fn point(p: &ProjPoint) -> Value {
    Value::Array(p.coords().iter().map(|z| cx(*z)).collect())
}

fn line(l: &ProjLine) -> Value {
    Value::Array(l.dual_coords().iter().map(|z| cx(*z)).collect())
}

/// Scaled so the leading largest coefficient (in display order) is 1, then rounded to 10 decimals.
fn tidy(f: &HomPoly) -> HomPoly {
    let max = f.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let pivot = f.terms().filter(|(_, c)| c.norm() >= max * (1.0 - 1e-12)).last().map(|t| t.1).unwrap_or(C64::new(1.0, 0.0));
    let round = |v: f64| clean((v * 1e10).round() / 1e10);
    let terms: Vec<_> = f
        .terms()
        .map(|(e, c)| (e, c / pivot))
        .map(|(e, c)| (e, C64::new(round(c.re), round(c.im))))
        .filter(|(_, c)| c.norm() > 0.0)
        .collect();
    HomPoly::new(f.degree(), terms).unwrap_or_else(|_| f.clone())
}

fn poly_terms(f: &HomPoly) -> Value {
    Value::Array(f.terms().map(|(e, c)| json!({"exp": e, "coeff": cx(c)})).collect())
}

fn binary_terms(b: &BinaryForm) -> Value {
    let d = b.degree() as u32;
    Value::Array(
        b.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(i, c)| json!({"exp": [i as u32, d - i as u32], "coeff": cx(*c)}))
            .collect(),
    )
}

fn fmt_c(z: C64) -> String {
    projective::fmt_complex(z)
}

fn classify_element(scene: &Scene, label: &str, tol: Tol) -> Result<Report, Failure> {
    let g = generator(scene, label)?;
    let class = projective::classify_element(g, tol)?;
    let ev = class.eigen.eigenvalues;
    let mut text = String::new();
    writeln!(text, "element {label}: {}", class.kind.name()).unwrap();
    writeln!(text, "eigenvalues: {}", ev.map(fmt_c).join(", ")).unwrap();
    writeln!(text, "diagonalizable: {}", if class.eigen.diagonalizable { "yes" } else { "no" }).unwrap();
    writeln!(text, "determinant-1 lift: {g}").unwrap();
    let fields = json!({
        "label": label,
        "kind": class.kind.name(),
        "eigenvalues": ev.map(cx).to_vec(),
        "moduli": ev.map(|z| z.norm()).to_vec(),
        "diagonalizable": class.eigen.diagonalizable,
        "lift": mat(g.lift()),
    });
    Ok(Report { fields, text, code: EXIT_OK })
}

fn power_limit(scene: &Scene, label: &str, tol: Tol) -> Result<Report, Failure> {
    let g = generator(scene, label)?;
    let limit = projective::power_limit(g, tol)?;
    let (kernel_text, kernel) = match projective::kernel(&limit, tol) {
        Kernel::Empty => ("empty".to_string(), json!({"type": "empty"})),
        Kernel::Point(p) => (format!("point {p}"), json!({"type": "point", "point": point(&p)})),
        Kernel::Line(l) => (format!("line {l}"), json!({"type": "line", "line": line(&l)})),
    };
    let mut text = String::new();
    writeln!(text, "limit of {label}^n: {limit}").unwrap();
    writeln!(text, "rank: {}", limit.rank()).unwrap();
    writeln!(text, "kernel: {kernel_text}").unwrap();
    let fields = json!({"label": label, "limit": mat(limit.matrix()), "rank": limit.rank(), "kernel": kernel});
    Ok(Report { fields, text, code: EXIT_OK })
}

fn curve_invariants(scene: &Scene, label: &str) -> Result<Report, Failure> {
    let c = component(scene, label)?;
    let f = &c.polynomial;
    let inv = curves::curve_invariants(f)?;
    let sing = curves::singular_points(f)?;
    let flex = curves::inflection_points(f)?;
    let mut text = String::new();
    writeln!(text, "component {label}: {}", tidy(f)).unwrap();
    writeln!(
        text,
        "degree {}, nodes {}, cusps {}, class {}, inflections {}, genus {}",
        inv.degree, inv.nodes, inv.cusps, inv.class, inv.inflections, inv.genus
    )
    .unwrap();
    for s in &sing {
        let cone: Vec<String> = s.tangent_cone.iter().map(|l| l.to_string()).collect();
        writeln!(text, "singular point {} ({}), tangent lines: {}", s.location, s.kind.name(), cone.join(" ")).unwrap();
    }
    for p in &flex {
        writeln!(text, "inflection point {p}").unwrap();
    }
    let fields = json!({
        "label": label,
        "degree": inv.degree,
        "nodes": inv.nodes,
        "cusps": inv.cusps,
        "class": inv.class,
        "inflections": inv.inflections,
        "genus": inv.genus,
        "singular_points": sing.iter().map(|s| json!({
            "location": point(&s.location),
            "kind": s.kind.name(),
            "tangent_cone": s.tangent_cone.iter().map(line).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "inflection_points": flex.iter().map(point).collect::<Vec<_>>(),
    });
    Ok(Report { fields, text, code: EXIT_OK })
}

fn invariance(scene: &Scene, gen: Option<&str>, comp: Option<&str>, tol: Tol) -> Result<Report, Failure> {
    let mut gens: Vec<(&str, &projective::ProjTransform)> = match gen {
        Some(l) => vec![(l, generator(scene, l)?)],
        None => scene.generators.iter().map(|(l, g)| (l.as_str(), g)).collect(),
    };
    let mut comps: Vec<(&str, &HomPoly)> = match comp {
        Some(l) => vec![(l, &component(scene, l)?.polynomial)],
        None => scene.components.iter().map(|c| (c.label.as_str(), &c.polynomial)).collect(),
    };
    if gens.is_empty() || comps.is_empty() {
        return Err(Failure::Op(Error::InvalidInput("the scene needs at least one generator and one component".into())));
    }
    gens.sort_by_key(|g| g.0);
    comps.sort_by_key(|c| c.0);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut witness: Option<Error> = None;
    for (gl, g) in &gens {
        for (cl, f) in &comps {
            let (scale, residual) = f.proportionality(&curves::pullback(f, g));
            let ok = residual < tol.0;
            if ok {
                writeln!(text, "{gl} on {cl}: invariant, scale {}, residual {residual:.3e}", fmt_c(scale)).unwrap();
            } else {
                writeln!(text, "{gl} on {cl}: not invariant, residual {residual:.3e}").unwrap();
                witness.get_or_insert(Error::NotInvariant {
                    generator: Some(gl.to_string()),
                    component: Some(cl.to_string()),
                    residual,
                });
            }
            rows.push(json!({
                "generator": gl,
                "component": cl,
                "invariant": ok,
                "scale": if ok { cx(scale) } else { Value::Null },
                "residual": residual,
            }));
        }
    }
    let code = if witness.is_some() { EXIT_NOT_INVARIANT } else { EXIT_OK };
    let mut fields = json!({"checks": rows});
    if let Some(Error::NotInvariant { generator, component, residual }) = &witness {
        fields["witness"] = json!({"generator": generator, "component": component, "residual": residual});
    }
    Ok(Report { fields, text, code })
}

fn dual(scene: &Scene, label: &str, tol: Tol) -> Result<Report, Failure> {
    let c = component(scene, label)?;
    let d = curves::dual_curve(&c.polynomial, c.parametrization.as_ref(), tol)?;
    let implicit = d.implicit.as_ref().map(tidy);
    let mut text = String::new();
    writeln!(text, "component {label}: {}", tidy(&c.polynomial)).unwrap();
    match &implicit {
        Some(h) => writeln!(text, "dual curve (degree {}, dual coordinates x,y,z): {h}", h.degree()).unwrap(),
        None => writeln!(text, "dual curve: no implicit equation").unwrap(),
    }
    if let Some(p) = &d.parametrization {
        writeln!(text, "dual parametrization (degree {}): {}", p.degree(), fmt_param(p)).unwrap();
    }
    let fields = json!({
        "label": label,
        "implicit": implicit.as_ref().map(|h| json!({"degree": h.degree(), "terms": poly_terms(h)})),
        "parametrization": d.parametrization.as_ref().map(|p| p.components.iter().map(binary_terms).collect::<Vec<_>>()),
    });
    Ok(Report { fields, text, code: EXIT_OK })
}

fn fmt_param(p: &Parametrization) -> String {
    let comps: Vec<String> = p
        .components
        .iter()
        .map(|b| {
            let d = b.degree();
            let terms: Vec<String> = b
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| c.norm() > 5e-13)
                .map(|(i, c)| format!("({})*s^{i}*t^{}", fmt_c(*c), d - i))
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        })
        .collect();
    format!("[{}]", comps.join(" : "))
}

fn report(scene: &Scene, tol: Tol, seed: u64) -> Result<Report, Failure> {
    let group = GroupPresentation::new(scene.generators.clone())?;
    let comps: Vec<(String, HomPoly)> =
        scene.components.iter().map(|c| (c.label.clone(), c.polynomial.clone())).collect();
    let rep = classifier::theorem_report(&group, &comps, scene.assertions, tol, seed)?;
    let code = if rep.violated() { EXIT_VIOLATION } else { EXIT_OK };
    Ok(Report { fields: report_fields(&rep), text: report_text(&rep), code })
}

fn permutation_map(rep: &ConfigurationReport, sigma: &[usize]) -> Value {
    let mut m = serde_json::Map::new();
    for (j, &i) in sigma.iter().enumerate() {
        m.insert(rep.components[j].label.clone(), json!(rep.components[i].label));
    }
    Value::Object(m)
}

fn sorted_permutations(rep: &ConfigurationReport) -> Vec<&(String, Vec<usize>)> {
    let mut p: Vec<_> = rep.permutations.iter().collect();
    p.sort_by(|a, b| a.0.cmp(&b.0));
    p
}

fn sorted_verdicts(rep: &ConfigurationReport) -> Vec<&classifier::Verdict> {
    let mut v: Vec<_> = rep.verdicts.iter().collect();
    v.sort_by_key(|v| v.rule);
    v
}

fn report_fields(rep: &ConfigurationReport) -> Value {
    let components: Vec<Value> = rep
        .components
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "degree": c.polynomial.degree(),
                "kind": c.class.kind.name(),
                "normalizer": c.class.normalizer.as_ref().map(|t| mat(t.lift())),
                "normalization_residual": c.class.residual,
                "cusp": c.class.cusp.as_ref().map(point),
                "inflection": c.class.inflection.as_ref().map(point),
            })
        })
        .collect();
    let generators: Vec<Value> = sorted_permutations(rep)
        .into_iter()
        .map(|(l, s)| json!({"label": l, "permutation": permutation_map(rep, s)}))
        .collect();
    let tangency: Vec<Value> = rep
        .censuses
        .iter()
        .map(|c| {
            let lines: Vec<Value> = c
                .lines
                .iter()
                .zip(&c.census.relations)
                .zip(&c.census.profiles)
                .map(|((l, r), p)| {
                    json!({
                        "label": l,
                        "relation": r.name(),
                        "intersections": p.points.iter().map(|(q, k)| json!({"point": point(q), "multiplicity": k})).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({
                "component": c.component,
                "tangent": c.census.count(classifier::LineRelation::Tangent),
                "secant": c.census.count(classifier::LineRelation::Secant),
                "other": c.census.count(classifier::LineRelation::Other),
                "lines": lines,
            })
        })
        .collect();
    let verdicts: Vec<Value> = sorted_verdicts(rep)
        .into_iter()
        .map(|v| json!({"rule": v.rule, "status": v.status.name(), "detail": v.detail}))
        .collect();
    json!({
        "assertions": {"infinite": rep.assertions.infinite, "virtually_cyclic": rep.assertions.virtually_cyclic},
        "components": components,
        "generators": generators,
        "lines": {
            "max_nonconcurrent": rep.max_nonconcurrent_lines,
            "in_general_position": rep.lines_in_general_position,
        },
        "tangency": tangency,
        "verdicts": verdicts,
        "compliant": !rep.violated(),
    })
}

fn report_text(rep: &ConfigurationReport) -> String {
    let mut t = String::new();
    writeln!(t, "components:").unwrap();
    for c in &rep.components {
        write!(t, "  {}: {} ({})", c.label, tidy(&c.polynomial), c.class.kind.name()).unwrap();
        if c.class.kind == ComponentKind::CuspidalCubic {
            write!(t, ", cusp {}, inflection {}", c.class.cusp.unwrap(), c.class.inflection.unwrap()).unwrap();
        }
        if let Some(r) = c.class.residual {
            write!(t, ", normalization residual {:.1e}", r.abs()).unwrap();
        }
        writeln!(t).unwrap();
    }
    writeln!(t, "generators:").unwrap();
    for (l, s) in sorted_permutations(rep) {
        let images: Vec<String> = s
            .iter()
            .enumerate()
            .map(|(j, &i)| format!("{} -> {}", rep.components[j].label, rep.components[i].label))
            .collect();
        writeln!(t, "  {l}: {}", images.join(", ")).unwrap();
    }
    if let (Some(nc), Some(gp)) = (rep.max_nonconcurrent_lines, rep.lines_in_general_position) {
        writeln!(t, "lines: max non-concurrent {nc}, in general position {gp}").unwrap();
    }
    for c in &rep.censuses {
        let rel: Vec<String> = c.lines.iter().zip(&c.census.relations).map(|(l, r)| format!("{l} {}", r.name())).collect();
        writeln!(t, "tangency for {}: {}", c.component, if rel.is_empty() { "no lines".into() } else { rel.join(", ") })
            .unwrap();
    }
    writeln!(t, "verdicts:").unwrap();
    for v in sorted_verdicts(rep) {
        writeln!(t, "  {}: {} ({})", v.rule, v.status.name(), v.detail).unwrap();
    }
    let overall = if rep.violated() { "violated" } else { "compliant" };
    writeln!(t, "overall: {overall}").unwrap();
    t
}
