//! Invariant curves of finitely generated groups: the permutation action on
//! components, the type of each component, line configurations, tangency
//! counts and the resulting compliance verdicts.

use crate::curves::{self, SingularKind};
use crate::error::{Error, Result};
use crate::families;
use crate::linalg;
use crate::poly::HomPoly;
use crate::projective::{ProjLine, ProjPoint, ProjTransform, Tol};
use std::collections::BTreeSet;

/// Incidence and proximity radius for matching computed points and lines.
const MATCH_RADIUS: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct GroupPresentation {
    generators: Vec<(String, ProjTransform)>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<(String, ProjTransform)>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("a group needs at least one generator".into()));
        }
        let mut seen = BTreeSet::new();
        for (label, _) in &generators {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate generator label {label:?}")));
            }
        }
        Ok(GroupPresentation { generators })
    }

    pub fn generators(&self) -> &[(String, ProjTransform)] {
        &self.generators
    }
}

/// `σ(j) = i` when `g` carries component `j` onto component `i`, that is
/// `pullback(Cᵢ, g) ∝ Cⱼ`. Hence `σ_{gh} = σ_g ∘ σ_h`.
pub type Permutation = Vec<usize>;

pub fn check_distinct_components(components: &[(String, HomPoly)], tol: Tol) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (i, (label, f)) in components.iter().enumerate() {
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateComponent(label.clone()));
        }
        for (other, g) in &components[..i] {
            if f.is_proportional(g, tol.0) {
                return Err(Error::DuplicateComponent(format!("{other} and {label} define the same curve")));
            }
        }
    }
    Ok(())
}

/// The permutation each generator induces on the components, or the first
/// generator and component (in input order) without an image, with the
/// smallest residual found.
pub fn orbit_action(group: &GroupPresentation, components: &[(String, HomPoly)], tol: Tol) -> Result<Vec<Permutation>> {
    check_distinct_components(components, tol)?;
    let mut out = Vec::with_capacity(group.generators.len());
    for (glabel, g) in &group.generators {
        let pulled: Vec<HomPoly> = components.iter().map(|(_, f)| curves::pullback(f, g)).collect();
        let mut sigma = Vec::with_capacity(components.len());
        for (clabel, cj) in components {
            let (best, residual) = pulled
                .iter()
                .enumerate()
                .filter(|(_, p)| p.degree() == cj.degree())
                .map(|(i, p)| (i, cj.proportionality(p).1))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap_or((usize::MAX, 1.0));
            if residual >= tol.0 || sigma.contains(&best) {
                return Err(Error::NotInvariant {
                    generator: Some(glabel.clone()),
                    component: Some(clabel.clone()),
                    residual,
                });
            }
            sigma.push(best);
        }
        out.push(sigma);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    Line,
    VeroneseConic,
    CuspidalCubic,
    Other,
}

impl ComponentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentKind::Line => "line",
            ComponentKind::VeroneseConic => "veronese-conic",
            ComponentKind::CuspidalCubic => "cuspidal-cubic",
            ComponentKind::Other => "other",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComponentClass {
    pub kind: ComponentKind,
    /// Carries the component onto its model curve.
    pub normalizer: Option<ProjTransform>,
    pub residual: Option<f64>,
    pub cusp: Option<ProjPoint>,
    pub inflection: Option<ProjPoint>,
}

impl ComponentClass {
    fn plain(kind: ComponentKind) -> Self {
        ComponentClass { kind, normalizer: None, residual: None, cusp: None, inflection: None }
    }
}

/// Type of an irreducible component. Reducibility is detected exactly up to
/// degree 3: a conic must be nondegenerate, and a cubic with a repeated
/// factor, two or more singular points, or a singularity worse than a node
/// or cusp splits into lines and conics.
pub fn classify_component(f: &HomPoly, tol: Tol, seed: u64) -> Result<ComponentClass> {
    match f.degree() {
        0 => Err(Error::InvalidInput("a constant does not define a curve".into())),
        1 => Ok(ComponentClass::plain(ComponentKind::Line)),
        2 => match families::normalize_conic(f, tol) {
            Ok(n) => Ok(ComponentClass {
                kind: ComponentKind::VeroneseConic,
                normalizer: Some(n.transform),
                residual: Some(n.residual),
                cusp: None,
                inflection: None,
            }),
            Err(Error::Degenerate) => Err(Error::Reducible("the conic is a pair of lines".into())),
            Err(e) => Err(e),
        },
        3 => {
            let sing = match curves::singular_points(f) {
                Ok(s) => s,
                Err(Error::RepeatedFactor) => return Err(Error::Reducible("the cubic has a repeated factor".into())),
                Err(e) => return Err(e),
            };
            if sing.len() >= 2 || sing.iter().any(|s| s.kind == SingularKind::Other) {
                return Err(Error::Reducible(format!(
                    "the cubic has {} singular points, which an irreducible cubic cannot have",
                    sing.len()
                )));
            }
            if sing.len() == 1 && sing[0].kind == SingularKind::Cusp {
                let n = families::normalize_cuspidal_cubic_seeded(f, seed)?;
                let frame = families::cubic_frame(f)?;
                return Ok(ComponentClass {
                    kind: ComponentKind::CuspidalCubic,
                    normalizer: Some(n.transform),
                    residual: Some(n.residual),
                    cusp: Some(frame.cusp),
                    inflection: Some(frame.inflection),
                });
            }
            Ok(ComponentClass::plain(ComponentKind::Other))
        }
        _ => Ok(ComponentClass::plain(ComponentKind::Other)),
    }
}

/// The line `F = 0` of a linear form.
pub fn line_of(f: &HomPoly) -> Result<ProjLine> {
    if f.degree() != 1 {
        return Err(Error::WrongType(format!("expected a linear form, got degree {}", f.degree())));
    }
    ProjLine::new([f.coeff([1, 0, 0]), f.coeff([0, 1, 0]), f.coeff([0, 0, 1])])
}

fn check_distinct_lines(lines: &[ProjLine], tol: Tol) -> Result<()> {
    for j in 0..lines.len() {
        for i in 0..j {
            if lines[i].approx_eq(&lines[j], tol) {
                return Err(Error::DuplicateLines(i, j));
            }
        }
    }
    Ok(())
}

fn concurrent(a: &ProjLine, b: &ProjLine, c: &ProjLine, tol: Tol) -> bool {
    let m = [a, b, c].map(|l| linalg::unit(l.dual_coords()));
    linalg::det(&m).norm() <= tol.0
}

/// Largest number of lines with no point common to all of them: two lines
/// always meet, and three or more lines share a point iff their dual vectors
/// span at most a plane.
pub fn max_nonconcurrent_lines(lines: &[ProjLine], tol: Tol) -> Result<usize> {
    if lines.is_empty() {
        return Err(Error::InvalidInput("no lines given".into()));
    }
    check_distinct_lines(lines, tol)?;
    if lines.len() < 3 {
        return Ok(lines.len());
    }
    let m = lines.len();
    let all_through_one_point =
        (0..m).all(|i| (i + 1..m).all(|j| (j + 1..m).all(|k| concurrent(&lines[i], &lines[j], &lines[k], tol))));
    Ok(if all_through_one_point { 2 } else { 3 })
}

/// Size of the largest subset with no three lines through a common point.
pub fn max_lines_in_general_position(lines: &[ProjLine], tol: Tol) -> Result<usize> {
    check_distinct_lines(lines, tol)?;
    let m = lines.len();
    if m > 20 {
        return Err(Error::Unsupported("general-position search is limited to 20 lines".into()));
    }
    let mut best = m.min(2);
    for mask in 0u32..(1 << m) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let general = idx.iter().enumerate().all(|(a, &i)| {
            idx[a + 1..].iter().enumerate().all(|(b, &j)| {
                idx[a + 1 + b + 1..].iter().all(|&k| !concurrent(&lines[i], &lines[j], &lines[k], tol))
            })
        });
        if general {
            best = size;
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineRelation {
    Tangent,
    Secant,
    Other,
}

impl LineRelation {
    pub fn name(&self) -> &'static str {
        match self {
            LineRelation::Tangent => "tangent",
            LineRelation::Secant => "secant",
            LineRelation::Other => "other",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TangencyCensus {
    pub relations: Vec<LineRelation>,
    pub profiles: Vec<curves::IntersectionProfile>,
}

impl TangencyCensus {
    pub fn count(&self, r: LineRelation) -> usize {
        self.relations.iter().filter(|x| **x == r).count()
    }
}

/// Tangent: a multiple intersection at a smooth point, or a line of the
/// tangent cone at a singular point. Secant: only simple intersections at
/// smooth points. Other: through a singular point transversally.
pub fn tangency_census(curve: &HomPoly, lines: &[ProjLine]) -> Result<TangencyCensus> {
    if !(2..=3).contains(&curve.degree()) {
        return Err(Error::WrongType(format!("tangency needs a conic or cubic, got degree {}", curve.degree())));
    }
    let sing = curves::singular_points(curve)?;
    let mut relations = Vec::with_capacity(lines.len());
    let mut profiles = Vec::with_capacity(lines.len());
    for line in lines {
        let profile = curves::line_curve_intersection(curve, line)?;
        let through: Vec<&curves::SingularPoint> =
            sing.iter().filter(|s| line.incidence(&s.location) <= MATCH_RADIUS).collect();
        let rel = if !through.is_empty() {
            if through.iter().any(|s| s.tangent_cone.iter().any(|t| t.distance(line) <= MATCH_RADIUS)) {
                LineRelation::Tangent
            } else {
                LineRelation::Other
            }
        } else if profile.points.iter().any(|(_, k)| *k >= 2) {
            LineRelation::Tangent
        } else {
            LineRelation::Secant
        };
        relations.push(rel);
        profiles.push(profile);
    }
    Ok(TangencyCensus { relations, profiles })
}

/// Caller-asserted group properties; the checks cannot decide them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Assertions {
    pub infinite: Option<bool>,
    pub virtually_cyclic: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Compliant,
    Violated,
    NotApplicable,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Compliant => "compliant",
            Status::Violated => "violated",
            Status::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub rule: &'static str,
    pub status: Status,
    pub detail: String,
}

pub const RULE_TRICHOTOMY: &str = "component-trichotomy";
pub const RULE_NONCOMMUTATIVE: &str = "noncommutative-structure";
pub const RULE_LINES: &str = "line-configuration";
pub const RULE_TANGENT_SECANT: &str = "tangent-secant-bound";

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub label: String,
    pub polynomial: HomPoly,
    pub class: ComponentClass,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub component: String,
    pub lines: Vec<String>,
    pub census: TangencyCensus,
}

#[derive(Clone, Debug)]
pub struct ConfigurationReport {
    /// Sorted by label; permutations index into this order.
    pub components: Vec<ComponentReport>,
    pub permutations: Vec<(String, Permutation)>,
    pub max_nonconcurrent_lines: Option<usize>,
    pub lines_in_general_position: Option<usize>,
    pub censuses: Vec<CensusReport>,
    pub verdicts: Vec<Verdict>,
    pub assertions: Assertions,
}

impl ConfigurationReport {
    pub fn violated(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Violated)
    }
}

fn verdict(rule: &'static str, ok: bool, detail: String) -> Verdict {
    Verdict { rule, status: if ok { Status::Compliant } else { Status::Violated }, detail }
}

fn not_applicable(rule: &'static str, detail: &str) -> Verdict {
    Verdict { rule, status: Status::NotApplicable, detail: detail.into() }
}

/// Invariance, classification, line and tangency counts, and verdicts.
/// When the group is asserted finite every verdict is not applicable.
pub fn theorem_report(
    group: &GroupPresentation,
    components: &[(String, HomPoly)],
    assertions: Assertions,
    tol: Tol,
    seed: u64,
) -> Result<ConfigurationReport> {
    if components.is_empty() {
        return Err(Error::InvalidInput("the curve has no components".into()));
    }
    let mut sorted: Vec<(String, HomPoly)> = components.to_vec();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let perms = orbit_action(group, &sorted, tol)?;
    let permutations = group.generators.iter().map(|(l, _)| l.clone()).zip(perms).collect();

    let mut reports = Vec::with_capacity(sorted.len());
    for (label, f) in &sorted {
        let class = classify_component(f, tol, seed).map_err(|e| match e {
            Error::Reducible(msg) => Error::Reducible(format!("component {label}: {msg}")),
            other => other,
        })?;
        reports.push(ComponentReport { label: label.clone(), polynomial: f.clone(), class });
    }

    let line_items: Vec<(String, ProjLine)> = reports
        .iter()
        .filter(|c| c.class.kind == ComponentKind::Line)
        .map(|c| Ok((c.label.clone(), line_of(&c.polynomial)?)))
        .collect::<Result<_>>()?;
    let lines: Vec<ProjLine> = line_items.iter().map(|x| x.1).collect();
    let (max_nc, general) = if lines.is_empty() {
        (None, None)
    } else {
        (Some(max_nonconcurrent_lines(&lines, tol)?), Some(max_lines_in_general_position(&lines, tol)?))
    };

    let mut censuses = Vec::new();
    for c in &reports {
        if matches!(c.class.kind, ComponentKind::VeroneseConic | ComponentKind::CuspidalCubic) {
            censuses.push(CensusReport {
                component: c.label.clone(),
                lines: line_items.iter().map(|x| x.0.clone()).collect(),
                census: tangency_census(&c.polynomial, &lines)?,
            });
        }
    }

    let verdicts = if assertions.infinite == Some(false) {
        [RULE_TRICHOTOMY, RULE_NONCOMMUTATIVE, RULE_LINES, RULE_TANGENT_SECANT]
            .map(|r| not_applicable(r, "the group is asserted finite"))
            .to_vec()
    } else {
        let mut v = Vec::new();
        let odd: Vec<&str> =
            reports.iter().filter(|c| c.class.kind == ComponentKind::Other).map(|c| c.label.as_str()).collect();
        v.push(verdict(
            RULE_TRICHOTOMY,
            odd.is_empty(),
            if odd.is_empty() {
                "every component is a line, a Veronese conic or a cuspidal cubic".into()
            } else {
                format!("components outside the three admissible types: {}", odd.join(", "))
            },
        ));
        if assertions.virtually_cyclic == Some(false) {
            let cubics: Vec<&str> = reports
                .iter()
                .filter(|c| c.class.kind == ComponentKind::CuspidalCubic)
                .map(|c| c.label.as_str())
                .collect();
            v.push(verdict(
                RULE_NONCOMMUTATIVE,
                cubics.is_empty(),
                if cubics.is_empty() {
                    "no cuspidal cubic for a group that is not virtually cyclic".into()
                } else {
                    format!("cuspidal cubics need a virtually cyclic group: {}", cubics.join(", "))
                },
            ));
        } else {
            v.push(not_applicable(RULE_NONCOMMUTATIVE, "the group is not asserted to be non-virtually-cyclic"));
        }
        if !lines.is_empty() && lines.len() == reports.len() {
            let g = general.unwrap_or(0);
            v.push(verdict(
                RULE_LINES,
                g <= 3,
                format!("{g} of {} lines in general position (at most 3 allowed)", lines.len()),
            ));
        } else {
            v.push(not_applicable(RULE_LINES, "the curve is not a union of lines"));
        }
        if censuses.is_empty() {
            v.push(not_applicable(RULE_TANGENT_SECANT, "no conic or cubic component"));
        } else if assertions.virtually_cyclic == Some(false) {
            v.push(not_applicable(RULE_TANGENT_SECANT, "the group is asserted not virtually cyclic"));
        } else {
            let bad: Vec<String> = censuses
                .iter()
                .filter(|c| c.census.count(LineRelation::Tangent) > 2 || c.census.count(LineRelation::Secant) > 1)
                .map(|c| c.component.clone())
                .collect();
            let counts: Vec<String> = censuses
                .iter()
                .map(|c| {
                    format!(
                        "{}: {} tangent, {} secant",
                        c.component,
                        c.census.count(LineRelation::Tangent),
                        c.census.count(LineRelation::Secant)
                    )
                })
                .collect();
            v.push(verdict(RULE_TANGENT_SECANT, bad.is_empty(), format!("{} (at most 2 tangent, 1 secant)", counts.join("; "))));
        }
        v
    };

    Ok(ConfigurationReport {
        components: reports,
        permutations,
        max_nonconcurrent_lines: max_nc,
        lines_in_general_position: general,
        censuses,
        verdicts,
        assertions,
    })
}
