use std::io::{Read, Write};
use std::str::FromStr;

use fuchsia_core::{
    self as fc, mobius_apply, nak_decompose, orbit_ball_words, reduce_cyclic_a, reduce_cyclic_b,
    reduce_modular, tangent_apply, theta_inverse, theta_map, verify_coverage,
    verify_disjointness, verify_lift_consistency, DomainSpec, ElementClass, Error, HPoint,
    Membership, NakCoords, OrbitElement, Psl2Element, SampleBox, Space, SpacePoint, TessellationJob,
    UnitTangent, VerifyConfig, VerifyReport,
};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::settings::Settings;
use crate::Format;

/// An error reported as `{"code", "message"}` with a process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub exit: u8,
}

impl Failure {
    fn new(code: &'static str, message: impl Into<String>, exit: u8) -> Self {
        Failure {
            code,
            message: message.into(),
            exit,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new("usage", message, 2)
    }

    pub fn config(message: impl Into<String>) -> Self {
        Failure::new("invalid_config", message, 2)
    }

    pub fn io(e: std::io::Error) -> Self {
        Failure::new("io", e.to_string(), 2)
    }

    fn input(e: serde_json::Error) -> Self {
        let code = if e.is_data() { "invalid_input" } else { "invalid_json" };
        Failure::new(code, e.to_string(), 2)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "code": self.code, "message": self.message })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonFinite => "non_finite",
            Error::Determinant { .. } => "determinant",
            Error::NotInUpperHalfPlane(_) => "not_in_upper_half_plane",
            Error::NotUnitTangent(_) => "not_unit_tangent",
            Error::DegenerateGeodesic => "degenerate_geodesic",
            Error::NoStandardForm(_) => "no_standard_form",
            Error::WrongSpace { .. } => "wrong_space",
            Error::FixedCenter => "fixed_center",
            Error::StepLimitExceeded(_) => "step_limit_exceeded",
            Error::SamplingExhausted { .. } => "sampling_exhausted",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::InvalidConfig(_) => "invalid_config",
        };
        let exit = if matches!(e, Error::StepLimitExceeded(_)) { 1 } else { 2 };
        Failure::new(code, e.to_string(), exit)
    }
}

fn emit(out: &mut impl Write, value: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::io(e.into()))?;
    writeln!(out).map_err(Failure::io)
}

/// Applies `f` to every JSON document on `input`, one output line each.
fn each<T, U, F>(input: impl Read, out: &mut impl Write, mut f: F) -> Result<u8, Failure>
where
    T: DeserializeOwned,
    U: Serialize,
    F: FnMut(T) -> Result<U, Failure>,
{
    for doc in serde_json::Deserializer::from_reader(input).into_iter::<T>() {
        let doc = doc.map_err(Failure::input)?;
        emit(out, &f(doc)?)?;
    }
    Ok(0)
}

fn single<T: DeserializeOwned>(input: impl Read) -> Result<T, Failure> {
    let mut docs = serde_json::Deserializer::from_reader(input).into_iter::<T>();
    match docs.next() {
        Some(doc) => doc.map_err(Failure::input),
        None => Err(Failure::new("invalid_input", "expected a JSON document on stdin", 2)),
    }
}

/// Tangent vectors as typed by users: `ξ` is rescaled to unit length.
#[derive(Deserialize)]
struct RawTangent {
    z: HPoint,
    xi: RawXi,
}

#[derive(Deserialize)]
struct RawXi {
    re: f64,
    im: f64,
}

impl RawTangent {
    fn normalize(&self) -> Result<UnitTangent, Failure> {
        Ok(UnitTangent::normalized(
            self.z,
            Complex64::new(self.xi.re, self.xi.im),
        )?)
    }
}

#[derive(Serialize)]
struct Classified {
    class: ElementClass,
    trace: f64,
}

pub fn classify(input: impl Read, out: &mut impl Write) -> Result<u8, Failure> {
    each(input, out, |g: Psl2Element| {
        Ok(Classified {
            class: g.classify(),
            trace: g.trace(),
        })
    })
}

pub fn nak(input: impl Read, out: &mut impl Write) -> Result<u8, Failure> {
    each(input, out, |g: Psl2Element| Ok(nak_decompose(&g)))
}

pub fn nak_compose(input: impl Read, out: &mut impl Write) -> Result<u8, Failure> {
    each(input, out, |n: NakCoords| Ok(fc::nak_compose(&n)?))
}

#[derive(Deserialize)]
struct ApplyInput {
    g: Psl2Element,
    z: HPoint,
}

pub fn apply(input: impl Read, out: &mut impl Write) -> Result<u8, Failure> {
    each(input, out, |a: ApplyInput| Ok(mobius_apply(&a.g, a.z)))
}

#[derive(Deserialize)]
struct TangentInput {
    g: Psl2Element,
    v: RawTangent,
}

pub fn tangent(input: impl Read, out: &mut impl Write) -> Result<u8, Failure> {
    each(input, out, |t: TangentInput| {
        Ok(tangent_apply(&t.g, &t.v.normalize()?))
    })
}

pub fn theta(input: impl Read, out: &mut impl Write) -> Result<u8, Failure> {
    each(input, out, |v: RawTangent| Ok(theta_map(&v.normalize()?)?))
}

pub fn theta_inv(input: impl Read, out: &mut impl Write) -> Result<u8, Failure> {
    each(input, out, |g: Psl2Element| Ok(theta_inverse(&g)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberInput {
    domain: DomainSpec,
    z: Option<HPoint>,
    g: Option<Psl2Element>,
    v: Option<RawTangent>,
}

#[derive(Serialize)]
struct MemberOutput {
    space: Space,
    membership: Membership,
}

pub fn member(input: impl Read, out: &mut impl Write, s: &Settings) -> Result<u8, Failure> {
    each(input, out, |m: MemberInput| {
        let point = match (m.z, m.g, m.v) {
            (Some(z), None, None) => SpacePoint::H2(z),
            (None, Some(g), None) => SpacePoint::Psl2(g),
            (None, None, Some(v)) => SpacePoint::T1(v.normalize()?),
            _ => {
                return Err(Failure::new(
                    "invalid_input",
                    "give exactly one of \"z\", \"g\" or \"v\"",
                    2,
                ))
            }
        };
        Ok(MemberOutput {
            space: point.space(),
            membership: point.membership(&m.domain, s.eps)?,
        })
    })
}

/// The `--domain` argument of `reduce`.
#[derive(Clone, Copy, Debug)]
pub enum ReduceDomain {
    StripA(f64),
    StripB(f64),
    Modular,
}

impl FromStr for ReduceDomain {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "modular" {
            return Ok(ReduceDomain::Modular);
        }
        let (kind, t) = s
            .split_once(':')
            .ok_or_else(|| format!("expected strip_a:T, strip_b:T or modular, got {s:?}"))?;
        let t: f64 = t.parse().map_err(|e| format!("strip width {t:?}: {e}"))?;
        if !(t.is_finite() && t > 0.0) {
            return Err(format!("strip width must be positive, got {t}"));
        }
        match kind {
            "strip_a" => Ok(ReduceDomain::StripA(t)),
            "strip_b" => Ok(ReduceDomain::StripB(t)),
            _ => Err(format!("unknown domain {kind:?}")),
        }
    }
}

pub fn reduce(
    input: impl Read,
    out: &mut impl Write,
    domain: ReduceDomain,
    max_steps: usize,
    s: &Settings,
) -> Result<u8, Failure> {
    each(input, out, |z: HPoint| {
        Ok(match domain {
            ReduceDomain::StripA(t) => reduce_cyclic_a(t, z)?,
            ReduceDomain::StripB(t) => reduce_cyclic_b(t, z)?,
            ReduceDomain::Modular => reduce_modular(z, max_steps, s.eps)?,
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum CheckKind {
    Coverage,
    Disjointness,
    Lift,
}

fn default_checks() -> Vec<CheckKind> {
    vec![CheckKind::Coverage, CheckKind::Disjointness]
}

/// A verification request. The group ball is either listed or generated
/// as `orbit_ball(generators, radius)` minus the identity.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyInput {
    space: Option<Space>,
    domain: DomainSpec,
    samples: usize,
    seed: Option<u64>,
    eps: Option<f64>,
    group_ball: Option<Vec<Psl2Element>>,
    generators: Option<Vec<Psl2Element>>,
    radius: Option<usize>,
    #[serde(default)]
    sample_box: SampleBox,
    #[serde(default = "default_checks")]
    checks: Vec<CheckKind>,
}

impl VerifyInput {
    fn config(&self, s: &Settings) -> Result<VerifyConfig, Failure> {
        let ball = match (&self.group_ball, &self.generators) {
            (Some(ball), None) if self.radius.is_none() => ball.clone(),
            (None, Some(gens)) => {
                let radius = self
                    .radius
                    .ok_or_else(|| Failure::config("\"generators\" needs a \"radius\""))?;
                VerifyConfig::strip_identity(fc::orbit_ball(gens, radius))
            }
            (None, None) => Vec::new(),
            _ => {
                return Err(Failure::config(
                    "give either \"group_ball\" or \"generators\" with \"radius\"",
                ))
            }
        };
        let seed = s.seed.or(self.seed).unwrap_or(0);
        let mut cfg = VerifyConfig::new(self.samples, seed, ball).with_box(self.sample_box);
        cfg.eps = if s.eps_explicit { s.eps } else { self.eps.unwrap_or(s.eps) };
        Ok(cfg)
    }
}

fn config_error(e: Error) -> Failure {
    match e {
        Error::InvalidConfig(_) | Error::WrongSpace { .. } => {
            Failure::new("invalid_config", e.to_string(), 2)
        }
        other => other.into(),
    }
}

pub fn verify(input: impl Read, out: &mut impl Write, s: &Settings) -> Result<u8, Failure> {
    let req: VerifyInput = single(input)?;
    let cfg = req.config(s)?;
    cfg.validate().map_err(config_error)?;
    if req.checks.is_empty() {
        return Err(Failure::config("\"checks\" is empty"));
    }
    let space = req.space.unwrap_or_else(|| req.domain.space());
    let mut report: Option<VerifyReport> = None;
    let mut add = |r: VerifyReport| match report.as_mut() {
        Some(acc) => acc.merge(r),
        None => report = Some(r),
    };
    for check in &req.checks {
        match check {
            CheckKind::Coverage => add(verify_coverage(space, &req.domain, &cfg).map_err(config_error)?),
            CheckKind::Disjointness => {
                add(verify_disjointness(space, &req.domain, &cfg).map_err(config_error)?)
            }
            CheckKind::Lift => {
                let base = req.domain.base().unwrap_or(&req.domain);
                add(verify_lift_consistency(base, &cfg).map_err(config_error)?)
            }
        }
    }
    let report = report.expect("at least one check ran");
    emit(out, &report)?;
    Ok(if report.passed() { 0 } else { 1 })
}

pub fn tessellate(input: impl Read, out: &mut impl Write, s: &Settings) -> Result<u8, Failure> {
    let job: TessellationJob = single(input)?;
    let tess = fc::tessellate(&job).map_err(config_error)?;
    match s.format.unwrap_or(Format::Svg) {
        Format::Svg => out
            .write_all(tess.to_svg().as_bytes())
            .map_err(Failure::io)?,
        Format::Json => emit(out, &tess)?,
    }
    Ok(if tess.is_empty() { 1 } else { 0 })
}

pub fn standard_form(input: impl Read, out: &mut impl Write) -> Result<u8, Failure> {
    each(input, out, |g: Psl2Element| Ok(fc::standard_form(&g)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitInput {
    generators: Vec<Psl2Element>,
    radius: usize,
}

#[derive(Serialize)]
struct OrbitOutput {
    size: usize,
    elements: Vec<OrbitElement>,
}

pub fn orbit_ball(input: impl Read, out: &mut impl Write) -> Result<u8, Failure> {
    each(input, out, |o: OrbitInput| {
        let elements = orbit_ball_words(&o.generators, o.radius);
        Ok(OrbitOutput {
            size: elements.len(),
            elements,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> Settings {
        Settings {
            eps: 1e-9,
            eps_explicit: false,
            seed: None,
            format: None,
            max_steps: None,
        }
    }

    fn run<F>(f: F, input: &'static str) -> (Result<u8, Failure>, String)
    where
        F: FnOnce(&'static [u8], &mut Vec<u8>) -> Result<u8, Failure>,
    {
        let mut out = Vec::new();
        let r = f(input.as_bytes(), &mut out);
        (r, String::from_utf8(out).unwrap())
    }

    #[test]
    fn reduce_domain_parsing() {
        assert!(matches!("modular".parse(), Ok(ReduceDomain::Modular)));
        assert!(matches!("strip_a:1.5".parse(), Ok(ReduceDomain::StripA(t)) if t == 1.5));
        assert!(matches!("strip_b:2".parse(), Ok(ReduceDomain::StripB(t)) if t == 2.0));
        assert!("strip_a:-1".parse::<ReduceDomain>().is_err());
        assert!("strip_c:1".parse::<ReduceDomain>().is_err());
        assert!("strip_a".parse::<ReduceDomain>().is_err());
    }

    #[test]
    fn streams_several_documents() {
        let (r, out) = run(nak, r#"{"m":[[1,0],[0,1]]} {"m":[[1,2],[0,1]]}"#);
        assert_eq!(r.unwrap(), 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], r#"{"x":0.0,"y":1.0,"theta":0.0}"#);
    }

    #[test]
    fn bad_matrix_is_input_error() {
        let (r, _) = run(classify, r#"{"m":[[1,1],[1,1]]}"#);
        let f = r.unwrap_err();
        assert_eq!((f.code, f.exit), ("invalid_input", 2));
        let (r, _) = run(classify, "{not json");
        assert_eq!(r.unwrap_err().code, "invalid_json");
    }

    #[test]
    fn member_needs_one_point() {
        let s = settings();
        let input = r#"{"domain":{"type":"modular"},"z":{"x":0,"y":2},"g":{"m":[[1,0],[0,1]]}}"#;
        let (r, _) = run(|i, o| member(i, o, &s), input);
        assert_eq!(r.unwrap_err().code, "invalid_input");
        let input = r#"{"domain":{"type":"t1lifted","base":{"type":"modular"}},"v":{"z":{"x":0,"y":2},"xi":{"re":0,"im":5}}}"#;
        let (r, out) = run(|i, o| member(i, o, &s), input);
        assert_eq!(r.unwrap(), 0);
        assert_eq!(out.trim(), r#"{"space":"t1","membership":"inside"}"#);
    }

    #[test]
    fn step_limit_exits_one() {
        let s = settings();
        let (r, _) = run(
            |i, o| reduce(i, o, ReduceDomain::Modular, 1, &s),
            r#"{"x":0.3,"y":0.01}"#,
        );
        let f = r.unwrap_err();
        assert_eq!((f.code, f.exit), ("step_limit_exceeded", 1));
    }

    #[test]
    fn verify_rejects_ambiguous_ball() {
        let s = settings();
        let input = r#"{"domain":{"type":"strip_a","t":1},"samples":10,
            "group_ball":[{"m":[[2,0],[0,0.5]]}],"generators":[{"m":[[2,0],[0,0.5]]}],"radius":1}"#;
        let (r, _) = run(|i, o| verify(i, o, &s), input);
        assert_eq!(r.unwrap_err().exit, 2);
    }

    #[test]
    fn flag_eps_beats_document_eps() {
        let mut s = settings();
        let req: VerifyInput = serde_json::from_str(
            r#"{"domain":{"type":"modular"},"samples":5,"eps":1e-6,"seed":3}"#,
        )
        .unwrap();
        assert_eq!(req.config(&s).unwrap().eps, 1e-6);
        s.eps_explicit = true;
        s.seed = Some(9);
        let cfg = req.config(&s).unwrap();
        assert_eq!((cfg.eps, cfg.seed), (1e-9, 9));
    }
}
