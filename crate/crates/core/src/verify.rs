//! Seeded, sampling-based checks of the two fundamental-domain axioms:
//!
//! * coverage: every point has a translate `ρ(γ⁻¹, p)` in the closure,
//! * disjointness: no `γ ≠ e` moves an interior point to an interior point.
//!
//! Samples are drawn as `x` uniform, `ln y` uniform and `θ` uniform from
//! the [`SampleBox`], using ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`; each sample consumes exactly three `f64`
//! draws in the order `x, ln y, θ`, each `lo + (hi − lo)·u` with `u` from
//! `Rng::gen::<f64>()`. Points of `PSL(2,ℝ)` are `nak_compose(x, y, θ)` and
//! points of `T¹ℍ²` are `(x + iy, i·y·e^{iθ})`. Samples are evaluated in
//! parallel and merged in sample order, so reports only depend on the
//! configuration.
//!
//! Sampling can only falsify the axioms. Where the domain has an exact
//! reduction (strips, modular domain and their lifts) and the group ball
//! generates exactly the matching group, coverage uses the reduction and
//! the report says `exact-reduction`.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{
    modular_lift_direct, reduce_cyclic_a, reduce_cyclic_b, reduce_modular, DomainSpec,
    Membership, Space, EPS_MEMBERSHIP,
};
use crate::error::{Error, Result};
use crate::plane::{mobius_apply, HPoint};
use crate::psl2::{nak_compose, nak_decompose, NakCoords, Psl2Element, EPS_EQ};
use crate::tangent::{tangent_apply, theta_map, UnitTangent};

/// Witnesses kept per report.
pub const MAX_WITNESSES: usize = 10;
const MODULAR_REDUCTION_STEPS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub x: [f64; 2],
    pub log_y: [f64; 2],
    pub theta: [f64; 2],
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox {
            x: [-10.0, 10.0],
            log_y: [-(1e3f64.ln()), 1e3f64.ln()],
            theta: [0.0, TAU],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// Finite part of `Γ ∖ {e}`.
    #[serde(default)]
    pub group_ball: Vec<Psl2Element>,
    #[serde(default)]
    pub sample_box: SampleBox,
}

fn default_eps() -> f64 {
    EPS_MEMBERSHIP
}

impl VerifyConfig {
    pub fn new(samples: usize, seed: u64, group_ball: Vec<Psl2Element>) -> Self {
        VerifyConfig {
            samples,
            seed,
            eps: EPS_MEMBERSHIP,
            group_ball,
            sample_box: SampleBox::default(),
        }
    }

    pub fn with_box(mut self, sample_box: SampleBox) -> Self {
        self.sample_box = sample_box;
        self
    }

    /// Drops identity elements, e.g. from an [`orbit_ball`](crate::orbit_ball).
    pub fn strip_identity(ball: Vec<Psl2Element>) -> Vec<Psl2Element> {
        ball.into_iter().filter(|g| !g.is_identity(EPS_EQ)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidConfig("samples must be positive".into()));
        }
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return Err(Error::InvalidConfig(format!("bad eps {}", self.eps)));
        }
        if self.group_ball.iter().any(|g| g.is_identity(EPS_EQ)) {
            return Err(Error::InvalidConfig("group_ball contains the identity".into()));
        }
        let b = &self.sample_box;
        for (name, [lo, hi]) in [("x", b.x), ("log_y", b.log_y), ("theta", b.theta)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidConfig(format!(
                    "sample_box.{name} range [{lo}, {hi}] is degenerate"
                )));
            }
        }
        Ok(())
    }
}

/// A point of one of the three spaces.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpacePoint {
    H2(HPoint),
    Psl2(Psl2Element),
    T1(UnitTangent),
}

impl SpacePoint {
    pub fn space(&self) -> Space {
        match self {
            SpacePoint::H2(_) => Space::H2,
            SpacePoint::Psl2(_) => Space::Psl2,
            SpacePoint::T1(_) => Space::T1,
        }
    }

    /// `ρ(g, p)`.
    pub fn act(&self, g: &Psl2Element) -> SpacePoint {
        match self {
            SpacePoint::H2(z) => SpacePoint::H2(mobius_apply(g, *z)),
            SpacePoint::Psl2(h) => SpacePoint::Psl2(g.mul(h)),
            SpacePoint::T1(v) => SpacePoint::T1(tangent_apply(g, v)),
        }
    }

    /// The point of `ℍ²` underneath: `z`, `g·i`, or the foot of `(z, ξ)`.
    pub fn base_point(&self) -> HPoint {
        match self {
            SpacePoint::H2(z) => *z,
            SpacePoint::Psl2(g) => {
                let n = nak_decompose(g);
                HPoint { x: n.x, y: n.y }
            }
            SpacePoint::T1(v) => v.z(),
        }
    }

    pub fn membership(&self, domain: &DomainSpec, eps: f64) -> Result<Membership> {
        match self {
            SpacePoint::H2(z) => domain.member_h2(*z, eps),
            SpacePoint::Psl2(g) => domain.member_psl2(g, eps),
            SpacePoint::T1(v) => domain.member_t1(v, eps),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactReduction,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Coverage,
    Disjointness,
    /// Disjointness of `g₁F` and `g₁γF`, tested through the left translate.
    Translate,
    LiftConsistency,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub check: Check,
    /// Index of the sample in the drawn stream.
    pub index: usize,
    pub point: SpacePoint,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<Psl2Element>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub translate: Option<Psl2Element>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub image: Option<SpacePoint>,
    /// Membership of each route, for lift-consistency mismatches.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub routes: Vec<Membership>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub space: Space,
    pub domain: DomainSpec,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coverage_method: Option<Method>,
    pub coverage_checked: usize,
    pub coverage_failures: usize,
    pub disjointness_checked: usize,
    pub disjointness_failures: usize,
    pub boundary_skipped: usize,
    /// Translate pairs too ill-conditioned to decide in double precision.
    pub translate_skipped: usize,
    pub lift_checked: usize,
    pub lift_mismatches: usize,
    pub witnesses: Vec<Witness>,
    pub config: VerifyConfig,
}

impl VerifyReport {
    fn empty(space: Space, domain: &DomainSpec, cfg: &VerifyConfig) -> Self {
        VerifyReport {
            space,
            domain: domain.clone(),
            coverage_method: None,
            coverage_checked: 0,
            coverage_failures: 0,
            disjointness_checked: 0,
            disjointness_failures: 0,
            boundary_skipped: 0,
            translate_skipped: 0,
            lift_checked: 0,
            lift_mismatches: 0,
            witnesses: Vec::new(),
            config: cfg.clone(),
        }
    }

    pub fn failures(&self) -> usize {
        self.coverage_failures + self.disjointness_failures + self.lift_mismatches
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Adds the counts and witnesses of `other` (witnesses stay capped).
    pub fn merge(&mut self, other: VerifyReport) {
        self.coverage_method = self.coverage_method.or(other.coverage_method);
        self.coverage_checked += other.coverage_checked;
        self.coverage_failures += other.coverage_failures;
        self.disjointness_checked += other.disjointness_checked;
        self.disjointness_failures += other.disjointness_failures;
        self.boundary_skipped += other.boundary_skipped;
        self.translate_skipped += other.translate_skipped;
        self.lift_checked += other.lift_checked;
        self.lift_mismatches += other.lift_mismatches;
        let room = MAX_WITNESSES.saturating_sub(self.witnesses.len());
        self.witnesses.extend(other.witnesses.into_iter().take(room));
    }

    fn push_witnesses(&mut self, ws: impl IntoIterator<Item = Witness>) {
        let room = MAX_WITNESSES.saturating_sub(self.witnesses.len());
        self.witnesses.extend(ws.into_iter().take(room));
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    bx: SampleBox,
}

impl Sampler {
    fn new(cfg: &VerifyConfig) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            bx: cfg.sample_box,
        }
    }

    fn uniform(&mut self, [lo, hi]: [f64; 2]) -> f64 {
        let u: f64 = self.rng.gen();
        lo + (hi - lo) * u
    }

    fn coords(&mut self) -> (f64, f64, f64) {
        let x = self.uniform(self.bx.x);
        let y = self.uniform(self.bx.log_y).exp();
        let theta = self.uniform(self.bx.theta);
        (x, y, theta)
    }

    fn draw(&mut self, space: Space) -> Result<SpacePoint> {
        let (x, y, theta) = self.coords();
        let z = HPoint::new(x, y)?;
        Ok(match space {
            Space::H2 => SpacePoint::H2(z),
            Space::Psl2 => SpacePoint::Psl2(nak_compose(&NakCoords::new(x, y, theta)?)?),
            Space::T1 => SpacePoint::T1(UnitTangent::from_angle(z, theta)),
        })
    }
}

fn check_space(space: Space, domain: &DomainSpec) -> Result<()> {
    if domain.space() == space {
        Ok(())
    } else {
        Err(Error::WrongSpace {
            expected: space,
            found: domain.space(),
        })
    }
}

/// Exact reduction into the closure of a strip or modular base, valid when
/// the ball lies in the matching group and contains its generators.
#[derive(Clone, Copy, Debug)]
enum ExactReducer {
    StripA(f64),
    StripB(f64),
    Modular,
}

fn near_integer(v: f64, tol: f64) -> bool {
    (v - v.round()).abs() <= tol
}

impl ExactReducer {
    fn detect(domain: &DomainSpec, ball: &[Psl2Element]) -> Option<Self> {
        let base = match domain {
            DomainSpec::Lifted { base } | DomainSpec::TangentLifted { base } => base.as_ref(),
            other => other,
        };
        let tol = 1e-9;
        match *base {
            DomainSpec::StripA { t } => {
                let power = |g: &Psl2Element| {
                    let m = g.rep();
                    if m.b.abs() > tol || m.c.abs() > tol {
                        return None;
                    }
                    let k = 2.0 * m.a.abs().ln() / t;
                    near_integer(k, 1e-6).then(|| k.round() as i64)
                };
                let powers: Option<Vec<i64>> = ball.iter().map(power).collect();
                let powers = powers?;
                powers
                    .iter()
                    .any(|k| k.abs() == 1)
                    .then_some(ExactReducer::StripA(t))
            }
            DomainSpec::StripB { t } => {
                let power = |g: &Psl2Element| {
                    let m = g.rep();
                    if (m.a - 1.0).abs() > tol || (m.d - 1.0).abs() > tol || m.c.abs() > tol {
                        return None;
                    }
                    let k = m.b / t;
                    near_integer(k, 1e-6).then(|| k.round() as i64)
                };
                let powers: Option<Vec<i64>> = ball.iter().map(power).collect();
                powers?
                    .iter()
                    .any(|k| k.abs() == 1)
                    .then_some(ExactReducer::StripB(t))
            }
            DomainSpec::Modular => {
                let integral = ball.iter().all(|g| {
                    g.rep()
                        .entries()
                        .iter()
                        .all(|v| near_integer(*v, tol * v.abs().max(1.0)))
                });
                let s = Psl2Element::new(0.0, -1.0, 1.0, 0.0).ok()?;
                let has = |h: &Psl2Element| ball.iter().any(|g| g == h);
                let t1 = crate::psl2::generator_b(1.0);
                (integral && has(&s) && (has(&t1) || has(&t1.inverse())))
                    .then_some(ExactReducer::Modular)
            }
            _ => None,
        }
    }

    fn gamma(&self, z: HPoint, eps: f64) -> Option<Psl2Element> {
        let r = match *self {
            ExactReducer::StripA(t) => reduce_cyclic_a(t, z),
            ExactReducer::StripB(t) => reduce_cyclic_b(t, z),
            ExactReducer::Modular => reduce_modular(z, MODULAR_REDUCTION_STEPS, eps),
        };
        r.ok().map(|r| r.gamma)
    }
}

struct Coverage<'a> {
    domain: &'a DomainSpec,
    eps: f64,
    exact: Option<ExactReducer>,
    /// `γ⁻¹` for `γ ∈ {e} ∪ ball`.
    inverses: Vec<Psl2Element>,
}

impl<'a> Coverage<'a> {
    fn new(domain: &'a DomainSpec, cfg: &VerifyConfig) -> Self {
        Coverage {
            domain,
            eps: cfg.eps,
            exact: ExactReducer::detect(domain, &cfg.group_ball),
            inverses: std::iter::once(Psl2Element::identity())
                .chain(cfg.group_ball.iter().map(|g| g.inverse()))
                .collect(),
        }
    }

    fn covered(&self, p: &SpacePoint) -> Result<bool> {
        if let Some(gamma) = self.exact.and_then(|r| r.gamma(p.base_point(), self.eps)) {
            if p.act(&gamma.inverse()).membership(self.domain, self.eps)?.in_closure() {
                return Ok(true);
            }
        }
        for inv in &self.inverses {
            if p.act(inv).membership(self.domain, self.eps)?.in_closure() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

pub fn verify_coverage(space: Space, domain: &DomainSpec, cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    check_space(space, domain)?;
    let mut sampler = Sampler::new(cfg);
    let points = (0..cfg.samples)
        .map(|_| sampler.draw(space))
        .collect::<Result<Vec<_>>>()?;
    let cov = Coverage::new(domain, cfg);
    let outcomes = points
        .par_iter()
        .map(|p| cov.covered(p))
        .collect::<Result<Vec<bool>>>()?;

    let mut report = VerifyReport::empty(space, domain, cfg);
    report.coverage_method = Some(if cov.exact.is_some() {
        Method::ExactReduction
    } else {
        Method::Sampled
    });
    report.coverage_checked = points.len();
    let failing: Vec<Witness> = outcomes
        .iter()
        .zip(&points)
        .enumerate()
        .filter(|(_, (ok, _))| !**ok)
        .map(|(index, (_, p))| Witness {
            check: Check::Coverage,
            index,
            point: *p,
            gamma: None,
            translate: None,
            image: None,
            routes: Vec::new(),
        })
        .collect();
    report.coverage_failures = failing.len();
    report.push_witnesses(failing);
    Ok(report)
}

/// Draws points until `cfg.samples` of them are Inside. Returns
/// `(stream index, point)` pairs and the number of Boundary draws.
fn interior_samples(
    space: Space,
    domain: &DomainSpec,
    cfg: &VerifyConfig,
) -> Result<(Vec<(usize, SpacePoint)>, usize)> {
    let mut sampler = Sampler::new(cfg);
    let mut found = Vec::with_capacity(cfg.samples);
    let mut boundary = 0;
    let cap = cfg.samples.saturating_mul(10_000);
    let mut attempts = 0;
    while found.len() < cfg.samples {
        let exhausted = attempts >= cap
            || (attempts >= 100_000 && found.len().saturating_mul(10_000) < attempts);
        if exhausted {
            return Err(Error::SamplingExhausted {
                found: found.len(),
                wanted: cfg.samples,
                attempts,
            });
        }
        let p = sampler.draw(space)?;
        match p.membership(domain, cfg.eps)? {
            Membership::Inside => found.push((attempts, p)),
            Membership::Boundary => boundary += 1,
            Membership::Outside => {}
        }
        attempts += 1;
    }
    Ok((found, boundary))
}

fn disjoint_failures(
    domain: &DomainSpec,
    cfg: &VerifyConfig,
    index: usize,
    p: &SpacePoint,
    translate: Option<&Psl2Element>,
) -> Result<(Vec<Witness>, usize)> {
    let mut out = Vec::new();
    let mut skipped = 0;
    for gamma in &cfg.group_ball {
        let image = p.act(gamma);
        if image.membership(domain, cfg.eps)? == Membership::Inside {
            out.push(Witness {
                check: Check::Disjointness,
                index,
                point: *p,
                gamma: Some(*gamma),
                translate: None,
                image: Some(image),
                routes: Vec::new(),
            });
        }
        if let Some(g1) = translate {
            if !translate_decidable(g1, gamma) {
                skipped += 1;
                continue;
            }
            // ρ(g₁γ, p) must avoid g₁F
            let moved = image.act(g1);
            if moved.act(&g1.inverse()).membership(domain, cfg.eps)? == Membership::Inside {
                out.push(Witness {
                    check: Check::Translate,
                    index,
                    point: *p,
                    gamma: Some(*gamma),
                    translate: Some(*g1),
                    image: Some(moved),
                    routes: Vec::new(),
                });
            }
        }
    }
    Ok((out, skipped))
}

/// Largest relative error accepted when undoing `g₁` in the translate check.
const TRANSLATE_TOL: f64 = 1e-10;

/// Recovering `γ·p` from `g₁γ·p` loses about `ulp·‖g₁‖²‖γ‖²` relative
/// accuracy; beyond [`TRANSLATE_TOL`] the verdict would be rounding noise.
fn translate_decidable(g1: &Psl2Element, gamma: &Psl2Element) -> bool {
    let k = g1.rep().norm_inf() * gamma.rep().norm_inf();
    f64::EPSILON * k * k <= TRANSLATE_TOL
}

pub fn verify_disjointness(
    space: Space,
    domain: &DomainSpec,
    cfg: &VerifyConfig,
) -> Result<VerifyReport> {
    cfg.validate()?;
    check_space(space, domain)?;
    let (points, boundary) = interior_samples(space, domain, cfg)?;
    let ball = &cfg.group_ball;
    let per_sample = points
        .par_iter()
        .enumerate()
        .map(|(k, (index, p))| {
            let translate = (!ball.is_empty()).then(|| &ball[k % ball.len()]);
            disjoint_failures(domain, cfg, *index, p, translate)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = VerifyReport::empty(space, domain, cfg);
    report.boundary_skipped = boundary;
    report.translate_skipped = per_sample.iter().map(|(_, skipped)| skipped).sum();
    report.disjointness_checked = points.len() * ball.len() * 2 - report.translate_skipped;
    let failing: Vec<Witness> = per_sample.into_iter().flat_map(|(w, _)| w).collect();
    report.disjointness_failures = failing.len();
    report.push_witnesses(failing);
    Ok(report)
}

/// Memberships of one sample along independent routes.
fn lift_routes(base: &DomainSpec, x: f64, y: f64, theta: f64, eps: f64) -> Result<[(SpacePoint, Vec<Membership>); 2]> {
    let lifted = DomainSpec::lifted(base.clone())?;
    let t1 = DomainSpec::tangent_lifted(base.clone())?;
    let g = nak_compose(&NakCoords::new(x, y, theta)?)?;
    let mut psl = vec![
        lifted.member_psl2(&g, eps)?,
        base.member_h2(mobius_apply(&g, HPoint::I), eps)?,
    ];
    if matches!(base, DomainSpec::Modular) {
        psl.push(modular_lift_direct(&g, eps));
    }
    let v = UnitTangent::from_angle(HPoint::new(x, y)?, theta);
    let tan = vec![
        t1.member_t1(&v, eps)?,
        base.member_h2(v.z(), eps)?,
        lifted.member_psl2(&theta_map(&v)?, eps)?,
    ];
    Ok([(SpacePoint::Psl2(g), psl), (SpacePoint::T1(v), tan)])
}

enum RouteOutcome {
    Agree,
    Boundary,
    Mismatch,
}

fn compare_routes(routes: &[Membership]) -> RouteOutcome {
    if routes.contains(&Membership::Boundary) {
        RouteOutcome::Boundary
    } else if routes.windows(2).all(|w| w[0] == w[1]) {
        RouteOutcome::Agree
    } else {
        RouteOutcome::Mismatch
    }
}

/// Checks that the lifts of an `ℍ²` domain to `PSL(2,ℝ)` and `T¹ℍ²` agree
/// with the base domain: NAK route vs Möbius route (plus the closed-form
/// matrix inequalities for the modular domain), and `T¹` membership vs the
/// foot point vs `Θ`.
pub fn verify_lift_consistency(base: &DomainSpec, cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    check_space(Space::H2, base)?;
    let mut sampler = Sampler::new(cfg);
    let coords: Vec<(f64, f64, f64)> = (0..cfg.samples).map(|_| sampler.coords()).collect();
    let results = coords
        .par_iter()
        .map(|&(x, y, th)| lift_routes(base, x, y, th, cfg.eps))
        .collect::<Result<Vec<_>>>()?;

    let mut report = VerifyReport::empty(Space::H2, base, cfg);
    let mut failing = Vec::new();
    for (index, pair) in results.into_iter().enumerate() {
        for (point, routes) in pair {
            match compare_routes(&routes) {
                RouteOutcome::Boundary => report.boundary_skipped += 1,
                RouteOutcome::Agree => report.lift_checked += 1,
                RouteOutcome::Mismatch => {
                    report.lift_checked += 1;
                    report.lift_mismatches += 1;
                    failing.push(Witness {
                        check: Check::LiftConsistency,
                        index,
                        point,
                        gamma: None,
                        translate: None,
                        image: None,
                        routes,
                    });
                }
            }
        }
    }
    report.push_witnesses(failing);
    Ok(report)
}

impl Witness {
    /// Re-evaluates the violation from the witness data alone.
    pub fn replay(&self, domain: &DomainSpec, cfg: &VerifyConfig) -> Result<bool> {
        let eps = cfg.eps;
        match self.check {
            Check::Coverage => Ok(!Coverage::new(domain, cfg).covered(&self.point)?),
            Check::Disjointness => {
                let Some(gamma) = self.gamma else {
                    return Ok(false);
                };
                Ok(self.point.membership(domain, eps)? == Membership::Inside
                    && self.point.act(&gamma).membership(domain, eps)? == Membership::Inside)
            }
            Check::Translate => {
                let (Some(gamma), Some(g1)) = (self.gamma, self.translate) else {
                    return Ok(false);
                };
                let moved = self.point.act(&gamma).act(&g1);
                Ok(self.point.membership(domain, eps)? == Membership::Inside
                    && moved.act(&g1.inverse()).membership(domain, eps)? == Membership::Inside)
            }
            Check::LiftConsistency => {
                let base = domain.base().unwrap_or(domain);
                let z = self.point.base_point();
                let theta = match self.point {
                    SpacePoint::Psl2(g) => nak_decompose(&g).theta,
                    SpacePoint::T1(v) => (-v.xi().re).atan2(v.xi().im),
                    SpacePoint::H2(_) => 0.0,
                };
                let routes = lift_routes(base, z.x, z.y, theta, eps)?;
                let idx = usize::from(matches!(self.point, SpacePoint::T1(_)));
                Ok(matches!(compare_routes(&routes[idx].1), RouteOutcome::Mismatch))
            }
        }
    }
}
