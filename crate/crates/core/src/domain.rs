//! Fundamental domains in `ℍ²`, `PSL(2,ℝ)` and `T¹ℍ²`.
//!
//! A [`DomainSpec`] is an algebraic description of an open set together with
//! its closure. Membership is three-valued: a point is `Boundary` when one of
//! the defining strict inequalities holds only up to the band `eps`, and
//! `Outside` as soon as one inequality fails by more than `eps`.
//!
//! Lifts follow the Iwasawa factorization: `Lifted { base }` is
//! `{bₓ a_{ln y} d_θ : x+iy ∈ base}`, which only depends on the point
//! `g·i = x + iy`, and `TangentLifted { base }` is `{(z, ξ) : z ∈ base}`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plane::{hyp_distance, mobius_apply, HPoint};
use crate::psl2::{
    generator_a, generator_b, nak_decompose, standard_form, Mat2, Psl2Element, StandardForm,
    StandardKind, EPS_EQ,
};
use crate::tangent::{UnitTangent, EPS_UNIT};

/// Default membership band.
pub const EPS_MEMBERSHIP: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    H2,
    Psl2,
    T1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

impl Membership {
    /// In the closure of the domain.
    pub fn in_closure(self) -> bool {
        !matches!(self, Membership::Outside)
    }

    /// Combines margins `f_k` of strict inequalities `f_k > 0`.
    pub fn from_margins<I: IntoIterator<Item = f64>>(margins: I, eps: f64) -> Membership {
        let mut boundary = false;
        for f in margins {
            // NaN counts as a failed inequality
            if !(f >= -eps) {
                return Membership::Outside;
            }
            if f <= eps {
                boundary = true;
            }
        }
        if boundary {
            Membership::Boundary
        } else {
            Membership::Inside
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DomainJson", into = "DomainJson")]
pub enum DomainSpec {
    /// `{1 < y < e^t}`, for `⟨a_t⟩`.
    StripA { t: f64 },
    /// `{0 < x < t}`, for `⟨b_t⟩`.
    StripB { t: f64 },
    /// `{|z| > 1, |Re z| < 1/2}`, for `PSL(2,ℤ)`.
    Modular,
    /// Points strictly closer to `center` than to any `γ·center` for the
    /// listed `γ`. A finite list gives an outer approximation of the
    /// Dirichlet region of the whole group.
    Dirichlet {
        center: HPoint,
        elements: Vec<Psl2Element>,
    },
    /// `h·inner` inside `PSL(2,ℝ)`.
    Conjugated {
        h: Psl2Element,
        inner: Box<DomainSpec>,
    },
    Lifted { base: Box<DomainSpec> },
    TangentLifted { base: Box<DomainSpec> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum DomainJson {
    StripA {
        t: f64,
    },
    StripB {
        t: f64,
    },
    Modular,
    Dirichlet {
        center: HPoint,
        elements: Vec<Psl2Element>,
    },
    Conjugated {
        h: Psl2Element,
        inner: Box<DomainSpec>,
    },
    Lifted {
        base: Box<DomainSpec>,
    },
    #[serde(rename = "t1lifted")]
    TangentLifted {
        base: Box<DomainSpec>,
    },
}

impl TryFrom<DomainJson> for DomainSpec {
    type Error = Error;

    fn try_from(j: DomainJson) -> Result<Self> {
        match j {
            DomainJson::StripA { t } => DomainSpec::strip_a(t),
            DomainJson::StripB { t } => DomainSpec::strip_b(t),
            DomainJson::Modular => Ok(DomainSpec::Modular),
            DomainJson::Dirichlet { center, elements } => {
                DomainSpec::dirichlet(center, elements, EPS_MEMBERSHIP)
            }
            DomainJson::Conjugated { h, inner } => conjugate_domain(h, *inner),
            DomainJson::Lifted { base } => DomainSpec::lifted(*base),
            DomainJson::TangentLifted { base } => DomainSpec::tangent_lifted(*base),
        }
    }
}

impl From<DomainSpec> for DomainJson {
    fn from(d: DomainSpec) -> Self {
        match d {
            DomainSpec::StripA { t } => DomainJson::StripA { t },
            DomainSpec::StripB { t } => DomainJson::StripB { t },
            DomainSpec::Modular => DomainJson::Modular,
            DomainSpec::Dirichlet { center, elements } => {
                DomainJson::Dirichlet { center, elements }
            }
            DomainSpec::Conjugated { h, inner } => DomainJson::Conjugated { h, inner },
            DomainSpec::Lifted { base } => DomainJson::Lifted { base },
            DomainSpec::TangentLifted { base } => DomainJson::TangentLifted { base },
        }
    }
}

fn positive_width(t: f64) -> Result<f64> {
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(Error::InvalidParameter(format!(
            "strip width must be positive, got {t}"
        )))
    }
}

fn expect_space(d: &DomainSpec, expected: Space) -> Result<()> {
    let found = d.space();
    if found == expected {
        Ok(())
    } else {
        Err(Error::WrongSpace { expected, found })
    }
}

impl DomainSpec {
    pub fn strip_a(t: f64) -> Result<Self> {
        positive_width(t).map(|t| DomainSpec::StripA { t })
    }

    pub fn strip_b(t: f64) -> Result<Self> {
        positive_width(t).map(|t| DomainSpec::StripB { t })
    }

    /// Rejects a center fixed (up to `eps` in hyperbolic distance) by a
    /// listed non-identity element.
    pub fn dirichlet(center: HPoint, elements: Vec<Psl2Element>, eps: f64) -> Result<Self> {
        for g in elements.iter().filter(|g| !g.is_identity(EPS_EQ)) {
            if hyp_distance(center, mobius_apply(g, center)) <= eps {
                return Err(Error::FixedCenter);
            }
        }
        Ok(DomainSpec::Dirichlet { center, elements })
    }

    pub fn lifted(base: DomainSpec) -> Result<Self> {
        expect_space(&base, Space::H2)?;
        Ok(DomainSpec::Lifted {
            base: Box::new(base),
        })
    }

    pub fn tangent_lifted(base: DomainSpec) -> Result<Self> {
        expect_space(&base, Space::H2)?;
        Ok(DomainSpec::TangentLifted {
            base: Box::new(base),
        })
    }

    pub fn space(&self) -> Space {
        match self {
            DomainSpec::StripA { .. }
            | DomainSpec::StripB { .. }
            | DomainSpec::Modular
            | DomainSpec::Dirichlet { .. } => Space::H2,
            DomainSpec::Conjugated { .. } | DomainSpec::Lifted { .. } => Space::Psl2,
            DomainSpec::TangentLifted { .. } => Space::T1,
        }
    }

    /// The `ℍ²` domain a lifted domain was built from.
    pub fn base(&self) -> Option<&DomainSpec> {
        match self {
            DomainSpec::Lifted { base } | DomainSpec::TangentLifted { base } => Some(base),
            _ => None,
        }
    }

    pub fn member_h2(&self, z: HPoint, eps: f64) -> Result<Membership> {
        let m = match self {
            DomainSpec::StripA { t } => {
                let ly = z.y.ln();
                Membership::from_margins([ly, t - ly], eps)
            }
            DomainSpec::StripB { t } => Membership::from_margins([z.x, t - z.x], eps),
            DomainSpec::Modular => Membership::from_margins([z.abs() - 1.0, 0.5 - z.x.abs()], eps),
            DomainSpec::Dirichlet { center, elements } => {
                let d0 = hyp_distance(z, *center);
                Membership::from_margins(
                    elements
                        .iter()
                        .filter(|g| !g.is_identity(EPS_EQ))
                        .map(|g| hyp_distance(z, mobius_apply(g, *center)) - d0),
                    eps,
                )
            }
            other => {
                return Err(Error::WrongSpace {
                    expected: Space::H2,
                    found: other.space(),
                })
            }
        };
        Ok(m)
    }

    pub fn member_psl2(&self, g: &Psl2Element, eps: f64) -> Result<Membership> {
        match self {
            DomainSpec::Lifted { base } => {
                let n = nak_decompose(g);
                base.member_h2(HPoint { x: n.x, y: n.y }, eps)
            }
            DomainSpec::Conjugated { h, inner } => inner.member_psl2(&h.left_div(g), eps),
            other => Err(Error::WrongSpace {
                expected: Space::Psl2,
                found: other.space(),
            }),
        }
    }

    pub fn member_t1(&self, v: &UnitTangent, eps: f64) -> Result<Membership> {
        let DomainSpec::TangentLifted { base } = self else {
            return Err(Error::WrongSpace {
                expected: Space::T1,
                found: self.space(),
            });
        };
        if (v.norm() - 1.0).abs() > EPS_UNIT {
            return Err(Error::NotUnitTangent(v.norm()));
        }
        base.member_h2(v.z(), eps)
    }
}

/// The modular lift `𝓕 ⊂ PSL(2,ℝ)` evaluated straight from the matrix
/// entries: `2|ac+bd| < c²+d²` and `(ac+bd)² + 1 > (c²+d²)²`, each
/// inequality normalized by the matching power of `c²+d²`.
pub fn modular_lift_direct(g: &Psl2Element, eps: f64) -> Membership {
    let Mat2 { a, b, c, d } = *g.rep();
    let n = c * c + d * d;
    let s = a * c + b * d;
    Membership::from_margins(
        [
            (n - 2.0 * s.abs()) / (2.0 * n),
            (s * s + 1.0 - n * n) / (n * n),
        ],
        eps,
    )
}

/// `h·inner`; `g ∈ h𝓕 ⇔ h⁻¹g ∈ 𝓕`.
pub fn conjugate_domain(h: Psl2Element, inner: DomainSpec) -> Result<DomainSpec> {
    expect_space(&inner, Space::Psl2)?;
    Ok(DomainSpec::Conjugated {
        h,
        inner: Box::new(inner),
    })
}

/// A fundamental domain in `PSL(2,ℝ)` for `⟨g⟩`, `g` hyperbolic or
/// parabolic: with `g = h⁻¹ s_t h` this is `h⁻¹·𝓕_{|t|}` (resp. `𝓔_{|t|}`).
pub fn domain_for_cyclic(g: &Psl2Element) -> Result<(DomainSpec, StandardForm)> {
    let sf = standard_form(g)?;
    let base = match sf.kind {
        StandardKind::Hyperbolic => DomainSpec::strip_a(sf.t.abs())?,
        StandardKind::Parabolic => DomainSpec::strip_b(sf.t.abs())?,
    };
    let dom = conjugate_domain(sf.h.inverse(), DomainSpec::lifted(base)?)?;
    Ok((dom, sf))
}

/// Result of reducing a point into the closure of a domain:
/// `z = gamma · reduced`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Reduction {
    pub gamma: Psl2Element,
    pub reduced: HPoint,
    pub steps: usize,
}

/// Reduction into `{1 ≤ y ≤ e^t}` by `a_{jt}`, `j = ⌊ln y / t⌋`.
pub fn reduce_cyclic_a(t: f64, z: HPoint) -> Result<Reduction> {
    let t = positive_width(t)?;
    let mut j = (z.y.ln() / t).floor();
    let scaled = |j: f64| {
        let s = (-j * t).exp();
        HPoint {
            x: z.x * s,
            y: z.y * s,
        }
    };
    let mut reduced = scaled(j);
    // a rounding slip of ln/exp can leave the point one period off
    let top = t.exp();
    if reduced.y < 1.0 {
        let alt = scaled(j - 1.0);
        if alt.y <= top {
            j -= 1.0;
            reduced = alt;
        }
    } else if reduced.y > top {
        let alt = scaled(j + 1.0);
        if alt.y >= 1.0 {
            j += 1.0;
            reduced = alt;
        }
    }
    Ok(Reduction {
        gamma: generator_a(j * t),
        reduced,
        steps: usize::from(j != 0.0),
    })
}

/// Reduction into `{0 ≤ x ≤ t}` by `b_{jt}`, `j = ⌊x / t⌋`.
pub fn reduce_cyclic_b(t: f64, z: HPoint) -> Result<Reduction> {
    let t = positive_width(t)?;
    let j = (z.x / t).floor();
    let reduced = HPoint {
        x: z.x - j * t,
        y: z.y,
    };
    Ok(Reduction {
        gamma: generator_b(j * t),
        reduced,
        steps: usize::from(j != 0.0),
    })
}

fn s_element() -> Psl2Element {
    Psl2Element::from_mat2(Mat2 {
        a: 0.0,
        b: -1.0,
        c: 1.0,
        d: 0.0,
    })
}

/// Reduction into the closure of the modular domain by translations `b_n`
/// (`n` = `x` rounded half-to-even) and inversions `S: z ↦ −1/z` while
/// `|z| < 1 − eps`. Every translation and inversion counts as one step.
pub fn reduce_modular(z: HPoint, max_steps: usize, eps: f64) -> Result<Reduction> {
    if max_steps == 0 {
        return Err(Error::InvalidParameter("max_steps must be at least 1".into()));
    }
    let s = s_element();
    let mut cur = z;
    let mut gamma = Psl2Element::identity();
    let mut steps = 0;
    loop {
        let n = cur.x.round_ties_even();
        if n != 0.0 {
            if steps == max_steps {
                return Err(Error::StepLimitExceeded(max_steps));
            }
            cur.x -= n;
            gamma = gamma.mul(&generator_b(n));
            steps += 1;
        }
        let r2 = cur.x * cur.x + cur.y * cur.y;
        if r2.sqrt() < 1.0 - eps {
            if steps == max_steps {
                return Err(Error::StepLimitExceeded(max_steps));
            }
            cur = HPoint {
                x: -cur.x / r2,
                y: cur.y / r2,
            };
            gamma = gamma.mul(&s);
            steps += 1;
            continue;
        }
        break;
    }
    Ok(Reduction {
        gamma,
        reduced: cur,
        steps,
    })
}

/// One letter of a word: generator `generator` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// An element of an orbit ball with the word that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitElement {
    #[serde(serialize_with = "serialize_word")]
    pub word: Vec<Letter>,
    #[serde(flatten)]
    pub element: Psl2Element,
}

fn serialize_word<S: serde::Serializer>(w: &[Letter], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&WordDisplay(w))
}

/// Renders a word as `g0 g1^-1 …`, or `e` when empty.
pub struct WordDisplay<'a>(pub &'a [Letter]);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{}", l.generator)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Quantized-entry index for projective deduplication. Cells are
/// `1e-7 · 2^k` wide where `2^k ≥ max(1, ‖G‖∞)`; lookups probe
/// neighbouring cells, neighbouring scales and both signs, then confirm
/// with [`Psl2Element::approx_eq`].
#[derive(Default)]
struct ProjectiveIndex {
    cells: HashMap<(i32, [i64; 4]), Vec<usize>>,
}

const GRID: f64 = 1e-7;

fn scale_exponent(m: &Mat2) -> i32 {
    m.norm_inf().max(1.0).log2().ceil() as i32
}

fn cell(m: &Mat2, exp: i32) -> [i64; 4] {
    let q = GRID * 2f64.powi(exp);
    m.entries().map(|v| (v / q).round() as i64)
}

impl ProjectiveIndex {
    fn insert(&mut self, m: &Mat2, idx: usize) {
        let e = scale_exponent(m);
        self.cells.entry((e, cell(m, e))).or_default().push(idx);
    }

    fn find(&self, g: &Psl2Element, items: &[OrbitElement]) -> Option<usize> {
        let base = scale_exponent(g.rep());
        for m in [*g.rep(), g.rep().neg()] {
            for e in base - 1..=base + 1 {
                let c = cell(&m, e);
                for off in 0..81 {
                    let mut k = c;
                    let mut o = off;
                    for slot in k.iter_mut() {
                        *slot += (o % 3) as i64 - 1;
                        o /= 3;
                    }
                    if let Some(hits) = self.cells.get(&(e, k)) {
                        if let Some(&i) = hits.iter().find(|&&i| items[i].element.approx_eq(g, EPS_EQ))
                        {
                            return Some(i);
                        }
                    }
                }
            }
        }
        None
    }
}

/// All distinct products of at most `radius` letters from the generators
/// and their inverses, in breadth-first order (letters ordered
/// `g0, g0⁻¹, g1, g1⁻¹, …`). The identity comes first.
pub fn orbit_ball_words(generators: &[Psl2Element], radius: usize) -> Vec<OrbitElement> {
    let letters: Vec<(Letter, Psl2Element)> = generators
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            [
                (
                    Letter {
                        generator: i,
                        inverse: false,
                    },
                    *g,
                ),
                (
                    Letter {
                        generator: i,
                        inverse: true,
                    },
                    g.inverse(),
                ),
            ]
        })
        .collect();
    let mut items = vec![OrbitElement {
        word: Vec::new(),
        element: Psl2Element::identity(),
    }];
    let mut index = ProjectiveIndex::default();
    index.insert(items[0].element.rep(), 0);
    let mut frontier = 0..1;
    for _ in 0..radius {
        let start = items.len();
        for i in frontier.clone() {
            for (letter, g) in &letters {
                let cand = items[i].element.mul(g);
                if index.find(&cand, &items).is_none() {
                    let mut word = items[i].word.clone();
                    word.push(*letter);
                    index.insert(cand.rep(), items.len());
                    items.push(OrbitElement {
                        word,
                        element: cand,
                    });
                }
            }
        }
        if items.len() == start {
            break;
        }
        frontier = start..items.len();
    }
    items
}

pub fn orbit_ball(generators: &[Psl2Element], radius: usize) -> Vec<Psl2Element> {
    orbit_ball_words(generators, radius)
        .into_iter()
        .map(|o| o.element)
        .collect()
}
