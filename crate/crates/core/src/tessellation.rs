//! Images of a polygonal fundamental domain under a ball of group elements,
//! exported as SVG or JSON.
//!
//! Unbounded domains are truncated well outside the viewport (`cut_factor`
//! times its size) before mapping, and every image is clipped to the
//! viewport. Edges are carried as three points (start, interior, end):
//! Möbius maps send lines and circles to lines and circles, so the image
//! edge is the line or circle through the three mapped points. Geodesic
//! edges keep the `vseg`/`carc` encoding of [`GeodesicArc`]; the horocyclic
//! edges of the strips (`y = const`) become `seg`/`arc`.
//!
//! [`GeodesicArc`]: crate::plane::GeodesicArc

use std::f64::consts::TAU;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{orbit_ball_words, DomainSpec, WordDisplay};
use crate::error::{Error, Result};
use crate::plane::{mobius_apply, HPoint};
use crate::psl2::Psl2Element;

/// Euclidean spacing of arc samples.
const ARC_STEP: f64 = 0.05;
const MIN_ARC_POINTS: usize = 8;
const MAX_ARC_POINTS: usize = 20_000;
const SVG_WIDTH: f64 = 800.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Viewport {
    fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.x_min >= self.x_max || self.y_min >= self.y_max || self.y_min <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "viewport {self:?} must be non-degenerate with y_min > 0"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YScale {
    #[default]
    Linear,
    Log,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TessellationJob {
    pub base: DomainSpec,
    #[serde(default)]
    pub generators: Vec<Psl2Element>,
    #[serde(default)]
    pub word_radius: usize,
    pub viewport: Viewport,
    #[serde(default)]
    pub y_scale: YScale,
    #[serde(default = "default_cut")]
    pub cut_factor: f64,
}

fn default_cut() -> f64 {
    1000.0
}

impl TessellationJob {
    pub fn new(base: DomainSpec, generators: Vec<Psl2Element>, word_radius: usize, viewport: Viewport) -> Self {
        TessellationJob {
            base,
            generators,
            word_radius,
            viewport,
            y_scale: YScale::Linear,
            cut_factor: default_cut(),
        }
    }
}

/// A line segment or a circular arc through `mid`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Edge {
    Segment {
        p: HPoint,
        q: HPoint,
    },
    Arc {
        p: HPoint,
        q: HPoint,
        mid: HPoint,
        cx: f64,
        cy: f64,
        r: f64,
    },
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum EdgeJson {
    Vseg { p: HPoint, q: HPoint },
    Seg { p: HPoint, q: HPoint },
    Carc { p: HPoint, q: HPoint, cx: f64, r: f64 },
    Arc { p: HPoint, q: HPoint, mid: HPoint, cx: f64, cy: f64, r: f64 },
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = match *self {
            Edge::Segment { p, q } if (p.x - q.x).abs() <= 1e-12 * p.x.abs().max(1.0) => {
                EdgeJson::Vseg { p, q }
            }
            Edge::Segment { p, q } => EdgeJson::Seg { p, q },
            Edge::Arc { p, q, cx, cy, r, .. } if cy.abs() <= 1e-9 * r.max(1.0) => {
                EdgeJson::Carc { p, q, cx, r }
            }
            Edge::Arc { p, q, mid, cx, cy, r } => EdgeJson::Arc { p, q, mid, cx, cy, r },
        };
        j.serialize(s)
    }
}

impl Edge {
    /// The line or circle through three points, traversed `p → mid → q`.
    pub fn through(p: HPoint, mid: HPoint, q: HPoint) -> Edge {
        let (ax, ay) = (mid.x - p.x, mid.y - p.y);
        let (bx, by) = (q.x - p.x, q.y - p.y);
        let cross = ax * by - ay * bx;
        let a2 = ax * ax + ay * ay;
        let b2 = bx * bx + by * by;
        if cross.abs() <= 1e-12 * (a2 * b2).sqrt() {
            return Edge::Segment { p, q };
        }
        let d = 2.0 * cross;
        let ux = (by * a2 - ay * b2) / d;
        let uy = (ax * b2 - bx * a2) / d;
        Edge::Arc {
            p,
            q,
            mid,
            cx: p.x + ux,
            cy: p.y + uy,
            r: ux.hypot(uy),
        }
    }

    fn map(&self, g: &Psl2Element, mid: HPoint) -> Edge {
        let (p, q) = self.endpoints();
        Edge::through(mobius_apply(g, p), mobius_apply(g, mid), mobius_apply(g, q))
    }

    pub fn endpoints(&self) -> (HPoint, HPoint) {
        match *self {
            Edge::Segment { p, q } | Edge::Arc { p, q, .. } => (p, q),
        }
    }

    /// Polyline from `p` to `q`; arcs get `max(8, ⌈length/0.05⌉)` pieces.
    pub fn polyline(&self) -> Vec<[f64; 2]> {
        match *self {
            Edge::Segment { p, q } => vec![[p.x, p.y], [q.x, q.y]],
            Edge::Arc {
                p, q, mid, cx, cy, r,
            } => {
                let ang = |z: HPoint| (z.y - cy).atan2(z.x - cx);
                let a0 = ang(p);
                let ccw = (ang(q) - a0).rem_euclid(TAU);
                let to_mid = (ang(mid) - a0).rem_euclid(TAU);
                let sweep = if to_mid <= ccw { ccw } else { ccw - TAU };
                let n = ((r * sweep.abs() / ARC_STEP).ceil() as usize).clamp(MIN_ARC_POINTS, MAX_ARC_POINTS);
                let mut pts: Vec<[f64; 2]> = (0..n)
                    .map(|k| {
                        let a = a0 + sweep * k as f64 / n as f64;
                        [cx + r * a.cos(), cy + r * a.sin()]
                    })
                    .collect();
                pts.push([q.x, q.y]);
                pts
            }
        }
    }
}

/// Base polygon edges as `(start, interior point, end)`.
fn base_edges(job: &TessellationJob) -> Result<Vec<(HPoint, HPoint, HPoint)>> {
    let v = &job.viewport;
    let k = job.cut_factor;
    let p = |x: f64, y: f64| HPoint { x, y };
    let quad = |c: [HPoint; 4]| {
        (0..4)
            .map(|i| {
                let (a, b) = (c[i], c[(i + 1) % 4]);
                (a, p((a.x + b.x) / 2.0, (a.y + b.y) / 2.0), b)
            })
            .collect::<Vec<_>>()
    };
    match job.base {
        DomainSpec::Modular => {
            let h = 3f64.sqrt() / 2.0;
            let top = (v.y_max * k).max(10.0);
            let (lo_l, lo_r) = (p(-0.5, h), p(0.5, h));
            let (hi_r, hi_l) = (p(0.5, top), p(-0.5, top));
            Ok(vec![
                (lo_l, HPoint::I, lo_r),
                (lo_r, p(0.5, (h + top) / 2.0), hi_r),
                (hi_r, p(0.0, top), hi_l),
                (hi_l, p(-0.5, (h + top) / 2.0), lo_l),
            ])
        }
        DomainSpec::StripA { t } => {
            let w = v.x_max - v.x_min;
            let (x0, x1) = (v.x_min - k * w, v.x_max + k * w);
            let top = t.exp();
            Ok(quad([p(x0, 1.0), p(x1, 1.0), p(x1, top), p(x0, top)]))
        }
        DomainSpec::StripB { t } => {
            let (y0, y1) = (v.y_min / k, v.y_max * k);
            Ok(quad([p(0.0, y0), p(t, y0), p(t, y1), p(0.0, y1)]))
        }
        ref other => Err(Error::InvalidParameter(format!(
            "tessellation needs a polygonal base (strip_a, strip_b or modular), got {:?}",
            other.space()
        ))),
    }
}

/// One image `γ·F̄` that meets the viewport.
#[derive(Clone, Debug, Serialize)]
pub struct Tile {
    pub word: String,
    pub element: Psl2Element,
    pub edges: Vec<Edge>,
    /// Boundary polyline clipped to the viewport.
    #[serde(skip)]
    pub outline: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tessellation {
    pub viewport: Viewport,
    /// Number of elements in the orbit ball.
    pub ball_size: usize,
    /// Images that clipped to nothing.
    pub dropped: usize,
    pub polygons: Vec<Tile>,
    #[serde(skip)]
    y_scale: YScale,
}

fn clip_half(poly: &[[f64; 2]], inside: impl Fn([f64; 2]) -> f64) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(poly.len() + 4);
    for i in 0..poly.len() {
        let cur = poly[i];
        let prev = poly[(i + poly.len() - 1) % poly.len()];
        let (fc, fp) = (inside(cur), inside(prev));
        if (fc >= 0.0) != (fp >= 0.0) {
            let s = fp / (fp - fc);
            out.push([prev[0] + s * (cur[0] - prev[0]), prev[1] + s * (cur[1] - prev[1])]);
        }
        if fc >= 0.0 {
            out.push(cur);
        }
    }
    out
}

/// Sutherland–Hodgman against the viewport rectangle.
fn clip(poly: Vec<[f64; 2]>, v: &Viewport) -> Vec<[f64; 2]> {
    let mut p = poly;
    p = clip_half(&p, |q| q[0] - v.x_min);
    p = clip_half(&p, |q| v.x_max - q[0]);
    p = clip_half(&p, |q| q[1] - v.y_min);
    p = clip_half(&p, |q| v.y_max - q[1]);
    p
}

fn outline(edges: &[Edge]) -> Vec<[f64; 2]> {
    let mut pts = Vec::new();
    for e in edges {
        let mut line = e.polyline();
        line.pop();
        pts.extend(line);
    }
    pts
}

pub fn tessellate(job: &TessellationJob) -> Result<Tessellation> {
    job.viewport.validate()?;
    if !(job.cut_factor.is_finite() && job.cut_factor >= 1.0) {
        return Err(Error::InvalidConfig("cut_factor must be at least 1".into()));
    }
    let base = base_edges(job)?;
    let ball = orbit_ball_words(&job.generators, job.word_radius);
    let tiles: Vec<Option<Tile>> = ball
        .par_iter()
        .map(|o| {
            let edges: Vec<Edge> = base
                .iter()
                .map(|&(p, m, q)| Edge::Segment { p, q }.map(&o.element, m))
                .collect();
            let clipped = clip(outline(&edges), &job.viewport);
            (clipped.len() >= 3).then(|| Tile {
                word: WordDisplay(&o.word).to_string(),
                element: o.element,
                edges,
                outline: clipped,
            })
        })
        .collect();
    let polygons: Vec<Tile> = tiles.into_iter().flatten().collect();
    Ok(Tessellation {
        viewport: job.viewport,
        ball_size: ball.len(),
        dropped: ball.len() - polygons.len(),
        polygons,
        y_scale: job.y_scale,
    })
}

const PALETTE: [&str; 6] = ["#fdae6b", "#9ecae1", "#c7e9c0", "#dadaeb", "#fcbba1", "#fff5b1"];

impl Tessellation {
    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }

    fn y_map(&self) -> impl Fn(f64) -> f64 {
        let scale = self.y_scale;
        move |y| match scale {
            YScale::Linear => y,
            YScale::Log => y.ln(),
        }
    }

    pub fn to_svg(&self) -> String {
        let v = &self.viewport;
        let ym = self.y_map();
        let (y0, y1) = (ym(v.y_min), ym(v.y_max));
        let height = (SVG_WIDTH * (y1 - y0) / (v.x_max - v.x_min)).clamp(200.0, 1600.0).round();
        let sx = |x: f64| (x - v.x_min) / (v.x_max - v.x_min) * SVG_WIDTH;
        let sy = |y: f64| (1.0 - (ym(y) - y0) / (y1 - y0)) * height;

        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SVG_WIDTH}\" height=\"{height}\" viewBox=\"0 0 {SVG_WIDTH} {height}\">"
        );
        let _ = writeln!(
            out,
            "<rect x=\"0\" y=\"0\" width=\"{SVG_WIDTH}\" height=\"{height}\" fill=\"white\"/>"
        );
        out.push_str("<g stroke=\"#222222\" stroke-width=\"0.8\" stroke-linejoin=\"round\">\n");
        for tile in &self.polygons {
            let depth = if tile.word == "e" {
                0
            } else {
                tile.word.split(' ').count()
            };
            let mut d = String::new();
            for (i, [x, y]) in tile.outline.iter().enumerate() {
                let _ = write!(d, "{}{:.3} {:.3} ", if i == 0 { "M" } else { "L" }, sx(*x), sy(*y));
            }
            d.push('Z');
            let _ = writeln!(
                out,
                "<path d=\"{d}\" fill=\"{}\"><title>{}</title></path>",
                PALETTE[depth % PALETTE.len()],
                tile.word
            );
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}
