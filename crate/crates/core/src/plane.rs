//! The upper half-plane model `ℍ² = {x + iy : y > 0}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::psl2::{Mat2, Psl2Element};

/// A point `x + iy` with `y > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointJson")]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

#[derive(Deserialize)]
struct PointJson {
    x: f64,
    y: f64,
}

impl TryFrom<PointJson> for HPoint {
    type Error = Error;

    fn try_from(p: PointJson) -> Result<Self> {
        HPoint::new(p.x, p.y)
    }
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::NonFinite);
        }
        if y <= 0.0 {
            return Err(Error::NotInUpperHalfPlane(y));
        }
        Ok(HPoint { x, y })
    }

    /// The base point `i`.
    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn abs(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Euclidean distance, for matching points in tests and rendering.
    pub fn euclid_dist(self, o: HPoint) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }
}

/// `(cz + d)` for the stored representative.
pub(crate) fn denominator(m: &Mat2, z: HPoint) -> Complex64 {
    Complex64::new(m.c.mul_add(z.x, m.d), m.c * z.y)
}

/// The Möbius action `z ↦ (az + b)/(cz + d)`.
pub fn mobius_apply(g: &Psl2Element, z: HPoint) -> HPoint {
    let m = g.rep();
    let w = denominator(m, z);
    let num = Complex64::new(m.a.mul_add(z.x, m.b), m.a * z.y);
    let n2 = w.norm_sqr();
    // Im((az+b)·conj(cz+d)) = (ad − bc)·y = y
    let re = num.re.mul_add(w.re, num.im * w.im) / n2;
    HPoint { x: re, y: z.y / n2 }
}

/// Hyperbolic distance, `2 asinh(|z − w| / (2√(Im z · Im w)))`.
pub fn hyp_distance(z: HPoint, w: HPoint) -> f64 {
    let chord = (z.x - w.x).hypot(z.y - w.y);
    2.0 * (chord / (2.0 * (z.y * w.y).sqrt())).asinh()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ArcShape {
    VerticalSegment,
    CircularArc { center_x: f64, radius: f64 },
}

/// The geodesic segment between two interior points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ArcJson", into = "ArcJson")]
pub struct GeodesicArc {
    pub p: HPoint,
    pub q: HPoint,
    pub shape: ArcShape,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ArcJson {
    Vseg { p: HPoint, q: HPoint },
    Carc { p: HPoint, q: HPoint, cx: f64, r: f64 },
}

impl From<GeodesicArc> for ArcJson {
    fn from(a: GeodesicArc) -> Self {
        match a.shape {
            ArcShape::VerticalSegment => ArcJson::Vseg { p: a.p, q: a.q },
            ArcShape::CircularArc { center_x, radius } => ArcJson::Carc {
                p: a.p,
                q: a.q,
                cx: center_x,
                r: radius,
            },
        }
    }
}

impl TryFrom<ArcJson> for GeodesicArc {
    type Error = Error;

    fn try_from(j: ArcJson) -> Result<Self> {
        let (p, q) = match j {
            ArcJson::Vseg { p, q } | ArcJson::Carc { p, q, .. } => (p, q),
        };
        geodesic_arc(p, q)
    }
}

const VERTICAL_TOL: f64 = 1e-12;

pub fn geodesic_arc(z: HPoint, w: HPoint) -> Result<GeodesicArc> {
    if z.euclid_dist(w) <= VERTICAL_TOL {
        return Err(Error::DegenerateGeodesic);
    }
    let dx = z.x - w.x;
    let shape = if dx.abs() < VERTICAL_TOL {
        ArcShape::VerticalSegment
    } else {
        let center_x = ((z.x * z.x + z.y * z.y) - (w.x * w.x + w.y * w.y)) / (2.0 * dx);
        ArcShape::CircularArc {
            center_x,
            radius: (z.x - center_x).hypot(z.y),
        }
    };
    Ok(GeodesicArc { p: z, q: w, shape })
}

impl GeodesicArc {
    /// `n + 1` points from `p` to `q` along the arc (Euclidean-uniform in
    /// the angle or the height).
    pub fn sample(&self, n: usize) -> Vec<HPoint> {
        let n = n.max(1);
        match self.shape {
            ArcShape::VerticalSegment => (0..=n)
                .map(|k| {
                    let s = k as f64 / n as f64;
                    HPoint {
                        x: self.p.x,
                        y: self.p.y + s * (self.q.y - self.p.y),
                    }
                })
                .collect(),
            ArcShape::CircularArc { center_x, radius } => {
                let a0 = self.p.y.atan2(self.p.x - center_x);
                let a1 = self.q.y.atan2(self.q.x - center_x);
                (0..=n)
                    .map(|k| {
                        let a = a0 + (a1 - a0) * k as f64 / n as f64;
                        HPoint {
                            x: center_x + radius * a.cos(),
                            y: radius * a.sin(),
                        }
                    })
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::{generator_a, generator_b};

    fn pt(x: f64, y: f64) -> HPoint {
        HPoint::new(x, y).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(HPoint::new(0.0, 0.0).is_err());
        assert!(HPoint::new(1.0, -2.0).is_err());
        assert!(serde_json::from_str::<HPoint>(r#"{"x":0,"y":0}"#).is_err());
    }

    #[test]
    fn mobius_examples() {
        let z = mobius_apply(&generator_b(3.0), HPoint::I);
        assert_eq!((z.x, z.y), (3.0, 1.0));
        let z = mobius_apply(&generator_a(4f64.ln()), HPoint::I);
        assert!(z.x.abs() < 1e-15 && (z.y - 4.0).abs() < 1e-14);
        let s = Psl2Element::new(0.0, -1.0, 1.0, 0.0).unwrap();
        let z = mobius_apply(&s, pt(0.0, 2.0));
        assert!(z.x.abs() < 1e-15 && (z.y - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sign_of_representative_is_irrelevant() {
        let g = Psl2Element::new(2.0, 1.0, 3.0, 2.0).unwrap();
        let h = Psl2Element::new(-2.0, -1.0, -3.0, -2.0).unwrap();
        let z = pt(0.3, 0.7);
        assert_eq!(mobius_apply(&g, z), mobius_apply(&h, z));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hyp_distance(HPoint::I, HPoint::I), 0.0);
        let e = std::f64::consts::E;
        assert!((hyp_distance(HPoint::I, pt(0.0, e)) - 1.0).abs() < 1e-14);
        assert!((hyp_distance(HPoint::I, pt(1.0, 1.0)) - 1.5f64.acosh()).abs() < 1e-14);
        assert!((hyp_distance(HPoint::I, pt(1.0, 1.0)) - 0.96242).abs() < 1e-5);
    }

    #[test]
    fn small_distances_do_not_cancel() {
        let z = pt(0.25, 1.5);
        let w = pt(0.25 + 1e-9, 1.5);
        let d = hyp_distance(z, w);
        assert!((d * 1.5 / 1e-9 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn arc_examples() {
        let a = geodesic_arc(HPoint::I, pt(0.0, 2.0)).unwrap();
        assert_eq!(a.shape, ArcShape::VerticalSegment);
        let h = 3f64.sqrt() / 2.0;
        let a = geodesic_arc(pt(-0.5, h), pt(0.5, h)).unwrap();
        match a.shape {
            ArcShape::CircularArc { center_x, radius } => {
                assert!(center_x.abs() < 1e-15);
                assert!((radius - 1.0).abs() < 1e-15);
            }
            _ => panic!("expected circular arc"),
        }
        assert_eq!(
            geodesic_arc(HPoint::I, HPoint::I).unwrap_err(),
            Error::DegenerateGeodesic
        );
    }

    #[test]
    fn arc_json() {
        let a = geodesic_arc(HPoint::I, pt(0.0, 2.0)).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"kind":"vseg","p":{"x":0.0,"y":1.0},"q":{"x":0.0,"y":2.0}}"#);
        let c = geodesic_arc(pt(-1.0, 1.0), pt(1.0, 1.0)).unwrap();
        let v: serde_json::Value = serde_json::to_value(c).unwrap();
        assert_eq!(v["kind"], "carc");
        assert_eq!(v["cx"], 0.0);
        let back: GeodesicArc = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn arc_samples_stay_on_circle() {
        let c = geodesic_arc(pt(-0.8, 0.3), pt(2.0, 1.7)).unwrap();
        let ArcShape::CircularArc { center_x, radius } = c.shape else {
            panic!()
        };
        for p in c.sample(16) {
            assert!(((p.x - center_x).hypot(p.y) - radius).abs() < 1e-12);
        }
    }
}
