//! Arithmetic in `PSL(2,ℝ) = SL(2,ℝ)/{±E₂}`.
//!
//! Elements are stored as one representative matrix in canonical sign form:
//! the entry of largest absolute value is positive, ties going to the first
//! entry in the order `a, b, c, d`. Equality compares against both signs.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Determinant tolerance, relative to `max(1, |ad| + |bc|)`.
pub const EPS_DET: f64 = 1e-9;
/// Projective equality tolerance, relative to `max(1, ‖G‖∞, ‖H‖∞)`.
pub const EPS_EQ: f64 = 1e-8;
/// Band around `|tr| = 2` reported as parabolic.
pub const EPS_TR: f64 = 1e-9;

/// `ad - bc` with a single rounding on the difference.
fn det2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let bc = b * c;
    let err = (-b).mul_add(c, bc);
    a.mul_add(d, -bc) + err
}

/// A real 2×2 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Wire form `{"m": [[a, b], [c, d]]}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub m: [[f64; 2]; 2],
}

impl TryFrom<MatrixJson> for Mat2 {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        Mat2::new(j.m[0][0], j.m[0][1], j.m[1][0], j.m[1][1])
    }
}

impl From<Mat2> for MatrixJson {
    fn from(m: Mat2) -> Self {
        MatrixJson {
            m: [[m.a, m.b], [m.c, m.d]],
        }
    }
}

impl Mat2 {
    /// Checked constructor: finite entries and unit determinant.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = Mat2 { a, b, c, d };
        if !m.entries().iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let det = m.det();
        let tol = EPS_DET * m.det_scale();
        if (det - 1.0).abs() > tol {
            return Err(Error::Determinant { det, tol });
        }
        Ok(m)
    }

    pub const fn identity() -> Self {
        Mat2 {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        det2(self.a, self.b, self.c, self.d)
    }

    fn det_scale(&self) -> f64 {
        ((self.a * self.d).abs() + (self.b * self.c).abs()).max(1.0)
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn norm_inf(&self) -> f64 {
        self.entries().iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn neg(&self) -> Self {
        Mat2 {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn matmul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a.mul_add(o.a, self.b * o.c),
            b: self.a.mul_add(o.b, self.b * o.d),
            c: self.c.mul_add(o.a, self.d * o.c),
            d: self.c.mul_add(o.b, self.d * o.d),
        }
    }

    /// Inverse of a unit-determinant matrix.
    pub fn adjugate(&self) -> Mat2 {
        Mat2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    fn max_diff(&self, o: &Mat2) -> f64 {
        (self.a - o.a)
            .abs()
            .max((self.b - o.b).abs())
            .max((self.c - o.c).abs())
            .max((self.d - o.d).abs())
    }

    fn max_sum(&self, o: &Mat2) -> f64 {
        (self.a + o.a)
            .abs()
            .max((self.b + o.b).abs())
            .max((self.c + o.c).abs())
            .max((self.d + o.d).abs())
    }

    /// Pulls the matrix back onto `det = 1` with the smallest change in
    /// Frobenius norm (first-order, two Newton steps).
    fn renormalized(mut self) -> Mat2 {
        for _ in 0..2 {
            let drift = self.det() - 1.0;
            if drift.abs() <= EPS_DET / 2.0 {
                break;
            }
            let grad2 = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
            let s = drift / grad2;
            let Mat2 { a, b, c, d } = self;
            self = Mat2 {
                a: a - s * d,
                b: b + s * c,
                c: c + s * b,
                d: d - s * a,
            };
        }
        self
    }

    /// Flips the sign so the largest-magnitude entry is positive, and
    /// replaces `-0.0` by `0.0`.
    fn canonical(self) -> Mat2 {
        let e = self.entries();
        let mut best = 0;
        for i in 1..4 {
            if e[i].abs() > e[best].abs() {
                best = i;
            }
        }
        let m = if e[best] < 0.0 { self.neg() } else { self };
        Mat2 {
            a: m.a + 0.0,
            b: m.b + 0.0,
            c: m.c + 0.0,
            d: m.d + 0.0,
        }
    }
}

/// An element `±G` of `PSL(2,ℝ)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(try_from = "Mat2", into = "Mat2")]
pub struct Psl2Element {
    rep: Mat2,
}

impl TryFrom<Mat2> for Psl2Element {
    type Error = Error;

    fn try_from(m: Mat2) -> Result<Self> {
        Ok(Psl2Element::from_mat2(m))
    }
}

impl From<Psl2Element> for Mat2 {
    fn from(g: Psl2Element) -> Self {
        g.rep
    }
}

impl PartialEq for Psl2Element {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, EPS_EQ)
    }
}

impl fmt::Display for Psl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Mat2 { a, b, c, d } = self.rep;
        write!(f, "±({a} {b}; {c} {d})")
    }
}

impl Psl2Element {
    /// Checked constructor from matrix entries.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Mat2::new(a, b, c, d).map(Self::from_mat2)
    }

    pub fn from_mat2(m: Mat2) -> Self {
        Psl2Element { rep: m.canonical() }
    }

    /// Wraps a product that may have drifted off `det = 1`.
    fn from_product(m: Mat2) -> Self {
        Self::from_mat2(m.renormalized())
    }

    pub fn identity() -> Self {
        Psl2Element {
            rep: Mat2::identity(),
        }
    }

    pub fn rep(&self) -> &Mat2 {
        &self.rep
    }

    pub fn mul(&self, other: &Psl2Element) -> Psl2Element {
        Self::from_product(self.rep.matmul(&other.rep))
    }

    pub fn inverse(&self) -> Psl2Element {
        Self::from_mat2(self.rep.adjugate())
    }

    /// `g⁻¹ h`, the element that takes `self` to `h` by left multiplication.
    pub fn left_div(&self, h: &Psl2Element) -> Psl2Element {
        Self::from_product(self.rep.adjugate().matmul(&h.rep))
    }

    /// `h g h⁻¹`.
    pub fn conjugate_by(&self, h: &Psl2Element) -> Psl2Element {
        h.mul(self).mul(&h.inverse())
    }

    /// `|a + d|`, independent of the representative.
    pub fn trace(&self) -> f64 {
        self.rep.trace().abs()
    }

    /// `min(‖G − H‖∞, ‖G + H‖∞)`.
    pub fn projective_distance(&self, other: &Psl2Element) -> f64 {
        self.rep.max_diff(&other.rep).min(self.rep.max_sum(&other.rep))
    }

    /// Projective distance divided by `max(1, ‖G‖∞, ‖H‖∞)`.
    pub fn relative_distance(&self, other: &Psl2Element) -> f64 {
        let scale = 1f64.max(self.rep.norm_inf()).max(other.rep.norm_inf());
        self.projective_distance(other) / scale
    }

    pub fn approx_eq(&self, other: &Psl2Element, eps: f64) -> bool {
        self.relative_distance(other) <= eps
    }

    pub fn is_identity(&self, eps: f64) -> bool {
        self.approx_eq(&Psl2Element::identity(), eps)
    }

    pub fn classify(&self) -> ElementClass {
        self.classify_with(EPS_EQ, EPS_TR)
    }

    pub fn classify_with(&self, eps_eq: f64, eps_tr: f64) -> ElementClass {
        if self.is_identity(eps_eq) {
            return ElementClass::Identity;
        }
        let tr = self.trace();
        if (tr - 2.0).abs() <= eps_tr {
            ElementClass::Parabolic
        } else if tr > 2.0 {
            ElementClass::Hyperbolic
        } else {
            ElementClass::Elliptic
        }
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, n: i64) -> Psl2Element {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut k = n.unsigned_abs();
        let mut acc = Psl2Element::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }
}

/// `a_t`, the class of `diag(e^{t/2}, e^{−t/2})`.
pub fn generator_a(t: f64) -> Psl2Element {
    let s = (t / 2.0).exp();
    Psl2Element::from_mat2(Mat2 {
        a: s,
        b: 0.0,
        c: 0.0,
        d: 1.0 / s,
    })
}

/// `b_t`, the class of `(1 t; 0 1)`.
pub fn generator_b(t: f64) -> Psl2Element {
    Psl2Element::from_mat2(Mat2 {
        a: 1.0,
        b: t,
        c: 0.0,
        d: 1.0,
    })
}

/// `d_θ`, the class of `(cos θ/2, sin θ/2; −sin θ/2, cos θ/2)`.
pub fn generator_d(theta: f64) -> Psl2Element {
    let (s, c) = (theta / 2.0).sin_cos();
    Psl2Element::from_mat2(Mat2 {
        a: c,
        b: s,
        c: -s,
        d: c,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementClass {
    Hyperbolic,
    Elliptic,
    Parabolic,
    Identity,
}

/// Iwasawa coordinates of `g = bₓ a_{ln y} d_θ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NakJson")]
pub struct NakCoords {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

#[derive(Deserialize)]
struct NakJson {
    x: f64,
    y: f64,
    theta: f64,
}

impl TryFrom<NakJson> for NakCoords {
    type Error = Error;

    fn try_from(j: NakJson) -> Result<Self> {
        NakCoords::new(j.x, j.y, j.theta)
    }
}

/// Reduces an angle into `[0, 2π)`.
pub(crate) fn wrap_angle(theta: f64) -> f64 {
    // `+ 0.0` turns `-0.0` into `0.0`
    let r = theta.rem_euclid(TAU) + 0.0;
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl NakCoords {
    /// Rejects `y ≤ 0` and non-finite input; `theta` is reduced mod `2π`.
    pub fn new(x: f64, y: f64, theta: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && theta.is_finite()) {
            return Err(Error::NonFinite);
        }
        if y <= 0.0 {
            return Err(Error::NotInUpperHalfPlane(y));
        }
        Ok(NakCoords {
            x,
            y,
            theta: wrap_angle(theta),
        })
    }
}

pub fn nak_decompose(g: &Psl2Element) -> NakCoords {
    let Mat2 { a, b, c, d } = *g.rep();
    let n2 = c * c + d * d;
    NakCoords {
        x: a.mul_add(c, b * d) / n2,
        y: 1.0 / n2,
        theta: wrap_angle(-2.0 * c.atan2(d)),
    }
}

/// `bₓ · a_{ln y} · d_θ` as an explicit matrix product.
pub fn nak_compose(n: &NakCoords) -> Result<Psl2Element> {
    if !(n.y > 0.0) {
        return Err(Error::NotInUpperHalfPlane(n.y));
    }
    let r = n.y.sqrt();
    let bx = Mat2 {
        a: 1.0,
        b: n.x,
        c: 0.0,
        d: 1.0,
    };
    let ay = Mat2 {
        a: r,
        b: 0.0,
        c: 0.0,
        d: 1.0 / r,
    };
    let dt = *generator_d(n.theta).rep();
    Ok(Psl2Element::from_mat2(bx.matmul(&ay).matmul(&dt)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardKind {
    Hyperbolic,
    Parabolic,
}

/// `g = h⁻¹ s_t h` with `s_t = a_t` or `b_t`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct StandardForm {
    pub h: Psl2Element,
    pub t: f64,
    pub kind: StandardKind,
}

impl StandardForm {
    pub fn model(&self) -> Psl2Element {
        match self.kind {
            StandardKind::Hyperbolic => generator_a(self.t),
            StandardKind::Parabolic => generator_b(self.t),
        }
    }

    /// `h⁻¹ s_t h`.
    pub fn reconjugate(&self) -> Psl2Element {
        self.h.inverse().mul(&self.model()).mul(&self.h)
    }
}

/// Eigenvector of `m` for eigenvalue `nu`, picking the better-conditioned
/// of the two row-derived candidates.
fn eigenvector(m: &Mat2, nu: f64) -> (f64, f64) {
    let u = (m.b, nu - m.a);
    let v = (nu - m.d, m.c);
    if u.0.hypot(u.1) >= v.0.hypot(v.1) {
        u
    } else {
        v
    }
}

pub fn standard_form(g: &Psl2Element) -> Result<StandardForm> {
    let class = g.classify();
    let m = if g.rep().trace() < 0.0 {
        g.rep().neg()
    } else {
        *g.rep()
    };
    match class {
        ElementClass::Hyperbolic => {
            let tr = m.trace();
            let lambda = (tr + (tr * tr - 4.0).sqrt()) / 2.0;
            let mu = 1.0 / lambda;
            let (p11, p21) = eigenvector(&m, lambda);
            let (mut p12, mut p22) = eigenvector(&m, mu);
            let mut det = p11 * p22 - p12 * p21;
            if det < 0.0 {
                p12 = -p12;
                p22 = -p22;
                det = -det;
            }
            let s = det.sqrt();
            let p = Mat2 {
                a: p11 / s,
                b: p12 / s,
                c: p21 / s,
                d: p22 / s,
            };
            Ok(StandardForm {
                h: Psl2Element::from_product(p.adjugate()),
                t: 2.0 * lambda.ln(),
                kind: StandardKind::Hyperbolic,
            })
        }
        ElementClass::Parabolic => {
            let h = if m.c.abs() <= EPS_EQ * 1e-4 * m.norm_inf() {
                Psl2Element::identity()
            } else {
                let fixed = (m.a - m.d) / (2.0 * m.c);
                Psl2Element::from_mat2(Mat2 {
                    a: 0.0,
                    b: -1.0,
                    c: 1.0,
                    d: -fixed,
                })
            };
            let n = h.rep().matmul(&m).matmul(&h.rep().adjugate());
            let t = n.b / (n.trace() / 2.0);
            Ok(StandardForm {
                h,
                t,
                kind: StandardKind::Parabolic,
            })
        }
        other => Err(Error::NoStandardForm(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn s_elem() -> Psl2Element {
        Psl2Element::new(0.0, -1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn identity_entries() {
        let e = Psl2Element::identity();
        assert_eq!(e.rep().entries(), [1.0, 0.0, 0.0, 1.0]);
        let g = nak_compose(&NakCoords::new(0.3, 2.0, 1.1).unwrap()).unwrap();
        assert_eq!(e.mul(&g), g);
        let n = nak_decompose(&e);
        assert_eq!((n.x, n.y, n.theta), (0.0, 1.0, 0.0));
    }

    #[test]
    fn products() {
        assert_eq!(generator_b(2.0).mul(&generator_b(3.0)), generator_b(5.0));
        assert_eq!(generator_a(0.4).mul(&generator_a(1.3)), generator_a(1.7));
        let dd = generator_d(PI).mul(&generator_d(PI));
        assert!(dd.projective_distance(&Psl2Element::identity()) < 1e-15);
    }

    #[test]
    fn inverses() {
        assert_eq!(Psl2Element::identity().inverse(), Psl2Element::identity());
        assert_eq!(generator_b(1.5).inverse(), generator_b(-1.5));
        let g = Psl2Element::new(2.0, 0.0, 0.0, 0.5).unwrap();
        assert_eq!(g.inverse().rep().entries(), [0.5, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn traces() {
        assert_eq!(Psl2Element::identity().trace(), 2.0);
        assert!((generator_a(1.0).trace() - 2.0 * 0.5f64.cosh()).abs() < 1e-15);
        assert!((generator_a(1.0).trace() - 2.2552).abs() < 1e-4);
        assert!((generator_d(PI / 2.0).trace() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn classification() {
        assert_eq!(generator_b(1.0).classify(), ElementClass::Parabolic);
        assert_eq!(generator_a(1.0).classify(), ElementClass::Hyperbolic);
        assert_eq!(generator_d(PI / 2.0).classify(), ElementClass::Elliptic);
        assert_eq!(Psl2Element::identity().classify(), ElementClass::Identity);
        assert_eq!(generator_d(2.0 * PI).classify(), ElementClass::Identity);
    }

    #[test]
    fn nak_examples() {
        let n = nak_decompose(&generator_a(2.0));
        assert!(n.x.abs() < 1e-15);
        assert!((n.y - 2f64.exp()).abs() < 1e-12);
        assert_eq!(n.theta, 0.0);

        let n = nak_decompose(&s_elem());
        assert_eq!((n.x, n.y), (0.0, 1.0));
        assert!((n.theta - PI).abs() < 1e-15);

        let g = nak_compose(&NakCoords::new(3.0, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(g.rep().entries(), [1.0, 3.0, 0.0, 1.0]);
        let g = nak_compose(&NakCoords::new(0.0, 4.0, 0.0).unwrap()).unwrap();
        assert_eq!(g.rep().entries(), [2.0, 0.0, 0.0, 0.5]);
        assert_eq!(g, generator_a(4f64.ln()));
        assert_eq!(
            nak_compose(&NakCoords::new(0.0, 1.0, 0.0).unwrap()).unwrap(),
            Psl2Element::identity()
        );
    }

    #[test]
    fn nak_rejects_nonpositive_y() {
        assert!(NakCoords::new(0.0, 0.0, 0.0).is_err());
        let raw = NakCoords {
            x: 0.0,
            y: -1.0,
            theta: 0.0,
        };
        assert!(nak_compose(&raw).is_err());
    }

    #[test]
    fn generators() {
        assert_eq!(generator_a(0.0), Psl2Element::identity());
        assert_eq!(generator_d(2.0 * PI), Psl2Element::identity());
        assert_eq!(generator_b(1.0).rep().entries(), [1.0, 1.0, 0.0, 1.0]);
        for k in 0..50 {
            let th = k as f64 * 0.37 - 5.0;
            let a = generator_d(th);
            let b = generator_d(th + 2.0 * PI);
            assert!(a.rep().max_diff(b.rep()) < 1e-14, "theta {th}");
        }
    }

    #[test]
    fn determinant_checked() {
        assert!(matches!(
            Psl2Element::new(1.0, 1.0, 1.0, 1.0),
            Err(Error::Determinant { .. })
        ));
        assert!(matches!(
            Psl2Element::new(f64::NAN, 0.0, 0.0, 1.0),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn canonical_sign() {
        let g = Psl2Element::new(-2.0, 0.0, 0.0, -0.5).unwrap();
        assert_eq!(g.rep().entries(), [2.0, 0.0, 0.0, 0.5]);
        // tie between b and c: b wins
        assert_eq!(s_elem().rep().entries(), [0.0, 1.0, -1.0, 0.0]);
        let again = Psl2Element::from_mat2(*s_elem().rep());
        assert_eq!(again.rep().entries(), s_elem().rep().entries());
    }

    #[test]
    fn standard_form_diagonal() {
        let g = generator_a(2.0 * LN_2);
        let sf = standard_form(&g).unwrap();
        assert_eq!(sf.kind, StandardKind::Hyperbolic);
        assert!((sf.t - 2.0 * LN_2).abs() < 1e-14);
        assert_eq!(sf.h, Psl2Element::identity());
    }

    #[test]
    fn standard_form_lower_unipotent() {
        let g = Psl2Element::new(1.0, 0.0, 1.0, 1.0).unwrap();
        let sf = standard_form(&g).unwrap();
        assert_eq!(sf.kind, StandardKind::Parabolic);
        assert!((sf.t + 1.0).abs() < 1e-14);
        assert_eq!(sf.h, s_elem());
        assert_eq!(sf.reconjugate(), g);
    }

    #[test]
    fn standard_form_conjugated_hyperbolic() {
        let h0 = generator_b(1.0);
        let g = h0.inverse().mul(&generator_a(1.0)).mul(&h0);
        let sf = standard_form(&g).unwrap();
        assert_eq!(sf.kind, StandardKind::Hyperbolic);
        assert!((sf.t.abs() - 1.0).abs() < 1e-12);
        assert_eq!(sf.reconjugate(), g);
    }

    #[test]
    fn standard_form_rejects_elliptic_and_identity() {
        assert_eq!(
            standard_form(&generator_d(1.0)).unwrap_err(),
            Error::NoStandardForm(ElementClass::Elliptic)
        );
        assert_eq!(
            standard_form(&Psl2Element::identity()).unwrap_err(),
            Error::NoStandardForm(ElementClass::Identity)
        );
    }

    #[test]
    fn matrix_json_shape() {
        let g = generator_b(1.0);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"m":[[1.0,1.0],[0.0,1.0]]}"#);
        let back: Psl2Element = serde_json::from_str(r#"{"m":[[-1,0],[0,-1]]}"#).unwrap();
        assert_eq!(back.rep().entries(), [1.0, 0.0, 0.0, 1.0]);
        assert!(serde_json::from_str::<Psl2Element>(r#"{"m":[[1,1],[1,1]]}"#).is_err());
        let n: NakCoords = serde_json::from_str(r#"{"x":0,"y":1,"theta":7}"#).unwrap();
        assert!((n.theta - (7.0 - TAU)).abs() < 1e-15);
        assert!(serde_json::from_str::<NakCoords>(r#"{"x":0,"y":-1,"theta":0}"#).is_err());
    }

    #[test]
    fn power() {
        assert_eq!(generator_b(0.5).pow(-4), generator_b(-2.0));
        assert_eq!(generator_a(0.5).pow(0), Psl2Element::identity());
    }
}
