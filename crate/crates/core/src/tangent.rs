//! The unit tangent bundle `T¹ℍ²` and the bijection `Θ: T¹ℍ² → PSL(2,ℝ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plane::{denominator, mobius_apply, HPoint};
use crate::psl2::{nak_compose, NakCoords, Psl2Element};

/// Allowed deviation of `‖ξ‖_z = |ξ| / Im z` from 1.
pub const EPS_UNIT: f64 = 1e-9;

/// A unit tangent vector `(z, ξ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TangentJson", into = "TangentJson")]
pub struct UnitTangent {
    z: HPoint,
    xi: Complex64,
}

#[derive(Serialize, Deserialize)]
struct XiJson {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct TangentJson {
    z: HPoint,
    xi: XiJson,
}

impl TryFrom<TangentJson> for UnitTangent {
    type Error = Error;

    fn try_from(j: TangentJson) -> Result<Self> {
        UnitTangent::new(j.z, Complex64::new(j.xi.re, j.xi.im))
    }
}

impl From<UnitTangent> for TangentJson {
    fn from(v: UnitTangent) -> Self {
        TangentJson {
            z: v.z,
            xi: XiJson {
                re: v.xi.re,
                im: v.xi.im,
            },
        }
    }
}

impl UnitTangent {
    /// Strict constructor: rejects `‖ξ‖_z ≠ 1`.
    pub fn new(z: HPoint, xi: Complex64) -> Result<Self> {
        if !(xi.re.is_finite() && xi.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = xi.norm() / z.y;
        if (norm - 1.0).abs() > EPS_UNIT {
            return Err(Error::NotUnitTangent(norm));
        }
        Ok(UnitTangent { z, xi })
    }

    /// Rescales `ξ` to unit hyperbolic length; only `ξ = 0` is rejected.
    pub fn normalized(z: HPoint, xi: Complex64) -> Result<Self> {
        if !(xi.re.is_finite() && xi.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = xi.norm();
        if n == 0.0 {
            return Err(Error::NotUnitTangent(0.0));
        }
        Ok(UnitTangent {
            z,
            xi: xi * (z.y / n),
        })
    }

    /// The vector at `z` pointing in direction angle `θ` from straight up:
    /// `ξ = i·y·e^{iθ}`.
    pub fn from_angle(z: HPoint, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        UnitTangent {
            z,
            xi: Complex64::new(-z.y * s, z.y * c),
        }
    }

    /// `(i, i)`.
    pub fn base() -> Self {
        UnitTangent {
            z: HPoint::I,
            xi: Complex64::new(0.0, 1.0),
        }
    }

    pub fn z(&self) -> HPoint {
        self.z
    }

    pub fn xi(&self) -> Complex64 {
        self.xi
    }

    /// `‖ξ‖_z`.
    pub fn norm(&self) -> f64 {
        self.xi.norm() / self.z.y
    }
}

/// `𝔇g(z, ξ) = ((az + b)/(cz + d), ξ/(cz + d)²)`.
pub fn tangent_apply(g: &Psl2Element, v: &UnitTangent) -> UnitTangent {
    let w = denominator(g.rep(), v.z);
    UnitTangent {
        z: mobius_apply(g, v.z),
        xi: v.xi / (w * w),
    }
}

/// The unique `g` with `𝔇g(i, i) = v`.
///
/// With `g = bₓ a_{ln y} d_θ` one has `𝔇g(i,i) = (x + iy, i·y·e^{iθ})`, so
/// `θ` is the angle of `ξ / (iy)`.
pub fn theta_map(v: &UnitTangent) -> Result<Psl2Element> {
    let norm = v.norm();
    if (norm - 1.0).abs() > EPS_UNIT {
        return Err(Error::NotUnitTangent(norm));
    }
    let theta = (-v.xi.re).atan2(v.xi.im);
    nak_compose(&NakCoords::new(v.z.x, v.z.y, theta)?)
}

/// `Θ⁻¹(g) = 𝔇g(i, i)`.
pub fn theta_inverse(g: &Psl2Element) -> UnitTangent {
    tangent_apply(g, &UnitTangent::base())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::{generator_a, generator_b};
    use std::f64::consts::LN_2;

    fn tv(x: f64, y: f64, re: f64, im: f64) -> UnitTangent {
        UnitTangent::new(HPoint::new(x, y).unwrap(), Complex64::new(re, im)).unwrap()
    }

    fn close(u: &UnitTangent, v: &UnitTangent, tol: f64) -> bool {
        u.z.euclid_dist(v.z) < tol && (u.xi - v.xi).norm() < tol
    }

    fn s_elem() -> Psl2Element {
        Psl2Element::new(0.0, -1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn constructor_modes() {
        let z = HPoint::new(0.0, 2.0).unwrap();
        assert!(matches!(
            UnitTangent::new(z, Complex64::new(0.0, 1.0)),
            Err(Error::NotUnitTangent(_))
        ));
        let v = UnitTangent::normalized(z, Complex64::new(3.0, 4.0)).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-15);
        assert!(UnitTangent::normalized(z, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn action_examples() {
        let base = UnitTangent::base();
        assert_eq!(tangent_apply(&Psl2Element::identity(), &base), base);
        let moved = tangent_apply(&generator_b(2.5), &base);
        assert!(close(&moved, &tv(2.5, 1.0, 0.0, 1.0), 1e-15));
        let flipped = tangent_apply(&s_elem(), &base);
        assert!(close(&flipped, &tv(0.0, 1.0, 0.0, -1.0), 1e-15));
    }

    #[test]
    fn theta_map_examples() {
        assert_eq!(
            theta_map(&UnitTangent::base()).unwrap(),
            Psl2Element::identity()
        );
        assert_eq!(
            theta_map(&tv(0.0, 2.0, 0.0, 2.0)).unwrap(),
            generator_a(LN_2)
        );
        assert_eq!(theta_map(&tv(3.0, 1.0, 0.0, 1.0)).unwrap(), generator_b(3.0));
        assert_eq!(theta_map(&tv(0.0, 1.0, 0.0, -1.0)).unwrap(), s_elem());
    }

    #[test]
    fn theta_inverse_examples() {
        assert!(close(
            &theta_inverse(&Psl2Element::identity()),
            &UnitTangent::base(),
            1e-15
        ));
        assert!(close(
            &theta_inverse(&generator_a(LN_2)),
            &tv(0.0, 2.0, 0.0, 2.0),
            1e-15
        ));
        assert!(close(
            &theta_inverse(&s_elem()),
            &tv(0.0, 1.0, 0.0, -1.0),
            1e-15
        ));
    }

    #[test]
    fn theta_map_rejects_non_unit() {
        let bad = UnitTangent {
            z: HPoint::I,
            xi: Complex64::new(0.0, 2.0),
        };
        assert!(matches!(theta_map(&bad), Err(Error::NotUnitTangent(_))));
    }

    #[test]
    fn json_shape() {
        let v = tv(0.0, 2.0, 0.0, 2.0);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"z":{"x":0.0,"y":2.0},"xi":{"re":0.0,"im":2.0}}"#);
        assert!(serde_json::from_str::<UnitTangent>(
            r#"{"z":{"x":0,"y":2},"xi":{"re":0,"im":1}}"#
        )
        .is_err());
    }
}
