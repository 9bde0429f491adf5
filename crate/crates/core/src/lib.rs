//! Computational hyperbolic geometry for Fuchsian groups.
//!
//! The crate covers three spaces on which a Fuchsian group `Γ ⊂ PSL(2,ℝ)` acts:
//!
//! * the upper half-plane `ℍ²` via Möbius maps ([`plane`]),
//! * `PSL(2,ℝ)` itself by left multiplication ([`psl2`]),
//! * the unit tangent bundle `T¹ℍ²` via the derivative action ([`tangent`]).
//!
//! Fundamental domains in the three spaces are described by [`DomainSpec`]
//! and tested with three-valued [`Membership`]. A domain `F ⊂ ℍ²` lifts to
//! `𝓕 = {bₓ a_{ln y} d_θ : x+iy ∈ F}` in `PSL(2,ℝ)` and to `T¹F` in the
//! tangent bundle; [`verify`] checks the covering and disjointness axioms by
//! seeded sampling, and [`tessellation`] renders the images of a polygonal
//! domain.

pub mod domain;
pub mod error;
pub mod plane;
pub mod psl2;
pub mod tangent;
pub mod tessellation;
pub mod verify;

pub use domain::{
    conjugate_domain, domain_for_cyclic, modular_lift_direct, orbit_ball, orbit_ball_words,
    reduce_cyclic_a, reduce_cyclic_b, reduce_modular, DomainSpec, Letter, Membership,
    OrbitElement, Reduction, Space, WordDisplay, EPS_MEMBERSHIP,
};
pub use error::{Error, Result};
pub use plane::{geodesic_arc, hyp_distance, mobius_apply, ArcShape, GeodesicArc, HPoint};
pub use psl2::{
    generator_a, generator_b, generator_d, nak_compose, nak_decompose, standard_form,
    ElementClass, Mat2, NakCoords, Psl2Element, StandardForm, StandardKind, EPS_DET, EPS_EQ,
    EPS_TR,
};
pub use tangent::{tangent_apply, theta_inverse, theta_map, UnitTangent};
pub use tessellation::{tessellate, Edge, Tessellation, TessellationJob, Tile, Viewport, YScale};
pub use verify::{
    verify_coverage, verify_disjointness, verify_lift_consistency, SampleBox, SpacePoint,
    VerifyConfig, VerifyReport, Witness,
};
