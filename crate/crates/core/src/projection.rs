//! Classification of `P[C(a, v, φ)]` for an orthogonal projection `P` onto `V`.
//!
//! With `ψ = ∠(v, V⊥)` the projection is one of
//!
//! | `φ` vs `ψ`                       | `P[C(a, v, φ)]`          |
//! |----------------------------------|--------------------------|
//! | `φ = 0`, `ψ = 0`                 | `{Pa}`                   |
//! | `φ = ψ`, `ψ ∈ (0, π/2)`          | `C°_V(Pa, Pv, π/2)`      |
//! | `φ = ψ ≥ π/2`, or `φ < ψ`        | `C_V(Pa, Pv, φ₁)`        |
//! | `φ > ψ`                          | `V`                      |
//!
//! where `cos φ₁ = √((cos²φ − cos²ψ) / (1 − cos²ψ))` for `ψ ∈ (0, π/2]` and
//! `φ₁ = φ` otherwise.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::cone::{Flavor, RoundCone};
use crate::error::{Error, Result};
use crate::linalg::{angle_between, angle_to_complement, Radians, RealVector, SubspaceBasis};

/// Slack allowed on the radicand of the aperture formula before an input is
/// reported as outside its regime.
const RADICAND_TOL: f64 = 1e-12;

/// Orthogonality tolerance for the affine offset, relative to `‖d‖`.
const OFFSET_ORTHO_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassifierPolicy {
    /// Half-width of the band around `φ = ψ` treated as the boundary case.
    pub angle_tol: f64,
}

impl Default for ClassifierPolicy {
    fn default() -> Self {
        ClassifierPolicy { angle_tol: 1e-9 }
    }
}

impl ClassifierPolicy {
    pub fn new(angle_tol: f64) -> Result<Self> {
        if angle_tol >= 0.0 && angle_tol.is_finite() {
            Ok(ClassifierPolicy { angle_tol })
        } else {
            Err(Error::invalid(format!(
                "angle tolerance {angle_tol} must be >= 0"
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProjectionTag {
    SinglePoint,
    FullSubspace,
    ClosedCone,
    ApexPlusOpenCone,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionClass {
    pub tag: ProjectionTag,
    pub projected_apex: RealVector,
    /// `P v`, unnormalized. Present for the cone tags.
    pub projected_axis: Option<RealVector>,
    /// `φ₁`. Present for the cone tags.
    pub projected_aperture: Option<Radians>,
    /// `ψ = ∠(v, V⊥)` as used for the decision.
    pub axis_complement_angle: Radians,
    /// `φ − ψ`.
    pub boundary_margin: f64,
}

impl ProjectionClass {
    /// Half-aperture of the classified set seen as a cone in `V`:
    /// `0` for a single point, `π` for the whole subspace.
    pub fn predicted_aperture(&self) -> Radians {
        match self.tag {
            ProjectionTag::SinglePoint => Radians::ZERO,
            ProjectionTag::FullSubspace => Radians::STRAIGHT,
            _ => self
                .projected_aperture
                .expect("cone tags carry an aperture"),
        }
    }

    /// Membership of `w ∈ V` in the classified set, up to `tol` on the
    /// normalized cone margin. Open boundaries cannot be resolved in floating
    /// point, so the apex-plus-open-cone case is tested against its closure.
    pub fn contains(&self, w: &RealVector, tol: f64) -> Result<bool> {
        w.check_dim(self.projected_apex.dim())?;
        Ok(match self.tag {
            ProjectionTag::FullSubspace => true,
            _ => self.margin(w) >= -tol,
        })
    }

    /// Normalized cone margin of `w` against `C_V(Pa, Pv, φ₁)`; `+∞` for
    /// the whole subspace and `−‖w − Pa‖ / (‖Pa‖ + 1)` for a single point,
    /// so that `contains(w, tol)` is `margin(w) ≥ −tol` for every tag.
    pub fn margin(&self, w: &RealVector) -> f64 {
        match self.tag {
            ProjectionTag::FullSubspace => f64::INFINITY,
            ProjectionTag::SinglePoint => {
                -w.sub(&self.projected_apex).norm() / (self.projected_apex.norm() + 1.0)
            }
            _ => {
                let cone = RoundCone::new(
                    self.projected_apex.clone(),
                    self.projected_axis
                        .clone()
                        .expect("cone tags carry an axis"),
                    self.predicted_aperture(),
                    Flavor::Closed,
                )
                .expect("apex and axis share a dimension");
                cone.margin_unchecked(w)
            }
        }
    }

    /// `∠(w − Pa, Pv)`.
    pub fn angle_from_axis(&self, w: &RealVector) -> Option<Radians> {
        let axis = self.projected_axis.as_ref()?;
        angle_between(&w.sub(&self.projected_apex), axis).ok()
    }

    fn shifted(mut self, d: &RealVector) -> Self {
        self.projected_apex = self.projected_apex.add(d);
        self
    }
}

/// `φ₁` from `φ` and `ψ = ∠(v, V⊥)`.
///
/// For `ψ ∈ (0, π/2]` this is `arccos √((cos²φ − cos²ψ) / (1 − cos²ψ))`,
/// evaluated through the equivalent `sin φ₁ = sin φ / sin ψ` with
/// `cos²φ − cos²ψ = sin(ψ−φ)·sin(ψ+φ)`, which stays accurate near `φ₁ = 0`
/// and `φ₁ = π/2`. Otherwise `φ` is returned unchanged.
pub fn projected_aperture(phi: Radians, psi: Radians) -> Result<Radians> {
    let (phi, psi) = (phi.value(), psi.value());
    if !(psi > 0.0 && psi <= FRAC_PI_2) {
        return Ok(Radians::clamped(phi));
    }
    let radicand = (psi - phi).sin() * (psi + phi).sin();
    if radicand < -RADICAND_TOL {
        return Err(Error::regime(format!(
            "aperture formula needs phi <= psi, got phi={phi}, psi={psi}"
        )));
    }
    Ok(Radians::clamped(phi.sin().atan2(radicand.max(0.0).sqrt())))
}

/// Widest `φ` whose projected aperture is `φ₁`:
/// `arccos √(cos²ψ + cos²φ₁ − cos²ψ cos²φ₁)`, i.e. `sin φ = sin ψ sin φ₁`.
pub fn inverse_aperture(phi1: Radians, psi: Radians) -> Result<Radians> {
    let (phi1, psi) = (phi1.value(), psi.value());
    if phi1 >= FRAC_PI_2 {
        return Err(Error::regime(format!(
            "projected aperture {phi1} must be below pi/2"
        )));
    }
    if !(psi > 0.0 && psi <= FRAC_PI_2) {
        return Err(Error::regime(format!("psi {psi} must lie in (0, pi/2]")));
    }
    let sine = psi.sin() * phi1.sin();
    let cosine = (psi.cos().powi(2) + (psi.sin() * phi1.cos()).powi(2)).sqrt();
    Ok(Radians::clamped(sine.atan2(cosine)))
}

enum Row {
    Point,
    OpenHalfSpace,
    Cone(Radians),
    Full,
}

fn table_row(phi: Radians, psi: Radians, tol: f64) -> Result<Row> {
    let (p, s) = (phi.value(), psi.value());
    if (p - s).abs() <= tol {
        return Ok(if s <= tol {
            Row::Point
        } else if s < FRAC_PI_2 - tol {
            Row::OpenHalfSpace
        } else if s <= FRAC_PI_2 {
            Row::Cone(Radians::RIGHT)
        } else {
            Row::Cone(phi)
        });
    }
    if p < s {
        Ok(Row::Cone(projected_aperture(phi, psi)?))
    } else {
        Ok(Row::Full)
    }
}

struct Geometry {
    projected_apex: RealVector,
    projected_axis: RealVector,
    psi: Radians,
}

fn geometry(cone: &RoundCone, space: &SubspaceBasis) -> Result<Geometry> {
    cone.apex().check_dim(space.ambient_dim())?;
    Ok(Geometry {
        projected_apex: space.project_onto(cone.apex())?,
        projected_axis: space.project_onto(cone.axis())?,
        psi: angle_to_complement(cone.axis(), space)?,
    })
}

fn build(
    tag: ProjectionTag,
    geo: Geometry,
    aperture: Option<Radians>,
    phi: Radians,
) -> ProjectionClass {
    let is_cone = matches!(
        tag,
        ProjectionTag::ClosedCone | ProjectionTag::ApexPlusOpenCone
    );
    ProjectionClass {
        tag,
        projected_apex: geo.projected_apex,
        projected_axis: is_cone.then_some(geo.projected_axis),
        projected_aperture: if is_cone { aperture } else { None },
        axis_complement_angle: geo.psi,
        boundary_margin: phi.value() - geo.psi.value(),
    }
}

/// Projection of a closed cone onto `V`.
pub fn classify(
    cone: &RoundCone,
    space: &SubspaceBasis,
    policy: ClassifierPolicy,
) -> Result<ProjectionClass> {
    if cone.flavor() != Flavor::Closed {
        return Err(Error::invalid("classify expects a closed cone"));
    }
    let geo = geometry(cone, space)?;
    let phi = cone.half_aperture();
    Ok(match table_row(phi, geo.psi, policy.angle_tol)? {
        Row::Point => build(ProjectionTag::SinglePoint, geo, None, phi),
        Row::OpenHalfSpace => build(
            ProjectionTag::ApexPlusOpenCone,
            geo,
            Some(Radians::RIGHT),
            phi,
        ),
        Row::Cone(phi1) => build(ProjectionTag::ClosedCone, geo, Some(phi1), phi),
        Row::Full => build(ProjectionTag::FullSubspace, geo, None, phi),
    })
}

/// Projection of an apex-open cone: `C°_V(Pa, Pv, φ₁)` for `φ ≤ ψ`, `V` for
/// `φ > ψ`, with `φ₁ = 0` when `φ = ψ = 0`.
pub fn project_open_cone(
    cone: &RoundCone,
    space: &SubspaceBasis,
    policy: ClassifierPolicy,
) -> Result<ProjectionClass> {
    if cone.flavor() != Flavor::ApexOpen {
        return Err(Error::invalid(
            "project_open_cone expects an apex-open cone",
        ));
    }
    let geo = geometry(cone, space)?;
    let phi = cone.half_aperture();
    let psi = geo.psi;
    let tol = policy.angle_tol;
    if phi.value() > psi.value() + tol {
        return Ok(build(ProjectionTag::FullSubspace, geo, None, phi));
    }
    let phi1 = match table_row(phi, psi, tol)? {
        Row::Point => Radians::ZERO,
        Row::OpenHalfSpace => Radians::RIGHT,
        Row::Cone(phi1) => phi1,
        Row::Full => unreachable!("phi <= psi + tol"),
    };
    Ok(build(ProjectionTag::ApexPlusOpenCone, geo, Some(phi1), phi))
}

/// Projection onto the affine subspace `V + {d}` with `d ⊥ V`. Dispatches on
/// the cone flavor.
pub fn classify_affine(
    cone: &RoundCone,
    space: &SubspaceBasis,
    offset: &RealVector,
    policy: ClassifierPolicy,
) -> Result<ProjectionClass> {
    offset.check_dim(space.ambient_dim())?;
    if space.project_onto(offset)?.norm() > OFFSET_ORTHO_TOL * offset.norm() {
        return Err(Error::invalid(
            "affine offset must be orthogonal to the subspace",
        ));
    }
    let class = match cone.flavor() {
        Flavor::Closed => classify(cone, space, policy)?,
        Flavor::ApexOpen => project_open_cone(cone, space, policy)?,
    };
    Ok(class.shifted(offset))
}

/// Widest half-aperture of a cone inside an orthant of `R^n`:
/// `arccos √((n−1)/n)`.
pub fn orthant_max_aperture(n: usize) -> Result<Radians> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "orthant dimension {n} must be >= 2"
        )));
    }
    Ok(Radians::clamped(1.0f64.atan2(((n - 1) as f64).sqrt())))
}

/// Smallest `t` with `∫₀¹u ≥ α‖u‖ ⟹ ∫₀ᵗu ≥ 0` on `L²(0,1)`: `1 − α²`.
pub fn l2_threshold(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha {alpha} must lie in (0, 1)")));
    }
    Ok(1.0 - alpha * alpha)
}
