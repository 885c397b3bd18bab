//! Infinite one-sided round cones `C(a, v, φ) = {u : ⟨u−a, v⟩ ≥ cos φ ‖u−a‖‖v‖}`
//! and their apex-open variants `C°(a, v, φ) = {a} ∪ {u : ⟨u−a, v⟩ > cos φ ‖u−a‖‖v‖}`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{Radians, RealVector};

/// Default membership tolerance, applied to the normalized margin.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// Boundary included.
    Closed,
    /// Apex included, rest of the boundary excluded.
    ApexOpen,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundCone {
    apex: RealVector,
    /// Stored as given; only its direction matters.
    axis: RealVector,
    half_aperture: Radians,
    flavor: Flavor,
}

impl RoundCone {
    pub fn new(
        apex: RealVector,
        axis: RealVector,
        half_aperture: Radians,
        flavor: Flavor,
    ) -> Result<Self> {
        axis.check_dim(apex.dim())?;
        Ok(RoundCone {
            apex,
            axis,
            half_aperture,
            flavor,
        })
    }

    /// Closed cone with its apex at the origin.
    pub fn closed(axis: RealVector, half_aperture: Radians) -> Self {
        let apex = RealVector::zeros(axis.dim());
        RoundCone {
            apex,
            axis,
            half_aperture,
            flavor: Flavor::Closed,
        }
    }

    /// Apex-open cone with its apex at the origin.
    pub fn apex_open(axis: RealVector, half_aperture: Radians) -> Self {
        RoundCone {
            flavor: Flavor::ApexOpen,
            ..Self::closed(axis, half_aperture)
        }
    }

    pub fn apex(&self) -> &RealVector {
        &self.apex
    }

    pub fn axis(&self) -> &RealVector {
        &self.axis
    }

    pub fn half_aperture(&self) -> Radians {
        self.half_aperture
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn dim(&self) -> usize {
        self.apex.dim()
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Self {
        RoundCone {
            flavor,
            ..self.clone()
        }
    }

    /// Dilation by `{shift}`: moves the apex, keeps everything else.
    pub fn translate(&self, shift: &RealVector) -> Result<Self> {
        shift.check_dim(self.dim())?;
        Ok(RoundCone {
            apex: self.apex.add(shift),
            ..self.clone()
        })
    }

    /// Signed slack `(⟨u−a, v⟩ − cos φ ‖u−a‖‖v‖) / (‖u−a‖‖v‖ + 1)`.
    pub fn margin(&self, u: &RealVector) -> Result<f64> {
        u.check_dim(self.dim())?;
        Ok(self.margin_unchecked(u))
    }

    pub(crate) fn margin_unchecked(&self, u: &RealVector) -> f64 {
        let d = u.sub(&self.apex);
        let scale = d.norm() * self.axis.norm();
        (d.dot(&self.axis) - self.half_aperture.cos() * scale) / (scale + 1.0)
    }

    /// Membership up to `tol` on the normalized margin. For the apex-open
    /// flavor a point within `tol` of the apex is accepted, otherwise the
    /// strict inequality must hold with margin above `tol`.
    pub fn contains(&self, u: &RealVector, tol: f64) -> Result<bool> {
        u.check_dim(self.dim())?;
        let margin = self.margin_unchecked(u);
        Ok(match self.flavor {
            Flavor::Closed => margin >= -tol,
            Flavor::ApexOpen => u.sub(&self.apex).norm() <= tol || margin > tol,
        })
    }
}
