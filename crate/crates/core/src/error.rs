use thiserror::Error;

/// Which precondition of [`crate::witness::lift_to_cone`] failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftViolation {
    SeedOutsideCone,
    SeedProjectsToApex,
    TargetOutsideSubspace,
    TargetOutsideProjectedCone,
}

impl std::fmt::Display for LiftViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            LiftViolation::SeedOutsideCone => "seed vector is not a member of the cone",
            LiftViolation::SeedProjectsToApex => "seed vector projects onto the projected apex",
            LiftViolation::TargetOutsideSubspace => "target vector does not lie in the subspace",
            LiftViolation::TargetOutsideProjectedCone => {
                "target vector is wider from the projected axis than the seed"
            }
        };
        f.write_str(msg)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite coordinate at index {index}")]
    NonFinite { index: usize },

    #[error("angle {0} is outside [0, pi]")]
    AngleOutOfRange(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Inputs are well-formed but outside the regime where the requested
    /// formula or construction applies.
    #[error("regime violation: {0}")]
    Regime(String),

    #[error("lift precondition violated: {0}")]
    Lift(LiftViolation),

    #[error("root search failed: {0}")]
    RootNotFound(String),
}

impl Error {
    pub(crate) fn regime(msg: impl Into<String>) -> Self {
        Error::Regime(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
