use thiserror::Error;

/// Errors shared across the exact and numeric lanes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Integration in `tau` requires a series with zero constant term.
    #[error("cannot integrate in tau: constant term of the series is nonzero")]
    NonzeroConstantTerm,
    /// Determinant of a non-square matrix.
    #[error("determinant requires a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    /// Even zeta values are only defined for even arguments here.
    #[error("zeta_even requires an even argument, got {0}")]
    OddIndex(u32),
    /// Operation defined for odd weights only.
    #[error("operation requires an odd weight, got {0}")]
    EvenWeight(u32),
    /// Constant terms are only available in lengths one and two; q-expansions
    /// stop at length three.
    #[error("unsupported length {0} for this operation")]
    UnsupportedLength(usize),
    /// Theta evaluation needs a point in the upper half-plane.
    #[error("tau must lie in the upper half-plane")]
    NotUpperHalfPlane,
    /// Kronecker series argument hit the lattice.
    #[error("argument is at (or too close to) a lattice point")]
    PoleAtLatticePoint,
    /// Iterated integral with boundary index 1 diverges without tangential
    /// base point regularization, which is not attempted numerically.
    #[error("boundary index 1 is not integrable without regularization")]
    BoundaryOne,
    /// Adaptive integration could not certify the requested tolerance.
    #[error("step control could not certify the requested tolerance {0:e}")]
    ToleranceNotMet(f64),
    /// A rank changed when the truncation order was raised, so the order was
    /// too small to certify it.
    #[error("rank at weight {weight} changed above order {order}: raise the truncation order")]
    RankUnstable { weight: u32, order: usize },
    /// Numeric evaluation of a series whose constant term is not known.
    #[error("constant term of the series is unknown")]
    UnknownConstant,
}
