//! Exact computational algebra for rational group algebras of finite groups.
//!
//! Given a finite group as a concrete multiplication table, this crate computes
//! strong Shoda pairs, the primitive central idempotents of the rational group
//! algebra they generate, descriptors of the corresponding simple components,
//! complete sets of orthogonal primitive idempotents and matrix units for
//! nilpotent groups, and explicit generators of large unit subgroups of the
//! integral group ring.  Every algebraic identity the library reports is
//! verified by exact rational arithmetic — there are no floating-point
//! tolerances anywhere.

pub mod alg;
pub mod arith;
pub mod group;
pub mod primidem;
pub mod report;
pub mod shoda;
pub mod wedderburn;
pub mod zunits;

/// Errors shared by every layer of the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("group spec parse error: {0}")]
    SpecParse(String),
    #[error("group order {got} exceeds the configured cap {cap}")]
    CapExceeded { got: usize, cap: usize },
    #[error("invalid multiplication table: {0}")]
    BadTable(String),
    #[error("invalid presentation parameters: {0}")]
    InvalidPresentation(String),
    #[error("the given element set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal in the required overgroup")]
    NotNormal,
    #[error("operands belong to different groups")]
    MixedGroups,
    #[error("element is not a central idempotent")]
    NotCentralIdempotent,
    #[error("group is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("invalid unit parameters: {0}")]
    BadUnitParams(String),
    #[error("certificates from different components or signs were mixed")]
    MixedCertificates,
    #[error("element is not a unit: it is singular in the rational group algebra")]
    NotAUnitSingular,
    #[error("element is invertible over the rationals but its inverse has non-integral coefficients")]
    NotAUnitNonIntegral,
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("internal verification failed: {0}")]
    Defect(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Knobs that bound the (always terminating) searches.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Largest group order accepted by the spec parser.
    pub order_cap: usize,
    /// Height ceiling for the iterative-deepening rational search used when
    /// solving `1 + x^2 + y^2 = 0` inside a component (the constructive
    /// fallbacks engage before this becomes an obstruction).
    pub xy_height_cap: u32,
    /// Worker threads for the embarrassingly parallel verification loops.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { order_cap: 256, xy_height_cap: 6, jobs: 1 }
    }
}
