use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a bijection of 0..{degree}: {mapping:?}")]
    InvalidPermutation { degree: usize, mapping: Vec<usize> },

    #[error("invalid multiplication table: {0}")]
    InvalidGroupTable(String),

    #[error("group of order {order} exceeds the supported maximum {max}")]
    GroupTooLarge { order: usize, max: usize },

    #[error("element {element} is not an id in a group of order {order}")]
    NotInGroup { element: usize, order: usize },

    #[error("member set is not a subgroup of the given group")]
    NotASubgroup,

    #[error("subgroup lattice search refused for order {order} (maximum {max})")]
    LatticeTooLarge { order: usize, max: usize },

    #[error("enumeration of {tuples} tuples exceeds the guard of {max}")]
    EnumerationTooLarge { tuples: u128, max: u128 },

    #[error("group has no permutation realization for this operation")]
    NoPermutationRealization,

    #[error("tuple does not satisfy the surface relation")]
    RelationViolated,

    #[error("covering is reducible (monodromy not transitive)")]
    NotTransitive,

    #[error("expected a covering of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },

    #[error("coverings do not share a base (genus or branch count differs)")]
    BaseMismatch,

    #[error("no orbit with index {index}; the covering has {count} orbits")]
    NoSuchOrbit { index: usize, count: usize },

    #[error("inconsistent ramification data: {0}")]
    InconsistentProfile(String),

    #[error("Riemann-Hurwitz contribution is odd; no integral genus exists")]
    NonIntegralGenus,

    #[error("invalid polarization type: {0}")]
    InvalidPolarizationType(String),

    #[error("polarization type outside the supported dichotomy: {0}")]
    UnrecognizedType(String),

    #[error("invalid Weierstrass incidence: {0}")]
    InvalidIncidence(String),

    #[error("expected {expected} distinct labels, found {found}")]
    WrongLabelCount { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
