use thiserror::Error;

use crate::theorem::Violation;

/// Errors raised by the group kernels and the closedness machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Cayley table is empty")]
    EmptyTable,
    #[error("Cayley table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("Cayley table has {labels} labels for {order} elements")]
    LabelCount { labels: usize, order: usize },
    #[error("table entry [{row}][{col}] = {value} is outside [0, {order})")]
    NotClosed { row: usize, col: usize, value: usize, order: usize },
    #[error("operation is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("label {label:?} is used more than once")]
    DuplicateLabel { label: String },
    #[error("unsupported parameter {parameter} for {family}")]
    UnsupportedParameter { family: String, parameter: String },
    #[error("group order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("generated group exceeds the size cap of {max} elements")]
    GenerationOverflow { max: usize },
    #[error("operands belong to different structures")]
    MixedStructures,
    #[error("element index {index} is outside a structure of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("operation requires a nonempty subset")]
    EmptySubset,
    #[error("n must be at least {min}, got {n}")]
    InvalidArity { n: usize, min: usize },
    #[error("tuple enumeration needs {needed} tuples, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("coset representative lies in the subgroup")]
    RepInSubgroup,
    #[error("left and right cosets differ, so the coset is never n-closed")]
    NonCommutingCoset,
    #[error("subset is not {n}-closed")]
    NotNClosed { n: usize },
    #[error("subset is already 2-closed")]
    AlreadyClosed,
    #[error("prefix element {index} is not a member of the subset")]
    PrefixNotInD { index: usize },
    #[error("prefix has {len} elements, expected {expected}")]
    PrefixLength { len: usize, expected: usize },
    #[error("subgroup is not proper")]
    NotProperSubgroup,
    #[error("generator list is empty")]
    NoGenerators,
    #[error("theorem violation: {0}")]
    TheoremViolation(Violation),
    #[error("invalid Cayley table file: {0}")]
    TableFormat(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
