use thiserror::Error;

/// Precondition violations shared by the deciders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("operand must be a nonempty subset")]
    EmptySubset,
    #[error("element {element} is outside the carrier of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("subset {subset} is not contained in the carrier of order {order}")]
    SubsetOutOfRange { subset: String, order: usize },
    #[error("fuzzy subset has {found} grades, carrier has order {order}")]
    ArityMismatch { found: usize, order: usize },
}

/// A structure failed validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid structure: {reason}")]
pub struct StructureError {
    pub reason: String,
}
