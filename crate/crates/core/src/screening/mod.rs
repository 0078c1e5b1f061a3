//! Correlation screening and conditioning-factor orientation.

mod binarize;
mod conditioning;
mod correlation;

pub use binarize::{binarize, BinarizeRule, BinaryEventTable};
pub use conditioning::{
    conditioning, orient, ConditioningStats, OrientWarning, Orientation, OrientedEdge,
};
pub use correlation::{
    correlation_matrix, pearson, select_pairs, CandidatePair, CorrelationMatrix, DEFAULT_THRESHOLD,
};
