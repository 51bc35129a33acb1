//! Group constructor AST, canonical element normal forms, word metric via
//! ball enumeration, and Bass–Serre tree geometry for free products.

mod ball;
mod element;
mod spec;
mod tree;

pub use ball::{ball, displacement, word_norm, Ball, DEFAULT_MAX_ELEMENTS};
pub use element::{
    generators, hnn_decompose, identity, inverse, multiply, pi_retract, theta_retract,
    GroupElement, Letter, Side,
};
pub use spec::{Auto, GroupSpec};
pub use tree::{act_on_tree, pred, tree_norm, TreeVertex};

use alloc::string::String;
use core::fmt;

/// Errors from group operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// Element does not conform to the spec it was used with.
    ShapeMismatch { expected: String, found: String },
    /// Ball or norm enumeration exceeded the element-count cap.
    Overflow { max_elements: usize },
    /// Free word construction with an explicit identity letter.
    IdentityLetter,
    /// Free word construction with adjacent letters from the same factor.
    NonAlternating,
    /// Operation on the root vertex that requires a non-root vertex.
    RootHasNoPredecessor,
    /// Hnn node over a base other than Z.
    UnsupportedHnnBase,
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::ShapeMismatch { expected, found } => {
                write!(f, "element shape mismatch: expected {expected}, found {found}")
            }
            GroupError::Overflow { max_elements } => {
                write!(f, "ball enumeration exceeded cap of {max_elements} elements")
            }
            GroupError::IdentityLetter => {
                write!(f, "free word contains an explicit identity letter")
            }
            GroupError::NonAlternating => {
                write!(f, "free word letters must alternate between factors")
            }
            GroupError::RootHasNoPredecessor => {
                write!(f, "the root vertex has no predecessor")
            }
            GroupError::UnsupportedHnnBase => {
                write!(f, "hnn base must be Z")
            }
        }
    }
}

impl core::error::Error for GroupError {}
