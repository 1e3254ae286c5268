//! Entropy-driven compaction of unnormalized mass vectors: gradient descent
//! on Shannon entropy, the expected number of distinct states seen in `m`
//! draws, independent numeric oracles, and continuous analogues.

pub mod continuous;
pub mod descent;
pub mod error;
pub mod experiments;
pub mod masses;
pub mod oracles;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/masses.md")]
    mod masses {}
    #[doc = include_str!("../../../book/src/expected_cardinality.md")]
    mod expected_cardinality {}
    #[doc = include_str!("../../../book/src/descent.md")]
    mod descent {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/continuous.md")]
    mod continuous {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
