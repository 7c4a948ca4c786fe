//! A text index over locally consistent bidirectional string anchors.
//!
//! The index samples a text at its (randomized) reduced bidirectional
//! anchors, sorts the sampled suffixes and reversed prefixes, and answers
//! exact pattern matching for patterns of length at least `ℓ`.
//!
//! ```
//! use bdanchor::{fast_anchors, build_full, AnchorScheme, Text};
//!
//! let text = Text::new("aacaaacgcta")?;
//! let scheme = AnchorScheme::lex(5, 1)?;
//! let anchors = fast_anchors(&text, &scheme, 25_000)?;
//! assert_eq!(anchors.positions(), &[4, 5, 6, 7]);
//!
//! let index = build_full(&text, &anchors, true)?;
//! assert_eq!(index.query_bidirectional(&text, b"acaaa")?, vec![2]);
//! assert_eq!(index.query_grid(&text, b"acaaa")?, vec![2]);
//! # Ok::<(), bdanchor::Error>(())
//! ```
//!
//! Positions in the public API are 1-based and ranges inclusive.

pub mod anchors;
pub mod error;
pub mod index;
pub mod kr;
pub mod lce;
pub mod minimizers;
pub mod range2d;
pub mod rmq;
pub mod text;

pub use anchors::{
    default_r, fast_anchors, fast_anchors_par, naive_anchors, pattern_anchor, AnchorKind, AnchorScheme, AnchorSet,
};
pub use error::{Error, Result};
pub use index::{build_full, build_sparse, BdIndex, MatchRange, SearchFirst, Side};
pub use kr::{build_kr, kr_lce, KrContext};
pub use lce::{build_lce, LceIndex};
pub use minimizers::{lex_minimizers, ran_minimizers, MinimizerOrder, MinimizerParams};
pub use range2d::{build_grid, Grid2D};
pub use text::{compare_rotations_naive, naive_find_all, Text};
