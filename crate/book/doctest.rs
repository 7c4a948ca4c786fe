// mdbook can't run listings that depend on a crate, so every chapter is
// pulled in as a module doc and `cargo test --doc -p bdanchor-book` runs the
// listings instead. One module per chapter keeps failures attributable.

#[doc = include_str!("src/intro.md")]
pub mod intro {}
#[doc = include_str!("src/anchors.md")]
pub mod anchors {}
#[doc = include_str!("src/rotations.md")]
pub mod rotations {}
#[doc = include_str!("src/fingerprints.md")]
pub mod fingerprints {}
#[doc = include_str!("src/index.md")]
pub mod index {}
#[doc = include_str!("src/persistence.md")]
pub mod persistence {}
#[doc = include_str!("../README.md")]
pub mod readme {}
