//! Compiles every code block in the book as a doc-test, so `cargo test
//! --workspace` keeps the guide and the library in sync. One module per
//! chapter makes a failing snippet easy to locate.

#[doc = include_str!("../../src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../src/diagrams.md")]
pub mod diagrams {}

#[doc = include_str!("../../src/bracket.md")]
pub mod bracket {}

#[doc = include_str!("../../src/coupling.md")]
pub mod coupling {}

#[doc = include_str!("../../src/expectation.md")]
pub mod expectation {}

#[doc = include_str!("../../src/homfly.md")]
pub mod homfly {}

#[doc = include_str!("../../src/goldman.md")]
pub mod goldman {}

#[doc = include_str!("../../src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../src/verification.md")]
pub mod verification {}
