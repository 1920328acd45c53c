//! Compiles every chapter of the guide in `book/` as doc-tests, so
//! `cargo test` keeps the snippets in sync with the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/numbers.md")]
pub mod numbers {}
#[doc = include_str!("../../../book/src/iteration.md")]
pub mod iteration {}
#[doc = include_str!("../../../book/src/topology.md")]
pub mod topology {}
#[doc = include_str!("../../../book/src/resonance.md")]
pub mod resonance {}
#[doc = include_str!("../../../book/src/systems.md")]
pub mod systems {}
#[doc = include_str!("../../../book/src/kronecker.md")]
pub mod kronecker {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
