//! The chapters of the guide in `book/`, one module each, so that
//! `cargo test` runs every snippet in the book.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}
#[doc = include_str!("../../../book/src/calculus.md")]
pub mod calculus {}
#[doc = include_str!("../../../book/src/closures.md")]
pub mod closures {}
#[doc = include_str!("../../../book/src/separation.md")]
pub mod separation {}
#[doc = include_str!("../../../book/src/spectra.md")]
pub mod spectra {}
#[doc = include_str!("../../../book/src/duality.md")]
pub mod duality {}
#[doc = include_str!("../../../book/src/representation.md")]
pub mod representation {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
