//! Doctest harness for the guide in `book/`.
//!
//! mdbook cannot run chapter code blocks against the workspace crates, so
//! each chapter is included here as module documentation and
//! `cargo test --doc` executes every ```rust block. One module per chapter
//! keeps failures attributable to their source file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/groebner.md")]
pub mod groebner {}

#[doc = include_str!("../../../book/src/ring-towers.md")]
pub mod ring_towers {}

#[doc = include_str!("../../../book/src/matrix-factorizations.md")]
pub mod matrix_factorizations {}

#[doc = include_str!("../../../book/src/modules.md")]
pub mod modules {}

#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
