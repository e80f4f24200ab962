//! The guide in `book/`, compiled so that every snippet runs as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}

#[doc = include_str!("../../../book/src/linear-algebra.md")]
pub mod linear_algebra {}

#[doc = include_str!("../../../book/src/wedges.md")]
pub mod wedges {}

#[doc = include_str!("../../../book/src/invariant-span.md")]
pub mod invariant_span {}

#[doc = include_str!("../../../book/src/points.md")]
pub mod points {}

#[doc = include_str!("../../../book/src/finite-fields.md")]
pub mod finite_fields {}

#[doc = include_str!("../../../book/src/two-sided.md")]
pub mod two_sided {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
