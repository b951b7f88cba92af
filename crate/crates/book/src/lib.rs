//! The guide's code listings, compiled as doctests. Each chapter becomes
//! an empty module whose documentation is the chapter itself.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}
#[doc = include_str!("../../../book/src/curves.md")]
pub mod curves {}
#[doc = include_str!("../../../book/src/riemann-roch.md")]
pub mod riemann_roch {}
#[doc = include_str!("../../../book/src/residues-and-twists.md")]
pub mod residues_and_twists {}
#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
