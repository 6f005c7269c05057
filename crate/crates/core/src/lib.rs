//! Exact Hochschild deformation theory for finite-dimensional modules.
//!
//! A left module `M` over a finite-dimensional algebra `R` is the same thing
//! as an algebra map `ξ: R → End(M)`. This crate computes, in exact
//! arithmetic over `Q` or a prime field:
//!
//! * the cochain complex `Hom(R^{⊗n}, End(M))`, its differential and its
//!   cohomology ([`hochschild`]);
//! * truncated deformations `ξ_t = ξ + tξ_1 + t²ξ_2 + …`, their obstruction
//!   cocycles, order-by-order integration, conjugation by formal
//!   automorphisms and normal forms ([`deform`]);
//! * JSON problem and result documents for the `hochdef` command-line tool
//!   ([`io`]).
//!
//! ```
//! use hochdef::deform::{integrate, Integration};
//! use hochdef::fixtures;
//! use hochdef::hochschild::HochschildComplex;
//! use hochdef::linalg::Field;
//!
//! let module = fixtures::fixture_c(Field::Rational);
//! let complex = HochschildComplex::new(module.clone()).unwrap();
//! let sigma = fixtures::seed_c(&module);
//! match integrate(&complex, &sigma, 6).unwrap() {
//!     Integration::Integrated(d) => assert_eq!(d.order(), 6),
//!     Integration::Obstructed { .. } => unreachable!(),
//! }
//! ```
//!
//! The `book/` directory next to the crates walks through the theory with
//! runnable examples; they are compiled as doc-tests of this crate.

pub mod algebra;
pub mod deform;
mod error;
pub mod fixtures;
pub mod hochschild;
pub mod io;
pub mod linalg;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    mod linear_algebra {}
    #[doc = include_str!("../../../book/src/algebras-and-modules.md")]
    mod algebras_and_modules {}
    #[doc = include_str!("../../../book/src/hochschild-complex.md")]
    mod hochschild_complex {}
    #[doc = include_str!("../../../book/src/deformations.md")]
    mod deformations {}
    #[doc = include_str!("../../../book/src/obstructions.md")]
    mod obstructions {}
    #[doc = include_str!("../../../book/src/equivalence.md")]
    mod equivalence {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
