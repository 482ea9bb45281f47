#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod calculus;
pub mod dirac;
pub mod error;
pub mod lorentz;
pub mod mechanics;
pub mod report;
pub mod sample;
pub mod star;

// The guide's listings run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/star-products.md")]
    mod star_products {}
    #[doc = include_str!("../../../book/src/projectors.md")]
    mod projectors {}
    #[doc = include_str!("../../../book/src/dirac.md")]
    mod dirac {}
    #[doc = include_str!("../../../book/src/lorentz.md")]
    mod lorentz {}
    #[doc = include_str!("../../../book/src/mechanics.md")]
    mod mechanics {}
}
