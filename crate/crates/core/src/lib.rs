pub mod bipartite;
pub mod error;
pub mod jcm;
pub mod numerics;
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/bipartite.md")]
    mod bipartite {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/quasi_photons.md")]
    mod quasi_photons {}
    #[doc = include_str!("../../../book/src/spin.md")]
    mod spin {}
    #[doc = include_str!("../../../book/src/heisenberg.md")]
    mod heisenberg {}
}
