//! Exact and enumerative checks for generic stabilizers of simple algebraic
//! groups acting on Grassmannians of irreducible modules.

pub mod classes;
pub mod engine;
pub mod data;
pub mod error;
pub mod linalg;
pub mod natural;
pub mod primes;
pub mod psinets;
pub mod rootsys;
pub mod tuples;
pub mod weights;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/tuples.md")]
    pub mod tuples {}
    #[doc = include_str!("../../../book/src/nets.md")]
    pub mod nets {}
    #[doc = include_str!("../../../book/src/scripts.md")]
    pub mod scripts {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    pub mod sweeps {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
    #[doc = include_str!("../../../book/src/data.md")]
    pub mod data {}
}
