//! Topological classification of finite group actions on compact Riemann
//! surfaces with planar signature `(0; m₁,…,m_r)`.
//!
//! The pipeline runs genus → signatures ([`signature`]) → candidate groups
//! ([`catalog`]) → generating vectors ([`epimorphism`]) → orbits of the
//! automorphism group and the braid-like moves ([`braid`]) → census rows
//! ([`census`]).
//!
//! ```
//! use planar_actions::{catalog, census, signature::Signature};
//! use std::sync::Arc;
//!
//! let z8 = catalog::realize(&"cyclic(8)".parse().unwrap()).unwrap();
//! let sig: Signature = "0;2,8,8".parse().unwrap();
//! let auts = || Arc::new(z8.automorphisms());
//! let c = census::classify(&z8, &sig, census::Mode::Equiv, census::DEFAULT_EPI_CAP, &auts).unwrap();
//! assert_eq!((c.epi, c.sequi, c.equiv), (4, Some(1), Some(1)));
//! ```

pub mod braid;
pub mod catalog;
pub mod census;
pub mod epimorphism;
pub mod error;
pub mod group;
pub mod signature;

pub use catalog::{Catalog, GroupSpec};
pub use census::{CensusRow, Mode};
pub use epimorphism::{EpiSet, GenVector};
pub use error::{BraidError, CatalogError, CensusError, GroupError, SignatureError};
pub use group::{Automorphism, Element, GroupTable};
pub use signature::Signature;

/// Compiles the guide's code samples as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/signatures.md")]
    mod signatures {}
    #[doc = include_str!("../../../book/src/epimorphisms.md")]
    mod epimorphisms {}
    #[doc = include_str!("../../../book/src/equivalence.md")]
    mod equivalence {}
    #[doc = include_str!("../../../book/src/catalogs.md")]
    mod catalogs {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
