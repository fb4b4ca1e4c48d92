//! Exact invariants of low-degree Hurwitz spaces.
//!
//! A simply branched degree-`d` cover `C → P¹` of genus `g` embeds in the
//! projectivisation of its Tschirnhausen bundle `E` (rank `d−1`, degree
//! `g+d−1`), and its ideal is resolved by syzygy bundles `N_i`. Since every
//! bundle on P¹ splits, all of this is discrete data, and this crate does
//! the bookkeeping exactly:
//!
//! - [`splitbundle`]: split bundles, their algebra, cohomology and specialization order.
//! - [`tschirnhausen`]: tameness, `E[m]`, and Hirzebruch-surface numerology.
//! - [`loci`]: codimensions of Maroni and Casnati–Ekedahl loci.
//! - [`picbound`]: the Picard rank bound for `d = 3, 4, 5`.
//! - [`testcurves`]: boundary intersection matrices.
//! - [`covermodels`]: explicit cubic, quadric-pair and Pfaffian models.
//!
//! Sweeps go through [`sweep`], which uses rayon when the `parallel`
//! feature is on.

pub mod covermodels;
pub mod error;
pub mod linalg;
pub mod loci;
pub mod picbound;
pub mod poly;
pub mod splitbundle;
pub mod sweep;
pub mod testcurves;
pub mod tschirnhausen;

pub use error::{Error, Result};
pub use poly::RationalPoly;
pub use splitbundle::SplitBundle;
pub use sweep::Parallelism;
pub use tschirnhausen::CoverClass;
