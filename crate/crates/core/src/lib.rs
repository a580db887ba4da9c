//! Hard-edge gap probabilities for Laguerre β-ensembles.
//!
//! Three independent routes to the same quantities live side by side:
//!
//! * exact series in Jack polynomials ([`hypergeom`], built on [`jack`] and
//!   [`partitions`]), together with the finite-dimensional quadratures of
//!   [`gap::exact_en_hard`];
//! * integral representations over tori and branch-cut contours ([`contour`]);
//! * asymptotic and large-deviation formulas ([`gap`]) whose constants are
//!   assembled from the Barnes double gamma function ([`barnes`]).
//!
//! Monte Carlo sampling of bidiagonal matrix models ([`mc`]) closes the loop.
//!
//! Weight convention: unless a function says otherwise, the finite-N ensemble
//! has eigenvalue density proportional to
//! `∏ λ^{βa/2} e^{-βλ/2} ∏|λ_k - λ_j|^β`, and the hard-edge variable `s` is
//! obtained from the finite-N interval `(0, x)` through `x = s / (4N)`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod barnes;
pub mod cli;
pub mod contour;
pub mod error;
pub mod gap;
pub mod hypergeom;
pub mod jack;
pub mod logspace;
pub mod mc;
pub mod partitions;
pub mod quad;
pub mod special;
pub mod suite;

pub use error::{Error, Result};
pub use hypergeom::{ArgBlocks, HypergeomSpec, SeriesResult};
pub use partitions::{Alpha, Partition};
