//! Exact-arithmetic machinery for relative trisections of knot traces.
//!
//! A relative trisection of a compact 4-manifold with connected boundary is
//! described by four parameters `(g, k; p, b)` and, concretely, by a diagram
//! of curve systems on a compact surface.  This crate mechanizes the
//! arithmetic layer of that theory for knot traces (the 4-manifolds obtained
//! by attaching a single 2-handle to the 4-ball along a framed knot):
//!
//! * [`tris_params`] — admissible parameter enumeration for a fixed Euler
//!   characteristic, induced boundary open books, and Heegaard-genus bounds.
//! * [`surface`] — homology-level curve systems on `Σ_{g,b}`, Dehn-twist
//!   transvections, slides, and the standardness necessary conditions for
//!   relative trisection diagrams.
//! * [`three_manifolds`] — Smith normal form, first homology of framed-link
//!   presentations, lens-space normalization and homeomorphism testing, and
//!   the small three-manifold classes arising as trace boundaries.
//! * [`catalog`] — parametrized diagram families realizing traces of torus,
//!   pretzel, and figure-eight knots, stored as data files and instantiated
//!   by exact formula evaluation.
//! * [`oracle`] — trisection-genus bounds for knot traces, combining cited
//!   surgery classification rules (lower bounds) with the catalog (upper
//!   bounds).
//!
//! All arithmetic is exact over the integers; no floating point is used
//! anywhere.  Geometric claims that cannot be certified at the homology
//! level are reported as necessary conditions or carry explicit condition
//! flags, never as unqualified verdicts.

pub mod catalog;
pub mod error;
pub mod formula;
pub mod linalg;
pub mod oracle;
pub mod surface;
pub mod three_manifolds;
pub mod tris_params;

pub use error::{Error, Result};
