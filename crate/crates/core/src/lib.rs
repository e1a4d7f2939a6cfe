//! Hadamard-type inequalities for co-ordinated s-convex functions on
//! rectangles: the underlying integral identity, the three families of
//! bounds with their corner, midpoint and aggregate forms, and tooling to
//! scan gaps across parameters.

pub mod analysis;
pub mod bounds;
pub mod domain;
pub mod error;
pub mod identity;
pub mod quad;
pub mod suite;
pub mod surfaces;

pub use domain::{
    make_holder_pair, make_rect, Corner, EvalPoint, HolderPair, NormalizationMode, PowerMeanQ,
    Rect, SExponent,
};
pub use error::{Error, ParseError, Result};
pub use surfaces::{parse_surface, Surface, SurfaceKind};
