//! Closed-form real roots of real cubics, and the exact conjugates, proximal
//! mappings and projections that reduce to them.
//!
//! Every operator has a brute-force counterpart in [`oracle`].

pub mod cubic;
pub mod epigraph;
pub mod error;
pub mod oracle;
pub mod perspective;
pub mod point;
pub mod quartic;
pub mod reciprocal;
pub mod saddle;

pub use cubic::{Branch, ComplexPair, Cubic, DepressedCubic, MonotoneInterval, RealRootSet, Trichotomy};
pub use epigraph::{project_epigraph, EpiBranch, EpiProjection};
pub use error::{Error, Result};
pub use oracle::Bracket;
pub use perspective::{prox_perspective, PerspectiveBranch, PerspectiveProxResult};
pub use point::LabeledPoint;
pub use quartic::{is_convex, prox_geometric, prox_pure_quartic, ConjugateValue, ConvexQuartic};
pub use reciprocal::{ReciprocalBranch, ReciprocalFn, ReciprocalProx};
pub use saddle::{SaddleBranch, SaddleKind, SaddleProjection, SaddleSet};
