//! Surgery-equivalence invariants of 3-manifolds presented by framed links.

pub mod form_iso;
pub mod format;
pub mod homology;
pub mod linalg;
pub mod milnor;
pub mod numtheory;
pub mod presentation;
pub mod report;
pub mod trilinear;
pub mod verdict;
