//! Alpha-sections of planar convex bodies.
//!
//! For a convex body `K` and `0 < alpha < 1`, the alpha-section of direction
//! `theta` is the oriented line leaving area `alpha * |K|` on its right. The
//! midpoints of these chords trace the envelope of the family; the
//! intersection of the left half-planes is the alpha-core (convex floating
//! body). This crate computes all of these objects, classifies directions
//! by the sign of the envelope velocity, and locates the critical values
//! `alpha_B`, `alpha_Z` and `alpha_K`.
//!
//! ```
//! use alphasec::{make_polygon, alpha_core, CoreKind, Point};
//!
//! let square = make_polygon(&[
//!     Point::new(0.0, 0.0),
//!     Point::new(1.0, 0.0),
//!     Point::new(1.0, 1.0),
//!     Point::new(0.0, 1.0),
//! ])?;
//! let core = alpha_core(&square, 0.25, 256)?;
//! assert!(matches!(core.kind, CoreKind::Region(_)));
//! # Ok::<(), alphasec::Error>(())
//! ```

pub mod analysis;
pub mod billiard;
pub mod bodies;
pub mod cli;
pub mod cores;
pub mod envelope;
pub mod error;
pub mod export;
pub mod geom;
pub mod oracle;
pub mod sections;

pub use analysis::{
    asymmetry_quotient, chords_bisected_by, conjecture_check, core_containment, hyperbola_arc_check, solve_alpha1,
    BisectedChord, BisectedChords, ConicFit, Witness,
};
pub use billiard::{outer_billiard_step, BilliardTable};
pub use bodies::{make_disc, make_polygon, BodySpec, BoundaryFeature, ConvexBody, Shape, TangentCone};
pub use cores::{
    alpha_core, core_of_family, critical_alpha_B, critical_alpha_K, critical_alpha_Z, critical_values, CoreKind,
    CoreResult, CriticalValues, FamilyEntry, TangentLineFamily,
};
pub use envelope::{
    classify_direction, fbz_from_curve, fbz_partition, sample_envelope, EnvelopeCurve, EnvelopeSample, FbzReport,
    Label, LabelSet,
};
pub use error::{Error, Result};
pub use geom::{Angle, OrientedLine, Point};
pub use oracle::{bruteforce_core, fd_velocity, mc_area, McEstimate, Seed, SplitMix64};
pub use sections::{alpha_section, chord, section_chord, velocity, Chord, VelocityInterval};
