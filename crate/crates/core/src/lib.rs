//! Bands, crowds and F1-structures.
//!
//! The crate covers built-in bands with null sets ([`band`]), point functors
//! of projective spaces, Grassmannians and flag varieties ([`points`]),
//! matroid oracles ([`matroid`]), crowds and their activities ([`crowd`],
//! [`activity`]), flag complexes ([`complex`]), incidence geometries and
//! generalized polygons ([`polygon`]) and the classification of
//! F1-structures on small projective spaces ([`f1class`]).
//!
//! [`suite`] runs the numbered acceptance criteria and produces a
//! deterministic JSON report.

pub mod activity;
pub mod band;
pub mod complex;
pub mod crowd;
pub mod error;
pub mod f1class;
pub mod linalg;
pub mod matroid;
pub mod points;
pub mod polygon;
pub mod subsets;
pub mod suite;

pub use band::{Band, BandKind, BandMorphism, Element, FormalSum, NullAcc, Units};
pub use error::{Error, Result};
pub use complex::{SimplicialComplex, SimplicialMap};
pub use crowd::{BandMatrix, Crowd, GroupTable, SlCrowd};
pub use f1class::F1Structure;
pub use matroid::MatroidByBases;
pub use points::{FlagPoint, Functor, PluckerFamily, ProjPoint};
pub use polygon::{IncidenceGeometry, PolygonCertificate, ProjectiveSpaceModel};
pub use suite::{run_suite, SuiteOptions, SuiteReport};
