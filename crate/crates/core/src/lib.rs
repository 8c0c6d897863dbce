//! Exact toric models for the symplectic rational blowdown.
//!
//! The crate builds the moment-map domains whose boundary reductions model
//! the plumbed sphere chain `C_n`, its collar `C_n^-`, the lens space collar
//! `V_{n,m} = L(n,m) x (0, inf)` and the rational ball collar `A'_n`, and
//! decides with exact rational arithmetic whether the two collars fit
//! together inside `V_{n^2, n-1}`. On top of that it keeps the volume and
//! topological bookkeeping of the surgery.
//!
//! * [`lattice`]: rationals, lattice vectors, `GL(2, Z)` maps, negative
//!   continued fractions, lens corner types.
//! * [`domain`]: polygonal moment domains, edge spheres, containment, areas.
//! * [`surgery`]: the fit inequality, embeddings, volumes, invariants.
//! * [`diagram`]: the self-intersection balance rule for 3-fold sum diagrams.

pub mod diagram;
pub mod domain;
pub mod json;
pub mod lattice;
pub mod rational;
pub mod surgery;

pub use domain::{Edge, EdgeInvariant, PolyDomain};
pub use surgery::{BallSpec, BlowdownReport, ChainSpec, FitReport, ManifoldInvariants};
pub use lattice::{CfExpansion, LatticeVec, LensType, UnimodularMap};
pub use rational::{Point, Rational};

pub use num_bigint::BigInt;
