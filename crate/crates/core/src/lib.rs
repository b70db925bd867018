//! Exact computer algebra for the transverse Hopf algebra H(1) of codimension one
//! foliations: PBW arithmetic, the dual enveloping algebra of formal vector fields,
//! a jet-level model of the crossed product by formal diffeomorphisms, finite
//! bicrossed products, the Hopf-cyclic module with its (b, B) operators, truncated
//! Chevalley-Eilenberg and Weil complexes, and a formal trace calculus for
//! derivation-pattern cochains.
//!
//! Every scalar is an exact rational; there is no floating point anywhere.

pub mod algebra_kernel;
pub mod enveloping_dual;
pub mod formal_calculus;
pub mod formal_diffeo;
pub mod hopf_cyclic;
pub mod hopf_h1;
pub mod lie_cohomology;
pub mod matched_pair;

pub use algebra_kernel::{int, rat, Rational};
