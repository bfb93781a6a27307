//! Exact integer tensor reconstruction and affine hierarchy solving.
//!
//! This crate provides:
//!
//! - dense integer tensors with exact arithmetic, contraction, and
//!   projection operators ([`tensor`]);
//! - albums of picture tensors, a compatibility check, and a constructive
//!   algorithm that rebuilds a tensor from its prescribed projections,
//!   including cubical "crystal" tensors all of whose oriented
//!   two-dimensional projections equal a fixed matrix ([`album`]);
//! - an exact solver for linear systems over the integers via Hermite
//!   normal form ([`diophantine`]);
//! - the level-`k` affine integer programming relaxation for digraph
//!   homomorphism problems, with brute-force oracles ([`aip`], [`digraph`]);
//! - certification that crystal-derived witnesses satisfy the acceptance
//!   conditions of the affine hierarchy, fooling it on approximate graph
//!   colouring instances ([`fooling`]);
//! - JSON formats, seeded corpus generation, and a command-line front end
//!   ([`json`], [`corpus`], [`cli`]).
//!
//! Start with the `examples/` directory: each example is a small runnable
//! program exercising one capability end to end.

pub mod aip;
pub mod album;
pub mod cli;
pub mod corpus;
pub mod digraph;
pub mod diophantine;
pub mod error;
pub mod fooling;
pub mod json;
pub mod report;
pub mod tensor;

pub use aip::{aip_level_k, build_system, AipSystem, AipVerdict, VarDescriptor};
pub use album::{mine_crystal, verify_crystal, Album, RealizationTrace, TraceStep};
pub use digraph::{brute_homomorphism, is_bipartite, Digraph};
pub use diophantine::{hermite_normal_form, solve_diophantine, BigMatrix, DiophantineResult};
pub use error::{Error, Result};
pub use fooling::{
    certify_fooling, edge_tensor_power, fooling_matrix, is_alternating, is_polymorphism,
    verify_free_edge, AffineVector, BlockEdgeCandidate, CrystalWitness, FunctionTable, MinionMap,
};
pub use tensor::{IntTensor, Shape};
