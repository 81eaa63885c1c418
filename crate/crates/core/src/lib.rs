//! Exact-arithmetic toolkit for log-symplectic structures in normal-crossing
//! normal form.
//!
//! A log-symplectic structure near a point where the polar divisor is a
//! normal crossing of `m` branches is encoded, up to formal equivalence, by a
//! constant skew matrix `B` of residues: the 2-form is
//! `Phi = sum_{i<j} b_ij eta_i /\ eta_j` where `eta_i = dlog z_i` for branch
//! coordinates and `eta_k = dz_k` otherwise.  This crate computes exactly
//! (over big rationals) with such data:
//!
//! * [`form`] — Laurent-monomial log differential forms and their exterior
//!   calculus (wedge, differential, residues, multidegree splitting);
//! * [`skew`] — skew matrices: Pfaffian, inversion, 2-row span certificates;
//! * [`model`] — the local model `(N, m, B)` and its associated forms;
//! * [`analyze`] — biresidue classification of branch pairs and triples, and
//!   the strong-unobstructedness criterion verdict;
//! * [`deform`] — constructive search for monomial first-order deformations,
//!   with closedness certificates and exactness decisions;
//! * [`complexes`] — finite verification of the homological inputs the
//!   criterion rests on (mapping-cone homotopy identity, acyclicity of the
//!   normal log complex, twisted principal-parts exactness).
//!
//! All computation is exact; there is no floating point anywhere.  Results
//! are deterministic: term orders and report orders are canonical.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the command
//! line interface live in the companion crate `logsym-cli`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analyze;
pub mod complexes;
pub mod deform;
pub mod error;
pub mod form;
pub mod linalg;
pub mod model;
pub mod rational;
pub mod skew;

pub use analyze::{classify_pair, verdict, PairReport, TripleReport, Verdict, Witness, WitnessReason};
pub use deform::{search, DeformationCandidate};
pub use error::Error;
pub use form::{ExpVec, IndexSet, LogForm, LogTerm};
pub use model::Model;
pub use rational::Rat;
pub use skew::{span_solve, SkewMatrix, SpanCertificate};
