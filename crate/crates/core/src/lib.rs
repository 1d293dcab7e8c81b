//! Algebraic classification of framed circles in oriented 4-manifolds.
//!
//! The input is purely algebraic: a model of π₁X, π₂X as a finitely
//! generated abelian group with a π₁-action, data describing the second
//! Stiefel–Whitney class, and a circle class `c ∈ π₁X`. From that the crate
//! decides the spin alternative, builds π₁ of the frame bundle as an explicit
//! central Z/2-extension, describes π₁ of the free loop space at `c`, and
//! selects the exact sequences relating framed and unframed immersions and
//! embeddings, including the twist (`tw`) and normal rotation (`rot`)
//! invariants.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod builtins;
pub mod classifier;
pub mod groups;
pub mod intalg;
pub mod loopspace;
pub mod pi2mod;
pub mod spinclass;

#[cfg(any(test, feature = "testgen"))]
pub mod testkit;

pub use classifier::{classify, CircleClass, ClassificationReport, ClassifyOptions, DaxOracle, ManifoldData};
pub use groups::{GroupElement, GroupModel};
pub use intalg::{CanonicalForm, IntMatrix};
pub use pi2mod::Pi2Module;
pub use spinclass::{SpinAlternative, W2Data};
