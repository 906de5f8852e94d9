//! Finite event structures with polarity, games carrying two interacting
//! group actions linked by a distributive law, strategies and their weak
//! maps, uniform (bi-invariant) strategies, and a bridge into thin
//! concurrent games via isomorphism families.
//!
//! Everything here is desk-scale and exhaustive: validators enumerate
//! configurations and group elements outright, guarded by [`Limits`].

pub mod copycat;
pub mod doc;
pub mod dot;
pub mod es;
pub mod fixtures;
pub mod game;
pub mod limits;
pub mod report;
pub mod strategy;
pub mod symmetry;
pub mod tcg;
pub mod uniform;
pub mod workbench;

pub use es::{Config, EsMap, EventStructure, Polarity};
pub use game::Game;
pub use limits::Limits;
pub use report::{Report, Violation};
pub use strategy::{Strategy, WeakMap};
pub use symmetry::{DistributiveLaw, FiniteGroup, GroupAction};
pub use uniform::UniformStrategy;

/// Errors raised by constructors and loaders. Validators do not error;
/// they return a [`Report`] instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("too many events: {0} (representation limit is 128)")]
    TooManyEvents(usize),
    #[error("configuration bound exceeded: more than {bound} configurations")]
    ConfigBound { bound: usize },
    #[error("group closure bound exceeded: more than {bound} elements")]
    GroupBound { bound: usize },
    #[error("search bound exceeded: {0}")]
    SearchBound(String),
    #[error("causality contains a cycle through `{0}`")]
    CausalityCycle(String),
    #[error("not permuting subgroups: {0}")]
    NotPermuting(String),
    #[error("non-trivial intersection: {0}")]
    NontrivialIntersection(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
