//! Deterministic continuous-2D simulation of self-replicating codon automata.
//!
//! Two species of T-shaped particles drift in a virtual liquid under brownian
//! motion, viscosity, and spring-like field forces. Particles bond at arm
//! tips to form strands encoding bit strings; assembled strands template the
//! assembly of their own negative mirror image, then split off the copy. The
//! whole simulation is deterministic given a configuration and a 64-bit seed,
//! and can be replayed exactly from any snapshot.

pub mod analytics;
pub mod bonding;
pub mod config;
pub mod engine;
pub mod events;
pub mod fsm;
pub mod io;
pub mod model;
pub mod physics;
pub mod rng;
pub mod vec2;
pub mod verify;

pub use analytics::{extract_strands, negate, reverse, symmetrize, StrandRecord, StrandTracker};
pub use config::{Params, SimulationConfig};
pub use engine::{
    encode_seed_strand, Engine, EngineError, MetricsRow, RunError, RunObserver, RunOptions,
    Runner, RunSummary, StopRule,
};
pub use events::{EventKind, EventRecord};
pub use model::{CodonId, CodonState, CodonType, FieldSize, FieldSlot, SplitPhase, StrandLocation};
pub use vec2::Vec2;
