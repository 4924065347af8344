//! Timestamped simulation events. The engine emits bond and split events as
//! they happen; strand-level events come from the analysis pass. Within a
//! step, events appear in a canonical order, so logs are fully deterministic.

use crate::model::{CodonId, FieldSlot};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub step: u64,
    #[serde(flatten)]
    pub kind: EventKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum EventKind {
    BondFormed {
        a: CodonId,
        slot_a: FieldSlot,
        b: CodonId,
        slot_b: FieldSlot,
    },
    BondBroken {
        a: CodonId,
        slot_a: FieldSlot,
        b: CodonId,
        slot_b: FieldSlot,
    },
    /// A codon entered the splitting phase: vertical bond released, yellow
    /// field activated.
    SplitTriggered { codon: CodonId },
    /// A red-blue bond formed between two codons that had no bonds at all:
    /// a self-replicating strand of length two appeared without a template.
    SpontaneousDimer { a: CodonId, b: CodonId },
    /// A complete, detached strand with this exact codon membership was
    /// observed for the first time.
    StrandCompleted { ids: Vec<CodonId>, bits: String },
    /// A completed strand's pattern falls outside the seed lineage.
    Mutation { ids: Vec<CodonId>, bits: String },
}

impl EventRecord {
    pub fn is_spontaneous_dimer(&self) -> bool {
        matches!(self.kind, EventKind::SpontaneousDimer { .. })
    }

    pub fn is_split(&self) -> bool {
        matches!(self.kind, EventKind::SplitTriggered { .. })
    }

    pub fn completed_bits(&self) -> Option<&str> {
        match &self.kind {
            EventKind::StrandCompleted { bits, .. } => Some(bits),
            _ => None,
        }
    }
}
