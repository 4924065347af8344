//! Versioned JSON snapshots of the full simulation state.
//!
//! Floating point values are written as the shortest decimal that parses back
//! to the identical bits, so a parse/serialize round trip is lossless and a
//! replay started from a snapshot continues the original trajectory exactly.

use crate::config::SimulationConfig;
use crate::engine::Engine;
use crate::model::{CodonId, CodonState, CodonType, FieldSizes, SplitPhase, StrandLocation};
use crate::vec2::Vec2;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SNAPSHOT_FORMAT: &str = "snapshot/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotDocument {
    pub format: String,
    pub step: u64,
    pub normalized_time: f64,
    /// SHA-256 of the producing configuration; checked on restore.
    pub config_digest: String,
    pub rng_seed: u64,
    pub container_width: f64,
    pub container_height: f64,
    pub codons: Vec<CodonRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodonRecord {
    #[serde(rename = "type")]
    pub ty: CodonType,
    pub x: f64,
    pub y: f64,
    pub angle: f64,
    pub vx: f64,
    pub vy: f64,
    pub angular_velocity: f64,
    pub field_size: FieldSizes,
    pub bond_red: Option<u32>,
    pub bond_blue: Option<u32>,
    pub bond_vertical: Option<u32>,
    pub strand_location: StrandLocation,
    pub splitting_state: SplitPhase,
    pub yellow_steps_large: u64,
    pub z_steps: u64,
}

impl CodonRecord {
    fn from_state(ty: CodonType, st: &CodonState) -> CodonRecord {
        CodonRecord {
            ty,
            x: st.position.x,
            y: st.position.y,
            angle: st.angle,
            vx: st.velocity.x,
            vy: st.velocity.y,
            angular_velocity: st.angular_velocity,
            field_size: st.field_size,
            bond_red: st.bond_red.map(|id| id.0),
            bond_blue: st.bond_blue.map(|id| id.0),
            bond_vertical: st.bond_vertical.map(|id| id.0),
            strand_location: st.strand_location,
            splitting_state: st.split_phase,
            yellow_steps_large: st.yellow_steps_large,
            z_steps: st.z_steps,
        }
    }

    fn into_state(self) -> (CodonType, CodonState) {
        (
            self.ty,
            CodonState {
                position: Vec2::new(self.x, self.y),
                angle: self.angle,
                velocity: Vec2::new(self.vx, self.vy),
                angular_velocity: self.angular_velocity,
                field_size: self.field_size,
                bond_red: self.bond_red.map(CodonId),
                bond_blue: self.bond_blue.map(CodonId),
                bond_vertical: self.bond_vertical.map(CodonId),
                strand_location: self.strand_location,
                split_phase: self.splitting_state,
                yellow_steps_large: self.yellow_steps_large,
                z_steps: self.z_steps,
            },
        )
    }
}

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("snapshot parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("snapshot codon record {index}: {source}")]
    Record {
        index: usize,
        source: serde_json::Error,
    },
    #[error("unsupported snapshot format {found:?} (expected {SNAPSHOT_FORMAT:?})")]
    Version { found: String },
    #[error("snapshot was produced by a different config (digest {found} != {expected})")]
    DigestMismatch { found: String, expected: String },
    #[error("snapshot codon record {index}: bond partner {partner} out of range ({count} codons)")]
    BadBond {
        index: usize,
        partner: u32,
        count: usize,
    },
    #[error(transparent)]
    Engine(#[from] crate::engine::EngineError),
}

pub fn snapshot_of(engine: &Engine) -> SnapshotDocument {
    let cfg = engine.config();
    SnapshotDocument {
        format: SNAPSHOT_FORMAT.to_string(),
        step: engine.step_count(),
        normalized_time: engine.normalized_time(),
        config_digest: cfg.digest(),
        rng_seed: cfg.rng_seed,
        container_width: cfg.container_width,
        container_height: cfg.container_height,
        codons: engine
            .codons()
            .iter()
            .map(|(ty, st)| CodonRecord::from_state(*ty, st))
            .collect(),
    }
}

/// Serialize a snapshot document. Deterministic: identical states produce
/// identical bytes.
pub fn write_snapshot(doc: &SnapshotDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("snapshot serializes");
    text.push('\n');
    text
}

/// Parse a snapshot document, reporting per-record indices for corrupt codon
/// entries.
pub fn read_snapshot(text: &str) -> Result<SnapshotDocument, SnapshotError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let format = value
        .get("format")
        .and_then(|v| v.as_str())
        .unwrap_or("")
        .to_string();
    if format != SNAPSHOT_FORMAT {
        return Err(SnapshotError::Version { found: format });
    }
    // Decode codon records individually so errors carry the record index.
    let mut shell = value.clone();
    let codon_values = match shell
        .as_object_mut()
        .and_then(|o| o.remove("codons"))
    {
        Some(serde_json::Value::Array(items)) => items,
        _ => {
            // Fall through to the ordinary decode to produce a field error.
            return Ok(serde_json::from_value(value)?);
        }
    };
    shell
        .as_object_mut()
        .expect("snapshot is an object")
        .insert("codons".into(), serde_json::Value::Array(Vec::new()));
    let mut doc: SnapshotDocument = serde_json::from_value(shell)?;
    doc.codons = codon_values
        .into_iter()
        .enumerate()
        .map(|(index, v)| {
            serde_json::from_value::<CodonRecord>(v)
                .map_err(|source| SnapshotError::Record { index, source })
        })
        .collect::<Result<_, _>>()?;
    Ok(doc)
}

/// Rebuild an engine from a snapshot, verifying the config digest and bond
/// references.
pub fn restore_engine(
    doc: SnapshotDocument,
    cfg: SimulationConfig,
) -> Result<Engine, SnapshotError> {
    let expected = cfg.digest();
    if doc.config_digest != expected {
        return Err(SnapshotError::DigestMismatch {
            found: doc.config_digest,
            expected,
        });
    }
    let count = doc.codons.len();
    for (index, rec) in doc.codons.iter().enumerate() {
        for partner in [rec.bond_red, rec.bond_blue, rec.bond_vertical].into_iter().flatten() {
            if partner as usize >= count {
                return Err(SnapshotError::BadBond { index, partner, count });
            }
        }
    }
    let step = doc.step;
    let codons = doc.codons.into_iter().map(CodonRecord::into_state).collect();
    Ok(Engine::from_parts(cfg, codons, step)?)
}
