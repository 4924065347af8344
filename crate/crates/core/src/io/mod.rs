//! File formats and rendering: TOML configs, JSON snapshots with bit-exact
//! float round trips, line-delimited JSON event logs, the metrics CSV, and
//! deterministic SVG frames.

pub mod config_file;
pub mod recorder;
pub mod snapshot;
pub mod svg;

pub use config_file::{parse_config, ConfigFileError};
pub use recorder::Recorder;
pub use snapshot::{read_snapshot, write_snapshot, SnapshotDocument, SnapshotError};
pub use svg::{render_svg, RenderSpec};

/// Schema tag written as the first line of every event log.
pub const EVENT_LOG_SCHEMA: &str = "{\"schema\":\"events/1\"}";
/// Metrics CSV header.
pub const METRICS_HEADER: &str = "step,normalized_time,free_codons,strands,complete_strands,events_cum";

use crate::engine::MetricsRow;

/// One CSV line for a metrics row. Floats use the shortest decimal encoding
/// that round-trips exactly.
pub fn metrics_line(row: &MetricsRow) -> String {
    format!(
        "{},{},{},{},{},{}",
        row.step,
        row.normalized_time,
        row.free_codons,
        row.strands,
        row.complete_strands,
        row.events_cum
    )
}
