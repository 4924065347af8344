//! File-backed run recorder: `events.jsonl`, `metrics.csv`, and numbered
//! snapshots under an output directory.

use super::{metrics_line, snapshot, EVENT_LOG_SCHEMA, METRICS_HEADER};
use crate::engine::{Engine, MetricsRow, RunObserver};
use crate::events::EventRecord;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

pub struct Recorder {
    dir: PathBuf,
    events: BufWriter<File>,
    metrics: BufWriter<File>,
    /// Written on drop-free shutdown via `finish`; tracked for the caller.
    pub last_snapshot: Option<PathBuf>,
}

impl Recorder {
    /// Create `events.jsonl` and `metrics.csv` under `dir` (created if
    /// missing) and write their headers.
    pub fn create(dir: &Path) -> std::io::Result<Recorder> {
        fs::create_dir_all(dir)?;
        let mut events = BufWriter::new(File::create(dir.join("events.jsonl"))?);
        writeln!(events, "{EVENT_LOG_SCHEMA}")?;
        let mut metrics = BufWriter::new(File::create(dir.join("metrics.csv"))?);
        writeln!(metrics, "{METRICS_HEADER}")?;
        Ok(Recorder {
            dir: dir.to_path_buf(),
            events,
            metrics,
            last_snapshot: None,
        })
    }

    pub fn snapshot_path(dir: &Path, step: u64) -> PathBuf {
        dir.join(format!("snapshot_{step:09}.json"))
    }

    /// Flush buffered output; call once after the run.
    pub fn finish(&mut self) -> std::io::Result<()> {
        self.events.flush()?;
        self.metrics.flush()
    }
}

impl Drop for Recorder {
    fn drop(&mut self) {
        let _ = self.events.flush();
        let _ = self.metrics.flush();
    }
}

impl RunObserver for Recorder {
    fn on_events(&mut self, events: &[EventRecord]) -> std::io::Result<()> {
        for ev in events {
            let line = serde_json::to_string(ev).expect("event serializes");
            writeln!(self.events, "{line}")?;
        }
        Ok(())
    }

    fn on_metrics(&mut self, row: &MetricsRow) -> std::io::Result<()> {
        writeln!(self.metrics, "{}", metrics_line(row))?;
        // Keep partial output on disk at analysis-cadence granularity, so an
        // interrupted long run still leaves usable logs.
        self.metrics.flush()?;
        self.events.flush()
    }

    fn on_snapshot(&mut self, engine: &Engine) -> std::io::Result<()> {
        let doc = snapshot::snapshot_of(engine);
        let path = Self::snapshot_path(&self.dir, engine.step_count());
        fs::write(&path, snapshot::write_snapshot(&doc))?;
        self.last_snapshot = Some(path);
        Ok(())
    }
}
