//! CSV statistics.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use dnanet_core::channel::HopStats;

use crate::Error;

/// Header of the per-hop delivery report.
pub const HOP_COLUMNS: [&str; 5] = ["hop", "sent", "corrupted", "corrected", "dropped"];

/// Header of the mining log.
pub const MINING_COLUMNS: [&str; 3] = ["difficulty", "attempts", "wall_ms"];

/// One mined block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiningRecord {
    /// Required leading A's.
    pub difficulty: u8,
    /// Nonces tried, including the winning one.
    pub attempts: u64,
    /// Elapsed wall-clock time. Not reproducible across runs.
    pub wall_ms: f64,
}

/// Renders the per-hop report with its header row.
pub fn hop_csv(hops: &[HopStats]) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HOP_COLUMNS)?;
    for h in hops {
        w.write_record([
            h.hop.to_string(),
            h.sent.to_string(),
            h.corrupted.to_string(),
            h.corrected.to_string(),
            h.dropped.to_string(),
        ])?;
    }
    finish(w)
}

/// Renders mining rows; the header is included when `header` is set.
pub fn mining_csv(rows: &[MiningRecord], header: bool) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if header {
        w.write_record(MINING_COLUMNS)?;
    }
    for r in rows {
        w.write_record([r.difficulty.to_string(), r.attempts.to_string(), format!("{:.3}", r.wall_ms)])?;
    }
    finish(w)
}

/// Appends mining rows to `path`, writing the header if the file is new or empty.
pub fn append_mining(path: &Path, rows: &[MiningRecord]) -> Result<(), Error> {
    let io = |source| Error::Io { path: path.display().to_string(), source };
    let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    let empty = f.metadata().map_err(io)?.len() == 0;
    f.write_all(mining_csv(rows, empty)?.as_bytes()).map_err(io)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, Error> {
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hop_report() {
        let hops = [HopStats { hop: 1, sent: 3, corrupted: 1, corrected: 2, dropped: 0 }];
        assert_eq!(hop_csv(&hops).unwrap(), "hop,sent,corrupted,corrected,dropped\n1,3,1,2,0\n");
    }

    #[test]
    fn mining_log_appends_one_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mine.csv");
        let row = MiningRecord { difficulty: 2, attempts: 9, wall_ms: 0.5 };
        append_mining(&path, &[row]).unwrap();
        append_mining(&path, &[row]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "difficulty,attempts,wall_ms\n2,9,0.500\n2,9,0.500\n");
    }
}
