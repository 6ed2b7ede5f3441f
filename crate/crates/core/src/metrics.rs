//! Evaluation quantities: per-face color correspondence, restoration traces,
//! step statistics and reduction percentages.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{CubieState, Face, FaceletState, MoveSequence};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("sequence does not solve the start state")]
    NotASolution,
    #[error("empty sample")]
    EmptySample,
    #[error("trace csv i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("trace csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("trace csv row {row}: {msg}")]
    BadRow { row: usize, msg: String },
}

/// Fraction of the face's stickers that match its center.
pub fn face_match_rate(state: &FaceletState, face: Face) -> f64 {
    let hits = state.face_stickers(face).iter().filter(|&&s| s == face).count();
    hits as f64 / 9.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step_index: usize,
    /// In face order U, R, F, D, L, B.
    pub per_face_rate: [f64; 6],
    pub avg_rate: f64,
    pub min_rate: f64,
    pub max_rate: f64,
}

impl TraceRecord {
    pub fn from_state(step_index: usize, state: &FaceletState) -> TraceRecord {
        let per_face_rate = Face::ALL.map(|f| face_match_rate(state, f));
        TraceRecord::from_rates(step_index, per_face_rate)
    }

    pub fn from_rates(step_index: usize, per_face_rate: [f64; 6]) -> TraceRecord {
        let avg_rate = per_face_rate.iter().sum::<f64>() / 6.0;
        let min_rate = per_face_rate.iter().copied().fold(f64::INFINITY, f64::min);
        let max_rate = per_face_rate.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        TraceRecord {
            step_index,
            per_face_rate,
            avg_rate,
            min_rate,
            max_rate,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.per_face_rate.iter().all(|&r| r == 1.0)
    }
}

/// One record per prefix of `s`, from the start state (step 0) to the
/// final, solved state.
pub fn trace_restoration(start: &CubieState, s: &MoveSequence) -> Result<Vec<TraceRecord>, MetricsError> {
    let mut state = *start;
    let mut out = Vec::with_capacity(s.len() + 1);
    out.push(TraceRecord::from_state(0, &state.to_facelets()));
    for (i, &m) in s.iter().enumerate() {
        state = state.apply_move(m);
        out.push(TraceRecord::from_state(i + 1, &state.to_facelets()));
    }
    if !state.is_solved() {
        return Err(MetricsError::NotASolution);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepStats {
    pub min: usize,
    pub max: usize,
    pub avg: f64,
    pub n: usize,
}

pub fn step_stats(lengths: &[usize]) -> Result<StepStats, MetricsError> {
    let (&min, &max) = match (lengths.iter().min(), lengths.iter().max()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(MetricsError::EmptySample),
    };
    let n = lengths.len();
    let avg = lengths.iter().sum::<usize>() as f64 / n as f64;
    Ok(StepStats { min, max, avg, n })
}

/// Percentage of moves saved relative to the baseline. `avg_baseline` must
/// be positive.
pub fn reduction(avg_baseline: f64, avg_kb: f64) -> f64 {
    100.0 * (avg_baseline - avg_kb) / avg_baseline
}

/// Rounds to one decimal, the precision used in reports.
pub fn round1(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

pub const TRACE_CSV_HEADER: [&str; 11] = [
    "run_id", "step", "rate_U", "rate_R", "rate_F", "rate_D", "rate_L", "rate_B", "avg", "min", "max",
];

/// A trace tagged with its run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunTrace {
    pub run_id: u64,
    pub records: Vec<TraceRecord>,
}

pub fn write_trace_csv<W: Write>(w: W, traces: &[RunTrace]) -> Result<(), MetricsError> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    wtr.write_record(TRACE_CSV_HEADER)?;
    for t in traces {
        for r in &t.records {
            let mut row = vec![t.run_id.to_string(), r.step_index.to_string()];
            row.extend(r.per_face_rate.iter().map(|v| format!("{v:.6}")));
            row.extend([r.avg_rate, r.min_rate, r.max_rate].iter().map(|v| format!("{v:.6}")));
            wtr.write_record(&row)?;
        }
    }
    wtr.flush()?;
    Ok(())
}

pub fn emit_trace_csv(path: &Path, traces: &[RunTrace]) -> Result<(), MetricsError> {
    let f = File::create(path)?;
    write_trace_csv(BufWriter::new(f), traces)
}

/// Parses a file written by [`write_trace_csv`]. Consecutive rows with the
/// same run id are grouped into one trace.
pub fn read_trace_csv<R: Read>(r: R) -> Result<Vec<RunTrace>, MetricsError> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers()?.clone();
    if header.iter().ne(TRACE_CSV_HEADER.iter().copied()) {
        return Err(MetricsError::BadRow {
            row: 0,
            msg: "unexpected header".into(),
        });
    }
    let mut out: Vec<RunTrace> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let bad = |msg: String| MetricsError::BadRow { row: i + 1, msg };
        let run_id: u64 = rec[0].parse().map_err(|e| bad(format!("run_id: {e}")))?;
        let step: usize = rec[1].parse().map_err(|e| bad(format!("step: {e}")))?;
        let mut vals = [0.0; 9];
        for (k, v) in vals.iter_mut().enumerate() {
            *v = rec[k + 2].parse().map_err(|e| bad(format!("column {}: {e}", k + 2)))?;
        }
        let record = TraceRecord {
            step_index: step,
            per_face_rate: [vals[0], vals[1], vals[2], vals[3], vals[4], vals[5]],
            avg_rate: vals[6],
            min_rate: vals[7],
            max_rate: vals[8],
        };
        match out.last_mut() {
            Some(t) if t.run_id == run_id => t.records.push(record),
            _ => out.push(RunTrace {
                run_id,
                records: vec![record],
            }),
        }
    }
    Ok(out)
}

/// Per-step envelope of the average rate across runs. Runs that finished
/// early keep contributing their final value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepEnvelope {
    pub step: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

pub fn step_envelope(traces: &[RunTrace]) -> Vec<StepEnvelope> {
    let steps = traces.iter().map(|t| t.records.len()).max().unwrap_or(0);
    let runs: Vec<&RunTrace> = traces.iter().filter(|t| !t.records.is_empty()).collect();
    (0..steps)
        .map(|step| {
            let vals: Vec<f64> = runs
                .iter()
                .map(|t| t.records[step.min(t.records.len() - 1)].avg_rate)
                .collect();
            StepEnvelope {
                step,
                mean: vals.iter().sum::<f64>() / vals.len() as f64,
                min: vals.iter().copied().fold(f64::INFINITY, f64::min),
                max: vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect()
}
