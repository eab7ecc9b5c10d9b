//! Shared sweep plumbing: loss grids, result tables, and a deterministic
//! parallel map over grid indices.

use crate::error::{Error, Result};

/// An inclusive, strictly increasing 1-D grid start, start+step, …, ≤ stop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let ok = start.is_finite()
            && stop.is_finite()
            && step.is_finite()
            && step > 0.0
            && stop >= start;
        if ok {
            Ok(Self { start, stop, step })
        } else {
            Err(Error::BadGrid)
        }
    }

    /// Grid points; the endpoint is included when it lands on the grid within
    /// a relative rounding margin.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

/// One computed sweep row (cells, warnings) or a hard failure.
pub(crate) type RowOutcome = crate::error::Result<(Vec<Option<f64>>, Vec<String>)>;

/// A rectangular sweep result: named columns, one row per grid point, with
/// `None` marking cells whose estimator was degenerate at that point.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
    pub warnings: Vec<String>,
}

impl SweepTable {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, rows: Vec::new(), warnings: Vec::new() }
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All present values of one column.
    pub fn column_values(&self, name: &str) -> Vec<f64> {
        match self.column_index(name) {
            Some(idx) => self.rows.iter().filter_map(|r| r[idx]).collect(),
            None => Vec::new(),
        }
    }
}

/// Map `f` over 0..count across at most `threads` workers (0 = available
/// parallelism). Output order is index order regardless of scheduling.
pub fn parallel_map<T, F>(count: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let hw = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let workers = if threads == 0 { hw } else { threads }.clamp(1, count.max(1));
    if workers == 1 {
        return (0..count).map(f).collect();
    }
    let chunk = count.div_ceil(workers);
    let mut out = Vec::with_capacity(count);
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..workers)
            .map(|t| {
                scope.spawn(move || {
                    let lo = t * chunk;
                    let hi = ((t + 1) * chunk).min(count);
                    (lo..hi).map(f).collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            out.extend(handle.join().expect("sweep worker panicked"));
        }
    });
    out
}
