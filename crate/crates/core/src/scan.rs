//! Exhaustive pair scans over all non-degenerate codes of given parameters.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytics::{count_nondegenerate, theorem1_predicate, to_u128};
use crate::code::{nondegenerate_codes, CodeParams};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::graph::{restricted_distance_from, PairGeometry};
use crate::linalg::Subspace;
use crate::witness::certificate_from;

/// Default bound on the number of codes a scan may enumerate.
pub const DEFAULT_SCAN_CAP: u128 = 20_000;

/// Everything the scan records about one pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairAnalysis {
    pub d: usize,
    pub d_c: usize,
    /// Only meaningful for `d >= 2`.
    pub certificate_present: bool,
    /// Only meaningful for `d >= 2`.
    pub neighbors_empty: bool,
}

impl PairAnalysis {
    /// Certificate present ⇔ no reducing neighbor ⇔ `d_c = d + 1`.
    pub fn duality_holds(&self) -> bool {
        self.d < 2
            || (self.certificate_present == self.neighbors_empty
                && self.neighbors_empty == (self.d_c == self.d + 1))
    }
}

/// Computes `d`, `d_c`, certificate presence and reducing-neighbor emptiness
/// from one shared geometry. Both codes must already be validated.
pub fn analyze_pair(x: &Subspace, y: &Subspace) -> Result<PairAnalysis> {
    let geom = PairGeometry::new(x, y)?;
    let d = geom.d();
    if d < 2 {
        return Ok(PairAnalysis { d, d_c: d, certificate_present: false, neighbors_empty: false });
    }
    let r = restricted_distance_from(&geom)?;
    Ok(PairAnalysis {
        d,
        d_c: r.d_c,
        certificate_present: certificate_from(&geom).is_some(),
        neighbors_empty: geom.reducing_neighbors().next().is_none(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub params: CodeParams,
    pub codes: usize,
    pub pairs: u64,
    /// Number of unordered pairs at each Grassmann distance.
    pub by_distance: BTreeMap<usize, u64>,
    /// Index pairs `(i, j)`, `i < j`, into [`ScanOutcome::code_list`] order
    /// with `d_c = d + 1`, sorted.
    pub exceptional: Vec<(usize, usize)>,
    /// Pairs where certificate, neighbor emptiness and `d_c` disagree.
    pub duality_violations: Vec<(usize, usize)>,
    pub theorem1_holds: bool,
}

impl ScanOutcome {
    /// No exceptional pair exactly when `n < (q+1)^2 + k - 2`, and the three
    /// views of `d_c = d + 1` agree everywhere.
    pub fn consistent(&self) -> bool {
        self.exceptional.is_empty() == self.theorem1_holds && self.duality_violations.is_empty()
    }
}

/// The codes a scan enumerates, in the order its indices refer to.
pub fn code_list(field: &Arc<FieldSpec>, n: usize, k: usize) -> Vec<Subspace> {
    nondegenerate_codes(field, n, k)
}

/// Analyzes every unordered pair of non-degenerate `[n, k]_q` codes on
/// `threads` worker threads. The outcome does not depend on `threads`.
pub fn scan_theorem1(
    field: &Arc<FieldSpec>,
    n: usize,
    k: usize,
    cap: u128,
    threads: usize,
) -> Result<ScanOutcome> {
    let params = CodeParams::new(n, k, field.q())?;
    let count = count_nondegenerate(n as u64, k as u64, field.q() as u64)?;
    let size = to_u128(&count).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::CapExceeded { what: "scan code count", size, cap });
    }
    let codes = code_list(field, n, k);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;

    type Row = (BTreeMap<usize, u64>, Vec<(usize, usize)>, Vec<(usize, usize)>);
    let rows: Vec<Result<Row>> = pool.install(|| {
        (0..codes.len())
            .into_par_iter()
            .map(|i| {
                let mut hist = BTreeMap::new();
                let mut exceptional = Vec::new();
                let mut violations = Vec::new();
                for j in i + 1..codes.len() {
                    let a = analyze_pair(&codes[i], &codes[j])?;
                    *hist.entry(a.d).or_insert(0) += 1;
                    if a.d_c > a.d {
                        exceptional.push((i, j));
                    }
                    if !a.duality_holds() {
                        violations.push((i, j));
                    }
                }
                Ok((hist, exceptional, violations))
            })
            .collect()
    });

    let mut by_distance = BTreeMap::new();
    let mut exceptional = Vec::new();
    let mut duality_violations = Vec::new();
    for row in rows {
        let (hist, exc, viol) = row?;
        for (d, c) in hist {
            *by_distance.entry(d).or_insert(0) += c;
        }
        exceptional.extend(exc);
        duality_violations.extend(viol);
    }
    let m = codes.len() as u64;
    Ok(ScanOutcome {
        params,
        codes: codes.len(),
        pairs: m * m.saturating_sub(1) / 2,
        by_distance,
        exceptional,
        duality_violations,
        theorem1_holds: theorem1_predicate(n as u64, k as u64, field.q() as u64),
    })
}
