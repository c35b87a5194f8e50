use std::time::Instant;

use crate::data::{Assignment, CentroidSet, Dataset};
use crate::distance::wcss_unchecked;
use crate::error::Result;

use super::{
    assign_all, check_inputs, max_shift, mean_centroids, repair_empty, ClusteringRun, LoopConfig,
    Provenance, TraceStep,
};

/// Lloyd's K-Means: alternate nearest-centroid assignment and mean update
/// until the assignment stops changing.
pub fn lloyd(ds: &Dataset, init: &CentroidSet, cfg: &LoopConfig) -> Result<ClusteringRun> {
    check_inputs(ds, init, cfg)?;
    let started = Instant::now();
    let out = alternate(ds, init, cfg, mean_centroids, wcss_unchecked);
    finish(ds, out, None, started)
}

pub(super) struct LoopOutput {
    pub labels: Vec<usize>,
    pub centroids: CentroidSet,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<TraceStep>,
}

/// Shared assignment/update alternation. `update` recomputes centroids for
/// fixed labels; `objective` is what the trace records.
pub(super) fn alternate(
    ds: &Dataset,
    init: &CentroidSet,
    cfg: &LoopConfig,
    update: fn(&Dataset, &[usize], &CentroidSet) -> CentroidSet,
    objective: fn(&Dataset, &[usize], &CentroidSet) -> f64,
) -> LoopOutput {
    let mut centroids = init.clone();
    let mut labels = assign_all(ds, &centroids);
    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        let assigned = objective(ds, &labels, &centroids);
        repair_empty(ds, &mut labels, &centroids);
        let next = update(ds, &labels, &centroids);
        let updated = objective(ds, &labels, &next);
        trace.push(TraceStep { assigned, updated });
        iterations += 1;

        let shift = max_shift(&centroids, &next);
        centroids = next;
        let relabeled = assign_all(ds, &centroids);
        let unchanged = relabeled == labels;
        labels = relabeled;
        if unchanged || (cfg.tolerance > 0.0 && shift <= cfg.tolerance) {
            converged = true;
            break;
        }
    }
    LoopOutput {
        labels,
        centroids,
        iterations,
        converged,
        trace,
    }
}

pub(super) fn finish(
    ds: &Dataset,
    out: LoopOutput,
    e_l1: Option<f64>,
    started: Instant,
) -> Result<ClusteringRun> {
    let wcss = wcss_unchecked(ds, &out.labels, &out.centroids);
    Ok(ClusteringRun {
        assignment: Assignment::new(out.labels, out.centroids.k())?,
        centroids: out.centroids,
        wcss,
        e_l1,
        iterations: out.iterations,
        converged: out.converged,
        seconds: started.elapsed().as_secs_f64(),
        provenance: Provenance::Deterministic,
        trace: out.trace,
    })
}
