//! Scores, score matrices over regular graphs, collision columns, and the
//! exhaustive sweep confirming that every binary labeling of a necklace
//! graph admits a collision column.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::certification::BinaryLabeling;
use crate::error::{Error, Result};
use crate::graph::{build_necklace, Graph};
use crate::util::parallel_chunks;

/// Number of 1-labels in the closed neighborhood of `v`; ranges over
/// `[0, deg(v) + 1]`.
pub fn score(g: &Graph, labeling: &BinaryLabeling, v: usize) -> Result<usize> {
    g.check_vertex(v)?;
    if labeling.vertex_count() != g.vertex_count() {
        return Err(Error::LabelCountMismatch {
            expected: g.vertex_count(),
            found: labeling.vertex_count(),
        });
    }
    let neighbors = g.neighbors(v).iter().filter(|&&u| labeling.bit(u)).count();
    Ok(neighbors + labeling.bit(v) as usize)
}

/// The 2 x (k+2) tally of the vertices of a `k`-regular graph by
/// (label, score).
///
/// The cells (label 1, score 0) and (label 0, score k+1) cannot be realized
/// by any vertex; they are pinned to 1 by definition. Every other cell
/// counts vertices, and alongside each count the matrix remembers the
/// lowest-index vertex realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreMatrix {
    k: usize,
    counts: [Vec<u64>; 2],
    witnesses: [Vec<Option<usize>>; 2],
}

impl ScoreMatrix {
    /// The regularity degree `k`.
    pub fn regularity(&self) -> usize {
        self.k
    }

    /// Number of columns, `k + 2` (scores 0 through k+1).
    pub fn columns(&self) -> usize {
        self.k + 2
    }

    /// The entry for (label, score) where `label` selects the row.
    pub fn count(&self, label: bool, column: usize) -> u64 {
        self.counts[label as usize][column]
    }

    /// Lowest-index vertex realizing (label, score), if any. The two pinned
    /// cells have no witness.
    pub fn witness(&self, label: bool, column: usize) -> Option<usize> {
        self.witnesses[label as usize][column]
    }

    /// Sum of all entries, pinned cells included: vertex count plus 2.
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

/// Builds the score matrix of `(g, labeling)`; `g` must be regular.
pub fn score_matrix(g: &Graph, labeling: &BinaryLabeling) -> Result<ScoreMatrix> {
    let k = g.require_regular()?;
    if labeling.vertex_count() != g.vertex_count() {
        return Err(Error::LabelCountMismatch {
            expected: g.vertex_count(),
            found: labeling.vertex_count(),
        });
    }
    let cols = k + 2;
    let mut counts = [vec![0u64; cols], vec![0u64; cols]];
    let mut witnesses = [vec![None; cols], vec![None; cols]];
    counts[1][0] = 1;
    counts[0][k + 1] = 1;
    for v in 0..g.vertex_count() {
        let label = labeling.bit(v) as usize;
        let s = score(g, labeling, v)?;
        debug_assert!(!(label == 1 && s == 0) && !(label == 0 && s == k + 1));
        counts[label][s] += 1;
        witnesses[label][s].get_or_insert(v);
    }
    Ok(ScoreMatrix {
        k,
        counts,
        witnesses,
    })
}

/// A column shared by both rows of a score matrix, with the vertices
/// realizing it.
///
/// For an interior column both witnesses are present. Column 0 collides via
/// the pinned (1, 0) cell, so only the label-0 witness exists (a vertex
/// whose closed neighborhood is all zeros); symmetrically column k+1 only
/// has the label-1 witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionColumn {
    pub column: usize,
    pub zero_witness: Option<usize>,
    pub one_witness: Option<usize>,
}

/// The smallest column `j` with nonzero entries in both rows, or `None` if
/// no column collides.
pub fn find_collision_column(matrix: &ScoreMatrix) -> Option<CollisionColumn> {
    (0..matrix.columns())
        .find(|&j| matrix.count(false, j) != 0 && matrix.count(true, j) != 0)
        .map(|column| CollisionColumn {
            column,
            zero_witness: matrix.witness(false, column),
            one_witness: matrix.witness(true, column),
        })
}

/// Outcome of sweeping every binary labeling of a necklace graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionSweepReport {
    pub k: usize,
    pub total: u64,
    pub successes: u64,
    pub histogram: BTreeMap<usize, u64>,
}

/// Iterates all `2^(3(k+1))` binary labelings of the necklace graph,
/// counting how many admit a collision column and which column the
/// smallest-column rule picks. Supported for `k` in 3..=5.
pub fn collision_column_sweep(k: usize, workers: usize) -> Result<CollisionSweepReport> {
    if !(3..=5).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "collision sweep is desk-scale only for k in 3..=5, got {k}"
        )));
    }
    let (graph, _) = build_necklace(k)?;
    let n = graph.vertex_count();
    let total = 1u64 << n;
    let partials = parallel_chunks(total, workers, |range| {
        let mut successes = 0u64;
        let mut histogram = vec![0u64; k + 2];
        for index in range {
            let labeling = BinaryLabeling::from_index(index, n);
            let matrix = score_matrix(&graph, &labeling).expect("necklace is regular");
            if let Some(found) = find_collision_column(&matrix) {
                successes += 1;
                histogram[found.column] += 1;
            }
        }
        (successes, histogram)
    });
    let mut successes = 0u64;
    let mut histogram: BTreeMap<usize, u64> = (0..k + 2).map(|j| (j, 0)).collect();
    for (s, h) in partials {
        successes += s;
        for (j, count) in h.into_iter().enumerate() {
            *histogram.get_mut(&j).expect("column in range") += count;
        }
    }
    Ok(CollisionSweepReport {
        k,
        total,
        successes,
        histogram,
    })
}
