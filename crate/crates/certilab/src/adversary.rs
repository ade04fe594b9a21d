//! The constructive attacks against one-bit certifications: view-coverage
//! checking, the relabeling of the complete graph driven by a collision
//! column, its identifier-equipped variant built from disjoint ID blocks and
//! a pigeonhole step, and the exhaustive census over all small table
//! verifiers.

use serde::Serialize;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certification::{
    compute_view, enumerate_binary_labelings, enumerate_degree_exact_verifiers,
    table_accepts_binary, BinaryLabeling, CertificateAssignment, IdAssignment, View,
};
use crate::error::{Error, Result};
use crate::graph::{build_complete, build_necklace, Graph};
use crate::score::{find_collision_column, score_matrix, CollisionColumn};
use crate::util::parallel_chunks;

/// A graph together with a certificate assignment and, optionally, an
/// identifier assignment.
#[derive(Debug, Clone)]
pub struct Instance {
    graph: Graph,
    certificate: CertificateAssignment,
    ids: Option<IdAssignment>,
}

impl Instance {
    pub fn new(
        graph: Graph,
        certificate: CertificateAssignment,
        ids: Option<IdAssignment>,
    ) -> Result<Self> {
        if certificate.vertex_count() != graph.vertex_count() {
            return Err(Error::LabelCountMismatch {
                expected: graph.vertex_count(),
                found: certificate.vertex_count(),
            });
        }
        if let Some(a) = &ids {
            if a.vertex_count() != graph.vertex_count() {
                return Err(Error::LabelCountMismatch {
                    expected: graph.vertex_count(),
                    found: a.vertex_count(),
                });
            }
        }
        Ok(Instance {
            graph,
            certificate,
            ids,
        })
    }

    pub fn anonymous(graph: Graph, certificate: CertificateAssignment) -> Result<Self> {
        Instance::new(graph, certificate, None)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn certificate(&self) -> &CertificateAssignment {
        &self.certificate
    }

    pub fn ids(&self) -> Option<&IdAssignment> {
        self.ids.as_ref()
    }

    pub fn width(&self) -> usize {
        self.certificate.width()
    }

    pub fn view(&self, v: usize) -> Result<View> {
        compute_view(&self.graph, &self.certificate, self.ids.as_ref(), v)
    }

    fn views(&self) -> Result<Vec<View>> {
        (0..self.graph.vertex_count()).map(|v| self.view(v)).collect()
    }
}

/// How one vertex of the target instance was accounted for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexCoverage {
    /// The view equals the view of `vertex` in yes-instance `instance`.
    Matched { instance: usize, vertex: usize },
    /// No yes-instance contains this view.
    Uncovered { view: View },
}

/// Per-vertex view matching of a target instance against a family of
/// accepted instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub covered: bool,
    pub per_vertex: Vec<VertexCoverage>,
}

/// Checks whether every view of `target` already occurs in some
/// yes-instance. All instances must share the certificate width and agree on
/// whether identifiers are present.
pub fn check_view_coverage(target: &Instance, yes_instances: &[Instance]) -> Result<CoverageReport> {
    for other in yes_instances {
        if other.width() != target.width() {
            return Err(Error::WidthMismatch {
                expected: target.width(),
                found: other.width(),
            });
        }
        if other.ids.is_some() != target.ids.is_some() {
            return Err(Error::MixedIdPresence);
        }
    }
    let yes_views: Vec<Vec<View>> = yes_instances
        .iter()
        .map(Instance::views)
        .collect::<Result<_>>()?;
    let mut per_vertex = Vec::with_capacity(target.graph.vertex_count());
    for v in 0..target.graph.vertex_count() {
        let view = target.view(v)?;
        let matched = yes_views.iter().enumerate().find_map(|(i, views)| {
            views
                .iter()
                .position(|candidate| *candidate == view)
                .map(|vertex| VertexCoverage::Matched { instance: i, vertex })
        });
        per_vertex.push(matched.unwrap_or(VertexCoverage::Uncovered { view }));
    }
    let covered = per_vertex
        .iter()
        .all(|c| matches!(c, VertexCoverage::Matched { .. }));
    Ok(CoverageReport { covered, per_vertex })
}

fn necklace_collision(k: usize, labeling: &BinaryLabeling) -> Result<(Graph, CollisionColumn)> {
    let (graph, _) = build_necklace(k)?;
    let matrix = score_matrix(&graph, labeling)?;
    let column = find_collision_column(&matrix)
        .expect("every binary labeling of a necklace graph admits a collision column");
    Ok((graph, column))
}

/// Given a binary labeling of the necklace graph, produces the labeling of
/// `K_{k+1}` whose views are all covered by the labeled necklace: the
/// collision column `j` dictates exactly `j` ones.
pub fn anon_no_instance(k: usize, labeling: &BinaryLabeling) -> Result<BinaryLabeling> {
    let (_, column) = necklace_collision(k, labeling)?;
    let n = k + 1;
    Ok(BinaryLabeling::new((0..n).map(|v| v < column.column).collect()))
}

/// Outcome of running the anonymous attack over every labeling of the
/// necklace graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnonAttackReport {
    pub k: usize,
    pub total: u64,
    pub covered: u64,
}

/// For every binary labeling of the necklace graph, builds the complete-graph
/// relabeling and checks view coverage. Supported for `k` in 3..=5.
pub fn anon_attack_sweep(k: usize, workers: usize) -> Result<AnonAttackReport> {
    if !(3..=5).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "anonymous attack sweep is desk-scale only for k in 3..=5, got {k}"
        )));
    }
    let (graph, _) = build_necklace(k)?;
    let complete = build_complete(k + 1)?;
    let n = graph.vertex_count();
    let total = 1u64 << n;
    let partials = parallel_chunks(total, workers, |range| {
        let mut covered = 0u64;
        for index in range {
            let labeling = BinaryLabeling::from_index(index, n);
            let attack = anon_no_instance(k, &labeling).expect("sweep labeling is valid");
            let target =
                Instance::anonymous(complete.clone(), attack.to_assignment()).expect("sized");
            let yes =
                Instance::anonymous(graph.clone(), labeling.to_assignment()).expect("sized");
            if check_view_coverage(&target, std::slice::from_ref(&yes))
                .expect("widths match")
                .covered
            {
                covered += 1;
            }
        }
        covered
    });
    Ok(AnonAttackReport {
        k,
        total,
        covered: partials.into_iter().sum(),
    })
}

/// Layout of identifier blocks for the identifier-equipped attack: one copy
/// of the necklace graph per block, `(k+1)^2 + 1` copies in total, copy `i`
/// using identifiers `[(i-1)(3k+3) + 1, i(3k+3)]`.
///
/// The identifier range function is `f(n) = 3n^3 + 3n`, under which all
/// copy blocks fit inside `[1, f(3k+3)]` and the highest identifier of any
/// copy equals `f(k+1)` exactly, so the constructed complete-graph instance
/// respects the range for its own vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdBlockPlan {
    k: usize,
}

impl IdBlockPlan {
    pub fn new(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParameter(format!(
                "identifier-block plan needs k >= 3, got {k}"
            )));
        }
        Ok(IdBlockPlan { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of necklace copies: `(k+1)^2 + 1`.
    pub fn copy_count(&self) -> usize {
        (self.k + 1) * (self.k + 1) + 1
    }

    /// Vertices per copy: `3(k+1)`.
    pub fn copy_vertices(&self) -> usize {
        3 * (self.k + 1)
    }

    /// The identifier range function `f(n) = 3n^3 + 3n`.
    pub fn id_range_bound(n: u64) -> u64 {
        3 * n * n * n + 3 * n
    }

    /// Inclusive identifier interval of copy `i` (1-based).
    pub fn copy_interval(&self, copy: usize) -> (u64, u64) {
        assert!((1..=self.copy_count()).contains(&copy));
        let span = self.copy_vertices() as u64;
        let i = copy as u64;
        ((i - 1) * span + 1, i * span)
    }

    /// Identifier assignment of copy `i`: vertex `w` gets the `w`-th
    /// identifier of the copy's interval. Bounded by `f(3k+3)`.
    pub fn copy_id_assignment(&self, copy: usize) -> IdAssignment {
        let (low, _) = self.copy_interval(copy);
        let ids = (0..self.copy_vertices() as u64).map(|w| low + w).collect();
        IdAssignment::new(ids, Self::id_range_bound(self.copy_vertices() as u64))
            .expect("block identifiers are injective and in range")
    }

    /// Identifier bound for the constructed complete graph: `f(k+1)`, which
    /// the highest block identifier meets exactly.
    pub fn target_id_bound(&self) -> u64 {
        Self::id_range_bound(self.k as u64 + 1)
    }
}

/// The identifier-equipped yes-instances: `(k+1)^2 + 1` labeled necklace
/// copies carrying their block identifiers.
pub fn id_yes_instances(k: usize, labelings: &[BinaryLabeling]) -> Result<Vec<Instance>> {
    let plan = IdBlockPlan::new(k)?;
    check_tuple(&plan, labelings)?;
    let (graph, _) = build_necklace(k)?;
    labelings
        .iter()
        .enumerate()
        .map(|(i, labeling)| {
            Instance::new(
                graph.clone(),
                labeling.to_assignment(),
                Some(plan.copy_id_assignment(i + 1)),
            )
        })
        .collect()
}

fn check_tuple(plan: &IdBlockPlan, labelings: &[BinaryLabeling]) -> Result<()> {
    if labelings.len() != plan.copy_count() {
        return Err(Error::WrongLabelingCount {
            expected: plan.copy_count(),
            found: labelings.len(),
        });
    }
    for labeling in labelings {
        if labeling.vertex_count() != plan.copy_vertices() {
            return Err(Error::LabelCountMismatch {
                expected: plan.copy_vertices(),
                found: labeling.vertex_count(),
            });
        }
    }
    Ok(())
}

/// Builds the identifier-equipped complete-graph instance whose views are
/// all covered by the labeled copies.
///
/// Each copy's smallest collision column is computed; by pigeonhole some
/// column `j` is shared by at least `k + 1` copies. The `k + 1`
/// lowest-indexed such copies each contribute one witness (the first `j`
/// contribute their label-1 witness, the rest their label-0 witness), and
/// vertex `t` of the complete graph inherits the identifier of the `t`-th
/// witness. Taking one witness per copy keeps the identifiers distinct.
pub fn id_no_instance(k: usize, labelings: &[BinaryLabeling]) -> Result<Instance> {
    let plan = IdBlockPlan::new(k)?;
    check_tuple(&plan, labelings)?;
    let (graph, _) = build_necklace(k)?;

    let mut by_column: Vec<Vec<usize>> = vec![Vec::new(); k + 2];
    let mut columns = Vec::with_capacity(labelings.len());
    for (i, labeling) in labelings.iter().enumerate() {
        let matrix = score_matrix(&graph, labeling)?;
        let column = find_collision_column(&matrix)
            .expect("every binary labeling of a necklace graph admits a collision column");
        by_column[column.column].push(i + 1);
        columns.push(column);
    }
    let needed = k + 1;
    let column = (0..k + 2)
        .find(|&j| by_column[j].len() >= needed)
        .expect("pigeonhole: (k+1)^2 + 1 copies over k+2 columns");
    let chosen = &by_column[column][..needed];

    let mut ids = Vec::with_capacity(needed);
    for (t, &copy) in chosen.iter().enumerate() {
        let witness = if t < column {
            columns[copy - 1].one_witness
        } else {
            columns[copy - 1].zero_witness
        }
        .expect("collision column provides the required witness");
        let (low, _) = plan.copy_interval(copy);
        ids.push(low + witness as u64);
    }

    let bits = (0..needed).map(|t| t < column).collect();
    Instance::new(
        build_complete(needed)?,
        BinaryLabeling::new(bits).to_assignment(),
        Some(IdAssignment::new(ids, plan.target_id_bound())?),
    )
}

/// Outcome of running the identifier attack over seeded random labeling
/// tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdAttackReport {
    pub k: usize,
    pub copies: usize,
    pub tuples: u64,
    pub successes: u64,
    pub id_bound: u64,
    pub max_id: u64,
}

/// Runs [`id_no_instance`] on `tuples` seeded random labeling tuples and
/// checks view coverage against the identifier-equipped copies. A tuple
/// counts as a success when the construction succeeds, all identifiers stay
/// within the target bound, and every view is covered.
pub fn id_attack_sweep(k: usize, tuples: u64, seed: u64, workers: usize) -> Result<IdAttackReport> {
    let plan = IdBlockPlan::new(k)?;
    if k > 5 {
        return Err(Error::InvalidParameter(format!(
            "identifier attack sweep is desk-scale only for k in 3..=5, got {k}"
        )));
    }
    let n = plan.copy_vertices();
    let copies = plan.copy_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuple_list: Vec<Vec<BinaryLabeling>> = (0..tuples)
        .map(|_| {
            (0..copies)
                .map(|_| BinaryLabeling::from_index(rng.random_range(0..1u64 << n), n))
                .collect()
        })
        .collect();

    let partials = parallel_chunks(tuples, workers, |range| {
        let mut successes = 0u64;
        let mut max_id = 0u64;
        for index in range {
            let tuple = &tuple_list[index as usize];
            let target = id_no_instance(k, tuple).expect("tuple has the right shape");
            let yes = id_yes_instances(k, tuple).expect("tuple has the right shape");
            let ids = target.ids().expect("target carries identifiers");
            let highest = ids.ids().iter().copied().max().unwrap_or(0);
            max_id = max_id.max(highest);
            let report = check_view_coverage(&target, &yes).expect("consistent instances");
            if report.covered && highest <= plan.target_id_bound() {
                successes += 1;
            }
        }
        (successes, max_id)
    });
    let mut successes = 0u64;
    let mut max_id = 0u64;
    for (s, m) in partials {
        successes += s;
        max_id = max_id.max(m);
    }
    Ok(IdAttackReport {
        k,
        copies,
        tuples,
        successes,
        id_bound: plan.target_id_bound(),
        max_id,
    })
}

/// Census over every anonymous accept/reject table on degree-`k` views.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub k: usize,
    pub verifiers: u64,
    /// Verifiers that globally accept at least one labeling of the necklace
    /// graph.
    pub accept_some_yes: u64,
    /// Verifiers that globally reject every labeling of `K_{k+1}`.
    pub reject_all_no: u64,
    /// Verifiers doing both, i.e. separating the yes-instance from the
    /// no-instance.
    pub separating: u64,
}

/// Enumerates all tables over degree-exactly-`k` views and counts how many
/// accept some labeling of the necklace graph while rejecting every labeling
/// of `K_{k+1}`. Desk-scale only at `k = 3`.
pub fn verifier_census(k: usize) -> Result<CensusReport> {
    if k != 3 {
        return Err(Error::InvalidParameter(format!(
            "verifier census is desk-scale only for k = 3, got {k}"
        )));
    }
    let (necklace, _) = build_necklace(k)?;
    let complete = build_complete(k + 1)?;
    let yes_labelings: Vec<BinaryLabeling> = enumerate_binary_labelings(&necklace)?.collect();
    let no_labelings: Vec<BinaryLabeling> = enumerate_binary_labelings(&complete)?.collect();

    let mut verifiers = 0u64;
    let mut accept_some_yes = 0u64;
    let mut reject_all_no = 0u64;
    let mut separating = 0u64;
    for table in enumerate_degree_exact_verifiers(k)? {
        verifiers += 1;
        let mut accepts_yes = false;
        for labeling in &yes_labelings {
            if table_accepts_binary(&necklace, labeling, &table)? {
                accepts_yes = true;
                break;
            }
        }
        let mut rejects_no = true;
        for labeling in &no_labelings {
            if table_accepts_binary(&complete, labeling, &table)? {
                rejects_no = false;
                break;
            }
        }
        accept_some_yes += accepts_yes as u64;
        reject_all_no += rejects_no as u64;
        separating += (accepts_yes && rejects_no) as u64;
    }
    Ok(CensusReport {
        k,
        verifiers,
        accept_some_yes,
        reject_all_no,
        separating,
    })
}
