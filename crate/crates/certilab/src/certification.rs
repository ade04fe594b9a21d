//! The certification model: per-vertex bit-string certificates, identifier
//! assignments, radius-1 views, and verifier execution.
//!
//! A view contains the vertex's own identifier (when the graph carries
//! identifiers), its own certificate, and the multiset of its neighbors'
//! certificates. Neighbor identifiers are deliberately not part of the view.
//! The multiset is stored sorted, so view equality is structural equality.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Guard on `2^n` labeling sweeps.
pub const MAX_SWEEP_VERTICES: usize = 24;
/// Guard on `2^entries` verifier-table enumerations.
pub const MAX_TABLE_ENTRIES: usize = 24;

/// A bit string; the certificate of one vertex. Ordered lexicographically
/// with the first bit most significant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Vec<bool>);

impl Label {
    pub fn new(bits: Vec<bool>) -> Self {
        Label(bits)
    }

    pub fn from_bit(bit: bool) -> Self {
        Label(vec![bit])
    }

    /// The `width`-bit label encoding `value` in binary, first bit most
    /// significant.
    pub fn from_value(value: usize, width: usize) -> Self {
        assert!(width >= 1 && (width >= usize::BITS as usize || value < 1 << width));
        Label((0..width).map(|i| (value >> (width - 1 - i)) & 1 == 1).collect())
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// The numeric value of the bit string, first bit most significant.
    pub fn value(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A certificate assignment: one `width`-bit label per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateAssignment {
    width: usize,
    labels: Vec<Label>,
}

impl CertificateAssignment {
    pub fn new(width: usize, labels: Vec<Label>) -> Result<Self> {
        if width == 0 {
            return Err(Error::InvalidParameter(
                "certificate width must be at least 1".into(),
            ));
        }
        for label in &labels {
            if label.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    found: label.width(),
                });
            }
        }
        Ok(CertificateAssignment { width, labels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Parses the labeling file format: a single line of `n * width`
    /// characters over {0,1}, vertex `i` occupying positions
    /// `[i * width, (i+1) * width)`.
    pub fn parse(text: &str, n: usize, width: usize) -> Result<Self> {
        let line = text.trim_end_matches(['\n', '\r']);
        if line.len() != n * width {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "expected {} label characters for {n} vertices of width {width}, got {}",
                    n * width,
                    line.len()
                ),
            });
        }
        let mut bits = Vec::with_capacity(line.len());
        for ch in line.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        message: format!("invalid label character {other:?}"),
                    })
                }
            }
        }
        let labels = bits.chunks(width).map(|c| Label::new(c.to_vec())).collect();
        CertificateAssignment::new(width, labels)
    }

    /// Writes the labeling file line; inverse of [`CertificateAssignment::parse`].
    pub fn to_line(&self) -> String {
        self.labels.iter().map(Label::to_string).collect()
    }

    /// Converts to a binary labeling; fails unless `width == 1`.
    pub fn to_binary(&self) -> Result<BinaryLabeling> {
        if self.width != 1 {
            return Err(Error::WidthMismatch {
                expected: 1,
                found: self.width,
            });
        }
        Ok(BinaryLabeling::new(
            self.labels.iter().map(|l| l.bits()[0]).collect(),
        ))
    }
}

/// A width-1 certificate assignment: one bit per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryLabeling {
    bits: Vec<bool>,
}

impl BinaryLabeling {
    pub fn new(bits: Vec<bool>) -> Self {
        BinaryLabeling { bits }
    }

    /// The `index`-th labeling of `n` vertices in lexicographic order of the
    /// bit vector: vertex 0 carries the most significant bit.
    pub fn from_index(index: u64, n: usize) -> Self {
        assert!((1..64).contains(&n));
        BinaryLabeling {
            bits: (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.bits.len()
    }

    pub fn bit(&self, v: usize) -> bool {
        self.bits[v]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn complement(&self) -> Self {
        BinaryLabeling {
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    pub fn to_assignment(&self) -> CertificateAssignment {
        CertificateAssignment {
            width: 1,
            labels: self.bits.iter().map(|&b| Label::from_bit(b)).collect(),
        }
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        CertificateAssignment::parse(text, n, 1)?.to_binary()
    }

    pub fn to_line(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for BinaryLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Injective assignment of positive identifiers within `[1, range_bound]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdAssignment {
    ids: Vec<u64>,
    range_bound: u64,
}

impl IdAssignment {
    pub fn new(ids: Vec<u64>, range_bound: u64) -> Result<Self> {
        for (vertex, &id) in ids.iter().enumerate() {
            if id == 0 || id > range_bound {
                return Err(Error::IdOutOfRange {
                    vertex,
                    id,
                    bound: range_bound,
                });
            }
        }
        let mut sorted: Vec<u64> = ids.clone();
        sorted.sort_unstable();
        if let Some(pair) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId { id: pair[0] });
        }
        Ok(IdAssignment { ids, range_bound })
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn range_bound(&self) -> u64 {
        self.range_bound
    }

    /// Parses the identifier file format: `n` lines `vertex id`, each vertex
    /// exactly once. The range bound is taken as the maximum identifier.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut ids = vec![None; n];
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        for _ in 0..n {
            let (idx, line) = lines.next().ok_or(Error::Parse {
                line: n,
                message: format!("expected {n} `vertex id` lines"),
            })?;
            let line_no = idx + 1;
            let mut parts = line.split_whitespace();
            let vertex: usize = parse_token(parts.next(), line_no, "vertex")?;
            let id: u64 = parse_token(parts.next(), line_no, "identifier")?;
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "expected exactly two fields `vertex id`".into(),
                });
            }
            if vertex >= n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("vertex {vertex} out of range for {n} vertices"),
                });
            }
            if ids[vertex].replace(id).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("vertex {vertex} assigned twice"),
                });
            }
        }
        if let Some((idx, line)) = lines.next() {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("unexpected trailing content: {line:?}"),
            });
        }
        let ids: Vec<u64> = ids.into_iter().map(|id| id.expect("all vertices seen")).collect();
        let bound = ids.iter().copied().max().unwrap_or(1);
        IdAssignment::new(ids, bound)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, id) in self.ids.iter().enumerate() {
            out.push_str(&format!("{v} {id}\n"));
        }
        out
    }
}

fn parse_token<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let raw = tok.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    raw.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what}: {raw:?}"),
    })
}

/// Everything one vertex's decision algorithm gets to see: its own
/// identifier (absent in the anonymous model), its own certificate, and the
/// multiset of its neighbors' certificates in canonical sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct View {
    pub own_id: Option<u64>,
    pub own_label: Label,
    pub neighbor_labels: Vec<Label>,
}

impl View {
    pub fn new(own_id: Option<u64>, own_label: Label, mut neighbor_labels: Vec<Label>) -> Self {
        neighbor_labels.sort();
        View {
            own_id,
            own_label,
            neighbor_labels,
        }
    }

    pub fn degree(&self) -> usize {
        self.neighbor_labels.len()
    }
}

/// The view of vertex `v` in `(g, cert, ids)`.
pub fn compute_view(
    g: &Graph,
    cert: &CertificateAssignment,
    ids: Option<&IdAssignment>,
    v: usize,
) -> Result<View> {
    g.check_vertex(v)?;
    check_instance_sizes(g, cert, ids)?;
    let neighbor_labels = g.neighbors(v).iter().map(|&u| cert.label(u).clone()).collect();
    Ok(View::new(
        ids.map(|a| a.id(v)),
        cert.label(v).clone(),
        neighbor_labels,
    ))
}

fn check_instance_sizes(
    g: &Graph,
    cert: &CertificateAssignment,
    ids: Option<&IdAssignment>,
) -> Result<()> {
    if cert.vertex_count() != g.vertex_count() {
        return Err(Error::LabelCountMismatch {
            expected: g.vertex_count(),
            found: cert.vertex_count(),
        });
    }
    if let Some(a) = ids {
        if a.vertex_count() != g.vertex_count() {
            return Err(Error::LabelCountMismatch {
                expected: g.vertex_count(),
                found: a.vertex_count(),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Accept,
    Reject,
}

/// A local decision algorithm evaluated on one view at a time.
pub trait LocalVerifier {
    /// Decides one view. A view outside the verifier's domain is an error,
    /// never a silent reject.
    fn decide(&self, view: &View) -> Result<Decision>;
}

/// Per-vertex decisions plus the global verdict of one verifier run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifierRun {
    pub decisions: Vec<Decision>,
    pub verdict: Decision,
}

impl VerifierRun {
    pub fn accepted(&self) -> bool {
        self.verdict == Decision::Accept
    }
}

/// Runs `verifier` on every vertex. The global verdict is accept exactly
/// when every vertex accepts.
pub fn run_verifier(
    g: &Graph,
    cert: &CertificateAssignment,
    ids: Option<&IdAssignment>,
    verifier: &dyn LocalVerifier,
) -> Result<VerifierRun> {
    check_instance_sizes(g, cert, ids)?;
    let mut decisions = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let view = compute_view(g, cert, ids, v)?;
        decisions.push(verifier.decide(&view)?);
    }
    let verdict = if decisions.iter().all(|&d| d == Decision::Accept) {
        Decision::Accept
    } else {
        Decision::Reject
    };
    Ok(VerifierRun { decisions, verdict })
}

/// Short-circuiting variant of [`run_verifier`]: true iff every vertex
/// accepts. Used by exhaustive sweeps where per-vertex diagnostics are not
/// needed.
pub fn verifier_accepts(
    g: &Graph,
    cert: &CertificateAssignment,
    ids: Option<&IdAssignment>,
    verifier: &dyn LocalVerifier,
) -> Result<bool> {
    check_instance_sizes(g, cert, ids)?;
    for v in 0..g.vertex_count() {
        let view = compute_view(g, cert, ids, v)?;
        if verifier.decide(&view)? == Decision::Reject {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An explicit accept/reject table over anonymous width-1 views with degree
/// in `[min_degree, max_degree]`.
///
/// A view is keyed by (own bit, degree `d`, number of ones among the `d`
/// neighbor bits); for binary labels this determines the view completely.
/// Entries are ordered by (own bit, degree, ones); a verifier is identified
/// by its table index, whose bit `e` is 1 exactly when entry `e` accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableVerifier {
    min_degree: usize,
    max_degree: usize,
    decisions: Vec<Decision>,
}

impl TableVerifier {
    /// Number of table entries for the given degree range:
    /// `sum over d of 2 * (d + 1)`.
    pub fn entry_count(min_degree: usize, max_degree: usize) -> usize {
        (min_degree..=max_degree).map(|d| 2 * (d + 1)).sum()
    }

    /// Builds the verifier with the given table index over degrees
    /// `min_degree..=max_degree`.
    pub fn from_index(min_degree: usize, max_degree: usize, index: u32) -> Result<Self> {
        if min_degree > max_degree {
            return Err(Error::InvalidParameter(format!(
                "degree range {min_degree}..={max_degree} is empty"
            )));
        }
        let entries = Self::entry_count(min_degree, max_degree);
        if entries > MAX_TABLE_ENTRIES {
            return Err(Error::TableTooLarge {
                entries,
                limit: MAX_TABLE_ENTRIES,
            });
        }
        let decisions = (0..entries)
            .map(|e| {
                if (index >> e) & 1 == 1 {
                    Decision::Accept
                } else {
                    Decision::Reject
                }
            })
            .collect();
        Ok(TableVerifier {
            min_degree,
            max_degree,
            decisions,
        })
    }

    /// Table over all degrees `0..=max_degree`.
    pub fn new(max_degree: usize, index: u32) -> Result<Self> {
        Self::from_index(0, max_degree, index)
    }

    /// Table over views of one exact degree.
    pub fn degree_exact(degree: usize, index: u32) -> Result<Self> {
        Self::from_index(degree, degree, index)
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// The table index this verifier was built from.
    pub fn index(&self) -> u32 {
        self.decisions
            .iter()
            .enumerate()
            .fold(0, |acc, (e, &d)| {
                acc | ((d == Decision::Accept) as u32) << e
            })
    }

    fn entry_index(&self, own: bool, degree: usize, ones: usize) -> Result<usize> {
        if degree < self.min_degree || degree > self.max_degree {
            return Err(Error::ViewOutsideDomain {
                degree,
                min: self.min_degree,
                max: self.max_degree,
            });
        }
        debug_assert!(ones <= degree);
        let per_bit = Self::entry_count(self.min_degree, self.max_degree) / 2;
        let block = own as usize * per_bit;
        let offset: usize = (self.min_degree..degree).map(|d| d + 1).sum();
        Ok(block + offset + ones)
    }

    /// Decides directly from (own bit, degree, ones among neighbors); the
    /// allocation-free path used by exhaustive sweeps.
    pub fn decide_counts(&self, own: bool, degree: usize, ones: usize) -> Result<Decision> {
        Ok(self.decisions[self.entry_index(own, degree, ones)?])
    }
}

impl LocalVerifier for TableVerifier {
    fn decide(&self, view: &View) -> Result<Decision> {
        if view.own_label.width() != 1 {
            return Err(Error::WidthMismatch {
                expected: 1,
                found: view.own_label.width(),
            });
        }
        let mut ones = 0;
        for label in &view.neighbor_labels {
            if label.width() != 1 {
                return Err(Error::WidthMismatch {
                    expected: 1,
                    found: label.width(),
                });
            }
            ones += label.bits()[0] as usize;
        }
        self.decide_counts(view.own_label.bits()[0], view.degree(), ones)
    }
}

/// Global verdict of a table verifier over a binary labeling, computed from
/// degree/ones counts without materializing views. Agrees with
/// [`run_verifier`] on the same instance.
pub fn table_accepts_binary(
    g: &Graph,
    labeling: &BinaryLabeling,
    table: &TableVerifier,
) -> Result<bool> {
    if labeling.vertex_count() != g.vertex_count() {
        return Err(Error::LabelCountMismatch {
            expected: g.vertex_count(),
            found: labeling.vertex_count(),
        });
    }
    for v in 0..g.vertex_count() {
        let ones = g.neighbors(v).iter().filter(|&&u| labeling.bit(u)).count();
        if table.decide_counts(labeling.bit(v), g.degree(v), ones)? == Decision::Reject {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every total accept/reject table over degrees `0..=max_degree`, in
/// increasing order of table index.
pub fn enumerate_binary_table_verifiers(
    max_degree: usize,
) -> Result<impl Iterator<Item = TableVerifier>> {
    enumerate_tables(0, max_degree)
}

/// Every total accept/reject table over views of one exact degree, in
/// increasing order of table index.
pub fn enumerate_degree_exact_verifiers(
    degree: usize,
) -> Result<impl Iterator<Item = TableVerifier>> {
    enumerate_tables(degree, degree)
}

fn enumerate_tables(
    min_degree: usize,
    max_degree: usize,
) -> Result<impl Iterator<Item = TableVerifier>> {
    let entries = TableVerifier::entry_count(min_degree, max_degree);
    if entries > MAX_TABLE_ENTRIES {
        return Err(Error::TableTooLarge {
            entries,
            limit: MAX_TABLE_ENTRIES,
        });
    }
    Ok((0..1u64 << entries).map(move |i| {
        TableVerifier::from_index(min_degree, max_degree, i as u32)
            .expect("entry guard already checked")
    }))
}

/// All `2^n` binary labelings of `g` in lexicographic order of the bit
/// vector.
pub fn enumerate_binary_labelings(g: &Graph) -> Result<impl Iterator<Item = BinaryLabeling>> {
    let n = g.vertex_count();
    if n > MAX_SWEEP_VERTICES {
        return Err(Error::SweepTooLarge {
            size: 1u64 << n.min(63),
            limit: 1u64 << MAX_SWEEP_VERTICES,
        });
    }
    Ok((0..1u64 << n).map(move |i| BinaryLabeling::from_index(i, n)))
}
