//! Concrete (prover, verifier) pairs: the natural coloring certification, its
//! one-bit case for two colors, and the one-bit certification of distance-2
//! 3-colorability.

use crate::certification::{
    CertificateAssignment, Decision, Label, LocalVerifier, View,
};
use crate::coloring::{find_k_coloring_budgeted, path_or_cycle, PathCycle, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::graph::Graph;

type Prover = Box<dyn Fn(&Graph) -> Result<Option<CertificateAssignment>> + Send + Sync>;
type ViewRule = Box<dyn Fn(&View) -> Decision + Send + Sync>;

/// A named certification: a prover that labels yes-instances and a verifier
/// rule over single views.
///
/// Completeness contract: whenever the prover returns an assignment, running
/// the verifier on it accepts at every vertex.
pub struct Scheme {
    name: String,
    width: usize,
    prover: Prover,
    rule: ViewRule,
}

impl Scheme {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Certificate width in bits.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Runs the prover; `None` means the graph has no accepted labeling of
    /// this scheme's width (not an error).
    pub fn prove(&self, g: &Graph) -> Result<Option<CertificateAssignment>> {
        (self.prover)(g)
    }
}

impl std::fmt::Debug for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Scheme")
            .field("name", &self.name)
            .field("width", &self.width)
            .finish()
    }
}

impl LocalVerifier for Scheme {
    fn decide(&self, view: &View) -> Result<Decision> {
        if view.own_label.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: view.own_label.width(),
            });
        }
        Ok((self.rule)(view))
    }
}

fn color_width(k: usize) -> usize {
    // ceil(log2 k), with a one-bit floor so certificates are never empty.
    (usize::BITS - (k.max(1) - 1).leading_zeros()).max(1) as usize
}

/// Certification that a graph is `k`-colorable: each vertex gets its color,
/// encoded as the value `color - 1` in `ceil(log2 k)` bits (one bit for
/// `k <= 2`). A vertex accepts iff its own encoding is a valid color index
/// and no neighbor carries the same label.
pub fn kcolor_scheme(k: usize) -> Scheme {
    kcolor_scheme_budgeted(k, DEFAULT_NODE_BUDGET)
}

/// [`kcolor_scheme`] with an explicit node budget for the coloring search.
pub fn kcolor_scheme_budgeted(k: usize, node_budget: u64) -> Scheme {
    let width = color_width(k);
    Scheme {
        name: format!("kcolor{k}"),
        width,
        prover: Box::new(move |g: &Graph| {
            let witness = match find_k_coloring_budgeted(g, k, node_budget)? {
                Some(w) => w,
                None => return Ok(None),
            };
            let labels = witness
                .colors()
                .iter()
                .map(|&c| Label::from_value(c - 1, width))
                .collect();
            Ok(Some(CertificateAssignment::new(width, labels)?))
        }),
        rule: Box::new(move |view: &View| {
            if view.own_label.value() >= k {
                return Decision::Reject;
            }
            if view.neighbor_labels.contains(&view.own_label) {
                Decision::Reject
            } else {
                Decision::Accept
            }
        }),
    }
}

/// One-bit certification of 2-colorability: the colors themselves are the
/// certificates, and a vertex accepts iff every neighbor bit differs from
/// its own.
pub fn two_color_scheme() -> Scheme {
    let inner = kcolor_scheme(2);
    Scheme {
        name: "2color".into(),
        width: 1,
        prover: Box::new(move |g: &Graph| inner.prove(g)),
        rule: Box::new(|view: &View| {
            if view.neighbor_labels.iter().all(|l| *l != view.own_label) {
                Decision::Accept
            } else {
                Decision::Reject
            }
        }),
    }
}

/// One-bit certification of distance-2 3-colorability.
///
/// Verifier, per vertex: degree above 2 rejects; degree 2 accepts iff the
/// score (own bit plus neighbor bits) is exactly 1; degree at most 1
/// accepts. Prover: on a path, bit 1 at distance 0 mod 3 from the
/// lowest-index endpoint; on a cycle of length 0 mod 3, bit 1 at oriented
/// distance 0 mod 3 from vertex 0, oriented toward its lowest neighbor;
/// `None` otherwise.
pub fn dist2_3color_scheme() -> Scheme {
    Scheme {
        name: "dist2".into(),
        width: 1,
        prover: Box::new(|g: &Graph| {
            let order = match path_or_cycle(g) {
                Some(PathCycle::Path(order)) => order,
                Some(PathCycle::Cycle(order)) if order.len() % 3 == 0 => order,
                _ => return Ok(None),
            };
            let mut bits = vec![false; g.vertex_count()];
            for (distance, &v) in order.iter().enumerate() {
                bits[v] = distance % 3 == 0;
            }
            let labels = bits.into_iter().map(Label::from_bit).collect();
            Ok(Some(CertificateAssignment::new(1, labels)?))
        }),
        rule: Box::new(|view: &View| {
            if view.degree() > 2 {
                return Decision::Reject;
            }
            if view.degree() == 2 {
                let score = view.own_label.bits()[0] as usize
                    + view
                        .neighbor_labels
                        .iter()
                        .filter(|l| l.bits()[0])
                        .count();
                if score != 1 {
                    return Decision::Reject;
                }
            }
            Decision::Accept
        }),
    }
}

/// Looks a scheme up by its CLI name: `dist2`, `2color`, or `kcolorN`.
pub fn scheme_by_name(name: &str, node_budget: u64) -> Option<Scheme> {
    match name {
        "dist2" => Some(dist2_3color_scheme()),
        "2color" => Some(two_color_scheme()),
        _ => {
            let k: usize = name.strip_prefix("kcolor")?.parse().ok()?;
            if k == 0 {
                return None;
            }
            Some(kcolor_scheme_budgeted(k, node_budget))
        }
    }
}
