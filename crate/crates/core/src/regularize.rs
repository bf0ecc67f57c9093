//! Reduction pipelines and the maps between solutions of `G` and `G'`.
//!
//! Vertex ids of a reduced graph are laid out as
//!
//! ```text
//! [ original vertices | parity clique | pad star | gadget 1 | gadget 2 | ... ]
//! ```
//!
//! so the original graph is always the id prefix `0..source_n`. Gadgets are
//! allocated by owner id, then by gadget index, and each gadget keeps the
//! vertex order of its blueprint. The same input therefore always produces
//! the same output graph.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::{self, GadgetKind};
use crate::graph::{Graph, GraphBuilder, IndependentSet};

/// Half-open id interval `start..end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdRange {
    pub start: usize,
    pub end: usize,
}

impl IdRange {
    pub fn new(start: usize, end: usize) -> Self {
        IdRange { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, v: usize) -> bool {
        self.start <= v && v < self.end
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    /// Disjoint complete graph on `clique_size` vertices.
    ParityFix { clique_size: usize },
    /// Disjoint star with `leaves` leaves; the center comes first.
    StarPad { leaves: usize },
    /// Gadget attachment. Its contribution to the offset is accounted through
    /// `per_gadget_alpha`, so the step itself carries offset 0.
    GadgetAttach,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    #[serde(flatten)]
    pub kind: StepKind,
    pub added: IdRange,
    pub alpha_offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetInstance {
    /// Vertex of the padded source graph this gadget hangs from.
    pub owner: usize,
    /// 1-based index among the gadgets of `owner`.
    pub index: usize,
    pub kind: GadgetKind,
    /// Id of the gadget's first vertex in the reduced graph.
    pub id_offset: usize,
    /// Id of the port in the reduced graph.
    pub port: usize,
}

impl GadgetInstance {
    pub fn ids(&self) -> IdRange {
        IdRange::new(self.id_offset, self.id_offset + self.kind.vertex_count())
    }
}

/// Everything needed to relate `α(G)` and `α(G')` and to move solutions
/// between the two graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub target_degree: usize,
    /// Kind of every attached gadget, recorded even when none was needed.
    pub gadget_kind: GadgetKind,
    pub source_n: usize,
    pub steps: Vec<ReductionStep>,
    pub gadgets: Vec<GadgetInstance>,
    pub per_gadget_alpha: usize,
    pub total_offset: usize,
    pub origin_range: IdRange,
    pub source_hash: String,
    pub result_hash: String,
}

impl ReductionCertificate {
    /// Vertex count of the source graph after padding steps, i.e. the id
    /// where gadgets begin.
    pub fn padded_n(&self) -> usize {
        self.padding_steps()
            .map(|s| s.added.end)
            .max()
            .unwrap_or(self.source_n)
    }

    pub fn padding_steps(&self) -> impl Iterator<Item = &ReductionStep> {
        self.steps
            .iter()
            .filter(|s| !matches!(s.kind, StepKind::GadgetAttach))
    }

    pub fn is_planar(&self) -> bool {
        self.gadget_kind == GadgetKind::Planar5
    }

    /// `Σ step offsets + |gadgets| · per_gadget_alpha`.
    pub fn recomputed_offset(&self) -> usize {
        self.steps.iter().map(|s| s.alpha_offset).sum::<usize>()
            + self.gadgets.len() * self.per_gadget_alpha
    }

    fn check_source(&self, g: &Graph) -> Result<()> {
        if g.content_hash_hex() != self.source_hash {
            return Err(Error::invalid("source graph does not match the certificate hash"));
        }
        Ok(())
    }

    fn check_result(&self, g: &Graph) -> Result<()> {
        if g.content_hash_hex() != self.result_hash {
            return Err(Error::invalid("reduced graph does not match the certificate hash"));
        }
        Ok(())
    }
}

/// Makes the maximum degree odd by adding a disjoint `K_{Δ+2}`, whose
/// vertices all have degree `Δ+1`. Graphs with odd maximum degree come back
/// unchanged. A graph with no edges gains a `K_2`.
pub fn ensure_odd_delta(g: &Graph) -> Result<(Graph, Option<ReductionStep>)> {
    if g.is_empty() {
        return Err(Error::invalid("parity fix needs a non-empty graph"));
    }
    let delta = g.max_degree();
    if delta % 2 == 1 {
        return Ok((g.clone(), None));
    }
    let size = delta + 2;
    let n = g.vertex_count();
    let step = ReductionStep {
        kind: StepKind::ParityFix { clique_size: size },
        added: IdRange::new(n, n + size),
        alpha_offset: 1,
    };
    Ok((g.disjoint_union(&Graph::complete(size)), Some(step)))
}

/// Raises the maximum degree to `d` by adding a disjoint star with `d` leaves.
pub fn pad_to_target(g: &Graph, d: usize) -> Result<(Graph, Option<ReductionStep>)> {
    let delta = g.max_degree();
    if d < delta {
        return Err(Error::invalid(format!(
            "target degree {d} is below the maximum degree {delta}"
        )));
    }
    if d == delta {
        return Ok((g.clone(), None));
    }
    let n = g.vertex_count();
    let step = ReductionStep {
        kind: StepKind::StarPad { leaves: d },
        added: IdRange::new(n, n + d + 1),
        alpha_offset: d,
    };
    Ok((g.disjoint_union(&Graph::star(d)), Some(step)))
}

/// Attaches `delta - d_v` general gadgets to every vertex `v` of `g`,
/// producing a `delta`-regular graph.
pub fn regularize(g: &Graph, delta: usize) -> Result<(Graph, ReductionCertificate)> {
    let kind = GadgetKind::general(delta)?;
    attach(g, g.clone(), Vec::new(), kind)
}

/// Attaches `5 - d_v` planar gadgets to every vertex `v` of `g`, producing a
/// 5-regular graph. Planarity of `g` is the caller's responsibility; each
/// gadget is planar and hangs from a single edge, which preserves planarity.
pub fn regularize_planar(g: &Graph) -> Result<(Graph, ReductionCertificate)> {
    attach(g, g.clone(), Vec::new(), GadgetKind::Planar5)
}

/// The full general pipeline: parity fix when the maximum degree is even,
/// star padding up to `degree`, then gadget attachment.
///
/// With `strict`, even maximum degree is rejected instead of fixed. An empty
/// graph skips the parity fix and is padded directly.
pub fn reduce_to_degree(g: &Graph, degree: usize, strict: bool) -> Result<(Graph, ReductionCertificate)> {
    let kind = GadgetKind::general(degree)?;
    let delta = g.max_degree();
    if delta > degree {
        return Err(Error::invalid(format!(
            "maximum degree {delta} exceeds the target degree {degree}"
        )));
    }
    let mut steps = Vec::new();
    let mut padded = g.clone();
    if !g.is_empty() && delta.is_multiple_of(2) {
        if strict {
            return Err(Error::invalid(format!(
                "maximum degree {delta} is even (strict mode)"
            )));
        }
        let (fixed, step) = ensure_odd_delta(&padded)?;
        padded = fixed;
        steps.extend(step);
    }
    let (star_padded, step) = pad_to_target(&padded, degree)?;
    steps.extend(step);
    attach(g, star_padded, steps, kind)
}

fn attach(
    source: &Graph,
    padded: Graph,
    mut steps: Vec<ReductionStep>,
    kind: GadgetKind,
) -> Result<(Graph, ReductionCertificate)> {
    if !kind.is_attachable() {
        return Err(Error::invalid("gadget kind has no port"));
    }
    let delta = kind.target_degree();
    if padded.max_degree() > delta {
        return Err(Error::invalid(format!(
            "maximum degree {} exceeds the target degree {delta}",
            padded.max_degree()
        )));
    }
    let (blueprint, roles) = gadget::blueprint(kind)?;
    let size = blueprint.vertex_count();
    let port = roles
        .iter()
        .position(|r| *r == gadget::VertexRole::Port)
        .expect("attachable gadget has a port");
    let per_gadget_alpha = gadget::gadget_alpha_of(kind)?;

    let padded_n = padded.vertex_count();
    let deficit: usize = padded.degrees().map(|d| delta - d).sum();
    let mut b = GraphBuilder::new(padded_n + deficit * size);
    for (u, v) in padded.edges() {
        b.add_edge(u, v)?;
    }
    let mut gadgets = Vec::with_capacity(deficit);
    let mut next = padded_n;
    for owner in 0..padded_n {
        let missing = delta - padded.neighbors(owner).len();
        for index in 1..=missing {
            for (u, v) in blueprint.edges() {
                b.add_edge(next + u, next + v)?;
            }
            b.add_edge(next + port, owner)?;
            gadgets.push(GadgetInstance {
                owner,
                index,
                kind,
                id_offset: next,
                port: next + port,
            });
            next += size;
        }
    }
    let reduced = b.build();
    if !gadgets.is_empty() {
        steps.push(ReductionStep {
            kind: StepKind::GadgetAttach,
            added: IdRange::new(padded_n, next),
            alpha_offset: 0,
        });
    }
    let mut cert = ReductionCertificate {
        target_degree: delta,
        gadget_kind: kind,
        source_n: source.vertex_count(),
        steps,
        gadgets,
        per_gadget_alpha,
        total_offset: 0,
        origin_range: IdRange::new(0, source.vertex_count()),
        source_hash: source.content_hash_hex(),
        result_hash: reduced.content_hash_hex(),
    };
    cert.total_offset = cert.recomputed_offset();
    Ok((reduced, cert))
}

/// Maps an independent set `i` of the source graph to one of the reduced
/// graph of size `|i| + total_offset`: `i` itself, a maximum independent set
/// of each padding block, and the port-free canonical witness of every gadget.
pub fn forward_map(g: &Graph, i: &IndependentSet, cert: &ReductionCertificate) -> Result<IndependentSet> {
    cert.check_source(g)?;
    g.require_independent(i)?;
    let mut members: Vec<usize> = i.iter().copied().collect();
    for step in &cert.steps {
        match step.kind {
            StepKind::ParityFix { .. } => members.push(step.added.start),
            StepKind::StarPad { .. } => members.extend(step.added.start + 1..step.added.end),
            StepKind::GadgetAttach => {}
        }
    }
    let mut witness_cache: Option<(GadgetKind, IndependentSet)> = None;
    for inst in &cert.gadgets {
        let witness = match &witness_cache {
            Some((k, w)) if *k == inst.kind => w,
            _ => {
                let (_, layout) = gadget::build(inst.kind)?;
                &witness_cache.insert((inst.kind, layout.canonical_witness())).1
            }
        };
        members.extend(witness.iter().map(|&v| inst.id_offset + v));
    }
    Ok(IndependentSet::new(members))
}

/// Restricts an independent set of the reduced graph to the original vertices.
/// The result has at least `|i_prime| - total_offset` vertices.
pub fn recover(g_prime: &Graph, i_prime: &IndependentSet, cert: &ReductionCertificate) -> Result<IndependentSet> {
    cert.check_result(g_prime)?;
    g_prime.require_independent(i_prime)?;
    Ok(i_prime
        .iter()
        .copied()
        .filter(|&v| cert.origin_range.contains(v))
        .collect())
}

/// Rewrites an independent set of the reduced graph so that no gadget port is
/// used: every gadget whose part contains its port, or is smaller than the
/// gadget's α, gets its canonical witness instead. Never shrinks the set.
pub fn normalize(g_prime: &Graph, i_prime: &IndependentSet, cert: &ReductionCertificate) -> Result<IndependentSet> {
    cert.check_result(g_prime)?;
    g_prime.require_independent(i_prime)?;
    let sorted = i_prime.as_slice();
    let mut members = Vec::with_capacity(sorted.len());
    let gadget_start = cert.gadgets.first().map_or(usize::MAX, |g| g.id_offset);
    members.extend(sorted.iter().copied().take_while(|&v| v < gadget_start));
    let mut witness_cache: Option<(GadgetKind, IndependentSet)> = None;
    for inst in &cert.gadgets {
        let ids = inst.ids();
        let lo = sorted.partition_point(|&v| v < ids.start);
        let hi = sorted.partition_point(|&v| v < ids.end);
        let part = &sorted[lo..hi];
        if !part.contains(&inst.port) && part.len() >= cert.per_gadget_alpha {
            members.extend_from_slice(part);
            continue;
        }
        let witness = match &witness_cache {
            Some((k, w)) if *k == inst.kind => w,
            _ => {
                let (_, layout) = gadget::build(inst.kind)?;
                &witness_cache.insert((inst.kind, layout.canonical_witness())).1
            }
        };
        members.extend(witness.iter().map(|&v| ids.start + v));
    }
    Ok(IndependentSet::new(members))
}
