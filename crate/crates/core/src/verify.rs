//! Independent re-verification of reduction outputs.
//!
//! The checks rebuild everything they compare against (gadget blueprints,
//! padding blocks, expected counts) from the certificate's declared kinds and
//! sizes rather than trusting the constructor. Only
//! [`check_alpha_relation`], [`check_port_exclusion`] and
//! [`check_sandwich`] (for the gadget constant) call a solver.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::{self, GadgetKind, VertexRole};
use crate::graph::{Graph, IndependentSet};
use crate::regularize::{self, ReductionCertificate, StepKind};
use crate::solve::{self, SolverLimits, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail,
        }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// `Pass` iff no check failed; skipped checks do not count against it.
    pub overall: CheckStatus,
}

impl VerificationReport {
    pub fn from_checks(checks: Vec<Check>) -> Self {
        let overall = if checks.iter().any(Check::failed) {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        };
        VerificationReport { checks, overall }
    }

    pub fn passed(&self) -> bool {
        self.overall == CheckStatus::Pass
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn check_regular(g: &Graph, d: usize) -> Check {
    let bad: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.neighbors(v).len() != d)
        .collect();
    let detail = match bad.first() {
        None => format!("all {} vertices have degree {d}", g.vertex_count()),
        Some(&v) => format!(
            "{} vertices off degree {d}, first: vertex {v} has degree {}",
            bad.len(),
            g.neighbors(v).len()
        ),
    };
    Check::new("regular", bad.is_empty(), detail)
}

fn verify_hashes(g: &Graph, g_prime: &Graph, cert: &ReductionCertificate) -> Result<()> {
    if g.content_hash_hex() != cert.source_hash {
        return Err(Error::invalid("source graph hash does not match the certificate"));
    }
    if g_prime.content_hash_hex() != cert.result_hash {
        return Err(Error::invalid("reduced graph hash does not match the certificate"));
    }
    Ok(())
}

/// Source graph plus the padding blocks declared by the certificate, rebuilt
/// from the step kinds. `Err` carries a description of the first
/// inconsistency in the declared id ranges.
fn expected_padded(g: &Graph, cert: &ReductionCertificate) -> core::result::Result<Graph, String> {
    let mut padded = g.clone();
    for step in cert.padding_steps() {
        let block = match step.kind {
            StepKind::ParityFix { clique_size } => Graph::complete(clique_size),
            StepKind::StarPad { leaves } => Graph::star(leaves),
            StepKind::GadgetAttach => unreachable!("filtered out"),
        };
        if step.added.start != padded.vertex_count() || step.added.len() != block.vertex_count() {
            return Err(format!(
                "step {:?} declares ids {}..{} but the next free id is {}",
                step.kind,
                step.added.start,
                step.added.end,
                padded.vertex_count()
            ));
        }
        padded = padded.disjoint_union(&block);
    }
    Ok(padded)
}

/// Number of edges leaving each gadget's id range, and whether every gadget's
/// only outside edge is port to owner.
fn outside_edges(g_prime: &Graph, cert: &ReductionCertificate) -> Vec<(usize, bool)> {
    cert.gadgets
        .iter()
        .map(|inst| {
            let ids = inst.ids();
            let mut count = 0;
            let mut port_to_owner = false;
            for v in ids.range().filter(|&v| v < g_prime.vertex_count()) {
                for &u in g_prime.neighbors(v) {
                    if !ids.contains(u) {
                        count += 1;
                        port_to_owner |= v == inst.port && u == inst.owner;
                    }
                }
            }
            (count, port_to_owner)
        })
        .collect()
}

/// Role-based canonical witness of a blueprint; mirrors
/// `GadgetLayout::canonical_witness` without computing the gadget's α.
fn blueprint_witness(roles: &[VertexRole]) -> usize {
    use crate::gadget::IcosaLabel::{A, B, F, K};
    roles
        .iter()
        .filter(|r| match r {
            VertexRole::PartA(_) | VertexRole::HubB(_) => true,
            VertexRole::IcosaLabel { label, .. } => matches!(label, A | B | F | K),
            _ => false,
        })
        .count()
}

/// Structural verification of a reduction. Never calls a solver.
///
/// Checks, in order: regularity, that the padded source is the induced
/// subgraph on its id prefix, gadget blueprints, port attachment, gadget
/// counts per vertex, vertex count and size bound, offset arithmetic.
pub fn check_certificate(g: &Graph, g_prime: &Graph, cert: &ReductionCertificate) -> Result<VerificationReport> {
    verify_hashes(g, g_prime, cert)?;
    let delta = cert.target_degree;
    let mut checks = Vec::with_capacity(7);

    // (a)
    let mut regular = check_regular(g_prime, delta);
    regular.name = "certificate.regularity".to_string();
    checks.push(regular);

    // (b)
    let padded_n = cert.padded_n();
    let padded = expected_padded(g, cert);
    let origin_ok = cert.origin_range.start == 0 && cert.origin_range.end == g.vertex_count() && cert.source_n == g.vertex_count();
    let (ok, detail) = match &padded {
        Err(why) => (false, why.clone()),
        Ok(_) if !origin_ok => (false, String::from("origin range does not cover the source vertices")),
        Ok(_) if padded_n > g_prime.vertex_count() => (false, String::from("padded graph exceeds the reduced graph")),
        Ok(p) => {
            let induced = g_prime.induced_range(0..padded_n);
            let same = induced == *p;
            (
                same,
                if same {
                    format!("ids 0..{padded_n} induce the source plus {} padding block(s)", cert.padding_steps().count())
                } else {
                    let extra = induced.edges().find(|&(u, v)| !p.has_edge(u, v));
                    let missing = p.edges().find(|&(u, v)| !induced.has_edge(u, v));
                    format!("induced prefix differs: extra edge {extra:?}, missing edge {missing:?}")
                },
            )
        }
    };
    checks.push(Check::new("certificate.origin_subgraph", ok, detail));

    // (c)
    let blueprint = gadget::blueprint(cert.gadget_kind);
    let (ok, detail) = match &blueprint {
        Err(e) => (false, e.to_string()),
        Ok((bp, roles)) => {
            let bp_port = roles.iter().position(|r| *r == VertexRole::Port);
            let bad = cert.gadgets.iter().position(|inst| {
                let ids = inst.ids();
                inst.kind != cert.gadget_kind
                    || ids.end > g_prime.vertex_count()
                    || Some(inst.port - inst.id_offset) != bp_port
                    || g_prime.induced_range(ids.range()) != *bp
            });
            match bad {
                None => (true, format!("{} gadget(s) match the {} blueprint", cert.gadgets.len(), cert.gadget_kind.name())),
                Some(i) => (false, format!("gadget #{i} (owner {}) differs from its blueprint", cert.gadgets[i].owner)),
            }
        }
    };
    checks.push(Check::new("certificate.gadget_blueprints", ok, detail));

    // (d)
    let outside = outside_edges(g_prime, cert);
    let bad = outside.iter().position(|&(count, port_ok)| count != 1 || !port_ok);
    let detail = match bad {
        None => String::from("every port is joined to exactly its owner"),
        Some(i) => format!(
            "gadget #{i} (owner {}) has {} outside edge(s), port-to-owner present: {}",
            cert.gadgets[i].owner, outside[i].0, outside[i].1
        ),
    };
    checks.push(Check::new("certificate.port_attachment", bad.is_none(), detail));

    // (e)
    let (ok, detail) = match &padded {
        Err(why) => (false, why.clone()),
        Ok(p) => {
            let mut per_owner = alloc::vec![0usize; p.vertex_count()];
            let mut next = padded_n;
            let mut layout_ok = true;
            for inst in &cert.gadgets {
                match per_owner.get_mut(inst.owner) {
                    Some(c) => {
                        *c += 1;
                        layout_ok &= inst.index == *c;
                    }
                    None => layout_ok = false,
                }
                layout_ok &= inst.id_offset == next;
                next = inst.ids().end;
            }
            let wrong = (0..p.vertex_count())
                .find(|&v| per_owner[v] + p.neighbors(v).len() != delta);
            match (layout_ok, wrong) {
                (false, _) => (false, String::from("gadget ids or indices are not allocated contiguously by owner")),
                (true, Some(v)) => (
                    false,
                    format!("vertex {v} has degree {} and {} gadget(s), expected {}", p.neighbors(v).len(), per_owner[v], delta.saturating_sub(p.neighbors(v).len())),
                ),
                (true, None) => (true, format!("{} gadgets, Δ - d_v per vertex", cert.gadgets.len())),
            }
        }
    };
    checks.push(Check::new("certificate.gadget_counts", ok, detail));

    // (f)
    let size = cert.gadget_kind.vertex_count();
    let (ok, detail) = match &padded {
        Err(why) => (false, why.clone()),
        Ok(p) => {
            let deficit: usize = p.degrees().map(|d| delta.saturating_sub(d)).sum();
            let expected = padded_n + deficit * size;
            let bound = padded_n * (1 + delta * size);
            let n = g_prime.vertex_count();
            (
                n == expected && n <= bound,
                format!("|V(G')| = {n}, expected {expected}, bound {bound}"),
            )
        }
    };
    checks.push(Check::new("certificate.vertex_count", ok, detail));

    // (g)
    let steps_ok = cert.steps.iter().all(|s| match s.kind {
        StepKind::ParityFix { .. } => s.alpha_offset == 1,
        StepKind::StarPad { leaves } => s.alpha_offset == leaves,
        StepKind::GadgetAttach => s.alpha_offset == 0,
    });
    let witness = blueprint.as_ref().map(|(_, roles)| blueprint_witness(roles)).unwrap_or(0);
    let recomputed = cert.recomputed_offset();
    let ok = steps_ok && recomputed == cert.total_offset && witness == cert.per_gadget_alpha;
    checks.push(Check::new(
        "certificate.offset_arithmetic",
        ok,
        format!(
            "total_offset {} vs recomputed {recomputed}; per-gadget constant {} vs canonical witness {witness}; step offsets consistent: {steps_ok}",
            cert.total_offset, cert.per_gadget_alpha
        ),
    ));

    Ok(VerificationReport::from_checks(checks))
}

/// `α(G') = α(G) + total_offset`, both sides by the exact solver. Skipped if
/// a budget runs out.
pub fn check_alpha_relation(g: &Graph, g_prime: &Graph, cert: &ReductionCertificate, limits: &SolverLimits) -> Check {
    const NAME: &str = "alpha_relation";
    let source = match solve::solve(g, Strategy::Auto, limits) {
        Ok(r) => r.alpha,
        Err(e) => return Check::skipped(NAME, format!("α(G): {e}")),
    };
    let reduced = match solve::solve(g_prime, Strategy::Auto, limits) {
        Ok(r) => r.alpha,
        Err(e) => return Check::skipped(NAME, format!("α(G'): {e}")),
    };
    Check::new(
        NAME,
        reduced == source + cert.total_offset,
        format!("α(G') = {reduced}, α(G) + offset = {source} + {}", cert.total_offset),
    )
}

/// Certifies `α(G') = |i| + total_offset` without solving `G'`, assuming
/// `|i| = α(G)`.
///
/// Lower bound: the forward image of `i` is independent in `G'` and has that
/// size. Upper bound: the ids of `G'` split into the source, padding blocks
/// and gadgets; an independent set takes at most `α(G)` source vertices, one
/// vertex of a clique, the leaves of a star, and at most the gadget's α from
/// each gadget, since every gadget range induces its blueprint.
pub fn check_sandwich(g: &Graph, g_prime: &Graph, cert: &ReductionCertificate, i: &IndependentSet) -> Result<Check> {
    const NAME: &str = "sandwich";
    verify_hashes(g, g_prime, cert)?;
    g.require_independent(i)?;

    let forward = regularize::forward_map(g, i, cert)?;
    let lower_ok = g_prime.is_independent_set(&forward)? && forward.len() == i.len() + cert.total_offset;
    if !lower_ok {
        return Ok(Check::new(
            NAME,
            false,
            format!(
                "forward image has size {}, expected |I| + offset = {}",
                forward.len(),
                i.len() + cert.total_offset
            ),
        ));
    }

    // the parts must tile 0..n' and have the declared shape
    let mut next = 0;
    let mut upper = 0usize;
    let mut shape_ok = cert.origin_range.start == 0 && cert.origin_range.end == g.vertex_count();
    next = cert.origin_range.end.max(next);
    upper += i.len();
    for step in cert.padding_steps() {
        shape_ok &= step.added.start == next && step.added.end <= g_prime.vertex_count();
        if !shape_ok {
            break;
        }
        let block = g_prime.induced_range(step.added.range());
        match step.kind {
            StepKind::ParityFix { clique_size } => {
                shape_ok &= block == Graph::complete(clique_size);
                upper += 1;
            }
            StepKind::StarPad { leaves } => {
                shape_ok &= block == Graph::star(leaves);
                upper += leaves;
            }
            StepKind::GadgetAttach => {}
        }
        next = step.added.end;
    }
    let gadget_alpha = gadget::gadget_alpha_of(cert.gadget_kind)?;
    let (bp, _) = gadget::blueprint(cert.gadget_kind)?;
    for inst in &cert.gadgets {
        let ids = inst.ids();
        shape_ok &= inst.kind == cert.gadget_kind
            && ids.start == next
            && ids.end <= g_prime.vertex_count()
            && g_prime.induced_range(ids.range()) == bp;
        if !shape_ok {
            break;
        }
        upper += gadget_alpha;
        next = ids.end;
    }
    shape_ok &= next == g_prime.vertex_count();
    if !shape_ok {
        return Ok(Check::new(
            NAME,
            false,
            String::from("reduced graph does not decompose into the declared parts"),
        ));
    }

    let lower = forward.len();
    if upper != lower {
        return Ok(Check::new(
            NAME,
            false,
            format!("lower bound {lower} and structural upper bound {upper} differ"),
        ));
    }
    let maximal = (0..g.vertex_count())
        .all(|v| i.contains(v) || g.neighbors(v).iter().any(|&u| i.contains(u)));
    let detail = if maximal {
        format!("α(G') = {lower}, conditional on |I| = {} being α(G)", i.len())
    } else {
        format!(
            "I is not maximal in G, so only α(G') >= {lower} is certified; the upper bound needs a maximum I"
        )
    };
    Ok(Check::new(NAME, true, detail))
}

/// Triangles of `G'` are exactly those of the padded source: gadgets add none
/// and every port edge closes none.
pub fn check_triangle_preservation(g: &Graph, g_prime: &Graph, cert: &ReductionCertificate) -> Check {
    const NAME: &str = "triangle_preservation";
    if cert.is_planar() {
        return Check::skipped(NAME, "planar gadgets contain icosahedron triangles");
    }
    let padding: usize = cert
        .padding_steps()
        .map(|s| match s.kind {
            StepKind::ParityFix { clique_size: k } => k * k.saturating_sub(1) * k.saturating_sub(2) / 6,
            _ => 0,
        })
        .sum();
    let padded_n = cert.padded_n();
    let expected = g.triangle_count() + padding;
    let mut count = 0;
    let mut stray = None;
    g_prime.for_each_triangle(|t| {
        count += 1;
        if t[2] >= padded_n && stray.is_none() {
            stray = Some(t);
        }
    });
    let ok = count == expected && stray.is_none();
    let detail = match stray {
        Some(t) => format!("triangle {t:?} reaches outside the source ids"),
        None => format!("{count} triangle(s) in G', {expected} expected ({padding} from padding)"),
    };
    Check::new(NAME, ok, detail)
}

/// Compares `α(H)` with the best independent set of `H` through `port`
/// (`1 + α(H - N[port])`). The latter can never exceed the former; the check
/// also requires the gap to be strict exactly when `expect_strict` is set.
pub fn check_port_exclusion_on(h: &Graph, port: usize, expect_strict: bool, limits: &SolverLimits) -> Check {
    const NAME: &str = "port_exclusion";
    let m1 = match solve::solve(h, Strategy::Auto, limits) {
        Ok(r) => r.alpha,
        Err(e) => return Check::skipped(NAME, e.to_string()),
    };
    let m2 = match solve::solve(&h.without_closed_neighborhood(port), Strategy::Auto, limits) {
        Ok(r) => r.alpha + 1,
        Err(e) => return Check::skipped(NAME, e.to_string()),
    };
    let strict = m2 < m1;
    Check::new(
        NAME,
        m2 <= m1 && strict == expect_strict,
        format!(
            "α = {m1}, best through the port = {m2} ({}; expected {})",
            if strict { "strict" } else { "tie" },
            if expect_strict { "strict" } else { "tie" }
        ),
    )
}

/// [`check_port_exclusion_on`] for a gadget kind. The gap is strict for the
/// planar gadget and the general gadget with `Δ >= 5`; at `Δ = 3` it ties.
pub fn check_port_exclusion(kind: GadgetKind, limits: &SolverLimits) -> Result<Check> {
    if !kind.is_attachable() {
        return Err(Error::invalid("gadget kind has no port"));
    }
    let (h, roles) = gadget::blueprint(kind)?;
    let port = roles
        .iter()
        .position(|r| *r == VertexRole::Port)
        .expect("attachable gadget has a port");
    let expect_strict = !matches!(kind, GadgetKind::GeneralOdd(3));
    Ok(check_port_exclusion_on(&h, port, expect_strict, limits))
}

/// Necessary planarity condition for planar pipelines: `m <= 3n - 6`, and
/// every gadget hangs from a single cut edge to its owner.
pub fn check_planarity_necessary(g_prime: &Graph, cert: &ReductionCertificate) -> Check {
    const NAME: &str = "planarity_necessary";
    if !cert.is_planar() {
        return Check::skipped(NAME, "not a planar pipeline");
    }
    let (n, m) = (g_prime.vertex_count(), g_prime.edge_count());
    let euler_ok = n < 3 || m + 6 <= 3 * n;
    let cut_ok = outside_edges(g_prime, cert)
        .iter()
        .all(|&(count, port_ok)| count == 1 && port_ok);
    Check::new(
        NAME,
        euler_ok && cut_ok,
        format!(
            "n = {n}, m = {m}, 3n - 6 = {}; single cut edge per gadget: {cut_ok}",
            (3 * n).saturating_sub(6)
        ),
    )
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Run the solver-backed checks.
    pub with_oracle: bool,
    /// Claimed maximum independent set of the source for the sandwich check.
    pub witness: Option<IndependentSet>,
    pub limits: SolverLimits,
}

/// All checks in a fixed order: certificate structure, triangles, planarity,
/// then the solver-backed checks when requested.
pub fn verify_all(g: &Graph, g_prime: &Graph, cert: &ReductionCertificate, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut checks = check_certificate(g, g_prime, cert)?.checks;
    checks.push(check_triangle_preservation(g, g_prime, cert));
    checks.push(check_planarity_necessary(g_prime, cert));
    if opts.with_oracle {
        checks.push(check_port_exclusion(cert.gadget_kind, &opts.limits)?);
        checks.push(check_alpha_relation(g, g_prime, cert, &opts.limits));
    } else {
        checks.push(Check::skipped("port_exclusion", "oracle checks not requested"));
        checks.push(Check::skipped("alpha_relation", "oracle checks not requested"));
    }
    let witness = match (&opts.witness, opts.with_oracle) {
        (Some(w), _) => Some(w.clone()),
        (None, true) => solve::solve(g, Strategy::Auto, &opts.limits).ok().map(|r| r.witness),
        (None, false) => None,
    };
    match witness {
        Some(w) => checks.push(check_sandwich(g, g_prime, cert, &w)?),
        None => checks.push(Check::skipped("sandwich", "no maximum independent set of G supplied")),
    }
    Ok(VerificationReport::from_checks(checks))
}
