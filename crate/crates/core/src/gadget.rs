//! Gadget blueprints.
//!
//! Three gadgets are provided:
//!
//! * the general gadget for odd `Δ >= 3`: `(Δ-1)/2` complete bipartite
//!   blocks `K_{Δ-1,Δ-1}` with sides `A_i`, `B_i`, a hub `a_i` joined to all
//!   of `A_i`, a hub `b_i` joined to all of `B_i`, and a port `h` joined to
//!   every hub. All vertices have degree `Δ` except `h`, which has `Δ-1`;
//! * the icosahedron with one edge `{a, b}` removed (12 vertices, labels
//!   `a..l`), whose unique maximum independent set is `{a, b, f, k}`;
//! * the planar gadget: two icosahedron blocks plus a port `h` joined to both
//!   copies of `a` and `b`. Every vertex has degree 5 except `h` (degree 4).
//!
//! Vertex order inside a gadget is fixed: for the general gadget block by
//! block (`A_i`, `B_i`, `a_i`, `b_i`), then `h`; for the planar gadget the
//! first block, the second block, then `h`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, IndependentSet};
use crate::solve::{self, SolverLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    /// General gadget for the given odd degree.
    GeneralOdd(usize),
    /// Two icosahedron blocks joined through a port; attaches in 5-regular planar targets.
    Planar5,
    /// A single icosahedron block. Has no port and is never attached.
    Icosa,
}

impl GadgetKind {
    pub fn general(delta: usize) -> Result<Self> {
        check_odd_degree(delta)?;
        Ok(GadgetKind::GeneralOdd(delta))
    }

    /// Degree every vertex reaches once the gadget is attached.
    pub fn target_degree(&self) -> usize {
        match *self {
            GadgetKind::GeneralOdd(d) => d,
            GadgetKind::Planar5 | GadgetKind::Icosa => 5,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            GadgetKind::GeneralOdd(d) => (d - 1) * (d - 1) + d,
            GadgetKind::Planar5 => 2 * ICOSA_VERTICES + 1,
            GadgetKind::Icosa => ICOSA_VERTICES,
        }
    }

    pub fn is_attachable(&self) -> bool {
        !matches!(self, GadgetKind::Icosa)
    }

    pub fn name(&self) -> String {
        match *self {
            GadgetKind::GeneralOdd(d) => format!("general (Δ={d})"),
            GadgetKind::Planar5 => String::from("planar"),
            GadgetKind::Icosa => String::from("icosahedron minus an edge"),
        }
    }
}

pub(crate) fn check_odd_degree(delta: usize) -> Result<()> {
    if delta < 3 || delta.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "gadget degree must be odd and at least 3, got {delta}"
        )));
    }
    Ok(())
}

/// Labels of the icosahedron-minus-edge block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IcosaLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
}

impl IcosaLabel {
    pub const ALL: [IcosaLabel; 12] = [
        IcosaLabel::A,
        IcosaLabel::B,
        IcosaLabel::C,
        IcosaLabel::D,
        IcosaLabel::E,
        IcosaLabel::F,
        IcosaLabel::G,
        IcosaLabel::H,
        IcosaLabel::I,
        IcosaLabel::J,
        IcosaLabel::K,
        IcosaLabel::L,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }
}

const ICOSA_VERTICES: usize = 12;

/// Icosahedron edges minus `{a, b}`, by label.
const ICOSA_EDGES: [(char, char); 29] = [
    ('a', 'c'),
    ('b', 'c'),
    ('d', 'e'),
    ('e', 'f'),
    ('f', 'g'),
    ('g', 'h'),
    ('h', 'i'),
    ('i', 'd'),
    ('b', 'd'),
    ('b', 'i'),
    ('b', 'e'),
    ('i', 'a'),
    ('h', 'a'),
    ('g', 'a'),
    ('e', 'c'),
    ('f', 'c'),
    ('g', 'c'),
    ('l', 'k'),
    ('j', 'k'),
    ('j', 'l'),
    ('j', 'e'),
    ('j', 'f'),
    ('j', 'd'),
    ('l', 'f'),
    ('l', 'g'),
    ('l', 'h'),
    ('k', 'h'),
    ('k', 'i'),
    ('k', 'd'),
];

/// The unique maximum independent set of the icosahedron block.
const ICOSA_WITNESS: [IcosaLabel; 4] = [IcosaLabel::A, IcosaLabel::B, IcosaLabel::F, IcosaLabel::K];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexRole {
    Original,
    /// Side `A_i` of block `i` (1-based).
    PartA(usize),
    PartB(usize),
    HubA(usize),
    HubB(usize),
    Port,
    /// Icosahedron label; `copy` is 1 or 2 inside the planar gadget, 0 standalone.
    IcosaLabel { copy: u8, label: IcosaLabel },
    ParityClique,
    PadStarCenter,
    PadStarLeaf,
}

impl VertexRole {
    /// Short display form used in role maps, e.g. `A_1`, `b_2`, `h`, `X2.k`.
    pub fn label(&self) -> String {
        match *self {
            VertexRole::Original => String::from("original"),
            VertexRole::PartA(i) => format!("A_{i}"),
            VertexRole::PartB(i) => format!("B_{i}"),
            VertexRole::HubA(i) => format!("a_{i}"),
            VertexRole::HubB(i) => format!("b_{i}"),
            VertexRole::Port => String::from("h"),
            VertexRole::IcosaLabel { copy: 0, label } => format!("{}", label.letter()),
            VertexRole::IcosaLabel { copy, label } => format!("X{copy}.{}", label.letter()),
            VertexRole::ParityClique => String::from("parity_clique"),
            VertexRole::PadStarCenter => String::from("pad_star_center"),
            VertexRole::PadStarLeaf => String::from("pad_star_leaf"),
        }
    }
}

/// Role map and independence constant of one gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLayout {
    pub kind: GadgetKind,
    /// `roles[v]` is the role of local vertex `v`.
    pub roles: Vec<VertexRole>,
    /// Local id of the port; `None` only for the standalone icosahedron block.
    pub port: Option<usize>,
    /// Exact independence number of the gadget graph, computed by the solver.
    pub internal_alpha: usize,
}

impl GadgetLayout {
    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    /// Local id of the port. Panics for the portless icosahedron block.
    pub fn port_id(&self) -> usize {
        self.port.expect("attachable gadget has a port")
    }

    /// A maximum independent set avoiding the port: every `A_i` side plus
    /// every `b_i` hub, or `{a, b, f, k}` in each icosahedron block.
    pub fn canonical_witness(&self) -> IndependentSet {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| match r {
                VertexRole::PartA(_) | VertexRole::HubB(_) => true,
                VertexRole::IcosaLabel { label, .. } => ICOSA_WITNESS.contains(label),
                _ => false,
            })
            .map(|(v, _)| v)
            .collect()
    }

    /// Same as [`GadgetLayout::canonical_witness`]; named for the icosahedron block.
    pub fn icosa_witness(&self) -> IndependentSet {
        self.canonical_witness()
    }

    pub fn vertex_of(&self, role: VertexRole) -> Option<usize> {
        self.roles.iter().position(|&r| r == role)
    }
}

/// Graph and roles of the general gadget, without the independence constant.
pub fn general_blueprint(delta: usize) -> Result<(Graph, Vec<VertexRole>)> {
    check_odd_degree(delta)?;
    let side = delta - 1;
    let blocks = side / 2;
    let n = GadgetKind::GeneralOdd(delta).vertex_count();
    let mut b = GraphBuilder::new(n);
    let mut roles = Vec::with_capacity(n);
    let port = n - 1;
    for i in 1..=blocks {
        let base = roles.len();
        let (a_side, b_side) = (base..base + side, base + side..base + 2 * side);
        let (hub_a, hub_b) = (base + 2 * side, base + 2 * side + 1);
        roles.extend(core::iter::repeat_n(VertexRole::PartA(i), side));
        roles.extend(core::iter::repeat_n(VertexRole::PartB(i), side));
        roles.push(VertexRole::HubA(i));
        roles.push(VertexRole::HubB(i));
        for x in a_side.clone() {
            for y in b_side.clone() {
                b.add_edge(x, y)?;
            }
            b.add_edge(hub_a, x)?;
        }
        for y in b_side {
            b.add_edge(hub_b, y)?;
        }
        b.add_edge(port, hub_a)?;
        b.add_edge(port, hub_b)?;
    }
    roles.push(VertexRole::Port);
    Ok((b.build(), roles))
}

fn add_icosa_block(b: &mut GraphBuilder, roles: &mut Vec<VertexRole>, copy: u8) -> usize {
    let base = b.add_vertices(ICOSA_VERTICES);
    roles.extend(IcosaLabel::ALL.iter().map(|&label| VertexRole::IcosaLabel { copy, label }));
    let id = |c: char| base + (c as u8 - b'a') as usize;
    for (u, v) in ICOSA_EDGES {
        b.add_edge(id(u), id(v)).expect("constant edge list is simple");
    }
    base
}

pub fn icosa_blueprint() -> (Graph, Vec<VertexRole>) {
    let mut b = GraphBuilder::new(0);
    let mut roles = Vec::with_capacity(ICOSA_VERTICES);
    add_icosa_block(&mut b, &mut roles, 0);
    (b.build(), roles)
}

pub fn planar_blueprint() -> (Graph, Vec<VertexRole>) {
    let mut b = GraphBuilder::new(0);
    let mut roles = Vec::with_capacity(2 * ICOSA_VERTICES + 1);
    let first = add_icosa_block(&mut b, &mut roles, 1);
    let second = add_icosa_block(&mut b, &mut roles, 2);
    let port = b.add_vertices(1);
    roles.push(VertexRole::Port);
    for base in [first, second] {
        for label in [IcosaLabel::A, IcosaLabel::B] {
            b.add_edge(port, base + label.index()).expect("ids in range");
        }
    }
    (b.build(), roles)
}

pub fn blueprint(kind: GadgetKind) -> Result<(Graph, Vec<VertexRole>)> {
    match kind {
        GadgetKind::GeneralOdd(d) => general_blueprint(d),
        GadgetKind::Planar5 => Ok(planar_blueprint()),
        GadgetKind::Icosa => Ok(icosa_blueprint()),
    }
}

// Memo for gadget independence numbers, storing α + 1 (0 = not yet computed).
// Slot 0: planar, slot 1: icosahedron, slot 2 + (Δ-3)/2: general gadget.
// Concurrent callers may both compute; the value is deterministic, so the
// last write wins harmlessly.
const MEMO_SLOTS: usize = 32;
static ALPHA_MEMO: [AtomicUsize; MEMO_SLOTS] = [const { AtomicUsize::new(0) }; MEMO_SLOTS];

fn memo_slot(kind: GadgetKind) -> Option<usize> {
    let slot = match kind {
        GadgetKind::Planar5 => 0,
        GadgetKind::Icosa => 1,
        GadgetKind::GeneralOdd(d) => 2 + (d - 3) / 2,
    };
    (slot < MEMO_SLOTS).then_some(slot)
}

/// Exact independence number of a gadget, computed by branch and bound and
/// memoized per kind.
pub fn gadget_alpha_of(kind: GadgetKind) -> Result<usize> {
    let (g, _) = blueprint(kind)?;
    let slot = memo_slot(kind);
    if let Some(s) = slot {
        let cached = ALPHA_MEMO[s].load(Ordering::Acquire);
        if cached > 0 {
            return Ok(cached - 1);
        }
    }
    let alpha = solve::mis_branch_bound(&g, &SolverLimits::default())?.alpha;
    if let Some(s) = slot {
        ALPHA_MEMO[s].store(alpha + 1, Ordering::Release);
    }
    Ok(alpha)
}

/// Exact independence number `c(Δ)` of the general gadget.
pub fn gadget_alpha(delta: usize) -> Result<usize> {
    check_odd_degree(delta)?;
    gadget_alpha_of(GadgetKind::GeneralOdd(delta))
}

fn layout(kind: GadgetKind, roles: Vec<VertexRole>) -> Result<GadgetLayout> {
    let port = roles.iter().position(|r| *r == VertexRole::Port);
    Ok(GadgetLayout {
        kind,
        roles,
        port,
        internal_alpha: gadget_alpha_of(kind)?,
    })
}

pub fn build_general_gadget(delta: usize) -> Result<(Graph, GadgetLayout)> {
    let (g, roles) = general_blueprint(delta)?;
    Ok((g, layout(GadgetKind::GeneralOdd(delta), roles)?))
}

pub fn build_icosa_gadget() -> (Graph, GadgetLayout) {
    let (g, roles) = icosa_blueprint();
    let l = layout(GadgetKind::Icosa, roles).expect("12-vertex solve cannot hit default limits");
    (g, l)
}

pub fn build_planar_gadget() -> (Graph, GadgetLayout) {
    let (g, roles) = planar_blueprint();
    let l = layout(GadgetKind::Planar5, roles).expect("25-vertex solve cannot hit default limits");
    (g, l)
}

pub fn build(kind: GadgetKind) -> Result<(Graph, GadgetLayout)> {
    match kind {
        GadgetKind::GeneralOdd(d) => build_general_gadget(d),
        GadgetKind::Planar5 => Ok(build_planar_gadget()),
        GadgetKind::Icosa => Ok(build_icosa_gadget()),
    }
}

/// Count obtained by taking every `A_i` side together with all `Δ-1` hubs:
/// `(Δ-1)²/2 + Δ - 1`. The hubs `a_i` are adjacent to `A_i`, so this is not
/// an independent set and overshoots α by `(Δ-1)/2`.
pub fn all_hubs_count(delta: usize) -> usize {
    (delta - 1) * (delta - 1) / 2 + delta - 1
}

/// Closed form `Δ(Δ-1)/2` for the general gadget: `(Δ-1)/2` blocks, each
/// contributing one full side plus one hub.
pub fn closed_form_alpha(delta: usize) -> usize {
    delta * (delta - 1) / 2
}

/// Oracle value next to the commonly quoted count for the same gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaDiscrepancy {
    pub kind: GadgetKind,
    /// Exact α from the solver; this is what certificates use.
    pub oracle: usize,
    /// For the general gadget, [`all_hubs_count`]; for the planar gadget,
    /// α of a single icosahedron block (4), i.e. one block per gadget.
    pub quoted: usize,
}

impl AlphaDiscrepancy {
    pub fn differs(&self) -> bool {
        self.oracle != self.quoted
    }
}

pub fn alpha_discrepancy(kind: GadgetKind) -> Result<AlphaDiscrepancy> {
    let quoted = match kind {
        GadgetKind::GeneralOdd(d) => {
            check_odd_degree(d)?;
            all_hubs_count(d)
        }
        GadgetKind::Planar5 | GadgetKind::Icosa => 4,
    };
    Ok(AlphaDiscrepancy {
        kind,
        oracle: gadget_alpha_of(kind)?,
        quoted,
    })
}
