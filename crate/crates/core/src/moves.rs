//! Trunk reduction and expansion, and the reduction scheduler.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::butterfly::{gamma_graph, trace_link, ButterflyDiagram, ButterflyError, LinkStep, Trunk, VertexKind};
use crate::planar_map::{Dart, MapError, PlanarMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Butterfly(#[from] ButterflyError),
    #[error("trunk {0} does not exist")]
    NoSuchTrunk(usize),
    #[error("trunk {0} is not simple")]
    NotSimple(usize),
    #[error("endpoint of trunk {0} lies on the same face twice")]
    SelfAdjacentFace(usize),
    #[error("endpoint of trunk {0} is not mirrored onto an A-vertex")]
    NoAdmissibleEndpoint(usize),
    #[error("reducing trunk {0} would disconnect the map")]
    WouldDisconnect(usize),
    #[error("vertex {0} is not an E-vertex")]
    NotEVertex(usize),
    #[error("every trunk of link component {0} is simple")]
    ComponentAllSimple(usize),
}

/// Which anchor of a trunk is removed by a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrunkEnd {
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Reduce,
    Expand,
}

/// One applied move. `a_vertex` and `e_vertex` are ids in the diagram
/// holding them as A-vertex and E-vertex; `corner` is the E-vertex corner
/// that an expansion used or a reduction produced (prior to smoothing).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub trunk: usize,
    pub endpoint: Option<TrunkEnd>,
    /// Vertex removed by a reduction or created by an expansion.
    pub a_vertex: usize,
    /// Vertex that became (reduce) or stopped being (expand) an E-vertex.
    pub e_vertex: usize,
    pub corner: Dart,
    pub m_before: usize,
    pub m_after: usize,
}

fn trunk_checked(b: &ButterflyDiagram, t: usize) -> Result<Trunk, MoveError> {
    b.trunks().get(t).copied().ok_or(MoveError::NoSuchTrunk(t))
}

/// A trunk is simple when its face is a 4-gon whose two non-anchor corners
/// are not on gamma.
pub fn is_simple_trunk(b: &ButterflyDiagram, t: usize) -> bool {
    let Some(trunk) = b.trunks().get(t) else {
        return false;
    };
    let walk = b.map().walk_from(trunk.c);
    walk.len() == 4
        && [walk[1], walk[3]]
            .iter()
            .all(|&d| !b.kind(b.map().vertex(d)).on_gamma())
}

/// Checks that reducing at `end` is admissible and returns the walk of the
/// trunk's face starting at the removed anchor.
fn reduction_walk(b: &ButterflyDiagram, t: usize, end: TrunkEnd) -> Result<[Dart; 4], MoveError> {
    let trunk = trunk_checked(b, t)?;
    if !is_simple_trunk(b, t) {
        return Err(MoveError::NotSimple(t));
    }
    let map = b.map();
    let start = match end {
        TrunkEnd::C => trunk.c,
        TrunkEnd::D => trunk.d,
    };
    let w = map.walk_from(start);
    let walk = [w[0], w[1], w[2], w[3]];
    let outer = map.alpha(walk[3]);
    if map.face(outer) == map.face(walk[0]) {
        return Err(MoveError::SelfAdjacentFace(t));
    }
    if b.kind(map.vertex(b.mirror(outer))) != VertexKind::A {
        return Err(MoveError::NoAdmissibleEndpoint(t));
    }
    Ok(walk)
}

/// Whether `trunk_reduce(b, t, end)` would succeed.
pub fn can_reduce(b: &ButterflyDiagram, t: usize, end: TrunkEnd) -> bool {
    reduction_walk(b, t, end).is_ok()
}

/// Removes the anchor vertex at `end` of a simple trunk together with its two
/// edges, merging the trunk's face into the neighbouring face. The opposite
/// anchor becomes an E-vertex. Plain vertices are left in place.
pub fn trunk_reduce(
    b: &ButterflyDiagram,
    t: usize,
    end: TrunkEnd,
) -> Result<(ButterflyDiagram, MoveRecord), MoveError> {
    let walk = reduction_walk(b, t, end)?;
    let map = b.map();
    let mut removed = vec![false; map.num_darts()];
    for d in [walk[0], walk[3]] {
        removed[d] = true;
        removed[map.alpha(d)] = true;
    }
    let (next, mapping) = map.remove_darts(&removed).map_err(|e| match e {
        MapError::NotConnected | MapError::Empty => MoveError::WouldDisconnect(t),
        other => MoveError::Butterfly(other.into()),
    })?;
    let trunks: Vec<Trunk> = b
        .trunks()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != t)
        .map(|(_, tr)| Trunk {
            c: mapping[tr.c].expect("anchors of other faces survive"),
            d: mapping[tr.d].expect("anchors of other faces survive"),
        })
        .collect();
    let e_dart = mapping[walk[2]].expect("opposite anchor survives");
    let out = ButterflyDiagram::new(next, trunks)?;
    let record = MoveRecord {
        kind: MoveKind::Reduce,
        trunk: t,
        endpoint: Some(end),
        a_vertex: map.vertex(walk[0]),
        e_vertex: out.map().vertex(e_dart),
        corner: e_dart,
        m_before: b.m(),
        m_after: out.m(),
    };
    Ok((out, record))
}

/// Subdivides every edge in the mirror class of the edge of `d`, keeping
/// existing dart ids. Each new dart pair is appended.
fn subdivide_edge_class(b: &ButterflyDiagram, d: Dart) -> Result<ButterflyDiagram, MoveError> {
    let map = b.map();
    let n = map.num_darts();
    let mut in_class = vec![false; n];
    let mut stack = vec![d];
    while let Some(x) = stack.pop() {
        if in_class[x] {
            continue;
        }
        in_class[x] = true;
        stack.push(map.alpha(x));
        stack.push(map.phi_inv(b.mirror(x)));
    }
    let mut alpha = map.alpha_vec().to_vec();
    let mut sigma = map.sigma_vec().to_vec();
    for x in 0..n {
        if !in_class[x] || x > map.alpha(x) {
            continue;
        }
        // x: P -> Q becomes x: P -> w, u: w -> P, v: w -> Q, alpha(x): Q -> w
        let (u, v, back) = (alpha.len(), alpha.len() + 1, map.alpha(x));
        alpha[x] = u;
        alpha[back] = v;
        alpha.extend([x, back]);
        sigma.extend([v, u]);
    }
    let next = PlanarMap::new(alpha, sigma).map_err(ButterflyError::from)?;
    Ok(ButterflyDiagram::new(next, b.trunks().to_vec())?)
}

/// Inverse of a reduction: inserts a new vertex in the face containing
/// corner `x` of an E-vertex, cutting off a simple trunk between it and the
/// E-vertex, which becomes an A-vertex. Edges from the E-vertex to a
/// neighbour on gamma are first subdivided (with their whole mirror class),
/// so the new edges always land on B-vertices.
pub fn trunk_expand_at(
    b: &ButterflyDiagram,
    x: Dart,
) -> Result<(ButterflyDiagram, MoveRecord), MoveError> {
    if x >= b.map().num_darts() {
        return Err(ButterflyError::from(MapError::NoSuchDart(x)).into());
    }
    let e = b.map().vertex(x);
    if b.kind(e) != VertexKind::E {
        return Err(MoveError::NotEVertex(e));
    }
    let mut cur = b.clone();
    if cur.kind(cur.map().head(x)).on_gamma() {
        cur = subdivide_edge_class(&cur, x)?;
    }
    let incoming = cur.map().phi_inv(x);
    if cur.kind(cur.map().vertex(incoming)).on_gamma() {
        cur = subdivide_edge_class(&cur, incoming)?;
    }
    let map = cur.map();
    let n = map.num_darts();
    let incoming = map.phi_inv(x);
    let ax = map.alpha(x);
    // new darts: n (new -> c), n+1 (c -> new), n+2 (new -> d), n+3 (d -> new)
    let mut alpha = map.alpha_vec().to_vec();
    alpha.extend([n + 1, n, n + 3, n + 2]);
    let mut sigma = map.sigma_vec().to_vec();
    sigma.extend([n + 2, 0, n, 0]);
    sigma[n + 3] = sigma[ax];
    sigma[ax] = n + 3;
    let before_incoming = (0..n + 4)
        .find(|&d| sigma[d] == incoming)
        .expect("sigma is a permutation");
    sigma[before_incoming] = n + 1;
    sigma[n + 1] = incoming;
    let next = PlanarMap::new(alpha, sigma).map_err(ButterflyError::from)?;
    let mut trunks: Vec<Trunk> = cur.trunks().to_vec();
    trunks.push(Trunk { c: n, d: x });
    let out = ButterflyDiagram::new(next, trunks)?;
    let record = MoveRecord {
        kind: MoveKind::Expand,
        trunk: out.m() - 1,
        endpoint: None,
        a_vertex: out.map().vertex(n),
        e_vertex: e,
        corner: x,
        m_before: b.m(),
        m_after: out.m(),
    };
    Ok((out, record))
}

/// Expands at E-vertex `v`, preferring the corner whose mirror is an
/// A-vertex and then the smaller dart.
pub fn trunk_expand(
    b: &ButterflyDiagram,
    v: usize,
) -> Result<(ButterflyDiagram, MoveRecord), MoveError> {
    if v >= b.map().vertex_count() || b.kind(v) != VertexKind::E {
        return Err(MoveError::NotEVertex(v));
    }
    let mut corners = b.map().vertex_darts(v).to_vec();
    corners.sort_by_key(|&d| (b.kind(b.map().vertex(b.mirror(d))) != VertexKind::A, d));
    trunk_expand_at(b, corners[0])
}

/// Expands E-vertices (lowest index first) until none remain.
pub fn eliminate_e_vertices(
    b: &ButterflyDiagram,
) -> Result<(ButterflyDiagram, Vec<MoveRecord>), MoveError> {
    let mut cur = b.clone();
    let mut records = Vec::new();
    while let Some(v) = (0..cur.map().vertex_count()).find(|&v| cur.kind(v) == VertexKind::E) {
        let (next, rec) = trunk_expand(&cur, v)?;
        records.push(rec);
        cur = next;
    }
    Ok((cur, records))
}

/// Chooses the next reduction: per component, walk the tour from its lowest
/// non-simple trunk and take the first simple trunk, trying the end at which
/// the tour arrives before the other one.
fn next_reduction(b: &ButterflyDiagram) -> Result<Option<(usize, TrunkEnd)>, MoveError> {
    let g = gamma_graph(b)?;
    let tours = trace_link(b, &g);
    for (k, tour) in tours.iter().enumerate() {
        let trunks: Vec<(usize, bool)> = tour
            .iter()
            .filter_map(|s| match *s {
                LinkStep::Trunk { trunk, forward } => Some((trunk, forward)),
                LinkStep::Chord { .. } => None,
            })
            .collect();
        let Some(start) = (0..trunks.len())
            .filter(|&i| !is_simple_trunk(b, trunks[i].0))
            .min_by_key(|&i| trunks[i].0)
        else {
            return Err(MoveError::ComponentAllSimple(k));
        };
        for i in 0..trunks.len() {
            let (t, forward) = trunks[(start + i) % trunks.len()];
            if !is_simple_trunk(b, t) {
                continue;
            }
            let (arrive, leave) = if forward {
                (TrunkEnd::C, TrunkEnd::D)
            } else {
                (TrunkEnd::D, TrunkEnd::C)
            };
            for end in [arrive, leave] {
                if can_reduce(b, t, end) {
                    return Ok(Some((t, end)));
                }
            }
            return Err(MoveError::NoAdmissibleEndpoint(t));
        }
    }
    Ok(None)
}

/// Reduces until no trunk is simple, smoothing plain vertices after every
/// step. The trunks of the result correspond to the bridges of a minimal
/// presentation reachable this way.
pub fn reduce_to_bridges(
    b: &ButterflyDiagram,
) -> Result<(ButterflyDiagram, Vec<MoveRecord>), MoveError> {
    let mut cur = b.smooth_plain_vertices()?;
    let mut records = Vec::new();
    while let Some((t, end)) = next_reduction(&cur)? {
        let (next, rec) = trunk_reduce(&cur, t, end)?;
        records.push(rec);
        cur = next.smooth_plain_vertices()?;
    }
    Ok((cur, records))
}
