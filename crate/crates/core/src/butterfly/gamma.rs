use super::{ButterflyDiagram, ButterflyError};
use crate::planar_map::Dart;

/// One chord of the gamma graph: a mirror pair of non-anchor corners at
/// A/E-vertices inside a single face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub face: usize,
    pub trunk: usize,
    /// Distance of `plus` from the face's `c` anchor; `minus` sits at `2n - slot`.
    pub slot: usize,
    pub plus: Dart,
    pub minus: Dart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGraph {
    pub chords: Vec<Chord>,
    /// Vertex sequences of the components, each running between two A-vertices.
    pub paths: Vec<Vec<usize>>,
    chord_at: Vec<Option<usize>>,
}

impl GammaGraph {
    /// Chord incident to corner `d`.
    pub fn chord_at(&self, d: Dart) -> Option<usize> {
        self.chord_at[d]
    }
}

/// Builds the chord graph and checks it is a disjoint union of paths whose
/// ends are A-vertices.
pub fn gamma_graph(b: &ButterflyDiagram) -> Result<GammaGraph, ButterflyError> {
    let map = b.map();
    let n = map.num_darts();
    let mut chords = Vec::new();
    let mut chord_at = vec![None; n];
    for (t, trunk) in b.trunks().iter().enumerate() {
        let walk = map.walk_from(trunk.c);
        let half = walk.len() / 2;
        for k in 1..half {
            let (plus, minus) = (walk[k], walk[walk.len() - k]);
            if !b.kind(map.vertex(plus)).on_gamma() {
                continue;
            }
            chord_at[plus] = Some(chords.len());
            chord_at[minus] = Some(chords.len());
            chords.push(Chord {
                face: map.face(trunk.c),
                trunk: t,
                slot: k,
                plus,
                minus,
            });
        }
    }

    let nv = map.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for ch in &chords {
        let (u, v) = (map.vertex(ch.plus), map.vertex(ch.minus));
        if u == v {
            return Err(ButterflyError::GammaNotPaths);
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; nv];
    let mut paths = Vec::new();
    for v in 0..nv {
        if seen[v] || b.kind(v) != super::VertexKind::A {
            continue;
        }
        if adj[v].len() != 1 {
            return Err(ButterflyError::GammaNotPaths);
        }
        let mut path = vec![v];
        seen[v] = true;
        let (mut prev, mut cur) = (v, adj[v][0]);
        loop {
            if seen[cur] {
                return Err(ButterflyError::GammaNotPaths);
            }
            seen[cur] = true;
            path.push(cur);
            match (b.kind(cur), adj[cur].as_slice()) {
                (super::VertexKind::A, [_]) => break,
                (super::VertexKind::E, [x, y]) => {
                    let next = if *x == prev { *y } else { *x };
                    prev = cur;
                    cur = next;
                }
                _ => return Err(ButterflyError::GammaNotPaths),
            }
        }
        paths.push(path);
    }
    // anything on gamma left unvisited lies on a cycle of E-vertices
    if (0..nv).any(|v| !seen[v] && b.kind(v).on_gamma()) {
        return Err(ButterflyError::GammaNotPaths);
    }
    Ok(GammaGraph {
        chords,
        paths,
        chord_at,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkStep {
    /// Traverse a trunk; `forward` means from `c` to `d`.
    Trunk { trunk: usize, forward: bool },
    /// Traverse a chord from corner `from` to its mirror `to`.
    Chord { chord: usize, from: Dart, to: Dart },
}

fn other_corner(b: &ButterflyDiagram, d: Dart) -> Dart {
    let darts = b.map().vertex_darts(b.map().vertex(d));
    if darts[0] == d {
        darts[1]
    } else {
        darts[0]
    }
}

/// Closed tours of the link: trunks alternating with gamma paths. Each
/// component starts at its lowest-index trunk, traversed forward.
pub fn trace_link(b: &ButterflyDiagram, g: &GammaGraph) -> Vec<Vec<LinkStep>> {
    let mut used = vec![false; b.m()];
    let mut tours = Vec::new();
    for start in 0..b.m() {
        if used[start] {
            continue;
        }
        let mut tour = Vec::new();
        let (mut t, mut forward) = (start, true);
        loop {
            used[t] = true;
            tour.push(LinkStep::Trunk { trunk: t, forward });
            let end = if forward { b.trunk(t).d } else { b.trunk(t).c };
            let mut corner = other_corner(b, end);
            let (next_t, anchor) = loop {
                let chord = g.chord_at(corner).expect("A/E corner without chord");
                let to = b.mirror(corner);
                tour.push(LinkStep::Chord {
                    chord,
                    from: corner,
                    to,
                });
                let other = other_corner(b, to);
                if let Some(t2) = b.anchor_trunk(other) {
                    break (t2, other);
                }
                corner = other;
            };
            t = next_t;
            forward = anchor == b.trunk(t).c;
            if t == start && forward {
                break;
            }
        }
        tours.push(tour);
    }
    tours
}

/// Number of link components.
pub fn link_components(b: &ButterflyDiagram) -> Result<usize, ButterflyError> {
    let g = gamma_graph(b)?;
    Ok(trace_link(b, &g).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::fixtures::unknot_path;
    use crate::butterfly::make_rational_butterfly;

    #[test]
    fn unknot_path_has_one_chord() {
        let b = unknot_path();
        let walk = b.trunk_walk(0);
        let g = gamma_graph(&b).unwrap();
        assert_eq!(g.chords.len(), 1);
        assert_eq!((g.chords[0].plus, g.chords[0].minus), (walk[2], walk[6]));
        assert_eq!(g.paths.len(), 1);
        let tours = trace_link(&b, &g);
        assert_eq!(tours.len(), 1);
        assert_eq!(tours[0].len(), 2);
    }

    #[test]
    fn rational_three_one_chords() {
        let b = make_rational_butterfly(3, 1).unwrap();
        let g = gamma_graph(&b).unwrap();
        let north: Vec<usize> = (0..6).map(|i| b.map().vertex(2 * i)).collect();
        let pairs: Vec<(usize, usize)> = g
            .chords
            .iter()
            .map(|c| (b.map().vertex(c.plus), b.map().vertex(c.minus)))
            .collect();
        assert!(pairs.contains(&(north[1], north[5])));
        assert!(pairs.contains(&(north[2], north[4])));
        let mut paths: Vec<Vec<usize>> = g
            .paths
            .iter()
            .map(|p| {
                let mut p = p.clone();
                if p[0] > p[p.len() - 1] {
                    p.reverse();
                }
                p
            })
            .collect();
        paths.sort();
        let mut want = vec![
            vec![north[1], north[5], north[3]],
            vec![north[0], north[2], north[4]],
        ];
        for w in &mut want {
            if w[0] > w[2] {
                w.reverse();
            }
        }
        want.sort();
        assert_eq!(paths, want);
    }

    #[test]
    fn rational_chord_counts() {
        // every cycle vertex is on gamma, so each face carries p - 1 chords
        for (p, q, comps) in [(2, 1, 2), (3, 1, 1), (5, 2, 1), (4, 1, 2), (7, 3, 1)] {
            let b = make_rational_butterfly(p, q).unwrap();
            let g = gamma_graph(&b).unwrap();
            assert_eq!(g.chords.len(), 2 * (p as usize - 1), "{p}/{q}");
            assert_eq!(g.paths.len(), 2);
            assert_eq!(link_components(&b).unwrap(), comps, "{p}/{q}");
        }
    }

    #[test]
    fn tours_cover_every_chord_once() {
        let b = make_rational_butterfly(7, 2).unwrap();
        let g = gamma_graph(&b).unwrap();
        let mut hits = vec![0; g.chords.len()];
        for tour in trace_link(&b, &g) {
            for step in tour {
                if let LinkStep::Chord { chord, .. } = step {
                    hits[chord] += 1;
                }
            }
        }
        assert!(hits.iter().all(|&h| h == 1));
    }
}
