//! Butterfly diagrams to bridge diagrams and back.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::butterfly::{gamma_graph, trace_link, ButterflyDiagram, ButterflyError, LinkStep, Trunk};
use crate::link::{LinkDiagram, LinkError};
use crate::planar_map::{MapError, PlanarMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error(transparent)]
    Butterfly(#[from] ButterflyError),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("diagram has a crossing-free component")]
    HasClosedCurve,
    #[error("diagram is not connected")]
    Disconnected,
    #[error("component {0} never passes under")]
    ComponentWithoutUnderpass(usize),
    #[error("component {0} has no overarc")]
    ComponentWithoutBridge(usize),
}

/// A link diagram read off a butterfly: trunks become bridges passing over
/// everything, gamma paths become the underarcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgePresentation {
    pub link: LinkDiagram,
    pub bridges: usize,
    pub underarcs: usize,
    /// Trunks whose faces carry no chord; such bridges pass over nothing.
    pub degenerate: Vec<usize>,
}

impl BridgePresentation {
    pub fn is_degenerate(&self) -> bool {
        !self.degenerate.is_empty()
    }
}

// Crossing of chord k with its face's trunk, seen with the c anchor to the
// west: slot 0 runs to corner c+k, 1 towards c, 2 to corner c-k, 3 towards d.
const TO_PLUS: usize = 0;
const TO_C: usize = 1;
const TO_MINUS: usize = 2;
const TO_D: usize = 3;

pub fn butterfly_to_link(b: &ButterflyDiagram) -> Result<BridgePresentation, ConvertError> {
    let g = gamma_graph(b)?;
    let tours = trace_link(b, &g);
    let mut by_trunk: Vec<Vec<usize>> = vec![Vec::new(); b.m()];
    for (i, ch) in g.chords.iter().enumerate() {
        by_trunk[ch.trunk].push(i);
    }
    for list in &mut by_trunk {
        list.sort_by_key(|&i| g.chords[i].slot);
    }

    // passages as (crossing, entry slot, exit slot)
    let mut slots = vec![[0i64; 4]; g.chords.len()];
    let mut under_entry = vec![TO_PLUS; g.chords.len()];
    let mut label = 0i64;
    for tour in &tours {
        let mut passages: Vec<(usize, usize, usize)> = Vec::new();
        for step in tour {
            match *step {
                LinkStep::Trunk { trunk, forward } => {
                    let list = &by_trunk[trunk];
                    if forward {
                        passages.extend(list.iter().map(|&x| (x, TO_C, TO_D)));
                    } else {
                        passages.extend(list.iter().rev().map(|&x| (x, TO_D, TO_C)));
                    }
                }
                LinkStep::Chord { chord, from, .. } => {
                    if from == g.chords[chord].plus {
                        passages.push((chord, TO_PLUS, TO_MINUS));
                    } else {
                        under_entry[chord] = TO_MINUS;
                        passages.push((chord, TO_MINUS, TO_PLUS));
                    }
                }
            }
        }
        for i in 0..passages.len() {
            let (x, _, out) = passages[i];
            let (y, entry, _) = passages[(i + 1) % passages.len()];
            slots[x][out] = label;
            slots[y][entry] = label;
            label += 1;
        }
    }
    let tuples: Vec<[i64; 4]> = slots
        .iter()
        .zip(&under_entry)
        .map(|(t, &e)| [t[e], t[(e + 1) % 4], t[(e + 2) % 4], t[(e + 3) % 4]])
        .collect();
    let link = LinkDiagram::from_pd(&tuples, 0)?;
    Ok(BridgePresentation {
        link,
        bridges: b.m(),
        underarcs: g.paths.len(),
        degenerate: (0..b.m()).filter(|&t| by_trunk[t].is_empty()).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcKind {
    Overarc,
    Simple,
}

/// A maximal strand run between two under-passages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub component: usize,
    /// Crossing whose under-strand the arc leaves.
    pub start: usize,
    /// Crossing whose under-strand the arc enters.
    pub end: usize,
    pub segments: Vec<usize>,
    /// Crossings passed over, in order.
    pub over: Vec<usize>,
}

impl Arc {
    pub fn kind(&self) -> ArcKind {
        if self.over.is_empty() {
            ArcKind::Simple
        } else {
            ArcKind::Overarc
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeDiagram {
    pub link: LinkDiagram,
    pub arcs: Vec<Arc>,
}

impl BridgeDiagram {
    pub fn overarcs(&self) -> usize {
        self.arcs.iter().filter(|a| a.kind() == ArcKind::Overarc).count()
    }

    pub fn simple_arcs(&self) -> usize {
        self.arcs.len() - self.overarcs()
    }
}

/// Cuts every component at its under-passages.
pub fn bridge_decompose(d: &LinkDiagram) -> Result<BridgeDiagram, ConvertError> {
    if d.loops() > 0 {
        return Err(ConvertError::HasClosedCurve);
    }
    if !d.is_connected() {
        return Err(ConvertError::Disconnected);
    }
    let mut arcs = Vec::new();
    for (k, range) in d.components().iter().enumerate() {
        let segs: Vec<usize> = range.clone().collect();
        // first segment leaving an under-passage
        let Some(first) = segs.iter().position(|&s| d.tail(s).1 == 2) else {
            return Err(ConvertError::ComponentWithoutUnderpass(k));
        };
        let before = arcs.len();
        let mut current: Option<Arc> = None;
        for i in 0..segs.len() {
            let s = segs[(first + i) % segs.len()];
            let (tx, ts) = d.tail(s);
            let arc = current.get_or_insert_with(|| Arc {
                component: k,
                start: tx,
                end: tx,
                segments: Vec::new(),
                over: Vec::new(),
            });
            if ts != 2 {
                arc.over.push(tx);
            }
            arc.segments.push(s);
            let (hx, hs) = d.head(s);
            if hs == 0 {
                let mut done = current.take().expect("arc in progress");
                done.end = hx;
                arcs.push(done);
            }
        }
        if arcs[before..].iter().all(|a| a.kind() == ArcKind::Simple) {
            return Err(ConvertError::ComponentWithoutBridge(k));
        }
    }
    Ok(BridgeDiagram {
        link: d.clone(),
        arcs,
    })
}

/// Makes a diagram connected and gives every component both an under- and
/// an over-passage, by positive kinks and by type-II moves between pieces.
pub fn preprocess_diagram(d: &LinkDiagram) -> LinkDiagram {
    let mut tuples = d.to_pd();
    let mut next = d.num_segments() as i64;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    for range in d.components() {
        let unders = range.clone().any(|s| d.tail(s).1 == 2);
        let overs = range.clone().any(|s| d.tail(s).1 % 2 == 1);
        if unders && overs {
            continue;
        }
        // curl at the end of the component's first segment
        let s = range.start;
        let (hx, hs) = d.head(s);
        let (after, curl) = (fresh(), fresh());
        tuples[hx][hs] = after;
        tuples.push([s as i64, after, curl, curl]);
    }
    for _ in 0..d.loops() {
        let (o, l) = (fresh(), fresh());
        tuples.push([o, o, l, l]);
    }
    let mut link = LinkDiagram::from_pd(&tuples, 0).expect("kinks keep the diagram planar");
    loop {
        let pieces = link.pieces();
        if pieces.len() <= 1 {
            return link;
        }
        // slide the first under-strand of piece 1 beneath one of piece 0
        let mut tuples = link.to_pd();
        let next = link.num_segments() as i64;
        let s1 = link.crossings()[pieces[0][0]][0];
        let s2 = link.crossings()[pieces[1][0]][0];
        let (h1, h1s) = link.head(s1);
        let (h2, h2s) = link.head(s2);
        let (s1b, s1c, s2b, s2c) = (next, next + 1, next + 2, next + 3);
        tuples[h1][h1s] = s1c;
        tuples[h2][h2s] = s2c;
        tuples.push([s2 as i64, s1b, s2b, s1 as i64]);
        tuples.push([s2b, s1b, s2c, s1c]);
        link = LinkDiagram::from_pd(&tuples, 0).expect("type-II join keeps the diagram planar");
    }
}

/// The butterfly of a bridge diagram: one trunk per arc, one B-vertex per
/// region, and two A-vertices per crossing at the ends of the cut under-strand.
pub fn link_to_butterfly(bd: &BridgeDiagram) -> Result<ButterflyDiagram, ConvertError> {
    let d = &bd.link;
    let lm = d.planar_map().ok_or(ConvertError::Disconnected)?;
    let n = d.num_crossings();
    // edge 4x+q joins the A-vertex of quadrant q at crossing x to the B-vertex
    // of the region holding that quadrant; its A side is dart 2e
    let a_side = |x: usize, q: usize| 2 * (4 * x + q);
    let b_side = |x: usize, q: usize| 2 * (4 * x + q) + 1;
    let nd = 32 * n / 4;
    let mut alpha = vec![0; nd];
    let mut sigma = vec![0; nd];
    for e in 0..nd / 2 {
        alpha[2 * e] = 2 * e + 1;
        alpha[2 * e + 1] = 2 * e;
    }
    for x in 0..n {
        for u in [0, 2] {
            let (p, q) = (a_side(x, u), a_side(x, (u + 3) % 4));
            sigma[p] = q;
            sigma[q] = p;
        }
    }
    for face in lm.faces() {
        // the region walk is clockwise; B-vertex rotation runs the other way
        let corners: Vec<usize> = face
            .darts
            .iter()
            .map(|&dart| b_side(dart / 4, (dart + 3) % 4))
            .collect();
        let k = corners.len();
        for i in 0..k {
            sigma[corners[i]] = corners[(i + k - 1) % k];
        }
    }
    let map = PlanarMap::new(alpha, sigma)?;
    let trunks = bd
        .arcs
        .iter()
        .map(|a| Trunk {
            c: a_side(a.start, 2),
            d: a_side(a.end, 0),
        })
        .collect();
    // regions bounded only by bivalent corners give plain vertices
    Ok(ButterflyDiagram::new(map, trunks)?.smooth_plain_vertices()?)
}
