//! The m-butterfly data model.
//!
//! A [`ButterflyDiagram`] is a spherical [`PlanarMap`] together with one
//! trunk per face. A trunk is stored as its two anchor corners, which must
//! sit at antipodal positions of the face walk. The reflection of a face
//! fixes both anchors and pairs walk position `c + k` with `c - k`; the
//! transitive closure of these pairings over all faces gives the vertex
//! classes used throughout.

mod classify;
mod gamma;
mod iso;
mod rational;

pub use classify::{classify_vertices, VertexClasses, VertexKind};
pub use gamma::{gamma_graph, link_components, trace_link, Chord, GammaGraph, LinkStep};
pub use iso::{butterfly_isomorphic, butterfly_isomorphism, Orientation};
pub use rational::make_rational_butterfly;

use thiserror::Error;

use crate::planar_map::{Dart, MapError, PlanarMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ButterflyError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("{faces} faces but {trunks} trunks")]
    FaceTrunkMismatch { faces: usize, trunks: usize },
    #[error("trunk {0} has anchors on different faces")]
    SplitTrunk(usize),
    #[error("face {0} carries more than one trunk")]
    SharedFace(usize),
    #[error("trunk anchors on face {face} are not antipodal")]
    AnchorNotAntipodal { face: usize },
    #[error("trunk on face {face} has coinciding anchors")]
    ClosedTrunk { face: usize },
    #[error("A- or E-vertex {0} is not bivalent")]
    NonBivalentAE(usize),
    #[error("vertex {0} is neither an A-, E- nor B-vertex")]
    UnclassifiableVertex(usize),
    #[error("vertex class of {vertex} holds {count} A-vertices instead of 2")]
    ClassAnchorCount { vertex: usize, count: usize },
    #[error("gamma graph is not a disjoint union of paths bounded by A-vertices")]
    GammaNotPaths,
    #[error("rational butterfly needs p >= 2 and 1 <= q < p (got {p}/{q})")]
    BadParameters { p: i64, q: i64 },
}

/// A trunk given by its two anchor corners. `c` is the reference end: walk
/// positions of the face are counted from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trunk {
    pub c: Dart,
    pub d: Dart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ButterflyDiagram {
    map: PlanarMap,
    trunks: Vec<Trunk>,
    trunk_of_face: Vec<usize>,
    anchor_of: Vec<Option<usize>>,
    classes: VertexClasses,
}

impl ButterflyDiagram {
    /// Checks the face/trunk structure. Vertex classification is computed
    /// and cached but not enforced: intermediate diagrams produced by moves
    /// may carry plain vertices until they are smoothed.
    pub fn new(map: PlanarMap, trunks: Vec<Trunk>) -> Result<Self, ButterflyError> {
        if map.face_count() != trunks.len() {
            return Err(ButterflyError::FaceTrunkMismatch {
                faces: map.face_count(),
                trunks: trunks.len(),
            });
        }
        let n = map.num_darts();
        let mut trunk_of_face = vec![usize::MAX; map.face_count()];
        let mut anchor_of = vec![None; n];
        for (i, t) in trunks.iter().enumerate() {
            if t.c >= n {
                return Err(MapError::NoSuchDart(t.c).into());
            }
            if t.d >= n {
                return Err(MapError::NoSuchDart(t.d).into());
            }
            let face = map.face(t.c);
            if map.face(t.d) != face {
                return Err(ButterflyError::SplitTrunk(i));
            }
            if trunk_of_face[face] != usize::MAX {
                return Err(ButterflyError::SharedFace(face));
            }
            if t.c == t.d {
                return Err(ButterflyError::ClosedTrunk { face });
            }
            let len = map.face_darts(face).len();
            let diff = (map.face_position(t.d) + len - map.face_position(t.c)) % len;
            if !len.is_multiple_of(2) || diff != len / 2 {
                return Err(ButterflyError::AnchorNotAntipodal { face });
            }
            trunk_of_face[face] = i;
            anchor_of[t.c] = Some(i);
            anchor_of[t.d] = Some(i);
        }
        let classes = VertexClasses::compute(&map, &trunks);
        Ok(Self {
            map,
            trunks,
            trunk_of_face,
            anchor_of,
            classes,
        })
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn trunks(&self) -> &[Trunk] {
        &self.trunks
    }

    /// Number of trunks (and faces).
    pub fn m(&self) -> usize {
        self.trunks.len()
    }

    pub fn trunk(&self, t: usize) -> Trunk {
        self.trunks[t]
    }

    pub fn trunk_of_face(&self, face: usize) -> usize {
        self.trunk_of_face[face]
    }

    /// Trunk anchored at corner `d`, if any.
    pub fn anchor_trunk(&self, d: Dart) -> Option<usize> {
        self.anchor_of[d]
    }

    pub fn is_anchor(&self, d: Dart) -> bool {
        self.anchor_of[d].is_some()
    }

    pub fn classes(&self) -> &VertexClasses {
        &self.classes
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.classes.kind(v)
    }

    /// Half the walk length of the face at corner `d`.
    pub fn half_len(&self, face: usize) -> usize {
        self.map.face_darts(face).len() / 2
    }

    /// Face walk of trunk `t`, starting at its `c` anchor.
    pub fn trunk_walk(&self, t: usize) -> Vec<Dart> {
        self.map.walk_from(self.trunks[t].c)
    }

    /// Position of corner `d` counted from its face's `c` anchor.
    pub fn slot(&self, d: Dart) -> usize {
        let face = self.map.face(d);
        let c = self.trunks[self.trunk_of_face[face]].c;
        let len = self.map.face_darts(face).len();
        (self.map.face_position(d) + len - self.map.face_position(c)) % len
    }

    /// The corner paired with `d` by its face's reflection.
    pub fn mirror(&self, d: Dart) -> Dart {
        mirror_corner(&self.map, self.trunks[self.trunk_of_face[self.map.face(d)]].c, d)
    }

    /// Count of (A, E, B, plain) vertices.
    pub fn census(&self) -> [usize; 4] {
        let mut out = [0; 4];
        for v in 0..self.map.vertex_count() {
            out[self.kind(v) as usize] += 1;
        }
        out
    }

    /// Number of chords of the gamma graph, i.e. crossings of the derived diagram.
    pub fn chord_count(&self) -> usize {
        let occupied = (0..self.map.num_darts())
            .filter(|&d| !self.is_anchor(d) && self.kind(self.map.vertex(d)).on_gamma())
            .count();
        occupied / 2
    }

    /// Smooths every bivalent vertex that is neither A, E nor B. Such vertices
    /// come in whole classes, so removing all of them keeps anchors antipodal.
    pub fn smooth_plain_vertices(&self) -> Result<ButterflyDiagram, ButterflyError> {
        let mut map = self.map.clone();
        let mut trunks = self.trunks.clone();
        let mut kinds: Vec<VertexKind> =
            (0..map.vertex_count()).map(|v| self.kind(v)).collect();
        loop {
            let target = (0..map.vertex_count()).find(|&v| {
                kinds[v] == VertexKind::Plain
                    && map.degree(v) == 2
                    && map.alpha(map.vertex_darts(v)[0]) != map.vertex_darts(v)[1]
            });
            let Some(v) = target else { break };
            let (next, mapping) = map.smooth_bivalent_mapped(v)?;
            let mut next_kinds = vec![VertexKind::Plain; next.vertex_count()];
            for (old, new) in mapping.iter().enumerate() {
                if let Some(new) = new {
                    next_kinds[next.vertex(*new)] = kinds[map.vertex(old)];
                }
            }
            for t in &mut trunks {
                t.c = mapping[t.c].expect("anchor on smoothed vertex");
                t.d = mapping[t.d].expect("anchor on smoothed vertex");
            }
            map = next;
            kinds = next_kinds;
        }
        ButterflyDiagram::new(map, trunks)
    }

    /// Smooths a single plain bivalent vertex; A- and E-vertices are protected.
    /// Only meaningful as part of smoothing a whole plain class.
    pub fn smooth_bivalent(&self, v: usize) -> Result<(PlanarMap, Vec<Trunk>), SmoothError> {
        match self.kind(v) {
            VertexKind::A | VertexKind::E => return Err(SmoothError::ProtectedVertex(v)),
            _ => {}
        }
        let (map, mapping) = self.map.smooth_bivalent_mapped(v)?;
        let trunks = self
            .trunks
            .iter()
            .map(|t| Trunk {
                c: mapping[t.c].expect("anchors sit on A-vertices"),
                d: mapping[t.d].expect("anchors sit on A-vertices"),
            })
            .collect();
        Ok((map, trunks))
    }

    /// Applies a dart relabelling (e.g. for tests of relabelling invariance).
    pub fn relabel(&self, perm: &[Dart]) -> Result<ButterflyDiagram, ButterflyError> {
        let n = self.map.num_darts();
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        for d in 0..n {
            alpha[perm[d]] = perm[self.map.alpha(d)];
            sigma[perm[d]] = perm[self.map.sigma(d)];
        }
        let trunks = self
            .trunks
            .iter()
            .map(|t| Trunk {
                c: perm[t.c],
                d: perm[t.d],
            })
            .collect();
        ButterflyDiagram::new(PlanarMap::new(alpha, sigma)?, trunks)
    }

    /// Raw parts: `(alpha, sigma, anchors)`.
    pub fn to_parts(&self) -> (Vec<Dart>, Vec<Dart>, Vec<(Dart, Dart)>) {
        (
            self.map.alpha_vec().to_vec(),
            self.map.sigma_vec().to_vec(),
            self.trunks.iter().map(|t| (t.c, t.d)).collect(),
        )
    }

    pub fn from_parts(
        alpha: Vec<Dart>,
        sigma: Vec<Dart>,
        anchors: &[(Dart, Dart)],
    ) -> Result<Self, ButterflyError> {
        let map = PlanarMap::new(alpha, sigma)?;
        let trunks = anchors.iter().map(|&(c, d)| Trunk { c, d }).collect();
        ButterflyDiagram::new(map, trunks)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmoothError {
    #[error("vertex {0} is an A- or E-vertex")]
    ProtectedVertex(usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

pub(crate) fn mirror_corner(map: &PlanarMap, anchor: Dart, d: Dart) -> Dart {
    let face = map.face(d);
    let walk = map.face_darts(face);
    let len = walk.len();
    let c = map.face_position(anchor);
    let p = map.face_position(d);
    walk[(2 * c + 2 * len - p) % len]
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::planar_map::fixtures::path;

    /// The one-face path tree B1-A1-B2-A2-B3 with its trunk from A1 to A2.
    pub fn unknot_path() -> ButterflyDiagram {
        let map = path(4);
        let walk = map.walk_from(0);
        ButterflyDiagram::new(map, vec![Trunk { c: walk[1], d: walk[5] }]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::unknot_path;
    use super::*;

    #[test]
    fn rejects_off_antipode_anchor() {
        let b = make_rational_butterfly(3, 1).unwrap();
        let (alpha, sigma, mut anchors) = b.to_parts();
        let south = anchors[1].1;
        anchors[1].1 = b.map().phi(south);
        let err = ButterflyDiagram::from_parts(alpha, sigma, &anchors).unwrap_err();
        assert!(matches!(err, ButterflyError::AnchorNotAntipodal { .. }));
    }

    #[test]
    fn mirror_is_an_involution_fixing_anchors() {
        for b in [make_rational_butterfly(5, 2).unwrap(), unknot_path()] {
            let mut fixed = 0;
            for d in 0..b.map().num_darts() {
                assert_eq!(b.mirror(b.mirror(d)), d);
                if b.mirror(d) == d {
                    fixed += 1;
                    assert!(b.is_anchor(d));
                }
            }
            assert_eq!(fixed, 2 * b.m());
        }
    }

    #[test]
    fn protected_vertices_are_not_smoothed() {
        let b = make_rational_butterfly(3, 1).unwrap();
        let v = b.map().vertex(b.trunk(0).c);
        assert_eq!(b.smooth_bivalent(v).unwrap_err(), SmoothError::ProtectedVertex(v));
    }
}
