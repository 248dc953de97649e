//! Dart-based combinatorial maps on the sphere.
//!
//! A map is a pair of permutations on a dense set of darts (half-edges):
//! `alpha` pairs the two darts of every edge and `sigma` sends a dart to the
//! next dart counterclockwise around its origin vertex. Faces are the orbits
//! of `phi = sigma ∘ alpha`; with a counterclockwise `sigma` every face walk
//! runs clockwise around its face, keeping the face on the right.
//!
//! A dart also names a *corner*: the angle at its origin swept
//! counterclockwise from `sigma⁻¹(d)` to `d`. That corner belongs to the
//! face whose walk contains `d`, so walk positions and corners coincide.

use std::collections::VecDeque;

use thiserror::Error;

pub type Dart = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map has no darts")]
    Empty,
    #[error("alpha is not a fixed-point-free involution (dart {0})")]
    NotInvolution(Dart),
    #[error("sigma is not a permutation of the dart set")]
    NotPermutation,
    #[error("map is not connected")]
    NotConnected,
    #[error("map is not spherical: V - E + F = {v} - {e} + {f} != 2")]
    NotSphere { v: usize, e: usize, f: usize },
    #[error("vertex {0} is not bivalent")]
    NotBivalent(usize),
    #[error("vertex {0} carries a loop")]
    LoopAtVertex(usize),
    #[error("deleting the edge would disconnect the map")]
    Disconnects,
    #[error("corners do not lie on a common face")]
    CornersNotOnFace,
    #[error("edge of dart {0} has the same face on both sides")]
    SameSideEdge(Dart),
    #[error("dart {0} out of range")]
    NoSuchDart(Dart),
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
}

/// A face boundary as the phi-orbit of its darts, starting at the smallest dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub face: usize,
    pub darts: Vec<Dart>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    alpha: Vec<Dart>,
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    vertex_of: Vec<usize>,
    face_of: Vec<usize>,
    face_pos: Vec<usize>,
    edge_of: Vec<usize>,
    vertices: Vec<Vec<Dart>>,
    faces: Vec<Vec<Dart>>,
}

fn orbits(n: usize, step: impl Fn(Dart) -> Dart) -> (Vec<usize>, Vec<usize>, Vec<Vec<Dart>>) {
    let mut of = vec![usize::MAX; n];
    let mut pos = vec![0; n];
    let mut all = Vec::new();
    for start in 0..n {
        if of[start] != usize::MAX {
            continue;
        }
        let id = all.len();
        let mut orbit = Vec::new();
        let mut d = start;
        loop {
            of[d] = id;
            pos[d] = orbit.len();
            orbit.push(d);
            d = step(d);
            if d == start {
                break;
            }
        }
        all.push(orbit);
    }
    (of, pos, all)
}

impl PlanarMap {
    pub fn new(alpha: Vec<Dart>, sigma: Vec<Dart>) -> Result<Self, MapError> {
        let n = alpha.len();
        if n == 0 {
            return Err(MapError::Empty);
        }
        if sigma.len() != n {
            return Err(MapError::NotPermutation);
        }
        for (d, &a) in alpha.iter().enumerate() {
            if a >= n || a == d || alpha[a] != d {
                return Err(MapError::NotInvolution(d));
            }
        }
        let mut sigma_inv = vec![usize::MAX; n];
        for (d, &s) in sigma.iter().enumerate() {
            if s >= n || sigma_inv[s] != usize::MAX {
                return Err(MapError::NotPermutation);
            }
            sigma_inv[s] = d;
        }

        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(d) = queue.pop_front() {
            for e in [alpha[d], sigma[d], sigma_inv[d]] {
                if !seen[e] {
                    seen[e] = true;
                    reached += 1;
                    queue.push_back(e);
                }
            }
        }
        if reached != n {
            return Err(MapError::NotConnected);
        }

        let (vertex_of, _, vertices) = orbits(n, |d| sigma[d]);
        let (face_of, face_pos, faces) = orbits(n, |d| sigma[alpha[d]]);
        let (v, e, f) = (vertices.len(), n / 2, faces.len());
        if v + f != e + 2 {
            return Err(MapError::NotSphere { v, e, f });
        }
        let mut edge_of = vec![0; n];
        let mut next_edge = 0;
        for d in 0..n {
            if d < alpha[d] {
                edge_of[d] = next_edge;
                edge_of[alpha[d]] = next_edge;
                next_edge += 1;
            }
        }
        Ok(Self {
            alpha,
            sigma,
            sigma_inv,
            vertex_of,
            face_of,
            face_pos,
            edge_of,
            vertices,
            faces,
        })
    }

    /// Builds a map from its edge pairing and face permutation (`sigma = phi ∘ alpha`).
    pub fn from_faces(alpha: Vec<Dart>, phi: Vec<Dart>) -> Result<Self, MapError> {
        if phi.len() != alpha.len() || alpha.iter().any(|&a| a >= phi.len()) {
            return Err(MapError::NotPermutation);
        }
        let sigma = alpha.iter().map(|&a| phi[a]).collect();
        Self::new(alpha, sigma)
    }

    pub fn num_darts(&self) -> usize {
        self.alpha.len()
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d]
    }
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.alpha[d]]
    }
    pub fn phi_inv(&self, d: Dart) -> Dart {
        self.alpha[self.sigma_inv[d]]
    }

    /// Origin vertex of a dart.
    pub fn vertex(&self, d: Dart) -> usize {
        self.vertex_of[d]
    }
    /// Vertex at the far end of a dart.
    pub fn head(&self, d: Dart) -> usize {
        self.vertex_of[self.alpha[d]]
    }
    pub fn face(&self, d: Dart) -> usize {
        self.face_of[d]
    }
    /// Index of `d` within its face walk.
    pub fn face_position(&self, d: Dart) -> usize {
        self.face_pos[d]
    }
    pub fn edge(&self, d: Dart) -> usize {
        self.edge_of[d]
    }

    pub fn vertex_darts(&self, v: usize) -> &[Dart] {
        &self.vertices[v]
    }
    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].len()
    }
    pub fn face_darts(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }

    pub fn faces(&self) -> Vec<FaceWalk> {
        self.faces
            .iter()
            .enumerate()
            .map(|(face, darts)| FaceWalk {
                face,
                darts: darts.clone(),
            })
            .collect()
    }

    /// Face walk of `d`'s face, rotated to start at `d`.
    pub fn walk_from(&self, d: Dart) -> Vec<Dart> {
        let face = &self.faces[self.face_of[d]];
        let p = self.face_pos[d];
        face[p..].iter().chain(&face[..p]).copied().collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub(crate) fn alpha_vec(&self) -> &[Dart] {
        &self.alpha
    }
    pub(crate) fn sigma_vec(&self) -> &[Dart] {
        &self.sigma
    }

    /// Removes the given darts (which must form whole edges) and compacts the
    /// remaining ones in index order. Returns the new map and the old-to-new map.
    pub(crate) fn remove_darts(
        &self,
        removed: &[bool],
    ) -> Result<(PlanarMap, Vec<Option<Dart>>), MapError> {
        let mut sigma = self.sigma.clone();
        let mut sigma_inv = self.sigma_inv.clone();
        for d in 0..self.num_darts() {
            if removed[d] {
                let (p, n) = (sigma_inv[d], sigma[d]);
                sigma[p] = n;
                sigma_inv[n] = p;
                sigma[d] = d;
                sigma_inv[d] = d;
            }
        }
        compact(&self.alpha, &sigma, removed)
    }

    pub fn delete_edge(&self, d: Dart) -> Result<PlanarMap, MapError> {
        self.delete_edge_mapped(d).map(|(m, _)| m)
    }

    pub(crate) fn delete_edge_mapped(
        &self,
        d: Dart,
    ) -> Result<(PlanarMap, Vec<Option<Dart>>), MapError> {
        if d >= self.num_darts() {
            return Err(MapError::NoSuchDart(d));
        }
        if self.face(d) == self.face(self.alpha[d]) {
            return Err(MapError::SameSideEdge(d));
        }
        let mut removed = vec![false; self.num_darts()];
        removed[d] = true;
        removed[self.alpha[d]] = true;
        self.remove_darts(&removed).map_err(|e| match e {
            MapError::NotConnected | MapError::Empty => MapError::Disconnects,
            other => other,
        })
    }

    /// Adds an edge across a face joining the origins of corners `c1` and `c2`.
    /// The new darts are the two highest indices: `n` leaves `c1`'s vertex and
    /// `n + 1` leaves `c2`'s vertex.
    pub fn add_edge_in_face(&self, c1: Dart, c2: Dart) -> Result<PlanarMap, MapError> {
        let n = self.num_darts();
        if c1 >= n {
            return Err(MapError::NoSuchDart(c1));
        }
        if c2 >= n {
            return Err(MapError::NoSuchDart(c2));
        }
        if self.face(c1) != self.face(c2) {
            return Err(MapError::CornersNotOnFace);
        }
        let mut alpha = self.alpha.clone();
        alpha.extend([n + 1, n]);
        let mut sigma = self.sigma.clone();
        sigma.extend([n, n + 1]);
        let mut sigma_inv = self.sigma_inv.clone();
        sigma_inv.extend([n, n + 1]);
        for (new, corner) in [(n, c1), (n + 1, c2)] {
            let p = sigma_inv[corner];
            sigma[p] = new;
            sigma_inv[new] = p;
            sigma[new] = corner;
            sigma_inv[corner] = new;
        }
        PlanarMap::new(alpha, sigma)
    }

    /// Merges the two edges at a bivalent vertex into one.
    pub fn smooth_bivalent(&self, v: usize) -> Result<PlanarMap, MapError> {
        self.smooth_bivalent_mapped(v).map(|(m, _)| m)
    }

    pub(crate) fn smooth_bivalent_mapped(
        &self,
        v: usize,
    ) -> Result<(PlanarMap, Vec<Option<Dart>>), MapError> {
        if v >= self.vertex_count() {
            return Err(MapError::NoSuchVertex(v));
        }
        let darts = &self.vertices[v];
        if darts.len() != 2 {
            return Err(MapError::NotBivalent(v));
        }
        let (x, y) = (darts[0], darts[1]);
        if self.alpha[x] == y {
            return Err(MapError::LoopAtVertex(v));
        }
        let (xo, yo) = (self.alpha[x], self.alpha[y]);
        let mut alpha = self.alpha.clone();
        alpha[xo] = yo;
        alpha[yo] = xo;
        alpha[x] = y;
        alpha[y] = x;
        let mut removed = vec![false; self.num_darts()];
        removed[x] = true;
        removed[y] = true;
        compact(&alpha, &self.sigma, &removed)
    }

    /// Searches for a dart bijection onto `other` commuting with alpha and with
    /// sigma (or sigma⁻¹ when `reversed`), accepting a candidate only if
    /// `accept` holds for the full mapping.
    pub fn find_isomorphism(
        &self,
        other: &PlanarMap,
        reversed: bool,
        mut accept: impl FnMut(&[Dart]) -> bool,
    ) -> Option<Vec<Dart>> {
        let n = self.num_darts();
        if n != other.num_darts()
            || self.vertex_count() != other.vertex_count()
            || self.face_count() != other.face_count()
        {
            return None;
        }
        let mut degrees_a: Vec<usize> = self.vertices.iter().map(Vec::len).collect();
        let mut degrees_b: Vec<usize> = other.vertices.iter().map(Vec::len).collect();
        degrees_a.sort_unstable();
        degrees_b.sort_unstable();
        if degrees_a != degrees_b {
            return None;
        }
        'candidates: for target in 0..n {
            if self.degree(self.vertex(0)) != other.degree(other.vertex(target)) {
                continue;
            }
            let mut map = vec![usize::MAX; n];
            let mut used = vec![false; n];
            map[0] = target;
            used[target] = true;
            let mut queue = VecDeque::from([0]);
            while let Some(d) = queue.pop_front() {
                let img = map[d];
                let pairs = [
                    (self.alpha[d], other.alpha[img]),
                    (
                        self.sigma[d],
                        if reversed {
                            other.sigma_inv[img]
                        } else {
                            other.sigma[img]
                        },
                    ),
                ];
                for (a, b) in pairs {
                    if map[a] == usize::MAX {
                        if used[b] {
                            continue 'candidates;
                        }
                        map[a] = b;
                        used[b] = true;
                        queue.push_back(a);
                    } else if map[a] != b {
                        continue 'candidates;
                    }
                }
            }
            if accept(&map) {
                return Some(map);
            }
        }
        None
    }

    pub fn is_isomorphic(&self, other: &PlanarMap) -> bool {
        self.find_isomorphism(other, false, |_| true).is_some()
    }
}

fn compact(
    alpha: &[Dart],
    sigma: &[Dart],
    removed: &[bool],
) -> Result<(PlanarMap, Vec<Option<Dart>>), MapError> {
    let mut mapping = vec![None; alpha.len()];
    let mut next = 0;
    for (d, slot) in mapping.iter_mut().enumerate() {
        if !removed[d] {
            *slot = Some(next);
            next += 1;
        }
    }
    let relabel = |d: Dart| mapping[d].expect("kept dart points at a removed dart");
    let mut new_alpha = Vec::with_capacity(next);
    let mut new_sigma = Vec::with_capacity(next);
    for d in (0..alpha.len()).filter(|&d| !removed[d]) {
        new_alpha.push(relabel(alpha[d]));
        new_sigma.push(relabel(sigma[d]));
    }
    let map = PlanarMap::new(new_alpha, new_sigma)?;
    Ok((map, mapping))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Path with vertices 0..=k, edge i joining i and i+1 (darts 2i forward, 2i+1 back).
    pub fn path(k: usize) -> PlanarMap {
        let n = 2 * k;
        let alpha = (0..n).map(|d| d ^ 1).collect();
        let mut sigma = vec![0; n];
        for v in 0..=k {
            let mut at: Vec<Dart> = Vec::new();
            if v < k {
                at.push(2 * v);
            }
            if v > 0 {
                at.push(2 * (v - 1) + 1);
            }
            for i in 0..at.len() {
                sigma[at[i]] = at[(i + 1) % at.len()];
            }
        }
        PlanarMap::new(alpha, sigma).unwrap()
    }

    /// Cycle on k vertices, edge i joining i and i+1 mod k.
    pub fn cycle(k: usize) -> PlanarMap {
        let n = 2 * k;
        let alpha = (0..n).map(|d| d ^ 1).collect();
        let mut sigma = vec![0; n];
        for v in 0..k {
            let fwd = 2 * v;
            let back = 2 * ((v + k - 1) % k) + 1;
            sigma[fwd] = back;
            sigma[back] = fwd;
        }
        PlanarMap::new(alpha, sigma).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn single_edge() {
        let m = PlanarMap::new(vec![1, 0], vec![0, 1]).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (2, 1, 1));
        assert_eq!(m.faces()[0].len(), 2);
    }

    #[test]
    fn path_tree_walk() {
        let m = path(4);
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (5, 4, 1));
        let walk = m.walk_from(0);
        let verts: Vec<usize> = walk.iter().map(|&d| m.vertex(d)).collect();
        let v = |i: usize| m.vertex(2 * i.min(3) + usize::from(i == 4));
        assert_eq!(verts.len(), 8);
        assert_eq!(verts, vec![v(0), v(1), v(2), v(3), v(4), v(3), v(2), v(1)]);
    }

    #[test]
    fn torus_is_rejected() {
        // one face a b a' b'
        let alpha = vec![1, 0, 3, 2];
        let phi = vec![2, 3, 1, 0];
        assert_eq!(
            PlanarMap::from_faces(alpha, phi),
            Err(MapError::NotSphere { v: 1, e: 2, f: 1 })
        );
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(PlanarMap::new(vec![0, 1], vec![0, 1]), Err(MapError::NotInvolution(0)));
        assert_eq!(PlanarMap::new(vec![1, 0], vec![0, 0]), Err(MapError::NotPermutation));
        // two disjoint edges
        assert_eq!(
            PlanarMap::new(vec![1, 0, 3, 2], vec![0, 1, 2, 3]),
            Err(MapError::NotConnected)
        );
    }

    #[test]
    fn hexagon_faces() {
        let m = cycle(6);
        let faces = m.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 6));
    }

    #[test]
    fn delete_cycle_edge_and_restore() {
        let m = cycle(6);
        let s0 = m.sigma(0);
        let s1 = m.sigma(1);
        let (cut, mapping) = m.delete_edge_mapped(0).unwrap();
        assert_eq!(cut.face_count(), 1);
        assert_eq!(cut.euler_characteristic(), 2);
        let back = cut
            .add_edge_in_face(mapping[s0].unwrap(), mapping[s1].unwrap())
            .unwrap();
        assert!(back.is_isomorphic(&m));
    }

    #[test]
    fn tree_edge_is_same_side() {
        assert_eq!(path(2).delete_edge(0), Err(MapError::SameSideEdge(0)));
    }

    #[test]
    fn chord_splits_hexagon() {
        let m = cycle(6);
        let f = m.face(0);
        let walk = m.walk_from(0);
        assert_eq!(m.face(walk[3]), f);
        let split = m.add_edge_in_face(walk[0], walk[3]).unwrap();
        let mut lens: Vec<usize> = split.faces().iter().map(FaceWalk::len).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![4, 4, 6]);
        assert_eq!(
            m.add_edge_in_face(0, 1),
            Err(MapError::CornersNotOnFace)
        );
    }

    #[test]
    fn smoothing_path_vertex() {
        let m = path(2);
        let mid = m.vertex(2);
        let s = m.smooth_bivalent(mid).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count(), s.face_count()), (2, 1, 1));
        assert_eq!(m.smooth_bivalent(m.vertex(0)), Err(MapError::NotBivalent(m.vertex(0))));
        let loop_map = PlanarMap::new(vec![1, 0], vec![1, 0]).unwrap();
        assert_eq!(loop_map.smooth_bivalent(0), Err(MapError::LoopAtVertex(0)));
    }

    #[test]
    fn relabelled_maps_are_isomorphic() {
        let m = cycle(5);
        // swap the roles of darts by reversing edge direction labels
        let n = m.num_darts();
        let perm: Vec<Dart> = (0..n).map(|d| (d + 4) % n).collect();
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        for d in 0..n {
            alpha[perm[d]] = perm[m.alpha(d)];
            sigma[perm[d]] = perm[m.sigma(d)];
        }
        let r = PlanarMap::new(alpha, sigma).unwrap();
        assert!(m.is_isomorphic(&r));
        assert!(!m.is_isomorphic(&path(5)));
    }
}
