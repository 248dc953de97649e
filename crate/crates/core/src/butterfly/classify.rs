use super::{mirror_corner, ButterflyDiagram, ButterflyError, Trunk};
use crate::planar_map::PlanarMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    /// Trunk endpoint.
    A = 0,
    /// Non-anchor vertex identified with an A-vertex.
    E = 1,
    /// Class containing a non-bivalent vertex.
    B = 2,
    /// None of the above; must be smoothed away before the diagram is valid.
    Plain = 3,
}

impl VertexKind {
    /// A- and E-vertices carry the gamma graph.
    pub fn on_gamma(self) -> bool {
        matches!(self, VertexKind::A | VertexKind::E)
    }
}

/// Union-find closure of the per-face corner pairings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClasses {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    kinds: Vec<VertexKind>,
    anchor_corners: Vec<usize>,
    degrees: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl VertexClasses {
    pub(crate) fn compute(map: &PlanarMap, trunks: &[Trunk]) -> Self {
        let nv = map.vertex_count();
        let mut parent: Vec<usize> = (0..nv).collect();
        let mut anchor_corners = vec![0; nv];
        for t in trunks {
            anchor_corners[map.vertex(t.c)] += 1;
            anchor_corners[map.vertex(t.d)] += 1;
            for &d in map.face_darts(map.face(t.c)) {
                let (a, b) = (map.vertex(d), map.vertex(mirror_corner(map, t.c, d)));
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut class_index = vec![usize::MAX; nv];
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; nv];
        for (v, class) in class_of.iter_mut().enumerate() {
            let r = find(&mut parent, v);
            if class_index[r] == usize::MAX {
                class_index[r] = members.len();
                members.push(Vec::new());
            }
            *class = class_index[r];
            members[class_index[r]].push(v);
        }
        let degrees: Vec<usize> = (0..nv).map(|v| map.degree(v)).collect();
        let kinds = (0..nv)
            .map(|v| {
                let class = &members[class_of[v]];
                if anchor_corners[v] > 0 {
                    VertexKind::A
                } else if class.iter().any(|&w| anchor_corners[w] > 0) {
                    VertexKind::E
                } else if class.iter().any(|&w| degrees[w] != 2) {
                    VertexKind::B
                } else {
                    VertexKind::Plain
                }
            })
            .collect();
        Self {
            class_of,
            members,
            kinds,
            anchor_corners,
            degrees,
        }
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn class_count(&self) -> usize {
        self.members.len()
    }

    pub fn vertices_of(&self, kind: VertexKind) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&v| self.kinds[v] == kind).collect()
    }

    /// Every violation of the m-butterfly vertex conditions, in vertex order.
    pub fn problems(&self) -> Vec<ButterflyError> {
        let mut out = Vec::new();
        for v in 0..self.kinds.len() {
            match self.kinds[v] {
                VertexKind::A | VertexKind::E if self.degrees[v] != 2 => {
                    out.push(ButterflyError::NonBivalentAE(v))
                }
                VertexKind::Plain => out.push(ButterflyError::UnclassifiableVertex(v)),
                _ => {}
            }
        }
        for class in &self.members {
            let anchors: usize = class.iter().map(|&v| self.anchor_corners[v]).sum();
            let a_vertices = class.iter().filter(|&&v| self.kinds[v] == VertexKind::A).count();
            if anchors > 0 && (anchors != 2 || a_vertices != 2) {
                out.push(ButterflyError::ClassAnchorCount {
                    vertex: class[0],
                    count: anchors,
                });
            }
        }
        out
    }
}

/// Classifies vertices, failing on the first violation of the vertex conditions.
pub fn classify_vertices(b: &ButterflyDiagram) -> Result<VertexClasses, ButterflyError> {
    match b.classes().problems().into_iter().next() {
        Some(err) => Err(err),
        None => Ok(b.classes().clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::fixtures::unknot_path;
    use crate::butterfly::make_rational_butterfly;
    use crate::butterfly::ButterflyDiagram;

    fn vertex_at(b: &ButterflyDiagram, face_dart: usize, pos: usize) -> usize {
        let walk = b.map().walk_from(face_dart);
        b.map().vertex(walk[pos])
    }

    #[test]
    fn rational_three_one_classes() {
        let b = make_rational_butterfly(3, 1).unwrap();
        // north walk from v0 lists v0..v5
        let v: Vec<usize> = (0..6).map(|i| vertex_at(&b, b.trunk(0).c, i)).collect();
        let c = classify_vertices(&b).unwrap();
        let mut a = c.vertices_of(VertexKind::A);
        a.sort_unstable();
        let mut want_a = vec![v[0], v[1], v[3], v[4]];
        want_a.sort_unstable();
        assert_eq!(a, want_a);
        let mut e = c.vertices_of(VertexKind::E);
        e.sort_unstable();
        let mut want_e = vec![v[2], v[5]];
        want_e.sort_unstable();
        assert_eq!(e, want_e);
        assert_eq!(c.class_of(v[0]), c.class_of(v[2]));
        assert_eq!(c.class_of(v[0]), c.class_of(v[4]));
        assert_eq!(c.class_of(v[1]), c.class_of(v[3]));
        assert_eq!(c.class_of(v[1]), c.class_of(v[5]));
        assert_ne!(c.class_of(v[0]), c.class_of(v[1]));
    }

    #[test]
    fn unknot_path_classes() {
        let b = unknot_path();
        let c = classify_vertices(&b).unwrap();
        assert_eq!(c.class_count(), 2);
        assert_eq!(c.vertices_of(VertexKind::A).len(), 2);
        assert_eq!(c.vertices_of(VertexKind::B).len(), 3);
        assert!(c.vertices_of(VertexKind::E).is_empty());
    }

    #[test]
    fn classification_ignores_dart_order() {
        let b = make_rational_butterfly(7, 3).unwrap();
        let n = b.map().num_darts();
        let perm: Vec<usize> = (0..n).map(|d| (d * 5 + 3) % n).collect();
        let r = b.relabel(&perm).unwrap();
        assert_eq!(b.census(), r.census());
        assert_eq!(b.classes().class_count(), r.classes().class_count());
    }
}
