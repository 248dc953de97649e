//! Oriented link diagrams as crossing lists.
//!
//! Each crossing is four segment ids listed counterclockwise, starting at the
//! incoming under-segment, so slot 2 is the outgoing under-segment and the
//! over-strand occupies slots 1 and 3. Segments are numbered consecutively
//! along each component. Crossing-free components are only counted.

use thiserror::Error;

use crate::planar_map::{MapError, PlanarMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("segment {0} has only one end")]
    DanglingSegment(i64),
    #[error("segment {0} is used more than twice")]
    SegmentReused(i64),
    #[error("crossing tuples do not embed in the sphere")]
    NonPlanarPD,
    #[error("component through crossing {0} is entered against its under-strand")]
    InconsistentOrientation(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[usize; 4]>,
    /// Slot (1 or 3) where the over-strand enters.
    over_in: Vec<u8>,
    /// Segment ranges per component with crossings.
    components: Vec<std::ops::Range<usize>>,
    component_of: Vec<usize>,
    /// Crossing and slot at the tail (start) and head (end) of each segment.
    tail: Vec<(usize, usize)>,
    head: Vec<(usize, usize)>,
    loops: usize,
}

impl LinkDiagram {
    /// The diagram of `loops` disjoint circles.
    pub fn unlink(loops: usize) -> Self {
        Self {
            crossings: Vec::new(),
            over_in: Vec::new(),
            components: Vec::new(),
            component_of: Vec::new(),
            tail: Vec::new(),
            head: Vec::new(),
            loops,
        }
    }

    /// Builds a diagram from PD tuples with arbitrary segment labels. The
    /// first entry of each tuple is the incoming under-segment; strands are
    /// traced to recover orientations and segments are renumbered.
    pub fn from_pd(tuples: &[[i64; 4]], loops: usize) -> Result<Self, LinkError> {
        use std::collections::HashMap;
        let mut ends: HashMap<i64, Vec<(usize, usize)>> = HashMap::new();
        for (x, t) in tuples.iter().enumerate() {
            for (s, &label) in t.iter().enumerate() {
                ends.entry(label).or_default().push((x, s));
            }
        }
        let mut labels: Vec<&i64> = ends.keys().collect();
        labels.sort();
        for &label in &labels {
            match ends[label].len() {
                2 => {}
                1 => return Err(LinkError::DanglingSegment(*label)),
                _ => return Err(LinkError::SegmentReused(*label)),
            }
        }
        let n = tuples.len();
        let across = |x: usize, s: usize| -> (usize, usize) {
            let e = &ends[&tuples[x][s]];
            if e[0] == (x, s) {
                e[1]
            } else {
                e[0]
            }
        };

        let mut crossings = vec![[usize::MAX; 4]; n];
        let mut over_in = vec![0u8; n];
        let mut entered = vec![[false; 4]; n];
        let mut components = Vec::new();
        let mut next_segment = 0;
        let mut starts: Vec<(usize, usize)> = (0..n).map(|x| (x, 0)).collect();
        // components that never pass under are oriented along increasing labels
        starts.extend((0..n).map(|x| {
            let t = tuples[x];
            if t[3] == t[1] + 1 || t[1] != t[3] + 1 {
                (x, 1)
            } else {
                (x, 3)
            }
        }));
        for (x0, s0) in starts {
            if entered[x0][s0] || entered[x0][(s0 + 2) % 4] {
                continue;
            }
            let first = next_segment;
            let (mut x, mut s) = (x0, s0);
            loop {
                entered[x][s] = true;
                match s {
                    0 => {}
                    2 => return Err(LinkError::InconsistentOrientation(x)),
                    _ => over_in[x] = s as u8,
                }
                let out = (s + 2) % 4;
                let (y, t) = across(x, out);
                crossings[x][out] = next_segment;
                crossings[y][t] = next_segment;
                next_segment += 1;
                (x, s) = (y, t);
                if (x, s) == (x0, s0) {
                    break;
                }
                if entered[x][s] || entered[x][(s + 2) % 4] {
                    return Err(LinkError::InconsistentOrientation(x));
                }
            }
            components.push(first..next_segment);
        }
        let d = Self::assemble(crossings, over_in, components, loops);
        d.check_planar()?;
        Ok(d)
    }

    fn assemble(
        crossings: Vec<[usize; 4]>,
        over_in: Vec<u8>,
        components: Vec<std::ops::Range<usize>>,
        loops: usize,
    ) -> Self {
        let segs = 2 * crossings.len();
        let mut tail = vec![(0, 0); segs];
        let mut head = vec![(0, 0); segs];
        for (x, t) in crossings.iter().enumerate() {
            let oi = over_in[x] as usize;
            for (s, &seg) in t.iter().enumerate() {
                if s == 0 || s == oi {
                    head[seg] = (x, s);
                } else {
                    tail[seg] = (x, s);
                }
            }
        }
        let mut component_of = vec![0; segs];
        for (k, r) in components.iter().enumerate() {
            for s in r.clone() {
                component_of[s] = k;
            }
        }
        Self {
            crossings,
            over_in,
            components,
            component_of,
            tail,
            head,
            loops,
        }
    }

    fn check_planar(&self) -> Result<(), LinkError> {
        for piece in self.pieces() {
            let mut local = vec![usize::MAX; self.crossings.len()];
            for (i, &x) in piece.iter().enumerate() {
                local[x] = i;
            }
            let nd = 4 * piece.len();
            let mut alpha = vec![0; nd];
            let mut sigma = vec![0; nd];
            for (i, &x) in piece.iter().enumerate() {
                for s in 0..4 {
                    let seg = self.crossings[x][s];
                    let (y, t) = if self.tail[seg] == (x, s) {
                        self.head[seg]
                    } else {
                        self.tail[seg]
                    };
                    alpha[4 * i + s] = 4 * local[y] + t;
                    sigma[4 * i + s] = 4 * i + (s + 1) % 4;
                }
            }
            match PlanarMap::new(alpha, sigma) {
                Ok(_) => {}
                Err(MapError::NotSphere { .. }) => return Err(LinkError::NonPlanarPD),
                Err(e) => unreachable!("crossing map malformed: {e}"),
            }
        }
        Ok(())
    }

    /// The 4-valent map of a connected diagram: dart `4x + s` is slot `s`
    /// of crossing `x`, sigma turns counterclockwise, alpha follows a segment.
    pub fn planar_map(&self) -> Option<PlanarMap> {
        if self.loops > 0 || self.crossings.is_empty() || self.pieces().len() != 1 {
            return None;
        }
        let nd = 4 * self.crossings.len();
        let mut alpha = vec![0; nd];
        let mut sigma = vec![0; nd];
        for seg in 0..self.num_segments() {
            let (a, b) = (self.tail[seg], self.head[seg]);
            alpha[4 * a.0 + a.1] = 4 * b.0 + b.1;
            alpha[4 * b.0 + b.1] = 4 * a.0 + a.1;
        }
        for (d, s) in sigma.iter_mut().enumerate() {
            *s = 4 * (d / 4) + (d + 1) % 4;
        }
        Some(PlanarMap::new(alpha, sigma).expect("checked at construction"))
    }

    /// Crossing sets of the connected pieces (crossing-free loops excluded).
    pub fn pieces(&self) -> Vec<Vec<usize>> {
        let n = self.crossings.len();
        let mut piece = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if piece[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            piece[start] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &seg in &self.crossings[x] {
                    for (y, _) in [self.tail[seg], self.head[seg]] {
                        if piece[y] == usize::MAX {
                            piece[y] = id;
                            members.push(y);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        match (self.crossings.len(), self.loops) {
            (0, l) => l <= 1,
            (_, 0) => self.pieces().len() == 1,
            _ => false,
        }
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_segments(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Crossing-free components.
    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn num_components(&self) -> usize {
        self.components.len() + self.loops
    }

    /// Segment ranges of the components that have crossings.
    pub fn components(&self) -> &[std::ops::Range<usize>] {
        &self.components
    }

    pub fn component_of(&self, segment: usize) -> usize {
        self.component_of[segment]
    }

    pub fn over_in(&self, x: usize) -> usize {
        self.over_in[x] as usize
    }

    /// Crossing and slot where `segment` starts.
    pub fn tail(&self, segment: usize) -> (usize, usize) {
        self.tail[segment]
    }

    /// Crossing and slot where `segment` ends.
    pub fn head(&self, segment: usize) -> (usize, usize) {
        self.head[segment]
    }

    /// +1 or -1.
    pub fn sign(&self, x: usize) -> i32 {
        if self.over_in[x] == 3 {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i32 {
        (0..self.crossings.len()).map(|x| self.sign(x)).sum()
    }

    /// Component passing under at `x` and component passing over.
    pub fn strands_at(&self, x: usize) -> (usize, usize) {
        (
            self.component_of[self.crossings[x][0]],
            self.component_of[self.crossings[x][1]],
        )
    }

    /// PD tuples with the stored segment numbering.
    pub fn to_pd(&self) -> Vec<[i64; 4]> {
        self.crossings
            .iter()
            .map(|t| t.map(|s| s as i64))
            .collect()
    }

    /// Crossing change at every crossing.
    pub fn mirror(&self) -> Self {
        let tuples: Vec<[i64; 4]> = self
            .crossings
            .iter()
            .zip(&self.over_in)
            .map(|(t, &oi)| {
                let r = oi as usize;
                [t[r], t[(r + 1) % 4], t[(r + 2) % 4], t[(r + 3) % 4]].map(|s| s as i64)
            })
            .collect();
        Self::from_pd(&tuples, self.loops).expect("mirror of a valid diagram")
    }

    /// Reverses the orientation of component `k` (indexing components with
    /// crossings).
    pub fn reverse_component(&self, k: usize) -> Self {
        let tuples: Vec<[i64; 4]> = self
            .crossings
            .iter()
            .map(|t| {
                let t = t.map(|s| s as i64);
                if self.component_of[t[0] as usize] == k {
                    [t[2], t[3], t[0], t[1]]
                } else {
                    t
                }
            })
            .collect();
        Self::from_pd(&tuples, self.loops).expect("reversal of a valid diagram")
    }

    /// Side-by-side union.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.num_segments() as i64;
        let mut tuples = self.to_pd();
        tuples.extend(other.to_pd().into_iter().map(|t| t.map(|s| s + shift)));
        Self::from_pd(&tuples, self.loops + other.loops).expect("union of valid diagrams")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: [[i64; 4]; 3] = [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]];

    #[test]
    fn trefoil_traces_one_component() {
        let d = LinkDiagram::from_pd(&TREFOIL, 0).unwrap();
        assert_eq!(d.num_crossings(), 3);
        assert_eq!(d.num_components(), 1);
        assert_eq!(d.writhe(), -3);
        assert!(d.is_connected());
        assert_eq!(d.planar_map().unwrap().face_count(), 5);
    }

    #[test]
    fn successor_rule_after_renumbering() {
        let d = LinkDiagram::from_pd(&[[7, 2, 8, 3], [3, 8, 4, 1], [1, 4, 2, 7]], 0).unwrap();
        for (x, t) in d.crossings().iter().enumerate() {
            assert_eq!(t[2], (t[0] + 1) % 6);
            let (i, o) = if d.over_in(x) == 1 { (t[1], t[3]) } else { (t[3], t[1]) };
            assert_eq!(o, (i + 1) % 6);
        }
    }

    #[test]
    fn hopf_link_two_components() {
        let d = LinkDiagram::from_pd(&[[1, 3, 2, 4], [3, 1, 4, 2]], 0).unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.strands_at(0).0, d.strands_at(1).1);
    }

    #[test]
    fn dangling_and_reused_segments() {
        assert_eq!(
            LinkDiagram::from_pd(&[[1, 2, 3, 4]], 0).unwrap_err(),
            LinkError::DanglingSegment(1)
        );
        assert_eq!(
            LinkDiagram::from_pd(&[[1, 1, 1, 2], [2, 3, 3, 1]], 0).unwrap_err(),
            LinkError::SegmentReused(1)
        );
    }

    #[test]
    fn nonplanar_gluing_rejected() {
        // a single crossing whose opposite slots are joined is a torus
        assert_eq!(
            LinkDiagram::from_pd(&[[1, 2, 1, 2]], 0).unwrap_err(),
            LinkError::NonPlanarPD
        );
    }

    #[test]
    fn mirror_flips_writhe_and_reverse_keeps_knot_writhe() {
        let d = LinkDiagram::from_pd(&TREFOIL, 0).unwrap();
        assert_eq!(d.mirror().writhe(), 3);
        assert_eq!(d.reverse_component(0).writhe(), -3);
        let hopf = LinkDiagram::from_pd(&[[1, 3, 2, 4], [3, 1, 4, 2]], 0).unwrap();
        assert_eq!(hopf.reverse_component(0).writhe(), -hopf.writhe());
    }

    #[test]
    fn union_and_pieces() {
        let d = LinkDiagram::from_pd(&TREFOIL, 0).unwrap();
        let u = d.disjoint_union(&LinkDiagram::unlink(1));
        assert_eq!(u.num_components(), 2);
        assert!(!u.is_connected());
        let uu = d.disjoint_union(&d);
        assert_eq!(uu.pieces().len(), 2);
        assert!(uu.planar_map().is_none());
    }
}
