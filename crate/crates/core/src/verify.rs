//! Certificates for butterflies and the bracket oracle for links.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::butterfly::{gamma_graph, ButterflyDiagram, ButterflyError, VertexKind};
use crate::laurent::Laurent;
use crate::link::LinkDiagram;
use crate::planar_map::{Dart, PlanarMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{0} open segment ends exceed the sweep bound of {MAX_FRONTIER}")]
    FrontierTooWide(usize),
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    /// Returns true if two classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Cell counts of the identification space of the folded ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientComplex {
    pub vertex_classes: usize,
    pub edge_classes: usize,
    pub trunks: usize,
    pub euler_characteristic: i64,
}

impl QuotientComplex {
    pub fn is_sphere_like(&self) -> bool {
        self.euler_characteristic == 0
    }
}

pub fn quotient_cell_counts(b: &ButterflyDiagram) -> QuotientComplex {
    quotient_counts_raw(b.map(), &b.trunks().iter().map(|t| t.c).collect::<Vec<_>>())
}

/// Counts from a map and one `c` anchor per face; anchors need not be
/// antipodal, which lets corrupted inputs be measured too.
fn quotient_counts_raw(map: &PlanarMap, anchors: &[Dart]) -> QuotientComplex {
    let mut verts = UnionFind::new(map.vertex_count());
    let mut edges = UnionFind::new(map.edge_count());
    for &c in anchors {
        let walk = map.walk_from(c);
        let len = walk.len();
        for p in 0..len {
            let q = (len - p) % len;
            verts.union(map.vertex(walk[p]), map.vertex(walk[q]));
            edges.union(map.edge(walk[p]), map.edge(walk[len - 1 - p]));
        }
    }
    let count = |uf: &mut UnionFind, n: usize| (0..n).filter(|&x| uf.find(x) == x).count();
    let v = count(&mut verts, map.vertex_count());
    let e = count(&mut edges, map.edge_count());
    QuotientComplex {
        vertex_classes: v,
        edge_classes: e,
        trunks: anchors.len(),
        euler_characteristic: v as i64 - e as i64 - 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub paths: usize,
    pub a_vertices: usize,
    pub a_monovalent: bool,
    pub e_bivalent: bool,
    pub classes_match_paths: bool,
    pub error: Option<String>,
}

impl GammaReport {
    pub fn ok(&self) -> bool {
        self.error.is_none()
            && self.a_monovalent
            && self.e_bivalent
            && self.classes_match_paths
            && 2 * self.paths == self.a_vertices
    }
}

pub fn check_gamma_claims(b: &ButterflyDiagram) -> GammaReport {
    let a_vertices = b.census()[VertexKind::A as usize];
    let g = match gamma_graph(b) {
        Ok(g) => g,
        Err(e) => {
            return GammaReport {
                paths: 0,
                a_vertices,
                a_monovalent: false,
                e_bivalent: false,
                classes_match_paths: false,
                error: Some(e.to_string()),
            }
        }
    };
    let map = b.map();
    let mut valence = vec![0usize; map.vertex_count()];
    for ch in &g.chords {
        valence[map.vertex(ch.plus)] += 1;
        valence[map.vertex(ch.minus)] += 1;
    }
    let of_kind = |k: VertexKind| (0..map.vertex_count()).filter(move |&v| b.kind(v) == k);
    let a_monovalent = of_kind(VertexKind::A).all(|v| valence[v] == 1);
    let e_bivalent = of_kind(VertexKind::E).all(|v| valence[v] == 2);
    let classes = b.classes();
    let classes_match_paths = g.paths.iter().all(|p| {
        let mut path = p.clone();
        path.sort_unstable();
        let mut class = classes.classes()[classes.class_of(p[0])].clone();
        class.sort_unstable();
        path == class
    });
    GammaReport {
        paths: g.paths.len(),
        a_vertices,
        a_monovalent,
        e_bivalent,
        classes_match_paths,
        error: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub m: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// Counts of A-, E-, B- and unclassified vertices.
    pub census: [usize; 4],
    pub quotient: Option<QuotientComplex>,
    pub gamma: Option<GammaReport>,
    pub failures: Vec<String>,
}

/// Full check of a constructed diagram.
pub fn validate_butterfly(b: &ButterflyDiagram) -> ValidationReport {
    let mut failures: Vec<String> =
        b.classes().problems().iter().map(ToString::to_string).collect();
    let quotient = quotient_cell_counts(b);
    if !quotient.is_sphere_like() {
        failures.push(format!(
            "quotient Euler characteristic {} (V* = {}, E* = {})",
            quotient.euler_characteristic, quotient.vertex_classes, quotient.edge_classes
        ));
    }
    let gamma = check_gamma_claims(b);
    if !gamma.ok() {
        failures.push(match &gamma.error {
            Some(e) => e.clone(),
            None => "gamma graph claims violated".to_string(),
        });
    }
    let map = b.map();
    ValidationReport {
        valid: failures.is_empty(),
        m: b.m(),
        vertices: map.vertex_count(),
        edges: map.edge_count(),
        faces: map.face_count(),
        census: b.census(),
        quotient: Some(quotient),
        gamma: Some(gamma),
        failures,
    }
}

/// Validates raw parts, reporting construction failures instead of erroring.
/// When only the trunk structure is broken, the quotient counts are still
/// measured from the `c` anchors.
pub fn validate_raw(alpha: Vec<Dart>, sigma: Vec<Dart>, anchors: &[(Dart, Dart)]) -> ValidationReport {
    let map = match PlanarMap::new(alpha, sigma) {
        Ok(map) => map,
        Err(e) => return failed_report(anchors.len(), vec![e.to_string()], None, None),
    };
    match ButterflyDiagram::new(map.clone(), anchors.iter().map(|&(c, d)| crate::Trunk { c, d }).collect()) {
        Ok(b) => validate_butterfly(&b),
        Err(e) => {
            let quotient = (anchors.len() == map.face_count()
                && anchors.iter().all(|&(c, _)| c < map.num_darts()))
            .then(|| quotient_counts_raw(&map, &anchors.iter().map(|a| a.0).collect::<Vec<_>>()));
            failed_report(anchors.len(), vec![e.to_string()], Some(&map), quotient)
        }
    }
}

fn failed_report(
    m: usize,
    failures: Vec<String>,
    map: Option<&PlanarMap>,
    quotient: Option<QuotientComplex>,
) -> ValidationReport {
    ValidationReport {
        valid: false,
        m,
        vertices: map.map_or(0, PlanarMap::vertex_count),
        edges: map.map_or(0, PlanarMap::edge_count),
        faces: map.map_or(0, PlanarMap::face_count),
        census: [0; 4],
        quotient,
        gamma: None,
        failures,
    }
}

/// Open smoothing-arc ends allowed at once by the frontier sweep.
pub const MAX_FRONTIER: usize = 40;

/// Unnormalized bracket with the loop value `-A^2 - A^-2` and a single
/// crossing-free circle evaluating to 1.
///
/// Crossings are absorbed one at a time in an order that keeps few segment
/// ends open; partial states are merged by how they pair the open ends.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<Laurent, VerifyError> {
    let n = d.num_crossings();
    let delta = Laurent::from_terms(&[(-1, 2), (-1, -2)]);
    let mut free_loops = Laurent::one();
    for _ in 0..d.loops() {
        free_loops = &free_loops * &delta;
    }
    if n == 0 {
        // one circle is the base value, every further one multiplies by delta
        return Ok(match d.loops() {
            0 => Laurent::one(),
            k => (0..k - 1).fold(Laurent::one(), |acc, _| &acc * &delta),
        });
    }
    // partial states: pairing of open segment ends, and whether some loop
    // already closed (the first closed loop is the unit)
    type Key = (Vec<(usize, usize)>, bool);
    let mut states: HashMap<Key, Laurent> = HashMap::from([((Vec::new(), false), Laurent::one())]);
    let mut seen = vec![0u8; d.num_segments()];
    for x in sweep_order(d) {
        let t = d.crossings()[x];
        for &s in &t {
            seen[s] += 1;
        }
        let mut next: HashMap<Key, Laurent> = HashMap::new();
        for ((pairs, closed), poly) in states {
            for (smoothing, degree) in [([(t[0], t[1]), (t[2], t[3])], 1), ([(t[0], t[3]), (t[1], t[2])], -1)] {
                let mut open: HashMap<usize, usize> = pairs.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
                let mut loops = 0;
                for (a, b) in smoothing {
                    // an end already open is being closed: continue from its partner
                    let ea = open.remove(&a);
                    let eb = if a == b { None } else { open.remove(&b) };
                    match (ea, eb) {
                        _ if a == b => loops += 1,
                        (Some(pa), Some(pb)) if pa == b && pb == a => loops += 1,
                        (ea, eb) => {
                            let (pa, pb) = (ea.unwrap_or(a), eb.unwrap_or(b));
                            open.insert(pa, pb);
                            open.insert(pb, pa);
                        }
                    }
                }
                let mut key: Vec<(usize, usize)> = open.into_iter().filter(|&(a, b)| a < b).collect();
                key.sort_unstable();
                if key.len() * 2 > MAX_FRONTIER {
                    return Err(VerifyError::FrontierTooWide(key.len() * 2));
                }
                let mut term = Laurent::monomial(1, degree);
                let mut now_closed = closed;
                for _ in 0..loops {
                    if now_closed {
                        term = &term * &delta;
                    }
                    now_closed = true;
                }
                let slot = next.entry((key, now_closed)).or_insert_with(Laurent::zero);
                *slot = &*slot + &(&poly * &term);
            }
        }
        states = next;
    }
    let total = states
        .into_iter()
        .filter(|((pairs, closed), _)| pairs.is_empty() && *closed)
        .fold(Laurent::zero(), |acc, (_, p)| acc + p);
    debug_assert!(seen.iter().all(|&k| k == 2));
    Ok(&total * &free_loops)
}

/// Greedy order: next take the crossing with the most segments already open.
fn sweep_order(d: &LinkDiagram) -> Vec<usize> {
    let n = d.num_crossings();
    let mut done = vec![false; n];
    let mut touched = vec![0u8; d.num_segments()];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let x = (0..n)
            .filter(|&x| !done[x])
            .max_by_key(|&x| {
                let t = d.crossings()[x];
                let open = t.iter().filter(|&&s| touched[s] == 1).count();
                (open, std::cmp::Reverse(x))
            })
            .expect("a crossing is left");
        done[x] = true;
        for &s in &d.crossings()[x] {
            touched[s] += 1;
        }
        order.push(x);
    }
    order
}

/// `(-A^3)^-w` times the bracket: invariant of oriented links.
pub fn normalized_bracket(d: &LinkDiagram) -> Result<Laurent, VerifyError> {
    Ok(writhe_factor(d.writhe()) * kauffman_bracket(d)?)
}

fn writhe_factor(w: i32) -> Laurent {
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Laurent::monomial(sign, -3 * w)
}

/// Component count and the sorted normalized brackets over all orientations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub components: usize,
    pub polynomials: Vec<Laurent>,
}

impl Fingerprint {
    /// The fingerprint of the mirror image.
    pub fn mirror(&self) -> Self {
        let mut polynomials: Vec<Laurent> = self.polynomials.iter().map(Laurent::mirror).collect();
        polynomials.sort();
        Self {
            components: self.components,
            polynomials,
        }
    }
}

pub fn fingerprint(d: &LinkDiagram) -> Result<Fingerprint, VerifyError> {
    let bracket = kauffman_bracket(d)?;
    let comps = d.components().len();
    let mut polynomials = Vec::with_capacity(1 << comps);
    for flip in 0u32..(1u32 << comps) {
        let w: i32 = (0..d.num_crossings())
            .map(|x| {
                let (under, over) = d.strands_at(x);
                let flips = (flip >> under & 1) ^ (flip >> over & 1);
                if flips == 1 {
                    -d.sign(x)
                } else {
                    d.sign(x)
                }
            })
            .sum();
        let p = &writhe_factor(w) * &bracket;
        // crossing-free circles double the orientation choices without effect
        polynomials.extend(std::iter::repeat_n(p, 1 << d.loops()));
    }
    polynomials.sort();
    Ok(Fingerprint {
        components: d.num_components(),
        polynomials,
    })
}

pub fn fingerprints_equal(a: &Fingerprint, b: &Fingerprint, allow_mirror: bool) -> bool {
    a == b || (allow_mirror && *a == b.mirror())
}

/// Certificates failing for a butterfly, for bulk checks.
pub fn certificate_failures(b: &ButterflyDiagram) -> Vec<String> {
    validate_butterfly(b).failures
}

impl From<ButterflyError> for ValidationReport {
    fn from(e: ButterflyError) -> Self {
        failed_report(0, vec![e.to_string()], None, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::fixtures::unknot_path;
    use crate::butterfly::make_rational_butterfly;

    fn pd(t: &[[i64; 4]]) -> LinkDiagram {
        LinkDiagram::from_pd(t, 0).unwrap()
    }

    fn braid_closure(strands: usize, word: &[i32]) -> LinkDiagram {
        // strand positions carry their current segment label
        let mut next = strands as i64;
        let mut cur: Vec<i64> = (0..strands as i64).collect();
        let mut tuples = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize - 1;
            let (l, r) = (cur[i], cur[i + 1]);
            let (nl, nr) = (next, next + 1);
            next += 2;
            // strands run upward, l to the upper right and r to the upper left;
            // counterclockwise the ends are l, r, nl, nr
            if g > 0 {
                tuples.push([r, nl, nr, l]);
            } else {
                tuples.push([l, r, nl, nr]);
            }
            cur[i] = nr;
            cur[i + 1] = nl;
        }
        // close the braid: top label of position i feeds bottom label i
        for t in &mut tuples {
            for s in t.iter_mut() {
                if let Some(i) = cur.iter().position(|c| c == s) {
                    *s = i as i64;
                }
            }
        }
        pd(&tuples)
    }

    #[test]
    fn single_loops_and_kink() {
        assert_eq!(kauffman_bracket(&LinkDiagram::unlink(1)).unwrap(), Laurent::one());
        assert_eq!(
            kauffman_bracket(&LinkDiagram::unlink(2)).unwrap(),
            Laurent::from_terms(&[(-1, 2), (-1, -2)])
        );
        let kink = pd(&[[1, 2, 2, 1]]);
        let b = kauffman_bracket(&kink).unwrap();
        assert!(b == Laurent::monomial(-1, 3) || b == Laurent::monomial(-1, -3));
        assert_eq!(normalized_bracket(&kink).unwrap(), Laurent::one());
    }

    #[test]
    fn table_trefoil_value() {
        // left-handed: Jones -t^-4 + t^-3 + t^-1 under A = t^(-1/4)
        let d = pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]);
        assert_eq!(
            normalized_bracket(&d).unwrap(),
            Laurent::from_terms(&[(1, 4), (1, 12), (-1, 16)])
        );
    }

    #[test]
    fn braid_closures_match_reference_values() {
        let right_trefoil = braid_closure(2, &[1, 1, 1]);
        assert_eq!(
            normalized_bracket(&right_trefoil).unwrap(),
            Laurent::from_terms(&[(-1, -16), (1, -12), (1, -4)])
        );
        let fig8 = braid_closure(3, &[1, -2, 1, -2]);
        assert_eq!(
            normalized_bracket(&fig8).unwrap(),
            Laurent::from_terms(&[(1, -8), (-1, -4), (1, 0), (-1, 4), (1, 8)])
        );
        let hopf = braid_closure(2, &[1, 1]);
        assert_eq!(
            normalized_bracket(&hopf).unwrap(),
            Laurent::from_terms(&[(-1, -10), (-1, -2)])
        );
        let k820 = braid_closure(3, &[1, 1, 1, -2, -1, -1, -1, -2]);
        assert_eq!(
            normalized_bracket(&k820).unwrap(),
            Laurent::from_terms(&[(-1, -4), (2, 0), (-1, 4), (2, 8), (-1, 12), (1, 16), (-1, 20)])
        );
    }

    #[test]
    fn fingerprint_orientations() {
        let hopf = braid_closure(2, &[1, 1]);
        let f = fingerprint(&hopf).unwrap();
        assert_eq!(f.components, 2);
        assert_eq!(f.polynomials.len(), 4);
        assert!(f.polynomials.contains(&Laurent::from_terms(&[(-1, -10), (-1, -2)])));
        assert!(f.polynomials.contains(&Laurent::from_terms(&[(-1, 10), (-1, 2)])));
        let unlink = fingerprint(&LinkDiagram::unlink(2)).unwrap();
        assert!(!fingerprints_equal(&f, &unlink, true));
    }

    #[test]
    fn mirror_comparison() {
        let left = fingerprint(&pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])).unwrap();
        let right = fingerprint(&braid_closure(2, &[1, 1, 1])).unwrap();
        assert!(!fingerprints_equal(&left, &right, false));
        assert!(fingerprints_equal(&left, &right, true));
    }

    #[test]
    fn crossing_order_does_not_matter() {
        let a = pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]);
        let b = pd(&[[5, 2, 6, 3], [1, 4, 2, 5], [3, 6, 4, 1]]);
        assert_eq!(kauffman_bracket(&a).unwrap(), kauffman_bracket(&b).unwrap());
    }

    /// Plain sum over all 2^n states.
    fn state_sum(d: &LinkDiagram) -> Laurent {
        let n = d.num_crossings();
        let delta = Laurent::from_terms(&[(-1, 2), (-1, -2)]);
        let mut total = Laurent::zero();
        for state in 0u32..(1u32 << n) {
            let mut uf = UnionFind::new(d.num_segments());
            let mut loops = d.num_segments() + d.loops();
            for (x, t) in d.crossings().iter().enumerate() {
                let pairs = if state >> x & 1 == 0 {
                    [(t[0], t[1]), (t[2], t[3])]
                } else {
                    [(t[0], t[3]), (t[1], t[2])]
                };
                for (a, b) in pairs {
                    if uf.union(a, b) {
                        loops -= 1;
                    }
                }
            }
            let a = n as i32 - 2 * state.count_ones() as i32;
            let mut term = Laurent::monomial(1, a);
            for _ in 1..loops {
                term = &term * &delta;
            }
            total = total + term;
        }
        total
    }

    #[test]
    fn sweep_agrees_with_state_sum() {
        let diagrams = [
            braid_closure(2, &[1; 9]),
            braid_closure(3, &[1, -2, 1, -2, 1, -2]),
            braid_closure(3, &[1, 1, 1, -2, -1, -1, -1, -2]),
            braid_closure(4, &[1, 2, -3, 1, -2, 3, 3, -1, 2, 2]),
            braid_closure(3, &[1, 2, 1, 2, 1, 2]),
            pd(&[[1, 1, 2, 2]]),
            LinkDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 2).unwrap(),
        ];
        for d in &diagrams {
            assert_eq!(kauffman_bracket(d).unwrap(), state_sum(d), "{:?}", d.to_pd());
        }
    }

    #[test]
    fn connected_sum_multiplies_brackets() {
        // sigma1^13 sigma2^12 on three strands closes to T(2,13) # T(2,12)
        let word: Vec<i32> = std::iter::repeat_n(1, 13).chain(std::iter::repeat_n(2, 12)).collect();
        let sum = braid_closure(3, &word);
        let expected = &state_sum(&braid_closure(2, &[1; 13])) * &state_sum(&braid_closure(2, &[1; 12]));
        assert_eq!(kauffman_bracket(&sum).unwrap(), expected);
    }

    #[test]
    fn quotient_counts() {
        let q = quotient_cell_counts(&unknot_path());
        assert_eq!((q.vertex_classes, q.edge_classes, q.euler_characteristic), (2, 1, 0));
        for (p, r) in [(2, 1), (3, 1), (5, 2), (7, 3)] {
            let b = make_rational_butterfly(p, r).unwrap();
            assert!(quotient_cell_counts(&b).is_sphere_like());
            let report = validate_butterfly(&b);
            assert!(report.valid, "{p}/{r}: {:?}", report.failures);
        }
    }

    #[test]
    fn swapped_south_anchor_breaks_the_certificate() {
        let b = make_rational_butterfly(3, 1).unwrap();
        let (alpha, sigma, mut anchors) = b.to_parts();
        let m = b.map();
        anchors[1] = (m.phi(anchors[1].0), m.phi(anchors[1].1));
        let report = validate_raw(alpha, sigma, &anchors);
        assert!(!report.valid);
    }

    #[test]
    fn gamma_report_for_three_one() {
        let g = check_gamma_claims(&make_rational_butterfly(3, 1).unwrap());
        assert!(g.ok());
        assert_eq!(g.paths, 2);
    }
}
