//! SVG drawings of butterflies and link diagrams.
//!
//! Vertices are placed by a barycentric (Tutte) layout with the outer face
//! pinned to a regular polygon. Parallel edges and loops are drawn as
//! offset curves so they stay distinguishable. Every element carries a class
//! (`edge`, `trunk`, `chord`, `vertex-*`, `face`, `segment`, `crossing`,
//! `loop`) so element counts can be compared with combinatorial counts.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt::Write;

use butterfly::butterfly::gamma_graph;
use butterfly::{ButterflyDiagram, ButterflyError, LinkDiagram, PlanarMap, VertexKind};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Butterfly,
    Link,
    ButterflyWithGamma,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub target: Target,
    /// Face pinned to the outside; the largest face when unset.
    pub outer_face: Option<usize>,
    pub iterations: usize,
    /// Side of the square canvas in pixels.
    pub size: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            target: Target::Butterfly,
            outer_face: None,
            iterations: 400,
            size: 480.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("layout placed two vertices on the same point")]
    DegenerateLayout,
    #[error("face {0} does not exist")]
    NoSuchFace(usize),
    #[error(transparent)]
    Butterfly(#[from] ButterflyError),
}

type Point = [f64; 2];

fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn scale(a: Point, k: f64) -> Point {
    [a[0] * k, a[1] * k]
}

fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

fn unit(a: Point) -> Point {
    let n = norm(a);
    if n < 1e-12 {
        [0.0, -1.0]
    } else {
        scale(a, 1.0 / n)
    }
}

fn rotate(a: Point, angle: f64) -> Point {
    let (s, c) = angle.sin_cos();
    [a[0] * c - a[1] * s, a[0] * s + a[1] * c]
}

/// Barycentric layout in the unit disk with `outer` pinned to a regular
/// polygon. Vertices repeated along the outer walk keep their first slot.
pub fn tutte_layout(map: &PlanarMap, outer: usize, iterations: usize) -> Result<Vec<Point>, RenderError> {
    if outer >= map.face_count() {
        return Err(RenderError::NoSuchFace(outer));
    }
    let nv = map.vertex_count();
    let mut pos = vec![[0.0, 0.0]; nv];
    let mut pinned = vec![false; nv];
    let walk = map.face_darts(outer);
    for (i, &d) in walk.iter().enumerate() {
        let v = map.vertex(d);
        if !pinned[v] {
            pinned[v] = true;
            let t = TAU * i as f64 / walk.len() as f64;
            pos[v] = [t.cos(), t.sin()];
        }
    }
    for _ in 0..iterations {
        for v in 0..nv {
            if pinned[v] {
                continue;
            }
            let darts = map.vertex_darts(v);
            let sum = darts.iter().fold([0.0, 0.0], |acc, &d| add(acc, pos[map.head(d)]));
            pos[v] = scale(sum, 1.0 / darts.len() as f64);
        }
    }
    for u in 0..nv {
        for v in u + 1..nv {
            if norm(sub(pos[u], pos[v])) < 1e-4 {
                return Err(RenderError::DegenerateLayout);
            }
        }
    }
    Ok(pos)
}

/// Layout with the requested outer face, or the first non-degenerate one
/// among faces ordered by size. A layout that is degenerate for every face
/// is still returned; drawing quality is the only casualty.
fn layout(map: &PlanarMap, spec: &RenderSpec) -> Result<(Vec<Point>, usize), RenderError> {
    if let Some(f) = spec.outer_face {
        return match tutte_layout(map, f, spec.iterations) {
            Err(RenderError::DegenerateLayout) => Ok((fallback_layout(map, f, spec.iterations), f)),
            other => other.map(|p| (p, f)),
        };
    }
    let mut faces: Vec<usize> = (0..map.face_count()).collect();
    faces.sort_by_key(|&f| std::cmp::Reverse(map.face_darts(f).len()));
    for &f in &faces {
        if let Ok(p) = tutte_layout(map, f, spec.iterations) {
            return Ok((p, f));
        }
    }
    Ok((fallback_layout(map, faces[0], spec.iterations), faces[0]))
}

fn fallback_layout(map: &PlanarMap, outer: usize, iterations: usize) -> Vec<Point> {
    let nv = map.vertex_count();
    let mut pos = vec![[0.0, 0.0]; nv];
    let walk = map.face_darts(outer);
    let mut pinned = vec![false; nv];
    for (i, &d) in walk.iter().enumerate() {
        let v = map.vertex(d);
        if !pinned[v] {
            pinned[v] = true;
            let t = TAU * i as f64 / walk.len() as f64;
            pos[v] = [t.cos(), t.sin()];
        }
    }
    // spread the free vertices on an inner circle, then relax
    let free: Vec<usize> = (0..nv).filter(|&v| !pinned[v]).collect();
    for (i, &v) in free.iter().enumerate() {
        let t = TAU * i as f64 / free.len() as f64;
        pos[v] = [0.5 * t.cos(), 0.5 * t.sin()];
    }
    for _ in 0..iterations.min(10) {
        for &v in &free {
            let darts = map.vertex_darts(v);
            let sum = darts.iter().fold([0.0, 0.0], |acc, &d| add(acc, pos[map.head(d)]));
            pos[v] = scale(add(pos[v], scale(sum, 1.0 / darts.len() as f64)), 0.5);
        }
    }
    pos
}

/// A cubic curve in layout coordinates.
#[derive(Debug, Clone, Copy)]
struct Curve([Point; 4]);

impl Curve {
    fn line(a: Point, b: Point) -> Self {
        let d = sub(b, a);
        Curve([a, add(a, scale(d, 1.0 / 3.0)), add(a, scale(d, 2.0 / 3.0)), b])
    }

    fn start_dir(&self) -> Point {
        unit(sub(self.0[1], self.0[0]))
    }

    fn end_dir(&self) -> Point {
        unit(sub(self.0[2], self.0[3]))
    }
}

/// Curves for edges given as vertex pairs. The k-th of several parallel
/// edges bends sideways by an amount growing with k; loops become
/// teardrops pointing away from the drawing's center.
fn edge_curves(pos: &[Point], edges: &[(usize, usize)]) -> Vec<Curve> {
    let mut groups: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        groups.entry((u.min(v), u.max(v))).or_default().push(i);
    }
    let mut out = vec![Curve::line([0.0, 0.0], [0.0, 0.0]); edges.len()];
    for (&(lo, hi), members) in &groups {
        let k = members.len();
        for (j, &i) in members.iter().enumerate() {
            let (u, v) = edges[i];
            if lo == hi {
                let p = pos[u];
                let out_dir = unit(p);
                let dir = rotate(out_dir, TAU * j as f64 / k.max(3) as f64);
                let r = 0.25;
                out[i] = Curve([p, add(p, scale(rotate(dir, 0.5), r)), add(p, scale(rotate(dir, -0.5), r)), p]);
                continue;
            }
            let (a, b) = (pos[u], pos[v]);
            let mut c = Curve::line(a, b);
            let offset = j as f64 - (k as f64 - 1.0) / 2.0;
            if offset != 0.0 {
                // orient the bend by the canonical pair so reversed edges agree
                let base = unit(sub(pos[hi], pos[lo]));
                let perp = scale([-base[1], base[0]], 0.35 * offset * norm(sub(b, a)).max(0.2));
                c.0[1] = add(c.0[1], perp);
                c.0[2] = add(c.0[2], perp);
            }
            out[i] = c;
        }
    }
    out
}

struct Canvas {
    size: f64,
    body: String,
}

impl Canvas {
    fn new(size: f64) -> Self {
        Self {
            size,
            body: String::new(),
        }
    }

    fn map(&self, p: Point) -> Point {
        let half = self.size / 2.0;
        // y grows downwards in SVG; flip so counterclockwise stays counterclockwise
        [half + p[0] * half * 0.7, half - p[1] * half * 0.7]
    }

    fn xy(&self, p: Point) -> String {
        let q = self.map(p);
        format!("{:.2} {:.2}", q[0], q[1])
    }

    fn curve(&mut self, class: &str, c: &Curve, style: &str) {
        let d = format!(
            "M {} C {}, {}, {}",
            self.xy(c.0[0]),
            self.xy(c.0[1]),
            self.xy(c.0[2]),
            self.xy(c.0[3])
        );
        let _ = writeln!(self.body, r#"<path class="{class}" d="{d}" {style}/>"#);
    }

    fn polygon(&mut self, class: &str, pts: &[Point], style: &str) {
        let points: Vec<String> = pts
            .iter()
            .map(|&p| {
                let q = self.map(p);
                format!("{:.2},{:.2}", q[0], q[1])
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polygon class="{class}" points="{}" {style}/>"#,
            points.join(" ")
        );
    }

    fn circle(&mut self, class: &str, p: Point, r: f64, style: &str) {
        let q = self.map(p);
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" cx="{:.2}" cy="{:.2}" r="{r:.2}" {style}/>"#,
            q[0], q[1]
        );
    }

    fn line(&mut self, class: &str, a: Point, b: Point, style: &str) {
        let (p, q) = (self.map(a), self.map(b));
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#,
            p[0], p[1], q[0], q[1]
        );
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s:.0}\" height=\"{s:.0}\" viewBox=\"0 0 {s:.0} {s:.0}\">\n\
             {}</svg>\n",
            self.body,
            s = self.size
        )
    }
}

/// Draws a butterfly: thick trunks, starred B-vertices, filled A-vertices,
/// hollow E-vertices, and with [`Target::ButterflyWithGamma`] the gamma
/// chords dotted.
pub fn butterfly_svg(b: &ButterflyDiagram, spec: &RenderSpec) -> Result<String, RenderError> {
    let map = b.map();
    let (pos, outer) = layout(map, spec)?;
    let mut cv = Canvas::new(spec.size);
    let centroid = |f: usize| {
        let darts = map.face_darts(f);
        let sum = darts.iter().fold([0.0, 0.0], |acc, &d| add(acc, pos[map.vertex(d)]));
        scale(sum, 1.0 / darts.len() as f64)
    };

    let _ = writeln!(
        cv.body,
        r##"<rect class="face outer" x="0" y="0" width="{s:.0}" height="{s:.0}" fill="#ffffff"/>"##,
        s = spec.size
    );
    for f in (0..map.face_count()).filter(|&f| f != outer) {
        let pts: Vec<Point> = map.face_darts(f).iter().map(|&d| pos[map.vertex(d)]).collect();
        cv.polygon("face", &pts, r##"fill="#eef3fb" stroke="none""##);
    }

    let edges: Vec<(usize, usize)> = (0..map.num_darts())
        .filter(|&d| d < map.alpha(d))
        .map(|d| (map.vertex(d), map.head(d)))
        .collect();
    for c in edge_curves(&pos, &edges) {
        cv.curve("edge", &c, r##"fill="none" stroke="#333333" stroke-width="1.5""##);
    }

    let bulge = |f: usize, a: Point, b: Point| -> Curve {
        if f == outer {
            let mid = unit(add(a, b));
            let push = scale(mid, 0.45);
            Curve([a, add(scale(a, 1.25), push), add(scale(b, 1.25), push), b])
        } else {
            let m = centroid(f);
            Curve([a, add(a, scale(sub(m, a), 2.0 / 3.0)), add(b, scale(sub(m, b), 2.0 / 3.0)), b])
        }
    };

    for t in b.trunks() {
        let f = map.face(t.c);
        let (a, z) = (pos[map.vertex(t.c)], pos[map.vertex(t.d)]);
        let c = if f == outer { bulge(f, a, z) } else { Curve::line(a, z) };
        cv.curve("trunk", &c, r##"fill="none" stroke="#b03030" stroke-width="4""##);
    }

    if spec.target == Target::ButterflyWithGamma {
        let g = gamma_graph(b)?;
        for ch in &g.chords {
            let c = bulge(ch.face, pos[map.vertex(ch.plus)], pos[map.vertex(ch.minus)]);
            cv.curve(
                "chord",
                &c,
                r##"fill="none" stroke="#2060c0" stroke-width="1.5" stroke-dasharray="3 3""##,
            );
        }
    }

    for (v, &p) in pos.iter().enumerate() {
        match b.kind(v) {
            VertexKind::A => cv.circle("vertex-a", p, 5.0, r##"fill="#000000""##),
            VertexKind::E => cv.circle("vertex-e", p, 5.0, r##"fill="#ffffff" stroke="#000000" stroke-width="1.5""##),
            VertexKind::B => {
                let q = cv.map(p);
                let _ = writeln!(
                    cv.body,
                    r#"<text class="vertex-b" x="{:.2}" y="{:.2}" font-size="18" text-anchor="middle" dominant-baseline="central">*</text>"#,
                    q[0], q[1]
                );
            }
            VertexKind::Plain => cv.circle("vertex-plain", p, 2.0, r##"fill="#777777""##),
        }
    }
    Ok(cv.finish())
}

/// Draws a link diagram with a visible gap in the under-strand at every
/// crossing. Split diagrams and crossing-free circles get a rough layout.
pub fn link_svg(d: &LinkDiagram, spec: &RenderSpec) -> Result<String, RenderError> {
    let n = d.num_crossings();
    let mut cv = Canvas::new(spec.size);
    let pos: Vec<Point> = match d.planar_map() {
        Some(map) => layout(&map, spec)?.0,
        None => (0..n)
            .map(|x| {
                let t = TAU * x as f64 / n.max(1) as f64;
                [0.8 * t.cos(), 0.8 * t.sin()]
            })
            .collect(),
    };

    let edges: Vec<(usize, usize)> = (0..d.num_segments())
        .map(|s| (d.tail(s).0, d.head(s).0))
        .collect();
    let curves = edge_curves(&pos, &edges);
    // direction in which each crossing slot leaves its crossing
    let mut slot_dir = vec![[[0.0, 0.0]; 4]; n];
    for (s, c) in curves.iter().enumerate() {
        let (tx, ts) = d.tail(s);
        let (hx, hs) = d.head(s);
        slot_dir[tx][ts] = c.start_dir();
        slot_dir[hx][hs] = c.end_dir();
    }
    for c in &curves {
        cv.curve("segment", c, r##"fill="none" stroke="#222222" stroke-width="2.5""##);
    }
    for x in 0..n {
        let over = d.over_in(x);
        let a = add(pos[x], scale(slot_dir[x][over], 0.09));
        let b = add(pos[x], scale(slot_dir[x][(over + 2) % 4], 0.09));
        let _ = writeln!(cv.body, r#"<g class="crossing">"#);
        cv.line("gap", a, b, r##"stroke="#ffffff" stroke-width="9""##);
        cv.line("over", a, b, r##"stroke="#222222" stroke-width="2.5""##);
        let _ = writeln!(cv.body, "</g>");
    }
    for k in 0..d.loops() {
        let center = [-0.8 + 0.4 * k as f64, -1.2];
        let r = 0.15 * spec.size / 2.0 * 0.7;
        cv.circle("loop", center, r, r##"fill="none" stroke="#222222" stroke-width="2.5""##);
    }
    Ok(cv.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use butterfly::butterfly::make_rational_butterfly;
    use butterfly::codecs::parse_pd;

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!("class=\"{class}\"")).count()
    }

    #[test]
    fn rational_three_one_census() {
        let b = make_rational_butterfly(3, 1).unwrap();
        let svg = butterfly_svg(&b, &RenderSpec::default()).unwrap();
        assert_eq!(count(&svg, "face") + count(&svg, "face outer"), 2);
        assert_eq!(count(&svg, "trunk"), 2);
        let vertices = count(&svg, "vertex-a") + count(&svg, "vertex-e") + count(&svg, "vertex-b");
        assert_eq!(vertices, 6);
        assert_eq!(count(&svg, "edge"), b.map().edge_count());
        assert_eq!(count(&svg, "chord"), 0);
    }

    #[test]
    fn gamma_chords_are_dotted() {
        let b = make_rational_butterfly(5, 2).unwrap();
        let spec = RenderSpec {
            target: Target::ButterflyWithGamma,
            ..RenderSpec::default()
        };
        let svg = butterfly_svg(&b, &spec).unwrap();
        assert_eq!(count(&svg, "chord"), b.chord_count());
        assert!(svg.contains("stroke-dasharray"));
    }

    #[test]
    fn kinked_unknot_has_one_gap() {
        let d = parse_pd("PD[X[1,1,2,2]]").unwrap();
        let svg = link_svg(&d, &RenderSpec::default()).unwrap();
        assert_eq!(count(&svg, "crossing"), 1);
        assert_eq!(count(&svg, "gap"), 1);
        assert_eq!(count(&svg, "segment"), 2);
    }

    #[test]
    fn layout_is_deterministic() {
        let b = make_rational_butterfly(7, 3).unwrap();
        let spec = RenderSpec::default();
        assert_eq!(butterfly_svg(&b, &spec).unwrap(), butterfly_svg(&b, &spec).unwrap());
    }

    #[test]
    fn interior_vertices_are_barycenters() {
        // a wheel: the hub must land on the center of the pinned rim
        let b = make_rational_butterfly(5, 2).unwrap();
        let map = b.map();
        let outer = (0..map.face_count()).max_by_key(|&f| map.face_darts(f).len()).unwrap();
        let pos = tutte_layout(map, outer, 2000).unwrap();
        for v in 0..map.vertex_count() {
            let on_outer = map.face_darts(outer).iter().any(|&d| map.vertex(d) == v);
            if on_outer {
                assert!((norm(pos[v]) - 1.0).abs() < 1e-9);
            } else {
                let darts = map.vertex_darts(v);
                let mean = darts.iter().fold([0.0, 0.0], |acc, &d| add(acc, pos[map.head(d)]));
                let mean = scale(mean, 1.0 / darts.len() as f64);
                assert!(norm(sub(mean, pos[v])) < 1e-6);
            }
        }
    }

    #[test]
    fn missing_outer_face_is_reported() {
        let b = make_rational_butterfly(3, 1).unwrap();
        assert_eq!(tutte_layout(b.map(), 9, 10), Err(RenderError::NoSuchFace(9)));
    }
}
