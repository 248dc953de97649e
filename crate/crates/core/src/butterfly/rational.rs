use super::{ButterflyDiagram, ButterflyError, Trunk};
use crate::planar_map::PlanarMap;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The 2-butterfly of the rational link p/q: an equatorial 2p-cycle whose
/// two hemispheres are folded along half meridians `q` steps apart.
///
/// Dart `2i` runs from `v_i` to `v_{i+1}` and lies on the northern face;
/// dart `2i + 1` is its reverse and lies on the southern face.
pub fn make_rational_butterfly(p: i64, q: i64) -> Result<ButterflyDiagram, ButterflyError> {
    if p < 2 || q < 1 || q >= p || gcd(p, q) != 1 {
        return Err(ButterflyError::BadParameters { p, q });
    }
    let (p, q) = (p as usize, q as usize);
    let k = 2 * p;
    let mut alpha = vec![0; 2 * k];
    let mut sigma = vec![0; 2 * k];
    for i in 0..k {
        alpha[2 * i] = 2 * i + 1;
        alpha[2 * i + 1] = 2 * i;
        // v_i holds dart 2i (outgoing forward) and dart 2(i-1)+1 (outgoing backward)
        let back = 2 * ((i + k - 1) % k) + 1;
        sigma[2 * i] = back;
        sigma[back] = 2 * i;
    }
    let map = PlanarMap::new(alpha, sigma)?;
    let south = |i: usize| 2 * ((i + k - 1) % k) + 1;
    let trunks = vec![
        Trunk { c: 0, d: 2 * p },
        Trunk {
            c: south(q),
            d: south(q + p),
        },
    ];
    ButterflyDiagram::new(map, trunks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::VertexKind;

    #[test]
    fn census_matches_construction() {
        for (p, q) in [(2, 1), (3, 1), (3, 2), (5, 2), (7, 3), (8, 3)] {
            let b = make_rational_butterfly(p, q).unwrap();
            let n = 2 * p as usize;
            assert_eq!(b.map().vertex_count(), n);
            assert_eq!(b.census(), [4, n - 4, 0, 0], "{p}/{q}");
            assert_eq!(b.chord_count(), n - 2);
            assert!(b.classes().problems().is_empty());
        }
    }

    #[test]
    fn anchors_sit_on_the_stated_vertices() {
        let b = make_rational_butterfly(5, 2).unwrap();
        let m = b.map();
        assert_eq!(m.vertex(b.trunk(0).c), m.vertex(0));
        assert_eq!(m.vertex(b.trunk(0).d), m.vertex(10));
        assert_eq!(m.vertex(b.trunk(1).c), m.vertex(4));
        assert_eq!(m.vertex(b.trunk(1).d), m.vertex(14));
        assert_eq!(b.kind(m.vertex(2)), VertexKind::E);
    }

    #[test]
    fn bad_parameters() {
        for (p, q) in [(1, 0), (2, 2), (3, 0), (4, 2), (5, 7)] {
            assert_eq!(
                make_rational_butterfly(p, q).unwrap_err(),
                ButterflyError::BadParameters { p, q }
            );
        }
    }
}
