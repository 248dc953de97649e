use std::collections::HashSet;

use super::ButterflyDiagram;
use crate::planar_map::Dart;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// A dart bijection from `a` to `b` respecting the map structure and
/// carrying each trunk's anchor pair onto an anchor pair. Orientation
/// preserving maps are tried first.
pub fn butterfly_isomorphism(
    a: &ButterflyDiagram,
    b: &ButterflyDiagram,
) -> Option<(Vec<Dart>, Orientation)> {
    if a.m() != b.m() || a.census() != b.census() {
        return None;
    }
    let targets: HashSet<(Dart, Dart)> = b
        .trunks()
        .iter()
        .map(|t| (t.c.min(t.d), t.c.max(t.d)))
        .collect();
    for (reversed, orientation) in [(false, Orientation::Preserving), (true, Orientation::Reversing)] {
        // a reversing map sends the corner ending at d to the corner ending at sigma(f(d))
        let corner = |f: &[Dart], d: Dart| if reversed { b.map().sigma(f[d]) } else { f[d] };
        let found = a.map().find_isomorphism(b.map(), reversed, |f| {
            a.trunks().iter().all(|t| {
                let (x, y) = (corner(f, t.c), corner(f, t.d));
                targets.contains(&(x.min(y), x.max(y)))
            })
        });
        if let Some(f) = found {
            return Some((f, orientation));
        }
    }
    None
}

pub fn butterfly_isomorphic(a: &ButterflyDiagram, b: &ButterflyDiagram) -> bool {
    butterfly_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::make_rational_butterfly;

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let b = make_rational_butterfly(7, 3).unwrap();
        let n = b.map().num_darts();
        let perm: Vec<usize> = (0..n).map(|d| (d * 9 + 4) % n).collect();
        let r = b.relabel(&perm).unwrap();
        let (f, o) = butterfly_isomorphism(&b, &r).unwrap();
        assert_eq!(o, Orientation::Preserving);
        assert_eq!(f, perm);
    }

    #[test]
    fn different_twists_are_distinguished() {
        let a = make_rational_butterfly(7, 2).unwrap();
        let b = make_rational_butterfly(7, 3).unwrap();
        assert!(!butterfly_isomorphic(&a, &b));
    }

    #[test]
    fn complementary_twist_is_the_mirror_image() {
        // reflecting the sphere turns the q offset into p - q
        let a = make_rational_butterfly(5, 2).unwrap();
        let b = make_rational_butterfly(5, 3).unwrap();
        let (_, o) = butterfly_isomorphism(&a, &b).unwrap();
        assert_eq!(o, Orientation::Reversing);
    }
}
