//! Built-in example diagrams.

use crate::butterfly::ButterflyDiagram;
use crate::codecs::{parse_btf, parse_pd};
use crate::link::LinkDiagram;

/// PD codes: `(name, text)`.
pub const PD_CODES: &[(&str, &str)] = &[
    ("trefoil-3", include_str!("../corpus/trefoil-3.pd")),
    ("trefoil-plat", include_str!("../corpus/trefoil-plat.pd")),
    ("fig8", include_str!("../corpus/fig8.pd")),
    ("fig8-plat", include_str!("../corpus/fig8-plat.pd")),
    ("hopf", include_str!("../corpus/hopf.pd")),
    ("unlink2-plat", include_str!("../corpus/unlink2-plat.pd")),
    ("borromean-12arc", include_str!("../corpus/borromean-12arc.pd")),
    ("8_20-a", include_str!("../corpus/8_20-a.pd")),
    ("8_20-b", include_str!("../corpus/8_20-b.pd")),
];

/// Butterfly files: `(name, text)`.
pub const BUTTERFLIES: &[(&str, &str)] = &[
    ("rational-3-1", include_str!("../corpus/rational-3-1.btf")),
    ("unknot-path", include_str!("../corpus/unknot-path.btf")),
];

/// Bridge diagrams: each arc passing over something is a bridge.
pub const BRIDGE_DIAGRAMS: &[&str] = &[
    "trefoil-plat",
    "fig8-plat",
    "borromean-12arc",
    "unlink2-plat",
    "8_20-a",
    "8_20-b",
];

/// Parses the named corpus PD code.
pub fn pd(name: &str) -> Option<LinkDiagram> {
    PD_CODES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_pd(text).expect("corpus PD codes are valid"))
}

/// Parses the named corpus butterfly.
pub fn butterfly(name: &str) -> Option<ButterflyDiagram> {
    BUTTERFLIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_btf(text).expect("corpus butterflies are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses() {
        for (name, _) in PD_CODES {
            assert!(pd(name).is_some(), "{name}");
        }
        for (name, _) in BUTTERFLIES {
            assert!(butterfly(name).is_some(), "{name}");
        }
        assert!(pd("nope").is_none());
    }

    #[test]
    fn component_counts() {
        for (name, comps) in [
            ("trefoil-3", 1),
            ("trefoil-plat", 1),
            ("fig8", 1),
            ("fig8-plat", 1),
            ("hopf", 2),
            ("unlink2-plat", 2),
            ("borromean-12arc", 3),
            ("8_20-a", 1),
            ("8_20-b", 1),
        ] {
            assert_eq!(pd(name).unwrap().num_components(), comps, "{name}");
        }
    }
}
