//! Seeded instance generation for property tests.
//!
//! Instances are built only from link-preserving operations: rational
//! butterflies, butterflies of corpus diagrams, and random expansion walks.
//! Every instance carries the trace that rebuilds it, which is what
//! shrinking works on.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::butterfly::{make_rational_butterfly, ButterflyDiagram, VertexKind};
use crate::convert::{bridge_decompose, link_to_butterfly, preprocess_diagram};
use crate::corpus;
use crate::moves::{trunk_expand_at, MoveError};
use crate::planar_map::Dart;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Rational,
    Corpus,
    ExpansionWalk,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub max_m: usize,
    pub max_expansions: usize,
    /// Sources to draw from; `ExpansionWalk` adds a walk on top of a base.
    pub sources: Vec<Source>,
}

impl GenConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            max_m: 12,
            max_expansions: 4,
            sources: vec![Source::Rational, Source::Corpus, Source::ExpansionWalk],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenStep {
    Rational { p: i64, q: i64 },
    CorpusPd { name: String },
    CorpusButterfly { name: String },
    Expand { corner: Dart },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub butterfly: ButterflyDiagram,
    pub trace: Vec<GenStep>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn base(step: &GenStep) -> ButterflyDiagram {
    match step {
        GenStep::Rational { p, q } => make_rational_butterfly(*p, *q).expect("coprime parameters"),
        GenStep::CorpusPd { name } => {
            let d = corpus::pd(name).expect("corpus entry");
            let d = preprocess_diagram(&d);
            link_to_butterfly(&bridge_decompose(&d).expect("preprocessed diagrams decompose"))
                .expect("bridge diagrams convert")
        }
        GenStep::CorpusButterfly { name } => corpus::butterfly(name).expect("corpus entry"),
        GenStep::Expand { .. } => panic!("trace must start with a base step"),
    }
}

/// Rebuilds an instance from its trace.
pub fn replay(trace: &[GenStep]) -> Result<ButterflyDiagram, MoveError> {
    let mut b = base(&trace[0]);
    for step in &trace[1..] {
        if let GenStep::Expand { corner } = step {
            b = trunk_expand_at(&b, *corner)?.0;
        }
    }
    Ok(b)
}

/// Generates an instance with its trace. Same config, same instance.
pub fn generate(cfg: &GenConfig) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bases: Vec<Source> = cfg
        .sources
        .iter()
        .copied()
        .filter(|s| *s != Source::ExpansionWalk)
        .collect();
    let walk = cfg.sources.contains(&Source::ExpansionWalk);
    let first = match bases.choose(&mut rng) {
        Some(Source::Corpus) => {
            let pick = rng.gen_range(0..corpus::PD_CODES.len() + corpus::BUTTERFLIES.len());
            if pick < corpus::PD_CODES.len() {
                GenStep::CorpusPd {
                    name: corpus::PD_CODES[pick].0.to_string(),
                }
            } else {
                GenStep::CorpusButterfly {
                    name: corpus::BUTTERFLIES[pick - corpus::PD_CODES.len()].0.to_string(),
                }
            }
        }
        _ => {
            let p = rng.gen_range(2..=7);
            let qs: Vec<i64> = (1..p).filter(|&q| gcd(p, q) == 1).collect();
            GenStep::Rational {
                p,
                q: *qs.choose(&mut rng).expect("q = 1 is always coprime"),
            }
        }
    };
    let mut b = base(&first);
    let mut trace = vec![first];
    if walk {
        let steps = rng.gen_range(0..=cfg.max_expansions);
        for _ in 0..steps {
            if b.m() >= cfg.max_m {
                break;
            }
            let corners: Vec<Dart> = (0..b.map().num_darts())
                .filter(|&d| b.kind(b.map().vertex(d)) == VertexKind::E)
                .collect();
            let Some(&corner) = corners.choose(&mut rng) else { break };
            b = trunk_expand_at(&b, corner).expect("E-vertex corners expand").0;
            trace.push(GenStep::Expand { corner });
        }
    }
    Generated { butterfly: b, trace }
}

/// The butterfly of [`generate`].
pub fn random_butterfly(cfg: &GenConfig) -> ButterflyDiagram {
    generate(cfg).butterfly
}

/// Shortest trace prefix (undoing expansions from the end) whose instance
/// still fails.
pub fn shrink(g: &Generated, fails: impl Fn(&ButterflyDiagram) -> bool) -> Generated {
    for len in 1..g.trace.len() {
        let trace = g.trace[..len].to_vec();
        let b = replay(&trace).expect("prefixes of a valid trace replay");
        if fails(&b) {
            return Generated { butterfly: b, trace };
        }
    }
    g.clone()
}
