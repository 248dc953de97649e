//! Text formats: butterfly gluing files (`.btf`), PD codes and Gauss codes.
//!
//! A `.btf` file lists one face per line:
//!
//! ```text
//! btf 1
//! face 0: e0 e1 e2 e3 e4 e5 ; trunk 0 3
//! face 1: e5' e4' e3' e2' e1' e0' ; trunk 1 4
//! ```
//!
//! Each face word lists the edges met along the face walk. An edge symbol
//! appears once plain and once inverted (`x'`, `x^-1` or `x⁻¹`). Corner `i`
//! of a word is the corner where edge `i` starts; the trunk joins corners
//! `i` and `j`, which must be antipodal. Lines starting with `#` are comments.
//!
//! PD text is a sequence of `X[a,b,c,d]` crossings and `Loop[]` tokens,
//! optionally wrapped in `PD[...]`. Tuples are counterclockwise from the
//! incoming under-segment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::butterfly::{ButterflyDiagram, ButterflyError, Trunk};
use crate::link::{LinkDiagram, LinkError};
use crate::planar_map::{MapError, PlanarMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("edge symbol `{symbol}` occurs {plain} time(s) plain and {inverted} time(s) inverted")]
    SymbolCount {
        symbol: String,
        plain: usize,
        inverted: usize,
    },
    #[error("trunk anchors on face {face} are not antipodal")]
    AnchorNotAntipodal { face: usize },
    #[error("faces do not glue to a sphere (V - E + F = {euler})")]
    NotSphere { euler: i64 },
    #[error(transparent)]
    Butterfly(ButterflyError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

impl From<ButterflyError> for CodecError {
    fn from(e: ButterflyError) -> Self {
        match e {
            ButterflyError::AnchorNotAntipodal { face } => CodecError::AnchorNotAntipodal { face },
            ButterflyError::Map(MapError::NotSphere { v, e, f }) => CodecError::NotSphere {
                euler: v as i64 - e as i64 + f as i64,
            },
            other => CodecError::Butterfly(other),
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> CodecError {
    CodecError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct FaceRecord {
    symbols: Vec<(String, bool)>,
    anchors: (usize, usize),
}

fn parse_symbol(tok: &str) -> (String, bool) {
    for suffix in ["^-1", "⁻¹", "'"] {
        if let Some(base) = tok.strip_suffix(suffix) {
            return (base.to_string(), true);
        }
    }
    (tok.to_string(), false)
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

fn parse_face_line(line: &str, lineno: usize) -> Result<FaceRecord, CodecError> {
    let col = |sub: &str| sub.as_ptr() as usize - line.as_ptr() as usize + 1;
    let rest = line
        .strip_prefix("face")
        .ok_or_else(|| syntax(lineno, 1, "expected `face`"))?;
    let colon = rest
        .find(':')
        .ok_or_else(|| syntax(lineno, col(rest), "expected `:` after face id"))?;
    let id = rest[..colon].trim();
    if id.parse::<usize>().is_err() {
        return Err(syntax(lineno, col(rest), "face id must be a number"));
    }
    let body = &rest[colon + 1..];
    let semi = body
        .find(';')
        .ok_or_else(|| syntax(lineno, col(body), "expected `; trunk i j`"))?;
    let word = &body[..semi];
    let trunk = &body[semi + 1..];
    let mut symbols = Vec::new();
    for tok in word.split_whitespace() {
        let (name, inv) = parse_symbol(tok);
        if !valid_name(&name) {
            return Err(syntax(lineno, col(tok), format!("bad edge symbol `{tok}`")));
        }
        symbols.push((name, inv));
    }
    if symbols.is_empty() {
        return Err(syntax(lineno, col(word), "empty face word"));
    }
    let parts: Vec<&str> = trunk.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "trunk" {
        return Err(syntax(lineno, col(trunk), "expected `trunk i j`"));
    }
    let mut anchor = [0usize; 2];
    for (k, p) in parts[1..].iter().enumerate() {
        anchor[k] = p
            .parse()
            .ok()
            .filter(|&a: &usize| a < symbols.len())
            .ok_or_else(|| syntax(lineno, col(p), format!("bad corner index `{p}`")))?;
    }
    Ok(FaceRecord {
        symbols,
        anchors: (anchor[0], anchor[1]),
    })
}

/// Parses and validates a `.btf` file.
pub fn parse_btf(text: &str) -> Result<ButterflyDiagram, CodecError> {
    let mut faces = Vec::new();
    let mut seen_header = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_header {
            let offset = raw.len() - raw.trim_start().len() + 1;
            if line != "btf 1" {
                return Err(syntax(lineno, offset, "expected header `btf 1`"));
            }
            seen_header = true;
            continue;
        }
        let offset = raw.len() - raw.trim_start().len();
        let face = parse_face_line(line, lineno).map_err(|e| match e {
            CodecError::Syntax {
                line,
                column,
                message,
            } => syntax(line, column + offset, message),
            other => other,
        })?;
        faces.push(face);
    }
    if !seen_header {
        return Err(syntax(1, 1, "expected header `btf 1`"));
    }
    if faces.is_empty() {
        return Err(syntax(1, 1, "no faces"));
    }

    // edge k: plain occurrence is dart 2k, inverted occurrence is dart 2k + 1
    let mut edges: BTreeMap<&str, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    let mut dart_of = Vec::new();
    let mut next = 0usize;
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for f in &faces {
        let mut ds = Vec::new();
        for (name, inv) in &f.symbols {
            let k = *index.entry(name.as_str()).or_insert_with(|| {
                next += 1;
                next - 1
            });
            let entry = edges.entry(name.as_str()).or_default();
            if *inv {
                entry.1.push(k);
            } else {
                entry.0.push(k);
            }
            ds.push(2 * k + usize::from(*inv));
        }
        dart_of.push(ds);
    }
    for (name, (plain, inverted)) in &edges {
        if plain.len() != 1 || inverted.len() != 1 {
            return Err(CodecError::SymbolCount {
                symbol: name.to_string(),
                plain: plain.len(),
                inverted: inverted.len(),
            });
        }
    }
    let n = 2 * next;
    let alpha: Vec<usize> = (0..n).map(|d| d ^ 1).collect();
    let mut phi = vec![0; n];
    for ds in &dart_of {
        for i in 0..ds.len() {
            phi[ds[i]] = ds[(i + 1) % ds.len()];
        }
    }
    for (fi, f) in faces.iter().enumerate() {
        let len = f.symbols.len();
        if len % 2 != 0 || (f.anchors.1 + len - f.anchors.0) % len != len / 2 {
            return Err(CodecError::AnchorNotAntipodal { face: fi });
        }
    }
    let map = PlanarMap::from_faces(alpha, phi).map_err(ButterflyError::from)?;
    let trunks = faces
        .iter()
        .zip(&dart_of)
        .map(|(f, ds)| Trunk {
            c: ds[f.anchors.0],
            d: ds[f.anchors.1],
        })
        .collect();
    Ok(ButterflyDiagram::new(map, trunks)?)
}

/// Emits a `.btf` file; each face word starts at the trunk's `c` corner.
pub fn emit_btf(b: &ButterflyDiagram) -> String {
    let map = b.map();
    let mut out = String::from("btf 1\n");
    for (i, t) in b.trunks().iter().enumerate() {
        let walk = map.walk_from(t.c);
        let word: Vec<String> = walk
            .iter()
            .map(|&d| {
                let e = map.edge(d);
                if d < map.alpha(d) {
                    format!("e{e}")
                } else {
                    format!("e{e}'")
                }
            })
            .collect();
        let _ = writeln!(out, "face {i}: {} ; trunk 0 {}", word.join(" "), walk.len() / 2);
    }
    out
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn location(&self) -> (usize, usize) {
        let before = &self.text[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn error(&self, message: impl Into<String>) -> CodecError {
        let (line, column) = self.location();
        syntax(line, column, message)
    }

    fn skip(&mut self) {
        loop {
            let rest = &self.text[self.pos..];
            let trimmed = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') {
                self.pos += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip();
        self.pos == self.text.len()
    }

    fn integer(&mut self) -> Result<i64, CodecError> {
        self.skip();
        let rest = &self.text[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
            .count();
        let value = rest[..len]
            .parse()
            .map_err(|_| self.error("expected an integer"))?;
        self.pos += len;
        Ok(value)
    }
}

/// Parses PD text into a validated diagram.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, CodecError> {
    let mut sc = Scanner { text, pos: 0 };
    let wrapped = sc.eat("PD[");
    let mut tuples = Vec::new();
    let mut loops = 0;
    loop {
        if wrapped && sc.eat("]") {
            if !sc.at_end() {
                return Err(sc.error("trailing input after `]`"));
            }
            break;
        }
        if !wrapped && sc.at_end() {
            break;
        }
        if sc.eat("Loop[]") {
            loops += 1;
        } else if sc.eat("X[") {
            let mut t = [0i64; 4];
            for slot in t.iter_mut() {
                *slot = sc.integer()?;
            }
            if !sc.eat("]") {
                return Err(sc.error("expected `]` closing the crossing"));
            }
            tuples.push(t);
        } else {
            return Err(sc.error("expected `X[`, `Loop[]` or end of input"));
        }
    }
    Ok(LinkDiagram::from_pd(&tuples, loops)?)
}

/// Emits PD text with 1-based segment labels.
pub fn emit_pd(d: &LinkDiagram) -> String {
    let mut items: Vec<String> = d
        .to_pd()
        .iter()
        .map(|t| format!("X[{},{},{},{}]", t[0] + 1, t[1] + 1, t[2] + 1, t[3] + 1))
        .collect();
    items.extend((0..d.loops()).map(|_| "Loop[]".to_string()));
    format!("PD[{}]", items.join(", "))
}

/// One line per component: `O<k><sign>` / `U<k><sign>` passages in order,
/// with 1-based crossing numbers. Crossing-free components print `unknot`.
pub fn emit_gauss(d: &LinkDiagram) -> String {
    let mut out = String::new();
    for range in d.components() {
        let passages: Vec<String> = range
            .clone()
            .map(|s| {
                let (x, slot) = d.head(s);
                let level = if slot == 0 { 'U' } else { 'O' };
                let sign = if d.sign(x) > 0 { '+' } else { '-' };
                format!("{level}{}{sign}", x + 1)
            })
            .collect();
        let _ = writeln!(out, "{}", passages.join(" "));
    }
    for _ in 0..d.loops() {
        out.push_str("unknot\n");
    }
    out
}
