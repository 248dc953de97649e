//! `butterfly`: command-line front end.

mod render;

use std::io::{Read, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use butterfly::butterfly::make_rational_butterfly;
use butterfly::codecs::{emit_btf, emit_gauss, emit_pd, parse_btf, parse_pd};
use butterfly::convert::{bridge_decompose, butterfly_to_link, link_to_butterfly, preprocess_diagram};
use butterfly::moves::{eliminate_e_vertices, reduce_to_bridges};
use butterfly::verify::{fingerprint, fingerprints_equal, validate_butterfly, VerifyError};
use butterfly::{
    corpus, ButterflyDiagram, ButterflyError, CodecError, ConvertError, Fingerprint, LinkDiagram, MoveError,
    MoveRecord,
};
use clap::{Parser, Subcommand};
use render::{RenderError, RenderSpec, Target};
use thiserror::Error;

/// Environment variable naming the directory for relative output paths.
const OUT_DIR_VAR: &str = "BUTTERFLY_OUT_DIR";

#[derive(Parser)]
#[command(name = "butterfly", version, about = "Butterfly presentations of knots and links")]
struct Cli {
    /// Report errors as JSON on stderr and print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a butterfly and print its census and certificates.
    Validate { input: String },
    /// Read the link diagram off a butterfly (PD on stdout by default).
    ToLink {
        input: String,
        #[arg(long)]
        pd: Option<PathBuf>,
        #[arg(long)]
        gauss: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Build the butterfly of a link diagram.
    ToButterfly {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply trunk-reducing moves until only bridges remain.
    Reduce {
        input: String,
        /// JSON-lines file receiving one record per move.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand every E-vertex into a trunk.
    Expand {
        input: String,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The 2-butterfly of the rational link p/q.
    Rational {
        p: i64,
        q: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the bracket fingerprint of a diagram or butterfly.
    Invariant { input: String },
    /// Check that PD -> butterfly -> PD keeps the fingerprint.
    Roundtrip { input: String },
    /// Draw a butterfly or link diagram as SVG.
    Render {
        input: String,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, value_enum)]
        target: Option<Target>,
        #[arg(long)]
        outer_face: Option<usize>,
        #[arg(long, default_value_t = 400)]
        iterations: usize,
        #[arg(long, default_value_t = 480.0)]
        size: f64,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    CheckFailed(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Butterfly(#[from] ButterflyError),
    #[error(transparent)]
    Convert(#[from] ConvertError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Render(#[from] RenderError),
}

impl CliError {
    /// 1 check failed, 2 usage (clap), 3 I/O, 4 syntax, 5 invalid diagram,
    /// 6 move refused, 7 diagram too large for the invariant.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Io { .. } => 3,
            CliError::Codec(CodecError::Syntax { .. } | CodecError::SymbolCount { .. }) => 4,
            CliError::Codec(_) | CliError::Butterfly(_) | CliError::Convert(_) | CliError::Render(_) => 5,
            CliError::Move(_) => 6,
            CliError::Verify(_) => 7,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            1 => "check_failed",
            3 => "io",
            4 => "syntax",
            5 => "invalid_diagram",
            6 => "move",
            _ => "invariant",
        }
    }
}

fn io_err(path: impl AsRef<Path>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.as_ref().display().to_string();
    move |source| CliError::Io { path, source }
}

enum Input {
    Butterfly(Box<ButterflyDiagram>),
    Link(LinkDiagram),
}

/// Reads a file, `-` for stdin, or a built-in corpus entry by name.
fn read_text(input: &str) -> Result<(String, Option<&'static str>), CliError> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err("<stdin>"))?;
        return Ok((s, None));
    }
    let path = Path::new(input);
    if path.exists() {
        let ext = match path.extension().and_then(|e| e.to_str()) {
            Some("btf") => Some("btf"),
            Some("pd") => Some("pd"),
            _ => None,
        };
        return Ok((std::fs::read_to_string(path).map_err(io_err(path))?, ext));
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(input);
    if let Some((_, text)) = corpus::PD_CODES.iter().find(|(n, _)| *n == stem) {
        return Ok((text.to_string(), Some("pd")));
    }
    if let Some((_, text)) = corpus::BUTTERFLIES.iter().find(|(n, _)| *n == stem) {
        return Ok((text.to_string(), Some("btf")));
    }
    Err(io_err(path)(std::io::Error::new(std::io::ErrorKind::NotFound, "no such file or corpus entry")))
}

fn looks_like_btf(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("btf"))
}

fn read_input(input: &str) -> Result<Input, CliError> {
    let (text, ext) = read_text(input)?;
    let btf = ext.map_or_else(|| looks_like_btf(&text), |e| e == "btf");
    Ok(if btf {
        Input::Butterfly(Box::new(parse_btf(&text)?))
    } else {
        Input::Link(parse_pd(&text)?)
    })
}

fn read_butterfly(input: &str) -> Result<ButterflyDiagram, CliError> {
    match read_input(input)? {
        Input::Butterfly(b) => Ok(*b),
        Input::Link(d) => pd_to_butterfly(&d),
    }
}

fn read_link(input: &str) -> Result<LinkDiagram, CliError> {
    match read_input(input)? {
        Input::Butterfly(b) => Ok(butterfly_to_link(&b)?.link),
        Input::Link(d) => Ok(d),
    }
}

fn pd_to_butterfly(d: &LinkDiagram) -> Result<ButterflyDiagram, CliError> {
    let bd = bridge_decompose(&preprocess_diagram(d))?;
    Ok(link_to_butterfly(&bd)?)
}

fn out_path(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    let path = out_path(path);
    std::fs::write(&path, text).map_err(io_err(&path))
}

/// Writes to `path` when given, else to stdout.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_out(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_trace(path: &Path, records: &[MoveRecord]) -> Result<(), CliError> {
    let mut text = String::new();
    for r in records {
        text.push_str(&serde_json::to_string(r).expect("move records serialize"));
        text.push('\n');
    }
    write_out(path, &text)
}

fn print_fingerprint(f: &Fingerprint, json: bool) {
    if json {
        let polys: Vec<String> = f.polynomials.iter().map(ToString::to_string).collect();
        println!("{}", serde_json::json!({ "components": f.components, "polynomials": polys }));
    } else {
        println!("components: {}", f.components);
        for p in &f.polynomials {
            println!("{p}");
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let json = cli.json;
    match cli.command {
        Command::Validate { input } => {
            let b = read_butterfly(&input)?;
            let rep = validate_butterfly(&b);
            if json {
                println!("{}", serde_json::to_string(&rep).expect("reports serialize"));
            } else {
                println!("m: {}", rep.m);
                println!("vertices: A {}, E {}, B {}", rep.census[0], rep.census[1], rep.census[2]);
                if let Some(q) = rep.quotient {
                    println!(
                        "quotient: V* = {}, E* = {}, chi = {} ({})",
                        q.vertex_classes,
                        q.edge_classes,
                        q.euler_characteristic,
                        if q.is_sphere_like() { "ok" } else { "fail" }
                    );
                }
                if let Some(g) = &rep.gamma {
                    println!(
                        "gamma: {} paths, {} A-vertices ({})",
                        g.paths,
                        g.a_vertices,
                        if g.ok() { "ok" } else { "fail" }
                    );
                }
                for f in &rep.failures {
                    println!("failure: {f}");
                }
            }
            if !rep.valid {
                return Err(CliError::CheckFailed(format!("invalid butterfly: {}", rep.failures.join("; "))));
            }
            if !json {
                println!("valid");
            }
        }
        Command::ToLink { input, pd, gauss, svg } => {
            let b = read_butterfly(&input)?;
            let bp = butterfly_to_link(&b)?;
            eprintln!(
                "bridges: {}, crossings: {}, components: {}",
                bp.bridges,
                bp.link.num_crossings(),
                bp.link.num_components()
            );
            if let Some(p) = &pd {
                write_out(p, &emit_pd(&bp.link))?;
            }
            if gauss {
                print!("{}", emit_gauss(&bp.link));
            } else if pd.is_none() {
                print!("{}", emit_pd(&bp.link));
            }
            if let Some(p) = svg {
                let spec = RenderSpec {
                    target: Target::Link,
                    ..RenderSpec::default()
                };
                write_out(&p, &render::link_svg(&bp.link, &spec)?)?;
            }
        }
        Command::ToButterfly { input, out } => {
            let b = pd_to_butterfly(&read_link(&input)?)?;
            emit(out.as_deref(), &emit_btf(&b))?;
        }
        Command::Reduce { input, trace, out } => {
            let b = read_butterfly(&input)?;
            let (r, records) = reduce_to_bridges(&b)?;
            println!("m: {} → {}", b.m(), r.m());
            if let Some(t) = trace {
                write_trace(&t, &records)?;
            }
            if let Some(o) = out {
                write_out(&o, &emit_btf(&r))?;
            }
        }
        Command::Expand { input, trace, out } => {
            let b = read_butterfly(&input)?;
            let (r, records) = eliminate_e_vertices(&b)?;
            println!("m: {} → {}", b.m(), r.m());
            if let Some(t) = trace {
                write_trace(&t, &records)?;
            }
            if let Some(o) = out {
                write_out(&o, &emit_btf(&r))?;
            }
        }
        Command::Rational { p, q, out } => {
            let b = make_rational_butterfly(p, q)?;
            emit(out.as_deref(), &emit_btf(&b))?;
        }
        Command::Invariant { input } => {
            let d = read_link(&input)?;
            print_fingerprint(&fingerprint(&d)?, json);
        }
        Command::Roundtrip { input } => {
            let d = read_link(&input)?;
            let before = fingerprint(&d)?;
            let b = pd_to_butterfly(&d)?;
            let after = fingerprint(&butterfly_to_link(&b)?.link)?;
            let same = fingerprints_equal(&before, &after, false);
            if json {
                println!("{}", serde_json::json!({ "m": b.m(), "preserved": same }));
            } else {
                println!("m: {}", b.m());
                println!("fingerprint {}", if same { "preserved" } else { "changed" });
            }
            if !same {
                return Err(CliError::CheckFailed("fingerprint changed".to_string()));
            }
        }
        Command::Render {
            input,
            svg,
            target,
            outer_face,
            iterations,
            size,
        } => {
            let parsed = read_input(&input)?;
            let target = target.unwrap_or(match parsed {
                Input::Butterfly(_) => Target::Butterfly,
                Input::Link(_) => Target::Link,
            });
            let spec = RenderSpec {
                target,
                outer_face,
                iterations,
                size,
            };
            let text = match (target, parsed) {
                (Target::Link, Input::Link(d)) => render::link_svg(&d, &spec)?,
                (Target::Link, Input::Butterfly(b)) => render::link_svg(&butterfly_to_link(&b)?.link, &spec)?,
                (_, Input::Butterfly(b)) => render::butterfly_svg(&b, &spec)?,
                (_, Input::Link(d)) => render::butterfly_svg(&pd_to_butterfly(&d)?, &spec)?,
            };
            write_out(&svg, &text)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code();
            if json {
                eprintln!(
                    "{}",
                    serde_json::json!({ "error": e.kind(), "message": e.to_string(), "exit_code": code })
                );
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
