//! Butterfly presentations of knots and links.
//!
//! An m-butterfly is a planar graph `R` on the sphere with one trunk per
//! face; folding every face along its trunk identifies the boundary of a
//! 3-ball to the 3-sphere and carries the trunks onto a link. This crate
//! converts between butterflies and bridge diagrams, applies the
//! trunk-reducing move and its inverse, and checks every result against
//! independent certificates (a quotient Euler count and a Kauffman bracket
//! fingerprint).

pub mod butterfly;
pub mod codecs;
pub mod convert;
pub mod corpus;
pub mod gen;
pub mod laurent;
pub mod link;
pub mod moves;
pub mod planar_map;
pub mod verify;

pub use butterfly::{ButterflyDiagram, ButterflyError, Trunk, VertexKind};
pub use codecs::CodecError;
pub use convert::{BridgeDiagram, BridgePresentation, ConvertError};
pub use laurent::Laurent;
pub use link::{LinkDiagram, LinkError};
pub use moves::{MoveError, MoveKind, MoveRecord, TrunkEnd};
pub use planar_map::{Dart, MapError, PlanarMap};
pub use verify::Fingerprint;
