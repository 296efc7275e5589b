//! Exact parameter-side calculus over Q_p: square classes and Hilbert
//! symbols, Weil–Deligne representations, epsilon factors, component groups,
//! branching recipes and theta-correspondence maps.

pub mod corpus;
pub mod dsl;
pub mod error;
pub mod exact;
pub mod exec;
pub mod f2;
pub mod json;
pub mod lfactors;
pub mod localfield;
pub mod packets;
pub mod sweep;
pub mod thetaggp;
pub mod wdalg;

pub use error::{Error, Result};
pub use exact::ExactNumber;
pub use localfield::{PAdicField, QuadChar, Sign, SquareClass};
pub use wdalg::{GroupKind, Rational, WdIrred, WdRep};
