//! A small language for declaring infinitesimal objects and maps and checking
//! limit diagrams, composites and sum-to-zero identities between them, plus
//! the reporting used by the `weil` binary.
//!
//! ```text
//! obj C = D^3 { (1,3) (2,3) }
//! map phi : D^2 -> C = (d1, d2, 0)
//! map psi : D^2 -> C = (d1, d2, d1*d2)
//! map i   : D(2) -> D^2 = (d1, d2)
//! check pullback { apex = C; legs = [phi, psi]; arrows = [i] }
//! ```
//!
//! Maps are written covariantly between infinitesimal objects. Checks are
//! about the induced algebra homomorphisms, which run the other way: a leg
//! `phi : D^2 -> C` is the cone leg `W_C -> W_{D^2}`.

pub mod ast;
pub mod error;
pub mod parse;
pub mod report;
pub mod script;

pub use ast::Script;
pub use error::{exit, ScriptError};
pub use parse::{parse_object, parse_script};
pub use report::Report;
pub use script::{elaborate, run_script};
