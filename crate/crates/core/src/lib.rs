//! Exact computations with first-order infinitesimal objects `D^n{p}` and
//! their Weil algebras: validity of maps, induced homomorphisms, and limit
//! checks for finite diagrams.

pub mod catalog;
pub mod element;
pub mod error;
pub mod expr;
pub mod harness;
pub mod hom;
pub mod limit;
pub mod linalg;
pub mod map;
pub mod object;
pub mod random;

pub use catalog::{build_catalog, Catalog};
pub use element::{int, Rational, WeilElement};
pub use error::{Error, Result};
pub use expr::{element_to_expr, parse_expr, parse_expr_at, Expr, ExprParseError};
pub use harness::{certify_limit, verify_all, CheckResult, Fault, HarnessConfig, Summary};
pub use hom::AlgebraHom;
pub use limit::{is_limit_cone, mediator, solve_apex, Arrow, Cone, Diagram, LimitReport, LimitSpace};
pub use linalg::{Echelon, Matrix, SolveFailure};
pub use map::{InfinitesimalMap, ValidationReport, Violation};
pub use object::{Monomial, SimplicialObject, MAX_ARITY};
