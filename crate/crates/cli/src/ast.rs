//! Syntax tree of a check script and its canonical printer.
//!
//! Printing a script and parsing the result gives back an equal tree. Spans
//! are carried for diagnostics only and never take part in equality.

use std::fmt;

use weil_core::Expr;

/// 1-based source position. All spans compare equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Ident {
            name: name.into(),
            span: Span::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Obj { name: Ident, value: ObjExpr, span: Span },
    Map { name: Ident, def: MapDef, span: Span },
    Check { check: Check, span: Span },
}

impl Statement {
    pub fn span(&self) -> Span {
        match self {
            Statement::Obj { span, .. } | Statement::Map { span, .. } | Statement::Check { span, .. } => *span,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjExpr {
    /// `D`, the object of square-zero infinitesimals.
    D(Span),
    /// `D^n { (i,j) ... }`; the braces are omitted when there are no sets.
    Cube { n: usize, forbidden: Vec<Vec<usize>>, span: Span },
    /// `D(n)`.
    FirstOrder { n: usize, span: Span },
    Named(Ident),
    /// `A (+) B (+) ...`, at least two summands, none of them a sum.
    Sum(Vec<ObjExpr>),
}

impl ObjExpr {
    pub fn span(&self) -> Span {
        match self {
            ObjExpr::D(span) | ObjExpr::Cube { span, .. } | ObjExpr::FirstOrder { span, .. } => *span,
            ObjExpr::Named(id) => id.span,
            ObjExpr::Sum(parts) => parts[0].span(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub expr: Expr,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapDef {
    /// `: S -> T = (p1, ..., pk)`
    Explicit {
        source: ObjExpr,
        target: ObjExpr,
        components: Vec<Component>,
    },
    /// `= f . g . h`, meaning `f ∘ g ∘ h`. A single name is an alias.
    Compose(Vec<Ident>),
    /// `= f (+) g (+) ...`
    Sum(Vec<Ident>),
}

/// An arrow of a limit diagram: the map `name` read contravariantly, from
/// node `from` to node `to` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowRef {
    pub map: Ident,
    pub ends: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// Two legs and one or two arrows into a common node.
    Pullback { apex: ObjExpr, legs: Vec<Ident>, arrows: Vec<ArrowRef> },
    /// Legs cover nodes `1..=legs.len()`; every arrow carries its endpoints.
    Limit { apex: ObjExpr, legs: Vec<Ident>, arrows: Vec<ArrowRef> },
    /// `lhs[0] . lhs[1] . ... == rhs`
    Compose { lhs: Vec<Ident>, rhs: Ident },
    ZeroSum { witness: Ident, parts: Vec<Ident> },
}

impl Check {
    pub fn kind(&self) -> &'static str {
        match self {
            Check::Pullback { .. } => "pullback",
            Check::Limit { .. } => "limit",
            Check::Compose { .. } => "compose",
            Check::ZeroSum { .. } => "zero-sum",
        }
    }
}

struct Joined<'a, T>(&'a [T], &'static str);

impl<T: fmt::Display> fmt::Display for Joined<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(self.1)?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjExpr::D(_) => f.write_str("D"),
            ObjExpr::Cube { n, forbidden, .. } => {
                write!(f, "D^{n}")?;
                if !forbidden.is_empty() {
                    f.write_str(" {")?;
                    for set in forbidden {
                        write!(f, " ({})", Joined(set, ","))?;
                    }
                    f.write_str(" }")?;
                }
                Ok(())
            }
            ObjExpr::FirstOrder { n, .. } => write!(f, "D({n})"),
            ObjExpr::Named(id) => write!(f, "{id}"),
            ObjExpr::Sum(parts) => write!(f, "{}", Joined(parts, " (+) ")),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

impl fmt::Display for ArrowRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ends {
            None => write!(f, "{}", self.map),
            Some((a, b)) => write!(f, "{} : {a} -> {b}", self.map),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Pullback { apex, legs, arrows } | Check::Limit { apex, legs, arrows } => write!(
                f,
                "check {} {{ apex = {apex}; legs = [{}]; arrows = [{}] }}",
                self.kind(),
                Joined(legs, ", "),
                Joined(arrows, ", ")
            ),
            Check::Compose { lhs, rhs } => write!(f, "check compose {} == {rhs}", Joined(lhs, " . ")),
            Check::ZeroSum { witness, parts } => {
                write!(f, "check zero-sum {{ witness = {witness}; parts = [{}] }}", Joined(parts, ", "))
            }
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Obj { name, value, .. } => write!(f, "obj {name} = {value}"),
            Statement::Map { name, def, .. } => match def {
                MapDef::Explicit {
                    source,
                    target,
                    components,
                } => write!(f, "map {name} : {source} -> {target} = ({})", Joined(components, ", ")),
                MapDef::Compose(parts) => write!(f, "map {name} = {}", Joined(parts, " . ")),
                MapDef::Sum(parts) => write!(f, "map {name} = {}", Joined(parts, " (+) ")),
            },
            Statement::Check { check, .. } => write!(f, "{check}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
