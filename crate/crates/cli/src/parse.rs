//! Recursive-descent parser for check scripts.
//!
//! ```text
//! script    := stmt*
//! stmt      := 'obj' NAME '=' objexpr
//!            | 'map' NAME ':' objexpr '->' objexpr '=' '(' poly (',' poly)* ')'
//!            | 'map' NAME '=' NAME ('.' NAME)*
//!            | 'map' NAME '=' NAME ('(+)' NAME)+
//!            | 'check' ('pullback' | 'limit') '{' field (';' field)* [';'] '}'
//!            | 'check' 'compose' NAME ('.' NAME)* '==' NAME
//!            | 'check' 'zero-sum' '{' 'witness' '=' NAME ';' 'parts' '=' names [';'] '}'
//! field     := 'apex' '=' objexpr | 'legs' '=' names | 'arrows' '=' '[' arrow (',' arrow)* ']'
//! arrow     := NAME [':' INT '->' INT]
//! names     := '[' NAME (',' NAME)* ']'
//! objexpr   := atom ('(+)' atom)*
//! atom      := 'D' '^' INT ['{' set* '}'] | 'D' '(' INT ')' | 'D' | NAME
//! set       := '(' INT (',' INT)+ ')' [',']
//! ```
//!
//! `poly` is the polynomial grammar of `weil_core::parse_expr`. `#` starts a
//! comment that runs to the end of the line.

use crate::ast::{ArrowRef, Check, Component, Ident, MapDef, ObjExpr, Script, Span, Statement};
use crate::error::ScriptError;

type PResult<T> = Result<T, ScriptError>;

pub fn parse_script(src: &str) -> PResult<Script> {
    let mut p = Parser::new(src);
    let mut statements = Vec::new();
    while !p.at_end() {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

/// Parses a lone object expression, as given to `weil dim`.
pub fn parse_object(src: &str) -> PResult<ObjExpr> {
    let mut p = Parser::new(src);
    let e = p.obj_expr()?;
    if !p.at_end() {
        return p.fail("unexpected input after object expression");
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn span_at(&self, pos: usize) -> Span {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        Span {
            line,
            col: self.src[line_start..pos].chars().count() + 1,
        }
    }

    fn span(&mut self) -> Span {
        self.skip();
        self.span_at(self.pos)
    }

    fn fail<T>(&mut self, message: impl Into<String>) -> PResult<T> {
        Err(ScriptError::Syntax {
            span: self.span(),
            message: message.into(),
        })
    }

    fn bytes(&self) -> &'a [u8] {
        self.src.as_bytes()
    }

    fn skip(&mut self) {
        let b = self.bytes();
        loop {
            while self.pos < b.len() && b[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < b.len() && b[self.pos] == b'#' {
                while self.pos < b.len() && b[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip();
        self.pos >= self.src.len()
    }

    fn looking_at(&mut self, tok: &str) -> bool {
        self.skip();
        self.src[self.pos..].starts_with(tok)
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.looking_at(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            let found = self.describe_next();
            self.fail(format!("expected `{tok}`, found {found}"))
        }
    }

    fn describe_next(&mut self) -> String {
        self.skip();
        match self.src[self.pos..].chars().next() {
            None => "end of input".into(),
            Some(c) => format!("`{c}`"),
        }
    }

    fn peek_word(&mut self) -> Option<&'a str> {
        self.skip();
        let b = self.bytes();
        if self.pos >= b.len() || !is_ident_start(b[self.pos]) {
            return None;
        }
        let mut end = self.pos + 1;
        while end < b.len() && (is_ident_char(b[end]) || b[end] == b'-' && end + 1 < b.len() && b[end + 1].is_ascii_alphabetic()) {
            end += 1;
        }
        Some(&self.src[self.pos..end])
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.peek_word() == Some(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> PResult<Ident> {
        self.skip();
        let span = self.span_at(self.pos);
        let b = self.bytes();
        if self.pos >= b.len() || !is_ident_start(b[self.pos]) {
            let found = self.describe_next();
            return self.fail(format!("expected a name, found {found}"));
        }
        let start = self.pos;
        while self.pos < b.len() && is_ident_char(b[self.pos]) {
            self.pos += 1;
        }
        Ok(Ident {
            name: self.src[start..self.pos].to_string(),
            span,
        })
    }

    /// A name that may be defined; `D` is reserved for the builtin objects.
    fn binder(&mut self) -> PResult<Ident> {
        let id = self.name()?;
        if id.name == "D" {
            return Err(ScriptError::Syntax {
                span: id.span,
                message: "`D` is reserved".into(),
            });
        }
        Ok(id)
    }

    fn int(&mut self) -> PResult<usize> {
        self.skip();
        let b = self.bytes();
        let start = self.pos;
        while self.pos < b.len() && b[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.describe_next();
            return self.fail(format!("expected an integer, found {found}"));
        }
        match self.src[start..self.pos].parse() {
            Ok(n) => Ok(n),
            Err(_) => Err(ScriptError::Syntax {
                span: self.span_at(start),
                message: "integer too large".into(),
            }),
        }
    }

    fn statement(&mut self) -> PResult<Statement> {
        let span = self.span();
        if self.keyword("obj") {
            let name = self.binder()?;
            self.expect("=")?;
            let value = self.obj_expr()?;
            Ok(Statement::Obj { name, value, span })
        } else if self.keyword("map") {
            let name = self.binder()?;
            let def = self.map_def()?;
            Ok(Statement::Map { name, def, span })
        } else if self.keyword("check") {
            let check = self.check()?;
            Ok(Statement::Check { check, span })
        } else {
            let found = self.describe_next();
            self.fail(format!("expected `obj`, `map` or `check`, found {found}"))
        }
    }

    fn obj_expr(&mut self) -> PResult<ObjExpr> {
        let mut parts = vec![self.obj_atom()?];
        while self.eat("(+)") {
            parts.push(self.obj_atom()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            ObjExpr::Sum(parts)
        })
    }

    fn obj_atom(&mut self) -> PResult<ObjExpr> {
        let id = self.name()?;
        if id.name != "D" {
            return Ok(ObjExpr::Named(id));
        }
        let span = id.span;
        if self.eat("^") {
            let n = self.int()?;
            let mut forbidden = Vec::new();
            if self.eat("{") {
                while !self.eat("}") {
                    forbidden.push(self.index_set()?);
                    self.eat(",");
                }
            }
            Ok(ObjExpr::Cube { n, forbidden, span })
        } else if !self.looking_at("(+)") && self.eat("(") {
            let n = self.int()?;
            self.expect(")")?;
            Ok(ObjExpr::FirstOrder { n, span })
        } else {
            Ok(ObjExpr::D(span))
        }
    }

    fn index_set(&mut self) -> PResult<Vec<usize>> {
        if !self.eat("(") {
            let found = self.describe_next();
            return self.fail(format!("expected `(` or `}}`, found {found}"));
        }
        let mut set = vec![self.int()?];
        while self.eat(",") {
            set.push(self.int()?);
        }
        self.expect(")")?;
        if set.len() < 2 {
            return self.fail("a forbidden set needs at least two indices");
        }
        Ok(set)
    }

    fn map_def(&mut self) -> PResult<MapDef> {
        if self.eat(":") {
            let source = self.obj_expr()?;
            self.expect("->")?;
            let target = self.obj_expr()?;
            self.expect("=")?;
            self.expect("(")?;
            let mut components = vec![self.component()?];
            while self.eat(",") {
                components.push(self.component()?);
            }
            self.expect(")")?;
            return Ok(MapDef::Explicit {
                source,
                target,
                components,
            });
        }
        self.expect("=")?;
        let mut names = vec![self.name()?];
        if self.looking_at("(+)") {
            while self.eat("(+)") {
                names.push(self.name()?);
            }
            if self.looking_at(".") {
                return self.fail("cannot mix `.` and `(+)` in one definition");
            }
            return Ok(MapDef::Sum(names));
        }
        while self.eat(".") {
            names.push(self.name()?);
        }
        if self.looking_at("(+)") {
            return self.fail("cannot mix `.` and `(+)` in one definition");
        }
        Ok(MapDef::Compose(names))
    }

    fn component(&mut self) -> PResult<Component> {
        let span = self.span();
        match weil_core::parse_expr_at(self.src, self.pos) {
            Ok((expr, end)) => {
                self.pos = end;
                Ok(Component { expr, span })
            }
            Err(e) => Err(ScriptError::Syntax {
                span: self.span_at(e.offset.min(self.src.len())),
                message: e.message,
            }),
        }
    }

    fn names(&mut self) -> PResult<Vec<Ident>> {
        self.expect("[")?;
        let mut out = vec![self.name()?];
        while self.eat(",") {
            out.push(self.name()?);
        }
        self.expect("]")?;
        Ok(out)
    }

    fn arrows(&mut self) -> PResult<Vec<ArrowRef>> {
        self.expect("[")?;
        let mut out = vec![self.arrow()?];
        while self.eat(",") {
            out.push(self.arrow()?);
        }
        self.expect("]")?;
        Ok(out)
    }

    fn arrow(&mut self) -> PResult<ArrowRef> {
        let map = self.name()?;
        let ends = if self.eat(":") {
            let a = self.int()?;
            self.expect("->")?;
            let b = self.int()?;
            Some((a, b))
        } else {
            None
        };
        Ok(ArrowRef { map, ends })
    }

    fn check(&mut self) -> PResult<Check> {
        let open = self.span();
        match self.peek_word() {
            Some(kind @ ("pullback" | "limit")) => {
                self.pos += kind.len();
                self.diagram_check(kind == "limit", open)
            }
            Some("compose") => {
                self.pos += "compose".len();
                let mut lhs = vec![self.name()?];
                while self.eat(".") {
                    lhs.push(self.name()?);
                }
                self.expect("==")?;
                let rhs = self.name()?;
                Ok(Check::Compose { lhs, rhs })
            }
            Some("zero-sum") => {
                self.pos += "zero-sum".len();
                self.expect("{")?;
                self.field_name("witness")?;
                let witness = self.name()?;
                self.expect(";")?;
                self.field_name("parts")?;
                let parts = self.names()?;
                self.eat(";");
                self.expect("}")?;
                Ok(Check::ZeroSum { witness, parts })
            }
            _ => {
                let found = self.describe_next();
                self.fail(format!("expected `pullback`, `limit`, `compose` or `zero-sum`, found {found}"))
            }
        }
    }

    fn field_name(&mut self, want: &str) -> PResult<()> {
        if !self.keyword(want) {
            let found = self.describe_next();
            return self.fail(format!("expected `{want}`, found {found}"));
        }
        self.expect("=")
    }

    fn diagram_check(&mut self, limit: bool, open: Span) -> PResult<Check> {
        self.expect("{")?;
        let (mut apex, mut legs, mut arrows) = (None, None, None);
        loop {
            if self.eat("}") {
                break;
            }
            let at = self.span();
            let field = self.name()?;
            self.expect("=")?;
            let dup = match field.name.as_str() {
                "apex" => apex.replace(self.obj_expr()?).is_some(),
                "legs" => legs.replace(self.names()?).is_some(),
                "arrows" => arrows.replace(self.arrows()?).is_some(),
                other => {
                    return Err(ScriptError::Syntax {
                        span: at,
                        message: format!("unknown field `{other}` (expected `apex`, `legs` or `arrows`)"),
                    })
                }
            };
            if dup {
                return Err(ScriptError::Syntax {
                    span: at,
                    message: format!("field `{}` given twice", field.name),
                });
            }
            if !self.eat(";") {
                self.expect("}")?;
                break;
            }
        }
        let missing = |what: &str| ScriptError::Syntax {
            span: open,
            message: format!("missing field `{what}`"),
        };
        let apex = apex.ok_or_else(|| missing("apex"))?;
        let legs = legs.ok_or_else(|| missing("legs"))?;
        let arrows = arrows.ok_or_else(|| missing("arrows"))?;
        let shape_error = |message: &str| ScriptError::Syntax {
            span: open,
            message: message.into(),
        };
        if limit {
            if arrows.iter().any(|a| a.ends.is_none()) {
                return Err(shape_error("every arrow of a limit needs endpoints, as in `f : 1 -> 4`"));
            }
            if arrows.iter().any(|a| matches!(a.ends, Some((0, _)) | Some((_, 0)))) {
                return Err(shape_error("node numbers start at 1"));
            }
            Ok(Check::Limit { apex, legs, arrows })
        } else {
            if legs.len() != 2 || !(1..=2).contains(&arrows.len()) {
                return Err(shape_error("a pullback has two legs and one or two arrows"));
            }
            if arrows.iter().any(|a| a.ends.is_some()) {
                return Err(shape_error("pullback arrows take no endpoints"));
            }
            Ok(Check::Pullback { apex, legs, arrows })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax_at(src: &str) -> (usize, usize) {
        match parse_script(src) {
            Err(ScriptError::Syntax { span, .. }) => (span.line, span.col),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn objects() {
        let s = parse_script("obj E = D^4 { (1,3) (2,3) (1,4) (2,4) (3,4) }\nobj C = D(2) (+) D (+) E").unwrap();
        assert_eq!(s.statements.len(), 2);
        let Statement::Obj { value: ObjExpr::Cube { n, forbidden, .. }, .. } = &s.statements[0] else {
            panic!()
        };
        assert_eq!(*n, 4);
        assert_eq!(forbidden.len(), 5);
        let Statement::Obj { value: ObjExpr::Sum(parts), .. } = &s.statements[1] else {
            panic!()
        };
        assert!(matches!(parts[..], [ObjExpr::FirstOrder { n: 2, .. }, ObjExpr::D(_), ObjExpr::Named(_)]));
    }

    #[test]
    fn maps_and_checks() {
        let src = "map psi : D^2 -> E3 = (d1, d2, d1*d2)  # comment\n\
                   map h = f (+) g\nmap k = f . g . h\n\
                   check pullback { apex = C; legs = [phi, psi]; arrows = [i] }\n\
                   check limit { legs = [a, b]; apex = D^2; arrows = [f : 1 -> 3, g : 2 -> 3]; }\n\
                   check compose f . g == h\n\
                   check zero-sum { witness = s; parts = [a, b, c] }";
        let s = parse_script(src).unwrap();
        assert_eq!(s.statements.len(), 7);
        assert_eq!(s.statements[3].span().line, 4);
    }

    #[test]
    fn positions_are_reported() {
        assert_eq!(syntax_at("obj E = D^4 {\n  (1,3) (2 3)\n}"), (2, 12));
        assert_eq!(syntax_at("map f : D -> D = (d1 + )"), (1, 24));
        assert_eq!(syntax_at("\n\n  frob"), (3, 3));
        assert_eq!(syntax_at("obj D = D^2"), (1, 5));
    }

    #[test]
    fn shape_rules() {
        assert!(parse_script("check limit { apex = A; legs = [a]; arrows = [f] }").is_err());
        assert!(parse_script("check pullback { apex = A; legs = [a]; arrows = [f] }").is_err());
        assert!(parse_script("check pullback { apex = A; legs = [a, b] }").is_err());
        assert!(parse_script("check pullback { apex = A; apex = A; legs = [a, b]; arrows = [f] }").is_err());
        assert!(parse_script("map h = f . g (+) k").is_err());
        assert!(parse_script("obj X = D^3 { (1) }").is_err());
    }

    #[test]
    fn lone_object() {
        assert!(matches!(parse_object("D^3 (+) D^3").unwrap(), ObjExpr::Sum(_)));
        assert!(parse_object("D^3 extra").is_err());
    }
}
