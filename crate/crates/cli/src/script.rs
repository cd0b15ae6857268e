//! Resolves a parsed script into objects, maps and checks, then runs the checks.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use weil_core::{certify_limit, AlgebraHom, Arrow, CheckResult, Cone, Diagram, Error, InfinitesimalMap, SimplicialObject, WeilElement};

use crate::ast::{ArrowRef, Check, Ident, MapDef, ObjExpr, Script, Span, Statement};
use crate::error::ScriptError;

/// Everything a script defines, plus its checks in source order.
#[derive(Clone, Debug, Default)]
pub struct Program {
    pub objects: BTreeMap<String, SimplicialObject>,
    pub maps: BTreeMap<String, InfinitesimalMap>,
    pub checks: Vec<PlannedCheck>,
}

#[derive(Clone, Debug)]
pub struct PlannedCheck {
    pub id: String,
    pub span: Span,
    pub kind: Resolved,
}

#[derive(Clone, Debug)]
pub enum Resolved {
    Limit { diagram: Result<Diagram, String>, cone: Cone },
    Compose { lhs: InfinitesimalMap, rhs: InfinitesimalMap },
    ZeroSum { witness: InfinitesimalMap, parts: Vec<InfinitesimalMap> },
}

/// Resolves object expressions. `lookup` supplies named objects.
pub fn object_of(
    e: &ObjExpr,
    lookup: &dyn Fn(&str) -> Option<SimplicialObject>,
) -> Result<SimplicialObject, ScriptError> {
    let invalid = |span: Span, e: Error| match e {
        Error::IndexOutOfRange { .. } => ScriptError::ArityMismatch {
            span,
            message: e.to_string(),
        },
        _ => ScriptError::InvalidObject {
            span,
            message: e.to_string(),
        },
    };
    match e {
        ObjExpr::D(_) => Ok(SimplicialObject::d()),
        ObjExpr::Cube { n, forbidden, span } => SimplicialObject::new(*n, forbidden).map_err(|e| invalid(*span, e)),
        ObjExpr::FirstOrder { n, span } => SimplicialObject::first_order(*n).map_err(|e| invalid(*span, e)),
        ObjExpr::Named(id) => lookup(&id.name).ok_or_else(|| ScriptError::UnknownName {
            span: id.span,
            kind: "object",
            name: id.name.clone(),
        }),
        ObjExpr::Sum(parts) => {
            let objs = parts.iter().map(|p| object_of(p, lookup)).collect::<Result<Vec<_>, _>>()?;
            SimplicialObject::oplus_all(&objs).map_err(|err| invalid(e.span(), err))
        }
    }
}

impl Program {
    fn object(&self, e: &ObjExpr) -> Result<SimplicialObject, ScriptError> {
        object_of(e, &|name| self.objects.get(name).cloned())
    }

    fn map(&self, id: &Ident) -> Result<&InfinitesimalMap, ScriptError> {
        self.maps.get(&id.name).ok_or_else(|| ScriptError::UnknownName {
            span: id.span,
            kind: "map",
            name: id.name.clone(),
        })
    }

    fn hom(&self, id: &Ident) -> Result<AlgebraHom, ScriptError> {
        AlgebraHom::induced(self.map(id)?).map_err(|e| type_error(id.span, e))
    }

    fn define(&mut self, name: &Ident) -> Result<(), ScriptError> {
        if self.objects.contains_key(&name.name) || self.maps.contains_key(&name.name) {
            return Err(ScriptError::Redefinition {
                span: name.span,
                name: name.name.clone(),
            });
        }
        Ok(())
    }

    fn compose(&self, names: &[Ident]) -> Result<InfinitesimalMap, ScriptError> {
        let mut acc = self.map(names.last().expect("nonempty"))?.clone();
        for id in names.iter().rev().skip(1) {
            acc = InfinitesimalMap::compose(self.map(id)?, &acc).map_err(|e| type_error(id.span, e))?;
        }
        Ok(acc)
    }

    fn map_def(&self, name: &Ident, def: &MapDef) -> Result<InfinitesimalMap, ScriptError> {
        match def {
            MapDef::Explicit {
                source,
                target,
                components,
            } => {
                let (s, t) = (self.object(source)?, self.object(target)?);
                if components.len() != t.arity() {
                    return Err(ScriptError::ArityMismatch {
                        span: name.span,
                        message: format!("`{}` has {} components but {t} has arity {}", name.name, components.len(), t.arity()),
                    });
                }
                let mut comps = Vec::with_capacity(components.len());
                for c in components {
                    if c.expr.max_var() > s.arity() {
                        return Err(ScriptError::ArityMismatch {
                            span: c.span,
                            message: format!("d{} used but the source {s} has arity {}", c.expr.max_var(), s.arity()),
                        });
                    }
                    comps.push(c.expr.eval(&s).map_err(|e| type_error(c.span, e))?);
                }
                let invalid = |message: String| ScriptError::InvalidMap {
                    span: name.span,
                    name: name.name.clone(),
                    message,
                };
                let m = InfinitesimalMap::new(s, t, comps).map_err(|e| invalid(e.to_string()))?;
                let report = m.validate().map_err(|e| invalid(e.to_string()))?;
                if !report.is_ok() {
                    return Err(invalid(report.to_string()));
                }
                Ok(m)
            }
            MapDef::Compose(names) => self.compose(names),
            MapDef::Sum(names) => {
                let maps = names.iter().map(|id| self.map(id).cloned()).collect::<Result<Vec<_>, _>>()?;
                InfinitesimalMap::oplus(&maps).map_err(|e| type_error(name.span, e))
            }
        }
    }

    fn diagram(&self, legs: &[Ident], arrows: &[ArrowRef], pullback: bool) -> Result<Result<Diagram, String>, ScriptError> {
        let arrow_homs = arrows.iter().map(|a| self.hom(&a.map)).collect::<Result<Vec<_>, _>>()?;
        if pullback {
            let (l, r) = match &arrow_homs[..] {
                [a] => (a.clone(), a.clone()),
                [a, b] => (a.clone(), b.clone()),
                _ => unreachable!("parser admits one or two arrows"),
            };
            return Ok(Diagram::cospan(l, r).map_err(|e| e.to_string()));
        }
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| a.ends.expect("parser requires endpoints")).collect();
        let n = ends.iter().flat_map(|&(a, b)| [a, b]).chain([legs.len()]).max().unwrap_or(0);
        let mut nodes: Vec<Option<SimplicialObject>> = vec![None; n];
        for (k, id) in legs.iter().enumerate() {
            nodes[k] = Some(self.map(id)?.source().clone());
        }
        for (h, &(a, b)) in arrow_homs.iter().zip(&ends) {
            nodes[a - 1].get_or_insert_with(|| h.source().clone());
            nodes[b - 1].get_or_insert_with(|| h.target().clone());
        }
        let Some(nodes) = nodes.into_iter().collect::<Option<Vec<_>>>() else {
            return Ok(Err("some node has no leg or arrow".into()));
        };
        let arrows = arrow_homs
            .into_iter()
            .zip(ends)
            .map(|(h, (a, b))| Arrow::new(a - 1, b - 1, h))
            .collect();
        Ok(Diagram::new(nodes, arrows).map_err(|e| e.to_string()))
    }

    fn check(&self, check: &Check) -> Result<Resolved, ScriptError> {
        Ok(match check {
            Check::Pullback { apex, legs, arrows } | Check::Limit { apex, legs, arrows } => {
                let pullback = matches!(check, Check::Pullback { .. });
                let apex = self.object(apex)?;
                let diagram = self.diagram(legs, arrows, pullback)?;
                let mut cone_legs = legs.iter().map(|l| self.hom(l).map(Some)).collect::<Result<Vec<_>, _>>()?;
                if let Ok(d) = &diagram {
                    cone_legs.resize(d.nodes().len().max(cone_legs.len()), None);
                }
                Resolved::Limit {
                    diagram,
                    cone: Cone::new(apex, cone_legs),
                }
            }
            Check::Compose { lhs, rhs } => Resolved::Compose {
                lhs: self.compose(lhs)?,
                rhs: self.map(rhs)?.clone(),
            },
            Check::ZeroSum { witness, parts } => Resolved::ZeroSum {
                witness: self.map(witness)?.clone(),
                parts: parts.iter().map(|p| self.map(p).cloned()).collect::<Result<_, _>>()?,
            },
        })
    }
}

fn type_error(span: Span, e: Error) -> ScriptError {
    ScriptError::TypeMismatch {
        span,
        message: e.to_string(),
    }
}

/// Resolves names, builds objects and validates maps. Stops at the first error.
pub fn elaborate(script: &Script) -> Result<Program, ScriptError> {
    let mut p = Program::default();
    for st in &script.statements {
        match st {
            Statement::Obj { name, value, .. } => {
                p.define(name)?;
                let o = p.object(value)?;
                p.objects.insert(name.name.clone(), o);
            }
            Statement::Map { name, def, .. } => {
                p.define(name)?;
                let m = p.map_def(name, def)?;
                p.maps.insert(name.name.clone(), m);
            }
            Statement::Check { check, span } => {
                let kind = p.check(check)?;
                let id = format!("script/{:03}-{}", p.checks.len() + 1, check.kind());
                p.checks.push(PlannedCheck { id, span: *span, kind });
            }
        }
    }
    Ok(p)
}

fn maps_equal(lhs: &InfinitesimalMap, rhs: &InfinitesimalMap) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{lhs} differs from {rhs}"))
    }
}

fn zero_sum(witness: &InfinitesimalMap, parts: &[InfinitesimalMap]) -> Result<(), String> {
    let report = witness.validate().map_err(|e| e.to_string())?;
    if !report.is_ok() {
        return Err(format!("witness is not valid: {report}"));
    }
    let k = parts.len();
    let axes = SimplicialObject::first_order(k).map_err(|e| e.to_string())?;
    if witness.source() != &axes {
        return Err(format!("witness source is {}, expected {axes}", witness.source()));
    }
    let d = SimplicialObject::d();
    let x = WeilElement::var(&d, 1).map_err(|e| e.to_string())?;
    let zero = WeilElement::zero(&d);
    for (i, part) in parts.iter().enumerate() {
        let comps = (0..k).map(|j| if j == i { x.clone() } else { zero.clone() }).collect();
        let axis = InfinitesimalMap::new(d.clone(), axes.clone(), comps).map_err(|e| e.to_string())?;
        let lhs = InfinitesimalMap::compose(witness, &axis).map_err(|e| e.to_string())?;
        maps_equal(&lhs, part).map_err(|e| format!("axis {}: {e}", i + 1))?;
    }
    let diag = InfinitesimalMap::new(d.clone(), axes, vec![x; k]).map_err(|e| e.to_string())?;
    let lhs = InfinitesimalMap::compose(witness, &diag).map_err(|e| e.to_string())?;
    maps_equal(&lhs, &InfinitesimalMap::zero(&d, witness.target())).map_err(|e| format!("diagonal: {e}"))
}

fn run_one(c: &PlannedCheck) -> CheckResult {
    let start = Instant::now();
    let outcome = match &c.kind {
        Resolved::Limit { diagram, cone } => diagram.clone().and_then(|d| certify_limit(&d, cone)),
        Resolved::Compose { lhs, rhs } => maps_equal(lhs, rhs),
        Resolved::ZeroSum { witness, parts } => zero_sum(witness, parts),
    };
    CheckResult {
        id: c.id.clone(),
        location: format!("line {}", c.span.line),
        passed: outcome.is_ok(),
        diagnostic: outcome.err(),
        elapsed: start.elapsed(),
    }
}

/// Runs every check; the result order is the source order either way.
pub fn run_checks(p: &Program, parallel: bool) -> Vec<CheckResult> {
    if parallel {
        p.checks.par_iter().map(run_one).collect()
    } else {
        p.checks.iter().map(run_one).collect()
    }
}

/// Parses, elaborates and runs `src`.
pub fn run_script(src: &str, parallel: bool) -> Result<Vec<CheckResult>, ScriptError> {
    let script = crate::parse::parse_script(src)?;
    let program = elaborate(&script)?;
    Ok(run_checks(&program, parallel))
}
