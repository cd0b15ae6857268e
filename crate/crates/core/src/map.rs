//! Polynomial maps between simplicial objects.

use std::fmt;

use num_traits::Zero;

use crate::element::WeilElement;
use crate::error::{Error, Result};
use crate::expr::{element_to_expr, parse_expr};
use crate::object::SimplicialObject;

/// A map `source -> target` given by one polynomial in `W_source` per target
/// coordinate.
///
/// Construction only checks shapes. Whether the components actually land in
/// the target is decided by [`validate`](Self::validate).
#[derive(Clone, PartialEq, Eq)]
pub struct InfinitesimalMap {
    source: SimplicialObject,
    target: SimplicialObject,
    components: Vec<WeilElement>,
}

/// A relation of the target that the components fail to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `c_j * c_j` is nonzero; `component` is 1-based.
    NotSquareZero { component: usize, square: WeilElement },
    /// The product over a forbidden set of the target is nonzero.
    ForbiddenProduct { set: Vec<usize>, product: WeilElement },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquareZero { component, square } => {
                write!(f, "component {component} squared is {square}, not 0")
            }
            Violation::ForbiddenProduct { set, product } => {
                let idx: Vec<String> = set.iter().map(usize::to_string).collect();
                write!(f, "product over forbidden set ({}) is {product}, not 0", idx.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl InfinitesimalMap {
    pub fn new(
        source: SimplicialObject,
        target: SimplicialObject,
        components: Vec<WeilElement>,
    ) -> Result<Self> {
        if components.len() != target.arity() {
            return Err(Error::ArityMismatch {
                target: target.to_string(),
                expected: target.arity(),
                found: components.len(),
            });
        }
        if let Some(c) = components.iter().find(|c| c.parent() != &source) {
            return Err(Error::ObjectMismatch {
                expected: source.to_string(),
                found: c.parent().to_string(),
            });
        }
        Ok(InfinitesimalMap {
            source,
            target,
            components,
        })
    }

    /// Builds a map from component polynomials written over `d1..dn`,
    /// e.g. `["d1", "d2", "d1*d2"]`.
    pub fn parse(source: &SimplicialObject, target: &SimplicialObject, components: &[&str]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|s| {
                parse_expr(s)
                    .map_err(|e| Error::InvalidMap(format!("cannot parse `{s}`: {e}")))?
                    .eval(source)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source.clone(), target.clone(), comps)
    }

    pub fn identity(obj: &SimplicialObject) -> Self {
        let comps = (1..=obj.arity())
            .map(|i| WeilElement::var(obj, i).expect("index within arity"))
            .collect();
        InfinitesimalMap {
            source: obj.clone(),
            target: obj.clone(),
            components: comps,
        }
    }

    /// The constant map onto the base point.
    pub fn zero(source: &SimplicialObject, target: &SimplicialObject) -> Self {
        InfinitesimalMap {
            source: source.clone(),
            target: target.clone(),
            components: vec![WeilElement::zero(source); target.arity()],
        }
    }

    pub fn source(&self) -> &SimplicialObject {
        &self.source
    }

    pub fn target(&self) -> &SimplicialObject {
        &self.target
    }

    pub fn components(&self) -> &[WeilElement] {
        &self.components
    }

    /// The same components read as a map into another object of equal arity.
    pub fn with_target(&self, target: &SimplicialObject) -> Result<Self> {
        Self::new(self.source.clone(), target.clone(), self.components.clone())
    }

    /// Checks that every component squares to zero and that the product over
    /// every forbidden set of the target vanishes in `W_source`.
    pub fn validate(&self) -> Result<ValidationReport> {
        if let Some(k) = self.components.iter().position(|c| !c.constant_term().is_zero()) {
            return Err(Error::NonzeroConstantTerm { component: k + 1 });
        }
        let mut report = ValidationReport::default();
        for (k, c) in self.components.iter().enumerate() {
            let square = c.mul(c)?;
            if !square.is_zero() {
                report.violations.push(Violation::NotSquareZero {
                    component: k + 1,
                    square,
                });
            }
        }
        for set in self.target.forbidden() {
            let factors: Vec<&WeilElement> = set.iter().map(|j| &self.components[j - 1]).collect();
            let product = WeilElement::product(&self.source, factors)?;
            if !product.is_zero() {
                report.violations.push(Violation::ForbiddenProduct {
                    set: set.indices(),
                    product,
                });
            }
        }
        Ok(report)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().map(|r| r.is_ok()).unwrap_or(false)
    }

    /// Errors unless [`validate`](Self::validate) reports no violations.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate()?;
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidMap(format!("{self}: {report}")))
        }
    }

    /// Substitutes the components of `self` into those of `next`, giving
    /// `next ∘ self : self.source -> next.target`.
    pub fn then(&self, next: &InfinitesimalMap) -> Result<InfinitesimalMap> {
        if self.target != next.source {
            return Err(Error::ObjectMismatch {
                expected: next.source.to_string(),
                found: self.target.to_string(),
            });
        }
        self.ensure_valid()?;
        next.ensure_valid()?;
        let comps = next
            .components
            .iter()
            .map(|g| self.substitute(g))
            .collect::<Result<Vec<_>>>()?;
        InfinitesimalMap::new(self.source.clone(), next.target.clone(), comps)
    }

    /// `g ∘ f` in the usual right-to-left notation; `f` is applied first.
    pub fn compose(g: &InfinitesimalMap, f: &InfinitesimalMap) -> Result<InfinitesimalMap> {
        f.then(g)
    }

    /// Evaluates `g ∈ W_target` at the components: `X_j ↦ c_j`.
    pub(crate) fn substitute(&self, g: &WeilElement) -> Result<WeilElement> {
        let mut out = WeilElement::zero(&self.source);
        for (m, c) in g.terms() {
            let factors: Vec<&WeilElement> = m.iter().map(|j| &self.components[j - 1]).collect();
            let image = WeilElement::product(&self.source, factors)?;
            out = out.add(&image.scale(c))?;
        }
        Ok(out)
    }

    /// The unique map out of `⊕ sources` restricting to each `maps[i]` on
    /// its block. All maps must share a target.
    pub fn oplus(maps: &[InfinitesimalMap]) -> Result<InfinitesimalMap> {
        let (first, _) = maps.split_first().ok_or(Error::Empty)?;
        for m in maps {
            if m.target != first.target {
                return Err(Error::TargetMismatch {
                    first: first.target.to_string(),
                    other: m.target.to_string(),
                });
            }
            m.ensure_valid()?;
        }
        let sources: Vec<SimplicialObject> = maps.iter().map(|m| m.source.clone()).collect();
        let source = SimplicialObject::oplus_all(&sources)?;
        let mut comps = vec![WeilElement::zero(&source); first.target.arity()];
        let mut offset = 0;
        for m in maps {
            for (acc, c) in comps.iter_mut().zip(&m.components) {
                *acc = acc.add(&c.shifted_into(&source, offset)?)?;
            }
            offset += m.source.arity();
        }
        InfinitesimalMap::new(source, first.target.clone(), comps)
    }

    /// Inclusion of block `index` (1-based) into `⊕ objects`.
    pub fn block_inclusion(objects: &[SimplicialObject], index: usize) -> Result<InfinitesimalMap> {
        if index == 0 || index > objects.len() {
            return Err(Error::BlockOutOfRange {
                index,
                count: objects.len(),
            });
        }
        let block = &objects[index - 1];
        let target = SimplicialObject::oplus_all(objects)?;
        let offset: usize = objects[..index - 1].iter().map(|o| o.arity()).sum();
        let mut comps = vec![WeilElement::zero(block); target.arity()];
        for i in 1..=block.arity() {
            comps[offset + i - 1] = WeilElement::var(block, i)?;
        }
        InfinitesimalMap::new(block.clone(), target, comps)
    }
}

impl fmt::Display for InfinitesimalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| element_to_expr(c).to_string())
            .collect();
        write!(f, "{} -> {} = ({})", self.source, self.target, comps.join(", "))
    }
}

impl fmt::Debug for InfinitesimalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(n: usize, sets: &[&[usize]]) -> SimplicialObject {
        SimplicialObject::new(n, sets.iter().copied()).unwrap()
    }

    #[test]
    fn psi_into_c_is_valid() {
        let sq = SimplicialObject::cube(2).unwrap();
        let c = obj(3, &[&[1, 3], &[2, 3]]);
        let psi = InfinitesimalMap::parse(&sq, &c, &["d1", "d2", "d1*d2"]).unwrap();
        assert!(psi.validate().unwrap().is_ok());
    }

    #[test]
    fn sum_of_coordinates_is_not_square_zero_on_the_square() {
        let sq = SimplicialObject::cube(2).unwrap();
        let d = SimplicialObject::d();
        let bad = InfinitesimalMap::parse(&sq, &d, &["d1 + d2"]).unwrap();
        let report = bad.validate().unwrap();
        assert_eq!(report.violations.len(), 1);
        match &report.violations[0] {
            Violation::NotSquareZero { component, square } => {
                assert_eq!(*component, 1);
                assert_eq!(square.to_string(), "2*X1*X2");
            }
            other => panic!("unexpected {other:?}"),
        }
        let d2 = SimplicialObject::first_order(2).unwrap();
        let ok = InfinitesimalMap::parse(&d2, &d, &["d1 + d2"]).unwrap();
        assert!(ok.validate().unwrap().is_ok());
    }

    #[test]
    fn c_into_e_validity_uses_source_relations() {
        let c = obj(3, &[&[1, 3], &[2, 3]]);
        let e = obj(4, &[&[1, 3], &[2, 3], &[1, 4], &[2, 4], &[3, 4]]);
        let m = InfinitesimalMap::parse(&c, &e, &["d1", "d2", "d1*d2 - d3", "d3"]).unwrap();
        assert!(m.validate().unwrap().is_ok());
        // same formula from the plain cube violates (3,4)
        let cube = SimplicialObject::cube(3).unwrap();
        let m = InfinitesimalMap::parse(&cube, &e, &["d1", "d2", "d1*d2 - d3", "d3"]).unwrap();
        assert!(!m.validate().unwrap().is_ok());
    }

    #[test]
    fn shape_errors() {
        let sq = SimplicialObject::cube(2).unwrap();
        let d = SimplicialObject::d();
        assert!(matches!(
            InfinitesimalMap::parse(&sq, &d, &["d1", "d2"]),
            Err(Error::ArityMismatch { expected: 1, found: 2, .. })
        ));
        let constant = InfinitesimalMap::parse(&sq, &d, &["1 + d1"]).unwrap();
        assert_eq!(constant.validate(), Err(Error::NonzeroConstantTerm { component: 1 }));
    }

    #[test]
    fn composition_with_identity() {
        let sq = SimplicialObject::cube(2).unwrap();
        let c = obj(3, &[&[1, 3], &[2, 3]]);
        let psi = InfinitesimalMap::parse(&sq, &c, &["d1", "d2", "d1*d2"]).unwrap();
        assert_eq!(psi.then(&InfinitesimalMap::identity(&c)).unwrap(), psi);
        assert_eq!(InfinitesimalMap::identity(&sq).then(&psi).unwrap(), psi);
    }

    #[test]
    fn composition_rejects_mismatched_objects() {
        let sq = SimplicialObject::cube(2).unwrap();
        let id = InfinitesimalMap::identity(&sq);
        let d = SimplicialObject::d();
        assert!(matches!(
            id.then(&InfinitesimalMap::identity(&d)),
            Err(Error::ObjectMismatch { .. })
        ));
    }

    #[test]
    fn block_inclusions() {
        let d = SimplicialObject::d();
        let first = InfinitesimalMap::block_inclusion(&[d.clone(), d.clone()], 1).unwrap();
        assert_eq!(first.target(), &SimplicialObject::first_order(2).unwrap());
        assert_eq!(first.to_string(), "D -> D(2) = (d1, 0)");
        let c3 = SimplicialObject::cube(3).unwrap();
        let second = InfinitesimalMap::block_inclusion(&[c3.clone(), c3.clone()], 2).unwrap();
        assert_eq!(second.to_string(), "D^3 -> D^6{(1,4),(1,5),(1,6),(2,4),(2,5),(2,6),(3,4),(3,5),(3,6)} = (0, 0, 0, d1, d2, d3)");
        assert!(matches!(
            InfinitesimalMap::block_inclusion(&[c3], 2),
            Err(Error::BlockOutOfRange { .. })
        ));
    }

    #[test]
    fn oplus_restricts_to_its_summands() {
        let d = SimplicialObject::d();
        let sq = SimplicialObject::cube(2).unwrap();
        let f = InfinitesimalMap::parse(&d, &sq, &["d1", "0"]).unwrap();
        let g = InfinitesimalMap::parse(&d, &sq, &["d1", "d1"]).unwrap();
        let h = InfinitesimalMap::oplus(&[f.clone(), g.clone()]).unwrap();
        let blocks = [d.clone(), d.clone()];
        for (i, m) in [f, g].iter().enumerate() {
            let inc = InfinitesimalMap::block_inclusion(&blocks, i + 1).unwrap();
            assert_eq!(&inc.then(&h).unwrap(), m);
        }
        let single = InfinitesimalMap::identity(&sq);
        assert_eq!(InfinitesimalMap::oplus(std::slice::from_ref(&single)).unwrap(), single);
    }

    #[test]
    fn oplus_requires_common_target() {
        let d = SimplicialObject::d();
        let sq = SimplicialObject::cube(2).unwrap();
        let f = InfinitesimalMap::identity(&d);
        let g = InfinitesimalMap::parse(&d, &sq, &["d1", "0"]).unwrap();
        assert!(matches!(
            InfinitesimalMap::oplus(&[f, g]),
            Err(Error::TargetMismatch { .. })
        ));
    }
}
