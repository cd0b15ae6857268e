//! Limits of finite diagrams of Weil algebras.
//!
//! The limit of a diagram is computed as the space of compatible tuples in
//! the product of the node algebras: `x_to = a(x_from)` for every arrow `a`.
//! A cone is a limit cone exactly when its legs commute with the arrows and
//! assemble into a bijection from the apex algebra onto that space.

use std::collections::BTreeSet;

use num_traits::One;

use crate::element::{Rational, WeilElement};
use crate::error::{Error, Result};
use crate::hom::AlgebraHom;
use crate::linalg::{Echelon, Matrix, SolveFailure};
use crate::object::SimplicialObject;

/// A homomorphism between two nodes of a diagram, by node index.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub hom: AlgebraHom,
}

impl Arrow {
    pub fn new(from: usize, to: usize, hom: AlgebraHom) -> Self {
        Arrow { from, to, hom }
    }
}

#[derive(Clone, Debug)]
pub struct Diagram {
    nodes: Vec<SimplicialObject>,
    arrows: Vec<Arrow>,
}

impl Diagram {
    pub fn new(nodes: Vec<SimplicialObject>, arrows: Vec<Arrow>) -> Result<Self> {
        for (k, a) in arrows.iter().enumerate() {
            let (Some(from), Some(to)) = (nodes.get(a.from), nodes.get(a.to)) else {
                return Err(Error::MalformedDiagram(format!(
                    "arrow {k} refers to node {} -> {} but there are {} nodes",
                    a.from,
                    a.to,
                    nodes.len()
                )));
            };
            if a.hom.source() != from || a.hom.target() != to {
                return Err(Error::MalformedDiagram(format!(
                    "arrow {k} is W[{}] -> W[{}] but connects W[{from}] -> W[{to}]",
                    a.hom.source(),
                    a.hom.target()
                )));
            }
        }
        Ok(Diagram { nodes, arrows })
    }

    /// The cospan `left -> common <- right` whose limit is a pullback.
    pub fn cospan(left: AlgebraHom, right: AlgebraHom) -> Result<Self> {
        if left.target() != right.target() {
            return Err(Error::MalformedDiagram(format!(
                "cospan legs end in W[{}] and W[{}]",
                left.target(),
                right.target()
            )));
        }
        let nodes = vec![left.source().clone(), right.source().clone(), left.target().clone()];
        Diagram::new(nodes, vec![Arrow::new(0, 2, left), Arrow::new(1, 2, right)])
    }

    pub fn nodes(&self) -> &[SimplicialObject] {
        &self.nodes
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.nodes
            .iter()
            .map(|n| {
                let o = acc;
                acc += n.dim();
                o
            })
            .collect()
    }

    pub fn product_dim(&self) -> usize {
        self.nodes.iter().map(SimplicialObject::dim).sum()
    }

    /// Splits a vector of the product into one element per node.
    pub fn split(&self, v: &[Rational]) -> Result<Vec<WeilElement>> {
        if v.len() != self.product_dim() {
            return Err(Error::DimensionMismatch(format!(
                "tuple of length {} for a product of dimension {}",
                v.len(),
                self.product_dim()
            )));
        }
        self.nodes
            .iter()
            .zip(self.offsets())
            .map(|(n, o)| WeilElement::from_vector(n, &v[o..o + n.dim()]))
            .collect()
    }

    /// Concatenates one element per node into a product vector.
    pub fn join(&self, tuple: &[WeilElement]) -> Result<Vec<Rational>> {
        if tuple.len() != self.nodes.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} components for {} nodes",
                tuple.len(),
                self.nodes.len()
            )));
        }
        let mut v = Vec::with_capacity(self.product_dim());
        for (x, n) in tuple.iter().zip(&self.nodes) {
            if x.parent() != n {
                return Err(Error::ObjectMismatch {
                    expected: n.to_string(),
                    found: x.parent().to_string(),
                });
            }
            v.extend(x.to_vector());
        }
        Ok(v)
    }

    /// The compatible tuples, as a reduced row-echelon basis in the product's
    /// basis order.
    pub fn compute_limit(&self) -> LimitSpace {
        let offsets = self.offsets();
        let total = self.product_dim();
        let mut equations = Vec::new();
        for a in &self.arrows {
            let m = a.hom.matrix();
            for i in 0..m.rows() {
                let mut row = vec![Rational::default(); total];
                for j in 0..m.cols() {
                    row[offsets[a.from] + j] += m.get(i, j);
                }
                row[offsets[a.to] + i] -= Rational::one();
                equations.push(row);
            }
        }
        let kernel = Echelon::of_rows(equations, total).nullspace();
        LimitSpace {
            basis: Echelon::of_rows(kernel, total),
        }
    }
}

/// The limit of a diagram, as a subspace of the product of its nodes.
#[derive(Clone, Debug)]
pub struct LimitSpace {
    pub basis: Echelon,
}

impl LimitSpace {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.basis.contains(v)
    }

    /// True if the space holds the all-units tuple and is closed under
    /// pointwise products.
    pub fn is_subalgebra(&self, d: &Diagram) -> Result<bool> {
        let units: Vec<WeilElement> = d.nodes.iter().map(WeilElement::one).collect();
        if !self.contains(&d.join(&units)?) {
            return Ok(false);
        }
        let tuples: Vec<Vec<WeilElement>> =
            self.basis.rows.iter().map(|r| d.split(r)).collect::<Result<_>>()?;
        for (i, x) in tuples.iter().enumerate() {
            for y in &tuples[i..] {
                let prod: Vec<WeilElement> =
                    x.iter().zip(y).map(|(a, b)| a.mul(b)).collect::<Result<_>>()?;
                if !self.contains(&d.join(&prod)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A candidate cone. Legs left as `None` are filled in by composing a known
/// leg with an arrow.
#[derive(Clone, Debug)]
pub struct Cone {
    pub apex: SimplicialObject,
    pub legs: Vec<Option<AlgebraHom>>,
}

impl Cone {
    pub fn new(apex: SimplicialObject, legs: Vec<Option<AlgebraHom>>) -> Self {
        Cone { apex, legs }
    }

    pub fn full(apex: SimplicialObject, legs: Vec<AlgebraHom>) -> Self {
        Cone {
            apex,
            legs: legs.into_iter().map(Some).collect(),
        }
    }

    /// Fills missing legs as `arrow ∘ leg`; returns the completed cone and
    /// the indices of the legs that were filled in.
    pub fn complete(&self, d: &Diagram) -> Result<(Vec<AlgebraHom>, Vec<usize>)> {
        if self.legs.len() != d.nodes.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} legs for {} nodes",
                self.legs.len(),
                d.nodes.len()
            )));
        }
        for (k, leg) in self.legs.iter().enumerate() {
            if let Some(leg) = leg {
                if leg.source() != &self.apex || leg.target() != &d.nodes[k] {
                    return Err(Error::ShapeMismatch(format!(
                        "leg {k} is W[{}] -> W[{}], expected W[{}] -> W[{}]",
                        leg.source(),
                        leg.target(),
                        self.apex,
                        d.nodes[k]
                    )));
                }
            }
        }
        let mut legs = self.legs.clone();
        let mut filled = Vec::new();
        loop {
            let mut progress = false;
            for a in &d.arrows {
                if legs[a.to].is_none() {
                    if let Some(src) = &legs[a.from] {
                        legs[a.to] = Some(src.then(&a.hom)?);
                        filled.push(a.to);
                        progress = true;
                    }
                }
            }
            if !progress {
                break;
            }
        }
        let missing: Vec<usize> = legs
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_none())
            .map(|(k, _)| k)
            .collect();
        if !missing.is_empty() {
            return Err(Error::ShapeMismatch(format!(
                "no leg given or derivable for nodes {missing:?}"
            )));
        }
        filled.sort_unstable();
        Ok((legs.into_iter().map(|l| l.expect("all filled")).collect(), filled))
    }
}

/// Certificate for [`is_limit_cone`].
#[derive(Clone, Debug)]
pub struct LimitReport {
    pub commutes: bool,
    /// Arrows `a: i -> j` with `a ∘ leg_i != leg_j`.
    pub noncommuting: Vec<usize>,
    pub limit_dimension: usize,
    pub apex_dimension: usize,
    /// Rank of the legs assembled into `W_apex -> product`.
    pub assembled_rank: usize,
    pub is_limit: bool,
    /// Node indices whose legs were derived rather than given.
    pub completed_legs: Vec<usize>,
    /// Reduced row-echelon basis of the limit subspace.
    pub limit_basis: Vec<Vec<Rational>>,
    /// Coordinates of the apex basis images in `limit_basis`
    /// (`limit_dimension x apex_dimension`), when the cone commutes.
    pub induced: Option<Matrix>,
    pub limit_is_subalgebra: bool,
}

fn assemble(legs: &[AlgebraHom]) -> Result<Matrix> {
    let parts: Vec<&Matrix> = legs.iter().map(AlgebraHom::matrix).collect();
    Matrix::vstack(&parts)
}

/// Decides whether `cone` exhibits its apex algebra as the limit of `d`.
pub fn is_limit_cone(d: &Diagram, cone: &Cone) -> Result<LimitReport> {
    let (legs, completed_legs) = cone.complete(d)?;
    let mut noncommuting = Vec::new();
    for (k, a) in d.arrows.iter().enumerate() {
        if legs[a.from].then(&a.hom)? != legs[a.to] {
            noncommuting.push(k);
        }
    }
    let commutes = noncommuting.is_empty();
    let limit = d.compute_limit();
    let assembled = assemble(&legs)?;
    let assembled_rank = assembled.rank();
    let apex_dimension = cone.apex.dim();
    let limit_dimension = limit.dim();
    let induced = if commutes {
        let cols = (0..assembled.cols())
            .map(|j| {
                limit
                    .basis
                    .coordinates(&assembled.column(j))
                    .expect("commuting legs land in the limit")
            })
            .collect();
        Some(Matrix::from_columns(cols, limit_dimension)?)
    } else {
        None
    };
    let is_limit = commutes && assembled_rank == apex_dimension && apex_dimension == limit_dimension;
    Ok(LimitReport {
        commutes,
        noncommuting,
        limit_dimension,
        apex_dimension,
        assembled_rank,
        is_limit,
        completed_legs,
        limit_is_subalgebra: limit.is_subalgebra(d)?,
        limit_basis: limit.basis.rows,
        induced,
    })
}

/// The unique `h: W_other -> W_limit` with `leg_i ∘ h = other_leg_i` for every node.
pub fn mediator(d: &Diagram, limit_cone: &Cone, other: &Cone) -> Result<AlgebraHom> {
    let (other_legs, _) = other.complete(d)?;
    let broken: BTreeSet<usize> = d
        .arrows
        .iter()
        .enumerate()
        .filter_map(|(k, a)| match other_legs[a.from].then(&a.hom) {
            Ok(h) if h == other_legs[a.to] => None,
            _ => Some(k),
        })
        .collect();
    if !broken.is_empty() {
        return Err(Error::NoMediator(format!(
            "the other cone does not commute with arrows {broken:?}"
        )));
    }
    let (legs, _) = limit_cone.complete(d)?;
    let assembled = assemble(&legs)?;
    let rhs = assemble(&other_legs)?;
    match assembled.solve(&rhs) {
        Ok(x) => AlgebraHom::new(other.apex.clone(), limit_cone.apex.clone(), x),
        Err(SolveFailure::Underdetermined) => Err(Error::NonUnique(format!(
            "legs out of W[{}] are not jointly injective",
            limit_cone.apex
        ))),
        Err(SolveFailure::Inconsistent) => Err(Error::NoMediator(format!(
            "legs out of W[{}] do not reach every compatible tuple",
            limit_cone.apex
        ))),
    }
}

/// Recovers the apex element whose legs give `tuple` (one element per node).
pub fn solve_apex(d: &Diagram, cone: &Cone, tuple: &[WeilElement]) -> Result<WeilElement> {
    let (legs, _) = cone.complete(d)?;
    let assembled = assemble(&legs)?;
    let v = d.join(tuple)?;
    let rhs = Matrix::from_columns(vec![v], assembled.rows())?;
    match assembled.solve(&rhs) {
        Ok(x) => WeilElement::from_vector(&cone.apex, &x.column(0)),
        Err(SolveFailure::Underdetermined) => Err(Error::NonUnique(format!(
            "legs out of W[{}] are not jointly injective",
            cone.apex
        ))),
        Err(SolveFailure::Inconsistent) => Err(Error::NoMediator(
            "tuple is not in the image of the cone".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::InfinitesimalMap;

    fn obj(n: usize, sets: &[&[usize]]) -> SimplicialObject {
        SimplicialObject::new(n, sets.iter().copied()).unwrap()
    }

    fn w(src: &SimplicialObject, tgt: &SimplicialObject, comps: &[&str]) -> AlgebraHom {
        AlgebraHom::induced(&InfinitesimalMap::parse(src, tgt, comps).unwrap()).unwrap()
    }

    fn pullback_setup() -> (Diagram, Cone) {
        let sq = SimplicialObject::cube(2).unwrap();
        let d2 = SimplicialObject::first_order(2).unwrap();
        let c = obj(3, &[&[1, 3], &[2, 3]]);
        let inc = w(&d2, &sq, &["d1", "d2"]);
        let d = Diagram::cospan(inc.clone(), inc).unwrap();
        let phi = w(&sq, &c, &["d1", "d2", "0"]);
        let psi = w(&sq, &c, &["d1", "d2", "d1*d2"]);
        (d, Cone::new(c, vec![Some(phi), Some(psi), None]))
    }

    #[test]
    fn single_node_limit_is_whole_algebra() {
        let d = Diagram::new(vec![SimplicialObject::d()], vec![]).unwrap();
        assert_eq!(d.compute_limit().dim(), 2);
    }

    #[test]
    fn first_pullback_square() {
        let (d, cone) = pullback_setup();
        let r = is_limit_cone(&d, &cone).unwrap();
        assert!(r.commutes);
        assert_eq!(r.completed_legs, vec![2]);
        assert_eq!((r.apex_dimension, r.limit_dimension), (5, 5));
        assert!(r.is_limit);
        assert!(r.limit_is_subalgebra);
        let induced = r.induced.unwrap();
        assert!(induced.inverse().is_some());
    }

    #[test]
    fn wrong_apex_is_not_a_limit() {
        let (d, _) = pullback_setup();
        let sq = SimplicialObject::cube(2).unwrap();
        let big = SimplicialObject::cube(3).unwrap();
        let phi = w(&sq, &big, &["d1", "d2", "0"]);
        let psi = w(&sq, &big, &["d1", "d2", "d1*d2"]);
        let r = is_limit_cone(&d, &Cone::new(big, vec![Some(phi), Some(psi), None])).unwrap();
        assert!(r.commutes);
        assert!(!r.is_limit);
        assert_eq!((r.apex_dimension, r.limit_dimension), (8, 5));
    }

    #[test]
    fn non_commuting_cone_is_reported() {
        let (d, cone) = pullback_setup();
        let sq = SimplicialObject::cube(2).unwrap();
        let c = cone.apex.clone();
        let twisted = w(&sq, &c, &["d2", "d1", "0"]);
        let bad = Cone::full(
            c.clone(),
            vec![
                cone.legs[0].clone().unwrap(),
                twisted,
                cone.legs[0].clone().unwrap().then(&d.arrows()[0].hom).unwrap(),
            ],
        );
        let r = is_limit_cone(&d, &bad).unwrap();
        assert!(!r.commutes);
        assert_eq!(r.noncommuting, vec![1]);
        assert!(r.induced.is_none());
        assert!(!r.is_limit);
        assert!(matches!(mediator(&d, &cone, &bad), Err(Error::NoMediator(_))));
    }

    #[test]
    fn mediator_to_itself_is_identity() {
        let (d, cone) = pullback_setup();
        let h = mediator(&d, &cone, &cone).unwrap();
        assert_eq!(h, AlgebraHom::identity(&cone.apex));
    }

    #[test]
    fn shape_errors() {
        let (d, cone) = pullback_setup();
        let short = Cone::new(cone.apex.clone(), cone.legs[..2].to_vec());
        assert!(matches!(is_limit_cone(&d, &short), Err(Error::ShapeMismatch(_))));
        let unreachable = Cone::new(cone.apex.clone(), vec![None, None, None]);
        assert!(matches!(is_limit_cone(&d, &unreachable), Err(Error::ShapeMismatch(_))));
        let sq = SimplicialObject::cube(2).unwrap();
        let arrow = Arrow::new(0, 3, AlgebraHom::identity(&sq));
        assert!(matches!(
            Diagram::new(vec![sq.clone()], vec![arrow]),
            Err(Error::MalformedDiagram(_))
        ));
        let wrong = Arrow::new(0, 0, AlgebraHom::identity(&SimplicialObject::d()));
        assert!(matches!(
            Diagram::new(vec![sq], vec![wrong]),
            Err(Error::MalformedDiagram(_))
        ));
    }

    #[test]
    fn solve_apex_recovers_preimage() {
        let (d, cone) = pullback_setup();
        let c = cone.apex.clone();
        let gamma = WeilElement::from_terms(&c, [(2, &[][..]), (3, &[1][..]), (-1, &[3][..]), (5, &[1, 2][..])]).unwrap();
        let (legs, _) = cone.complete(&d).unwrap();
        let tuple: Vec<WeilElement> = legs.iter().map(|l| l.apply(&gamma).unwrap()).collect();
        assert_eq!(solve_apex(&d, &cone, &tuple).unwrap(), gamma);
    }
}
