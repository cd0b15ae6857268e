//! Unital algebra homomorphisms between Weil algebras, stored as exact matrices.

use std::fmt;

use num_traits::{One, Zero};

use crate::element::WeilElement;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::map::InfinitesimalMap;
use crate::object::{Monomial, SimplicialObject};

/// A linear map `W_source -> W_target`. Column `j` holds the image of the
/// `j`-th basis monomial of `W_source` in the basis of `W_target`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraHom {
    source: SimplicialObject,
    target: SimplicialObject,
    matrix: Matrix,
}

impl AlgebraHom {
    pub fn new(source: SimplicialObject, target: SimplicialObject, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map W[{}] -> W[{}] ({} -> {})",
                matrix.rows(),
                matrix.cols(),
                source,
                target,
                source.dim(),
                target.dim()
            )));
        }
        Ok(AlgebraHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(obj: &SimplicialObject) -> Self {
        AlgebraHom {
            source: obj.clone(),
            target: obj.clone(),
            matrix: Matrix::identity(obj.dim()),
        }
    }

    /// `W_f : W_target(f) -> W_source(f)`, substituting the components of `f`
    /// for the generators.
    pub fn induced(f: &InfinitesimalMap) -> Result<Self> {
        f.ensure_valid()?;
        let domain = f.target();
        let codomain = f.source();
        let columns = domain
            .basis()
            .iter()
            .map(|&m| {
                let g = WeilElement::term(domain, One::one(), m)?;
                Ok(f.substitute(&g)?.to_vector())
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = Matrix::from_columns(columns, codomain.dim())?;
        Self::new(domain.clone(), codomain.clone(), matrix)
    }

    pub fn source(&self) -> &SimplicialObject {
        &self.source
    }

    pub fn target(&self) -> &SimplicialObject {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &WeilElement) -> Result<WeilElement> {
        if x.parent() != &self.source {
            return Err(Error::ObjectMismatch {
                expected: self.source.to_string(),
                found: x.parent().to_string(),
            });
        }
        let v = self.matrix.mul_vec(&x.to_vector())?;
        WeilElement::from_vector(&self.target, &v)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &AlgebraHom) -> Result<AlgebraHom> {
        if self.target != next.source {
            return Err(Error::ObjectMismatch {
                expected: next.source.to_string(),
                found: self.target.to_string(),
            });
        }
        Self::new(
            self.source.clone(),
            next.target.clone(),
            next.matrix.mul(&self.matrix)?,
        )
    }

    /// `outer ∘ inner`, applying `inner` first.
    pub fn compose(outer: &AlgebraHom, inner: &AlgebraHom) -> Result<AlgebraHom> {
        inner.then(outer)
    }

    /// `self - other` as a matrix, for diagnostics.
    pub fn residual(&self, other: &AlgebraHom) -> Result<Matrix> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ObjectMismatch {
                expected: format!("W[{}] -> W[{}]", self.source, self.target),
                found: format!("W[{}] -> W[{}]", other.source, other.target),
            });
        }
        self.matrix.sub(&other.matrix)
    }

    pub fn is_unital(&self) -> bool {
        let col = self.matrix.column(0);
        col.first().is_some_and(One::is_one) && col[1..].iter().all(Zero::is_zero)
    }

    /// Basis pairs `(m, n)` with `H(m n) != H(m) H(n)`, checked exhaustively.
    pub fn multiplicativity_defects(&self) -> Result<Vec<(Monomial, Monomial)>> {
        let basis = self.source.basis();
        let images: Vec<WeilElement> = (0..basis.len())
            .map(|j| WeilElement::from_vector(&self.target, &self.matrix.column(j)))
            .collect::<Result<_>>()?;
        let mut defects = Vec::new();
        for (a, &m) in basis.iter().enumerate() {
            for (b, &n) in basis.iter().enumerate().skip(a) {
                let prod = WeilElement::term(&self.source, One::one(), m)?
                    .mul(&WeilElement::term(&self.source, One::one(), n)?)?;
                let lhs = self.apply(&prod)?;
                let rhs = images[a].mul(&images[b])?;
                if lhs != rhs {
                    defects.push((m, n));
                }
            }
        }
        Ok(defects)
    }

    pub fn is_multiplicative(&self) -> Result<bool> {
        Ok(self.multiplicativity_defects()?.is_empty())
    }
}

impl fmt::Debug for AlgebraHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "W[{}] -> W[{}]", self.source, self.target)?;
        fmt::Display::fmt(&self.matrix, f)
    }
}
