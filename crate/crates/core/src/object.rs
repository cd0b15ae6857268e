//! Simplicial infinitesimal objects `D^n{p}` and the square-free monomials
//! spanning their Weil algebras.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest supported number of coordinates. Monomials are stored as bit sets.
pub const MAX_ARITY: usize = 63;

/// A square-free monomial `X_{i1}...X_{ik}`, stored as the set of its indices.
///
/// Indices are 1-based. The empty set is the unit monomial. Ordering is by
/// degree first and then lexicographic on the sorted index sequence, which is
/// the basis order used everywhere in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const UNIT: Monomial = Monomial(0);

    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i == 0 || i > MAX_ARITY {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    arity: MAX_ARITY,
                });
            }
            bits |= 1 << (i - 1);
        }
        Ok(Monomial(bits))
    }

    /// The degree-one monomial `X_i`.
    pub fn var(i: usize) -> Result<Self> {
        Self::new(&[i])
    }

    pub fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_unit(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Sorted 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i + 1)
            }
        })
    }

    /// Largest index, or 0 for the unit.
    pub fn max_index(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=64).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_subset_of(self, other: Monomial) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn is_disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    /// Adds `offset` to every index.
    pub fn shift(self, offset: usize) -> Monomial {
        Monomial(self.0 << offset)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // the lowest index where the sets differ belongs to the lex-smaller one
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "X{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.indices().iter().map(usize::to_string).collect::<Vec<_>>().join(","))
    }
}

struct Basis {
    monomials: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
}

struct ObjectData {
    arity: usize,
    forbidden: Vec<Monomial>,
    basis: OnceLock<Basis>,
}

/// The simplicial object `D^n{p}`: `n` coordinates `d_i` with `d_i^2 = 0`,
/// plus `d_{i1}...d_{ik} = 0` for every forbidden index set in `p`.
///
/// The forbidden family is kept as an antichain. Cloning is cheap, and
/// equality is structural.
#[derive(Clone)]
pub struct SimplicialObject(Arc<ObjectData>);

impl SimplicialObject {
    pub fn new<I, S>(arity: usize, forbidden: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::BadArity(arity));
        }
        let mut sets = Vec::new();
        for set in forbidden {
            let set = set.as_ref();
            if set.len() < 2 || set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::BadForbiddenSet { set: set.to_vec() });
            }
            if let Some(&bad) = set.iter().find(|&&i| i == 0 || i > arity) {
                return Err(Error::IndexOutOfRange { index: bad, arity });
            }
            sets.push(Monomial::new(set)?);
        }
        Ok(Self::from_masks(arity, sets))
    }

    fn from_masks(arity: usize, mut sets: Vec<Monomial>) -> Self {
        sets.sort();
        sets.dedup();
        // sorted by degree, so any subset of a set precedes it
        let mut antichain: Vec<Monomial> = Vec::with_capacity(sets.len());
        for s in sets {
            if !antichain.iter().any(|a| a.is_subset_of(s)) {
                antichain.push(s);
            }
        }
        SimplicialObject(Arc::new(ObjectData {
            arity,
            forbidden: antichain,
            basis: OnceLock::new(),
        }))
    }

    /// `D^n`, with no forbidden products.
    pub fn cube(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty::<[usize; 0]>())
    }

    /// `D`, the square-zero infinitesimals.
    pub fn d() -> Self {
        Self::cube(1).expect("arity 1 is valid")
    }

    /// `D(n)`: all pairwise products vanish.
    pub fn first_order(n: usize) -> Result<Self> {
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                pairs.push([i, j]);
            }
        }
        Self::new(n, pairs)
    }

    pub fn arity(&self) -> usize {
        self.0.arity
    }

    /// Minimal forbidden index sets, in basis order.
    pub fn forbidden(&self) -> &[Monomial] {
        &self.0.forbidden
    }

    pub fn forbidden_sets(&self) -> Vec<Vec<usize>> {
        self.0.forbidden.iter().map(|m| m.indices()).collect()
    }

    /// True iff `m` contains a forbidden set.
    pub fn is_forbidden(&self, m: Monomial) -> Result<bool> {
        if m.max_index() > self.arity() {
            return Err(Error::IndexOutOfRange {
                index: m.max_index(),
                arity: self.arity(),
            });
        }
        Ok(self.contains_forbidden(m))
    }

    pub(crate) fn contains_forbidden(&self, m: Monomial) -> bool {
        self.0.forbidden.iter().any(|f| f.is_subset_of(m))
    }

    /// True iff `m` is a nonzero basis monomial of this object's algebra.
    pub fn allows(&self, m: Monomial) -> bool {
        m.max_index() <= self.arity() && !self.contains_forbidden(m)
    }

    fn basis_data(&self) -> &Basis {
        self.0.basis.get_or_init(|| {
            let mut monomials = Vec::new();
            self.collect_allowed(Monomial::UNIT, 1, &mut monomials);
            monomials.sort();
            let position = monomials.iter().enumerate().map(|(k, &m)| (m, k)).collect();
            Basis {
                monomials,
                position,
            }
        })
    }

    // Allowed sets are closed under subsets, so a forbidden prefix prunes the branch.
    fn collect_allowed(&self, current: Monomial, next: usize, out: &mut Vec<Monomial>) {
        out.push(current);
        for i in next..=self.arity() {
            let m = current.union(Monomial(1 << (i - 1)));
            if !self.contains_forbidden(m) {
                self.collect_allowed(m, i + 1, out);
            }
        }
    }

    /// Basis of the Weil algebra, ordered by degree and then lexicographically.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis_data().monomials
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    /// Position of `m` in [`basis`](Self::basis), if it is a basis monomial.
    pub fn position(&self, m: Monomial) -> Option<usize> {
        self.basis_data().position.get(&m).copied()
    }

    /// `self ⊕ other`: coordinates of `other` are shifted past those of
    /// `self` and every product of one coordinate from each side vanishes.
    pub fn oplus(&self, other: &SimplicialObject) -> Result<SimplicialObject> {
        let m = self.arity();
        let n = other.arity();
        if m + n > MAX_ARITY {
            return Err(Error::BadArity(m + n));
        }
        let mut sets: Vec<Monomial> = self.0.forbidden.clone();
        sets.extend(other.0.forbidden.iter().map(|s| s.shift(m)));
        for i in 0..m {
            for j in 0..n {
                sets.push(Monomial((1 << i) | (1 << (m + j))));
            }
        }
        Ok(Self::from_masks(m + n, sets))
    }

    /// Left fold of [`oplus`](Self::oplus) over a nonempty list.
    pub fn oplus_all(objects: &[SimplicialObject]) -> Result<SimplicialObject> {
        let (first, rest) = objects.split_first().ok_or(Error::Empty)?;
        rest.iter().try_fold(first.clone(), |acc, o| acc.oplus(o))
    }

    fn is_first_order(&self) -> bool {
        let n = self.arity();
        n >= 2
            && self.0.forbidden.len() == n * (n - 1) / 2
            && self.0.forbidden.iter().all(|f| f.degree() == 2)
    }
}

impl PartialEq for SimplicialObject {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.arity == other.0.arity && self.0.forbidden == other.0.forbidden)
    }
}

impl Eq for SimplicialObject {}

impl Hash for SimplicialObject {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.arity.hash(state);
        self.0.forbidden.hash(state);
    }
}

impl fmt::Display for SimplicialObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.arity();
        if self.is_first_order() {
            return write!(f, "D({n})");
        }
        if n == 1 {
            f.write_str("D")?;
        } else {
            write!(f, "D^{n}")?;
        }
        if !self.0.forbidden.is_empty() {
            f.write_str("{")?;
            for (k, s) in self.0.forbidden.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                let idx: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                write!(f, "({})", idx.join(","))?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SimplicialObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(ix: &[usize]) -> Monomial {
        Monomial::new(ix).unwrap()
    }

    fn brute_force_dim(obj: &SimplicialObject) -> usize {
        let n = obj.arity();
        let sets = obj.forbidden_sets();
        (0u64..1 << n)
            .filter(|s| {
                !sets
                    .iter()
                    .any(|f| f.iter().all(|&i| s & (1 << (i - 1)) != 0))
            })
            .count()
    }

    #[test]
    fn forbidden_membership() {
        let d2 = SimplicialObject::first_order(2).unwrap();
        assert!(d2.is_forbidden(mono(&[1, 2])).unwrap());
        let sq = SimplicialObject::cube(2).unwrap();
        assert!(!sq.is_forbidden(mono(&[1, 2])).unwrap());
        let c = SimplicialObject::new(3, [[1, 3], [2, 3]]).unwrap();
        assert!(c.is_forbidden(mono(&[1, 3])).unwrap());
        assert!(c.is_forbidden(mono(&[1, 2, 3])).unwrap());
        assert!(!c.is_forbidden(mono(&[1, 2])).unwrap());
    }

    #[test]
    fn forbidden_index_out_of_range() {
        let d = SimplicialObject::d();
        assert_eq!(
            d.is_forbidden(mono(&[2])),
            Err(Error::IndexOutOfRange { index: 2, arity: 1 })
        );
    }

    #[test]
    fn rejects_bad_forbidden_sets() {
        assert!(matches!(
            SimplicialObject::new(3, [vec![2, 1]]),
            Err(Error::BadForbiddenSet { .. })
        ));
        assert!(matches!(
            SimplicialObject::new(3, [vec![1]]),
            Err(Error::BadForbiddenSet { .. })
        ));
        assert!(matches!(
            SimplicialObject::new(3, [vec![1, 4]]),
            Err(Error::IndexOutOfRange { index: 4, arity: 3 })
        ));
        assert!(matches!(
            SimplicialObject::cube(0),
            Err(Error::BadArity(0))
        ));
    }

    #[test]
    fn small_bases() {
        let d = SimplicialObject::d();
        assert_eq!(d.basis(), &[Monomial::UNIT, mono(&[1])]);
        let sq = SimplicialObject::cube(2).unwrap();
        assert_eq!(
            sq.basis(),
            &[Monomial::UNIT, mono(&[1]), mono(&[2]), mono(&[1, 2])]
        );
        assert_eq!(SimplicialObject::first_order(2).unwrap().dim(), 3);
        assert_eq!(SimplicialObject::cube(3).unwrap().dim(), 8);
        assert_eq!(SimplicialObject::first_order(3).unwrap().dim(), 4);
    }

    #[test]
    fn basis_order_is_degree_then_lex() {
        let cube = SimplicialObject::cube(3).unwrap();
        let got: Vec<Vec<usize>> = cube.basis().iter().map(|m| m.indices()).collect();
        let want: Vec<Vec<usize>> = vec![
            vec![],
            vec![1],
            vec![2],
            vec![3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
            vec![1, 2, 3],
        ];
        assert_eq!(got, want);
        assert!(mono(&[1, 4]) < mono(&[2, 3]));
        assert!(mono(&[1, 3]) < mono(&[1, 4]));
    }

    #[test]
    fn e_has_dimension_six() {
        let e = SimplicialObject::new(4, [[1, 3], [2, 3], [1, 4], [2, 4], [3, 4]]).unwrap();
        assert_eq!(e.dim(), 6);
        assert_eq!(brute_force_dim(&e), 6);
    }

    #[test]
    fn antichain_normalisation() {
        let redundant = SimplicialObject::new(3, vec![vec![1, 2], vec![1, 2, 3], vec![1, 2]]).unwrap();
        let plain = SimplicialObject::new(3, [[1, 2]]).unwrap();
        assert_eq!(redundant, plain);
        assert_eq!(redundant.forbidden_sets(), vec![vec![1, 2]]);
        assert_eq!(redundant.basis(), plain.basis());
    }

    #[test]
    fn oplus_of_two_d_is_d_two() {
        let d = SimplicialObject::d();
        assert_eq!(d.oplus(&d).unwrap(), SimplicialObject::first_order(2).unwrap());
        let d3 = SimplicialObject::first_order(3).unwrap();
        let left = d.oplus(&d).unwrap().oplus(&d).unwrap();
        let right = d.oplus(&d.oplus(&d).unwrap()).unwrap();
        assert_eq!(left, d3);
        assert_eq!(right, d3);
    }

    #[test]
    fn cube_oplus_cube() {
        let c3 = SimplicialObject::cube(3).unwrap();
        let s = c3.oplus(&c3).unwrap();
        assert_eq!(s.arity(), 6);
        assert_eq!(s.forbidden().len(), 9);
        assert_eq!(s.dim(), 15);
        assert_eq!(brute_force_dim(&s), 15);
    }

    #[test]
    fn display_forms() {
        assert_eq!(SimplicialObject::d().to_string(), "D");
        assert_eq!(SimplicialObject::first_order(3).unwrap().to_string(), "D(3)");
        assert_eq!(
            SimplicialObject::new(3, [[1, 3], [2, 3]]).unwrap().to_string(),
            "D^3{(1,3),(2,3)}"
        );
    }
}
