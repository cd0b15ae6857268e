//! Seeded generators for property tests and mediator sampling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{int, Rational, WeilElement};
use crate::limit::{Diagram, LimitSpace};
use crate::map::InfinitesimalMap;
use crate::object::{Monomial, SimplicialObject};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An object of arity `1..=max_arity` with up to `max_arity` forbidden sets of
/// size 2 or 3.
pub fn random_object<R: Rng>(rng: &mut R, max_arity: usize) -> SimplicialObject {
    let n = rng.gen_range(1..=max_arity.max(1));
    let mut sets = Vec::new();
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=n) {
            let k = rng.gen_range(2..=n.min(3));
            let mut idx: Vec<usize> = (1..=n).collect();
            idx.shuffle(rng);
            idx.truncate(k);
            idx.sort_unstable();
            sets.push(idx);
        }
    }
    SimplicialObject::new(n, sets).expect("indices within arity")
}

/// A random element without constant term: up to `max_terms` basis monomials
/// of degree `1..=max_degree`, coefficients in `-2..=2`.
pub fn random_element<R: Rng>(
    rng: &mut R,
    obj: &SimplicialObject,
    max_degree: usize,
    max_terms: usize,
) -> WeilElement {
    let candidates: Vec<Monomial> = obj
        .basis()
        .iter()
        .copied()
        .filter(|m| !m.is_unit() && m.degree() <= max_degree)
        .collect();
    let mut e = WeilElement::zero(obj);
    if candidates.is_empty() {
        return e;
    }
    for _ in 0..rng.gen_range(0..=max_terms) {
        let m = *candidates.choose(rng).expect("nonempty");
        let c = int(rng.gen_range(-2..=2));
        let t = WeilElement::term(obj, c, m).expect("basis monomial");
        e = e.add(&t).expect("same parent");
    }
    e
}

/// A valid map `source -> target` with components of degree at most 3,
/// found by rejection sampling. Falls back to the zero map, which is always
/// valid, if `attempts` samples are all rejected.
pub fn random_map<R: Rng>(
    rng: &mut R,
    source: &SimplicialObject,
    target: &SimplicialObject,
    attempts: usize,
) -> InfinitesimalMap {
    for _ in 0..attempts {
        let comps = (0..target.arity())
            .map(|_| {
                if rng.gen_bool(0.3) {
                    WeilElement::zero(source)
                } else {
                    random_element(rng, source, 3, 2)
                }
            })
            .collect();
        let m = InfinitesimalMap::new(source.clone(), target.clone(), comps).expect("shapes match");
        if m.is_valid() {
            return m;
        }
    }
    InfinitesimalMap::zero(source, target)
}

/// A random vector of the limit space: an integer combination of its basis
/// with coefficients in `-9..=9`, split into one element per node.
pub fn random_compatible<R: Rng>(rng: &mut R, d: &Diagram, limit: &LimitSpace) -> Vec<WeilElement> {
    let mut v = vec![Rational::default(); d.product_dim()];
    for row in &limit.basis.rows {
        let c = int(rng.gen_range(-9..=9));
        for (x, r) in v.iter_mut().zip(row) {
            *x += &c * r;
        }
    }
    d.split(&v).expect("vector sized to the product")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_under_seed() {
        let a: Vec<String> = {
            let mut r = rng(7);
            (0..20).map(|_| random_object(&mut r, 6).to_string()).collect()
        };
        let b: Vec<String> = {
            let mut r = rng(7);
            (0..20).map(|_| random_object(&mut r, 6).to_string()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn maps_are_valid() {
        let mut r = rng(1);
        for _ in 0..50 {
            let s = random_object(&mut r, 4);
            let t = random_object(&mut r, 4);
            let m = random_map(&mut r, &s, &t, 200);
            assert!(m.is_valid(), "{m}");
            assert!(m.components().iter().all(|c| c.constant_term() == Rational::default()));
        }
    }

    #[test]
    fn compatible_tuples_lie_in_the_limit() {
        let sq = SimplicialObject::cube(2).unwrap();
        let d2 = SimplicialObject::first_order(2).unwrap();
        let inc = crate::AlgebraHom::induced(&InfinitesimalMap::parse(&d2, &sq, &["d1", "d2"]).unwrap()).unwrap();
        let d = Diagram::cospan(inc.clone(), inc).unwrap();
        let lim = d.compute_limit();
        let mut r = rng(3);
        for _ in 0..10 {
            let t = random_compatible(&mut r, &d, &lim);
            assert!(lim.contains(&d.join(&t).unwrap()));
        }
    }
}
