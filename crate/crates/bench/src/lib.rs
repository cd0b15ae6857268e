//! Inputs shared by the kernel benchmarks.

use weil_core::harness::lemma_3_15;
use weil_core::random::{random_compatible, rng};
use weil_core::{build_catalog, Catalog, Cone, Diagram, WeilElement};

pub struct Hexagon {
    pub catalog: Catalog,
    pub diagram: Diagram,
    pub cone: Cone,
    /// A compatible tuple, for timing the mediator solve.
    pub tuple: Vec<WeilElement>,
}

/// The Lemma 3.15 hexagon with one seeded compatible tuple.
pub fn hexagon(seed: u64) -> Hexagon {
    let catalog = build_catalog().expect("catalog builds");
    let (diagram, cone) = lemma_3_15(&catalog, &[]).expect("hexagon builds");
    let limit = diagram.compute_limit();
    let tuple = random_compatible(&mut rng(seed), &diagram, &limit);
    Hexagon {
        catalog,
        diagram,
        cone,
        tuple,
    }
}
