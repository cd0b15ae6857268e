//! The named objects and maps used by the Jacobi-identity verifications.
//!
//! Every entry carries the statement it comes from. Where a printed formula
//! cannot be the intended one (it fails validation or its type does not
//! match), the printed reading is kept as a rejected entry next to the reading
//! used by the checks.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hom::AlgebraHom;
use crate::map::InfinitesimalMap;
use crate::object::SimplicialObject;

#[derive(Clone, Debug)]
pub struct ObjectEntry {
    pub name: &'static str,
    pub object: SimplicialObject,
    pub location: &'static str,
}

#[derive(Clone, Debug)]
pub struct MapEntry {
    pub name: &'static str,
    pub map: InfinitesimalMap,
    pub location: &'static str,
    pub note: Option<&'static str>,
}

/// A printed formula that does not define a valid map of the stated type.
#[derive(Clone, Debug)]
pub struct RejectedEntry {
    pub name: &'static str,
    pub printed: &'static str,
    pub location: &'static str,
    pub error: Error,
    /// Catalog name of the reading used instead.
    pub replacement: &'static str,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    objects: Vec<ObjectEntry>,
    maps: Vec<MapEntry>,
    rejected: Vec<RejectedEntry>,
}

const E1: &[&[usize]] = &[
    &[2, 6], &[3, 6], &[4, 6], &[5, 6], &[1, 7], &[2, 7], &[3, 7], &[4, 7], &[5, 7], &[6, 7],
    &[2, 4], &[2, 5], &[3, 4], &[3, 5],
];
const E2: &[&[usize]] = &[
    &[1, 6], &[3, 6], &[4, 6], &[5, 6], &[1, 7], &[2, 7], &[3, 7], &[4, 7], &[5, 7], &[6, 7],
    &[1, 4], &[1, 5], &[3, 4], &[3, 5],
];
const E3: &[&[usize]] = &[
    &[1, 6], &[2, 6], &[4, 6], &[5, 6], &[1, 7], &[2, 7], &[3, 7], &[4, 7], &[5, 7], &[6, 7],
    &[1, 4], &[1, 5], &[2, 4], &[2, 5],
];
const G: &[&[usize]] = &[
    &[2, 4], &[3, 4], &[1, 5], &[3, 5], &[1, 6], &[2, 6], &[4, 5], &[4, 6], &[5, 6], &[1, 7],
    &[2, 7], &[3, 7], &[4, 7], &[5, 7], &[6, 7], &[1, 8], &[2, 8], &[3, 8], &[4, 8], &[5, 8],
    &[6, 8], &[7, 8],
];

/// (name, source, target, components, location, note)
type MapSpec = (
    &'static str,
    &'static str,
    &'static str,
    &'static [&'static str],
    &'static str,
    Option<&'static str>,
);

const MAPS: &[MapSpec] = &[
    ("phi", "D^2", "C", &["d1", "d2", "0"], "Proposition 3.1", None),
    ("psi", "D^2", "C", &["d1", "d2", "d1*d2"], "Proposition 3.1", None),
    ("i_D(2)^D^2", "D(2)", "D^2", &["d1", "d2"], "Theorem 3.3", None),
    ("zeta", "D", "C", &["0", "0", "d1"], "Notation after Proposition 3.1", None),
    ("l1", "D^2", "E", &["d1", "d2", "0", "0"], "Theorem 3.3", None),
    ("l2", "D^2", "E", &["d1", "d2", "d1*d2", "0"], "Theorem 3.3", None),
    ("l3", "D^2", "E", &["d1", "d2", "0", "d1*d2"], "Theorem 3.3", None),
    ("m1", "C", "E", &["d1", "d2", "d3", "0"], "Theorem 3.5", Some("unnamed arrow W_E -> W_C")),
    ("m2", "C", "E", &["d1", "d2", "d1*d2 - d3", "d3"], "Theorem 3.5", Some("unnamed arrow W_E -> W_C")),
    ("m3", "C", "E", &["d1", "d2", "0", "d1*d2 - d3"], "Theorem 3.5", Some("unnamed arrow W_E -> W_C")),
    ("jac_1", "D", "E", &["0", "0", "d1", "0"], "Theorem 3.2", Some("first composite m1 . zeta")),
    ("jac_2", "D", "E", &["0", "0", "-d1", "d1"], "Theorem 3.2", Some("second composite m2 . zeta")),
    ("jac_3", "D", "E", &["0", "0", "0", "-d1"], "Theorem 3.2", Some("third composite m3 . zeta")),
    ("s", "D(3)", "E", &["0", "0", "d1 - d2", "d2 - d3"], "Theorem 3.2", Some("sum witness")),
    ("axis_1", "D", "D(3)", &["d1", "0", "0"], "Theorem 3.2", None),
    ("axis_2", "D", "D(3)", &["0", "d1", "0"], "Theorem 3.2", None),
    ("axis_3", "D", "D(3)", &["0", "0", "d1"], "Theorem 3.2", None),
    ("diag", "D", "D(3)", &["d1", "d1", "d1"], "Theorem 3.2", None),
    ("phi^3_1", "D^3", "D^4{(2,4),(3,4)}", &["d1", "d2", "d3", "0"], "Proposition 3.7", None),
    ("psi^3_1", "D^3", "D^4{(2,4),(3,4)}", &["d1", "d2", "d3", "d2*d3"], "Proposition 3.7", None),
    ("phi^3_2", "D^3", "D^4{(1,4),(3,4)}", &["d1", "d2", "d3", "0"], "Proposition 3.8", None),
    ("psi^3_2", "D^3", "D^4{(1,4),(3,4)}", &["d1", "d2", "d3", "d1*d3"], "Proposition 3.8", None),
    ("phi^3_3", "D^3", "D^4{(1,4),(2,4)}", &["d1", "d2", "d3", "0"], "Proposition 3.9", None),
    ("psi^3_3", "D^3", "D^4{(1,4),(2,4)}", &["d1", "d2", "d3", "d1*d2"], "Proposition 3.9", None),
    ("i_D^3{(2,3)}^D^3", "D^3{(2,3)}", "D^3", &["d1", "d2", "d3"], "Proposition 3.7", None),
    ("i_D^3{(1,3)}^D^3", "D^3{(1,3)}", "D^3", &["d1", "d2", "d3"], "Proposition 3.8", None),
    ("i_D^3{(1,2)}^D^3", "D^3{(1,2)}", "D^3", &["d1", "d2", "d3"], "Proposition 3.9", None),
    ("zeta_1", "D^2", "D^4{(2,4),(3,4)}", &["d1", "0", "0", "d2"], "Notation after Proposition 3.7", None),
    ("zeta_2", "D^2", "D^4{(1,4),(3,4)}", &["0", "d1", "0", "d2"], "Notation after Proposition 3.8", None),
    (
        "zeta_3",
        "D^2",
        "D^4{(1,4),(2,4)}",
        &["0", "0", "d1", "d2"],
        "Notation after Proposition 3.9",
        Some("target printed as D^4{(1,4),(3,4)}; the pullback it is defined on is D^4{(1,4),(2,4)}"),
    ),
    ("i^1_14", "D(2)", "D^4{(2,4),(3,4)}", &["d1", "0", "0", "d2"], "Proposition 3.11", None),
    ("i^2_24", "D(2)", "D^4{(1,4),(3,4)}", &["0", "d1", "0", "d2"], "Proposition 3.12", None),
    ("i^3_34", "D(2)", "D^4{(1,4),(2,4)}", &["0", "0", "d1", "d2"], "Proposition 3.13", None),
    ("eta^1_1", "D^4{(2,4),(3,4)}", "E[1]", &["d1", "d2", "d3", "0", "0", "d4", "0"], "Proposition 3.11", None),
    ("eta^1_2", "D^4{(2,4),(3,4)}", "E[1]", &["d1", "0", "0", "d2", "d3", "d4", "d1*d4"], "Proposition 3.11", None),
    ("eta^2_1", "D^4{(1,4),(3,4)}", "E[2]", &["d1", "d2", "d3", "0", "0", "d4", "0"], "Proposition 3.12", None),
    (
        "eta^2_2",
        "D^4{(1,4),(3,4)}",
        "E[2]",
        &["0", "d2", "0", "d3", "d1", "d4", "d2*d4"],
        "Proposition 3.12",
        Some("printed as (0,d2,0,d1,d3,d4,d2d4); coordinates 4 and 5 swapped to agree with the iota^2 list used in Lemma 3.15"),
    ),
    (
        "eta^2_2_printed",
        "D^4{(1,4),(3,4)}",
        "E[2]",
        &["0", "d2", "0", "d1", "d3", "d4", "d2*d4"],
        "Proposition 3.12",
        Some("as printed; also a pullback leg, differs from eta^2_2 by the swap of coordinates 4 and 5 of E[2]"),
    ),
    ("eta^3_1", "D^4{(1,4),(2,4)}", "E[3]", &["d1", "d2", "d3", "0", "0", "d4", "0"], "Proposition 3.13", None),
    (
        "eta^3_2",
        "D^4{(1,4),(2,4)}",
        "E[3]",
        &["0", "0", "d3", "d1", "d2", "d4", "d3*d4"],
        "Proposition 3.13",
        Some("domain printed once as D^4{(1,4),(3,4)}"),
    ),
    ("iota^1_1", "D^3", "E[1]", &["d1", "d2", "d3", "0", "0", "0", "0"], "Notation after Proposition 3.11", None),
    ("iota^1_2", "D^3", "E[1]", &["d1", "d2", "d3", "0", "0", "d2*d3", "0"], "Notation after Proposition 3.11", None),
    ("iota^1_3", "D^3", "E[1]", &["d1", "0", "0", "d2", "d3", "0", "0"], "Notation after Proposition 3.11", None),
    ("iota^1_4", "D^3", "E[1]", &["d1", "0", "0", "d2", "d3", "d2*d3", "d1*d2*d3"], "Notation after Proposition 3.11", None),
    ("iota^2_1", "D^3", "E[2]", &["d1", "d2", "d3", "0", "0", "0", "0"], "Notation after Proposition 3.12", None),
    (
        "iota^2_2",
        "D^3",
        "E[2]",
        &["d1", "d2", "d3", "0", "0", "d1*d3", "0"],
        "Notation after Proposition 3.12",
        Some("printed with d2d3 in coordinate 6; eta^2_1 . psi^3_2 gives d1d3"),
    ),
    ("iota^2_3", "D^3", "E[2]", &["0", "d2", "0", "d3", "d1", "0", "0"], "Notation after Proposition 3.12", None),
    ("iota^2_4", "D^3", "E[2]", &["0", "d2", "0", "d3", "d1", "d1*d3", "d1*d2*d3"], "Notation after Proposition 3.12", None),
    ("iota^3_1", "D^3", "E[3]", &["d1", "d2", "d3", "0", "0", "0", "0"], "Notation after Proposition 3.13", None),
    ("iota^3_2", "D^3", "E[3]", &["d1", "d2", "d3", "0", "0", "d1*d2", "0"], "Notation after Proposition 3.13", None),
    ("iota^3_3", "D^3", "E[3]", &["0", "0", "d3", "d1", "d2", "0", "0"], "Notation after Proposition 3.13", None),
    ("iota^3_4", "D^3", "E[3]", &["0", "0", "d3", "d1", "d2", "d1*d2", "d1*d2*d3"], "Notation after Proposition 3.13", None),
    (
        "k1",
        "E[1]",
        "G",
        &["d1", "d2 + d4", "d3 + d5", "d6 - d2*d3 - d4*d5", "-d1*d5", "d1*d4", "d7 + d1*d2*d3", "d1*d2*d3"],
        "Theorem 3.14",
        None,
    ),
    (
        "k2",
        "E[2]",
        "G",
        &["d1 + d5", "d2", "d3 + d4", "-d2*d3", "d6 - d1*d3 - d4*d5", "d1*d2", "d2*d4*d5", "d7"],
        "Theorem 3.14",
        None,
    ),
    (
        "k3",
        "E[3]",
        "G",
        &["d1 + d4", "d2 + d5", "d3", "-d3*d5", "-d1*d3", "d6", "-d7 + d1*d2*d3 + d3*d4*d5", "-d7 + d3*d4*d5"],
        "Theorem 3.14",
        Some("printed coordinates 4 and 7 (-d4d5, -d7) fail validation; these are the unique values compatible with k1, k2"),
    ),
    ("step_1", "C", "E[1]", &["d1", "0", "0", "0", "0", "d2", "d3"], "Theorem 3.16", None),
    ("step_2", "C", "E[2]", &["0", "d1", "0", "0", "0", "d2", "d3"], "Theorem 3.16", None),
    ("step_3", "C", "E[3]", &["0", "0", "d1", "0", "0", "d2", "d3"], "Theorem 3.16", None),
    ("gen_1", "D", "G", &["0", "0", "0", "0", "0", "0", "d1", "0"], "Theorem 3.16", Some("first step result")),
    ("gen_2", "D", "G", &["0", "0", "0", "0", "0", "0", "0", "d1"], "Theorem 3.16", Some("second step result")),
    ("gen_3", "D", "G", &["0", "0", "0", "0", "0", "0", "-d1", "-d1"], "Theorem 3.16", Some("third step result")),
    ("t", "D(3)", "G", &["0", "0", "0", "0", "0", "0", "d1 - d3", "d2 - d3"], "Theorem 3.16", Some("sum witness")),
];

/// (name, left, right, location, note) for `left (+) right : D^3 (+) D^3 -> E[i]`.
const H_MAPS: &[(&str, &str, &str, &str, Option<&str>)] = &[
    ("h^1_12", "iota^1_2", "iota^1_3", "Theorem 3.14", None),
    ("h^2_12", "iota^2_4", "iota^2_1", "Theorem 3.14", None),
    ("h^2_23", "iota^2_2", "iota^2_3", "Theorem 3.14", None),
    ("h^3_23", "iota^3_4", "iota^3_1", "Theorem 3.14", None),
    ("h^3_31", "iota^3_2", "iota^3_3", "Theorem 3.14", None),
    (
        "h^1_31",
        "iota^1_4",
        "iota^1_1",
        "Theorem 3.14",
        Some("printed as iota^1_4 (+) iota^2_1, whose blocks land in E[1] and E[2]"),
    ),
];

/// `(iota, eta, phi-or-psi)`: the stated composites `iota = eta . phi/psi`.
pub const IOTA_COMPOSITES: &[(&str, &str, &str)] = &[
    ("iota^1_1", "eta^1_1", "phi^3_1"),
    ("iota^1_2", "eta^1_1", "psi^3_1"),
    ("iota^1_3", "eta^1_2", "phi^3_1"),
    ("iota^1_4", "eta^1_2", "psi^3_1"),
    ("iota^2_1", "eta^2_1", "phi^3_2"),
    ("iota^2_2", "eta^2_1", "psi^3_2"),
    ("iota^2_3", "eta^2_2", "phi^3_2"),
    ("iota^2_4", "eta^2_2", "psi^3_2"),
    ("iota^3_1", "eta^3_1", "phi^3_3"),
    ("iota^3_2", "eta^3_1", "psi^3_3"),
    ("iota^3_3", "eta^3_2", "phi^3_3"),
    ("iota^3_4", "eta^3_2", "psi^3_3"),
];

/// `(h, left iota, right iota)`.
pub fn h_blocks() -> impl Iterator<Item = (&'static str, &'static str, &'static str)> {
    H_MAPS.iter().map(|&(h, l, r, _, _)| (h, l, r))
}

fn named_objects() -> Result<Vec<ObjectEntry>> {
    let o = |n: usize, sets: &[&[usize]]| SimplicialObject::new(n, sets.iter().copied());
    let d3 = SimplicialObject::cube(3)?;
    Ok(vec![
        ObjectEntry { name: "D", object: SimplicialObject::d(), location: "Proposition 3.1" },
        ObjectEntry { name: "D^2", object: SimplicialObject::cube(2)?, location: "Proposition 3.1" },
        ObjectEntry { name: "D^3", object: d3.clone(), location: "Proposition 3.7" },
        ObjectEntry { name: "D(2)", object: SimplicialObject::first_order(2)?, location: "Theorem 3.3" },
        ObjectEntry { name: "D(3)", object: SimplicialObject::first_order(3)?, location: "Theorem 3.2" },
        ObjectEntry { name: "C", object: o(3, &[&[1, 3], &[2, 3]])?, location: "Proposition 3.1" },
        ObjectEntry {
            name: "E",
            object: o(4, &[&[1, 3], &[2, 3], &[1, 4], &[2, 4], &[3, 4]])?,
            location: "Theorem 3.3",
        },
        ObjectEntry { name: "D^3{(2,3)}", object: o(3, &[&[2, 3]])?, location: "Proposition 3.7" },
        ObjectEntry { name: "D^3{(1,3)}", object: o(3, &[&[1, 3]])?, location: "Proposition 3.8" },
        ObjectEntry { name: "D^3{(1,2)}", object: o(3, &[&[1, 2]])?, location: "Proposition 3.9" },
        ObjectEntry { name: "D^4{(2,4),(3,4)}", object: o(4, &[&[2, 4], &[3, 4]])?, location: "Proposition 3.7" },
        ObjectEntry { name: "D^4{(1,4),(3,4)}", object: o(4, &[&[1, 4], &[3, 4]])?, location: "Proposition 3.8" },
        ObjectEntry { name: "D^4{(1,4),(2,4)}", object: o(4, &[&[1, 4], &[2, 4]])?, location: "Proposition 3.9" },
        ObjectEntry { name: "E[1]", object: o(7, E1)?, location: "Proposition 3.11" },
        ObjectEntry { name: "E[2]", object: o(7, E2)?, location: "Proposition 3.12" },
        ObjectEntry { name: "E[3]", object: o(7, E3)?, location: "Proposition 3.13" },
        ObjectEntry { name: "G", object: o(8, G)?, location: "Theorem 3.14" },
        ObjectEntry { name: "D^3(+)D^3", object: d3.oplus(&d3)?, location: "Theorem 3.14" },
    ])
}

fn tagged(name: &str, e: Error) -> Error {
    Error::InvalidMap(format!("catalog entry `{name}`: {e}"))
}

/// Builds and validates every entry; the first failure aborts with the
/// offending name.
pub fn build_catalog() -> Result<Catalog> {
    let objects = named_objects()?;
    let mut cat = Catalog {
        objects,
        maps: Vec::new(),
        rejected: Vec::new(),
    };
    for &(name, src, tgt, comps, location, note) in MAPS {
        let map = InfinitesimalMap::parse(cat.object(src)?, cat.object(tgt)?, comps)
            .and_then(|m| m.ensure_valid().map(|()| m))
            .map_err(|e| tagged(name, e))?;
        cat.maps.push(MapEntry { name, map, location, note });
    }
    for &(name, left, right, location, note) in H_MAPS {
        let map = InfinitesimalMap::oplus(&[cat.map(left)?.clone(), cat.map(right)?.clone()])
            .map_err(|e| tagged(name, e))?;
        cat.maps.push(MapEntry { name, map, location, note });
    }
    cat.rejected = cat.printed_readings();
    Ok(cat)
}

impl Catalog {
    pub fn objects(&self) -> &[ObjectEntry] {
        &self.objects
    }

    pub fn maps(&self) -> &[MapEntry] {
        &self.maps
    }

    pub fn rejected(&self) -> &[RejectedEntry] {
        &self.rejected
    }

    pub fn object(&self, name: &str) -> Result<&SimplicialObject> {
        self.objects
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.object)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn map(&self, name: &str) -> Result<&InfinitesimalMap> {
        self.map_entry(name).map(|e| &e.map)
    }

    pub fn map_entry(&self, name: &str) -> Result<&MapEntry> {
        self.maps
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// `W_name`.
    pub fn hom(&self, name: &str) -> Result<AlgebraHom> {
        AlgebraHom::induced(self.map(name)?)
    }

    /// Name-to-location table covering objects and maps.
    pub fn provenance(&self) -> BTreeMap<&'static str, &'static str> {
        self.objects
            .iter()
            .map(|e| (e.name, e.location))
            .chain(self.maps.iter().map(|e| (e.name, e.location)))
            .collect()
    }

    /// The printed `h^1_31 = iota^1_4 (+) iota^2_1`.
    pub fn printed_h31(&self) -> Result<InfinitesimalMap> {
        InfinitesimalMap::oplus(&[self.map("iota^1_4")?.clone(), self.map("iota^2_1")?.clone()])
    }

    fn printed_readings(&self) -> Vec<RejectedEntry> {
        /// (name, as printed, source, target, components, location, replacement)
        type PrintedMap = (&'static str, &'static str, &'static str, &'static str, &'static [&'static str], &'static str, &'static str);
        let mut out = Vec::new();
        if let Err(error) = self.printed_h31() {
            out.push(RejectedEntry {
                name: "h^1_31_printed",
                printed: "iota^1_4 (+) iota^2_1",
                location: "Theorem 3.14",
                error,
                replacement: "h^1_31",
            });
        }
        let printed: [PrintedMap; 2] = [
            (
                "k3_printed",
                "(d1+d4, d2+d5, d3, -d4d5, -d1d3, d6, -d7, -d7+d3d4d5)",
                "E[3]",
                "G",
                &["d1 + d4", "d2 + d5", "d3", "-d4*d5", "-d1*d3", "d6", "-d7", "-d7 + d3*d4*d5"],
                "Theorem 3.14",
                "k3",
            ),
            (
                "iota^2_2_printed",
                "(d1, d2, d3, 0, 0, d2d3, 0)",
                "D^3",
                "E[2]",
                &["d1", "d2", "d3", "0", "0", "d2*d3", "0"],
                "Notation after Proposition 3.12",
                "iota^2_2",
            ),
        ];
        for (name, formula, src, tgt, comps, location, replacement) in printed {
            let result = self
                .object(src)
                .and_then(|s| Ok((s, self.object(tgt)?)))
                .and_then(|(s, t)| InfinitesimalMap::parse(s, t, comps))
                .and_then(|m| m.ensure_valid());
            if let Err(error) = result {
                out.push(RejectedEntry {
                    name,
                    printed: formula,
                    location,
                    error,
                    replacement,
                });
            }
        }
        out
    }
}
