//! Curated diagrams with optional golden homology tables.

use std::path::PathBuf;

use crate::diagram::{parse_pd, PlanarDiagram};
use crate::error::{Error, Result};
use crate::invariants::HomologyTable;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub pd: &'static str,
    pub provenance: &'static str,
}

macro_rules! fixture_entry {
    ($name:literal, $prov:literal) => {
        Fixture {
            name: $name,
            pd: include_str!(concat!("../data/fixtures/", $name, ".pd")),
            provenance: $prov,
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture_entry!("unknot", "crossingless circle"),
    fixture_entry!("trefoil", "3_1 with all crossings negative (left-handed)"),
    fixture_entry!(
        "trefoil_kinked",
        "left-handed trefoil with one extra positive Reidemeister-1 kink"
    ),
    fixture_entry!("figure_eight", "4_1 from standard knot tables"),
    fixture_entry!("hopf", "torus2:2, both crossings negative"),
    fixture_entry!("torus_2_5", "torus2:5, left-handed cinquefoil"),
    fixture_entry!("granny", "connect(torus2:3,torus2:3)"),
    fixture_entry!("square", "connect(torus2:3,mirror(torus2:3))"),
    fixture_entry!(
        "granny_disjoint_unknot",
        "figure3(3,3).L: unknot disjoint from the granny knot"
    ),
    fixture_entry!(
        "trefoil_disjoint_trefoil",
        "figure3(3,3).Lp: two disjoint left-handed trefoils"
    ),
    fixture_entry!(
        "kinoshita_terasaka",
        "11n42 from standard knot tables, taken as printed"
    ),
    fixture_entry!("conway", "11n34 from standard knot tables, taken as printed"),
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|f| f.name)
}

pub fn lookup(name: &str) -> Result<&'static Fixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn fixture(name: &str) -> Result<PlanarDiagram> {
    parse_pd(lookup(name)?.pd)
}

/// Where the golden table for `name` lives in the source tree.
pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data/golden")
        .join(format!("{name}.json"))
}

/// Golden table for `name`, if one has been generated.
pub fn golden(name: &str) -> Result<Option<HomologyTable>> {
    lookup(name)?;
    let path = golden_path(name);
    match std::fs::read_to_string(&path) {
        Ok(text) => serde_json::from_str(&text)
            .map(Some)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(Error::Io(format!("{}: {e}", path.display()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for f in FIXTURES {
            let d = fixture(f.name).unwrap_or_else(|e| panic!("{}: {e}", f.name));
            assert!(d.crossing_count() <= 13, "{}", f.name);
        }
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn mutant_knots_are_eleven_crossing_knots() {
        for name in ["kinoshita_terasaka", "conway"] {
            let d = fixture(name).unwrap();
            assert_eq!((d.crossing_count(), d.components()), (11, 1));
        }
    }
}
