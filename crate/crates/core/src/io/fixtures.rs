//! The named fixture catalog.

use super::Document;
use crate::decomposition::{Decomposition, PosetStratification};
use crate::error::{Error, Result};
use crate::order::{Poset, Proset, SymbolicFamily};
use crate::topology::FiniteSpace;

pub const FIXTURE_NAMES: [&str; 11] = [
    "sierpinski",
    "chain_3",
    "pseudo_circle_4",
    "line_3",
    "quadrant_4",
    "diamond",
    "chain_4",
    "two_point_discrete",
    "nat_usual",
    "nat_opposite",
    "nat_discrete",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub notes: &'static str,
    pub document: Document,
}

pub fn fixture_names() -> &'static [&'static str] {
    &FIXTURE_NAMES
}

fn diamond() -> Poset {
    Poset::from_relation(
        &["0", "1", "2", "3"],
        &[("0", "1"), ("0", "2"), ("1", "3"), ("2", "3")],
        true,
    )
    .expect("diamond is a poset")
}

pub fn fixture(name: &str) -> Result<Fixture> {
    let (notes, document) = match name {
        "sierpinski" => (
            "two points, one open singleton",
            Document::Space(FiniteSpace::from_subbasis(&["c", "o"], &[vec!["o"]])?),
        ),
        "chain_3" => (
            "three-element chain as an Alexandrov space, one stratum per point",
            Document::Decomposition(Decomposition::pointwise(
                Proset::chain(&["c0", "c1", "c2"])?.alexandrov_space(),
            )),
        ),
        "pseudo_circle_4" => (
            "two strata whose decomposition space is the indiscrete two-point space",
            Document::Decomposition(Decomposition::new(
                FiniteSpace::from_subbasis(
                    &["a", "b", "x", "y"],
                    &[
                        vec!["a"],
                        vec!["b"],
                        vec!["a", "b", "x"],
                        vec!["a", "b", "y"],
                    ],
                )?,
                &[("1", vec!["a", "x"]), ("2", vec!["b", "y"])],
            )?),
        ),
        "line_3" => (
            "the real line cut at the origin, with the origin glued to the negative half",
            Document::Decomposition(Decomposition::new(
                FiniteSpace::from_min_open_names(
                    &["m", "z", "p"],
                    &[
                        ("m", vec!["m"]),
                        ("z", vec!["m", "z", "p"]),
                        ("p", vec!["p"]),
                    ],
                )?,
                &[("0", vec!["m", "z"]), ("1", vec!["p"])],
            )?),
        ),
        "quadrant_4" => (
            "closed quadrant stratified by corner, two open edges and interior",
            Document::Decomposition(Decomposition::pointwise(diamond().alexandrov_space())),
        ),
        "diamond" => (
            "the order 0 <= 1,2 <= 3 on the quadrant strata",
            Document::OrderOnStrata(diamond()),
        ),
        "chain_4" => (
            "a chain refining the diamond order on the quadrant strata",
            Document::OrderOnStrata(Poset::new(Proset::chain(&["0", "1", "2", "3"])?)?),
        ),
        "two_point_discrete" => (
            "discrete two-point space, one stratum per point",
            Document::Decomposition(Decomposition::pointwise(FiniteSpace::discrete(&[
                "0", "1",
            ])?)),
        ),
        "nat_usual" => (
            "natural numbers with the usual order",
            Document::Symbolic(SymbolicFamily::NatUsual),
        ),
        "nat_opposite" => (
            "natural numbers with the reversed order",
            Document::Symbolic(SymbolicFamily::NatOpposite),
        ),
        "nat_discrete" => (
            "natural numbers with the equality order",
            Document::Symbolic(SymbolicFamily::NatDiscrete),
        ),
        other => return Err(Error::UnknownFixture(other.to_owned())),
    };
    let name = FIXTURE_NAMES
        .iter()
        .copied()
        .find(|n| *n == name)
        .expect("catalog names are listed");
    Ok(Fixture {
        name,
        notes,
        document,
    })
}

/// The quadrant stratification paired with its diamond order.
pub fn quadrant_stratification() -> PosetStratification {
    PosetStratification::new(
        Decomposition::pointwise(diamond().alexandrov_space()),
        diamond(),
    )
    .expect("diamond makes the quadrant map continuous")
}
