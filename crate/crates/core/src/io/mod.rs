//! JSON documents, the fixture catalog, generators and DOT export.
//!
//! Documents are JSON objects tagged by `"kind"`:
//!
//! ```text
//! {"kind":"space","points":[..],"min_open":{"x":[..],..}}        (or "subbasis":[[..],..])
//! {"kind":"proset","elements":[..],"leq_pairs":[["a","b"],..],"close":true}
//! {"kind":"poset", ...same payload...}
//! {"kind":"order-on-strata", ...same payload...}
//! {"kind":"decomposition","space":<space | {"fixture":name}>,"strata":{"id":[..],..}}
//! {"kind":"map","source":<space>,"target":<space>,"assignment":{"x":"y",..}}
//! {"kind":"poset-stratification","decomposition":<decomposition>,"order":<poset>}
//! {"kind":"symbolic","family":"nat_usual"}
//! {"kind":"classification", ...report...}
//! {"kind":"sweep-report", ...report...}
//! ```
//!
//! [`save`] writes canonical text: keys sorted, point and element lists
//! sorted, spaces always as `min_open`, relations as their strict pairs with
//! `"close": true`.

mod dot;
mod face;
mod fixtures;
mod generate;

pub use dot::{export_dot, export_dot_decomposition, export_dot_poset};
pub use face::{face_poset_model, FaceModel};
pub use fixtures::{fixture, fixture_names, quadrant_stratification, Fixture, FIXTURE_NAMES};
pub use generate::{generate, GenKind, GenParams, SplitMix64};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::decomposition::{ClassificationReport, Decomposition, PosetStratification};
use crate::error::{Error, Result};
use crate::oracle::SweepReport;
use crate::order::{Poset, Proset, SymbolicFamily};
use crate::topology::{FiniteSpace, SpaceMap};

/// An owned point map, as carried by a `map` document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDocument {
    pub source: FiniteSpace,
    pub target: FiniteSpace,
    pub assignment: Vec<usize>,
}

impl MapDocument {
    pub fn as_map(&self) -> SpaceMap<'_> {
        SpaceMap::new(&self.source, &self.target, self.assignment.as_slice())
            .expect("validated on load")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Space(FiniteSpace),
    Proset(Proset),
    Poset(Poset),
    Decomposition(Decomposition),
    Map(MapDocument),
    OrderOnStrata(Poset),
    PosetStratification(PosetStratification),
    Symbolic(SymbolicFamily),
    Classification(Box<ClassificationReport>),
    Sweep(Box<SweepReport>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Space(_) => "space",
            Document::Proset(_) => "proset",
            Document::Poset(_) => "poset",
            Document::Decomposition(_) => "decomposition",
            Document::Map(_) => "map",
            Document::OrderOnStrata(_) => "order-on-strata",
            Document::PosetStratification(_) => "poset-stratification",
            Document::Symbolic(_) => "symbolic",
            Document::Classification(_) => "classification",
            Document::Sweep(_) => "sweep-report",
        }
    }

    pub fn into_decomposition(self) -> Result<Decomposition> {
        match self {
            Document::Decomposition(d) => Ok(d),
            Document::PosetStratification(ps) => Ok(ps.into_parts().0),
            other => Err(Error::InvalidDocument(format!(
                "expected a decomposition, got `{}`",
                other.kind()
            ))),
        }
    }

    /// Any order-like document that is antisymmetric.
    pub fn into_poset(self) -> Result<Poset> {
        match self {
            Document::Poset(p) | Document::OrderOnStrata(p) => Ok(p),
            Document::Proset(p) => Poset::new(p),
            Document::PosetStratification(ps) => Ok(ps.into_parts().1),
            other => Err(Error::InvalidDocument(format!(
                "expected a partial order, got `{}`",
                other.kind()
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    min_open: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subbasis: Option<Vec<Vec<String>>>,
}

fn default_close() -> bool {
    true
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    elements: Vec<String>,
    #[serde(default)]
    leq_pairs: Vec<(String, String)>,
    #[serde(default = "default_close")]
    close: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SpaceRef {
    Fixture { fixture: String },
    Inline(SpaceWire),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    space: SpaceRef,
    strata: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    source: SpaceWire,
    target: SpaceWire,
    assignment: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetStratificationWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    decomposition: DecompositionWire,
    order: RelationWire,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolicWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    family: SymbolicFamily,
}

#[derive(Serialize, Deserialize)]
struct Tagged<T> {
    kind: String,
    #[serde(flatten)]
    body: T,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: {
            let text = e.to_string();
            match text.rsplit_once(" at line ") {
                Some((head, _)) => head.to_owned(),
                None => text,
            }
        },
    }
}

fn check_kind(found: &Option<String>, expected: &str) -> Result<()> {
    match found {
        Some(k) if k != expected => Err(Error::InvalidDocument(format!(
            "nested document has kind `{k}`, expected `{expected}`"
        ))),
        _ => Ok(()),
    }
}

/// Parses and validates a document.
pub fn load(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(parse_error)?;
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidDocument("missing string field `kind`".into()))?
        .to_owned();
    fn typed<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
        serde_json::from_str(text).map_err(parse_error)
    }
    match kind.as_str() {
        "space" => Ok(Document::Space(space_from_wire(typed(text)?)?)),
        "proset" => Ok(Document::Proset(proset_from_wire(typed(text)?)?)),
        "poset" => Ok(Document::Poset(Poset::new(proset_from_wire(typed(
            text,
        )?)?)?)),
        "order-on-strata" => Ok(Document::OrderOnStrata(Poset::new(proset_from_wire(
            typed(text)?,
        )?)?)),
        "decomposition" => Ok(Document::Decomposition(decomposition_from_wire(typed(
            text,
        )?)?)),
        "map" => {
            let wire: MapWire = typed(text)?;
            let source = space_from_wire(wire.source)?;
            let target = space_from_wire(wire.target)?;
            let pairs: Vec<(String, String)> = wire.assignment.into_iter().collect();
            let assignment = SpaceMap::from_names(&source, &target, &pairs)?
                .assignment()
                .to_vec();
            Ok(Document::Map(MapDocument {
                source,
                target,
                assignment,
            }))
        }
        "poset-stratification" => {
            let wire: PosetStratificationWire = typed(text)?;
            check_kind(&wire.decomposition.kind, "decomposition")?;
            let dec = decomposition_from_wire(wire.decomposition)?;
            let order = Poset::new(proset_from_wire(wire.order)?)?;
            Ok(Document::PosetStratification(PosetStratification::new(
                dec, order,
            )?))
        }
        "symbolic" => {
            let wire: SymbolicWire = typed(text)?;
            Ok(Document::Symbolic(wire.family))
        }
        "classification" => {
            let wire: Tagged<ClassificationReport> = typed(text)?;
            Ok(Document::Classification(Box::new(wire.body)))
        }
        "sweep-report" => {
            let wire: Tagged<SweepReport> = typed(text)?;
            Ok(Document::Sweep(Box::new(wire.body)))
        }
        other => Err(Error::InvalidDocument(format!("unknown kind `{other}`"))),
    }
}

fn space_from_wire(wire: SpaceWire) -> Result<FiniteSpace> {
    check_kind(&wire.kind, "space")?;
    match (wire.min_open, wire.subbasis) {
        (Some(min_open), None) => {
            let pairs: Vec<(String, Vec<String>)> = min_open.into_iter().collect();
            FiniteSpace::from_min_open_names(&wire.points, &pairs)
        }
        (None, Some(subbasis)) => FiniteSpace::from_subbasis(&wire.points, &subbasis),
        (None, None) => Err(Error::InvalidDocument(
            "space needs `min_open` or `subbasis`".into(),
        )),
        (Some(_), Some(_)) => Err(Error::InvalidDocument(
            "space has both `min_open` and `subbasis`".into(),
        )),
    }
}

fn proset_from_wire(wire: RelationWire) -> Result<Proset> {
    Proset::from_relation(&wire.elements, &wire.leq_pairs, wire.close)
}

fn decomposition_from_wire(wire: DecompositionWire) -> Result<Decomposition> {
    check_kind(&wire.kind, "decomposition")?;
    let space = match wire.space {
        SpaceRef::Inline(space) => space_from_wire(space)?,
        SpaceRef::Fixture { fixture: name } => match fixture(&name)?.document {
            Document::Space(s) => s,
            Document::Decomposition(d) => d.space().clone(),
            Document::PosetStratification(ps) => ps.decomposition().space().clone(),
            other => {
                return Err(Error::InvalidDocument(format!(
                    "fixture `{name}` is a `{}`, not a space",
                    other.kind()
                )))
            }
        },
    };
    let strata: Vec<(String, Vec<String>)> = wire.strata.into_iter().collect();
    Decomposition::new(space, &strata)
}

fn space_to_wire(space: &FiniteSpace) -> SpaceWire {
    let mut points = space.points().to_vec();
    points.sort();
    let min_open = (0..space.len())
        .map(|x| {
            (
                space.point_name(x).to_owned(),
                space.sorted_names(space.min_open(x)),
            )
        })
        .collect();
    SpaceWire {
        kind: Some("space".into()),
        points,
        min_open: Some(min_open),
        subbasis: None,
    }
}

fn relation_to_wire(p: &Proset, kind: &str) -> RelationWire {
    let mut elements = p.elements().to_vec();
    elements.sort();
    RelationWire {
        kind: Some(kind.into()),
        elements,
        leq_pairs: p.strict_pairs(),
        close: true,
    }
}

fn decomposition_to_wire(d: &Decomposition) -> DecompositionWire {
    let strata = d
        .stratum_ids()
        .iter()
        .zip(d.strata())
        .map(|(id, s)| (id.clone(), d.space().sorted_names(s)))
        .collect();
    DecompositionWire {
        kind: Some("decomposition".into()),
        space: SpaceRef::Inline(space_to_wire(d.space())),
        strata,
    }
}

/// The document as a JSON value with sorted keys.
pub fn to_value(doc: &Document) -> Value {
    let value = match doc {
        Document::Space(s) => serde_json::to_value(space_to_wire(s)),
        Document::Proset(p) => serde_json::to_value(relation_to_wire(p, "proset")),
        Document::Poset(p) => serde_json::to_value(relation_to_wire(p, "poset")),
        Document::OrderOnStrata(p) => serde_json::to_value(relation_to_wire(p, "order-on-strata")),
        Document::Decomposition(d) => serde_json::to_value(decomposition_to_wire(d)),
        Document::Map(m) => {
            let assignment = (0..m.source.len())
                .map(|x| {
                    (
                        m.source.point_name(x).to_owned(),
                        m.target.point_name(m.assignment[x]).to_owned(),
                    )
                })
                .collect();
            serde_json::to_value(MapWire {
                kind: Some("map".into()),
                source: space_to_wire(&m.source),
                target: space_to_wire(&m.target),
                assignment,
            })
        }
        Document::PosetStratification(ps) => serde_json::to_value(PosetStratificationWire {
            kind: Some("poset-stratification".into()),
            decomposition: decomposition_to_wire(ps.decomposition()),
            order: relation_to_wire(ps.order(), "poset"),
        }),
        Document::Symbolic(f) => serde_json::to_value(SymbolicWire {
            kind: Some("symbolic".into()),
            family: *f,
        }),
        Document::Classification(r) => serde_json::to_value(Tagged {
            kind: "classification".into(),
            body: r,
        }),
        Document::Sweep(r) => serde_json::to_value(Tagged {
            kind: "sweep-report".into(),
            body: r,
        }),
    };
    // serde_json's map is ordered by key, so converting through Value sorts
    // every object.
    value.expect("documents serialize to JSON")
}

/// Canonical text for a document, newline-terminated.
pub fn save(doc: &Document) -> String {
    let mut text = serde_json::to_string_pretty(&to_value(doc)).expect("values serialize");
    text.push('\n');
    text
}

/// Reads a document from a file path, or from standard input for `-`.
pub fn read_document(path: &str) -> Result<Document> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| Error::InvalidDocument(format!("reading stdin: {e}")))?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidDocument(format!("reading `{path}`: {e}")))?
    };
    load(&text)
}
