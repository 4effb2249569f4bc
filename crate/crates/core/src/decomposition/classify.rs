//! Independent evaluations of equivalent conditions on a decomposition.
//!
//! Each function evaluates every condition of an equivalence group by its
//! own route and returns [`Error::Defect`] if the answers disagree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Decomposition;
use crate::bitset::PointSet;
use crate::error::{ensure, Error, Result};
use crate::oracle;
use crate::topology::{all_subsets, MapProperty};

/// Open-set enumeration for the decomposition space is used below this
/// many strata; above it the saturation fixpoint is checked instead.
const QUOTIENT_FILTER_LIMIT: usize = 12;
/// Saturation formulas enumerate every open and closed set of spaces up
/// to this size and fall back to the minimal open/closed sets above it.
const SATURATION_ENUMERATION_LIMIT: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexandrovConditions {
    /// Every stratum has a minimal open neighborhood in the decomposition space.
    pub decomposition_space_alexandrov: bool,
    /// The Alexandrov topology of the decomposition preorder equals the
    /// quotient topology.
    pub identity_homeomorphism: bool,
    /// `π` is continuous into the Alexandrov space of the decomposition preorder.
    pub pi_continuous_to_preorder: bool,
}

impl AlexandrovConditions {
    pub fn holds(&self) -> bool {
        self.decomposition_space_alexandrov
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierConditions {
    /// A stratum meeting the closure of another lies inside it.
    pub frontier_condition: bool,
    /// The closure of each stratum is its minimal closed union of strata.
    pub closure_is_minimal_closed_union: bool,
    /// The decomposition preorder is `i ≤ j ⟺ X_i ⊆ closure(X_j)`.
    pub preorder_is_closure_order: bool,
    /// `π` onto the decomposition space is an open map.
    pub pi_open: bool,
    pub witnesses: BTreeMap<String, String>,
}

impl FrontierConditions {
    pub fn holds(&self) -> bool {
        self.frontier_condition
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetStratifiedConditions {
    /// Some partial order on the strata makes `π` continuous.
    pub some_partial_order: bool,
    /// The decomposition preorder is a partial order making `π` continuous.
    pub decomposition_preorder: bool,
    /// Each stratum is open in its minimal closed union of strata.
    pub strata_open_in_closed_hull: bool,
}

impl PosetStratifiedConditions {
    pub fn holds(&self) -> bool {
        self.decomposition_preorder
    }
}

/// Saturation formulas and the map properties they pair with.
///
/// Lower semicontinuity is `π` open, upper semicontinuity is `π` closed.
/// Saturations of open sets are open exactly when `π` is open, and
/// saturations of closed sets are closed exactly when `π` is closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semicontinuity {
    pub sat_open_open: bool,
    pub sat_closed_closed: bool,
    pub pi_open: bool,
    pub pi_closed: bool,
}

impl Semicontinuity {
    pub fn lower_semicontinuous(&self) -> bool {
        self.pi_open
    }

    pub fn upper_semicontinuous(&self) -> bool {
        self.pi_closed
    }

    pub fn continuous(&self) -> bool {
        self.pi_open && self.pi_closed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationVerdict {
    pub locally_finite: bool,
    pub locally_closed: BTreeMap<String, bool>,
    pub frontier: bool,
    /// One entry per failed clause.
    pub reasons: Vec<String>,
}

impl StratificationVerdict {
    pub fn is_stratification(&self) -> bool {
        self.reasons.is_empty()
    }
}

/// Highest rung of the classification ladder a decomposition reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Decomposition,
    Alexandrov,
    PosetStratified,
    Stratification,
}

impl Level {
    pub const ALL: [Level; 4] = [
        Level::Decomposition,
        Level::Alexandrov,
        Level::PosetStratified,
        Level::Stratification,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::Decomposition => "decomposition",
            Level::Alexandrov => "alexandrov",
            Level::PosetStratified => "poset-stratified",
            Level::Stratification => "stratification",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Level::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown level `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub level: Level,
    pub alexandrov: AlexandrovConditions,
    pub locally_finite: bool,
    pub locally_closed: BTreeMap<String, bool>,
    pub frontier: FrontierConditions,
    pub poset_stratified: PosetStratifiedConditions,
    pub stratification: bool,
    pub semicontinuity: Semicontinuity,
    /// Pairs `(i, j)` of the decomposition preorder, `i ≠ j`.
    pub decomposition_preorder: Vec<(String, String)>,
    pub reasons: Vec<String>,
    pub witnesses: BTreeMap<String, String>,
}

pub fn alexandrov_equivalences(d: &Decomposition) -> Result<AlexandrovConditions> {
    let k = d.stratum_count();
    let hulls: Vec<PointSet> = (0..k).map(|i| d.open_hull_strata(i)).collect();

    let decomposition_space_alexandrov = if k <= QUOTIENT_FILTER_LIMIT {
        let opens: Vec<PointSet> = all_subsets(k, QUOTIENT_FILTER_LIMIT, "decomposition space")?
            .filter(|j| d.space().is_open(&d.preimage(j)))
            .collect();
        (0..k).all(|i| {
            let mut meet = PointSet::full(k);
            for open in opens.iter().filter(|o| o.contains(i)) {
                meet.intersect_with(open);
            }
            opens.contains(&meet)
        })
    } else {
        hulls
            .iter()
            .enumerate()
            .all(|(i, h)| h.contains(i) && d.space().is_open(&d.preimage(h)))
    };

    // The preorder comes from closed hulls, the quotient topology from open
    // hulls; the identity is a homeomorphism when up-sets and quotient-opens
    // coincide.
    let preorder_down: Vec<PointSet> = (0..k).map(|j| d.closed_hull_strata(j)).collect();
    let leq = |i: usize, j: usize| preorder_down[j].contains(i);
    let up_sets: Vec<PointSet> = (0..k)
        .map(|i| PointSet::from_indices(k, (0..k).filter(|&j| leq(i, j))))
        .collect();
    let up_sets_open = up_sets.iter().all(|u| d.space().is_open(&d.preimage(u)));
    let hulls_upward = hulls
        .iter()
        .all(|h| h.iter().all(|i| up_sets[i].is_subset(h)));
    let identity_homeomorphism = up_sets_open && hulls_upward;

    let space = d.space();
    let pi = d.labels();
    let pi_continuous_to_preorder =
        (0..space.len()).all(|x| space.min_open(x).iter().all(|y| leq(pi[x], pi[y])));

    ensure(
        decomposition_space_alexandrov == identity_homeomorphism
            && identity_homeomorphism == pi_continuous_to_preorder,
        || {
            format!(
                "Alexandrov conditions disagree: min-open existence {decomposition_space_alexandrov}, identity homeomorphism {identity_homeomorphism}, continuity into preorder {pi_continuous_to_preorder}"
            )
        },
    )?;
    Ok(AlexandrovConditions {
        decomposition_space_alexandrov,
        identity_homeomorphism,
        pi_continuous_to_preorder,
    })
}

/// Each point has an open neighborhood meeting finitely many strata.
pub fn locally_finite_decomposition(d: &Decomposition) -> bool {
    let k = d.stratum_count();
    (0..d.space().len()).all(|x| {
        let met = d
            .strata()
            .iter()
            .filter(|s| s.intersects(d.space().min_open(x)))
            .count();
        met <= k
    })
}

fn frontier_condition_witness(d: &Decomposition, closures: &[PointSet]) -> Option<String> {
    for &i in d.lex_strata() {
        for &j in d.lex_strata() {
            let stratum = d.stratum(i);
            let meet = stratum.intersection(&closures[j]);
            if !meet.is_empty() && !stratum.is_subset(&closures[j]) {
                return Some(format!(
                    "stratum `{}` meets the closure of stratum `{}` in {} but is not contained in it",
                    d.ids[i],
                    d.ids[j],
                    d.describe_points(&meet)
                ));
            }
        }
    }
    None
}

fn stratum_closures(d: &Decomposition) -> Vec<PointSet> {
    d.strata().iter().map(|s| d.space().closure(s)).collect()
}

pub fn frontier_equivalences(d: &Decomposition) -> Result<FrontierConditions> {
    let preorder = d.decomposition_preorder()?;
    let closures = stratum_closures(d);
    let mut witnesses = BTreeMap::new();

    let w1 = frontier_condition_witness(d, &closures);

    let w2 = d.lex_strata().iter().find_map(|&j| {
        let hull = d.preimage(preorder.down_set(j));
        (closures[j] != hull).then(|| {
            format!(
                "closure of stratum `{}` is {} but its minimal closed union of strata is {}",
                d.ids[j],
                d.describe_points(&closures[j]),
                d.describe_points(&hull)
            )
        })
    });

    let w3 = d.lex_strata().iter().find_map(|&i| {
        d.lex_strata().iter().find_map(|&j| {
            let by_closure = d.stratum(i).is_subset(&closures[j]);
            (preorder.leq(i, j) != by_closure).then(|| {
                format!(
                    "`{}` ≤ `{}` is {} in the decomposition preorder but stratum containment in the closure is {}",
                    d.ids[i],
                    d.ids[j],
                    preorder.leq(i, j),
                    by_closure
                )
            })
        })
    });

    let quotient = d.decomposition_space();
    let open = d.pi_map(&quotient)?.check(MapProperty::Open);
    let w4 = open.witness.as_ref().map(|u| {
        format!(
            "open set {} has non-open image {}",
            d.describe_points(u),
            d.describe_strata(&d.image(u))
        )
    });

    let verdicts = [w1.is_none(), w2.is_none(), w3.is_none(), w4.is_none()];
    for (name, w) in [
        ("frontier_condition", w1),
        ("closure_is_minimal_closed_union", w2),
        ("preorder_is_closure_order", w3),
        ("pi_open", w4),
    ] {
        if let Some(w) = w {
            witnesses.insert(name.to_owned(), w);
        }
    }
    ensure(verdicts.iter().all(|&v| v == verdicts[0]), || {
        format!("frontier conditions disagree: {verdicts:?} ({witnesses:?})")
    })?;
    Ok(FrontierConditions {
        frontier_condition: verdicts[0],
        closure_is_minimal_closed_union: verdicts[1],
        preorder_is_closure_order: verdicts[2],
        pi_open: verdicts[3],
        witnesses,
    })
}

pub fn poset_stratified_equivalences(d: &Decomposition) -> Result<PosetStratifiedConditions> {
    let k = d.stratum_count();
    let preorder = d.decomposition_preorder()?;

    let decomposition_preorder = preorder.is_poset() && d.continuous_into(preorder.up_sets());

    let space = d.space();
    let strata_open_in_closed_hull = (0..k).all(|i| {
        let hull = d.preimage(&d.closed_hull_strata(i));
        d.stratum(i).iter().all(|x| {
            space
                .min_open(x)
                .intersection(&hull)
                .is_subset(d.stratum(i))
        })
    });

    let some_partial_order = if k <= DEFAULT_SEARCH_BOUND {
        let mut found = false;
        for rows in oracle::poset_rows(k)? {
            if d.continuous_into(rows) {
                found = true;
                let refines =
                    (0..k).all(|i| preorder.up_set(i).iter().all(|j| rows[i].contains(j)));
                ensure(refines, || {
                    "a partial order making π continuous does not contain the decomposition preorder"
                        .to_owned()
                })?;
            }
        }
        found
    } else {
        decomposition_preorder
    };

    ensure(
        some_partial_order == decomposition_preorder
            && decomposition_preorder == strata_open_in_closed_hull,
        || {
            format!(
                "poset-stratified conditions disagree: search {some_partial_order}, decomposition preorder {decomposition_preorder}, strata open in closed hull {strata_open_in_closed_hull}"
            )
        },
    )?;
    Ok(PosetStratifiedConditions {
        some_partial_order,
        decomposition_preorder,
        strata_open_in_closed_hull,
    })
}

const DEFAULT_SEARCH_BOUND: usize = super::DEFAULT_ORDER_SEARCH_BOUND;

/// Local finiteness, local closure of each stratum and the frontier
/// condition, cross-checked against "poset-stratified and `π` open".
pub fn is_stratification(d: &Decomposition) -> Result<StratificationVerdict> {
    let mut reasons = Vec::new();
    let locally_finite = locally_finite_decomposition(d);
    if !locally_finite {
        reasons.push("decomposition is not locally finite".to_owned());
    }
    let mut locally_closed = BTreeMap::new();
    for &i in d.lex_strata() {
        let lc = d.space().is_locally_closed(d.stratum(i));
        if !lc {
            reasons.push(format!("stratum `{}` is not locally closed", d.ids[i]));
        }
        locally_closed.insert(d.ids[i].clone(), lc);
    }
    let closures = stratum_closures(d);
    let frontier_witness = frontier_condition_witness(d, &closures);
    let frontier = frontier_witness.is_none();
    if let Some(w) = frontier_witness {
        reasons.push(format!("frontier condition fails: {w}"));
    }

    let all_lc = locally_closed.values().all(|&b| b);
    let preorder = d.decomposition_preorder()?;
    let poset_stratified = preorder.is_poset() && d.continuous_into(preorder.up_sets());
    let quotient = d.decomposition_space();
    let pi_open = d.pi_map(&quotient)?.is_open();
    ensure(
        (all_lc && frontier) == (poset_stratified && pi_open),
        || {
            format!(
            "locally closed {all_lc} and frontier {frontier} vs poset-stratified {poset_stratified} and π open {pi_open}"
        )
        },
    )?;

    Ok(StratificationVerdict {
        locally_finite,
        locally_closed,
        frontier,
        reasons,
    })
}

/// `⋃ {X_i : X_i ∩ set ≠ ∅}`, computed stratum by stratum.
fn saturation(d: &Decomposition, set: &PointSet) -> PointSet {
    let mut out = d.space().empty_set();
    for s in d.strata().iter().filter(|s| s.intersects(set)) {
        out.union_with(s);
    }
    out
}

pub fn semicontinuity(d: &Decomposition) -> Result<Semicontinuity> {
    let space = d.space();
    let n = space.len();
    let (opens, closeds): (Vec<PointSet>, Vec<PointSet>) = if n <= SATURATION_ENUMERATION_LIMIT {
        (
            space.open_sets(SATURATION_ENUMERATION_LIMIT)?,
            space.closed_sets(SATURATION_ENUMERATION_LIMIT)?,
        )
    } else {
        (
            space.min_open_sets().to_vec(),
            (0..n).map(|x| space.point_closure(x).clone()).collect(),
        )
    };
    let sat_open_open = opens.iter().all(|u| space.is_open(&saturation(d, u)));
    let sat_closed_closed = closeds.iter().all(|f| space.is_closed(&saturation(d, f)));

    let quotient = d.decomposition_space();
    let pi = d.pi_map(&quotient)?;
    let pi_open = pi.check(MapProperty::Open).holds;
    let pi_closed = pi.check(MapProperty::Closed).holds;

    ensure(sat_open_open == pi_open, || {
        format!("open saturations open is {sat_open_open} but π open is {pi_open}")
    })?;
    ensure(sat_closed_closed == pi_closed, || {
        format!("closed saturations closed is {sat_closed_closed} but π closed is {pi_closed}")
    })?;
    Ok(Semicontinuity {
        sat_open_open,
        sat_closed_closed,
        pi_open,
        pi_closed,
    })
}

/// Runs every equivalence group and assembles the ladder verdict.
pub fn classify(d: &Decomposition) -> Result<ClassificationReport> {
    let alexandrov = alexandrov_equivalences(d)?;
    let frontier = frontier_equivalences(d)?;
    let poset_stratified = poset_stratified_equivalences(d)?;
    let verdict = is_stratification(d)?;
    let semicontinuity = semicontinuity(d)?;
    let preorder = d.decomposition_preorder()?;

    ensure(frontier.pi_open == semicontinuity.pi_open, || {
        "openness of π differs between frontier and semicontinuity checks".to_owned()
    })?;
    let stratification = verdict.is_stratification();
    ensure(!stratification || poset_stratified.holds(), || {
        "a stratification that is not poset-stratified".to_owned()
    })?;

    let level = if stratification {
        Level::Stratification
    } else if poset_stratified.holds() {
        Level::PosetStratified
    } else if alexandrov.holds() {
        Level::Alexandrov
    } else {
        Level::Decomposition
    };

    let mut witnesses = frontier.witnesses.clone();
    if !poset_stratified.holds() {
        let w = match preorder.antisymmetry_witness() {
            Some((i, j)) => format!(
                "strata `{}` and `{}` lie in each other's closure",
                preorder.element_name(i),
                preorder.element_name(j)
            ),
            None => "π is not continuous into the decomposition preorder".to_owned(),
        };
        witnesses.insert("poset_stratified".to_owned(), w);
    }
    for (id, lc) in &verdict.locally_closed {
        if !lc {
            witnesses.insert(
                format!("locally_closed[{id}]"),
                format!("stratum `{id}` is not open in its closure"),
            );
        }
    }

    Ok(ClassificationReport {
        level,
        alexandrov,
        locally_finite: verdict.locally_finite,
        locally_closed: verdict.locally_closed.clone(),
        frontier,
        poset_stratified,
        stratification,
        semicontinuity,
        decomposition_preorder: preorder.strict_pairs(),
        reasons: verdict.reasons,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn alexandrov_examples() {
        for d in [line3(), pseudo_circle(), quadrant()] {
            let a = alexandrov_equivalences(&d).unwrap();
            assert!(
                a.decomposition_space_alexandrov
                    && a.identity_homeomorphism
                    && a.pi_continuous_to_preorder
            );
        }
    }

    #[test]
    fn locally_finite_examples() {
        assert!(locally_finite_decomposition(&line3()));
        assert!(locally_finite_decomposition(&quadrant()));
        let empty = Decomposition::pointwise(crate::FiniteSpace::discrete::<&str>(&[]).unwrap());
        assert!(locally_finite_decomposition(&empty));
    }

    #[test]
    fn frontier_examples() {
        let q = frontier_equivalences(&quadrant()).unwrap();
        assert!(q.frontier_condition && q.closure_is_minimal_closed_union);
        assert!(q.preorder_is_closure_order && q.pi_open);
        assert!(q.witnesses.is_empty());

        let l = frontier_equivalences(&line3()).unwrap();
        assert!(!l.frontier_condition && !l.closure_is_minimal_closed_union);
        assert!(!l.preorder_is_closure_order && !l.pi_open);
        assert_eq!(l.witnesses.len(), 4);
        assert!(l.witnesses["frontier_condition"].contains("stratum `0`"));

        let pc = frontier_equivalences(&pseudo_circle()).unwrap();
        assert!(!pc.frontier_condition && !pc.pi_open);
        assert_eq!(
            pc.witnesses["frontier_condition"],
            "stratum `1` meets the closure of stratum `2` in {x} but is not contained in it"
        );
    }

    #[test]
    fn poset_stratified_examples() {
        let l = poset_stratified_equivalences(&line3()).unwrap();
        assert!(l.some_partial_order && l.decomposition_preorder && l.strata_open_in_closed_hull);
        let pc = poset_stratified_equivalences(&pseudo_circle()).unwrap();
        assert!(
            !pc.some_partial_order && !pc.decomposition_preorder && !pc.strata_open_in_closed_hull
        );
        assert!(poset_stratified_equivalences(&quadrant()).unwrap().holds());
    }

    #[test]
    fn stratification_examples() {
        assert!(is_stratification(&quadrant()).unwrap().is_stratification());

        let l = is_stratification(&line3()).unwrap();
        assert!(!l.is_stratification());
        assert!(l.locally_closed.values().all(|&b| b));
        assert_eq!(l.reasons.len(), 1);
        assert!(l.reasons[0].starts_with("frontier condition fails"));

        let pc = is_stratification(&pseudo_circle()).unwrap();
        assert!(!pc.frontier);
        assert!(pc.locally_closed.values().all(|&b| b));
    }

    #[test]
    fn semicontinuity_examples() {
        assert_eq!(
            semicontinuity(&line3()).unwrap(),
            Semicontinuity {
                sat_open_open: false,
                sat_closed_closed: true,
                pi_open: false,
                pi_closed: true
            }
        );
        let l = semicontinuity(&line3()).unwrap();
        assert!(l.upper_semicontinuous() && !l.lower_semicontinuous());

        let q = semicontinuity(&quadrant()).unwrap();
        assert!(q.sat_open_open && q.sat_closed_closed && q.continuous());

        let pc = semicontinuity(&pseudo_circle()).unwrap();
        assert!(!pc.sat_open_open && !pc.sat_closed_closed && !pc.pi_open && !pc.pi_closed);
    }

    #[test]
    fn classify_levels() {
        assert_eq!(classify(&quadrant()).unwrap().level, Level::Stratification);
        assert_eq!(classify(&line3()).unwrap().level, Level::PosetStratified);
        assert_eq!(classify(&pseudo_circle()).unwrap().level, Level::Alexandrov);
        assert_eq!(classify(&chain3()).unwrap().level, Level::Stratification);
    }

    #[test]
    fn level_parsing() {
        for level in Level::ALL {
            assert_eq!(level.as_str().parse::<Level>().unwrap(), level);
        }
        assert!("stratified".parse::<Level>().is_err());
    }
}
