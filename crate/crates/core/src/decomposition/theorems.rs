//! Poset-stratifications: coarsening, the passages between stratifications
//! and poset-stratified spaces, and searches over orders on the strata.

use super::classify::is_stratification;
use super::Decomposition;
use crate::bitset::PointSet;
use crate::error::{ensure, Error, Result};
use crate::oracle;
use crate::order::{Poset, Proset};

/// Largest stratum count for which all partial orders are enumerated.
pub const DEFAULT_ORDER_SEARCH_BOUND: usize = 4;

/// A decomposition together with a partial order on its strata that makes
/// the decomposition map continuous into the order's Alexandrov space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetStratification {
    dec: Decomposition,
    order: Poset,
    // up-sets of the order, indexed like the strata
    rows: Vec<PointSet>,
}

impl PosetStratification {
    pub fn new(dec: Decomposition, order: Poset) -> Result<Self> {
        let rows = aligned_rows(&dec, &order)?;
        if let Some(i) = (0..rows.len()).find(|&i| !dec.space().is_open(&dec.preimage(&rows[i]))) {
            return Err(Error::NotContinuous(format!(
                "preimage of the up-set of `{}` is not open",
                dec.ids[i]
            )));
        }
        Ok(PosetStratification { dec, order, rows })
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.dec
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    /// Up-sets of the order indexed like the strata.
    pub fn up_rows(&self) -> &[PointSet] {
        &self.rows
    }

    pub fn into_parts(self) -> (Decomposition, Poset) {
        (self.dec, self.order)
    }
}

/// Re-indexes `order` to follow the stratum order of `d`.
fn aligned_rows(d: &Decomposition, order: &Proset) -> Result<Vec<PointSet>> {
    let k = d.stratum_count();
    if order.len() != k {
        return Err(Error::OrderMismatch(format!(
            "order has {} elements, decomposition has {k} strata",
            order.len()
        )));
    }
    let to_order = d
        .ids
        .iter()
        .map(|id| {
            order
                .index_of(id)
                .map_err(|_| Error::OrderMismatch(format!("stratum `{id}` is not in the order")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut to_stratum = vec![0; k];
    for (s, &o) in to_order.iter().enumerate() {
        to_stratum[o] = s;
    }
    Ok((0..k)
        .map(|s| PointSet::from_indices(k, order.up_set(to_order[s]).iter().map(|o| to_stratum[o])))
        .collect())
}

fn contains_rows(small: &[PointSet], big: &[PointSet]) -> bool {
    small.iter().zip(big).all(|(a, b)| a.is_subset(b))
}

fn poset_from_rows(d: &Decomposition, rows: &[PointSet]) -> Poset {
    let proset = Proset::from_up_sets(&d.ids, rows.to_vec()).expect("stratum ids are unique");
    Poset::new(proset).expect("enumerated orders are antisymmetric")
}

/// Restricts `order` to the stratum ids of `d`, dropping ids with empty
/// preimage. Returns the restricted order and the dropped ids.
pub fn restrict_order_to_strata(d: &Decomposition, order: &Poset) -> Result<(Poset, Vec<String>)> {
    for id in &d.ids {
        if order.index_of(id).is_err() {
            return Err(Error::OrderMismatch(format!(
                "stratum `{id}` is not in the order"
            )));
        }
    }
    let keep: Vec<usize> = (0..order.len())
        .filter(|&i| d.stratum_index(order.element_name(i)).is_ok())
        .collect();
    let dropped: Vec<String> = (0..order.len())
        .filter(|i| !keep.contains(i))
        .map(|i| order.element_name(i).to_owned())
        .collect();
    for id in &dropped {
        log::info!("dropping order element `{id}`: empty preimage");
    }
    let names: Vec<&str> = keep.iter().map(|&i| order.element_name(i)).collect();
    let rows = keep
        .iter()
        .map(|&i| {
            PointSet::from_indices(
                keep.len(),
                keep.iter()
                    .enumerate()
                    .filter(|(_, &j)| order.leq(i, j))
                    .map(|(k, _)| k),
            )
        })
        .collect();
    let restricted = Poset::new(Proset::from_up_sets(&names, rows)?)?;
    Ok((restricted, dropped))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct WrtVerdict {
    pub continuous: bool,
    pub surjective: bool,
    pub open: bool,
}

/// Evaluates `π` against the Alexandrov space of `order`, whose elements
/// must be exactly the stratum ids.
pub fn check_poset_stratified_wrt(d: &Decomposition, order: &Poset) -> Result<WrtVerdict> {
    let rows = aligned_rows(d, order)?;
    let target = d.image(&d.space().full());
    Ok(WrtVerdict {
        continuous: d.continuous_into(&rows),
        surjective: target.len() == d.stratum_count(),
        open: d.open_into(&rows),
    })
}

/// Groups strata by equivalence under the decomposition preorder and orders
/// the groups by the induced partial order.
pub fn coarsen(d: &Decomposition) -> Result<(Decomposition, PosetStratification)> {
    let preorder = d.decomposition_preorder()?;
    let reflection = preorder.reflection();
    let k = d.stratum_count();

    let hull_preimages: Vec<PointSet> = (0..k).map(|i| d.preimage(preorder.down_set(i))).collect();
    for i in 0..k {
        for j in 0..k {
            let same_class = reflection.quotient[i] == reflection.quotient[j];
            ensure(
                same_class == (hull_preimages[i] == hull_preimages[j]),
                || {
                    format!(
                    "strata `{}` and `{}`: same coarse stratum is {same_class} but equal minimal closed unions is {}",
                    d.ids[i],
                    d.ids[j],
                    !same_class
                )
                },
            )?;
        }
    }

    let coarse = Decomposition::from_labels(
        d.space().clone(),
        reflection.poset.elements(),
        &d.labels()
            .iter()
            .map(|&i| reflection.quotient[i])
            .collect::<Vec<_>>(),
    )?;
    let ps = PosetStratification::new(coarse.clone(), reflection.poset.clone())
        .map_err(|e| Error::Defect(format!("coarsening is not poset-stratified: {e}")))?;
    Ok((coarse, ps))
}

/// For a stratification, the decomposition preorder is a partial order,
/// equal to `i ≤ j ⟺ X_i ⊆ closure(X_j)`, making `π` continuous.
pub fn theorem_a(d: &Decomposition) -> Result<PosetStratification> {
    let verdict = is_stratification(d)?;
    if !verdict.is_stratification() {
        return Err(Error::Precondition(verdict.reasons.join("; ")));
    }
    let preorder = d.decomposition_preorder()?;
    ensure(preorder.is_poset(), || {
        "decomposition preorder of a stratification is not antisymmetric".to_owned()
    })?;
    let closures: Vec<PointSet> = d.strata().iter().map(|s| d.space().closure(s)).collect();
    for i in 0..d.stratum_count() {
        for (j, closure) in closures.iter().enumerate() {
            ensure(
                preorder.leq(i, j) == d.stratum(i).is_subset(closure),
                || {
                    format!(
                        "decomposition preorder differs from closure containment at (`{}`, `{}`)",
                        d.ids[i], d.ids[j]
                    )
                },
            )?;
        }
    }
    ensure(d.continuous_into(preorder.up_sets()), || {
        "π is not continuous into the decomposition preorder".to_owned()
    })?;
    let order = Poset::new(preorder).map_err(|e| Error::Defect(e.to_string()))?;
    PosetStratification::new(d.clone(), order).map_err(|e| Error::Defect(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremBVerdict {
    pub stratification: super::StratificationVerdict,
    /// The decomposition preorder is contained in the given order.
    pub preorder_refines_into_order: bool,
}

/// A poset-stratification whose map is open (into a locally finite
/// Alexandrov space) has an underlying stratification.
pub fn theorem_b(ps: &PosetStratification) -> Result<TheoremBVerdict> {
    let d = &ps.dec;
    if !ps.order.local_finiteness().locally_finite_space {
        return Err(Error::Precondition(
            "the Alexandrov space of the order is not locally finite".into(),
        ));
    }
    if !d.open_into(&ps.rows) {
        return Err(Error::Precondition(
            "the decomposition map is not open into the order".into(),
        ));
    }
    let stratification = is_stratification(d)?;
    ensure(stratification.is_stratification(), || {
        format!(
            "continuous open map onto a poset but not a stratification: {}",
            stratification.reasons.join("; ")
        )
    })?;
    let preorder = d.decomposition_preorder()?;
    let preorder_refines_into_order = contains_rows(preorder.up_sets(), &ps.rows);
    ensure(preorder_refines_into_order, || {
        "identity from the decomposition preorder to the order is not monotone".to_owned()
    })?;
    Ok(TheoremBVerdict {
        stratification,
        preorder_refines_into_order,
    })
}

/// Every partial order on the strata making `π` continuous, each checked to
/// contain the decomposition preorder.
pub fn initial_order_check(d: &Decomposition, bound: usize) -> Result<Vec<Poset>> {
    let k = d.stratum_count();
    if k > bound {
        return Err(Error::TooLarge {
            what: "initial order search",
            n: k,
            limit: bound,
        });
    }
    let ps = super::classify::poset_stratified_equivalences(d)?;
    if !ps.holds() {
        return Err(Error::Precondition(
            "decomposition is not poset-stratified".into(),
        ));
    }
    let preorder = d.decomposition_preorder()?;
    let mut valid = Vec::new();
    for rows in oracle::poset_rows_with_limit(k, bound)? {
        if d.continuous_into(rows) {
            ensure(contains_rows(preorder.up_sets(), rows), || {
                "a valid partial order does not contain the decomposition preorder".to_owned()
            })?;
            valid.push(poset_from_rows(d, rows));
        }
    }
    Ok(valid)
}

/// Checks every strict refinement of the decomposition preorder of a
/// stratification: `π` stays continuous but is never open. Returns the
/// number of refinements tested.
pub fn refinement_never_open(d: &Decomposition) -> Result<usize> {
    let k = d.stratum_count();
    if k > DEFAULT_ORDER_SEARCH_BOUND {
        return Err(Error::TooLarge {
            what: "refinement search",
            n: k,
            limit: DEFAULT_ORDER_SEARCH_BOUND,
        });
    }
    let verdict = is_stratification(d)?;
    if !verdict.is_stratification() {
        return Err(Error::Precondition(verdict.reasons.join("; ")));
    }
    let preorder = d.decomposition_preorder()?;
    let base = preorder.up_sets();
    let mut tested = 0;
    for rows in oracle::poset_rows(k)? {
        if rows == base || !contains_rows(base, rows) {
            continue;
        }
        tested += 1;
        ensure(d.continuous_into(rows), || {
            "π is not continuous into a refinement of the decomposition preorder".to_owned()
        })?;
        ensure(!d.open_into(rows), || {
            "π is open into a strict refinement of the decomposition preorder".to_owned()
        })?;
    }
    Ok(tested)
}
