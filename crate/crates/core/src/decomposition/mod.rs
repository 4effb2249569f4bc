//! Decompositions of finite spaces into strata.
//!
//! A [`Decomposition`] partitions the points of a [`FiniteSpace`] into named,
//! nonempty strata. The decomposition map `π` sends each point to its stratum;
//! the decomposition space is the set of strata with the quotient topology,
//! and the decomposition preorder is the specialization preorder of that
//! space.

mod classify;
mod theorems;

pub use classify::{
    alexandrov_equivalences, classify, frontier_equivalences, is_stratification,
    locally_finite_decomposition, poset_stratified_equivalences, semicontinuity,
    AlexandrovConditions, ClassificationReport, FrontierConditions, Level,
    PosetStratifiedConditions, Semicontinuity, StratificationVerdict,
};
pub use theorems::{
    check_poset_stratified_wrt, coarsen, initial_order_check, refinement_never_open,
    restrict_order_to_strata, theorem_a, theorem_b, PosetStratification, TheoremBVerdict,
    WrtVerdict, DEFAULT_ORDER_SEARCH_BOUND,
};

use std::collections::HashMap;
use std::fmt;

use crate::bitset::PointSet;
use crate::error::{ensure, Error, Result};
use crate::order::Proset;
use crate::topology::{final_topology, index_names, lex_order, FiniteSpace, SpaceMap};

#[derive(Clone)]
pub struct Decomposition {
    space: FiniteSpace,
    ids: Vec<String>,
    id_index: HashMap<String, usize>,
    strata: Vec<PointSet>,
    pi: Vec<usize>,
    lex: Vec<usize>,
}

impl PartialEq for Decomposition {
    fn eq(&self, other: &Self) -> bool {
        if self.space.points() == other.space.points() && self.ids == other.ids {
            return self.space == other.space && self.strata == other.strata;
        }
        self.space == other.space
            && self.ids.len() == other.ids.len()
            && self.ids.iter().zip(&self.strata).all(|(id, s)| {
                other.id_index.get(id).is_some_and(|&j| {
                    self.space.sorted_names(s) == other.space.sorted_names(&other.strata[j])
                })
            })
    }
}

impl Eq for Decomposition {}

impl fmt::Debug for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (id, stratum) in self.ids.iter().zip(&self.strata) {
            map.entry(id, &self.space.names(stratum));
        }
        map.finish()
    }
}

impl Decomposition {
    /// Validates `strata` (id, member names) as a partition of `space`.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(
        space: FiniteSpace,
        strata: &[(S, Vec<T>)],
    ) -> Result<Self> {
        let ids: Vec<&str> = strata.iter().map(|(id, _)| id.as_ref()).collect();
        let (ids, id_index) = index_names(&ids, Error::DuplicateStratum)?;
        let n = space.len();
        let mut owner = vec![usize::MAX; n];
        let mut sets = Vec::with_capacity(ids.len());
        for (k, (_, members)) in strata.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::EmptyStratum(ids[k].clone()));
            }
            let set = space.subset(members)?;
            for x in &set {
                if owner[x] != usize::MAX {
                    return Err(Error::StrataNotDisjoint {
                        point: space.point_name(x).to_owned(),
                        first: ids[owner[x]].clone(),
                        second: ids[k].clone(),
                    });
                }
                owner[x] = k;
            }
            sets.push(set);
        }
        if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::StrataNotCovering(space.point_name(x).to_owned()));
        }
        let lex = lex_order(&ids);
        Ok(Decomposition {
            space,
            ids,
            id_index,
            strata: sets,
            pi: owner,
            lex,
        })
    }

    /// Builds a decomposition from a label per point. Every id must label
    /// at least one point.
    pub fn from_labels<S: AsRef<str>>(
        space: FiniteSpace,
        ids: &[S],
        labels: &[usize],
    ) -> Result<Self> {
        if labels.len() != space.len() {
            return Err(Error::AssignmentLength {
                expected: space.len(),
                got: labels.len(),
            });
        }
        let mut strata: Vec<(String, Vec<String>)> = ids
            .iter()
            .map(|id| (id.as_ref().to_owned(), Vec::new()))
            .collect();
        for (x, &label) in labels.iter().enumerate() {
            let slot = strata.get_mut(label).ok_or_else(|| {
                Error::AssignmentOutOfRange(format!("`{}` labelled {label}", space.point_name(x)))
            })?;
            slot.1.push(space.point_name(x).to_owned());
        }
        Self::new(space, &strata)
    }

    /// One stratum per point, named after the point.
    pub fn pointwise(space: FiniteSpace) -> Self {
        let strata: Vec<(String, Vec<String>)> = space
            .points()
            .iter()
            .map(|p| (p.clone(), vec![p.clone()]))
            .collect();
        Self::new(space, &strata).expect("pointwise decomposition is always valid")
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn stratum_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn stratum_count(&self) -> usize {
        self.ids.len()
    }

    pub fn stratum(&self, i: usize) -> &PointSet {
        &self.strata[i]
    }

    pub fn strata(&self) -> &[PointSet] {
        &self.strata
    }

    pub fn stratum_index(&self, id: &str) -> Result<usize> {
        self.id_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownElement(id.to_owned()))
    }

    /// The decomposition map as stratum indices.
    pub fn labels(&self) -> &[usize] {
        &self.pi
    }

    /// Stratum indices in lexicographic order of their ids.
    pub(crate) fn lex_strata(&self) -> &[usize] {
        &self.lex
    }

    /// `π⁻¹(J)`: the union of the strata in `j`.
    pub fn preimage(&self, j: &PointSet) -> PointSet {
        let mut out = self.space.empty_set();
        for i in j {
            out.union_with(&self.strata[i]);
        }
        out
    }

    /// `π(S)`.
    pub fn image(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(self.stratum_count(), set.iter().map(|x| self.pi[x]))
    }

    /// Least set of strata `J ∋ i` whose preimage is open: start from `{i}`
    /// and add the strata met by `U_x` for every `x ∈ π⁻¹(J)` until stable.
    pub fn open_hull_strata(&self, i: usize) -> PointSet {
        let mut j = PointSet::singleton(self.stratum_count(), i);
        loop {
            let grown = self.image(&self.space.open_hull(&self.preimage(&j)));
            if grown == j {
                return j;
            }
            j = grown;
        }
    }

    /// Least set of strata `J ∋ i` whose preimage is closed; `π⁻¹(J)` is the
    /// minimal closed union of strata containing `X_i`.
    pub fn closed_hull_strata(&self, i: usize) -> PointSet {
        let mut j = PointSet::singleton(self.stratum_count(), i);
        loop {
            let grown = self.image(&self.space.closure(&self.preimage(&j)));
            if grown == j {
                return j;
            }
            j = grown;
        }
    }

    /// The decomposition space: strata with the quotient topology.
    pub fn decomposition_space(&self) -> FiniteSpace {
        let k = self.stratum_count();
        let min_open = (0..k).map(|i| self.open_hull_strata(i)).collect();
        FiniteSpace::assemble(self.ids.clone(), self.id_index.clone(), min_open)
    }

    /// The decomposition space computed by testing every subset of strata
    /// for an open preimage.
    pub fn decomposition_space_by_filter(&self, limit: usize) -> Result<FiniteSpace> {
        final_topology(&self.ids, &[(&self.space, &self.pi)], limit)
    }

    /// Specialization preorder of the decomposition space. The down-set of
    /// each `j` is also computed as the least stratum set with closed
    /// preimage, and the two must coincide.
    pub fn decomposition_preorder(&self) -> Result<Proset> {
        let preorder = self.decomposition_space().specialization_preorder();
        for j in 0..self.stratum_count() {
            let hull = self.closed_hull_strata(j);
            ensure(*preorder.down_set(j) == hull, || {
                format!(
                    "down-set of `{}` in the decomposition preorder differs from its minimal closed union of strata",
                    self.ids[j]
                )
            })?;
        }
        Ok(preorder)
    }

    /// `π` as a map into `target`, whose points must be the stratum ids in
    /// the same order (such as [`Decomposition::decomposition_space`]).
    pub fn pi_map<'a>(&'a self, target: &'a FiniteSpace) -> Result<SpaceMap<'a>> {
        if target.points() != self.ids.as_slice() {
            return Err(Error::OrderMismatch(
                "target points differ from the stratum ids".into(),
            ));
        }
        SpaceMap::new(&self.space, target, self.pi.as_slice())
    }

    /// `π` continuous into the Alexandrov space whose up-sets are `up_rows`
    /// (indexed like the strata).
    pub fn continuous_into(&self, up_rows: &[PointSet]) -> bool {
        up_rows
            .iter()
            .all(|u| self.space.is_open(&self.preimage(u)))
    }

    /// `π` open into the Alexandrov space whose up-sets are `up_rows`.
    pub fn open_into(&self, up_rows: &[PointSet]) -> bool {
        (0..self.space.len()).all(|x| {
            let image = self.image(self.space.min_open(x));
            image.iter().all(|i| up_rows[i].is_subset(&image))
        })
    }

    pub(crate) fn describe_points(&self, set: &PointSet) -> String {
        format!("{{{}}}", self.space.sorted_names(set).join(","))
    }

    pub(crate) fn describe_strata(&self, set: &PointSet) -> String {
        let mut ids: Vec<&str> = set.iter().map(|i| self.ids[i].as_str()).collect();
        ids.sort();
        format!("{{{}}}", ids.join(","))
    }
}
