//! Finite topological spaces.
//!
//! Every finite space is Alexandrov, so a topology is stored as the map
//! `x -> U_x` sending each point to its minimal open neighborhood. A subset
//! `S` is open exactly when `U_x ⊆ S` for every `x ∈ S`; closures, interiors
//! and map properties are all computed from that rule without enumerating the
//! open family.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;

use crate::bitset::PointSet;
use crate::error::{Error, Result};
use crate::order::Proset;

/// Default guard for operations that enumerate all `2^n` subsets.
pub const DEFAULT_SUBSET_LIMIT: usize = 20;

/// Validates a list of names and builds the name -> index map.
pub(crate) fn index_names<S: AsRef<str>>(
    names: &[S],
    duplicate: fn(String) -> Error,
) -> Result<(Vec<String>, HashMap<String, usize>)> {
    let mut owned = Vec::with_capacity(names.len());
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        let name = name.as_ref();
        if name.is_empty() {
            return Err(Error::EmptyName);
        }
        if index.insert(name.to_owned(), i).is_some() {
            return Err(duplicate(name.to_owned()));
        }
        owned.push(name.to_owned());
    }
    Ok((owned, index))
}

/// Indices sorted by name; witness searches walk points in this order.
pub(crate) fn lex_order(names: &[String]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    order
}

#[derive(Clone)]
pub struct FiniteSpace {
    points: Vec<String>,
    index: HashMap<String, usize>,
    min_open: Vec<PointSet>,
    // closure of {x}, i.e. {y : x ∈ U_y}
    point_closure: Vec<PointSet>,
    lex: Vec<usize>,
}

/// Equal when the point sets and every `U_x` agree by name; the order of
/// the point list does not matter.
impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        if self.points == other.points {
            return self.min_open == other.min_open;
        }
        if self.len() != other.len() {
            return false;
        }
        let map: Option<Vec<usize>> = self
            .points
            .iter()
            .map(|p| other.index.get(p).copied())
            .collect();
        let Some(map) = map else { return false };
        (0..self.len()).all(|x| {
            let u = &self.min_open[x];
            u.len() == other.min_open[map[x]].len()
                && u.iter().all(|y| other.min_open[map[x]].contains(map[y]))
        })
    }
}

impl Eq for FiniteSpace {}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (i, p) in self.points.iter().enumerate() {
            map.entry(p, &self.names(&self.min_open[i]));
        }
        map.finish()
    }
}

impl FiniteSpace {
    /// Builds a space from explicit minimal open sets, checking that
    /// `x ∈ U_x` and that `y ∈ U_x` implies `U_y ⊆ U_x`.
    pub fn from_min_open<S: AsRef<str>>(points: &[S], min_open: Vec<PointSet>) -> Result<Self> {
        let (points, index) = index_names(points, Error::DuplicatePoint)?;
        let n = points.len();
        if min_open.len() != n {
            return Err(Error::InvalidDocument(format!(
                "{} minimal open sets for {n} points",
                min_open.len()
            )));
        }
        for (x, ux) in min_open.iter().enumerate() {
            if ux.universe() != n {
                return Err(Error::InvalidMinOpen {
                    point: points[x].clone(),
                    reason: "set built over a different point universe".into(),
                });
            }
            if !ux.contains(x) {
                return Err(Error::InvalidMinOpen {
                    point: points[x].clone(),
                    reason: "does not contain the point itself".into(),
                });
            }
            if let Some(y) = ux.iter().find(|&y| !min_open[y].is_subset(ux)) {
                return Err(Error::InvalidMinOpen {
                    point: points[x].clone(),
                    reason: format!("contains `{}` but not its minimal open set", points[y]),
                });
            }
        }
        Ok(Self::assemble(points, index, min_open))
    }

    /// Same as [`FiniteSpace::from_min_open`] with sets given by point names.
    pub fn from_min_open_names<S: AsRef<str>, T: AsRef<str>>(
        points: &[S],
        min_open: &[(T, Vec<T>)],
    ) -> Result<Self> {
        let (names, index) = index_names(points, Error::DuplicatePoint)?;
        let n = names.len();
        let mut sets: Vec<Option<PointSet>> = vec![None; n];
        for (x, ux) in min_open {
            let &i = index
                .get(x.as_ref())
                .ok_or_else(|| Error::UnknownPoint(x.as_ref().to_owned()))?;
            let set = subset_by_index(&index, n, ux)?;
            if sets[i].replace(set).is_some() {
                return Err(Error::InvalidMinOpen {
                    point: names[i].clone(),
                    reason: "given twice".into(),
                });
            }
        }
        let sets = sets
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| Error::InvalidMinOpen {
                    point: names[i].clone(),
                    reason: "missing".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_min_open(&names, sets)
    }

    /// The coarsest topology in which every generator is open:
    /// `U_x = ⋂ {G : x ∈ G}`, or the whole space when no generator contains `x`.
    pub fn from_subbasis<S: AsRef<str>, T: AsRef<str>>(
        points: &[S],
        generators: &[Vec<T>],
    ) -> Result<Self> {
        let (names, index) = index_names(points, Error::DuplicatePoint)?;
        let n = names.len();
        let gens = generators
            .iter()
            .map(|g| subset_by_index(&index, n, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_subbasis_sets(names, index, &gens))
    }

    pub(crate) fn from_subbasis_sets(
        names: Vec<String>,
        index: HashMap<String, usize>,
        generators: &[PointSet],
    ) -> Self {
        let n = names.len();
        let min_open = (0..n)
            .map(|x| {
                let mut ux = PointSet::full(n);
                for g in generators.iter().filter(|g| g.contains(x)) {
                    ux.intersect_with(g);
                }
                ux
            })
            .collect();
        Self::assemble(names, index, min_open)
    }

    pub fn discrete<S: AsRef<str>>(points: &[S]) -> Result<Self> {
        let n = points.len();
        Self::from_min_open(points, (0..n).map(|i| PointSet::singleton(n, i)).collect())
    }

    pub fn indiscrete<S: AsRef<str>>(points: &[S]) -> Result<Self> {
        let n = points.len();
        Self::from_min_open(points, vec![PointSet::full(n); n])
    }

    pub(crate) fn assemble(
        points: Vec<String>,
        index: HashMap<String, usize>,
        min_open: Vec<PointSet>,
    ) -> Self {
        let n = points.len();
        let mut point_closure = vec![PointSet::empty(n); n];
        for (y, uy) in min_open.iter().enumerate() {
            for x in uy {
                point_closure[x].insert(y);
            }
        }
        let lex = lex_order(&points);
        FiniteSpace {
            points,
            index,
            min_open,
            point_closure,
            lex,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_owned()))
    }

    /// Converts point names into a [`PointSet`] over this space.
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet> {
        subset_by_index(&self.index, self.len(), names)
    }

    /// Member names of `set`, in insertion order.
    pub fn names(&self, set: &PointSet) -> Vec<&str> {
        set.iter().map(|i| self.points[i].as_str()).collect()
    }

    /// Member names of `set`, sorted.
    pub fn sorted_names(&self, set: &PointSet) -> Vec<String> {
        let mut names: Vec<String> = set.iter().map(|i| self.points[i].clone()).collect();
        names.sort();
        names
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    /// Points in lexicographic order of their names.
    pub fn lex_points(&self) -> &[usize] {
        &self.lex
    }

    /// `U_x`, the minimal open neighborhood of the point with index `x`.
    pub fn min_open(&self, x: usize) -> &PointSet {
        &self.min_open[x]
    }

    pub fn min_open_sets(&self) -> &[PointSet] {
        &self.min_open
    }

    /// `U_x` looked up by name.
    pub fn minimal_open_nbhd(&self, name: &str) -> Result<PointSet> {
        Ok(self.min_open[self.index_of(name)?].clone())
    }

    /// Closure of the singleton `{x}`.
    pub fn point_closure(&self, x: usize) -> &PointSet {
        &self.point_closure[x]
    }

    pub fn is_open(&self, set: &PointSet) -> bool {
        set.iter().all(|x| self.min_open[x].is_subset(set))
    }

    pub fn is_closed(&self, set: &PointSet) -> bool {
        self.is_open(&set.complement())
    }

    /// Smallest closed set containing `set`: `{x : U_x ∩ set ≠ ∅}`.
    pub fn closure(&self, set: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for s in set {
            out.union_with(&self.point_closure[s]);
        }
        out
    }

    /// Largest open subset of `set`.
    pub fn interior(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.len(),
            set.iter().filter(|&x| self.min_open[x].is_subset(set)),
        )
    }

    /// `closure(set) ∖ set`.
    pub fn frontier(&self, set: &PointSet) -> PointSet {
        self.closure(set).difference(set)
    }

    /// Smallest open set containing `set`.
    pub fn open_hull(&self, set: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for s in set {
            out.union_with(&self.min_open[s]);
        }
        out
    }

    /// Returns an open `O` with `set = O ∩ closure(set)` if one exists.
    ///
    /// If any such `O` exists then the open hull of `set` is one, since it is
    /// the smallest open set containing `set`.
    pub fn locally_closed_witness(&self, set: &PointSet) -> Option<PointSet> {
        let hull = self.open_hull(set);
        (hull.intersection(&self.closure(set)) == *set).then_some(hull)
    }

    pub fn is_locally_closed(&self, set: &PointSet) -> bool {
        self.locally_closed_witness(set).is_some()
    }

    /// Specialization preorder: `x ≤ y ⟺ x ∈ closure({y}) ⟺ y ∈ U_x`.
    pub fn specialization_preorder(&self) -> Proset {
        let n = self.len();
        let via_open: Vec<PointSet> = self.min_open.clone();
        let via_closure: Vec<PointSet> = (0..n)
            .map(|x| {
                PointSet::from_indices(
                    n,
                    (0..n).filter(|&y| self.closure(&PointSet::singleton(n, y)).contains(x)),
                )
            })
            .collect();
        assert_eq!(
            via_open, via_closure,
            "specialization preorder: open and closure descriptions disagree"
        );
        Proset::from_up_sets_unchecked(self.points.clone(), self.index.clone(), via_open)
    }

    /// T0 (Kolmogorov): distinct points have distinct minimal open sets.
    pub fn is_t0(&self) -> bool {
        self.specialization_preorder()
            .antisymmetry_witness()
            .is_none()
    }

    /// Subspace on `set`: `U'_x = U_x ∩ set`, points kept in insertion order.
    pub fn subspace(&self, set: &PointSet) -> FiniteSpace {
        let members: Vec<usize> = set.iter().collect();
        let m = members.len();
        let mut position = vec![usize::MAX; self.len()];
        for (k, &x) in members.iter().enumerate() {
            position[x] = k;
        }
        let names: Vec<String> = members.iter().map(|&x| self.points[x].clone()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(k, n)| (n.clone(), k))
            .collect();
        let min_open = members
            .iter()
            .map(|&x| {
                PointSet::from_indices(
                    m,
                    self.min_open[x]
                        .iter()
                        .filter(|&y| set.contains(y))
                        .map(|y| position[y]),
                )
            })
            .collect();
        Self::assemble(names, index, min_open)
    }

    /// Subspace on named points.
    pub fn subspace_of<S: AsRef<str>>(&self, names: &[S]) -> Result<FiniteSpace> {
        Ok(self.subspace(&self.subset(names)?))
    }

    /// All open sets, ascending by bitmask. Exponential; guarded by `limit`.
    pub fn open_sets(&self, limit: usize) -> Result<Vec<PointSet>> {
        Ok(all_subsets(self.len(), limit, "open-set enumeration")?
            .filter(|s| self.is_open(s))
            .collect())
    }

    /// All closed sets, ascending by bitmask. Exponential; guarded by `limit`.
    pub fn closed_sets(&self, limit: usize) -> Result<Vec<PointSet>> {
        Ok(all_subsets(self.len(), limit, "closed-set enumeration")?
            .filter(|s| self.is_closed(s))
            .collect())
    }

    /// True when both spaces have the same points (by name) and the same
    /// topology, regardless of point order.
    pub fn same_topology(&self, other: &FiniteSpace) -> bool {
        self.len() == other.len()
            && self.points.iter().enumerate().all(|(i, p)| {
                other.index.get(p).is_some_and(|&j| {
                    self.sorted_names(&self.min_open[i]) == other.sorted_names(&other.min_open[j])
                })
            })
    }
}

pub(crate) fn subset_by_index<S: AsRef<str>>(
    index: &HashMap<String, usize>,
    universe: usize,
    names: &[S],
) -> Result<PointSet> {
    let mut set = PointSet::empty(universe);
    for name in names {
        let &i = index
            .get(name.as_ref())
            .ok_or_else(|| Error::UnknownPoint(name.as_ref().to_owned()))?;
        set.insert(i);
    }
    Ok(set)
}

/// Iterator over all `2^n` subsets of an `n`-point universe.
pub fn all_subsets(
    n: usize,
    limit: usize,
    what: &'static str,
) -> Result<impl Iterator<Item = PointSet>> {
    if n > limit.min(63) {
        return Err(Error::TooLarge {
            what,
            n,
            limit: limit.min(63),
        });
    }
    Ok((0..1u64 << n).map(move |mask| PointSet::from_mask(n, mask)))
}

/// Which property [`SpaceMap::check`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapProperty {
    Continuous,
    Open,
    Closed,
}

/// Outcome of a map check. `witness` is a violating set: for continuity an
/// open set of the target with non-open preimage, for openness (closedness)
/// an open (closed) set of the source whose image is not open (closed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapVerdict {
    pub holds: bool,
    pub witness: Option<PointSet>,
}

impl MapVerdict {
    fn from_witness(witness: Option<PointSet>) -> Self {
        MapVerdict {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// A total point map between finite spaces. No continuity is assumed.
#[derive(Clone, Debug)]
pub struct SpaceMap<'a> {
    source: &'a FiniteSpace,
    target: &'a FiniteSpace,
    assignment: Cow<'a, [usize]>,
}

impl<'a> SpaceMap<'a> {
    pub fn new(
        source: &'a FiniteSpace,
        target: &'a FiniteSpace,
        assignment: impl Into<Cow<'a, [usize]>>,
    ) -> Result<Self> {
        let assignment = assignment.into();
        if assignment.len() != source.len() {
            return Err(Error::AssignmentLength {
                expected: source.len(),
                got: assignment.len(),
            });
        }
        if let Some((x, &y)) = assignment
            .iter()
            .enumerate()
            .find(|(_, &y)| y >= target.len())
        {
            return Err(Error::AssignmentOutOfRange(format!(
                "`{}` maps to index {y}",
                source.point_name(x)
            )));
        }
        Ok(SpaceMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from `(source point, target point)` name pairs; every
    /// source point must appear exactly once.
    pub fn from_names<S: AsRef<str>, T: AsRef<str>>(
        source: &'a FiniteSpace,
        target: &'a FiniteSpace,
        pairs: &[(S, T)],
    ) -> Result<Self> {
        let mut assignment = vec![usize::MAX; source.len()];
        for (x, y) in pairs {
            let i = source.index_of(x.as_ref())?;
            let j = target
                .index_of(y.as_ref())
                .map_err(|_| Error::AssignmentOutOfRange(format!("`{}`", y.as_ref())))?;
            if assignment[i] != usize::MAX {
                return Err(Error::InvalidDocument(format!(
                    "`{}` assigned twice",
                    x.as_ref()
                )));
            }
            assignment[i] = j;
        }
        if let Some(i) = assignment.iter().position(|&j| j == usize::MAX) {
            return Err(Error::InvalidDocument(format!(
                "`{}` has no image",
                source.point_name(i)
            )));
        }
        Self::new(source, target, assignment)
    }

    pub fn identity(space: &'a FiniteSpace) -> Self {
        SpaceMap {
            source: space,
            target: space,
            assignment: Cow::Owned((0..space.len()).collect()),
        }
    }

    pub fn source(&self) -> &'a FiniteSpace {
        self.source
    }

    pub fn target(&self) -> &'a FiniteSpace {
        self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(self.target.len(), set.iter().map(|x| self.assignment[x]))
    }

    pub fn preimage(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.source.len(),
            (0..self.source.len()).filter(|&x| set.contains(self.assignment[x])),
        )
    }

    pub fn is_surjective(&self) -> bool {
        self.image(&self.source.full()) == self.target.full()
    }

    /// Checks `mode` against the minimal open (or minimal closed) sets.
    ///
    /// Preimages and images commute with unions, and every open (closed) set
    /// of a finite space is a union of sets `U_x` (closures of points), so
    /// testing those generators decides the property for all sets.
    pub fn check(&self, mode: MapProperty) -> MapVerdict {
        let witness = match mode {
            MapProperty::Continuous => self
                .target
                .lex_points()
                .iter()
                .map(|&y| self.target.min_open(y))
                .find(|u| !self.source.is_open(&self.preimage(u)))
                .cloned(),
            MapProperty::Open => self
                .source
                .lex_points()
                .iter()
                .map(|&x| self.source.min_open(x))
                .find(|u| !self.target.is_open(&self.image(u)))
                .cloned(),
            MapProperty::Closed => self
                .source
                .lex_points()
                .iter()
                .map(|&x| self.source.point_closure(x))
                .find(|c| !self.target.is_closed(&self.image(c)))
                .cloned(),
        };
        MapVerdict::from_witness(witness)
    }

    pub fn is_continuous(&self) -> bool {
        self.check(MapProperty::Continuous).holds
    }

    pub fn is_open(&self) -> bool {
        self.check(MapProperty::Open).holds
    }

    pub fn is_closed(&self) -> bool {
        self.check(MapProperty::Closed).holds
    }

    /// The closure criteria, evaluated over every subset `B` of the target:
    /// continuity as `cl(f⁻¹B) ⊆ f⁻¹(cl B)` and openness as
    /// `f⁻¹(cl B) ⊆ cl(f⁻¹B)`. Returns `(continuous, open)`.
    pub fn closure_criteria(&self, limit: usize) -> Result<(bool, bool)> {
        let mut continuous = true;
        let mut open = true;
        for b in all_subsets(self.target.len(), limit, "closure criteria")? {
            let pre_of_closure = self.preimage(&self.target.closure(&b));
            let closure_of_pre = self.source.closure(&self.preimage(&b));
            continuous &= closure_of_pre.is_subset(&pre_of_closure);
            open &= pre_of_closure.is_subset(&closure_of_pre);
        }
        Ok((continuous, open))
    }
}

/// One member of a family for [`final_topology`]: a source space and where
/// each of its points lands in the target point list.
pub type FamilyMember<'a> = (&'a FiniteSpace, &'a [usize]);

/// The finest topology on `target_points` making every family member
/// continuous: `U` is open iff each preimage of `U` is open in its source.
/// Decided by filtering all `2^n` candidate subsets.
pub fn final_topology<S: AsRef<str>>(
    target_points: &[S],
    family: &[FamilyMember<'_>],
    limit: usize,
) -> Result<FiniteSpace> {
    let (names, index) = index_names(target_points, Error::DuplicatePoint)?;
    let n = names.len();
    for (source, assignment) in family {
        if assignment.len() != source.len() {
            return Err(Error::AssignmentLength {
                expected: source.len(),
                got: assignment.len(),
            });
        }
        if let Some((x, &y)) = assignment.iter().enumerate().find(|(_, &y)| y >= n) {
            return Err(Error::AssignmentOutOfRange(format!(
                "`{}` maps to index {y}",
                source.point_name(x)
            )));
        }
    }
    let opens: Vec<PointSet> = all_subsets(n, limit, "final topology target")?
        .filter(|candidate| {
            family.iter().all(|(source, assignment)| {
                let pre = PointSet::from_indices(
                    source.len(),
                    (0..source.len()).filter(|&x| candidate.contains(assignment[x])),
                );
                source.is_open(&pre)
            })
        })
        .collect();
    let min_open = (0..n)
        .map(|x| {
            let mut ux = PointSet::full(n);
            for open in opens.iter().filter(|o| o.contains(x)) {
                ux.intersect_with(open);
            }
            ux
        })
        .collect();
    Ok(FiniteSpace::assemble(names, index, min_open))
}
