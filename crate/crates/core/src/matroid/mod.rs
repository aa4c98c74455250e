//! Uniform and graphic matroids, their minors, and the greedy max-weight basis.
//!
//! A [`MatroidView`] is a base matroid together with a restriction set and a
//! contraction set. Its effective ground set is `restriction \ contraction`,
//! and a set `S` of effective elements is independent iff `S ∪ contraction`
//! is independent in the base matroid. Views are immutable; `restrict` and
//! `contract` return new views sharing the same base.

mod dsu;
pub mod format;
mod weights;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use dsu::DisjointSet;
pub use weights::{Weight, WeightedGroundSet};

/// Index of an element in its ground set.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub type ElementSet = BTreeSet<ElementId>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("elements {0} and {1} have the same weight")]
    DuplicateWeight(ElementId, ElementId),
    #[error("element {0} has a non-positive weight")]
    NonPositiveWeight(ElementId),
    #[error("{labels} labels given for {elements} elements")]
    LabelCount { labels: usize, elements: usize },
    #[error("uniform rank {k} exceeds ground set size {n}")]
    UniformRankTooLarge { k: usize, n: usize },
    #[error("edge {edge} uses vertex {vertex} but the graph has {vertex_count} vertices")]
    VertexOutOfRange {
        edge: ElementId,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("element {0} is not in the effective ground set")]
    OutsideGroundSet(ElementId),
    #[error("cannot contract by a dependent set")]
    DependentContraction,
    #[error("matroid has {matroid} elements but {weights} weights were given")]
    GroundSizeMismatch { matroid: usize, weights: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseMatroid {
    /// Every set of at most `k` of the `n` elements is independent.
    Uniform { n: usize, k: usize },
    /// Element `i` is the edge `endpoints[i]`; acyclic edge sets are
    /// independent. Parallel edges and self-loops are allowed.
    Graphic {
        vertex_count: usize,
        endpoints: Vec<(usize, usize)>,
    },
}

impl BaseMatroid {
    pub fn uniform(n: usize, k: usize) -> Result<Self, MatroidError> {
        if k > n {
            return Err(MatroidError::UniformRankTooLarge { k, n });
        }
        Ok(BaseMatroid::Uniform { n, k })
    }

    pub fn graphic(
        vertex_count: usize,
        endpoints: Vec<(usize, usize)>,
    ) -> Result<Self, MatroidError> {
        for (i, &(a, b)) in endpoints.iter().enumerate() {
            if let Some(vertex) = [a, b].into_iter().find(|&v| v >= vertex_count) {
                return Err(MatroidError::VertexOutOfRange {
                    edge: ElementId(i),
                    vertex,
                    vertex_count,
                });
            }
        }
        Ok(BaseMatroid::Graphic {
            vertex_count,
            endpoints,
        })
    }

    pub fn len(&self) -> usize {
        match self {
            BaseMatroid::Uniform { n, .. } => *n,
            BaseMatroid::Graphic { endpoints, .. } => endpoints.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn uniform_rank(&self) -> Option<usize> {
        match self {
            BaseMatroid::Uniform { k, .. } => Some(*k),
            BaseMatroid::Graphic { .. } => None,
        }
    }
}

/// Incremental independence test: holds an independent set and answers
/// whether one more element keeps it independent.
enum Accumulator<'a> {
    Uniform { room: usize },
    Graphic {
        forest: DisjointSet,
        endpoints: &'a [(usize, usize)],
    },
}

impl Accumulator<'_> {
    fn can_add(&mut self, e: ElementId) -> bool {
        match self {
            Accumulator::Uniform { room } => *room > 0,
            Accumulator::Graphic { forest, endpoints } => {
                let (a, b) = endpoints[e.0];
                !forest.connected(a, b)
            }
        }
    }

    /// Adds `e` if the set stays independent; reports whether it was added.
    fn try_add(&mut self, e: ElementId) -> bool {
        match self {
            Accumulator::Uniform { room } => {
                if *room == 0 {
                    return false;
                }
                *room -= 1;
                true
            }
            Accumulator::Graphic { forest, endpoints } => {
                let (a, b) = endpoints[e.0];
                forest.union(a, b)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatroidView {
    base: Arc<BaseMatroid>,
    /// `None` means the whole base ground set.
    restriction: Option<ElementSet>,
    contraction: ElementSet,
}

impl PartialEq for MatroidView {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.ground() == other.ground()
            && self.contraction == other.contraction
    }
}

impl MatroidView {
    pub fn new(base: BaseMatroid) -> Self {
        Self::from_shared(Arc::new(base))
    }

    pub fn from_shared(base: Arc<BaseMatroid>) -> Self {
        Self {
            base,
            restriction: None,
            contraction: ElementSet::new(),
        }
    }

    pub fn base(&self) -> &BaseMatroid {
        &self.base
    }

    pub fn contraction(&self) -> &ElementSet {
        &self.contraction
    }

    pub fn contains(&self, id: ElementId) -> bool {
        id.0 < self.base.len()
            && self.restriction.as_ref().is_none_or(|r| r.contains(&id))
            && !self.contraction.contains(&id)
    }

    /// Effective ground set: `restriction \ contraction`.
    pub fn ground(&self) -> ElementSet {
        match &self.restriction {
            Some(r) => r.difference(&self.contraction).copied().collect(),
            None => (0..self.base.len())
                .map(ElementId)
                .filter(|id| !self.contraction.contains(id))
                .collect(),
        }
    }

    fn check_members<'a>(
        &self,
        ids: impl IntoIterator<Item = &'a ElementId>,
    ) -> Result<(), MatroidError> {
        match ids.into_iter().find(|id| !self.contains(**id)) {
            Some(id) => Err(MatroidError::OutsideGroundSet(*id)),
            None => Ok(()),
        }
    }

    /// Accumulator preloaded with the contraction set.
    fn accumulator(&self) -> Accumulator<'_> {
        let mut acc = match &*self.base {
            BaseMatroid::Uniform { k, .. } => Accumulator::Uniform { room: *k },
            BaseMatroid::Graphic {
                vertex_count,
                endpoints,
            } => Accumulator::Graphic {
                forest: DisjointSet::new(*vertex_count),
                endpoints,
            },
        };
        for &c in &self.contraction {
            let added = acc.try_add(c);
            debug_assert!(added, "contraction set must be independent");
        }
        acc
    }

    /// Independence without membership checks. `ids` must be distinct
    /// members of the effective ground set.
    pub fn independent_unchecked(&self, ids: impl IntoIterator<Item = ElementId>) -> bool {
        let mut acc = self.accumulator();
        ids.into_iter().all(|id| acc.try_add(id))
    }

    /// Greedy over `sorted`, which must already be in decreasing weight
    /// order and lie in the effective ground set. Accepted elements are
    /// returned in the same order.
    pub fn greedy_sorted(&self, sorted: &[ElementId]) -> Vec<ElementId> {
        let mut acc = self.accumulator();
        sorted.iter().copied().filter(|&id| acc.try_add(id)).collect()
    }

    pub fn is_independent(&self, set: &ElementSet) -> Result<bool, MatroidError> {
        self.check_members(set)?;
        Ok(self.independent_unchecked(set.iter().copied()))
    }

    /// Size of a maximal independent subset of `set`.
    pub fn rank(&self, set: &ElementSet) -> Result<usize, MatroidError> {
        self.check_members(set)?;
        let mut acc = self.accumulator();
        Ok(set.iter().filter(|&&id| acc.try_add(id)).count())
    }

    /// Every effective element whose addition leaves the rank of `set`
    /// unchanged. Includes `set` itself and all loops.
    pub fn span(&self, set: &ElementSet) -> Result<ElementSet, MatroidError> {
        self.check_members(set)?;
        let mut acc = self.accumulator();
        for &id in set {
            acc.try_add(id);
        }
        Ok(self
            .ground()
            .into_iter()
            .filter(|&id| set.contains(&id) || !acc.can_add(id))
            .collect())
    }

    /// Max-weight basis of the view restricted to `set`, by the greedy
    /// algorithm.
    pub fn greedy_mwb(
        &self,
        weights: &WeightedGroundSet,
        set: &ElementSet,
    ) -> Result<ElementSet, MatroidError> {
        self.check_members(set)?;
        let mut sorted: Vec<ElementId> = set.iter().copied().collect();
        weights.sort_descending(&mut sorted);
        Ok(self.greedy_sorted(&sorted).into_iter().collect())
    }

    /// `M|_S`. `set` must lie in the effective ground set.
    pub fn restrict(&self, set: &ElementSet) -> Result<MatroidView, MatroidError> {
        self.check_members(set)?;
        Ok(Self {
            base: Arc::clone(&self.base),
            restriction: Some(set.clone()),
            contraction: self.contraction.clone(),
        })
    }

    /// `M / I`. `set` must be independent in this view.
    pub fn contract(&self, set: &ElementSet) -> Result<MatroidView, MatroidError> {
        if !self.is_independent(set)? {
            return Err(MatroidError::DependentContraction);
        }
        let mut contraction = self.contraction.clone();
        contraction.extend(set.iter().copied());
        Ok(Self {
            base: Arc::clone(&self.base),
            restriction: self.restriction.clone(),
            contraction,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> ElementSet {
        ids.iter().copied().map(ElementId).collect()
    }

    /// e1 = (0,1), e2 = (1,2), e3 = (2,0), ids 0..3.
    fn triangle() -> MatroidView {
        MatroidView::new(BaseMatroid::graphic(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap())
    }

    fn uniform(n: usize, k: usize) -> MatroidView {
        MatroidView::new(BaseMatroid::uniform(n, k).unwrap())
    }

    /// Independence oracle straight from the definitions: search for a cycle
    /// by exhaustive path walking.
    fn has_cycle(endpoints: &[(usize, usize)], edges: &[usize]) -> bool {
        fn reach(adj: &[(usize, usize, usize)], from: usize, to: usize, banned: usize) -> bool {
            let mut seen = vec![from];
            let mut stack = vec![from];
            while let Some(v) = stack.pop() {
                if v == to {
                    return true;
                }
                for &(id, a, b) in adj {
                    if id == banned {
                        continue;
                    }
                    let next = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if !seen.contains(&next) {
                        seen.push(next);
                        stack.push(next);
                    }
                }
            }
            false
        }
        let adj: Vec<_> = edges
            .iter()
            .map(|&e| (e, endpoints[e].0, endpoints[e].1))
            .collect();
        adj.iter().any(|&(id, a, b)| a == b || reach(&adj, a, b, id))
    }

    #[test]
    fn triangle_independence() {
        let t = triangle();
        assert!(t.is_independent(&set(&[0, 1])).unwrap());
        assert!(!t.is_independent(&set(&[0, 1, 2])).unwrap());
    }

    #[test]
    fn triangle_contracted_by_e3_keeps_e1_independent() {
        let endpoints = [(0, 1), (1, 2), (2, 0)];
        let oracle = !has_cycle(&endpoints, &[0, 2]);
        let view = triangle().contract(&set(&[2])).unwrap();
        assert!(oracle);
        assert_eq!(view.is_independent(&set(&[0])).unwrap(), oracle);
        assert!(!view.is_independent(&set(&[0, 1])).unwrap());
    }

    #[test]
    fn uniform_independence_and_rank() {
        let u = uniform(6, 2);
        assert!(!u.is_independent(&set(&[0, 1, 2])).unwrap());
        assert_eq!(u.rank(&set(&[0, 1, 2, 3, 4])).unwrap(), 2);
        assert_eq!(u.span(&set(&[0, 1])).unwrap(), set(&[0, 1, 2, 3, 4, 5]));
        let c = u.contract(&set(&[0])).unwrap();
        assert_eq!(c.rank(&set(&[1, 2, 3, 4, 5])).unwrap(), 1);
    }

    #[test]
    fn triangle_rank_and_span() {
        let t = triangle();
        assert_eq!(t.rank(&set(&[0, 1, 2])).unwrap(), 2);
        assert_eq!(t.span(&set(&[0, 1])).unwrap(), set(&[0, 1, 2]));
        assert_eq!(t.span(&set(&[])).unwrap(), set(&[]));
    }

    #[test]
    fn span_of_empty_set_is_the_loops() {
        let g = MatroidView::new(BaseMatroid::graphic(2, vec![(0, 1), (1, 1), (0, 0)]).unwrap());
        assert_eq!(g.span(&set(&[])).unwrap(), set(&[1, 2]));
        assert!(!g.is_independent(&set(&[1])).unwrap());
    }

    #[test]
    fn greedy_on_triangle() {
        let t = triangle();
        let w = WeightedGroundSet::from_integers(&[1, 2, 3]).unwrap();
        assert_eq!(t.greedy_mwb(&w, &set(&[0, 1, 2])).unwrap(), set(&[1, 2]));
        assert_eq!(t.greedy_mwb(&w, &set(&[])).unwrap(), set(&[]));
    }

    #[test]
    fn restrict_and_contract_compose() {
        let t = triangle();
        let r = t.restrict(&set(&[0, 1])).unwrap();
        assert!(r.is_independent(&set(&[0, 1])).unwrap());
        assert_eq!(r.ground(), set(&[0, 1]));
        let twice = t
            .restrict(&set(&[0, 1, 2]))
            .unwrap()
            .restrict(&set(&[0, 2]))
            .unwrap();
        assert_eq!(twice, t.restrict(&set(&[0, 2])).unwrap());

        let rc = t.restrict(&set(&[0, 2])).unwrap().contract(&set(&[2])).unwrap();
        let cr = t.contract(&set(&[2])).unwrap().restrict(&set(&[0])).unwrap();
        assert_eq!(rc, cr);
        assert_eq!(t.contract(&set(&[])).unwrap(), t);
    }

    #[test]
    fn domain_and_precondition_errors() {
        let t = triangle();
        assert_eq!(
            t.is_independent(&set(&[7])),
            Err(MatroidError::OutsideGroundSet(ElementId(7)))
        );
        let c = t.contract(&set(&[2])).unwrap();
        assert_eq!(
            c.rank(&set(&[2])),
            Err(MatroidError::OutsideGroundSet(ElementId(2)))
        );
        assert_eq!(
            t.contract(&set(&[0, 1, 2])),
            Err(MatroidError::DependentContraction)
        );
        assert!(BaseMatroid::uniform(3, 4).is_err());
        assert!(BaseMatroid::graphic(2, vec![(0, 2)]).is_err());
    }
}
