//! Instance families with their exact weight orders.
//!
//! In both hat families the infinity edge weighs one more than all other
//! edges together, and every other weight is a small integer fixing the
//! required strict chain, so utility sums stay exact.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::matroid::{
    BaseMatroid, ElementId, ElementSet, MatroidError, MatroidView, Weight, WeightedGroundSet,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("{family} needs n >= 1")]
    EmptyFamily { family: &'static str },
    #[error("random graphic instance needs at least one edge and one vertex")]
    EmptyGraph,
    #[error("{given} weights given for {n} elements")]
    WeightCount { given: usize, n: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

#[derive(Clone, Debug)]
pub struct InstanceBundle {
    /// Family name, e.g. `hat` or `modified-hat`.
    pub family: String,
    pub view: MatroidView,
    pub weights: WeightedGroundSet,
    /// Role names such as `e_inf`, `t_1`, `3_2`, `e_{1,2}`.
    pub named: BTreeMap<String, ElementId>,
    /// Max-weight basis of the whole ground set.
    pub mwb: ElementSet,
}

impl InstanceBundle {
    fn assemble(
        family: &str,
        base: BaseMatroid,
        weights: Vec<i128>,
        labels: Vec<String>,
    ) -> Result<Self, InstanceError> {
        let named = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), ElementId(i)))
            .collect();
        let weights = WeightedGroundSet::new(
            weights.into_iter().map(Weight::from_integer).collect(),
            Some(labels),
        )?;
        Self::from_parts(family, base, weights, named)
    }

    pub fn from_parts(
        family: &str,
        base: BaseMatroid,
        weights: WeightedGroundSet,
        named: BTreeMap<String, ElementId>,
    ) -> Result<Self, InstanceError> {
        if base.len() != weights.len() {
            return Err(MatroidError::GroundSizeMismatch {
                matroid: base.len(),
                weights: weights.len(),
            }
            .into());
        }
        let view = MatroidView::from_shared(Arc::new(base));
        let mwb = view.greedy_mwb(&weights, &view.ground())?;
        Ok(Self {
            family: family.to_owned(),
            view,
            weights,
            named,
            mwb,
        })
    }

    /// Looks up a named element. Panics on unknown names.
    pub fn id(&self, name: &str) -> ElementId {
        *self
            .named
            .get(name)
            .unwrap_or_else(|| panic!("no element named `{name}` in {}", self.family))
    }

    pub fn ids(&self, names: &[&str]) -> ElementSet {
        names.iter().map(|n| self.id(n)).collect()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

fn infinity_weight(others: &[i128]) -> i128 {
    1 + others.iter().sum::<i128>()
}

/// Hat graph with `n` claws.
///
/// Vertices: `v_t = 0`, `v_b = 1`, `v_i = i + 1`. Ids: `e_inf = 0`,
/// `t_i = i`, `b_i = n + i`. Weights: `t_i = 2n - i + 1`, `b_i = n - i + 1`.
pub fn hat_graph(n: usize) -> Result<InstanceBundle, InstanceError> {
    if n == 0 {
        return Err(InstanceError::EmptyFamily { family: "hat" });
    }
    let mut endpoints = vec![(0, 1)];
    let mut labels = vec!["e_inf".to_owned()];
    let mut weights = vec![0];
    for i in 1..=n {
        endpoints.push((0, i + 1));
        labels.push(format!("t_{i}"));
        weights.push((2 * n - i + 1) as i128);
    }
    for i in 1..=n {
        endpoints.push((1, i + 1));
        labels.push(format!("b_{i}"));
        weights.push((n - i + 1) as i128);
    }
    weights[0] = infinity_weight(&weights[1..]);
    InstanceBundle::assemble("hat", BaseMatroid::graphic(n + 2, endpoints)?, weights, labels)
}

/// Modified hat graph with `n` four-edge claws.
///
/// Vertices: `v_t = 0`, `v_b = 1`, `v_{i,1} = 2i`, `v_{i,2} = 2i + 1`.
/// Ids: `e_inf = 0`, then `1_i`, `2_i`, `3_i`, `4_i` in blocks of `n`.
/// Weights: `c_i = c·n - i + 1` for edge class `c`.
pub fn modified_hat_graph(n: usize) -> Result<InstanceBundle, InstanceError> {
    if n == 0 {
        return Err(InstanceError::EmptyFamily {
            family: "modified-hat",
        });
    }
    let mut endpoints = vec![(0, 1)];
    let mut labels = vec!["e_inf".to_owned()];
    let mut weights = vec![0];
    for class in 1..=4usize {
        for i in 1..=n {
            let (v1, v2) = (2 * i, 2 * i + 1);
            endpoints.push(match class {
                1 => (0, v2),
                2 => (0, v1),
                3 => (v1, v2),
                _ => (1, v2),
            });
            labels.push(format!("{class}_{i}"));
            weights.push((class * n - i + 1) as i128);
        }
    }
    weights[0] = infinity_weight(&weights[1..]);
    InstanceBundle::assemble(
        "modified-hat",
        BaseMatroid::graphic(2 * n + 2, endpoints)?,
        weights,
        labels,
    )
}

/// Triangle `e1 = (v1, v2)`, `e2 = (v2, v3)`, `e3 = (v3, v1)` with
/// `v(e_i) = i`; ids `0, 1, 2`.
pub fn triangle() -> InstanceBundle {
    InstanceBundle::assemble(
        "triangle",
        BaseMatroid::graphic(3, vec![(0, 1), (1, 2), (2, 0)]).expect("valid graph"),
        vec![1, 2, 3],
        vec!["e1".into(), "e2".into(), "e3".into()],
    )
    .expect("valid instance")
}

/// Triangle with every side doubled: `e_{i,1}` and `e_{i,2}` join the same
/// vertices and `v(e_{i,j}) = i + 3(j - 1)`. Id of `e_{i,j}` is
/// `2(i - 1) + (j - 1)`.
pub fn double_triangle() -> InstanceBundle {
    let sides = [(0, 1), (1, 2), (2, 0)];
    let mut endpoints = Vec::new();
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    for (i, &side) in sides.iter().enumerate() {
        for j in 1..=2 {
            endpoints.push(side);
            labels.push(format!("e_{{{},{j}}}", i + 1));
            weights.push((i + 1 + 3 * (j - 1)) as i128);
        }
    }
    InstanceBundle::assemble(
        "double-triangle",
        BaseMatroid::graphic(3, endpoints).expect("valid graph"),
        weights,
        labels,
    )
    .expect("valid instance")
}

pub enum WeightSpec {
    /// Element `i` weighs `i + 1`; labels are `1..=n`.
    Identity,
    Explicit(Vec<Weight>),
    /// A random permutation of `1..=n`.
    Shuffled(u64),
}

pub fn uniform_instance(n: usize, k: usize, spec: WeightSpec) -> Result<InstanceBundle, InstanceError> {
    let base = BaseMatroid::uniform(n, k)?;
    let (weights, labels): (Vec<Weight>, Vec<String>) = match spec {
        WeightSpec::Identity => (1..=n as i128)
            .map(|w| (Weight::from_integer(w), w.to_string()))
            .unzip(),
        WeightSpec::Explicit(ws) => {
            if ws.len() != n {
                return Err(InstanceError::WeightCount { given: ws.len(), n });
            }
            let labels = (0..n).map(|i| format!("u{i}")).collect();
            (ws, labels)
        }
        WeightSpec::Shuffled(seed) => {
            let mut ws: Vec<i128> = (1..=n as i128).collect();
            ws.shuffle(&mut crate::sim::trial_rng(seed, 0));
            let labels = (0..n).map(|i| format!("u{i}")).collect();
            (ws.into_iter().map(Weight::from_integer).collect(), labels)
        }
    };
    let named = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), ElementId(i)))
        .collect();
    let weights = WeightedGroundSet::new(weights, Some(labels))?;
    InstanceBundle::from_parts("uniform", base, weights, named)
}

/// Random multigraph: endpoints drawn uniformly (parallel edges and
/// self-loops possible), weights a random permutation of `1..=edges`.
pub fn random_graphic<R: Rng + ?Sized>(
    vertices: usize,
    edges: usize,
    rng: &mut R,
) -> Result<InstanceBundle, InstanceError> {
    if edges == 0 || vertices == 0 {
        return Err(InstanceError::EmptyGraph);
    }
    let endpoints = (0..edges)
        .map(|_| (rng.random_range(0..vertices), rng.random_range(0..vertices)))
        .collect();
    let mut weights: Vec<i128> = (1..=edges as i128).collect();
    weights.shuffle(rng);
    let labels = (0..edges).map(|i| format!("u{i}")).collect();
    InstanceBundle::assemble(
        "random-graphic",
        BaseMatroid::graphic(vertices, endpoints)?,
        weights,
        labels,
    )
}
