use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use super::{ElementId, MatroidError};

/// An exact, strictly positive element weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Ratio<i128>);

impl Weight {
    pub fn from_integer(value: i128) -> Self {
        Weight(Ratio::from_integer(value))
    }

    pub fn from_ratio(numer: i128, denom: i128) -> Self {
        Weight(Ratio::new(numer, denom))
    }

    pub fn ratio(&self) -> Ratio<i128> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// Decimal rendering when the denominator is of the form 2^a 5^b,
    /// `numer/denom` otherwise.
    pub fn to_decimal_string(&self) -> String {
        let numer = *self.0.numer();
        let denom = *self.0.denom();
        if denom == 1 {
            return numer.to_string();
        }
        let mut rest = denom;
        let (mut twos, mut fives) = (0u32, 0u32);
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        while rest % 5 == 0 {
            rest /= 5;
            fives += 1;
        }
        if rest != 1 {
            return format!("{numer}/{denom}");
        }
        let places = twos.max(fives);
        let scaled = numer * (10i128.pow(places) / denom);
        let sign = if scaled < 0 { "-" } else { "" };
        let digits = scaled.unsigned_abs().to_string();
        let places = places as usize;
        let digits = format!("{digits:0>width$}", width = places + 1);
        let (int, frac) = digits.split_at(digits.len() - places);
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl FromStr for Weight {
    type Err = String;

    /// Accepts plain decimals (`3`, `0.25`, `12.500`) and `numer/denom`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid weight `{s}`");
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n.parse().map_err(|_| bad())?;
            let d: i128 = d.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Weight::from_ratio(n, d));
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || frac.len() > 30
        {
            return Err(bad());
        }
        let mut numer: i128 = 0;
        for c in int_digits.chars().chain(frac.chars()) {
            numer = numer
                .checked_mul(10)
                .and_then(|v| v.checked_add(i128::from(c as u8 - b'0')))
                .ok_or_else(bad)?;
        }
        if negative {
            numer = -numer;
        }
        Ok(Weight::from_ratio(numer, 10i128.pow(frac.len() as u32)))
    }
}

/// Ground set with distinct, strictly positive weights and display labels.
///
/// The weight order is precomputed: `position(u) == 0` for the heaviest
/// element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGroundSet {
    weights: Vec<Weight>,
    labels: Vec<String>,
    position: Vec<usize>,
    descending: Vec<ElementId>,
}

impl WeightedGroundSet {
    /// Builds a ground set, labelling elements `u0, u1, …` when no labels are
    /// given.
    pub fn new(weights: Vec<Weight>, labels: Option<Vec<String>>) -> Result<Self, MatroidError> {
        let labels = match labels {
            Some(labels) if labels.len() != weights.len() => {
                return Err(MatroidError::LabelCount {
                    labels: labels.len(),
                    elements: weights.len(),
                })
            }
            Some(labels) => labels,
            None => (0..weights.len()).map(|i| format!("u{i}")).collect(),
        };
        if let Some(i) = weights.iter().position(|w| w.ratio() <= Ratio::from_integer(0)) {
            return Err(MatroidError::NonPositiveWeight(ElementId(i)));
        }
        let mut descending: Vec<ElementId> = (0..weights.len()).map(ElementId).collect();
        descending.sort_by(|a, b| weights[b.0].cmp(&weights[a.0]));
        if let Some(pair) = descending
            .windows(2)
            .find(|pair| weights[pair[0].0] == weights[pair[1].0])
        {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            return Err(MatroidError::DuplicateWeight(a, b));
        }
        let mut position = vec![0; weights.len()];
        for (rank, id) in descending.iter().enumerate() {
            position[id.0] = rank;
        }
        Ok(Self {
            weights,
            labels,
            position,
            descending,
        })
    }

    pub fn from_integers(weights: &[i128]) -> Result<Self, MatroidError> {
        Self::new(weights.iter().map(|&w| Weight::from_integer(w)).collect(), None)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.weights.len()).map(ElementId)
    }

    pub fn weight(&self, id: ElementId) -> Weight {
        self.weights[id.0]
    }

    pub fn label(&self, id: ElementId) -> &str {
        &self.labels[id.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<ElementId> {
        self.labels.iter().position(|l| l == label).map(ElementId)
    }

    /// Index of `id` in decreasing weight order.
    pub fn position(&self, id: ElementId) -> usize {
        self.position[id.0]
    }

    pub fn heavier(&self, a: ElementId, b: ElementId) -> bool {
        self.position[a.0] < self.position[b.0]
    }

    /// All ids, heaviest first.
    pub fn descending(&self) -> &[ElementId] {
        &self.descending
    }

    pub fn sort_descending(&self, ids: &mut [ElementId]) {
        ids.sort_unstable_by_key(|id| self.position[id.0]);
    }

    pub fn total<'a>(&self, ids: impl IntoIterator<Item = &'a ElementId>) -> Ratio<i128> {
        ids.into_iter()
            .fold(Ratio::from_integer(0), |acc, id| acc + self.weights[id.0].ratio())
    }
}
