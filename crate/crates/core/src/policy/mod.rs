//! Online policies for the matroid secretary problem.
//!
//! Each policy implements [`Policy`](crate::sim::Policy) and is created per
//! trial from a [`PolicyName`]. The k-uniform classics (Dynkin, Optimistic,
//! Virtual) only run on uniform matroids of the matching rank; the matroid
//! policies run on any view.

mod classical;
mod greedy;
mod sample;
mod virtual_msp;

use std::fmt;
use std::str::FromStr;

pub use classical::{Dynkin, Optimistic, VirtualUniform};
pub use greedy::{GreedyFramework, ReferenceRule};
pub use sample::{Sample, SampleContracted};
pub use virtual_msp::VirtualMsp;

use crate::matroid::{BaseMatroid, ElementId, MatroidView};
use crate::sim::{Policy, SimError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolicyName {
    Dynkin,
    Optimistic { k: usize },
    VirtualUniform { k: usize },
    Sample,
    SampleContracted,
    Greedy(ReferenceRule),
    VirtualMsp,
}

impl PolicyName {
    /// Short name used on the command line and in CSV output.
    pub fn slug(&self) -> &'static str {
        match self {
            PolicyName::Dynkin => "dynkin",
            PolicyName::Optimistic { .. } => "optimistic",
            PolicyName::VirtualUniform { .. } => "virtual-uniform",
            PolicyName::Sample => "sample",
            PolicyName::SampleContracted => "sample-contracted",
            PolicyName::Greedy(_) => "greedy",
            PolicyName::VirtualMsp => "virtual-msp",
        }
    }

    /// Parses a policy slug; `k` is required by the k-uniform policies and
    /// `reference` by `greedy`.
    pub fn parse(slug: &str, k: Option<usize>, reference: Option<&str>) -> Result<Self, String> {
        let need_k = || k.ok_or_else(|| format!("policy `{slug}` needs --k"));
        Ok(match slug {
            "dynkin" => PolicyName::Dynkin,
            "optimistic" => PolicyName::Optimistic { k: need_k()? },
            "virtual-uniform" => PolicyName::VirtualUniform { k: need_k()? },
            "sample" => PolicyName::Sample,
            "sample-contracted" => PolicyName::SampleContracted,
            "greedy" => PolicyName::Greedy(
                reference
                    .unwrap_or("sample-contracted")
                    .parse()
                    .map_err(|e: String| e)?,
            ),
            "virtual-msp" => PolicyName::VirtualMsp,
            other => return Err(format!("unknown policy `{other}`")),
        })
    }

    pub fn instantiate(&self, view: &MatroidView) -> Result<Box<dyn Policy>, SimError> {
        let uniform_k = |expected: usize| -> Result<(), SimError> {
            match view.base() {
                BaseMatroid::Uniform { k, .. } if *k == expected && view.contraction().is_empty() => {
                    Ok(())
                }
                _ => Err(SimError::PolicyMismatch {
                    policy: self.to_string(),
                    reason: format!("needs an uncontracted {expected}-uniform matroid"),
                }),
            }
        };
        Ok(match *self {
            PolicyName::Dynkin => {
                uniform_k(1)?;
                Box::new(Dynkin::default())
            }
            PolicyName::Optimistic { k } => {
                uniform_k(k)?;
                Box::new(Optimistic::new(k))
            }
            PolicyName::VirtualUniform { k } => {
                uniform_k(k)?;
                Box::new(VirtualUniform::new(k))
            }
            PolicyName::Sample => Box::new(Sample),
            PolicyName::SampleContracted => Box::new(SampleContracted),
            PolicyName::Greedy(rule) => Box::new(GreedyFramework::new(rule)),
            PolicyName::VirtualMsp => Box::new(VirtualMsp::default()),
        })
    }
}

impl fmt::Display for PolicyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicyName::Optimistic { k } | PolicyName::VirtualUniform { k } => {
                write!(f, "{}(k={k})", self.slug())
            }
            PolicyName::Greedy(rule) => write!(f, "greedy({rule})"),
            _ => f.write_str(self.slug()),
        }
    }
}

/// The element of `old` missing from `new`, where `new ⊆ old ∪ {added}`
/// and both are in the same weight order.
pub(crate) fn dropped(old: &[ElementId], new: &[ElementId], added: ElementId) -> Option<ElementId> {
    let mut rest = new.iter().filter(|&&x| x != added).peekable();
    for &x in old {
        if rest.peek() == Some(&&x) {
            rest.next();
        } else {
            return Some(x);
        }
    }
    None
}

impl FromStr for ReferenceRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sample-contracted" | "sample-contracted-rule" => Ok(ReferenceRule::SampleContracted),
            other => Err(format!("unknown reference rule `{other}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cli_names() {
        assert_eq!(PolicyName::parse("virtual-msp", None, None), Ok(PolicyName::VirtualMsp));
        assert_eq!(
            PolicyName::parse("greedy", None, Some("sample-contracted")),
            Ok(PolicyName::Greedy(ReferenceRule::SampleContracted))
        );
        assert_eq!(
            PolicyName::parse("optimistic", Some(2), None),
            Ok(PolicyName::Optimistic { k: 2 })
        );
        assert!(PolicyName::parse("optimistic", None, None).is_err());
        assert!(PolicyName::parse("kleinberg", None, None).is_err());
        assert!(PolicyName::parse("greedy", None, Some("spanning")).is_err());
    }

    #[test]
    fn classical_policies_need_matching_uniform_rank() {
        let graphic = MatroidView::new(BaseMatroid::graphic(2, vec![(0, 1)]).unwrap());
        assert!(PolicyName::Dynkin.instantiate(&graphic).is_err());
        let two = MatroidView::new(BaseMatroid::uniform(4, 2).unwrap());
        assert!(PolicyName::Dynkin.instantiate(&two).is_err());
        assert!(PolicyName::Optimistic { k: 2 }.instantiate(&two).is_ok());
        assert!(PolicyName::VirtualUniform { k: 3 }.instantiate(&two).is_err());
    }

    #[test]
    fn dropped_finds_the_kicked_element() {
        let ids = |v: &[usize]| v.iter().map(|&i| ElementId(i)).collect::<Vec<_>>();
        assert_eq!(dropped(&ids(&[5, 3, 1]), &ids(&[5, 4, 3]), ElementId(4)), Some(ElementId(1)));
        assert_eq!(dropped(&ids(&[5, 3]), &ids(&[6, 5, 3]), ElementId(6)), None);
        assert_eq!(dropped(&ids(&[5, 3]), &ids(&[5, 3]), ElementId(2)), None);
        assert_eq!(dropped(&ids(&[5, 3, 1]), &ids(&[5, 1]), ElementId(9)), Some(ElementId(3)));
    }
}
