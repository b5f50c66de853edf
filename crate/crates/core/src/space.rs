//! Finite labelled spaces and their subsets.
//!
//! A finite T1 space is discrete, so every subset is open, closed and Borel.
//! Nothing in the crate tracks a topology beyond that fact.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

struct SpaceInner {
    id: String,
    points: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered set of distinct point labels with a nominal identity.
///
/// Two spaces are equal when they carry the same id and the same points in
/// the same order. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteSpace(Arc<SpaceInner>);

impl FiniteSpace {
    pub fn new<I, S>(id: impl Into<String>, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let id = id.into();
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicatePoint {
                    space: id,
                    label: p.clone(),
                });
            }
        }
        Ok(FiniteSpace(Arc::new(SpaceInner { id, points, index })))
    }

    pub fn id(&self) -> &str {
        &self.0.id
    }

    pub fn points(&self) -> &[String] {
        &self.0.points
    }

    pub fn len(&self) -> usize {
        self.0.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.points.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0.points[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownPoint {
                space: self.id().to_string(),
                label: label.to_string(),
            })
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.index.contains_key(label)
    }

    /// Fails with [`Error::SpaceMismatch`] unless `other` is this space.
    pub fn ensure_same(&self, other: &FiniteSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                expected: self.id().to_string(),
                found: other.id().to_string(),
            })
        }
    }

    /// The subset named by `labels`.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut members = vec![false; self.len()];
        for l in labels {
            members[self.index_of(l.as_ref())?] = true;
        }
        Ok(Subset {
            space: self.clone(),
            members,
        })
    }

    pub fn empty_subset(&self) -> Subset {
        Subset {
            space: self.clone(),
            members: vec![false; self.len()],
        }
    }

    pub fn full_subset(&self) -> Subset {
        Subset {
            space: self.clone(),
            members: vec![true; self.len()],
        }
    }

    /// Every subset, in bitmask order (bit `i` is point `i`).
    ///
    /// Panics if the space has 64 or more points.
    pub fn all_subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        assert!(self.len() < 64, "power set of {} points", self.len());
        (0..1u64 << self.len()).map(move |mask| Subset::from_mask(self, mask))
    }
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.id == other.0.id && self.0.points == other.0.points)
    }
}

impl Eq for FiniteSpace {}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.id(), self.points())
    }
}

/// A subset of a [`FiniteSpace`], stored as a membership mask.
#[derive(Clone, PartialEq, Eq)]
pub struct Subset {
    space: FiniteSpace,
    members: Vec<bool>,
}

impl Subset {
    pub fn from_mask(space: &FiniteSpace, mask: u64) -> Self {
        let members = (0..space.len()).map(|i| mask >> i & 1 == 1).collect();
        Subset {
            space: space.clone(),
            members,
        }
    }

    pub fn from_indices(space: &FiniteSpace, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut members = vec![false; space.len()];
        for i in indices {
            members[i] = true;
        }
        Subset {
            space: space.clone(),
            members,
        }
    }

    pub fn from_predicate(space: &FiniteSpace, pred: impl Fn(usize) -> bool) -> Self {
        Subset {
            space: space.clone(),
            members: (0..space.len()).map(pred).collect(),
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members[index]
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn labels(&self) -> Vec<&str> {
        self.indices().map(|i| self.space.label(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    pub fn complement(&self) -> Subset {
        Subset {
            space: self.space.clone(),
            members: self.members.iter().map(|m| !m).collect(),
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a && !b)
    }

    fn zip_with(&self, other: &Subset, op: impl Fn(bool, bool) -> bool) -> Subset {
        debug_assert_eq!(self.space, other.space);
        Subset {
            space: self.space.clone(),
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
