use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{FiniteSpace, Subset};

struct MapInner {
    name: String,
    domain: FiniteSpace,
    codomain: FiniteSpace,
    assignment: Vec<usize>,
}

/// A total map between finite spaces.
///
/// On discrete spaces every map is Borel, continuous and open. Maps are named;
/// equality requires the same name, legs and assignment, so that kernels stay
/// tied to the exact leg they were built over.
#[derive(Clone)]
pub struct SpaceMap(Arc<MapInner>);

impl SpaceMap {
    /// Builds a map from `(source label, target label)` pairs covering the domain.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(
        name: impl Into<String>,
        domain: &FiniteSpace,
        codomain: &FiniteSpace,
        pairs: &[(S, T)],
    ) -> Result<Self> {
        let name = name.into();
        let mut assignment = vec![None; domain.len()];
        for (s, t) in pairs {
            let i = domain.index_of(s.as_ref())?;
            let j = codomain.index_of(t.as_ref())?;
            if assignment[i].replace(j).is_some_and(|prev| prev != j) {
                return Err(Error::Input(format!(
                    "map {name:?} assigns {:?} twice",
                    s.as_ref()
                )));
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, j)| {
                j.ok_or_else(|| Error::IncompleteMap {
                    map: name.clone(),
                    label: domain.label(i).to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(name, domain, codomain, assignment)
    }

    pub fn from_indices(
        name: impl Into<String>,
        domain: &FiniteSpace,
        codomain: &FiniteSpace,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        if assignment.len() != domain.len() {
            return Err(Error::Input(format!(
                "map {name:?} has {} images for {} domain points",
                assignment.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::Input(format!(
                "map {name:?} sends a point to index {bad}, outside {:?}",
                codomain.id()
            )));
        }
        Ok(SpaceMap(Arc::new(MapInner {
            name,
            domain: domain.clone(),
            codomain: codomain.clone(),
            assignment,
        })))
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        Self::from_indices(format!("id_{}", space.id()), space, space, (0..space.len()).collect())
            .expect("identity is total")
    }

    /// The map sending every point of `domain` to `target`.
    pub fn constant(
        name: impl Into<String>,
        domain: &FiniteSpace,
        codomain: &FiniteSpace,
        target: &str,
    ) -> Result<Self> {
        let j = codomain.index_of(target)?;
        Self::from_indices(name, domain, codomain, vec![j; domain.len()])
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn domain(&self) -> &FiniteSpace {
        &self.0.domain
    }

    pub fn codomain(&self) -> &FiniteSpace {
        &self.0.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.0.assignment
    }

    pub fn apply(&self, index: usize) -> usize {
        self.0.assignment[index]
    }

    pub fn apply_label(&self, label: &str) -> Result<&str> {
        let i = self.domain().index_of(label)?;
        Ok(self.codomain().label(self.apply(i)))
    }

    /// `π⁻¹(y)` for a codomain index `y`.
    pub fn fiber(&self, y: usize) -> Subset {
        Subset::from_predicate(self.domain(), |x| self.apply(x) == y)
    }

    pub fn fiber_indices(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignment()
            .iter()
            .enumerate()
            .filter_map(move |(x, &img)| (img == y).then_some(x))
    }

    pub fn preimage(&self, set: &Subset) -> Subset {
        Subset::from_predicate(self.domain(), |x| set.contains(self.apply(x)))
    }

    pub fn image(&self, set: &Subset) -> Subset {
        Subset::from_indices(self.codomain(), set.indices().map(|x| self.apply(x)))
    }

    /// `self ∘ first`, i.e. apply `first`, then `self`.
    pub fn after(&self, first: &SpaceMap) -> Result<SpaceMap> {
        first.codomain().ensure_same(self.domain())?;
        let assignment = first.assignment().iter().map(|&y| self.apply(y)).collect();
        Self::from_indices(
            format!("{}∘{}", self.name(), first.name()),
            first.domain(),
            self.codomain(),
            assignment,
        )
    }

    /// Same legs and same values, regardless of name.
    pub fn agrees_with(&self, other: &SpaceMap) -> bool {
        self.domain() == other.domain()
            && self.codomain() == other.codomain()
            && self.assignment() == other.assignment()
    }

    pub fn renamed(&self, name: impl Into<String>) -> SpaceMap {
        SpaceMap(Arc::new(MapInner {
            name: name.into(),
            domain: self.domain().clone(),
            codomain: self.codomain().clone(),
            assignment: self.assignment().to_vec(),
        }))
    }

    /// Fails with [`Error::MapMismatch`] unless `other` is this exact map.
    pub fn ensure_same(&self, other: &SpaceMap) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::MapMismatch {
                expected: self.name().to_string(),
                found: other.name().to_string(),
            })
        }
    }
}

impl PartialEq for SpaceMap {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.name() == other.name() && self.agrees_with(other))
    }
}

impl Eq for SpaceMap {}

impl fmt::Debug for SpaceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {} [", self.name(), self.domain().id(), self.codomain().id())?;
        for (x, &y) in self.assignment().iter().enumerate() {
            if x > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}↦{}", self.domain().label(x), self.codomain().label(y))?;
        }
        f.write_str("]")
    }
}
