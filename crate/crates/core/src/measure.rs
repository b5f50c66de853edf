use std::fmt;

use crate::error::{Error, Result};
use crate::map::SpaceMap;
use crate::rational::Rational;
use crate::space::{FiniteSpace, Subset};

/// Canonical label for the pair `(x, y)` in product and pullback spaces.
pub fn pair_label(x: &str, y: &str) -> String {
    format!("({x}|{y})")
}

/// The product space `X×Y`, points ordered with `X` major.
pub fn product_space(left: &FiniteSpace, right: &FiniteSpace) -> FiniteSpace {
    let points = left
        .points()
        .iter()
        .flat_map(|x| right.points().iter().map(move |y| pair_label(x, y)));
    FiniteSpace::new(format!("{}×{}", left.id(), right.id()), points)
        .expect("pair labels of distinct points are distinct")
}

/// A finite positive measure on a finite space: one mass per point.
#[derive(Clone, PartialEq, Eq)]
pub struct Measure {
    space: FiniteSpace,
    masses: Vec<Rational>,
}

impl Measure {
    pub fn zero(space: &FiniteSpace) -> Self {
        Measure {
            space: space.clone(),
            masses: vec![Rational::zero(); space.len()],
        }
    }

    /// Dense constructor: `masses[i]` is the mass of point `i`.
    pub fn from_masses(space: &FiniteSpace, masses: Vec<Rational>) -> Result<Self> {
        if masses.len() != space.len() {
            return Err(Error::Input(format!(
                "measure on {:?} needs {} masses, got {}",
                space.id(),
                space.len(),
                masses.len()
            )));
        }
        Ok(Measure {
            space: space.clone(),
            masses,
        })
    }

    /// Sparse constructor from `(label, mass)` pairs; unlisted points get zero.
    pub fn from_pairs<S: AsRef<str>>(space: &FiniteSpace, pairs: &[(S, Rational)]) -> Result<Self> {
        let mut m = Measure::zero(space);
        for (label, mass) in pairs {
            let i = space.index_of(label.as_ref())?;
            m.masses[i] += mass;
        }
        Ok(m)
    }

    /// Unit mass at `label`.
    pub fn dirac(label: &str, space: &FiniteSpace) -> Result<Self> {
        let i = space.index_of(label)?;
        Ok(Self::dirac_at(i, space))
    }

    pub fn dirac_at(index: usize, space: &FiniteSpace) -> Self {
        let mut m = Measure::zero(space);
        m.masses[index] = Rational::one();
        m
    }

    /// Counting measure restricted to `set`.
    pub fn counting(set: &Subset) -> Self {
        let space = set.space();
        Measure {
            space: space.clone(),
            masses: (0..space.len())
                .map(|i| {
                    if set.contains(i) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    pub fn mass_at(&self, index: usize) -> &Rational {
        &self.masses[index]
    }

    pub fn mass_of_label(&self, label: &str) -> Result<&Rational> {
        Ok(&self.masses[self.space.index_of(label)?])
    }

    /// `m(E)`.
    pub fn mass_of(&self, set: &Subset) -> Rational {
        debug_assert_eq!(&self.space, set.space());
        set.indices().map(|i| &self.masses[i]).sum()
    }

    pub fn total_mass(&self) -> Rational {
        self.masses.iter().sum()
    }

    /// Points of positive mass. On a discrete space this is the topological support.
    pub fn support(&self) -> Subset {
        Subset::from_predicate(&self.space, |i| self.masses[i].is_positive())
    }

    /// Whether the complement of `set` is null.
    pub fn is_concentrated_on(&self, set: &Subset) -> Result<bool> {
        self.space.ensure_same(set.space())?;
        Ok(self
            .masses
            .iter()
            .enumerate()
            .all(|(i, m)| set.contains(i) || m.is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.masses.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &Measure) -> Result<Measure> {
        self.space.ensure_same(&other.space)?;
        Ok(Measure {
            space: self.space.clone(),
            masses: self
                .masses
                .iter()
                .zip(&other.masses)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Measure {
        Measure {
            space: self.space.clone(),
            masses: self.masses.iter().map(|m| m * c).collect(),
        }
    }

    /// `m × n` on [`product_space`].
    pub fn product(&self, other: &Measure) -> Measure {
        let space = product_space(&self.space, &other.space);
        let masses = self
            .masses
            .iter()
            .flat_map(|a| other.masses.iter().map(move |b| a * b))
            .collect();
        Measure { space, masses }
    }

    /// `f_* m`, with `(f_* m)(F) = m(f⁻¹(F))`.
    pub fn pushforward(&self, f: &SpaceMap) -> Result<Measure> {
        self.space.ensure_same(f.domain())?;
        let mut out = Measure::zero(f.codomain());
        for (x, m) in self.masses.iter().enumerate() {
            out.masses[f.apply(x)] += m;
        }
        Ok(out)
    }

    /// The same masses relabelled onto an equal-sized space.
    pub(crate) fn with_masses(space: &FiniteSpace, masses: Vec<Rational>) -> Measure {
        debug_assert_eq!(space.len(), masses.len());
        Measure {
            space: space.clone(),
            masses,
        }
    }
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.space.id())?;
        let mut first = true;
        for (i, m) in self.masses.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{}↦{}", self.space.label(i), m)?;
        }
        f.write_str(")")
    }
}
