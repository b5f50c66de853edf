//! Systems of measures on a map `π: X → Y`.
//!
//! A [`Kernel`] holds one measure `λʸ` on `X` for every `y ∈ Y`, each
//! concentrated on the fiber `π⁻¹(y)`. On finite discrete spaces every such
//! family is automatically Borel, locally finite and bounded on compact sets,
//! so the property predicates here reduce to finite scans.
//!
//! Lemmas about when a composite of kernels stays locally finite have
//! hypotheses that hold vacuously in this setting, so they have no runtime
//! counterpart.

use std::fmt;

use crate::error::{Error, Result};
use crate::map::SpaceMap;
use crate::measure::Measure;
use crate::rational::Rational;
use crate::space::{FiniteSpace, Subset};

/// A validated system of measures on `base_map`.
#[derive(Clone, PartialEq, Eq)]
pub struct Kernel {
    base_map: SpaceMap,
    measures: Vec<Measure>,
}

/// First atom at which two kernels on the same map differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomDifference {
    pub fiber: String,
    pub point: String,
    pub left: Rational,
    pub right: Rational,
}

impl fmt::Display for AtomDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fiber {} at point {}: {} != {}",
            self.fiber, self.point, self.left, self.right
        )
    }
}

impl Kernel {
    /// Validates that there is one measure per codomain point, each living on
    /// the domain and concentrated on its fiber.
    pub fn new(base_map: SpaceMap, measures: Vec<Measure>) -> Result<Self> {
        if measures.len() != base_map.codomain().len() {
            return Err(Error::FiberCount {
                map: base_map.name().to_string(),
                expected: base_map.codomain().len(),
                found: measures.len(),
            });
        }
        for m in &measures {
            base_map.domain().ensure_same(m.space())?;
        }
        let k = Kernel { base_map, measures };
        k.check_concentration()?;
        Ok(k)
    }

    /// Builds `λʸ = fiber(y)` for each codomain index.
    pub fn from_fn(base_map: SpaceMap, fiber: impl FnMut(usize) -> Measure) -> Result<Self> {
        let measures = (0..base_map.codomain().len()).map(fiber).collect();
        Kernel::new(base_map, measures)
    }

    /// Constructor for kernels produced by the crate's own constructions,
    /// which are concentrated by construction. Re-checked in debug builds.
    pub(crate) fn derived(base_map: SpaceMap, measures: Vec<Measure>) -> Self {
        let k = Kernel { base_map, measures };
        debug_assert_eq!(k.measures.len(), k.base_map.codomain().len());
        #[cfg(debug_assertions)]
        if let Err(e) = k.check_concentration() {
            panic!("derived kernel is not concentrated: {e}");
        }
        k
    }

    /// `λʸ = δ_y` on the identity of `space`: the unit for composition.
    pub fn delta(space: &FiniteSpace) -> Self {
        let id = SpaceMap::identity(space);
        let measures = (0..space.len()).map(|y| Measure::dirac_at(y, space)).collect();
        Kernel::derived(id, measures)
    }

    pub fn zero(base_map: SpaceMap) -> Self {
        let measures = vec![Measure::zero(base_map.domain()); base_map.codomain().len()];
        Kernel::derived(base_map, measures)
    }

    /// Counting measure on each fiber.
    pub fn counting(base_map: SpaceMap) -> Self {
        let measures = (0..base_map.codomain().len())
            .map(|y| Measure::counting(&base_map.fiber(y)))
            .collect();
        Kernel::derived(base_map, measures)
    }

    /// Re-runs the concentration check, reporting the first offending atom.
    pub fn check_concentration(&self) -> Result<()> {
        match self.concentration_violation() {
            None => Ok(()),
            Some((y, x)) => Err(Error::ConcentrationViolation {
                fiber: self.codomain().label(y).to_string(),
                point: self.domain().label(x).to_string(),
                mass: self.measures[y].mass_at(x).clone(),
            }),
        }
    }

    /// Every `(fiber, point, mass)` of `measures` lying outside its fiber.
    pub fn concentration_witnesses(
        base_map: &SpaceMap,
        measures: &[Measure],
    ) -> Vec<(String, String, Rational)> {
        let mut out = Vec::new();
        for (y, m) in measures.iter().enumerate() {
            for (x, mass) in m.masses().iter().enumerate() {
                if base_map.apply(x) != y && mass.is_positive() {
                    out.push((
                        base_map.codomain().label(y).to_string(),
                        base_map.domain().label(x).to_string(),
                        mass.clone(),
                    ));
                }
            }
        }
        out
    }

    fn concentration_violation(&self) -> Option<(usize, usize)> {
        self.measures.iter().enumerate().find_map(|(y, m)| {
            m.masses()
                .iter()
                .enumerate()
                .find(|(x, mass)| self.base_map.apply(*x) != y && mass.is_positive())
                .map(|(x, _)| (y, x))
        })
    }

    pub fn base_map(&self) -> &SpaceMap {
        &self.base_map
    }

    pub fn domain(&self) -> &FiniteSpace {
        self.base_map.domain()
    }

    pub fn codomain(&self) -> &FiniteSpace {
        self.base_map.codomain()
    }

    pub fn measures(&self) -> &[Measure] {
        &self.measures
    }

    /// `λʸ` for a codomain index.
    pub fn fiber_measure(&self, y: usize) -> &Measure {
        &self.measures[y]
    }

    pub fn fiber_measure_of(&self, label: &str) -> Result<&Measure> {
        Ok(&self.measures[self.codomain().index_of(label)?])
    }

    /// `λʸ(x)`.
    pub fn mass(&self, y: usize, x: usize) -> &Rational {
        self.measures[y].mass_at(x)
    }

    /// `y ↦ λʸ(E)`.
    pub fn evaluate(&self, set: &Subset) -> Result<Vec<Rational>> {
        self.domain().ensure_same(set.space())?;
        Ok(self.measures.iter().map(|m| m.mass_of(set)).collect())
    }

    /// `y ↦ ∫ f dλʸ` for `f` given densely on the domain.
    pub fn integrate_fn(&self, f: &[Rational]) -> Result<Vec<Rational>> {
        if f.len() != self.domain().len() {
            return Err(Error::Input(format!(
                "function has {} values, domain {:?} has {} points",
                f.len(),
                self.domain().id(),
                self.domain().len()
            )));
        }
        Ok(self
            .measures
            .iter()
            .map(|m| m.masses().iter().zip(f).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Positive on open sets: every fiber point carries positive mass, i.e.
    /// `supp(λʸ) = π⁻¹(y)` for every `y`.
    pub fn is_positive_on_open_sets(&self) -> bool {
        self.positivity_witness().is_none()
    }

    /// A fiber point `(y, x)` with `π(x) = y` and `λʸ(x) = 0`, if any.
    pub fn positivity_witness(&self) -> Option<(usize, usize)> {
        (0..self.domain().len()).find_map(|x| {
            let y = self.base_map.apply(x);
            self.measures[y].mass_at(x).is_zero().then_some((y, x))
        })
    }

    /// Always true: masses are finite rationals. Kept for interface parity
    /// with the infinite setting.
    pub fn is_finite_system(&self) -> bool {
        true
    }

    pub fn is_probability_system(&self) -> bool {
        self.measures.iter().all(|m| m.total_mass().is_one())
    }

    /// `max_y λʸ(K)`, zero for an empty codomain.
    ///
    /// Every kernel here is locally bounded; this is the bound on `K`.
    pub fn sup_on_set(&self, set: &Subset) -> Result<Rational> {
        Ok(self
            .evaluate(set)?
            .into_iter()
            .max()
            .unwrap_or_else(Rational::zero))
    }

    /// `self` followed by `beta`: `(β∘α)ᶻ(x) = Σ_y βᶻ(y)·αʸ(x)`, a kernel on
    /// `q∘p`.
    pub fn then(&self, beta: &Kernel) -> Result<Kernel> {
        compose(self, beta)
    }

    /// The first atom where `self` and `other` differ. Both must sit on
    /// agreeing maps.
    pub fn first_difference(&self, other: &Kernel) -> Result<Option<AtomDifference>> {
        if !self.base_map.agrees_with(&other.base_map) {
            return Err(Error::MapMismatch {
                expected: self.base_map.name().to_string(),
                found: other.base_map.name().to_string(),
            });
        }
        for (y, (m1, m2)) in self.measures.iter().zip(&other.measures).enumerate() {
            for (x, (a, b)) in m1.masses().iter().zip(m2.masses()).enumerate() {
                if a != b {
                    return Ok(Some(AtomDifference {
                        fiber: self.codomain().label(y).to_string(),
                        point: self.domain().label(x).to_string(),
                        left: a.clone(),
                        right: b.clone(),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// The same measures over a renamed copy of the base map.
    pub fn rebased(&self, base_map: SpaceMap) -> Result<Kernel> {
        if !self.base_map.agrees_with(&base_map) {
            return Err(Error::MapMismatch {
                expected: self.base_map.name().to_string(),
                found: base_map.name().to_string(),
            });
        }
        Ok(Kernel {
            base_map,
            measures: self.measures.clone(),
        })
    }
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Kernel on {}:", self.base_map.name())?;
        for (y, m) in self.measures.iter().enumerate() {
            writeln!(f, "  {} -> {:?}", self.codomain().label(y), m)?;
        }
        Ok(())
    }
}

/// Composition of `alpha` on `p: X → Y` with `beta` on `q: Y → Z`.
pub fn compose(alpha: &Kernel, beta: &Kernel) -> Result<Kernel> {
    alpha.codomain().ensure_same(beta.domain())?;
    let map = beta.base_map().after(alpha.base_map())?;
    let measures = beta
        .measures()
        .iter()
        .map(|beta_z| integrate_measure_unchecked(alpha, beta_z))
        .collect();
    Ok(Kernel::derived(map, measures))
}

/// `μ(x) = Σ_y β(y)·αʸ(x)` for a measure `β` on `alpha`'s codomain.
pub fn integrate_measure(alpha: &Kernel, beta: &Measure) -> Result<Measure> {
    alpha.codomain().ensure_same(beta.space())?;
    Ok(integrate_measure_unchecked(alpha, beta))
}

fn integrate_measure_unchecked(alpha: &Kernel, beta: &Measure) -> Measure {
    let mut masses = vec![Rational::zero(); alpha.domain().len()];
    for (y, weight) in beta.masses().iter().enumerate() {
        if weight.is_zero() {
            continue;
        }
        for x in alpha.base_map().fiber_indices(y) {
            let a = alpha.mass(y, x);
            if a.is_positive() {
                masses[x] += weight * a;
            }
        }
    }
    Measure::with_masses(alpha.domain(), masses)
}
