//! Measure-preserving maps, Radon–Nikodym derivatives and disintegrations.
//!
//! On finite spaces a disintegration of `μ` over `f: X → Y` with respect to
//! `ν` can be written down directly: `γʸ(x) = μ(x)/ν(y)` on the fiber over a
//! `ν`-positive `y`, and the zero measure over `ν`-null points. Class
//! preservation guarantees `μ` vanishes over those null fibers, so no mass is
//! lost and no division by zero occurs.

use crate::error::{Error, Result};
use crate::kernel::{integrate_measure, Kernel};
use crate::map::SpaceMap;
use crate::measure::Measure;
use crate::rational::Rational;
use crate::space::{FiniteSpace, Subset};

/// A map `f: X → Y` with measures `μ` on `X` and `ν` on `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasuredMap {
    f: SpaceMap,
    mu: Measure,
    nu: Measure,
}

impl MeasuredMap {
    pub fn new(f: SpaceMap, mu: Measure, nu: Measure) -> Result<Self> {
        f.domain().ensure_same(mu.space())?;
        f.codomain().ensure_same(nu.space())?;
        Ok(MeasuredMap { f, mu, nu })
    }

    pub fn map(&self) -> &SpaceMap {
        &self.f
    }

    pub fn mu(&self) -> &Measure {
        &self.mu
    }

    pub fn nu(&self) -> &Measure {
        &self.nu
    }

    /// `f_*μ = ν`.
    pub fn is_measure_preserving(&self) -> bool {
        self.pushforward() == self.nu
    }

    /// `f_*μ` and `ν` are mutually absolutely continuous, i.e. share a support.
    pub fn is_measure_class_preserving(&self) -> bool {
        self.class_witness().is_none()
    }

    /// A point of `Y` in exactly one of the supports of `f_*μ` and `ν`.
    pub fn class_witness(&self) -> Option<usize> {
        let push = self.pushforward();
        (0..self.nu.space().len())
            .find(|&y| push.mass_at(y).is_positive() != self.nu.mass_at(y).is_positive())
    }

    fn pushforward(&self) -> Measure {
        self.mu.pushforward(&self.f).expect("legs checked at construction")
    }

    fn require_class_preserving(&self) -> Result<()> {
        match self.class_witness() {
            None => Ok(()),
            Some(y) => Err(Error::NotClassPreserving {
                point: self.nu.space().label(y).to_string(),
            }),
        }
    }

    /// The kernel `γ` on `f` with `γʸ = μ|_{f⁻¹(y)} / ν(y)` for `ν(y) > 0` and
    /// `γʸ = 0` otherwise.
    pub fn disintegrate(&self) -> Result<Kernel> {
        self.require_class_preserving()?;
        let x_space = self.f.domain();
        let measures = (0..self.nu.space().len())
            .map(|y| {
                let weight = self.nu.mass_at(y);
                let masses = (0..x_space.len())
                    .map(|x| {
                        if self.f.apply(x) == y {
                            self.mu
                                .mass_at(x)
                                .checked_div(weight)
                                .unwrap_or_else(Rational::zero)
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                Measure::with_masses(x_space, masses)
            })
            .collect();
        Ok(Kernel::derived(self.f.clone(), measures))
    }

    /// The first point `x` where `Σ_y ν(y)·γʸ(x) ≠ μ(x)`, if any. Fails if
    /// `gamma` is not a kernel on this map.
    pub fn reconstruction_defect(&self, gamma: &Kernel) -> Result<Option<usize>> {
        if !gamma.base_map().agrees_with(&self.f) {
            return Err(Error::MapMismatch {
                expected: self.f.name().to_string(),
                found: gamma.base_map().name().to_string(),
            });
        }
        let rebuilt = integrate_measure(gamma, &self.nu)?;
        Ok((0..self.mu.space().len()).find(|&x| rebuilt.mass_at(x) != self.mu.mass_at(x)))
    }

    /// Whether `μ(E) = ∫ γʸ(E) dν(y)` for all `E`.
    pub fn is_disintegration(&self, gamma: &Kernel) -> Result<bool> {
        Ok(self.reconstruction_defect(gamma)?.is_none())
    }

    /// Whether two disintegrations agree at every `ν`-positive point. Both
    /// inputs must reconstruct `μ`.
    pub fn disintegration_unique(&self, k1: &Kernel, k2: &Kernel) -> Result<bool> {
        for (name, k) in [("first", k1), ("second", k2)] {
            if let Some(x) = self.reconstruction_defect(k)? {
                return Err(Error::NotADisintegration {
                    kernel: name.to_string(),
                    detail: format!(
                        "reconstructed mass at {:?} differs from μ",
                        self.mu.space().label(x)
                    ),
                });
            }
        }
        Ok(self.first_positive_disagreement(k1, k2).is_none())
    }

    /// A `ν`-positive `y` where the two kernels differ.
    pub fn first_positive_disagreement(&self, k1: &Kernel, k2: &Kernel) -> Option<usize> {
        (0..self.nu.space().len())
            .find(|&y| self.nu.mass_at(y).is_positive() && k1.fiber_measure(y) != k2.fiber_measure(y))
    }

    /// The least `C_K` with `μ(K ∩ f⁻¹(E)) ≤ C_K·ν(E)` for all `E ⊆ Y`:
    /// the largest ratio `μ(K ∩ f⁻¹(y)) / ν(y)` over `ν`-positive `y`.
    ///
    /// This equals `sup_y γʸ(K)` over `ν`-positive `y` for the disintegration
    /// `γ`, and is zero when `K` misses the support of `μ`.
    pub fn bounded_constant(&self, k: &Subset) -> Result<Rational> {
        self.f.domain().ensure_same(k.space())?;
        self.require_class_preserving()?;
        let mut restricted = vec![Rational::zero(); self.nu.space().len()];
        for x in k.indices() {
            restricted[self.f.apply(x)] += self.mu.mass_at(x);
        }
        let mut best = Rational::zero();
        for (y, mass) in restricted.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            let ratio = mass.checked_div(self.nu.mass_at(y)).ok_or_else(|| {
                Error::Precondition(format!(
                    "ν vanishes at {:?} where μ restricted to K does not",
                    self.nu.space().label(y)
                ))
            })?;
            if ratio > best {
                best = ratio;
            }
        }
        Ok(best)
    }
}

/// A density `h = dμ/dν` together with its sup-norm bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Density {
    space: FiniteSpace,
    values: Vec<Rational>,
}

impl Density {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, y: usize) -> &Rational {
        &self.values[y]
    }

    /// The least `C` with `μ(E) ≤ C·ν(E)` for all `E`: `max_y h(y)`.
    pub fn bound(&self) -> Rational {
        self.values.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// `∫_E h dν`.
    pub fn integrate(&self, nu: &Measure, set: &Subset) -> Rational {
        set.indices().map(|y| &self.values[y] * nu.mass_at(y)).sum()
    }
}

/// `dμ/dν`: `h(y) = μ(y)/ν(y)` on the support of `ν`, zero elsewhere.
pub fn rn_derivative(mu: &Measure, nu: &Measure) -> Result<Density> {
    mu.space().ensure_same(nu.space())?;
    let values = mu
        .masses()
        .iter()
        .zip(nu.masses())
        .enumerate()
        .map(|(y, (m, n))| {
            if n.is_zero() {
                if m.is_positive() {
                    Err(Error::NotAbsolutelyContinuous {
                        point: mu.space().label(y).to_string(),
                    })
                } else {
                    Ok(Rational::zero())
                }
            } else {
                Ok(m.checked_div(n).expect("nonzero"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Density {
        space: mu.space().clone(),
        values,
    })
}

pub fn disintegrate(mm: &MeasuredMap) -> Result<Kernel> {
    mm.disintegrate()
}

pub fn bounded_constant(mm: &MeasuredMap, k: &Subset) -> Result<Rational> {
    mm.bounded_constant(k)
}
