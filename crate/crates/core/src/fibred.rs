//! Fibred products of kernels over a common base.
//!
//! Given commuting squares `p₁ = p₂∘f` and `q₁ = q₂∘g`, the map
//! `f*g: X₁*Y₁ → X₂*Y₂` sends `(x₁, y₁)` to `(f(x₁), g(y₁))`, and kernels on
//! `f` and `g` combine into a kernel on `f*g` by taking products fiberwise.
//! Empty fibers of `f*g` simply carry the zero measure.

use crate::error::{Error, Result};
use crate::kernel::{compose, AtomDifference, Kernel};
use crate::map::SpaceMap;
use crate::measure::Measure;
use crate::pullback::PullbackSpace;

/// Two pullbacks connected by `f: X₁ → X₂` and `g: Y₁ → Y₂`.
#[derive(Debug, Clone)]
pub struct FibredSquarePair {
    lower: PullbackSpace,
    upper: PullbackSpace,
    f: SpaceMap,
    g: SpaceMap,
    fg: SpaceMap,
}

impl FibredSquarePair {
    /// Validates `p₁ = p₂∘f` and `q₁ = q₂∘g` pointwise and builds `f*g`.
    pub fn new(f: &SpaceMap, g: &SpaceMap, lower: &PullbackSpace, upper: &PullbackSpace) -> Result<Self> {
        lower.left().domain().ensure_same(f.domain())?;
        upper.left().domain().ensure_same(f.codomain())?;
        lower.right().domain().ensure_same(g.domain())?;
        upper.right().domain().ensure_same(g.codomain())?;
        lower.left().codomain().ensure_same(upper.left().codomain())?;
        check_leg("p₁(x) = p₂(f(x))", lower.left(), upper.left(), f)?;
        check_leg("q₁(y) = q₂(g(y))", lower.right(), upper.right(), g)?;

        let assignment = lower
            .pairs()
            .iter()
            .map(|&(x, y)| {
                upper
                    .index_of_pair(f.apply(x), g.apply(y))
                    .expect("compatible legs land in the upper pullback")
            })
            .collect();
        let fg = SpaceMap::from_indices(
            format!("{}*{}", f.name(), g.name()),
            lower.space(),
            upper.space(),
            assignment,
        )?;
        Ok(FibredSquarePair {
            lower: lower.clone(),
            upper: upper.clone(),
            f: f.clone(),
            g: g.clone(),
            fg,
        })
    }

    pub fn lower(&self) -> &PullbackSpace {
        &self.lower
    }

    pub fn upper(&self) -> &PullbackSpace {
        &self.upper
    }

    pub fn f(&self) -> &SpaceMap {
        &self.f
    }

    pub fn g(&self) -> &SpaceMap {
        &self.g
    }

    /// `f*g: X₁*Y₁ → X₂*Y₂`.
    pub fn fg(&self) -> &SpaceMap {
        &self.fg
    }

    /// `(γ_X * γ_Y)^{(x₂,y₂)} = γ_X^{x₂} × γ_Y^{y₂}` restricted to `X₁*Y₁`.
    pub fn product_kernel(&self, gamma_x: &Kernel, gamma_y: &Kernel) -> Result<Kernel> {
        self.f.ensure_same(gamma_x.base_map())?;
        self.g.ensure_same(gamma_y.base_map())?;
        let measures = self
            .upper
            .pairs()
            .iter()
            .map(|&(x2, y2)| {
                let masses = self
                    .lower
                    .pairs()
                    .iter()
                    .map(|&(x1, y1)| gamma_x.mass(x2, x1) * gamma_y.mass(y2, y1))
                    .collect();
                Measure::with_masses(self.lower.space(), masses)
            })
            .collect();
        Ok(Kernel::derived(self.fg.clone(), measures))
    }
}

fn check_leg(equation: &str, lower: &SpaceMap, upper: &SpaceMap, via: &SpaceMap) -> Result<()> {
    for x in 0..lower.domain().len() {
        if lower.apply(x) != upper.apply(via.apply(x)) {
            return Err(Error::CompatibilityViolation {
                point: lower.domain().label(x).to_string(),
                equation: format!(
                    "{equation} fails: {} vs {}",
                    lower.codomain().label(lower.apply(x)),
                    upper.codomain().label(upper.apply(via.apply(x)))
                ),
            });
        }
    }
    Ok(())
}

/// Convenience wrapper for [`FibredSquarePair::new`].
pub fn make_fibred_map(
    f: &SpaceMap,
    g: &SpaceMap,
    lower: &PullbackSpace,
    upper: &PullbackSpace,
) -> Result<FibredSquarePair> {
    FibredSquarePair::new(f, g, lower, upper)
}

/// Convenience wrapper for [`FibredSquarePair::product_kernel`].
pub fn fibred_product_kernel(
    gamma_x: &Kernel,
    gamma_y: &Kernel,
    pair: &FibredSquarePair,
) -> Result<Kernel> {
    pair.product_kernel(gamma_x, gamma_y)
}

/// A three-level tower of compatible squares:
///
/// ```text
/// X₁ --f₁--> X₂ --f₂--> X₃ --p₃--> Z <--q₃-- Y₃ <--g₂-- Y₂ <--g₁-- Y₁
/// ```
///
/// with kernels `γ₁` on `f₁`, `γ₂` on `f₂`, `ξ₁` on `g₁`, `ξ₂` on `g₂`.
#[derive(Debug, Clone)]
pub struct Tower {
    pub gamma1: Kernel,
    pub gamma2: Kernel,
    pub xi1: Kernel,
    pub xi2: Kernel,
    pub p1: SpaceMap,
    pub q1: SpaceMap,
    pub p2: SpaceMap,
    pub q2: SpaceMap,
    pub p3: SpaceMap,
    pub q3: SpaceMap,
}

impl Tower {
    /// Derives the lower legs as composites: `p₂ = p₃∘f₂`, `p₁ = p₂∘f₁`, and
    /// likewise for `q`.
    pub fn from_top(
        gamma1: Kernel,
        gamma2: Kernel,
        xi1: Kernel,
        xi2: Kernel,
        p3: SpaceMap,
        q3: SpaceMap,
    ) -> Result<Self> {
        let p2 = p3.after(gamma2.base_map())?;
        let q2 = q3.after(xi2.base_map())?;
        let p1 = p2.after(gamma1.base_map())?;
        let q1 = q2.after(xi1.base_map())?;
        Ok(Tower {
            gamma1,
            gamma2,
            xi1,
            xi2,
            p1,
            q1,
            p2,
            q2,
            p3,
            q3,
        })
    }
}

/// Both sides of the interchange law for a [`Tower`].
#[derive(Debug, Clone)]
pub struct InterchangeReport {
    /// `(γ₂*ξ₂) ∘ (γ₁*ξ₁)`
    pub product_then_compose: Kernel,
    /// `(γ₂∘γ₁) * (ξ₂∘ξ₁)`
    pub compose_then_product: Kernel,
    pub difference: Option<AtomDifference>,
}

impl InterchangeReport {
    pub fn holds(&self) -> bool {
        self.difference.is_none()
    }
}

/// Builds both sides of the interchange law and compares them atom by atom.
pub fn check_interchange(tower: &Tower) -> Result<InterchangeReport> {
    let t = tower;
    let bottom = PullbackSpace::new(&t.p1, &t.q1)?;
    let middle = PullbackSpace::new(&t.p2, &t.q2)?;
    let top = PullbackSpace::new(&t.p3, &t.q3)?;

    let stage1 = FibredSquarePair::new(t.gamma1.base_map(), t.xi1.base_map(), &bottom, &middle)?;
    let stage2 = FibredSquarePair::new(t.gamma2.base_map(), t.xi2.base_map(), &middle, &top)?;
    let product_then_compose = compose(
        &stage1.product_kernel(&t.gamma1, &t.xi1)?,
        &stage2.product_kernel(&t.gamma2, &t.xi2)?,
    )?;

    let gamma = compose(&t.gamma1, &t.gamma2)?;
    let xi = compose(&t.xi1, &t.xi2)?;
    let through = FibredSquarePair::new(gamma.base_map(), xi.base_map(), &bottom, &top)?;
    let compose_then_product = through.product_kernel(&gamma, &xi)?;

    let difference = product_then_compose.first_difference(&compose_then_product)?;
    Ok(InterchangeReport {
        product_then_compose,
        compose_then_product,
        difference,
    })
}
