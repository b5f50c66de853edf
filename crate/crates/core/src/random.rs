//! Seeded generators for random instances of every construction.
//!
//! All masses are small rationals so exact arithmetic stays cheap.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::disintegration::MeasuredMap;
use crate::fibred::Tower;
use crate::groupoid::{action_groupoid, disjoint_union, group_groupoid, pair_groupoid, FiniteGroupoid, GroupTable};
use crate::kernel::Kernel;
use crate::map::SpaceMap;
use crate::measure::Measure;
use crate::rational::Rational;
use crate::setsystems::SetFamily;
use crate::space::FiniteSpace;

/// Shape of generated masses.
#[derive(Debug, Clone, Copy)]
pub struct MassShape {
    pub max_numer: u64,
    pub max_denom: u64,
    /// Probability that an atom is zero.
    pub zero_prob: f64,
}

impl Default for MassShape {
    fn default() -> Self {
        MassShape {
            max_numer: 6,
            max_denom: 4,
            zero_prob: 0.25,
        }
    }
}

impl MassShape {
    pub fn positive() -> Self {
        MassShape {
            zero_prob: 0.0,
            ..MassShape::default()
        }
    }
}

pub fn rational<R: Rng>(rng: &mut R, shape: MassShape) -> Rational {
    if rng.random_bool(shape.zero_prob) {
        return Rational::zero();
    }
    positive_rational(rng, shape)
}

pub fn positive_rational<R: Rng>(rng: &mut R, shape: MassShape) -> Rational {
    let n = rng.random_range(1..=shape.max_numer.max(1));
    let d = rng.random_range(1..=shape.max_denom.max(1));
    Rational::new(n, d).expect("nonzero denominator")
}

/// A space `id` with points `{id}0, {id}1, …`.
pub fn space(id: &str, size: usize) -> FiniteSpace {
    let prefix = id.to_lowercase();
    FiniteSpace::new(id, (0..size).map(|i| format!("{prefix}{i}"))).expect("distinct labels")
}

pub fn space_up_to<R: Rng>(rng: &mut R, id: &str, min: usize, max: usize) -> FiniteSpace {
    space(id, rng.random_range(min..=max))
}

/// A uniformly random map. The codomain must be nonempty unless the domain is empty.
pub fn map<R: Rng>(rng: &mut R, name: &str, domain: &FiniteSpace, codomain: &FiniteSpace) -> SpaceMap {
    let m = codomain.len();
    let assignment = (0..domain.len()).map(|_| rng.random_range(0..m)).collect();
    SpaceMap::from_indices(name, domain, codomain, assignment).expect("indices in range")
}

pub fn measure<R: Rng>(rng: &mut R, space: &FiniteSpace, shape: MassShape) -> Measure {
    let masses = (0..space.len()).map(|_| rational(rng, shape)).collect();
    Measure::from_masses(space, masses).expect("sized to space")
}

/// A kernel on `map` whose fiber measures have random masses on the fiber.
pub fn kernel<R: Rng>(rng: &mut R, map: &SpaceMap, shape: MassShape) -> Kernel {
    let x = map.domain().clone();
    Kernel::from_fn(map.clone(), |y| {
        let masses = (0..x.len())
            .map(|i| {
                if map.apply(i) == y {
                    rational(rng, shape)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Measure::from_masses(&x, masses).expect("sized to space")
    })
    .expect("concentrated by construction")
}

/// Kernels `α` on `p: X → Z` and `β` on `q: Y → Z` for a pullback square.
pub fn square<R: Rng>(rng: &mut R, max: usize, shape: MassShape) -> (Kernel, Kernel) {
    let z = space_up_to(rng, "Z", 1, max);
    let x = space_up_to(rng, "X", 1, max);
    let y = space_up_to(rng, "Y", 1, max);
    let p = map(rng, "p", &x, &z);
    let q = map(rng, "q", &y, &z);
    (kernel(rng, &p, shape), kernel(rng, &q, shape))
}

/// A random three-level tower over a common base `Z`.
pub fn tower<R: Rng>(rng: &mut R, max: usize, shape: MassShape) -> Tower {
    let z = space_up_to(rng, "Z", 1, max);
    let x3 = space_up_to(rng, "X3", 1, max);
    let y3 = space_up_to(rng, "Y3", 1, max);
    let x2 = space_up_to(rng, "X2", 1, max);
    let y2 = space_up_to(rng, "Y2", 1, max);
    let x1 = space_up_to(rng, "X1", 1, max);
    let y1 = space_up_to(rng, "Y1", 1, max);
    let p3 = map(rng, "p3", &x3, &z);
    let q3 = map(rng, "q3", &y3, &z);
    let f2 = map(rng, "f2", &x2, &x3);
    let g2 = map(rng, "g2", &y2, &y3);
    let f1 = map(rng, "f1", &x1, &x2);
    let g1 = map(rng, "g1", &y1, &y2);
    let gamma1 = kernel(rng, &f1, shape);
    let gamma2 = kernel(rng, &f2, shape);
    let xi1 = kernel(rng, &g1, shape);
    let xi2 = kernel(rng, &g2, shape);
    Tower::from_top(gamma1, gamma2, xi1, xi2, p3, q3).expect("composable by construction")
}

/// A random `(f, μ, ν)` with `f_*μ ~ ν`. Half the time `ν = f_*μ` exactly.
pub fn class_preserving<R: Rng>(rng: &mut R, max_x: usize, max_y: usize, shape: MassShape) -> MeasuredMap {
    let x = space_up_to(rng, "X", 1, max_x);
    let y = space_up_to(rng, "Y", 1, max_y);
    let f = map(rng, "f", &x, &y);
    let mu = measure(rng, &x, shape);
    let push = mu.pushforward(&f).expect("domain matches");
    let nu = if rng.random_bool(0.5) {
        push
    } else {
        let masses = push
            .masses()
            .iter()
            .map(|m| {
                if m.is_zero() {
                    Rational::zero()
                } else {
                    positive_rational(rng, shape)
                }
            })
            .collect();
        Measure::from_masses(&y, masses).expect("sized to space")
    };
    MeasuredMap::new(f, mu, nu).expect("spaces match")
}

/// `size` random subsets of `ground`, duplicates merged.
pub fn family<R: Rng>(rng: &mut R, ground: &FiniteSpace, size: usize) -> SetFamily {
    let full = 1u64 << ground.len();
    let masks: Vec<u64> = (0..size).map(|_| rng.random_range(0..full)).collect();
    SetFamily::from_masks(ground, masks).expect("masks within ground")
}

/// A small valid groupoid picked from the standard constructors.
pub fn groupoid<R: Rng>(rng: &mut R) -> FiniteGroupoid {
    let base = |rng: &mut R| -> FiniteGroupoid {
        match rng.random_range(0..4) {
            0 => pair_groupoid(rng.random_range(1..=3)),
            1 => group_groupoid(&GroupTable::cyclic(rng.random_range(1..=4))),
            2 => group_groupoid(&GroupTable::symmetric3()),
            _ => {
                let n = rng.random_range(1..=3);
                let m = rng.random_range(1..=3);
                // Z/n acting on Z/m through a homomorphism k ↦ k·s mod m, when it is one.
                let steps: Vec<usize> = (0..m).filter(|&s| (n * s) % m == 0).collect();
                let s = *steps.choose(rng).expect("0 always works");
                let points: Vec<String> = (0..m).map(|p| format!("p{p}")).collect();
                let action: Vec<Vec<usize>> =
                    (0..n).map(|k| (0..m).map(|p| (p + k * s) % m).collect()).collect();
                action_groupoid(&GroupTable::cyclic(n), &points, &action).expect("valid action")
            }
        }
    };
    let g = base(rng);
    if rng.random_bool(0.3) {
        disjoint_union(&g, &base(rng))
    } else {
        g
    }
}

/// Arrow weights: per-orbit constants, per-unit constants, or arbitrary.
pub fn groupoid_weights<R: Rng>(rng: &mut R, g: &FiniteGroupoid, shape: MassShape) -> Vec<Rational> {
    let n = g.arrows().len();
    let r = g.range();
    match rng.random_range(0..3) {
        0 => {
            let mut per_unit = vec![Rational::zero(); g.units().len()];
            for orbit in g.orbits() {
                let c = positive_rational(rng, shape);
                for u in orbit {
                    per_unit[u] = c.clone();
                }
            }
            (0..n).map(|x| per_unit[r.apply(x)].clone()).collect()
        }
        1 => {
            let per_unit: Vec<Rational> = (0..g.units().len()).map(|_| positive_rational(rng, shape)).collect();
            (0..n).map(|x| per_unit[r.apply(x)].clone()).collect()
        }
        _ => (0..n).map(|_| rational(rng, shape)).collect(),
    }
}
