//! Pullbacks `X *_Z Y` and lifting of kernels along the pullback projections.

use crate::error::{Error, Result};
use crate::kernel::{compose, AtomDifference, Kernel};
use crate::map::SpaceMap;
use crate::measure::{pair_label, Measure};
use crate::rational::Rational;
use crate::space::{FiniteSpace, Subset};

/// `X *_Z Y = {(x, y) : p(x) = q(y)}` with its two projections.
///
/// Points are labelled `"(x|y)"` and listed in lexicographic order of
/// `(x, y)` indices; the space id is derived from the leg names, so building
/// the pullback of the same legs twice yields equal spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackSpace {
    left: SpaceMap,
    right: SpaceMap,
    space: FiniteSpace,
    pairs: Vec<(usize, usize)>,
    proj_left: SpaceMap,
    proj_right: SpaceMap,
}

impl PullbackSpace {
    pub fn new(p: &SpaceMap, q: &SpaceMap) -> Result<Self> {
        p.codomain().ensure_same(q.codomain())?;
        let (x, y) = (p.domain(), q.domain());
        let pairs: Vec<(usize, usize)> = (0..x.len())
            .flat_map(|i| (0..y.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| p.apply(i) == q.apply(j))
            .collect();
        let id = pullback_id(p, q);
        let space = FiniteSpace::new(
            id.clone(),
            pairs.iter().map(|&(i, j)| pair_label(x.label(i), y.label(j))),
        )?;
        let proj_left = SpaceMap::from_indices(
            format!("{id}.proj_left"),
            &space,
            x,
            pairs.iter().map(|&(i, _)| i).collect(),
        )?;
        let proj_right = SpaceMap::from_indices(
            format!("{id}.proj_right"),
            &space,
            y,
            pairs.iter().map(|&(_, j)| j).collect(),
        )?;
        Ok(PullbackSpace {
            left: p.clone(),
            right: q.clone(),
            space,
            pairs,
            proj_left,
            proj_right,
        })
    }

    pub fn left(&self) -> &SpaceMap {
        &self.left
    }

    pub fn right(&self) -> &SpaceMap {
        &self.right
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn proj_left(&self) -> &SpaceMap {
        &self.proj_left
    }

    pub fn proj_right(&self) -> &SpaceMap {
        &self.proj_right
    }

    /// `(x, y)` indices of each pullback point.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Index of the pullback point `(x, y)`, if the pair matches over `Z`.
    pub fn index_of_pair(&self, x: usize, y: usize) -> Option<usize> {
        self.pairs.binary_search(&(x, y)).ok()
    }

    /// The elementary set `(A × B) ∩ (X *_Z Y)`.
    pub fn elementary_set(&self, a: &Subset, b: &Subset) -> Result<Subset> {
        self.left.domain().ensure_same(a.space())?;
        self.right.domain().ensure_same(b.space())?;
        Ok(Subset::from_predicate(&self.space, |k| {
            let (i, j) = self.pairs[k];
            a.contains(i) && b.contains(j)
        }))
    }

    /// `(q*α)ʸ = α^{q(y)} × δ_y`, a kernel on the right projection.
    ///
    /// `alpha` must sit on this pullback's exact left leg.
    pub fn lift_right(&self, alpha: &Kernel) -> Result<Kernel> {
        self.left.ensure_same(alpha.base_map())?;
        let measures = (0..self.right.domain().len())
            .map(|y| {
                let z = self.right.apply(y);
                let masses = self
                    .pairs
                    .iter()
                    .map(|&(i, j)| {
                        if j == y {
                            alpha.mass(z, i).clone()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                Measure::with_masses(&self.space, masses)
            })
            .collect();
        Ok(Kernel::derived(self.proj_right.clone(), measures))
    }

    /// `(p*β)ˣ = δ_x × β^{p(x)}`, a kernel on the left projection.
    ///
    /// `beta` must sit on this pullback's exact right leg.
    pub fn lift_left(&self, beta: &Kernel) -> Result<Kernel> {
        self.right.ensure_same(beta.base_map())?;
        let measures = (0..self.left.domain().len())
            .map(|x| {
                let z = self.left.apply(x);
                let masses = self
                    .pairs
                    .iter()
                    .map(|&(i, j)| {
                        if i == x {
                            beta.mass(z, j).clone()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                Measure::with_masses(&self.space, masses)
            })
            .collect();
        Ok(Kernel::derived(self.proj_left.clone(), measures))
    }
}

fn pullback_id(p: &SpaceMap, q: &SpaceMap) -> String {
    format!("{}*{}", p.name(), q.name())
}

/// Lifts `alpha` (on `p: X → Z`) along `q: Y → Z`.
pub fn lift_right(alpha: &Kernel, q: &SpaceMap) -> Result<(PullbackSpace, Kernel)> {
    let pb = PullbackSpace::new(alpha.base_map(), q)?;
    let k = pb.lift_right(alpha)?;
    Ok((pb, k))
}

/// Lifts `beta` (on `q: Y → Z`) along `p: X → Z`.
pub fn lift_left(beta: &Kernel, p: &SpaceMap) -> Result<(PullbackSpace, Kernel)> {
    let pb = PullbackSpace::new(p, beta.base_map())?;
    let k = pb.lift_left(beta)?;
    Ok((pb, k))
}

/// Both routes around the pullback square of `alpha` and `beta`.
#[derive(Debug, Clone)]
pub struct SquareReport {
    pub pullback: PullbackSpace,
    /// `β ∘ q*α`
    pub via_right: Kernel,
    /// `α ∘ p*β`
    pub via_left: Kernel,
    pub difference: Option<AtomDifference>,
}

impl SquareReport {
    pub fn commutes(&self) -> bool {
        self.difference.is_none()
    }
}

/// Composes around the square both ways and compares atom by atom.
pub fn check_square(alpha: &Kernel, beta: &Kernel) -> Result<SquareReport> {
    if alpha.codomain() != beta.codomain() {
        return Err(Error::SpaceMismatch {
            expected: alpha.codomain().id().to_string(),
            found: beta.codomain().id().to_string(),
        });
    }
    let pullback = PullbackSpace::new(alpha.base_map(), beta.base_map())?;
    let via_right = compose(&pullback.lift_right(alpha)?, beta)?;
    let via_left = compose(&pullback.lift_left(beta)?, alpha)?;
    let difference = via_right.first_difference(&via_left)?;
    Ok(SquareReport {
        pullback,
        via_right,
        via_left,
        difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn legs() -> (SpaceMap, SpaceMap) {
        let x = FiniteSpace::new("X", ["a", "b"]).unwrap();
        let y = FiniteSpace::new("Y", ["u", "v"]).unwrap();
        let z = FiniteSpace::new("Z", ["0", "1"]).unwrap();
        let p = SpaceMap::new("p", &x, &z, &[("a", "0"), ("b", "1")]).unwrap();
        let qm = SpaceMap::new("q", &y, &z, &[("u", "0"), ("v", "0")]).unwrap();
        (p, qm)
    }

    #[test]
    fn pullback_examples() {
        let (p, qm) = legs();
        let pb = PullbackSpace::new(&p, &qm).unwrap();
        assert_eq!(pb.space().points(), ["(a|u)", "(a|v)"]);
        assert_eq!(pb, PullbackSpace::new(&p, &qm).unwrap());

        let id = SpaceMap::identity(p.codomain());
        let over_id = PullbackSpace::new(&p, &id).unwrap();
        assert_eq!(over_id.space().points(), ["(a|0)", "(b|1)"]);

        let one = FiniteSpace::new("1", ["*"]).unwrap();
        let c1 = SpaceMap::constant("c1", p.domain(), &one, "*").unwrap();
        let c2 = SpaceMap::constant("c2", qm.domain(), &one, "*").unwrap();
        assert_eq!(PullbackSpace::new(&c1, &c2).unwrap().space().len(), 4);

        let bad = SpaceMap::identity(p.domain());
        assert!(matches!(
            PullbackSpace::new(&p, &bad),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn projections_commute_over_z() {
        let (p, qm) = legs();
        let pb = PullbackSpace::new(&p, &qm).unwrap();
        assert!(p
            .after(pb.proj_left())
            .unwrap()
            .agrees_with(&qm.after(pb.proj_right()).unwrap()));
    }

    #[test]
    fn lift_right_examples() {
        let x = FiniteSpace::new("X", ["a", "b"]).unwrap();
        let y = FiniteSpace::new("Y", ["u", "v"]).unwrap();
        let z = FiniteSpace::new("Z", ["z"]).unwrap();
        let p = SpaceMap::constant("p", &x, &z, "z").unwrap();
        let qm = SpaceMap::constant("q", &y, &z, "z").unwrap();
        let alpha = Kernel::new(
            p.clone(),
            vec![Measure::from_pairs(&x, &[("a", q("2")), ("b", q("5"))]).unwrap()],
        )
        .unwrap();
        let (pb, lifted) = lift_right(&alpha, &qm).unwrap();
        let au = pb.space().subset(&["(a|u)"]).unwrap();
        assert_eq!(lifted.evaluate(&au).unwrap()[0], q("2"));
        // Misses the fiber of u.
        let off = pb.space().subset(&["(a|v)", "(b|v)"]).unwrap();
        assert_eq!(lifted.evaluate(&off).unwrap()[0], Rational::zero());
        assert_eq!(lifted.fiber_measure(0).total_mass(), q("7"));

        let renamed = Kernel::new(p.renamed("p2"), alpha.measures().to_vec()).unwrap();
        assert!(matches!(pb.lift_right(&renamed), Err(Error::MapMismatch { .. })));
    }

    #[test]
    fn lift_left_examples() {
        let x = FiniteSpace::new("X", ["a", "b"]).unwrap();
        let y = FiniteSpace::new("Y", ["u"]).unwrap();
        let z = FiniteSpace::new("Z", ["z"]).unwrap();
        let p = SpaceMap::constant("p", &x, &z, "z").unwrap();
        let qm = SpaceMap::constant("q", &y, &z, "z").unwrap();
        let beta = Kernel::new(qm.clone(), vec![Measure::dirac("u", &y).unwrap()]).unwrap();
        let (pb, lifted) = lift_left(&beta, &p).unwrap();
        let expected = Measure::dirac("(a|u)", pb.space()).unwrap();
        assert_eq!(lifted.fiber_measure_of("a").unwrap(), &expected);
        assert!(matches!(pb.lift_left(&Kernel::zero(p.clone())), Err(Error::MapMismatch { .. })));
    }

    #[test]
    fn square_with_delta_beta_commutes() {
        let (p, _) = legs();
        let alpha = Kernel::counting(p.clone());
        let beta = Kernel::delta(p.codomain());
        let report = check_square(&alpha, &beta).unwrap();
        assert!(report.commutes());
    }

    #[test]
    fn square_elementary_sets_factor() {
        // α^z(A)·β^z(B) computed by hand on a one-point base.
        let x = FiniteSpace::new("X", ["a", "b", "c"]).unwrap();
        let y = FiniteSpace::new("Y", ["u", "v"]).unwrap();
        let z = FiniteSpace::new("Z", ["z"]).unwrap();
        let p = SpaceMap::constant("p", &x, &z, "z").unwrap();
        let qm = SpaceMap::constant("q", &y, &z, "z").unwrap();
        let alpha = Kernel::new(
            p,
            vec![Measure::from_pairs(&x, &[("a", q("1/2")), ("b", q("3")), ("c", q("2"))]).unwrap()],
        )
        .unwrap();
        let beta = Kernel::new(
            qm,
            vec![Measure::from_pairs(&y, &[("u", q("4")), ("v", q("1/3"))]).unwrap()],
        )
        .unwrap();
        let report = check_square(&alpha, &beta).unwrap();
        assert!(report.commutes());
        let a = x.subset(&["a", "c"]).unwrap();
        let b = y.subset(&["v"]).unwrap();
        let e = report.pullback.elementary_set(&a, &b).unwrap();
        // (1/2 + 2) · 1/3 = 5/6
        assert_eq!(report.via_right.evaluate(&e).unwrap()[0], q("5/6"));
        assert_eq!(report.via_left.evaluate(&e).unwrap()[0], q("5/6"));
    }
}
