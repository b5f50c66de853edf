//! π-systems, Dynkin systems and pre-Dynkin systems on finite ground sets.
//!
//! Members are stored as bitmasks over the ground space (bit `i` is point
//! `i`), so the ground space is limited to 63 points. Countable unions and
//! increasing sequences reduce to finite ones here, which makes every
//! closure condition decidable by enumeration.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::space::{FiniteSpace, Subset};

/// Largest ground set a [`SetFamily`] accepts.
pub const MAX_GROUND: usize = 63;

/// A family of subsets of a finite ground space, canonically ordered.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: FiniteSpace,
    members: Vec<u64>,
}

/// Knobs for [`SetFamily::is_pre_dynkin_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct PreDynkinOptions {
    /// Only subcollections of at most this many members are tested against
    /// the union condition. `None` tests all of them for families of at most
    /// [`EXHAUSTIVE_MEMBERS`] members and pairs beyond that.
    ///
    /// Pairs suffice whenever the pair condition holds: if `E₁,…,Eₖ` has all
    /// its intersections in the family, so does `E₁∩Eₖ,…,Eₖ₋₁∩Eₖ`, whose
    /// union `U∩Eₖ` is then in the family by induction, and the pair
    /// condition applied to `U = E₁∪…∪Eₖ₋₁` and `Eₖ` closes the step.
    pub max_subcollection: Option<usize>,
}

/// Largest family checked against every subcollection by default.
pub const EXHAUSTIVE_MEMBERS: usize = 16;

impl PreDynkinOptions {
    /// Every subcollection, regardless of family size.
    pub fn exhaustive() -> Self {
        PreDynkinOptions {
            max_subcollection: Some(usize::MAX),
        }
    }
}

impl SetFamily {
    pub fn from_masks(ground: &FiniteSpace, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_ground(ground)?;
        let full = full_mask(ground.len());
        let mut members: Vec<u64> = masks.into_iter().collect();
        if let Some(bad) = members.iter().find(|&&m| m & !full != 0) {
            return Err(Error::Input(format!(
                "mask {bad:#b} has bits outside ground {:?}",
                ground.id()
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily {
            ground: ground.clone(),
            members,
        })
    }

    pub fn from_subsets(ground: &FiniteSpace, subsets: &[Subset]) -> Result<Self> {
        check_ground(ground)?;
        let mut masks = Vec::with_capacity(subsets.len());
        for s in subsets {
            ground.ensure_same(s.space())?;
            masks.push(s.indices().fold(0u64, |m, i| m | 1 << i));
        }
        Self::from_masks(ground, masks)
    }

    pub fn from_labels<S: AsRef<str>>(ground: &FiniteSpace, members: &[Vec<S>]) -> Result<Self> {
        let subsets = members
            .iter()
            .map(|m| ground.subset(m))
            .collect::<Result<Vec<_>>>()?;
        Self::from_subsets(ground, &subsets)
    }

    /// Every subset of the ground.
    pub fn power_set(ground: &FiniteSpace) -> Result<Self> {
        check_ground(ground)?;
        if ground.len() > 20 {
            return Err(Error::Input(format!(
                "power set of {} points is too large",
                ground.len()
            )));
        }
        Self::from_masks(ground, 0..=full_mask(ground.len()))
    }

    pub fn ground(&self) -> &FiniteSpace {
        &self.ground
    }

    pub fn masks(&self) -> &[u64] {
        &self.members
    }

    pub fn members(&self) -> Vec<Subset> {
        self.members
            .iter()
            .map(|&m| Subset::from_mask(&self.ground, m))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    pub fn contains(&self, set: &Subset) -> bool {
        set.space() == &self.ground && self.contains_mask(to_mask(set))
    }

    pub fn contains_ground(&self) -> bool {
        self.contains_mask(self.full())
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.ground == other.ground && self.members.iter().all(|&m| other.contains_mask(m))
    }

    pub fn with_ground(&self) -> SetFamily {
        let mut members = self.members.clone();
        members.push(self.full());
        SetFamily::from_masks(&self.ground, members).expect("same ground")
    }

    fn full(&self) -> u64 {
        full_mask(self.ground.len())
    }

    /// Closed under pairwise (hence finite) intersections. An empty family is
    /// rejected: π-systems are nonempty by definition.
    pub fn is_pi_system(&self) -> Result<bool> {
        if self.members.is_empty() {
            return Err(Error::Input("a π-system must be nonempty".into()));
        }
        Ok(self.pi_violation().is_none())
    }

    /// A pair of members whose intersection is missing.
    pub fn pi_violation(&self) -> Option<(Subset, Subset)> {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                if !self.contains_mask(a & b) {
                    return Some((
                        Subset::from_mask(&self.ground, a),
                        Subset::from_mask(&self.ground, b),
                    ));
                }
            }
        }
        None
    }

    /// Members `A ⊆ B` with `B∖A` missing.
    pub fn complement_violation(&self) -> Option<(Subset, Subset)> {
        for &a in &self.members {
            for &b in &self.members {
                if a & !b == 0 && !self.contains_mask(b & !a) {
                    return Some((
                        Subset::from_mask(&self.ground, a),
                        Subset::from_mask(&self.ground, b),
                    ));
                }
            }
        }
        None
    }

    /// Contains the ground and is closed under relative complements.
    ///
    /// The increasing-union condition needs no scan: an increasing sequence
    /// drawn from a finite family is eventually constant, so its union is its
    /// last member.
    pub fn is_dynkin(&self) -> bool {
        self.contains_ground()
            && self.members.iter().all(|&a| {
                self.members
                    .iter()
                    .all(|&b| a & !b != 0 || self.contains_mask(b & !a))
            })
    }

    /// Pre-Dynkin check with the default [`PreDynkinOptions`].
    pub fn is_pre_dynkin(&self) -> bool {
        self.is_pre_dynkin_with(PreDynkinOptions::default())
    }

    /// Checks both defining conditions:
    ///
    /// 1. `E, F, E∩F ∈ 𝒟` implies `E∪F ∈ 𝒟` and `E∖F ∈ 𝒟`;
    /// 2. every nonempty subcollection whose finite intersections all lie in
    ///    `𝒟` has its union in `𝒟`.
    pub fn is_pre_dynkin_with(&self, options: PreDynkinOptions) -> bool {
        self.pair_condition_holds() && self.union_condition_holds(options)
    }

    fn pair_condition_holds(&self) -> bool {
        self.members.iter().all(|&e| {
            self.members.iter().all(|&f| {
                !self.contains_mask(e & f)
                    || (self.contains_mask(e | f) && self.contains_mask(e & !f))
            })
        })
    }

    fn union_condition_holds(&self, options: PreDynkinOptions) -> bool {
        let cap = match options.max_subcollection {
            Some(cap) => cap.min(self.members.len()),
            None if self.members.len() <= EXHAUSTIVE_MEMBERS => self.members.len(),
            None => 2,
        };
        let mut closure = Vec::new();
        self.union_search(0, 0, &mut closure, 0, cap)
    }

    // Depth-first over subcollections in member order. `closure` holds the
    // distinct intersections of the current subcollection. Once some intersection falls
    // outside the family, every extension fails the hypothesis as well, so the
    // branch is pruned.
    fn union_search(
        &self,
        start: usize,
        union: u64,
        closure: &mut Vec<u64>,
        depth: usize,
        cap: usize,
    ) -> bool {
        if depth > 0 && !self.contains_mask(union) {
            return false;
        }
        if depth == cap {
            return true;
        }
        for next in start..self.members.len() {
            let m = self.members[next];
            let mark = closure.len();
            let admissible = std::iter::once(m)
                .chain(closure[..mark].iter().map(|&c| c & m))
                .all(|s| self.contains_mask(s));
            if !admissible {
                continue;
            }
            for i in 0..=mark {
                let s = if i == mark { m } else { closure[i] & m };
                if !closure.contains(&s) {
                    closure.push(s);
                }
            }
            let ok = self.union_search(next + 1, union | m, closure, depth + 1, cap);
            closure.truncate(mark);
            if !ok {
                return false;
            }
        }
        true
    }

    /// Smallest Dynkin system containing the family.
    pub fn generated_dynkin(&self) -> SetFamily {
        let full = self.full();
        self.fixpoint(&[full], |a, b, out| {
            if a & !b == 0 {
                out.push(b & !a);
            }
        })
    }

    /// Smallest σ-algebra containing the family.
    pub fn generated_sigma(&self) -> SetFamily {
        let full = self.full();
        self.fixpoint(&[0, full], |a, b, out| {
            out.push(a | b);
            out.push(full & !a);
        })
    }

    /// The family together with all finite intersections of its members.
    pub fn intersection_closure(&self) -> SetFamily {
        self.fixpoint(&[], |a, b, out| out.push(a & b))
    }

    // Saturates under a binary rule. Terminates because the family can only
    // grow inside the power set.
    fn fixpoint(&self, seeds: &[u64], rule: impl Fn(u64, u64, &mut Vec<u64>)) -> SetFamily {
        let mut set: HashSet<u64> = self.members.iter().chain(seeds).copied().collect();
        let mut all: Vec<u64> = set.iter().copied().collect();
        let mut frontier = all.clone();
        let mut produced = Vec::new();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &a in &frontier {
                for &b in &all {
                    produced.clear();
                    rule(a, b, &mut produced);
                    rule(b, a, &mut produced);
                    for &s in &produced {
                        if set.insert(s) {
                            next.push(s);
                        }
                    }
                }
            }
            all.extend(&next);
            frontier = next;
        }
        SetFamily::from_masks(&self.ground, all).expect("closure stays in ground")
    }

    /// `{E : μ(E) = ν(E)}` over the whole power set of the ground.
    pub fn agreement_family(mu: &Measure, nu: &Measure) -> Result<SetFamily> {
        mu.space().ensure_same(nu.space())?;
        let power = SetFamily::power_set(mu.space())?;
        let agree = power
            .members
            .iter()
            .copied()
            .filter(|&m| {
                let s = Subset::from_mask(mu.space(), m);
                mu.mass_of(&s) == nu.mass_of(&s)
            })
            .collect::<Vec<_>>();
        SetFamily::from_masks(mu.space(), agree)
    }

    /// Whether `mu` and `nu` agree on every member.
    pub fn measures_agree_on(&self, mu: &Measure, nu: &Measure) -> Result<bool> {
        self.ground.ensure_same(mu.space())?;
        self.ground.ensure_same(nu.space())?;
        Ok(self.members.iter().all(|&m| {
            let s = Subset::from_mask(&self.ground, m);
            mu.mass_of(&s) == nu.mass_of(&s)
        }))
    }
}

/// Checks that the σ-algebra generated by the π-system `pi` lies inside the
/// Dynkin system `dynkin`. Fails if either hypothesis does not hold.
pub fn verify_pi_lambda(pi: &SetFamily, dynkin: &SetFamily) -> Result<bool> {
    pi.ground.ensure_same(&dynkin.ground)?;
    if !pi.is_pi_system()? {
        return Err(Error::Precondition(format!(
            "first family is not a π-system: {pi:?}"
        )));
    }
    if !dynkin.is_dynkin() {
        return Err(Error::Precondition(format!(
            "second family is not a Dynkin system: {dynkin:?}"
        )));
    }
    if !pi.is_subfamily_of(dynkin) {
        return Err(Error::Precondition(
            "the π-system is not contained in the Dynkin system".into(),
        ));
    }
    Ok(pi.generated_sigma().is_subfamily_of(dynkin))
}

fn check_ground(ground: &FiniteSpace) -> Result<()> {
    if ground.len() > MAX_GROUND {
        return Err(Error::Input(format!(
            "set families support at most {MAX_GROUND} ground points, {:?} has {}",
            ground.id(),
            ground.len()
        )));
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn to_mask(set: &Subset) -> u64 {
    set.indices().fold(0u64, |m, i| m | 1 << i)
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{:?}", Subset::from_mask(&self.ground, m))?;
        }
        f.write_str("}")
    }
}
