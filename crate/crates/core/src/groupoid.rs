//! Finite groupoids and systems of measures on their range map.
//!
//! A system of measures on a groupoid `G` is a kernel on `r: G → G⁽⁰⁾`; its
//! fiber over a unit `u` lives on `Gᵘ = r⁻¹(u)`. Left invariance asks that
//! left translation by any arrow `x` carry `λ^{d(x)}` onto `λ^{r(x)}`. A Haar
//! system is a left-invariant system that is positive on open sets; the
//! continuity requirement of the topological setting is vacuous on a finite
//! discrete groupoid and is not checked.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::map::SpaceMap;
use crate::measure::{pair_label, Measure};
use crate::rational::Rational;
use crate::space::{FiniteSpace, Subset};

/// A finite groupoid given by explicit tables.
///
/// Construction checks only that every label resolves and that range and
/// source land in the units. The groupoid axioms are checked by
/// [`FiniteGroupoid::validate`], so adversarial tables can be loaded and
/// diagnosed.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    arrows: FiniteSpace,
    units: FiniteSpace,
    unit_arrows: Vec<usize>,
    range: SpaceMap,
    source: SpaceMap,
    product: Vec<Option<usize>>,
    inverse: Vec<usize>,
}

/// One failed groupoid axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub arrows: Vec<String>,
    pub axiom: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.axiom, self.arrows.join(", "))
    }
}

/// Label-level description of a groupoid, as read from a document.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupoidTables {
    pub units: Vec<String>,
    pub range: Vec<(String, String)>,
    pub source: Vec<(String, String)>,
    pub compose: Vec<(String, String, String)>,
    pub inverse: Vec<(String, String)>,
}

impl FiniteGroupoid {
    pub fn from_tables(arrows: &FiniteSpace, tables: &GroupoidTables) -> Result<Self> {
        let unit_arrows = tables
            .units
            .iter()
            .map(|u| arrows.index_of(u))
            .collect::<Result<Vec<_>>>()?;
        let units = FiniteSpace::new(format!("{}.units", arrows.id()), tables.units.iter().cloned())?;
        let range = SpaceMap::new(format!("{}.range", arrows.id()), arrows, &units, &tables.range)?;
        let source = SpaceMap::new(format!("{}.source", arrows.id()), arrows, &units, &tables.source)?;
        let n = arrows.len();
        let mut product = vec![None; n * n];
        for (x, y, xy) in &tables.compose {
            let (x, y, xy) = (arrows.index_of(x)?, arrows.index_of(y)?, arrows.index_of(xy)?);
            if product[x * n + y].replace(xy).is_some_and(|prev| prev != xy) {
                return Err(Error::InvalidGroupoid(format!(
                    "product of {:?} and {:?} given twice",
                    arrows.label(x),
                    arrows.label(y)
                )));
            }
        }
        let mut inverse = vec![None; n];
        for (x, inv) in &tables.inverse {
            inverse[arrows.index_of(x)?] = Some(arrows.index_of(inv)?);
        }
        let inverse = inverse
            .into_iter()
            .enumerate()
            .map(|(x, i)| {
                i.ok_or_else(|| {
                    Error::InvalidGroupoid(format!("no inverse given for {:?}", arrows.label(x)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroupoid {
            arrows: arrows.clone(),
            units,
            unit_arrows,
            range,
            source,
            product,
            inverse,
        })
    }

    /// [`FiniteGroupoid::from_tables`] followed by a full axiom check.
    pub fn new(arrows: &FiniteSpace, tables: &GroupoidTables) -> Result<Self> {
        let g = Self::from_tables(arrows, tables)?;
        g.ensure_valid()?;
        Ok(g)
    }

    fn from_indices(
        id: &str,
        arrow_labels: Vec<String>,
        unit_arrows: Vec<usize>,
        range: Vec<usize>,
        source: Vec<usize>,
        product: impl Fn(usize, usize) -> Option<usize>,
        inverse: Vec<usize>,
    ) -> Result<Self> {
        let arrows = FiniteSpace::new(id, arrow_labels)?;
        let units = FiniteSpace::new(
            format!("{id}.units"),
            unit_arrows.iter().map(|&a| arrows.label(a).to_string()),
        )?;
        let range = SpaceMap::from_indices(format!("{id}.range"), &arrows, &units, range)?;
        let source = SpaceMap::from_indices(format!("{id}.source"), &arrows, &units, source)?;
        let n = arrows.len();
        let product = (0..n * n).map(|k| product(k / n, k % n)).collect();
        Ok(FiniteGroupoid {
            arrows,
            units,
            unit_arrows,
            range,
            source,
            product,
            inverse,
        })
    }

    pub fn arrows(&self) -> &FiniteSpace {
        &self.arrows
    }

    pub fn units(&self) -> &FiniteSpace {
        &self.units
    }

    /// `r: G → G⁽⁰⁾`.
    pub fn range(&self) -> &SpaceMap {
        &self.range
    }

    /// `d: G → G⁽⁰⁾`.
    pub fn source(&self) -> &SpaceMap {
        &self.source
    }

    /// Arrow index of the unit with unit index `u`.
    pub fn unit_arrow(&self, u: usize) -> usize {
        self.unit_arrows[u]
    }

    pub fn compose(&self, x: usize, y: usize) -> Option<usize> {
        self.product[x * self.arrows.len() + y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// Label-level tables, the inverse of [`FiniteGroupoid::from_tables`].
    pub fn tables(&self) -> GroupoidTables {
        let a = &self.arrows;
        let u = &self.units;
        let n = a.len();
        GroupoidTables {
            units: u.points().to_vec(),
            range: (0..n)
                .map(|x| (a.label(x).to_string(), u.label(self.range.apply(x)).to_string()))
                .collect(),
            source: (0..n)
                .map(|x| (a.label(x).to_string(), u.label(self.source.apply(x)).to_string()))
                .collect(),
            compose: (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter_map(|(x, y)| {
                    self.compose(x, y).map(|xy| {
                        (
                            a.label(x).to_string(),
                            a.label(y).to_string(),
                            a.label(xy).to_string(),
                        )
                    })
                })
                .collect(),
            inverse: (0..n)
                .map(|x| (a.label(x).to_string(), a.label(self.inverse[x]).to_string()))
                .collect(),
        }
    }

    /// `Gᵘ = r⁻¹(u)` as arrow indices.
    pub fn range_fiber(&self, u: usize) -> Vec<usize> {
        self.range.fiber_indices(u).collect()
    }

    fn violation(&self, arrows: &[usize], axiom: impl Into<String>) -> Violation {
        Violation {
            arrows: arrows.iter().map(|&x| self.arrows.label(x).to_string()).collect(),
            axiom: axiom.into(),
        }
    }

    /// Checks every groupoid axiom exhaustively and lists each failure.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.arrows.len();
        let r = |x: usize| self.range.apply(x);
        let d = |x: usize| self.source.apply(x);
        let mut out = Vec::new();

        for (u, &e) in self.unit_arrows.iter().enumerate() {
            if r(e) != u || d(e) != u {
                out.push(self.violation(&[e], "unit is not its own range and source"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                match (d(x) == r(y), self.compose(x, y)) {
                    (true, None) => out.push(self.violation(&[x, y], "composable pair has no product")),
                    (false, Some(_)) => {
                        out.push(self.violation(&[x, y], "product defined for non-composable pair"))
                    }
                    (true, Some(xy)) => {
                        if r(xy) != r(x) || d(xy) != d(y) {
                            out.push(self.violation(&[x, y], "r(xy) = r(x) and d(xy) = d(y) fail"));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = self.compose(x, y) else { continue };
                for z in 0..n {
                    let Some(yz) = self.compose(y, z) else { continue };
                    if self.compose(xy, z) != self.compose(x, yz) {
                        out.push(self.violation(&[x, y, z], "associativity fails"));
                    }
                }
            }
        }
        for x in 0..n {
            let left_unit = self.unit_arrows[r(x)];
            let right_unit = self.unit_arrows[d(x)];
            if self.compose(left_unit, x) != Some(x) || self.compose(x, right_unit) != Some(x) {
                out.push(self.violation(&[x], "units are not two-sided identities"));
            }
            let inv = self.inverse[x];
            if self.compose(x, inv) != Some(left_unit) {
                out.push(self.violation(&[x], "x·x⁻¹ is not the unit at r(x)"));
            }
            if self.compose(inv, x) != Some(right_unit) {
                out.push(self.violation(&[x], "x⁻¹·x is not the unit at d(x)"));
            }
        }
        for x in 0..n {
            let from = self.range_fiber(d(x));
            let to = self.range_fiber(r(x));
            let mut images: Vec<Option<usize>> = from.iter().map(|&y| self.compose(x, y)).collect();
            images.sort_unstable();
            let mut target: Vec<Option<usize>> = to.into_iter().map(Some).collect();
            target.sort_unstable();
            if images != target {
                out.push(self.violation(&[x], "left translation G^{d(x)} → G^{r(x)} is not a bijection"));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidGroupoid(v.to_string())),
        }
    }

    /// Units grouped into orbits: `u ~ v` when some arrow runs from `v` to `u`.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let m = self.units.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for x in 0..self.arrows.len() {
            let a = find(&mut parent, self.range.apply(x));
            let b = find(&mut parent, self.source.apply(x));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; m];
        for u in 0..m {
            let root = find(&mut parent, u);
            if slot[root] == usize::MAX {
                slot[root] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[root]].push(u);
        }
        groups
    }

    /// The system whose fiber over `u` is `weights` restricted to `Gᵘ`.
    pub fn range_system(&self, weights: &[Rational]) -> Result<Kernel> {
        let w = Measure::from_masses(&self.arrows, weights.to_vec())?;
        Kernel::from_fn(self.range.clone(), |u| {
            let fiber = self.range.fiber(u);
            Measure::from_masses(
                &self.arrows,
                (0..self.arrows.len())
                    .map(|x| {
                        if fiber.contains(x) {
                            w.mass_at(x).clone()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect(),
            )
            .expect("sized to the arrow space")
        })
    }

    /// Counting measures on the range fibers.
    pub fn counting_system(&self) -> Kernel {
        Kernel::counting(self.range.clone())
    }

    fn ensure_on_range(&self, lambda: &Kernel) -> Result<()> {
        self.range.ensure_same(lambda.base_map())
    }

    /// Set form of left invariance:
    /// `λ^{d(x)}(E) = λ^{r(x)}(x·(E ∩ G^{d(x)}))` for every arrow `x` and set `E`.
    ///
    /// `λ^{d(x)}(E)` only sees `E ∩ G^{d(x)}`, so `E` ranges over subsets of
    /// that fiber: all of them when there are at most `2^cap_bits`, otherwise
    /// singletons plus seeded random subsets.
    pub fn left_invariance_witness(
        &self,
        lambda: &Kernel,
        options: &InvarianceOptions,
    ) -> Result<Option<InvarianceWitness>> {
        self.ensure_on_range(lambda)?;
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for x in 0..self.arrows.len() {
            let (dx, rx) = (self.source.apply(x), self.range.apply(x));
            let fiber = self.range_fiber(dx);
            for chosen in fiber_subsets(&fiber, options, &mut rng) {
                let e = Subset::from_indices(&self.arrows, chosen.iter().copied());
                let translated = self.left_translate(x, &e);
                let lhs = lambda.fiber_measure(dx).mass_of(&e);
                let rhs = lambda.fiber_measure(rx).mass_of(&translated);
                if lhs != rhs {
                    return Ok(Some(InvarianceWitness {
                        arrow: self.arrows.label(x).to_string(),
                        test: format!("E = {e}"),
                        lhs,
                        rhs,
                    }));
                }
            }
        }
        Ok(None)
    }

    pub fn is_left_invariant_sets(&self, lambda: &Kernel) -> Result<bool> {
        Ok(self
            .left_invariance_witness(lambda, &InvarianceOptions::default())?
            .is_none())
    }

    /// `x·(E ∩ G^{d(x)})`.
    pub fn left_translate(&self, x: usize, set: &Subset) -> Subset {
        Subset::from_indices(
            &self.arrows,
            set.indices().filter_map(|y| self.compose(x, y)),
        )
    }

    /// Function form of left invariance:
    /// `∫ f(xy) dλ^{d(x)}(y) = ∫ f(y) dλ^{r(x)}(y)` for every arrow `x`.
    ///
    /// Test functions are the constant 1, indicators of subsets of `G^{r(x)}`
    /// (chosen as in the set form), and a few seeded random rational functions.
    pub fn left_invariance_fn_witness(
        &self,
        lambda: &Kernel,
        options: &InvarianceOptions,
    ) -> Result<Option<InvarianceWitness>> {
        self.ensure_on_range(lambda)?;
        let n = self.arrows.len();
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x5eed);
        for x in 0..n {
            let (dx, rx) = (self.source.apply(x), self.range.apply(x));
            let mut tests: Vec<(String, Vec<Rational>)> =
                vec![("f ≡ 1".to_string(), vec![Rational::one(); n])];
            for chosen in fiber_subsets(&self.range_fiber(rx), options, &mut rng) {
                let e = Subset::from_indices(&self.arrows, chosen.iter().copied());
                let f = (0..n)
                    .map(|y| if e.contains(y) { Rational::one() } else { Rational::zero() })
                    .collect();
                tests.push((format!("f = 1_{e}"), f));
            }
            for k in 0..options.random_functions {
                let f: Vec<Rational> = (0..n)
                    .map(|_| Rational::new(rng.random_range(0..10), rng.random_range(1..5)).expect("nonzero"))
                    .collect();
                tests.push((format!("random f #{k}"), f));
            }
            let d_measure = lambda.fiber_measure(dx);
            for (name, f) in tests {
                let lhs: Rational = self
                    .range
                    .fiber_indices(dx)
                    .filter_map(|y| self.compose(x, y).map(|xy| &f[xy] * d_measure.mass_at(y)))
                    .sum();
                let rhs = lambda.integrate_fn(&f)?.swap_remove(rx);
                if lhs != rhs {
                    return Ok(Some(InvarianceWitness {
                        arrow: self.arrows.label(x).to_string(),
                        test: name,
                        lhs,
                        rhs,
                    }));
                }
            }
        }
        Ok(None)
    }

    pub fn is_left_invariant_fn(&self, lambda: &Kernel) -> Result<bool> {
        Ok(self
            .left_invariance_fn_witness(lambda, &InvarianceOptions::default())?
            .is_none())
    }

    /// Left invariant and positive on open sets.
    pub fn is_haar(&self, lambda: &Kernel) -> Result<bool> {
        Ok(self.haar_failure(lambda, &InvarianceOptions::default())?.is_none())
    }

    /// Why `lambda` is not a Haar system, if it is not.
    pub fn haar_failure(&self, lambda: &Kernel, options: &InvarianceOptions) -> Result<Option<HaarFailure>> {
        self.ensure_on_range(lambda)?;
        if let Some((u, x)) = lambda.positivity_witness() {
            return Ok(Some(HaarFailure::NotPositive {
                unit: self.units.label(u).to_string(),
                arrow: self.arrows.label(x).to_string(),
            }));
        }
        Ok(self
            .left_invariance_witness(lambda, options)?
            .map(HaarFailure::NotInvariant))
    }
}

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroupoid({}: {} arrows, {} units)",
            self.arrows.id(),
            self.arrows.len(),
            self.units.len()
        )
    }
}

/// Controls how many subsets and test functions invariance checks try.
#[derive(Debug, Clone)]
pub struct InvarianceOptions {
    /// Fibers with at most this many points are checked on every subset.
    pub cap_bits: u32,
    /// Random subsets per arrow beyond singletons, for larger fibers.
    pub samples: usize,
    /// Random rational test functions per arrow in the function form.
    pub random_functions: usize,
    pub seed: u64,
}

impl Default for InvarianceOptions {
    fn default() -> Self {
        InvarianceOptions {
            cap_bits: 12,
            samples: 64,
            random_functions: 3,
            seed: 0,
        }
    }
}

/// A failing instance of left invariance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceWitness {
    pub arrow: String,
    pub test: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for InvarianceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "arrow {} with {}: {} != {}",
            self.arrow, self.test, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HaarFailure {
    NotPositive { unit: String, arrow: String },
    NotInvariant(InvarianceWitness),
}

impl fmt::Display for HaarFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HaarFailure::NotPositive { unit, arrow } => {
                write!(f, "not positive: arrow {arrow} in fiber {unit} has zero mass")
            }
            HaarFailure::NotInvariant(w) => write!(f, "not left invariant: {w}"),
        }
    }
}

fn fiber_subsets(fiber: &[usize], options: &InvarianceOptions, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    if fiber.len() <= options.cap_bits as usize {
        return (0u64..1 << fiber.len())
            .map(|mask| {
                fiber
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &a)| (mask >> i & 1 == 1).then_some(a))
                    .collect()
            })
            .collect();
    }
    let mut out: Vec<Vec<usize>> = fiber.iter().map(|&a| vec![a]).collect();
    for _ in 0..options.samples {
        out.push(fiber.iter().copied().filter(|_| rng.random_bool(0.5)).collect());
    }
    out
}

/// The pair groupoid on `n` objects: arrows `(i|j)` from `j` to `i`, with
/// `(i|j)(j|k) = (i|k)`.
pub fn pair_groupoid(n: usize) -> FiniteGroupoid {
    let labels = (0..n)
        .flat_map(|i| (0..n).map(move |j| pair_label(&i.to_string(), &j.to_string())))
        .collect();
    let idx = |i: usize, j: usize| i * n + j;
    FiniteGroupoid::from_indices(
        &format!("pair{n}"),
        labels,
        (0..n).map(|i| idx(i, i)).collect(),
        (0..n * n).map(|a| a / n).collect(),
        (0..n * n).map(|a| a % n).collect(),
        |x, y| (x % n == y / n).then(|| idx(x / n, y % n)),
        (0..n * n).map(|a| idx(a % n, a / n)).collect(),
    )
    .expect("pair groupoid labels are distinct")
}

/// A validated finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// `table[g][h]` is the index of `g·h`.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGroup("a group needs an identity".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidGroup(format!("table must be {n}×{n} with entries below {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", labels[g])))
            })
            .collect::<Result<Vec<_>>>()?;
        let distinct: std::collections::HashSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidGroup("duplicate element labels".into()));
        }
        Ok(GroupTable {
            labels,
            table,
            identity,
            inverse,
        })
    }

    /// `Z/n` with elements `"0".."n-1"`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(labels, table).expect("cyclic group")
    }

    /// The symmetric group on 3 letters, elements labelled by permutations
    /// in one-line notation.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|i| i.to_string()).collect::<String>())
            .collect();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        GroupTable::new(labels, table).expect("S3")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }
}

/// A group viewed as a groupoid with one unit.
pub fn group_groupoid(group: &GroupTable) -> FiniteGroupoid {
    let n = group.len();
    FiniteGroupoid::from_indices(
        "group",
        group.labels.clone(),
        vec![group.identity],
        vec![0; n],
        vec![0; n],
        |x, y| Some(group.mul(x, y)),
        (0..n).map(|g| group.inv(g)).collect(),
    )
    .expect("group labels are distinct")
}

/// The transformation groupoid of `group` acting on `points` by
/// `action[g][p] = g·p`: arrows `(g|p)` from `p` to `g·p`, composed by
/// `(h|g·p)(g|p) = (hg|p)`.
pub fn action_groupoid(group: &GroupTable, points: &[String], action: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    let (n, m) = (group.len(), points.len());
    if action.len() != n || action.iter().any(|row| row.len() != m || row.iter().any(|&p| p >= m)) {
        return Err(Error::InvalidGroup(format!("action table must be {n}×{m} with entries below {m}")));
    }
    for p in 0..m {
        if action[group.identity][p] != p {
            return Err(Error::InvalidGroup(format!("identity moves {}", points[p])));
        }
        for g in 0..n {
            for h in 0..n {
                if action[group.mul(g, h)][p] != action[g][action[h][p]] {
                    return Err(Error::InvalidGroup(format!(
                        "(gh)·p ≠ g·(h·p) for g={}, h={}, p={}",
                        group.labels[g], group.labels[h], points[p]
                    )));
                }
            }
        }
    }
    let idx = |g: usize, p: usize| g * m + p;
    let labels = (0..n)
        .flat_map(|g| (0..m).map(move |p| (g, p)))
        .map(|(g, p)| pair_label(&group.labels[g], &points[p]))
        .collect();
    FiniteGroupoid::from_indices(
        "action",
        labels,
        (0..m).map(|p| idx(group.identity, p)).collect(),
        (0..n * m).map(|a| action[a / m][a % m]).collect(),
        (0..n * m).map(|a| a % m).collect(),
        |x, y| {
            let (h, q) = (x / m, x % m);
            let (g, p) = (y / m, y % m);
            (q == action[g][p]).then(|| idx(group.mul(h, g), p))
        },
        (0..n * m)
            .map(|a| {
                let (g, p) = (a / m, a % m);
                idx(group.inv(g), action[g][p])
            })
            .collect(),
    )
}

/// `G₁ ⊔ G₂`, arrows prefixed `1:` and `2:`.
pub fn disjoint_union(g1: &FiniteGroupoid, g2: &FiniteGroupoid) -> FiniteGroupoid {
    let n1 = g1.arrows.len();
    let u1 = g1.units.len();
    let labels = g1
        .arrows
        .points()
        .iter()
        .map(|l| format!("1:{l}"))
        .chain(g2.arrows.points().iter().map(|l| format!("2:{l}")))
        .collect();
    let units = g1
        .unit_arrows
        .iter()
        .copied()
        .chain(g2.unit_arrows.iter().map(|&a| a + n1))
        .collect();
    let range = g1
        .range
        .assignment()
        .iter()
        .copied()
        .chain(g2.range.assignment().iter().map(|&u| u + u1))
        .collect();
    let source = g1
        .source
        .assignment()
        .iter()
        .copied()
        .chain(g2.source.assignment().iter().map(|&u| u + u1))
        .collect();
    let inverse = g1
        .inverse
        .iter()
        .copied()
        .chain(g2.inverse.iter().map(|&a| a + n1))
        .collect();
    FiniteGroupoid::from_indices(
        &format!("({}⊔{})", g1.arrows.id(), g2.arrows.id()),
        labels,
        units,
        range,
        source,
        |x, y| match (x < n1, y < n1) {
            (true, true) => g1.compose(x, y),
            (false, false) => g2.compose(x - n1, y - n1).map(|z| z + n1),
            _ => None,
        },
        inverse,
    )
    .expect("prefixed labels are distinct")
}
