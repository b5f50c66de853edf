//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! The oracles here work on plain `BigRational` masses and bitmasks and do
//! not call the library routines they check.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use msk_core::disintegration::MeasuredMap;
use msk_core::fibred::check_interchange;
use msk_core::groupoid::{
    action_groupoid, disjoint_union, group_groupoid, pair_groupoid, FiniteGroupoid, GroupTable,
    InvarianceOptions,
};
use msk_core::pullback::check_square;
use msk_core::random::{self, MassShape};
use msk_core::setsystems::{verify_pi_lambda, PreDynkinOptions, SetFamily};
use msk_core::{pair_label, Kernel, Measure, Rational, Subset};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn big(r: &Rational) -> Q {
    r.as_big().clone()
}

fn small(q: &Q) -> Rational {
    Rational::from_big(q.clone()).expect("nonnegative")
}

fn masses(m: &Measure) -> Vec<Q> {
    m.masses().iter().map(big).collect()
}

fn atom(k: &Kernel, y: usize, x: usize) -> Q {
    big(k.mass(y, x))
}

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        name: "pullback square commutes",
        budget: Duration::from_secs(30),
        run: square_commutes,
    },
    Criterion {
        name: "interchange of fibred products and composition",
        budget: Duration::from_secs(60),
        run: interchange,
    },
    Criterion {
        name: "disintegration reconstructs and is unique",
        budget: Duration::from_secs(60),
        run: disintegration,
    },
    Criterion {
        name: "bounded disintegration constant is minimal",
        budget: Duration::from_secs(60),
        run: bounded_constant,
    },
    Criterion {
        name: "Haar systems and invariance forms",
        budget: Duration::from_secs(60),
        run: haar,
    },
    Criterion {
        name: "pi-lambda machinery on grounds up to 4",
        budget: Duration::from_secs(120),
        run: pi_lambda,
    },
    Criterion {
        name: "agreement on a generating pi-system",
        budget: Duration::from_secs(30),
        run: measure_agreement,
    },
    Criterion {
        name: "CLI golden transcripts",
        budget: Duration::from_secs(60),
        run: cli_golden,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let time = format!("{:.2}s of {}s", elapsed.as_secs_f64(), c.budget.as_secs());
        match outcome {
            Ok(detail) => println!("PASS {} {}: {detail} ({time})", i + 1, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {}: {why} ({time})", i + 1, c.name);
            }
        }
    }
    println!("{} criteria, {failed} failed", CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_5000 + criterion)
}

// 1. (β ∘ q*α) and (α ∘ p*β) both have atom α^z(x)·β^z(y) at ((x|y), z).

fn square_commutes() -> Outcome {
    let mut r = rng(1);
    let trials = 1000;
    for t in 0..trials {
        let shape = if t % 2 == 0 {
            MassShape::default()
        } else {
            MassShape::positive()
        };
        let (alpha, beta) = random::square(&mut r, 5, shape);
        let report = check_square(&alpha, &beta).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(report.commutes(), || {
            format!("trial {t}: {}", report.difference.as_ref().unwrap())
        })?;
        let (p, q) = (alpha.base_map(), beta.base_map());
        let (x, y, z) = (p.domain(), q.domain(), p.codomain());
        for side in [&report.via_right, &report.via_left] {
            let pb = side.domain();
            let expected_len = (0..x.len())
                .flat_map(|i| (0..y.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| p.apply(i) == q.apply(j))
                .count();
            ensure(pb.len() == expected_len && side.codomain() == z, || {
                format!(
                    "trial {t}: pullback has {} points, expected {expected_len}",
                    pb.len()
                )
            })?;
            for i in 0..x.len() {
                for j in 0..y.len() {
                    let zi = p.apply(i);
                    if zi != q.apply(j) {
                        continue;
                    }
                    let at = pb
                        .index_of(&pair_label(x.label(i), y.label(j)))
                        .map_err(|e| format!("trial {t}: {e}"))?;
                    for w in 0..z.len() {
                        let want = if w == zi {
                            atom(&alpha, w, i) * atom(&beta, w, j)
                        } else {
                            Q::zero()
                        };
                        ensure(atom(side, w, at) == want, || {
                            format!(
                                "trial {t}: atom ({}|{}) over {}",
                                x.label(i),
                                y.label(j),
                                z.label(w)
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{trials} random squares, |X|,|Y|,|Z| <= 5"))
}

// 2. Both sides have atom (γ₂∘γ₁)^{x₃}(x₁)·(ξ₂∘ξ₁)^{y₃}(y₁).

fn two_step(k1: &Kernel, k2: &Kernel, top: usize, bottom: usize) -> Q {
    (0..k1.codomain().len())
        .map(|mid| atom(k2, top, mid) * atom(k1, mid, bottom))
        .sum()
}

fn interchange() -> Outcome {
    let mut r = rng(2);
    let trials = 500;
    for t in 0..trials {
        let shape = if t % 2 == 0 {
            MassShape::default()
        } else {
            MassShape::positive()
        };
        let tower = random::tower(&mut r, 4, shape);
        let report = check_interchange(&tower).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(report.holds(), || {
            format!("trial {t}: {}", report.difference.as_ref().unwrap())
        })?;
        let (x1, y1) = (tower.gamma1.domain(), tower.xi1.domain());
        let (x3, y3) = (tower.gamma2.codomain(), tower.xi2.codomain());
        for side in [&report.product_then_compose, &report.compose_then_product] {
            for a in 0..x1.len() {
                for b in 0..y1.len() {
                    let Ok(bottom) = side
                        .domain()
                        .index_of(&pair_label(x1.label(a), y1.label(b)))
                    else {
                        ensure(tower.p1.apply(a) != tower.q1.apply(b), || {
                            format!(
                                "trial {t}: ({}|{}) missing from the pullback",
                                x1.label(a),
                                y1.label(b)
                            )
                        })?;
                        continue;
                    };
                    for c in 0..x3.len() {
                        for d in 0..y3.len() {
                            let want = two_step(&tower.gamma1, &tower.gamma2, c, a)
                                * two_step(&tower.xi1, &tower.xi2, d, b);
                            let got = match side
                                .codomain()
                                .index_of(&pair_label(x3.label(c), y3.label(d)))
                            {
                                Ok(top) => atom(side, top, bottom),
                                Err(_) => Q::zero(),
                            };
                            ensure(got == want, || {
                                format!(
                                    "trial {t}: atom ({}|{}) over ({}|{})",
                                    x1.label(a),
                                    y1.label(b),
                                    x3.label(c),
                                    y3.label(d)
                                )
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{trials} random towers, spaces <= 4 points"))
}

// 3. μ(E) = Σ_y ν(y)·γʸ(E) on every E ⊆ X, for the library's γ and for an
//    independently built one that differs on ν-null fibers.

fn reconstructs(mu: &[Q], nu: &[Q], gamma: &[Vec<Q>]) -> bool {
    let n = mu.len();
    // Subset sums by lowest set bit.
    let mut lhs = vec![Q::zero(); 1 << n];
    let mut rhs = vec![Q::zero(); 1 << n];
    let weight: Vec<Q> = (0..n)
        .map(|x| (0..nu.len()).map(|y| &nu[y] * &gamma[y][x]).sum())
        .collect();
    for e in 1usize..1 << n {
        let low = e.trailing_zeros() as usize;
        lhs[e] = &lhs[e & (e - 1)] + &mu[low];
        rhs[e] = &rhs[e & (e - 1)] + &weight[low];
        if lhs[e] != rhs[e] {
            return false;
        }
    }
    true
}

fn table(k: &Kernel) -> Vec<Vec<Q>> {
    k.measures().iter().map(masses).collect()
}

fn disintegration() -> Outcome {
    let mut r = rng(3);
    let trials = 1000;
    let (mut null_fibers, mut rejected) = (0, 0);
    for t in 0..trials {
        let mm = random::class_preserving(&mut r, 10, 5, MassShape::default());
        let f = mm.map();
        let (mu, nu) = (masses(mm.mu()), masses(mm.nu()));
        let gamma = mm.disintegrate().map_err(|e| format!("trial {t}: {e}"))?;
        let g = table(&gamma);
        for (y, row) in g.iter().enumerate() {
            for (x, m) in row.iter().enumerate() {
                ensure(f.apply(x) == y || m.is_zero(), || {
                    format!("trial {t}: γ leaves the fiber of {y}")
                })?;
            }
        }
        ensure(reconstructs(&mu, &nu, &g), || {
            format!("trial {t}: library γ does not reconstruct μ")
        })?;

        // γʸ(x) = μ(x)/ν(y) on ν-positive fibers, anything on ν-null ones.
        let mut other: Vec<Vec<Q>> = vec![vec![Q::zero(); mu.len()]; nu.len()];
        for x in 0..mu.len() {
            let y = f.apply(x);
            other[y][x] = if nu[y].is_zero() {
                big(&random::rational(&mut r, MassShape::default()))
            } else {
                &mu[x] / &nu[y]
            };
        }
        null_fibers += usize::from(
            nu.iter()
                .enumerate()
                .any(|(y, v)| v.is_zero() && other[y].iter().any(|m| !m.is_zero())),
        );
        ensure(reconstructs(&mu, &nu, &other), || {
            format!("trial {t}: oracle γ does not reconstruct μ")
        })?;
        let other_kernel = to_kernel(&gamma, &other);
        ensure(mm.is_disintegration(&other_kernel) == Ok(true), || {
            format!("trial {t}: library rejects oracle γ")
        })?;
        ensure(
            mm.disintegration_unique(&gamma, &other_kernel) == Ok(true),
            || format!("trial {t}: disintegrations differ on a ν-positive point"),
        )?;
        for y in 0..nu.len() {
            if !nu[y].is_zero() {
                ensure(g[y] == other[y], || {
                    format!("trial {t}: γ differs at ν-positive {y}")
                })?;
            }
        }

        // Extra mass on a ν-positive fiber must break reconstruction.
        if let Some(x) = (0..mu.len()).find(|&x| !nu[f.apply(x)].is_zero()) {
            let mut bad = other.clone();
            bad[f.apply(x)][x] += Q::one();
            ensure(!reconstructs(&mu, &nu, &bad), || {
                format!("trial {t}: perturbed γ still reconstructs")
            })?;
            ensure(
                mm.is_disintegration(&to_kernel(&gamma, &bad)) == Ok(false),
                || format!("trial {t}: library accepts perturbed γ"),
            )?;
            rejected += 1;
        }
    }
    Ok(format!(
        "{trials} class-preserving triples, |X| <= 10, all 2^|X| sets; {null_fibers} with free ν-null fibers, {rejected} perturbations rejected"
    ))
}

fn to_kernel(shape: &Kernel, rows: &[Vec<Q>]) -> Kernel {
    Kernel::new(
        shape.base_map().clone(),
        rows.iter()
            .map(|row| {
                Measure::from_masses(shape.domain(), row.iter().map(small).collect()).unwrap()
            })
            .collect(),
    )
    .expect("concentrated on fibers")
}

// 4. C_K against min{C : μ(K ∩ f⁻¹E) ≤ C·ν(E) for all E ⊆ Y}.

fn bounded_constant() -> Outcome {
    let mut r = rng(4);
    let trials = 200;
    let mut largest_y = 0;
    for t in 0..trials {
        let mm: MeasuredMap = random::class_preserving(&mut r, 12, 12, MassShape::default());
        let f = mm.map();
        let (mu, nu) = (masses(mm.mu()), masses(mm.nu()));
        let ny = nu.len();
        largest_y = largest_y.max(ny);
        let picks: Vec<bool> = (0..f.domain().len()).map(|_| r.random_bool(0.6)).collect();
        let k = Subset::from_predicate(f.domain(), |x| picks[x]);
        let c = big(&mm
            .bounded_constant(&k)
            .map_err(|e| format!("trial {t}: {e}"))?);

        let mut a = vec![Q::zero(); ny];
        for x in k.indices() {
            a[f.apply(x)] += &mu[x];
        }
        let mut sum_a = vec![Q::zero(); 1 << ny];
        let mut sum_nu = vec![Q::zero(); 1 << ny];
        let mut least = Q::zero();
        for e in 1usize..1 << ny {
            let low = e.trailing_zeros() as usize;
            sum_a[e] = &sum_a[e & (e - 1)] + &a[low];
            sum_nu[e] = &sum_nu[e & (e - 1)] + &nu[low];
            if sum_nu[e].is_zero() {
                ensure(sum_a[e].is_zero(), || {
                    format!("trial {t}: no constant works for E = {e:#b}")
                })?;
            } else {
                let ratio = &sum_a[e] / &sum_nu[e];
                if ratio > least {
                    least = ratio;
                }
            }
            ensure(sum_a[e] <= &c * &sum_nu[e], || {
                format!("trial {t}: inequality fails on E = {e:#b}")
            })?;
        }
        ensure(c == least, || {
            format!("trial {t}: C_K = {c}, brute-force minimum {least}")
        })?;
    }
    Ok(format!(
        "{trials} instances, |Y| up to {largest_y}, all 2^|Y| sets"
    ))
}

// 5. Haar systems on the standard constructors, and agreement of the two
//    invariance forms with an exhaustive oracle.

fn invariant_oracle(g: &FiniteGroupoid, lambda: &Kernel) -> bool {
    let n = g.arrows().len();
    let fiber = |u: usize| -> Vec<usize> { (0..n).filter(|&y| g.range().apply(y) == u).collect() };
    (0..n).all(|x| {
        let (d, r) = (g.source().apply(x), g.range().apply(x));
        let from = fiber(d);
        (0u64..1 << from.len()).all(|mask| {
            let chosen = from
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &y)| y);
            let (mut lhs, mut rhs) = (Q::zero(), Q::zero());
            for y in chosen {
                let xy = g.compose(x, y).expect("y starts where x ends");
                lhs += atom(lambda, d, y);
                rhs += atom(lambda, r, xy);
            }
            lhs == rhs
        })
    })
}

fn permutation_group(generators: &[Vec<usize>]) -> (GroupTable, Vec<Vec<usize>>) {
    let m = generators[0].len();
    let mut elements: Vec<Vec<usize>> = vec![(0..m).collect()];
    let mut i = 0;
    while i < elements.len() {
        for gen in generators {
            let next: Vec<usize> = elements[i].iter().map(|&p| gen[p]).collect();
            if !elements.contains(&next) {
                elements.push(next);
            }
        }
        i += 1;
    }
    let index = |p: &Vec<usize>| elements.iter().position(|e| e == p).unwrap();
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| index(&b.iter().map(|&p| a[p]).collect()))
                .collect()
        })
        .collect();
    let labels = (0..elements.len()).map(|i| format!("g{i}")).collect();
    (
        GroupTable::new(labels, table).expect("closed under composition"),
        elements,
    )
}

fn quaternions() -> GroupTable {
    // Index 4s + u is (-1)^s·u with u in 1, i, j, k.
    let units = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let table = (0..8)
        .map(|a: usize| {
            (0..8)
                .map(|b: usize| {
                    let (s, u) = units[a % 4][b % 4];
                    ((s + a / 4 + b / 4) % 2) * 4 + u
                })
                .collect()
        })
        .collect();
    let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"];
    GroupTable::new(names.iter().map(|s| s.to_string()).collect(), table).expect("Q8")
}

fn product_cycles(orders: &[usize]) -> Vec<Vec<usize>> {
    let m: usize = orders.iter().sum();
    let mut offset = 0;
    let mut gens = Vec::new();
    for &k in orders {
        gens.push(
            (0..m)
                .map(|p| {
                    if p >= offset && p < offset + k {
                        offset + (p - offset + 1) % k
                    } else {
                        p
                    }
                })
                .collect(),
        );
        offset += k;
    }
    gens
}

fn haar() -> Outcome {
    let mut cases: Vec<(String, FiniteGroupoid)> = Vec::new();
    for n in 1..=4 {
        cases.push((format!("pair {n}"), pair_groupoid(n)));
    }
    let mut groups: Vec<(String, GroupTable)> = (1..=8)
        .map(|n| (format!("Z{n}"), GroupTable::cyclic(n)))
        .collect();
    groups.push(("S3 table".into(), GroupTable::symmetric3()));
    let s3 = permutation_group(&[vec![1, 0, 2], vec![1, 2, 0]]);
    let d4 = permutation_group(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]);
    let v4 = permutation_group(&product_cycles(&[2, 2]));
    let z2z4 = permutation_group(&product_cycles(&[2, 4]));
    let z2cubed = permutation_group(&product_cycles(&[2, 2, 2]));
    for (name, (table, _)) in [
        ("S3", &s3),
        ("D4", &d4),
        ("Z2xZ2", &v4),
        ("Z2xZ4", &z2z4),
        ("Z2^3", &z2cubed),
    ] {
        groups.push((name.into(), table.clone()));
    }
    groups.push(("Q8".into(), quaternions()));
    for (name, group) in &groups {
        ensure(group.len() <= 8, || {
            format!("{name} has order {}", group.len())
        })?;
        cases.push((format!("group {name}"), group_groupoid(group)));
    }
    for (name, (table, perms)) in [
        ("S3", &s3),
        ("D4", &d4),
        ("Z2xZ2", &v4),
        ("Z2xZ4", &z2z4),
        ("Z2^3", &z2cubed),
    ] {
        let points: Vec<String> = (0..perms[0].len()).map(|p| format!("p{p}")).collect();
        let g =
            action_groupoid(table, &points, perms).map_err(|e| format!("{name} action: {e}"))?;
        cases.push((format!("action {name}"), g));
    }
    for (n, m, s) in [(4, 2, 1), (6, 3, 1), (4, 4, 2), (3, 2, 0), (8, 4, 1)] {
        let points: Vec<String> = (0..m).map(|p| format!("p{p}")).collect();
        let action: Vec<Vec<usize>> = (0..n)
            .map(|k| (0..m).map(|p| (p + k * s) % m).collect())
            .collect();
        let g =
            action_groupoid(&GroupTable::cyclic(n), &points, &action).map_err(|e| e.to_string())?;
        cases.push((format!("action Z{n} on Z{m}"), g));
    }
    let union = disjoint_union(&pair_groupoid(2), &group_groupoid(&GroupTable::cyclic(3)));
    cases.push(("pair 2 + Z3".into(), union));

    let exhaustive = InvarianceOptions {
        cap_bits: 12,
        ..InvarianceOptions::default()
    };
    for (name, g) in &cases {
        ensure(g.validate().is_empty(), || {
            format!("{name}: {:?}", g.validate())
        })?;
        let lambda = g.counting_system();
        let biggest = (0..g.units().len())
            .map(|u| g.range_fiber(u).len())
            .max()
            .unwrap_or(0);
        ensure(biggest <= 12, || {
            format!("{name}: fiber of {biggest} points is not checked exhaustively")
        })?;
        if let Some(why) = g
            .haar_failure(&lambda, &exhaustive)
            .map_err(|e| e.to_string())?
        {
            return Err(format!("{name}: {why}"));
        }
        ensure(g.is_haar(&lambda) == Ok(true), || {
            format!("{name}: is_haar disagrees")
        })?;
        ensure(invariant_oracle(g, &lambda), || {
            format!("{name}: oracle finds counting system not invariant")
        })?;
    }

    let mut r = rng(5);
    let trials = 500;
    let mut invariant = 0;
    for t in 0..trials {
        let g = random::groupoid(&mut r);
        let w = random::groupoid_weights(&mut r, &g, MassShape::default());
        let lambda = g.range_system(&w).map_err(|e| e.to_string())?;
        let sets = g
            .is_left_invariant_sets(&lambda)
            .map_err(|e| e.to_string())?;
        let fns = g.is_left_invariant_fn(&lambda).map_err(|e| e.to_string())?;
        let oracle = invariant_oracle(&g, &lambda);
        ensure(sets == oracle && fns == oracle, || {
            format!("trial {t}: set form {sets}, function form {fns}, oracle {oracle}")
        })?;
        invariant += usize::from(oracle);
    }
    ensure(invariant > 0 && invariant < trials, || {
        format!("only one verdict seen ({invariant} invariant)")
    })?;
    Ok(format!(
        "{} counting systems exhaustive; {trials} weighted groupoids agree ({invariant} invariant)",
        cases.len()
    ))
}

// 6. Families on n points are bitsets over the 2^n subsets.

fn has(family: u64, set: usize) -> bool {
    family >> set & 1 == 1
}

fn members(family: u64, sets: usize) -> impl Iterator<Item = usize> {
    (0..sets).filter(move |&s| has(family, s))
}

fn dynkin_oracle(family: u64, sets: usize) -> bool {
    let full = sets - 1;
    has(family, full)
        && members(family, sets).all(|a| {
            has(family, full ^ a) && members(family, sets).all(|b| a & b != 0 || has(family, a | b))
        })
}

// π-systems are nonempty.
fn pi_oracle(family: u64, sets: usize) -> bool {
    family != 0 && members(family, sets).all(|a| members(family, sets).all(|b| has(family, a & b)))
}

fn sigma_oracle(family: u64, sets: usize) -> u64 {
    let full = sets - 1;
    let mut out = family | 1 | 1 << full;
    loop {
        let mut next = out;
        for a in members(out, sets) {
            next |= 1 << (full ^ a);
            for b in members(out, sets) {
                next |= 1 << (a | b);
            }
        }
        if next == out {
            return out;
        }
        out = next;
    }
}

fn to_bits(f: &SetFamily) -> u64 {
    f.masks().iter().fold(0, |acc, &m| acc | 1 << m)
}

fn pi_lambda() -> Outcome {
    let mut pi_count = 0usize;
    let mut pairs = 0usize;
    for n in 1..=4usize {
        let ground = random::space("X", n);
        let sets = 1usize << n;
        let mut dynkins = Vec::new();
        let mut pis = Vec::new();
        for family in 0u64..1 << sets {
            let f =
                SetFamily::from_masks(&ground, members(family, sets).map(|s| s as u64)).unwrap();
            let dynkin = dynkin_oracle(family, sets);
            ensure(f.is_dynkin() == dynkin, || {
                format!("n={n}: is_dynkin wrong on {f:?}")
            })?;
            let pre = f.is_pre_dynkin();
            ensure(dynkin == (pre && f.contains_ground()), || {
                format!("n={n}: Dynkin {dynkin}, pre-Dynkin {pre} on {f:?}")
            })?;
            if n <= 3 {
                ensure(
                    f.is_pre_dynkin_with(PreDynkinOptions::exhaustive()) == pre,
                    || format!("n={n}: pair-bounded union check differs from exhaustive on {f:?}"),
                )?;
            }
            let pi = pi_oracle(family, sets);
            ensure(f.is_pi_system().unwrap_or(false) == pi, || {
                format!("n={n}: is_pi_system wrong on {f:?}")
            })?;
            if dynkin {
                dynkins.push(family);
            }
            if pi {
                pis.push((family, f));
            }
        }
        for (family, f) in &pis {
            let sigma = sigma_oracle(*family, sets);
            ensure(to_bits(&f.generated_sigma()) == sigma, || {
                format!("n={n}: generated_sigma wrong on {f:?}")
            })?;
            let mut least = u64::MAX >> (64 - sets);
            for &d in &dynkins {
                if family & !d == 0 {
                    pairs += 1;
                    ensure(sigma & !d == 0, || {
                        format!("n={n}: σ({f:?}) escapes Dynkin system {d:#x}")
                    })?;
                    least &= d;
                }
            }
            let generated = f.generated_dynkin();
            ensure(to_bits(&generated) == least, || {
                format!("n={n}: generated_dynkin wrong on {f:?}")
            })?;
            ensure(verify_pi_lambda(f, &generated) == Ok(true), || {
                format!("n={n}: verify_pi_lambda on {f:?}")
            })?;
        }
        pi_count += pis.len();
    }
    Ok(format!(
        "all families on 1..4 points; {pi_count} pi-systems against {pairs} containing Dynkin systems"
    ))
}

// 7. Measures agreeing on a π-system that generates the power set agree
//    everywhere; on a non-generating one they agree on its σ-algebra.

/// Rank over Q of a 0/1 incidence matrix.
fn rank(rows: &[u64], n: usize) -> usize {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|&r| {
            (0..n)
                .map(|i| if r >> i & 1 == 1 { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let lead = m[rank][col].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = &m[i][col] / &lead;
                let pivot_row = m[rank].clone();
                for (entry, p) in m[i].iter_mut().zip(&pivot_row) {
                    *entry -= &factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn measure_agreement() -> Outcome {
    let mut r = rng(7);
    let (mut generating, mut partial, mut boxed) = (0, 0, 0);
    while generating < 1000 || partial < 1000 {
        let n = r.random_range(1..=6);
        let ground = random::space("X", n);
        let sets = 1usize << n;
        let full = (sets - 1) as u64;
        let size = r.random_range(1..=n + 2);
        let basis = random::family(&mut r, &ground, size);
        let pi = SetFamily::from_masks(
            &ground,
            basis
                .intersection_closure()
                .masks()
                .iter()
                .copied()
                .chain([full]),
        )
        .unwrap();
        let bits = to_bits(&pi);
        ensure(pi_oracle(bits, sets), || {
            format!("intersection closure is not a π-system: {pi:?}")
        })?;
        let sigma = sigma_oracle(bits, sets);
        let whole = sigma == u64::MAX >> (64 - sets);
        if whole && generating >= 1000 || !whole && partial >= 1000 {
            continue;
        }
        ensure(to_bits(&pi.generated_sigma()) == sigma, || {
            format!("generated_sigma wrong on {pi:?}")
        })?;

        // ν redistributes μ inside each atom of σ(π).
        let mu = random::measure(&mut r, &ground, MassShape::default());
        let m = masses(&mu);
        let mut nu = vec![Q::zero(); n];
        let signature = |x: usize| pi.masks().iter().map(|&s| s >> x & 1).collect::<Vec<_>>();
        let mut seen = vec![false; n];
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let atom: Vec<usize> = (x..n).filter(|&y| signature(y) == signature(x)).collect();
            let total: Q = atom.iter().map(|&y| m[y].clone()).sum();
            let weights: Vec<Q> = atom
                .iter()
                .map(|_| Q::from_integer(r.random_range(0..4).into()))
                .collect();
            let sum: Q = weights.iter().sum();
            for (i, &y) in atom.iter().enumerate() {
                seen[y] = true;
                nu[y] = if sum.is_zero() {
                    if i == 0 {
                        total.clone()
                    } else {
                        Q::zero()
                    }
                } else {
                    &total * &weights[i] / &sum
                };
            }
        }
        let nu_measure = Measure::from_masses(&ground, nu.iter().map(small).collect()).unwrap();
        ensure(pi.measures_agree_on(&mu, &nu_measure) == Ok(true), || {
            format!("ν built to agree on {pi:?} does not")
        })?;
        let agreement = SetFamily::agreement_family(&mu, &nu_measure).unwrap();
        ensure(sigma & !to_bits(&agreement) == 0, || {
            format!("agreement family misses σ({pi:?})")
        })?;
        for e in members(sigma, sets) {
            let inside = || (0..n).filter(|x| e >> x & 1 == 1);
            let a: Q = inside().map(|x| &m[x]).sum();
            let b: Q = inside().map(|x| &nu[x]).sum();
            ensure(a == b, || format!("μ and ν differ on {e:#b} in σ({pi:?})"))?;
        }

        if whole {
            generating += 1;
            ensure(nu == m, || format!("generating {pi:?} but ν ≠ μ"))?;
            // Full column rank: no nonzero signed measure vanishes on π.
            ensure(rank(pi.masks(), n) == n, || {
                format!("{pi:?} generates but its incidence rank is below {n}")
            })?;
            if n <= 4 {
                // Every integer pair in a box agreeing on π is equal.
                let vectors: Vec<Vec<u32>> = (0..4u32.pow(n as u32))
                    .map(|c| (0..n).map(|i| c / 4u32.pow(i as u32) % 4).collect())
                    .collect();
                let sums = |v: &Vec<u32>| {
                    pi.masks()
                        .iter()
                        .map(|&s| {
                            (0..n)
                                .filter(|x| s >> x & 1 == 1)
                                .map(|x| v[x])
                                .sum::<u32>()
                        })
                        .collect::<Vec<_>>()
                };
                let keyed: Vec<Vec<u32>> = vectors.iter().map(sums).collect();
                for i in 0..vectors.len() {
                    for j in i + 1..vectors.len() {
                        ensure(keyed[i] != keyed[j], || {
                            format!("{:?} and {:?} agree on {pi:?}", vectors[i], vectors[j])
                        })?;
                    }
                }
                boxed += 1;
            }
        } else {
            partial += 1;
        }
    }
    Ok(format!(
        "{generating} generating and {partial} non-generating pi-systems on <= 6 points; {boxed} checked against every integer pair in [0,3]^n"
    ))
}

// 8. Every golden transcript, plus a constructed document fed back in.

fn cli_golden() -> Outcome {
    let mut mismatched = Vec::new();
    let mut fail_witnesses = 0;
    for case in common::CASES {
        let result = common::run_case(case);
        if !result.matches(case) {
            mismatched.push(format!("{} (exit {})", case.name, result.code));
        }
        if case.exit == 1 {
            if !result.actual.contains("FAIL") || !result.actual.contains("witness") {
                mismatched.push(format!("{} has no printed witness", case.name));
            }
            fail_witnesses += 1;
        }
    }
    if !mismatched.is_empty() {
        return Err(format!("mismatched: {}", mismatched.join(", ")));
    }

    let dir = std::env::temp_dir().join(format!("msk-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let out = dir.join("disintegrated.json");
    let out_arg = out.to_str().unwrap();
    let built = common::msk()
        .args([
            "disintegrate",
            "--input",
            "disintegration.json",
            "--output",
            out_arg,
            "--name",
            "g",
            "f",
            "mu",
            "nu",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        built.status.code() == Some(0) && built.stdout == b"added kernel g\n",
        || format!("disintegrate exited {}", built.status),
    )?;
    let check = common::msk()
        .args([
            "check",
            "--input",
            out_arg,
            "reconstruction",
            "f",
            "mu",
            "nu",
            "g",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&check.stdout).into_owned();
    let _ = std::fs::remove_dir_all(&dir);
    ensure(
        check.status.code() == Some(0) && stdout == "PASS reconstruction f mu nu g\n",
        || format!("round trip: exit {:?}, {stdout:?}", check.status.code()),
    )?;
    Ok(format!(
        "{} transcripts byte-identical, {fail_witnesses} failing checks print witnesses; disintegrate output re-checked",
        common::CASES.len()
    ))
}
