//! Command implementations. Each returns an [`Outcome`]; nothing here
//! touches the process directly except for reading and writing the named
//! files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use msk_core::disintegration::MeasuredMap;
use msk_core::fibred::{check_interchange, FibredSquarePair, Tower};
use msk_core::groupoid::{FiniteGroupoid, HaarFailure, InvarianceOptions};
use msk_core::pullback::{check_square, PullbackSpace};
use msk_core::setsystems::SetFamily;
use msk_core::{Error as CoreError, Kernel};

use crate::document::{self, DocError, Document, Validation};

/// Exit code when every check passes.
pub const EXIT_PASS: i32 = 0;
/// Exit code when a checked property is violated.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for input, format and precondition errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "msk",
    version,
    about = "Exact systems of measures on finite spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Io {
    /// Input document.
    #[arg(long)]
    pub input: PathBuf,
    /// Where to write the extended document; stdout if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Name for the constructed object.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose ALPHA on p: X → Y with BETA on q: Y → Z into a kernel on q∘p.
    Compose {
        #[command(flatten)]
        io: Io,
        alpha: String,
        beta: String,
    },
    /// Lift KERNEL on p: X → Z along MAP q: Y → Z to a kernel on the pullback
    /// projection onto Y. With --left, KERNEL sits on q and MAP is p.
    Lift {
        #[command(flatten)]
        io: Io,
        kernel: String,
        map: String,
        #[arg(long)]
        left: bool,
    },
    /// Fibred product of GAMMA_X on f and GAMMA_Y on g, for legs p1 = p2∘f
    /// and q1 = q2∘g.
    FibreProduct {
        #[command(flatten)]
        io: Io,
        gamma_x: String,
        gamma_y: String,
        p1: String,
        q1: String,
        p2: String,
        q2: String,
    },
    /// Disintegrate MU along MAP with respect to NU.
    Disintegrate {
        #[command(flatten)]
        io: Io,
        map: String,
        mu: String,
        nu: String,
    },
    /// Run one named check.
    Check {
        #[command(flatten)]
        io: Io,
        property: Property,
        objects: Vec<String>,
    },
    /// Validate a groupoid and check its counting system and every kernel on
    /// its range map for the Haar property.
    HaarVerify {
        #[command(flatten)]
        io: Io,
        groupoid: String,
    },
    /// Run every applicable check in the document.
    Report {
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    /// [KERNEL...]: each fiber measure lives on its fiber (all kernels by default).
    Concentration,
    /// [KERNEL...]: every fiber point has positive mass (all kernels by default).
    Positivity,
    /// ALPHA BETA: the pullback square of two kernels over a common base commutes.
    SquareCommutes,
    /// GAMMA1 GAMMA2 XI1 XI2 [P1 Q1 P2 Q2] P3 Q3: fibred products commute with composition.
    Interchange,
    /// GROUPOID KERNEL: the kernel on the range map is left invariant.
    LeftInvariance,
    /// GROUPOID KERNEL: left invariant and positive on open sets.
    Haar,
    /// PI DYNKIN: a π-system inside a Dynkin system generates a σ-algebra inside it.
    PiLambda,
    /// MAP MU NU GAMMA: ∫ γʸ dν(y) reconstructs μ.
    Reconstruction,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Concentration => "concentration",
            Property::Positivity => "positivity",
            Property::SquareCommutes => "square-commutes",
            Property::Interchange => "interchange",
            Property::LeftInvariance => "left-invariance",
            Property::Haar => "haar",
            Property::PiLambda => "pi-lambda",
            Property::Reconstruction => "reconstruction",
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn error(message: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: EXIT_ERROR,
        }
    }
}

/// Settings read from the environment.
#[derive(Debug, Clone, Default)]
pub struct Env {
    /// `MSK_SEED`, if set.
    pub seed: Option<String>,
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I, env: &Env) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_ERROR,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_PASS,
                }
            };
        }
    };
    match execute(cli.command, env) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::error(e),
    }
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
pub struct CommandError(String);

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<DocError> for CommandError {
    fn from(e: DocError) -> Self {
        CommandError(e.to_string())
    }
}

impl From<CoreError> for CommandError {
    fn from(e: CoreError) -> Self {
        CommandError(e.to_string())
    }
}

type CmdResult<T> = Result<T, CommandError>;

fn load(path: &Path, validation: Validation) -> CmdResult<Document> {
    let text = fs::read_to_string(path)
        .map_err(|e| CommandError(format!("cannot read {}: {e}", path.display())))?;
    document::parse(&text, validation).map_err(|e| CommandError(format!("{}: {e}", path.display())))
}

fn invariance_options(env: &Env) -> CmdResult<InvarianceOptions> {
    let mut options = InvarianceOptions::default();
    if let Some(seed) = &env.seed {
        options.seed = seed.trim().parse().map_err(|_| {
            CommandError(format!(
                "MSK_SEED must be an unsigned integer, got {seed:?}"
            ))
        })?;
    }
    Ok(options)
}

fn execute(command: Command, env: &Env) -> CmdResult<Outcome> {
    match command {
        Command::Compose { io, alpha, beta } => {
            let mut doc = load(&io.input, Validation::Strict)?;
            let a = doc.kernel(&alpha)?;
            let b = doc.kernel(&beta)?;
            let k = a.then(&b)?;
            let name = io.name.clone().unwrap_or_else(|| format!("{beta}∘{alpha}"));
            let added = doc.add_kernel(&name, &k)?;
            emit(&io, &doc, added)
        }
        Command::Lift {
            io,
            kernel,
            map,
            left,
        } => {
            let mut doc = load(&io.input, Validation::Strict)?;
            let k = doc.kernel(&kernel)?;
            let along = doc.map(&map)?;
            let (pb, lifted) = if left {
                let pb = PullbackSpace::new(&along, k.base_map())?;
                let lifted = pb.lift_left(&k)?;
                (pb, lifted)
            } else {
                let pb = PullbackSpace::new(k.base_map(), &along)?;
                let lifted = pb.lift_right(&k)?;
                (pb, lifted)
            };
            let name = io.name.clone().unwrap_or_else(|| format!("{map}*{kernel}"));
            let mut added = doc.add_map(pb.proj_left())?;
            added.extend(doc.add_map(pb.proj_right())?);
            added.extend(doc.add_kernel(&name, &lifted)?);
            emit(&io, &doc, added)
        }
        Command::FibreProduct {
            io,
            gamma_x,
            gamma_y,
            p1,
            q1,
            p2,
            q2,
        } => {
            let mut doc = load(&io.input, Validation::Strict)?;
            let gx = doc.kernel(&gamma_x)?;
            let gy = doc.kernel(&gamma_y)?;
            let lower = PullbackSpace::new(&doc.map(&p1)?, &doc.map(&q1)?)?;
            let upper = PullbackSpace::new(&doc.map(&p2)?, &doc.map(&q2)?)?;
            let pair = FibredSquarePair::new(gx.base_map(), gy.base_map(), &lower, &upper)?;
            let k = pair.product_kernel(&gx, &gy)?;
            let name = io
                .name
                .clone()
                .unwrap_or_else(|| format!("{gamma_x}*{gamma_y}"));
            let mut added = Vec::new();
            for m in [
                lower.proj_left(),
                lower.proj_right(),
                upper.proj_left(),
                upper.proj_right(),
            ] {
                added.extend(doc.add_map(m)?);
            }
            added.extend(doc.add_kernel(&name, &k)?);
            emit(&io, &doc, added)
        }
        Command::Disintegrate { io, map, mu, nu } => {
            let mut doc = load(&io.input, Validation::Strict)?;
            let mm = MeasuredMap::new(doc.map(&map)?, doc.measure(&mu)?, doc.measure(&nu)?)?;
            let gamma = mm.disintegrate()?;
            let name = io.name.clone().unwrap_or_else(|| format!("{mu}/{nu}"));
            let added = doc.add_kernel(&name, &gamma)?;
            emit(&io, &doc, added)
        }
        Command::Check {
            io,
            property,
            objects,
        } => check(&io, property, &objects, env),
        Command::HaarVerify { io, groupoid } => haar_verify(&io, &groupoid, env),
        Command::Report { io } => report(&io, env),
    }
}

fn emit(io: &Io, doc: &Document, added: Vec<String>) -> CmdResult<Outcome> {
    let text = document::serialize(doc);
    match &io.output {
        None => Ok(Outcome {
            stdout: text,
            stderr: String::new(),
            code: EXIT_PASS,
        }),
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| CommandError(format!("cannot write {}: {e}", path.display())))?;
            let mut stdout = String::new();
            for entry in &added {
                writeln!(stdout, "added {entry}").unwrap();
            }
            if added.is_empty() {
                stdout.push_str("nothing new to add\n");
            }
            Ok(Outcome {
                stdout,
                stderr: String::new(),
                code: EXIT_PASS,
            })
        }
    }
}

/// Result of a single check: `None` passes, `Some(witness)` fails.
type Verdict = Option<String>;

fn expect_objects(property: Property, objects: &[String], counts: &[usize]) -> CmdResult<()> {
    if counts.contains(&objects.len()) {
        return Ok(());
    }
    let wanted = counts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" or ");
    Err(CommandError(format!(
        "check {} takes {wanted} object names, got {}",
        property.name(),
        objects.len()
    )))
}

fn check(io: &Io, property: Property, objects: &[String], env: &Env) -> CmdResult<Outcome> {
    let validation = if matches!(property, Property::Concentration | Property::SquareCommutes) {
        Validation::Lenient
    } else {
        Validation::Strict
    };
    let doc = load(&io.input, validation)?;
    let mut results: Vec<(String, Verdict)> = Vec::new();
    match property {
        Property::Concentration | Property::Positivity => {
            let names: Vec<String> = if objects.is_empty() {
                doc.kernels.keys().cloned().collect()
            } else {
                objects.to_vec()
            };
            for name in names {
                let verdict = if property == Property::Concentration {
                    concentration_verdict(&doc, &name)?
                } else {
                    positivity_verdict(&doc.kernel(&name)?)
                };
                results.push((name, verdict));
            }
        }
        Property::SquareCommutes => {
            expect_objects(property, objects, &[2])?;
            // A leaky kernel is not a system of measures, so the square has
            // nothing to commute; report which hypothesis broke.
            let leak = objects
                .iter()
                .map(|name| {
                    Ok(concentration_verdict(&doc, name)?
                        .map(|w| format!("{name} is not concentrated: {w}")))
                })
                .collect::<CmdResult<Vec<_>>>()?
                .into_iter()
                .flatten()
                .next();
            let verdict = match leak {
                Some(w) => Some(w),
                None => square_verdict(&doc.kernel(&objects[0])?, &doc.kernel(&objects[1])?)?,
            };
            results.push((objects.join(" "), verdict));
        }
        Property::Interchange => {
            expect_objects(property, objects, &[6, 10])?;
            let k = |i: usize| doc.kernel(&objects[i]);
            let tower = if objects.len() == 6 {
                Tower::from_top(
                    k(0)?,
                    k(1)?,
                    k(2)?,
                    k(3)?,
                    doc.map(&objects[4])?,
                    doc.map(&objects[5])?,
                )?
            } else {
                let m = |i: usize| doc.map(&objects[i]);
                Tower {
                    gamma1: k(0)?,
                    gamma2: k(1)?,
                    xi1: k(2)?,
                    xi2: k(3)?,
                    p1: m(4)?,
                    q1: m(5)?,
                    p2: m(6)?,
                    q2: m(7)?,
                    p3: m(8)?,
                    q3: m(9)?,
                }
            };
            let verdict = match check_interchange(&tower) {
                Ok(report) => report
                    .difference
                    .map(|d| format!("the two constructions differ at {d}")),
                Err(e @ CoreError::CompatibilityViolation { .. }) => Some(e.to_string()),
                Err(e) => return Err(e.into()),
            };
            results.push((objects.join(" "), verdict));
        }
        Property::LeftInvariance | Property::Haar => {
            expect_objects(property, objects, &[2])?;
            let g = doc.groupoid(&objects[0])?;
            let lambda = doc.kernel(&objects[1])?;
            let options = invariance_options(env)?;
            let verdict = if property == Property::Haar {
                haar_verdict(g, &lambda, &options)?
            } else {
                invariance_verdict(g, &lambda, &options)?
            };
            results.push((objects.join(" "), verdict));
        }
        Property::PiLambda => {
            expect_objects(property, objects, &[2])?;
            let verdict = pi_lambda_verdict(doc.family(&objects[0])?, doc.family(&objects[1])?)?;
            results.push((objects.join(" "), verdict));
        }
        Property::Reconstruction => {
            expect_objects(property, objects, &[4])?;
            let mm = MeasuredMap::new(
                doc.map(&objects[0])?,
                doc.measure(&objects[1])?,
                doc.measure(&objects[2])?,
            )?;
            let gamma = doc.kernel(&objects[3])?;
            let verdict = mm.reconstruction_defect(&gamma)?.map(|x| {
                let rebuilt = msk_core::integrate_measure(&gamma, mm.nu()).expect("spaces checked");
                let label = mm.mu().space().label(x);
                format!(
                    "at {label}: Σ ν(y)·γʸ({label}) = {} but μ({label}) = {}",
                    rebuilt.mass_at(x),
                    mm.mu().mass_at(x)
                )
            });
            results.push((objects.join(" "), verdict));
        }
    }
    Ok(render_checks(property.name(), &results))
}

fn render_checks(property: &str, results: &[(String, Verdict)]) -> Outcome {
    let mut stdout = String::new();
    let mut code = EXIT_PASS;
    if results.is_empty() {
        writeln!(stdout, "PASS {property} (nothing to check)").unwrap();
    }
    for (subject, verdict) in results {
        match verdict {
            None => writeln!(stdout, "PASS {property} {subject}").unwrap(),
            Some(witness) => {
                code = EXIT_FAIL;
                writeln!(stdout, "FAIL {property} {subject}").unwrap();
                writeln!(stdout, "  witness: {witness}").unwrap();
            }
        }
    }
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}

fn concentration_verdict(doc: &Document, name: &str) -> CmdResult<Verdict> {
    let entry = doc.kernel_entry(name)?;
    let witnesses = Kernel::concentration_witnesses(&entry.map, &entry.measures);
    Ok(witnesses.first().map(|(fiber, point, mass)| {
        let extra = match witnesses.len() {
            1 => String::new(),
            n => format!(" ({} more)", n - 1),
        };
        format!("fiber {fiber} puts mass {mass} on {point}, outside the fiber{extra}")
    }))
}

fn positivity_verdict(k: &Kernel) -> Verdict {
    k.positivity_witness().map(|(y, x)| {
        format!(
            "fiber {} gives zero mass to its point {}",
            k.codomain().label(y),
            k.domain().label(x)
        )
    })
}

fn square_verdict(alpha: &Kernel, beta: &Kernel) -> CmdResult<Verdict> {
    let report = check_square(alpha, beta)?;
    Ok(report
        .difference
        .map(|d| format!("β∘q*α and α∘p*β differ at {d}")))
}

fn invariance_verdict(
    g: &FiniteGroupoid,
    lambda: &Kernel,
    options: &InvarianceOptions,
) -> CmdResult<Verdict> {
    let sets = g.left_invariance_witness(lambda, options)?;
    let functions = g.left_invariance_fn_witness(lambda, options)?;
    Ok(match (sets, functions) {
        (None, None) => None,
        (Some(w), _) => Some(w.to_string()),
        (None, Some(w)) => Some(format!("{w} (function form only)")),
    })
}

fn haar_verdict(
    g: &FiniteGroupoid,
    lambda: &Kernel,
    options: &InvarianceOptions,
) -> CmdResult<Verdict> {
    Ok(match g.haar_failure(lambda, options)? {
        None => invariance_verdict(g, lambda, options)?,
        Some(HaarFailure::NotPositive { unit, arrow }) => Some(format!(
            "not positive: fiber {unit} gives zero mass to arrow {arrow}"
        )),
        Some(HaarFailure::NotInvariant(w)) => Some(format!("not left invariant: {w}")),
    })
}

fn pi_lambda_verdict(pi: &SetFamily, dynkin: &SetFamily) -> CmdResult<Verdict> {
    pi.ground().ensure_same(dynkin.ground())?;
    if pi.is_empty() {
        return Ok(Some(
            "the first family is empty, so it is not a π-system".into(),
        ));
    }
    if let Some((a, b)) = pi.pi_violation() {
        return Ok(Some(format!(
            "the first family is not a π-system: {a} ∩ {b} = {} is missing",
            a.intersection(&b)
        )));
    }
    if !dynkin.contains_ground() {
        return Ok(Some(
            "the second family is not a Dynkin system: it lacks the ground set".into(),
        ));
    }
    if let Some((a, b)) = dynkin.complement_violation() {
        return Ok(Some(format!(
            "the second family is not a Dynkin system: {a} ⊆ {b} but {} is missing",
            b.difference(&a)
        )));
    }
    if let Some(m) = pi.members().into_iter().find(|m| !dynkin.contains(m)) {
        return Ok(Some(format!(
            "{m} is in the π-system but not in the Dynkin system"
        )));
    }
    let sigma = pi.generated_sigma();
    Ok(sigma
        .members()
        .into_iter()
        .find(|m| !dynkin.contains(m))
        .map(|m| format!("{m} is in the generated σ-algebra but not in the Dynkin system")))
}

fn haar_verify(io: &Io, name: &str, env: &Env) -> CmdResult<Outcome> {
    let doc = load(&io.input, Validation::Lenient)?;
    let g = doc.groupoid(name)?;
    let options = invariance_options(env)?;
    let mut stdout = String::new();
    let mut code = EXIT_PASS;
    writeln!(
        stdout,
        "groupoid {name}: arrows {}, units {}, orbits {}",
        g.arrows().len(),
        g.units().len(),
        g.orbits().len()
    )
    .unwrap();
    let violations = g.validate();
    if !violations.is_empty() {
        writeln!(stdout, "FAIL axioms").unwrap();
        for v in &violations {
            writeln!(stdout, "  witness: {v}").unwrap();
        }
        return Ok(Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_FAIL,
        });
    }
    writeln!(stdout, "PASS axioms").unwrap();
    let mut systems = vec![("counting".to_string(), g.counting_system())];
    for (kname, entry) in &doc.kernels {
        if entry.map == *g.range() {
            let k = doc.kernel(kname)?;
            systems.push((format!("kernel {kname}"), k));
        }
    }
    for (label, k) in systems {
        match haar_verdict(g, &k, &options)? {
            None => writeln!(stdout, "PASS haar {label}").unwrap(),
            Some(w) => {
                code = EXIT_FAIL;
                writeln!(stdout, "FAIL haar {label}").unwrap();
                writeln!(stdout, "  witness: {w}").unwrap();
            }
        }
    }
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code,
    })
}

struct Row {
    check: &'static str,
    object: String,
    result: &'static str,
    witness: Option<String>,
}

fn report(io: &Io, env: &Env) -> CmdResult<Outcome> {
    let doc = load(&io.input, Validation::Lenient)?;
    let options = invariance_options(env)?;
    let mut rows: Vec<Row> = Vec::new();
    let mut push = |check: &'static str, object: String, verdict: Verdict| {
        rows.push(Row {
            check,
            object,
            result: if verdict.is_some() { "FAIL" } else { "PASS" },
            witness: verdict,
        })
    };

    let mut valid_kernels: Vec<(&String, Kernel)> = Vec::new();
    for name in doc.kernels.keys() {
        let verdict = concentration_verdict(&doc, name)?;
        if verdict.is_none() {
            valid_kernels.push((name, doc.kernel(name)?));
        }
        push("concentration", name.clone(), verdict);
    }
    let mut valid_groupoids: Vec<(&String, &FiniteGroupoid)> = Vec::new();
    for (name, g) in &doc.groupoids {
        let violations = g.validate();
        let verdict = violations.first().map(|v| match violations.len() {
            1 => v.to_string(),
            n => format!("{v} ({} more)", n - 1),
        });
        if verdict.is_none() {
            valid_groupoids.push((name, g));
        }
        push("groupoid-axioms", name.clone(), verdict);
    }
    for (i, (a, ka)) in valid_kernels.iter().enumerate() {
        for (b, kb) in &valid_kernels[i + 1..] {
            if ka.codomain() == kb.codomain() {
                push(
                    "square-commutes",
                    format!("{a} {b}"),
                    square_verdict(ka, kb)?,
                );
            }
        }
    }
    for (gname, g) in &valid_groupoids {
        for (kname, k) in &valid_kernels {
            if k.base_map() == g.range() {
                push(
                    "left-invariance",
                    format!("{gname} {kname}"),
                    invariance_verdict(g, k, &options)?,
                );
            }
        }
    }
    for (pname, pi) in &doc.families {
        for (dname, d) in &doc.families {
            let applicable = pname != dname
                && pi.ground() == d.ground()
                && !pi.is_empty()
                && pi.pi_violation().is_none()
                && d.is_dynkin()
                && pi.is_subfamily_of(d);
            if applicable {
                push(
                    "pi-lambda",
                    format!("{pname} {dname}"),
                    pi_lambda_verdict(pi, d)?,
                );
            }
        }
    }
    let mut info: Vec<(String, &'static str)> = Vec::new();
    for (name, k) in &valid_kernels {
        info.push((
            name.to_string(),
            if k.is_positive_on_open_sets() {
                "yes"
            } else {
                "no"
            },
        ));
    }

    let mut stdout = String::new();
    let w_check = rows
        .iter()
        .map(|r| r.check.len())
        .max()
        .unwrap_or(0)
        .max("CHECK".len());
    let w_object = rows
        .iter()
        .map(|r| r.object.chars().count())
        .max()
        .unwrap_or(0)
        .max("OBJECT".len());
    writeln!(
        stdout,
        "{:<w_check$}  {:<w_object$}  RESULT",
        "CHECK", "OBJECT"
    )
    .unwrap();
    for r in &rows {
        let pad = w_object - r.object.chars().count();
        writeln!(
            stdout,
            "{:<w_check$}  {}{}  {}",
            r.check,
            r.object,
            " ".repeat(pad),
            r.result
        )
        .unwrap();
    }
    let failed: Vec<&Row> = rows.iter().filter(|r| r.witness.is_some()).collect();
    writeln!(stdout, "{} checks, {} failed", rows.len(), failed.len()).unwrap();
    if !info.is_empty() {
        writeln!(stdout, "positive on open sets:").unwrap();
        for (name, yes) in &info {
            writeln!(stdout, "  {name}: {yes}").unwrap();
        }
    }
    if !failed.is_empty() {
        writeln!(stdout, "witnesses:").unwrap();
        for r in &failed {
            writeln!(
                stdout,
                "  {} {}: {}",
                r.check,
                r.object,
                r.witness.as_deref().unwrap_or("")
            )
            .unwrap();
        }
    }
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if failed.is_empty() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        },
    })
}
