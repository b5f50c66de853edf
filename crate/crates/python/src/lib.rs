//! Python bindings for `msk_core`.
//!
//! Masses cross the boundary as `fractions.Fraction` on the way out and as
//! `Fraction`, `int` or `"p/q"` strings on the way in. Floats are refused so
//! nothing inexact reaches the core. Points are addressed by label.

use std::collections::HashMap;
use std::fmt::Display;

use msk_cli::{Document, Validation};
use msk_core::disintegration::{rn_derivative as core_rn_derivative, MeasuredMap as CoreMeasuredMap};
use msk_core::fibred::{check_interchange as core_check_interchange, FibredSquarePair, Tower};
use msk_core::groupoid::{
    disjoint_union, group_groupoid, pair_groupoid, FiniteGroupoid, GroupTable, GroupoidTables,
};
use msk_core::pullback::{check_square as core_check_square, PullbackSpace};
use msk_core::setsystems::{verify_pi_lambda as core_verify_pi_lambda, SetFamily as CoreSetFamily};
use msk_core::{FiniteSpace, Kernel as CoreKernel, Measure as CoreMeasure, Rational, SpaceMap, Subset};
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyFloat};

trait OrValueError<T> {
    fn py(self) -> PyResult<T>;
}

impl<T, E: Display> OrValueError<T> for Result<T, E> {
    fn py(self) -> PyResult<T> {
        self.map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if obj.is_instance_of::<PyFloat>() {
        return Err(PyTypeError::new_err("masses must be exact: use int, Fraction or a \"p/q\" string"));
    }
    obj.str()?.to_str()?.parse::<Rational>().py()
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn masses_from_dict(space: &FiniteSpace, masses: &Bound<'_, PyDict>) -> PyResult<CoreMeasure> {
    let mut dense = vec![Rational::zero(); space.len()];
    for (label, mass) in masses.iter() {
        let label: String = label.extract()?;
        dense[space.index_of(&label).py()?] = rational(&mass)?;
    }
    CoreMeasure::from_masses(space, dense).py()
}

fn measure_to_dict<'py>(py: Python<'py>, m: &CoreMeasure) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    for (label, mass) in m.space().points().iter().zip(m.masses()) {
        out.set_item(label, fraction(py, mass)?)?;
    }
    Ok(out)
}

fn subset(space: &FiniteSpace, labels: &[String]) -> PyResult<Subset> {
    space.subset(labels).py()
}

#[pyclass(name = "Space", module = "msk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Space {
    inner: FiniteSpace,
}

#[pymethods]
impl Space {
    #[new]
    fn new(id: String, points: Vec<String>) -> PyResult<Self> {
        Ok(Space { inner: FiniteSpace::new(id, points).py()? })
    }

    #[getter]
    fn id(&self) -> &str {
        self.inner.id()
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.inner.points().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Space({:?}, {:?})", self.inner.id(), self.inner.points())
    }
}

#[pyclass(name = "Map", module = "msk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Map {
    inner: SpaceMap,
}

#[pymethods]
impl Map {
    #[new]
    fn new(name: &str, domain: &Space, codomain: &Space, assignment: HashMap<String, String>) -> PyResult<Self> {
        let pairs: Vec<(String, String)> = assignment.into_iter().collect();
        Ok(Map { inner: SpaceMap::new(name, &domain.inner, &codomain.inner, &pairs).py()? })
    }

    #[staticmethod]
    fn identity(space: &Space) -> Self {
        Map { inner: SpaceMap::identity(&space.inner) }
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn domain(&self) -> Space {
        Space { inner: self.inner.domain().clone() }
    }

    #[getter]
    fn codomain(&self) -> Space {
        Space { inner: self.inner.codomain().clone() }
    }

    fn __call__(&self, label: &str) -> PyResult<String> {
        self.inner.apply_label(label).map(str::to_string).py()
    }

    /// Labels of the preimage of `label`.
    fn fiber(&self, label: &str) -> PyResult<Vec<String>> {
        let y = self.inner.codomain().index_of(label).py()?;
        Ok(self.inner.fiber(y).labels().into_iter().map(str::to_string).collect())
    }

    /// `self ∘ first`.
    fn after(&self, first: &Map) -> PyResult<Map> {
        Ok(Map { inner: self.inner.after(&first.inner).py()? })
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

#[pyclass(name = "Measure", module = "msk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Measure {
    inner: CoreMeasure,
}

#[pymethods]
impl Measure {
    #[new]
    fn new(space: &Space, masses: &Bound<'_, PyDict>) -> PyResult<Self> {
        Ok(Measure { inner: masses_from_dict(&space.inner, masses)? })
    }

    #[getter]
    fn space(&self) -> Space {
        Space { inner: self.inner.space().clone() }
    }

    fn masses<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        measure_to_dict(py, &self.inner)
    }

    /// Mass of a set of labels.
    fn mass<'py>(&self, py: Python<'py>, labels: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.mass_of(&subset(self.inner.space(), &labels)?))
    }

    fn total<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.total_mass())
    }

    fn support(&self) -> Vec<String> {
        self.inner.support().labels().into_iter().map(str::to_string).collect()
    }

    fn pushforward(&self, f: &Map) -> PyResult<Measure> {
        Ok(Measure { inner: self.inner.pushforward(&f.inner).py()? })
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

#[pyclass(name = "Kernel", module = "msk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Kernel {
    inner: CoreKernel,
}

#[pymethods]
impl Kernel {
    /// `fibers` maps each point `y` of the codomain to `{x: mass}`; missing
    /// fibers and points carry no mass.
    #[new]
    fn new(map: &Map, fibers: &Bound<'_, PyDict>) -> PyResult<Self> {
        let base = &map.inner;
        let mut measures = vec![CoreMeasure::zero(base.domain()); base.codomain().len()];
        for (y, fiber) in fibers.iter() {
            let y: String = y.extract()?;
            let fiber = fiber.cast_into::<PyDict>()?;
            measures[base.codomain().index_of(&y).py()?] = masses_from_dict(base.domain(), &fiber)?;
        }
        Ok(Kernel { inner: CoreKernel::new(base.clone(), measures).py()? })
    }

    #[staticmethod]
    fn counting(map: &Map) -> Self {
        Kernel { inner: CoreKernel::counting(map.inner.clone()) }
    }

    #[getter]
    fn base_map(&self) -> Map {
        Map { inner: self.inner.base_map().clone() }
    }

    fn fiber(&self, y: &str) -> PyResult<Measure> {
        Ok(Measure { inner: self.inner.fiber_measure_of(y).py()?.clone() })
    }

    fn fibers<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (y, m) in self.inner.codomain().points().iter().zip(self.inner.measures()) {
            out.set_item(y, measure_to_dict(py, m)?)?;
        }
        Ok(out)
    }

    /// `y ↦ λʸ(E)` for the set of labels `E`.
    fn evaluate<'py>(&self, py: Python<'py>, labels: Vec<String>) -> PyResult<Bound<'py, PyDict>> {
        let values = self.inner.evaluate(&subset(self.inner.domain(), &labels)?).py()?;
        let out = PyDict::new(py);
        for (y, v) in self.inner.codomain().points().iter().zip(&values) {
            out.set_item(y, fraction(py, v)?)?;
        }
        Ok(out)
    }

    /// `β ∘ self`.
    fn then(&self, beta: &Kernel) -> PyResult<Kernel> {
        Ok(Kernel { inner: self.inner.then(&beta.inner).py()? })
    }

    /// `∫ λʸ dν(y)`.
    fn integrate(&self, nu: &Measure) -> PyResult<Measure> {
        Ok(Measure { inner: msk_core::integrate_measure(&self.inner, &nu.inner).py()? })
    }

    fn is_positive_on_open_sets(&self) -> bool {
        self.inner.is_positive_on_open_sets()
    }

    fn is_probability_system(&self) -> bool {
        self.inner.is_probability_system()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

#[pyclass(name = "Pullback", module = "msk", frozen)]
struct Pullback {
    inner: PullbackSpace,
}

#[pymethods]
impl Pullback {
    #[new]
    fn new(p: &Map, q: &Map) -> PyResult<Self> {
        Ok(Pullback { inner: PullbackSpace::new(&p.inner, &q.inner).py()? })
    }

    #[getter]
    fn space(&self) -> Space {
        Space { inner: self.inner.space().clone() }
    }

    #[getter]
    fn proj_left(&self) -> Map {
        Map { inner: self.inner.proj_left().clone() }
    }

    #[getter]
    fn proj_right(&self) -> Map {
        Map { inner: self.inner.proj_right().clone() }
    }

    /// `q*α` on the right projection.
    fn lift_right(&self, alpha: &Kernel) -> PyResult<Kernel> {
        Ok(Kernel { inner: self.inner.lift_right(&alpha.inner).py()? })
    }

    /// `p*β` on the left projection.
    fn lift_left(&self, beta: &Kernel) -> PyResult<Kernel> {
        Ok(Kernel { inner: self.inner.lift_left(&beta.inner).py()? })
    }
}

/// Both sides of an identity between kernels and their first differing atom.
#[pyclass(name = "Comparison", module = "msk", frozen, get_all)]
struct Comparison {
    left: Kernel,
    right: Kernel,
    difference: Option<String>,
}

#[pymethods]
impl Comparison {
    fn __bool__(&self) -> bool {
        self.difference.is_none()
    }

    fn __repr__(&self) -> String {
        match &self.difference {
            None => "Comparison(equal)".to_string(),
            Some(d) => format!("Comparison({d})"),
        }
    }
}

#[pyclass(name = "MeasuredMap", module = "msk", frozen)]
struct MeasuredMap {
    inner: CoreMeasuredMap,
}

#[pymethods]
impl MeasuredMap {
    #[new]
    fn new(f: &Map, mu: &Measure, nu: &Measure) -> PyResult<Self> {
        let inner = CoreMeasuredMap::new(f.inner.clone(), mu.inner.clone(), nu.inner.clone()).py()?;
        Ok(MeasuredMap { inner })
    }

    fn is_measure_preserving(&self) -> bool {
        self.inner.is_measure_preserving()
    }

    fn is_measure_class_preserving(&self) -> bool {
        self.inner.is_measure_class_preserving()
    }

    fn disintegrate(&self) -> PyResult<Kernel> {
        Ok(Kernel { inner: self.inner.disintegrate().py()? })
    }

    fn is_disintegration(&self, gamma: &Kernel) -> PyResult<bool> {
        self.inner.is_disintegration(&gamma.inner).py()
    }

    /// Least `C` with `μ(K ∩ f⁻¹(E)) ≤ C·ν(E)` for every `E`.
    fn bounded_constant<'py>(&self, py: Python<'py>, k: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
        let k = subset(self.inner.map().domain(), &k)?;
        fraction(py, &self.inner.bounded_constant(&k).py()?)
    }
}

#[pyclass(name = "Groupoid", module = "msk", frozen)]
struct Groupoid {
    inner: FiniteGroupoid,
}

#[pymethods]
impl Groupoid {
    /// From tables keyed by arrow label. Only structure is checked here; see
    /// `validate` for the axioms.
    #[staticmethod]
    #[pyo3(signature = (id, arrows, units, range, source, compose, inverse))]
    fn from_tables(
        id: String,
        arrows: Vec<String>,
        units: Vec<String>,
        range: HashMap<String, String>,
        source: HashMap<String, String>,
        compose: Vec<(String, String, String)>,
        inverse: HashMap<String, String>,
    ) -> PyResult<Self> {
        let space = FiniteSpace::new(id, arrows).py()?;
        let tables = GroupoidTables {
            units,
            range: range.into_iter().collect(),
            source: source.into_iter().collect(),
            compose,
            inverse: inverse.into_iter().collect(),
        };
        Ok(Groupoid { inner: FiniteGroupoid::from_tables(&space, &tables).py()? })
    }

    #[staticmethod]
    fn pair(n: usize) -> Self {
        Groupoid { inner: pair_groupoid(n) }
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        Groupoid { inner: group_groupoid(&GroupTable::cyclic(n)) }
    }

    #[staticmethod]
    fn symmetric3() -> Self {
        Groupoid { inner: group_groupoid(&GroupTable::symmetric3()) }
    }

    fn disjoint_union(&self, other: &Groupoid) -> Self {
        Groupoid { inner: disjoint_union(&self.inner, &other.inner) }
    }

    #[getter]
    fn arrows(&self) -> Space {
        Space { inner: self.inner.arrows().clone() }
    }

    #[getter]
    fn units(&self) -> Space {
        Space { inner: self.inner.units().clone() }
    }

    #[getter]
    fn range(&self) -> Map {
        Map { inner: self.inner.range().clone() }
    }

    #[getter]
    fn source(&self) -> Map {
        Map { inner: self.inner.source().clone() }
    }

    /// `xy`, or `None` when `x` and `y` are not composable.
    fn compose(&self, x: &str, y: &str) -> PyResult<Option<String>> {
        let a = self.inner.arrows();
        let xy = self.inner.compose(a.index_of(x).py()?, a.index_of(y).py()?);
        Ok(xy.map(|i| a.label(i).to_string()))
    }

    fn inverse(&self, x: &str) -> PyResult<String> {
        let a = self.inner.arrows();
        Ok(a.label(self.inner.inverse(a.index_of(x).py()?)).to_string())
    }

    /// Failed axioms, empty for a valid groupoid.
    fn validate(&self) -> Vec<String> {
        self.inner.validate().iter().map(ToString::to_string).collect()
    }

    /// Orbits as lists of unit labels.
    fn orbits(&self) -> Vec<Vec<String>> {
        let units = self.inner.units();
        self.inner
            .orbits()
            .into_iter()
            .map(|o| o.into_iter().map(|u| units.label(u).to_string()).collect())
            .collect()
    }

    fn counting_system(&self) -> Kernel {
        Kernel { inner: self.inner.counting_system() }
    }

    /// The system on the range map with `λ^{r(x)}({x}) = weights[x]`.
    fn range_system(&self, weights: &Bound<'_, PyDict>) -> PyResult<Kernel> {
        let w = masses_from_dict(self.inner.arrows(), weights)?;
        Ok(Kernel { inner: self.inner.range_system(w.masses()).py()? })
    }

    /// `form` is `"sets"` or `"functions"`.
    #[pyo3(signature = (lam, form = "sets"))]
    fn is_left_invariant(&self, lam: &Kernel, form: &str) -> PyResult<bool> {
        match form {
            "sets" => self.inner.is_left_invariant_sets(&lam.inner).py(),
            "functions" => self.inner.is_left_invariant_fn(&lam.inner).py(),
            other => Err(PyValueError::new_err(format!("unknown form {other:?}"))),
        }
    }

    fn is_haar(&self, lam: &Kernel) -> PyResult<bool> {
        self.inner.is_haar(&lam.inner).py()
    }

    /// Why `lam` is not a Haar system, or `None` if it is.
    fn haar_failure(&self, lam: &Kernel) -> PyResult<Option<String>> {
        let failure = self.inner.haar_failure(&lam.inner, &Default::default()).py()?;
        Ok(failure.map(|f| f.to_string()))
    }
}

#[pyclass(name = "SetFamily", module = "msk", frozen)]
struct SetFamily {
    inner: CoreSetFamily,
}

#[pymethods]
impl SetFamily {
    #[new]
    fn new(ground: &Space, members: Vec<Vec<String>>) -> PyResult<Self> {
        Ok(SetFamily { inner: CoreSetFamily::from_labels(&ground.inner, &members).py()? })
    }

    #[staticmethod]
    fn agreement(mu: &Measure, nu: &Measure) -> PyResult<Self> {
        Ok(SetFamily { inner: CoreSetFamily::agreement_family(&mu.inner, &nu.inner).py()? })
    }

    fn members(&self) -> Vec<Vec<String>> {
        self.inner
            .members()
            .iter()
            .map(|s| s.labels().into_iter().map(str::to_string).collect())
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, labels: Vec<String>) -> PyResult<bool> {
        Ok(self.inner.contains(&subset(self.inner.ground(), &labels)?))
    }

    fn is_pi_system(&self) -> PyResult<bool> {
        self.inner.is_pi_system().py()
    }

    fn is_dynkin(&self) -> bool {
        self.inner.is_dynkin()
    }

    fn is_pre_dynkin(&self) -> bool {
        self.inner.is_pre_dynkin()
    }

    fn generated_sigma(&self) -> Self {
        SetFamily { inner: self.inner.generated_sigma() }
    }

    fn generated_dynkin(&self) -> Self {
        SetFamily { inner: self.inner.generated_dynkin() }
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// A parsed JSON document.
#[pyclass(name = "Document", module = "msk")]
struct PyDocument {
    inner: Document,
}

#[pymethods]
impl PyDocument {
    #[new]
    fn new() -> Self {
        PyDocument { inner: Document::default() }
    }

    /// Parses a document. With `strict=False` kernels that leak outside
    /// their fibers are loaded anyway, but `kernel` refuses them.
    #[staticmethod]
    #[pyo3(signature = (text, strict = true))]
    fn parse(text: &str, strict: bool) -> PyResult<Self> {
        let validation = if strict { Validation::Strict } else { Validation::Lenient };
        Ok(PyDocument { inner: msk_cli::parse(text, validation).py()? })
    }

    fn to_json(&self) -> String {
        msk_cli::serialize(&self.inner)
    }

    fn space(&self, name: &str) -> PyResult<Space> {
        Ok(Space { inner: self.inner.space(name).py()? })
    }

    fn map(&self, name: &str) -> PyResult<Map> {
        Ok(Map { inner: self.inner.map(name).py()? })
    }

    fn measure(&self, name: &str) -> PyResult<Measure> {
        Ok(Measure { inner: self.inner.measure(name).py()? })
    }

    fn kernel(&self, name: &str) -> PyResult<Kernel> {
        Ok(Kernel { inner: self.inner.kernel(name).py()? })
    }

    fn groupoid(&self, name: &str) -> PyResult<Groupoid> {
        Ok(Groupoid { inner: self.inner.groupoid(name).py()?.clone() })
    }

    fn family(&self, name: &str) -> PyResult<SetFamily> {
        Ok(SetFamily { inner: self.inner.family(name).py()?.clone() })
    }

    fn kernel_names(&self) -> Vec<String> {
        self.inner.kernels.keys().cloned().collect()
    }

    /// Adds `kernel` with its spaces and maps; returns what was new.
    fn add_kernel(&mut self, name: &str, kernel: &Kernel) -> PyResult<Vec<String>> {
        self.inner.add_kernel(name, &kernel.inner).py()
    }
}

/// `β ∘ α`.
#[pyfunction]
fn compose(alpha: &Kernel, beta: &Kernel) -> PyResult<Kernel> {
    Ok(Kernel { inner: msk_core::compose(&alpha.inner, &beta.inner).py()? })
}

/// `β ∘ q*α` against `α ∘ p*β` over the pullback of the two base maps.
#[pyfunction]
fn check_square(alpha: &Kernel, beta: &Kernel) -> PyResult<Comparison> {
    let report = core_check_square(&alpha.inner, &beta.inner).py()?;
    Ok(Comparison {
        left: Kernel { inner: report.via_right },
        right: Kernel { inner: report.via_left },
        difference: report.difference.map(|d| d.to_string()),
    })
}

/// `γ_X * γ_Y` on `f*g: X₁*Y₁ → X₂*Y₂`, with the pullbacks taken over
/// `(p1, q1)` and `(p2, q2)`.
#[pyfunction]
fn fibred_product(gx: &Kernel, gy: &Kernel, p1: &Map, q1: &Map, p2: &Map, q2: &Map) -> PyResult<Kernel> {
    let lower = PullbackSpace::new(&p1.inner, &q1.inner).py()?;
    let upper = PullbackSpace::new(&p2.inner, &q2.inner).py()?;
    let pair = FibredSquarePair::new(gx.inner.base_map(), gy.inner.base_map(), &lower, &upper).py()?;
    Ok(Kernel { inner: pair.product_kernel(&gx.inner, &gy.inner).py()? })
}

/// `(γ₂*ξ₂) ∘ (γ₁*ξ₁)` against `(γ₂∘γ₁) * (ξ₂∘ξ₁)`, lower legs derived from
/// `p3` and `q3`.
#[pyfunction]
fn check_interchange(
    gamma1: &Kernel,
    gamma2: &Kernel,
    xi1: &Kernel,
    xi2: &Kernel,
    p3: &Map,
    q3: &Map,
) -> PyResult<Comparison> {
    let tower = Tower::from_top(
        gamma1.inner.clone(),
        gamma2.inner.clone(),
        xi1.inner.clone(),
        xi2.inner.clone(),
        p3.inner.clone(),
        q3.inner.clone(),
    )
    .py()?;
    let report = core_check_interchange(&tower).py()?;
    Ok(Comparison {
        left: Kernel { inner: report.product_then_compose },
        right: Kernel { inner: report.compose_then_product },
        difference: report.difference.map(|d| d.to_string()),
    })
}

/// `dμ/dν` as `{y: density}`.
#[pyfunction]
fn rn_derivative<'py>(py: Python<'py>, mu: &Measure, nu: &Measure) -> PyResult<Bound<'py, PyDict>> {
    let h = core_rn_derivative(&mu.inner, &nu.inner).py()?;
    let out = PyDict::new(py);
    for (y, v) in h.space().points().iter().zip(h.values()) {
        out.set_item(y, fraction(py, v)?)?;
    }
    Ok(out)
}

/// Whether `σ(pi) ⊆ dynkin`; raises if either hypothesis fails.
#[pyfunction]
fn verify_pi_lambda(pi: &SetFamily, dynkin: &SetFamily) -> PyResult<bool> {
    core_verify_pi_lambda(&pi.inner, &dynkin.inner).py()
}

#[pymodule]
fn msk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Space>()?;
    m.add_class::<Map>()?;
    m.add_class::<Measure>()?;
    m.add_class::<Kernel>()?;
    m.add_class::<Pullback>()?;
    m.add_class::<Comparison>()?;
    m.add_class::<MeasuredMap>()?;
    m.add_class::<Groupoid>()?;
    m.add_class::<SetFamily>()?;
    m.add_class::<PyDocument>()?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(check_square, m)?)?;
    m.add_function(wrap_pyfunction!(fibred_product, m)?)?;
    m.add_function(wrap_pyfunction!(check_interchange, m)?)?;
    m.add_function(wrap_pyfunction!(rn_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(verify_pi_lambda, m)?)?;
    Ok(())
}
