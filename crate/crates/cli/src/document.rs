//! The JSON document format: one self-contained tree of named objects.
//!
//! See `docs/FORMAT.md` for the normative description.

use std::collections::BTreeMap;
use std::fmt;

use msk_core::groupoid::{FiniteGroupoid, GroupoidTables};
use msk_core::setsystems::SetFamily;
use msk_core::{FiniteSpace, Kernel, Measure, Rational, SpaceMap};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: &str = "1";

/// A load or lookup failure. `path` names the offending object, e.g.
/// `kernels.alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError {
    pub path: String,
    pub message: String,
}

impl DocError {
    fn new(path: impl Into<String>, message: impl fmt::Display) -> Self {
        DocError {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for DocError {}

/// How much validation [`parse`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    /// Everything: kernel concentration and groupoid axioms included.
    Strict,
    /// Structure only, so that violating kernels and groupoids can be loaded
    /// and diagnosed.
    Lenient,
}

/// Fiber measures over a map, not yet checked for concentration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelEntry {
    pub map: SpaceMap,
    pub measures: Vec<Measure>,
}

impl KernelEntry {
    pub fn from_kernel(k: &Kernel) -> Self {
        KernelEntry {
            map: k.base_map().clone(),
            measures: k.measures().to_vec(),
        }
    }

    pub fn kernel(&self) -> msk_core::Result<Kernel> {
        Kernel::new(self.map.clone(), self.measures.clone())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub spaces: BTreeMap<String, FiniteSpace>,
    pub maps: BTreeMap<String, SpaceMap>,
    pub measures: BTreeMap<String, Measure>,
    pub kernels: BTreeMap<String, KernelEntry>,
    pub groupoids: BTreeMap<String, FiniteGroupoid>,
    pub families: BTreeMap<String, SetFamily>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    spaces: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    groupoids: BTreeMap<String, RawGroupoid>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    maps: BTreeMap<String, RawMap>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    measures: BTreeMap<String, RawMeasure>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    kernels: BTreeMap<String, RawKernel>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    families: BTreeMap<String, RawFamily>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    domain: String,
    codomain: String,
    assignment: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    space: String,
    masses: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKernel {
    map: String,
    fibers: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupoid {
    arrows: Vec<String>,
    units: Vec<String>,
    range: BTreeMap<String, String>,
    source: BTreeMap<String, String>,
    compose: Vec<(String, String, String)>,
    inverse: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    ground: String,
    members: Vec<Vec<String>>,
}

fn parse_masses(
    path: &str,
    space: &FiniteSpace,
    masses: &BTreeMap<String, String>,
) -> Result<Measure, DocError> {
    let pairs = masses
        .iter()
        .map(|(label, value)| {
            let mass: Rational = value
                .parse()
                .map_err(|e| DocError::new(format!("{path}.{label}"), e))?;
            Ok((label.as_str(), mass))
        })
        .collect::<Result<Vec<_>, DocError>>()?;
    Measure::from_pairs(space, &pairs).map_err(|e| DocError::new(path, e))
}

fn mass_table(m: &Measure, keep: impl Fn(usize) -> bool) -> BTreeMap<String, String> {
    m.masses()
        .iter()
        .enumerate()
        .filter(|(x, mass)| keep(*x) || !mass.is_zero())
        .map(|(x, mass)| (m.space().label(x).to_string(), mass.to_string()))
        .collect()
}

/// Parses and validates a document.
pub fn parse(text: &str, validation: Validation) -> Result<Document, DocError> {
    let raw: RawDocument =
        serde_json::from_str(text).map_err(|e| DocError::new("", format!("parse error: {e}")))?;
    if raw.format_version != FORMAT_VERSION {
        return Err(DocError::new(
            "format_version",
            format!(
                "unsupported version {:?}, expected {FORMAT_VERSION:?}",
                raw.format_version
            ),
        ));
    }
    let mut doc = Document::default();

    for (name, points) in &raw.spaces {
        let space = FiniteSpace::new(name.clone(), points.iter().cloned())
            .map_err(|e| DocError::new(format!("spaces.{name}"), e))?;
        doc.spaces.insert(name.clone(), space);
    }

    for (name, g) in &raw.groupoids {
        let path = format!("groupoids.{name}");
        for derived in [name.clone(), format!("{name}.units")] {
            if doc.spaces.contains_key(&derived) {
                return Err(DocError::new(
                    &path,
                    format!("space name {derived:?} is already taken"),
                ));
            }
        }
        let arrows = FiniteSpace::new(name.clone(), g.arrows.iter().cloned())
            .map_err(|e| DocError::new(format!("{path}.arrows"), e))?;
        let pairs =
            |m: &BTreeMap<String, String>| m.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        let tables = GroupoidTables {
            units: g.units.clone(),
            range: pairs(&g.range),
            source: pairs(&g.source),
            compose: g.compose.clone(),
            inverse: pairs(&g.inverse),
        };
        let groupoid =
            FiniteGroupoid::from_tables(&arrows, &tables).map_err(|e| DocError::new(&path, e))?;
        if validation == Validation::Strict {
            groupoid
                .ensure_valid()
                .map_err(|e| DocError::new(&path, e))?;
        }
        doc.groupoids.insert(name.clone(), groupoid);
    }

    for (name, m) in &raw.maps {
        let path = format!("maps.{name}");
        if doc.derived_map(name).is_some() {
            return Err(DocError::new(
                &path,
                "name is taken by a groupoid's range or source map",
            ));
        }
        let domain = doc
            .space(&m.domain)
            .map_err(|e| DocError::new(format!("{path}.domain"), e.message))?;
        let codomain = doc
            .space(&m.codomain)
            .map_err(|e| DocError::new(format!("{path}.codomain"), e.message))?;
        let pairs: Vec<(&String, &String)> = m.assignment.iter().collect();
        let map = SpaceMap::new(name.clone(), &domain, &codomain, &pairs)
            .map_err(|e| DocError::new(&path, e))?;
        doc.maps.insert(name.clone(), map);
    }

    for (name, m) in &raw.measures {
        let path = format!("measures.{name}");
        let space = doc
            .space(&m.space)
            .map_err(|e| DocError::new(format!("{path}.space"), e.message))?;
        let measure = parse_masses(&format!("{path}.masses"), &space, &m.masses)?;
        doc.measures.insert(name.clone(), measure);
    }

    for (name, k) in &raw.kernels {
        let path = format!("kernels.{name}");
        let map = doc
            .map(&k.map)
            .map_err(|e| DocError::new(format!("{path}.map"), e.message))?;
        let mut measures = vec![Measure::zero(map.domain()); map.codomain().len()];
        for (y, fiber) in &k.fibers {
            let fpath = format!("{path}.fibers.{y}");
            let yi = map
                .codomain()
                .index_of(y)
                .map_err(|e| DocError::new(&fpath, e))?;
            measures[yi] = parse_masses(&fpath, map.domain(), fiber)?;
        }
        let entry = KernelEntry { map, measures };
        if validation == Validation::Strict {
            entry.kernel().map_err(|e| DocError::new(&path, e))?;
        }
        doc.kernels.insert(name.clone(), entry);
    }

    for (name, f) in &raw.families {
        let path = format!("families.{name}");
        let ground = doc
            .space(&f.ground)
            .map_err(|e| DocError::new(format!("{path}.ground"), e.message))?;
        let family =
            SetFamily::from_labels(&ground, &f.members).map_err(|e| DocError::new(&path, e))?;
        doc.families.insert(name.clone(), family);
    }

    Ok(doc)
}

/// Canonical text: sorted keys, two-space indentation, trailing newline.
pub fn serialize(doc: &Document) -> String {
    let raw = RawDocument {
        format_version: FORMAT_VERSION.to_string(),
        spaces: doc
            .spaces
            .iter()
            .map(|(name, s)| (name.clone(), s.points().to_vec()))
            .collect(),
        groupoids: doc
            .groupoids
            .iter()
            .map(|(name, g)| {
                let t = g.tables();
                let table = |pairs: Vec<(String, String)>| pairs.into_iter().collect();
                (
                    name.clone(),
                    RawGroupoid {
                        arrows: g.arrows().points().to_vec(),
                        units: t.units,
                        range: table(t.range),
                        source: table(t.source),
                        compose: t.compose,
                        inverse: table(t.inverse),
                    },
                )
            })
            .collect(),
        maps: doc
            .maps
            .iter()
            .map(|(name, m)| {
                let assignment = (0..m.domain().len())
                    .map(|x| {
                        (
                            m.domain().label(x).to_string(),
                            m.codomain().label(m.apply(x)).to_string(),
                        )
                    })
                    .collect();
                (
                    name.clone(),
                    RawMap {
                        domain: m.domain().id().to_string(),
                        codomain: m.codomain().id().to_string(),
                        assignment,
                    },
                )
            })
            .collect(),
        measures: doc
            .measures
            .iter()
            .map(|(name, m)| {
                (
                    name.clone(),
                    RawMeasure {
                        space: m.space().id().to_string(),
                        masses: mass_table(m, |_| true),
                    },
                )
            })
            .collect(),
        kernels: doc
            .kernels
            .iter()
            .map(|(name, k)| {
                let fibers = k
                    .measures
                    .iter()
                    .enumerate()
                    .map(|(y, m)| {
                        (
                            k.map.codomain().label(y).to_string(),
                            mass_table(m, |x| k.map.apply(x) == y),
                        )
                    })
                    .collect();
                (
                    name.clone(),
                    RawKernel {
                        map: k.map.name().to_string(),
                        fibers,
                    },
                )
            })
            .collect(),
        families: doc
            .families
            .iter()
            .map(|(name, f)| {
                let members = f
                    .members()
                    .iter()
                    .map(|s| s.labels().into_iter().map(String::from).collect())
                    .collect();
                (
                    name.clone(),
                    RawFamily {
                        ground: f.ground().id().to_string(),
                        members,
                    },
                )
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("plain data serializes");
    text.push('\n');
    text
}

impl Document {
    fn derived_space(&self, name: &str) -> Option<FiniteSpace> {
        if let Some(g) = self.groupoids.get(name) {
            return Some(g.arrows().clone());
        }
        let base = name.strip_suffix(".units")?;
        self.groupoids.get(base).map(|g| g.units().clone())
    }

    fn derived_map(&self, name: &str) -> Option<SpaceMap> {
        if let Some(base) = name.strip_suffix(".range") {
            return self.groupoids.get(base).map(|g| g.range().clone());
        }
        let base = name.strip_suffix(".source")?;
        self.groupoids.get(base).map(|g| g.source().clone())
    }

    /// A declared space, or the arrows (`G`) or units (`G.units`) of a groupoid.
    pub fn space(&self, name: &str) -> Result<FiniteSpace, DocError> {
        self.spaces
            .get(name)
            .cloned()
            .or_else(|| self.derived_space(name))
            .ok_or_else(|| DocError::new(format!("spaces.{name}"), "no such space"))
    }

    /// A declared map, or a groupoid's `G.range` / `G.source`.
    pub fn map(&self, name: &str) -> Result<SpaceMap, DocError> {
        self.maps
            .get(name)
            .cloned()
            .or_else(|| self.derived_map(name))
            .ok_or_else(|| DocError::new(format!("maps.{name}"), "no such map"))
    }

    pub fn measure(&self, name: &str) -> Result<Measure, DocError> {
        self.measures
            .get(name)
            .cloned()
            .ok_or_else(|| DocError::new(format!("measures.{name}"), "no such measure"))
    }

    pub fn kernel_entry(&self, name: &str) -> Result<&KernelEntry, DocError> {
        self.kernels
            .get(name)
            .ok_or_else(|| DocError::new(format!("kernels.{name}"), "no such kernel"))
    }

    /// A kernel, checked for concentration.
    pub fn kernel(&self, name: &str) -> Result<Kernel, DocError> {
        self.kernel_entry(name)?
            .kernel()
            .map_err(|e| DocError::new(format!("kernels.{name}"), e))
    }

    pub fn groupoid(&self, name: &str) -> Result<&FiniteGroupoid, DocError> {
        self.groupoids
            .get(name)
            .ok_or_else(|| DocError::new(format!("groupoids.{name}"), "no such groupoid"))
    }

    pub fn family(&self, name: &str) -> Result<&SetFamily, DocError> {
        self.families
            .get(name)
            .ok_or_else(|| DocError::new(format!("families.{name}"), "no such family"))
    }

    /// Adds `space` under its id unless an identical one is already present.
    /// Returns whether anything was added.
    pub fn add_space(&mut self, space: &FiniteSpace) -> Result<bool, DocError> {
        let name = space.id();
        match self
            .spaces
            .get(name)
            .cloned()
            .or_else(|| self.derived_space(name))
        {
            Some(existing) if &existing == space => Ok(false),
            Some(_) => Err(DocError::new(
                format!("spaces.{name}"),
                "a different space with this name already exists",
            )),
            None => {
                self.spaces.insert(name.to_string(), space.clone());
                Ok(true)
            }
        }
    }

    /// Adds `map` and its spaces under their own names. Returns the names of
    /// new entries.
    pub fn add_map(&mut self, map: &SpaceMap) -> Result<Vec<String>, DocError> {
        let mut added = Vec::new();
        for s in [map.domain(), map.codomain()] {
            if self.add_space(s)? {
                added.push(format!("space {}", s.id()));
            }
        }
        let name = map.name();
        match self
            .maps
            .get(name)
            .cloned()
            .or_else(|| self.derived_map(name))
        {
            Some(existing) if existing == *map && existing.domain() == map.domain() => {}
            Some(_) => {
                return Err(DocError::new(
                    format!("maps.{name}"),
                    "a different map with this name already exists",
                ))
            }
            None => {
                self.maps.insert(name.to_string(), map.clone());
                added.push(format!("map {name}"));
            }
        }
        Ok(added)
    }

    /// Adds `kernel` as `name`, with its map and spaces.
    pub fn add_kernel(&mut self, name: &str, kernel: &Kernel) -> Result<Vec<String>, DocError> {
        let mut added = self.add_map(kernel.base_map())?;
        let entry = KernelEntry::from_kernel(kernel);
        match self.kernels.get(name) {
            Some(existing) if *existing == entry => {}
            Some(_) => {
                return Err(DocError::new(
                    format!("kernels.{name}"),
                    "a different kernel with this name already exists",
                ))
            }
            None => {
                self.kernels.insert(name.to_string(), entry);
                added.push(format!("kernel {name}"));
            }
        }
        Ok(added)
    }
}
