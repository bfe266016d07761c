//! Pipeline specs: a host complex plus a list of levels, run along the
//! flat, blowup and literal paths and reported as JSON.

use serde_json::{json, Map, Value};

use crate::blowup::{et_via_blowups, sb_via_blowups};
use crate::building::{AtomicBuildingSet, Hypergraph};
use crate::catalog::{
    b_top, cycle_edges, default_labels, facet_complex_preset, graph_building_set, pa_levels,
    path_edges,
};
use crate::complexes::{Complex, Face};
use crate::error::{Error, Result};
use crate::fan::{faithfully_realizes, fan_export};
use crate::flat::{et, to_flat, FlatBuildingSet};
use crate::ground::GroundSet;
use crate::json::{
    atoms_from_json, bases_from_json, face_to_json, flat_from_json, flat_to_json,
    hypergraph_from_json, hypergraph_to_json,
};
use crate::oracle::Oracle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Level {
    /// Atomic building set; allowed only as the first level.
    BuildingSet(Hypergraph),
    Flat(FlatBuildingSet),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Emit {
    Bases,
    Fvector,
    Fan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathChoice {
    Flat,
    Oracle,
    Blowup,
    All,
}

impl PathChoice {
    pub fn name(self) -> &'static str {
        match self {
            PathChoice::Flat => "flat",
            PathChoice::Oracle => "oracle",
            PathChoice::Blowup => "blowup",
            PathChoice::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "flat" => Ok(PathChoice::Flat),
            "oracle" => Ok(PathChoice::Oracle),
            "blowup" => Ok(PathChoice::Blowup),
            "all" => Ok(PathChoice::All),
            _ => Err(Error::Input(format!("unknown path `{s}`"))),
        }
    }
}

impl Emit {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bases" => Ok(Emit::Bases),
            "fvector" => Ok(Emit::Fvector),
            "fan" => Ok(Emit::Fan),
            _ => Err(Error::Input(format!("unknown emit section `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub check_faithful: bool,
    pub emit: Vec<Emit>,
    pub path: PathChoice,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            check_faithful: false,
            emit: vec![Emit::Bases, Emit::Fvector],
            path: PathChoice::Flat,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineSpec {
    pub host: Complex,
    pub levels: Vec<Level>,
    pub options: RunOptions,
}

/// Size limits enforced by [`run`].
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_atoms: usize,
    pub max_levels: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: 6,
            max_levels: 4,
        }
    }
}

impl PipelineSpec {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        PipelineSpec::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Input("spec must be a JSON object".into()))?;
        let atoms = obj.get("atoms").map(atoms_from_json).transpose()?;
        let host_v = obj
            .get("host")
            .ok_or_else(|| Error::Input("missing `host`".into()))?;
        let host = if let Some(name) = host_v.get("preset") {
            let name = name
                .as_str()
                .ok_or_else(|| Error::Input("`preset` must be a string".into()))?;
            let c = facet_complex_preset(name)?;
            if let Some(g) = &atoms {
                if g != c.ground() {
                    return Err(Error::Input(format!(
                        "atoms {:?} differ from the atoms {:?} of preset `{name}`",
                        g.atoms(),
                        c.ground().atoms()
                    )));
                }
            }
            c
        } else if let Some(bases) = host_v.get("bases") {
            let g = atoms.ok_or_else(|| Error::Input("an inline host needs `atoms`".into()))?;
            bases_from_json(&g, bases)?
        } else {
            return Err(Error::Input("`host` needs `preset` or `bases`".into()));
        };
        let g = host.ground().clone();

        let mut levels = Vec::new();
        if let Some(ls) = obj.get("levels") {
            let ls = ls
                .as_array()
                .ok_or_else(|| Error::Input("`levels` must be an array".into()))?;
            for (i, l) in ls.iter().enumerate() {
                let level = if let Some(b) = l.get("building_set") {
                    if i != 0 {
                        return Err(Error::Input(format!(
                            "level {i}: `building_set` is only allowed first"
                        )));
                    }
                    Level::BuildingSet(hypergraph_from_json(&g, b)?)
                } else if let Some(d) = l.get("flat") {
                    Level::Flat(flat_from_json(&g, d)?)
                } else {
                    return Err(Error::Input(format!(
                        "level {i} needs `building_set` or `flat`"
                    )));
                };
                levels.push(level);
            }
        }

        let mut options = RunOptions::default();
        if let Some(o) = obj.get("options") {
            if let Some(c) = o.get("check_faithful") {
                options.check_faithful = c
                    .as_bool()
                    .ok_or_else(|| Error::Input("`check_faithful` must be a boolean".into()))?;
            }
            if let Some(e) = o.get("emit") {
                let e = e
                    .as_array()
                    .ok_or_else(|| Error::Input("`emit` must be an array".into()))?;
                options.emit = e
                    .iter()
                    .map(|s| {
                        s.as_str()
                            .ok_or_else(|| Error::Input("bad emit entry".into()))
                            .and_then(Emit::parse)
                    })
                    .collect::<Result<_>>()?;
            }
            if let Some(p) = o.get("path") {
                options.path = PathChoice::parse(
                    p.as_str()
                        .ok_or_else(|| Error::Input("`path` must be a string".into()))?,
                )?;
            }
        }
        options.emit.sort();
        options.emit.dedup();
        Ok(PipelineSpec {
            host,
            levels,
            options,
        })
    }

    pub fn to_json(&self) -> Value {
        let g = self.host.ground();
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|l| match l {
                Level::BuildingSet(h) => {
                    json!({ "building_set": hypergraph_to_json(g, h)["members"] })
                }
                Level::Flat(d) => json!({ "flat": flat_to_json(g, d)["members"] }),
            })
            .collect();
        let emit: Vec<&str> = self
            .options
            .emit
            .iter()
            .map(|e| match e {
                Emit::Bases => "bases",
                Emit::Fvector => "fvector",
                Emit::Fan => "fan",
            })
            .collect();
        json!({
            "atoms": g.atoms(),
            "host": { "bases": self.host.bases().iter().map(|b| face_to_json(g, b)).collect::<Vec<_>>() },
            "levels": levels,
            "options": {
                "check_faithful": self.options.check_faithful,
                "emit": emit,
                "path": self.options.path.name(),
            },
        })
    }
}

/// Bases present in only one of two complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDiff {
    pub only_left: Vec<Face>,
    pub only_right: Vec<Face>,
}

impl ComplexDiff {
    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }

    pub fn len(&self) -> usize {
        self.only_left.len() + self.only_right.len()
    }

    pub fn to_json(&self, g: &GroundSet) -> Value {
        json!({
            "only_left": self.only_left.iter().map(|f| face_to_json(g, f)).collect::<Vec<_>>(),
            "only_right": self.only_right.iter().map(|f| face_to_json(g, f)).collect::<Vec<_>>(),
        })
    }
}

pub fn diff_complexes(a: &Complex, b: &Complex) -> Result<ComplexDiff> {
    if a.ground() != b.ground() {
        return Err(Error::GroundMismatch);
    }
    let only = |x: &Complex, y: &Complex| {
        x.bases()
            .iter()
            .filter(|f| !y.bases().contains(f))
            .cloned()
            .collect()
    };
    Ok(ComplexDiff {
        only_left: only(a, b),
        only_right: only(b, a),
    })
}

/// Stage complexes of every path that was run.
#[derive(Clone, Debug)]
pub struct Report {
    pub ground: GroundSet,
    pub options: RunOptions,
    pub flat: Option<Vec<Complex>>,
    pub blowup: Option<Vec<Complex>>,
    pub oracle: Option<Vec<Complex>>,
    pub faithful: Option<Vec<bool>>,
    pub fan: Option<Value>,
    pub diffs: Vec<(usize, &'static str, &'static str, ComplexDiff)>,
}

impl Report {
    /// Stages of the primary path: flat when it ran, else blowup, else oracle.
    pub fn stages(&self) -> &[Complex] {
        self.flat
            .as_deref()
            .or(self.blowup.as_deref())
            .or(self.oracle.as_deref())
            .unwrap_or(&[])
    }

    pub fn paths_agree(&self) -> bool {
        self.diffs.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let g = &self.ground;
        let stages: Vec<Value> = self
            .stages()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut m = Map::new();
                m.insert("level".into(), i.into());
                m.insert("num_bases".into(), c.num_bases().into());
                m.insert("num_vertices".into(), c.vertices().len().into());
                if self.options.emit.contains(&Emit::Fvector) {
                    m.insert("fvector".into(), c.f_vector().into());
                }
                if self.options.emit.contains(&Emit::Bases) {
                    m.insert(
                        "bases".into(),
                        c.bases().iter().map(|b| face_to_json(g, b)).collect(),
                    );
                }
                Value::Object(m)
            })
            .collect();
        let cross_check = if self.options.path == PathChoice::All {
            json!({
                "paths": ["flat", "blowup", "oracle"],
                "agree": self.paths_agree(),
                "diffs": self.diffs.iter().map(|(level, l, r, d)| {
                    let mut v = json!({ "level": level, "left": l, "right": r });
                    let dj = d.to_json(g);
                    v["only_left"] = dj["only_left"].clone();
                    v["only_right"] = dj["only_right"].clone();
                    v
                }).collect::<Vec<_>>(),
            })
        } else {
            Value::Null
        };
        json!({
            "atoms": g.atoms(),
            "path": self.options.path.name(),
            "stages": stages,
            "faithful": self.faithful.clone().map_or(Value::Null, Value::from),
            "fan": self.fan.clone().unwrap_or(Value::Null),
            "cross_check": cross_check,
        })
    }
}

pub fn run(spec: &PipelineSpec) -> Result<Report> {
    run_with_limits(spec, Limits::default())
}

pub fn run_with_limits(spec: &PipelineSpec, limits: Limits) -> Result<Report> {
    let g = spec.host.ground().clone();
    if g.len() > limits.max_atoms {
        return Err(Error::CapExceeded(format!(
            "{} atoms exceed the limit of {}",
            g.len(),
            limits.max_atoms
        )));
    }
    if spec.levels.len() > limits.max_levels {
        return Err(Error::CapExceeded(format!(
            "{} levels exceed the limit of {}",
            spec.levels.len(),
            limits.max_levels
        )));
    }
    let opts = &spec.options;
    if opts.check_faithful {
        let report = faithfully_realizes(&spec.host);
        if !report.verdict {
            return Err(Error::NotFaithful(Box::new(report)));
        }
    }
    let path = opts.path;
    let want = |p: PathChoice| path == p || path == PathChoice::All;

    let flat = want(PathChoice::Flat).then(|| run_flat(spec)).transpose()?;
    let blowup = want(PathChoice::Blowup)
        .then(|| run_blowup(spec))
        .transpose()?;
    let oracle = want(PathChoice::Oracle)
        .then(|| run_oracle(spec))
        .transpose()?;

    let mut report = Report {
        ground: g,
        options: opts.clone(),
        flat,
        blowup,
        oracle,
        faithful: None,
        fan: None,
        diffs: Vec::new(),
    };

    if path == PathChoice::All {
        let flat = report.flat.as_deref().unwrap_or_default();
        for (name, other) in [("blowup", &report.blowup), ("oracle", &report.oracle)] {
            for (i, (a, b)) in flat
                .iter()
                .zip(other.as_deref().unwrap_or_default())
                .enumerate()
            {
                let d = diff_complexes(a, b)?;
                if !d.is_empty() {
                    report.diffs.push((i, "flat", name, d));
                }
            }
        }
    }
    if opts.check_faithful {
        report.faithful = Some(
            report
                .stages()
                .iter()
                .map(|c| faithfully_realizes(c).verdict)
                .collect(),
        );
    }
    if opts.emit.contains(&Emit::Fan) {
        let last = report.stages().last().unwrap_or(&spec.host);
        report.fan = Some(fan_export(last)?.to_json());
    }
    Ok(report)
}

fn flat_levels(spec: &PipelineSpec) -> Result<Vec<FlatBuildingSet>> {
    spec.levels
        .iter()
        .enumerate()
        .map(|(i, l)| match l {
            Level::BuildingSet(h) => AtomicBuildingSet::new(h.clone(), &spec.host)
                .and_then(|b| to_flat(&b, &spec.host))
                .map_err(|e| e.at_level(i)),
            Level::Flat(d) => Ok(d.clone()),
        })
        .collect()
}

fn run_flat(spec: &PipelineSpec) -> Result<Vec<Complex>> {
    let levels = flat_levels(spec)?;
    let mut cur = spec.host.clone();
    let mut stages = Vec::new();
    for (i, d) in levels.iter().enumerate() {
        cur = et(&cur, d).map_err(|e| e.at_level(i))?;
        stages.push(cur.clone());
    }
    Ok(stages)
}

fn run_blowup(spec: &PipelineSpec) -> Result<Vec<Complex>> {
    let mut cur = spec.host.clone();
    let mut stages = Vec::new();
    for (i, l) in spec.levels.iter().enumerate() {
        let step = match l {
            Level::BuildingSet(h) => {
                AtomicBuildingSet::new(h.clone(), &cur).and_then(|b| sb_via_blowups(&cur, &b))
            }
            Level::Flat(d) => et_via_blowups(&cur, d),
        };
        cur = step.map_err(|e| e.at_level(i))?;
        stages.push(cur.clone());
    }
    Ok(stages)
}

fn run_oracle(spec: &PipelineSpec) -> Result<Vec<Complex>> {
    let mut oracle = Oracle::new(spec.host.ground().clone())?;
    if spec.levels.len() > 3 {
        return Err(Error::CapExceeded(format!(
            "literal oracle takes at most 3 levels, got {}",
            spec.levels.len()
        )));
    }
    let mut cur = oracle.host(&spec.host)?;
    let mut stages = Vec::new();
    for (i, l) in spec.levels.iter().enumerate() {
        let step = match l {
            Level::BuildingSet(h) => oracle.level_from_atoms(h),
            Level::Flat(d) => oracle.level_from_flat(&cur, d),
        }
        .and_then(|b| oracle.literal_nt(&cur, &b));
        cur = step.map_err(|e| e.at_level(i))?;
        stages.push(oracle.flatten_complex(&cur));
    }
    Ok(stages)
}

/// Names accepted by [`catalog_spec`]; `N` stands for a dimension.
pub const CATALOG_NAMES: &[&str] = &[
    "simplex-N",
    "cube-N",
    "prism-N",
    "permutohedron-N",
    "associahedron-N",
    "cyclohedron-N",
    "pa-N",
    "tetra-edge",
    "tetra-chain",
];

fn spec_value(host: &Complex, levels: Vec<Level>, path: PathChoice) -> Value {
    PipelineSpec {
        host: host.clone(),
        levels,
        options: RunOptions {
            check_faithful: true,
            path,
            ..RunOptions::default()
        },
    }
    .to_json()
}

fn sums(g: &GroundSet, items: &[&str]) -> Result<FlatBuildingSet> {
    Ok(FlatBuildingSet::new(
        items
            .iter()
            .map(|s| g.parse_sum(s))
            .collect::<Result<Vec<_>>>()?,
    ))
}

/// A runnable pipeline spec for a named object.
pub fn catalog_spec(name: &str) -> Result<Value> {
    let dim = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|s| s.parse::<usize>().ok())
    };
    if dim("simplex-").is_some() || dim("cube-").is_some() || dim("prism-").is_some() {
        let host = facet_complex_preset(name)?;
        return Ok(spec_value(&host, Vec::new(), PathChoice::Flat));
    }
    let simplex = |n: usize| -> Result<Complex> {
        if n == 0 {
            return Err(Error::UnknownPreset(name.to_owned()));
        }
        facet_complex_preset(&format!("simplex-{n}"))
    };
    if let Some(n) = dim("permutohedron-") {
        let host = simplex(n)?;
        let top = b_top(&host)?.into_hypergraph();
        return Ok(spec_value(
            &host,
            vec![Level::BuildingSet(top)],
            PathChoice::All,
        ));
    }
    if let Some(n) = dim("associahedron-") {
        let host = simplex(n)?;
        let b = graph_building_set(&host, &path_edges(n + 1))?.into_hypergraph();
        return Ok(spec_value(
            &host,
            vec![Level::BuildingSet(b)],
            PathChoice::All,
        ));
    }
    if let Some(n) = dim("cyclohedron-") {
        let host = simplex(n)?;
        let b = graph_building_set(&host, &cycle_edges(n + 1))?.into_hypergraph();
        return Ok(spec_value(
            &host,
            vec![Level::BuildingSet(b)],
            PathChoice::All,
        ));
    }
    if let Some(n) = dim("pa-") {
        let host = simplex(n)?;
        let (top, d) = pa_levels(host.ground())?;
        let levels = vec![Level::BuildingSet(top.into_hypergraph()), Level::Flat(d)];
        return Ok(spec_value(&host, levels, PathChoice::Flat));
    }
    let g = GroundSet::new(default_labels(4))?;
    let tetra = facet_complex_preset("simplex-3")?;
    match name {
        "tetra-edge" => {
            let b0 = crate::json::hypergraph_from_json(
                &g,
                &json!([["x"], ["y"], ["z"], ["u"], ["x", "y"]]),
            )?;
            let levels = vec![Level::BuildingSet(b0), Level::Flat(sums(&g, &["2x+y"])?)];
            Ok(spec_value(&tetra, levels, PathChoice::All))
        }
        "tetra-chain" => {
            let levels = vec![
                Level::Flat(sums(&g, &["x+y", "x+y+z"])?),
                Level::Flat(sums(&g, &["2x+y", "2x+y+z", "2x+2y+z", "3x+2y+z"])?),
                Level::Flat(sums(&g, &["6x+5y+3z", "3x+3y+2z"])?),
            ];
            Ok(spec_value(&tetra, levels, PathChoice::All))
        }
        _ => Err(Error::UnknownPreset(name.to_owned())),
    }
}
