//! Line-oriented text manifests:
//!
//! ```text
//! format_version=1
//! [ring]
//! n=4
//!
//! [module A]
//! factors=2,4
//!
//! [morphism f]
//! from=A
//! to=A
//! rows=1,0;0,2
//!
//! [rep R]
//! f=f
//! ```
//!
//! Further sections: `[diagram D]` (`objects=`, `edges=0-1:f;...`, with
//! `d/s` pairs for diagrams of representations), `[filtration P]` followed
//! by its `[step P/i]` sections, and free-form `[result X]` records.
//! Serialization is canonical, so `serialize(parse(text)) == text` for any
//! serializer output.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::filtration::{Filtration, FiltrationConfig, FiltrationStep};
use crate::finmod::{Arrow, DirectedSystem, Element, FiniteModule, ModuleMorphism, Ring, Submodule};
use crate::rep_a2::{RepA2, RepArrow, RepDiagram, RepMorphism, SubRep};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// One morphism name for diagrams of modules, two (`d`, `s`) for
    /// diagrams of representations.
    pub maps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub adjoined: usize,
    pub seeds: usize,
    pub size: BigUint,
    pub s1: Vec<Element>,
    pub s2: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record {
    Module {
        name: String,
        module: FiniteModule,
    },
    Morphism {
        name: String,
        from: String,
        to: String,
        morphism: ModuleMorphism,
    },
    Rep {
        name: String,
        map: String,
    },
    Diagram {
        name: String,
        objects: Vec<String>,
        edges: Vec<Edge>,
    },
    Filtration {
        name: String,
        rep: String,
        kappa: u64,
        steps: Vec<StepRecord>,
    },
    Result {
        name: String,
        fields: Vec<(String, String)>,
    },
}

impl Record {
    pub fn name(&self) -> &str {
        match self {
            Record::Module { name, .. }
            | Record::Morphism { name, .. }
            | Record::Rep { name, .. }
            | Record::Diagram { name, .. }
            | Record::Filtration { name, .. }
            | Record::Result { name, .. } => name,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Record::Module { .. } => "module",
            Record::Morphism { .. } => "morphism",
            Record::Rep { .. } => "rep",
            Record::Diagram { .. } => "diagram",
            Record::Filtration { .. } => "filtration",
            Record::Result { .. } => "result",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub format_version: u32,
    pub ring: Ring,
    pub records: Vec<Record>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\''))
}

fn lookup_error(kind: &str, name: &str) -> Error {
    Error::Precondition(format!("no {kind} named {name}"))
}

impl Manifest {
    pub fn new(ring: &Ring) -> Manifest {
        Manifest {
            format_version: FORMAT_VERSION,
            ring: ring.clone(),
            records: Vec::new(),
        }
    }

    fn find(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name() == name)
    }

    fn push(&mut self, record: Record) -> Result<()> {
        if !valid_name(record.name()) {
            return Err(Error::Precondition(format!("invalid name {:?}", record.name())));
        }
        if self.find(record.name()).is_some() {
            return Err(Error::Precondition(format!(
                "duplicate name {}",
                record.name()
            )));
        }
        self.records.push(record);
        Ok(())
    }

    pub fn add_module(&mut self, name: &str, module: &FiniteModule) -> Result<()> {
        self.ring.ensure_same(module.ring())?;
        self.push(Record::Module {
            name: name.to_string(),
            module: module.clone(),
        })
    }

    /// Names a module, reusing an existing record holding the same module.
    fn ensure_module(&mut self, preferred: &str, module: &FiniteModule) -> Result<String> {
        if let Some(Record::Module { name, .. }) = self.records.iter().find(
            |r| matches!(r, Record::Module { module: m, .. } if m == module),
        ) {
            return Ok(name.clone());
        }
        self.add_module(preferred, module)?;
        Ok(preferred.to_string())
    }

    /// Adds a morphism, adding `<name>.src` and `<name>.dst` modules unless
    /// equal modules are already present.
    pub fn add_morphism(&mut self, name: &str, f: &ModuleMorphism) -> Result<()> {
        let from = self.ensure_module(&format!("{name}.src"), f.source())?;
        let to = self.ensure_module(&format!("{name}.dst"), f.target())?;
        self.push(Record::Morphism {
            name: name.to_string(),
            from,
            to,
            morphism: f.clone(),
        })
    }

    /// Adds a representation with its map named `<name>.f`.
    pub fn add_rep(&mut self, name: &str, rep: &RepA2) -> Result<()> {
        let map = format!("{name}.f");
        self.add_morphism(&map, &rep.f)?;
        self.push(Record::Rep {
            name: name.to_string(),
            map,
        })
    }

    pub fn add_result(&mut self, name: &str, fields: Vec<(String, String)>) -> Result<()> {
        for (k, v) in &fields {
            if k.is_empty() || k.contains('=') || k.contains('\n') || v.contains('\n') {
                return Err(Error::Precondition(format!("invalid result field {k:?}")));
            }
        }
        self.push(Record::Result {
            name: name.to_string(),
            fields,
        })
    }

    /// Adds a directed system of modules; arrows become morphisms named
    /// `<name>.<from>-<to>`.
    pub fn add_system(&mut self, name: &str, system: &DirectedSystem) -> Result<()> {
        let mut objects = Vec::new();
        for (i, m) in system.objects.iter().enumerate() {
            let n = format!("{name}.{i}");
            self.add_module(&n, m)?;
            objects.push(n);
        }
        let mut edges = Vec::new();
        for a in &system.arrows {
            let n = format!("{name}.{}-{}", a.from, a.to);
            self.push(Record::Morphism {
                name: n.clone(),
                from: objects[a.from].clone(),
                to: objects[a.to].clone(),
                morphism: a.map.clone(),
            })?;
            edges.push(Edge {
                from: a.from,
                to: a.to,
                maps: vec![n],
            });
        }
        self.push(Record::Diagram {
            name: name.to_string(),
            objects,
            edges,
        })
    }

    pub fn add_filtration(&mut self, name: &str, filtration: &Filtration) -> Result<()> {
        let rep = format!("{name}.target");
        self.add_rep(&rep, &filtration.target)?;
        let steps = filtration
            .steps
            .iter()
            .map(|s| StepRecord {
                adjoined: s.adjoined,
                seeds: s.seeds,
                size: s.quotient_size.clone(),
                s1: s.sub.s1.generators().to_vec(),
                s2: s.sub.s2.generators().to_vec(),
            })
            .collect();
        self.push(Record::Filtration {
            name: name.to_string(),
            rep,
            kappa: filtration.config.kappa,
            steps,
        })
    }

    pub fn module(&self, name: &str) -> Result<&FiniteModule> {
        match self.find(name) {
            Some(Record::Module { module, .. }) => Ok(module),
            _ => Err(lookup_error("module", name)),
        }
    }

    pub fn morphism(&self, name: &str) -> Result<&ModuleMorphism> {
        match self.find(name) {
            Some(Record::Morphism { morphism, .. }) => Ok(morphism),
            _ => Err(lookup_error("morphism", name)),
        }
    }

    pub fn rep(&self, name: &str) -> Result<RepA2> {
        match self.find(name) {
            Some(Record::Rep { map, .. }) => Ok(RepA2::new(self.morphism(map)?.clone())),
            _ => Err(lookup_error("rep", name)),
        }
    }

    /// Names of all records of one kind, in file order.
    pub fn names(&self, kind: &str) -> Vec<&str> {
        self.records
            .iter()
            .filter(|r| r.kind() == kind)
            .map(Record::name)
            .collect()
    }

    pub fn result(&self, name: &str) -> Result<&[(String, String)]> {
        match self.find(name) {
            Some(Record::Result { fields, .. }) => Ok(fields),
            _ => Err(lookup_error("result", name)),
        }
    }

    /// A diagram whose objects are modules.
    pub fn system(&self, name: &str) -> Result<DirectedSystem> {
        let Some(Record::Diagram { objects, edges, .. }) = self.find(name) else {
            return Err(lookup_error("diagram", name));
        };
        let objects = objects
            .iter()
            .map(|o| self.module(o).cloned())
            .collect::<Result<Vec<_>>>()?;
        let arrows = edges
            .iter()
            .map(|e| match e.maps.as_slice() {
                [m] => Ok(Arrow {
                    from: e.from,
                    to: e.to,
                    map: self.morphism(m)?.clone(),
                }),
                _ => Err(Error::Precondition(format!(
                    "edge {}-{} of a module diagram needs one map",
                    e.from, e.to
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DirectedSystem { objects, arrows })
    }

    /// A diagram whose objects are representations.
    pub fn rep_diagram(&self, name: &str) -> Result<RepDiagram> {
        let Some(Record::Diagram { objects, edges, .. }) = self.find(name) else {
            return Err(lookup_error("diagram", name));
        };
        let objects = objects
            .iter()
            .map(|o| self.rep(o))
            .collect::<Result<Vec<_>>>()?;
        let arrows = edges
            .iter()
            .map(|e| match e.maps.as_slice() {
                [d, s] => {
                    let (src, dst) = objects
                        .get(e.from)
                        .zip(objects.get(e.to))
                        .ok_or_else(|| Error::Dimension(format!("edge {}-{} out of range", e.from, e.to)))?;
                    Ok(RepArrow {
                        from: e.from,
                        to: e.to,
                        map: RepMorphism::new(
                            src,
                            dst,
                            self.morphism(d)?.clone(),
                            self.morphism(s)?.clone(),
                        )?,
                    })
                }
                _ => Err(Error::Precondition(format!(
                    "edge {}-{} of a representation diagram needs a d/s pair",
                    e.from, e.to
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RepDiagram { objects, arrows })
    }

    /// Whether a diagram's objects are representations (rather than modules).
    pub fn diagram_of_reps(&self, name: &str) -> Result<bool> {
        let Some(Record::Diagram { objects, .. }) = self.find(name) else {
            return Err(lookup_error("diagram", name));
        };
        Ok(objects
            .first()
            .is_some_and(|o| matches!(self.find(o), Some(Record::Rep { .. }))))
    }

    pub fn filtration(&self, name: &str) -> Result<Filtration> {
        let Some(Record::Filtration {
            rep, kappa, steps, ..
        }) = self.find(name)
        else {
            return Err(lookup_error("filtration", name));
        };
        let target = self.rep(rep)?;
        let steps = steps
            .iter()
            .map(|s| {
                let sub = SubRep::new(
                    &target,
                    Submodule::new(target.m1(), s.s1.clone())?,
                    Submodule::new(target.m2(), s.s2.clone())?,
                )?;
                Ok(FiltrationStep {
                    sub,
                    adjoined: s.adjoined,
                    seeds: s.seeds,
                    quotient_size: s.size.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Filtration {
            target,
            config: FiltrationConfig {
                kappa: *kappa,
                max_adjoined: None,
            },
            steps,
        })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "format_version={}", self.format_version);
        let _ = writeln!(out, "[ring]");
        let _ = writeln!(out, "n={}", self.ring.modulus());
        for r in &self.records {
            out.push('\n');
            match r {
                Record::Module { name, module } => {
                    let _ = writeln!(out, "[module {name}]");
                    let _ = writeln!(out, "factors={}", join_u64(module.factors()));
                }
                Record::Morphism {
                    name,
                    from,
                    to,
                    morphism,
                } => {
                    let _ = writeln!(out, "[morphism {name}]");
                    let _ = writeln!(out, "from={from}");
                    let _ = writeln!(out, "to={to}");
                    let _ = writeln!(out, "rows={}", join_rows(&morphism.rows()));
                }
                Record::Rep { name, map } => {
                    let _ = writeln!(out, "[rep {name}]");
                    let _ = writeln!(out, "f={map}");
                }
                Record::Diagram {
                    name,
                    objects,
                    edges,
                } => {
                    let _ = writeln!(out, "[diagram {name}]");
                    let _ = writeln!(out, "objects={}", objects.join(","));
                    let edges: Vec<String> = edges
                        .iter()
                        .map(|e| format!("{}-{}:{}", e.from, e.to, e.maps.join("/")))
                        .collect();
                    let _ = writeln!(out, "edges={}", edges.join(";"));
                }
                Record::Filtration {
                    name,
                    rep,
                    kappa,
                    steps,
                } => {
                    let _ = writeln!(out, "[filtration {name}]");
                    let _ = writeln!(out, "rep={rep}");
                    let _ = writeln!(out, "kappa={kappa}");
                    let _ = writeln!(out, "steps={}", steps.len());
                    for (i, s) in steps.iter().enumerate() {
                        let _ = writeln!(out, "[step {name}/{i}]");
                        let _ = writeln!(out, "adjoined={}", s.adjoined);
                        let _ = writeln!(out, "seeds={}", s.seeds);
                        let _ = writeln!(out, "size={}", s.size);
                        let _ = writeln!(out, "s1={}", join_rows(&s.s1));
                        let _ = writeln!(out, "s2={}", join_rows(&s.s2));
                    }
                }
                Record::Result { name, fields } => {
                    let _ = writeln!(out, "[result {name}]");
                    for (k, v) in fields {
                        let _ = writeln!(out, "{k}={v}");
                    }
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Manifest> {
        Parser::default().run(text)
    }
}

fn join_u64(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn join_rows(rows: &[Vec<u64>]) -> String {
    if rows.iter().all(Vec::is_empty) {
        return String::new();
    }
    rows.iter().map(|r| join_u64(r)).collect::<Vec<_>>().join(";")
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_u64(line: usize, s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| parse_err(line, format!("expected an unsigned integer, got {s:?}")))
}

fn parse_list(line: usize, s: &str) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| parse_u64(line, x)).collect()
}

/// `rows` lines of `cols` entries each; an empty string when either is 0.
fn parse_matrix(line: usize, s: &str, rows: usize, cols: usize) -> Result<Vec<Vec<u64>>> {
    if rows == 0 || cols == 0 {
        if !s.trim().is_empty() {
            return Err(parse_err(line, "expected no entries for an empty matrix"));
        }
        return Ok(vec![Vec::new(); rows]);
    }
    let parsed: Vec<Vec<u64>> = s
        .split(';')
        .map(|r| parse_list(line, r))
        .collect::<Result<_>>()?;
    if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
        return Err(parse_err(
            line,
            format!("expected {rows} rows of {cols} entries"),
        ));
    }
    Ok(parsed)
}

/// Generators of a submodule of a module of the given rank.
fn parse_elements(line: usize, s: &str, rank: usize) -> Result<Vec<Element>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let parsed: Vec<Vec<u64>> = s
        .split(';')
        .map(|r| parse_list(line, r))
        .collect::<Result<_>>()?;
    if parsed.iter().any(|r| r.len() != rank) {
        return Err(parse_err(line, format!("generators must have {rank} coordinates")));
    }
    Ok(parsed)
}

struct Section {
    line: usize,
    kind: String,
    name: String,
    fields: Vec<(usize, String, String)>,
}

impl Section {
    fn take(&mut self, key: &str) -> Result<(usize, String)> {
        match self.fields.iter().position(|(_, k, _)| k == key) {
            Some(i) => {
                let (line, _, v) = self.fields.remove(i);
                Ok((line, v))
            }
            None => Err(parse_err(
                self.line,
                format!("[{} {}] is missing {key}=", self.kind, self.name),
            )),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.fields.first() {
            Some((line, k, _)) => Err(parse_err(*line, format!("unexpected key {k}"))),
            None => Ok(()),
        }
    }
}

#[derive(Default)]
struct Parser {
    sections: Vec<Section>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Manifest> {
        let mut version: Option<(usize, u32)> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if let Some(inner) = t.strip_prefix('[') {
                let inner = inner
                    .strip_suffix(']')
                    .ok_or_else(|| parse_err(line, "unterminated section header"))?;
                let mut parts = inner.split_whitespace();
                let kind = parts.next().unwrap_or_default().to_string();
                let name = parts.next().unwrap_or_default().to_string();
                if parts.next().is_some() {
                    return Err(parse_err(line, "section names cannot contain spaces"));
                }
                if version.is_none() {
                    return Err(parse_err(line, "format_version must come first"));
                }
                self.sections.push(Section {
                    line,
                    kind,
                    name,
                    fields: Vec::new(),
                });
                continue;
            }
            let (key, value) = t
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected key=value, got {t:?}")))?;
            let (key, value) = (key.trim().to_string(), value.trim().to_string());
            match self.sections.last_mut() {
                None if key == "format_version" && version.is_none() => {
                    let v = parse_u64(line, &value)?;
                    if v != u64::from(FORMAT_VERSION) {
                        return Err(parse_err(line, format!("unsupported format_version {v}")));
                    }
                    version = Some((line, FORMAT_VERSION));
                }
                None => return Err(parse_err(line, "expected format_version=1 first")),
                Some(s) => {
                    if s.fields.iter().any(|(_, k, _)| *k == key) {
                        return Err(parse_err(line, format!("duplicate key {key}")));
                    }
                    s.fields.push((line, key, value));
                }
            }
        }
        let Some((vline, format_version)) = version else {
            return Err(parse_err(1, "missing format_version"));
        };
        let mut sections = std::mem::take(&mut self.sections).into_iter().peekable();
        let mut ring_section = match sections.next() {
            Some(s) if s.kind == "ring" && s.name.is_empty() => s,
            Some(s) => return Err(parse_err(s.line, "expected [ring] as the first section")),
            None => return Err(parse_err(vline, "missing [ring] section")),
        };
        let (nline, n) = ring_section.take("n")?;
        ring_section.finish()?;
        let ring = Ring::new(parse_u64(nline, &n)?).map_err(|e| parse_err(nline, e.to_string()))?;
        let mut manifest = Manifest::new(&ring);
        manifest.format_version = format_version;
        let mut names = BTreeSet::new();
        while let Some(mut s) = sections.next() {
            if s.kind == "ring" {
                return Err(parse_err(s.line, "more than one [ring] section"));
            }
            if !valid_name(&s.name) {
                return Err(parse_err(s.line, format!("invalid name {:?}", s.name)));
            }
            if !names.insert(s.name.clone()) {
                return Err(parse_err(s.line, format!("duplicate name {}", s.name)));
            }
            let record = match s.kind.as_str() {
                "module" => {
                    let (l, v) = s.take("factors")?;
                    let module = FiniteModule::new(&ring, parse_list(l, &v)?)
                        .map_err(|e| parse_err(l, e.to_string()))?;
                    Record::Module {
                        name: s.name.clone(),
                        module,
                    }
                }
                "morphism" => {
                    let (fl, from) = s.take("from")?;
                    let (tl, to) = s.take("to")?;
                    let (rl, rows) = s.take("rows")?;
                    let source = manifest
                        .module(&from)
                        .map_err(|e| parse_err(fl, e.to_string()))?
                        .clone();
                    let target = manifest
                        .module(&to)
                        .map_err(|e| parse_err(tl, e.to_string()))?
                        .clone();
                    let rows = parse_matrix(rl, &rows, target.rank(), source.rank())?;
                    let morphism = ModuleMorphism::new(&source, &target, &rows)
                        .map_err(|e| parse_err(rl, e.to_string()))?;
                    Record::Morphism {
                        name: s.name.clone(),
                        from,
                        to,
                        morphism,
                    }
                }
                "rep" => {
                    let (l, map) = s.take("f")?;
                    manifest
                        .morphism(&map)
                        .map_err(|e| parse_err(l, e.to_string()))?;
                    Record::Rep {
                        name: s.name.clone(),
                        map,
                    }
                }
                "diagram" => {
                    let (ol, objects) = s.take("objects")?;
                    let (el, edges) = s.take("edges")?;
                    let objects: Vec<String> = if objects.is_empty() {
                        Vec::new()
                    } else {
                        objects.split(',').map(|o| o.trim().to_string()).collect()
                    };
                    for o in &objects {
                        if !matches!(
                            manifest.find(o),
                            Some(Record::Module { .. } | Record::Rep { .. })
                        ) {
                            return Err(parse_err(ol, format!("no module or rep named {o}")));
                        }
                    }
                    let edges = parse_edges(el, &edges, &manifest)?;
                    Record::Diagram {
                        name: s.name.clone(),
                        objects,
                        edges,
                    }
                }
                "filtration" => {
                    let (rl, rep) = s.take("rep")?;
                    let (kl, kappa) = s.take("kappa")?;
                    let (cl, count) = s.take("steps")?;
                    let target = manifest.rep(&rep).map_err(|e| parse_err(rl, e.to_string()))?;
                    let kappa = parse_u64(kl, &kappa)?;
                    let count = parse_u64(cl, &count)? as usize;
                    s.finish()?;
                    let mut steps = Vec::with_capacity(count);
                    for i in 0..count {
                        let mut st = match sections.next() {
                            Some(st) if st.kind == "step" && st.name == format!("{}/{i}", s.name) => st,
                            Some(st) => {
                                return Err(parse_err(
                                    st.line,
                                    format!("expected [step {}/{i}]", s.name),
                                ))
                            }
                            None => return Err(parse_err(s.line, format!("missing step {i}"))),
                        };
                        let (al, adjoined) = st.take("adjoined")?;
                        let (sl, seeds) = st.take("seeds")?;
                        let (zl, size) = st.take("size")?;
                        let (l1, s1) = st.take("s1")?;
                        let (l2, s2) = st.take("s2")?;
                        st.finish()?;
                        let step = StepRecord {
                            adjoined: parse_u64(al, &adjoined)? as usize,
                            seeds: parse_u64(sl, &seeds)? as usize,
                            size: size
                                .parse::<BigUint>()
                                .map_err(|_| parse_err(zl, format!("bad size {size:?}")))?,
                            s1: parse_elements(l1, &s1, target.m1().rank())?,
                            s2: parse_elements(l2, &s2, target.m2().rank())?,
                        };
                        for (l, gens, m) in [(l1, &step.s1, target.m1()), (l2, &step.s2, target.m2())] {
                            if let Some(g) = gens.iter().find(|g| !m.is_element(g)) {
                                return Err(parse_err(l, format!("{g:?} is not an element of {m:?}")));
                            }
                        }
                        steps.push(step);
                    }
                    Record::Filtration {
                        name: s.name.clone(),
                        rep,
                        kappa,
                        steps,
                    }
                }
                "result" => Record::Result {
                    name: s.name.clone(),
                    fields: std::mem::take(&mut s.fields)
                        .into_iter()
                        .map(|(_, k, v)| (k, v))
                        .collect(),
                },
                "step" => return Err(parse_err(s.line, "step outside a filtration")),
                other => return Err(parse_err(s.line, format!("unknown section kind {other:?}"))),
            };
            s.finish()?;
            manifest.records.push(record);
        }
        Ok(manifest)
    }
}

fn parse_edges(line: usize, s: &str, manifest: &Manifest) -> Result<Vec<Edge>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|e| {
            let (ends, maps) = e
                .split_once(':')
                .ok_or_else(|| parse_err(line, format!("edge {e:?} lacks ':'")))?;
            let (from, to) = ends
                .split_once('-')
                .ok_or_else(|| parse_err(line, format!("edge {e:?} lacks '-'")))?;
            let maps: Vec<String> = maps.split('/').map(|m| m.trim().to_string()).collect();
            for m in &maps {
                manifest
                    .morphism(m)
                    .map_err(|err| parse_err(line, err.to_string()))?;
            }
            Ok(Edge {
                from: parse_u64(line, from)? as usize,
                to: parse_u64(line, to)? as usize,
                maps,
            })
        })
        .collect()
}
