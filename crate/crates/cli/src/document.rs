//! Spec documents: JSON with a `format_version`, named `definitions` and a
//! list of `checks`. Indices and variable names are 1-based throughout.

use std::collections::BTreeMap;

use nambu_forge::algebroid::{BundleMapCo, BundleMapForward, Subbundle};
use nambu_forge::kernel::{parse_rat, MultiIndex, Poly, PolyDerivation, Rat};
use nambu_forge::nambu::{NambuTensor, PolyMap, PolySubmanifold};
use nambu_forge::nlie::NLieAlgebra;
use nambu_forge::rinehart::{AlgebraMap, NLieRinehart};
use serde_json::{json, Map, Value};

use crate::builtins;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error("unresolved name: {0}")]
    Unresolved(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl SpecError {
    pub fn exit_code(&self) -> i32 {
        match self {
            SpecError::Syntax { .. } | SpecError::Invalid(_) => 2,
            SpecError::Unresolved(_) => 3,
            SpecError::Dimension(_) => 4,
        }
    }
}

type Res<T> = std::result::Result<T, SpecError>;

fn core_err(at: &str, e: nambu_forge::Error) -> SpecError {
    use nambu_forge::Error as E;
    match e {
        E::ArityMismatch { .. } | E::DimensionMismatch(_) | E::VariableOutOfRange { .. } | E::RankNotArity { .. } => {
            SpecError::Dimension(format!("{at}: {e}"))
        }
        other => SpecError::Invalid(format!("{at}: {other}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Nlie,
    Rinehart,
    Algebroid,
    AlgebraMap,
    ModuleMap,
    Nambu,
    PolyMap,
    Submanifold,
    Subbundle,
    BundleMapForward,
    BundleMapCo,
}

impl Kind {
    pub const ALL: [Kind; 11] = [
        Kind::Nlie,
        Kind::Rinehart,
        Kind::Algebroid,
        Kind::AlgebraMap,
        Kind::ModuleMap,
        Kind::Nambu,
        Kind::PolyMap,
        Kind::Submanifold,
        Kind::Subbundle,
        Kind::BundleMapForward,
        Kind::BundleMapCo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Nlie => "nlie",
            Kind::Rinehart => "rinehart",
            Kind::Algebroid => "algebroid",
            Kind::AlgebraMap => "algebra_map",
            Kind::ModuleMap => "module_map",
            Kind::Nambu => "nambu",
            Kind::PolyMap => "poly_map",
            Kind::Submanifold => "submanifold",
            Kind::Subbundle => "subbundle",
            Kind::BundleMapForward => "bundle_map_forward",
            Kind::BundleMapCo => "bundle_map_co",
        }
    }

    fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Rinehart structures and algebroids share one representation.
    fn accepts(self, found: Kind) -> bool {
        self == found || matches!((self, found), (Kind::Rinehart, Kind::Algebroid) | (Kind::Algebroid, Kind::Rinehart))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definition {
    Nlie(NLieAlgebra),
    Rinehart { algebroid: bool, structure: NLieRinehart },
    AlgebraMap(AlgebraMap),
    ModuleMap { vars: usize, matrix: Vec<Vec<Poly>> },
    Nambu(NambuTensor),
    PolyMap(PolyMap),
    Submanifold(PolySubmanifold),
    Subbundle { base: Reference, basis: Vec<Vec<Rat>> },
    BundleMapForward { base: Reference, fiber: Vec<Vec<Poly>> },
    BundleMapCo { base: Reference, pullback: Vec<Vec<Poly>> },
}

impl Definition {
    pub fn kind(&self) -> Kind {
        match self {
            Definition::Nlie(_) => Kind::Nlie,
            Definition::Rinehart { algebroid: true, .. } => Kind::Algebroid,
            Definition::Rinehart { .. } => Kind::Rinehart,
            Definition::AlgebraMap(_) => Kind::AlgebraMap,
            Definition::ModuleMap { .. } => Kind::ModuleMap,
            Definition::Nambu(_) => Kind::Nambu,
            Definition::PolyMap(_) => Kind::PolyMap,
            Definition::Submanifold(_) => Kind::Submanifold,
            Definition::Subbundle { .. } => Kind::Subbundle,
            Definition::BundleMapForward { .. } => Kind::BundleMapForward,
            Definition::BundleMapCo { .. } => Kind::BundleMapCo,
        }
    }
}

/// A field value: the name of a definition or builtin, or an inline definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reference {
    Named(String),
    Inline(Box<Definition>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Directive {
    pub check: String,
    pub args: BTreeMap<String, Reference>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecDocument {
    pub format_version: u64,
    pub definitions: BTreeMap<String, Definition>,
    pub checks: Vec<Directive>,
}

/// Fully resolved value of a reference.
#[derive(Debug, Clone)]
pub enum Object {
    Nlie(NLieAlgebra),
    Rinehart(NLieRinehart),
    AlgebraMap(AlgebraMap),
    ModuleMap(Vec<Vec<Poly>>),
    Nambu(NambuTensor),
    PolyMap(PolyMap),
    Submanifold(PolySubmanifold),
    Subbundle(Subbundle),
    BundleMapForward(BundleMapForward),
    BundleMapCo(BundleMapCo),
}

// ---------------------------------------------------------------- parsing

pub fn parse_spec(text: &str) -> Res<SpecDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let doc = document_from_value(&value)?;
    validate(&doc)?;
    Ok(doc)
}

fn obj<'a>(v: &'a Value, at: &str) -> Res<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| SpecError::Invalid(format!("{at}: expected an object")))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, at: &str) -> Res<&'a Value> {
    o.get(key).ok_or_else(|| SpecError::Invalid(format!("{at}: missing field \"{key}\"")))
}

fn uint(o: &Map<String, Value>, key: &str, at: &str) -> Res<usize> {
    field(o, key, at)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| SpecError::Invalid(format!("{at}.{key}: expected a non-negative integer")))
}

fn array<'a>(v: &'a Value, at: &str) -> Res<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| SpecError::Invalid(format!("{at}: expected an array")))
}

fn poly(v: &Value, nvars: usize, at: &str) -> Res<Poly> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(SpecError::Invalid(format!("{at}: expected a polynomial string"))),
    };
    Poly::parse(&text, nvars).map_err(|e| match e {
        nambu_forge::Error::VariableOutOfRange { .. } => SpecError::Dimension(format!("{at}: {e}")),
        other => SpecError::Invalid(format!("{at}: {other} in \"{text}\"")),
    })
}

fn rational(v: &Value, at: &str) -> Res<Rat> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(SpecError::Invalid(format!("{at}: expected a rational"))),
    };
    parse_rat(&text).map_err(|e| SpecError::Invalid(format!("{at}: {e}")))
}

fn poly_list(v: &Value, nvars: usize, at: &str) -> Res<Vec<Poly>> {
    array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, p)| poly(p, nvars, &format!("{at}[{}]", i + 1)))
        .collect()
}

fn poly_matrix(v: &Value, nvars: usize, at: &str) -> Res<Vec<Vec<Poly>>> {
    array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, row)| poly_list(row, nvars, &format!("{at}[{}]", i + 1)))
        .collect()
}

/// 1-based index list, converted to 0-based.
fn index_list(v: &Value, at: &str) -> Res<Vec<usize>> {
    array(v, at)?
        .iter()
        .map(|i| match i.as_u64() {
            Some(k) if k >= 1 => Ok(k as usize - 1),
            _ => Err(SpecError::Invalid(format!("{at}: indices are positive integers"))),
        })
        .collect()
}

fn keyed<T>(v: Option<&Value>, at: &str, mut value: impl FnMut(&Value, &str) -> Res<T>) -> Res<Vec<(Vec<usize>, T)>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let here = format!("{at}[{}]", i + 1);
            let o = obj(e, &here)?;
            let key = index_list(field(o, "key", &here)?, &format!("{here}.key"))?;
            let val = value(field(o, "value", &here)?, &format!("{here}.value"))?;
            Ok((key, val))
        })
        .collect()
}

fn check_indices(keys: &[Vec<usize>], bound: usize, at: &str) -> Res<()> {
    for k in keys {
        if let Some(&i) = k.iter().find(|&&i| i >= bound) {
            return Err(SpecError::Dimension(format!("{at}: index {} exceeds {bound}", i + 1)));
        }
    }
    Ok(())
}

fn reference(v: &Value, expected: Kind, at: &str) -> Res<Reference> {
    match v {
        Value::String(s) => Ok(Reference::Named(s.clone())),
        Value::Object(_) => Ok(Reference::Inline(Box::new(definition(v, Some(expected), at)?))),
        _ => Err(SpecError::Invalid(format!("{at}: expected a name or an inline definition"))),
    }
}

fn definition(v: &Value, expected: Option<Kind>, at: &str) -> Res<Definition> {
    let o = obj(v, at)?;
    let kind = match (o.get("kind").and_then(Value::as_str), expected) {
        (Some(name), _) => Kind::from_name(name).ok_or_else(|| SpecError::Invalid(format!("{at}: unknown kind \"{name}\"")))?,
        (None, Some(k)) => k,
        (None, None) => return Err(SpecError::Invalid(format!("{at}: missing field \"kind\""))),
    };
    if let Some(e) = expected {
        if !e.accepts(kind) {
            return Err(SpecError::Invalid(format!("{at}: expected {}, found {}", e.name(), kind.name())));
        }
    }
    Ok(match kind {
        Kind::Nlie => {
            let (arity, d) = (uint(o, "arity", at)?, uint(o, "dim", at)?);
            let entries = keyed(o.get("brackets"), &format!("{at}.brackets"), |v, here| {
                array(v, here)?.iter().map(|c| rational(c, here)).collect::<Res<Vec<Rat>>>()
            })?;
            check_indices(&entries.iter().map(|e| e.0.clone()).collect::<Vec<_>>(), d, at)?;
            Definition::Nlie(lift(at, NLieAlgebra::new(arity, d, entries))?)
        }
        Kind::Rinehart | Kind::Algebroid => {
            let (m, d, n) = (uint(o, "vars", at)?, uint(o, "rank", at)?, uint(o, "arity", at)?);
            let anchors = keyed(o.get("anchors"), &format!("{at}.anchors"), |v, here| {
                Ok(PolyDerivation::new(poly_list(v, m, here)?))
            })?;
            let brackets = keyed(o.get("brackets"), &format!("{at}.brackets"), |v, here| poly_list(v, m, here))?;
            check_indices(&anchors.iter().map(|e| e.0.clone()).collect::<Vec<_>>(), d, at)?;
            check_indices(&brackets.iter().map(|e| e.0.clone()).collect::<Vec<_>>(), d, at)?;
            if n < 2 {
                return Err(SpecError::Dimension(format!("{at}: arity must be at least 2")));
            }
            Definition::Rinehart {
                algebroid: kind == Kind::Algebroid,
                structure: lift(at, NLieRinehart::new(m, d, n, anchors, brackets))?,
            }
        }
        Kind::AlgebraMap => {
            let (s, t) = (uint(o, "source_vars", at)?, uint(o, "target_vars", at)?);
            let images = poly_list(field(o, "images", at)?, t, &format!("{at}.images"))?;
            Definition::AlgebraMap(lift(at, AlgebraMap::new(s, t, images))?)
        }
        Kind::ModuleMap => {
            let vars = uint(o, "vars", at)?;
            let matrix = poly_matrix(field(o, "matrix", at)?, vars, &format!("{at}.matrix"))?;
            rectangular(&matrix, at)?;
            Definition::ModuleMap { vars, matrix }
        }
        Kind::Nambu => {
            let (order, m) = (uint(o, "order", at)?, uint(o, "vars", at)?);
            let comps = keyed(o.get("components"), &format!("{at}.components"), |v, here| poly(v, m, here))?;
            check_indices(&comps.iter().map(|e| e.0.clone()).collect::<Vec<_>>(), m, at)?;
            Definition::Nambu(lift(at, NambuTensor::new(order, m, comps))?)
        }
        Kind::PolyMap => {
            let (s, t) = (uint(o, "source", at)?, uint(o, "target", at)?);
            let comps = poly_list(field(o, "components", at)?, s, &format!("{at}.components"))?;
            Definition::PolyMap(lift(at, PolyMap::new(s, t, comps))?)
        }
        Kind::Submanifold => {
            let m = uint(o, "vars", at)?;
            match (o.get("coordinate"), o.get("graph")) {
                (Some(c), None) => {
                    let vars = index_list(c, &format!("{at}.coordinate"))?;
                    Definition::Submanifold(lift(at, PolySubmanifold::coordinate(m, vars))?)
                }
                (None, Some(g)) => {
                    let outputs = array(g, &format!("{at}.graph"))?
                        .iter()
                        .enumerate()
                        .map(|(i, e)| {
                            let here = format!("{at}.graph[{}]", i + 1);
                            let eo = obj(e, &here)?;
                            let var = match field(eo, "var", &here)?.as_u64() {
                                Some(k) if k >= 1 => k as usize - 1,
                                _ => return Err(SpecError::Invalid(format!("{here}.var: positive integer expected"))),
                            };
                            Ok((var, poly(field(eo, "value", &here)?, m, &format!("{here}.value"))?))
                        })
                        .collect::<Res<Vec<_>>>()?;
                    Definition::Submanifold(lift(at, PolySubmanifold::graph(m, outputs))?)
                }
                _ => {
                    return Err(SpecError::Invalid(format!(
                        "{at}: exactly one of \"coordinate\" and \"graph\" is required"
                    )))
                }
            }
        }
        Kind::Subbundle => {
            let base = reference(field(o, "base", at)?, Kind::Submanifold, &format!("{at}.base"))?;
            let basis = array(field(o, "basis", at)?, &format!("{at}.basis"))?
                .iter()
                .map(|row| array(row, at)?.iter().map(|c| rational(c, at)).collect())
                .collect::<Res<Vec<Vec<Rat>>>>()?;
            Definition::Subbundle { base, basis }
        }
        Kind::BundleMapForward | Kind::BundleMapCo => {
            let key = if kind == Kind::BundleMapForward { "fiber" } else { "pullback" };
            let base_at = format!("{at}.base");
            let base = reference(field(o, "base", at)?, Kind::PolyMap, &base_at)?;
            // matrix entries live on the source of the base map; its size is
            // only known after resolution, so parse with a generous bound and
            // recheck later
            let raw = field(o, key, at)?.clone();
            let matrix = poly_matrix(&raw, MAX_VARS, &format!("{at}.{key}"))?;
            rectangular(&matrix, at)?;
            if kind == Kind::BundleMapForward {
                Definition::BundleMapForward { base, fiber: matrix }
            } else {
                Definition::BundleMapCo { base, pullback: matrix }
            }
        }
    })
}

fn lift<T>(at: &str, r: nambu_forge::Result<T>) -> Res<T> {
    r.map_err(|e| core_err(at, e))
}

/// Upper bound on variables in deferred matrix parsing.
const MAX_VARS: usize = 64;

fn rectangular(m: &[Vec<Poly>], at: &str) -> Res<()> {
    if let Some(first) = m.first() {
        if m.iter().any(|r| r.len() != first.len()) {
            return Err(SpecError::Dimension(format!("{at}: rows of different lengths")));
        }
    }
    Ok(())
}

/// Restricts polynomials parsed with [`MAX_VARS`] variables to `nvars`.
fn shrink(m: &[Vec<Poly>], nvars: usize, at: &str) -> Res<Vec<Vec<Poly>>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    if let Some(&v) = p.support().iter().find(|&&v| v >= nvars) {
                        return Err(SpecError::Dimension(format!(
                            "{at}: variable x{} on a base with {nvars} variables",
                            v + 1
                        )));
                    }
                    if p.nvars() == nvars {
                        return Ok(p.clone());
                    }
                    let drop: std::collections::BTreeSet<usize> = (nvars..p.nvars()).collect();
                    Ok(p.drop_vars(&drop))
                })
                .collect()
        })
        .collect()
}

fn document_from_value(v: &Value) -> Res<SpecDocument> {
    let o = obj(v, "document")?;
    let format_version = field(o, "format_version", "document")?
        .as_u64()
        .ok_or_else(|| SpecError::Invalid("format_version: expected an integer".into()))?;
    if format_version != FORMAT_VERSION {
        return Err(SpecError::Invalid(format!("unsupported format_version {format_version}")));
    }
    for key in o.keys() {
        if !matches!(key.as_str(), "format_version" | "definitions" | "checks") {
            return Err(SpecError::Invalid(format!("unknown top-level field \"{key}\"")));
        }
    }
    let mut definitions = BTreeMap::new();
    if let Some(d) = o.get("definitions") {
        for (name, def) in obj(d, "definitions")? {
            definitions.insert(name.clone(), definition(def, None, &format!("definitions.{name}"))?);
        }
    }
    let mut checks = Vec::new();
    if let Some(c) = o.get("checks") {
        for (i, d) in array(c, "checks")?.iter().enumerate() {
            let at = format!("checks[{}]", i + 1);
            let dobj = obj(d, &at)?;
            let check = field(dobj, "check", &at)?
                .as_str()
                .ok_or_else(|| SpecError::Invalid(format!("{at}.check: expected a string")))?
                .to_string();
            let spec = crate::run::signature(&check).ok_or_else(|| SpecError::Invalid(format!("{at}: unknown check \"{check}\"")))?;
            let mut args = BTreeMap::new();
            for (key, kind) in spec {
                let v = field(dobj, key, &at)?;
                args.insert(key.to_string(), reference(v, *kind, &format!("{at}.{key}"))?);
            }
            if let Some(extra) = dobj.keys().find(|k| k.as_str() != "check" && !spec.iter().any(|(f, _)| f == k)) {
                return Err(SpecError::Invalid(format!("{at}: unexpected field \"{extra}\"")));
            }
            checks.push(Directive { check, args });
        }
    }
    Ok(SpecDocument {
        format_version,
        definitions,
        checks,
    })
}

// ------------------------------------------------------------- resolution

pub struct Resolver<'a> {
    doc: &'a SpecDocument,
}

impl<'a> Resolver<'a> {
    pub fn new(doc: &'a SpecDocument) -> Self {
        Resolver { doc }
    }

    pub fn resolve(&self, r: &Reference, expected: Kind, at: &str) -> Res<Object> {
        self.resolve_depth(r, expected, at, 0)
    }

    fn resolve_depth(&self, r: &Reference, expected: Kind, at: &str, depth: usize) -> Res<Object> {
        if depth > 16 {
            return Err(SpecError::Unresolved(format!("{at}: reference cycle")));
        }
        let def = match r {
            Reference::Inline(d) => d.as_ref().clone(),
            Reference::Named(name) => match self.doc.definitions.get(name) {
                Some(d) => d.clone(),
                None => builtins::lookup(name, expected)
                    .ok_or_else(|| SpecError::Unresolved(format!("{at}: \"{name}\" is neither defined nor a {} builtin", expected.name())))?,
            },
        };
        if !expected.accepts(def.kind()) {
            return Err(SpecError::Invalid(format!(
                "{at}: expected {}, found {}",
                expected.name(),
                def.kind().name()
            )));
        }
            Ok(match def {
            Definition::Nlie(l) => Object::Nlie(l),
            Definition::Rinehart { structure, .. } => Object::Rinehart(structure),
            Definition::AlgebraMap(m) => Object::AlgebraMap(m),
            Definition::ModuleMap { matrix, .. } => Object::ModuleMap(matrix),
            Definition::Nambu(t) => Object::Nambu(t),
            Definition::PolyMap(m) => Object::PolyMap(m),
            Definition::Submanifold(s) => Object::Submanifold(s),
            Definition::Subbundle { base, basis } => {
                let Object::Submanifold(n) = self.resolve_depth(&base, Kind::Submanifold, &format!("{at}.base"), depth + 1)? else {
                    unreachable!()
                };
                Object::Subbundle(lift(at, Subbundle::new(n, basis))?)
            }
            Definition::BundleMapForward { base, fiber } => {
                let phi = self.poly_map(&base, at, depth)?;
                let fiber = shrink(&fiber, phi.source(), at)?;
                Object::BundleMapForward(BundleMapForward { base: phi, fiber })
            }
            Definition::BundleMapCo { base, pullback } => {
                let phi = self.poly_map(&base, at, depth)?;
                let pullback = shrink(&pullback, phi.source(), at)?;
                Object::BundleMapCo(BundleMapCo { base: phi, pullback })
            }
        })
    }

    fn poly_map(&self, base: &Reference, at: &str, depth: usize) -> Res<PolyMap> {
        match self.resolve_depth(base, Kind::PolyMap, &format!("{at}.base"), depth + 1)? {
            Object::PolyMap(m) => Ok(m),
            _ => unreachable!(),
        }
    }
}

/// Resolves every reference and checks the shapes that directives combine.
pub fn validate(doc: &SpecDocument) -> Res<()> {
    let r = Resolver::new(doc);
    for (name, def) in &doc.definitions {
        r.resolve(&Reference::Named(name.clone()), def.kind(), &format!("definitions.{name}"))?;
    }
    for (i, d) in doc.checks.iter().enumerate() {
        crate::run::resolve_directive(&r, d, &format!("checks[{}]", i + 1))?;
    }
    Ok(())
}

// ---------------------------------------------------------- serialization

fn rat_text(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn poly_text(p: &Poly) -> Value {
    Value::String(p.to_string())
}

fn key_value(k: &MultiIndex, v: Value) -> Value {
    json!({ "key": k.one_based(), "value": v })
}

pub fn definition_to_value(d: &Definition) -> Value {
    let mut o = Map::new();
    o.insert("kind".into(), Value::String(d.kind().name().into()));
    match d {
        Definition::Nlie(l) => {
            o.insert("arity".into(), json!(l.arity()));
            o.insert("dim".into(), json!(l.dim()));
            let b: Vec<Value> = l
                .table()
                .iter()
                .map(|(k, v)| key_value(k, Value::Array(v.iter().map(rat_text).collect())))
                .collect();
            o.insert("brackets".into(), Value::Array(b));
        }
        Definition::Rinehart { structure: r, .. } => {
            o.insert("vars".into(), json!(r.nvars()));
            o.insert("rank".into(), json!(r.rank()));
            o.insert("arity".into(), json!(r.arity()));
            let a: Vec<Value> = r
                .anchor_table()
                .iter()
                .map(|(k, d)| key_value(k, Value::Array(d.components().iter().map(poly_text).collect())))
                .collect();
            let b: Vec<Value> = r
                .bracket_table()
                .iter()
                .map(|(k, v)| key_value(k, Value::Array(v.iter().map(poly_text).collect())))
                .collect();
            o.insert("anchors".into(), Value::Array(a));
            o.insert("brackets".into(), Value::Array(b));
        }
        Definition::AlgebraMap(m) => {
            o.insert("source_vars".into(), json!(m.source_vars()));
            o.insert("target_vars".into(), json!(m.target_vars()));
            o.insert("images".into(), Value::Array(m.images().iter().map(poly_text).collect()));
        }
        Definition::ModuleMap { vars, matrix } => {
            o.insert("vars".into(), json!(vars));
            o.insert("matrix".into(), matrix_value(matrix));
        }
        Definition::Nambu(t) => {
            o.insert("order".into(), json!(t.order()));
            o.insert("vars".into(), json!(t.nvars()));
            let c: Vec<Value> = t.components().iter().map(|(k, p)| key_value(k, poly_text(p))).collect();
            o.insert("components".into(), Value::Array(c));
        }
        Definition::PolyMap(m) => {
            o.insert("source".into(), json!(m.source()));
            o.insert("target".into(), json!(m.target()));
            o.insert("components".into(), Value::Array(m.components().iter().map(poly_text).collect()));
        }
        Definition::Submanifold(s) => {
            o.insert("vars".into(), json!(s.nvars()));
            match s {
                PolySubmanifold::Coordinate { vars, .. } => {
                    o.insert("coordinate".into(), json!(vars.iter().map(|v| v + 1).collect::<Vec<_>>()));
                }
                PolySubmanifold::Graph { outputs, .. } => {
                    let g: Vec<Value> = outputs
                        .iter()
                        .map(|(v, p)| json!({ "var": v + 1, "value": p.to_string() }))
                        .collect();
                    o.insert("graph".into(), Value::Array(g));
                }
            }
        }
        Definition::Subbundle { base, basis } => {
            o.insert("base".into(), reference_to_value(base));
            let b: Vec<Value> = basis.iter().map(|row| Value::Array(row.iter().map(rat_text).collect())).collect();
            o.insert("basis".into(), Value::Array(b));
        }
        Definition::BundleMapForward { base, fiber } => {
            o.insert("base".into(), reference_to_value(base));
            o.insert("fiber".into(), matrix_value(fiber));
        }
        Definition::BundleMapCo { base, pullback } => {
            o.insert("base".into(), reference_to_value(base));
            o.insert("pullback".into(), matrix_value(pullback));
        }
    }
    Value::Object(o)
}

fn matrix_value(m: &[Vec<Poly>]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(poly_text).collect())).collect())
}

fn reference_to_value(r: &Reference) -> Value {
    match r {
        Reference::Named(n) => Value::String(n.clone()),
        Reference::Inline(d) => definition_to_value(d),
    }
}

pub fn document_to_value(doc: &SpecDocument) -> Value {
    let defs: Map<String, Value> = doc
        .definitions
        .iter()
        .map(|(k, d)| (k.clone(), definition_to_value(d)))
        .collect();
    let checks: Vec<Value> = doc
        .checks
        .iter()
        .map(|d| {
            let mut o = Map::new();
            o.insert("check".into(), Value::String(d.check.clone()));
            for (k, r) in &d.args {
                o.insert(k.clone(), reference_to_value(r));
            }
            Value::Object(o)
        })
        .collect();
    json!({ "format_version": doc.format_version, "definitions": defs, "checks": checks })
}

pub fn serialize_spec(doc: &SpecDocument) -> String {
    serde_json::to_string_pretty(&document_to_value(doc)).expect("values serialize")
}
