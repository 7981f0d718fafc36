//! Directive signatures, resolution and execution.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use nambu_forge::algebroid::{self as alg, NLieAlgebroid};
use nambu_forge::kernel::limits::TermLimitExceeded;
use nambu_forge::nambu;
use nambu_forge::nlie;
use nambu_forge::rinehart::{self, GraphPair, ModuleMapCo, ModuleMapForward};
use nambu_forge::{Config, PairedVerdict, Verdict, Witness};
use serde::Serialize;

use crate::document::{Directive, Kind, Object, Reference, Resolver, SpecDocument, SpecError};

type Sig = &'static [(&'static str, Kind)];

const NLIE: Sig = &[("target", Kind::Nlie)];
const RINEHART: Sig = &[("target", Kind::Rinehart)];
const RINEHART_MAP: Sig = &[
    ("e", Kind::Rinehart),
    ("f", Kind::Rinehart),
    ("psi", Kind::AlgebraMap),
    ("map", Kind::ModuleMap),
];
const TENSOR: Sig = &[("tensor", Kind::Nambu)];
const TENSOR_SUB: Sig = &[("tensor", Kind::Nambu), ("submanifold", Kind::Submanifold)];
const NAMBU_MAP: Sig = &[("map", Kind::PolyMap), ("pi1", Kind::Nambu), ("pi2", Kind::Nambu)];
const RELATION: Sig = &[("pi1", Kind::Nambu), ("pi2", Kind::Nambu), ("relation", Kind::Submanifold)];
const ALGEBROID: Sig = &[("target", Kind::Algebroid)];
const SUB: Sig = &[("algebroid", Kind::Algebroid), ("subbundle", Kind::Subbundle)];
const FORWARD: Sig = &[
    ("map", Kind::BundleMapForward),
    ("a1", Kind::Algebroid),
    ("a2", Kind::Algebroid),
];
const CO: Sig = &[("map", Kind::BundleMapCo), ("a2", Kind::Algebroid), ("a1", Kind::Algebroid)];

pub const CHECKS: &[(&str, Sig)] = &[
    ("fundamental_identity", NLIE),
    ("leibniz", NLIE),
    ("adjoint_representation", NLIE),
    ("rinehart", RINEHART),
    ("leibniz_rinehart", RINEHART),
    ("morphism", RINEHART_MAP),
    ("comorphism", RINEHART_MAP),
    ("graph_morphism", RINEHART_MAP),
    ("graph_comorphism", RINEHART_MAP),
    ("intertwine", RINEHART_MAP),
    ("nambu_fi", TENSOR),
    ("nambu_map", NAMBU_MAP),
    ("coisotropic", TENSOR_SUB),
    ("nambu_submanifold", TENSOR_SUB),
    ("nambu_relation", RELATION),
    ("algebroid", ALGEBROID),
    ("subalgebroid", SUB),
    ("morphism_algebroid", FORWARD),
    ("comorphism_algebroid", CO),
    ("duality_comorphism", CO),
    ("duality_morphism", FORWARD),
    ("annihilator", SUB),
];

pub fn signature(check: &str) -> Option<Sig> {
    CHECKS.iter().find(|(c, _)| *c == check).map(|(_, s)| *s)
}

pub struct Resolved {
    pub check: String,
    pub objects: Vec<Object>,
}

fn dim(at: &str, what: &str, expected: usize, found: usize) -> Result<(), SpecError> {
    if expected == found {
        Ok(())
    } else {
        Err(SpecError::Dimension(format!("{at}: {what}: expected {expected}, found {found}")))
    }
}

fn matrix_shape(at: &str, m: &[Vec<nambu_forge::Poly>], rows: usize, cols: usize, nvars: usize) -> Result<(), SpecError> {
    dim(at, "matrix rows", rows, m.len())?;
    for row in m {
        dim(at, "matrix columns", cols, row.len())?;
        for p in row {
            dim(at, "matrix entry variables", nvars, p.nvars())?;
        }
    }
    Ok(())
}

pub fn resolve_directive(r: &Resolver, d: &Directive, at: &str) -> Result<Resolved, SpecError> {
    let sig = signature(&d.check).ok_or_else(|| SpecError::Invalid(format!("{at}: unknown check \"{}\"", d.check)))?;
    let objects = sig
        .iter()
        .map(|(field, kind)| {
            let reference = d
                .args
                .get(*field)
                .ok_or_else(|| SpecError::Invalid(format!("{at}: missing field \"{field}\"")))?;
            r.resolve(reference, *kind, &format!("{at}.{field}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    shapes(&d.check, &objects, at)?;
    Ok(Resolved {
        check: d.check.clone(),
        objects,
    })
}

fn shapes(check: &str, o: &[Object], at: &str) -> Result<(), SpecError> {
    use Object as O;
    match (check, o) {
        (_, [O::Rinehart(e), O::Rinehart(f), O::AlgebraMap(psi), O::ModuleMap(m)]) => {
            dim(at, "arity of e and f", e.arity(), f.arity())?;
            dim(at, "psi source variables", e.nvars(), psi.source_vars())?;
            dim(at, "psi target variables", f.nvars(), psi.target_vars())?;
            if matches!(check, "morphism" | "graph_morphism") {
                matrix_shape(at, m, f.rank(), e.rank(), f.nvars())
            } else {
                matrix_shape(at, m, e.rank(), f.rank(), f.nvars())
            }
        }
        (_, [O::PolyMap(phi), O::Nambu(p1), O::Nambu(p2)]) => {
            dim(at, "map source", p1.nvars(), phi.source())?;
            dim(at, "map target", p2.nvars(), phi.target())
        }
        (_, [O::Nambu(pi), O::Submanifold(n)]) => dim(at, "submanifold variables", pi.nvars(), n.nvars()),
        (_, [O::Nambu(p1), O::Nambu(p2), O::Submanifold(r)]) => {
            dim(at, "tensor orders", p1.order(), p2.order())?;
            dim(at, "relation variables", p2.nvars() + p1.nvars(), r.nvars())
        }
        (_, [O::Rinehart(a), O::Subbundle(h)]) => {
            dim(at, "subbundle base variables", a.nvars(), h.base().nvars())?;
            if let Some(v) = h.basis().first() {
                dim(at, "subbundle fibre dimension", a.rank(), v.len())?;
            }
            Ok(())
        }
        (_, [O::BundleMapForward(phi), O::Rinehart(a1), O::Rinehart(a2)]) => {
            dim(at, "arity of a1 and a2", a1.arity(), a2.arity())?;
            dim(at, "base map source", a1.nvars(), phi.base.source())?;
            dim(at, "base map target", a2.nvars(), phi.base.target())?;
            matrix_shape(at, &phi.fiber, a2.rank(), a1.rank(), a1.nvars())
        }
        (_, [O::BundleMapCo(phi), O::Rinehart(a2), O::Rinehart(a1)]) => {
            dim(at, "arity of a1 and a2", a1.arity(), a2.arity())?;
            dim(at, "base map source", a1.nvars(), phi.base.source())?;
            dim(at, "base map target", a2.nvars(), phi.base.target())?;
            matrix_shape(at, &phi.pullback, a1.rank(), a2.rank(), a1.nvars())
        }
        _ => Ok(()),
    }
}

// ------------------------------------------------------------------ report

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub condition: String,
    pub indices: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    pub residual: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&Witness> for WitnessReport {
    fn from(w: &Witness) -> Self {
        WitnessReport {
            condition: w.condition.clone(),
            indices: w.indices.iter().map(|k| k.one_based()).collect(),
            generator: w.generator.clone(),
            residual: w.residual.iter().map(ToString::to_string).collect(),
            note: w.note.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub direct: &'static str,
    pub dual: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub index: usize,
    pub check: String,
    pub args: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paired: Option<PairReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub coverage: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub probe_degree: u32,
    pub degree_bound: u32,
    pub max_terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub format_version: u64,
    pub settings: Settings,
    pub dual_sign_convention: &'static str,
    pub results: Vec<Entry>,
    pub totals: Totals,
}

impl CheckReport {
    pub fn exit_code(&self) -> i32 {
        if self.totals.error > 0 {
            2
        } else if self.totals.fail > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn describe(r: &Reference) -> String {
    match r {
        Reference::Named(n) => n.clone(),
        Reference::Inline(d) => format!("<inline {}>", d.kind().name()),
    }
}

fn word(v: &Verdict) -> &'static str {
    if v.is_pass() {
        "pass"
    } else {
        "fail"
    }
}

struct Outcome {
    verdict: Verdict,
    paired: Option<PairedVerdict>,
    detail: Option<String>,
}

impl From<Verdict> for Outcome {
    fn from(verdict: Verdict) -> Self {
        Outcome {
            verdict,
            paired: None,
            detail: None,
        }
    }
}

fn paired(p: PairedVerdict) -> nambu_forge::Result<Outcome> {
    let verdict = p.shared()?;
    Ok(Outcome {
        verdict,
        paired: Some(p),
        detail: None,
    })
}

fn execute(r: Resolved, cfg: &Config) -> nambu_forge::Result<Outcome> {
    use Object as O;
    let algebroid = |s: &nambu_forge::rinehart::NLieRinehart| NLieAlgebroid::new(s.clone());
    Ok(match (r.check.as_str(), r.objects.as_slice()) {
        ("fundamental_identity", [O::Nlie(l)]) => nlie::check_fundamental_identity(l).into(),
        ("leibniz", [O::Nlie(l)]) => nlie::check_leibniz(&nlie::induced_leibniz(l)).into(),
        ("adjoint_representation", [O::Nlie(l)]) => nlie::check_representation(l, &nlie::adjoint(l))?.into(),
        ("rinehart", [O::Rinehart(s)]) => rinehart::check_rinehart(s).into(),
        ("leibniz_rinehart", [O::Rinehart(s)]) => {
            rinehart::check_leibniz_rinehart(&rinehart::induced_leibniz_rinehart(s)?).into()
        }
        (check, [O::Rinehart(e), O::Rinehart(f), O::AlgebraMap(psi), O::ModuleMap(m)]) => {
            let m = m.clone();
            match check {
                "morphism" => rinehart::check_morphism(e, f, &ModuleMapForward::new(m), psi)?.into(),
                "comorphism" => rinehart::check_comorphism(f, e, &ModuleMapCo::new(m), psi)?.into(),
                "graph_morphism" => {
                    rinehart::graph_check_with(e, f, psi, &GraphPair::Morphism(ModuleMapForward::new(m)), cfg)?.into()
                }
                "graph_comorphism" => {
                    rinehart::graph_check_with(e, f, psi, &GraphPair::Comorphism(ModuleMapCo::new(m)), cfg)?.into()
                }
                _ => rinehart::check_intertwine(e, f, &ModuleMapCo::new(m), psi)?.into(),
            }
        }
        ("nambu_fi", [O::Nambu(pi)]) => nambu::check_nambu_fi_default(pi, cfg)?.into(),
        ("nambu_map", [O::PolyMap(phi), O::Nambu(p1), O::Nambu(p2)]) => nambu::check_nambu_map(phi, p1, p2)?.into(),
        ("coisotropic", [O::Nambu(pi), O::Submanifold(n)]) => nambu::check_coisotropic(pi, n)?.into(),
        ("nambu_submanifold", [O::Nambu(pi), O::Submanifold(n)]) => nambu::check_nambu_submanifold(pi, n)?.into(),
        ("nambu_relation", [O::Nambu(p1), O::Nambu(p2), O::Submanifold(rel)]) => {
            nambu::check_nambu_relation(p1, p2, rel)?.into()
        }
        ("algebroid", [O::Rinehart(s)]) => alg::check_algebroid(&algebroid(s)).into(),
        ("subalgebroid", [O::Rinehart(s), O::Subbundle(h)]) => {
            let out = alg::check_subalgebroid_with(&algebroid(s), h, cfg)?;
            Outcome {
                verdict: out.verdict,
                paired: None,
                detail: out.induced.map(|a| {
                    format!(
                        "induced algebroid: {} variables, rank {}, {} anchor and {} bracket entries",
                        a.base_dim(),
                        a.rank(),
                        a.structure().anchor_table().len(),
                        a.structure().bracket_table().len()
                    )
                }),
            }
        }
        ("annihilator", [O::Rinehart(s), O::Subbundle(h)]) => paired(alg::annihilator_pair(&algebroid(s), h)?)?,
        ("morphism_algebroid", [O::BundleMapForward(phi), O::Rinehart(a1), O::Rinehart(a2)]) => {
            alg::check_morphism_algebroid(phi, &algebroid(a1), &algebroid(a2))?.into()
        }
        ("duality_morphism", [O::BundleMapForward(phi), O::Rinehart(a1), O::Rinehart(a2)]) => {
            paired(alg::morphism_duality_pair(phi, &algebroid(a1), &algebroid(a2))?)?
        }
        ("comorphism_algebroid", [O::BundleMapCo(phi), O::Rinehart(a2), O::Rinehart(a1)]) => {
            alg::check_comorphism_algebroid(phi, &algebroid(a2), &algebroid(a1))?.into()
        }
        ("duality_comorphism", [O::BundleMapCo(phi), O::Rinehart(a2), O::Rinehart(a1)]) => {
            paired(alg::comorphism_duality_pair(phi, &algebroid(a2), &algebroid(a1))?)?
        }
        (check, _) => unreachable!("signature of {check} checked during resolution"),
    })
}

pub fn coverage(check: &str, cfg: &Config) -> String {
    match check {
        "fundamental_identity" | "leibniz" | "adjoint_representation" | "intertwine" => "all basis tuples".into(),
        "rinehart" | "algebroid" => {
            "basis tuples and tuples with one slot weighted by a coordinate; operator identities on 1, x_i, x_i*x_j"
                .into()
        }
        "leibniz_rinehart" => "basis wedge elements and their multiples by coordinates".into(),
        "morphism" | "comorphism" => format!(
            "basis tuples; anchor condition on coordinates and {} seeded random polynomials",
            cfg.random_probes
        ),
        "graph_morphism" | "graph_comorphism" => format!(
            "generator tuples; membership solved with coefficients of degree <= {}",
            cfg.degree_bound
        ),
        "nambu_fi" => format!("probe functions: all monomials of degree 1..={}", cfg.probe_degree),
        "nambu_map" => "componentwise pushforward, exact".into(),
        "coisotropic" | "nambu_submanifold" | "nambu_relation" => "exact on the defining functions".into(),
        "subalgebroid" => format!("basis tuples; closure solved up to degree {}", cfg.degree_bound),
        "morphism_algebroid" => format!(
            "basis tuples; cross-checked against the graph subalgebroid (degree <= {})",
            cfg.degree_bound
        ),
        "comorphism_algebroid" => "basis tuples; cross-checked against the induced Rinehart morphism".into(),
        _ => "direct and dual verdicts computed independently".into(),
    }
}

fn limit_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(t) = payload.downcast_ref::<TermLimitExceeded>() {
        t.to_string()
    } else if let Some(s) = payload.downcast_ref::<&str>() {
        format!("internal error: {s}")
    } else if let Some(s) = payload.downcast_ref::<String>() {
        format!("internal error: {s}")
    } else {
        "internal error".into()
    }
}

/// Silences the default panic message for term-limit aborts.
pub fn install_panic_hook() {
    let default = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        if info.payload().downcast_ref::<TermLimitExceeded>().is_none() {
            default(info);
        }
    }));
}

pub fn run_checks(doc: &SpecDocument, cfg: &Config) -> Result<CheckReport, SpecError> {
    let resolver = Resolver::new(doc);
    let mut results = Vec::new();
    for (i, d) in doc.checks.iter().enumerate() {
        let at = format!("checks[{}]", i + 1);
        let resolved = resolve_directive(&resolver, d, &at)?;
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| execute(resolved, cfg)));
        let elapsed = start.elapsed();
        let mut entry = Entry {
            index: i + 1,
            check: d.check.clone(),
            args: d.args.iter().map(|(k, r)| (k.clone(), describe(r))).collect(),
            status: Status::Error,
            witness: None,
            paired: None,
            detail: None,
            error: None,
            coverage: coverage(&d.check, cfg),
            elapsed,
        };
        match outcome {
            Ok(Ok(o)) => {
                entry.status = if o.verdict.is_pass() { Status::Pass } else { Status::Fail };
                entry.witness = o.verdict.witness().map(WitnessReport::from);
                entry.paired = o.paired.map(|p| PairReport {
                    direct: word(&p.direct),
                    dual: word(&p.dual),
                });
                entry.detail = o.detail;
            }
            Ok(Err(e)) => entry.error = Some(e.to_string()),
            Err(payload) => entry.error = Some(limit_message(payload.as_ref())),
        }
        results.push(entry);
    }
    let count = |s: Status| results.iter().filter(|e| e.status == s).count();
    let totals = Totals {
        pass: count(Status::Pass),
        fail: count(Status::Fail),
        error: count(Status::Error),
    };
    Ok(CheckReport {
        format_version: crate::document::FORMAT_VERSION,
        settings: Settings {
            probe_degree: cfg.probe_degree,
            degree_bound: cfg.degree_bound,
            max_terms: nambu_forge::limits::max_terms(),
        },
        dual_sign_convention: alg::DUAL_SIGN_CONVENTION,
        results,
        totals,
    })
}

pub fn render_text(report: &CheckReport) -> String {
    let mut out = String::new();
    for e in &report.results {
        let args: Vec<String> = e.args.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let status = match e.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        out.push_str(&format!(
            "[{:>3}] {:<22} {:<6} {:>8.1} ms  {}\n",
            e.index,
            e.check,
            status,
            e.elapsed.as_secs_f64() * 1e3,
            args.join(" ")
        ));
        if let Some(w) = &e.witness {
            out.push_str(&format!("      condition: {}\n", w.condition));
            if !w.indices.is_empty() {
                out.push_str(&format!("      indices:   {:?}\n", w.indices));
            }
            if let Some(g) = &w.generator {
                out.push_str(&format!("      generator: {g}\n"));
            }
            if !w.residual.is_empty() {
                out.push_str(&format!("      residual:  [{}]\n", w.residual.join(", ")));
            }
            if let Some(n) = &w.note {
                out.push_str(&format!("      note:      {n}\n"));
            }
        }
        if let Some(p) = &e.paired {
            out.push_str(&format!("      direct {}, dual {}\n", p.direct, p.dual));
        }
        if let Some(d) = &e.detail {
            out.push_str(&format!("      {d}\n"));
        }
        if let Some(err) = &e.error {
            out.push_str(&format!("      error: {err}\n"));
        }
        out.push_str(&format!("      coverage: {}\n", e.coverage));
    }
    let t = &report.totals;
    out.push_str(&format!("{} passed, {} failed, {} errors\n", t.pass, t.fail, t.error));
    out
}
