//! One function per subcommand, each returning a [`Report`].

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use qwalk::exec::Exec;
use qwalk::graph::{build_family, cartesian_product, corona, graph_to_json, join, read_graph};
use qwalk::partition::{block_decomposition_check, verify_branch_pair};
use qwalk::spectral::analyze_with_tol;
use qwalk::transfer::{
    certify_pst, cycle_pair_family_predicate, cycle_pair_pgst_predicate, eigenvalue_support, evolve, fractional_revival_check,
    is_periodic, mstate_transfer_check, path_pair_pgst_predicate, path_vertex_pgst_predicate, pgst_evidence_for, pgst_obstructions,
    ppst_sweep, sedentary_bound, strongly_cospectral, ObstructionReport, ObstructionVerdict, Periodicity, PgstEvidence,
    SearchOptions, CERTIFY_FIDELITY,
};
use qwalk::{AlgebraicClass, BranchPair, FamilySpec, Graph, QuantumState, SpectralData, StateKind, TransferCertificate, Verdict};
use serde_json::{json, Value};

use crate::args::*;
use crate::parse;
use crate::report::{self, Report};

const PEAK_NOTE: &str = "time and fidelity are the best point of the grid search";

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub exec: Exec,
    pub tol: Option<f64>,
}

impl Ctx {
    pub fn spectrum(&self, g: &Graph) -> Result<SpectralData> {
        Ok(analyze_with_tol(g, self.tol)?)
    }
}

pub fn load(path: &Path) -> Result<Graph> {
    read_graph(path).with_context(|| format!("reading graph {}", path.display()))
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

pub fn generate(a: &GenerateArgs) -> Result<Value> {
    let size = || a.size.ok_or_else(|| anyhow!("{} needs a size", a.family));
    let spec = match a.family.as_str() {
        "path" => FamilySpec::Path(size()?),
        "cycle" => FamilySpec::Cycle(size()?),
        "complete" => FamilySpec::Complete(size()?),
        "star" => FamilySpec::Star(size()?),
        "book" => FamilySpec::Book(size()?),
        "cayley" => {
            if a.orders.is_empty() {
                bail!("cayley needs --orders");
            }
            let set = parse::tuples(a.connset.as_deref().ok_or_else(|| anyhow!("cayley needs --connset"))?)?;
            if a.symmetrize {
                FamilySpec::cayley_symmetrized(a.orders.clone(), set)
            } else {
                FamilySpec::CayleyAbelian { orders: a.orders.clone(), connection_set: set }
            }
        }
        "complete-minus-c4s" => {
            let cycles = parse::tuples(a.c4s.as_deref().unwrap_or(""))?
                .into_iter()
                .map(|c| {
                    let v: Vec<usize> = c.iter().map(|&x| usize::try_from(x)).collect::<Result<_, _>>()?;
                    <[usize; 4]>::try_from(v).map_err(|_| anyhow!("each 4-cycle needs four vertices"))
                })
                .collect::<Result<Vec<_>>>()?;
            FamilySpec::CompleteMinusC4s { n: size()?, cycles }
        }
        other => bail!("unknown family {other:?}"),
    };
    let mut g = build_family(&spec)?;
    if let Some(p) = &a.product {
        g = cartesian_product(&g, &load(p)?);
    }
    if let Some(p) = &a.join {
        g = join(&g, &load(p)?);
    }
    if let Some(p) = &a.corona {
        g = corona(&g, &load(p)?);
    }
    Ok(graph_to_json(&g))
}

pub fn class_json(c: &AlgebraicClass) -> Value {
    let int = |s: String| s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s));
    match c {
        AlgebraicClass::Integer { value } => json!({ "kind": "integer", "value": int(value.to_string()), "form": c.describe() }),
        AlgebraicClass::Quadratic { c: cc, d, delta } => {
            json!({ "kind": "quadratic", "c": int(cc.to_string()), "d": int(d.to_string()), "delta": delta, "form": c.describe() })
        }
        AlgebraicClass::Other { min_poly_degree } => json!({ "kind": "other", "min_poly_degree": min_poly_degree, "form": c.describe() }),
    }
}

fn eigen_entry(spec: &SpectralData, i: usize) -> Value {
    json!({
        "value": spec.eigenvalue(i),
        "multiplicity": spec.multiplicities()[i],
        "class": spec.classes().map(|c| class_json(&c[i])),
    })
}

pub fn spectrum(ctx: &Ctx, a: &GraphArg) -> Result<Report> {
    let g = load(&a.graph)?;
    let spec = ctx.spectrum(&g)?;
    let mut r = Report::new("spectrum", json!({ "graph": path_str(&a.graph) })).with_graph(&g);
    r.results = json!({
        "tolerance": spec.tol(),
        "spectral_radius": spec.spectral_radius(),
        "eigenvalues": (0..spec.len()).map(|i| eigen_entry(&spec, i)).collect::<Vec<_>>(),
        "char_poly_ascending": spec.char_poly().map(|p| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    });
    r.warnings.extend(spec.diagnostics().iter().cloned());
    if spec.classes().is_none() {
        r.warnings.push("non-integer weights: eigenvalues are not classified".into());
    }
    Ok(r)
}

pub fn periodicity_json(p: &Periodicity) -> Value {
    match p {
        Periodicity::Trivial => json!({ "periodic": true, "kind": "trivial" }),
        Periodicity::Integer => json!({ "periodic": true, "kind": "integer" }),
        Periodicity::Quadratic { c, delta } => json!({ "periodic": true, "kind": "quadratic", "c": c, "delta": delta }),
        Periodicity::NotPeriodic(why) => json!({ "periodic": false, "kind": "not-periodic", "reason": why }),
        Periodicity::Unknown(why) => json!({ "periodic": null, "kind": "unknown", "reason": why }),
    }
}

pub fn support(ctx: &Ctx, a: &SupportArgs) -> Result<Report> {
    let g = load(&a.graph)?;
    let spec = ctx.spectrum(&g)?;
    let s = parse::state(&g, &a.state)?;
    let sup = eigenvalue_support(&g, &spec, &s, a.support_tol);
    let per = is_periodic(&spec, &sup);
    let mut r = Report::new("support", json!({ "graph": path_str(&a.graph), "state": a.state, "with": a.with, "support_tol": a.support_tol }))
        .with_graph(&g);
    let entries: Vec<Value> = sup
        .indices
        .iter()
        .map(|&i| {
            let mut e = eigen_entry(&spec, i);
            e["projection_norm"] = json!(sup.norms[i]);
            e
        })
        .collect();
    let mut results = json!({ "state": s.describe(&g), "support": entries, "periodicity": periodicity_json(&per) });
    if let Some(other) = &a.with {
        let t = parse::state(&g, other)?;
        let sc = strongly_cospectral(&spec, &s, &t, a.support_tol.max(1e-12));
        let t_sup = eigenvalue_support(&g, &spec, &t, a.support_tol);
        results["strong_cospectrality"] = json!({
            "with": t.describe(&g),
            "holds": sc.holds,
            "same_support": t_sup.indices == sup.indices,
            "signs": sup.indices.iter().map(|&i| sc.signs[i]).collect::<Vec<_>>(),
            "first_failure": sc.first_failure.map(|i| spec.eigenvalue(i)),
        });
    }
    r.results = results;
    r.warnings.extend(sup.warnings);
    Ok(r)
}

fn pair_labels(g: &Graph, p: (usize, usize)) -> Value {
    json!([g.label(p.0), g.label(p.1)])
}

pub fn ppst(ctx: &Ctx, a: &PpstArgs) -> Result<Report> {
    let g = load(&a.graph)?;
    let spec = ctx.spectrum(&g)?;
    let mut r = Report::new(
        "ppst",
        json!({ "graph": path_str(&a.graph), "pairs": a.pairs, "source": a.source, "target": a.target, "sweep": a.sweep }),
    )
    .with_graph(&g);
    if a.sweep {
        let (results, warnings, certs) = sweep_json(&g, &spec, ctx.exec);
        r.results = results;
        r.warnings.extend(warnings);
        r.certificates = certs;
        return Ok(r);
    }
    let (Some(s), Some(t)) = parse::source_target(&g, a.pairs.as_deref(), a.source.as_deref(), a.target.as_deref())? else {
        bail!("ppst needs --pairs, --source and --target, or --sweep");
    };
    let cert = certify_pst(&g, &spec, &s, &t)?;
    r.results = json!({ "verdict": cert.verdict.to_string(), "criterion": cert.criterion });
    r.certificate(&g, &s, &t, &cert);
    Ok(r)
}

/// Sweep results, warnings and the certificates of certified pairs.
pub fn sweep_json(g: &Graph, spec: &SpectralData, exec: Exec) -> (Value, Vec<String>, Vec<Value>) {
    let sw = ppst_sweep(g, spec, exec);
    let n = g.n();
    let mut certs = Vec::new();
    let certified: Vec<Value> = sw
        .certified
        .iter()
        .map(|p| {
            let s = QuantumState::pair(n, p.source.0, p.source.1).expect("pair");
            let t = QuantumState::pair(n, p.target.0, p.target.1).expect("pair");
            certs.push(report::certificate_json(g, &s, &t, &p.certificate));
            json!({
                "source": pair_labels(g, p.source),
                "target": pair_labels(g, p.target),
                "time": p.certificate.time.map(|x| report::time(x, p.certificate.symbolic_time)),
                "phase": p.certificate.phase.map(report::complex),
                "fidelity": p.certificate.peak_fidelity,
            })
        })
        .collect();
    let sources: Vec<Value> = sw
        .sources
        .iter()
        .map(|s| {
            json!({
                "source": pair_labels(g, s.source),
                "partners_checked": s.partners_checked,
                "criteria": s.criteria,
                "certified_partner": s.certified_partner.map(|p| pair_labels(g, p)),
            })
        })
        .collect();
    (json!({ "certified": certified, "histogram": sw.histogram, "sources": sources }), sw.warnings, certs)
}

fn evidence_json(g: &Graph, s: &QuantumState, t: &QuantumState, ev: &PgstEvidence) -> Value {
    json!({
        "source": s.describe(g),
        "target": t.describe(g),
        "peak_fidelity": ev.peak_fidelity,
        "peak_time": ev.peak_time,
        "threshold": ev.threshold,
        "reached_threshold": ev.reached_threshold,
        "scanned_to": ev.scanned_to,
        "grid_step": ev.grid_step,
        "samples": ev.samples.iter().map(|&(t, f)| json!([t, f])).collect::<Vec<_>>(),
    })
}

fn obstruction_json(g: &Graph, o: &ObstructionReport) -> Value {
    let (verdict, criterion, refutations, survivors) = match &o.verdict {
        ObstructionVerdict::CertifiedNo { criterion, refutations } => ("certified-no", Some(criterion.clone()), refutations, 0),
        ObstructionVerdict::Inconclusive { refutations, survivors } => ("inconclusive", None, refutations, survivors.len()),
    };
    let shown: Vec<Value> = refutations
        .iter()
        .take(20)
        .map(|x| json!({ "target": x.target.describe(g), "criterion": x.criterion, "witness": x.witness }))
        .collect();
    json!({
        "verdict": verdict,
        "criterion": criterion,
        "refuted_targets": refutations.len(),
        "surviving_targets": survivors,
        "refutations": shown,
        "group_order": o.group_order,
        "closure_truncated": o.closure_truncated,
        "vertex_transitive": o.vertex_transitive,
        "notes": o.notes,
    })
}

fn certificate(verdict: Verdict, criterion: &str, notes: Vec<String>) -> TransferCertificate {
    TransferCertificate {
        verdict,
        time: None,
        symbolic_time: None,
        phase: None,
        peak_fidelity: None,
        criterion: criterion.into(),
        support: Vec::new(),
        notes,
    }
}

/// A pair target singled out by a family characterization.
struct FamilyMatch {
    target: QuantumState,
    holds: bool,
    k_equals_one: bool,
    statement: String,
}

/// Family predicate for `source` on a path or cycle with the standard
/// labelling, if one applies.
fn family_match(g: &Graph, source: &QuantumState) -> Option<FamilyMatch> {
    let n = g.n();
    match (source.kind(), g.as_path(), g.as_cycle()) {
        (StateKind::Pair(x, y), Some(_), _) => {
            let (a, b) = ((*x).min(*y), (*x).max(*y));
            // 1-based (a1, n + 1 - a1) -> ((n+1)/2 - a1, (n+1)/2 + a1)
            let a1 = a + 1;
            if (n + 1) % 2 == 1 || b + 1 != n + 1 - a1 || 4 * a1 == n + 1 {
                return None;
            }
            let h = n.div_ceil(2);
            let p = path_pair_pgst_predicate(n as u64, a1 as u64);
            let target = QuantumState::pair(n, h - a1 - 1, h + a1 - 1).ok()?;
            Some(FamilyMatch {
                target,
                holds: p.holds,
                k_equals_one: p.k_equals_one,
                statement: format!("path pair predicate for n = {n}, a = {a1}"),
            })
        }
        (StateKind::Pair(x, y), None, Some(_)) => {
            let (a, b) = ((*x).min(*y), (*x).max(*y));
            if n % 2 == 1 || a == 0 || b != n - a || 4 * a == n {
                return None;
            }
            let h = n / 2;
            let p = cycle_pair_family_predicate(n as u64, a as u64);
            let target = QuantumState::pair(n, h - a, h + a).ok()?;
            Some(FamilyMatch {
                target,
                holds: p.holds,
                k_equals_one: p.k_equals_one,
                statement: format!("cycle pair predicate for n = {n}, a = {a}"),
            })
        }
        (StateKind::Vertex(a), Some(_), _) => {
            let b = n - 1 - a;
            if *a == b {
                return None;
            }
            let holds = path_vertex_pgst_predicate(n as u64, *a as u64 + 1, b as u64 + 1);
            Some(FamilyMatch {
                target: QuantumState::vertex(n, b).ok()?,
                holds,
                k_equals_one: false,
                statement: format!("path vertex predicate for n = {n}, a = {}", a + 1),
            })
        }
        _ => None,
    }
}

fn automorphisms(g: &Graph, file: Option<&Path>) -> Result<(Vec<Vec<usize>>, &'static str)> {
    if let Some(p) = file {
        let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let autos: Vec<Vec<usize>> = serde_json::from_str(&text).context("automorphisms must be a JSON list of permutations")?;
        return Ok((autos, "file"));
    }
    if let Some(n) = g.as_path() {
        return Ok((FamilySpec::Path(n).automorphism_generators(), "path-family"));
    }
    if let Some(n) = g.as_cycle() {
        return Ok((FamilySpec::Cycle(n).automorphism_generators(), "cycle-family"));
    }
    Ok((Vec::new(), "none"))
}

pub fn pgst(ctx: &Ctx, a: &PgstArgs) -> Result<Report> {
    let g = load(&a.graph)?;
    let spec = ctx.spectrum(&g)?;
    let (autos, auto_source) = automorphisms(&g, a.automorphisms.as_deref())?;
    let opts = SearchOptions { horizon: a.horizon, threshold: a.threshold, stop_on_threshold: a.stop_early, exec: ctx.exec, ..Default::default() };
    let mut r = Report::new(
        "pgst",
        json!({
            "graph": path_str(&a.graph), "pairs": a.pairs, "source": a.source, "target": a.target,
            "horizon": a.horizon, "threshold": a.threshold, "stop_early": a.stop_early,
            "automorphisms": a.automorphisms.as_deref().map(path_str),
        }),
    )
    .with_graph(&g);
    if autos.is_empty() {
        r.warnings.push("no automorphisms supplied: structural obstructions cannot fire".into());
    }
    let (source, target) = parse::source_target(&g, a.pairs.as_deref(), a.source.as_deref(), a.target.as_deref())?;
    let Some(source) = source else {
        return pgst_graph(ctx, &g, &spec, &autos, auto_source, &opts, r);
    };

    let obs = pgst_obstructions(&g, &source, target.as_ref(), &autos)?;
    let family = family_match(&g, &source);
    let mut results = json!({ "automorphism_source": auto_source, "obstructions": obstruction_json(&g, &obs) });
    let family_target = family.as_ref().filter(|f| target.as_ref().is_none_or(|t| t.is_dependent(&f.target)));
    if let Some(f) = &family {
        results["family"] = json!({
            "statement": f.statement,
            "target": f.target.describe(&g),
            "holds": f.holds,
            "k_equals_one": f.k_equals_one,
            "applies_to_target": family_target.is_some(),
        });
    }
    let eval_target = target.clone().or_else(|| family.as_ref().map(|f| f.target.clone()));
    let evidence = eval_target.as_ref().map(|t| pgst_evidence_for(&spec, &source, t, &opts));
    if let (Some(t), Some(ev)) = (&eval_target, &evidence) {
        results["evidence"] = evidence_json(&g, &source, t, ev);
    }
    let mut cert = if let Some(crit) = obs.criterion() {
        certificate(Verdict::CertifiedNo, crit, vec!["automorphism obstruction".into()])
    } else if let Some(f) = family_target.filter(|f| f.holds) {
        let mut notes = vec![f.statement.clone()];
        if f.k_equals_one {
            notes.push("divisibility condition read as vacuous for k = 1".into());
        }
        certificate(Verdict::CertifiedYes, "family-theorem", notes)
    } else {
        certificate(Verdict::EvidenceOnly, "obstructions-inconclusive", vec!["no obstruction fired and no family theorem applies".into()])
    };
    if let Some(ev) = &evidence {
        cert.time = Some(ev.peak_time);
        cert.peak_fidelity = Some(ev.peak_fidelity);
        cert.notes.push(PEAK_NOTE.into());
    }
    r.results = results;
    match &eval_target {
        Some(t) => r.certificate(&g, &source, t, &cert),
        None => {
            r.certificates.push(json!({
                "source": source.describe(&g), "target": "any", "verdict": cert.verdict.to_string(), "criterion": cert.criterion,
                "time": null, "phase": null, "peak_fidelity": null, "support": [], "notes": cert.notes,
            }));
            if cert.verdict == Verdict::EvidenceOnly {
                r.warnings.push(format!("{}: evidence only ({})", source.describe(&g), cert.criterion));
            }
        }
    }
    Ok(r)
}

/// Graph-level pgst: obstructions over every pair source, plus the family
/// characterization and evidence for the family pairs on cycles and paths.
fn pgst_graph(
    ctx: &Ctx,
    g: &Graph,
    spec: &SpectralData,
    autos: &[Vec<usize>],
    auto_source: &str,
    opts: &SearchOptions,
    mut r: Report,
) -> Result<Report> {
    let n = g.n();
    let sources: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let reports = ctx.exec.map(&sources, |&(a, b)| {
        let s = QuantumState::pair(n, a, b).expect("pair");
        pgst_obstructions(g, &s, None, autos)
    });
    let reports: Vec<ObstructionReport> = reports.into_iter().collect::<Result<_, _>>()?;
    let refuted = reports.iter().filter(|o| o.is_no()).count();
    let mut criteria = std::collections::BTreeMap::<String, usize>::new();
    for o in &reports {
        if let Some(c) = o.criterion() {
            *criteria.entry(c.to_string()).or_default() += 1;
        }
    }
    let mut results = json!({
        "automorphism_source": auto_source,
        "pair_sources": sources.len(),
        "refuted_sources": refuted,
        "criteria": criteria,
    });

    let graph_predicate = g.as_cycle().map(|m| (format!("cycle pair characterization for n = {m}"), cycle_pair_pgst_predicate(m as u64)));
    let mut family_pairs = Vec::new();
    for &(a, b) in &sources {
        let s = QuantumState::pair(n, a, b).expect("pair");
        if let Some(f) = family_match(g, &s).filter(|f| f.holds) {
            family_pairs.push((s, f));
        }
    }
    let evidence = ctx.exec.map(&family_pairs, |(s, f)| pgst_evidence_for(spec, s, &f.target, &SearchOptions { exec: Exec::Sequential, ..*opts }));
    results["family_pairs"] = json!(family_pairs
        .iter()
        .zip(&evidence)
        .map(|((s, f), ev)| json!({ "statement": f.statement, "k_equals_one": f.k_equals_one, "evidence": evidence_json(g, s, &f.target, ev) }))
        .collect::<Vec<_>>());
    if let Some((statement, holds)) = &graph_predicate {
        results["characterization"] = json!({ "statement": statement, "holds": holds });
    }

    let any = |c: TransferCertificate| -> Value {
        json!({ "source": "any pair", "target": "any pair", "verdict": c.verdict.to_string(), "criterion": c.criterion,
                "time": null, "phase": null, "peak_fidelity": c.peak_fidelity, "support": [], "notes": c.notes })
    };
    if refuted == sources.len() && !sources.is_empty() {
        let crit = if criteria.len() == 1 { criteria.keys().next().cloned().unwrap_or_default() } else { "all-sources-refuted".into() };
        r.certificates.push(any(certificate(Verdict::CertifiedNo, &crit, vec![format!("all {refuted} pair sources refuted")])));
    } else if graph_predicate.as_ref().is_some_and(|p| p.1) || !family_pairs.is_empty() {
        let best = evidence.iter().map(|e| e.peak_fidelity).fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
        let mut c = certificate(Verdict::CertifiedYes, "family-theorem", vec![graph_predicate.as_ref().map(|p| p.0.clone()).unwrap_or_else(|| "path pair predicate".into())]);
        c.peak_fidelity = best;
        r.certificates.push(any(c));
        for ((s, f), ev) in family_pairs.iter().zip(&evidence) {
            let mut c = certificate(Verdict::CertifiedYes, "family-theorem", vec![f.statement.clone()]);
            c.time = Some(ev.peak_time);
            c.peak_fidelity = Some(ev.peak_fidelity);
            c.notes.push(PEAK_NOTE.into());
            r.certificate(g, s, &f.target, &c);
        }
    } else {
        r.certificates.push(any(certificate(Verdict::EvidenceOnly, "obstructions-inconclusive", vec![format!("{} of {} pair sources survive", sources.len() - refuted, sources.len())])));
        r.warnings.push("graph-level pgst: evidence only (obstructions-inconclusive)".into());
    }
    r.results = results;
    Ok(r)
}

pub fn revival(ctx: &Ctx, a: &RevivalArgs) -> Result<Report> {
    let g = load(&a.graph)?;
    let spec = ctx.spectrum(&g)?;
    let s1 = parse::state(&g, &a.source)?;
    let s2 = parse::state(&g, &a.target)?;
    let t = parse::expr(&a.time)?;
    let mut r = Report::new(
        "revival",
        json!({ "graph": path_str(&a.graph), "source": a.source, "target": a.target, "time": a.time, "residual_tol": a.residual_tol }),
    )
    .with_graph(&g);
    let rev = fractional_revival_check(&spec, t, &s1, &s2, a.residual_tol);
    r.results = json!({
        "source": s1.describe(&g),
        "target": s2.describe(&g),
        "time": report::time(t, None),
        "revival": rev.map(|x| json!({ "alpha": report::complex(x.alpha), "beta": report::complex(x.beta), "residual": x.residual })),
    });
    Ok(r)
}

pub fn sedentary(ctx: &Ctx, a: &SedentaryArgs) -> Result<Report> {
    let g = load(&a.graph)?;
    let spec = ctx.spectrum(&g)?;
    let v = parse::vertex(&g, &a.vertex)?;
    let est = sedentary_bound(&spec, v, a.horizon, ctx.exec);
    let mut r = Report::new("sedentary", json!({ "graph": path_str(&a.graph), "vertex": a.vertex, "horizon": a.horizon })).with_graph(&g);
    r.results = json!({
        "vertex": g.label(v),
        "infimum_estimate": est.infimum_estimate,
        "time": est.time,
        "horizon": est.horizon,
        "grid_step": est.grid_step,
        "note": "grid minimum; an upper bound on the true infimum",
    });
    Ok(r)
}

/// One branch pair object or a list of them.
pub fn read_branches(path: &Path, g: &Graph) -> Result<Vec<BranchPair>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).context("branch file is not JSON")?;
    let items = match v {
        Value::Array(xs) => xs,
        other => vec![other],
    };
    items.iter().map(|x| Ok(BranchPair::from_json(&x.to_string(), g)?)).collect()
}

pub fn mstate(ctx: &Ctx, a: &MstateArgs) -> Result<Report> {
    let g = load(&a.graph)?;
    let spec = ctx.spectrum(&g)?;
    let branches = read_branches(&a.branches, &g)?;
    let va = parse::vertex(&g, &a.a)?;
    let vb = parse::vertex(&g, &a.b)?;
    let norm = a.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        bail!("coefficients are all zero");
    }
    let coeffs: Vec<f64> = a.coeffs.iter().map(|c| c / norm).collect();
    let (cert, s, t) = mstate_transfer_check(&g, &spec, &branches, va, vb, &coeffs)?;
    let mut r = Report::new(
        "mstate",
        json!({ "graph": path_str(&a.graph), "branches": path_str(&a.branches), "a": a.a, "b": a.b, "coeffs": a.coeffs }),
    )
    .with_graph(&g);
    r.results = json!({ "coefficients": coeffs, "verdict": cert.verdict.to_string(), "criterion": cert.criterion });
    r.certificate(&g, &s, &t, &cert);
    Ok(r)
}

/// Verification, block check and lifted vertex transfers for one branch pair.
pub fn branch_report(ctx: &Ctx, g: &Graph, bp: &BranchPair, times: &[f64], r: &mut Report) -> Result<Value> {
    let check = verify_branch_pair(g, bp);
    let labels = |xs: &[usize]| xs.iter().map(|&v| g.label(v).to_string()).collect::<Vec<_>>();
    let mut out = json!({
        "copy1": labels(bp.copy1()),
        "copy2": labels(bp.copy2()),
        "valid": check.valid,
        "diagnostics": check.diagnostics,
    });
    if !check.valid {
        r.warnings.push(format!("branch pair {:?} is invalid", labels(bp.copy1())));
        return Ok(out);
    }
    let block = block_decomposition_check(g, bp, times, ctx.exec)?;
    out["block_check"] = json!({
        "times": block.times,
        "deviations": block.deviations,
        "max_deviation": block.max_deviation,
        "quotient_cells": block.cells.iter().map(|c| labels(c)).collect::<Vec<_>>(),
        "partition": "orbit partition of the switching automorphism, refined to equitability",
    });

    let x1 = g.induced_subgraph(bp.copy1());
    let sx = ctx.spectrum(&x1)?;
    let sg = ctx.spectrum(g)?;
    let m = x1.n();
    let mut lifted = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let cert = certify_pst(&x1, &sx, &QuantumState::vertex(m, i)?, &QuantumState::vertex(m, j)?)?;
            if !cert.is_yes() {
                continue;
            }
            let (u, v) = (bp.copy1()[i], bp.copy1()[j]);
            let s = QuantumState::pair(g.n(), u, bp.twin(u).expect("copy1"))?;
            let t = QuantumState::pair(g.n(), v, bp.twin(v).expect("copy1"))?;
            let tau = cert.time.expect("certified time");
            let w = evolve(&sg, tau, &s);
            let fid = t.amplitudes().iter().zip(&w).map(|(x, y)| x.conj() * y).sum::<qwalk::Complex64>().norm_sqr();
            let mut lc = cert.clone();
            lc.criterion = "branch-construction".into();
            lc.support.clear();
            lc.peak_fidelity = Some(fid);
            lc.notes.push(format!("vertex transfer {} -> {} on the branch", g.label(u), g.label(v)));
            if fid < CERTIFY_FIDELITY {
                lc.verdict = Verdict::EvidenceOnly;
                lc.criterion = "numeric-verification-failed".into();
            }
            lifted.push(json!({
                "branch_transfer": [g.label(u), g.label(v)],
                "source": s.describe(g),
                "target": t.describe(g),
                "time": report::time(tau, cert.symbolic_time),
                "fidelity_on_graph": fid,
            }));
            r.certificate(g, &s, &t, &lc);
        }
    }
    out["lifted_transfers"] = json!(lifted);
    Ok(out)
}

pub fn branch_verify(ctx: &Ctx, a: &BranchArgs) -> Result<Report> {
    let g = load(&a.graph)?;
    let branches = read_branches(&a.branch, &g)?;
    let times: Vec<f64> = if a.times.is_empty() {
        vec![0.3, 1.0, std::f64::consts::FRAC_PI_2]
    } else {
        a.times.iter().map(|t| parse::expr(t)).collect::<Result<_>>()?
    };
    let mut r = Report::new("branch-verify", json!({ "graph": path_str(&a.graph), "branch": path_str(&a.branch), "times": a.times }))
        .with_graph(&g);
    let mut out = Vec::new();
    for bp in &branches {
        out.push(branch_report(ctx, &g, bp, &times, &mut r)?);
    }
    r.results = json!({ "branch_pairs": out });
    Ok(r)
}
