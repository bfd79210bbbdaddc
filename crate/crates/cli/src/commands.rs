//! One function per subcommand. Each returns the result payload and a
//! status; the envelope is added by the caller.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use lieq::dgl::Dgl;
use lieq::dgl_homology::{bigraded_homology, cohomology, compare_with_coformal, HomologyError};
use lieq::jacobi::{free_jacobi_level, jacobi_report, JacobiError, JacobiReport};
use lieq::lie::{Gen, LieElement};
use lieq::models::{
    bigraded_model, coformal_check, filtered_model, minimal_model, BigradedModel, GLPresentation, HomologyTarget, LieTarget,
    ModelError,
};
use lieq::resolution::{minimal_cw_resolution, theta, CanonicalResolution, FilteredGenerators, ResolutionError};
use lieq::Q;
use num_traits::Zero;

use crate::presentation::Presentation;
use crate::report::{Diagnostic, Outcome, Status};

#[derive(Clone, Copy, Debug)]
pub struct Cutoffs {
    pub deg: u32,
    pub filt: u32,
    pub simp: u32,
}

pub enum Extra {
    None,
    Compare(bool),
    Coefficients(String),
    Level(u32),
}

pub fn run(command: &str, p: &Presentation, cut: Cutoffs, extra: &Extra) -> Outcome {
    if command == "validate" {
        return validate(p, cut);
    }
    if p.has_relations() && command != "bigraded-model" {
        return Outcome::failed(
            Diagnostic::new("unsupported", format!("`{command}` works on a DGL; [relations] are only read by validate and bigraded-model")),
            Status::Diagnostic,
        );
    }
    let d = match checked_dgl(p, cut.deg + 1) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let r = match (command, extra) {
        ("homology", _) => homology(&d, cut),
        ("minimal-model", _) => minimal(&d, cut),
        ("bigraded-model", _) => bigraded(p, &d, cut),
        ("filtered-model", _) => filtered(&d, cut),
        ("coformal", _) => coformal(&d, cut),
        ("resolution", _) => resolution(&d, cut),
        ("dgl-homology", Extra::Compare(c)) => dgl_homology(&d, cut, *c),
        ("cohomology", Extra::Coefficients(c)) => cohomology_cmd(&d, cut, c),
        ("jacobi-check", Extra::Level(l)) => jacobi(&d, cut, *l),
        _ => unreachable!("clap only produces known commands"),
    };
    r.unwrap_or_else(|o| o)
}

type Run = Result<Outcome, Outcome>;

fn q(c: &Q) -> Value {
    json!(c.to_string())
}

fn gen_json(g: &Gen, d: &LieElement<Gen>) -> Value {
    json!({ "name": g.name.as_ref(), "degree": g.degree, "differential": d.render() })
}

fn incomplete(cells: &[((u32, u32), usize)]) -> Value {
    Value::Array(cells.iter().map(|((n, k), dim)| json!({ "bidegree": [n, k], "dim": dim })).collect())
}

fn model_error(e: ModelError) -> Outcome {
    match e {
        ModelError::CutoffIncomplete(m) => Outcome::failed(Diagnostic::new("cutoff-incomplete", m), Status::CutoffIncomplete),
        other => Outcome::failed(Diagnostic::new("model", other.to_string()), Status::Diagnostic),
    }
}

fn resolution_error(e: ResolutionError) -> Outcome {
    match e {
        ResolutionError::Model(m) => model_error(m),
        other => Outcome::failed(Diagnostic::new("resolution", other.to_string()), Status::Diagnostic),
    }
}

fn homology_error(e: HomologyError) -> Outcome {
    match e {
        HomologyError::Incomplete(m) => Outcome::failed(Diagnostic::new("cutoff-incomplete", m), Status::CutoffIncomplete),
        HomologyError::Model(m) => model_error(m),
        HomologyError::Resolution(r) => resolution_error(r),
        other => Outcome::failed(Diagnostic::new("homology", other.to_string()), Status::Diagnostic),
    }
}

fn plain(kind: &str, e: impl std::fmt::Display) -> Outcome {
    Outcome::failed(Diagnostic::new(kind, e.to_string()), Status::Diagnostic)
}

/// The DGL of `p`, rejected with one diagnostic per generator if `∂² ≠ 0`.
fn checked_dgl(p: &Presentation, cutoff: u32) -> Result<Dgl<Gen>, Outcome> {
    let d = p.dgl(cutoff).map_err(|e| plain("dgl", e))?;
    let report = d.validate();
    if report.is_valid() {
        return Ok(d);
    }
    Err(Outcome {
        status: Status::Diagnostic,
        result: Value::Null,
        diagnostics: report
            .violations
            .iter()
            .map(|v| {
                Diagnostic::new("square-zero", format!("∂∂{} = {} is not zero", v.generator.name, v.residue.render())).on(&v.generator.name)
            })
            .collect(),
    })
}

fn validate(p: &Presentation, cut: Cutoffs) -> Outcome {
    let d = match p.dgl(cut.deg) {
        Ok(d) => d,
        Err(e) => return plain("dgl", e),
    };
    let report = d.validate();
    let mut diagnostics: Vec<Diagnostic> = report
        .violations
        .iter()
        .map(|v| Diagnostic::new("square-zero", format!("∂∂{} = {} is not zero", v.generator.name, v.residue.render())).on(&v.generator.name))
        .collect();
    if p.has_relations() {
        if let Err(e) = p.gl_presentation(cut.deg + 1) {
            diagnostics.push(Diagnostic::new("relations", e.to_string()));
        }
    }
    let result = json!({
        "generators": d.generators().iter().map(|g| gen_json(g, &d.differential_of(g))).collect::<Vec<_>>(),
        "relations": p.relations.iter().map(|(n, r)| json!({ "name": n, "value": r.render() })).collect::<Vec<_>>(),
        "square_zero": report.is_valid(),
        "minimal": d.is_minimal(),
        "normalized": p.to_text(),
        "round_trip": crate::presentation::parse(&p.to_text()).is_ok_and(|back| back.equivalent(p)),
    });
    let status = if diagnostics.is_empty() { Status::Ok } else { Status::Diagnostic };
    Outcome { status, result, diagnostics }
}

fn homology(d: &Dgl<Gen>, cut: Cutoffs) -> Run {
    let h = d.chain_homology(cut.deg).map_err(|e| plain("dgl", e))?;
    let mut betti = serde_json::Map::new();
    let mut reps = serde_json::Map::new();
    for (n, dh) in &h.degrees {
        betti.insert(n.to_string(), json!(dh.betti));
        if dh.betti > 0 {
            reps.insert(n.to_string(), json!(dh.representatives.iter().map(|r| r.render()).collect::<Vec<_>>()));
        }
    }
    Ok(Outcome::ok(json!({ "through": h.through, "betti": betti, "representatives": reps })))
}

fn minimal(d: &Dgl<Gen>, cut: Cutoffs) -> Run {
    let m = minimal_model(d, cut.deg).map_err(model_error)?;
    let qi = m.verify_quasi_iso(cut.deg).map_err(model_error)?;
    let gens: Vec<Value> = m
        .source
        .generators()
        .iter()
        .map(|g| {
            let mut v = gen_json(g, &m.source.differential_of(g));
            v["image"] = json!(m.images.get(g).map(|e| e.render()).unwrap_or_else(|| "0".into()));
            v
        })
        .collect();
    let result = json!({ "generators": gens, "decomposable": m.source.is_minimal(), "quasi_isomorphism_through": cut.deg, "quasi_isomorphism": qi });
    let mut o = Outcome::ok(result);
    if !qi {
        o.status = Status::Diagnostic;
        o.diagnostics.push(Diagnostic::new("model", "the comparison map is not a quasi-isomorphism through the cutoff"));
    }
    Ok(o)
}

fn model_json(m: &BigradedModel, differential: &dyn Fn(&Gen) -> LieElement<Gen>) -> Vec<Value> {
    m.generators()
        .iter()
        .map(|g| {
            let (n, k) = m.bidegree(g);
            let mut v = gen_json(g, &differential(g));
            v["bidegree"] = json!([n, k]);
            v
        })
        .collect()
}

fn table_json(m: &BigradedModel) -> Value {
    Value::Array(m.generator_table().iter().map(|((n, k), c)| json!({ "bidegree": [n, k], "count": c })).collect())
}

/// Truncation is reported as exit status 2: the model is not a model through
/// the degree cutoff wherever `incomplete` is nonempty.
fn incomplete_status(m: &BigradedModel) -> (Status, Vec<Diagnostic>) {
    if m.incomplete.is_empty() {
        return (Status::Ok, Vec::new());
    }
    let cells: Vec<String> = m.incomplete.iter().map(|((n, k), d)| format!("H_{{{n},{k}}} (dim {d})")).collect();
    let msg = format!("filtration cutoff {} leaves homology unkilled in {}", m.filt_cutoff, cells.join(", "));
    (Status::CutoffIncomplete, vec![Diagnostic::new("cutoff-incomplete", msg)])
}

fn bigraded(p: &Presentation, d: &Dgl<Gen>, cut: Cutoffs) -> Run {
    fn build(target: &impl LieTarget, cut: Cutoffs, kind: &str) -> Run {
        let mut m = bigraded_model(target, cut.deg, cut.filt).map_err(model_error)?;
        let verified = m.verify_against(target).map_err(model_error)?;
        let (mut status, mut diagnostics) = incomplete_status(&m);
        if !verified || !m.is_decomposable() || !m.squares_to_zero() {
            status = Status::Diagnostic;
            diagnostics.push(Diagnostic::new("model", "model failed its own verification"));
        }
        let result = json!({
            "target": kind,
            "generators": model_json(&m, &|g| m.differential_of(g)),
            "table": table_json(&m),
            "decomposable": m.is_decomposable(),
            "square_zero": m.squares_to_zero(),
            "verified": verified,
            "incomplete": incomplete(&m.incomplete),
        });
        Ok(Outcome { status, result, diagnostics })
    }
    if p.has_relations() {
        let gl: GLPresentation = p.gl_presentation(cut.deg + 1).map_err(model_error)?;
        build(&gl, cut, "relations")
    } else {
        build(&HomologyTarget::new(d), cut, "homology")
    }
}

fn filtered(d: &Dgl<Gen>, cut: Cutoffs) -> Run {
    let fm = filtered_model(d, cut.deg, cut.filt).map_err(model_error)?;
    let qi = fm.morphism().verify_quasi_iso(cut.deg).map_err(model_error)?;
    let (mut status, mut diagnostics) = incomplete_status(&fm.model);
    let ok = qi && fm.leading_term_matches() && fm.squares_to_zero();
    if !ok {
        status = Status::Diagnostic;
        diagnostics.push(Diagnostic::new("model", "filtered model failed its own verification"));
    }
    let perts: Vec<Value> = fm
        .perturbations()
        .iter()
        .map(|(g, r, c)| json!({ "generator": g.name.as_ref(), "order": r, "component": c.render() }))
        .collect();
    let gens: Vec<Value> = model_json(&fm.model, &|g| fm.differential_of(g))
        .into_iter()
        .zip(fm.generators())
        .map(|(mut v, g)| {
            v["image"] = json!(fm.phi_of(g).render());
            v
        })
        .collect();
    let result = json!({
        "generators": gens,
        "table": table_json(&fm.model),
        "perturbations": perts,
        "perturbed": fm.is_perturbed(),
        "square_zero": fm.squares_to_zero(),
        "quasi_isomorphism": qi,
        "incomplete": incomplete(&fm.model.incomplete),
    });
    Ok(Outcome { status, result, diagnostics })
}

fn coformal(d: &Dgl<Gen>, cut: Cutoffs) -> Run {
    let r = coformal_check(d, cut.deg, cut.filt).map_err(model_error)?;
    let classes: Vec<Value> = r
        .classes
        .iter()
        .map(|c| {
            json!({
                "generator": c.generator,
                "bidegree": [c.bidegree.0, c.bidegree.1],
                "order": c.order,
                "component": c.component.iter().map(|(m, x)| json!([m, q(x)])).collect::<Vec<_>>(),
                // Sparse coordinates `[index, coefficient]` in the homology basis.
                "homology_class": c.homology_class.as_ref().map(|v| {
                    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| json!([i, q(x)])).collect::<Vec<_>>()
                }),
            })
        })
        .collect();
    // n0 = 2 is the least possible order, so it survives truncation; any
    // other verdict could change with more filtration.
    let settled = r.incomplete.is_empty() || r.n0 == Some(2);
    let mut o = Outcome::ok(json!({
        "coformal": r.coformal,
        "n0": r.n0,
        "classes": classes,
        "settled": settled,
        "incomplete": incomplete(&r.incomplete),
    }));
    if !settled {
        o.status = Status::CutoffIncomplete;
        o.diagnostics.push(Diagnostic::new(
            "cutoff-incomplete",
            format!("the verdict may change above filtration {}: homology is left unkilled", r.filt_cutoff),
        ));
    }
    Ok(o)
}

fn resolution(d: &Dgl<Gen>, cut: Cutoffs) -> Run {
    let fm = filtered_model(d, cut.deg, cut.simp).map_err(model_error)?;
    let src = FilteredGenerators::from_filtered(&fm);
    let w = Arc::new(CanonicalResolution::new(&src.dgl, cut.simp as usize, cut.deg));
    let emb = theta(src, w).map_err(resolution_error)?;
    let ladders = emb.verify().is_ok();
    let r = minimal_cw_resolution(emb).map_err(resolution_error)?;
    let cw = r.check_cw();
    let check = r.homology.check_resolution().map_err(resolution_error)?;
    let cells: Vec<Value> = r
        .cells()
        .iter()
        .map(|c| json!({ "generator": c.generator.name.as_ref(), "dim": c.dim, "internal_degree": c.internal_degree, "sphere": c.sphere.render() }))
        .collect();
    let result = json!({
        "cells": cells,
        "minimal": r.homology.is_minimal(),
        "ladders_verified": ladders,
        "cw_basis": cw.is_ok(),
        "pi0": check.pi0.iter().map(|(k, a, b)| json!({ "degree": k, "pi0": a, "homology": b })).collect::<Vec<_>>(),
        "higher": check.higher.iter().map(|(s, k, dim)| json!({ "s": s, "degree": k, "dim": dim })).collect::<Vec<_>>(),
        "resolution": check.is_resolution(),
        "simp_range": check.simp_range,
        "deg_range": check.deg_range,
    });
    let (mut status, mut diagnostics) = incomplete_status(&fm.model);
    if !ladders || cw.is_err() || !check.is_resolution() {
        status = Status::Diagnostic;
        if let Err(e) = cw {
            diagnostics.push(Diagnostic::new("resolution", e.to_string()));
        } else {
            diagnostics.push(Diagnostic::new("resolution", "the simplicial resolution failed its checks"));
        }
    }
    Ok(Outcome { status, result, diagnostics })
}

fn dgl_homology(d: &Dgl<Gen>, cut: Cutoffs, compare: bool) -> Run {
    let h = bigraded_homology(d, cut.deg, cut.simp as usize).map_err(homology_error)?;
    let cells: Vec<Value> = h
        .cells
        .iter()
        .map(|((s, t), c)| json!({ "s": s, "t": t, "dim": c.betti, "representatives": c.representatives }))
        .collect();
    let mut result = json!({ "cells": cells, "simp_range": h.simp_range, "deg_range": h.deg_range, "resolution": h.resolution });
    let mut o = Outcome::ok(Value::Null);
    if compare {
        let c = compare_with_coformal(d, cut.deg, cut.simp as usize).map_err(homology_error)?;
        result["comparison"] = json!({
            "holds": c.holds(),
            "strict_after_cancellation": c.is_strict_after_cancellation(),
            "rows": c.rows.iter().map(|r| json!({ "s": r.s, "t": r.t, "dim": r.dim, "coformal_dim": r.coformal_dim, "surviving": r.surviving })).collect::<Vec<_>>(),
        });
        if !c.holds() {
            o.status = Status::Diagnostic;
            o.diagnostics.push(Diagnostic::new("homology", "the dimension comparison with the coformal model fails"));
        }
    }
    o.result = result;
    Ok(o)
}

pub fn parse_coefficients(s: &str) -> Result<BTreeMap<i64, usize>, String> {
    let mut m = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once(':').ok_or_else(|| format!("expected `degree:dim`, got `{part}`"))?;
        let k: i64 = k.trim().parse().map_err(|_| format!("bad degree in `{part}`"))?;
        let v: usize = v.trim().parse().map_err(|_| format!("bad dimension in `{part}`"))?;
        if v > 0 {
            *m.entry(k).or_insert(0) += v;
        }
    }
    Ok(m)
}

fn cohomology_cmd(d: &Dgl<Gen>, cut: Cutoffs, coefficients: &str) -> Run {
    let m = parse_coefficients(coefficients).map_err(|e| plain("coefficients", e))?;
    let h = bigraded_homology(d, cut.deg, cut.simp as usize).map_err(homology_error)?;
    let (lo, hi) = match (m.keys().next(), m.keys().next_back()) {
        (Some(&lo), Some(&hi)) => (lo - h.deg_range as i64, hi - 1),
        _ => (0, -1),
    };
    let t = cohomology(&h, &m, 0..=h.simp_range, lo..=hi);
    let cells: Vec<Value> = t
        .cells
        .iter()
        .filter(|(_, c)| c.dim > 0)
        .map(|((s, t), c)| {
            json!({
                "s": s,
                "t": t,
                "dim": c.dim,
                "basis": c.basis.iter().map(|(r, j, i)| json!({ "dual_of": r, "j": j, "coefficient": i })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let coeffs: serde_json::Map<String, Value> = m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    Ok(Outcome::ok(json!({
        "convention": t.convention,
        "coefficients": coeffs,
        "cells": cells,
        "simp_range": h.simp_range,
        "t_range": [lo, hi],
    })))
}

fn jacobi_json(r: &JacobiReport) -> Value {
    json!({
        "through": r.through,
        "betti": r.betti.iter().map(|(k, b)| (k.to_string(), json!(b))).collect::<serde_json::Map<_, _>>(),
        "checked": r.checked,
        "failures": r.failures,
        "jacobi": r.is_jacobi(),
    })
}

fn jacobi(d: &Dgl<Gen>, cut: Cutoffs, level: u32) -> Run {
    let through = cut.deg;
    let lie = jacobi_report(d, through).map_err(|e| plain("jacobi", e))?;
    let mut o = Outcome::ok(Value::Null);
    let free = match free_jacobi_level(d, level, through) {
        Err(JacobiError::NotLinear(g, _)) => json!({ "skipped": format!("∂{g} is decomposable; the free Jacobi algebra needs a linear differential") }),
        Err(e) => return Err(plain("jacobi", e)),
        Ok(j) => {
            let violations = j.square_zero_violations();
            let rows = j.compare_with_lie(d, through).map_err(|e| plain("jacobi", e))?;
            let report = jacobi_report(&j, through).map_err(|e| plain("jacobi", e))?;
            if !violations.is_empty() {
                o.status = Status::Diagnostic;
                o.diagnostics.push(Diagnostic::new("square-zero", format!("∂² ≠ 0 on {} basis elements", violations.len())));
            }
            if !report.is_jacobi() {
                o.status = Status::Diagnostic;
                o.diagnostics.push(Diagnostic::new("jacobi", "homology of the free Jacobi algebra is not a graded Lie algebra"));
            }
            let first_failure = rows.iter().find(|r| !r.is_quasi_iso()).map(|r| r.degree);
            json!({
                "level": level,
                "dims": (1..=through).map(|n| json!({ "degree": n, "dim": j.dim(n) })).collect::<Vec<_>>(),
                "square_zero": violations.is_empty(),
                "theta": rows.iter().map(|r| json!({
                    "degree": r.degree, "dim_j": r.dim_j, "dim_l": r.dim_l, "betti_j": r.betti_j, "betti_l": r.betti_l,
                    "induced_rank": r.induced_rank, "chain_map": r.chain_map, "quasi_isomorphism": r.is_quasi_iso(),
                })).collect::<Vec<_>>(),
                "theta_first_failure": first_failure,
                "homology": jacobi_json(&report),
            })
        }
    };
    if !lie.is_jacobi() {
        o.status = Status::Diagnostic;
        o.diagnostics.push(Diagnostic::new("jacobi", "homology of the DGL is not a graded Lie algebra"));
    }
    o.result = json!({ "dgl": jacobi_json(&lie), "free_jacobi": free });
    Ok(o)
}
