use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::path::Path;

use ibiskit::action::{self, primitivity as primitivity_of, Primitivity};
use ibiskit::certificate::{Decision, IbisCertificate, Method, Stats};
use ibiskit::ibis::{
    all_bases_reorder_invariant, base_size_with_budget, check_reorder_invariance, enumerate_irredundant_bases,
    enumerate_irredundant_tuples, extract_matroid, t1_random_search, t2_conjugate_chain, t3_restricted_search,
    verify_base_exchange, ExchangeCheck, Mode, ReorderCheck,
};
use ibiskit::io::certificate_to_json;
use ibiskit::theorem;
use ibiskit::{is_ibis as decide, Error, Group, IbisOptions, IrredundantTuple};
use serde_json::{json, Value};

use crate::spec::{apply_action, load_subgroup, usage, Acted};
use crate::{Common, Outcome};

fn labels(points: &[usize]) -> Vec<usize> {
    points.iter().map(|p| p + 1).collect()
}

fn fmt_points(points: &[usize]) -> String {
    let parts: Vec<String> = points.iter().map(|p| (p + 1).to_string()).collect();
    format!("({})", parts.join(", "))
}

fn fmt_chain(orders: &[u128]) -> String {
    let parts: Vec<String> = orders.iter().map(u128::to_string).collect();
    parts.join(" > ")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn acted(o: &Common) -> Result<Acted, Error> {
    apply_action(&o.group, &o.action, o.index_cap)
}

fn optional_b(g: &Group, budget: u64) -> Result<Option<usize>, Error> {
    match base_size_with_budget(g, budget) {
        Ok(b) => Ok(Some(b)),
        Err(Error::BudgetExhausted { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn cert_text(cert: &IbisCertificate) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "group: {} (degree {}, order {})", cert.group, cert.degree, cert.order);
    match cert.b {
        Some(b) => {
            let _ = writeln!(t, "base size: {b}");
        }
        None => t.push_str("base size: unknown (budget exhausted)\n"),
    }
    let _ = writeln!(t, "decision: {} (method {})", cert.decision, cert.method);
    if let Some(seed) = cert.seed {
        let _ = writeln!(t, "seed: {seed}");
    }
    if let Some(w) = &cert.witness {
        let _ = writeln!(t, "witness: {}", fmt_points(&w.zero_based()));
        let _ = writeln!(t, "chain: {}", fmt_chain(&w.stab_orders));
        for (i, x) in w.elements.iter().enumerate() {
            let _ = writeln!(t, "x{}: {x}", i + 1);
        }
    }
    let _ = writeln!(t, "nodes: {}, representatives examined: {}", cert.stats.nodes, cert.stats.reps_examined);
    t
}

fn cert_outcome(cert: &IbisCertificate, extra: &str, found: bool) -> Outcome {
    Outcome {
        json: certificate_to_json(cert),
        text: format!("{extra}{}", cert_text(cert)),
        code: if found { 0 } else { 2 },
    }
}

pub fn order(o: &Common) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let g = &a.group;
    let orbits: Vec<Vec<usize>> = g.orbits().iter().map(|orb| labels(orb)).collect();
    let json = json!({
        "group": a.label,
        "degree": g.degree(),
        "order": g.order(),
        "transitive": g.is_transitive(),
        "orbits": orbits,
    });
    let lens: Vec<String> = orbits.iter().map(|o| o.len().to_string()).collect();
    let text = format!(
        "group: {}\ndegree: {}\norder: {}\ntransitive: {}\norbit lengths: {}\n",
        a.label,
        g.degree(),
        g.order(),
        g.is_transitive(),
        lens.join(" ")
    );
    Ok(Outcome {
        json: pretty(&json),
        text,
        code: 0,
    })
}

pub fn base_size(o: &Common) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let b = base_size_with_budget(&a.group, o.budget)?;
    let json = json!({ "group": a.label, "degree": a.group.degree(), "order": a.group.order(), "b": b });
    Ok(Outcome {
        json: pretty(&json),
        text: format!("group: {}\nbase size: {b}\n", a.label),
        code: 0,
    })
}

pub fn is_ibis(o: &Common) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let opts = IbisOptions {
        budget: o.budget,
        threads: o.threads,
        label: a.label.clone(),
    };
    let cert = decide(&a.group, &opts)?;
    let decided = cert.decision != Decision::Undecided;
    Ok(cert_outcome(&cert, "", decided))
}

pub fn enumerate(o: &Common, length: Option<usize>, all: bool, count_only: bool) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let mode = if all { Mode::All } else { Mode::Representatives };
    let mut tuples: Vec<IrredundantTuple> = Vec::new();
    let mut count = 0u64;
    let visit = |t: &IrredundantTuple| {
        count += 1;
        if !count_only {
            tuples.push(t.clone());
        }
        ControlFlow::Continue(())
    };
    let stats = match length {
        Some(t) => enumerate_irredundant_tuples(&a.group, t, mode, o.budget, visit)?,
        None => enumerate_irredundant_bases(&a.group, mode, o.budget, visit)?,
    };
    let json = json!({
        "group": a.label,
        "mode": if all { "all" } else { "representatives" },
        "length": length,
        "count": count,
        "nodes": stats.nodes,
        "tuples": tuples.iter().map(|t| json!({
            "points": labels(t.points()),
            "stab_orders": t.stab_orders(),
        })).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for t in &tuples {
        let _ = writeln!(text, "{}  {}", fmt_points(t.points()), fmt_chain(t.stab_orders()));
    }
    let _ = writeln!(text, "count: {count} ({} search nodes)", stats.nodes);
    Ok(Outcome {
        json: pretty(&json),
        text,
        code: 0,
    })
}

pub fn matroid_check(o: &Common) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let m = extract_matroid(&a.group, o.budget)?;
    let check = verify_base_exchange(&m);
    let (status, detail) = match &check {
        ExchangeCheck::Holds => ("holds", Value::Null),
        ExchangeCheck::SizeMismatch { smaller, larger } => (
            "size_mismatch",
            json!({ "smaller": labels(smaller), "larger": labels(larger) }),
        ),
        ExchangeCheck::ExchangeFails { b1, b2, x } => (
            "exchange_fails",
            json!({ "b1": labels(b1), "b2": labels(b2), "x": x + 1 }),
        ),
    };
    let json = json!({
        "group": a.label,
        "bases": m.bases.len(),
        "rank": m.rank(),
        "exchange": status,
        "detail": detail,
    });
    let mut text = format!("group: {}\ndistinct base sets: {}\n", a.label, m.bases.len());
    match m.rank() {
        Some(r) => {
            let _ = writeln!(text, "all of size {r}");
        }
        None => text.push_str("sizes differ\n"),
    }
    let _ = match &check {
        ExchangeCheck::Holds => writeln!(text, "base exchange: holds (the sets form a matroid)"),
        ExchangeCheck::SizeMismatch { smaller, larger } => writeln!(
            text,
            "base exchange: fails, sets of different sizes {} and {}",
            fmt_points(smaller),
            fmt_points(larger)
        ),
        ExchangeCheck::ExchangeFails { b1, b2, x } => writeln!(
            text,
            "base exchange: fails for B1 = {}, B2 = {}, x = {}",
            fmt_points(b1),
            fmt_points(b2),
            x + 1
        ),
    };
    Ok(Outcome {
        json: pretty(&json),
        text,
        code: 0,
    })
}

pub fn reorder_check(o: &Common) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let failing = all_bases_reorder_invariant(&a.group, o.budget)?;
    let (json, text) = match failing {
        None => (
            json!({ "group": a.label, "invariant": true }),
            format!("group: {}\nevery reordering of every irredundant base is irredundant\n", a.label),
        ),
        Some(base) => {
            let ReorderCheck::Fails { ordering, reordered } = check_reorder_invariance(&a.group, &base, o.budget)?
            else {
                unreachable!("base was reported as failing");
            };
            (
                json!({
                    "group": a.label,
                    "invariant": false,
                    "base": labels(base.points()),
                    "base_stab_orders": base.stab_orders(),
                    "ordering": ordering,
                    "reordered": labels(reordered.points()),
                    "reordered_stab_orders": reordered.stab_orders(),
                }),
                format!(
                    "group: {}\nbase {} with chain {}\nreordered as {} gives {}, not irredundant\n",
                    a.label,
                    fmt_points(base.points()),
                    fmt_chain(base.stab_orders()),
                    fmt_points(reordered.points()),
                    fmt_chain(reordered.stab_orders()),
                ),
            )
        }
    };
    Ok(Outcome {
        json: pretty(&json),
        text,
        code: 0,
    })
}

fn resolve_target(target: Option<usize>, b: Option<usize>) -> Result<usize, Error> {
    target
        .or(b)
        .ok_or_else(|| usage("base size search exhausted its budget; pass --target"))
}

fn not_found(g: &Group, label: &str, b: Option<usize>, method: Method, seed: u64, iterations: u64) -> IbisCertificate {
    let mut cert = IbisCertificate::new(label, g, b);
    cert.method = method;
    cert.seed = Some(seed);
    cert.stats = Stats {
        nodes: iterations,
        reps_examined: 0,
    };
    cert
}

pub fn t1(o: &Common, target: Option<usize>, max_iters: u64) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let b = optional_b(&a.group, o.budget)?;
    let target = resolve_target(target, b)?;
    match t1_random_search(&a.group, target, o.seed, max_iters) {
        Some(r) => {
            let mut cert = r.certificate(&a.group, &a.label, b)?;
            cert.stats.nodes = r.iterations;
            let extra = format!(
                "found after {} draws: {} with chain {}\n",
                r.iterations,
                fmt_points(r.tuple.points()),
                fmt_chain(r.tuple.stab_orders())
            );
            Ok(cert_outcome(&cert, &extra, true))
        }
        None => {
            let cert = not_found(&a.group, &a.label, b, Method::T1, o.seed, max_iters);
            Ok(cert_outcome(&cert, "no tuple found\n", false))
        }
    }
}

pub fn t2(o: &Common, subgroup: &str, length: Option<usize>, max_iters: u64) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let h = a.map_subgroup(&load_subgroup(&a.source, subgroup)?)?;
    let cosets = action::coset_action(&a.group, &h, o.index_cap)?;
    let label = format!("{} cosets:{subgroup}", a.label);
    let b = optional_b(cosets.image(), o.budget)?;
    let length = resolve_target(length, b)?;
    match t2_conjugate_chain(&a.group, &h, length, o.seed, max_iters, o.budget)? {
        Some(chain) => {
            let mut cert = chain.certificate(&cosets, &label, b, o.seed)?;
            cert.stats.nodes = chain.iterations;
            let extra = format!(
                "found after {} draws: intersection orders {}\n",
                chain.iterations,
                fmt_chain(&chain.orders)
            );
            Ok(cert_outcome(&cert, &extra, true))
        }
        None => {
            let cert = not_found(cosets.image(), &label, b, Method::T2, o.seed, max_iters);
            Ok(cert_outcome(&cert, "no chain found\n", false))
        }
    }
}

pub fn t3(o: &Common, restrict: &str, target: Option<usize>, max_iters: u64) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let k = a.map_subgroup(&load_subgroup(&a.source, restrict)?)?;
    let b = optional_b(&a.group, o.budget)?;
    let target = resolve_target(target, b)?;
    match t3_restricted_search(&a.group, &k, target, o.seed, max_iters)? {
        Some(r) => {
            let mut cert = r.certificate(&a.group, &a.label, b)?;
            cert.stats.nodes = r.iterations;
            let extra = format!(
                "subgroup of order {}: base {} with chain {}\n",
                k.order(),
                fmt_points(r.k_tuple.points()),
                fmt_chain(r.k_tuple.stab_orders())
            );
            Ok(cert_outcome(&cert, &extra, true))
        }
        None => {
            let cert = not_found(&a.group, &a.label, b, Method::T3, o.seed, max_iters);
            Ok(cert_outcome(&cert, "no tuple found\n", false))
        }
    }
}

pub fn primitivity(o: &Common) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let p = primitivity_of(&a.group);
    let (status, block) = match &p {
        Primitivity::Intransitive => ("intransitive", None),
        Primitivity::Primitive => ("primitive", None),
        Primitivity::Imprimitive { block } => ("imprimitive", Some(block.labels())),
    };
    let json = json!({ "group": a.label, "degree": a.group.degree(), "result": status, "block": block });
    let mut text = format!("group: {}\n{status}\n", a.label);
    if let Primitivity::Imprimitive { block } = &p {
        let _ = writeln!(text, "block: {block}");
    }
    Ok(Outcome {
        json: pretty(&json),
        text,
        code: 0,
    })
}

pub fn coset_action(o: &Common, subgroup: &str, out: Option<&Path>) -> Result<Outcome, Error> {
    let a = acted(o)?;
    let h = a.map_subgroup(&load_subgroup(&a.source, subgroup)?)?;
    let map = action::coset_action(&a.group, &h, o.index_cap)?;
    let homomorphism = map.check_homomorphism(100, o.seed)?;
    if let Some(path) = out {
        map.export(path)?;
    }
    let image = map.image();
    let stab = image.point_stabilizer(0)?.order();
    let json = json!({
        "group": a.label,
        "subgroup_order": h.order(),
        "degree": map.target_degree(),
        "image_order": image.order(),
        "faithful": map.is_faithful(),
        "stabilizer_order": stab,
        "homomorphism_checked": homomorphism,
    });
    let mut text = format!(
        "group: {}\nsubgroup order: {}\ndegree: {}\nimage order: {}\nfaithful: {}\nstabilizer of point 1: order {stab}\n",
        a.label,
        h.order(),
        map.target_degree(),
        image.order(),
        map.is_faithful(),
    );
    if let Some(path) = out {
        let _ = writeln!(text, "written: {}", path.display());
    }
    Ok(Outcome {
        json: pretty(&json),
        text,
        code: if homomorphism { 0 } else { 1 },
    })
}

pub fn reproduce_theorem(budget: u64, threads: usize) -> Result<Outcome, Error> {
    let report = theorem::reproduce_theorem(budget, threads)?;
    let json = serde_json::to_value(&report).expect("report serializes");
    Ok(Outcome {
        json: pretty(&json),
        text: report.render_text(),
        code: if report.all_pass {
            0
        } else if report.any_undecided() {
            2
        } else {
            1
        },
    })
}
