use std::collections::BTreeSet;
use std::fmt::Write;

use multirees::algebra::{Binomial, Ring};
use multirees::export::{basis_json, binomial_json, m2_script, model_json};
use multirees::fiber_type::{rewrite_fiber_type, rewrite_to_two_by_two, Combination, RingMatrix};
use multirees::gb::{default_max_len, gb_fiber, gb_rees, generators_rees, structural_check};
use multirees::golden;
use multirees::graph::cycles::{admissible_cycles, cycle_graph, cycle_to_binomial};
use multirees::graph::koszul::{koszul_witness, not_quadric_generated};
use multirees::graph::{is_chordal_bipartite, ChordalMethod};
use multirees::oracle::{
    brute_force_kernel, buchberger_verify, ideal_equal_up_to, reduced_gb, unique_sink_certify, Certificate,
    KernelMap,
};
use multirees::quasi_matrix::validate_binary_quasi_minor;
use multirees::{Error, IdealSpec, Instance, Model};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::Method;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A computation without a pass/fail claim.
    Info,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "ok",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

pub struct Outcome {
    pub verdict: Verdict,
    pub text: String,
    /// Fields merged into the result object of the report.
    pub json: Value,
    pub m2: Option<String>,
    pub dot: Option<String>,
}

impl Outcome {
    fn info(text: String, json: Value) -> Self {
        Outcome {
            verdict: Verdict::Info,
            text,
            json,
            m2: None,
            dot: None,
        }
    }
}

fn map_of(fiber: bool) -> KernelMap {
    if fiber {
        KernelMap::Psi
    } else {
        KernelMap::Phi
    }
}

fn basis_outcome(model: &Model, g: &[Binomial], map: KernelMap) -> Outcome {
    let ring = &model.ring;
    let mut text = String::new();
    for b in g {
        writeln!(text, "{}", ring.render_binomial(b)).unwrap();
    }
    let mut out = Outcome::info(text, json!({"size": g.len(), "basis": basis_json(ring, g)}));
    out.m2 = Some(m2_script(ring, g, map));
    out
}

pub fn matrix(model: &Model) -> Outcome {
    Outcome::info(model.matrix.pretty(), json!({"model": model_json(model)}))
}

pub fn gb(model: &Model, generators: bool) -> Outcome {
    let g = if generators { generators_rees(model) } else { gb_rees(model) };
    basis_outcome(model, &g, KernelMap::Phi)
}

pub fn fiber_gb(model: &Model) -> Outcome {
    basis_outcome(model, &gb_fiber(model), KernelMap::Psi)
}

pub fn reduced(model: &Model, fiber: bool) -> Outcome {
    let g = if fiber { gb_fiber(model) } else { gb_rees(model) };
    basis_outcome(model, &reduced_gb(&g), map_of(fiber))
}

fn certificate_text(c: &Certificate) -> String {
    let mut s = format!("{}: {} (checked {})\n", c.method, if c.passed() { "pass" } else { "fail" }, c.checked);
    for w in &c.witnesses {
        writeln!(s, "  {}: {}", w.kind, w.detail).unwrap();
    }
    s
}

pub fn verify(model: &Model, methods: &[Method], degcap: u32, fiber: bool, cap: usize) -> anyhow::Result<Outcome> {
    let map = map_of(fiber);
    let g = if fiber { gb_fiber(model) } else { gb_rees(model) };
    let methods: Vec<Method> = methods.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let certs: Vec<Result<Certificate, Error>> = methods
        .par_iter()
        .map(|m| match m {
            Method::Buchberger => Ok(buchberger_verify(&model.ring, &g, map)),
            Method::Sink => unique_sink_certify(model, &g, degcap, map, cap),
            Method::Oracle => {
                brute_force_kernel(model, degcap, map, cap).map(|h| ideal_equal_up_to(model, &g, &h, degcap, map))
            }
        })
        .collect();
    let certs = certs.into_iter().collect::<Result<Vec<_>, _>>()?;
    let structural = structural_check(&g, model, fiber);
    let mut text = String::new();
    for c in &certs {
        text.push_str(&certificate_text(c));
    }
    match &structural {
        Ok(r) => writeln!(text, "structure: pass (size {}, degrees {:?})", r.size, r.degrees).unwrap(),
        Err(v) => writeln!(text, "structure: fail ({v})").unwrap(),
    }
    let ok = certs.iter().all(Certificate::passed) && structural.is_ok();
    Ok(Outcome {
        verdict: Verdict::from_bool(ok),
        text,
        json: json!({
            "map": if fiber { "psi" } else { "phi" },
            "degcap": degcap,
            "size": g.len(),
            "certificates": certs,
            "structure": structural.as_ref().map_err(|v| v.to_string()),
        }),
        m2: None,
        dot: None,
    })
}

pub fn chordal(model: &Model, gamma_free: bool) -> Outcome {
    let g = model.instance.incidence_graph();
    let method = if gamma_free { ChordalMethod::GammaFree } else { ChordalMethod::Exhaustive };
    let verdict = is_chordal_bipartite(&g, method);
    let labels: Option<Vec<String>> =
        verdict.witness.as_ref().map(|w| w.iter().map(|&v| g.label(v).to_string()).collect());
    let mut text = String::from(if verdict.chordal { "chordal\n" } else { "non-chordal\n" });
    if let Some(l) = &labels {
        writeln!(text, "witness: {} - {}", l.join(" - "), l[0]).unwrap();
    }
    let mut out = Outcome::info(
        text,
        json!({
            "chordal": verdict.chordal,
            "method": if gamma_free { "gamma-free" } else { "exhaustive" },
            "witness": labels,
        }),
    );
    out.dot = Some(g.to_dot("incidence"));
    out
}

pub fn cycles(model: &Model, max_len: Option<usize>, fiber: bool) -> Outcome {
    let max_len = max_len.unwrap_or_else(|| default_max_len(model));
    let ring = &model.ring;
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in admissible_cycles(model, !fiber, max_len) {
        let b = cycle_to_binomial(&c, model).ok();
        let shown = b.as_ref().map(|b| ring.render_binomial(b));
        writeln!(text, "{c}    {}", shown.as_deref().unwrap_or("0")).unwrap();
        rows.push(json!({
            "cycle": c.to_string(),
            "length": c.len(),
            "binomial": b.as_ref().map(|b| binomial_json(ring, b)),
        }));
    }
    let mut out = Outcome::info(text, json!({"max_len": max_len, "cycles": rows}));
    out.dot = Some(cycle_graph(model, !fiber).graph.to_dot("cycles"));
    out
}

pub fn koszul(model: &Model, cap: usize) -> anyhow::Result<Outcome> {
    let Some(w) = koszul_witness(model) else {
        return Ok(Outcome::info(
            "chordal: no chordless cycle of length 6 or more\n".into(),
            json!({"witness": null}),
        ));
    };
    let ring = &model.ring;
    let mut text = format!("cycle: {}\nalpha: {}\n", w.cycle_text(), ring.render_binomial(&w.alpha));
    let in_kernel = ring.in_kernel(&w.alpha);
    writeln!(text, "in kernel: {in_kernel}").unwrap();
    let mut certs = Vec::new();
    let mut ok = in_kernel;
    for map in [KernelMap::Phi, KernelMap::Psi] {
        let c = not_quadric_generated(model, &w.alpha, map, cap)?;
        writeln!(
            text,
            "{}: slice {}, quadric moves {}, rank {} -> {}, outside quadric span: {}, components agree: {}",
            if map == KernelMap::Phi { "phi" } else { "psi" },
            c.slice,
            c.quadric_moves,
            c.rank_quadrics,
            c.rank_with_alpha,
            c.outside_span,
            c.components_agree
        )
        .unwrap();
        ok &= c.outside_span && c.components_agree;
        certs.push(c);
    }
    Ok(Outcome {
        verdict: Verdict::from_bool(ok),
        text,
        json: json!({
            "cycle": w.cycle,
            "alpha": binomial_json(ring, &w.alpha),
            "in_kernel": in_kernel,
            "span": certs,
        }),
        m2: None,
        dot: None,
    })
}

fn combination_json(ring: &Ring, c: &Combination) -> Value {
    Value::Array(
        c.terms
            .iter()
            .map(|t| {
                json!({
                    "sign": t.sign,
                    "coefficient": ring.render(&t.coefficient),
                    "generator": binomial_json(ring, &t.generator),
                    "kind": t.kind,
                })
            })
            .collect(),
    )
}

pub fn fiber_type(model: &Model, input: &str) -> anyhow::Result<Outcome> {
    let ring = &model.ring;
    let (a, b) = ring.parse_difference(input)?;
    let f = Binomial::new(a, b).ok_or_else(|| anyhow::anyhow!("the two terms are equal"))?;
    let comb = if ring.is_x_free(f.lead()) && ring.is_x_free(f.trail()) {
        let placement = validate_binary_quasi_minor(&model.matrix, ring, f.lead(), f.trail())
            .map_err(|r| anyhow::anyhow!("not a binary quasi-minor: {r}"))?;
        rewrite_to_two_by_two(&placement, &RingMatrix { c: &model.matrix, ring })?
    } else {
        rewrite_fiber_type(&f, &model.matrix, ring)?
    };
    let exact = comb.expands_to(f.lead(), f.trail());
    let mut text = format!("{} =\n", ring.render_binomial(&f));
    text.push_str(&comb.render(&|m| ring.render(m)));
    writeln!(text, "expansion exact: {exact}").unwrap();
    Ok(Outcome {
        verdict: Verdict::from_bool(exact),
        text,
        json: json!({
            "binomial": binomial_json(ring, &f),
            "terms": combination_json(ring, &comb),
            "exact": exact,
        }),
        m2: None,
        dot: None,
    })
}

pub fn golden(only: Option<&[u32]>, timings: bool) -> Outcome {
    let cases: Vec<_> = golden::cases()
        .into_iter()
        .filter(|c| only.is_none_or(|ids| ids.contains(&c.id)))
        .collect();
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for case in cases {
        let r = case.run();
        ok &= r.passed;
        let line = if timings { r.line() } else { format!("{} [{}] {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name) };
        writeln!(text, "{line}").unwrap();
        for n in &r.notes {
            writeln!(text, "    {n}").unwrap();
        }
        let mut row = json!({"id": r.id, "name": r.name, "passed": r.passed, "notes": r.notes});
        if timings {
            row["elapsed_ms"] = json!(r.elapsed_ms);
        }
        rows.push(row);
    }
    Outcome {
        verdict: Verdict::from_bool(ok),
        text,
        json: json!({"cases": rows}),
        m2: None,
        dot: None,
    }
}

fn random_instance(rng: &mut StdRng) -> Instance {
    let n = rng.gen_range(1..=4usize);
    let r = rng.gen_range(1..=3usize);
    let ideals = (0..r)
        .map(|_| {
            let mask = rng.gen_range(1u32..(1 << n));
            let support = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            IdealSpec::new(support, rng.gen_range(1..=2)).expect("nonempty")
        })
        .collect();
    Instance::new(n, ideals).expect("valid")
}

pub fn fuzz(seed: u64, count: usize, degcap: u32, cap: usize) -> anyhow::Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(seed);
    let instances: Vec<Instance> = (0..count).map(|_| random_instance(&mut rng)).collect();
    let mut failures = Vec::new();
    for inst in &instances {
        let model = Model::convention(inst.clone())?;
        for (map, g) in [(KernelMap::Phi, gb_rees(&model)), (KernelMap::Psi, gb_fiber(&model))] {
            let b = buchberger_verify(&model.ring, &g, map);
            let s = unique_sink_certify(&model, &g, degcap, map, cap)?;
            if !(b.passed() && s.passed()) {
                failures.push(format!("{} {map:?}", inst.to_json()));
            }
        }
    }
    let mut text = format!("fuzz seed {seed}: {count} instances, {} failures\n", failures.len());
    for f in &failures {
        writeln!(text, "  {f}").unwrap();
    }
    Ok(Outcome {
        verdict: Verdict::from_bool(failures.is_empty()),
        text,
        json: json!({
            "seed": seed,
            "instances": instances,
            "failures": failures,
        }),
        m2: None,
        dot: None,
    })
}

