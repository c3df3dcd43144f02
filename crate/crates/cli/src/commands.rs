use anyhow::{bail, Result};
use serde_json::{json, Value};

use weildeco::arith::{q, Polynomial, Ring};
use weildeco::decorations::{
    axioms_check, klyachko_filtration, toric_slice_table, Decoration, Evaluator, SampleConfig, SliceKind,
};
use weildeco::divisors::Coeff;
use weildeco::gb::Submodule;
use weildeco::hm::{
    classical_decoration_spotcheck, cox_module, gb_membership, hm_generators, membership_oracle, monad_verify, validate_u,
    HMGenerators, Method, UData,
};
use weildeco::toric::{affine, validate_fan, Fan};

use crate::input;
use crate::report::Report;

pub fn fan_show(fan_src: &str) -> Result<Report> {
    let fan = input::fan(fan_src)?;
    let check = validate_fan(&fan);
    let mut lines = vec![format!("fan {} of dimension {}", fan.label(), fan.dim())];
    for r in fan.rays() {
        lines.push(format!("  {} = {:?}", r.name, r.vector));
    }
    for (s, cone) in fan.cones().iter().enumerate() {
        let names: Vec<&str> = cone.iter().map(|&r| fan.ray(r).name.as_str()).collect();
        lines.push(format!("  cone {s}: {}", names.join(" ")));
    }
    lines.extend(check.violations.iter().map(|v| format!("violation: {v}")));
    let payload = json!({ "label": fan.label(), "spec": fan.spec(), "rays": fan.rays(), "report": check });
    Ok(Report::new("fan show", check.ok, payload, lines))
}

pub fn u_validate(fan_src: &str, u_src: &str) -> Result<Report> {
    let fan = input::fan(fan_src)?;
    let matrix = input::u_matrix(&fan, u_src)?;
    let r = validate_u(&fan, &matrix);
    let mut lines = vec![format!("{}x{} matrix on {}", matrix.len(), matrix.first().map_or(0, Vec::len), fan.label())];
    lines.extend(r.violations.iter().map(|v| format!("violation: {v}")));
    lines.push(format!("symmetric: {}", r.symmetric));
    if r.ok {
        let u = UData::new(&fan, matrix.clone())?;
        for rho in 0..fan.nrays() {
            lines.push(format!("  u at {}: {:?}", fan.ray(rho).name, u.character(rho)));
        }
    }
    Ok(Report::new("u validate", r.ok, json!({ "matrix": matrix, "report": r }), lines))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Hull,
    Intersect,
    Both,
}

fn methods(m: MethodArg) -> Vec<Method> {
    match m {
        MethodArg::Hull => vec![Method::Hull],
        MethodArg::Intersect => vec![Method::Intersection],
        MethodArg::Both => vec![Method::Intersection, Method::Hull],
    }
}

fn affine_gens(u: &UData, method: MethodArg) -> Result<(Vec<HMGenerators>, bool)> {
    let all = methods(method).into_iter().map(|m| hm_generators(u, m)).collect::<weildeco::Result<Vec<_>>>()?;
    let mut agree = true;
    for g in &all[1..] {
        agree &= all[0].equal_modules(g)?;
    }
    Ok((all, agree))
}

fn presentation_lines(cleared: &Submodule, names: &[String]) -> (Value, Vec<String>) {
    let pres = cleared.syzygies();
    let syz: Vec<Vec<String>> = pres.syzygies.iter().map(|s| s.iter().map(|p| p.render(names)).collect()).collect();
    let lines = syz.iter().map(|s| format!("  relation ({})", s.join(", "))).collect();
    (json!({ "generic_rank": pres.generic_rank(), "syzygies": syz }), lines)
}

pub fn hm_gens(fan_src: &str, u_src: &str, method: MethodArg) -> Result<Report> {
    let fan = input::fan(fan_src)?;
    let u = input::udata(&fan, u_src)?;
    if fan.is_projective_space() {
        let mut modules = Vec::new();
        for m in methods(method) {
            modules.push(cox_module(&u, m)?);
        }
        let mut agree = true;
        for c in &modules[1..] {
            agree &= modules[0].affine.equal_modules(&c.affine)?;
        }
        let c = &modules[0];
        let charts = c.charts_agree(c.affine.method)?;
        let ring = Ring::cox(fan.nrays());
        let gens: Vec<Value> = c
            .graded_pairs()
            .iter()
            .zip(c.degrees())
            .map(|((f, g), d)| json!({ "pair": [ring.render(f), ring.render(g)], "degree": d }))
            .collect();
        let mut lines = vec![format!("{} generators of the graded module on {}", gens.len(), fan.label())];
        for ((f, g), d) in c.graded_pairs().iter().zip(c.degrees()) {
            lines.push(format!("  ({}, {})  degree {d}", ring.render(f), ring.render(g)));
        }
        lines.push(format!("methods agree: {agree}"));
        lines.push(format!("charts agree: {charts:?}"));
        let ok = agree && charts.iter().all(|&b| b);
        let payload = json!({ "fan": fan.label(), "generators": gens, "methods_agree": agree, "charts_agree": charts });
        return Ok(Report::new("hm gens", ok, payload, lines));
    }
    let (all, agree) = affine_gens(&u, method)?;
    let g = &all[0];
    let json_gens = g.to_json();
    let mut lines = vec![format!("{} generators on {} (prefactor 1/({}))", json_gens.gens.len(), fan.label(), json_gens.p)];
    for [f, h] in &json_gens.gens {
        lines.push(format!("  ({f}, {h})"));
    }
    let names = Ring::affine(g.n).names().to_vec();
    let (pres, pres_lines) = presentation_lines(&g.cleared, &names);
    lines.extend(pres_lines);
    if all.len() > 1 {
        lines.push(format!("methods agree: {agree}"));
    }
    let payload = json!({
        "fan": fan.label(),
        "generators": json_gens,
        "methods": all.iter().map(|m| m.method.name()).collect::<Vec<_>>(),
        "methods_agree": agree,
        "presentation": pres,
    });
    Ok(Report::new("hm gens", agree, payload, lines))
}

pub fn hm_member(fan_src: &str, u_src: &str, element: &str) -> Result<Report> {
    let fan = input::fan(fan_src)?;
    if !fan.is_affine_space() {
        bail!("membership is decided on affine space; use a chart of the matrix");
    }
    let u = input::udata(&fan, u_src)?;
    let (f, g) = match input::element(&fan, &weildeco::decorations::Shape::Pair, element)? {
        weildeco::decorations::Element::Pair(f, g) => (f, g),
        _ => unreachable!("pair shape"),
    };
    let oracle = membership_oracle(&u, &f, &g)?;
    let gens = hm_generators(&u, Method::Intersection)?;
    let by_gb = gb_membership(&gens, &f, &g)?;
    let agree = oracle.member == by_gb;
    let mut lines = vec![format!("member: {}", oracle.member)];
    lines.push(format!("regular on the torus: {}", oracle.torus_regular));
    for (name, c) in &oracle.coefficients {
        lines.push(format!("  {name}: {c}"));
    }
    lines.push(format!("normal form agrees: {agree}"));
    let payload = json!({ "member": oracle.member, "oracle": oracle, "normal_form_member": by_gb, "agree": agree });
    Ok(Report::new("hm member", agree, payload, lines))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum KindArg {
    RankOne,
    Seminorm,
    Omega,
    LogOmega,
    Tangent,
    Lambda2t,
    Hm,
}

pub struct DecoArgs<'a> {
    pub kind: KindArg,
    pub fan: &'a str,
    pub u: Option<&'a str>,
    pub divisor: Option<&'a str>,
    pub targets: Option<&'a str>,
}

fn decoration(a: &DecoArgs, fan: &Fan) -> Result<Decoration> {
    Ok(match a.kind {
        KindArg::RankOne => Decoration::RankOne(input::divisor(fan, a.divisor.unwrap_or("{}"))?),
        KindArg::Seminorm => Decoration::Phi(input::seminorm_targets(fan, a.targets.unwrap_or("{}"))?),
        KindArg::Omega => Decoration::Omega,
        KindArg::LogOmega => Decoration::LogOmega,
        KindArg::Tangent => Decoration::Tangent,
        KindArg::Lambda2t => Decoration::Lambda2T,
        KindArg::Hm => match a.u {
            Some(src) => Decoration::HM(input::udata(fan, src)?),
            None => bail!("--u is required for the hm decoration"),
        },
    })
}

pub fn deco_eval(a: &DecoArgs, element: &str, prime: Option<&str>) -> Result<Report> {
    let fan = input::fan(a.fan)?;
    let d = decoration(a, &fan)?;
    let v = input::element(&fan, &d.shape(&fan), element)?;
    let primes = match prime {
        Some(p) => vec![input::prime(&fan, p)?],
        None => fan.toric_primes(),
    };
    let mut values = Vec::with_capacity(primes.len());
    let mut lines = Vec::new();
    for p in &primes {
        let c = d.coeff(&fan, &v, p)?;
        lines.push(format!("{} at {}: {c}", d.name(), p.name(&fan)));
        values.push(json!({ "prime": p.name(&fan), "coeff": c }));
    }
    let payload = match (prime, values.as_slice()) {
        (Some(_), [one]) => json!({ "decoration": d.name(), "prime": one["prime"], "coeff": one["coeff"] }),
        _ => json!({ "decoration": d.name(), "values": values }),
    };
    Ok(Report::new("deco eval", true, payload, lines))
}

pub fn deco_axioms(a: &DecoArgs, extra: &[String], config: SampleConfig) -> Result<Report> {
    let fan = input::fan(a.fan)?;
    let d = decoration(a, &fan)?;
    let primes = input::primes(&fan, extra)?;
    let r = axioms_check(&d, &fan, &primes, config)?;
    let mut lines = vec![format!(
        "{} on {}: {} checks over {} samples at {}",
        d.name(),
        fan.label(),
        r.checks,
        r.samples,
        r.primes.join(", ")
    )];
    if let Some(c) = &r.counterexample {
        lines.push(format!("counterexample: {} at {} (sample {}): {}", c.axiom, c.prime, c.sample, c.detail));
    }
    Ok(Report::new("deco axioms", r.passed, serde_json::to_value(&r)?, lines))
}

pub fn deco_slice(a: &DecoArgs, radius: i64, ray: Option<&str>) -> Result<Report> {
    let fan = input::fan(a.fan)?;
    let kind = SliceKind::from_decoration(&decoration(a, &fan)?)?;
    let table = toric_slice_table(&kind, &fan, radius)?;
    let mut lines = vec![format!("{} slice on {} ({} basis), {} rows", table.kind, table.fan, table.basis, table.rows.len())];
    let mut payload = json!({ "table": table });
    if let Some(name) = ray {
        let rho = fan.ray_by_name(name).ok_or_else(|| weildeco::Error::UnknownName(name.into()))?;
        let levels = klyachko_filtration(&table, rho)?;
        for l in &levels {
            lines.push(format!("  level {} at {name}: dimension {}", l.level, l.basis.len()));
        }
        payload["filtration"] = json!({ "ray": name, "levels": levels });
    } else {
        for r in &table.rows {
            if r.coeff != Coeff::Fin(0) {
                lines.push(format!("  {:?} at {}: {}", r.element, fan.ray(r.ray).name, r.coeff));
            }
        }
    }
    Ok(Report::new("deco slice", true, payload, lines))
}

pub fn monad() -> Result<Report> {
    let r = monad_verify();
    let lines = r.checks.iter().map(|c| format!("{}: {} ({})", c.name, if c.passed { "ok" } else { "FAILED" }, c.detail)).collect();
    Ok(Report::new("monad verify", r.ok, serde_json::to_value(&r)?, lines))
}

fn worked_example() -> Result<(bool, Vec<String>)> {
    let u = UData::new(&affine(3), vec![vec![0, 1, 0], vec![1, 0, -1], vec![0, -1, 0]])?;
    let (all, agree) = affine_gens(&u, MethodArg::Both)?;
    let r = Ring::affine(3);
    let p = r.parse("x1*x2*x3")?;
    let expected = [
        ("1/(x2*x3) + 1/x1", "1/x3 + 1/(x1*x2)"),
        ("1/x2 + x3/x1", "x3/(x1*x2)"),
        ("x2/x1", "1/x1"),
    ];
    let mut cleared: Vec<Vec<Polynomial>> = Vec::new();
    for (f, g) in expected {
        cleared.push(vec![(&p * &r.parse(f)?).numer().clone(), (&p * &r.parse(g)?).numer().clone()]);
    }
    let target = Submodule::new(3, 2, cleared)?;
    let equal = all[0].cleared.equal_modules(&target)?;
    let probe = target.syzygies().local_freeness_probe(&[q(0), q(1), q(0)])?;
    let lines = vec![
        format!("three-variable example, methods agree: {agree}"),
        format!("three-variable example, generators match: {equal}"),
        format!("three-variable example, rank at (0,1,0): {}", probe.evaluated_rank),
    ];
    Ok((agree && equal && probe.evaluated_rank == 0, lines))
}

pub fn selftest(config: SampleConfig) -> Result<Report> {
    let m = monad_verify();
    let mut lines: Vec<String> = m.checks.iter().map(|c| format!("monad {}: {}", c.name, c.passed)).collect();
    let (example_ok, example_lines) = worked_example()?;
    lines.extend(example_lines);
    let classical = cox_module(&UData::classical(), Method::Intersection)?;
    let charts = classical.charts_agree(Method::Hull)?;
    lines.push(format!("classical charts agree with both methods: {charts:?}"));
    let spot = classical_decoration_spotcheck(config.samples, config.seed)?;
    lines.push(format!("classical decoration: {} lift checks, passed {}", spot.lift_checks, spot.passed));
    let ok = m.ok && example_ok && charts.iter().all(|&b| b) && spot.passed;
    let payload = json!({ "monad": m, "example": example_ok, "classical_charts": charts, "spotcheck": spot });
    Ok(Report::new("selftest", ok, payload, lines))
}
