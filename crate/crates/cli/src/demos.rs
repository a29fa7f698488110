//! Worked examples with fixed expected outcomes.

use crate::commands::{self, poly_arg, CliError, CliResult, Outcome, Settings};
use crate::parse::restrict_vars;
use crate::report;
use fibered_core::algebra::{HomForm, MultiPoly, Rational, UniPoly};
use fibered_core::hyperbolic::{
    curve_pair_real_intersections, edge_base_points, edge_pencil_member, random_veronese_center,
};
use fibered_core::interlace::{classify_pair, mobius_power_map, PairVerdict};
use fibered_core::livsic::{cycle_degree, evaluate_at_center, DEFAULT_CYCLE_SAMPLES};
use fibered_core::sampling::{random_nonzero_rational, substream};
use fibered_core::tracetest::FinitePresentation;
use fibered_core::ulrich::RationalNormalCurveSystem;
use serde_json::{json, Value};

pub const EDGE_MEMBERS: usize = 20;

pub fn twisted_cubic(s: Settings) -> CliResult<Outcome> {
    let tc = RationalNormalCurveSystem::twisted_cubic()?;
    let c = classify_pair(&tc.map)?;
    let sym = tc.symmetric_tensor()?;
    let at_center = evaluate_at_center(&sym, &tc.center)?;
    let cycle = cycle_degree(
        &tc.primal_tensor()?,
        &[tc.curve_component()?],
        s.samples.unwrap_or(DEFAULT_CYCLE_SAMPLES),
        s.seed,
    )?;
    let definite = at_center.definiteness.is_some_and(|d| d.is_definite());
    let holds = c.verdict == PairVerdict::RealFiberedInterlacing && definite && cycle.admissible;
    let st = ["s", "t"];
    Ok(if holds { Outcome::new("RealFiberedInterlacing", 0) } else { Outcome::new("Unexpected", 3) }
        .cert("f", tc.map.f().poly().display_with(&st))
        .cert("g", tc.map.g().poly().display_with(&st))
        .cert("bezoutian", report::matrix(tc.map.bezoutian().matrix()))
        .cert("signature", c.signature.as_ref().map(report::signature).unwrap_or(Value::Null))
        .cert("form_at_center", report::matrix(&at_center.matrix))
        .cert("form_definite", definite)
        .cert("cycle_degree", cycle.total)
        .cert("admissible", cycle.admissible))
}

pub fn edge_quartic(s: Settings) -> CliResult<Outcome> {
    let f = fibered_core::hyperbolic::edge_quartic();
    let base = edge_base_points();
    let inside: Vec<Value> = base.iter().map(|p| report::rational(&f.eval(p))).collect();
    let ovals = base.iter().all(|p| f.eval(p) < Rational::from_integer(0.into()));
    let members = s.samples.unwrap_or(EDGE_MEMBERS);
    let mut rng = substream(s.seed, 0xED);
    let mut counts = Vec::with_capacity(members);
    let mut all_real = ovals;
    for i in 0..members {
        let (l, m) = (random_nonzero_rational(&mut rng, 9), random_nonzero_rational(&mut rng, 9));
        let q = edge_pencil_member(&l, &m);
        let c = curve_pair_real_intersections(&f, &q, s.seed.wrapping_add(i as u64))?;
        all_real &= c.real_count == 8 && c.total_count == 8;
        counts.push(json!({
            "lambda": l.to_string(),
            "mu": m.to_string(),
            "real_count": c.real_count,
            "total_count": c.total_count,
        }));
    }
    Ok(if all_real { Outcome::new("AllReal", 0) } else { Outcome::new("NonRealPoints", 1) }
        .cert("quartic", f.poly().display_with(&["x0", "x1", "x2"]))
        .cert("base_points", Value::Array(base.iter().map(|p| report::point(p)).collect()))
        .cert("values_at_base_points", Value::Array(inside))
        .cert("members", Value::Array(counts)))
}

pub fn tv_screen() -> Outcome {
    commands::parity(3, 1)
}

pub fn mobius(k: u32) -> CliResult<Outcome> {
    let m = mobius_power_map(k)?;
    let c = classify_pair(&m)?;
    let st = ["s", "t"];
    let (verdict, code) = match c.verdict {
        PairVerdict::RealFiberedInterlacing => ("RealFiberedInterlacing", 0),
        PairVerdict::NotRealFibered => ("NotRealFibered", 1),
        PairVerdict::CommonZero => ("CommonZero", 2),
    };
    Ok(Outcome::new(verdict, code)
        .input("k", k)
        .cert("f", m.f().poly().display_with(&st))
        .cert("g", m.g().poly().display_with(&st))
        .cert("bezoutian", report::matrix(m.bezoutian().matrix()))
        .cert("signature", c.signature.as_ref().map(report::signature).unwrap_or(Value::Null)))
}

pub fn veronese_demo(s: Settings) -> CliResult<Outcome> {
    let center = random_veronese_center(s.seed)?;
    commands::veronese(&center, s)
}

/// Trace test for t² = p(z, 1, 0).
pub fn double_cover(p: &str) -> CliResult<Outcome> {
    let poly = restrict_vars(&poly_arg("p", p)?, &[0, 1, 2]).map_err(CliError::Usage)?;
    let form = HomForm::new(poly)?;
    if form.degree() != 2 {
        return Err(CliError::Usage("--p must be a ternary quadratic form".into()));
    }
    let z = MultiPoly::var(1, 0);
    let restricted = form.poly().substitute(&[z, MultiPoly::one(1), MultiPoly::zero(1)]);
    let branch: UniPoly = restricted.to_univariate(0).expect("one variable");
    let q = vec![-branch.clone(), UniPoly::zero(), UniPoly::one()];
    let fp = FinitePresentation::new(1, q)?;
    let mut out = commands::trace_outcome(&fp)?;
    out.inputs.insert("p".into(), Value::String(form.poly().display_with(&["x0", "x1", "x2"])));
    out.certificates.insert("branch".into(), Value::String(branch.display_var("z")));
    Ok(out)
}
