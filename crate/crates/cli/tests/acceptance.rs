//! One check per acceptance criterion. Every criterion runs even when an
//! earlier one fails; the test fails at the end if any line reads FAIL.

use fibered_cli::report::Report;
use fibered_cli::run_to;
use fibered_core::algebra::{int, Matrix, Rational, UniPoly};
use fibered_core::hyperbolic::{
    center_meets_veronese, curve_pair_real_intersections, direction_test, dividing_parity, edge_base_points,
    edge_pencil_member, edge_quartic, hyperbolicity_search_pencil, random_veronese_center, veronese_refutation,
    DividingParity, HyperbolicityStatus, MatrixPencil, VeroneseOutcome,
};
use fibered_core::interlace::{
    classify_pair, compose, mobius_power_map, random_interlacing_map, random_map, real_ramification, wronskian,
    PairVerdict, RationalMapP1,
};
use fibered_core::livsic::{cycle_degree, evaluate_at_center, hodge_dual, membership, LivsicTensor};
use fibered_core::realroots::{hermite_matrix, sturm_count};
use fibered_core::sampling::{random_invertible, random_nonzero_vector, random_rational, random_symmetric, rng};
use fibered_core::tracetest::{
    map_to_presentation, real_fibered_certificate, trace_form, FiberVerdict, FinitePresentation,
};
use fibered_core::ulrich::{
    delta_center, exactness_probe, generalized_joint_kernel, koszul, random_symmetric_system, seeded_points,
    wedge_compose, SymmetricTestSystem,
};
use fibered_core::HomForm;
use num_traits::{One, Zero};
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, Report) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["fibered", "--json"];
    argv.extend_from_slice(args);
    let code = run_to(argv, &mut out, &mut err);
    let text = String::from_utf8(out).expect("utf-8");
    (code, Report::from_json(&text).expect("report"))
}

fn twisted_cubic_anchor() -> Check {
    let expected = serde_json::json!([["1", "0", "-1"], ["0", "3", "0"], ["-1", "0", "4"]]);
    let sig = serde_json::json!({"n_plus": 3, "n_minus": 0, "n_zero": 0});
    let (code, r) = cli(&["interlace", "--f", "s^3-4*s*t^2", "--g", "s^2*t-t^3"]);
    ensure(code == 0 && r.verdict == "RealFiberedInterlacing", || format!("interlace gave {} ({code})", r.verdict))?;
    ensure(r.certificates["bezoutian"] == expected, || format!("matrix {}", r.certificates["bezoutian"]))?;
    ensure(r.certificates["signature"] == sig, || "signature".into())?;
    ensure(r.certificates["determinant"] == "9", || "determinant".into())?;
    let (code, p) = cli(&["hyperbolic", "project-curve", "--center", r#"["x0-4*x2","x1-x3"]"#]);
    ensure(code == 0 && p.verdict == "RealFiberedInterlacing", || format!("project-curve gave {}", p.verdict))?;
    ensure(
        p.certificates["f"] == "s^3 - 4*s*t^2" && p.certificates["g"] == "s^2*t - t^3",
        || "projected pair".into(),
    )?;
    ensure(p.certificates["bezoutian"] == expected, || "projected matrix".into())?;
    Ok("interlace and project-curve agree bit-exactly".into())
}

fn hermite_sturm() -> Check {
    let mut g = rng(2);
    for i in 0..200 {
        let deg = 1 + i % 8;
        let mut c: Vec<Rational> = (0..deg).map(|_| random_rational(&mut g, 6)).collect();
        // repeated factors for a share of the cases
        if i % 5 == 0 && deg >= 2 {
            c.truncate(deg / 2);
            c.push(Rational::one());
            let half = UniPoly::new(c);
            c = (half.clone() * half).coeffs().to_vec();
            c.truncate(deg);
        }
        c.push(Rational::one());
        let p = UniPoly::new(c);
        let sig = hermite_matrix(&p).map_err(|e| e.to_string())?.signature();
        let real = sturm_count(&p).map_err(|e| e.to_string())?;
        ensure(sig.index() == real as i64, || format!("{p}: index {} vs {real}", sig.index()))?;
        ensure(sig.rank() == p.squarefree_part().deg0(), || format!("{p}: rank {}", sig.rank()))?;
    }
    Ok("200 polynomials".into())
}

fn mobius_ladder() -> Check {
    let ladder: Vec<RationalMapP1> = (1..=5).map(|k| mobius_power_map(k).unwrap()).collect();
    for (k, m) in ladder.iter().enumerate() {
        let v = classify_pair(m).map_err(|e| e.to_string())?.verdict;
        ensure(v == PairVerdict::RealFiberedInterlacing, || format!("k={} gave {v:?}", k + 1))?;
    }
    let m2 = &ladder[1];
    let (f, g) = (m2.f().binary_coeffs(), m2.g().binary_coeffs());
    ensure(f == vec![int(1), int(0), int(-1)], || format!("k=2 f = {f:?}"))?;
    ensure(g == vec![int(0), int(2), int(0)], || format!("k=2 g = {g:?}"))?;
    for a in &ladder {
        for b in &ladder {
            let c = compose(a, b).map_err(|e| e.to_string())?;
            let v = classify_pair(&c).map_err(|e| e.to_string())?.verdict;
            ensure(v == PairVerdict::RealFiberedInterlacing, || format!("composition of degree {}", c.degree()))?;
        }
    }
    Ok("k = 1..5 and all 25 compositions".into())
}

/// Real critical points counted from the Wronskian directly.
fn has_real_critical_point(m: &RationalMapP1) -> bool {
    let hw = HomForm::with_degree(wronskian(m), 2 * m.degree() - 2).unwrap();
    let affine = hw.dehomogenize_t();
    affine.deg0() < hw.degree() as usize || sturm_count(&affine).unwrap() > 0
}

fn unramified() -> Check {
    let mut g = rng(4);
    for i in 0..50 {
        let base = random_interlacing_map(&mut g, 1 + i % 3).map_err(|e| e.to_string())?;
        let m = match i % 3 {
            0 => base,
            1 => compose(&mobius_power_map(1 + (i as u32 % 3)).unwrap(), &base).map_err(|e| e.to_string())?,
            _ => compose(&base, &mobius_power_map(2).unwrap()).map_err(|e| e.to_string())?,
        };
        ensure(
            classify_pair(&m).unwrap().verdict == PairVerdict::RealFiberedInterlacing,
            || format!("map {i} is not interlacing"),
        )?;
        ensure(!has_real_critical_point(&m), || format!("oracle found a critical point on map {i}"))?;
        let ram = real_ramification(&m).map_err(|e| e.to_string())?;
        ensure(ram.is_empty(), || format!("map {i} reports {} ramification points", ram.len()))?;
    }
    let mut found = 0;
    let mut tries = 0;
    while found < 20 {
        tries += 1;
        ensure(tries < 2000, || "could not generate ramified maps".into())?;
        let m = random_map(&mut g, 2 + tries % 3, 5);
        if m.f().poly().is_zero() || m.g().poly().is_zero() {
            continue;
        }
        match classify_pair(&m) {
            Ok(c) if c.verdict == PairVerdict::NotRealFibered => {}
            _ => continue,
        }
        if !has_real_critical_point(&m) {
            continue;
        }
        let ram = real_ramification(&m).map_err(|e| e.to_string())?;
        ensure(!ram.is_empty(), || "ramified map reported unramified".into())?;
        found += 1;
    }
    Ok("50 interlacing maps unramified, 20 ramified maps reported".into())
}

/// Dual coefficient T_J from the diagonalization Qᵀ T_i Q = z_i − D_i: each
/// eigen-index contributes the c×c minor of its linear forms on J.
fn diagonal_oracle(s: &SymmetricTestSystem, key: &[usize]) -> Matrix {
    let c = s.system.c();
    let n = s.system.n();
    let eig = (0..n)
        .map(|r| {
            let m = Matrix::from_fn(c, c, |i, k| {
                let j = key[k];
                let mut v = -s.diag[i][r][j].clone();
                if j == i + 1 {
                    v += Rational::one();
                }
                v
            });
            m.det()
        })
        .collect::<Vec<_>>();
    s.q.mul(&Matrix::diagonal(&eig)).mul(&s.q.transpose())
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if m < k {
        return vec![];
    }
    let mut out = subsets(m - 1, k);
    for mut s in subsets(m - 1, k - 1) {
        s.push(m - 1);
        out.push(s);
    }
    out
}

fn wedge_theorems() -> Check {
    for seed in 0..50u64 {
        let d = 2 + (seed as usize % 3);
        let c = 1 + (seed as usize / 3) % d.min(3);
        let n = 2 + (seed as usize % 2);
        let s = random_symmetric_system(d, c, n, seed).map_err(|e| e.to_string())?;
        let w = wedge_compose(&s.system).map_err(|e| format!("seed {seed}: {e}"))?;
        let sign = if (c * (c - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let fact: i64 = (1..=c as i64).product();
        ensure(w.koszul_factor == int(sign * fact), || format!("seed {seed}: factor {}", w.koszul_factor))?;
        for key in subsets(d + 1, c) {
            let got = w.dual.coefficient(&key).cloned().unwrap_or_else(|| Matrix::zeros(n, n));
            ensure(got == diagonal_oracle(&s, &key), || format!("seed {seed}: coefficient {key:?}"))?;
        }
        ensure(w.dual.is_real_symmetric(), || format!("seed {seed}: not symmetric"))?;
        let e = evaluate_at_center(&w.dual, &delta_center(d, c)).map_err(|e| e.to_string())?;
        ensure(e.matrix == Matrix::identity(n), || format!("seed {seed}: center value {:?}", e.matrix))?;
        let complex = koszul(&s.system).map_err(|e| e.to_string())?;
        ensure(complex.composes_to_zero(), || format!("seed {seed}: ψψ ≠ 0"))?;
        let off: Vec<Vec<Rational>> = seeded_points(d + 1, 40, seed)
            .into_iter()
            .filter(|p| generalized_joint_kernel(&s.system.evaluate(p)).unwrap().dim == 0)
            .take(25)
            .collect();
        ensure(off.len() == 25, || format!("seed {seed}: only {} off-variety points", off.len()))?;
        let gamma = hodge_dual(&w.dual);
        let probe = exactness_probe(&complex, Some(&gamma), &off).map_err(|e| e.to_string())?;
        ensure(probe.ok(), || format!("seed {seed}: {:?}", probe.violations))?;
        ensure(probe.probes.iter().all(|p| p.exact && p.member == Some(false)), || format!("seed {seed}: probe"))?;
    }
    Ok("50 systems".into())
}

fn hypersurface_oracle() -> Check {
    for seed in 0..20u64 {
        let mut g = rng(600 + seed);
        let n = 2 + seed as usize % 3;
        let d = n + (seed as usize % 2);
        let mut mats = vec![Matrix::identity(n)];
        mats.extend((0..d).map(|_| random_symmetric(&mut g, n, 4)));
        let pencil = MatrixPencil::new(mats.clone()).map_err(|e| e.to_string())?;
        let mut e = vec![Rational::zero(); d + 1];
        e[0] = Rational::one();
        let v = hyperbolicity_search_pencil(&pencil, &e, 100, seed).map_err(|e| e.to_string())?;
        ensure(v.status == HyperbolicityStatus::Certified, || format!("pencil {seed}: {:?}", v.status))?;
        let det = pencil.determinant().map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let x = random_nonzero_vector(&mut g, d + 1, 9);
            ensure(direction_test(&det, &e, &x).unwrap(), || format!("pencil {seed}: direction {x:?}"))?;
        }
        let gamma = LivsicTensor::from_pencil(&mats).map_err(|e| e.to_string())?;
        let mut on = 0;
        for i in 0..100 {
            let p = if i % 2 == 0 {
                random_nonzero_vector(&mut g, d + 1, 9)
            } else {
                // Σ p_j A_j v = 0 with more unknowns than equations
                let v = random_nonzero_vector(&mut g, n, 9);
                let cols: Vec<Vec<Rational>> = mats.iter().map(|a| a.apply(&v)).collect();
                Matrix::from_fn(n, d + 1, |r, c| cols[c][r].clone()).kernel()[0].clone()
            };
            let member = membership(&gamma, &p).map_err(|e| e.to_string())?.0;
            let vanishes = pencil.at(&p).det().is_zero();
            ensure(member == vanishes, || format!("pencil {seed}: point {p:?}"))?;
            on += usize::from(vanishes);
        }
        ensure(on >= 50, || format!("pencil {seed}: only {on} points on the hypersurface"))?;
    }
    Ok("20 pencils, 2000 directions, 2000 membership points".into())
}

fn trace_suite() -> Check {
    let z = |c: &[i64]| UniPoly::from_i64(c);
    let fp = FinitePresentation::new(1, vec![z(&[0, -1]), z(&[0]), z(&[1])]).map_err(|e| e.to_string())?;
    let tf = trace_form(&fp);
    let want = Matrix::from_rows(vec![vec![z(&[2]), z(&[0])], vec![z(&[0]), z(&[0, 2])]]);
    ensure(tf == want, || "trace form of t^2 - z".into())?;
    let cert = real_fibered_certificate(&fp).map_err(|e| e.to_string())?;
    ensure(cert.verdict == FiberVerdict::NotRealFibered, || format!("{:?}", cert.verdict))?;
    ensure(cert.psd.witness.as_ref().map(|w| w.z.clone()) == Some(int(-1)), || "witness".into())?;
    let fp2 = FinitePresentation::new(1, vec![z(&[-1, 0, -1]), z(&[0]), z(&[1])]).map_err(|e| e.to_string())?;
    let v2 = real_fibered_certificate(&fp2).map_err(|e| e.to_string())?.verdict;
    ensure(v2 == FiberVerdict::RealFibered, || format!("t^2 - (z^2 + 1): {v2:?}"))?;
    let mut g = rng(7);
    let mut agree = [0usize; 2];
    for i in 0..50 {
        let m = if i % 2 == 0 {
            random_interlacing_map(&mut g, 2 + i % 3).map_err(|e| e.to_string())?
        } else {
            random_map(&mut g, 2 + i % 3, 4)
        };
        let pair = classify_pair(&m).map_err(|e| e.to_string())?.verdict;
        let fiber = real_fibered_certificate(&map_to_presentation(&m).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .verdict;
        let same = (pair == PairVerdict::RealFiberedInterlacing) == (fiber == FiberVerdict::RealFibered);
        ensure(same, || format!("map {i}: {pair:?} vs {fiber:?}"))?;
        agree[usize::from(fiber == FiberVerdict::RealFibered)] += 1;
    }
    Ok(format!("50 maps agree ({} real fibered, {} not)", agree[1], agree[0]))
}

fn edge() -> Check {
    let f = edge_quartic();
    for p in edge_base_points() {
        ensure(f.eval(&p) == int(-27), || format!("f at {p:?}"))?;
    }
    ensure(f.eval(&[int(0), int(0), int(1)]) == int(25), || "f at (0:0:1)".into())?;
    let mut g = rng(8);
    for i in 0..20 {
        let (l, m) = (random_rational(&mut g, 9), random_rational(&mut g, 9));
        if l.is_zero() && m.is_zero() {
            continue;
        }
        let q = edge_pencil_member(&l, &m);
        let c = curve_pair_real_intersections(&f, &q, i).map_err(|e| e.to_string())?;
        ensure(c.real_count == 8 && c.total_count == 8, || format!("({l}:{m}) gave {c:?}"))?;
    }
    Ok("20 members meet the quartic in 8 real points".into())
}

fn tv_screen() -> Check {
    ensure(dividing_parity(3, 1) == DividingParity::Impossible, || "parity".into())?;
    let (code, r) = cli(&["demo", "tv-screen"]);
    ensure(code == 1, || format!("exit {code}"))?;
    ensure(r.certificates["reason"] == "g+1-s=3 odd", || "reason".into())?;
    Ok("Impossible, exit 1".into())
}

fn veronese() -> Check {
    let mut attempts = Vec::new();
    for seed in 0..10u64 {
        let center = random_veronese_center(seed).map_err(|e| e.to_string())?;
        ensure(!center_meets_veronese(&center, seed).unwrap(), || format!("seed {seed}: center meets surface"))?;
        match veronese_refutation(&center, 100, seed).map_err(|e| e.to_string())? {
            VeroneseOutcome::RefutationFound {
                conics, count, attempts: a, ..
            } => {
                ensure(count.real_count < count.total_count, || format!("seed {seed}: {count:?}"))?;
                // recount with another generic coordinate change
                let again = curve_pair_real_intersections(&conics.0, &conics.1, seed + 1000).unwrap();
                ensure(again == count, || format!("seed {seed}: recount {again:?}"))?;
                attempts.push(a);
            }
            VeroneseOutcome::Exhausted { .. } => return Err(format!("seed {seed}: Exhausted")),
        }
    }
    Ok(format!("10 centers, attempts {attempts:?}"))
}

fn similarity() -> Check {
    let mut g = rng(11);
    for seed in 0..20u64 {
        let s = random_symmetric_system(3, 2, 2 + seed as usize % 2, seed).map_err(|e| e.to_string())?;
        let gamma = hodge_dual(&wedge_compose(&s.system).map_err(|e| e.to_string())?.dual);
        let comps = s.components().map_err(|e| e.to_string())?;
        let n = gamma.n();
        let a = random_invertible(&mut g, n, 5);
        let b = random_invertible(&mut g, n, 5);
        let moved = gamma.transform(&a, &b);
        let r1 = cycle_degree(&gamma, &comps, 8, seed).map_err(|e| e.to_string())?;
        let r2 = cycle_degree(&moved, &comps, 8, seed).map_err(|e| e.to_string())?;
        ensure(r1 == r2, || format!("tensor {seed}: {r1:?} vs {r2:?}"))?;
        ensure(r1.admissible && r1.total == n, || format!("tensor {seed}: degree {}", r1.total))?;
    }
    Ok("20 tensors".into())
}

#[test]
fn acceptance() {
    let criteria: Vec<(u32, &str, fn() -> Check, Duration)> = vec![
        (1, "twisted cubic anchor", twisted_cubic_anchor, Duration::from_secs(1)),
        (2, "Hermite and Sturm agree", hermite_sturm, Duration::from_secs(10)),
        (3, "Moebius ladder", mobius_ladder, Duration::from_secs(5)),
        (4, "unramifiedness", unramified, Duration::from_secs(30)),
        (5, "wedge composition theorems", wedge_theorems, Duration::from_secs(60)),
        (6, "hypersurface oracle", hypersurface_oracle, Duration::from_secs(60)),
        (7, "trace form suite", trace_suite, Duration::from_secs(30)),
        (8, "Edge quartic", edge, Duration::from_secs(60)),
        (9, "TV-screen parity", tv_screen, Duration::from_secs(1)),
        (10, "Veronese refutation", veronese, Duration::from_secs(120)),
        (11, "similarity invariance", similarity, Duration::from_secs(30)),
    ];
    let mut failed = Vec::new();
    for (n, name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {took:.2?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        println!(
            "{} criterion {n} ({name}): {detail} [{:.2?}]",
            if ok { "PASS" } else { "FAIL" },
            took
        );
        if !ok {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
