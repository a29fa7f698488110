//! Argument definitions and subcommand handlers.

use crate::demos;
use crate::parse::{
    parse_matrix, parse_matrix_list, parse_point, parse_point_list, parse_poly, print_in, restrict_vars, used_vars,
    ParseError, S, T, VARIABLES, Z,
};
use crate::report::{self, fields, Fields};
use clap::{Args, Parser, Subcommand};
use fibered_core::algebra::{HomForm, Matrix, MultiPoly, Rational};
use fibered_core::hyperbolic::{
    curve_pair_real_intersections, direction_test, dividing_parity, dividing_parity_reason, hyperbolicity_search,
    hyperbolicity_search_pencil, project_curve, random_veronese_center, veronese_refutation, CurveCenter,
    DividingParity, HyperbolicityStatus, HyperbolicityVerdict, MatrixPencil, VeroneseOutcome,
};
use fibered_core::interlace::{classify_forms, real_ramification, PairClassification, PairVerdict, ProjectivePoint, RationalMapP1};
use fibered_core::livsic::{hodge_dual, membership, LivsicTensor};
use fibered_core::realroots::{hermite_matrix, is_real_rooted, isolate_real_roots, sturm_count, RealRoot};
use fibered_core::tracetest::{map_to_presentation, real_fibered_certificate, trace_form, FiberVerdict, FinitePresentation};
use fibered_core::ulrich::{
    check_symmetry_theorem, delta_center, exactness_probe, koszul, seeded_points, validate_system,
    wedge_compose,
};
use fibered_core::Error;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "fibered", version, about = "Exact certificates for real fibered maps, hyperbolicity and determinantal representations")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample budget for searches.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Number of sample points for sampled checks.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count and isolate real roots of a univariate polynomial.
    Realroots {
        #[arg(long)]
        p: String,
    },
    /// Classify a pair of binary forms in s, t.
    Interlace {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Hyperbolicity tools.
    Hyperbolic {
        #[command(subcommand)]
        command: HyperbolicCommand,
    },
    /// Linear determinantal representation x ↦ Σ x_i A_i.
    Detrep(DetrepArgs),
    /// Koszul complex and wedge composition of commuting linear matrices.
    Koszul(KoszulArgs),
    /// Trace-form test for a presentation t-polynomial over ℚ[z].
    Tracetest(TracetestArgs),
    /// Worked examples.
    Demo {
        #[command(subcommand)]
        demo: DemoCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum HyperbolicCommand {
    /// Real-rootedness of t ↦ f(e + t x).
    Direction {
        #[arg(long)]
        f: String,
        #[arg(long)]
        e: String,
        #[arg(long)]
        x: String,
    },
    /// Seeded search for a non-real-rooted direction.
    Search {
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        f: Option<String>,
        /// JSON matrix of linear forms.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        e: String,
    },
    /// Project a rational curve from a center given by two linear forms.
    ProjectCurve {
        /// JSON array of the two center forms in x0, x1, ….
        #[arg(long)]
        center: String,
        /// Degree of the rational normal curve.
        #[arg(long, conflicts_with = "param")]
        degree: Option<u32>,
        /// JSON array of parametrizing forms in s, t.
        #[arg(long)]
        param: Option<String>,
    },
    /// Count distinct real and complex intersections of two plane curves.
    Intersect {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Parity test for dividing curves of genus g with s real components.
    Parity {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        components: i64,
    },
    /// Search for a 3-space through a center meeting the Veronese surface in a non-real point.
    Veronese {
        /// JSON array of three points of ℚ⁶; random when omitted.
        #[arg(long)]
        center: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct DetrepArgs {
    /// JSON matrix of linear forms in x0, x1, ….
    #[arg(long)]
    pub matrix: String,
    /// Base point; defaults to (1, 0, …, 0).
    #[arg(long)]
    pub e: Option<String>,
    /// JSON array of points to test for membership.
    #[arg(long)]
    pub points: Option<String>,
}

#[derive(Debug, Args)]
pub struct KoszulArgs {
    /// JSON array of matrices of linear forms in z0, z1, … (or x0, x1, …).
    #[arg(long)]
    pub matrices: String,
    /// Ambient dimension d (variables 0..=d); inferred when omitted.
    #[arg(long)]
    pub d: Option<usize>,
    /// JSON array of points for the exactness probe; seeded when omitted.
    #[arg(long)]
    pub points: Option<String>,
}

#[derive(Debug, Args)]
pub struct TracetestArgs {
    /// Monic polynomial in t with coefficients in z.
    #[arg(long, conflicts_with_all = ["f", "g"], required_unless_present_all = ["f", "g"])]
    pub q: Option<String>,
    /// Binary forms in s, t defining a map ℙ¹ → ℙ¹.
    #[arg(long, requires = "g")]
    pub f: Option<String>,
    #[arg(long, requires = "f")]
    pub g: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum DemoCommand {
    TwistedCubic,
    EdgeQuartic,
    TvScreen,
    Mobius { k: u32 },
    Veronese,
    DoubleCover {
        /// Ternary quadratic form p(x0, x1, x2).
        #[arg(long, default_value = "x0^2 + x1^2 + x2^2")]
        p: String,
    },
}

/// Shared run settings.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub seed: u64,
    pub budget: Option<usize>,
    pub samples: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Parse { field: String, error: ParseError },
    Usage(String),
    Core(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse { field, error } => write!(f, "--{field}: {error}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Inconsistent(_)) => 3,
            _ => 2,
        }
    }

    pub fn verdict(&self) -> &'static str {
        if self.exit_code() == 3 {
            "Inconclusive"
        } else {
            "InvalidInput"
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a handler produces before it is wrapped into a report.
#[derive(Debug, Default)]
pub struct Outcome {
    pub verdict: String,
    pub exit_code: i32,
    pub inputs: Fields,
    pub certificates: Fields,
}

impl Outcome {
    pub fn new(verdict: impl Into<String>, exit_code: i32) -> Self {
        Outcome {
            verdict: verdict.into(),
            exit_code,
            ..Default::default()
        }
    }

    pub fn input(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(k.into(), v.into());
        self
    }

    pub fn cert(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.certificates.insert(k.into(), v.into());
        self
    }
}

pub fn poly_arg(field: &str, text: &str) -> CliResult<MultiPoly> {
    parse_poly(text).map_err(|error| CliError::Parse {
        field: field.into(),
        error,
    })
}

fn point_arg(field: &str, text: &str) -> CliResult<Vec<Rational>> {
    parse_point(text).map_err(|error| CliError::Parse {
        field: field.into(),
        error,
    })
}

fn wrap<T>(field: &str, r: Result<T, ParseError>) -> CliResult<T> {
    r.map_err(|error| CliError::Parse {
        field: field.into(),
        error,
    })
}

fn restrict(p: &MultiPoly, vars: &[usize]) -> CliResult<MultiPoly> {
    restrict_vars(p, vars).map_err(CliError::Usage)
}

/// x0..x_(n−1) (or z0..z_(n−1)) as variable indices.
fn coordinate_vars(n: usize, zs: bool) -> Vec<usize> {
    let base = if zs { 15 } else { 0 };
    (0..n).map(|i| base + i).collect()
}

/// Number of coordinates used by a set of polynomials, and whether they are
/// z-coordinates; mixed families are rejected.
fn infer_coordinates(polys: &[&MultiPoly]) -> CliResult<(usize, bool)> {
    let mut xs = 0usize;
    let mut zs = 0usize;
    for p in polys {
        for v in used_vars(p) {
            match v {
                0..=9 => xs = xs.max(v + 1),
                15..=24 => zs = zs.max(v - 14),
                _ => {
                    return Err(CliError::Usage(format!(
                        "variable {} is not a coordinate (use x0..x9 or z0..z9)",
                        VARIABLES[v]
                    )))
                }
            }
        }
    }
    if xs > 0 && zs > 0 {
        return Err(CliError::Usage("do not mix x and z coordinates".into()));
    }
    Ok(if zs > 0 { (zs, true) } else { (xs, false) })
}

fn binary_form(field: &str, text: &str) -> CliResult<HomForm> {
    let p = restrict(&poly_arg(field, text)?, &[S, T])?;
    Ok(HomForm::new(p)?)
}

fn real_root_value(r: &RealRoot) -> Value {
    match r {
        RealRoot::Exact(x) => json!({ "exact": x.to_string() }),
        RealRoot::Interval { lo, hi } => json!({ "interval": [lo.to_string(), hi.to_string()] }),
    }
}

fn projective_point_value(p: &ProjectivePoint) -> Value {
    match p {
        ProjectivePoint::Affine(r) => real_root_value(r),
        ProjectivePoint::Infinity => json!("infinity"),
    }
}

pub fn realroots(p: &str) -> CliResult<Outcome> {
    let poly = poly_arg("p", p)?;
    let vars = used_vars(&poly);
    if vars.len() > 1 {
        return Err(CliError::Usage("expected a polynomial in one variable".into()));
    }
    let var = vars.first().copied().unwrap_or(T);
    let u = restrict(&poly, &[var])?.to_univariate(0).expect("one variable");
    if u.is_zero() {
        return Err(Error::ZeroPolynomial.into());
    }
    let cert = is_real_rooted(&u)?;
    let roots = isolate_real_roots(&u)?;
    let mut out = if cert.all_real() {
        Outcome::new("AllRealRoots", 0)
    } else {
        Outcome::new("NotAllReal", 1)
    };
    out = out
        .input("p", u.display_var(VARIABLES[var]))
        .cert("distinct_real_roots", cert.distinct_real_roots)
        .cert("distinct_complex_roots", cert.distinct_complex_roots)
        .cert("sturm_count", sturm_count(&u)?)
        .cert("roots", Value::Array(roots.iter().map(real_root_value).collect()));
    if !u.is_constant() {
        let h = hermite_matrix(&u.monic())?;
        out = out
            .cert("hermite_matrix", report::matrix(h.matrix()))
            .cert("hermite_signature", report::signature(&h.signature()));
    }
    Ok(out)
}

fn pair_outcome(m_forms: (&HomForm, &HomForm), c: &PairClassification) -> CliResult<Outcome> {
    let (verdict, code) = match c.verdict {
        PairVerdict::RealFiberedInterlacing => ("RealFiberedInterlacing", 0),
        PairVerdict::NotRealFibered => ("NotRealFibered", 1),
        PairVerdict::CommonZero => ("CommonZero", 2),
    };
    let st = ["s", "t"];
    let mut out = Outcome::new(verdict, code)
        .cert("f", m_forms.0.poly().display_with(&st))
        .cert("g", m_forms.1.poly().display_with(&st))
        .cert("samples_checked", c.samples_checked);
    if let Some(b) = &c.bezoutian {
        out = out
            .cert("bezoutian", report::matrix(b.matrix()))
            .cert("determinant", report::rational(&b.matrix().det()));
    }
    if let Some(s) = &c.signature {
        out = out.cert("signature", report::signature(s));
    }
    out = out.cert(
        "witness",
        c.witness
            .as_ref()
            .map(|(l, m)| json!([l.to_string(), m.to_string()]))
            .unwrap_or(Value::Null),
    );
    if c.verdict != PairVerdict::CommonZero {
        let map = RationalMapP1::new(m_forms.0.clone(), m_forms.1.clone())?;
        let ram = real_ramification(&map)?;
        out = out.cert("real_ramification", Value::Array(ram.iter().map(projective_point_value).collect()));
    }
    Ok(out)
}

pub fn interlace(f: &str, g: &str) -> CliResult<Outcome> {
    let ff = binary_form("f", f)?;
    let gg = binary_form("g", g)?;
    let c = classify_forms(&ff, &gg)?;
    Ok(pair_outcome((&ff, &gg), &c)?
        .input("f", ff.poly().display_with(&["s", "t"]))
        .input("g", gg.poly().display_with(&["s", "t"])))
}

fn hyperbolicity_outcome(v: &HyperbolicityVerdict) -> Outcome {
    let (verdict, code) = match v.status {
        HyperbolicityStatus::Certified => ("Certified", 0),
        HyperbolicityStatus::Refuted => ("Refuted", 1),
        HyperbolicityStatus::NotRefuted => ("NotRefuted", 3),
    };
    Outcome::new(verdict, code)
        .cert("samples", v.samples)
        .cert("witness", v.witness.as_deref().map(report::point).unwrap_or(Value::Null))
        .cert("reason", v.reason.map(|r| format!("{r:?}")).map(Value::from).unwrap_or(Value::Null))
}

fn form_in_coordinates(field: &str, text: &str, n: usize) -> CliResult<HomForm> {
    let p = poly_arg(field, text)?;
    let (used, zs) = infer_coordinates(&[&p])?;
    if used > n {
        return Err(CliError::Usage(format!("--{field} uses {used} coordinates but the point has {n}")));
    }
    Ok(HomForm::new(restrict(&p, &coordinate_vars(n, zs))?)?)
}

/// Coefficient matrices A_0..A_(m−1) of a matrix of linear forms in m
/// coordinates.
pub fn linear_coefficients(m: &Matrix<MultiPoly>, nvars: usize, zs: bool) -> CliResult<Vec<Matrix>> {
    let vars = coordinate_vars(nvars, zs);
    let mut mats = vec![Matrix::zeros(m.rows(), m.cols()); nvars];
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let entry = restrict(m.get(r, c), &vars)?;
            let (constant, lin) = entry.affine_parts().ok_or(Error::NonLinearEntry)?;
            if !constant.is_zero() {
                return Err(Error::NonHomogeneousEntry.into());
            }
            for (i, x) in lin.into_iter().enumerate() {
                mats[i].set(r, c, x);
            }
        }
    }
    Ok(mats)
}

fn pencil_from_json(text: &str, min_vars: usize) -> CliResult<(Vec<Matrix>, usize, bool)> {
    let m = wrap("matrix", parse_matrix(text))?;
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        }
        .into());
    }
    let entries: Vec<&MultiPoly> = m.entries().collect();
    let (used, zs) = infer_coordinates(&entries)?;
    let n = used.max(min_vars).max(1);
    Ok((linear_coefficients(&m, n, zs)?, n, zs))
}

pub fn hyperbolic(cmd: &HyperbolicCommand, s: Settings) -> CliResult<Outcome> {
    match cmd {
        HyperbolicCommand::Direction { f, e, x } => {
            let e = point_arg("e", e)?;
            let x = point_arg("x", x)?;
            let form = form_in_coordinates("f", f, e.len())?;
            let ok = direction_test(&form, &e, &x)?;
            let line = fibered_core::restrict_to_line(&form, &e, &x)?;
            Ok(if ok { Outcome::new("RealRooted", 0) } else { Outcome::new("NotRealRooted", 1) }
                .input("e", report::point(&e))
                .input("x", report::point(&x))
                .cert("restriction", line.display_var("t")))
        }
        HyperbolicCommand::Search { f, matrix, e } => {
            let e = point_arg("e", e)?;
            let budget = s.budget.unwrap_or(200);
            let out = match (f, matrix) {
                (Some(f), _) => {
                    let form = form_in_coordinates("f", f, e.len())?;
                    hyperbolicity_outcome(&hyperbolicity_search(&form, &e, budget, s.seed)?)
                        .input("f", form.poly().display_with(&VARIABLES[..e.len()]))
                }
                (None, Some(m)) => {
                    let (mats, n, _) = pencil_from_json(m, e.len())?;
                    if n != e.len() {
                        return Err(CliError::Usage(format!("matrix uses {n} coordinates but the point has {}", e.len())));
                    }
                    let pencil = MatrixPencil::new(mats)?;
                    hyperbolicity_outcome(&hyperbolicity_search_pencil(&pencil, &e, budget, s.seed)?)
                        .input("matrix", Value::String(m.clone()))
                }
                (None, None) => return Err(CliError::Usage("give --f or --matrix".into())),
            };
            Ok(out.input("e", report::point(&e)).input("budget", budget))
        }
        HyperbolicCommand::ProjectCurve { center, degree, param } => {
            let forms: Vec<String> = serde_json::from_str(center)
                .map_err(|e| CliError::Usage(format!("--center: {e}")))?;
            let parsed: Vec<MultiPoly> = forms.iter().map(|t| poly_arg("center", t)).collect::<CliResult<_>>()?;
            let cc = match (degree, param) {
                (_, Some(p)) => {
                    let ps: Vec<String> =
                        serde_json::from_str(p).map_err(|e| CliError::Usage(format!("--param: {e}")))?;
                    let param = ps
                        .iter()
                        .map(|t| binary_form("param", t))
                        .collect::<CliResult<Vec<_>>>()?;
                    let n = param.len();
                    let center_forms = linear_rows(&parsed, n)?;
                    CurveCenter::new(param, center_forms)?
                }
                (d, None) => {
                    let d = d.unwrap_or(3);
                    let center_forms = linear_rows(&parsed, d as usize + 1)?;
                    CurveCenter::rational_normal_curve(d, center_forms)?
                }
            };
            let out = match project_curve(&cc) {
                Ok(m) => {
                    let c = fibered_core::interlace::classify_pair(&m)?;
                    pair_outcome((m.f(), m.g()), &c)?
                }
                Err(Error::CommonZero) => {
                    let f = cc.pull_back(&cc.center_forms()[0]);
                    let g = cc.pull_back(&cc.center_forms()[1]);
                    let c = classify_forms(&f, &g).unwrap_or(PairClassification {
                        verdict: PairVerdict::CommonZero,
                        bezoutian: None,
                        signature: None,
                        witness: None,
                        samples_checked: 0,
                    });
                    pair_outcome((&f, &g), &c)?
                }
                Err(e) => return Err(e.into()),
            };
            Ok(out.input("center", json!(forms)))
        }
        HyperbolicCommand::Intersect { f, g } => {
            let ff = form_in_coordinates("f", f, 3)?;
            let gg = form_in_coordinates("g", g, 3)?;
            let c = curve_pair_real_intersections(&ff, &gg, s.seed)?;
            let out = if c.real_count == c.total_count {
                Outcome::new("AllReal", 0)
            } else {
                Outcome::new("NonRealPoints", 1)
            };
            Ok(out
                .input("f", ff.poly().display_with(&VARIABLES[..3]))
                .input("g", gg.poly().display_with(&VARIABLES[..3]))
                .cert("real_count", c.real_count)
                .cert("total_count", c.total_count)
                .cert("transversal", c.transversal))
        }
        HyperbolicCommand::Parity { genus, components } => Ok(parity(*genus, *components)),
        HyperbolicCommand::Veronese { center } => {
            let pts = match center {
                Some(c) => wrap("center", parse_point_list(c))?,
                None => random_veronese_center(s.seed)?,
            };
            veronese(&pts, s)
        }
    }
}

pub fn parity(genus: i64, components: i64) -> Outcome {
    let reason = dividing_parity_reason(genus, components);
    match dividing_parity(genus, components) {
        DividingParity::Possible => Outcome::new("Possible", 0),
        DividingParity::Impossible => Outcome::new("Impossible", 1),
    }
    .input("genus", genus)
    .input("components", components)
    .cert("reason", reason)
}

pub fn veronese(pts: &[Vec<Rational>], s: Settings) -> CliResult<Outcome> {
    let budget = s.budget.unwrap_or(100);
    let out = match veronese_refutation(pts, budget, s.seed)? {
        VeroneseOutcome::RefutationFound {
            extra_point,
            conics,
            count,
            attempts,
        } => {
            let names = &VARIABLES[..3];
            Outcome::new("NotHyperbolic", 1)
                .cert("extra_point", report::point(&extra_point))
                .cert(
                    "conics",
                    json!([conics.0.poly().display_with(names), conics.1.poly().display_with(names)]),
                )
                .cert("real_count", count.real_count)
                .cert("total_count", count.total_count)
                .cert("attempts", attempts)
        }
        VeroneseOutcome::Exhausted { attempts } => Outcome::new("Exhausted", 3).cert("attempts", attempts),
    };
    Ok(out
        .input("center", Value::Array(pts.iter().map(|p| report::point(p)).collect()))
        .input("budget", budget))
}

/// Coefficient rows of linear forms in x0..x_(n−1).
fn linear_rows(forms: &[MultiPoly], n: usize) -> CliResult<Vec<Vec<Rational>>> {
    let vars = coordinate_vars(n, false);
    forms
        .iter()
        .map(|f| {
            let r = restrict(f, &vars)?;
            let (c, lin) = r.affine_parts().ok_or(Error::NonLinearEntry)?;
            if !c.is_zero() {
                return Err(Error::NonHomogeneousEntry.into());
            }
            Ok(lin)
        })
        .collect()
}

pub fn detrep(a: &DetrepArgs) -> CliResult<Outcome> {
    let e_given = a.e.as_deref().map(|t| point_arg("e", t)).transpose()?;
    let (mats, n, zs) = pencil_from_json(&a.matrix, e_given.as_ref().map_or(2, |e| e.len()))?;
    let e = e_given.unwrap_or_else(|| {
        let mut v = vec![Rational::zero(); n];
        v[0] = Rational::one();
        v
    });
    if e.len() != n {
        return Err(CliError::Usage(format!("matrix uses {n} coordinates but --e has {}", e.len())));
    }
    let pencil = MatrixPencil::new(mats.clone())?;
    let det = pencil.determinant()?;
    let names: Vec<&str> = coordinate_vars(n, zs).iter().map(|&i| VARIABLES[i]).collect();
    let at_e = pencil.at(&e);
    let symmetric = pencil.is_symmetric();
    let definite = symmetric
        && fibered_core::SymMatrix::new(at_e.clone())
            .map(|m| m.signature().is_definite())
            .unwrap_or(false);
    let mut out = if definite {
        Outcome::new("DefiniteAtBasePoint", 0)
    } else {
        Outcome::new("NoCertificate", 3)
    };
    out = out
        .input("matrix", Value::String(a.matrix.clone()))
        .input("e", report::point(&e))
        .cert("determinant", det.poly().display_with(&names))
        .cert("symmetric", symmetric)
        .cert("matrix_at_e", report::matrix(&at_e));
    if let Some(pts) = &a.points {
        let pts = wrap("points", parse_point_list(pts))?;
        let gamma = LivsicTensor::from_pencil(&mats)?;
        let rows = pts
            .iter()
            .map(|p| {
                let (member, k) = membership(&gamma, p)?;
                Ok(json!({ "point": report::point(p), "member": member, "kernel_dim": k }))
            })
            .collect::<CliResult<Vec<_>>>()?;
        out = out.cert("membership", Value::Array(rows));
    }
    Ok(out)
}

pub fn koszul_cmd(a: &KoszulArgs, s: Settings) -> CliResult<Outcome> {
    let raw = wrap("matrices", parse_matrix_list(&a.matrices))?;
    if raw.is_empty() {
        return Err(CliError::Usage("--matrices must contain at least one matrix".into()));
    }
    let entries: Vec<&MultiPoly> = raw.iter().flat_map(|m| m.entries()).collect();
    let (used, zs) = infer_coordinates(&entries)?;
    let nvars = match a.d {
        Some(d) if d + 1 < used => {
            return Err(CliError::Usage(format!("--d {d} is smaller than the coordinates used")));
        }
        Some(d) => d + 1,
        None => used.max(raw.len() + 1),
    };
    let vars = coordinate_vars(nvars, zs);
    let names: Vec<&str> = vars.iter().map(|&i| VARIABLES[i]).collect();
    let mats = raw
        .iter()
        .map(|m| {
            let rows = m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|p| restrict(p, &vars)).collect::<CliResult<Vec<_>>>())
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Matrix::from_rows(rows))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let system = validate_system(mats)?;
    let complex = koszul(&system)?;
    let w = wedge_compose(&system)?;
    let gamma = hodge_dual(&w.dual);
    let points = match &a.points {
        Some(p) => wrap("points", parse_point_list(p))?,
        None => seeded_points(nvars, s.samples.unwrap_or(25), s.seed),
    };
    let probe = exactness_probe(&complex, Some(&gamma), &points)?;
    let symmetric = system.is_symmetric();
    let theorem = if symmetric { Some(check_symmetry_theorem(&system, s.seed)?) } else { None };
    let center = fibered_core::livsic::evaluate_at_center(&w.dual, &delta_center(system.d(), system.c()))?;
    let ok = complex.composes_to_zero() && probe.ok() && theorem != Some(false);
    let mut out = if ok { Outcome::new("Verified", 0) } else { Outcome::new("Violated", 1) };
    let tensor: serde_json::Map<String, Value> = w
        .dual
        .coefficients()
        .iter()
        .map(|(k, m)| {
            let key = k.iter().map(|i| names[*i]).collect::<Vec<_>>().join("^");
            (key, report::matrix(m))
        })
        .collect();
    out = out
        .input("matrices", Value::String(a.matrices.clone()))
        .cert("c", system.c())
        .cert("d", system.d())
        .cert("n", system.n())
        .cert(
            "differential_shapes",
            Value::Array(
                complex
                    .differentials()
                    .iter()
                    .map(|m| json!([m.rows(), m.cols()]))
                    .collect(),
            ),
        )
        .cert("composes_to_zero", complex.composes_to_zero())
        .cert("koszul_factor", w.koszul_factor.to_string())
        .cert("dual_tensor", Value::Object(tensor))
        .cert("symmetric_system", symmetric)
        .cert("symmetry_theorem", theorem.map(Value::from).unwrap_or(Value::Null))
        .cert("delta_center_evaluation", report::matrix(&center.matrix))
        .cert("points_probed", probe.probes.len())
        .cert("members", probe.probes.iter().filter(|p| p.member == Some(true)).count())
        .cert("violations", json!(probe.violations));
    Ok(out)
}

pub fn tracetest(a: &TracetestArgs) -> CliResult<Outcome> {
    let (fp, inputs): (FinitePresentation, Fields) = match (&a.q, &a.f, &a.g) {
        (Some(q), _, _) => {
            let p = restrict(&poly_arg("q", q)?, &[T, Z])?;
            (
                FinitePresentation::from_multipoly(&p, 0, Some(1))?,
                fields([("q", Value::String(print_in(&p, &[T, Z])))]),
            )
        }
        (None, Some(f), Some(g)) => {
            let m = RationalMapP1::new(binary_form("f", f)?, binary_form("g", g)?)?;
            (
                map_to_presentation(&m)?,
                fields([
                    ("f", Value::String(m.f().poly().display_with(&["s", "t"]))),
                    ("g", Value::String(m.g().poly().display_with(&["s", "t"]))),
                ]),
            )
        }
        _ => return Err(CliError::Usage("give --q or both --f and --g".into())),
    };
    let mut out = trace_outcome(&fp)?;
    out.inputs.extend(inputs);
    Ok(out)
}

fn presentation_poly(fp: &FinitePresentation) -> String {
    let mut acc = MultiPoly::zero(2);
    for (i, c) in fp.q().iter().enumerate() {
        let zc = MultiPoly::from_univariate(c, 2, 1);
        acc = &acc + &(&zc * &MultiPoly::var(2, 0).pow(i as u32));
    }
    acc.display_with(&["t", "z"])
}

pub fn trace_outcome(fp: &FinitePresentation) -> CliResult<Outcome> {
    let cert = real_fibered_certificate(fp)?;
    let (verdict, code) = match cert.verdict {
        FiberVerdict::RealFibered => ("RealFibered", 0),
        FiberVerdict::NotRealFibered => ("NotRealFibered", 1),
        FiberVerdict::Inconclusive => ("Inconclusive", 3),
    };
    let witness = cert
        .psd
        .witness
        .as_ref()
        .map(|w| json!({ "z": w.z.to_string(), "signature": report::signature(&w.signature) }))
        .unwrap_or(Value::Null);
    Ok(Outcome::new(verdict, code)
        .cert("presentation", presentation_poly(fp))
        .cert("trace_form", report::base_matrix(&trace_form(fp), "z"))
        .cert("principal_minors", cert.psd.minors.len())
        .cert("psd", cert.psd.psd)
        .cert("witness", witness)
        .cert(
            "witness_fiber_real_points",
            cert.witness_real_points.map(Value::from).unwrap_or(Value::Null),
        ))
}

pub fn demo(d: &DemoCommand, s: Settings) -> CliResult<Outcome> {
    match d {
        DemoCommand::TwistedCubic => demos::twisted_cubic(s),
        DemoCommand::EdgeQuartic => demos::edge_quartic(s),
        DemoCommand::TvScreen => Ok(demos::tv_screen()),
        DemoCommand::Mobius { k } => demos::mobius(*k),
        DemoCommand::Veronese => demos::veronese_demo(s),
        DemoCommand::DoubleCover { p } => demos::double_cover(p),
    }
}

pub fn dispatch(cli: &Cli) -> CliResult<(String, Outcome)> {
    let s = Settings {
        seed: cli.seed,
        budget: cli.budget,
        samples: cli.samples,
    };
    Ok(match &cli.command {
        Command::Realroots { p } => ("realroots".into(), realroots(p)?),
        Command::Interlace { f, g } => ("interlace".into(), interlace(f, g)?),
        Command::Hyperbolic { command } => (format!("hyperbolic {}", hyperbolic_name(command)), hyperbolic(command, s)?),
        Command::Detrep(a) => ("detrep".into(), detrep(a)?),
        Command::Koszul(a) => ("koszul".into(), koszul_cmd(a, s)?),
        Command::Tracetest(a) => ("tracetest".into(), tracetest(a)?),
        Command::Demo { demo: d } => (format!("demo {}", demo_name(d)), demo(d, s)?),
    })
}

pub fn command_name(cli: &Cli) -> String {
    match &cli.command {
        Command::Realroots { .. } => "realroots".into(),
        Command::Interlace { .. } => "interlace".into(),
        Command::Hyperbolic { command } => format!("hyperbolic {}", hyperbolic_name(command)),
        Command::Detrep(_) => "detrep".into(),
        Command::Koszul(_) => "koszul".into(),
        Command::Tracetest(_) => "tracetest".into(),
        Command::Demo { demo: d } => format!("demo {}", demo_name(d)),
    }
}

fn hyperbolic_name(c: &HyperbolicCommand) -> &'static str {
    match c {
        HyperbolicCommand::Direction { .. } => "direction",
        HyperbolicCommand::Search { .. } => "search",
        HyperbolicCommand::ProjectCurve { .. } => "project-curve",
        HyperbolicCommand::Intersect { .. } => "intersect",
        HyperbolicCommand::Parity { .. } => "parity",
        HyperbolicCommand::Veronese { .. } => "veronese",
    }
}

fn demo_name(d: &DemoCommand) -> String {
    match d {
        DemoCommand::TwistedCubic => "twisted-cubic".into(),
        DemoCommand::EdgeQuartic => "edge-quartic".into(),
        DemoCommand::TvScreen => "tv-screen".into(),
        DemoCommand::Mobius { k } => format!("mobius {k}"),
        DemoCommand::Veronese => "veronese".into(),
        DemoCommand::DoubleCover { .. } => "double-cover".into(),
    }
}

use num_traits::{One, Zero};
