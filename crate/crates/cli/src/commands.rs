//! The subcommands. Each returns an [`Outcome`] whose exit code is 0 for a
//! positive answer, 1 for a negative one and 2 for malformed input.

use std::fmt::Write as _;
use std::fs;

use cayley_core::cayley::{cayley_condition, cayley_diagnostic};
use cayley_core::closedform::{
    construct_m_eq_n, main_caustic_type, planar_table, rotation_number, solve_c43, spatial_table,
    Conic, PLANAR_TABLE, SPATIAL_TABLE,
};
use cayley_core::confocal::{caustic_type_name, existence_check, parse_caustic_type, parse_params, Ellipsoid, MergedSpectrum};
use cayley_core::polyform::{
    certificate_from_kernel, certificate_from_kernel_f64, certificate_root_structure,
    solve_signature_all, verify_certificate, Certificate, Signature, SolveOptions,
};
use cayley_core::simulator::{launch_tangent, line_caustics, simulate, winding_numbers};
use cayley_core::{Error, Rational, Scalar};
use rayon::prelude::*;

use crate::config::{
    infer_mode, parse_range, CheckArgs, Mode, RotationArgs, SimulateArgs, SolveArgs, SweepArgs,
    UsageError,
};
use crate::export::{fmt17, trajectory_csv, trajectory_svg};

/// Report text plus exit status.
#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub report: String,
}

impl Outcome {
    fn new(positive: bool, report: String) -> Self {
        Outcome { code: if positive { 0 } else { 1 }, report }
    }

    pub fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 2, report: format!("error: {msg}\n") }
    }

    /// Library errors: malformed input is a usage error, everything else a
    /// negative verdict.
    fn from_error(err: Error) -> Self {
        match err {
            Error::Parse(_)
            | Error::InvalidInput(_)
            | Error::InvalidEllipsoid(_)
            | Error::IndexOutOfRange(_)
            | Error::EllipticPeriodBelowDimension { .. } => Outcome::usage(err),
            other => Outcome::new(false, format!("{other}\n")),
        }
    }
}

impl From<UsageError> for Outcome {
    fn from(e: UsageError) -> Self {
        Outcome::usage(e)
    }
}

type Run = Result<Outcome, Outcome>;

fn lib<T>(r: cayley_core::Result<T>) -> Result<T, Outcome> {
    r.map_err(Outcome::from_error)
}

/// Parse a list and sort it increasingly.
fn sorted<S: Scalar>(text: &str) -> Result<Vec<S>, Outcome> {
    let mut v: Vec<S> = lib(parse_params(text))?;
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(v)
}

fn text_list<S: Scalar>(v: &[S], exact: bool) -> String {
    v.iter().map(|x| show(x, exact)).collect::<Vec<_>>().join(", ")
}

/// Full precision: exact values as rationals, everything else as the
/// shortest decimal that reads back to the same double.
fn show<S: Scalar>(x: &S, exact: bool) -> String {
    if S::EXACT && exact {
        x.to_text()
    } else {
        format!("{}", x.to_f64())
    }
}

fn floats(text: &str, mode: Mode) -> Result<Vec<f64>, Outcome> {
    Ok(match mode {
        Mode::Exact => sorted::<Rational>(text)?.iter().map(Scalar::to_f64).collect(),
        Mode::Float => sorted::<f64>(text)?,
    })
}

fn write_certificate<S: Scalar>(out: &mut String, cert: &Certificate<S>) {
    let _ = writeln!(out, "  S(x) = {}", cert.s());
    let _ = writeln!(out, "  P(x) = {}", cert.p());
}

pub fn check_cayley(args: &CheckArgs) -> Run {
    match infer_mode(&[&args.axes, &args.caustics])? {
        Mode::Exact => check_exact(args),
        Mode::Float => check_float(args),
    }
}

fn check_setup<S: Scalar>(args: &CheckArgs, out: &mut String) -> Result<MergedSpectrum<S>, Outcome> {
    let e = lib(Ellipsoid::new(sorted::<S>(&args.axes)?))?;
    let params = sorted::<S>(&args.caustics)?;
    let cs = match existence_check(&e, &params) {
        Ok(cs) => cs,
        Err(err @ (Error::SingularCaustic { .. } | Error::NoTangentTrajectories { .. })) => {
            let _ = writeln!(out, "existence: {err}");
            let _ = writeln!(out, "verdict: not periodic");
            return Err(Outcome::new(false, std::mem::take(out)));
        }
        Err(err) => return Err(Outcome::from_error(err)),
    };
    let name = cs.type_name().map_or_else(|| format!("{:?}", cs.type_vector()), str::to_string);
    let _ = writeln!(out, "existence: tangent trajectories exist (caustic type {name})");
    lib(MergedSpectrum::new(&e, &cs))
}

fn check_exact(args: &CheckArgs) -> Run {
    let mut out = String::new();
    let spec = check_setup::<Rational>(args, &mut out)?;
    let v = lib(cayley_condition(&spec, args.m))?;
    let _ = writeln!(
        out,
        "matrix: rank {} with {} columns ({})",
        v.rank,
        v.columns,
        if v.holds { "deficient" } else { "full" }
    );
    if v.holds {
        match lib(certificate_from_kernel(&spec, args.m))? {
            Some(cert) => {
                let check = lib(verify_certificate(&spec, &cert))?;
                let _ = writeln!(out, "certificate: {}", if check.holds { "identity holds exactly" } else { "identity fails" });
                write_certificate(&mut out, &cert);
                if let Ok(rep) = certificate_root_structure(&cert, &spec) {
                    if let Some(sig) = rep.signature {
                        let _ = writeln!(out, "  signature: {:?}", sig.tau());
                    }
                }
            }
            None => {
                let _ = writeln!(out, "certificate: none (kernel vectors vanish at 0)");
            }
        }
    } else {
        let _ = writeln!(out, "certificate: none");
    }
    let _ = writeln!(
        out,
        "verdict: {}",
        if v.holds { format!("periodic with elliptic period {}", args.m) } else { "not periodic".into() }
    );
    Ok(Outcome::new(v.holds, out))
}

fn check_float(args: &CheckArgs) -> Run {
    let mut out = String::new();
    let spec = check_setup::<f64>(args, &mut out)?;
    let diag = lib(cayley_diagnostic(&spec, args.m, args.tol))?;
    let _ = writeln!(
        out,
        "matrix: numerical rank {} with {} columns at tolerance {:e} (smallest normalized singular value {:e})",
        diag.numerical_rank,
        diag.columns,
        args.tol,
        diag.smallest()
    );
    let mut cert_ok = false;
    if let Ok(cert) = certificate_from_kernel_f64(&spec, args.m) {
        let check = lib(verify_certificate(&spec, &cert))?;
        cert_ok = check.holds;
        let _ = writeln!(
            out,
            "certificate: relative residual {:e} ({})",
            check.residual,
            if check.holds { "holds" } else { "fails" }
        );
        if check.holds {
            write_certificate(&mut out, &cert);
        }
    }
    let periodic = diag.holds();
    if periodic != cert_ok {
        let _ = writeln!(out, "note: matrix and certificate disagree at this tolerance");
    }
    let _ = writeln!(
        out,
        "verdict: {}",
        if periodic { format!("periodic with elliptic period {}", args.m) } else { "not periodic".into() }
    );
    Ok(Outcome::new(periodic, out))
}

/// One family of solutions found by `solve-caustics`.
struct Family<S> {
    signature: Vec<usize>,
    source: &'static str,
    lambdas: Vec<S>,
    exact: bool,
    extra: Vec<(&'static str, S)>,
}

pub fn solve_caustics(args: &SolveArgs) -> Run {
    match infer_mode(&[&args.axes])? {
        Mode::Exact => solve_typed::<Rational>(args),
        Mode::Float => solve_typed::<f64>(args),
    }
}

fn solve_typed<S: Scalar>(args: &SolveArgs) -> Run {
    let axes = sorted::<S>(&args.axes)?;
    let e = lib(Ellipsoid::new(axes.clone()))?;
    let n = e.dim();
    if let Some(want) = args.n {
        if want != n {
            return Err(Outcome::usage(format!("--n {want} but {n} axis parameters given")));
        }
    }
    let varsigma = lib(parse_caustic_type(n, &args.kind))?;
    if args.m < n {
        return Err(Outcome::from_error(Error::EllipticPeriodBelowDimension { m: args.m, n }));
    }
    let sigs = match &args.tau {
        Some(t) => vec![lib(Signature::parse(args.m, n, t))?],
        None => Signature::all(args.m, n),
    };
    let mut out = String::new();
    let _ = writeln!(out, "ellipsoid: {}", text_list(&axes, true));
    let _ = writeln!(
        out,
        "caustic type: {} (m = {})",
        caustic_type_name(&varsigma).map_or_else(|| format!("{varsigma:?}"), str::to_string),
        args.m
    );
    let mut found = 0;
    for sig in &sigs {
        match solve_one(&e, &varsigma, sig, args.seed) {
            Ok(families) => {
                for fam in families {
                    found += 1;
                    report_family(&mut out, &e, &varsigma, args.m, &fam);
                }
            }
            Err(err) => {
                let _ = writeln!(out, "signature {:?}: {err}", sig.tau());
                if sigs.len() == 1 && is_usage(&err) {
                    return Err(Outcome::usage(err));
                }
            }
        }
    }
    if found == 0 {
        let _ = writeln!(out, "no trajectories found");
    }
    Ok(Outcome::new(found > 0, out))
}

fn is_usage(err: &Error) -> bool {
    matches!(
        err,
        Error::Parse(_) | Error::InvalidInput(_) | Error::InvalidEllipsoid(_) | Error::IndexOutOfRange(_)
    )
}

/// Closed form when the registry has one for this (n, m, type, signature),
/// otherwise the numerical solver.
fn solve_one<S: Scalar>(
    e: &Ellipsoid<S>,
    varsigma: &[usize],
    sig: &Signature,
    seed: u64,
) -> cayley_core::Result<Vec<Family<S>>> {
    let n = e.dim();
    let m = sig.m();
    let ax = e.axes();
    let tau = sig.tau().to_vec();
    if n == 2 {
        let kind = if varsigma[0] == 0 { Conic::E } else { Conic::H };
        let has_row = PLANAR_TABLE.iter().any(|r| r.m == m && r.kind == kind && r.tau[..] == tau[..]);
        if has_row {
            let r = planar_table(&ax[1], &ax[0], m, kind, &tau)?;
            return Ok(vec![Family {
                signature: tau,
                source: "closed form (planar table)",
                lambdas: vec![r.lambda],
                exact: r.exact,
                extra: Vec::new(),
            }]);
        }
    }
    if n == 3 && m == 3 {
        let cf = spatial_table(&ax[2], &ax[1], &ax[0], varsigma)?;
        return Ok(vec![Family {
            signature: tau,
            source: "closed form (spatial table)",
            lambdas: cf.caustics.params().to_vec(),
            exact: cf.exact,
            extra: Vec::new(),
        }]);
    }
    if n == 3 && m == 4 && varsigma == [1, 1] && tau == [0, 0, 1] {
        let cf = solve_c43(&ax[2], &ax[1], &ax[0])?;
        return Ok(vec![Family {
            signature: tau,
            source: "closed form (period 4)",
            lambdas: cf.caustics.params().to_vec(),
            exact: cf.exact,
            extra: vec![("d", cf.d.expect("period 4 carries d"))],
        }]);
    }
    if m == n && varsigma == main_caustic_type(n).as_slice() {
        let inst = construct_m_eq_n(e)?;
        let cs = inst.caustics.expect("construction from an ellipsoid");
        return Ok(vec![Family {
            signature: tau,
            source: "closed form (period n)",
            lambdas: cs.params().to_vec(),
            exact: inst.exact,
            extra: Vec::new(),
        }]);
    }
    let opts = SolveOptions { seed, ..SolveOptions::default() };
    let sols = solve_signature_all(e, varsigma, sig, &opts)?;
    Ok(sols
        .into_iter()
        .map(|s| Family {
            signature: tau.clone(),
            source: "numerical solver",
            lambdas: s.caustics,
            exact: s.exact,
            extra: s.deltas.into_iter().map(|d| ("delta", d)).collect(),
        })
        .collect())
}

fn report_family<S: Scalar>(out: &mut String, e: &Ellipsoid<S>, varsigma: &[usize], m: usize, fam: &Family<S>) {
    let _ = writeln!(out, "signature {:?}: {}", fam.signature, fam.source);
    let _ = writeln!(out, "  lambda: {}", text_list(&fam.lambdas, fam.exact));
    for (name, v) in &fam.extra {
        let _ = writeln!(out, "  {name}: {}", show(v, fam.exact));
    }
    let _ = writeln!(out, "  exact: {}", fam.exact);
    let exists = existence_check(e, &fam.lambdas);
    let verdict = match &exists {
        Ok(cs) if cs.type_vector() == varsigma => "accepted".to_string(),
        Ok(cs) => format!("caustic type {:?} differs", cs.type_vector()),
        Err(err) => err.to_string(),
    };
    let _ = writeln!(out, "  existence: {verdict}");
    let Ok(cs) = exists else { return };
    // exact certificates need exact parameters; otherwise fall back to floats
    let exact_spec = if S::EXACT && fam.exact {
        let ax: Option<Vec<Rational>> = e.axes().iter().map(Scalar::to_rational).collect();
        let ls: Option<Vec<Rational>> = cs.params().iter().map(Scalar::to_rational).collect();
        ax.zip(ls).and_then(|(ax, ls)| {
            let e = Ellipsoid::new(ax).ok()?;
            let cs = existence_check(&e, &ls).ok()?;
            MergedSpectrum::new(&e, &cs).ok()
        })
    } else {
        None
    };
    if let Some(spec) = exact_spec {
        if let Ok(Some(cert)) = certificate_from_kernel(&spec, m) {
            let _ = writeln!(out, "  certificate (exact):");
            write_certificate(out, &cert);
            return;
        }
    }
    let Ok(spec) = MergedSpectrum::new(e, &cs) else { return };
    let spec = spec.to_f64();
    if let Ok(cert) = certificate_from_kernel_f64(&spec, m) {
        if let Ok(check) = verify_certificate(&spec, &cert) {
            let _ = writeln!(out, "  certificate (relative residual {:e}):", check.residual);
            write_certificate(out, &cert);
        }
    }
}

pub fn simulate_cmd(args: &SimulateArgs) -> Run {
    let mode = infer_mode(&[&args.axes, &args.caustics])?;
    let axes = floats(&args.axes, mode)?;
    let lambdas = floats(&args.caustics, mode)?;
    let e = lib(Ellipsoid::new(axes))?;
    let start = match launch_tangent(&e, &lambdas, args.seed) {
        Ok(s) => s,
        Err(err @ Error::LaunchFailure(_)) => return Ok(Outcome::new(false, format!("{err}\n"))),
        Err(err) => return Err(Outcome::from_error(err)),
    };
    let t = match simulate(&e, &start, args.max_bounces, args.tol) {
        Ok(t) => t,
        Err(err) => return Ok(Outcome::new(false, format!("simulation stopped: {err}\n"))),
    };
    let mut out = String::new();
    if let Some(path) = &args.csv {
        let last = t.states.last().expect("nonempty");
        let tail = line_caustics(&e, &last.point, &last.direction).ok();
        let text = trajectory_csv(&t, tail.as_deref()).map_err(|e| Outcome::usage(format!("csv: {e}")))?;
        fs::write(path, text).map_err(|err| Outcome::usage(format!("{}: {err}", path.display())))?;
    }
    if let Some(path) = &args.svg {
        if e.dim() != 2 {
            return Err(Outcome::usage("SVG output is only available for ellipses"));
        }
        let text = trajectory_svg(&e, &lambdas, &t);
        fs::write(path, text).map_err(|err| Outcome::usage(format!("{}: {err}", path.display())))?;
    }
    let _ = writeln!(out, "caustic drift: {:e}", t.caustic_drift());
    let Some(c) = &t.closure else {
        let _ = writeln!(out, "open: no closure within {} bounces", args.max_bounces);
        return Ok(Outcome::new(false, out));
    };
    let _ = writeln!(out, "closed: m0 = {}, m = {}, sigma = {:?}", c.m0, c.m, c.sigma);
    let _ = writeln!(out, "length: {}", c.length);
    let _ = writeln!(out, "closure residual: {:e}", c.residual);
    match winding_numbers(&e, &t) {
        Ok(w) => {
            let _ = writeln!(out, "winding numbers: {:?}", w.m);
            let _ = writeln!(out, "elliptic winding numbers: {:?}", w.elliptic);
            let _ = writeln!(out, "strictly decreasing: {}", w.strictly_decreasing());
        }
        Err(err) => {
            let _ = writeln!(out, "winding numbers: {err}");
        }
    }
    Ok(Outcome::new(true, out))
}

pub fn rotation_cmd(args: &RotationArgs) -> Run {
    let mode = infer_mode(&[&args.axes, &args.lambda])?;
    let axes = floats(&args.axes, mode)?;
    let lambda = floats(&args.lambda, mode)?;
    let ([b, a], [l]) = (axes.as_slice(), lambda.as_slice()) else {
        return Err(Outcome::usage("need two axis parameters and one lambda"));
    };
    let rho = lib(rotation_number(*a, *b, *l))?;
    Ok(Outcome::new(true, format!("rho: {rho}\n")))
}

fn verdict<T>(r: cayley_core::Result<T>) -> &'static str {
    match r {
        Ok(_) => "yes",
        Err(Error::NoSuchTrajectory(_)) => "no",
        Err(Error::Indeterminate(_)) => "indeterminate",
        Err(_) => "error",
    }
}

pub fn sweep(args: &SweepArgs) -> Run {
    let a_vals = parse_range(&args.a)?;
    let b_vals = parse_range(&args.b)?;
    let c_vals = match &args.c {
        Some(c) => Some(parse_range(c)?),
        None => None,
    };
    let mut header: Vec<String> = vec!["a".into(), "b".into()];
    let points: Vec<Vec<f64>> = match &c_vals {
        None => a_vals.iter().flat_map(|a| b_vals.iter().map(move |b| vec![*a, *b])).collect(),
        Some(cs) => a_vals
            .iter()
            .flat_map(|a| b_vals.iter().flat_map(move |b| cs.iter().map(move |c| vec![*a, *b, *c])))
            .collect(),
    };
    if c_vals.is_some() {
        header.push("c".into());
        header.extend(SPATIAL_TABLE.iter().map(|r| format!("m3_{}", r.name)));
        header.push("m4_H1H1_tau001".into());
    } else {
        header.extend(PLANAR_TABLE.iter().map(|r| {
            format!("m{}_{:?}_tau{}{}", r.m, r.kind, r.tau[0], r.tau[1])
        }));
    }
    header.push("note".into());
    let rows: Vec<Vec<String>> = points
        .par_iter()
        .map(|p| {
            let mut row: Vec<String> = p.iter().map(|x| fmt17(*x)).collect();
            let valid = p.windows(2).all(|w| w[0] > w[1]) && p.last().is_some_and(|x| *x > 0.0);
            let cols = header.len() - p.len() - 1;
            if !valid {
                row.extend(std::iter::repeat_n(String::new(), cols));
                row.push("skipped: axis parameters must be distinct, positive and decreasing".into());
                return row;
            }
            if let [a, b, c] = p[..] {
                for r in &SPATIAL_TABLE {
                    row.push(verdict(spatial_table(&a, &b, &c, &r.varsigma)).into());
                }
                row.push(verdict(solve_c43(&a, &b, &c)).into());
            } else {
                let (a, b) = (p[0], p[1]);
                for r in &PLANAR_TABLE {
                    row.push(verdict(planar_table(&a, &b, r.m, r.kind, &r.tau)).into());
                }
            }
            row.push(String::new());
            row
        })
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Outcome::usage(format!("csv: {e}"));
    w.write_record(&header).map_err(io)?;
    for r in &rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Outcome::usage(format!("csv: {e}")))?;
    let text = String::from_utf8(bytes).expect("csv output is utf-8");
    match &args.out {
        Some(path) => {
            fs::write(path, &text).map_err(|err| Outcome::usage(format!("{}: {err}", path.display())))?;
            Ok(Outcome::new(true, format!("{} grid points written to {}\n", rows.len(), path.display())))
        }
        None => Ok(Outcome::new(true, text)),
    }
}
