use std::fs;
use std::path::Path;

use fhaim_core::aim::{aim_eigenvalues, delta_roots, quantization_delta, AimSpectrumReport, EigenSearch};
use fhaim_core::exactalg::{int, to_f64};
use fhaim_core::oracle::{default_grid, oracle_spectrum, Grid};
use fhaim_core::oscillator::{
    bound_status, eigen_polynomial, oscillator_seed, spectrum_closed_dimensionless, wavefunction_eval,
    BoundStatus, Energy, Method, ModelParams, SignConvention, SpectrumEntry,
};
use fhaim_core::BigRat;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::args::{
    FiguresArgs, Format, MethodArg, ModelArgs, SolverArgs, SpectrumArgs, VerifyArgs, WavefunctionArgs,
};
use crate::error::{exit, CliError};
use crate::rational::{format_decimal, format_f64};
use crate::report::{spectrum_table, JsonEntry, JsonParams, SpectrumJson, Table, SIG_DIGITS};

/// Rendered command output plus the exit code to report.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: exit::OK }
    }
}

pub fn model_params(args: &ModelArgs) -> Result<ModelParams, CliError> {
    let omega = args.omega.clone().unwrap_or_else(BigRat::one);
    let lambda = match (&args.lambda, &args.lambda_tilde) {
        (Some(_), Some(_)) => {
            return Err(CliError::BadParameters(
                "--lambda and --lambda-tilde are mutually exclusive".into(),
            ))
        }
        (Some(l), None) => l.clone(),
        (None, Some(lt)) => lt * &omega,
        (None, None) => BigRat::zero(),
    };
    Ok(ModelParams::new(omega, lambda)?)
}

fn signs(solver: &SolverArgs) -> SignConvention {
    if solver.printed_signs {
        SignConvention::Printed
    } else {
        SignConvention::Corrected
    }
}

fn k_max(solver: &SolverArgs, n_max: u32) -> usize {
    solver.kmax.unwrap_or((n_max as usize + 3).max(8))
}

fn run_aim(params: &ModelParams, solver: &SolverArgs, k_max: usize) -> Result<AimSpectrumReport, CliError> {
    if k_max == 0 {
        return Err(CliError::BadParameters("--kmax must be at least 1".into()));
    }
    let seed = oscillator_seed(&params.lambda_tilde(), signs(solver))?;
    let search = EigenSearch {
        k_max,
        tau0: solver.tau0.clone(),
        stab_tol: solver.stab_tol.clone(),
        ..EigenSearch::default()
    };
    if search.stab_tol <= BigRat::zero() {
        return Err(CliError::BadParameters("--stab-tol must be positive".into()));
    }
    Ok(aim_eigenvalues(&seed, &search)?)
}

fn oracle_grid(params: &ModelParams, solver: &SolverArgs, n_max: u32) -> Result<Grid, CliError> {
    let default = default_grid(params, n_max);
    let t = solver.grid_t.unwrap_or(default.half_width);
    let n = solver.grid_n.unwrap_or(default.interior);
    Ok(Grid::new(t, n)?)
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::BadParameters("--tol must be positive".into()))
    }
}

fn json_params(params: &ModelParams, n_max: u32) -> JsonParams {
    JsonParams {
        omega: params.omega().to_string(),
        lambda: params.lambda().to_string(),
        lambda_tilde: params.lambda_tilde().to_string(),
        n_max,
        methods: Vec::new(),
        k_max: None,
        tau0: None,
        grid_t: None,
        grid_n: None,
        printed_signs: false,
    }
}

pub fn spectrum_entries(args: &SpectrumArgs) -> Result<(ModelParams, Vec<SpectrumEntry>, JsonParams), CliError> {
    let params = model_params(&args.model)?;
    let lt = params.lambda_tilde();
    let mut methods: Vec<MethodArg> = Vec::new();
    for m in if args.method.is_empty() { &[MethodArg::Closed][..] } else { &args.method } {
        if !methods.contains(m) {
            methods.push(*m);
        }
    }
    let mut jp = json_params(&params, args.n_max);
    jp.printed_signs = args.solver.printed_signs;
    let mut entries = Vec::new();
    for m in &methods {
        match m {
            MethodArg::Closed => {
                jp.methods.push("closed".into());
                entries.extend((0..=args.n_max).map(|n| {
                    SpectrumEntry::new(
                        n,
                        Energy::Exact(spectrum_closed_dimensionless(n, &lt)),
                        &params,
                        Method::ClosedForm,
                    )
                }));
            }
            MethodArg::Aim => {
                jp.methods.push("aim".into());
                let k = k_max(&args.solver, args.n_max);
                jp.k_max = Some(k);
                jp.tau0 = Some(args.solver.tau0.to_string());
                let report = run_aim(&params, &args.solver, k)?;
                entries.extend(report.accepted.iter().take(args.n_max as usize + 1).enumerate().map(
                    |(n, r)| {
                        let e = if r.exact {
                            Energy::Exact(r.value.clone())
                        } else {
                            Energy::Approx(r.approx())
                        };
                        SpectrumEntry::new(n as u32, e, &params, Method::Aim)
                    },
                ));
            }
            MethodArg::Oracle => {
                jp.methods.push("oracle".into());
                check_tol(args.solver.tol)?;
                let grid = oracle_grid(&params, &args.solver, args.n_max)?;
                jp.grid_t = Some(grid.half_width);
                jp.grid_n = Some(grid.interior);
                let res = oracle_spectrum(&params, grid, args.n_max as usize + 1, args.solver.tol)?;
                let half_omega = to_f64(params.omega()) / 2.0;
                entries.extend(res.eigenvalues.iter().enumerate().map(|(n, e)| {
                    SpectrumEntry::new(n as u32, Energy::Approx(e / half_omega), &params, Method::Oracle)
                }));
            }
        }
    }
    Ok((params, entries, jp))
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Outcome, CliError> {
    let (_, entries, jp) = spectrum_entries(args)?;
    let text = match args.output.format {
        Format::Table => spectrum_table(&entries).to_aligned(),
        Format::Csv => spectrum_table(&entries).to_csv()?,
        Format::Json => {
            let doc = SpectrumJson {
                params: jp,
                entries: entries.iter().map(JsonEntry::from).collect(),
            };
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Debug, Serialize)]
pub struct CheckRow {
    pub n: u32,
    pub closed: String,
    pub closed_decimal: f64,
    /// The closed-form level is among the accepted quantization roots.
    pub aim_match: bool,
    pub oracle: Option<f64>,
    pub oracle_delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_skipped: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct PrintedSignsDemo {
    pub lambda_tilde: String,
    /// Roots of the first quantization polynomial.
    pub k1_roots: Vec<String>,
    /// `2λ̃ − 1`, produced by the printed sign.
    pub spurious_root: String,
    pub contains_spurious_root: bool,
    /// `3 − 2λ̃`, the first excited level.
    pub first_excited: String,
    pub contains_first_excited: bool,
    pub agrees_with_closed_form: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub params: JsonParams,
    pub entries: Vec<JsonEntry>,
    pub checks: Vec<CheckRow>,
    /// Accepted quantization roots that match no closed-form level.
    pub aim_extra_roots: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_signs_demo: Option<PrintedSignsDemo>,
    pub pass: bool,
}

fn printed_signs_demo(lt: &BigRat) -> Result<PrintedSignsDemo, CliError> {
    let states = oscillator_seed(lt, SignConvention::Printed)?.iterates(1);
    let delta = quantization_delta(&states[1], &states[0], &BigRat::zero())?;
    let roots: Vec<BigRat> = delta_roots(&delta, &BigRat::new(1.into(), 1_000_000_000.into()))?
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let spurious = int(2) * lt - int(1);
    let first_excited = spectrum_closed_dimensionless(1, lt);
    let agrees = roots
        .iter()
        .all(|r| (0..=1).any(|n| &spectrum_closed_dimensionless(n, lt) == r))
        && roots.len() == 2;
    Ok(PrintedSignsDemo {
        lambda_tilde: lt.to_string(),
        k1_roots: roots.iter().map(ToString::to_string).collect(),
        contains_spurious_root: roots.contains(&spurious),
        spurious_root: spurious.to_string(),
        contains_first_excited: roots.contains(&first_excited),
        first_excited: first_excited.to_string(),
        agrees_with_closed_form: agrees,
    })
}

pub fn verify_report(args: &VerifyArgs) -> Result<VerifyReport, CliError> {
    let params = model_params(&args.model)?;
    let lt = params.lambda_tilde();
    check_tol(args.solver.tol)?;
    let k = k_max(&args.solver, args.n_max);
    let report = run_aim(&params, &args.solver, k)?;

    let closed: Vec<BigRat> = (0..=args.n_max).map(|n| spectrum_closed_dimensionless(n, &lt)).collect();
    let all_levels: Vec<BigRat> = (0..=k as u32 + 1).map(|n| spectrum_closed_dimensionless(n, &lt)).collect();
    let aim_extra_roots: Vec<String> = report
        .accepted
        .iter()
        .filter(|r| !(r.exact && all_levels.contains(&r.value)))
        .map(|r| if r.exact { r.value.to_string() } else { format_f64(r.approx(), SIG_DIGITS) })
        .collect();

    // oracle in the scaled frame ω = 1, λ = λ̃, where E = Ẽ/2
    let unit = ModelParams::from_lambda_tilde(lt.clone())?;
    let oracle_levels: Vec<u32> = (0..=args.n_max.min(args.oracle_n_max))
        .filter(|&n| bound_status(n, &lt) == BoundStatus::Bound)
        .collect();
    let mut jp = json_params(&params, args.n_max);
    jp.methods = vec!["closed".into(), "aim".into(), "oracle".into()];
    jp.k_max = Some(k);
    jp.tau0 = Some(args.solver.tau0.to_string());
    jp.printed_signs = args.solver.printed_signs;
    let oracle = match oracle_levels.last() {
        Some(&top) => {
            let grid = oracle_grid(&unit, &args.solver, top)?;
            jp.grid_t = Some(grid.half_width);
            jp.grid_n = Some(grid.interior);
            Some(oracle_spectrum(&unit, grid, top as usize + 1, args.solver.tol)?)
        }
        None => None,
    };

    let mut entries = Vec::new();
    let mut checks = Vec::new();
    for (n, e) in closed.iter().enumerate() {
        let n = n as u32;
        entries.push(SpectrumEntry::new(n, Energy::Exact(e.clone()), &params, Method::ClosedForm));
        let aim_match = report.contains_exact(e);
        let (oracle_value, oracle_delta, skipped) = match (&oracle, oracle_levels.contains(&n)) {
            (Some(res), true) => {
                let v = res.eigenvalues[n as usize];
                entries.push(SpectrumEntry::new(n, Energy::Approx(2.0 * v), &params, Method::Oracle));
                (Some(v), Some((v - to_f64(e) / 2.0).abs()), None)
            }
            _ => {
                let why = if n > args.oracle_n_max {
                    "above --oracle-n-max"
                } else {
                    match bound_status(n, &lt) {
                        BoundStatus::Marginal => "marginal level at the continuum threshold",
                        _ => "not a bound state",
                    }
                };
                (None, None, Some(why.to_string()))
            }
        };
        let pass = aim_match && oracle_delta.is_none_or(|d| d <= args.oracle_tol);
        checks.push(CheckRow {
            n,
            closed: e.to_string(),
            closed_decimal: to_f64(e),
            aim_match,
            oracle: oracle_value,
            oracle_delta,
            oracle_skipped: skipped,
            pass,
        });
    }
    for (n, r) in report.accepted.iter().enumerate() {
        let e = if r.exact { Energy::Exact(r.value.clone()) } else { Energy::Approx(r.approx()) };
        entries.push(SpectrumEntry::new(n as u32, e, &params, Method::Aim));
    }
    entries.sort_by_key(|e| e.n);

    let printed_signs_demo = if args.solver.printed_signs {
        Some(printed_signs_demo(&lt)?)
    } else {
        None
    };
    let pass = checks.iter().all(|c| c.pass)
        && aim_extra_roots.is_empty()
        && printed_signs_demo.as_ref().is_none_or(|d| d.agrees_with_closed_form);
    Ok(VerifyReport {
        params: jp,
        entries: entries.iter().map(JsonEntry::from).collect(),
        checks,
        aim_extra_roots,
        printed_signs_demo,
        pass,
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let rep = verify_report(args)?;
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&rep)? + "\n",
        Format::Table | Format::Csv => {
            let mut t = Table::new(["n", "closed", "aim_match", "oracle", "oracle_delta", "pass"]);
            for c in &rep.checks {
                t.push(vec![
                    c.n.to_string(),
                    c.closed.clone(),
                    c.aim_match.to_string(),
                    c.oracle.map(|v| format_f64(v, SIG_DIGITS)).unwrap_or_else(|| "-".into()),
                    c.oracle_delta.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into()),
                    c.pass.to_string(),
                ]);
            }
            let mut s = if args.format == Format::Csv { t.to_csv()? } else { t.to_aligned() };
            if args.format == Format::Table {
                if !rep.aim_extra_roots.is_empty() {
                    s += &format!("extra quantization roots: {}\n", rep.aim_extra_roots.join(", "));
                }
                if let Some(d) = &rep.printed_signs_demo {
                    s += &format!(
                        "printed signs, k = 1 roots: {{{}}}; contains {}: {}; contains {}: {}\n",
                        d.k1_roots.join(", "),
                        d.spurious_root,
                        d.contains_spurious_root,
                        d.first_excited,
                        d.contains_first_excited
                    );
                }
                s += if rep.pass { "PASS\n" } else { "FAIL\n" };
            }
            s
        }
    };
    Ok(Outcome {
        text,
        code: if rep.pass { exit::OK } else { exit::VERIFICATION_FAILED },
    })
}

pub fn wavefunction_samples(args: &WavefunctionArgs) -> Result<Vec<(f64, f64)>, CliError> {
    let params = model_params(&args.model)?;
    if args.points < 2 {
        return Err(CliError::BadParameters("--points must be at least 2".into()));
    }
    if args.tau_min >= args.tau_max || !args.tau_min.is_finite() || !args.tau_max.is_finite() {
        return Err(CliError::BadParameters("need --tau-min < --tau-max".into()));
    }
    let ef = eigen_polynomial(args.n, &params.lambda_tilde())?.normalized(1e-12)?;
    let step = (args.tau_max - args.tau_min) / (args.points - 1) as f64;
    Ok((0..args.points)
        .map(|i| {
            let tau = if i + 1 == args.points { args.tau_max } else { args.tau_min + step * i as f64 };
            (tau, wavefunction_eval(&ef, tau))
        })
        .collect())
}

pub fn wavefunction(args: &WavefunctionArgs) -> Result<Outcome, CliError> {
    let samples = wavefunction_samples(args)?;
    let mut t = Table::new(["tau", "phi"]);
    for (tau, phi) in &samples {
        t.push(vec![format_f64(*tau, SIG_DIGITS), format_f64(*phi, SIG_DIGITS)]);
    }
    let text = match args.format {
        Format::Csv => t.to_csv()?,
        Format::Table => t.to_aligned(),
        Format::Json => {
            let pts: Vec<[f64; 2]> = samples.iter().map(|&(a, b)| [a, b]).collect();
            serde_json::to_string(&serde_json::json!({ "n": args.n, "samples": pts }))? + "\n"
        }
    };
    Ok(Outcome::ok(text))
}

fn energy(n: u32, omega: &BigRat, lambda: &BigRat) -> Result<BigRat, CliError> {
    Ok(fhaim_core::oscillator::spectrum_closed_physical(n, omega, lambda)?)
}

fn fig_row(t: &mut Table, sweep: &BigRat, series: String, e: &BigRat) {
    t.push(vec![format_decimal(sweep, SIG_DIGITS), series, format_decimal(e, SIG_DIGITS), e.to_string()]);
}

fn hz(omega: &BigRat) -> String {
    format!("omega={}Hz", format_decimal(omega, SIG_DIGITS))
}

/// The four figure tables, in file order.
pub fn figure_tables(args: &FiguresArgs) -> Result<Vec<(&'static str, Table)>, CliError> {
    if args.lambda_points < 2 {
        return Err(CliError::BadParameters("--lambda-points must be at least 2".into()));
    }
    if args.lambda_max < args.lambda_min {
        return Err(CliError::BadParameters("need --lambda-min ≤ --lambda-max".into()));
    }
    let step = (&args.lambda_max - &args.lambda_min) / BigRat::from_integer((args.lambda_points - 1).into());
    let lambdas: Vec<BigRat> = (0..args.lambda_points)
        .map(|i| &args.lambda_min + &step * BigRat::from_integer(i.into()))
        .collect();

    let mut fig1 = Table::new(["lambda", "series", "E", "E_exact"]);
    for n in 0..=3 {
        for l in &lambdas {
            fig_row(&mut fig1, l, format!("n={n} {}", hz(&args.fig1_omega)), &energy(n, &args.fig1_omega, l)?);
        }
    }
    let mut fig2 = Table::new(["lambda", "series", "E", "E_exact"]);
    for w in &args.fig2_omegas {
        for l in &lambdas {
            fig_row(&mut fig2, l, format!("n=1 {}", hz(w)), &energy(1, w, l)?);
        }
    }
    let mut fig3 = Table::new(["n", "series", "E", "E_exact"]);
    for w in &args.fig3_omegas {
        for n in 0..=args.fig3_n_max {
            let label = format!("{} lambda={}", hz(w), format_decimal(&args.fig3_lambda, SIG_DIGITS));
            fig_row(&mut fig3, &BigRat::from_integer(n.into()), label, &energy(n, w, &args.fig3_lambda)?);
        }
    }
    let mut fig4 = Table::new(["omega", "series", "E", "E_exact"]);
    for n in 1..=3 {
        for w in 1..=args.fig4_omega_max {
            let w = BigRat::from_integer(w.into());
            let label = format!("n={n} lambda={}", format_decimal(&args.fig4_lambda, SIG_DIGITS));
            fig_row(&mut fig4, &w, label, &energy(n, &w, &args.fig4_lambda)?);
        }
    }
    Ok(vec![("fig1.csv", fig1), ("fig2.csv", fig2), ("fig3.csv", fig3), ("fig4.csv", fig4)])
}

pub fn figures(args: &FiguresArgs) -> Result<Outcome, CliError> {
    let tables = figure_tables(args)?;
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let mut text = String::new();
    for (name, table) in tables {
        let path = Path::new(&args.out).join(name);
        fs::write(&path, table.to_csv()?).map_err(|e| CliError::io(&path, e))?;
        text += &format!("{}\n", path.display());
    }
    Ok(Outcome::ok(text))
}
