use std::path::Path;

use fractal_bound_core::bounds::{classical_dimension, dimension_report, moran_solve};
use fractal_bound_core::ifs::DEFAULT_POINT_CAP;
use fractal_bound_core::phi::builtin_phi;
use fractal_bound_core::series::weierstrass_eval;
use fractal_bound_core::{IfsSystem, PhiFunction, Point2, PointSet2D, WeierstrassParams};

use crate::config::{
    AttractorArgs, BoxcountArgs, Command, CurveArgs, Method, MoranArgs, RenderArgs, RunConfig, VerifyArgs,
};
use crate::report::{format_sig15, to_json, BoundsJson, BoxcountJson, VerifyJson};
use crate::{exit, output, parallel, CliError};

/// Slack allowed above `h` for the measured contraction ratio.
pub const CONTRACTION_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: exit::SUCCESS }
    }
}

pub fn run(config: &RunConfig, threads: usize) -> Result<Outcome, CliError> {
    match &config.command {
        Command::Bounds(c) => cmd_bounds(c),
        Command::Verify(v) => cmd_verify(v, threads),
        Command::Attractor(t) => cmd_attractor(t),
        Command::Boxcount(b) => cmd_boxcount(b, threads),
        Command::Moran(m) => cmd_moran(m),
        Command::Render(r) => cmd_render(r),
    }
}

fn curve(args: &CurveArgs) -> Result<(WeierstrassParams, PhiFunction), CliError> {
    Ok((WeierstrassParams::new(args.a, args.b)?, builtin_phi(&args.phi)?))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    output::write_atomic(path, contents.as_bytes())
        .map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn cmd_bounds(args: &CurveArgs) -> Result<Outcome, CliError> {
    let (params, phi) = curve(args)?;
    let report = dimension_report(&params, &phi);
    let code = if report.hypothesis.applicable { exit::SUCCESS } else { exit::NOT_APPLICABLE };
    Ok(Outcome { stdout: to_json(&BoundsJson::from(&report)), code })
}

pub fn cmd_verify(args: &VerifyArgs, threads: usize) -> Result<Outcome, CliError> {
    let (params, phi) = curve(&args.curve)?;
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let report = dimension_report(&params, &phi);
    let system = IfsSystem::new(params, phi);

    let measured = parallel::empirical_contraction(&system, args.samples, args.seed, threads);
    let checked = report.hypothesis.applicable;
    let contraction_pass = checked.then_some(measured <= report.h + CONTRACTION_SLACK);

    let residual = system.self_affinity_residual(args.affinity_samples, args.seed, args.tol);
    let affinity_pass = residual <= 2.0 * args.tol;

    let pass = affinity_pass && contraction_pass.unwrap_or(true);
    let code = if !pass {
        exit::CHECK_FAILED
    } else if !checked {
        exit::NOT_APPLICABLE
    } else {
        exit::SUCCESS
    };
    let json = VerifyJson {
        a: params.a(),
        b: params.b(),
        phi: phi.id().to_string(),
        samples: args.samples,
        seed: args.seed,
        tol: args.tol,
        hypotheses: report.hypothesis.into(),
        h: report.h,
        measured_sup_ratio: measured,
        margin: report.h - measured,
        contraction_checked: checked,
        contraction_pass,
        self_affinity_samples: args.affinity_samples,
        self_affinity_max_residual: residual,
        self_affinity_pass: affinity_pass,
        pass: pass && checked,
    };
    Ok(Outcome { stdout: to_json(&json), code })
}

pub fn cmd_attractor(args: &AttractorArgs) -> Result<Outcome, CliError> {
    let (params, phi) = curve(&args.curve)?;
    let system = IfsSystem::new(params, phi);
    let points = match args.method {
        Method::Chaos => {
            if args.points == 0 {
                return Err(CliError::Usage("--points must be at least 1".into()));
            }
            system.chaos_game(args.points, args.burn_in, args.seed)
        }
        Method::Iterate => {
            let seed = PointSet2D::new(vec![Point2::new(0.5, 0.0)])?;
            system.deterministic_iterate(&seed, args.depth, DEFAULT_POINT_CAP)?
        }
    };
    write_file(&args.out, &output::points_csv(points.points()))?;
    Ok(Outcome::ok(format!("wrote {} points to {}\n", points.len(), args.out.display())))
}

pub fn cmd_boxcount(args: &BoxcountArgs, threads: usize) -> Result<Outcome, CliError> {
    let (params, phi) = curve(&args.curve)?;
    let fit = parallel::estimate_dimension(&params, &phi, args.kmin, args.kmax, args.oversample, threads)?;
    let summary =
        to_json(&BoxcountJson::new(params.a(), params.b(), phi.id(), &fit, classical_dimension(&params)));
    if let Some(path) = &args.csv {
        write_file(path, &output::boxcount_csv(&fit))?;
    }
    if let Some(path) = &args.summary {
        write_file(path, &summary)?;
    }
    Ok(Outcome::ok(summary))
}

/// Factors from a file with one real per line; blank lines are skipped.
pub fn read_factors(path: &Path) -> Result<Vec<f64>, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            l.trim().parse::<f64>().map_err(|_| {
                CliError::Usage(format!("{}:{}: `{}` is not a number", path.display(), n + 1, l.trim()))
            })
        })
        .collect()
}

pub fn cmd_moran(args: &MoranArgs) -> Result<Outcome, CliError> {
    let factors = match (&args.factors, &args.file) {
        (Some(f), _) => f.clone(),
        (None, Some(path)) => read_factors(path)?,
        (None, None) => return Err(CliError::Usage("give --factors or --file".into())),
    };
    let s = moran_solve(&factors)?;
    Ok(Outcome::ok(format!("{}\n", format_sig15(s))))
}

pub fn cmd_render(args: &RenderArgs) -> Result<Outcome, CliError> {
    let (params, phi) = curve(&args.curve)?;
    if args.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let last = (args.samples - 1) as f64;
    let points: Vec<Point2> = (0..args.samples)
        .map(|j| {
            let x = j as f64 / last;
            Point2::new(x, weierstrass_eval(&params, &phi, x, args.tol))
        })
        .collect();
    let y_bound = phi.value_sup() / (1.0 - params.a());
    let title = format!("w(x) = sum a^n phi(b^n x), a={}, b={}, phi={}", params.a(), params.b(), phi.id());
    write_file(&args.out, &output::curve_svg(&points, y_bound, &title))?;
    Ok(Outcome::ok(format!("wrote {} samples to {}\n", points.len(), args.out.display())))
}
