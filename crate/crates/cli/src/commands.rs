//! Command drivers: run an experiment, write CSV (plus optional SVG) and the
//! resolved config into the output directory.

use std::fs;
use std::path::PathBuf;

use histopol_core::{basis_size, BasisSpec, EvalGrid};

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::experiments::{self, Failure};
use crate::families::{Family, SupportSource};
use crate::svg::{line_chart, Series, YScale};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Cond,
    Lebesgue,
    Interp,
    Extract,
}

/// Where a run reads from and writes to.
#[derive(Debug, Clone)]
pub struct RunContext {
    /// Directory that relative paths inside the config resolve against.
    pub config_dir: PathBuf,
    pub out_dir: PathBuf,
    pub svg: bool,
}

/// Files written and per-degree failures that did not stop the run.
#[derive(Debug, Default)]
pub struct Report {
    pub written: Vec<PathBuf>,
    pub failures: Vec<Failure>,
}

pub fn run(command: Command, cfg: &ExperimentConfig, ctx: &RunContext) -> Result<Report> {
    fs::create_dir_all(&ctx.out_dir)?;
    let mut report = Report::default();
    match command {
        Command::Cond => cond(cfg, ctx, &mut report)?,
        Command::Lebesgue => lebesgue(cfg, ctx, &mut report)?,
        Command::Interp => interp(cfg, ctx, &mut report)?,
        Command::Extract => extract(cfg, ctx, &mut report)?,
    }
    write(ctx, "config.json", &cfg.to_json(), &mut report)?;
    Ok(report)
}

fn write(ctx: &RunContext, name: &str, contents: &str, report: &mut Report) -> Result<()> {
    let path = ctx.out_dir.join(name);
    fs::write(&path, contents)?;
    report.written.push(path);
    Ok(())
}

/// Shortest round-trip representation.
fn num(v: f64) -> String {
    format!("{v:e}")
}

fn cond(cfg: &ExperimentConfig, ctx: &RunContext, report: &mut Report) -> Result<()> {
    let rows = experiments::cond_rows(cfg);
    let mut csv = String::from("degree,family,basis,radius,cond\n");
    for r in &rows {
        let basis = if r.basis == histopol_core::BasisKind::Monomial { "monomial" } else { "chebyshev" };
        csv.push_str(&format!("{},{},{},{},{}\n", r.degree, r.family, basis, num(r.radius), num(r.cond)));
    }
    write(ctx, "cond.csv", &csv, report)?;
    if ctx.svg {
        let mut series = vec![];
        for family in [Family::Halton, Family::BojanovXu] {
            for basis in [histopol_core::BasisKind::Monomial, histopol_core::BasisKind::Chebyshev] {
                let pts = rows
                    .iter()
                    .filter(|r| r.family == family && r.basis == basis)
                    .map(|r| (r.degree as f64, r.cond))
                    .collect();
                let name = if basis == histopol_core::BasisKind::Monomial { "monomial" } else { "chebyshev" };
                series.push(Series::new(format!("{family} {name}"), pts));
            }
        }
        let svg = line_chart("Vandermonde conditioning", "degree", "cond", &series, YScale::Log);
        write(ctx, "cond.svg", &svg, report)?;
    }
    Ok(())
}

/// Degrees of the run; a file family runs only at the degree its size fixes.
fn run_degrees(cfg: &ExperimentConfig, source: &SupportSource) -> Result<Vec<usize>> {
    match source.file_degree() {
        Some(d) if cfg.degrees.iter().any(|x| x == d) => Ok(vec![d]),
        Some(d) => Err(CliError::Config(format!("support file has degree {d}, outside the configured range"))),
        None => Ok(cfg.degrees.iter().collect()),
    }
}

fn max_degree(cfg: &ExperimentConfig) -> usize {
    if cfg.degrees.is_empty() {
        0
    } else {
        cfg.degrees.max
    }
}

fn lebesgue(cfg: &ExperimentConfig, ctx: &RunContext, report: &mut Report) -> Result<()> {
    if cfg.radius_sweep.is_some() && !cfg.family.is_point_based() {
        return Err(CliError::Config(format!("radius_sweep needs a point-based family, got {}", cfg.family)));
    }
    let source = SupportSource::new(cfg.family, cfg, max_degree(cfg), &ctx.config_dir)?;
    let degrees = run_degrees(cfg, &source)?;
    let (rows, failures) = experiments::lebesgue_rows(&source, cfg, &degrees);
    let mut csv = String::from("degree,lambda,method,M\n");
    for r in &rows {
        csv.push_str(&format!("{},{},{},{}\n", r.degree, num(r.lambda), r.method.as_str(), r.grid_size));
    }
    write(ctx, "lebesgue.csv", &csv, report)?;
    let attempted = !degrees.is_empty();
    let all_failed = attempted && rows.is_empty();
    report.failures.extend(failures);

    if ctx.svg {
        let mut series = vec![];
        for method in [histopol_core::Method::Short, histopol_core::Method::Long, histopol_core::Method::Nodal] {
            let pts: Vec<_> = rows.iter().filter(|r| r.method == method).map(|r| (r.degree as f64, r.lambda)).collect();
            if !pts.is_empty() {
                series.push(Series::new(format!("{} {}", cfg.family, method.as_str()), pts));
            }
        }
        if cfg.family.is_extracted() {
            series.push(
                Series::new("dim P_d", degrees.iter().map(|&d| (d as f64, basis_size(d) as f64)).collect()).dashed(),
            );
        }
        let svg = line_chart("Lebesgue constant", "degree", "lambda", &series, YScale::Log);
        write(ctx, "lebesgue.svg", &svg, report)?;
    }

    if let Some(sweep) = cfg.radius_sweep {
        let nodes = cfg.family.nodes(sweep.degree, cfg.seed).expect("point-based family");
        let spec = BasisSpec::new(cfg.basis, sweep.degree);
        let rows = experiments::radius_sweep(&nodes, &spec, &experiments::eval_grid(cfg), sweep.steps)?;
        let mut csv = String::from("degree,ratio,radius,lambda,nodal\n");
        for r in &rows {
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                r.degree,
                num(r.ratio),
                num(r.radius),
                num(r.lambda),
                num(r.nodal)
            ));
        }
        write(ctx, "radius_sweep.csv", &csv, report)?;
        if ctx.svg {
            let disc = Series::new("discs", rows.iter().map(|r| (r.ratio, r.lambda)).collect());
            let nodal = Series::new("nodal", rows.iter().map(|r| (r.ratio, r.nodal)).collect()).dashed();
            let svg = line_chart(
                &format!("Lebesgue constant, degree {}", sweep.degree),
                "r / r_max",
                "lambda",
                &[disc, nodal],
                YScale::Linear,
            );
            write(ctx, "radius_sweep.svg", &svg, report)?;
        }
    }
    if all_failed {
        return Err(CliError::Numerical(format!("no degree could be computed for {}", cfg.family)));
    }
    Ok(())
}

fn interp(cfg: &ExperimentConfig, ctx: &RunContext, report: &mut Report) -> Result<()> {
    let max = max_degree(cfg).max(cfg.surface.map_or(0, |s| s.degree));
    let sources =
        cfg.families.iter().map(|&f| SupportSource::new(f, cfg, max, &ctx.config_dir)).collect::<Result<Vec<_>>>()?;
    let degrees: Vec<usize> = cfg.degrees.iter().collect();
    let (rows, failures) = experiments::interp_rows(&sources, cfg, &degrees);
    let attempted = !degrees.is_empty() && !sources.is_empty();
    let all_failed = attempted && rows.is_empty();
    report.failures.extend(failures);

    for (name, pick) in [("f1", (|r: &experiments::ErrorRow| r.f1) as fn(&_) -> f64), ("f2", |r| r.f2)] {
        let mut csv = String::from("degree,family,error\n");
        for r in &rows {
            csv.push_str(&format!("{},{},{}\n", r.degree, r.family, num(pick(r))));
        }
        write(ctx, &format!("interp_{name}.csv"), &csv, report)?;
        if ctx.svg {
            let series: Vec<Series> = cfg
                .families
                .iter()
                .map(|&f| {
                    Series::new(
                        f.as_str(),
                        rows.iter().filter(|r| r.family == f).map(|r| (r.degree as f64, pick(r))).collect(),
                    )
                })
                .collect();
            let svg = line_chart(&format!("Interpolation error, {name}"), "degree", "sup error", &series, YScale::Log);
            write(ctx, &format!("interp_{name}.svg"), &svg, report)?;
        }
    }

    if let Some(s) = cfg.surface {
        let grid = EvalGrid::polar(s.radii, s.angles);
        for source in &sources {
            let values = source.supports(s.degree).and_then(|set| experiments::surface(&set, cfg, s.degree, &grid));
            match values {
                Ok(values) => {
                    let mut csv = String::from("x,y,f2,interpolant\n");
                    for v in values {
                        csv.push_str(&format!("{},{},{},{}\n", num(v[0]), num(v[1]), num(v[2]), num(v[3])));
                    }
                    write(ctx, &format!("surface_f2_{}.csv", source.family()), &csv, report)?;
                }
                Err(e) => {
                    report.failures.push(Failure { degree: s.degree, family: source.family(), message: e.to_string() })
                }
            }
        }
    }
    if all_failed {
        return Err(CliError::Numerical("no interpolant could be computed".into()));
    }
    Ok(())
}

fn extract(cfg: &ExperimentConfig, ctx: &RunContext, report: &mut Report) -> Result<()> {
    if !cfg.family.is_extracted() {
        return Err(CliError::Config(format!("extract needs family \"afs\" or \"dls\", got \"{}\"", cfg.family)));
    }
    if cfg.degrees.is_empty() {
        return Err(CliError::Config("extract needs a non-empty degree range".into()));
    }
    let d = cfg.degrees.max;
    let source = SupportSource::new(cfg.family, cfg, d, &ctx.config_dir)?;
    let set = source.extract(d)?;
    let mut json = serde_json::to_string_pretty(&set).expect("support sets serialize");
    json.push('\n');
    write(ctx, "supports.json", &json, report)
}

/// Help text listing every output file and its CSV columns.
pub const OUTPUT_HELP: &str = "\
Outputs (written to --out, default ./out; every run also writes config.json
with the fully resolved configuration):

  cond      cond.csv          degree,family,basis,radius,cond
                              family in {halton, bojanov-xu}; basis in
                              {monomial, chebyshev}; cond is the 2-norm
                              condition number (inf when singular)
  lebesgue  lebesgue.csv      degree,lambda,method,M
                              method in {short, long, nodal}; M is the
                              number of grid points or probe discs
            radius_sweep.csv  degree,ratio,radius,lambda,nodal
                              (with radius_sweep) ratio = radius / r_max
  interp    interp_f1.csv     degree,family,error
            interp_f2.csv     degree,family,error   (sup-norm on the grid)
            surface_f2_<family>.csv  x,y,f2,interpolant  (with surface)
  extract   supports.json     support set with pool indices in \"order\" for dls

--svg adds a .svg chart next to each CSV.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
Degrees that fail (e.g. numerically singular) are reported on stderr and
skipped; the run fails with 3 only if nothing could be computed.";
