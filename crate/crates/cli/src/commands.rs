use std::fmt::Write as _;

use harmonic_layers::oracle::{residual_report, ErrorReport, GridKind, GridSolution, SamplePlan};
use harmonic_layers::transform::{Geometry, RegimeReport};
use harmonic_layers::Point2;
use serde_json::{json, Value};

use crate::config::{Method, RunConfig};
use crate::error::{CliError, CliResult, ExitKind};
use crate::problem::{regime_settings, Built, Grid, Problem};

fn regime_json(
    problem: &Problem,
    report: Option<&RegimeReport>,
    tol: f64,
    threshold: usize,
) -> Value {
    match report {
        Some(r) => json!({
            "problem": problem.kind.as_str(),
            "rho": r.rho,
            "h": r.h,
            "J_needed": r.terms_needed,
            "threshold": r.threshold,
            "tol": tol,
            "recommendation": r.recommendation.as_str(),
        }),
        None => json!({
            "problem": problem.kind.as_str(),
            "rho": 1.0,
            "h": null,
            "J_needed": null,
            "threshold": threshold,
            "tol": tol,
            "recommendation": "asymptotic",
        }),
    }
}

/// Regime check before summing a coupled series. Returns the advice when
/// it is a warning; `--strict` turns it into an error.
fn regime_gate(
    cfg: &RunConfig,
    problem: &Problem,
    methods: &[Method],
    strict: bool,
) -> CliResult<Option<Value>> {
    if !methods.contains(&Method::Series) || !problem.kind.is_coupled() {
        return Ok(None);
    }
    let (tol, threshold) = regime_settings(cfg, problem);
    let report = problem.regime(tol, threshold)?;
    match report {
        Some(r) if r.is_warning() => {
            let advice = regime_json(problem, Some(&r), tol, threshold);
            if strict {
                return Err(CliError {
                    kind: ExitKind::RegimeWarning,
                    message: format!("series needs {} terms, above the threshold {}; asymptotic regime: {advice}", r.terms_needed, r.threshold),
                });
            }
            Ok(Some(advice))
        }
        _ => Ok(None),
    }
}

pub struct SolveOutput {
    pub csv: String,
    pub summary: Value,
}

pub fn solve(cfg: &RunConfig, strict: bool) -> CliResult<SolveOutput> {
    let problem = Problem::from_config(cfg)?;
    let method = cfg.single_method()?;
    let grid = Grid::new(cfg.grid.as_ref(), &problem)?;
    let warning = regime_gate(cfg, &problem, &[method], strict)?;
    let built = problem.build(method, &grid)?;
    let values = built.values(&grid);
    let [a, b] = grid.header();
    let mut csv = format!("{a},{b},region,u\n");
    for (n, u) in grid.nodes.iter().zip(&values) {
        writeln!(
            csv,
            "{},{},{},{}",
            n.coords.0,
            n.coords.1,
            n.region.tag(),
            u
        )
        .unwrap();
    }
    let summary = json!({
        "command": "solve",
        "problem": problem.kind.as_str(),
        "method": method.as_str(),
        "nodes": grid.nodes.len(),
        "terms": built.terms(),
        "tail_bound": built.tail_bound(),
        "regime_warning": warning,
    });
    Ok(SolveOutput { csv, summary })
}

pub struct CompareOutput {
    pub summary: Value,
    pub csv: String,
}

fn labels(methods: &[Method]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for m in methods {
        let base = m.as_str();
        let seen = out
            .iter()
            .filter(|l| l.split('_').next() == Some(base))
            .count();
        out.push(if seen == 0 {
            base.to_string()
        } else {
            format!("{base}_{}", seen + 1)
        });
    }
    out
}

/// Least-squares slope of `ln d` against `ln t`.
pub fn loglog_slope(t: &[f64], d: &[f64]) -> Option<f64> {
    if t.len() < 2 || d.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
        return None;
    }
    let xs: Vec<f64> = t.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = d.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn abs_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn compare(cfg: &RunConfig, strict: bool) -> CliResult<CompareOutput> {
    let methods = cfg.method_list()?;
    let names = labels(&methods);
    let base = Problem::from_config(cfg)?;
    let base_grid = Grid::new(cfg.grid.as_ref(), &base)?;
    regime_gate(cfg, &base, &methods, strict)?;

    let cases: Vec<(Option<f64>, Problem)> = match &cfg.sweep {
        Some(s) => {
            if s.thickness.len() < 2 {
                return Err(CliError::validation(
                    "a thickness sweep needs at least two values",
                ));
            }
            s.thickness
                .iter()
                .map(|&t| Ok((Some(t), base.with_thickness(t, s.hold)?)))
                .collect::<CliResult<_>>()?
        }
        None => vec![(None, base.clone())],
    };

    let pairs: Vec<(usize, usize)> = (0..methods.len())
        .flat_map(|i| (i + 1..methods.len()).map(move |j| (i, j)))
        .collect();
    let [a, b] = base_grid.header();
    let mut header = Vec::new();
    if cfg.sweep.is_some() {
        header.push("thickness".to_string());
    }
    header.extend([a.to_string(), b.to_string(), "region".into()]);
    header.extend(names.iter().map(|n| format!("u_{n}")));
    header.extend(
        pairs
            .iter()
            .map(|&(i, j)| format!("d_{}_{}", names[i], names[j])),
    );
    header.extend(names.iter().map(|n| format!("bound_{n}")));
    let mut csv = header.join(",");
    csv.push('\n');

    let mut overall = vec![0.0f64; pairs.len()];
    let mut max_bound: Vec<Option<f64>> = vec![None; methods.len()];
    let mut sweep_rows = Vec::new();
    for (t, problem) in &cases {
        let grid = base_grid.for_problem(problem)?;
        let mut values = Vec::new();
        let mut bounds = Vec::new();
        for &m in &methods {
            let built: Built = problem.build(m, &grid)?;
            values.push(built.values(&grid));
            bounds.push(built.bounds(&grid));
        }
        let mut case_max = vec![0.0f64; pairs.len()];
        for (idx, node) in grid.nodes.iter().enumerate() {
            let mut row = Vec::new();
            if let Some(t) = t {
                row.push(t.to_string());
            }
            row.extend([
                node.coords.0.to_string(),
                node.coords.1.to_string(),
                node.region.tag().to_string(),
            ]);
            row.extend(values.iter().map(|v| v[idx].to_string()));
            for (p, &(i, j)) in pairs.iter().enumerate() {
                let d = abs_diff(values[i][idx], values[j][idx]);
                // NaN (a method failing at a node) propagates to the summary
                case_max[p] = if d.is_nan() || case_max[p].is_nan() {
                    f64::NAN
                } else {
                    case_max[p].max(d)
                };
                row.push(d.to_string());
            }
            for (m, bs) in bounds.iter().enumerate() {
                if let Some(v) = bs[idx] {
                    max_bound[m] = Some(max_bound[m].map_or(v, |w: f64| w.max(v)));
                }
                row.push(fmt_opt(bs[idx]));
            }
            csv.push_str(&row.join(","));
            csv.push('\n');
        }
        for (o, c) in overall.iter_mut().zip(&case_max) {
            *o = if c.is_nan() || o.is_nan() {
                f64::NAN
            } else {
                o.max(*c)
            };
        }
        if let Some(t) = t {
            sweep_rows.push(json!({
                "thickness": t,
                "k": problem.geometry.coupling(),
                "h": problem.robin_h(),
                "max_abs_diff": case_max[0],
            }));
        }
    }

    let pair_json: Vec<Value> = pairs
        .iter()
        .zip(&overall)
        .map(|(&(i, j), d)| json!({"a": names[i], "b": names[j], "max_abs_diff": d}))
        .collect();
    let bound_json: serde_json::Map<String, Value> = names
        .iter()
        .zip(&max_bound)
        .map(|(n, b)| (n.clone(), json!(b)))
        .collect();
    let mut summary = json!({
        "command": "compare",
        "problem": base.kind.as_str(),
        "methods": names,
        "nodes": base_grid.nodes.len(),
        "pairs": pair_json,
        "max_bound": bound_json,
    });
    if let Some(s) = &cfg.sweep {
        let ts: Vec<f64> = s.thickness.clone();
        let ds: Vec<f64> = sweep_rows
            .iter()
            .map(|r| r["max_abs_diff"].as_f64().unwrap_or(f64::NAN))
            .collect();
        summary["sweep"] = json!(sweep_rows);
        summary["hold"] = json!(match s.hold {
            crate::config::Hold::K => "k",
            crate::config::Hold::Robin => "robin",
        });
        summary["thickness_order"] = json!(loglog_slope(&ts, &ds));
    }
    Ok(CompareOutput { summary, csv })
}

pub struct VerifyOutput {
    pub report: Value,
    pub pass: bool,
}

fn report_json(r: &ErrorReport) -> Value {
    json!({
        "pde_residual": r.pde_residual,
        "boundary_mismatch": r.boundary_mismatch,
        "value_jump": r.value_jump,
        "flux_jump": r.flux_jump,
        "lemma_bound": r.lemma_bound,
        "interior_samples": r.interior_samples,
        "boundary_samples": r.boundary_samples,
        "interface_samples": r.interface_samples,
    })
}

/// Report for a grid solution: the discrete residual of the 5-point system
/// and the mismatch on the Dirichlet nodes. Interface rows are part of the
/// discrete residual.
fn grid_report(sol: &GridSolution, g: impl Fn(Point2) -> f64) -> ErrorReport {
    let (n1, n2) = sol.shape();
    let mut mismatch: f64 = 0.0;
    let mut boundary = 0;
    let mut check = |i: usize, j: usize, target: f64| {
        mismatch = mismatch.max((sol.value(i, j) - target).abs());
        boundary += 1;
    };
    match sol.kind() {
        GridKind::Strip => {
            for j in 0..n2 {
                check(0, j, g(sol.point(0, j)));
                check(n1 - 1, j, 0.0);
            }
        }
        GridKind::Annulus => {
            for j in 0..n2 {
                check(n1 - 1, j, g(sol.point(n1 - 1, j)));
                check(0, j, 0.0);
            }
        }
        GridKind::DiskCoupled { .. } => {
            for j in 0..n2 {
                check(n1 - 1, j, g(sol.point(n1 - 1, j)));
            }
        }
    }
    ErrorReport {
        pde_residual: sol.discrete_residual(),
        boundary_mismatch: mismatch,
        value_jump: None,
        flux_jump: None,
        lemma_bound: None,
        interior_samples: n1 * n2 - boundary,
        boundary_samples: boundary,
        interface_samples: 0,
    }
}

struct Check {
    name: &'static str,
    value: f64,
    tol: f64,
}

impl Check {
    fn pass(&self) -> bool {
        self.value <= self.tol
    }
}

/// Re-read a grid written by `solve` and compare it with the method on the
/// same grid.
fn solution_mismatch(cfg: &RunConfig, grid: &Grid, values: &[f64]) -> CliResult<f64> {
    let path = cfg.resolve(cfg.solution.as_ref().expect("solution path"));
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let [a, b] = grid.header();
    let expected = format!("{a},{b},region,u");
    if lines.next() != Some(expected.as_str()) {
        return Err(CliError::validation(format!(
            "solution file header must be {expected}"
        )));
    }
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (line, (node, v)) in lines.zip(grid.nodes.iter().zip(values)) {
        let cols: Vec<&str> = line.split(',').collect();
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|_| {
                CliError::validation(format!("non-numeric entry {s:?} in solution file"))
            })
        };
        if cols.len() != 4 {
            return Err(CliError::validation(format!(
                "solution row {line:?} needs 4 columns"
            )));
        }
        if parse(cols[0])? != node.coords.0
            || parse(cols[1])? != node.coords.1
            || cols[2] != node.region.tag()
        {
            return Err(CliError::validation(format!(
                "solution row {line:?} does not match the configured grid"
            )));
        }
        let u = parse(cols[3])?;
        if !(u.is_nan() && v.is_nan()) {
            let d = (u - v).abs();
            worst = if d.is_nan() {
                f64::INFINITY
            } else {
                worst.max(d)
            };
        }
        count += 1;
    }
    if count != grid.nodes.len() {
        return Err(CliError::validation(format!(
            "solution file has {count} rows, the grid has {}",
            grid.nodes.len()
        )));
    }
    Ok(worst)
}

pub fn verify(cfg: &RunConfig, strict: bool) -> CliResult<VerifyOutput> {
    let problem = Problem::from_config(cfg)?;
    let method = cfg.single_method()?;
    regime_gate(cfg, &problem, &[method], strict)?;
    let needs_grid =
        method == Method::Oracle && !matches!(problem.geometry, Geometry::HalfPlaneCoupled(_));
    let grid = if needs_grid || cfg.solution.is_some() {
        Some(Grid::new(cfg.grid.as_ref(), &problem)?)
    } else {
        cfg.grid
            .as_ref()
            .map(|g| Grid::new(Some(g), &problem))
            .transpose()?
    };
    let built = match &grid {
        Some(g) => problem.build(method, g)?,
        None => {
            // pointwise methods never look at the grid
            let empty = Grid {
                polar: problem.kind.is_polar(),
                axis1: Vec::new(),
                axis2: Vec::new(),
                nodes: Vec::new(),
            };
            problem.build(method, &empty)?
        }
    };
    let field = problem.field.clone();
    let g = move |p: Point2| field.value(p);
    let checks_cfg = cfg.checks;
    let report = match &built {
        Built::Grid(sol) => grid_report(sol, &g),
        _ => {
            let plan = SamplePlan {
                seed: cfg.seed,
                interior: checks_cfg.interior_samples,
                boundary: checks_cfg.boundary_samples,
                interface: checks_cfg.interface_samples,
                ..SamplePlan::default()
            };
            residual_report(built.solution().expect("pointwise method"), &g, &plan)?
        }
    };

    let mut checks = vec![
        Check {
            name: "pde",
            value: report.pde_residual,
            tol: checks_cfg.pde,
        },
        Check {
            name: "boundary",
            value: report.boundary_mismatch,
            tol: checks_cfg.boundary,
        },
    ];
    if let Some(v) = report.value_jump {
        checks.push(Check {
            name: "value_jump",
            value: v,
            tol: checks_cfg.value_jump,
        });
    }
    if let Some(v) = report.flux_jump {
        checks.push(Check {
            name: "flux_jump",
            value: v,
            tol: checks_cfg.flux_jump,
        });
    }
    if cfg.solution.is_some() {
        let grid = grid.as_ref().expect("grid required with a solution file");
        let values = built.values(grid);
        checks.push(Check {
            name: "solution_file",
            value: solution_mismatch(cfg, grid, &values)?,
            tol: 0.0,
        });
    }
    let pass = checks.iter().all(Check::pass);
    let check_json: Vec<Value> = checks
        .iter()
        .map(|c| json!({"name": c.name, "value": c.value, "tol": c.tol, "pass": c.pass()}))
        .collect();
    Ok(VerifyOutput {
        report: json!({
            "command": "verify",
            "problem": problem.kind.as_str(),
            "method": method.as_str(),
            "report": report_json(&report),
            "checks": check_json,
            "pass": pass,
        }),
        pass,
    })
}

pub struct RegimesOutput {
    pub report: Value,
    pub warning: bool,
}

pub fn regimes(cfg: &RunConfig) -> CliResult<RegimesOutput> {
    let problem = Problem::from_config(cfg)?;
    let (tol, threshold) = regime_settings(cfg, &problem);
    let report = problem.regime(tol, threshold)?;
    let warning = report.is_none_or(|r| r.is_warning());
    Ok(RegimesOutput {
        report: regime_json(&problem, report.as_ref(), tol, threshold),
        warning,
    })
}
