use epiroute_core::{
    delivery_ratio_with_mode, estimate_delivery, DeliveryQuery, DeliveryResult, EdgeMarkovParams,
    LowerBoundMode, SimConfig,
};
use rayon::prelude::*;

use crate::args::{
    AnalyticArgs, ModelArgs, OutputKind, Preset, SimulateArgs, SweepArgs, SweepVariable,
};
use crate::output::{write_delivery_rows, DeliveryRow};
use crate::Failure;

/// Fully resolved evaluation context: one parameter set, a node count and the
/// bundle sizes and delays to evaluate it at.
#[derive(Debug, Clone)]
pub struct Point {
    pub params: EdgeMarkovParams,
    pub n_nodes: usize,
    pub alphas: Vec<f64>,
    pub delays: Vec<u64>,
}

impl Point {
    fn from_args(model: &ModelArgs) -> Result<Self, Failure> {
        Ok(Self {
            params: EdgeMarkovParams::new(model.p_up, model.p_down, model.tau)?,
            n_nodes: model.n,
            alphas: model.alpha.0.clone(),
            delays: model.delay.0.clone(),
        })
    }

    fn queries(&self) -> impl Iterator<Item = (f64, u64)> + '_ {
        self.alphas
            .iter()
            .flat_map(move |&alpha| self.delays.iter().map(move |&d| (alpha, d)))
    }
}

fn note_empty_bounds(alpha: f64, d: u64, result: &DeliveryResult) {
    if result.no_complete_interval() {
        eprintln!(
            "note: alpha={alpha}, d={d}: no complete interval of {} steps fits in the delay; bounds are 0",
            alpha.ceil()
        );
    }
}

fn analytic_row(
    point: &Point,
    alpha: f64,
    d: u64,
    mode: LowerBoundMode,
) -> Result<DeliveryRow, Failure> {
    let query = DeliveryQuery::new(point.n_nodes, alpha, d)?;
    let result = delivery_ratio_with_mode(&point.params, &query, mode)?;
    note_empty_bounds(alpha, d, &result);
    Ok(DeliveryRow::analytic(
        alpha,
        d,
        point.n_nodes,
        &point.params,
        result,
    ))
}

fn monte_carlo_row(
    point: &Point,
    alpha: f64,
    d: u64,
    runs: u64,
    seed: u64,
) -> Result<DeliveryRow, Failure> {
    let max_delay =
        usize::try_from(d).map_err(|_| Failure::Usage(format!("delay {d} is too large")))?;
    let config = SimConfig::new(runs, seed, alpha, max_delay)?;
    let estimate = estimate_delivery(&point.params, point.n_nodes, &config)?;
    Ok(DeliveryRow::monte_carlo(
        alpha,
        d,
        point.n_nodes,
        &point.params,
        &estimate,
    ))
}

pub fn analytic(args: &AnalyticArgs) -> Result<(), Failure> {
    let point = Point::from_args(&args.model)?;
    let mode = args.model.lower_bound_mode.into();
    let rows = point
        .queries()
        .map(|(alpha, d)| analytic_row(&point, alpha, d, mode))
        .collect::<Result<Vec<_>, _>>()?;
    write_delivery_rows(&args.output.out, &rows, false)?;
    Ok(())
}

pub fn simulate(args: &SimulateArgs) -> Result<(), Failure> {
    let point = Point::from_args(&args.model)?;
    if point.n_nodes < 2 {
        return Err(epiroute_core::Error::TooFewNodes(point.n_nodes).into());
    }
    let rows = point
        .queries()
        .map(|(alpha, d)| monte_carlo_row(&point, alpha, d, args.mc.runs, args.mc.seed))
        .collect::<Result<Vec<_>, _>>()?;
    write_delivery_rows(&args.output.out, &rows, true)?;
    Ok(())
}

/// Which of alpha / delay were given explicitly; presets fill in the others.
#[derive(Debug, Clone, Copy, Default)]
pub struct Explicit {
    pub alpha: bool,
    pub delay: bool,
}

struct SweepPlan {
    variable: SweepVariable,
    values: Vec<f64>,
    alphas: Option<Vec<f64>>,
    delays: Option<Vec<u64>>,
}

fn preset_plan(preset: Preset) -> SweepPlan {
    let mixed_alphas = Some(vec![0.5, 1.0, 2.0]);
    match preset {
        Preset::BundleSize => SweepPlan {
            variable: SweepVariable::Alpha,
            values: [0.125, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0].to_vec(),
            alphas: None,
            delays: Some(vec![4, 8, 16]),
        },
        Preset::NodeCount => SweepPlan {
            variable: SweepVariable::NNodes,
            values: (2..=40).map(f64::from).collect(),
            alphas: mixed_alphas,
            delays: None,
        },
        Preset::ContactTime => SweepPlan {
            variable: SweepVariable::ContactTime,
            values: (2..=20).map(|k| f64::from(k) / 2.0).collect(),
            alphas: mixed_alphas,
            delays: None,
        },
        Preset::Degree => SweepPlan {
            variable: SweepVariable::Degree,
            values: (1..=24).map(|k| f64::from(k) / 4.0).collect(),
            alphas: mixed_alphas,
            delays: None,
        },
        Preset::Delay => SweepPlan {
            variable: SweepVariable::Delay,
            values: (1..=30).map(f64::from).collect(),
            alphas: mixed_alphas,
            delays: None,
        },
    }
}

fn whole_number(name: &str, value: f64, min: u64) -> Result<u64, Failure> {
    if value.fract() != 0.0 || value < min as f64 || value > u32::MAX as f64 {
        return Err(Failure::Domain(format!(
            "swept {name} value {value} must be an integer >= {min}"
        )));
    }
    Ok(value as u64)
}

/// Applies one swept value to the base context.
pub fn sweep_point(base: &Point, variable: SweepVariable, value: f64) -> Result<Point, Failure> {
    let mut point = base.clone();
    let tau = base.params.tau();
    let derived = |p_up: f64, p_down: f64, what: &str| {
        EdgeMarkovParams::new(p_up, p_down, tau).map_err(|e| {
            Failure::Domain(format!(
                "swept {what} value {value} gives p_up={p_up}, p_down={p_down}: {e}"
            ))
        })
    };
    match variable {
        SweepVariable::Alpha => point.alphas = vec![value],
        SweepVariable::Delay => point.delays = vec![whole_number("delay", value, 0)?],
        SweepVariable::NNodes => point.n_nodes = whole_number("n_nodes", value, 2)? as usize,
        SweepVariable::ContactTime => {
            // mean contact time tau / p_down, degree (pi_up) held fixed
            let pi_up = base.params.pi_up();
            let p_down = tau / value;
            point.params = derived(p_down * pi_up / (1.0 - pi_up), p_down, "contact_time")?;
        }
        SweepVariable::Degree => {
            let pi_up = value / (base.n_nodes as f64 - 1.0);
            let p_down = base.params.p_down();
            if !(pi_up > 0.0 && pi_up < 1.0) {
                return Err(Failure::Domain(format!(
                    "swept degree value {value} needs 0 < degree < N-1 = {}",
                    base.n_nodes - 1
                )));
            }
            point.params = derived(p_down * pi_up / (1.0 - pi_up), p_down, "degree")?;
        }
    }
    Ok(point)
}

pub fn sweep_rows(
    point: &Point,
    outputs: &[OutputKind],
    mode: LowerBoundMode,
    runs: u64,
    seed: u64,
) -> Result<Vec<DeliveryRow>, Failure> {
    let wants = |kind| outputs.contains(&kind);
    let mut rows = Vec::new();
    for (alpha, d) in point.queries() {
        let analytic_kind = if alpha > 1.0 {
            OutputKind::Bounds
        } else {
            OutputKind::Exact
        };
        if wants(analytic_kind) {
            rows.push(analytic_row(point, alpha, d, mode)?);
        }
        if wants(OutputKind::Montecarlo) {
            rows.push(monte_carlo_row(point, alpha, d, runs, seed)?);
        }
    }
    Ok(rows)
}

pub fn sweep(args: &SweepArgs, explicit: Explicit) -> Result<(), Failure> {
    let mut base = Point::from_args(&args.model)?;
    let plan = match args.preset {
        Some(preset) => preset_plan(preset),
        None => SweepPlan {
            variable: args.variable.expect("required by clap"),
            values: args.values.clone().expect("required by clap").0,
            alphas: None,
            delays: None,
        },
    };
    if let Some(alphas) = plan.alphas.filter(|_| !explicit.alpha) {
        base.alphas = alphas;
    }
    if let Some(delays) = plan.delays.filter(|_| !explicit.delay) {
        base.delays = delays;
    }
    let mode = args.model.lower_bound_mode.into();
    let points = plan
        .values
        .iter()
        .map(|&v| sweep_point(&base, plan.variable, v))
        .collect::<Result<Vec<_>, _>>()?;
    let per_point = points
        .par_iter()
        .map(|p| sweep_rows(p, &args.outputs, mode, args.mc.runs, args.mc.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<DeliveryRow> = per_point.into_iter().flatten().collect();
    write_delivery_rows(
        &args.output.out,
        &rows,
        args.outputs.contains(&OutputKind::Montecarlo),
    )?;
    Ok(())
}
