use std::fs::File;
use std::io::{BufReader, Write};

use epiroute_core::{
    delivery_ratio_with_mode, estimate_params, link_runs, parse_trace, replay_experiment,
    sample_graph, stationary_stats, trace_stats, write_trace, DeliveryQuery, DeliveryResult,
    DynamicGraph, EdgeMarkovParams, ReplayConfig,
};

use crate::args::{EstimateArgs, ReplayArgs, ReportFormat, SynthTraceArgs, TraceInput};
use crate::output::{csv_writer, num, open_output, opt_num};
use crate::Failure;

fn load_trace(input: &TraceInput) -> Result<DynamicGraph, Failure> {
    let file = File::open(&input.trace).map_err(|e| {
        Failure::Domain(format!("cannot open trace {}: {e}", input.trace.display()))
    })?;
    let parsed = parse_trace(BufReader::new(file), input.tau)?;
    let graph = match input.n {
        Some(n) => parsed.graph.with_node_count(n)?,
        None => parsed.graph,
    };
    Ok(graph)
}

pub fn estimate(args: &EstimateArgs) -> Result<(), Failure> {
    let graph = load_trace(&args.input)?;
    let stats = trace_stats(&graph);
    let runs = link_runs(&graph);
    let params = estimate_params(&stats).map_err(|e| {
        Failure::Domain(format!(
            "cannot estimate parameters (N={}, mean link lifetime {} s, mean degree {}): {e}",
            stats.n_nodes, stats.mean_link_lifetime, stats.mean_degree
        ))
    })?;
    let stationary = stationary_stats(&params);
    let report = [
        ("n_nodes", stats.n_nodes.to_string()),
        ("snapshots", graph.len().to_string()),
        ("tau", num(stats.tau)),
        ("mean_link_lifetime", num(stats.mean_link_lifetime)),
        ("mean_degree", num(stats.mean_degree)),
        ("link_runs", runs.runs.to_string()),
        ("censored_runs", runs.censored.to_string()),
        ("p_up", num(params.p_up())),
        ("p_down", num(params.p_down())),
        ("pi_up", num(stationary.pi_up)),
        ("mean_contact_time", num(stationary.e_t_up)),
        ("mean_intercontact_time", num(stationary.e_t_down)),
    ];
    match args.format {
        ReportFormat::Text => {
            let mut out = open_output(&args.output.out)?;
            for (key, value) in &report {
                writeln!(out, "{key}: {value}")?;
            }
            out.flush()?;
        }
        ReportFormat::Csv => {
            let mut writer = csv_writer(&args.output.out)?;
            writer.write_record(report.iter().map(|(k, _)| *k))?;
            writer.write_record(report.iter().map(|(_, v)| v.as_str()))?;
            writer.flush()?;
        }
    }
    Ok(())
}

pub fn replay(args: &ReplayArgs) -> Result<(), Failure> {
    let graph = load_trace(&args.input)?;
    let config = ReplayConfig {
        horizon: args.horizon,
        injection_interval: args.interval,
        pairs_per_batch: args.pairs,
        alpha_values: args.alpha.0.clone(),
        delay_values: args.delay.0.clone(),
        seed: args.seed,
    };
    let result = replay_experiment(&graph, &config)?;

    let model = if args.with_model {
        let stats = trace_stats(&graph);
        Some(estimate_params(&stats).map_err(|e| {
            Failure::Domain(format!(
                "--with-model: cannot estimate parameters from the trace: {e}"
            ))
        })?)
    } else {
        None
    };

    let mut writer = csv_writer(&args.output.out)?;
    let mut header = vec![
        "alpha",
        "delay_seconds",
        "delivery_ratio",
        "n_samples",
        "std_error",
    ];
    if model.is_some() {
        header.extend([
            "p_up",
            "p_down",
            "model_kind",
            "model_value_or_lower",
            "model_upper",
        ]);
    }
    writer.write_record(&header)?;

    // observations come out alpha-major in configuration order
    let delays = &config.delay_values;
    for (index, obs) in result.observations.iter().enumerate() {
        let delay_seconds = delays[index % delays.len()];
        let mut record = vec![
            num(obs.alpha),
            num(delay_seconds),
            num(obs.value),
            obs.samples.unwrap_or(0).to_string(),
            opt_num(obs.std_error),
        ];
        if let Some(params) = &model {
            record.extend(model_columns(
                params,
                obs.n_nodes,
                obs.alpha,
                obs.max_delay,
                args,
            )?);
        }
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

fn model_columns(
    params: &EdgeMarkovParams,
    n_nodes: usize,
    alpha: f64,
    steps: u64,
    args: &ReplayArgs,
) -> Result<Vec<String>, Failure> {
    let query = DeliveryQuery::new(n_nodes, alpha, steps)?;
    let result = delivery_ratio_with_mode(params, &query, args.lower_bound_mode.into())?;
    let (kind, value, upper) = match result {
        DeliveryResult::Exact(v) => ("exact", v, None),
        DeliveryResult::Bounded { lower, upper, .. } => ("bounds", lower, Some(upper)),
    };
    Ok(vec![
        num(params.p_up()),
        num(params.p_down()),
        kind.to_string(),
        num(value),
        opt_num(upper),
    ])
}

pub fn synth_trace(args: &SynthTraceArgs) -> Result<(), Failure> {
    let params = EdgeMarkovParams::new(args.p_up, args.p_down, args.tau)?;
    let graph = sample_graph(&params, args.n, args.steps, args.seed)?;
    let out = open_output(&args.output.out)?;
    write_trace(&graph, out)?;
    Ok(())
}
