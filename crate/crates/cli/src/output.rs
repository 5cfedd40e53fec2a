use std::fs::File;
use std::io::{self, BufWriter, Write};

use epiroute_core::{DeliveryResult, EdgeMarkovParams, SimEstimate};

pub const DELIVERY_HEADER: [&str; 8] = [
    "alpha",
    "d",
    "N",
    "p_up",
    "p_down",
    "kind",
    "value_or_lower",
    "upper",
];
pub const MONTE_CARLO_COLUMNS: [&str; 2] = ["runs", "std_error"];

/// Opens `-` as standard output, anything else as a file.
pub fn open_output(path: &str) -> io::Result<Box<dyn Write>> {
    if path == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

pub fn csv_writer(path: &str) -> io::Result<csv::Writer<Box<dyn Write>>> {
    Ok(csv::WriterBuilder::new().from_writer(open_output(path)?))
}

/// `{}` formatting is the shortest string that parses back to the same f64.
pub fn num(value: f64) -> String {
    format!("{value}")
}

pub fn opt_num(value: Option<f64>) -> String {
    value.map(num).unwrap_or_default()
}

/// One line of the delivery-ratio schema.
#[derive(Debug, Clone, PartialEq)]
pub struct DeliveryRow {
    pub alpha: f64,
    pub d: u64,
    pub n_nodes: usize,
    pub p_up: f64,
    pub p_down: f64,
    pub kind: &'static str,
    pub value: f64,
    pub upper: Option<f64>,
    pub runs: Option<u64>,
    pub std_error: Option<f64>,
}

impl DeliveryRow {
    pub fn analytic(
        alpha: f64,
        d: u64,
        n_nodes: usize,
        params: &EdgeMarkovParams,
        result: DeliveryResult,
    ) -> Self {
        let (kind, value, upper) = match result {
            DeliveryResult::Exact(v) => ("exact", v, None),
            DeliveryResult::Bounded { lower, upper, .. } => ("bounds", lower, Some(upper)),
        };
        Self {
            alpha,
            d,
            n_nodes,
            p_up: params.p_up(),
            p_down: params.p_down(),
            kind,
            value,
            upper,
            runs: None,
            std_error: None,
        }
    }

    pub fn monte_carlo(
        alpha: f64,
        d: u64,
        n_nodes: usize,
        params: &EdgeMarkovParams,
        est: &SimEstimate,
    ) -> Self {
        Self {
            alpha,
            d,
            n_nodes,
            p_up: params.p_up(),
            p_down: params.p_down(),
            kind: "montecarlo",
            value: est.delivery_ratio,
            upper: None,
            runs: Some(est.runs),
            std_error: Some(est.std_error),
        }
    }

    pub fn record(&self, with_monte_carlo: bool) -> Vec<String> {
        let mut fields = vec![
            num(self.alpha),
            self.d.to_string(),
            self.n_nodes.to_string(),
            num(self.p_up),
            num(self.p_down),
            self.kind.to_string(),
            num(self.value),
            opt_num(self.upper),
        ];
        if with_monte_carlo {
            fields.push(self.runs.map(|r| r.to_string()).unwrap_or_default());
            fields.push(opt_num(self.std_error));
        }
        fields
    }
}

pub fn write_delivery_rows(
    out: &str,
    rows: &[DeliveryRow],
    with_monte_carlo: bool,
) -> csv::Result<()> {
    let mut writer = csv_writer(out)?;
    let mut header: Vec<&str> = DELIVERY_HEADER.to_vec();
    if with_monte_carlo {
        header.extend(MONTE_CARLO_COLUMNS);
    }
    writer.write_record(&header)?;
    for row in rows {
        writer.write_record(row.record(with_monte_carlo))?;
    }
    writer.flush()?;
    Ok(())
}
