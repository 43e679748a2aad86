//! Table rows and renderers. Column order mirrors the benchmark tables:
//! method, parameters, precision (max/avg/med), recall (max/avg/med),
//! cost (min/avg/med), mean seeding time.

use okm::MetricsReport;
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub method: String,
    pub params: String,
    pub runs: usize,
    pub precision_max: Option<f64>,
    pub precision_avg: Option<f64>,
    pub precision_median: Option<f64>,
    pub recall_max: Option<f64>,
    pub recall_avg: Option<f64>,
    pub recall_median: Option<f64>,
    pub cost_min: Option<f64>,
    pub cost_avg: Option<f64>,
    pub cost_median: Option<f64>,
    /// Mean seeding seconds; omitted from serialized output unless timing
    /// was requested, keeping fixed-seed output byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_avg_s: Option<f64>,
    /// Presentation-only divisor for cost cells in markdown/csv.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TableRow {
    pub fn from_report(cfg: &ExperimentConfig, report: &MetricsReport) -> Self {
        let method = cfg
            .algorithm()
            .map(|a| a.to_string())
            .unwrap_or_else(|_| cfg.algorithm.clone());
        Self {
            method: cfg.name.clone().unwrap_or(method),
            params: cfg.param_echo(),
            runs: report.runs,
            precision_max: report.precision_max,
            precision_avg: report.precision_avg,
            precision_median: report.precision_median,
            recall_max: report.recall_max,
            recall_avg: report.recall_avg,
            recall_median: report.recall_median,
            cost_min: Some(report.cost_min),
            cost_avg: Some(report.cost_avg),
            cost_median: Some(report.cost_median),
            time_avg_s: Some(report.time_avg_s),
            cost_scale: cfg.cost_scale,
            error: None,
        }
    }

    pub fn failed(cfg: &ExperimentConfig, message: &str) -> Self {
        Self {
            method: cfg
                .name
                .clone()
                .unwrap_or_else(|| cfg.algorithm.clone()),
            params: cfg.param_echo(),
            runs: 0,
            precision_max: None,
            precision_avg: None,
            precision_median: None,
            recall_max: None,
            recall_avg: None,
            recall_median: None,
            cost_min: None,
            cost_avg: None,
            cost_median: None,
            time_avg_s: None,
            cost_scale: None,
            error: Some(message.to_string()),
        }
    }

    /// Drops the wall-clock column so fixed-seed output is byte-stable.
    pub fn without_timing(mut self) -> Self {
        self.time_avg_s = None;
        self
    }

    /// The deterministic cells, for equality assertions in tests.
    pub fn numeric_cells(&self) -> Vec<Option<f64>> {
        vec![
            self.precision_max,
            self.precision_avg,
            self.precision_median,
            self.recall_max,
            self.recall_avg,
            self.recall_median,
            self.cost_min,
            self.cost_avg,
            self.cost_median,
        ]
    }

    fn scaled(&self, cost: Option<f64>) -> Option<f64> {
        cost.map(|c| c / self.cost_scale.unwrap_or(1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Markdown,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "markdown" | "md" => Ok(Self::Markdown),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format {other:?} (csv, markdown, json)")),
        }
    }
}

pub fn render(rows: &[TableRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => render_csv(rows),
        OutputFormat::Markdown => render_markdown(rows),
        OutputFormat::Json => render_json(rows),
    }
}

fn cell(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.4}"),
        None => "-".to_string(),
    }
}

fn time_cell(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.4}"),
        None => "-".to_string(),
    }
}

const HEADER: [&str; 12] = [
    "method",
    "params",
    "prec_max",
    "prec_avg",
    "prec_med",
    "rec_max",
    "rec_avg",
    "rec_med",
    "cost_min",
    "cost_avg",
    "cost_med",
    "time_s",
];

fn row_cells(row: &TableRow) -> Vec<String> {
    if let Some(err) = &row.error {
        let mut cells = vec![row.method.clone(), format!("FAILED: {err}")];
        cells.extend(std::iter::repeat("-".to_string()).take(HEADER.len() - 2));
        return cells;
    }
    vec![
        row.method.clone(),
        row.params.clone(),
        cell(row.precision_max),
        cell(row.precision_avg),
        cell(row.precision_median),
        cell(row.recall_max),
        cell(row.recall_avg),
        cell(row.recall_median),
        cell(row.scaled(row.cost_min)),
        cell(row.scaled(row.cost_avg)),
        cell(row.scaled(row.cost_median)),
        time_cell(row.time_avg_s),
    ]
}

pub fn render_markdown(rows: &[TableRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!("| {} |\n", HEADER.join(" | ")));
    out.push_str(&format!(
        "|{}\n",
        " --- |".repeat(HEADER.len())
    ));
    for row in rows {
        out.push_str(&format!("| {} |\n", row_cells(row).join(" | ")));
    }
    out
}

pub fn render_csv(rows: &[TableRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(HEADER).expect("in-memory write");
    for row in rows {
        writer.write_record(row_cells(row)).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

pub fn render_json(rows: &[TableRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows are serializable") + "\n"
}
