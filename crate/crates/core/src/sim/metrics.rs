//! Run measurements and their JSON / CSV reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Column order of the CSV report and key order of the JSON report.
pub const METRIC_COLUMNS: [&str; 9] = [
    "interests_issued",
    "interests_satisfied",
    "satisfaction_rate",
    "fib_entries_unaggregated",
    "fib_entries_aggregated",
    "aggregation_ratio",
    "cache_hits",
    "cache_hit_ratio",
    "mean_hop_count",
];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PopularityRow {
    pub name: String,
    pub hits: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub interests_issued: u64,
    pub interests_satisfied: u64,
    /// satisfied / issued; 1.0 when nothing was issued.
    pub satisfaction_rate: f64,
    pub fib_entries_unaggregated: u64,
    pub fib_entries_aggregated: u64,
    /// unaggregated / aggregated; 1.0 when there are no routes.
    pub aggregation_ratio: f64,
    pub cache_hits: u64,
    /// cache_hits / content store lookups.
    pub cache_hit_ratio: f64,
    /// Mean Data hop count over satisfied Interests.
    pub mean_hop_count: f64,
    /// Content store hits per Data name, sorted by name.
    pub popularity: Vec<PopularityRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format {other:?} (expected json or csv)")),
        }
    }
}

pub(crate) fn ratio(num: u64, den: u64, empty: f64) -> f64 {
    if den == 0 {
        empty
    } else {
        num as f64 / den as f64
    }
}

impl Metrics {
    fn row(&self) -> [String; 9] {
        [
            self.interests_issued.to_string(),
            self.interests_satisfied.to_string(),
            format!("{:.6}", self.satisfaction_rate),
            self.fib_entries_unaggregated.to_string(),
            self.fib_entries_aggregated.to_string(),
            format!("{:.6}", self.aggregation_ratio),
            self.cache_hits.to_string(),
            format!("{:.6}", self.cache_hit_ratio),
            format!("{:.6}", self.mean_hop_count),
        ]
    }

    pub fn report(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }

    /// Fixed key order, floats at six decimals, two-space indent.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        for (key, value) in METRIC_COLUMNS.iter().zip(self.row()) {
            let _ = writeln!(out, "  \"{key}\": {value},");
        }
        out.push_str("  \"popularity\": [");
        for (i, row) in self.popularity.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            let name = serde_json::to_string(&row.name).expect("string serializes");
            let _ = write!(out, "    {{\"name\": {name}, \"hits\": {}}}", row.hits);
        }
        if !self.popularity.is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("]\n}\n");
        out
    }

    /// Header row plus one value row. The popularity table is JSON-only.
    pub fn to_csv(&self) -> String {
        format!("{}\n{}\n", METRIC_COLUMNS.join(","), self.row().join(","))
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
