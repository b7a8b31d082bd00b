//! Smart-campus simulation: scenario files, static routing, the event loop
//! and run metrics.

pub mod config;
pub mod metrics;
pub mod routes;
pub mod runner;

pub use config::{ConfigError, Scenario, ScenarioConfig};
pub use metrics::{Metrics, PopularityRow, ReportFormat};
pub use routes::{aggregate, build_routes, RouteError, Routes};
pub use runner::{run, run_json, run_with, InterestRecord, Observer, Packet, SimError, SimOutput, StepInput};
