//! Scenario runner: JSON scenarios in, deterministic convergence reports out.
//!
//! A scenario names a model of `X` (an anchored scheme), a connector on `Z`,
//! a function, an operator, probe points and a schedule. [`run_scenario`]
//! evaluates the operator's approximants along the schedule at every probe
//! and applies the tail criterion; [`emit`] writes the report as JSON or CSV
//! with every float printed to 17 significant digits.

mod report;
mod run;
mod scenario;

pub use report::{
    emit, format_f64, render, render_suite, to_csv, to_json, write_out, ConvergenceReport, Format, ProbeRecord,
    Summary, SuiteReport, SuiteSummary, TermRecord,
};
pub use run::{run_scenario, run_suite, scenario_files, section_probe, ModulusRow, Overrides};
pub use scenario::{
    ConnectorSpec, FunctionSpec, OperatorKind, ProbePoint, ProbeSpec, Scenario, YSpec,
};
