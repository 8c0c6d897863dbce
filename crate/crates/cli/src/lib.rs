//! JSON jobs, reports and SVG figures on top of `blowdown-core`.
//!
//! A job is a JSON object with a `command` field (`cf`, `chain`, `plumbing`,
//! `fit`, `blowdown`, `lens`, `diagram`, `render`) and a command-specific
//! payload. [`run`] turns a job into an exit code and a list of documents:
//! exit 0 on success, 1 when a well-formed request is infeasible, 2 when the
//! input is invalid. Schema errors carry a JSON pointer to the offending value.

pub mod config;
mod figures;
pub mod render;
mod run;

pub use config::{Command, ConfigError, Figure, JobConfig, LabelToggles, RenderOptions};
pub use figures::{chain_collar_transverse, render_figure, Rendered};
pub use run::{
    rejected, run, run_json, Document, DocumentKind, Failure, Outcome, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_OK,
};
