//! Proof traces as a table, as prose and as JSON.

mod prose;
mod structured;
mod table;

pub use prose::{angle_name, describe, render_prose, TemplateCatalog, TemplateError};
pub use structured::{config_hash, parse_fact, parse_structured, render_structured, TraceMeta, TRACE_FORMAT};
pub use table::render_table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Prose,
    Structured,
}
