//! Dataset loading, sufficient statistics, and synthetic data generation.

mod csv;
mod dataset;
mod sample;

pub use csv::{load_csv, load_csv_str, load_schema, to_csv_string, write_csv, Schema};
pub use dataset::{empirical_counts, node_counts, CountTable, Dataset};
pub use sample::forward_sample;
