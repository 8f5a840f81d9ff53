//! Small bibliographic network shared by unit tests, integration tests,
//! and documentation examples: 11 authors, 7 papers, author-paper
//! membership edges. Kept as on-disk tables so the CLI tests exercise
//! the exact same data.

use crate::hin::{load_hin, Hin, Schema};

pub const NODES_TSV: &str = include_str!("../tests/data/nodes.tsv");
pub const EDGES_TSV: &str = include_str!("../tests/data/edges.tsv");
pub const SCHEMA_JSON: &str = include_str!("../tests/data/schema.json");

pub fn bib_schema() -> Schema {
    Schema::from_json(SCHEMA_JSON).expect("embedded schema is valid")
}

pub fn bib_hin() -> Hin {
    load_hin(NODES_TSV, EDGES_TSV, &bib_schema()).expect("embedded tables are valid")
}
