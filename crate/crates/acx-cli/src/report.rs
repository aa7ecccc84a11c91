//! Output reports: one structure rendered as either text or JSON, with a
//! stable exit-code contract (0 success/EXISTS, 1 obstruction or not
//! guaranteed, 2 usage or parse error, 3 undetermined).

use acx_core::decision::{Status, Verdict};
use acx_core::rational::Rational;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputReport {
    pub version: u32,
    pub query: Query,
    pub result: QueryResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case", deny_unknown_fields)]
pub enum Query {
    Guarantee {
        dim: u32,
        l: u64,
    },
    Classify {
        file: String,
        list: String,
        dim: u32,
        summands: usize,
    },
    Product {
        p: u32,
        q: u32,
        mode: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        spin_c: Option<bool>,
    },
    Index {
        file: String,
        manifold: String,
    },
    Genus {
        genus: String,
        max_degree: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum QueryResult {
    Verdict { verdict: Verdict },
    Index { value: Rational, integral: bool },
    GenusTable { rows: Vec<GenusRow> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenusRow {
    pub i: u32,
    pub degree: u32,
    pub polynomial: String,
}

impl OutputReport {
    pub fn new(query: Query, result: QueryResult) -> Self {
        OutputReport {
            version: 1,
            query,
            result,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match &self.result {
            QueryResult::Verdict { verdict } => match verdict.status {
                Status::Exists => 0,
                Status::NotExists => 1,
                Status::Undetermined => 3,
            },
            QueryResult::Index { integral, .. } => {
                if *integral {
                    0
                } else {
                    1
                }
            }
            QueryResult::GenusTable { .. } => 0,
        }
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.query {
            Query::Guarantee { dim, l } => {
                let _ = writeln!(out, "query: guarantee dim={dim} l={l}");
            }
            Query::Classify {
                file,
                list,
                dim,
                summands,
            } => {
                let _ = writeln!(
                    out,
                    "query: classify file={file} list={list} (dim {dim}, {summands} summands)"
                );
            }
            Query::Product { p, q, mode, spin_c } => {
                let _ = write!(out, "query: product p={p} q={q} mode={mode}");
                match spin_c {
                    Some(b) => {
                        let _ = writeln!(out, " spin-c={b}");
                    }
                    None => {
                        let _ = writeln!(out);
                    }
                }
            }
            Query::Index { file, manifold } => {
                let _ = writeln!(out, "query: index file={file} manifold={manifold}");
            }
            Query::Genus { genus, max_degree } => {
                let _ = writeln!(out, "query: genus {genus} max-degree={max_degree}");
            }
        }
        match &self.result {
            QueryResult::Verdict { verdict } => {
                let _ = writeln!(out, "status: {}", verdict.status);
                let _ = writeln!(out, "trace:");
                for f in &verdict.trace {
                    let label = match f.kind {
                        acx_core::decision::FiringKind::Constructive => "constructive: ",
                        acx_core::decision::FiringKind::Obstruction => "obstruction: ",
                        acx_core::decision::FiringKind::Informational => "note: ",
                        acx_core::decision::FiringKind::Inapplicable => "",
                    };
                    let _ = writeln!(out, "  [{}] {label}{}", f.rule_id, f.conclusion);
                    if let Some(w) = &f.witness {
                        let _ = writeln!(out, "        witness: {w}");
                    }
                    let _ = writeln!(out, "        anchor: {}", f.anchor);
                }
            }
            QueryResult::Index { value, integral } => {
                let _ = writeln!(out, "index = {value}");
                let _ = writeln!(
                    out,
                    "integral: {}",
                    if *integral { "yes" } else { "no (obstruction)" }
                );
            }
            QueryResult::GenusTable { rows } => {
                if rows.is_empty() {
                    let _ = writeln!(out, "(empty table)");
                }
                for row in rows {
                    let _ = writeln!(
                        out,
                        "K{} (degree {}) = {}",
                        row.i, row.degree, row.polynomial
                    );
                }
            }
        }
        out
    }
}
