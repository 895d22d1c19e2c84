use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::run::{Payload, RunRecord};
use crate::sweep::SweepEntry;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Format(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Format(e.to_string());
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Format(e.to_string()))
}

fn non_tabular(kind: &str) -> CliError {
    CliError::Format(format!("{kind} output is not tabular; use --format json"))
}

const POA_HEADER: [&str; 4] = ["poa", "optimum_cost", "worst_ne_cost", "ne_count"];
const BOUNDS_HEADER: [&str; 6] = ["name", "relation", "lhs", "rhs", "holds", "context"];

fn payload_rows(p: &Payload) -> CliResult<(Vec<&'static str>, Vec<Vec<String>>)> {
    Ok(match p {
        Payload::Graph(g) => (
            vec!["u", "v"],
            g.edges()
                .iter()
                .map(|(u, v)| vec![u.to_string(), v.to_string()])
                .collect(),
        ),
        Payload::Cost(r) => {
            let level = |lvl: u8, costs: &[edgefog_core::Cost]| {
                costs
                    .iter()
                    .enumerate()
                    .map(move |(i, c)| vec![i.to_string(), lvl.to_string(), c.to_string()])
                    .collect::<Vec<_>>()
            };
            let mut rows = level(1, &r.level1_costs);
            rows.extend(level(2, &r.level2_costs));
            (vec!["player", "level", "cost"], rows)
        }
        Payload::Poa(r) => (
            POA_HEADER.to_vec(),
            vec![vec![
                r.poa.to_string(),
                r.optimum_cost.to_string(),
                r.worst_ne_cost.to_string(),
                r.ne_count.to_string(),
            ]],
        ),
        Payload::Bounds(checks) => (
            BOUNDS_HEADER.to_vec(),
            checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.relation.symbol().to_string(),
                        c.lhs.to_string(),
                        c.rhs.to_string(),
                        c.holds.to_string(),
                        c.context.clone(),
                    ]
                })
                .collect(),
        ),
        Payload::Verify(v) => (
            vec!["criterion", "name", "passed", "detail"],
            v.criteria
                .iter()
                .map(|c| {
                    vec![
                        c.id.to_string(),
                        c.name.clone(),
                        c.passed.to_string(),
                        c.detail.clone(),
                    ]
                })
                .collect(),
        ),
        Payload::Dynamics(_) => return Err(non_tabular("dynamics")),
        Payload::Nash(_) => return Err(non_tabular("nash")),
    })
}

/// JSON is the whole record; CSV flattens the tabular payloads.
pub fn emit(record: &RunRecord, format: Format) -> CliResult<String> {
    match format {
        Format::Json => to_json(record),
        Format::Csv => {
            let (header, rows) = payload_rows(&record.result)?;
            csv_text(&header, rows)
        }
    }
}

/// CSV of a sweep prefixes each payload row with the swept value.
pub fn emit_sweep(entries: &[SweepEntry], format: Format) -> CliResult<String> {
    match format {
        Format::Json => to_json(&entries),
        Format::Csv => {
            let mut header = None;
            let mut rows = Vec::new();
            for e in entries {
                let (h, payload_rows) = match &e.record.result {
                    p @ (Payload::Poa(_) | Payload::Bounds(_) | Payload::Cost(_)) => {
                        payload_rows(p)?
                    }
                    _ => return Err(non_tabular("this sweep")),
                };
                header.get_or_insert(h);
                rows.extend(payload_rows.into_iter().map(|mut r| {
                    r.insert(0, e.value.to_string());
                    r
                }));
            }
            let mut full = vec!["value"];
            full.extend(header.unwrap_or_else(|| POA_HEADER.to_vec()));
            csv_text(&full, rows)
        }
    }
}
