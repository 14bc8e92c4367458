//! Rendering branching tables as JSON, CSV or a plain-text table.

use std::io::Write;
use std::str::FromStr;

use kmbranch_core::rational::format_rational;
use kmbranch_core::BranchTable;

use crate::error::CliError;
use crate::format::TableJson;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Format, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(CliError::Usage(format!("unknown format {s:?} (json, csv, pretty)"))),
        }
    }
}

pub fn emit_table(table: &BranchTable, format: Format, mut out: impl Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &TableJson::from(table))?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(table, &mut out)?,
        Format::Pretty => write_pretty(table, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn methods(row: &kmbranch_core::BranchRow, sep: &str) -> String {
    row.methods.iter().map(|m| m.name()).collect::<Vec<_>>().join(sep)
}

fn write_csv(table: &BranchTable, out: impl Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let rank = table.lambda.rank();
    let mut header: Vec<String> = (0..rank).map(|i| format!("label_{i}")).collect();
    header.extend(["d", "depth", "mult", "methods", "verified"].map(String::from));
    w.write_record(&header)?;
    for row in &table.rows {
        let mut rec: Vec<String> = row.weight.labels().iter().map(format_rational).collect();
        rec.push(format_rational(row.weight.d()));
        rec.push(row.depth.to_string());
        rec.push(row.mult.to_string());
        rec.push(methods(row, ";"));
        rec.push(table.verified.to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn write_pretty(table: &BranchTable, out: &mut impl Write) -> Result<(), CliError> {
    let name = table.algebra.name().unwrap_or("custom");
    writeln!(out, "{name}, u = {}, highest weight {}", table.u, table.lambda)?;
    writeln!(out, "depth {}, margin {}, verified: {}", table.depth, table.margin, table.verified)?;
    let cells: Vec<[String; 4]> = table
        .rows
        .iter()
        .map(|r| [r.depth.to_string(), r.weight.to_string(), r.mult.to_string(), methods(r, ",")])
        .collect();
    let head = ["depth", "component", "mult", "methods"].map(String::from);
    let mut width = head.clone().map(|h| h.len());
    for c in &cells {
        for (w, s) in width.iter_mut().zip(c) {
            *w = (*w).max(s.chars().count());
        }
    }
    for c in std::iter::once(&head).chain(&cells) {
        let line = c
            .iter()
            .zip(width)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        writeln!(out, "{}", line.trim_end())?;
    }
    Ok(())
}
