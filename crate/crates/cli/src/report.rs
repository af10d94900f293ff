//! Benchmark report emission: flat CSV (full precision), a Markdown pivot
//! grouped the way the reference tables are laid out, and raw JSON.

use anyhow::{bail, Context, Result};
use ave_core::Method;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub p: f64,
    pub q: f64,
    pub m: usize,
    pub method: Method,
    pub alpha: Option<f64>,
    pub status: String,
    pub outer_iterations: usize,
    /// Mean inner sweeps per outer step (inner-outer methods only).
    pub inner_mean: Option<f64>,
    pub total_iterations: usize,
    /// Relative residual recomputed from the returned iterate.
    pub res: Option<f64>,
    /// The same residual scaled by 1e6, the way the reference tables print it.
    pub res_1e6: Option<f64>,
    pub cpu_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Md,
    Json,
}

impl std::str::FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            "json" => Ok(Format::Json),
            other => bail!("unknown format '{other}' (expected csv, md or json)"),
        }
    }
}

pub const CSV_HEADER: &str =
    "p,q,m,method,alpha,status,outer_iterations,inner_mean,total_iterations,res,res_1e6,cpu_s";

fn opt_to_string<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.p,
            r.q,
            r.m,
            r.method,
            opt_to_string(&r.alpha),
            r.status,
            r.outer_iterations,
            opt_to_string(&r.inner_mean),
            r.total_iterations,
            opt_to_string(&r.res),
            opt_to_string(&r.res_1e6),
            r.cpu_s,
        ));
    }
    out
}

fn parse_opt<T: std::str::FromStr>(field: &str, what: &str) -> Result<Option<T>> {
    if field.is_empty() {
        return Ok(None);
    }
    field
        .parse()
        .map(Some)
        .map_err(|_| anyhow::anyhow!("bad {what} field '{field}'"))
}

/// Parses the CSV produced by [`to_csv`]; round-trips losslessly.
pub fn from_csv(text: &str) -> Result<Vec<BenchRow>> {
    let mut lines = text.lines();
    let header = lines.next().context("empty csv")?;
    if header != CSV_HEADER {
        bail!("unexpected csv header '{header}'");
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            bail!(
                "line {}: expected 12 fields, found {}",
                idx + 2,
                fields.len()
            );
        }
        rows.push(BenchRow {
            p: fields[0].parse().context("p")?,
            q: fields[1].parse().context("q")?,
            m: fields[2].parse().context("m")?,
            method: fields[3]
                .parse()
                .map_err(|e| anyhow::anyhow!("line {}: {e}", idx + 2))?,
            alpha: parse_opt(fields[4], "alpha")?,
            status: fields[5].to_string(),
            outer_iterations: fields[6].parse().context("outer_iterations")?,
            inner_mean: parse_opt(fields[7], "inner_mean")?,
            total_iterations: fields[8].parse().context("total_iterations")?,
            res: parse_opt(fields[9], "res")?,
            res_1e6: parse_opt(fields[10], "res_1e6")?,
            cpu_s: fields[11].parse().context("cpu_s")?,
        });
    }
    Ok(rows)
}

fn fmt_cell(v: Option<f64>, digits: usize) -> String {
    match v {
        Some(v) => format!("{v:.digits$}"),
        None => "--".to_string(),
    }
}

/// Markdown pivot: one table per p value, q/method blocks as rows and grid
/// sizes as columns; cells that did not converge print `--`.
pub fn to_markdown(rows: &[BenchRow]) -> String {
    let mut ps: Vec<f64> = rows.iter().map(|r| r.p).collect();
    ps.sort_by(f64::total_cmp);
    ps.dedup();

    let mut out = String::new();
    for &p in &ps {
        let slice: Vec<&BenchRow> = rows.iter().filter(|r| r.p == p).collect();
        let mut qs: Vec<f64> = slice.iter().map(|r| r.q).collect();
        qs.sort_by(f64::total_cmp);
        qs.dedup();
        let mut ms: Vec<usize> = slice.iter().map(|r| r.m).collect();
        ms.sort_unstable();
        ms.dedup();
        let mut methods: Vec<Method> = Vec::new();
        for r in &slice {
            if !methods.contains(&r.method) {
                methods.push(r.method);
            }
        }

        out.push_str(&format!("\n## p = {p}\n\n"));
        out.push_str("| q | method | metric |");
        for m in &ms {
            out.push_str(&format!(" m={m} |"));
        }
        out.push('\n');
        out.push_str("|---|---|---|");
        out.push_str(&"---|".repeat(ms.len()));
        out.push('\n');

        for &q in &qs {
            for &method in &methods {
                let cells: Vec<Option<&BenchRow>> = ms
                    .iter()
                    .map(|&m| {
                        slice
                            .iter()
                            .find(|r| r.q == q && r.m == m && r.method == method)
                            .copied()
                    })
                    .collect();
                let converged = |r: &&BenchRow| r.status == "Converged";

                let mut metric_rows: Vec<(&str, Vec<String>)> = Vec::new();
                if method == Method::PicardHss {
                    metric_rows.push((
                        "IT_out",
                        cells
                            .iter()
                            .map(|c| match c {
                                Some(r) if converged(r) => r.outer_iterations.to_string(),
                                _ => "--".into(),
                            })
                            .collect(),
                    ));
                    metric_rows.push((
                        "IT_int",
                        cells
                            .iter()
                            .map(|c| match c {
                                Some(r) if converged(r) => fmt_cell(r.inner_mean, 1),
                                _ => "--".into(),
                            })
                            .collect(),
                    ));
                }
                metric_rows.push((
                    "IT",
                    cells
                        .iter()
                        .map(|c| match c {
                            Some(r) if converged(r) => r.total_iterations.to_string(),
                            _ => "--".into(),
                        })
                        .collect(),
                ));
                metric_rows.push((
                    "CPU",
                    cells
                        .iter()
                        .map(|c| match c {
                            Some(r) if converged(r) => format!("{:.4}", r.cpu_s),
                            _ => "--".into(),
                        })
                        .collect(),
                ));
                metric_rows.push((
                    "RES(x1e-6)",
                    cells
                        .iter()
                        .map(|c| match c {
                            Some(r) if converged(r) => fmt_cell(r.res_1e6, 4),
                            _ => "--".into(),
                        })
                        .collect(),
                ));

                for (metric, values) in metric_rows {
                    out.push_str(&format!("| q={q} | {method} | {metric} |"));
                    for v in values {
                        out.push_str(&format!(" {v} |"));
                    }
                    out.push('\n');
                }
            }
        }
    }
    out
}

pub fn render(rows: &[BenchRow], format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => to_csv(rows),
        Format::Md => to_markdown(rows),
        Format::Json => serde_json::to_string_pretty(rows)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<BenchRow> {
        vec![
            BenchRow {
                p: 0.0,
                q: 0.0,
                m: 10,
                method: Method::HssLike,
                alpha: Some(1.3),
                status: "Converged".into(),
                outer_iterations: 27,
                inner_mean: None,
                total_iterations: 27,
                res: Some(9.4084e-6),
                res_1e6: Some(9.4084),
                cpu_s: 0.0123,
            },
            BenchRow {
                p: 0.0,
                q: 0.0,
                m: 10,
                method: Method::Picard,
                alpha: None,
                status: "Diverged".into(),
                outer_iterations: 14,
                inner_mean: None,
                total_iterations: 14,
                res: None,
                res_1e6: None,
                cpu_s: 0.001,
            },
            BenchRow {
                p: 0.0,
                q: 0.0,
                m: 10,
                method: Method::PicardHss,
                alpha: Some(1.1),
                status: "Converged".into(),
                outer_iterations: 5,
                inner_mean: Some(7.2),
                total_iterations: 36,
                res: Some(5.29e-6),
                res_1e6: Some(5.29),
                cpu_s: 0.002,
            },
        ]
    }

    #[test]
    fn csv_round_trip_is_lossless() {
        let rows = sample_rows();
        let text = to_csv(&rows);
        let back = from_csv(&text).unwrap();
        assert_eq!(rows, back);
        // and a second encode is byte-identical
        assert_eq!(text, to_csv(&back));
    }

    #[test]
    fn markdown_marks_non_converged_cells() {
        let md = to_markdown(&sample_rows());
        assert!(md.contains("| q=0 | picard | IT | -- |"));
        assert!(md.contains("| q=0 | picard-hss | IT_out | 5 |"));
        assert!(md.contains("IT_int | 7.2 |"));
        assert!(md.contains("m=10"));
    }

    #[test]
    fn bad_header_rejected() {
        assert!(from_csv("nope\n1,2").is_err());
    }
}
