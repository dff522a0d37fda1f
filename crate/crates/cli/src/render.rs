use runlab::grammar::MPoly;
use runlab::identities::CheckReport;
use runlab::permcore::StatDistribution;
use runlab::triangles::Triangle;
use serde_json::json;

use crate::OutputFormat;

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

fn json_line(v: serde_json::Value) -> String {
    format!("{v}\n")
}

pub fn triangle(t: &Triangle, format: OutputFormat) -> String {
    let kind = t.kind();
    match format {
        OutputFormat::Plain => t
            .rows()
            .map(|(n, row)| {
                let cells: Vec<String> = row[kind.k_start(n).min(row.len())..]
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
                cells.join(" ") + "\n"
            })
            .collect(),
        OutputFormat::Json => {
            let rows: Vec<_> = t
                .rows()
                .map(|(n, row)| json!({"n": n, "coeffs": row.iter().map(|c| c.to_string()).collect::<Vec<_>>()}))
                .collect();
            json_line(json!({"triangle": kind.cli_name(), "rows": rows}))
        }
        OutputFormat::Csv => csv_table(
            &["n", "k", "value"],
            t.rows().flat_map(|(n, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(k, c)| vec![n.to_string(), k.to_string(), c.to_string()])
            }),
        ),
    }
}

pub fn mpoly(p: &MPoly, format: OutputFormat) -> String {
    match format {
        OutputFormat::Plain => format!("{p}\n"),
        OutputFormat::Json => json_line(p.to_json()),
        OutputFormat::Csv => csv_table(
            &["coeff", "monomial"],
            p.terms().map(|(m, c)| vec![c.to_string(), m.to_string()]),
        ),
    }
}

pub fn distribution(d: &StatDistribution, format: OutputFormat) -> String {
    match format {
        OutputFormat::Plain => format!("{d}\n"),
        OutputFormat::Json => {
            let counts: Vec<_> = d
                .counts
                .iter()
                .map(|(k, c)| json!({"k": k, "count": c.to_string()}))
                .collect();
            json_line(json!({"stat": d.stat.cli_name(), "n": d.n, "counts": counts}))
        }
        OutputFormat::Csv => csv_table(
            &["k", "count"],
            d.counts
                .iter()
                .map(|(k, c)| vec![k.to_string(), c.to_string()]),
        ),
    }
}

pub fn reports(reports: &[CheckReport], format: OutputFormat) -> String {
    let failed = reports.iter().filter(|r| !r.passed).count();
    match format {
        OutputFormat::Plain => {
            let mut out: String = reports.iter().map(|r| format!("{r}\n")).collect();
            out.push_str(&format!(
                "{} passed, {failed} failed\n",
                reports.len() - failed
            ));
            out
        }
        OutputFormat::Json => json_line(serde_json::to_value(reports).expect("reports serialize")),
        OutputFormat::Csv => csv_table(
            &["identity", "params", "passed", "n", "point", "lhs", "rhs"],
            reports.iter().map(|r| {
                let params = serde_json::to_string(&r.params).expect("params serialize");
                let (n, point, lhs, rhs) = match &r.first_failure {
                    Some(f) => (
                        f.n.to_string(),
                        f.point.clone(),
                        f.lhs.clone(),
                        f.rhs.clone(),
                    ),
                    None => Default::default(),
                };
                vec![
                    r.identity_id.clone(),
                    params,
                    r.passed.to_string(),
                    n,
                    point,
                    lhs,
                    rhs,
                ]
            }),
        ),
    }
}
