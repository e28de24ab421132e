use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::ReportRow;
use crate::corpus::Engine;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::voting::Provenance;

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    truth_region: String,
    engine: String,
    provenance: String,
    cutoff: usize,
    mean_ndcg: String,
    n_queries: usize,
    better_than_engine: bool,
}

/// One block per engine: engine row first, then the `truth_region` community
/// row, then the other regions in their original order. Values that beat the
/// engine carry a trailing `*`.
pub fn render_table<T: Real>(rows: &[ReportRow<T>], truth_region: Option<&str>) -> String {
    let cutoffs: BTreeSet<usize> = rows.iter().map(|r| r.cutoff).collect();
    let mut engines: Vec<&Engine> = Vec::new();
    for r in rows {
        if !engines.contains(&&r.engine) {
            engines.push(&r.engine);
        }
    }
    let mut out = String::new();
    if let Some(region) = truth_region {
        let _ = writeln!(out, "Ranking performance comparison for {region}");
    }
    for engine in engines {
        let mut provs: Vec<&Provenance> = Vec::new();
        for r in rows.iter().filter(|r| &r.engine == engine) {
            if !provs.contains(&&r.provenance) {
                provs.push(&r.provenance);
            }
        }
        provs.sort_by_key(|p| match p {
            Provenance::Engine => 0,
            Provenance::Ctvm(reg) if Some(reg.as_str()) == truth_region => 1,
            Provenance::Ctvm(_) => 2,
        });
        let _ = write!(out, "{:<16}", engine.to_string());
        for c in &cutoffs {
            let _ = write!(out, "{:>10}", format!("NDCG@{c}"));
        }
        out.push('\n');
        for p in provs {
            let _ = write!(out, "{:<16}", p.to_string());
            for c in &cutoffs {
                let cell = rows
                    .iter()
                    .find(|r| &r.engine == engine && &r.provenance == p && r.cutoff == *c)
                    .map(|r| {
                        format!(
                            "{:.4}{}",
                            r.mean_ndcg.to_f64_lossy(),
                            if r.better_than_engine { "*" } else { " " }
                        )
                    })
                    .unwrap_or_else(|| "-".to_string());
                let _ = write!(out, "{cell:>10}");
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out.push_str("* denotes better than corresponding engine news ranking\n");
    out
}

/// Comma-separated rows with header
/// `truth_region,engine,provenance,cutoff,mean_ndcg,n_queries,better_than_engine`.
/// Groups are (truth region, rows); the region may be empty.
pub fn write_report_csv<'a, T, W, I>(out: W, groups: I) -> Result<()>
where
    T: Real,
    W: Write,
    I: IntoIterator<Item = (&'a str, &'a [ReportRow<T>])>,
{
    let mut w = csv::Writer::from_writer(out);
    for (region, r) in groups
        .into_iter()
        .flat_map(|(g, rows)| rows.iter().map(move |r| (g, r)))
    {
        w.serialize(CsvRow {
            truth_region: region.to_string(),
            engine: r.engine.to_string(),
            provenance: r.provenance.to_string(),
            cutoff: r.cutoff,
            mean_ndcg: r.mean_ndcg.to_string(),
            n_queries: r.query_count,
            better_than_engine: r.better_than_engine,
        })
        .map_err(|e| Error::input(format!("report csv: {e}")))?;
    }
    w.flush().map_err(|e| Error::io("writing report", e))
}

/// Rows grouped by truth region, in file order.
pub fn read_report_csv<T: Real, R: Read>(input: R) -> Result<Vec<(String, Vec<ReportRow<T>>)>> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut out: Vec<(String, Vec<ReportRow<T>>)> = Vec::new();
    for rec in rdr.deserialize::<CsvRow>() {
        let rec = rec.map_err(|e| Error::input(format!("report csv: {e}")))?;
        let mean: f64 = rec
            .mean_ndcg
            .parse()
            .map_err(|e| Error::input(format!("bad mean_ndcg `{}`: {e}", rec.mean_ndcg)))?;
        let row = ReportRow {
            engine: Engine::from(rec.engine),
            provenance: rec.provenance.parse()?,
            cutoff: rec.cutoff,
            mean_ndcg: T::from_f64_lossy(mean),
            query_count: rec.n_queries,
            better_than_engine: rec.better_than_engine,
        };
        match out.last_mut() {
            Some((region, rows)) if *region == rec.truth_region => rows.push(row),
            _ => out.push((rec.truth_region, vec![row])),
        }
    }
    Ok(out)
}
