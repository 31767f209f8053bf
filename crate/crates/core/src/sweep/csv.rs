use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::report::CorrelationReport;

use super::config::Column;
use super::run::RowResult;

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes the header and one LF-terminated row per result. Error rows keep
/// `r` and fill every other column with NaN.
pub fn write_csv<W: Write>(out: W, columns: &[Column], rows: &[RowResult]) -> Result<()> {
    let mut w = ::csv::WriterBuilder::new()
        .terminator(::csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(columns.iter().map(|c| c.header()))?;
    for row in rows {
        let record: Vec<String> = match row {
            Ok(rep) => columns.iter().map(|c| fmt(c.get(rep))).collect(),
            Err((r, _)) => columns
                .iter()
                .map(|c| fmt(if *c == Column::R { *r } else { f64::NAN }))
                .collect(),
        };
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Parsed CSV: columns in file order and one value vector per row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, c: Column) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|&x| x == c)?;
        Some(self.rows.iter().map(|row| row[i]).collect())
    }
}

pub fn parse_csv<R: Read>(input: R) -> Result<CsvTable> {
    let mut rd = ::csv::Reader::from_reader(input);
    let columns = rd
        .headers()?
        .iter()
        .map(|h| Column::from_header(h).ok_or_else(|| Error::Csv(format!("unknown column `{h}`"))))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let vals = rec
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| Error::Csv(format!("bad value `{f}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(vals);
    }
    Ok(CsvTable { columns, rows })
}

/// Reports from a CSV that carries every column.
pub fn parse_reports<R: Read>(input: R) -> Result<Vec<CorrelationReport>> {
    let table = parse_csv(input)?;
    if let Some(c) = Column::ALL.iter().find(|c| !table.columns.contains(c)) {
        return Err(Error::Csv(format!("missing column `{}`", c.header())));
    }
    Ok(table
        .rows
        .iter()
        .map(|vals| {
            let mut rep = CorrelationReport::from_measures(0.0, &Default::default(), 0.0, 0.0);
            for (c, &v) in table.columns.iter().zip(vals) {
                c.set(&mut rep, v);
            }
            rep
        })
        .collect())
}
