//! Text tables and CSV output for sweeps and comparisons.
//!
//! CSV files have a header row, `.` decimals and LF line endings. Floats are
//! written in Rust's shortest round-trip form so a re-read value is bitwise
//! identical.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::pipeline::{ComparisonRow, RowAlphas, SweepResult};

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn flush<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(|e| Error::Csv(e.into()))
}

/// `alpha,value` rows.
pub fn write_sweep_csv<W: Write>(sweep: &SweepResult, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["alpha", "value"])?;
    for (a, v) in sweep.alphas.iter().zip(&sweep.values) {
        w.write_record([a.to_string(), v.to_string()])?;
    }
    flush(w)
}

/// `alpha,eme_r,eme_g,eme_b` rows; the three sweeps must share one grid.
pub fn write_channel_sweeps_csv<W: Write>(sweeps: &[SweepResult; 3], out: W) -> Result<()> {
    let alphas = &sweeps[0].alphas;
    if sweeps.iter().any(|s| &s.alphas != alphas) {
        return Err(Error::InvalidGrid(
            "channel sweeps use different grids".into(),
        ));
    }
    let mut w = csv_writer(out);
    w.write_record(["alpha", "eme_r", "eme_g", "eme_b"])?;
    for (i, a) in alphas.iter().enumerate() {
        w.write_record([
            a.to_string(),
            sweeps[0].values[i].to_string(),
            sweeps[1].values[i].to_string(),
            sweeps[2].values[i].to_string(),
        ])?;
    }
    flush(w)
}

/// Read back the curves of a sweep CSV: one `SweepResult` per value column.
pub fn read_sweep_csv<R: Read>(input: R) -> Result<Vec<SweepResult>> {
    let mut r = csv::Reader::from_reader(input);
    let columns = r.headers()?.len().saturating_sub(1);
    let mut alphas = Vec::new();
    let mut values = vec![Vec::new(); columns];
    for record in r.records() {
        let record = record?;
        let parse = |i: usize| {
            record
                .get(i)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| Error::InvalidGrid(format!("bad number in column {i}")))
        };
        alphas.push(parse(0)?);
        for (c, col) in values.iter_mut().enumerate() {
            col.push(parse(c + 1)?);
        }
    }
    values
        .into_iter()
        .map(|v| SweepResult::from_curve(alphas.clone(), v))
        .collect()
}

/// `method,ceme,alpha,alpha_r,alpha_g,alpha_b,eme_r,eme_g,eme_b`; fields that
/// do not apply to a row are left empty.
pub fn write_comparison_csv<W: Write>(rows: &[ComparisonRow], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record([
        "method", "ceme", "alpha", "alpha_r", "alpha_g", "alpha_b", "eme_r", "eme_g", "eme_b",
    ])?;
    for row in rows {
        let mut rec = vec![row.method.label().to_string(), row.ceme.to_string()];
        match row.alphas {
            RowAlphas::None => rec.extend(std::iter::repeat_n(String::new(), 4)),
            RowAlphas::Single(a) => {
                rec.push(a.to_string());
                rec.extend(std::iter::repeat_n(String::new(), 3));
            }
            RowAlphas::PerChannel(a) => {
                rec.push(String::new());
                rec.extend(a.iter().map(|v| v.to_string()));
            }
        }
        match row.eme {
            Some(e) => rec.extend(e.iter().map(|v| v.to_string())),
            None => rec.extend(std::iter::repeat_n(String::new(), 3)),
        }
        w.write_record(&rec)?;
    }
    flush(w)
}

/// Aligned plain-text table in the `CEME | Alpha | EME` layout, one line per
/// channel for the per-channel rows.
pub fn format_comparison_table(rows: &[ComparisonRow]) -> String {
    let mut lines: Vec<[String; 4]> =
        vec![["Method".into(), "CEME".into(), "Alpha".into(), "EME".into()]];
    for row in rows {
        let alphas: Vec<String> = match row.alphas {
            RowAlphas::None => vec![String::new()],
            RowAlphas::Single(a) => vec![format!("{a:.2}")],
            RowAlphas::PerChannel(a) => ["R", "G", "B"]
                .iter()
                .zip(a)
                .map(|(c, v)| format!("{c}: {v:.2}"))
                .collect(),
        };
        let emes: Vec<String> = match row.eme {
            Some(e) => ["R", "G", "B"]
                .iter()
                .zip(e)
                .map(|(c, v)| format!("{c}: {v:.4}"))
                .collect(),
            None => vec!["-".into()],
        };
        let height = alphas.len().max(emes.len());
        for i in 0..height {
            let first = i == 0;
            lines.push([
                if first {
                    row.method.label().to_string()
                } else {
                    String::new()
                },
                if first {
                    format!("{:.4}", row.ceme)
                } else {
                    String::new()
                },
                alphas.get(i).cloned().unwrap_or_default(),
                emes.get(i).cloned().unwrap_or_default(),
            ]);
        }
    }
    let widths: Vec<usize> = (0..4)
        .map(|c| {
            lines
                .iter()
                .map(|l| l[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for line in &lines {
        let cells: Vec<String> = line
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::Method;

    fn rows() -> Vec<ComparisonRow> {
        vec![
            ComparisonRow {
                method: Method::Original,
                ceme: 25.9192,
                alphas: RowAlphas::None,
                eme: Some([12.1228, 21.6909, 12.109]),
            },
            ComparisonRow {
                method: Method::QdftAlpha,
                ceme: 34.8768,
                alphas: RowAlphas::Single(0.97),
                eme: None,
            },
            ComparisonRow {
                method: Method::DftAlpha,
                ceme: 35.8855,
                alphas: RowAlphas::PerChannel([0.89, 0.97, 0.9]),
                eme: Some([28.1572, 30.4253, 29.3055]),
            },
        ]
    }

    #[test]
    fn sweep_csv_round_trip() {
        let sweep =
            SweepResult::from_curve(vec![0.8, 0.81, 0.82], vec![1.5, 2.0 / 3.0, 1.75]).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&sweep, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("alpha,value\n0.8,1.5\n"));
        assert!(!text.contains('\r'));
        let back = read_sweep_csv(buf.as_slice()).unwrap();
        assert_eq!(back, vec![sweep]);
    }

    #[test]
    fn channel_csv_layout() {
        let s = |v: [f64; 2]| SweepResult::from_curve(vec![0.9, 1.0], v.to_vec()).unwrap();
        let sweeps = [s([1.0, 2.0]), s([3.0, 1.0]), s([5.0, 5.0])];
        let mut buf = Vec::new();
        write_channel_sweeps_csv(&sweeps, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "alpha,eme_r,eme_g,eme_b\n0.9,1,3,5\n1,2,1,5\n"
        );
        let back = read_sweep_csv(buf.as_slice()).unwrap();
        let best: Vec<f64> = back.iter().map(|s| s.best_alpha).collect();
        assert_eq!(best, vec![1.0, 0.9, 1.0]);
    }

    #[test]
    fn comparison_csv_fields() {
        let mut buf = Vec::new();
        write_comparison_csv(&rows(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "method,ceme,alpha,alpha_r,alpha_g,alpha_b,eme_r,eme_g,eme_b"
        );
        assert_eq!(
            lines[1],
            "Original image,25.9192,,,,,12.1228,21.6909,12.109"
        );
        assert_eq!(lines[2], "QDFT alpha-rooting,34.8768,0.97,,,,,,");
        assert_eq!(
            lines[3],
            "DFT alpha-rooting,35.8855,,0.89,0.97,0.9,28.1572,30.4253,29.3055"
        );
    }

    #[test]
    fn table_is_aligned() {
        let table = format_comparison_table(&rows());
        let lines: Vec<&str> = table.lines().collect();
        assert!(lines[0].starts_with("Method"));
        assert!(lines[1].starts_with("Original image"));
        assert!(lines[1].contains("25.9192") && lines[1].contains("R: 12.1228"));
        assert!(lines[2].trim_start().starts_with("G: 21.6909"));
        let col = lines[0].find("CEME").unwrap();
        assert_eq!(&lines[1][col..col + 7], "25.9192");
    }
}
