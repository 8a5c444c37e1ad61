//! CSV and JSON input and output.
//!
//! Floats are written with Rust's shortest round-trip formatting, so every
//! value read back parses to the identical `f64`.

use std::fmt::Display;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bootstrap::BootstrapRun;
use crate::empirical::Sample;
use crate::error::{Error, Result};
use crate::inference::{Band, BandKind};
use crate::makarov::BoundPair;
use crate::simulate::PowerCurve;
use crate::valuemap::{Grid, ValueFunction};

pub const SCHEMA_VERSION: u32 = 1;

/// Column of an input CSV: a 0-based index or a header name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl Default for ColumnSelector {
    fn default() -> Self {
        ColumnSelector::Index(0)
    }
}

impl FromStr for ColumnSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::param("empty column selector"));
        }
        Ok(match s.parse::<usize>() {
            Ok(k) => ColumnSelector::Index(k),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

impl Display for ColumnSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnSelector::Index(k) => write!(f, "{k}"),
            ColumnSelector::Name(n) => f.write_str(n),
        }
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader)
}

fn parse_error(source: &str, line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        path: source.to_string(),
        line,
        message: message.into(),
    }
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn read_records<R: Read>(reader: R, source: &str) -> Result<Vec<csv::StringRecord>> {
    let mut out = Vec::new();
    for rec in csv_reader(reader).records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(source, line, e.to_string())
        })?;
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        out.push(rec);
    }
    Ok(out)
}

/// Read one numeric column as a sample.
///
/// With a name selector the first row must be a header. With an index
/// selector a first row whose selected field is not a number is taken as a
/// header.
pub fn read_sample_from<R: Read>(reader: R, source: &str, column: &ColumnSelector, label: &str) -> Result<Sample> {
    let records = read_records(reader, source)?;
    let Some(first) = records.first() else {
        return Err(parse_error(source, 1, "no data rows"));
    };
    let (index, skip) = match column {
        ColumnSelector::Name(name) => {
            let k = first.iter().position(|h| h == name).ok_or_else(|| {
                parse_error(source, record_line(first), format!("no column named '{name}' in header"))
            })?;
            (k, 1)
        }
        ColumnSelector::Index(k) => {
            let header = first.get(*k).is_some_and(|f| f.parse::<f64>().is_err());
            (*k, usize::from(header))
        }
    };
    let mut values = Vec::with_capacity(records.len());
    for rec in &records[skip..] {
        let line = record_line(rec);
        let field = rec
            .get(index)
            .ok_or_else(|| parse_error(source, line, format!("missing column {column}")))?;
        let v: f64 = field
            .parse()
            .map_err(|_| parse_error(source, line, format!("'{field}' is not a number")))?;
        if !v.is_finite() {
            return Err(parse_error(source, line, format!("non-finite value '{field}'")));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(parse_error(source, record_line(first), "no data rows"));
    }
    Sample::new(values, label)
}

pub fn read_sample(path: &Path, column: &ColumnSelector, label: &str) -> Result<Sample> {
    read_sample_from(open(path)?, &path.display().to_string(), column, label)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io {
        path: "<output>".into(),
        message: e.to_string(),
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Serialization(e.to_string())
}

fn write_rows<W: Write>(out: W, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

/// `x,lower,upper` rows.
pub fn write_bounds_csv<W: Write>(out: W, bounds: &BoundPair) -> Result<()> {
    let rows = bounds
        .grid
        .points()
        .iter()
        .zip(bounds.lower.values().iter().zip(bounds.upper.values()))
        .map(|(x, (l, u))| vec![x.to_string(), l.to_string(), u.to_string()]);
    write_rows(out, &["x", "lower", "upper"], rows)
}

/// Bound functions read back from [`write_bounds_csv`] output. The grid step
/// is taken as the spacing of the first two points.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsTable {
    pub grid: Grid,
    pub lower: ValueFunction,
    pub upper: ValueFunction,
}

pub fn read_bounds_csv<R: Read>(reader: R, source: &str) -> Result<BoundsTable> {
    let records = read_records(reader, source)?;
    let mut cols: [Vec<f64>; 3] = Default::default();
    for rec in records.iter().skip(1) {
        let line = record_line(rec);
        if rec.len() != 3 {
            return Err(parse_error(source, line, format!("expected 3 fields, found {}", rec.len())));
        }
        for (k, field) in rec.iter().enumerate() {
            let v = field
                .parse()
                .map_err(|_| parse_error(source, line, format!("'{field}' is not a number")))?;
            cols[k].push(v);
        }
    }
    let [xs, lower, upper] = cols;
    if xs.len() < 2 {
        return Err(parse_error(source, 1, "need at least two grid rows"));
    }
    let step = xs[1] - xs[0];
    let grid = Grid::new(xs, step)?;
    Ok(BoundsTable {
        lower: ValueFunction::new(grid.clone(), lower)?,
        upper: ValueFunction::new(grid.clone(), upper)?,
        grid,
    })
}

pub fn write_bounds_json<W: Write>(out: W, bounds: &BoundPair) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        x: f64,
        lower: f64,
        upper: f64,
    }
    #[derive(Serialize)]
    struct Report {
        schema_version: u32,
        n0: usize,
        n1: usize,
        grid_step: f64,
        bounds: Vec<Row>,
    }
    let rows = bounds
        .grid
        .points()
        .iter()
        .zip(bounds.lower.values().iter().zip(bounds.upper.values()))
        .map(|(&x, (&lower, &upper))| Row { x, lower, upper })
        .collect();
    write_json(
        out,
        &Report {
            schema_version: SCHEMA_VERSION,
            n0: bounds.n0,
            n1: bounds.n1,
            grid_step: bounds.grid.step(),
            bounds: rows,
        },
    )
}

/// `tau,lower_q,upper_q` rows.
pub fn write_quantile_bounds_csv<W: Write>(out: W, taus: &[f64], lower_q: &[f64], upper_q: &[f64]) -> Result<()> {
    let rows = taus
        .iter()
        .zip(lower_q.iter().zip(upper_q))
        .map(|(t, (l, u))| vec![t.to_string(), l.to_string(), u.to_string()]);
    write_rows(out, &["tau", "lower_q", "upper_q"], rows)
}

/// `x,lo,center,hi` rows; combined bands carry both centers.
pub fn write_band_csv<W: Write>(out: W, band: &Band) -> Result<()> {
    let xs = band.grid.points();
    match (&band.kind, &band.center_upper) {
        (BandKind::Combined, Some(upper)) => {
            let rows = (0..xs.len()).map(|k| {
                vec![
                    xs[k].to_string(),
                    band.lo[k].to_string(),
                    band.center[k].to_string(),
                    upper[k].to_string(),
                    band.hi[k].to_string(),
                ]
            });
            write_rows(out, &["x", "lo", "lower", "upper", "hi"], rows)
        }
        _ => {
            let rows = (0..xs.len()).map(|k| {
                vec![
                    xs[k].to_string(),
                    band.lo[k].to_string(),
                    band.center[k].to_string(),
                    band.hi[k].to_string(),
                ]
            });
            write_rows(out, &["x", "lo", "center", "hi"], rows)
        }
    }
}

/// `bound,replicate,stream_id,value` rows for diagnostics.
pub fn write_replicates_csv<W: Write>(out: W, runs: &[(&str, &BootstrapRun)]) -> Result<()> {
    let rows = runs.iter().flat_map(|(label, run)| {
        run.replicates
            .iter()
            .zip(&run.stream_ids)
            .enumerate()
            .map(move |(r, (v, id))| vec![label.to_string(), (r + 1).to_string(), format!("{id:016x}"), v.to_string()])
    });
    write_rows(out, &["bound", "replicate", "stream_id", "value"], rows)
}

/// `delta,reject_rate,se` rows.
pub fn write_power_curve_csv<W: Write>(out: W, curve: &PowerCurve) -> Result<()> {
    let rows = (0..curve.deltas.len()).map(|k| {
        vec![
            curve.deltas[k].to_string(),
            curve.reject_rates[k].to_string(),
            curve.standard_errors[k].to_string(),
        ]
    });
    write_rows(out, &["delta", "reject_rate", "se"], rows)
}

/// Pretty-printed JSON followed by a newline.
pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Error::Serialization(e.to_string()))?;
    out.write_all(b"\n").map_err(io_err)
}

/// Wraps any result payload with the schema version.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Versioned<T> {
    pub schema_version: u32,
    #[serde(flatten)]
    pub payload: T,
}

impl<T> Versioned<T> {
    pub fn new(payload: T) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            payload,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empirical::ecdf_build;
    use crate::makarov::bounds;

    fn sample_from(text: &str, col: &str) -> Result<Sample> {
        read_sample_from(text.as_bytes(), "mem.csv", &col.parse().unwrap(), "s")
    }

    #[test]
    fn reads_columns_and_headers() {
        let s = sample_from("1.5\n2\n-3e1\n", "0").unwrap();
        assert_eq!(s.values(), &[1.5, 2.0, -30.0]);
        let s = sample_from("id,earn\n1,10.0\n2,0\n", "earn").unwrap();
        assert_eq!(s.values(), &[10.0, 0.0]);
        let s = sample_from("id,earn\n1,10.0\n2,0\n", "1").unwrap();
        assert_eq!(s.values(), &[10.0, 0.0]);
        let s = sample_from("# comment\n\n4\n5\n", "0").unwrap();
        assert_eq!(s.values(), &[4.0, 5.0]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = sample_from("x\n1\n2\nabc\n", "0").unwrap_err();
        match err {
            Error::Parse { line, ref path, .. } => {
                assert_eq!(line, 4);
                assert_eq!(path, "mem.csv");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("line 4"));
        assert!(matches!(sample_from("a,b\n1\n", "b"), Err(Error::Parse { line: 2, .. })));
        assert!(sample_from("", "0").is_err());
        assert!(sample_from("x\n", "0").is_err());
        assert!(sample_from("1\ninf\n", "0").is_err());
        assert!(sample_from("a\n1\n", "zzz").is_err());
    }

    #[test]
    fn missing_file_names_path() {
        let err = read_sample(Path::new("/no/such/file.csv"), &ColumnSelector::default(), "t").unwrap_err();
        assert!(err.to_string().contains("/no/such/file.csv"));
    }

    #[test]
    fn bounds_round_trip_bit_exact() {
        let x1 = Sample::new(vec![0.1, 0.7, 1.3, 2.9, 0.33333333333333331], "t").unwrap();
        let x0 = Sample::new(vec![0.2, 1.0 / 3.0, 1.1, 2.0], "c").unwrap();
        let grid = Grid::uniform(-3.0, 0.1, 70).unwrap();
        let b = bounds(&ecdf_build(&x1), &ecdf_build(&x0), &grid);
        let mut buf = Vec::new();
        write_bounds_csv(&mut buf, &b).unwrap();
        let back = read_bounds_csv(buf.as_slice(), "mem").unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(back.grid.points()), bits(b.grid.points()));
        assert_eq!(bits(back.lower.values()), bits(b.lower.values()));
        assert_eq!(bits(back.upper.values()), bits(b.upper.values()));

        let mut json = Vec::new();
        write_bounds_json(&mut json, &b).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(v["schema_version"], 1);
        for (k, row) in v["bounds"].as_array().unwrap().iter().enumerate() {
            assert_eq!(row["x"].as_f64().unwrap().to_bits(), b.grid.points()[k].to_bits());
            assert_eq!(row["lower"].as_f64().unwrap().to_bits(), b.lower.values()[k].to_bits());
        }
    }

    #[test]
    fn versioned_flattens() {
        #[derive(Serialize)]
        struct P {
            a: f64,
        }
        let s = serde_json::to_string(&Versioned::new(P { a: 0.1 })).unwrap();
        assert_eq!(s, r#"{"schema_version":1,"a":0.1}"#);
    }
}
