//! OHLC CSV ingestion and plot-ready output.

use std::fmt;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::HurstError;
use crate::estimators::{HurstEstimate, Method};
use crate::rolling::RollingResult;
use crate::series::PriceSeries;

const DATE_FORMAT: &str = "%Y-%m-%d";

/// Significant digits of every number in emitted records.
pub const RECORD_DIGITS: usize = 6;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Hurst(#[from] HurstError),

    #[error("missing column {0:?}")]
    MissingColumn(String),

    #[error("invalid schema: {0}")]
    Schema(String),

    #[error("line {line}: {message}")]
    Row { line: u64, message: String },

    #[error("line {line}: date {current} does not follow {previous}")]
    Ordering {
        line: u64,
        previous: NaiveDate,
        current: NaiveDate,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl IoError {
    pub fn kind(&self) -> &'static str {
        match self {
            IoError::Hurst(e) => e.kind(),
            IoError::MissingColumn(_) => "missing_column",
            IoError::Schema(_) => "schema",
            IoError::Row { .. } => "row",
            IoError::Ordering { .. } => "ordering",
            IoError::Config(_) => "config",
            IoError::Io(_) => "io",
            IoError::Csv(_) => "csv",
            IoError::Json(_) => "json",
        }
    }
}

/// Column names and delimiter of an OHLC input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvSchema {
    pub date_column: String,
    pub close_column: String,
    pub high_column: String,
    pub low_column: String,
    pub delimiter: char,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self {
            date_column: "date".to_string(),
            close_column: "close".to_string(),
            high_column: "high".to_string(),
            low_column: "low".to_string(),
            delimiter: ',',
        }
    }
}

impl CsvSchema {
    fn columns(&self) -> [&str; 4] {
        [
            &self.date_column,
            &self.close_column,
            &self.high_column,
            &self.low_column,
        ]
    }

    pub fn validate(&self) -> Result<(), IoError> {
        let cols = self.columns();
        for i in 0..cols.len() {
            for j in i + 1..cols.len() {
                if cols[i] == cols[j] {
                    return Err(IoError::Schema(format!("column {:?} used twice", cols[i])));
                }
            }
        }
        if !self.delimiter.is_ascii() {
            return Err(IoError::Schema(format!(
                "delimiter {:?} must be a single ASCII character",
                self.delimiter
            )));
        }
        Ok(())
    }
}

pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<PriceSeries, IoError> {
    let file = std::fs::File::open(path)?;
    read_prices(file, schema)
}

/// Parses OHLC rows from any reader. Dates must be ISO-8601 and strictly
/// increasing; rows with `high < low` are kept and flagged.
pub fn read_prices<R: std::io::Read>(reader: R, schema: &CsvSchema) -> Result<PriceSeries, IoError> {
    schema.validate()?;
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(schema.delimiter as u8)
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let mut idx = [0usize; 4];
    for (slot, name) in idx.iter_mut().zip(schema.columns()) {
        *slot = headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IoError::MissingColumn(name.to_string()))?;
    }

    let (mut dates, mut close, mut high, mut low) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let cell = |i: usize| -> Result<&str, IoError> {
            record.get(idx[i]).ok_or_else(|| IoError::Row {
                line,
                message: format!("missing field {:?}", schema.columns()[i]),
            })
        };
        let date_text = cell(0)?;
        let date = NaiveDate::parse_from_str(date_text, DATE_FORMAT).map_err(|e| IoError::Row {
            line,
            message: format!("bad date {date_text:?}: {e}"),
        })?;
        if let Some(&previous) = dates.last() {
            if date <= previous {
                return Err(IoError::Ordering {
                    line,
                    previous,
                    current: date,
                });
            }
        }
        let mut prices = [0.0; 3];
        for (k, p) in prices.iter_mut().enumerate() {
            let text = cell(k + 1)?;
            *p = text.parse::<f64>().map_err(|_| IoError::Row {
                line,
                message: format!("bad number {text:?} in column {:?}", schema.columns()[k + 1]),
            })?;
        }
        dates.push(date);
        close.push(prices[0]);
        high.push(prices[1]);
        low.push(prices[2]);
    }
    if dates.is_empty() {
        return Err(HurstError::EmptyInput("no data rows".to_string()).into());
    }
    Ok(PriceSeries::new(dates, close, high, low)?)
}

/// Writes a price series in the default schema at full precision.
pub fn emit_prices(prices: &PriceSeries) -> String {
    let mut out = String::from("date,close,high,low\n");
    for i in 0..prices.len() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            prices.dates()[i].format(DATE_FORMAT),
            prices.close()[i],
            prices.high()[i],
            prices.low()[i]
        ));
    }
    out
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("formatted float parses")
}

/// One row of the time-varying Hurst series. Gap windows carry `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HurstRecord {
    pub anchor_date: NaiveDate,
    pub h: Option<f64>,
    pub r_squared: Option<f64>,
    pub method: Method,
}

impl HurstRecord {
    pub fn new(anchor_date: NaiveDate, estimate: Result<&HurstEstimate, Method>) -> Self {
        match estimate {
            Ok(e) => Self {
                anchor_date,
                h: Some(round_sig(e.h, RECORD_DIGITS)),
                r_squared: Some(round_sig(e.r_squared, RECORD_DIGITS)),
                method: e.method,
            },
            Err(method) => Self {
                anchor_date,
                h: None,
                r_squared: None,
                method,
            },
        }
    }
}

pub fn records_from(result: &RollingResult) -> Vec<HurstRecord> {
    result
        .anchors
        .iter()
        .zip(&result.estimates)
        .map(|(&anchor, e)| HurstRecord::new(anchor, e.as_ref().map_err(|_| result.method)))
        .collect()
}

struct Cell(Option<f64>);

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{}", round_sig(v, RECORD_DIGITS)),
            None => Ok(()),
        }
    }
}

pub const RECORD_HEADER: &str = "anchor_date,h,r_squared,method";

pub fn emit_records_csv(records: &[HurstRecord]) -> String {
    let mut out = format!("{RECORD_HEADER}\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.anchor_date.format(DATE_FORMAT),
            Cell(r.h),
            Cell(r.r_squared),
            r.method
        ));
    }
    out
}

pub fn parse_records_csv(text: &str) -> Result<Vec<HurstRecord>, IoError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == RECORD_HEADER => {}
        _ => return Err(IoError::Schema(format!("expected header {RECORD_HEADER:?}"))),
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        let line_no = i as u64 + 1;
        let row_err = |message: String| IoError::Row {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(row_err(format!("expected 4 fields, got {}", fields.len())));
        }
        let number = |s: &str| -> Result<Option<f64>, IoError> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse()
                    .map(Some)
                    .map_err(|_| row_err(format!("bad number {s:?}")))
            }
        };
        records.push(HurstRecord {
            anchor_date: NaiveDate::parse_from_str(fields[0], DATE_FORMAT)
                .map_err(|e| row_err(format!("bad date {:?}: {e}", fields[0])))?,
            h: number(fields[1])?,
            r_squared: number(fields[2])?,
            method: fields[3].parse()?,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schema() -> CsvSchema {
        CsvSchema::default()
    }

    #[test]
    fn loads_rows_and_flags_inverted_range() {
        let text = "date,open,high,low,close\n\
                    2020-01-01,1,105,95,100\n\
                    2020-01-02,1,90,100,98\n\
                    2020-01-05,1,110,97,101\n";
        let p = read_prices(text.as_bytes(), &schema()).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.close(), &[100.0, 98.0, 101.0]);
        let q = p.quality();
        assert_eq!(q.anomalies, 1);
        assert_eq!(q.first_date, NaiveDate::from_ymd_opt(2020, 1, 1));
        assert_eq!(q.last_date, NaiveDate::from_ymd_opt(2020, 1, 5));
    }

    #[test]
    fn header_only_is_empty_input() {
        let err = read_prices("date,close,high,low\n".as_bytes(), &schema()).unwrap_err();
        assert!(matches!(err, IoError::Hurst(HurstError::EmptyInput(_))));
    }

    #[test]
    fn missing_column_is_named() {
        let err = read_prices("date,close,high\n2020-01-01,1,1\n".as_bytes(), &schema()).unwrap_err();
        match err {
            IoError::MissingColumn(c) => assert_eq!(c, "low"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_cell_reports_line() {
        let text = "date,close,high,low\n2020-01-01,1,1,1\n2020-01-02,abc,1,1\n";
        match read_prices(text.as_bytes(), &schema()).unwrap_err() {
            IoError::Row { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let text = "date,close,high,low\n02/01/2020,1,1,1\n";
        assert!(matches!(
            read_prices(text.as_bytes(), &schema()).unwrap_err(),
            IoError::Row { line: 2, .. }
        ));
    }

    #[test]
    fn non_increasing_dates_report_both() {
        let text = "date,close,high,low\n2020-01-02,1,1,1\n2020-01-01,1,1,1\n";
        match read_prices(text.as_bytes(), &schema()).unwrap_err() {
            IoError::Ordering {
                line,
                previous,
                current,
            } => {
                assert_eq!(line, 3);
                assert_eq!(previous, NaiveDate::from_ymd_opt(2020, 1, 2).unwrap());
                assert_eq!(current, NaiveDate::from_ymd_opt(2020, 1, 1).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn custom_schema_and_delimiter() {
        let s = CsvSchema {
            date_column: "Date".into(),
            close_column: "Adj Close".into(),
            high_column: "High".into(),
            low_column: "Low".into(),
            delimiter: ';',
        };
        let text = "Date;High;Low;Adj Close\n2021-05-01;3;1;2\n2021-05-02;4;2;3\n";
        let p = read_prices(text.as_bytes(), &s).unwrap();
        assert_eq!(p.close(), &[2.0, 3.0]);
        assert_eq!(p.high(), &[3.0, 4.0]);
    }

    #[test]
    fn duplicate_schema_columns_rejected() {
        let s = CsvSchema {
            high_column: "close".into(),
            ..CsvSchema::default()
        };
        assert!(matches!(s.validate(), Err(IoError::Schema(_))));
    }

    #[test]
    fn sig_digit_rounding() {
        assert_eq!(round_sig(0.569812345, 6), 0.569812);
        assert_eq!(round_sig(-123456.789, 6), -123457.0);
        assert_eq!(round_sig(0.0, 6), 0.0);
        assert_eq!(round_sig(1.0, 6), 1.0);
    }

    #[test]
    fn empty_records() {
        assert_eq!(emit_records_csv(&[]), format!("{RECORD_HEADER}\n"));
        assert!(parse_records_csv(&emit_records_csv(&[])).unwrap().is_empty());
    }

    #[test]
    fn one_record_four_fields() {
        let r = HurstRecord {
            anchor_date: NaiveDate::from_ymd_opt(2011, 8, 19).unwrap(),
            h: Some(0.56981234),
            r_squared: Some(0.99),
            method: Method::Dfa,
        };
        let text = emit_records_csv(&[r]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "2011-08-19,0.569812,0.99,dfa");
        assert_eq!(lines[1].split(',').count(), 4);
    }

    #[test]
    fn gap_record_has_empty_cells() {
        let r = HurstRecord {
            anchor_date: NaiveDate::from_ymd_opt(2011, 8, 19).unwrap(),
            h: None,
            r_squared: None,
            method: Method::RsMultiscale,
        };
        let text = emit_records_csv(std::slice::from_ref(&r));
        assert_eq!(text.lines().nth(1).unwrap(), "2011-08-19,,,rs");
        assert_eq!(parse_records_csv(&text).unwrap(), vec![r]);
    }
}
