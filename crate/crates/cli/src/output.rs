//! Trajectory records in CSV and JSON-lines form.

use std::io::{self, Write};

use curvebody::dynamics::Sample;

pub const FIELDS: [&str; 20] = [
    "t", "q1x", "q1y", "q1z", "q2x", "q2y", "q2z", "q1dotx", "q1doty", "q1dotz", "q2dotx", "q2doty",
    "q2dotz", "r", "qcx", "qcy", "qcz", "kinetic", "potential", "energy",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(format!("unknown format `{other}` (expected csv or jsonl)")),
        }
    }
}

pub fn csv_header() -> String {
    FIELDS.join(",")
}

/// Record values in [`FIELDS`] order.
pub fn record_values(s: &Sample<f64>) -> [f64; 20] {
    let st = &s.state;
    [
        s.t, st.v1[0], st.v1[1], st.v1[2], st.v2[0], st.v2[1], st.v2[2], st.w1[0], st.w1[1], st.w1[2],
        st.w2[0], st.w2[1], st.w2[2], s.r, s.qc[0], s.qc[1], s.qc[2], s.kinetic, s.potential,
        s.energy(),
    ]
}

/// 17 significant digits in scientific notation; parses back to the same
/// `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_line(s: &Sample<f64>) -> String {
    record_values(s).iter().map(|x| format_number(*x)).collect::<Vec<_>>().join(",")
}

pub fn jsonl_line(s: &Sample<f64>) -> String {
    let body = FIELDS
        .iter()
        .zip(record_values(s))
        .map(|(k, v)| format!("\"{k}\":{}", format_number(v)))
        .collect::<Vec<_>>()
        .join(",");
    format!("{{{body}}}")
}

/// Streams records to `out`, header first for CSV.
pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(mut out: W, format: Format) -> io::Result<Self> {
        if format == Format::Csv {
            writeln!(out, "{}", csv_header())?;
        }
        Ok(Self { out, format })
    }

    pub fn write(&mut self, s: &Sample<f64>) -> io::Result<()> {
        match self.format {
            Format::Csv => writeln!(self.out, "{}", csv_line(s)),
            Format::Jsonl => writeln!(self.out, "{}", jsonl_line(s)),
        }
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}
