//! File formats read and written by the command-line tool.
//!
//! JSON:
//! - pmf: `{"symbols": [...], "probs": [...]}`
//! - joint pmf: `{"x_symbols": [...], "y_symbols": [...], "probs": [[...], ...]}`
//! - transition matrix: `{"inputs": [...], "outputs": [...], "rows": [[...], ...]}`
//!
//! Symbol labels may be strings or numbers; numbers are kept in their JSON
//! spelling. CSV files carry a header row: `t,x` for signals, `f,S,N` for
//! spectra, `x,y` for channel samples.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::channel::TransitionMatrix;
use crate::discrete::{DiscretePmf, JointPmf};
use crate::error::{Error, Result};
use crate::estimation::ChannelSamples;
use crate::spectral::{SampledSignal, SpectrumPair};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Text(String),
    Number(serde_json::Number),
}

impl From<Label> for String {
    fn from(l: Label) -> String {
        match l {
            Label::Text(s) => s,
            Label::Number(n) => n.to_string(),
        }
    }
}

fn labels(v: Vec<Label>) -> Vec<String> {
    v.into_iter().map(String::from).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmfFile {
    pub symbols: Vec<Label>,
    pub probs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointFile {
    pub x_symbols: Vec<Label>,
    pub y_symbols: Vec<Label>,
    pub probs: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionFile {
    pub inputs: Vec<Label>,
    pub outputs: Vec<Label>,
    pub rows: Vec<Vec<f64>>,
}

pub fn parse_pmf(json: &str) -> Result<DiscretePmf> {
    let f: PmfFile = serde_json::from_str(json)?;
    DiscretePmf::new(labels(f.symbols), f.probs)
}

pub fn parse_joint(json: &str) -> Result<JointPmf> {
    let f: JointFile = serde_json::from_str(json)?;
    JointPmf::new(labels(f.x_symbols), labels(f.y_symbols), f.probs)
}

pub fn parse_transition(json: &str) -> Result<TransitionMatrix> {
    let f: TransitionFile = serde_json::from_str(json)?;
    TransitionMatrix::new(labels(f.inputs), labels(f.outputs), f.rows)
}

pub fn pmf_to_json(pmf: &DiscretePmf) -> String {
    let f = PmfFile {
        symbols: pmf.symbols().iter().cloned().map(Label::Text).collect(),
        probs: pmf.probs().to_vec(),
    };
    serde_json::to_string(&f).expect("pmf serializes")
}

fn read_columns<R: Read>(reader: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let found: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if found != header {
        return Err(Error::validation(format!(
            "expected CSV header {:?}, found {:?}",
            header.join(","),
            found.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = rec
            .iter()
            .zip(header)
            .map(|(field, name)| {
                field.parse::<f64>().map_err(|_| {
                    Error::validation(format!(
                        "row {}: field {name} = {field:?} is not a number",
                        line + 1
                    ))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != header.len() {
            return Err(Error::validation(format!("row {} is short", line + 1)));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Reads a `t,x` signal; the sample rate comes from the time step.
pub fn read_signal_csv<R: Read>(reader: R) -> Result<SampledSignal> {
    let rows = read_columns(reader, &["t", "x"])?;
    let pairs: Vec<(f64, f64)> = rows.into_iter().map(|r| (r[0], r[1])).collect();
    SampledSignal::from_timed(&pairs)
}

pub fn write_signal_csv<W: Write>(writer: W, sig: &SampledSignal) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["t", "x"])?;
    for (t, x) in sig.times().iter().zip(sig.samples()) {
        w.write_record([t.to_string(), x.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an `f,S,N` spectrum. Without an explicit bandwidth the highest grid
/// frequency is used.
pub fn read_spectrum_csv<R: Read>(reader: R, bandwidth: Option<f64>) -> Result<SpectrumPair> {
    let rows = read_columns(reader, &["f", "S", "N"])?;
    if rows.is_empty() {
        return Err(Error::validation("spectrum file has no rows"));
    }
    let f: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let w = bandwidth.unwrap_or_else(|| f.iter().cloned().fold(f64::MIN, f64::max));
    SpectrumPair::new(
        f,
        rows.iter().map(|r| r[1]).collect(),
        rows.iter().map(|r| r[2]).collect(),
        w,
    )
}

pub fn write_spectrum_csv<W: Write>(writer: W, sp: &SpectrumPair) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["f", "S", "N"])?;
    for i in 0..sp.frequencies().len() {
        w.write_record([
            sp.frequencies()[i].to_string(),
            sp.signal()[i].to_string(),
            sp.noise()[i].to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_samples_csv<R: Read>(reader: R) -> Result<ChannelSamples> {
    let rows = read_columns(reader, &["x", "y"])?;
    if rows.is_empty() {
        return Err(Error::validation("samples file has no rows"));
    }
    Ok(ChannelSamples {
        x: rows.iter().map(|r| r[0]).collect(),
        y: rows.iter().map(|r| r[1]).collect(),
    })
}

/// Writes samples with shortest round-trip formatting, so a re-read is exact.
pub fn write_samples_csv<W: Write>(writer: W, s: &ChannelSamples) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "y"])?;
    for (x, y) in s.x.iter().zip(&s.y) {
        w.write_record([x.to_string(), y.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
