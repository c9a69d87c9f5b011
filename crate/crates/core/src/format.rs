//! JSON and CSV file formats. Floats are written with 17 significant digits
//! so that a write/read cycle is lossless.

use crate::error::{Error, Result};
use crate::riemann_hilbert::{PhaseFactors, PhaseMeta};
use crate::target::ChebyshevTarget;
use crate::weiss::WeissResult;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use std::io::{self, Write};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetFile {
    pub parity: String,
    pub half_degree: usize,
    pub coeffs: Vec<f64>,
    pub eta: f64,
}

impl TargetFile {
    pub fn from_target(t: &ChebyshevTarget) -> Self {
        Self {
            parity: "even".into(),
            half_degree: t.half_degree(),
            coeffs: t.coeffs().to_vec(),
            eta: t.eta(),
        }
    }

    pub fn into_target(self) -> Result<ChebyshevTarget> {
        if self.parity != "even" {
            return Err(Error::InvalidParameter(format!(
                "parity {:?} unsupported; only even targets are accepted",
                self.parity
            )));
        }
        if self.coeffs.len() != self.half_degree + 1 {
            return Err(Error::InvalidParameter(format!(
                "half_degree = {} but {} coefficients given",
                self.half_degree,
                self.coeffs.len()
            )));
        }
        ChebyshevTarget::new(self.coeffs, self.eta)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseFile {
    pub d: usize,
    pub eta: Option<f64>,
    pub eps: Option<f64>,
    #[serde(rename = "N")]
    pub grid_size: Option<usize>,
    pub phases: Vec<f64>,
}

impl PhaseFile {
    pub fn from_phases(p: &PhaseFactors) -> Self {
        Self {
            d: p.half_degree(),
            eta: p.meta.eta,
            eps: p.meta.eps,
            grid_size: p.meta.grid_size,
            phases: p.values().to_vec(),
        }
    }

    pub fn into_phases(self) -> Result<PhaseFactors> {
        if self.phases.len() != self.d + 1 {
            return Err(Error::InvalidParameter(format!(
                "d = {} but {} phases given",
                self.d,
                self.phases.len()
            )));
        }
        Ok(PhaseFactors::with_meta(
            self.phases,
            PhaseMeta {
                eta: self.eta,
                eps: self.eps,
                grid_size: self.grid_size,
                timestamp: None,
            },
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeissDump {
    pub k_min: usize,
    pub k_max: usize,
    pub coeffs_imag: Vec<f64>,
}

impl WeissDump {
    pub fn from_result(w: &WeissResult) -> Self {
        Self {
            k_min: 0,
            k_max: w.half_degree(),
            coeffs_imag: w.imag(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub roundtrip_max_err: f64,
    pub plancherel_residual: f64,
    pub nodes: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phase_max_err: Option<f64>,
}

/// Pretty JSON with `{:.16e}` floats; non-finite values become `null`.
struct ExactFloats<'a>(PrettyFormatter<'a>);

impl Formatter for ExactFloats<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_string(value)?)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_target(path: &Path) -> Result<ChebyshevTarget> {
    read_json::<TargetFile>(path)?.into_target()
}

pub fn read_phases(path: &Path) -> Result<PhaseFactors> {
    read_json::<PhaseFile>(path)?.into_phases()
}

/// `index,phase` rows under a header line.
pub fn phases_to_csv(p: &PhaseFactors) -> String {
    let mut out = String::from("index,phase\n");
    for (k, v) in p.values().iter().enumerate() {
        out.push_str(&format!("{k},{v:.16e}\n"));
    }
    out
}
