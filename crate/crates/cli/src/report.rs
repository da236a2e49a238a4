//! JSON reports. Floats are written with 17 significant digits so that the
//! output is byte-stable and parses back to the same `f64`.

use crate::pipeline::Analysis;
use crate::CliError;
use num_complex::Complex64;
use serde::ser::Serialize;
use serde::Deserialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use spectral_ellipse::ellipse::trace_only_foci;
use spectral_ellipse::ComplexMatrix;
use std::io;

pub const SCHEMA: &str = "spectral-ellipse/1";
pub const SMALL_DIMENSION_NOTE: &str = "dimension < 2";

pub type Pair = [f64; 2];

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
pub struct EllipseReport {
    pub center: Pair,
    pub semimajor: f64,
    pub semiminor: f64,
    pub major_dir_angle_rad: f64,
    pub foci: [Pair; 2],
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
pub struct ContainmentSummary {
    pub verdict: String,
    pub min_margin: f64,
    pub worst_direction_angle_rad: f64,
    pub sweep_min_margin: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
pub struct Bounds {
    pub trace_only_lower: Option<f64>,
    pub observed_spectral_radius: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub n: usize,
    pub gamma: Pair,
    pub q_total: Pair,
    pub q_traceless: Pair,
    pub eigenvalues: Vec<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub ellipse: Option<EllipseReport>,
    pub hull_vertices: Vec<Pair>,
    pub containment: Option<ContainmentSummary>,
    pub bounds: Bounds,
}

impl AnalysisReport {
    pub fn from_analysis(r: &Analysis) -> Self {
        let d = &r.decomposition;
        let (ellipse, containment, trace_only_lower) = match &r.ellipse {
            Some(e) => (
                Some(EllipseReport {
                    center: pair(e.ellipse.center),
                    semimajor: e.ellipse.semimajor,
                    semiminor: e.ellipse.semiminor,
                    major_dir_angle_rad: e.ellipse.major_dir_angle(),
                    foci: [pair(e.ellipse.foci[0]), pair(e.ellipse.foci[1])],
                }),
                Some(ContainmentSummary {
                    verdict: e.verdict().as_str().to_string(),
                    min_margin: e.containment.min_margin,
                    worst_direction_angle_rad: e.containment.worst_direction.angle(),
                    sweep_min_margin: e.sweep_min,
                    slack: r.slack,
                }),
                Some(e.trace_only_lower),
            ),
            None => (None, None, None),
        };
        AnalysisReport {
            schema: SCHEMA.to_string(),
            n: d.n,
            gamma: pair(d.gamma),
            q_total: pair(d.q_total),
            q_traceless: pair(d.q_traceless),
            eigenvalues: r.spectrum.values.iter().map(|&z| pair(z)).collect(),
            note: r
                .ellipse
                .is_none()
                .then(|| SMALL_DIMENSION_NOTE.to_string()),
            ellipse,
            hull_vertices: r.hull.vertices.iter().map(|&z| pair(z)).collect(),
            containment,
            bounds: Bounds {
                trace_only_lower,
                observed_spectral_radius: r.observed_spectral_radius(),
            },
        }
    }
}

/// The eigensolver-free report of `bound`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
pub struct BoundReport {
    pub schema: String,
    pub n: usize,
    pub gamma: Pair,
    pub q_traceless: Pair,
    pub foci: [Pair; 2],
    pub trace_only_lower: f64,
}

impl BoundReport {
    pub fn from_matrix(a: &ComplexMatrix) -> Result<Self, CliError> {
        let d = a.decompose();
        let foci = trace_only_foci(a.trace(), d.q_total, d.n)?;
        Ok(BoundReport {
            schema: SCHEMA.to_string(),
            n: d.n,
            gamma: pair(d.gamma),
            q_traceless: pair(d.q_traceless),
            foci: [pair(foci[0]), pair(foci[1])],
            trace_only_lower: foci[0].norm().max(foci[1].norm()),
        })
    }
}

/// Pretty JSON with every float in `{:.16e}` form.
struct FixedDigits(PrettyFormatter<'static>);

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes with the fixed float format, newline-terminated.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, FixedDigits(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .expect("serializing into memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
