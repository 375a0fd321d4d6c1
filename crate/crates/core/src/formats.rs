//! JSON and CSV documents read and written by the command surface.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major nested
//! arrays. Loaders ignore unknown fields, so every report the commands
//! write can be fed back in as an input of the same kind.

use std::fmt::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::Trajectory;
use crate::generator::{affine_from_gks, gks_from_affine, AffineGenerator, CMat3, GksForm, GksMatrix, HamiltonianVec};
use crate::linalg::{c, BlochVector, Mat3, Vec3};
use crate::processor::{EulerAngles, ProgramState};
use crate::tolerance::Tolerances;

pub const SCHEMA_VERSION: u32 = 1;

pub type ComplexPair = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GksDoc {
    pub h: [f64; 3],
    pub c: [[ComplexPair; 3]; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineDoc {
    pub m: [[f64; 3]; 3],
    pub b: [f64; 3],
}

/// `{"gks": …}` and/or `{"affine": …}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GeneratorDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gks: Option<GksDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<AffineDoc>,
}

pub fn vec3_array(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

pub fn mat3_rows(m: &Mat3) -> [[f64; 3]; 3] {
    [0, 1, 2].map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)]])
}

pub fn cmat3_rows(m: &CMat3) -> [[ComplexPair; 3]; 3] {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| [m[(i, j)].re, m[(i, j)].im]))
}

impl From<&GksForm> for GksDoc {
    fn from(g: &GksForm) -> Self {
        GksDoc { h: vec3_array(g.h.vector()), c: cmat3_rows(g.c.matrix()) }
    }
}

impl From<&AffineGenerator> for AffineDoc {
    fn from(a: &AffineGenerator) -> Self {
        AffineDoc { m: mat3_rows(&a.m), b: vec3_array(&a.b) }
    }
}

impl GksDoc {
    pub fn to_form(&self, tol: &Tolerances) -> Result<GksForm> {
        let h = HamiltonianVec::new(Vec3::from(self.h))?;
        let m = CMat3::from_fn(|i, j| c(self.c[i][j][0], self.c[i][j][1]));
        Ok(GksForm::new(h, GksMatrix::with_tolerances(m, tol)?))
    }
}

impl AffineDoc {
    pub fn to_generator(&self) -> Result<AffineGenerator> {
        let m = Mat3::from_fn(|i, j| self.m[i][j]);
        AffineGenerator::new(m, Vec3::from(self.b))
    }
}

/// Which representation an input document was given in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    Gks,
    Affine,
}

/// A generator document normalized to both representations.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedGenerator {
    pub source: Representation,
    pub gks: GksForm,
    pub affine: AffineGenerator,
}

impl GeneratorDoc {
    pub fn from_pair(gks: &GksForm, affine: &AffineGenerator) -> Self {
        GeneratorDoc { gks: Some(gks.into()), affine: Some(affine.into()) }
    }

    /// Normalizes to both forms. When both are present the GKS form wins.
    pub fn load(&self, tol: &Tolerances) -> Result<LoadedGenerator> {
        match (&self.gks, &self.affine) {
            (Some(g), _) => {
                let gks = g.to_form(tol)?;
                Ok(LoadedGenerator { source: Representation::Gks, affine: affine_from_gks(&gks), gks })
            }
            (None, Some(a)) => {
                let affine = a.to_generator()?;
                Ok(LoadedGenerator { source: Representation::Affine, gks: gks_from_affine(&affine), affine })
            }
            (None, None) => Err(Error::parse("generator", "document has neither a \"gks\" nor an \"affine\" member")),
        }
    }
}

/// `{"euler": {"theta", "phi", "psi"}, "program": {"epsilon", "chi"}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessorSpec {
    pub euler: EulerAngles,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub program: Option<ProgramState>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPointDoc {
    pub t: f64,
    pub r: [f64; 3],
}

/// `{"dt": …, "points": [{"t": …, "r": […]}]}` plus an optional generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryDoc {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub dt: f64,
    pub points: Vec<TrajectoryPointDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorDoc>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

impl TrajectoryDoc {
    pub fn new(tr: &Trajectory, generator: Option<GeneratorDoc>) -> Self {
        let points = tr
            .times()
            .iter()
            .zip(tr.states())
            .map(|(&t, r)| TrajectoryPointDoc { t, r: r.to_array() })
            .collect();
        TrajectoryDoc { schema_version: SCHEMA_VERSION, dt: tr.step(), points, generator }
    }

    pub fn to_trajectory(&self) -> Result<Trajectory> {
        let states = self
            .points
            .iter()
            .map(|p| BlochVector::new(p.r[0], p.r[1], p.r[2]))
            .collect::<Result<Vec<_>>>()?;
        Trajectory::new(self.dt, self.points.iter().map(|p| p.t).collect(), states)
    }
}

pub const CSV_HEADER: &str = "t,r1,r2,r3";

/// One `t,r1,r2,r3` record per line after a header. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn trajectory_to_csv(tr: &Trajectory) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (t, r) in tr.times().iter().zip(tr.states()) {
        let [x, y, z] = r.to_array();
        let _ = writeln!(out, "{t:?},{x:?},{y:?},{z:?}");
    }
    out
}

/// Parses [`trajectory_to_csv`] output. The step is recovered from the
/// first two samples.
pub fn trajectory_from_csv(text: &str) -> Result<Trajectory> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(Error::parse("csv line 1", format!("expected header {CSV_HEADER:?}"))),
    }
    let mut times = Vec::new();
    let mut states = Vec::new();
    for (idx, line) in lines {
        let ctx = || format!("csv line {}", idx + 1);
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::parse(ctx(), e.to_string()))?;
        if fields.len() != 4 {
            return Err(Error::parse(ctx(), format!("expected 4 fields, got {}", fields.len())));
        }
        times.push(fields[0]);
        states.push(BlochVector::new(fields[1], fields[2], fields[3]).map_err(|e| Error::parse(ctx(), e.to_string()))?);
    }
    let step = if times.len() > 1 { times[1] - times[0] } else { 0.0 };
    Trajectory::new(step, times, states)
}

/// Decodes a JSON document, reporting the source name with serde's line and column.
pub fn from_json<T: DeserializeOwned>(text: &str, source: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(source, e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

/// What kind of document an input file holds.
#[derive(Debug, Clone, PartialEq)]
pub enum InputDocument {
    Generator(Box<GeneratorDoc>),
    Processor(ProcessorSpec),
}

/// Sniffs a document by its top-level members: `euler` means a processor
/// spec, `gks` or `affine` a generator.
pub fn load_input_document(text: &str, source: &str) -> Result<InputDocument> {
    let value: serde_json::Value = from_json(text, source)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse(source, "top level must be a JSON object"))?;
    if obj.contains_key("euler") {
        Ok(InputDocument::Processor(decode(value, source)?))
    } else if obj.contains_key("gks") || obj.contains_key("affine") {
        Ok(InputDocument::Generator(decode(value, source)?))
    } else {
        Err(Error::parse(source, "expected a \"euler\", \"gks\" or \"affine\" member"))
    }
}

fn decode<T: DeserializeOwned>(value: serde_json::Value, source: &str) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::parse(source, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::euler_trajectory;

    #[test]
    fn affine_document_loads_both_forms() {
        let doc: GeneratorDoc = from_json(r#"{"affine": {"m": [[-2,0,0],[0,-2,0],[0,0,0]], "b": [0,0,0]}}"#, "t").unwrap();
        let g = doc.load(&Tolerances::DEFAULT).unwrap();
        assert_eq!(g.source, Representation::Affine);
        assert!(g.gks.c.max_abs_diff(&GksMatrix::diagonal([0.0, 0.0, 1.0])) < 1e-16);
    }

    #[test]
    fn gks_document_checks_hermiticity() {
        let text = r#"{"gks": {"h": [0,0,0], "c": [[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]}}"#;
        let doc: GeneratorDoc = from_json(text, "t").unwrap();
        assert!(matches!(doc.load(&Tolerances::DEFAULT), Err(Error::Usage(_))));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = from_json::<GeneratorDoc>("{\n  \"affine\": {\"m\": [[1,2,3]], \"b\": [0,0,0]}\n}", "gen.json").unwrap_err();
        match err {
            Error::Parse { context, message } => {
                assert_eq!(context, "gen.json");
                assert!(message.contains("line 2"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sniffing_input_documents() {
        let p = load_input_document(r#"{"euler": {"theta": 1, "phi": 0, "psi": 0}, "program": {"epsilon": 0.1, "chi": 0}}"#, "t").unwrap();
        assert!(matches!(p, InputDocument::Processor(ProcessorSpec { program: Some(_), .. })));
        assert!(load_input_document(r#"{"foo": 1}"#, "t").is_err());
        assert!(load_input_document(r#"{"euler": {"theta": 1, "phi": 0, "psi": 0}, "program": {"epsilon": 2}}"#, "t").is_err());
    }

    #[test]
    fn trajectory_documents_round_trip() {
        let g = AffineGenerator::new(Mat3::from_diagonal(&Vec3::new(-2.0, -2.0, 0.0)), Vec3::new(0.0, 0.0, 0.0)).unwrap();
        let tr = euler_trajectory(&g, BlochVector::new(0.7, 0.1, -0.3).unwrap(), 0.03, 17).unwrap();
        let csv = trajectory_to_csv(&tr);
        assert_eq!(trajectory_from_csv(&csv).unwrap().states(), tr.states());
        let doc = TrajectoryDoc::new(&tr, None);
        let back: TrajectoryDoc = from_json(&to_json(&doc), "t").unwrap();
        assert_eq!(back.to_trajectory().unwrap(), tr);
    }
}
