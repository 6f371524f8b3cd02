//! Request/response layer shared by the command line and the HTTP service.
//!
//! Every operation takes a typed request and returns a `serde_json::Value`.
//! Values keep object keys sorted, and [`render`] is the only serializer
//! used on the way out, so both front ends emit identical bytes.

use std::collections::BTreeMap;
use std::fmt;

use clusterlab::laurent::LaurentError;
use clusterlab::positivity::{
    chamber_positivity_test, chamber_positivity_test_both, cryer_test, generator_product,
    is_totally_nonnegative, is_totally_positive, parse_rational_str, quiver_for_diagram, Generator, MatrixJson,
    PositivityError, RationalMatrix, WiringDiagram,
};
use clusterlab::quiver::{Quiver, QuiverError, QuiverJson};
use clusterlab::seed::{classify_quiver, enumerate_exchange_graph, laurent_check, ExchangeGraphJson, SeedJson};
use clusterlab::surface::{
    flip_graph, quiver_with_laminations, shear_vector, verify_flip_mutation, Diagonal, MultiLamination,
    MultiLaminationJson, SurfaceError, Triangulation, TriangulationJson,
};
use clusterlab::{Exec, Seed, SeedError};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Input that could not be parsed or is missing required fields.
    BadRequest,
    NotFound,
    /// Well-formed input that the engine rejects.
    Domain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApiError {
    pub kind: ErrorKind,
    pub code: String,
    pub message: String,
}

impl ApiError {
    pub fn bad_request(code: &str, message: impl Into<String>) -> Self {
        ApiError { kind: ErrorKind::BadRequest, code: code.into(), message: message.into() }
    }

    pub fn not_found(code: &str, message: impl Into<String>) -> Self {
        ApiError { kind: ErrorKind::NotFound, code: code.into(), message: message.into() }
    }

    pub fn domain(code: &str, message: impl Into<String>) -> Self {
        ApiError { kind: ErrorKind::Domain, code: code.into(), message: message.into() }
    }

    pub fn body(&self) -> Value {
        json!({ "error": self.code, "message": self.message })
    }
}

impl fmt::Display for ApiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for ApiError {}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for ApiError {
            fn from(e: $t) -> Self {
                ApiError::domain(e.code(), e.to_string())
            }
        }
    )*};
}

domain_errors!(QuiverError, SeedError, LaurentError, PositivityError, SurfaceError);

impl From<serde_json::Error> for ApiError {
    fn from(e: serde_json::Error) -> Self {
        ApiError::bad_request("MalformedRequest", e.to_string())
    }
}

pub type ApiResult = Result<Value, ApiError>;

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn parse<T: DeserializeOwned>(text: &[u8]) -> Result<T, ApiError> {
    Ok(serde_json::from_slice(text)?)
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("engine types always serialize")
}

pub const DEFAULT_MAX_SEEDS: usize = 1000;
pub const DEFAULT_CLASS_CAP: usize = 10_000;

/// A seed document, or a bare quiver standing for its initial seed.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SeedInput {
    Seed(SeedJson),
    Quiver(QuiverJson),
}

impl SeedInput {
    pub fn into_seed(self) -> Result<Seed, ApiError> {
        match self {
            SeedInput::Seed(j) => Ok(Seed::try_from(j)?),
            SeedInput::Quiver(q) => Ok(Seed::initial(&Quiver::try_from(q)?)),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct MutateRequest {
    pub quiver: QuiverJson,
    #[serde(default)]
    pub vertex: Option<String>,
    /// Applied after `vertex`, left to right.
    #[serde(default)]
    pub sequence: Vec<String>,
}

pub fn mutate_quiver(req: MutateRequest) -> ApiResult {
    let mut q = Quiver::try_from(req.quiver)?;
    for v in req.vertex.iter().chain(&req.sequence) {
        q = q.mutate(v)?;
    }
    Ok(json!({ "quiver": value(&QuiverJson::from(&q)) }))
}

#[derive(Clone, Debug, Deserialize)]
pub struct ExchangeGraphRequest {
    pub seed: SeedInput,
    #[serde(default)]
    pub max_seeds: Option<usize>,
}

fn check_cap(name: &str, cap: usize) -> Result<usize, ApiError> {
    if cap == 0 {
        return Err(ApiError::bad_request("InvalidArgument", format!("{name} must be positive")));
    }
    Ok(cap)
}

pub fn exchange_graph(req: ExchangeGraphRequest) -> ApiResult {
    let cap = check_cap("max_seeds", req.max_seeds.unwrap_or(DEFAULT_MAX_SEEDS))?;
    let e = enumerate_exchange_graph(&req.seed.into_seed()?, cap)?;
    Ok(value(&ExchangeGraphJson::from(&e)))
}

pub fn exchange_graph_dot(req: ExchangeGraphRequest) -> Result<String, ApiError> {
    let cap = check_cap("max_seeds", req.max_seeds.unwrap_or(DEFAULT_MAX_SEEDS))?;
    let e = enumerate_exchange_graph(&req.seed.into_seed()?, cap)?;
    Ok(e.graph().to_dot())
}

#[derive(Clone, Debug, Deserialize)]
pub struct ClassifyRequest {
    pub quiver: QuiverJson,
    #[serde(default)]
    pub cap: Option<usize>,
}

pub fn classify(req: ClassifyRequest) -> ApiResult {
    let q = Quiver::try_from(req.quiver)?;
    let cap = check_cap("cap", req.cap.unwrap_or(DEFAULT_CLASS_CAP))?;
    let verdict = classify_quiver(&q, cap, Exec::default());
    Ok(json!({ "verdict": verdict.to_string(), "details": value(&verdict) }))
}

#[derive(Clone, Debug, Deserialize)]
pub struct LaurentCheckRequest {
    pub seed: SeedInput,
    #[serde(default = "default_depth")]
    pub depth: usize,
    #[serde(default)]
    pub check_positivity: bool,
}

fn default_depth() -> usize {
    6
}

pub fn laurent_check_op(req: LaurentCheckRequest) -> ApiResult {
    let s = req.seed.into_seed()?;
    let report = laurent_check(&s, req.depth, req.check_positivity, Exec::default());
    Ok(value(&report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TpMode {
    #[default]
    AllMinors,
    Cryer,
    Chamber,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TpTestRequest {
    pub matrix: MatrixJson,
    #[serde(default)]
    pub mode: TpMode,
    /// Reduced word for chamber mode; the snake word by default.
    #[serde(default)]
    pub word: Option<Vec<usize>>,
    /// Chamber mode only: also test the transpose.
    #[serde(default)]
    pub transpose: bool,
}

pub fn tp_test(req: TpTestRequest) -> ApiResult {
    let m = RationalMatrix::try_from(&req.matrix)?;
    let out = match req.mode {
        TpMode::AllMinors => json!({
            "totally_nonnegative": is_totally_nonnegative(&m)?,
            "totally_positive": is_totally_positive(&m)?,
        }),
        TpMode::Cryer => json!({ "totally_nonnegative": cryer_test(&m)? }),
        TpMode::Chamber => {
            let w = match req.word {
                Some(word) => WiringDiagram::new(m.n(), word)?,
                None => WiringDiagram::snake(m.n()),
            };
            let passed = if req.transpose {
                chamber_positivity_test_both(&m, &w)?
            } else {
                chamber_positivity_test(&m, &w)?
            };
            json!({ "chamber_positive": passed, "word": w.word(), "transpose": req.transpose })
        }
    };
    Ok(json!({ "mode": value(&req.mode), "result": out }))
}

#[derive(Clone, Debug, Deserialize)]
pub struct TpGenerateRequest {
    pub n: usize,
    /// Comma-separated `x<i>:<t>` (upper) and `y<i>:<t>` (lower) factors.
    /// Defaults to the snake word with lower then upper generators at 1,
    /// which gives a totally positive matrix.
    #[serde(default)]
    pub factors: Option<String>,
}

fn parse_factors(text: &str) -> Result<Vec<Generator>, ApiError> {
    let bad = |tok: &str| ApiError::bad_request("InvalidFactor", format!("`{tok}` (expected x<i>:<t> or y<i>:<t>)"));
    text.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let (head, t) = tok.split_once(':').ok_or_else(|| bad(tok))?;
            let (kind, i) = head.split_at(1.min(head.len()));
            let i: usize = i.parse().map_err(|_| bad(tok))?;
            let t = parse_rational_str(t).map_err(|_| bad(tok))?;
            match kind {
                "x" => Ok(Generator::Upper(i, t)),
                "y" => Ok(Generator::Lower(i, t)),
                _ => Err(bad(tok)),
            }
        })
        .collect()
}

pub fn tp_generate(req: TpGenerateRequest) -> ApiResult {
    if req.n < 1 {
        return Err(ApiError::bad_request("InvalidArgument", "n must be positive"));
    }
    let gens = match &req.factors {
        Some(text) => parse_factors(text)?,
        None => {
            let word = WiringDiagram::snake(req.n).word().to_vec();
            let one = || parse_rational_str("1").expect("literal");
            word.iter()
                .map(|&i| Generator::Lower(i, one()))
                .chain(word.iter().map(|&i| Generator::Upper(i, one())))
                .collect()
        }
    };
    let m = generator_product(req.n, &gens)?;
    Ok(value(&MatrixJson::from(&m)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WiringOp {
    Chambers,
    Moves,
    Quiver,
}

#[derive(Clone, Debug, Deserialize)]
pub struct WiringRequest {
    pub word: Vec<usize>,
    /// Number of lines; inferred from the word length when absent.
    #[serde(default)]
    pub n: Option<usize>,
    pub op: WiringOp,
}

fn infer_lines(len: usize) -> Option<usize> {
    (1..64).find(|n| n * (n - 1) / 2 == len)
}

pub fn wiring(req: WiringRequest) -> ApiResult {
    let n = match req.n.or_else(|| infer_lines(req.word.len())) {
        Some(n) => n,
        None => {
            return Err(ApiError::domain(
                "InvalidWord",
                format!("a word of length {} is not a longest element", req.word.len()),
            ))
        }
    };
    let w = WiringDiagram::new(n, req.word)?;
    Ok(match req.op {
        WiringOp::Chambers => {
            let chambers: Vec<Value> = w
                .chambers()
                .iter()
                .map(|c| json!({ "id": c.id(), "label": c.label(), "set": c.index_set, "bounded": c.bounded }))
                .collect();
            json!({ "n": n, "word": w.word(), "chambers": chambers })
        }
        WiringOp::Moves => {
            let moves = w
                .local_moves()
                .into_iter()
                .map(|mv| {
                    let next = w.apply_local_move(&mv)?;
                    Ok(json!({ "move": value(&mv), "result": next.word() }))
                })
                .collect::<Result<Vec<Value>, ApiError>>()?;
            json!({ "n": n, "word": w.word(), "moves": moves })
        }
        WiringOp::Quiver => json!({ "n": n, "word": w.word(), "quiver": value(&QuiverJson::from(&quiver_for_diagram(&w)?)) }),
    })
}

#[derive(Clone, Debug, Deserialize)]
pub struct PolygonRequest {
    pub triangulation: TriangulationJson,
    #[serde(default)]
    pub laminations: Option<MultiLaminationJson>,
    #[serde(default)]
    pub diagonal: Option<[usize; 2]>,
}

impl PolygonRequest {
    fn parts(&self) -> Result<(Triangulation, MultiLamination), ApiError> {
        let t = Triangulation::try_from(&self.triangulation)?;
        let ml = match &self.laminations {
            Some(j) => MultiLamination::try_from(j)?,
            None => MultiLamination::empty(t.n()),
        };
        if ml.n() != t.n() {
            return Err(SurfaceError::DimensionMismatch { expected: t.n(), got: ml.n() }.into());
        }
        Ok((t, ml))
    }

    fn diagonal(&self, n: usize) -> Result<Option<Diagonal>, ApiError> {
        Ok(match self.diagonal {
            Some([a, b]) => Some(Diagonal::new(n, a, b)?),
            None => None,
        })
    }
}

fn shear_table(t: &Triangulation, ml: &MultiLamination) -> Result<Value, ApiError> {
    let mut out: BTreeMap<String, BTreeMap<String, i64>> = BTreeMap::new();
    for (name, l) in ml.entries() {
        let row = t.diagonals().iter().map(|d| d.id()).zip(shear_vector(t, l)?).collect();
        out.insert(name.clone(), row);
    }
    Ok(value(&out))
}

fn quiver_value(t: &Triangulation, ml: &MultiLamination) -> Result<Value, ApiError> {
    Ok(value(&QuiverJson::from(&quiver_with_laminations(t, ml)?)))
}

pub fn polygon_triangulations(n: usize) -> ApiResult {
    let (ts, edges) = flip_graph(n)?;
    let list: Vec<Value> = ts.iter().map(|t| value(&TriangulationJson::from(t))).collect();
    Ok(json!({ "n": n, "count": ts.len(), "triangulations": list, "flips": edges }))
}

pub fn polygon_flip(req: PolygonRequest) -> ApiResult {
    let (t, ml) = req.parts()?;
    let d = req
        .diagonal(t.n())?
        .ok_or_else(|| ApiError::bad_request("MissingField", "flip needs a diagonal"))?;
    let (u, new) = t.flip(&d)?;
    Ok(json!({
        "triangulation": value(&TriangulationJson::from(&u)),
        "flipped": [d.0, d.1],
        "new_diagonal": [new.0, new.1],
        "quiver": quiver_value(&u, &ml)?,
        "shear_vectors": shear_table(&u, &ml)?,
    }))
}

pub fn polygon_quiver(req: PolygonRequest) -> ApiResult {
    let (t, ml) = req.parts()?;
    Ok(json!({ "quiver": quiver_value(&t, &ml)? }))
}

pub fn polygon_shear(req: PolygonRequest) -> ApiResult {
    let (t, ml) = req.parts()?;
    Ok(json!({ "shear_vectors": shear_table(&t, &ml)? }))
}

/// Checks flip against mutation at one diagonal, or at all of them.
pub fn polygon_verify(req: PolygonRequest) -> ApiResult {
    let (t, ml) = req.parts()?;
    let targets = match req.diagonal(t.n())? {
        Some(d) => vec![d],
        None => t.diagonals().to_vec(),
    };
    let results = targets
        .iter()
        .map(|d| Ok(json!({ "diagonal": [d.0, d.1], "ok": verify_flip_mutation(&t, &ml, d)? })))
        .collect::<Result<Vec<Value>, ApiError>>()?;
    let all = results.iter().all(|r| r["ok"] == Value::Bool(true));
    Ok(json!({ "all": all, "results": results }))
}
