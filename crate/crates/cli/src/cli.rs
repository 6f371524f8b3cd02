//! Argument parsing and dispatch. Every subcommand builds the same request
//! the HTTP route would receive and prints the rendered response, so a file
//! posted to the service and the same file given here produce equal bytes.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use clusterlab::quiver::QuiverJson;
use clusterlab::positivity::MatrixJson;
use clusterlab::surface::{MultiLaminationJson, TriangulationJson};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::api::{self, parse, render, ApiError, ErrorKind, PolygonRequest, SeedInput, TpMode, WiringOp};

#[derive(Parser, Debug)]
#[command(name = "clusterlab", version, about = "Cluster algebra and total positivity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerdictFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mutate a quiver along a sequence of vertices.
    Mutate {
        /// Quiver JSON file, or `-` for stdin.
        quiver: PathBuf,
        /// Vertex ids, applied left to right.
        #[arg(long = "at", value_delimiter = ',', required = true)]
        at: Vec<String>,
    },
    /// Enumerate the exchange graph of a seed (a bare quiver means its initial seed).
    ExchangeGraph {
        seed: PathBuf,
        #[arg(long, default_value_t = api::DEFAULT_MAX_SEEDS)]
        max_seeds: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Decide finite type by searching the mutation class.
    Classify {
        quiver: PathBuf,
        #[arg(long, default_value_t = api::DEFAULT_CLASS_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = VerdictFormat::Text)]
        format: VerdictFormat,
    },
    /// Check that every cluster variable up to a depth is a Laurent polynomial.
    LaurentCheck {
        seed: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        check_positivity: bool,
    },
    /// Test a matrix for total positivity.
    TpTest {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = TpModeArg::AllMinors)]
        mode: TpModeArg,
        /// Reduced word for the chamber test, e.g. `1,2,1`.
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<usize>>,
        /// Chamber mode: test the transpose as well.
        #[arg(long)]
        transpose: bool,
    },
    /// Multiply elementary Jacobi matrices.
    TpGenerate {
        #[arg(long)]
        n: usize,
        /// Factors such as `y1:1,x2:1/2`; the snake word at 1 by default.
        #[arg(long)]
        factors: Option<String>,
    },
    /// Chambers, local moves or quiver of a wiring diagram.
    Wiring {
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(value_enum)]
        op: WiringOpArg,
    },
    /// Triangulated polygons, flips and laminations.
    Polygon {
        #[command(subcommand)]
        op: PolygonOp,
    },
    /// Run the HTTP service. The PORT environment variable overrides --port.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TpModeArg {
    AllMinors,
    Cryer,
    Chamber,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WiringOpArg {
    Chambers,
    Moves,
    Quiver,
}

#[derive(clap::Args, Debug)]
struct PolygonInput {
    /// Triangulation JSON, or a document with `triangulation` and `laminations`.
    file: PathBuf,
    /// Laminations JSON, replacing any in the main file.
    #[arg(long)]
    laminations: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum PolygonOp {
    /// All triangulations of the n-gon with their flips.
    Triangulations {
        #[arg(long)]
        n: usize,
    },
    Flip {
        #[command(flatten)]
        input: PolygonInput,
        /// Diagonal endpoints, e.g. `1,4`.
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        diagonal: Vec<usize>,
    },
    Quiver {
        #[command(flatten)]
        input: PolygonInput,
    },
    Shear {
        #[command(flatten)]
        input: PolygonInput,
    },
    /// Check that flips match mutations (every diagonal unless one is given).
    Verify {
        #[command(flatten)]
        input: PolygonInput,
        #[arg(long, value_delimiter = ',')]
        diagonal: Option<Vec<usize>>,
    },
}

fn read_input(path: &Path) -> Result<Vec<u8>, ApiError> {
    let io = |e: std::io::Error| ApiError::bad_request("Io", format!("{}: {e}", path.display()));
    if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io)?;
        return Ok(buf);
    }
    std::fs::read(path).map_err(io)
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, ApiError> {
    parse(&read_input(path)?).map_err(|e| ApiError { message: format!("{}: {}", path.display(), e.message), ..e })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolygonDoc {
    Full(PolygonRequest),
    Bare(TriangulationJson),
}

fn pair(v: &[usize]) -> Result<[usize; 2], ApiError> {
    match v {
        [a, b] => Ok([*a, *b]),
        _ => Err(ApiError::bad_request("InvalidArgument", "a diagonal is two vertices, e.g. 1,4")),
    }
}

fn polygon_request(input: &PolygonInput, diagonal: Option<&[usize]>) -> Result<PolygonRequest, ApiError> {
    let mut req = match load::<PolygonDoc>(&input.file)? {
        PolygonDoc::Full(r) => r,
        PolygonDoc::Bare(t) => PolygonRequest { triangulation: t, laminations: None, diagonal: None },
    };
    if let Some(path) = &input.laminations {
        req.laminations = Some(load::<MultiLaminationJson>(path)?);
    }
    if let Some(d) = diagonal {
        req.diagonal = Some(pair(d)?);
    }
    Ok(req)
}

enum Output {
    Json(serde_json::Value),
    Text(String),
}

fn dispatch(cmd: Command) -> Result<Output, ApiError> {
    use Output::{Json, Text};
    Ok(match cmd {
        Command::Mutate { quiver, at } => {
            let q: QuiverJson = load(&quiver)?;
            Json(api::mutate_quiver(api::MutateRequest { quiver: q, vertex: None, sequence: at })?)
        }
        Command::ExchangeGraph { seed, max_seeds, format } => {
            let req = api::ExchangeGraphRequest { seed: load::<SeedInput>(&seed)?, max_seeds: Some(max_seeds) };
            match format {
                GraphFormat::Json => Json(api::exchange_graph(req)?),
                GraphFormat::Dot => Text(api::exchange_graph_dot(req)?),
            }
        }
        Command::Classify { quiver, cap, format } => {
            let v = api::classify(api::ClassifyRequest { quiver: load(&quiver)?, cap: Some(cap) })?;
            match format {
                VerdictFormat::Json => Json(v),
                VerdictFormat::Text => Text(format!("{}\n", v["verdict"].as_str().unwrap_or_default())),
            }
        }
        Command::LaurentCheck { seed, depth, check_positivity } => Json(api::laurent_check_op(
            api::LaurentCheckRequest { seed: load(&seed)?, depth, check_positivity },
        )?),
        Command::TpTest { matrix, mode, word, transpose } => {
            let mode = match mode {
                TpModeArg::AllMinors => TpMode::AllMinors,
                TpModeArg::Cryer => TpMode::Cryer,
                TpModeArg::Chamber => TpMode::Chamber,
            };
            let m: MatrixJson = load(&matrix)?;
            Json(api::tp_test(api::TpTestRequest { matrix: m, mode, word, transpose })?)
        }
        Command::TpGenerate { n, factors } => Json(api::tp_generate(api::TpGenerateRequest { n, factors })?),
        Command::Wiring { word, n, op } => {
            let op = match op {
                WiringOpArg::Chambers => WiringOp::Chambers,
                WiringOpArg::Moves => WiringOp::Moves,
                WiringOpArg::Quiver => WiringOp::Quiver,
            };
            Json(api::wiring(api::WiringRequest { word, n, op })?)
        }
        Command::Polygon { op } => Json(match op {
            PolygonOp::Triangulations { n } => api::polygon_triangulations(n)?,
            PolygonOp::Flip { input, diagonal } => api::polygon_flip(polygon_request(&input, Some(&diagonal))?)?,
            PolygonOp::Quiver { input } => api::polygon_quiver(polygon_request(&input, None)?)?,
            PolygonOp::Shear { input } => api::polygon_shear(polygon_request(&input, None)?)?,
            PolygonOp::Verify { input, diagonal } => {
                api::polygon_verify(polygon_request(&input, diagonal.as_deref())?)?
            }
        }),
        Command::Serve { port, host } => {
            let port = match std::env::var("PORT") {
                Ok(p) => p
                    .parse()
                    .map_err(|_| ApiError::bad_request("InvalidArgument", format!("PORT=`{p}` is not a port")))?,
                Err(_) => port,
            };
            let rt = tokio::runtime::Builder::new_multi_thread()
                .enable_all()
                .build()
                .map_err(|e| ApiError::domain("Io", e.to_string()))?;
            rt.block_on(crate::server::serve(SocketAddr::new(host, port)))
                .map_err(|e| ApiError::domain("Io", e.to_string()))?;
            Text(String::new())
        }
    })
}

/// Runs the command line and returns the exit code: 0 on success, 1 when
/// the engine rejects the input, 2 for usage errors and unreadable input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Output::Json(v)) => {
            let _ = out.write_all(render(&v).as_bytes());
            0
        }
        Ok(Output::Text(t)) => {
            let _ = out.write_all(t.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e.kind {
                ErrorKind::Domain => 1,
                ErrorKind::BadRequest | ErrorKind::NotFound => 2,
            }
        }
    }
}
