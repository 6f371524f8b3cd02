//! JSON-over-HTTP front end.
//!
//! Handlers read the raw body and parse it themselves so malformed JSON gets
//! the same `{error, message}` shape as every other failure. Engine calls are
//! pure and can be slow, so they run on the blocking pool.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Deserialize;

use crate::api::{self, parse, render, ApiError, ApiResult, ErrorKind, SeedInput};
use crate::session::SessionStore;

#[derive(Clone, Default)]
pub struct AppState {
    pub sessions: Arc<SessionStore>,
}

fn status(kind: ErrorKind) -> StatusCode {
    match kind {
        ErrorKind::BadRequest => StatusCode::BAD_REQUEST,
        ErrorKind::NotFound => StatusCode::NOT_FOUND,
        ErrorKind::Domain => StatusCode::UNPROCESSABLE_ENTITY,
    }
}

fn respond(result: ApiResult) -> Response {
    let (code, body) = match result {
        Ok(v) => (StatusCode::OK, v),
        Err(e) => {
            log::debug!("request failed: {e}");
            (status(e.kind), e.body())
        }
    };
    (code, [(header::CONTENT_TYPE, "application/json")], render(&body)).into_response()
}

async fn blocking<F>(f: F) -> Response
where
    F: FnOnce() -> ApiResult + Send + 'static,
{
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => respond(r),
        Err(e) => {
            log::error!("worker failed: {e}");
            let body = ApiError::domain("InternalError", "the computation did not finish").body();
            (StatusCode::INTERNAL_SERVER_ERROR, [(header::CONTENT_TYPE, "application/json")], render(&body))
                .into_response()
        }
    }
}

/// Route whose whole job is one `api` function of a parsed body.
macro_rules! engine_route {
    ($f:path) => {
        post(|body: Bytes| async move { blocking(move || $f(parse(&body)?)).await })
    };
}

#[derive(Deserialize)]
struct CreateSession {
    seed: SeedInput,
}

#[derive(Deserialize)]
struct SessionMutate {
    vertex: String,
}

#[derive(Deserialize)]
struct TriangulationsRequest {
    n: usize,
}

async fn create_session(State(st): State<AppState>, body: Bytes) -> Response {
    blocking(move || {
        let req: CreateSession = parse(&body)?;
        Ok(st.sessions.create(req.seed.into_seed()?))
    })
    .await
}

async fn session_view(State(st): State<AppState>, Path(id): Path<String>) -> Response {
    respond(st.sessions.with(&id, |s| s.view()))
}

async fn session_mutate(State(st): State<AppState>, Path(id): Path<String>, body: Bytes) -> Response {
    blocking(move || {
        let req: SessionMutate = parse(&body)?;
        st.sessions.with(&id, |s| s.mutate(&req.vertex).map(|_| s.view()))?
    })
    .await
}

async fn session_undo(State(st): State<AppState>, Path(id): Path<String>) -> Response {
    respond(st.sessions.with(&id, |s| s.undo().map(|_| s.view())).and_then(|r| r))
}

async fn triangulations(body: Bytes) -> Response {
    blocking(move || {
        let req: TriangulationsRequest = parse(&body)?;
        api::polygon_triangulations(req.n)
    })
    .await
}

async fn unknown_route() -> Response {
    let e = ApiError::not_found("UnknownRoute", "no such endpoint");
    (StatusCode::NOT_FOUND, [(header::CONTENT_TYPE, "application/json")], render(&e.body())).into_response()
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/quiver/mutate", engine_route!(api::mutate_quiver))
        .route("/classify", engine_route!(api::classify))
        .route("/seed/exchange-graph", engine_route!(api::exchange_graph))
        .route("/seed/laurent-check", engine_route!(api::laurent_check_op))
        .route("/seed/session", post(create_session))
        .route("/seed/session/{id}", get(session_view))
        .route("/seed/session/{id}/mutate", post(session_mutate))
        .route("/seed/session/{id}/undo", post(session_undo))
        .route("/tp/test", engine_route!(api::tp_test))
        .route("/tp/generate", engine_route!(api::tp_generate))
        .route("/wiring", engine_route!(api::wiring))
        .route("/polygon/triangulations", post(triangulations))
        .route("/polygon/flip", engine_route!(api::polygon_flip))
        .route("/polygon/quiver", engine_route!(api::polygon_quiver))
        .route("/polygon/shear", engine_route!(api::polygon_shear))
        .route("/polygon/verify", engine_route!(api::polygon_verify))
        .fallback(unknown_route)
        .with_state(state)
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::default())).await
}

