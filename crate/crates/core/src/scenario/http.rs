//! HTTP/JSON front end of the scenario store.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::rejection::{PathRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Overlay, ScenarioStore, Viewport};
use crate::error::Error;
use crate::graph::{BigPicture, NodeId, PropagationPlan};
use crate::params::Params;
use crate::symbols::SymbolRegistry;

pub const ADDR_ENV: &str = "MACROATLAS_ADDR";
pub const DATA_ENV: &str = "MACROATLAS_DATA";
pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";
pub const DEFAULT_DATA_DIR: &str = "scenarios";

struct ApiError(Error);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, kind) = match &self.0 {
            Error::UnknownScenario(_) => (StatusCode::NOT_FOUND, "unknownScenario"),
            Error::UnknownNode(_) => (StatusCode::NOT_FOUND, "unknownNode"),
            Error::UnknownField(_) => (StatusCode::BAD_REQUEST, "unknownField"),
            Error::Validation { .. } => (StatusCode::BAD_REQUEST, "validation"),
            Error::Json(_) | Error::Config(_) => (StatusCode::BAD_REQUEST, "badRequest"),
            Error::Domain { .. } => (StatusCode::UNPROCESSABLE_ENTITY, "domain"),
            Error::NoCrossing(_) | Error::Solve(_) => {
                (StatusCode::UNPROCESSABLE_ENTITY, "convergence")
            }
            Error::Graph(_) | Error::Io(_) => (StatusCode::INTERNAL_SERVER_ERROR, "internal"),
        };
        (
            status,
            Json(json!({ "error": self.0.to_string(), "kind": kind })),
        )
            .into_response()
    }
}

type ApiResult<T> = std::result::Result<T, ApiError>;

impl From<QueryRejection> for ApiError {
    fn from(r: QueryRejection) -> Self {
        ApiError(Error::Config(r.body_text()))
    }
}

impl From<PathRejection> for ApiError {
    fn from(r: PathRejection) -> Self {
        ApiError(Error::Config(r.body_text()))
    }
}

/// Runs blocking store work off the async executor.
async fn blocking<T, F>(f: F) -> ApiResult<T>
where
    F: FnOnce() -> crate::error::Result<T> + Send + 'static,
    T: Send + 'static,
{
    match tokio::task::spawn_blocking(f).await {
        Ok(result) => result.map_err(ApiError),
        Err(join) => Err(ApiError(Error::Io(std::io::Error::other(join.to_string())))),
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ShockRequest {
    field: String,
    #[serde(alias = "value")]
    new_value: f64,
}

#[derive(Debug, Serialize)]
struct ShockResponse {
    scenario: super::Scenario,
    plan: PropagationPlan,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PanelQuery {
    overlay: Option<Overlay>,
    xmin: Option<f64>,
    xmax: Option<f64>,
    ymin: Option<f64>,
    ymax: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct CompareQuery {
    a: String,
    b: String,
}

type Shared = Arc<ScenarioStore>;

async fn graph() -> Json<&'static BigPicture> {
    Json(BigPicture::canonical())
}

async fn symbols() -> Response {
    let entries: Vec<_> = SymbolRegistry::global().entries().collect();
    Json(entries).into_response()
}

async fn create(State(store): State<Shared>, body: Bytes) -> ApiResult<(StatusCode, Response)> {
    let params = if body.iter().all(u8::is_ascii_whitespace) {
        Params::default()
    } else {
        Params::from_json_str(
            std::str::from_utf8(&body).map_err(|e| Error::Config(e.to_string()))?,
        )?
    };
    let scenario = blocking(move || store.create(params)).await?;
    Ok((StatusCode::CREATED, Json(scenario).into_response()))
}

async fn fetch(State(store): State<Shared>, Path(id): Path<String>) -> ApiResult<Response> {
    let scenario = blocking(move || store.get(&id)).await?;
    Ok(Json(scenario).into_response())
}

async fn shock(
    State(store): State<Shared>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Response> {
    let req: ShockRequest = serde_json::from_slice(&body).map_err(Error::from)?;
    let (scenario, plan) =
        blocking(move || store.apply_shock(&id, &req.field, req.new_value)).await?;
    Ok(Json(ShockResponse { scenario, plan }).into_response())
}

async fn panel(
    State(store): State<Shared>,
    path: Result<Path<(String, NodeId)>, PathRejection>,
    query: Result<Query<PanelQuery>, QueryRejection>,
) -> ApiResult<Response> {
    let (Path((id, node)), Query(q)) = (path?, query?);
    let viewport = Viewport {
        xmin: q.xmin,
        xmax: q.xmax,
        ymin: q.ymin,
        ymax: q.ymax,
    };
    let overlay = q.overlay.unwrap_or_default();
    let payload = blocking(move || store.panel(&id, node, overlay, viewport)).await?;
    Ok(Json(payload).into_response())
}

async fn compare(
    State(store): State<Shared>,
    query: Result<Query<CompareQuery>, QueryRejection>,
) -> ApiResult<Response> {
    let Query(q) = query?;
    let cmp = blocking(move || store.compare(&q.a, &q.b)).await?;
    Ok(Json(cmp).into_response())
}

pub fn router(store: Arc<ScenarioStore>) -> Router {
    Router::new()
        .route("/graph", get(graph))
        .route("/symbols", get(symbols))
        .route("/scenarios", post(create))
        .route("/scenarios/{id}", get(fetch))
        .route("/scenarios/{id}/shocks", post(shock))
        .route("/scenarios/{id}/panels/{node}", get(panel))
        .route("/compare", get(compare))
        .with_state(store)
}

/// Serves the API until interrupted.
pub async fn serve(addr: SocketAddr, data: PathBuf) -> crate::error::Result<()> {
    let store = Arc::new(ScenarioStore::open(data)?);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
