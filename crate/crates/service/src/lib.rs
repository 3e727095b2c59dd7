//! HTTP front end for the rule-mining engine: launch runs, follow them
//! generation by generation over server-sent events, stop them early and
//! read their rules and fronts.

pub mod payload;
pub mod registry;

use std::convert::Infallible;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::sse::{Event, KeepAlive, Sse};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use carm_core::{presets, Error as CoreError, FieldError, RunConfig};
use futures::stream::{self, Stream, StreamExt};
use serde::Deserialize;
use tower_http::services::ServeDir;
use uuid::Uuid;

use payload::{DatasetView, ErrorBody, PresetView, RunEvent, RunHandle};
use registry::{LaunchError, Registry, RunEntry};

pub const DEFAULT_PORT: u16 = 8077;
pub const DEFAULT_MAX_ACTIVE_RUNS: usize = 2;

#[derive(Clone, Debug)]
pub struct ServiceConfig {
    /// Finished runs are written under `<out_dir>/runs`.
    pub out_dir: PathBuf,
    pub max_active_runs: usize,
    /// Built UI bundle served at `/`.
    pub static_dir: Option<PathBuf>,
}

impl ServiceConfig {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        ServiceConfig {
            out_dir: out_dir.into(),
            max_active_runs: DEFAULT_MAX_ACTIVE_RUNS,
            static_dir: None,
        }
    }
}

#[derive(Clone)]
pub struct AppState {
    registry: Arc<Registry>,
}

impl AppState {
    pub fn open(config: &ServiceConfig) -> std::io::Result<Self> {
        Ok(AppState {
            registry: Arc::new(Registry::open(&config.out_dir, config.max_active_runs)?),
        })
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }
}

pub struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl ApiError {
    fn new(status: StatusCode, error: impl Into<String>) -> Self {
        ApiError {
            status,
            body: ErrorBody {
                error: error.into(),
                fields: Vec::new(),
            },
        }
    }

    fn invalid(fields: Vec<FieldError>) -> Self {
        let error = fields.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ");
        ApiError {
            status: StatusCode::BAD_REQUEST,
            body: ErrorBody { error, fields },
        }
    }

    fn not_found(id: Uuid) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, format!("no run {id}"))
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

pub fn router(state: AppState, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/runs", post(create_run).get(list_runs))
        .route("/api/runs/{id}", get(get_run))
        .route("/api/runs/{id}/config", get(get_config))
        .route("/api/runs/{id}/result", get(get_result))
        .route("/api/runs/{id}/events", get(events))
        .route("/api/runs/{id}/stop", post(stop_run))
        .route("/api/runs/{id}/rules", get(get_rules))
        .route("/api/runs/{id}/front", get(get_front))
        .route("/api/datasets", get(datasets))
        .route("/api/presets", get(presets_list))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Binds `port` on all interfaces and serves until the process ends.
pub async fn serve(config: ServiceConfig, port: u16) -> std::io::Result<()> {
    let state = AppState::open(&config)?;
    let app = router(state, config.static_dir.clone());
    let listener = tokio::net::TcpListener::bind(SocketAddr::from(([0, 0, 0, 0], port))).await?;
    axum::serve(listener, app).await
}

fn entry(state: &AppState, id: Uuid) -> ApiResult<Arc<RunEntry>> {
    state.registry.get(id).ok_or_else(|| ApiError::not_found(id))
}

fn config_errors(err: CoreError) -> Vec<FieldError> {
    match err {
        CoreError::InvalidConfig(fields) => fields,
        other => vec![FieldError::new("dataset", other.to_string())],
    }
}

async fn create_run(State(state): State<AppState>, body: Bytes) -> ApiResult<(StatusCode, Json<RunHandle>)> {
    let config: RunConfig = serde_json::from_slice(&body)
        .map_err(|e| ApiError::invalid(vec![FieldError::new("body", e.to_string())]))?;
    let errors = config.validate();
    if !errors.is_empty() {
        return Err(ApiError::invalid(errors));
    }
    let probe = config.clone();
    let dataset = tokio::task::spawn_blocking(move || probe.load_dataset())
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map_err(|e| ApiError::invalid(config_errors(e)))?;
    let errors = config.validate_for(&dataset);
    if !errors.is_empty() {
        return Err(ApiError::invalid(errors));
    }
    match state.registry.launch(config, dataset) {
        Ok(handle) => Ok((StatusCode::CREATED, Json(handle))),
        Err(LaunchError::AtCapacity(limit)) => Err(ApiError::new(
            StatusCode::CONFLICT,
            format!("{limit} runs already active"),
        )),
    }
}

async fn list_runs(State(state): State<AppState>) -> Json<Vec<RunHandle>> {
    Json(state.registry.list().iter().map(|r| r.handle()).collect())
}

async fn get_run(State(state): State<AppState>, Path(id): Path<Uuid>) -> ApiResult<Json<RunHandle>> {
    Ok(Json(entry(&state, id)?.handle()))
}

async fn get_config(State(state): State<AppState>, Path(id): Path<Uuid>) -> ApiResult<Json<RunConfig>> {
    Ok(Json(entry(&state, id)?.config.clone()))
}

async fn get_result(State(state): State<AppState>, Path(id): Path<Uuid>) -> ApiResult<Response> {
    let run = entry(&state, id)?;
    match run.result() {
        Some(result) => Ok(Json(result).into_response()),
        None => Err(ApiError::new(StatusCode::NOT_FOUND, format!("run {id} has no result yet"))),
    }
}

async fn stop_run(State(state): State<AppState>, Path(id): Path<Uuid>) -> ApiResult<Json<RunHandle>> {
    let run = entry(&state, id)?;
    if run.state().is_terminal() {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            format!("run {id} has already ended"),
        ));
    }
    run.stop().await;
    Ok(Json(run.handle()))
}

#[derive(Deserialize)]
struct RulesQuery {
    #[serde(default)]
    all: bool,
}

async fn get_rules(
    State(state): State<AppState>,
    Path(id): Path<Uuid>,
    Query(query): Query<RulesQuery>,
) -> ApiResult<Json<Vec<payload::RulePoint>>> {
    let run = entry(&state, id)?;
    Ok(Json(if query.all { run.rules() } else { run.front() }))
}

async fn get_front(State(state): State<AppState>, Path(id): Path<Uuid>) -> ApiResult<Json<Vec<payload::RulePoint>>> {
    Ok(Json(entry(&state, id)?.front()))
}

fn sse_event(event: &RunEvent) -> Result<Event, Infallible> {
    let data = serde_json::to_string(event).expect("events serialize");
    Ok(Event::default().event(event.name()).data(data))
}

async fn events(
    State(state): State<AppState>,
    Path(id): Path<Uuid>,
) -> ApiResult<Sse<impl Stream<Item = Result<Event, Infallible>>>> {
    let run = entry(&state, id)?;
    let (past, live) = run.subscribe();
    let live = stream::unfold(live, |rx| async move {
        let mut rx = rx?;
        let event = rx.recv().await?;
        let next = if event.is_terminal() { None } else { Some(rx) };
        Some((event, next))
    });
    let stream = stream::iter(past).chain(live).map(|e| sse_event(&e));
    Ok(Sse::new(stream).keep_alive(KeepAlive::default()))
}

async fn datasets() -> ApiResult<Json<Vec<DatasetView>>> {
    let views = presets::NAMES
        .iter()
        .map(|name| presets::load(name).map(|ds| DatasetView::from(&ds)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(Json(views))
}

async fn presets_list() -> ApiResult<Json<Vec<PresetView>>> {
    let views = presets::NAMES
        .iter()
        .map(|&name| {
            RunConfig::preset(name).map(|config| PresetView {
                name: name.to_string(),
                population_size: config.population_size,
                config,
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(Json(views))
}
