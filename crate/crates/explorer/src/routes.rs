use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex as StdMutex};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use lru::LruCache;
use quiverlab::Quiver;
use serde::Deserialize;
use serde_json::json;
use tokio::sync::Mutex;

use crate::session::{Session, SessionError};

/// Default number of live sessions before the least recently used is dropped.
pub const SESSION_CAP: usize = 256;

type Shared = Arc<Mutex<Session>>;

/// In-memory session table with least-recently-used eviction.
#[derive(Clone)]
pub struct Sessions {
    inner: Arc<StdMutex<LruCache<String, Shared>>>,
}

impl Sessions {
    pub fn new(cap: usize) -> Self {
        let cap = NonZeroUsize::new(cap).unwrap_or(NonZeroUsize::MIN);
        Sessions {
            inner: Arc::new(StdMutex::new(LruCache::new(cap))),
        }
    }

    fn insert(&self, session: Session) -> String {
        let id = uuid::Uuid::new_v4().simple().to_string();
        self.lock().put(id.clone(), Arc::new(Mutex::new(session)));
        id
    }

    fn get(&self, id: &str) -> Result<Shared, ApiError> {
        self.lock()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no session {id}")))
    }

    pub fn len(&self) -> usize {
        self.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, LruCache<String, Shared>> {
        self.inner.lock().unwrap_or_else(|p| p.into_inner())
    }
}

impl Default for Sessions {
    fn default() -> Self {
        Sessions::new(SESSION_CAP)
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, message)
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match e {
            SessionError::EmptyHistory => StatusCode::CONFLICT,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError::new(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

type ApiResult = Result<Json<serde_json::Value>, ApiError>;

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("invalid JSON body: {e}")))
}

fn to_json<T: serde::Serialize>(value: T) -> ApiResult {
    serde_json::to_value(value)
        .map(Json)
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))
}

async fn create(State(sessions): State<Sessions>, body: Bytes) -> Result<(StatusCode, Json<serde_json::Value>), ApiError> {
    let text = std::str::from_utf8(&body).map_err(|_| ApiError::bad_request("body is not UTF-8"))?;
    let quiver = Quiver::from_json(text).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let session = Session::new(quiver);
    let view = session.view("")?;
    let id = sessions.insert(session);
    let view = crate::session::StateView { id, ..view };
    Ok((StatusCode::CREATED, to_json(view)?))
}

async fn state(State(sessions): State<Sessions>, Path(id): Path<String>) -> ApiResult {
    let shared = sessions.get(&id)?;
    let session = shared.lock().await;
    to_json(session.view(&id)?)
}

#[derive(Deserialize)]
struct MutateBody {
    vertex: usize,
}

async fn mutate(State(sessions): State<Sessions>, Path(id): Path<String>, body: Bytes) -> ApiResult {
    let MutateBody { vertex } = parse_body(&body)?;
    let shared = sessions.get(&id)?;
    let mut session = shared.lock().await;
    session.mutate(vertex)?;
    to_json(session.view(&id)?)
}

async fn undo(State(sessions): State<Sessions>, Path(id): Path<String>) -> ApiResult {
    let shared = sessions.get(&id)?;
    let mut session = shared.lock().await;
    session.undo()?;
    to_json(session.view(&id)?)
}

async fn hint(State(sessions): State<Sessions>, Path(id): Path<String>) -> ApiResult {
    let shared = sessions.get(&id)?;
    let session = shared.lock().await;
    to_json(json!({ "green": session.hint()? }))
}

async fn variable(State(sessions): State<Sessions>, Path((id, vertex)): Path<(String, usize)>) -> ApiResult {
    let shared = sessions.get(&id)?;
    let session = shared.lock().await;
    to_json(json!({ "vertex": vertex, "text": session.variable(vertex)? }))
}

async fn characters(State(sessions): State<Sessions>, Path(id): Path<String>) -> ApiResult {
    let shared = sessions.get(&id)?;
    let mut session = shared.lock().await;
    to_json(session.characters()?.to_json())
}

async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "no such route")
}

fn routes() -> Router<Sessions> {
    Router::new()
        .route("/session", post(create))
        .route("/session/{id}", get(state))
        .route("/session/{id}/mutate", post(mutate))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/hint", get(hint))
        .route("/session/{id}/variable/{vertex}", get(variable))
        .route("/session/{id}/characters", get(characters))
}

/// The session API; unknown paths get a JSON 404.
pub fn router(sessions: Sessions) -> Router {
    routes().fallback(not_found).with_state(sessions)
}

/// The session API, with files under `dir` served for every other path.
pub fn router_with_assets(sessions: Sessions, dir: &std::path::Path) -> Router {
    routes()
        .with_state(sessions)
        .fallback_service(tower_http::services::ServeDir::new(dir))
}
