//! HTTP sessions for hidden-codeword and adversarial games.
//!
//! `POST /sessions` creates a session, `POST /sessions/{id}/guess` plays a
//! guess, `GET /sessions/{id}` returns the transcript. Bodies use the word and
//! feedback JSON of the core library; errors come back as `{"error": reason}`.

mod error;
mod session;
mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};

pub use error::ApiError;
pub use session::{
    DictInput, GuessReply, GuessRequest, Session, SessionConfig, SessionMode, SessionRecord, SessionView, Status,
    WordInput,
};
pub use store::Store;

pub type Clock = Arc<dyn Fn() -> u64 + Send + Sync>;

/// Seconds since the Unix epoch.
pub fn system_clock() -> Clock {
    Arc::new(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()))
}

#[derive(Clone)]
pub struct AppState {
    pub store: Arc<Store>,
    /// Idle seconds before a session expires.
    pub ttl: u64,
    pub clock: Clock,
}

impl AppState {
    pub fn new(store: Store, ttl: u64, clock: Clock) -> Self {
        AppState { store: Arc::new(store), ttl, clock }
    }
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload.map(|Json(v)| v).map_err(|e| ApiError::Config(e.body_text()))
}

fn new_id() -> String {
    format!("{:032x}", rand::random::<u128>())
}

async fn create(
    State(app): State<AppState>,
    payload: Result<Json<SessionConfig>, JsonRejection>,
) -> Result<(StatusCode, Json<serde_json::Value>), ApiError> {
    let config = body(payload)?;
    let now = (app.clock)();
    let session = Session::create(new_id(), &config, now, app.ttl)?;
    let reply = serde_json::json!({
        "id": session.record.id,
        "mode": session.record.mode,
        "status": session.record.status,
        "expiresAt": session.record.expires_at,
    });
    app.store.insert(session).await?;
    Ok((StatusCode::CREATED, Json(reply)))
}

async fn guess(
    State(app): State<AppState>,
    Path(id): Path<String>,
    payload: Result<Json<GuessRequest>, JsonRejection>,
) -> Result<Json<GuessReply>, ApiError> {
    let shared = app.store.get(&id).await?;
    let mut s = shared.lock().await;
    let request = body(payload).map_err(|e| ApiError::Guess(e.to_string()))?;
    let now = (app.clock)();
    let result = s.guess(&request.word, now, app.ttl);
    // An expiry noticed while guessing is stored as well.
    app.store.save(&s.record).await?;
    result.map(Json)
}

async fn show(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    let shared = app.store.get(&id).await?;
    let mut s = shared.lock().await;
    if s.expire_if_due((app.clock)()) {
        app.store.save(&s.record).await?;
    }
    Ok(Json(s.view()))
}

pub fn router(app: AppState) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}/guess", post(guess))
        .route("/sessions/{id}", get(show))
        .with_state(app)
}

/// Serves until the process is stopped, sweeping expired sessions once a minute.
pub async fn serve(port: u16, ttl: u64, data_dir: Option<PathBuf>) -> std::io::Result<()> {
    let store = Store::new(data_dir)?;
    store.load_all().await.map_err(std::io::Error::other)?;
    let app = AppState::new(store, ttl, system_clock());
    let sweeper = app.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(Duration::from_secs(60));
        loop {
            tick.tick().await;
            let _ = sweeper.store.sweep((sweeper.clock)(), sweeper.ttl).await;
        }
    });
    let listener = tokio::net::TcpListener::bind(SocketAddr::from(([0, 0, 0, 0], port))).await?;
    axum::serve(listener, router(app)).await
}
