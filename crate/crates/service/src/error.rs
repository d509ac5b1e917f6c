use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ApiError {
    #[error("no session `{0}`")]
    NotFound(String),
    #[error("invalid session config: {0}")]
    Config(String),
    #[error("invalid guess: {0}")]
    Guess(String),
    #[error("session is {0}")]
    Closed(&'static str),
    #[error("storage: {0}")]
    Storage(String),
}

impl ApiError {
    fn status(&self) -> StatusCode {
        match self {
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::Config(_) => StatusCode::BAD_REQUEST,
            ApiError::Guess(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::Closed(_) => StatusCode::CONFLICT,
            ApiError::Storage(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status(), Json(serde_json::json!({ "error": self.to_string() }))).into_response()
    }
}
