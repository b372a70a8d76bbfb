//! HTTP/JSON front end over the pattern and monoid engines. Each route
//! deserializes its request, runs the blocking operation on tokio's blocking
//! pool, and answers with the response or an [`ApiError`].

pub mod ops;

use axum::extract::rejection::JsonRejection;
use axum::extract::DefaultBodyLimit;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use subpat_api::{routes, ApiError, ErrorClass, Health};
use subpat_core::patterns::builtin_names;
use tokio::net::TcpListener;

/// An [`ApiError`] with its status: 400 invalid input, 422 resource limits,
/// 500 internal failures.
pub struct AppError(ApiError);

impl From<subpat_core::Error> for AppError {
    fn from(e: subpat_core::Error) -> Self {
        AppError(e.into())
    }
}

impl From<JsonRejection> for AppError {
    fn from(r: JsonRejection) -> Self {
        AppError(ApiError { error: r.body_text(), kind: ErrorClass::Invalid })
    }
}

impl IntoResponse for AppError {
    fn into_response(self) -> Response {
        let status = match self.0.kind {
            ErrorClass::Invalid => StatusCode::BAD_REQUEST,
            ErrorClass::Resource => StatusCode::UNPROCESSABLE_ENTITY,
            ErrorClass::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(self.0)).into_response()
    }
}

async fn blocking<Q, R>(
    req: Result<Json<Q>, JsonRejection>,
    op: fn(Q) -> subpat_core::Result<R>,
) -> Result<Json<R>, AppError>
where
    Q: Send + 'static,
    R: Send + 'static,
{
    let Json(req) = req?;
    let out = tokio::task::spawn_blocking(move || op(req)).await.map_err(|e| {
        AppError(ApiError { error: format!("operation aborted: {e}"), kind: ErrorClass::Internal })
    })?;
    Ok(Json(out?))
}

/// Request bodies may carry whole corpora.
pub const BODY_LIMIT: usize = 256 << 20;

pub fn router() -> Router {
    Router::new()
        .route(routes::HEALTH, get(health))
        .route(routes::PATTERNS, get(patterns))
        .route(routes::VALIDATE, post(|r| blocking(r, ops::validate)))
        .route(routes::CLASSIFY, post(|r| blocking(r, ops::classify)))
        .route(routes::CHECK_PATTERN, post(|r| blocking(r, ops::check_pattern)))
        .route(routes::PATTERN_GEN, post(|r| blocking(r, ops::pattern_gen)))
        .route(routes::MONOID, post(|r| blocking(r, ops::monoid)))
        .route(routes::CORPUS_GEN, post(|r| blocking(r, ops::corpus_gen)))
        .route(routes::CROSSCHECK, post(|r| blocking(r, ops::crosscheck)))
        .route(routes::HARDNESS_GEN, post(|r| blocking(r, ops::hardness_gen)))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
}

async fn health() -> Json<Health> {
    Json(Health { status: "ok".into(), version: env!("CARGO_PKG_VERSION").into() })
}

async fn patterns() -> Json<Vec<String>> {
    Json(builtin_names())
}

/// Serves until the future is dropped or the listener fails.
pub async fn serve(listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}
