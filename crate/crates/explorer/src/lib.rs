//! Session service behind the browser mutation explorer.
//!
//! | method | path | body | result |
//! |---|---|---|---|
//! | POST | `/session` | quiver JSON `{"n":2,"arrows":[[1,2]]}` | new state, `201` |
//! | GET | `/session/{id}` | | current state |
//! | POST | `/session/{id}/mutate` | `{"vertex":k}` | state after `mu_k` |
//! | POST | `/session/{id}/undo` | | state before the last move, `409` if none |
//! | GET | `/session/{id}/hint` | | `{"green":[...]}` |
//! | GET | `/session/{id}/variable/{k}` | | full text of `x_k` |
//! | GET | `/session/{id}/characters` | | character table, type A only |
//!
//! Errors are `{"error": text}` with status `400`, `404` or `409`.

mod routes;
pub mod session;

use std::net::SocketAddr;
use std::path::Path;

use axum::Router;

pub use routes::{router, router_with_assets, ApiError, Sessions, SESSION_CAP};
pub use session::{Session, SessionError, StateView, Step, VARIABLE_LIMIT};

/// A fresh session table behind the API, plus static files when `assets` is set.
pub fn app(assets: Option<&Path>) -> Router {
    match assets {
        Some(dir) => router_with_assets(Sessions::default(), dir),
        None => router(Sessions::default()),
    }
}

/// Binds `addr` and serves [`app`] until the process is stopped.
pub async fn serve(addr: SocketAddr, assets: Option<&Path>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, app(assets)).await
}
