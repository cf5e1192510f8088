//! HTTP routes over a [`Store`].

use std::collections::HashMap;
use std::io;
use std::net::{SocketAddr, TcpListener as StdListener};
use std::path::PathBuf;
use std::sync::Arc;
use std::thread::JoinHandle;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use log::info;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;
use splitqa_core::analysis::SampledPair;
use tokio::sync::oneshot;
use tower_http::services::ServeDir;

use crate::model::TaskKind;
use crate::store::{EditLabelSubmission, RatingSubmission, Store, StoreError};

const INDEX_HTML: &str = include_str!("../assets/index.html");

pub struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

impl From<StoreError> for ApiError {
    fn from(err: StoreError) -> Self {
        let status = match &err {
            StoreError::UnknownTask(_) => StatusCode::NOT_FOUND,
            StoreError::UnknownPair { .. } | StoreError::Invalid(_) => StatusCode::BAD_REQUEST,
            StoreError::WrongKind { .. } => StatusCode::CONFLICT,
            StoreError::Io { .. } | StoreError::Corrupt { .. } => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError(status, err.to_string())
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn parse_body<T: DeserializeOwned>(body: &[u8]) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError(StatusCode::BAD_REQUEST, format!("invalid request body: {e}")))
}

/// Runs a store call off the async workers, since appends wait on fsync.
async fn blocking<T: Send + 'static>(
    store: &Arc<Store>,
    f: impl FnOnce(&Store) -> Result<T, StoreError> + Send + 'static,
) -> ApiResult<T> {
    let store = Arc::clone(store);
    tokio::task::spawn_blocking(move || f(&store))
        .await
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map_err(ApiError::from)
}

#[derive(Deserialize)]
struct CreateTask {
    kind: String,
    pairs: Vec<SampledPair>,
}

async fn create_task(State(store): State<Arc<Store>>, body: Bytes) -> ApiResult<impl IntoResponse> {
    let request: CreateTask = parse_body(&body)?;
    let kind: TaskKind = request
        .kind
        .parse()
        .map_err(|e| ApiError(StatusCode::BAD_REQUEST, e))?;
    let (task, created) = blocking(&store, move |s| s.create_task(kind, request.pairs)).await?;
    let status = if created { StatusCode::CREATED } else { StatusCode::OK };
    Ok((
        status,
        Json(json!({
            "task_id": task.task_id,
            "kind": task.kind,
            "pairs": task.pairs.len(),
            "created": created,
        })),
    ))
}

async fn list_tasks(State(store): State<Arc<Store>>) -> impl IntoResponse {
    Json(json!({ "tasks": store.task_ids() }))
}

async fn get_task(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    Ok(Json(store.task(&id)?))
}

async fn next_item(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    Query(query): Query<HashMap<String, String>>,
) -> ApiResult<impl IntoResponse> {
    let rater = query
        .get("rater")
        .cloned()
        .ok_or_else(|| ApiError(StatusCode::BAD_REQUEST, "missing `rater` query parameter".into()))?;
    Ok(Json(store.next_item(&id, &rater)?))
}

async fn submit_rating(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<impl IntoResponse> {
    let submission: RatingSubmission = parse_body(&body)?;
    let record = blocking(&store, move |s| s.submit_rating(&id, submission)).await?;
    Ok(Json(json!({ "acknowledged": true, "record": record })))
}

async fn submit_edit_label(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<impl IntoResponse> {
    let submission: EditLabelSubmission = parse_body(&body)?;
    let record = blocking(&store, move |s| s.submit_edit_label(&id, submission)).await?;
    Ok(Json(json!({ "acknowledged": true, "record": record })))
}

async fn report(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    Ok(Json(store.report(&id)?))
}

async fn index() -> Html<&'static str> {
    Html(INDEX_HTML)
}

/// API routes plus static UI files: from `ui_dir` when given, otherwise the
/// bundled single page.
pub fn router(store: Arc<Store>, ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/tasks", post(create_task).get(list_tasks))
        .route("/tasks/{id}", get(get_task))
        .route("/tasks/{id}/next", get(next_item))
        .route("/tasks/{id}/ratings", post(submit_rating))
        .route("/tasks/{id}/edit-labels", post(submit_edit_label))
        .route("/tasks/{id}/report", get(report))
        .with_state(store);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(index)).route("/index.html", get(index)),
    }
}

/// A server running on its own thread; dropping it shuts the server down.
pub struct ServerHandle {
    addr: SocketAddr,
    shutdown: Option<oneshot::Sender<()>>,
    thread: Option<JoinHandle<io::Result<()>>>,
}

impl ServerHandle {
    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    pub fn url(&self) -> String {
        format!("http://{}", self.addr)
    }

    /// Stops accepting requests and waits for in-flight ones to finish.
    pub fn shutdown(mut self) -> io::Result<()> {
        self.stop()
    }

    fn stop(&mut self) -> io::Result<()> {
        if let Some(tx) = self.shutdown.take() {
            let _ = tx.send(());
        }
        match self.thread.take() {
            Some(t) => t.join().unwrap_or_else(|_| Err(io::Error::other("server thread panicked"))),
            None => Ok(()),
        }
    }
}

impl Drop for ServerHandle {
    fn drop(&mut self) {
        let _ = self.stop();
    }
}

/// Binds `listen` (port 0 picks a free one) and serves on a background thread.
pub fn spawn(listen: &str, store: Arc<Store>, ui_dir: Option<PathBuf>) -> io::Result<ServerHandle> {
    let listener = StdListener::bind(listen)?;
    listener.set_nonblocking(true)?;
    let addr = listener.local_addr()?;
    let (tx, rx) = oneshot::channel::<()>();
    let app = router(store, ui_dir);
    let thread = std::thread::Builder::new()
        .name("annotate-server".into())
        .spawn(move || {
            let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
            runtime.block_on(async move {
                let listener = tokio::net::TcpListener::from_std(listener)?;
                axum::serve(listener, app)
                    .with_graceful_shutdown(async {
                        let _ = rx.await;
                    })
                    .await
            })
        })?;
    Ok(ServerHandle {
        addr,
        shutdown: Some(tx),
        thread: Some(thread),
    })
}

#[derive(Debug, thiserror::Error)]
pub enum ServeError {
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("cannot listen on {listen}: {source}")]
    Listen { listen: String, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Serves until interrupted. Blocks the calling thread.
pub fn serve(listen: &str, data_dir: PathBuf, ui_dir: Option<PathBuf>) -> Result<(), ServeError> {
    let store = Arc::new(Store::open(data_dir)?);
    let listener = StdListener::bind(listen).map_err(|source| ServeError::Listen {
        listen: listen.to_string(),
        source,
    })?;
    listener.set_nonblocking(true)?;
    let addr = listener.local_addr()?;
    info!("annotation service on http://{addr} (data in {})", store.dir().display());
    let app = router(store, ui_dir);
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::from_std(listener)?;
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
    })?;
    Ok(())
}
