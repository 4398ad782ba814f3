//! Local HTTP service for the interactive design loop.
//!
//! | method | path                          | purpose                                   |
//! |--------|-------------------------------|-------------------------------------------|
//! | GET    | `/functions`                  | catalog with parameter schemas            |
//! | GET    | `/colormaps`                  | names of stored colormap specs            |
//! | POST   | `/colormaps`                  | create `{name, spec}` (409 if it exists)  |
//! | PUT    | `/colormaps/{name}`           | create or replace a spec                  |
//! | GET    | `/colormaps/{name}`           | the stored spec document                  |
//! | DELETE | `/colormaps/{name}`           | remove a spec                             |
//! | POST   | `/evaluate`                   | run an evaluation, returns bundle id      |
//! | GET    | `/panels/{bundle}/{panel}`    | PNG panel (`?agg=` overrides aggregation) |
//! | GET    | `/observe/{bundle}?i=&j=`     | pixel-observer record                     |
//!
//! Validation failures return 400 with `{"error", "message", "fields": [{field,
//! message}]}`; unknown names return 404; an evaluation whose normalization
//! degenerated returns 422 with the full result body.
//!
//! Bundles are cached by a hash of the request and the referenced spec's
//! content; replacing or deleting a spec drops every bundle that used it.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use cmtest_core::raster::{render_panel, PANEL_NAMES};
use cmtest_core::{ColormapSpec, EvaluationBundle, TestSpec};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formats::colormap::{parse_spec, serialize_spec, ColormapDocument};
use crate::formats::testspec::{canonical_json, TestSpecDocument};
use crate::report::{self, sha256_hex, Summary};

/// Largest grid the service evaluates, in pixels.
pub const MAX_PIXELS: usize = 2_000_000;
/// Bundles kept in memory.
pub const BUNDLE_CACHE_CAPACITY: usize = 32;

struct StoredSpec {
    spec: ColormapSpec,
    hash: String,
}

struct CachedBundle {
    colormap: String,
    bundle: EvaluationBundle,
    body: Value,
}

#[derive(Default)]
struct BundleCache {
    entries: HashMap<String, Arc<CachedBundle>>,
    order: VecDeque<String>,
}

impl BundleCache {
    fn insert(&mut self, id: String, entry: Arc<CachedBundle>) {
        if self.entries.insert(id.clone(), entry).is_none() {
            self.order.push_back(id);
        }
        while self.order.len() > BUNDLE_CACHE_CAPACITY {
            if let Some(old) = self.order.pop_front() {
                self.entries.remove(&old);
            }
        }
    }

    fn invalidate(&mut self, colormap: &str) {
        self.entries.retain(|_, b| b.colormap != colormap);
        let entries = &self.entries;
        self.order.retain(|id| entries.contains_key(id));
    }
}

pub struct AppState {
    colormaps: RwLock<BTreeMap<String, StoredSpec>>,
    bundles: Mutex<BundleCache>,
    spec_dir: Option<PathBuf>,
}

impl AppState {
    /// Creates the state, loading `*.json` specs from `spec_dir` if given.
    pub fn new(spec_dir: Option<PathBuf>) -> Result<Self> {
        let mut colormaps = BTreeMap::new();
        if let Some(dir) = &spec_dir {
            crate::fsutil::create_dir_all(dir)?;
            let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
            for entry in entries {
                let path = entry.map_err(|e| Error::io(dir, e))?.path();
                let name = match path.file_stem().and_then(|s| s.to_str()) {
                    Some(n) if path.extension().is_some_and(|e| e == "json") && valid_name(n) => n.to_owned(),
                    _ => continue,
                };
                let bytes = crate::fsutil::read(&path)?;
                match parse_spec(&bytes) {
                    Ok(parsed) => {
                        colormaps.insert(name, stored(parsed.spec));
                    }
                    Err(e) => log::warn!("skipping {}: {e}", path.display()),
                }
            }
        }
        Ok(AppState { colormaps: RwLock::new(colormaps), bundles: Mutex::default(), spec_dir })
    }
}

fn stored(spec: ColormapSpec) -> StoredSpec {
    let hash = sha256_hex(&serialize_spec(&spec));
    StoredSpec { spec, hash }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.len() <= 64 && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/functions", get(functions))
        .route("/colormaps", get(list_colormaps).post(create_colormap))
        .route("/colormaps/{name}", get(get_colormap).put(put_colormap).delete(delete_colormap))
        .route("/evaluate", post(evaluate))
        .route("/panels/{bundle}/{panel}", get(panel))
        .route("/observe/{bundle}", get(observe))
        .with_state(state)
}

pub async fn serve(addr: &str, spec_dir: Option<PathBuf>) -> Result<()> {
    let state = Arc::new(AppState::new(spec_dir)?);
    let listener = tokio::net::TcpListener::bind(addr).await.map_err(|e| Error::io(addr, e))?;
    log::info!("listening on http://{addr}");
    axum::serve(listener, router(state)).await.map_err(|e| Error::io(addr, e))
}

/// An API error with its HTTP status.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    kind: &'static str,
    message: String,
    fields: Vec<(String, String)>,
}

impl ApiError {
    fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        let message = message.into();
        ApiError {
            status: StatusCode::BAD_REQUEST,
            kind: "validation",
            fields: vec![(field.into(), message.clone())],
            message,
        }
    }

    fn not_found(what: impl Into<String>) -> Self {
        ApiError { status: StatusCode::NOT_FOUND, kind: "not_found", message: what.into(), fields: Vec::new() }
    }

    fn conflict(what: impl Into<String>) -> Self {
        ApiError { status: StatusCode::CONFLICT, kind: "conflict", message: what.into(), fields: Vec::new() }
    }

    fn internal(e: impl std::fmt::Display) -> Self {
        ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            kind: "internal",
            message: e.to_string(),
            fields: Vec::new(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let fields: Vec<Value> = self.fields.iter().map(|(f, m)| json!({"field": f, "message": m})).collect();
        (self.status, Json(json!({"error": self.kind, "message": self.message, "fields": fields}))).into_response()
    }
}

/// Names the request field a colormap spec error refers to.
fn spec_field(message: &str) -> &'static str {
    if message.contains("interpolation_space") {
        "interpolation_space"
    } else if message.contains("nan_color") {
        "nan_color"
    } else if message.contains("range") {
        "range"
    } else if message.contains("key") {
        "keys"
    } else {
        "spec"
    }
}

fn spec_error(prefix: &str, e: Error) -> ApiError {
    let message = match e {
        Error::Spec(m) => m,
        other => other.to_string(),
    };
    let field = spec_field(&message);
    ApiError::validation(if prefix.is_empty() { field.to_owned() } else { format!("{prefix}.{field}") }, message)
}

fn test_error(e: Error) -> ApiError {
    use cmtest_core::Error as C;
    let field = match &e {
        Error::Core(C::UnknownFunction(_)) => "test.function".to_owned(),
        Error::Core(C::UnknownParameter { name, .. }) | Error::Core(C::InvalidParameter { name, .. }) => {
            format!("test.params.{name}")
        }
        Error::Core(C::InvalidDimensions { .. }) => "test.width".to_owned(),
        _ => "test".to_owned(),
    };
    ApiError::validation(field, e.to_string())
}

async fn functions() -> Json<Value> {
    Json(crate::catalog::catalog_json())
}

async fn list_colormaps(State(state): State<Arc<AppState>>) -> Json<Value> {
    let names: Vec<String> = state.colormaps.read().expect("lock").keys().cloned().collect();
    Json(json!({ "colormaps": names }))
}

async fn get_colormap(State(state): State<Arc<AppState>>, Path(name): Path<String>) -> Result<Response, ApiError> {
    let maps = state.colormaps.read().expect("lock");
    let s = maps.get(&name).ok_or_else(|| ApiError::not_found(format!("colormap `{name}`")))?;
    let doc = ColormapDocument::from_spec(&s.spec);
    Ok(Json(json!({"name": name, "hash": s.hash, "spec": doc})).into_response())
}

#[derive(Deserialize)]
struct CreateBody {
    name: String,
    spec: Value,
}

fn store(state: &AppState, name: &str, spec: ColormapSpec) -> Result<(bool, String), ApiError> {
    let mut maps = state.colormaps.write().expect("lock");
    if let Some(dir) = &state.spec_dir {
        crate::fsutil::write_atomic(&dir.join(format!("{name}.json")), &serialize_spec(&spec)).map_err(ApiError::internal)?;
    }
    let s = stored(spec);
    let hash = s.hash.clone();
    let created = maps.insert(name.to_owned(), s).is_none();
    state.bundles.lock().expect("lock").invalidate(name);
    Ok((created, hash))
}

fn check_name(name: &str) -> Result<(), ApiError> {
    if valid_name(name) {
        Ok(())
    } else {
        Err(ApiError::validation("name", "names are 1–64 characters of [A-Za-z0-9_-]"))
    }
}

async fn create_colormap(State(state): State<Arc<AppState>>, body: Bytes) -> Result<Response, ApiError> {
    let body: CreateBody = serde_json::from_slice(&body).map_err(|e| ApiError::validation("body", e.to_string()))?;
    check_name(&body.name)?;
    let text = serde_json::to_vec(&body.spec).map_err(ApiError::internal)?;
    let parsed = parse_spec(&text).map_err(|e| spec_error("spec", e))?;
    if state.colormaps.read().expect("lock").contains_key(&body.name) {
        return Err(ApiError::conflict(format!("colormap `{}` exists; use PUT to replace it", body.name)));
    }
    let (_, hash) = store(&state, &body.name, parsed.spec)?;
    Ok((StatusCode::CREATED, Json(json!({"name": body.name, "hash": hash, "warnings": parsed.warnings}))).into_response())
}

async fn put_colormap(
    State(state): State<Arc<AppState>>,
    Path(name): Path<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    check_name(&name)?;
    let parsed = parse_spec(&body).map_err(|e| spec_error("", e))?;
    let (created, hash) = store(&state, &name, parsed.spec)?;
    let status = if created { StatusCode::CREATED } else { StatusCode::OK };
    Ok((status, Json(json!({"name": name, "hash": hash, "warnings": parsed.warnings}))).into_response())
}

async fn delete_colormap(State(state): State<Arc<AppState>>, Path(name): Path<String>) -> Result<StatusCode, ApiError> {
    let mut maps = state.colormaps.write().expect("lock");
    if maps.remove(&name).is_none() {
        return Err(ApiError::not_found(format!("colormap `{name}`")));
    }
    if let Some(dir) = &state.spec_dir {
        let path = dir.join(format!("{name}.json"));
        if path.exists() {
            std::fs::remove_file(&path).map_err(ApiError::internal)?;
        }
    }
    state.bundles.lock().expect("lock").invalidate(&name);
    Ok(StatusCode::NO_CONTENT)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvaluateBody {
    test: Value,
    colormap: String,
    #[serde(default = "default_metric")]
    metric: String,
    #[serde(default = "default_normalization")]
    normalization: String,
    #[serde(default = "default_aggregation")]
    aggregation: String,
}

fn default_metric() -> String {
    "ciede2000".into()
}
fn default_normalization() -> String {
    "minmax".into()
}
fn default_aggregation() -> String {
    "max".into()
}

fn evaluation_response(cached: &CachedBundle) -> Response {
    let status = if cached.bundle.is_degenerate() { StatusCode::UNPROCESSABLE_ENTITY } else { StatusCode::OK };
    (status, Json(cached.body.clone())).into_response()
}

async fn evaluate(State(state): State<Arc<AppState>>, body: Bytes) -> Result<Response, ApiError> {
    let req: EvaluateBody = serde_json::from_slice(&body).map_err(|e| ApiError::validation("body", e.to_string()))?;
    let doc: TestSpecDocument =
        serde_json::from_value(req.test).map_err(|e| ApiError::validation("test", e.to_string()))?;
    let test: TestSpec = doc.to_spec().map_err(test_error)?;
    if test.width.saturating_mul(test.height) > MAX_PIXELS {
        return Err(ApiError::validation("test.width", format!("grids are limited to {MAX_PIXELS} pixels")));
    }
    let metric = report::parse_metric(&req.metric).map_err(|e| ApiError::validation("metric", e.to_string()))?;
    let normalization = report::parse_normalization(&req.normalization)
        .map_err(|e| ApiError::validation("normalization", e.to_string()))?;
    let aggregation = report::parse_aggregation(&req.aggregation)
        .map_err(|e| ApiError::validation("aggregation", e.to_string()))?;
    let (cmap, cmap_hash) = {
        let maps = state.colormaps.read().expect("lock");
        let s = maps.get(&req.colormap).ok_or_else(|| ApiError::not_found(format!("colormap `{}`", req.colormap)))?;
        (s.spec.clone(), s.hash.clone())
    };

    let id = {
        let key = json!({
            "test": String::from_utf8(canonical_json(&test)).expect("utf-8"),
            "colormap": req.colormap,
            "colormap_sha256": cmap_hash,
            "metric": metric.name(),
            "normalization": report::normalization_label(normalization),
            "aggregation": aggregation.name(),
        });
        sha256_hex(key.to_string().as_bytes())
    };
    if let Some(hit) = state.bundles.lock().expect("lock").entries.get(&id).cloned() {
        return Ok(evaluation_response(&hit));
    }

    let colormap_name = req.colormap.clone();
    let bundle_id = id.clone();
    let cached = tokio::task::spawn_blocking(move || -> Result<CachedBundle> {
        let warnings = test.warnings();
        let field = crate::generate::generate(&test)?;
        let bundle = EvaluationBundle::evaluate(field, cmap, metric, normalization, aggregation)?.with_test_spec(test);
        let summary = Summary::of(&bundle, None, warnings);
        let mut body = serde_json::to_value(&summary).expect("serializable");
        body["bundle"] = json!(bundle_id);
        body["colormap"] = json!(colormap_name);
        body["panels"] = json!(PANEL_NAMES.iter().map(|p| format!("/panels/{bundle_id}/{p}")).collect::<Vec<_>>());
        Ok(CachedBundle { colormap: colormap_name, bundle, body })
    })
    .await
    .map_err(ApiError::internal)?
    .map_err(|e| match e {
        Error::Core(_) => ApiError::validation("test", e.to_string()),
        other => ApiError::internal(other),
    })?;

    let cached = Arc::new(cached);
    let response = evaluation_response(&cached);
    // Only cache if the spec has not changed while we were computing.
    let still_current = state.colormaps.read().expect("lock").get(&cached.colormap).is_some_and(|s| s.hash == cmap_hash);
    if still_current {
        state.bundles.lock().expect("lock").insert(id, cached);
    }
    Ok(response)
}

fn bundle(state: &AppState, id: &str) -> Result<Arc<CachedBundle>, ApiError> {
    state
        .bundles
        .lock()
        .expect("lock")
        .entries
        .get(id)
        .cloned()
        .ok_or_else(|| ApiError::not_found(format!("bundle `{id}` (unknown or invalidated by a spec edit)")))
}

async fn panel(
    State(state): State<Arc<AppState>>,
    Path((id, name)): Path<(String, String)>,
    Query(q): Query<HashMap<String, String>>,
) -> Result<Response, ApiError> {
    let b = bundle(&state, &id)?;
    let agg = match q.get("agg") {
        Some(a) => report::parse_aggregation(a).map_err(|e| ApiError::validation("agg", e.to_string()))?,
        None => b.bundle.aggregation,
    };
    let name = name.strip_suffix(".png").unwrap_or(&name).to_owned();
    let png = tokio::task::spawn_blocking(move || {
        render_panel(&b.bundle, &name, agg).map(|img| crate::formats::image::encode_png(&img))
    })
    .await
    .map_err(ApiError::internal)?
    .ok_or_else(|| ApiError::not_found(format!("panel (expected one of {})", PANEL_NAMES.join(", "))))?
    .map_err(ApiError::internal)?;
    Ok(([(header::CONTENT_TYPE, "image/png")], png).into_response())
}

async fn observe(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Result<Response, ApiError> {
    let b = bundle(&state, &id)?;
    let index = |k: &str| -> Result<usize, ApiError> {
        q.get(k)
            .ok_or_else(|| ApiError::validation(k, "required"))?
            .parse()
            .map_err(|_| ApiError::validation(k, "must be a non-negative integer"))
    };
    let (i, j) = (index("i")?, index("j")?);
    let report = b.bundle.pixel_observer(i, j).map_err(|e| ApiError::validation("i", e.to_string()))?;
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "offset": [r.offset.0, r.offset.1],
                "neighbor": [r.neighbor.0, r.neighbor.1],
                "neighbor_value": r.neighbor_value,
                "value_raw": r.value_raw,
                "value_normalized": r.value_normalized,
                "color_raw": r.color_raw,
                "color_normalized": r.color_normalized,
                "subtraction": r.subtraction,
            })
        })
        .collect();
    Ok(Json(json!({"bundle": id, "i": report.i, "j": report.j, "value": report.value, "rows": rows})).into_response())
}
