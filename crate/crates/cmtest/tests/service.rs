//! HTTP API contract, exercised in-process with `tower::ServiceExt::oneshot`.

use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use cmtest::service::{router, AppState};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(Arc::new(AppState::new(None).unwrap()))
}

async fn send(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = match body {
        Some(v) => req.body(Body::from(v.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn send_json(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let (status, bytes) = send(app, method, uri, body).await;
    (status, if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() })
}

fn gray() -> Value {
    json!({
        "range": [-63, 53],
        "interpolation_space": "lab",
        "keys": [
            {"position": -63, "left_rgb": [0, 0, 0]},
            {"position": 53, "left_rgb": [1, 1, 1]}
        ]
    })
}

fn two_hue() -> Value {
    json!({
        "range": [-63, 53],
        "interpolation_space": "lab",
        "keys": [
            {"position": -63, "left_rgb": [0.23, 0.3, 0.75]},
            {"position": 0, "left_rgb": [0.7, 0.8, 0.95], "right_rgb": [1, 1, 1]},
            {"position": 53, "left_rgb": [0.71, 0.02, 0.15]}
        ]
    })
}

fn threshold_request(colormap: &str) -> Value {
    json!({
        "test": {"function": "threshold", "width": 60, "height": 40,
                 "params": {"m": -63, "M": 53, "t": 0, "T": "flat", "b": 2}},
        "colormap": colormap,
        "metric": "ciede2000",
        "normalization": "blackwhite",
        "aggregation": "max"
    })
}

#[tokio::test]
async fn functions_lists_catalog() {
    let (status, body) = send_json(&app(), "GET", "/functions", None).await;
    assert_eq!(status, StatusCode::OK);
    let ids: Vec<&str> = body.as_array().unwrap().iter().map(|f| f["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"threshold") && ids.contains(&"mandelbrot"));
}

#[tokio::test]
async fn colormap_crud() {
    let app = app();
    let (status, _) = send_json(&app, "POST", "/colormaps", Some(json!({"name": "g", "spec": gray()}))).await;
    assert_eq!(status, StatusCode::CREATED);
    let (status, _) = send_json(&app, "POST", "/colormaps", Some(json!({"name": "g", "spec": gray()}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (status, body) = send_json(&app, "GET", "/colormaps/g", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["spec"]["range"], json!([-63.0, 53.0]));
    let (status, _) = send_json(&app, "PUT", "/colormaps/g", Some(two_hue())).await;
    assert_eq!(status, StatusCode::OK);
    let (status, body) = send_json(&app, "GET", "/colormaps", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["colormaps"], json!(["g"]));
    let (status, _) = send_json(&app, "DELETE", "/colormaps/g", None).await;
    assert_eq!(status, StatusCode::NO_CONTENT);
    let (status, _) = send_json(&app, "GET", "/colormaps/g", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = send_json(&app, "DELETE", "/colormaps/g", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn invalid_spec_is_400_with_field_errors() {
    let app = app();
    let mut spec = gray();
    spec["keys"][1]["position"] = json!(-63);
    spec["range"] = json!([-63, -63]);
    let (status, body) = send_json(&app, "POST", "/colormaps", Some(json!({"name": "bad", "spec": spec}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["message"].as_str().unwrap().contains("duplicate key position"), "{body}");
    assert_eq!(body["fields"][0]["field"], "spec.keys");

    let mut spec = gray();
    spec["interpolation_space"] = json!("hsv");
    let (status, body) = send_json(&app, "PUT", "/colormaps/bad", Some(spec)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["fields"][0]["field"], "interpolation_space");

    let (status, _) = send_json(&app, "PUT", "/colormaps/..%2Fetc", Some(gray())).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn evaluate_panels_and_observer() {
    let app = app();
    send_json(&app, "PUT", "/colormaps/g", Some(gray())).await;
    let (status, first) = send_json(&app, "POST", "/evaluate", Some(threshold_request("g"))).await;
    assert_eq!(status, StatusCode::OK, "{first}");
    let id = first["bundle"].as_str().unwrap().to_owned();
    assert_eq!(first["statistics"]["value"]["count"], json!(2 * 59 * 40 + 2 * 60 * 39 + 4 * 59 * 39));

    let (status, again) = send_json(&app, "POST", "/evaluate", Some(threshold_request("g"))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(again["bundle"], first["bundle"]);
    assert_eq!(again["statistics"], first["statistics"]);

    for panel in ["grayscale", "mapped", "value", "color", "subtraction"] {
        let (status, png) = send(&app, "GET", &format!("/panels/{id}/{panel}"), None).await;
        assert_eq!(status, StatusCode::OK);
        let img = cmtest::formats::image::decode_png(&png).unwrap();
        assert_eq!((img.width(), img.height()), (60, 40));
    }
    let (status, _) = send(&app, "GET", &format!("/panels/{id}/teapot"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = send(&app, "GET", &format!("/panels/{id}/value?agg=median"), None).await;
    assert_eq!(status, StatusCode::OK);

    let (status, obs) = send_json(&app, "GET", &format!("/observe/{id}?i=10&j=10"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(obs["rows"].as_array().unwrap().len(), 8);
    let (status, obs) = send_json(&app, "GET", &format!("/observe/{id}?i=0&j=0"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(obs["rows"].as_array().unwrap().len(), 3);
    let (status, _) = send_json(&app, "GET", &format!("/observe/{id}?i=60&j=0"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = send_json(&app, "GET", "/observe/nope?i=0&j=0", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    // Editing the spec invalidates the cached bundle and changes the result.
    send_json(&app, "PUT", "/colormaps/g", Some(two_hue())).await;
    let (status, _) = send(&app, "GET", &format!("/panels/{id}/value"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, edited) = send_json(&app, "POST", "/evaluate", Some(threshold_request("g"))).await;
    assert_eq!(status, StatusCode::OK);
    assert_ne!(edited["bundle"], first["bundle"]);
    assert_ne!(edited["statistics"]["color"]["mean"], first["statistics"]["color"]["mean"]);
}

#[tokio::test]
async fn evaluate_validation_and_degenerate() {
    let app = app();
    send_json(&app, "PUT", "/colormaps/g", Some(gray())).await;

    let (status, _) = send_json(&app, "POST", "/evaluate", Some(threshold_request("missing"))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let mut req = threshold_request("g");
    req["test"]["params"]["t"] = json!(99);
    let (status, body) = send_json(&app, "POST", "/evaluate", Some(req)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["fields"][0]["field"], "test.params.t", "{body}");

    let mut req = threshold_request("g");
    req["test"]["params"]["zz"] = json!(1);
    let (status, body) = send_json(&app, "POST", "/evaluate", Some(req)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["fields"][0]["field"], "test.params.zz");

    let mut req = threshold_request("g");
    req["normalization"] = json!("custom:-1");
    let (status, body) = send_json(&app, "POST", "/evaluate", Some(req)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["fields"][0]["field"], "normalization");

    let (status, _) = send_json(&app, "POST", "/evaluate", Some(json!({"nonsense": true}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    // A constant colormap gives an all-zero color field: degenerate, 422, body intact.
    let constant = json!({
        "range": [-63, 53], "interpolation_space": "lab",
        "keys": [{"position": -63, "left_rgb": [0.5, 0.5, 0.5]}, {"position": 53, "left_rgb": [0.5, 0.5, 0.5]}]
    });
    send_json(&app, "PUT", "/colormaps/flat", Some(constant)).await;
    let (status, body) = send_json(&app, "POST", "/evaluate", Some(threshold_request("flat"))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["degenerate"]["color"], json!(true));
    assert!(body["bundle"].is_string());
}

#[tokio::test]
async fn specs_persist_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    {
        let app = router(Arc::new(AppState::new(Some(dir.path().to_owned())).unwrap()));
        let (status, _) = send_json(&app, "PUT", "/colormaps/kept", Some(two_hue())).await;
        assert_eq!(status, StatusCode::CREATED);
    }
    assert!(dir.path().join("kept.json").exists());
    let app = router(Arc::new(AppState::new(Some(dir.path().to_owned())).unwrap()));
    let (status, body) = send_json(&app, "GET", "/colormaps/kept", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["spec"]["keys"][1]["right_rgb"], json!([1.0, 1.0, 1.0]));
    send_json(&app, "DELETE", "/colormaps/kept", None).await;
    assert!(!dir.path().join("kept.json").exists());
}
