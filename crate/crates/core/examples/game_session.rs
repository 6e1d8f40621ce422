//! A game played through the HTTP API in-process, then its log replayed.
//! Run `mip serve --port 8080` to play over the network instead.

use axum::body::Body;
use axum::http::Request;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use mip::service::{router, AppState, ServiceConfig};

async fn call(app: &axum::Router, method: &str, uri: &str, body: Value) -> Value {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(if body.is_null() { Body::empty() } else { Body::from(body.to_string()) })
        .unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    serde_json::from_slice(&res.into_body().collect().await.unwrap().to_bytes()).unwrap()
}

#[tokio::main]
async fn main() {
    let app = router(AppState::new(ServiceConfig::default()));
    let s = call(&app, "POST", "/sessions", json!({"map": "lake4-a", "agent": "bayes-pomcp", "seed": 1})).await;
    let id = s["id"].as_str().unwrap().to_string();
    println!(
        "{}",
        s["human_view"].as_array().unwrap().iter().map(|r| r.as_str().unwrap()).collect::<Vec<_>>().join("\n")
    );

    // A fixed sequence of moves, repeated until the episode ends.
    for mv in
        ["down", "down", "right", "down", "right", "right", "down", "right", "down", "right"].iter().cycle().take(60)
    {
        let t = call(&app, "POST", &format!("/sessions/{id}/actions"), json!({"action": mv})).await;
        println!(
            "{mv:>5} -> robot {:<22} at {} score {}",
            t["robot_action"]["kind"].as_str().unwrap(),
            t["snapshot"]["position"],
            t["snapshot"]["score"]
        );
        if t["done"].as_bool().unwrap() {
            break;
        }
    }
    let log = call(&app, "GET", &format!("/sessions/{id}/log"), Value::Null).await;
    let record: mip::harness::EpisodeRecord = serde_json::from_value(log).unwrap();
    let report = mip::harness::replay(&record).unwrap();
    println!("logged score {} replayed {}", report.recorded_score, report.replayed_score);
}
