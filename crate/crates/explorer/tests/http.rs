use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use quiverlab_explorer::{router, router_with_assets, Sessions};
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string()))
            .unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = serde_json::from_slice(&bytes).unwrap_or(Value::String(String::from_utf8_lossy(&bytes).into()));
    (status, value)
}

async fn create(app: &Router, quiver: Value) -> String {
    let (status, body) = call(app, "POST", "/session", Some(quiver)).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    body["id"].as_str().unwrap().to_string()
}

async fn mutate(app: &Router, id: &str, k: usize) -> Value {
    let (status, body) = call(app, "POST", &format!("/session/{id}/mutate"), Some(json!({ "vertex": k }))).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    body
}

fn a2() -> Value {
    json!({"n": 2, "arrows": [[1, 2]]})
}

fn fan_a3() -> Value {
    json!({"n": 3, "arrows": [[2, 1], [3, 1]]})
}

#[tokio::test]
async fn new_session_is_all_green() {
    let app = router(Sessions::default());
    let (status, body) = call(&app, "POST", "/session", Some(a2())).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["green"], json!([1, 2]));
    assert_eq!(body["red"], json!([]));
    assert_eq!(body["colors"], json!(["green", "green"]));
    let texts: Vec<&str> = body["variables"].as_array().unwrap().iter().map(|v| v["text"].as_str().unwrap()).collect();
    assert_eq!(texts, ["x1", "x2"]);
    assert_eq!(body["arrows"], json!([[1, 2]]));
    assert_eq!(body["mgs_done"], json!(false));
    assert_eq!(body["green_move"], Value::Null);
    let id = body["id"].as_str().unwrap();
    let (status, again) = call(&app, "GET", &format!("/session/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(again, body);
}

#[tokio::test]
async fn invalid_quivers_are_rejected() {
    let app = router(Sessions::default());
    for bad in [
        json!({"n": 2, "arrows": [[1, 1]]}),
        json!({"n": 2, "arrows": [[1, 2], [2, 1]]}),
        json!({"n": 2, "arrows": [[1, 3]]}),
        json!({"arrows": []}),
    ] {
        let (status, body) = call(&app, "POST", "/session", Some(bad.clone())).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{bad}");
        assert!(body["error"].is_string());
    }
    let req = Request::builder().method("POST").uri("/session").body(Body::from("{not json")).unwrap();
    assert_eq!(app.clone().oneshot(req).await.unwrap().status(), StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn a2_green_sequence_completes() {
    let app = router(Sessions::default());
    let id = create(&app, a2()).await;
    let after1 = mutate(&app, &id, 1).await;
    assert_eq!(after1["colors"], json!(["red", "green"]));
    assert_eq!(after1["c_vectors"], json!([[-1, 0], [1, 1]]));
    assert_eq!(after1["framed_matrix"], json!([[0, -1], [1, 0], [-1, 1], [0, 1]]));
    assert_eq!(after1["green_move"], json!(true));
    mutate(&app, &id, 2).await;
    let done = mutate(&app, &id, 1).await;
    assert_eq!(done["mgs_done"], json!(true));
    assert_eq!(done["green_only"], json!(true));
    let dirs: Vec<u64> = done["history"].as_array().unwrap().iter().map(|s| s["vertex"].as_u64().unwrap()).collect();
    assert_eq!(dirs, [1, 2, 1]);
    let (_, hint) = call(&app, "GET", &format!("/session/{id}/hint"), None).await;
    assert_eq!(hint, json!({"green": []}));
}

#[tokio::test]
async fn red_moves_are_allowed_and_flagged() {
    let app = router(Sessions::default());
    let id = create(&app, a2()).await;
    mutate(&app, &id, 1).await;
    let red = mutate(&app, &id, 1).await;
    assert_eq!(red["green_move"], json!(false));
    assert_eq!(red["green_only"], json!(false));
    assert_eq!(red["colors"], json!(["green", "green"]));
}

#[tokio::test]
async fn a3_first_move_and_character_table() {
    let app = router(Sessions::default());
    let id = create(&app, fan_a3()).await;
    let (_, initial) = call(&app, "GET", &format!("/session/{id}"), None).await;
    assert_eq!(initial["mgs_done"], json!(false));
    let after = mutate(&app, &id, 1).await;
    assert_eq!(after["variables"][0]["text"], json!("(x2*x3 + 1)/x1"));
    assert_eq!(after["arrows"], json!([[1, 2], [1, 3]]));
    let (status, full) = call(&app, "GET", &format!("/session/{id}/variable/1"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(full["text"], json!("(x2*x3 + 1)/x1"));
    let (status, chars) = call(&app, "GET", &format!("/session/{id}/characters"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(chars.as_object().unwrap().len(), 9);
    assert_eq!(chars["P[1][1]"], json!("x1"));
}

#[tokio::test]
async fn involution_and_undo() {
    let app = router(Sessions::default());
    let id = create(&app, fan_a3()).await;
    let (_, before) = call(&app, "GET", &format!("/session/{id}"), None).await;
    mutate(&app, &id, 2).await;
    let twice = mutate(&app, &id, 2).await;
    for key in ["arrows", "framed_matrix", "variables", "colors"] {
        assert_eq!(twice[key], before[key], "{key}");
    }
    assert_eq!(twice["history"].as_array().unwrap().len(), 2);

    let (status, undone) = call(&app, "POST", &format!("/session/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(undone["history"].as_array().unwrap().len(), 1);
    call(&app, "POST", &format!("/session/{id}/undo"), None).await;
    let (_, now) = call(&app, "GET", &format!("/session/{id}"), None).await;
    assert_eq!(now, before);
    let (status, body) = call(&app, "POST", &format!("/session/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert!(body["error"].is_string());
}

#[tokio::test]
async fn error_statuses() {
    let app = router(Sessions::default());
    let id = create(&app, a2()).await;
    let (status, body) = call(&app, "GET", "/session/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body["error"].is_string());
    let (status, _) = call(&app, "POST", "/session/nope/mutate", Some(json!({"vertex": 1}))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    for bad in [json!({"vertex": 0}), json!({"vertex": 3}), json!({"vertex": "one"}), json!({})] {
        let (status, body) = call(&app, "POST", &format!("/session/{id}/mutate"), Some(bad.clone())).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{bad}");
        assert!(body["error"].is_string());
    }
    let (status, _) = call(&app, "GET", &format!("/session/{id}/variable/9"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, "GET", "/elsewhere", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (_, hint) = call(&app, "GET", &format!("/session/{id}/hint"), None).await;
    assert_eq!(hint, json!({"green": [1, 2]}));
}

#[tokio::test]
async fn characters_need_type_a() {
    let app = router(Sessions::default());
    let id = create(&app, json!({"n": 2, "arrows": [[2, 1], [2, 1]]})).await;
    let (status, body) = call(&app, "GET", &format!("/session/{id}/characters"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].as_str().unwrap().contains("type A"));
}

#[tokio::test]
async fn long_variables_are_truncated() {
    let app = router(Sessions::default());
    let id = create(&app, json!({"n": 2, "arrows": [[2, 1], [2, 1]]})).await;
    let mut state = Value::Null;
    let mut k = 1;
    for _ in 0..40 {
        state = mutate(&app, &id, k).await;
        if state["variables"].as_array().unwrap().iter().any(|v| v["truncated"] == json!(true)) {
            break;
        }
        k = 3 - k;
    }
    let var = state["variables"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["truncated"] == json!(true))
        .expect("Kronecker variables outgrow the limit")
        .clone();
    assert_eq!(var["text"].as_str().unwrap().chars().count(), 400);
    let vertex = var["vertex"].as_u64().unwrap();
    let (_, full) = call(&app, "GET", &format!("/session/{id}/variable/{vertex}"), None).await;
    let text = full["text"].as_str().unwrap();
    assert_eq!(text.chars().count() as u64, var["length"].as_u64().unwrap());
    assert!(text.starts_with(var["text"].as_str().unwrap()));
}

#[tokio::test]
async fn least_recently_used_session_is_evicted() {
    let sessions = Sessions::new(2);
    let app = router(sessions.clone());
    let first = create(&app, a2()).await;
    let second = create(&app, a2()).await;
    call(&app, "GET", &format!("/session/{first}"), None).await;
    let third = create(&app, a2()).await;
    assert_eq!(sessions.len(), 2);
    assert_eq!(call(&app, "GET", &format!("/session/{second}"), None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, "GET", &format!("/session/{first}"), None).await.0, StatusCode::OK);
    assert_eq!(call(&app, "GET", &format!("/session/{third}"), None).await.0, StatusCode::OK);
}

#[tokio::test]
async fn concurrent_moves_on_one_session_are_serialized() {
    let app = router(Sessions::default());
    let id = create(&app, fan_a3()).await;
    let moves = (0..24).map(|i| {
        let app = app.clone();
        let id = id.clone();
        tokio::spawn(async move { mutate(&app, &id, 1 + i % 3).await })
    });
    for m in moves {
        m.await.unwrap();
    }
    let (_, state) = call(&app, "GET", &format!("/session/{id}"), None).await;
    assert_eq!(state["history"].as_array().unwrap().len(), 24);
}

#[tokio::test]
async fn static_assets_sit_beside_the_api() {
    let dir = std::env::temp_dir().join(format!("quiverlab-assets-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("index.html"), "<p>explorer</p>").unwrap();
    let app = router_with_assets(Sessions::default(), &dir);
    let (status, body) = call(&app, "GET", "/index.html", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, Value::String("<p>explorer</p>".into()));
    let id = create(&app, a2()).await;
    assert_eq!(call(&app, "GET", &format!("/session/{id}"), None).await.0, StatusCode::OK);
    std::fs::remove_dir_all(&dir).unwrap();
}
