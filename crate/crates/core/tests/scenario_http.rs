use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use macroatlas::scenario::{router, ScenarioStore};
use serde_json::{json, Value};
use tower::ServiceExt;

struct Api {
    app: Router,
    _dir: tempfile::TempDir,
}

impl Api {
    fn new() -> Api {
        let dir = tempfile::tempdir().unwrap();
        let store = Arc::new(ScenarioStore::open(dir.path()).unwrap());
        Api {
            app: router(store),
            _dir: dir,
        }
    }

    async fn call(&self, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
        let body = body
            .map(|b| Body::from(b.to_string()))
            .unwrap_or_else(Body::empty);
        let req = Request::builder()
            .method(method)
            .uri(uri)
            .header("content-type", "application/json")
            .body(body)
            .unwrap();
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX)
            .await
            .unwrap();
        let value = if bytes.is_empty() {
            Value::Null
        } else {
            serde_json::from_slice(&bytes).unwrap()
        };
        (status, value)
    }

    async fn create(&self, body: Option<Value>) -> String {
        let (status, v) = self.call(Method::POST, "/scenarios", body).await;
        assert_eq!(status, StatusCode::CREATED, "{v}");
        v["id"].as_str().unwrap().to_string()
    }

    async fn shock(&self, id: &str, field: &str, value: f64) -> (StatusCode, Value) {
        self.call(
            Method::POST,
            &format!("/scenarios/{id}/shocks"),
            Some(json!({ "field": field, "newValue": value })),
        )
        .await
    }
}

#[tokio::test]
async fn graph_and_symbols() {
    let api = Api::new();
    let (status, g) = api.call(Method::GET, "/graph", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(g["nodes"].as_array().unwrap().len(), 27);
    assert_eq!(g["edges"].as_array().unwrap().len(), 31);
    let (status, s) = api.call(Method::GET, "/symbols", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(s.as_array().unwrap().iter().any(|e| e["symbol"] == "π"));
}

#[tokio::test]
async fn create_and_fetch() {
    let api = Api::new();
    let id = api.create(None).await;
    let (status, s) = api
        .call(Method::GET, &format!("/scenarios/{id}"), None)
        .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(s["id"], id.as_str());
    assert_eq!(s["shocks"], json!([]));
    assert_eq!(s["baseline"], s["current"]);

    let custom = api.create(Some(json!({ "G": 350.0 }))).await;
    let (_, s) = api
        .call(Method::GET, &format!("/scenarios/{custom}"), None)
        .await;
    assert_eq!(s["params"]["G"], 350.0);
}

#[tokio::test]
async fn bad_requests() {
    let api = Api::new();
    let (status, v) = api.call(Method::GET, "/scenarios/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["kind"], "unknownScenario");
    let (status, _) = api.call(Method::GET, "/scenarios/..%2Fetc", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let (status, v) = api
        .call(Method::POST, "/scenarios", Some(json!({ "alpha": 1.5 })))
        .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(v["error"].as_str().unwrap().contains("alpha"));
    let (status, _) = api
        .call(Method::POST, "/scenarios", Some(json!({ "zeta": 1.0 })))
        .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let id = api.create(None).await;
    let (status, v) = api.shock(&id, "Q", 1.0).await;
    assert_eq!(
        (status, v["kind"].as_str()),
        (StatusCode::BAD_REQUEST, Some("unknownField"))
    );
    let (status, _) = api.shock(&id, "c1", 1.5).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = api
        .call(
            Method::POST,
            &format!("/scenarios/{id}/shocks"),
            Some(json!({ "field": "G" })),
        )
        .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (_, s) = api
        .call(Method::GET, &format!("/scenarios/{id}"), None)
        .await;
    assert_eq!(s["shocks"], json!([]));

    let (status, v) = api
        .call(Method::GET, &format!("/scenarios/{id}/panels/99"), None)
        .await;
    assert_eq!(
        (status, v["kind"].as_str()),
        (StatusCode::NOT_FOUND, Some("unknownNode"))
    );
    let (status, _) = api
        .call(
            Method::GET,
            &format!("/scenarios/{id}/panels/12?overlay=sideways"),
            None,
        )
        .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = api
        .call(
            Method::GET,
            &format!("/scenarios/{id}/panels/12?xmin=5&xmax=1"),
            None,
        )
        .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, v) = api
        .call(Method::GET, &format!("/scenarios/{id}/panels/abc"), None)
        .await;
    assert_eq!(
        (status, v["kind"].as_str()),
        (StatusCode::BAD_REQUEST, Some("badRequest"))
    );
}

#[tokio::test]
async fn money_shock_propagates() {
    let api = Api::new();
    let id = api.create(None).await;
    let (status, v) = api.shock(&id, "Ms", 1100.0).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["plan"]["dirty"], json!([16, 17, 24, 19, 14, 20]));
    assert_eq!(v["plan"]["trigger"], json!(["Ms"]));
    assert_eq!(v["scenario"]["shocks"][0]["oldValue"], 1000.0);
    assert_eq!(v["scenario"]["lastPlan"], v["plan"]);
    assert!(v["scenario"]["current"]["Y"].as_f64() > v["scenario"]["baseline"]["Y"].as_f64());

    let (_, stored) = api
        .call(Method::GET, &format!("/scenarios/{id}"), None)
        .await;
    assert_eq!(stored, v["scenario"]);
}

#[tokio::test]
async fn islm_panel_overlays_both_layers() {
    let api = Api::new();
    let id = api.create(None).await;
    api.shock(&id, "Ms", 1100.0).await;
    let (status, p) = api
        .call(
            Method::GET,
            &format!("/scenarios/{id}/panels/24?overlay=both"),
            None,
        )
        .await;
    assert_eq!(status, StatusCode::OK, "{p}");
    assert_eq!(p["nodeId"], 24);
    assert_eq!(p["dirty"], true);
    let curves = p["curves"].as_array().unwrap();
    let names: Vec<&str> = curves.iter().map(|c| c["name"].as_str().unwrap()).collect();
    for name in ["IS", "LM", "IS (baseline)", "LM (baseline)"] {
        assert_eq!(
            names.iter().filter(|n| **n == name).count(),
            1,
            "{name} in {names:?}"
        );
    }
    let markers: usize = curves
        .iter()
        .map(|c| c["markers"].as_array().map_or(0, Vec::len))
        .sum();
    assert_eq!(markers, 2);
    for c in curves {
        assert_eq!(c["xLabel"], "Y");
        assert_eq!(c["yLabel"], "i");
        assert!(c["points"].as_array().unwrap().len() > 50);
    }

    let (_, current) = api
        .call(Method::GET, &format!("/scenarios/{id}/panels/24"), None)
        .await;
    assert_eq!(current["curves"].as_array().unwrap().len(), 2);
    let (_, lm) = api
        .call(Method::GET, &format!("/scenarios/{id}/panels/17"), None)
        .await;
    assert!(lm["definition"]
        .as_str()
        .unwrap()
        .starts_with("The combinations of interest rates"));
    let (_, solow) = api
        .call(Method::GET, &format!("/scenarios/{id}/panels/12"), None)
        .await;
    assert_eq!(solow["dirty"], false);

    let (_, framed) = api
        .call(
            Method::GET,
            &format!("/scenarios/{id}/panels/24?xmin=2000&xmax=2600"),
            None,
        )
        .await;
    for c in framed["curves"].as_array().unwrap() {
        for pt in c["points"].as_array().unwrap() {
            let x = pt[0].as_f64().unwrap();
            assert!(
                (2000.0 - 1e-9..=2600.0 + 1e-9).contains(&x) || c["name"] == "IS",
                "{x}"
            );
        }
    }
}

#[tokio::test]
async fn compare_scenarios() {
    let api = Api::new();
    let a = api.create(None).await;
    let b = api.create(None).await;
    api.shock(&b, "G", 400.0).await;
    let (status, c) = api
        .call(Method::GET, &format!("/compare?a={a}&b={b}"), None)
        .await;
    assert_eq!(status, StatusCode::OK, "{c}");
    let delta = |c: &Value, f: &str| {
        c["deltas"]
            .as_array()
            .unwrap()
            .iter()
            .find(|d| d["field"] == f)
            .unwrap()["delta"]
            .as_f64()
            .unwrap()
    };
    assert!(delta(&c, "Y") > 0.0);
    assert!(delta(&c, "i") > 0.0);
    assert!(delta(&c, "Ipriv") < 0.0);

    let (status, _) = api
        .call(Method::GET, &format!("/compare?a={a}&b=missing"), None)
        .await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = api
        .call(Method::GET, &format!("/compare?a={a}"), None)
        .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn long_run_money_is_neutral_across_scenarios() {
    // With expectations at the long-run price the short run sits at the long run.
    let api = Api::new();
    let lr = macroatlas::long_run_ge(&macroatlas::Params::default()).unwrap();
    let a = api.create(Some(json!({ "PE": lr.price }))).await;
    let b = api
        .create(Some(json!({ "PE": 2.0 * lr.price, "Ms": 2000.0 })))
        .await;
    let (_, c) = api
        .call(Method::GET, &format!("/compare?a={a}&b={b}"), None)
        .await;
    for d in c["deltas"].as_array().unwrap() {
        let field = d["field"].as_str().unwrap();
        let (va, vb) = (d["a"].as_f64().unwrap(), d["b"].as_f64().unwrap());
        if field == "P" {
            assert!((vb / va - 2.0).abs() < 1e-8, "P ratio {}", vb / va);
        } else {
            assert!(
                (vb - va).abs() <= 1e-8 * va.abs().max(1.0),
                "{field}: {va} vs {vb}"
            );
        }
    }
}
