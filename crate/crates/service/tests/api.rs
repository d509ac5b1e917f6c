use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use codebreak::adversary::Codemaker;
use codebreak::arena::{replay_check, Outcome, Transcript};
use codebreak::feedback::GameMode;
use codebreak::Word;
use codebreak_service::{router, AppState, Store};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

const TTL: u64 = 100;

struct Harness {
    app: Router,
    now: Arc<AtomicU64>,
}

fn harness(dir: Option<std::path::PathBuf>) -> Harness {
    let now = Arc::new(AtomicU64::new(1_000));
    let clock = now.clone();
    let state = AppState::new(Store::new(dir).unwrap(), TTL, Arc::new(move || clock.load(Ordering::SeqCst)));
    Harness { app: router(state), now }
}

impl Harness {
    async fn call(&self, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
        let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
        let req = req.body(body.map_or(Body::empty(), |b| Body::from(b.to_string()))).unwrap();
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
    }

    async fn create(&self, config: Value) -> String {
        let (status, body) = self.call("POST", "/sessions", Some(config)).await;
        assert_eq!(status, StatusCode::CREATED, "{body}");
        body["id"].as_str().unwrap().to_string()
    }

    async fn guess(&self, id: &str, word: Value) -> (StatusCode, Value) {
        self.call("POST", &format!("/sessions/{id}/guess"), Some(json!({ "word": word }))).await
    }
}

fn wordle_error() -> Value {
    json!({ "mode": "wordle", "dict": "complete:ABCDEFGHIJKLMNOPQRSTUVWXYZ:5", "code": "ERROR" })
}

#[tokio::test]
async fn wordle_sample_game() {
    let h = harness(None);
    let id = h.create(wordle_error()).await;
    let rows = [
        ("LOGIC", json!(["gray", "yellow", "gray", "gray", "gray"])),
        ("SMART", json!(["gray", "gray", "gray", "yellow", "gray"])),
        ("PROVE", json!(["gray", "green", "yellow", "gray", "yellow"])),
        ("ORDER", json!(["yellow", "green", "gray", "yellow", "green"])),
    ];
    for (i, (word, tiles)) in rows.iter().enumerate() {
        let (status, body) = h.guess(&id, json!(word)).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(body["feedback"]["tiles"], *tiles, "{word}");
        assert_eq!(body["status"], "Active");
        assert_eq!(body["stage"]["plus"], i as u64 + 1);
    }
    let (_, body) = h.call("GET", &format!("/sessions/{id}"), None).await;
    assert!(body.get("code").is_none());
    let (_, body) = h.guess(&id, json!("ERROR")).await;
    assert_eq!(body["status"], "Won");
    let (_, body) = h.call("GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(body["status"], "Won");
    assert_eq!(body["turns"].as_array().unwrap().len(), 5);
    assert!(body.get("code").is_some());
    let (status, _) = h.guess(&id, json!("ERROR")).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn seeded_codeword_is_deterministic() {
    let h = harness(None);
    let config = json!({ "mode": "wordle", "dict": "complete:ABC:3", "seed": 7 });
    let mut codes = Vec::new();
    for _ in 0..2 {
        let id = h.create(config.clone()).await;
        // Enumerate until the win; both sessions must stop on the same word.
        for w in ["AAA", "AAB", "AAC", "ABA", "ABB", "ABC", "ACA", "ACB", "ACC", "BAA", "BAB", "BAC", "BBA", "BBB",
                  "BBC", "BCA", "BCB", "BCC", "CAA", "CAB", "CAC", "CBA", "CBB", "CBC", "CCA", "CCB", "CCC"] {
            let (_, body) = h.guess(&id, json!(w)).await;
            if body["status"] == "Won" {
                codes.push(w);
                break;
            }
        }
    }
    assert_eq!(codes.len(), 2);
    assert_eq!(codes[0], codes[1]);
}

#[tokio::test]
async fn mastermind_win_reports_counts() {
    let h = harness(None);
    let id = h.create(json!({ "mode": "mastermind", "dict": "complete:ABCDEF:4", "code": "ABCD" })).await;
    let (_, body) = h.guess(&id, json!("BADC")).await;
    assert_eq!(body["feedback"], json!({ "kappa": 0, "rho": 4, "epsilon": 0 }));
    let (_, body) = h.guess(&id, json!("ABCD")).await;
    assert_eq!(body["feedback"], json!({ "kappa": 4, "rho": 0, "epsilon": 0 }));
    assert_eq!(body["status"], "Won");
}

#[tokio::test]
async fn absurdle_tie_break() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("words.txt"), "AA\nAB\nBB\n").unwrap();
    let dict = format!("explicit:{}", dir.path().join("words.txt").display());
    let h = harness(None);
    let id = h.create(json!({ "mode": "absurdle", "dict": dict })).await;
    // Every class has one word; the pattern with fewest greens, BB's, is kept.
    let (_, body) = h.guess(&id, json!("AA")).await;
    assert_eq!(body["feedback"]["tiles"], json!(["gray", "gray"]));
    let (_, body) = h.guess(&id, json!("BB")).await;
    assert_eq!(body["status"], "Won");
}

#[tokio::test]
async fn madstermind_session_never_wins() {
    let h = harness(None);
    let id = h.create(json!({ "mode": "madstermind-dup" })).await;
    let constant = json!({ "kind": "closed", "base": { "type": "constant", "symbol": 0 } });
    let (status, body) = h.guess(&id, constant).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["status"], "Active");
    assert_eq!(body["feedback"]["kappa"], "omega");
    let (status, _) = h.guess(&id, json!("RED")).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn rejected_guesses_cost_nothing() {
    let h = harness(None);
    let id = h.create(wordle_error()).await;
    let (status, body) = h.guess(&id, json!("ERR")).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"].is_string());
    let (status, _) = h.guess(&id, json!("error")).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, _) = h.call("POST", &format!("/sessions/{id}/guess"), Some(json!({ "wrd": 1 }))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (_, body) = h.guess(&id, json!("PROVE")).await;
    assert_eq!(body["stage"]["plus"], 1);
}

#[tokio::test]
async fn bad_configs_and_unknown_sessions() {
    let h = harness(None);
    for config in [
        json!({ "mode": "wordle" }),
        json!({ "mode": "chess", "dict": "complete:AB:2" }),
        json!({ "mode": "wordle", "dict": "complete:AB" }),
        json!({ "mode": "wordle", "dict": "complete:AB:2", "code": "AC" }),
        json!({ "mode": "promise", "seed": 3 }),
        json!({ "mode": "absurdle" }),
        json!({ "mode": "wordle", "dict": "nerdle:4" }),
    ] {
        let (status, body) = h.call("POST", "/sessions", Some(config.clone())).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{config}");
        assert!(body["error"].is_string());
    }
    let (status, _) = h.call("GET", "/sessions/abc123", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = h.call("GET", "/sessions/..%2Fetc", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn sessions_expire_but_keep_their_transcript() {
    let h = harness(None);
    let id = h.create(wordle_error()).await;
    h.guess(&id, json!("PROVE")).await;
    h.now.fetch_add(TTL + 1, Ordering::SeqCst);
    let (_, body) = h.call("GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(body["status"], "Expired");
    assert_eq!(body["turns"].as_array().unwrap().len(), 1);
    assert!(body.get("code").is_some());
    let (status, _) = h.guess(&id, json!("ERROR")).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn sessions_survive_a_restart() {
    let dir = tempfile::tempdir().unwrap();
    let first = harness(Some(dir.path().to_path_buf()));
    let id = first.create(json!({ "mode": "promise" })).await;
    let shift = json!({ "kind": "closed", "base": { "type": "shift", "k": 0 } });
    let (_, before) = first.guess(&id, shift.clone()).await;
    drop(first);
    let second = harness(Some(dir.path().to_path_buf()));
    let (_, body) = second.call("GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(body["turns"][0]["feedback"], before["feedback"]);
    // The rebuilt adversary carries on from the replayed ledger.
    let (status, body) = second.guess(&id, json!({ "kind": "closed", "base": { "type": "constant", "symbol": 0 } })).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["stage"]["plus"], 2);
}

#[tokio::test]
async fn transcripts_replay_through_the_arena() {
    let h = harness(None);
    let id = h.create(wordle_error()).await;
    // ERROR as symbols over A..Z.
    let secret = "[4,17,17,14,17]";
    for w in ["LOGIC", "SMART", "PROVE", "ORDER", "ERROR"] {
        let (_, before) = h.call("GET", &format!("/sessions/{id}"), None).await;
        let (_, body) = h.guess(&id, json!(w)).await;
        if body["status"] == "Active" {
            // Nothing sent while active may contain the codeword.
            assert!(!body.to_string().contains(secret));
            assert!(!before.to_string().contains(secret));
        }
    }
    let (_, body) = h.call("GET", &format!("/sessions/{id}"), None).await;
    let turns = serde_json::from_value(body["turns"].clone()).unwrap();
    let code: Word = serde_json::from_value(body["code"].clone()).unwrap();
    let t = Transcript { mode: GameMode::Wordle, dictionary: None, turns, outcome: Outcome::Exhausted };
    assert!(replay_check(&t, &code));
    let mut maker = Codemaker::new(code, GameMode::Wordle);
    for turn in &t.turns {
        use codebreak::adversary::Adversary;
        assert_eq!(maker.answer(&turn.guess).unwrap(), turn.feedback);
    }
}
