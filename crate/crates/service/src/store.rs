use std::path::PathBuf;
use std::sync::Arc;

use dashmap::DashMap;
use tokio::sync::Mutex;

use crate::error::ApiError;
use crate::session::{Session, SessionRecord, Status};

pub type Shared = Arc<Mutex<Session>>;

/// Sessions in memory, each behind its own lock, mirrored to one JSON file
/// per session when a directory is given. Sessions missing from memory are
/// loaded from their file on first use.
pub struct Store {
    dir: Option<PathBuf>,
    live: DashMap<String, Shared>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.bytes().all(|b| b.is_ascii_hexdigit())
}

impl Store {
    pub fn new(dir: Option<PathBuf>) -> std::io::Result<Self> {
        if let Some(d) = &dir {
            std::fs::create_dir_all(d)?;
        }
        Ok(Store { dir, live: DashMap::new() })
    }

    fn path(&self, id: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{id}.json")))
    }

    pub async fn insert(&self, session: Session) -> Result<Shared, ApiError> {
        self.save(&session.record).await?;
        let id = session.record.id.clone();
        let shared = Arc::new(Mutex::new(session));
        self.live.insert(id, shared.clone());
        Ok(shared)
    }

    pub async fn get(&self, id: &str) -> Result<Shared, ApiError> {
        if !valid_id(id) {
            return Err(ApiError::NotFound(id.into()));
        }
        if let Some(s) = self.live.get(id) {
            return Ok(s.clone());
        }
        let path = self.path(id).ok_or_else(|| ApiError::NotFound(id.into()))?;
        let text = match tokio::fs::read_to_string(&path).await {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(ApiError::NotFound(id.into())),
            Err(e) => return Err(ApiError::Storage(e.to_string())),
        };
        let record: SessionRecord = serde_json::from_str(&text).map_err(|e| ApiError::Storage(e.to_string()))?;
        let session = Session::restore(record)?;
        // Another request may have loaded it meanwhile; keep the first.
        Ok(self.live.entry(id.to_string()).or_insert_with(|| Arc::new(Mutex::new(session))).clone())
    }

    /// Writes the record atomically: to a temporary file, then renamed.
    pub async fn save(&self, record: &SessionRecord) -> Result<(), ApiError> {
        let Some(path) = self.path(&record.id) else { return Ok(()) };
        let text = serde_json::to_string(record).map_err(|e| ApiError::Storage(e.to_string()))?;
        let tmp = path.with_extension("json.tmp");
        tokio::fs::write(&tmp, text).await.map_err(|e| ApiError::Storage(e.to_string()))?;
        tokio::fs::rename(&tmp, &path).await.map_err(|e| ApiError::Storage(e.to_string()))
    }

    /// Marks overdue sessions expired, and forgets expired sessions once a
    /// further `grace` seconds have passed.
    pub async fn sweep(&self, now: u64, grace: u64) -> Result<(), ApiError> {
        let all: Vec<Shared> = self.live.iter().map(|e| e.value().clone()).collect();
        for shared in all {
            let mut s = shared.lock().await;
            if s.expire_if_due(now) {
                self.save(&s.record).await?;
            }
            if s.record.status == Status::Expired && now >= s.record.expires_at.saturating_add(grace) {
                self.live.remove(&s.record.id);
                if let Some(path) = self.path(&s.record.id) {
                    let _ = tokio::fs::remove_file(path).await;
                }
            }
        }
        Ok(())
    }

    /// Loads every stored session, returning how many were read.
    pub async fn load_all(&self) -> Result<usize, ApiError> {
        let Some(dir) = &self.dir else { return Ok(0) };
        let mut entries = tokio::fs::read_dir(dir).await.map_err(|e| ApiError::Storage(e.to_string()))?;
        let mut n = 0;
        while let Some(entry) = entries.next_entry().await.map_err(|e| ApiError::Storage(e.to_string()))? {
            let name = entry.file_name().to_string_lossy().into_owned();
            if let Some(id) = name.strip_suffix(".json") {
                self.get(id).await?;
                n += 1;
            }
        }
        Ok(n)
    }

    pub fn len(&self) -> usize {
        self.live.len()
    }

    pub fn is_empty(&self) -> bool {
        self.live.is_empty()
    }
}
