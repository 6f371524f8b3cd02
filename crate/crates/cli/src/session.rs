//! In-memory exploration sessions for the HTTP service.
//!
//! A session remembers the seed it started from and every mutation applied
//! since, so undo is a pop and the current seed can always be rebuilt by
//! replaying the vertex list.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use clusterlab::quiver::QuiverJson;
use clusterlab::seed::ExchangeRelation;
use clusterlab::Seed;
use serde_json::{json, Value};

use crate::api::ApiError;

pub const DEFAULT_TTL: Duration = Duration::from_secs(3600);

#[derive(Clone, Debug)]
pub struct Step {
    pub vertex: String,
    pub seed: Seed,
    pub relation: ExchangeRelation,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub id: String,
    pub initial: Seed,
    pub history: Vec<Step>,
    last_access: Instant,
}

fn relation_value(r: &ExchangeRelation) -> Value {
    json!({
        "vertex": r.vertex,
        "old": r.old.to_string(),
        "new": r.new.to_string(),
        "in_product": r.in_product.to_string(),
        "out_product": r.out_product.to_string(),
        "text": r.to_string(),
    })
}

impl Session {
    pub fn new(id: String, initial: Seed) -> Session {
        Session { id, initial, history: Vec::new(), last_access: Instant::now() }
    }

    pub fn current(&self) -> &Seed {
        self.history.last().map_or(&self.initial, |s| &s.seed)
    }

    pub fn mutate(&mut self, vertex: &str) -> Result<(), ApiError> {
        let (seed, relation) = self.current().mutate_with_relation(vertex)?;
        self.history.push(Step { vertex: vertex.to_owned(), seed, relation });
        Ok(())
    }

    pub fn undo(&mut self) -> Result<(), ApiError> {
        match self.history.pop() {
            Some(_) => Ok(()),
            None => Err(ApiError::domain("NothingToUndo", "the session is at its initial seed")),
        }
    }

    /// The current seed rebuilt from the initial one and the vertex list.
    pub fn replay(&self) -> Result<Seed, ApiError> {
        let path: Vec<&str> = self.history.iter().map(|s| s.vertex.as_str()).collect();
        Ok(self.initial.mutate_sequence(&path)?)
    }

    pub fn view(&self) -> Value {
        let seed = self.current();
        let variables: serde_json::Map<String, Value> = seed
            .extended_cluster()
            .map(|(id, p)| (id.to_owned(), Value::String(p.to_string())))
            .collect();
        let frozen: Vec<&str> =
            seed.quiver().vertices().iter().filter(|v| v.frozen).map(|v| v.id.as_str()).collect();
        let history: Vec<&str> = self.history.iter().map(|s| s.vertex.as_str()).collect();
        json!({
            "session_id": self.id,
            "view": {
                "variables": variables,
                "frozen": frozen,
                "quiver": serde_json::to_value(QuiverJson::from(seed.quiver())).expect("quiver serializes"),
                "history": history,
                "relation": self.history.last().map(|s| relation_value(&s.relation)),
            }
        })
    }
}

/// Sessions keyed by id. The outer lock is only held to look a session up;
/// each session has its own lock so work on different sessions never waits.
pub struct SessionStore {
    ttl: Duration,
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
}

impl Default for SessionStore {
    fn default() -> Self {
        SessionStore::with_ttl(DEFAULT_TTL)
    }
}

impl SessionStore {
    pub fn with_ttl(ttl: Duration) -> SessionStore {
        SessionStore { ttl, sessions: Mutex::new(HashMap::new()) }
    }

    fn evict(&self, map: &mut HashMap<String, Arc<Mutex<Session>>>) {
        let now = Instant::now();
        map.retain(|_, s| {
            // A session locked by a request in flight is in use, so keep it.
            s.try_lock().map_or(true, |s| now.duration_since(s.last_access) < self.ttl)
        });
    }

    pub fn create(&self, seed: Seed) -> Value {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Session::new(id.clone(), seed);
        let view = session.view();
        let mut map = self.sessions.lock().expect("session store poisoned");
        self.evict(&mut map);
        map.insert(id, Arc::new(Mutex::new(session)));
        view
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let mut map = self.sessions.lock().expect("session store poisoned");
        self.evict(&mut map);
        let s = map
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found("UnknownSession", format!("no session `{id}`")))?;
        Ok(s)
    }

    /// Runs `f` on the session with exclusive access and refreshes its TTL.
    pub fn with<R>(&self, id: &str, f: impl FnOnce(&mut Session) -> R) -> Result<R, ApiError> {
        let s = self.get(id)?;
        let mut s = s.lock().expect("session poisoned");
        s.last_access = Instant::now();
        Ok(f(&mut s))
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().expect("session store poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
