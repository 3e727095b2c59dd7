//! Run bookkeeping: one entry per launched run, a blocking worker that drives
//! the engine, and event fan-out to any number of subscribers.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::Instant;

use carm_core::{Dataset, Engine, RunConfig, RunResult};
use serde::{Deserialize, Serialize};
use tokio::sync::{mpsc, watch};
use uuid::Uuid;

use crate::payload::{
    GenerationEvent, Progress, RulePoint, RunEvent, RunHandle, RunState, TerminalEvent,
};

const TOP_RULES: usize = 10;

#[derive(Default)]
struct Inner {
    events: Vec<RunEvent>,
    subscribers: Vec<mpsc::UnboundedSender<RunEvent>>,
    completed: usize,
    objectives: Vec<String>,
    front: Vec<RulePoint>,
    rules: Vec<RulePoint>,
    result: Option<RunResult>,
    error: Option<String>,
}

pub struct RunEntry {
    pub id: Uuid,
    pub config: RunConfig,
    inner: Mutex<Inner>,
    state: watch::Sender<RunState>,
    stop: AtomicBool,
}

/// Everything a finished or stopped run leaves on disk.
#[derive(Serialize, Deserialize)]
struct StoredRun {
    run_id: Uuid,
    state: RunState,
    config: RunConfig,
    completed: usize,
    objectives: Vec<String>,
    front: Vec<RulePoint>,
    rules: Vec<RulePoint>,
    result: Option<RunResult>,
    error: Option<String>,
}

impl RunEntry {
    fn new(id: Uuid, config: RunConfig) -> Self {
        RunEntry {
            id,
            config,
            inner: Mutex::new(Inner::default()),
            state: watch::channel(RunState::Pending).0,
            stop: AtomicBool::new(false),
        }
    }

    fn lock(&self) -> MutexGuard<'_, Inner> {
        self.inner.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn state(&self) -> RunState {
        *self.state.borrow()
    }

    pub fn handle(&self) -> RunHandle {
        let inner = self.lock();
        RunHandle {
            run_id: self.id,
            state: self.state(),
            progress: Progress {
                completed: inner.completed,
                total: self.config.generations,
            },
            objectives: inner.objectives.clone(),
            latest_front: inner.front.clone(),
            accuracy: inner.result.as_ref().map(|r| r.accuracy),
            error: inner.error.clone(),
        }
    }

    pub fn front(&self) -> Vec<RulePoint> {
        self.lock().front.clone()
    }

    pub fn rules(&self) -> Vec<RulePoint> {
        self.lock().rules.clone()
    }

    pub fn result(&self) -> Option<RunResult> {
        self.lock().result.clone()
    }

    /// Past events to replay and a receiver for live ones. A run that has
    /// ended replays only its terminal event.
    pub fn subscribe(&self) -> (Vec<RunEvent>, Option<mpsc::UnboundedReceiver<RunEvent>>) {
        let mut inner = self.lock();
        if let Some(last) = inner.events.last().filter(|e| e.is_terminal()) {
            return (vec![last.clone()], None);
        }
        let (tx, rx) = mpsc::unbounded_channel();
        inner.subscribers.push(tx);
        (inner.events.clone(), Some(rx))
    }

    /// Asks the worker to halt at the next generation boundary and waits
    /// until the run has ended.
    pub async fn stop(&self) {
        self.stop.store(true, Ordering::SeqCst);
        let mut rx = self.state.subscribe();
        let _ = rx.wait_for(|s| s.is_terminal()).await;
    }

    pub async fn wait(&self) -> RunState {
        let mut rx = self.state.subscribe();
        let state = rx.wait_for(|s| s.is_terminal()).await.map(|s| *s);
        state.unwrap_or_else(|_| self.state())
    }

    fn publish(inner: &mut Inner, event: RunEvent) {
        inner.subscribers.retain(|tx| tx.send(event.clone()).is_ok());
        inner.events.push(event);
    }

    fn record_progress(&self, engine: &Engine, result: RunResult, elapsed_ms: f64) {
        let dataset = engine.dataset();
        let objectives = result.objectives.clone();
        let front: Vec<RulePoint> = result
            .front
            .iter()
            .map(|r| RulePoint::from_record(r, &objectives, dataset))
            .collect();
        let rules = result
            .rules
            .iter()
            .map(|r| RulePoint::from_record(r, &objectives, dataset))
            .collect();
        let mut ranked: Vec<&RulePoint> = front.iter().collect();
        let first = objectives.first().cloned().unwrap_or_default();
        ranked.sort_by(|a, b| b.metrics[&first].total_cmp(&a.metrics[&first]));
        let event = GenerationEvent {
            generation: result.completed_generations - 1,
            front_size: front.len(),
            rks_size: result.rules_rks,
            objectives: objectives.clone(),
            front_vectors: result.front.iter().map(|r| r.metrics.clone()).collect(),
            top_rules: ranked.iter().take(TOP_RULES).map(|p| p.text.clone()).collect(),
            elapsed_ms,
        };

        let mut inner = self.lock();
        inner.completed = result.completed_generations;
        inner.objectives = objectives;
        inner.front = front;
        inner.rules = rules;
        inner.result = Some(result);
        Self::publish(&mut inner, RunEvent::Generation(event));
    }

    fn finish(&self, state: RunState, error: Option<String>, store: &Path) {
        let mut inner = self.lock();
        inner.error = error.clone();
        let stored = StoredRun {
            run_id: self.id,
            state,
            config: self.config.clone(),
            completed: inner.completed,
            objectives: inner.objectives.clone(),
            front: inner.front.clone(),
            rules: inner.rules.clone(),
            result: inner.result.clone(),
            error: error.clone(),
        };
        if let Ok(json) = serde_json::to_string(&stored) {
            // a run that cannot be persisted is still served from memory
            let _ = fs::write(store.join(format!("{}.json", self.id)), json);
        }
        let terminal = TerminalEvent::new(state, self.config.generations, inner.result.as_ref(), error);
        Self::publish(&mut inner, RunEvent::Terminal(terminal));
        inner.subscribers.clear();
        self.state.send_replace(state);
    }

    fn from_stored(stored: StoredRun) -> Self {
        let entry = RunEntry::new(stored.run_id, stored.config);
        let terminal = TerminalEvent::new(
            stored.state,
            entry.config.generations,
            stored.result.as_ref(),
            stored.error.clone(),
        );
        {
            let mut inner = entry.lock();
            inner.completed = stored.completed;
            inner.objectives = stored.objectives;
            inner.front = stored.front;
            inner.rules = stored.rules;
            inner.result = stored.result;
            inner.error = stored.error;
            inner.events.push(RunEvent::Terminal(terminal));
        }
        entry.state.send_replace(stored.state);
        entry
    }
}

/// Runs the engine to completion or until a stop is requested.
fn drive(entry: &RunEntry, dataset: Dataset, store: &Path) {
    let started = Instant::now();
    let mut engine = match Engine::new(entry.config.clone(), dataset) {
        Ok(engine) => engine,
        Err(e) => {
            entry.state.send_replace(RunState::Running);
            return entry.finish(RunState::Failed, Some(e.to_string()), store);
        }
    };
    entry.state.send_replace(RunState::Running);
    while !engine.is_done() {
        if entry.stop.load(Ordering::SeqCst) {
            break;
        }
        let outcome = engine.step().and_then(|_| engine.result());
        match outcome {
            Ok(result) => entry.record_progress(&engine, result, started.elapsed().as_secs_f64() * 1e3),
            Err(e) => return entry.finish(RunState::Failed, Some(e.to_string()), store),
        }
    }
    if entry.lock().result.is_none() {
        // stopped before the first generation; report on the empty rule set
        if let Ok(result) = engine.result() {
            entry.lock().result = Some(result);
        }
    }
    let state = if engine.is_done() {
        RunState::Finished
    } else {
        RunState::Stopped
    };
    entry.finish(state, None, store);
}

#[derive(Debug)]
pub enum LaunchError {
    AtCapacity(usize),
}

/// All runs known to this process.
pub struct Registry {
    runs: Mutex<HashMap<Uuid, Arc<RunEntry>>>,
    max_active: usize,
    store: PathBuf,
}

impl Registry {
    /// Opens the store under `out_dir`, reloading every persisted run.
    pub fn open(out_dir: &Path, max_active: usize) -> io::Result<Self> {
        let store = out_dir.join("runs");
        fs::create_dir_all(&store)?;
        let mut runs = HashMap::new();
        for item in fs::read_dir(&store)? {
            let path = item?.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let Ok(text) = fs::read_to_string(&path) else { continue };
            if let Ok(stored) = serde_json::from_str::<StoredRun>(&text) {
                runs.insert(stored.run_id, Arc::new(RunEntry::from_stored(stored)));
            }
        }
        Ok(Registry {
            runs: Mutex::new(runs),
            max_active,
            store,
        })
    }

    fn lock(&self) -> MutexGuard<'_, HashMap<Uuid, Arc<RunEntry>>> {
        self.runs.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn get(&self, id: Uuid) -> Option<Arc<RunEntry>> {
        self.lock().get(&id).cloned()
    }

    pub fn list(&self) -> Vec<Arc<RunEntry>> {
        let mut runs: Vec<_> = self.lock().values().cloned().collect();
        runs.sort_by_key(|r| r.id);
        runs
    }

    pub fn max_active(&self) -> usize {
        self.max_active
    }

    /// Registers a run and starts its worker. Runs beyond the active limit
    /// are rejected.
    pub fn launch(&self, config: RunConfig, dataset: Dataset) -> Result<RunHandle, LaunchError> {
        let entry = {
            let mut runs = self.lock();
            let active = runs.values().filter(|r| !r.state().is_terminal()).count();
            if active >= self.max_active {
                return Err(LaunchError::AtCapacity(self.max_active));
            }
            let entry = Arc::new(RunEntry::new(Uuid::new_v4(), config));
            runs.insert(entry.id, entry.clone());
            entry
        };
        let handle = entry.handle();
        let store = self.store.clone();
        tokio::task::spawn_blocking(move || drive(&entry, dataset, &store));
        Ok(handle)
    }
}
