use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, PoisonError};
use std::time::{SystemTime, UNIX_EPOCH};

use uuid::Uuid;

use super::{compare, Comparison, Overlay, PanelPayload, Scenario, Viewport};
use crate::error::{Error, Result};
use crate::graph::{NodeId, PropagationPlan};
use crate::params::Params;

/// A directory holding one `<id>.json` document per scenario.
///
/// Writes go to a temporary file that is synced and renamed over the target,
/// so readers never see a partial document. Writes to the same scenario are
/// queued behind a per-scenario lock; different scenarios do not contend.
#[derive(Debug)]
pub struct ScenarioStore {
    dir: PathBuf,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

impl ScenarioStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<ScenarioStore> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(ScenarioStore {
            dir,
            locks: Mutex::new(HashMap::new()),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Location of a scenario's document. Ids are restricted to what
    /// [`ScenarioStore::create`] generates so they cannot escape the directory.
    pub fn path(&self, id: &str) -> Result<PathBuf> {
        let ok = !id.is_empty()
            && id.len() <= 64
            && id
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_');
        if !ok {
            return Err(Error::UnknownScenario(id.to_string()));
        }
        Ok(self.dir.join(format!("{id}.json")))
    }

    fn lock(&self, id: &str) -> Arc<Mutex<()>> {
        let mut locks = self.locks.lock().unwrap_or_else(PoisonError::into_inner);
        locks.entry(id.to_string()).or_default().clone()
    }

    pub fn create(&self, params: Params) -> Result<Scenario> {
        let scenario = Scenario::new(Uuid::new_v4().simple().to_string(), params)?;
        let lock = self.lock(&scenario.id);
        let _guard = lock.lock().unwrap_or_else(PoisonError::into_inner);
        self.write(&scenario)?;
        Ok(scenario)
    }

    pub fn get(&self, id: &str) -> Result<Scenario> {
        let path = self.path(id)?;
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == ErrorKind::NotFound => {
                return Err(Error::UnknownScenario(id.to_string()))
            }
            Err(e) => return Err(e.into()),
        };
        Ok(serde_json::from_str(&text)?)
    }

    /// Ids of all stored scenarios, sorted.
    pub fn list(&self) -> Result<Vec<String>> {
        let mut ids = Vec::new();
        for entry in fs::read_dir(&self.dir)? {
            let name = entry?.file_name();
            let name = name.to_string_lossy();
            if let Some(id) = name.strip_suffix(".json") {
                if self.path(id).is_ok() {
                    ids.push(id.to_string());
                }
            }
        }
        ids.sort();
        Ok(ids)
    }

    /// Sets one parameter, re-solves and persists. On any failure the stored
    /// document is left untouched.
    pub fn apply_shock(
        &self,
        id: &str,
        field: &str,
        value: f64,
    ) -> Result<(Scenario, PropagationPlan)> {
        let lock = self.lock(id);
        let _guard = lock.lock().unwrap_or_else(PoisonError::into_inner);
        let scenario = self.get(id)?;
        let (next, plan) = scenario.shocked(field, value, now_millis())?;
        self.write(&next)?;
        Ok((next, plan))
    }

    pub fn compare(&self, a: &str, b: &str) -> Result<Comparison> {
        Ok(compare(&self.get(a)?, &self.get(b)?))
    }

    pub fn panel(
        &self,
        id: &str,
        node: NodeId,
        overlay: Overlay,
        viewport: Viewport,
    ) -> Result<PanelPayload> {
        self.get(id)?.panel(node, overlay, viewport)
    }

    fn write(&self, scenario: &Scenario) -> Result<()> {
        let target = self.path(&scenario.id)?;
        let mut text = serde_json::to_string_pretty(scenario)?;
        text.push('\n');
        let tmp = self
            .dir
            .join(format!(".{}.{}.tmp", scenario.id, Uuid::new_v4().simple()));
        let result = (|| {
            let mut file = File::create(&tmp)?;
            file.write_all(text.as_bytes())?;
            file.sync_all()?;
            fs::rename(&tmp, &target)?;
            // Persist the rename itself; not every platform can open a directory.
            if let Ok(dir) = File::open(&self.dir) {
                let _ = dir.sync_all();
            }
            Ok(())
        })();
        if result.is_err() {
            let _ = fs::remove_file(&tmp);
        }
        result
    }
}

fn now_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}
