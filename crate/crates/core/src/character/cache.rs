use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, OnceLock, RwLock};

use super::table::{CharacterTable, CharacterTableJson};
use crate::error::Result;
use crate::group::FiniteGroup;

fn memory() -> &'static RwLock<HashMap<String, Arc<CharacterTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<String, Arc<CharacterTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Directory named by `QUASIK_CACHE`, if set.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("QUASIK_CACHE")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// The character table of `group`, shared across groups with the same
/// element set. Looks in memory, then in the on-disk cache, then computes.
pub fn character_table(group: &Arc<FiniteGroup>) -> Result<Arc<CharacterTable>> {
    let key = group.fingerprint();
    if let Some(t) = memory().read().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let table = Arc::new(match load(group, &key) {
        Some(t) => t,
        None => {
            let t = CharacterTable::compute(group.clone())?;
            store(&t, &key);
            t
        }
    });
    let mut w = memory().write().unwrap();
    Ok(w.entry(key).or_insert(table).clone())
}

/// Computes without consulting or filling any cache.
pub fn character_table_uncached(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    CharacterTable::compute(group.clone())
}

pub fn clear_memory_cache() {
    memory().write().unwrap().clear();
}

fn load(group: &Arc<FiniteGroup>, key: &str) -> Option<CharacterTable> {
    let path = cache_dir()?.join(format!("{key}.json"));
    let text = std::fs::read_to_string(path).ok()?;
    let json: CharacterTableJson = serde_json::from_str(&text).ok()?;
    CharacterTable::from_json(group.clone(), &json)
}

fn store(table: &CharacterTable, key: &str) {
    let Some(dir) = cache_dir() else { return };
    // a failed write only costs a recomputation later
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    if let Ok(text) = serde_json::to_string(&table.to_json()) {
        let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(tmp, dir.join(format!("{key}.json")));
        }
    }
}
