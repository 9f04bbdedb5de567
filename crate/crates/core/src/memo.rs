//! A write-once memo table shared across threads.
//!
//! Values are computed outside the lock; if two callers race on the same key
//! both compute and the first insert wins, so readers only ever observe a
//! complete value.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

pub(crate) struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo { map: RwLock::new(HashMap::new()) }
    }
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) fn get(&self, key: &K) -> Option<Arc<V>> {
        self.map.read().expect("memo lock poisoned").get(key).cloned()
    }

    pub(crate) fn insert(&self, key: K, value: V) -> Arc<V> {
        let mut map = self.map.write().expect("memo lock poisoned");
        map.entry(key).or_insert_with(|| Arc::new(value)).clone()
    }

    pub(crate) fn get_or_try_insert<E>(
        &self,
        key: &K,
        compute: impl FnOnce() -> Result<V, E>,
    ) -> Result<Arc<V>, E> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let value = compute()?;
        Ok(self.insert(key.clone(), value))
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.map.read().expect("memo lock poisoned").len()
    }
}
