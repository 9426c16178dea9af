//! A bounded memo table shared between threads.
//!
//! Values stored here are pure functions of their keys, so a lookup that
//! misses because the table is full (or because another thread has not
//! finished inserting yet) only costs a recomputation; it never changes a
//! result.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

pub struct MemoCache<K, V> {
    map: RwLock<HashMap<K, V>>,
    capacity: AtomicUsize,
}

impl<K: Eq + Hash, V: Clone> MemoCache<K, V> {
    pub fn new(capacity: usize) -> Self {
        MemoCache {
            map: RwLock::new(HashMap::new()),
            capacity: AtomicUsize::new(capacity),
        }
    }

    pub fn get(&self, key: &K) -> Option<V> {
        self.map.read().unwrap().get(key).cloned()
    }

    /// Inserts unless the table is at capacity.
    pub fn insert(&self, key: K, value: V) {
        let cap = self.capacity.load(Ordering::Relaxed);
        let mut map = self.map.write().unwrap();
        if map.len() < cap {
            map.insert(key, value);
        }
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn capacity(&self) -> usize {
        self.capacity.load(Ordering::Relaxed)
    }

    /// Changes the capacity. Shrinking below the current size drops every
    /// entry.
    pub fn set_capacity(&self, capacity: usize) {
        self.capacity.store(capacity, Ordering::Relaxed);
        let mut map = self.map.write().unwrap();
        if map.len() > capacity {
            map.clear();
        }
    }

    pub fn clear(&self) {
        self.map.write().unwrap().clear();
    }

    /// Runs `f` over a snapshot of the entries.
    pub fn for_each(&self, mut f: impl FnMut(&K, &V)) {
        for (k, v) in self.map.read().unwrap().iter() {
            f(k, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn respects_capacity() {
        let cache = MemoCache::new(2);
        cache.insert(1, "a");
        cache.insert(2, "b");
        cache.insert(3, "c");
        assert_eq!(cache.len(), 2);
        assert_eq!(cache.get(&3), None);
        assert_eq!(cache.get(&1), Some("a"));
    }

    #[test]
    fn shrinking_clears() {
        let cache = MemoCache::new(10);
        for i in 0..5 {
            cache.insert(i, i);
        }
        cache.set_capacity(3);
        assert!(cache.is_empty());
        cache.insert(7, 7);
        assert_eq!(cache.get(&7), Some(7));
    }
}
