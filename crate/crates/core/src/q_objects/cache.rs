use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use crate::bigint_poly::IntPoly;
use crate::Error;

use super::q_binomial;

pub const DEFAULT_CACHE_LIMIT: usize = 4096;

/// Bounded memo for [`q_binomial`], evicting in insertion order.
///
/// Safe to share between threads. A limit of zero disables caching.
#[derive(Debug)]
pub struct QBinomialCache {
    limit: usize,
    inner: Mutex<Entries>,
}

#[derive(Debug, Default)]
struct Entries {
    map: HashMap<(i64, i64), Arc<IntPoly>>,
    order: VecDeque<(i64, i64)>,
}

impl QBinomialCache {
    pub fn new(limit: usize) -> Self {
        QBinomialCache {
            limit,
            inner: Mutex::new(Entries::default()),
        }
    }

    pub fn disabled() -> Self {
        Self::new(0)
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, n: i64, k: i64) -> Result<Arc<IntPoly>, Error> {
        if self.limit == 0 || n < 0 || k < 0 || k > n {
            return q_binomial(n, k).map(Arc::new);
        }
        if let Some(hit) = self.inner.lock().unwrap().map.get(&(n, k)) {
            return Ok(Arc::clone(hit));
        }
        // Computed without holding the lock; a racing insert of the same key
        // stores an identical value.
        let value = Arc::new(q_binomial(n, k)?);
        let mut entries = self.inner.lock().unwrap();
        if !entries.map.contains_key(&(n, k)) {
            while entries.map.len() >= self.limit {
                let Some(old) = entries.order.pop_front() else { break };
                entries.map.remove(&old);
            }
            entries.map.insert((n, k), Arc::clone(&value));
            entries.order.push_back((n, k));
        }
        Ok(value)
    }
}

impl Default for QBinomialCache {
    fn default() -> Self {
        Self::new(DEFAULT_CACHE_LIMIT)
    }
}
