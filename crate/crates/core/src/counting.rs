//! Interchangeable ways of counting the conjugacy classes of `G ≀ Sₙ`.
//!
//! Each method implements [`ClassCounter`] and is registered under a short
//! name; the CLI picks one with `--method`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::qseries::eta_power;
use crate::wreath::{enumerate_class_labels, wreath_group};

pub trait ClassCounter: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn count(&self, base: &Arc<FiniteGroup>, n: usize, cap: usize) -> Result<u64>;
}

/// Counts partition-valued labels on the classes of `G`.
pub struct LabelCounter;

impl ClassCounter for LabelCounter {
    fn name(&self) -> &'static str {
        "labels"
    }

    fn description(&self) -> &'static str {
        "enumerate partition-valued functions on the classes of G"
    }

    fn count(&self, base: &Arc<FiniteGroup>, n: usize, _cap: usize) -> Result<u64> {
        Ok(enumerate_class_labels(base.class_count(), n).len() as u64)
    }
}

/// Materializes `G ≀ Sₙ` and counts conjugation orbits.
pub struct BruteForceCounter;

impl ClassCounter for BruteForceCounter {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn description(&self) -> &'static str {
        "materialize the wreath product and count conjugation orbits"
    }

    fn count(&self, base: &Arc<FiniteGroup>, n: usize, cap: usize) -> Result<u64> {
        Ok(wreath_group(base, n, cap)?.group().class_count() as u64)
    }
}

/// Reads the coefficient of `qⁿ` in `∏(1 - q^r)^{-k}`, `k` the class count of `G`.
pub struct SeriesCounter;

impl ClassCounter for SeriesCounter {
    fn name(&self) -> &'static str {
        "series"
    }

    fn description(&self) -> &'static str {
        "coefficient of q^n in prod (1 - q^r)^(-|G_*|)"
    }

    fn count(&self, base: &Arc<FiniteGroup>, n: usize, _cap: usize) -> Result<u64> {
        let k = base.class_count() as i64;
        eta_power(-k, n)
            .coeff(n)
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::InvalidInput("class count does not fit in u64".into()))
    }
}

pub struct ClassCounterRegistry {
    counters: BTreeMap<&'static str, Arc<dyn ClassCounter>>,
}

impl Default for ClassCounterRegistry {
    fn default() -> Self {
        let mut r = ClassCounterRegistry {
            counters: BTreeMap::new(),
        };
        r.register(Arc::new(LabelCounter));
        r.register(Arc::new(BruteForceCounter));
        r.register(Arc::new(SeriesCounter));
        r
    }
}

impl ClassCounterRegistry {
    pub fn register(&mut self, counter: Arc<dyn ClassCounter>) {
        self.counters.insert(counter.name(), counter);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn ClassCounter>> {
        self.counters.get(name).cloned().ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown method '{name}', expected one of: {}",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.counters.keys().copied().collect()
    }
}

/// Number of conjugacy classes of `G ≀ Sₙ` by the named method.
pub fn wreath_class_count(
    base: &Arc<FiniteGroup>,
    n: usize,
    method: &str,
    cap: usize,
) -> Result<u64> {
    ClassCounterRegistry::default()
        .get(method)?
        .count(base, n, cap)
}
