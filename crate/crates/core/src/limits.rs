//! Resource guards. The library targets desk-scale instances; every
//! exhaustive enumeration aborts with a clear error past these bounds.

/// Bounds applied by enumerating operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of configurations enumerated per event structure.
    pub max_configs: usize,
    /// Maximum group order reached by generator closure.
    pub max_group: usize,
    /// Maximum number of candidate tables explored by the uniformity search.
    pub max_search: u64,
}

pub const DEFAULT_MAX_CONFIGS: usize = 1 << 16;
pub const DEFAULT_MAX_GROUP: usize = 10_000;
pub const DEFAULT_MAX_SEARCH: u64 = 50_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_configs: DEFAULT_MAX_CONFIGS,
            max_group: DEFAULT_MAX_GROUP,
            max_search: DEFAULT_MAX_SEARCH,
        }
    }
}

impl Limits {
    pub fn with_max_configs(mut self, max_configs: usize) -> Self {
        self.max_configs = max_configs;
        self
    }
}
