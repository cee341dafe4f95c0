/// Size caps for construction and for the enumeration-heavy deciders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring or module that may be built from tables.
    pub max_ring_order: usize,
    /// Largest ring on which ideals are enumerated.
    pub max_enumeration_order: usize,
    /// Largest ring on which the expensive cross-check oracles run inside
    /// `classify_ring` (flatness over all ideal pairs, `I = HJ` factorization).
    pub max_oracle_order: usize,
    /// Largest module the resolution probe and isomorphism search will build.
    pub max_probe_module_order: usize,
    /// Largest number of polynomials per side in the content scan.
    pub max_scan_polynomials: usize,
}

/// Environment variable that overrides `max_enumeration_order`.
pub const MAX_ORDER_ENV: &str = "PRUFERLAB_MAX_ORDER";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring_order: 4096,
            max_enumeration_order: 64,
            max_oracle_order: 32,
            max_probe_module_order: 1024,
            max_scan_polynomials: 1 << 16,
        }
    }
}

impl Limits {
    /// Default limits, with the enumeration cap taken from
    /// `PRUFERLAB_MAX_ORDER` when it is set to a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            limits.max_enumeration_order = cap;
        }
        limits
    }

    pub fn with_enumeration_cap(mut self, cap: usize) -> Self {
        self.max_enumeration_order = cap;
        self
    }
}
