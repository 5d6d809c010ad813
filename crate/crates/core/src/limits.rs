/// Size caps for the enumeration-based operations.
///
/// Weak-order counts grow like the ordered Bell numbers (4683 weak orders on
/// six alternatives, 545835 on eight), so every exhaustive routine checks its
/// cap up front and reports [`Error::Capacity`](crate::Error::Capacity)
/// instead of running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest alternative count accepted by `weak_extensions`.
    pub weak_extension_alts: usize,
    /// Largest alternative count accepted by `linear_extensions`.
    pub linear_extension_alts: usize,
    /// Largest alternative count for permutation scans (`brute_force_nb`,
    /// `test_tm_bruteforce`, `find_sp_axis`).
    pub brute_force_alts: usize,
    /// Largest voter count accepted by `test_tm_partial`.
    pub partial_voters: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            weak_extension_alts: 6,
            linear_extension_alts: 8,
            brute_force_alts: 8,
            partial_voters: 6,
        }
    }
}
