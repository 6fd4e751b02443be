//! Ordered run log: which operation fired, with what parameters, how many
//! resamples it used, and how it ended. Replaying a driver with the same
//! configuration reproduces the trace exactly.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub op: String,
    pub params: String,
    pub attempts: u32,
    pub outcome: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunTrace {
    pub entries: Vec<TraceEntry>,
}

impl RunTrace {
    pub fn new() -> Self {
        RunTrace::default()
    }

    pub fn record(&mut self, op: impl Into<String>, params: impl Into<String>, attempts: u32, outcome: impl Into<String>) {
        self.entries.push(TraceEntry {
            op: op.into(),
            params: params.into(),
            attempts,
            outcome: outcome.into(),
        });
    }

    pub fn fired(&self, op: &str) -> bool {
        self.entries.iter().any(|e| e.op == op)
    }

    pub fn merge(&mut self, other: RunTrace) {
        self.entries.extend(other.entries);
    }

    /// FNV-1a digest of the serialized trace, for witness documents.
    pub fn digest(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for e in &self.entries {
            for chunk in [e.op.as_bytes(), e.params.as_bytes(), e.outcome.as_bytes()] {
                for &b in chunk {
                    h ^= b as u64;
                    h = h.wrapping_mul(0x100000001b3);
                }
            }
            h ^= e.attempts as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_order_sensitive() {
        let mut a = RunTrace::new();
        a.record("x", "p", 1, "ok");
        a.record("y", "q", 2, "ok");
        let mut b = RunTrace::new();
        b.record("y", "q", 2, "ok");
        b.record("x", "p", 1, "ok");
        assert_ne!(a.digest(), b.digest());
        assert_eq!(a.digest(), a.clone().digest());
    }
}
