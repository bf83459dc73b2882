//! Labeled seed derivation.
//!
//! All randomness in the pipeline flows from a single top-level seed. Each
//! stage derives its own seed by hashing the top seed together with a stage
//! label, so re-running one stage in isolation draws the same stream it
//! would inside a full run.

use sha2::{Digest, Sha256};

/// Derives a stage seed from `seed` and a stage `label`.
pub fn derive(seed: u64, label: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(label.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_labels_give_distinct_seeds() {
        assert_ne!(derive(42, "synth"), derive(42, "match"));
        assert_ne!(derive(42, "synth"), derive(43, "synth"));
    }

    // Frozen values: a change here silently breaks reproducibility of every
    // artifact, so the derivation must never drift.
    #[test]
    fn derivation_is_stable() {
        assert_eq!(derive(42, "synth"), 0x37db_6b1a_fc51_f553);
        assert_eq!(derive(0, ""), 0x9291_4cf3_1476_4dc8);
    }
}
