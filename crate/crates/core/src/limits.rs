//! Process-wide limits on brute-force enumeration.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{OmError, Result};

/// Default maximum ground-set size for `3^|E|` sign-vector sweeps.
pub const DEFAULT_CAP: usize = 12;

static CAP: AtomicUsize = AtomicUsize::new(DEFAULT_CAP);

/// Current brute-force cap.
pub fn brute_force_cap() -> usize {
    CAP.load(Ordering::Relaxed)
}

/// Set the brute-force cap. Values above the sign-vector storage limit are clamped.
pub fn set_brute_force_cap(cap: usize) {
    CAP.store(cap.min(crate::sign::MAX_GROUND), Ordering::Relaxed);
}

pub(crate) fn check_cap(n: usize) -> Result<()> {
    let cap = brute_force_cap();
    if n > cap {
        Err(OmError::CapExceeded { what: "ground set size", size: n, cap })
    } else {
        Ok(())
    }
}
