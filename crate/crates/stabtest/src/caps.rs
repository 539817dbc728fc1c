//! Resource caps for the exhaustive operations.
//!
//! Every operation whose cost grows exponentially in the qubit count takes a
//! [`Caps`] value and returns a resource-guard error above the configured
//! limit. Caps are explicit configuration, never silent truncation.

use crate::error::{Error, Result};

/// Size limits for exponential-cost operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for Lagrangian enumeration and the certificates built
    /// on it.
    pub enumeration: usize,
    /// Largest `n` for the exact stabilizer-fidelity search.
    pub fidelity: usize,
    /// Largest `n` for Gowers-norm enumeration.
    pub gowers: usize,
    /// Largest `n` for full Weyl-spectrum computation.
    pub spectrum: usize,
    /// Largest `n` for dense statevector construction.
    pub state: usize,
    /// Largest subgroup dimension whose cover membership is verified
    /// exhaustively; larger subgroups are spot-checked on generators plus
    /// random elements.
    pub cover_verify: usize,
    /// Largest hyperbolic-pair count `k` for which the `4^k` cover groups
    /// are materialized.
    pub cover_pairs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 6,
            fidelity: 5,
            gowers: 7,
            spectrum: 10,
            state: 12,
            cover_verify: 20,
            cover_pairs: 10,
        }
    }
}

impl Caps {
    /// Default caps overridden by `STABTEST_CAP_*` environment variables:
    /// `ENUMERATION`, `FIDELITY`, `GOWERS`, `SPECTRUM`, `STATE`,
    /// `COVER_VERIFY`, and `COVER_PAIRS`.
    pub fn from_env() -> Result<Self> {
        let mut caps = Caps::default();
        let fields: [(&str, &mut usize); 7] = [
            ("STABTEST_CAP_ENUMERATION", &mut caps.enumeration),
            ("STABTEST_CAP_FIDELITY", &mut caps.fidelity),
            ("STABTEST_CAP_GOWERS", &mut caps.gowers),
            ("STABTEST_CAP_SPECTRUM", &mut caps.spectrum),
            ("STABTEST_CAP_STATE", &mut caps.state),
            ("STABTEST_CAP_COVER_VERIFY", &mut caps.cover_verify),
            ("STABTEST_CAP_COVER_PAIRS", &mut caps.cover_pairs),
        ];
        for (name, slot) in fields {
            if let Ok(raw) = std::env::var(name) {
                *slot = raw.trim().parse().map_err(|_| {
                    Error::Config(format!("{name} must be an unsigned integer, got {raw:?}"))
                })?;
            }
        }
        Ok(caps)
    }
}

/// Checks `requested <= cap` and reports `what` in the error otherwise.
pub(crate) fn guard(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested <= cap {
        Ok(())
    } else {
        Err(Error::ResourceGuard {
            what,
            requested,
            cap,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_values() {
        let caps = Caps::default();
        assert_eq!(caps.enumeration, 6);
        assert_eq!(caps.fidelity, 5);
        assert_eq!(caps.gowers, 7);
        assert_eq!(caps.spectrum, 10);
        assert_eq!(caps.state, 12);
    }

    #[test]
    fn guard_accepts_at_cap() {
        assert!(guard("op", 6, 6).is_ok());
        let err = guard("op", 7, 6).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
