use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_basis`].
pub const MAX_BASIS_ENV: &str = "TSAB_MAX_BASIS";
/// Environment variable overriding [`Limits::max_rows`].
pub const MAX_ROWS_ENV: &str = "TSAB_MAX_ROWS";

/// Size caps for the dimension computations. A computation that would
/// exceed one of them fails with [`Error::ResourceCap`] instead of running
/// unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest graded basis (orbit-sum basis, monomial basis) handled.
    pub max_basis: usize,
    /// Largest number of spanning vectors fed to one rank computation.
    pub max_rows: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_basis: 5000, max_rows: 20000 }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits { max_basis: usize::MAX, max_rows: usize::MAX }
    }

    /// Defaults, overridden by `TSAB_MAX_BASIS` / `TSAB_MAX_ROWS` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        for (name, slot) in [(MAX_BASIS_ENV, &mut limits.max_basis), (MAX_ROWS_ENV, &mut limits.max_rows)] {
            if let Ok(raw) = std::env::var(name) {
                *slot = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::Input(format!("{name} must be a non-negative integer, got {raw:?}")))?;
            }
        }
        Ok(limits)
    }

    pub(crate) fn check_basis(&self, what: &str, size: usize) -> Result<()> {
        if size > self.max_basis {
            return Err(Error::ResourceCap(format!("{what}: {size} basis elements exceed the cap of {}", self.max_basis)));
        }
        Ok(())
    }

    pub(crate) fn check_rows(&self, what: &str, rows: usize) -> Result<()> {
        if rows > self.max_rows {
            return Err(Error::ResourceCap(format!("{what}: {rows} rows exceed the cap of {}", self.max_rows)));
        }
        Ok(())
    }
}
