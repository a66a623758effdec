use crate::error::{Error, Result};

/// Default cap on basic bracket evaluations per operation.
pub const DEFAULT_MAX_OPS: u64 = 10_000_000;

/// Resource cap carried by every algebra and inherited by derived ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_ops: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_ops: DEFAULT_MAX_OPS,
        }
    }
}

impl Limits {
    pub fn new(max_ops: u64) -> Self {
        Self { max_ops }
    }

    /// Fails when `needed` exceeds the cap.
    pub fn check(&self, what: &str, needed: u128) -> Result<()> {
        if needed > u128::from(self.max_ops) {
            return Err(Error::ResourceLimit {
                what: what.to_string(),
                needed,
                cap: self.max_ops,
            });
        }
        Ok(())
    }

    /// Checks `base^exp` against the cap and returns it as a `usize`.
    pub fn power(&self, what: &str, base: usize, exp: usize) -> Result<usize> {
        let needed = checked_pow(base, exp).unwrap_or(u128::MAX);
        self.check(what, needed)?;
        Ok(needed as usize)
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_respects_cap() {
        let l = Limits::new(100);
        assert_eq!(l.power("t", 4, 3).unwrap(), 64);
        assert!(matches!(l.power("t", 4, 4), Err(Error::ResourceLimit { needed: 256, .. })));
        assert!(l.power("t", usize::MAX, 5).is_err());
    }
}
