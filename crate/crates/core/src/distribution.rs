use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Common evaluation surface of every lifetime model in the crate.
pub trait LifetimeDistribution<T: Scalar> {
    fn name(&self) -> &str;

    fn cdf(&self, x: T) -> Result<T>;

    fn pdf(&self, x: T) -> Result<T>;

    fn sf(&self, x: T) -> Result<T> {
        Ok(T::one() - self.cdf(x)?)
    }

    fn hazard(&self, x: T) -> Result<T> {
        let sf = self.sf(x)?;
        if sf <= T::zero() {
            return Err(Error::Overflow {
                op: "hazard",
                value: x.as_f64(),
            });
        }
        Ok(self.pdf(x)? / sf)
    }
}
