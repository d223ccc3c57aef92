//! Prime and prime-power helpers for the characteristic parameters.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^r` with `p` prime and `r ≥ 1`, if possible.
pub fn as_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

/// `p^r` after checking that `p` is prime and `r ≥ 1`.
pub fn prime_power(p: u64, r: u32) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    p.checked_pow(r)
        .and_then(|q| i64::try_from(q).ok())
        .filter(|&q| q <= 1 << 40)
        .ok_or_else(|| Error::InvalidParameter(format!("{p}^{r} is too large")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(as_prime_power(5), Some((5, 1)));
        assert_eq!(as_prime_power(9), Some((3, 2)));
        assert_eq!(as_prime_power(8), Some((2, 3)));
        assert_eq!(as_prime_power(12), None);
        assert_eq!(as_prime_power(1), None);
        assert_eq!(prime_power(3, 2).unwrap(), 9);
        assert!(prime_power(4, 1).is_err());
        assert!(prime_power(2, 0).is_err());
        assert!(prime_power(2, 63).is_err());
    }
}
