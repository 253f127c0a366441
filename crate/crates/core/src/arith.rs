//! Small integer helpers. `gcd(0, t) = t` throughout.

pub use num_integer::{gcd, lcm};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some(e)` with `n = p^e`, otherwise `None`.
pub fn log_exact(n: u64, p: u64) -> Option<u32> {
    if n == 0 || p < 2 {
        return None;
    }
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}

/// Exponent of `p` in `n`; `None` stands for infinity (`n = 0`).
pub fn valuation(n: u64, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    Some(e)
}
