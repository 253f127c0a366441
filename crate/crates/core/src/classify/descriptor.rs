//! Finite descriptions of generator families inside `PS^{[p]}`.
//!
//! A family is a finite list of profiles plus parametric sequences indexed
//! by `k = 0, 1, 2, ...`:
//!
//! ```text
//! t_k  = p^(a + b·k)
//! d(k) = 0                      (d omitted)
//!      = c · p^(g + e·k)        (c ≥ 1, p ∤ c)
//! n(k) = u + v·k + w·p^(a + b·k) + z·p^(g + e·k)
//! ```

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, log_exact};
use crate::error::{Error, Result};
use crate::symfun::PeriodicProfile;

/// Indices checked numerically when a property is not settled in closed
/// form.
pub const PREFIX_LEN: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TExp {
    pub a: u64,
    pub b: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DTerm {
    pub c: u64,
    pub g: u64,
    pub e: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NTerm {
    pub u: u64,
    pub v: u64,
    pub w: u64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub z: u64,
}

fn is_zero(x: &u64) -> bool {
    *x == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub t_exp: TExp,
    #[serde(default)]
    pub d: Option<DTerm>,
    pub n: NTerm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub p: u64,
    #[serde(default)]
    pub finite: Vec<PeriodicProfile>,
    #[serde(default)]
    pub sequences: Vec<SequenceSpec>,
}

fn pow(p: u64, e: u64) -> Option<u128> {
    (p as u128).checked_pow(u32::try_from(e).ok()?)
}

/// Shape of `ρ(k) = t_k / gcd(d(k), t_k)` as `p^(intercept + slope·k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RhoForm {
    pub intercept: u64,
    pub slope: u64,
}

impl SequenceSpec {
    pub fn t_exp_at(&self, k: u64) -> Option<u64> {
        self.t_exp.b.checked_mul(k)?.checked_add(self.t_exp.a)
    }

    pub fn t_at(&self, k: u64, p: u64) -> Option<u128> {
        pow(p, self.t_exp_at(k)?)
    }

    pub fn d_at(&self, k: u64, p: u64) -> Option<u128> {
        match self.d {
            None => Some(0),
            Some(d) => {
                let exp = d.e.checked_mul(k)?.checked_add(d.g)?;
                pow(p, exp)?.checked_mul(d.c as u128)
            }
        }
    }

    pub fn n_at(&self, k: u64, p: u64) -> Option<u128> {
        let mut n = (self.n.u as u128).checked_add((self.n.v as u128).checked_mul(k as u128)?)?;
        n = n.checked_add((self.n.w as u128).checked_mul(self.t_at(k, p)?)?)?;
        if let Some(d) = self.d {
            let exp = d.e.checked_mul(k)?.checked_add(d.g)?;
            n = n.checked_add((self.n.z as u128).checked_mul(pow(p, exp)?)?)?;
        }
        Some(n)
    }

    /// The `k`-th member, or `None` if it does not fit in 64 bits.
    pub fn member(&self, k: u64, p: u64) -> Option<PeriodicProfile> {
        let n = u64::try_from(self.n_at(k, p)?).ok()?;
        let d = u64::try_from(self.d_at(k, p)?).ok()?;
        let t = u64::try_from(self.t_at(k, p)?).ok()?;
        PeriodicProfile::new(n, d, t).ok()
    }

    /// Every member is some `i_n`.
    pub fn is_degenerate(&self) -> bool {
        self.t_exp.a == 0 && self.t_exp.b == 0
    }

    /// Closed form of the ratio exponent; valid once the sequence is validated.
    pub fn rho(&self) -> RhoForm {
        match self.d {
            None => RhoForm {
                intercept: 0,
                slope: 0,
            },
            Some(d) => RhoForm {
                intercept: self.t_exp.a - d.g,
                slope: self.t_exp.b - d.e,
            },
        }
    }

    /// Checks `0 ≤ d(k) < t_k`, `d(k) ≤ n(k)`, `n(k) ≥ 1` and strict growth
    /// of `n` for every `k`.
    pub fn validate(&self, p: u64) -> Result<()> {
        let TExp { a, b } = self.t_exp;
        let NTerm { v, w, z, .. } = self.n;
        let bad = |msg: String| Err(Error::InvalidDescriptor(msg));
        match self.d {
            None => {
                if z != 0 {
                    return bad("n.z requires a non-zero d term".into());
                }
            }
            Some(DTerm { c, g, e }) => {
                if c == 0 {
                    return bad("d.c must be positive; omit d for d(k) = 0".into());
                }
                if c % p == 0 {
                    return bad(format!("d.c = {c} must be coprime to p = {p}"));
                }
                // c·p^(g+ek) < p^(a+bk) for all k iff b ≥ e and c < p^(a-g)
                if b < e {
                    return bad("d(k) eventually reaches t_k (d.e > t_exp.b)".into());
                }
                let below = a >= g && pow(p, a - g).is_none_or(|lim| (c as u128) < lim);
                if !below {
                    return bad("d(0) >= t_0".into());
                }
                // d(k) ≤ n(k)
                let dominated = w >= 1 || z >= c;
                if !dominated {
                    if e > 0 {
                        return bad("d(k) grows faster than n(k)".into());
                    }
                    let (d0, n0) = (self.d_at(0, p), self.n_at(0, p));
                    if !matches!((d0, n0), (Some(d0), Some(n0)) if d0 <= n0) {
                        return bad("d(0) > n(0)".into());
                    }
                }
            }
        }
        let grows = v > 0 || (w > 0 && b > 0) || (z > 0 && self.d.is_some_and(|d| d.e > 0));
        if !grows {
            return bad("n(k) must be strictly increasing".into());
        }
        match self.n_at(0, p) {
            Some(n0) if n0 >= 1 => {}
            Some(_) => return bad("n(0) must be positive".into()),
            None => return bad("n(0) overflows".into()),
        }
        // numeric cross-check on the prefix
        let mut prev: Option<u128> = None;
        for k in 0..=PREFIX_LEN {
            let (Some(t), Some(d), Some(n)) = (self.t_at(k, p), self.d_at(k, p), self.n_at(k, p))
            else {
                break;
            };
            if d >= t || d > n || prev.is_some_and(|q| n <= q) {
                return bad(format!("invariants fail at k = {k}"));
            }
            prev = Some(n);
        }
        Ok(())
    }
}

impl FamilyDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidDescriptor(format!("p = {} is not prime", self.p)));
        }
        for f in &self.finite {
            if log_exact(f.t(), self.p).is_none() {
                return Err(Error::InvalidDescriptor(format!(
                    "{f}: period is not a power of {}",
                    self.p
                )));
            }
        }
        for (i, s) in self.sequences.iter().enumerate() {
            s.validate(self.p)
                .map_err(|e| Error::InvalidDescriptor(format!("sequence {i}: {e}")))?;
        }
        self.check_congruence_free()
    }

    fn check_congruence_free(&self) -> Result<()> {
        let collision = |what: String| Err(Error::InvalidDescriptor(format!("congruent functions: {what}")));
        for (i, f) in self.finite.iter().enumerate() {
            for g in &self.finite[i + 1..] {
                if f.canonical() == g.canonical() {
                    return collision(format!("{f} and {g}"));
                }
            }
            for (j, s) in self.sequences.iter().enumerate() {
                if let Some(k) = self.find_arity(s, f.n()) {
                    if s.member(k, self.p).map(|m| m.canonical()) == Some(f.canonical()) {
                        return collision(format!("{f} and member {k} of sequence {j}"));
                    }
                }
            }
        }
        for (i, s) in self.sequences.iter().enumerate() {
            for (j, r) in self.sequences.iter().enumerate().skip(i + 1) {
                for k in 0..=PREFIX_LEN {
                    let Some(m) = s.member(k, self.p) else { break };
                    let Some(l) = self.find_arity(r, m.n()) else {
                        continue;
                    };
                    if r.member(l, self.p).map(|x| x.canonical()) == Some(m.canonical()) {
                        return collision(format!(
                            "member {k} of sequence {i} and member {l} of sequence {j}"
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The index `k` with `n(k) = n`, by galloping and bisection on the
    /// strictly increasing `n(k)`.
    fn find_arity(&self, s: &SequenceSpec, n: u64) -> Option<u64> {
        let n = n as u128;
        let above = |k: u64| s.n_at(k, self.p).is_none_or(|nk| nk > n);
        let mut hi = 1u64;
        while !above(hi) {
            hi = hi.checked_mul(2)?;
        }
        // invariant: n(lo) <= n is unknown for lo = 0, n(hi) > n
        let mut lo = 0u64;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if above(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        // lo is the first index with n(lo) > n
        let k = lo.checked_sub(1)?;
        (s.n_at(k, self.p)? == n).then_some(k)
    }

    /// All described functions whose index is at most `k_max`, finite part
    /// first.
    pub fn sample(&self, k_max: u64) -> Vec<PeriodicProfile> {
        let mut out = self.finite.clone();
        for s in &self.sequences {
            out.extend((0..=k_max).map_while(|k| s.member(k, self.p)));
        }
        out
    }
}
