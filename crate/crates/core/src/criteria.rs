//! Arithmetic decision procedures for `f ∈ [{g}]`, `f ∈ [{g} ∪ I]` and
//! `f ∈ [PS^r ∪ I]` on periodic profiles.
//!
//! Two regimes, chosen by whether `N_g` contains both `(1^m)` and `(2^m)`:
//!
//! * not both (`L1-item1` / `L1-item2`): with `t = t_g / t_f` integral,
//!   `d_g` divisible by `t·gcd(d_f, t_f)`, some `0 < q < t_g` divisible by
//!   `t` with `d_g + k·t_g = q·d_f` for a `k ≥ 0`, and `m = q·n + s·t_g`
//!   (`s ≥ 0`) without `I`, or `m ≥ q·n` with `I`;
//! * both (`L2`): `d_f = 0`, `t_g / t_f` integral and `m ≥ (t_g / t_f)·n`,
//!   with or without `I`.
//!
//! Both regimes require `t_f > 1` and `d_f + t_f ≤ n`; otherwise the verdict
//! is [`Membership::Inapplicable`].

use std::fmt;

use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::symfun::PeriodicProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    #[serde(rename = "L1-item1")]
    L1Item1,
    #[serde(rename = "L1-item2")]
    L1Item2,
    #[serde(rename = "L2")]
    L2,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::L1Item1 => "L1-item1",
            Branch::L1Item2 => "L1-item2",
            Branch::L2 => "L2",
        })
    }
}

/// Witness values for a positive verdict. In the `L2` branch `q = t` is the
/// required arity multiplier and `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub t: u64,
    pub q: u64,
    /// Present only for `L1-item1`, where `m = q·n + s·t_g`.
    pub s: Option<u64>,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    Yes {
        branch: Branch,
        certificate: Certificate,
    },
    No {
        branch: Branch,
        reason: String,
    },
    Inapplicable {
        reason: String,
    },
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Membership::No { .. })
    }

    /// `Some(answer)` unless the criterion is inapplicable.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Membership::Yes { .. } => Some(true),
            Membership::No { .. } => Some(false),
            Membership::Inapplicable { .. } => None,
        }
    }

    pub fn branch(&self) -> Option<Branch> {
        match self {
            Membership::Yes { branch, .. } | Membership::No { branch, .. } => Some(*branch),
            Membership::Inapplicable { .. } => None,
        }
    }
}

/// Why the hypotheses on `f` fail, if they do.
pub fn hypotheses_fail(f: &PeriodicProfile) -> Option<String> {
    if f.t() <= 1 {
        return Some(format!("t_f = {} is not greater than 1", f.t()));
    }
    if f.d() + f.t() > f.n() {
        return Some(format!(
            "d_f + t_f = {} exceeds n = {}",
            f.d() + f.t(),
            f.n()
        ));
    }
    None
}

/// `f ∈ [{g}]`.
pub fn member_single(f: &PeriodicProfile, g: &PeriodicProfile) -> Membership {
    decide(f, g, false)
}

/// `f ∈ [{g} ∪ I]`.
pub fn member_single_with_i(f: &PeriodicProfile, g: &PeriodicProfile) -> Membership {
    decide(f, g, true)
}

/// `N_f` contains a tuple with `0 < |α| < n`. The variable-count argument
/// behind the negative direction of both lemmas needs such a tuple; without
/// it (`f = (n, 0, n)`) a "no" is unproven and is known to be wrong for some
/// `g`, e.g. `f = (2,0,2)` from `g = (3,0,3)` as `g(x1,x1,x2)`.
pub fn has_middle_layer(f: &PeriodicProfile) -> bool {
    f.layers().any(|d| d > 0 && d < f.n())
}

fn no(branch: Branch, reason: String) -> Membership {
    Membership::No { branch, reason }
}

fn decide(f: &PeriodicProfile, g: &PeriodicProfile, with_i: bool) -> Membership {
    match decide_lemma(f, g, with_i) {
        Membership::No { branch, reason } if !has_middle_layer(f) => Membership::No {
            branch,
            reason: format!("{reason}; unproven: N_f has no tuple with 0 < |α| < n"),
        },
        m => m,
    }
}

fn decide_lemma(f: &PeriodicProfile, g: &PeriodicProfile, with_i: bool) -> Membership {
    if let Some(reason) = hypotheses_fail(f) {
        return Membership::Inapplicable { reason };
    }
    let (n, df, tf) = (f.n(), f.d(), f.t());
    let (m, dg, tg) = (g.n(), g.d(), g.t());

    if g.has_all_ones() && g.has_all_twos() {
        let branch = Branch::L2;
        if df != 0 {
            return no(branch, format!("d_f = {df} is not 0"));
        }
        if tg % tf != 0 {
            return no(branch, format!("t_g/t_f = {tg}/{tf} is not an integer"));
        }
        let t = tg / tf;
        if m < t * n {
            return no(branch, format!("m = {m} < (t_g/t_f)·n = {}", t * n));
        }
        return Membership::Yes {
            branch,
            certificate: Certificate {
                t,
                q: t,
                s: None,
                k: 0,
            },
        };
    }

    let branch = if with_i { Branch::L1Item2 } else { Branch::L1Item1 };
    if tg % tf != 0 {
        return no(branch, format!("t_g/t_f = {tg}/{tf} is not an integer"));
    }
    let t = tg / tf;
    let step = t * gcd(df, tf);
    if dg % step != 0 {
        return no(
            branch,
            format!("d_g = {dg} is not divisible by t·gcd(d_f, t_f) = {step}"),
        );
    }
    let mut saw_offset = false;
    let mut saw_size = false;
    for q in 1..tg {
        let Some(k) = offset_multiplier(q, df, dg, tg) else {
            continue;
        };
        saw_offset = true;
        let size_ok = if with_i {
            (m >= q * n).then_some(None)
        } else {
            (m >= q * n && (m - q * n).is_multiple_of(tg)).then(|| Some((m - q * n) / tg))
        };
        let Some(s) = size_ok else {
            continue;
        };
        saw_size = true;
        if q % t == 0 {
            return Membership::Yes {
                branch,
                certificate: Certificate { t, q, s, k },
            };
        }
    }
    let reason = if !saw_offset {
        format!("no 0 < q < {tg} with d_g + k·t_g = q·d_f")
    } else if !saw_size {
        if with_i {
            format!("m = {m} < q·n for every admissible q")
        } else {
            format!("m = {m} is not q·n + s·t_g for any admissible q")
        }
    } else {
        format!("no admissible q is divisible by t = {t}")
    };
    no(branch, reason)
}

/// `k ≥ 0` with `d_g + k·t_g = q·d_f`, if any.
fn offset_multiplier(q: u64, df: u64, dg: u64, tg: u64) -> Option<u64> {
    let lhs = q * df;
    (lhs >= dg && (lhs - dg).is_multiple_of(tg)).then(|| (lhs - dg) / tg)
}

impl Certificate {
    /// Re-checks every equation of `branch` for these values.
    pub fn verify(&self, f: &PeriodicProfile, g: &PeriodicProfile, branch: Branch) -> bool {
        if hypotheses_fail(f).is_some() {
            return false;
        }
        let (n, df, tf) = (f.n(), f.d(), f.t());
        let (m, dg, tg) = (g.n(), g.d(), g.t());
        if self.t == 0 || self.t * tf != tg {
            return false;
        }
        let both = g.has_all_ones() && g.has_all_twos();
        match branch {
            Branch::L2 => both && df == 0 && self.q == self.t && m >= self.t * n,
            Branch::L1Item1 | Branch::L1Item2 => {
                let size = match (branch, self.s) {
                    (Branch::L1Item1, Some(s)) => m == self.q * n + s * tg,
                    (Branch::L1Item2, None) => m >= self.q * n,
                    _ => false,
                };
                !both
                    && dg % (self.t * gcd(df, tf)) == 0
                    && self.q > 0
                    && self.q < tg
                    && dg + self.k * tg == self.q * df
                    && size
                    && self.q.is_multiple_of(self.t)
            }
        }
    }
}

/// `f ∈ [PS^r ∪ I]`: holds iff `t_f` divides `r`.
pub fn member_psr_with_i(f: &PeriodicProfile, r: u64) -> bool {
    r.is_multiple_of(f.t())
}

/// `g ∈ [{h} ∪ I]`, counting `i`-functions as members of every such class.
pub fn contained_with_i(g: &PeriodicProfile, h: &PeriodicProfile) -> Result<bool> {
    if g.is_i() {
        return Ok(true);
    }
    match member_single_with_i(g, h) {
        Membership::Yes { .. } => Ok(true),
        Membership::No { .. } => Ok(false),
        Membership::Inapplicable { reason } => {
            Err(Error::Inapplicable(format!("{g} against {h}: {reason}")))
        }
    }
}

/// Elements `g` such that every `g'` with `g ∈ [{g'} ∪ I]` also satisfies
/// `g' ∈ [{g} ∪ I]`.
pub fn maximal_set(family: &[PeriodicProfile]) -> Result<Vec<PeriodicProfile>> {
    let mut out = Vec::new();
    for g in family {
        let mut keep = true;
        for h in family {
            if contained_with_i(g, h)? && !contained_with_i(h, g)? {
                keep = false;
                break;
            }
        }
        if keep {
            out.push(*g);
        }
    }
    Ok(out)
}
