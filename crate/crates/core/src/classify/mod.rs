//! Basis classification of families `G ⊆ PS^{[p]}` without congruent
//! members.
//!
//! With `ρ(f) = t_f / gcd(d_f, t_f)`:
//!
//! * finite basis iff `G \ I` is finite;
//! * no basis iff some value `p^t` (`t ≥ 0`) is the ratio of infinitely many
//!   members of `G \ I`;
//! * a countably infinite basis otherwise.
//!
//! For the sequence forms of [`SequenceSpec`] the ratio exponent is affine in
//! `k`, so each sequence either repeats one ratio forever or never repeats.

mod descriptor;

use serde::Serialize;

use crate::closure::{member_oracle, name_generators, ClosureCaps, OracleVerdict};
use crate::criteria::{has_middle_layer, maximal_set, member_single, member_single_with_i, Membership};
use crate::error::{Error, Result};
use crate::symfun::PeriodicProfile;
use crate::arith::log_exact;

pub use descriptor::{DTerm, FamilyDescriptor, NTerm, RhoForm, SequenceSpec, TExp, PREFIX_LEN};

/// Members taken from each sequence when describing a countable basis.
pub const FRONTIER_PREFIX: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    FiniteBasis,
    CountableBasis,
    NoBasis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoKind {
    /// Every member is an `i_n`.
    AllInI,
    /// One ratio value repeats for every `k` (after `k = 0` when `t_0 = 1`).
    Constant,
    StrictlyIncreasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SequenceAnalysis {
    pub index: usize,
    pub kind: RhoKind,
    pub rho: RhoForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    FiniteBasis {
        basis: Option<Vec<PeriodicProfile>>,
        note: Option<String>,
    },
    /// The maximal-element set over a prefix of the family.
    CountableBasis {
        frontier: Option<Vec<PeriodicProfile>>,
        note: Option<String>,
    },
    NoBasis {
        exponent: u64,
        sequence: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisClassification {
    pub verdict: Verdict,
    pub witness: Witness,
    pub sequences: Vec<SequenceAnalysis>,
}

pub fn analyze(s: &SequenceSpec, index: usize) -> SequenceAnalysis {
    let rho = s.rho();
    let kind = if s.is_degenerate() {
        RhoKind::AllInI
    } else if rho.slope == 0 {
        RhoKind::Constant
    } else {
        RhoKind::StrictlyIncreasing
    };
    SequenceAnalysis { index, kind, rho }
}

pub fn classify(desc: &FamilyDescriptor, caps: &ClosureCaps) -> Result<BasisClassification> {
    desc.validate()?;
    let sequences: Vec<SequenceAnalysis> = desc
        .sequences
        .iter()
        .enumerate()
        .map(|(i, s)| analyze(s, i))
        .collect();

    if sequences.iter().all(|a| a.kind == RhoKind::AllInI) {
        let mut family = desc.finite.clone();
        // one i_n with n ≥ 2 from each all-i sequence generates the rest
        for s in &desc.sequences {
            if let Some(rep) = (0..=PREFIX_LEN)
                .map_while(|k| s.member(k, desc.p))
                .find(|m| m.n() >= 2)
            {
                if !family.iter().any(|f| f.canonical() == rep.canonical()) {
                    family.push(rep);
                }
            }
        }
        let witness = match extract_finite_basis(&family, desc.p, caps) {
            Ok(x) => Witness::FiniteBasis {
                basis: Some(x.basis),
                note: None,
            },
            Err(e) => Witness::FiniteBasis {
                basis: None,
                note: Some(e.to_string()),
            },
        };
        return Ok(BasisClassification {
            verdict: Verdict::FiniteBasis,
            witness,
            sequences,
        });
    }

    if let Some(a) = sequences.iter().find(|a| a.kind == RhoKind::Constant) {
        return Ok(BasisClassification {
            verdict: Verdict::NoBasis,
            witness: Witness::NoBasis {
                exponent: a.rho.intercept,
                sequence: a.index,
            },
            sequences,
        });
    }

    let sample: Vec<PeriodicProfile> = desc
        .sample(FRONTIER_PREFIX)
        .into_iter()
        .filter(|f| !f.is_i())
        .collect();
    let witness = match maximal_set(&sample) {
        Ok(frontier) => Witness::CountableBasis {
            frontier: Some(frontier),
            note: None,
        },
        Err(e) => Witness::CountableBasis {
            frontier: None,
            note: Some(e.to_string()),
        },
    };
    Ok(BasisClassification {
        verdict: Verdict::CountableBasis,
        witness,
        sequences,
    })
}

/// The all-`d = 0` route: an infinite family of `d = 0` functions containing
/// some `g` with `(2^m) ∈ N_g` has no basis.
pub fn classify_d0_infinite(desc: &FamilyDescriptor) -> Result<Verdict> {
    desc.validate()?;
    let infinite = desc.sequences.iter().any(|s| !s.is_degenerate());
    if !infinite {
        return Err(Error::Precondition("the family is finite modulo I".into()));
    }
    let all_d0 = desc.finite.iter().all(|f| f.d() == 0) && desc.sequences.iter().all(|s| s.d.is_none());
    if !all_d0 {
        return Err(Error::Precondition("some member has d != 0".into()));
    }
    let has_all_twos = desc.finite.iter().any(|f| f.has_all_twos())
        || desc.sequences.iter().any(|s| {
            (0..=PREFIX_LEN)
                .map_while(|k| s.member(k, desc.p))
                .any(|m| m.has_all_twos())
        });
    if !has_all_twos {
        return Err(Error::Precondition(format!(
            "no member g with (2^m) in N_g among the finite part and the first {PREFIX_LEN} sequence members"
        )));
    }
    Ok(Verdict::NoBasis)
}

/// `f ∈ PS^{[p_1..p_s]}`: every prime factor of `t_f` is listed.
pub fn is_in_ps_bracket(f: &PeriodicProfile, primes: &[u64]) -> bool {
    let mut t = f.t();
    for &p in primes.iter().filter(|&&p| p > 1) {
        while t.is_multiple_of(p) {
            t /= p;
        }
    }
    t == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Removal {
    pub profile: PeriodicProfile,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub basis: Vec<PeriodicProfile>,
    pub removed: Vec<Removal>,
}

/// Greedy removal of generators derivable from the others, smallest arity
/// first. Membership is decided by the criteria where they apply and by the
/// closure oracle otherwise; a removal that neither settles is reported as
/// [`Error::Undecided`].
pub fn extract_finite_basis(
    family: &[PeriodicProfile],
    p: u64,
    caps: &ClosureCaps,
) -> Result<Extraction> {
    for f in family {
        if log_exact(f.t(), p).is_none() {
            return Err(Error::Precondition(format!("{f} is not in PS^[{p}]")));
        }
    }
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by_key(|&i| (family[i].n(), family[i].t(), family[i].d()));
    let mut kept = vec![true; family.len()];
    let mut removed = Vec::new();
    for &i in &order {
        let rest: Vec<PeriodicProfile> = (0..family.len())
            .filter(|&j| j != i && kept[j])
            .map(|j| family[j])
            .collect();
        if let Some(reason) = redundant(&family[i], &rest, caps)? {
            kept[i] = false;
            removed.push(Removal {
                profile: family[i],
                reason,
            });
        }
    }
    Ok(Extraction {
        basis: (0..family.len()).filter(|&j| kept[j]).map(|j| family[j]).collect(),
        removed,
    })
}

/// `Some(reason)` if `g ∈ [rest]`, `None` if not.
fn redundant(g: &PeriodicProfile, rest: &[PeriodicProfile], caps: &ClosureCaps) -> Result<Option<String>> {
    if rest.is_empty() {
        return Ok(None);
    }
    // any i_k with k ≥ 2 generates all of I
    let i_gen = rest.iter().find(|h| h.is_i() && h.n() >= 2);
    let non_i: Vec<&PeriodicProfile> = rest.iter().filter(|h| !h.is_i()).collect();

    if g.is_i() {
        if let Some(h) = i_gen {
            return Ok(Some(format!("i-identities from {h}")));
        }
        if g.n() == 1 && rest.iter().any(|h| h.is_i()) {
            return Ok(Some("i_1 is i_k with all arguments equal".into()));
        }
    }
    if !g.is_i() && non_i.is_empty() {
        return Ok(None);
    }
    for h in &non_i {
        if member_single(g, h).is_yes() {
            return Ok(Some(format!("criteria: in [{{{h}}}]")));
        }
        if i_gen.is_some() && member_single_with_i(g, h).is_yes() {
            return Ok(Some(format!("criteria: in [{{{h}}} ∪ I]")));
        }
    }

    let fits = g.n() as usize <= caps.max_nvars && rest.iter().all(|h| h.n() as usize <= caps.max_arity);
    if fits {
        let tables = rest
            .iter()
            .map(PeriodicProfile::to_table)
            .collect::<Result<Vec<_>>>()?;
        return match member_oracle(&g.to_table()?, &name_generators(&tables), caps)? {
            OracleVerdict::Yes(w) => Ok(Some(format!("oracle witness {w}"))),
            OracleVerdict::No => Ok(None),
            OracleVerdict::Incomplete(why) => Err(Error::Undecided(format!("{g}: {why}"))),
        };
    }

    // a negative criterion verdict is conclusive only for a single non-i
    // generator, possibly alongside I, and only when N_g has a middle layer
    let only_i_besides = rest.iter().filter(|h| h.is_i()).all(|h| h.n() >= 2);
    if let [h] = non_i.as_slice() {
        let verdict = match (i_gen, rest.len()) {
            (None, 1) => member_single(g, h),
            (Some(_), _) if only_i_besides => member_single_with_i(g, h),
            _ => Membership::Inapplicable {
                reason: "mixed generators".into(),
            },
        };
        if verdict.is_no() && has_middle_layer(g) {
            return Ok(None);
        }
    }
    Err(Error::Undecided(format!(
        "{g}: outside the oracle caps and not settled by the criteria"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64, d: u64, t: u64) -> PeriodicProfile {
        PeriodicProfile::new(n, d, t).unwrap()
    }

    fn seq(a: u64, b: u64, d: Option<(u64, u64, u64)>, n: (u64, u64, u64, u64)) -> SequenceSpec {
        SequenceSpec {
            t_exp: TExp { a, b },
            d: d.map(|(c, g, e)| DTerm { c, g, e }),
            n: NTerm {
                u: n.0,
                v: n.1,
                w: n.2,
                z: n.3,
            },
        }
    }

    #[test]
    fn finite_family_has_finite_basis() {
        let desc = FamilyDescriptor {
            p: 2,
            finite: vec![p(2, 0, 1), p(4, 0, 2)],
            sequences: vec![],
        };
        let c = classify(&desc, &ClosureCaps::default()).unwrap();
        assert_eq!(c.verdict, Verdict::FiniteBasis);
        let Witness::FiniteBasis { basis: Some(b), .. } = c.witness else {
            panic!("{:?}", c.witness)
        };
        assert!(b.contains(&p(4, 0, 2)));
    }

    #[test]
    fn increasing_ratio_gives_countable_basis() {
        let desc = FamilyDescriptor {
            p: 2,
            finite: vec![],
            sequences: vec![seq(1, 1, Some((1, 0, 0)), (1, 0, 1, 0))],
        };
        let c = classify(&desc, &ClosureCaps::default()).unwrap();
        assert_eq!(c.verdict, Verdict::CountableBasis);
        assert_eq!(c.sequences[0].kind, RhoKind::StrictlyIncreasing);
    }

    #[test]
    fn constant_ratio_gives_no_basis() {
        let desc = FamilyDescriptor {
            p: 2,
            finite: vec![],
            sequences: vec![seq(1, 1, Some((1, 0, 1)), (0, 0, 1, 1))],
        };
        let c = classify(&desc, &ClosureCaps::default()).unwrap();
        assert_eq!(c.verdict, Verdict::NoBasis);
        assert_eq!(
            c.witness,
            Witness::NoBasis {
                exponent: 1,
                sequence: 0
            }
        );
    }

    #[test]
    fn all_i_sequence_is_finite() {
        let desc = FamilyDescriptor {
            p: 3,
            finite: vec![p(3, 0, 3)],
            sequences: vec![seq(0, 0, None, (2, 1, 0, 0))],
        };
        let c = classify(&desc, &ClosureCaps::default()).unwrap();
        assert_eq!(c.verdict, Verdict::FiniteBasis);
    }

    #[test]
    fn d0_route() {
        let desc = FamilyDescriptor {
            p: 3,
            finite: vec![],
            sequences: vec![seq(0, 1, None, (0, 0, 1, 0))],
        };
        assert_eq!(classify_d0_infinite(&desc).unwrap(), Verdict::NoBasis);
        assert_eq!(
            classify(&desc, &ClosureCaps::default()).unwrap().verdict,
            Verdict::NoBasis
        );
        let finite = FamilyDescriptor {
            p: 2,
            finite: vec![p(4, 0, 2)],
            sequences: vec![],
        };
        assert!(classify_d0_infinite(&finite).is_err());
    }

    #[test]
    fn bracket_membership() {
        let f = p(12, 0, 12);
        assert!(is_in_ps_bracket(&f, &[2, 3]));
        assert!(!is_in_ps_bracket(&f, &[2]));
        assert!(is_in_ps_bracket(&p(3, 0, 1), &[]));
    }

    #[test]
    fn extraction_examples() {
        let caps = ClosureCaps::default();
        let x = extract_finite_basis(&[p(2, 0, 2), p(4, 0, 2)], 2, &caps).unwrap();
        assert_eq!(x.basis, vec![p(4, 0, 2)]);
        let x = extract_finite_basis(&[p(2, 0, 1), p(5, 0, 1)], 2, &caps).unwrap();
        assert_eq!(x.basis, vec![p(5, 0, 1)]);
        let x = extract_finite_basis(&[p(3, 1, 2)], 2, &caps).unwrap();
        assert_eq!(x.basis, vec![p(3, 1, 2)]);
        assert!(extract_finite_basis(&[p(3, 0, 3)], 2, &caps).is_err());
    }
}
