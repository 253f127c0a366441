//! Subformula analysis: zero propagation, `N`-set inclusion, essential
//! subformulas and `Θ(Φ)`.

use serde::Serialize;

use super::eval::validate;
use super::{eval, i_name, realize, realize_at, Formula, Occurrence, Signature};
use crate::error::{Error, Result};
use crate::table::TableFn;

/// `true` iff `Φ_1(α) = 0` implies `Φ(α) = 0`, where `Φ_1` is the subformula
/// at `occ`.
pub fn zero_propagation_check(
    f: &Formula,
    sig: &Signature,
    occ: &Occurrence,
    tuple: &[u8],
) -> Result<bool> {
    let sub = f
        .at(occ)
        .ok_or_else(|| Error::InvalidOccurrence(occ.0.clone()))?;
    let whole = eval(f, sig, tuple)?;
    let part = eval(sub, sig, tuple)?;
    Ok(part != 0 || whole == 0)
}

/// `true` iff `N_Φ ⊆ N_{Φ_1}` with both realized over `x_1..x_nvars`.
pub fn n_subset_check(f: &Formula, sig: &Signature, occ: &Occurrence, nvars: usize) -> Result<bool> {
    let whole = realize(f, sig, nvars)?;
    let part = realize_at(f, sig, occ, nvars)?;
    Ok(whole.is_subset_of(&part))
}

/// `true` iff the application at `occ` realizes something other than `i`
/// over its own variables.
pub fn is_essential(f: &Formula, sig: &Signature, occ: &Occurrence, nvars: usize) -> Result<bool> {
    let sub = f
        .at(occ)
        .ok_or_else(|| Error::InvalidOccurrence(occ.0.clone()))?;
    if sub.is_var() {
        return Err(Error::InvalidOccurrence(occ.0.clone()));
    }
    Ok(!realize_at(f, sig, occ, nvars)?.is_i())
}

/// `q_i`: number of leaves `x_i` among the arguments of the application at
/// `occ`, nested subformulas included.
pub fn variable_counts(f: &Formula, occ: &Occurrence, nvars: usize) -> Result<Vec<usize>> {
    match f.at(occ) {
        Some(app @ Formula::App { .. }) => Ok(app.var_occurrences(nvars)),
        _ => Err(Error::InvalidOccurrence(occ.0.clone())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theta {
    /// Distinct head functions, each with the first name it appeared under.
    pub functions: Vec<(String, TableFn)>,
    /// Every occurrence whose replacement by `i_m` changes `Φ`.
    pub occurrences: Vec<Occurrence>,
}

/// `Θ(Φ)`: heads `g` of occurrences `g(B_1..B_m)` such that replacing the
/// occurrence by `i_m(B_1..B_m)` changes the function realized by `Φ`.
pub fn theta(f: &Formula, sig: &Signature, nvars: usize) -> Result<Theta> {
    validate(f, sig, nvars)?;
    let base = realize(f, sig, nvars)?;
    let mut out = Theta {
        functions: Vec::new(),
        occurrences: Vec::new(),
    };
    for occ in f.applications() {
        let Some(Formula::App { head, args }) = f.at(&occ) else {
            unreachable!("applications() yields application nodes")
        };
        let replaced = f.replace_at(&occ, Formula::app(i_name(args.len()), args.clone()))?;
        if realize(&replaced, sig, nvars)? == base {
            continue;
        }
        out.occurrences.push(occ);
        let table = sig.get(head)?.to_table()?;
        if !out.functions.iter().any(|(_, t)| *t == table) {
            out.functions.push((head.clone(), table));
        }
    }
    Ok(out)
}
