use std::collections::BTreeSet;

use super::{Formula, Occurrence, Signature};
use crate::error::{Error, Result};
use crate::table::TableFn;

/// Checks head names, arities and variable bounds.
pub(crate) fn validate(f: &Formula, sig: &Signature, nvars: usize) -> Result<()> {
    match f {
        Formula::Var(i) => {
            if *i == 0 || *i > nvars {
                return Err(Error::VariableOutOfRange { index: *i, nvars });
            }
            Ok(())
        }
        Formula::App { head, args } => {
            let h = sig.get(head)?;
            if h.arity() != args.len() {
                return Err(Error::ArityMismatch {
                    expected: h.arity(),
                    got: args.len(),
                });
            }
            args.iter().try_for_each(|a| validate(a, sig, nvars))
        }
    }
}

/// Value of `f` on a tuple over `{0,1,2}`.
///
/// A variable leaf takes its component directly, so a subformula that is a
/// bare variable may evaluate to `2`.
pub fn eval(f: &Formula, sig: &Signature, tuple: &[u8]) -> Result<u8> {
    if let Some(&bad) = tuple.iter().find(|&&v| v > 2) {
        return Err(Error::InvalidValue(bad));
    }
    validate(f, sig, tuple.len())?;
    Ok(eval_unchecked(f, sig, tuple))
}

fn eval_unchecked(f: &Formula, sig: &Signature, tuple: &[u8]) -> u8 {
    match f {
        Formula::Var(i) => tuple[i - 1],
        Formula::App { head, args } => {
            let vals: Vec<u8> = args.iter().map(|a| eval_unchecked(a, sig, tuple)).collect();
            sig.get(head).map(|h| h.apply(&vals)).unwrap_or(0)
        }
    }
}

/// Values of `f` on every tuple of `{1,2}^nvars`, in table order.
fn values(f: &Formula, sig: &Signature, nvars: usize) -> Vec<u8> {
    let len = 1usize << nvars;
    match f {
        Formula::Var(i) => (0..len)
            .map(|idx| 1 + ((idx >> (nvars - i)) & 1) as u8)
            .collect(),
        Formula::App { head, args } => {
            let cols: Vec<Vec<u8>> = args.iter().map(|a| values(a, sig, nvars)).collect();
            let Ok(h) = sig.get(head) else {
                return vec![0; len];
            };
            let mut buf = vec![0u8; cols.len()];
            (0..len)
                .map(|idx| {
                    for (slot, col) in buf.iter_mut().zip(&cols) {
                        *slot = col[idx];
                    }
                    h.apply(&buf)
                })
                .collect()
        }
    }
}

/// Table of the function realized by `f` over `x_1..x_nvars`. Variables not
/// occurring in `f` are dummy coordinates of the table.
pub fn realize(f: &Formula, sig: &Signature, nvars: usize) -> Result<TableFn> {
    if f.is_var() {
        return Err(Error::BareVariable);
    }
    validate(f, sig, nvars)?;
    TableFn::new(nvars, values(f, sig, nvars).into_iter().map(|v| v == 1).collect())
}

/// Table realized by the subformula at `occ`, over the variables of `f`.
pub fn realize_at(f: &Formula, sig: &Signature, occ: &Occurrence, nvars: usize) -> Result<TableFn> {
    validate(f, sig, nvars)?;
    let sub = f
        .at(occ)
        .ok_or_else(|| Error::InvalidOccurrence(occ.0.clone()))?;
    realize(sub, sig, nvars)
}

/// Variables occurring in `f`.
pub fn support(f: &Formula) -> BTreeSet<usize> {
    f.variables()
}
