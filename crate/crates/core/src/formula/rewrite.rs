use super::{i_name, Formula, Signature};
use crate::error::Result;

/// Normalizes `i`-applications:
///
/// * `i_l(.., i_m(u_1..u_m), ..) -> i_{l+m-1}(.., u_1..u_m, ..)`
/// * repeated arguments of an `i`-node collapse: `i_n(.., a, a) -> i_{n-1}(.., a)`
///
/// A head counts as `i` when its table is all ones, whatever its name. The
/// pass is bottom-up, so the result is a fixpoint of both rules.
pub fn rewrite_i(f: &Formula, sig: &Signature) -> Result<Formula> {
    match f {
        Formula::Var(_) => Ok(f.clone()),
        Formula::App { head, args } => {
            let args = args
                .iter()
                .map(|a| rewrite_i(a, sig))
                .collect::<Result<Vec<_>>>()?;
            if !sig.get(head)?.is_i() {
                return Ok(Formula::App {
                    head: head.clone(),
                    args,
                });
            }
            let mut flat: Vec<Formula> = Vec::with_capacity(args.len());
            for a in args {
                let spliced = match &a {
                    Formula::App { head: h, args: inner } if sig.get(h)?.is_i() => inner.clone(),
                    _ => vec![a],
                };
                for s in spliced {
                    if !flat.contains(&s) {
                        flat.push(s);
                    }
                }
            }
            Ok(Formula::app(i_name(flat.len()), flat))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::realize;
    use crate::symfun::make_periodic;
    use crate::table::TableFn;

    fn rw(s: &str, sig: &Signature) -> String {
        rewrite_i(&s.parse().unwrap(), sig).unwrap().to_string()
    }

    #[test]
    fn identities() {
        let sig = Signature::new();
        assert_eq!(rw("(i2 (i2 x1 x2) x3)", &sig), "(i3 x1 x2 x3)");
        assert_eq!(rw("(i3 x1 x2 x2)", &sig), "(i2 x1 x2)");
        assert_eq!(rw("(i2 x1 x2)", &sig), "(i2 x1 x2)");
        assert_eq!(rw("(i2 x3 (i_3 x1 x2 x3))", &sig), "(i3 x3 x1 x2)");
        assert_eq!(rw("(i2 x1 x1)", &sig), "(i1 x1)");
    }

    #[test]
    fn non_i_heads_are_kept_and_their_arguments_rewritten() {
        let sig = Signature::new()
            .with("g", make_periodic(2, 0, 2).unwrap().to_table().unwrap())
            .unwrap()
            .with("conj", TableFn::i(2).unwrap())
            .unwrap();
        assert_eq!(rw("(g (i2 x1 x1) x2)", &sig), "(g (i1 x1) x2)");
        assert_eq!(rw("(conj (g x1 x2) (g x1 x2))", &sig), "(i1 (g x1 x2))");
        let f: Formula = "(i3 (g x1 x2) (conj x2 (i2 x1 x3)) x1)".parse().unwrap();
        let r = rewrite_i(&f, &sig).unwrap();
        assert_eq!(realize(&f, &sig, 3).unwrap(), realize(&r, &sig, 3).unwrap());
    }
}
