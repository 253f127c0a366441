//! Reference implementations used as oracles by the integration tests.
//! Nothing here calls into the evaluation code of the library.

#![allow(dead_code)]

use std::collections::HashMap;

use symper_core::{Formula, PeriodicProfile};

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Layer test straight from the definition: `d ≡ d_f (mod t)`, `d_f <= d <= n`.
pub fn in_layer(n: u64, df: u64, tf: u64, twos: u64) -> bool {
    twos >= df && twos <= n && (twos - df).is_multiple_of(tf)
}

pub fn eval_periodic(p: (u64, u64, u64), tuple: &[u8]) -> u8 {
    if tuple.contains(&0) {
        return 0;
    }
    let twos = tuple.iter().filter(|&&x| x == 2).count() as u64;
    in_layer(p.0, p.1, p.2, twos) as u8
}

pub fn triple(p: &PeriodicProfile) -> (u64, u64, u64) {
    (p.n(), p.d(), p.t())
}

/// Heads by name: periodic triples; `i<k>` / `i_<k>` are always the
/// `i`-function.
pub type Heads = HashMap<String, (u64, u64, u64)>;

fn i_arity(name: &str) -> Option<usize> {
    let digits = name.strip_prefix("i_").or_else(|| name.strip_prefix('i'))?;
    digits.parse().ok()
}

pub fn eval_formula(f: &Formula, heads: &Heads, tuple: &[u8]) -> u8 {
    match f {
        Formula::Var(i) => tuple[i - 1],
        Formula::App { head, args } => {
            let vals: Vec<u8> = args.iter().map(|a| eval_formula(a, heads, tuple)).collect();
            if let Some(p) = heads.get(head) {
                assert_eq!(p.0 as usize, vals.len(), "arity of {head}");
                eval_periodic(*p, &vals)
            } else if let Some(k) = i_arity(head) {
                assert_eq!(k, vals.len(), "arity of {head}");
                (!vals.contains(&0)) as u8
            } else {
                panic!("unknown head {head}")
            }
        }
    }
}

/// Every tuple of `{0,1,2}^n`.
pub fn tuples3(n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..3u8).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Every tuple of `{1,2}^n`.
pub fn tuples12(n: usize) -> Vec<Vec<u8>> {
    tuples3(n).into_iter().filter(|t| !t.contains(&0)).collect()
}

/// `Φ` and `f` agree on all of `{0,1,2}^n`.
pub fn realizes(f: &Formula, heads: &Heads, target: (u64, u64, u64)) -> bool {
    tuples3(target.0 as usize)
        .iter()
        .all(|a| eval_formula(f, heads, a) == eval_periodic(target, a))
}

/// The membership lemmas, restated by brute force over `q`, `k` and `s`.
/// `None` when the hypotheses on `f` fail.
pub fn lemma(f: (u64, u64, u64), g: (u64, u64, u64), with_i: bool) -> Option<bool> {
    let (n, df, tf) = f;
    let (m, dg, tg) = g;
    if tf < 2 || df + tf > n {
        return None;
    }
    let ones = in_layer(m, dg, tg, 0);
    let twos = in_layer(m, dg, tg, m);
    if ones && twos {
        return Some(df == 0 && tg % tf == 0 && m >= tg / tf * n);
    }
    if tg % tf != 0 {
        return Some(false);
    }
    let t = tg / tf;
    if dg % (t * gcd(df, tf)) != 0 {
        return Some(false);
    }
    for q in (1..tg).filter(|q| q % t == 0) {
        let offset = (0..=q * df).any(|k| dg + k * tg == q * df);
        if !offset {
            continue;
        }
        let size = if with_i {
            m >= q * n
        } else {
            (0..=m).any(|s| q * n + s * tg == m)
        };
        if size {
            return Some(true);
        }
    }
    Some(false)
}

/// Every canonical periodic function of arity `n`, found by scanning layer
/// sets.
pub fn all_periodic(n: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for mask in 1u64..(1 << (n + 1)) {
        let layers: Vec<u64> = (0..=n).filter(|d| mask >> d & 1 == 1).collect();
        let d = layers[0];
        let t = if layers.len() == 1 {
            (d + 1).max(n - d + 1)
        } else {
            layers[1] - d
        };
        if d >= t {
            continue;
        }
        let expected: Vec<u64> = (d..=n).filter(|x| (x - d).is_multiple_of(t)).collect();
        if expected == layers {
            out.push((n, d, t));
        }
    }
    out
}
