//! Formulas over a signature of `R`-functions.
//!
//! Text form is an s-expression: `(g x1 (h x1 x2))`. Variables are `x1`,
//! `x2`, ...; every other atom in head position names a signature entry.

mod analysis;
mod eval;
mod rewrite;
mod signature;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use analysis::{
    is_essential, n_subset_check, theta, variable_counts, zero_propagation_check, Theta,
};
pub use eval::{eval, realize, realize_at, support};
pub use rewrite::rewrite_i;
pub use signature::{i_name, parse_i_name, Head, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// `x_i`, `i >= 1`.
    Var(usize),
    App { head: String, args: Vec<Formula> },
}

/// Position of a subformula: child indices from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Occurrence(pub Vec<usize>);

impl Occurrence {
    pub fn root() -> Self {
        Self(Vec::new())
    }

    pub fn child(&self, i: usize) -> Self {
        let mut p = self.0.clone();
        p.push(i);
        Self(p)
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "/");
        }
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

/// Size limits applied to user-supplied formulas before exhaustive checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCaps {
    pub max_depth: usize,
    pub max_nodes: usize,
}

impl Default for FormulaCaps {
    fn default() -> Self {
        Self {
            max_depth: 8,
            max_nodes: 64,
        }
    }
}

impl FormulaCaps {
    pub fn check(&self, f: &Formula) -> Result<()> {
        if f.depth() > self.max_depth {
            return Err(Error::FormulaTooLarge(format!(
                "depth {} > {}",
                f.depth(),
                self.max_depth
            )));
        }
        if f.size() > self.max_nodes {
            return Err(Error::FormulaTooLarge(format!(
                "{} nodes > {}",
                f.size(),
                self.max_nodes
            )));
        }
        Ok(())
    }
}

impl Formula {
    pub fn var(i: usize) -> Self {
        Formula::Var(i)
    }

    pub fn app(head: impl Into<String>, args: Vec<Formula>) -> Self {
        Formula::App {
            head: head.into(),
            args,
        }
    }

    /// `head(x_{v_1}, ..., x_{v_k})`.
    pub fn app_vars(head: impl Into<String>, vars: &[usize]) -> Self {
        Self::app(head, vars.iter().map(|&v| Formula::Var(v)).collect())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Formula::Var(_))
    }

    /// Variables count as depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::App { args, .. } => 1 + args.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::App { args, .. } => 1 + args.iter().map(Formula::size).sum::<usize>(),
        }
    }

    /// Largest variable index, `0` if there is none.
    pub fn max_var(&self) -> usize {
        match self {
            Formula::Var(i) => *i,
            Formula::App { args, .. } => args.iter().map(Formula::max_var).max().unwrap_or(0),
        }
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |i| {
            out.insert(i);
        });
        out
    }

    /// Number of leaves `x_i` for `i = 1..=nvars`.
    pub fn var_occurrences(&self, nvars: usize) -> Vec<usize> {
        let mut q = vec![0; nvars];
        self.visit_vars(&mut |i| {
            if i >= 1 && i <= nvars {
                q[i - 1] += 1;
            }
        });
        q
    }

    fn visit_vars(&self, f: &mut impl FnMut(usize)) {
        match self {
            Formula::Var(i) => f(*i),
            Formula::App { args, .. } => args.iter().for_each(|a| a.visit_vars(f)),
        }
    }

    pub fn at(&self, occ: &Occurrence) -> Option<&Formula> {
        occ.0.iter().try_fold(self, |node, &i| match node {
            Formula::App { args, .. } => args.get(i),
            Formula::Var(_) => None,
        })
    }

    pub fn replace_at(&self, occ: &Occurrence, replacement: Formula) -> Result<Formula> {
        fn go(node: &Formula, path: &[usize], rep: Formula) -> Option<Formula> {
            let Some((&i, rest)) = path.split_first() else {
                return Some(rep);
            };
            match node {
                Formula::App { head, args } if i < args.len() => {
                    let mut args = args.clone();
                    args[i] = go(&args[i], rest, rep)?;
                    Some(Formula::App {
                        head: head.clone(),
                        args,
                    })
                }
                _ => None,
            }
        }
        go(self, &occ.0, replacement).ok_or_else(|| Error::InvalidOccurrence(occ.0.clone()))
    }

    /// Every node, in preorder.
    pub fn occurrences(&self) -> Vec<Occurrence> {
        let mut out = Vec::new();
        self.collect_occurrences(Occurrence::root(), &mut out, false);
        out
    }

    /// Application nodes only, in preorder.
    pub fn applications(&self) -> Vec<Occurrence> {
        let mut out = Vec::new();
        self.collect_occurrences(Occurrence::root(), &mut out, true);
        out
    }

    fn collect_occurrences(&self, here: Occurrence, out: &mut Vec<Occurrence>, apps_only: bool) {
        match self {
            Formula::Var(_) => {
                if !apps_only {
                    out.push(here);
                }
            }
            Formula::App { args, .. } => {
                out.push(here.clone());
                for (i, a) in args.iter().enumerate() {
                    a.collect_occurrences(here.child(i), out, apps_only);
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(i) => write!(f, "x{i}"),
            Formula::App { head, args } => {
                write!(f, "({head}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for Formula {
    type Err = Error;

    /// Parses an s-expression. A bare variable is rejected: it realizes a
    /// projection, which is not a function of `R`.
    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let f = parse_node(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!(
                "trailing input after formula: `{}`",
                tokens[pos..].join(" ")
            )));
        }
        if f.is_var() {
            return Err(Error::BareVariable);
        }
        Ok(f)
    }
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_owned)
        .collect()
}

fn parse_var(atom: &str) -> Option<usize> {
    let digits = atom.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&i| i >= 1)
}

fn parse_node(tokens: &[String], pos: &mut usize) -> Result<Formula> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let head = tokens
                .get(*pos)
                .ok_or_else(|| Error::Parse("missing function name after `(`".into()))?;
            if head == "(" || head == ")" || parse_var(head).is_some() {
                return Err(Error::Parse(format!("expected function name, got `{head}`")));
            }
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => args.push(parse_node(tokens, pos)?),
                    None => return Err(Error::Parse("unbalanced parentheses".into())),
                }
            }
            if args.is_empty() {
                return Err(Error::Parse(format!("`{head}` applied to no arguments")));
            }
            Ok(Formula::App {
                head: head.clone(),
                args,
            })
        }
        ")" => Err(Error::Parse("unexpected `)`".into())),
        atom => parse_var(atom)
            .map(Formula::Var)
            .ok_or_else(|| Error::Parse(format!("expected variable or `(`, got `{atom}`"))),
    }
}
