use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::literal::FnLiteral;
use crate::table::TableFn;

/// Named `R`-functions usable as formula heads.
///
/// Names of the form `i<k>` or `i_<k>` always resolve to `i_k` and need not
/// be declared.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    entries: BTreeMap<String, TableFn>,
}

/// A resolved head symbol.
#[derive(Debug, Clone, Copy)]
pub enum Head<'a> {
    Table(&'a TableFn),
    I(usize),
}

impl Head<'_> {
    pub fn arity(&self) -> usize {
        match self {
            Head::Table(t) => t.arity(),
            Head::I(k) => *k,
        }
    }

    pub fn is_i(&self) -> bool {
        match self {
            Head::Table(t) => t.is_i(),
            Head::I(_) => true,
        }
    }

    /// Value on arguments over `{0,1,2}`. Argument count is not checked.
    pub fn apply(&self, args: &[u8]) -> u8 {
        if args.contains(&0) {
            return 0;
        }
        match self {
            Head::I(_) => 1,
            Head::Table(t) => {
                let idx = args.iter().fold(0usize, |acc, &v| (acc << 1) | (v == 2) as usize);
                t.get(idx) as u8
            }
        }
    }

    pub fn to_table(&self) -> Result<TableFn> {
        match self {
            Head::Table(t) => Ok((*t).clone()),
            Head::I(k) => TableFn::i(*k),
        }
    }
}

pub fn i_name(k: usize) -> String {
    format!("i{k}")
}

/// `Some(k)` for names `i<k>` / `i_<k>` with `k >= 1`.
pub fn parse_i_name(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('i')?;
    let digits = rest.strip_prefix('_').unwrap_or(rest);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&k| k >= 1)
}

fn check_name(name: &str) -> Result<()> {
    let bad_char = |c: char| c.is_whitespace() || c == '(' || c == ')' || c == '=';
    if name.is_empty() || name.chars().any(bad_char) {
        return Err(Error::Parse(format!("invalid function name `{name}`")));
    }
    let is_var = name
        .strip_prefix('x')
        .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
    if is_var {
        return Err(Error::Parse(format!("`{name}` is reserved for variables")));
    }
    Ok(())
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, f: TableFn) -> Result<()> {
        let name = name.into();
        check_name(&name)?;
        if let Some(k) = parse_i_name(&name) {
            if !(f.arity() == k && f.is_i()) {
                return Err(Error::Parse(format!("`{name}` is reserved for i_{k}")));
            }
        }
        if self.entries.contains_key(&name) {
            return Err(Error::Parse(format!("duplicate function name `{name}`")));
        }
        self.entries.insert(name, f);
        Ok(())
    }

    pub fn with(mut self, name: impl Into<String>, f: TableFn) -> Result<Self> {
        self.insert(name, f)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Result<Head<'_>> {
        if let Some(t) = self.entries.get(name) {
            return Ok(Head::Table(t));
        }
        parse_i_name(name)
            .map(Head::I)
            .ok_or_else(|| Error::UnknownFunction(name.to_owned()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &TableFn)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses a signature file: one `name := <literal>` per line, `#`
    /// starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sig = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, lit) = line.split_once(":=").ok_or_else(|| {
                Error::Parse(format!("line {}: expected `name := <literal>`", lineno + 1))
            })?;
            let lit: FnLiteral = lit
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            sig.insert(name.trim(), lit.to_table()?)?;
        }
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::make_periodic;

    #[test]
    fn i_names_resolve_without_declaration() {
        let sig = Signature::new();
        assert!(matches!(sig.get("i3"), Ok(Head::I(3))));
        assert!(matches!(sig.get("i_2"), Ok(Head::I(2))));
        assert!(sig.get("i0").is_err());
        assert!(sig.get("g").is_err());
    }

    #[test]
    fn parse_file() {
        let text = "# generators\ng := periodic n=4 d=0 t=2\nh := table n=1 bits=1 # x=1 only\n";
        let sig = Signature::parse(text).unwrap();
        assert_eq!(sig.len(), 2);
        let g = make_periodic(4, 0, 2).unwrap().to_table().unwrap();
        assert!(matches!(sig.get("g"), Ok(Head::Table(t)) if *t == g));
        assert!(Signature::parse("g = periodic n=1 d=0 t=1").is_err());
        assert!(Signature::parse("g := x\n").is_err());
    }

    #[test]
    fn reserved_names() {
        let mut sig = Signature::new();
        let g = make_periodic(2, 0, 2).unwrap().to_table().unwrap();
        assert!(sig.insert("i2", g.clone()).is_err());
        assert!(sig.insert("x1", g.clone()).is_err());
        assert!(sig.insert("i2", TableFn::i(2).unwrap()).is_ok());
        assert!(sig.insert("g", g.clone()).is_ok());
        assert!(sig.insert("g", g).is_err());
    }

    #[test]
    fn head_application_is_zero_preserving() {
        let g = make_periodic(2, 0, 2).unwrap().to_table().unwrap();
        let h = Head::Table(&g);
        assert_eq!(h.apply(&[2, 2]), 1);
        assert_eq!(h.apply(&[1, 2]), 0);
        assert_eq!(h.apply(&[0, 0]), 0);
        assert_eq!(Head::I(2).apply(&[1, 2]), 1);
        assert_eq!(Head::I(2).apply(&[1, 0]), 0);
    }
}
