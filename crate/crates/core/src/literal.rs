//! Text literals for functions:
//!
//! ```text
//! sym n=<N> layers=<d1,d2,...>
//! periodic n=<N> d=<D> t=<T>
//! table n=<N> bits=<hex>
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symfun::{PeriodicProfile, SymmetricFn};
use crate::table::TableFn;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FnLiteral {
    Sym(SymmetricFn),
    Periodic(PeriodicProfile),
    Table(TableFn),
}

impl FnLiteral {
    pub fn arity(&self) -> usize {
        match self {
            FnLiteral::Sym(f) => f.arity(),
            FnLiteral::Periodic(p) => p.n() as usize,
            FnLiteral::Table(t) => t.arity(),
        }
    }

    pub fn to_table(&self) -> Result<TableFn> {
        match self {
            FnLiteral::Sym(f) => f.to_table(),
            FnLiteral::Periodic(p) => p.to_table(),
            FnLiteral::Table(t) => Ok(t.clone()),
        }
    }

    /// Layer form, if the function is symmetric.
    pub fn to_symmetric(&self) -> Result<Option<SymmetricFn>> {
        Ok(match self {
            FnLiteral::Sym(f) => Some(f.clone()),
            FnLiteral::Periodic(p) => Some(p.to_symmetric()?),
            FnLiteral::Table(t) => SymmetricFn::from_table(t),
        })
    }

    /// Periodic profile as written, or detected from the layers.
    pub fn to_profile(&self) -> Result<Option<PeriodicProfile>> {
        Ok(match self {
            FnLiteral::Periodic(p) => Some(*p),
            other => other.to_symmetric()?.and_then(|s| s.period()),
        })
    }
}

impl FromStr for FnLiteral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let kind = words
            .next()
            .ok_or_else(|| Error::Parse("empty function literal".into()))?;
        let mut fields = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{w}`")))?;
            if fields.insert(k, v).is_some() {
                return Err(Error::Parse(format!("duplicate field `{k}`")));
            }
        }
        let expect = |allowed: &[&str]| -> Result<()> {
            for k in fields.keys() {
                if !allowed.contains(k) {
                    return Err(Error::Parse(format!("unexpected field `{k}` in {kind} literal")));
                }
            }
            Ok(())
        };
        let num = |k: &str| -> Result<u64> {
            let v = fields
                .get(k)
                .ok_or_else(|| Error::Parse(format!("missing field `{k}`")))?;
            v.parse()
                .map_err(|_| Error::Parse(format!("field `{k}` is not a number: `{v}`")))
        };
        match kind {
            "sym" => {
                expect(&["n", "layers"])?;
                let n = num("n")? as usize;
                let raw = fields
                    .get("layers")
                    .ok_or_else(|| Error::Parse("missing field `layers`".into()))?;
                let set = raw
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(|d| {
                        d.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad layer index `{d}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(FnLiteral::Sym(SymmetricFn::from_layer_set(n, &set)?))
            }
            "periodic" => {
                expect(&["n", "d", "t"])?;
                Ok(FnLiteral::Periodic(PeriodicProfile::new(
                    num("n")?,
                    num("d")?,
                    num("t")?,
                )?))
            }
            "table" => {
                expect(&["n", "bits"])?;
                let n = num("n")? as usize;
                let bits = fields
                    .get("bits")
                    .ok_or_else(|| Error::Parse("missing field `bits`".into()))?;
                Ok(FnLiteral::Table(TableFn::from_hex(n, bits)?))
            }
            other => Err(Error::Parse(format!("unknown literal kind `{other}`"))),
        }
    }
}

impl fmt::Display for FnLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnLiteral::Sym(s) => write!(f, "{}", sym_literal(s)),
            FnLiteral::Periodic(p) => write!(f, "{p}"),
            FnLiteral::Table(t) => write!(f, "{}", table_literal(t)),
        }
    }
}

pub fn sym_literal(f: &SymmetricFn) -> String {
    let layers: Vec<String> = f.layer_set().iter().map(|d| d.to_string()).collect();
    format!("sym n={} layers={}", f.arity(), layers.join(","))
}

pub fn table_literal(t: &TableFn) -> String {
    format!("table n={} bits={}", t.arity(), t.to_hex())
}
