//! Exact computation of `[G]` restricted to the variables `x_1..x_n`.
//!
//! A function realized by a formula over `G` is determined by the set of
//! variables occurring in the formula (its support: a `0` on any of them
//! forces the value `0`) and by its values on `{1,2}^n`. Derived functions
//! are stored in that form.
//!
//! An application `g(B_1..B_m)` evaluates, on `α ∈ {1,2}^n`, to the
//! conjunction of its non-variable arguments and of `g` applied to the
//! variable arguments with every other position set to `1`. A round
//! therefore enumerates, per generator, the assignments of argument
//! positions to variables or to an "inner formula" slot, and combines the
//! resulting tables with conjunctions of at most that many derived
//! functions. The loop stops when a round adds nothing.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{i_name, Formula, Signature};
use crate::symfun::SymmetricFn;
use crate::table::TableFn;

/// Hard limit imposed by the packed 64-entry tables.
pub const MAX_ORACLE_VARS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCaps {
    pub max_nvars: usize,
    pub max_arity: usize,
    pub max_derived: usize,
    /// Bound on the number of distinct conjunctions kept per round.
    pub max_conjunctions: usize,
}

impl Default for ClosureCaps {
    fn default() -> Self {
        Self {
            max_nvars: 4,
            max_arity: 6,
            max_derived: 20_000,
            max_conjunctions: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Packed {
    support: u64,
    bits: u64,
}

impl Packed {
    fn new(support: u64, bits: u64) -> Self {
        if bits == 0 {
            Self { support: 0, bits: 0 }
        } else {
            Self { support, bits }
        }
    }

    fn and(self, other: Packed) -> Packed {
        Packed::new(self.support | other.support, self.bits & other.bits)
    }
}

/// A derived function of `x_1..x_n`: its support and its table on
/// `{1,2}^n`, in which variables outside the support are dummy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DerivedFn {
    pub support: Vec<usize>,
    pub table: TableFn,
}

impl DerivedFn {
    pub fn is_zero(&self) -> bool {
        self.table.is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Arg {
    Var(usize),
    Derived(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub generator: usize,
    pub args: Vec<Arg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureStatus {
    /// No round adds anything new; the derived set is exactly `[G]` on the
    /// variable set.
    Fixpoint,
    /// A requested target was derived before the fixpoint.
    TargetFound,
    /// A resource cap stopped the computation.
    Incomplete,
}

#[derive(Debug, Clone)]
pub struct ClosureState {
    generators: Vec<(String, TableFn)>,
    nvars: usize,
    derived: Vec<Packed>,
    derivations: Vec<Derivation>,
    index: HashMap<Packed, usize>,
    round_sizes: Vec<usize>,
    status: ClosureStatus,
    incomplete_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Yes(Formula),
    No,
    Incomplete(String),
}

impl OracleVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleVerdict::Yes(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Var(usize),
    Inner,
}

/// One distinct table obtainable from a generator by placing variables and
/// inner-formula slots.
struct Placement {
    packed: Packed,
    /// A placement using variables only.
    plain: Option<Vec<Slot>>,
    /// The placement with the most inner slots, and their count.
    widest: Option<(usize, Vec<Slot>)>,
}

struct Conjunction {
    packed: Packed,
    parts: Vec<usize>,
}

impl ClosureState {
    pub fn generators(&self) -> &[(String, TableFn)] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.derived.len()
    }

    pub fn is_empty(&self) -> bool {
        self.derived.is_empty()
    }

    pub fn status(&self) -> ClosureStatus {
        self.status
    }

    pub fn incomplete_reason(&self) -> Option<&str> {
        self.incomplete_reason.as_deref()
    }

    pub fn is_fixpoint(&self) -> bool {
        self.status == ClosureStatus::Fixpoint
    }

    /// Size of the derived set after each round.
    pub fn round_sizes(&self) -> &[usize] {
        &self.round_sizes
    }

    pub fn derived(&self) -> Vec<DerivedFn> {
        (0..self.derived.len()).map(|i| self.get(i)).collect()
    }

    pub fn get(&self, i: usize) -> DerivedFn {
        let p = self.derived[i];
        let support = (1..=self.nvars)
            .filter(|&j| p.support & (1 << (j - 1)) != 0)
            .collect();
        let bits = (0..1usize << self.nvars).map(|k| p.bits >> k & 1 == 1).collect();
        DerivedFn {
            support,
            table: TableFn::new(self.nvars, bits).expect("arity checked at construction"),
        }
    }

    pub fn derivation(&self, i: usize) -> &Derivation {
        &self.derivations[i]
    }

    /// Index of `f` read as a function of exactly `x_1..x_n`.
    pub fn find(&self, f: &TableFn) -> Option<usize> {
        let target = self.target_of(f).ok()?;
        self.index.get(&target).copied()
    }

    /// Index of the derived function with the given support and table.
    pub fn find_with_support(&self, support: &[usize], table: &TableFn) -> Option<usize> {
        if table.arity() != self.nvars {
            return None;
        }
        let mask = support
            .iter()
            .filter(|&&j| j >= 1 && j <= self.nvars)
            .fold(0u64, |m, &j| m | 1 << (j - 1));
        self.index.get(&Packed::new(mask, pack(table))).copied()
    }

    fn target_of(&self, f: &TableFn) -> Result<Packed> {
        if f.arity() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: f.arity(),
            });
        }
        Ok(Packed::new(full_mask(self.nvars), pack(f)))
    }

    /// Witness formula for entry `i` over the generator names.
    pub fn witness(&self, i: usize) -> Formula {
        let d = &self.derivations[i];
        let args = d
            .args
            .iter()
            .map(|a| match *a {
                Arg::Var(j) => Formula::Var(j),
                Arg::Derived(k) => self.witness(k),
            })
            .collect();
        Formula::app(self.generators[d.generator].0.clone(), args)
    }

    /// Signature in which the witnesses are written.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for (name, t) in &self.generators {
            sig.insert(name.clone(), t.clone())
                .expect("generator names validated at construction");
        }
        sig
    }
}

fn full_mask(nvars: usize) -> u64 {
    (1u64 << nvars) - 1
}

fn pack(t: &TableFn) -> u64 {
    t.bits()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &b)| acc | (b as u64) << i)
}

/// Names for anonymous generators: `i<k>` for `i`-functions, `g1, g2, ...`
/// otherwise. Duplicate tables are dropped.
pub fn name_generators(gens: &[TableFn]) -> Vec<(String, TableFn)> {
    let mut out: Vec<(String, TableFn)> = Vec::new();
    let mut counter = 0;
    for g in gens {
        if out.iter().any(|(_, t)| t == g) {
            continue;
        }
        let name = if g.is_i() {
            i_name(g.arity())
        } else {
            counter += 1;
            format!("g{counter}")
        };
        out.push((name, g.clone()));
    }
    out
}

/// Computes `[G]` on `x_1..x_nvars` up to the fixpoint.
pub fn close(generators: &[(String, TableFn)], nvars: usize, caps: &ClosureCaps) -> Result<ClosureState> {
    run(generators, nvars, caps, None)
}

/// `f ∈ [G]`, decided by closing over `x_1..x_n` with `n` the arity of `f`.
pub fn member_oracle(
    f: &TableFn,
    generators: &[(String, TableFn)],
    caps: &ClosureCaps,
) -> Result<OracleVerdict> {
    let target = Packed::new(full_mask(f.arity()), pack_checked(f)?);
    let state = run(generators, f.arity(), caps, Some(target))?;
    Ok(match state.index.get(&target) {
        Some(&i) => OracleVerdict::Yes(state.witness(i)),
        None if state.status == ClosureStatus::Incomplete => OracleVerdict::Incomplete(
            state.incomplete_reason.unwrap_or_else(|| "cap reached".into()),
        ),
        None => OracleVerdict::No,
    })
}

fn pack_checked(f: &TableFn) -> Result<u64> {
    if f.arity() > MAX_ORACLE_VARS {
        return Err(Error::CapExceeded(format!(
            "oracle supports at most {MAX_ORACLE_VARS} variables, got {}",
            f.arity()
        )));
    }
    Ok(pack(f))
}

fn run(
    generators: &[(String, TableFn)],
    nvars: usize,
    caps: &ClosureCaps,
    target: Option<Packed>,
) -> Result<ClosureState> {
    if nvars == 0 {
        return Err(Error::Precondition("nvars must be positive".into()));
    }
    let limit = caps.max_nvars.min(MAX_ORACLE_VARS);
    if nvars > limit {
        return Err(Error::CapExceeded(format!("nvars {nvars} exceeds cap {limit}")));
    }
    let mut sig = Signature::new();
    for (name, g) in generators {
        if g.arity() > caps.max_arity {
            return Err(Error::CapExceeded(format!(
                "generator `{name}` has arity {} > cap {}",
                g.arity(),
                caps.max_arity
            )));
        }
        sig.insert(name.clone(), g.clone())?;
    }

    let placements: Vec<Vec<Placement>> =
        generators.iter().map(|(_, g)| placements(g, nvars)).collect();
    let max_inner = placements
        .iter()
        .flatten()
        .filter_map(|p| p.widest.as_ref().map(|w| w.0))
        .max()
        .unwrap_or(0);

    let mut state = ClosureState {
        generators: generators.to_vec(),
        nvars,
        derived: Vec::new(),
        derivations: Vec::new(),
        index: HashMap::new(),
        round_sizes: Vec::new(),
        status: ClosureStatus::Fixpoint,
        incomplete_reason: None,
    };

    loop {
        let levels = match conjunction_levels(&state.derived, max_inner, caps.max_conjunctions) {
            Some(l) => l,
            None => {
                state.status = ClosureStatus::Incomplete;
                state.incomplete_reason = Some(format!(
                    "more than {} conjunctions of derived functions",
                    caps.max_conjunctions
                ));
                return Ok(state);
            }
        };

        let mut fresh: Vec<(Packed, Derivation)> = Vec::new();
        let mut fresh_set: HashSet<Packed> = HashSet::new();
        let mut offer = |p: Packed, gen: usize, slots: &[Slot], parts: &[usize]| {
            if state.index.contains_key(&p) || !fresh_set.insert(p) {
                return;
            }
            let mut inner = parts.iter().copied().cycle();
            let args = slots
                .iter()
                .map(|s| match *s {
                    Slot::Var(j) => Arg::Var(j),
                    Slot::Inner => Arg::Derived(inner.next().expect("non-empty parts")),
                })
                .collect();
            fresh.push((p, Derivation { generator: gen, args }));
        };

        for (gen, places) in placements.iter().enumerate() {
            for pl in places {
                if let Some(slots) = &pl.plain {
                    offer(pl.packed, gen, slots, &[]);
                }
                if let Some((width, slots)) = &pl.widest {
                    for level in levels.iter().take(*width) {
                        for c in level {
                            offer(pl.packed.and(c.packed), gen, slots, &c.parts);
                        }
                    }
                }
            }
        }

        if fresh.is_empty() {
            state.status = ClosureStatus::Fixpoint;
            return Ok(state);
        }
        for (p, d) in fresh {
            state.index.insert(p, state.derived.len());
            state.derived.push(p);
            state.derivations.push(d);
        }
        state.round_sizes.push(state.derived.len());

        if let Some(t) = target {
            if state.index.contains_key(&t) {
                state.status = ClosureStatus::TargetFound;
                return Ok(state);
            }
        }
        if state.derived.len() > caps.max_derived {
            state.status = ClosureStatus::Incomplete;
            state.incomplete_reason = Some(format!(
                "derived set exceeds {} functions",
                caps.max_derived
            ));
            return Ok(state);
        }
    }
}

/// `levels[k]` holds the conjunctions of exactly `k + 1` distinct derived
/// functions that are not conjunctions of fewer.
fn conjunction_levels(derived: &[Packed], depth: usize, cap: usize) -> Option<Vec<Vec<Conjunction>>> {
    let mut levels: Vec<Vec<Conjunction>> = Vec::new();
    if depth == 0 || derived.is_empty() {
        return Some(levels);
    }
    let mut seen: HashSet<Packed> = HashSet::new();
    let mut first = Vec::new();
    for (i, &p) in derived.iter().enumerate() {
        if seen.insert(p) {
            first.push(Conjunction {
                packed: p,
                parts: vec![i],
            });
        }
    }
    levels.push(first);
    while levels.len() < depth {
        let prev = levels.last().expect("at least one level");
        let mut next = Vec::new();
        for c in prev {
            for (i, &p) in derived.iter().enumerate() {
                let q = c.packed.and(p);
                if seen.insert(q) {
                    let mut parts = c.parts.clone();
                    parts.push(i);
                    next.push(Conjunction { packed: q, parts });
                }
            }
            if seen.len() > cap {
                return None;
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    Some(levels)
}

fn var_bit(idx: usize, nvars: usize, j: usize) -> usize {
    (idx >> (nvars - j)) & 1
}

/// Distinct tables of `g(s_1..s_m)` with each `s_i` a variable or an inner
/// slot read as `1`.
fn placements(g: &TableFn, nvars: usize) -> Vec<Placement> {
    let m = g.arity();
    let len = 1usize << nvars;
    let mut out: Vec<Placement> = Vec::new();
    let mut by_packed: HashMap<Packed, usize> = HashMap::new();
    let mut record = |slots: Vec<Slot>, bits: u64| {
        let support = slots.iter().fold(0u64, |acc, s| match s {
            Slot::Var(j) => acc | 1 << (j - 1),
            Slot::Inner => acc,
        });
        let width = slots.iter().filter(|s| **s == Slot::Inner).count();
        let packed = Packed::new(support, bits);
        let pos = *by_packed.entry(packed).or_insert_with(|| {
            out.push(Placement {
                packed,
                plain: None,
                widest: None,
            });
            out.len() - 1
        });
        let pl = &mut out[pos];
        if width == 0 {
            pl.plain.get_or_insert(slots);
        } else if pl.widest.as_ref().is_none_or(|(w, _)| width > *w) {
            pl.widest = Some((width, slots));
        }
    };

    if let Some(sym) = SymmetricFn::from_table(g) {
        // only the number of copies of each variable matters
        let mut counts = vec![0usize; nvars];
        for_each_count_vector(&mut counts, 0, m, &mut |c| {
            let used: usize = c.iter().sum();
            let mut slots = Vec::with_capacity(m);
            for (j, &k) in c.iter().enumerate() {
                slots.extend(std::iter::repeat_n(Slot::Var(j + 1), k));
            }
            slots.extend(std::iter::repeat_n(Slot::Inner, m - used));
            let bits = (0..len).fold(0u64, |acc, idx| {
                let twos: usize = c
                    .iter()
                    .enumerate()
                    .map(|(j, &k)| k * var_bit(idx, nvars, j + 1))
                    .sum();
                acc | (sym.layer(twos) as u64) << idx
            });
            record(slots, bits);
        });
    } else {
        let mut digits = vec![0usize; m];
        loop {
            let slots: Vec<Slot> = digits
                .iter()
                .map(|&d| if d < nvars { Slot::Var(d + 1) } else { Slot::Inner })
                .collect();
            let bits = (0..len).fold(0u64, |acc, idx| {
                let gi = slots.iter().fold(0usize, |a, s| {
                    (a << 1)
                        | match *s {
                            Slot::Var(j) => var_bit(idx, nvars, j),
                            Slot::Inner => 0,
                        }
                });
                acc | (g.get(gi) as u64) << idx
            });
            record(slots, bits);
            // odometer over (nvars + 1)^m
            let mut pos = m;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] <= nvars {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
    out
}

fn for_each_count_vector(counts: &mut Vec<usize>, j: usize, left: usize, f: &mut impl FnMut(&[usize])) {
    if j == counts.len() {
        f(counts);
        return;
    }
    for k in (0..=left).rev() {
        counts[j] = k;
        for_each_count_vector(counts, j + 1, left - k, f);
    }
    counts[j] = 0;
}
