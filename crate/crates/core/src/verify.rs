//! Seeded verification suites. Each suite returns a [`SuiteReport`] with the
//! number of checks performed and every counterexample found.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{gcd, lcm, log_exact, valuation};
use crate::classify::{
    classify, extract_finite_basis, DTerm, FamilyDescriptor, NTerm, SequenceSpec, TExp, Verdict,
};
use crate::closure::{close, member_oracle, name_generators, ClosureCaps, OracleVerdict};
use crate::criteria::{has_middle_layer, hypotheses_fail, member_single, member_single_with_i, Membership};
use crate::error::{Error, Result};
use crate::formula::{
    i_name, is_essential, n_subset_check, realize, realize_at, rewrite_i, variable_counts,
    zero_propagation_check, Formula, FormulaCaps, Signature,
};
use crate::symfun::{
    detect_period, make_periodic, nset_intersection, periodic_profiles, PeriodicProfile,
    SymmetricFn,
};
use crate::table::TableFn;

pub const SUITES: &[&str] = &[
    "zero-propagation",
    "n-subset",
    "lemma-order",
    "prop2",
    "nf-intersection",
    "classifier",
    "basis-extraction",
    "rho",
];

/// Counterexamples kept per suite; the count is still exact.
const MAX_REPORTED: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub checked: u64,
    pub failed: u64,
    pub skipped: u64,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, seed: Option<u64>) -> Self {
        Self {
            suite: suite.into(),
            seed,
            checked: 0,
            failed: 0,
            skipped: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.counterexamples.len() < MAX_REPORTED {
            self.counterexamples.push(what);
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} checked, {} failed, {} skipped",
            self.suite,
            if self.passed() { "pass" } else { "FAIL" },
            self.checked,
            self.failed,
            self.skipped
        )?;
        if let Some(s) = self.seed {
            write!(f, ", seed {s}")?;
        }
        write!(f, ")")?;
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        for c in &self.counterexamples {
            write!(f, "\n  counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub formulas: usize,
    pub max_formula_vars: usize,
    pub max_formula_depth: usize,
    pub max_n: u64,
    pub max_m: u64,
    pub max_l: u64,
    pub intersections: usize,
    pub max_intersection_n: u64,
    pub descriptors: usize,
    pub families: usize,
    pub rho_prefix: u64,
    pub caps: ClosureCaps,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            formulas: 500,
            max_formula_vars: 4,
            max_formula_depth: 4,
            max_n: 3,
            max_m: 6,
            max_l: 6,
            intersections: 200,
            max_intersection_n: 30,
            descriptors: 200,
            families: 50,
            rho_prefix: 20,
            caps: ClosureCaps::default(),
        }
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    match name {
        "zero-propagation" => zero_propagation(cfg),
        "n-subset" => n_subset(cfg),
        "lemma-order" => lemma_order(cfg.max_n, cfg.max_m, &cfg.caps),
        "prop2" => prop2(cfg.max_l, cfg.max_m, cfg.max_n.max(2)),
        "nf-intersection" => nf_intersection(cfg),
        "classifier" => classifier(cfg),
        "basis-extraction" => basis_extraction(cfg),
        "rho" => rho(cfg),
        other => Err(Error::Precondition(format!(
            "unknown suite {other:?}; expected one of {} or all",
            SUITES.join(", ")
        ))),
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, cfg)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random valid profile with `1 <= n <= max_n`.
pub fn random_profile(rng: &mut impl Rng, max_n: u64) -> PeriodicProfile {
    let n = rng.gen_range(1..=max_n);
    let d = rng.gen_range(0..=n);
    let t = rng.gen_range(d + 1..=n + 1);
    PeriodicProfile::new(n, d, t).expect("d < t and d <= n by construction")
}

/// Signature of one to three random periodic functions `g1..` of arity at
/// most `max_arity`, plus `i2`.
pub fn random_signature(rng: &mut impl Rng, max_arity: u64) -> Signature {
    let mut sig = Signature::new();
    let count = rng.gen_range(1..=3);
    for k in 1..=count {
        let p = random_profile(rng, max_arity);
        sig.insert(format!("g{k}"), p.to_table().expect("small arity"))
            .expect("fresh name");
    }
    sig.insert(i_name(2), TableFn::i(2).expect("arity 2"))
        .expect("i2 is a valid name");
    sig
}

/// A random formula over `sig` with variables `x1..x_nvars` and at most
/// `max_depth` nested applications.
pub fn random_formula(rng: &mut impl Rng, sig: &Signature, nvars: usize, max_depth: usize) -> Formula {
    let heads: Vec<(String, usize)> = sig
        .entries()
        .map(|(n, t)| (n.to_string(), t.arity()))
        .collect();
    let (head, arity) = heads.choose(rng).expect("non-empty signature").clone();
    let args = (0..arity)
        .map(|_| {
            if max_depth > 1 && rng.gen_bool(0.35) {
                random_formula(rng, sig, nvars, max_depth - 1)
            } else {
                Formula::Var(rng.gen_range(1..=nvars))
            }
        })
        .collect();
    Formula::app(head, args)
}

fn all_tuples(nvars: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..3usize.pow(nvars as u32)).map(move |mut k| {
        let mut v = vec![0u8; nvars];
        for x in v.iter_mut().rev() {
            *x = (k % 3) as u8;
            k /= 3;
        }
        v
    })
}

fn formula_cases(cfg: &VerifyConfig) -> Vec<(Signature, Formula, usize)> {
    let mut r = rng(cfg.seed);
    (0..cfg.formulas)
        .map(|_| {
            let sig = random_signature(&mut r, 4);
            let nvars = r.gen_range(1..=cfg.max_formula_vars);
            let caps = FormulaCaps {
                max_depth: cfg.max_formula_depth,
                ..FormulaCaps::default()
            };
            loop {
                let f = random_formula(&mut r, &sig, nvars, cfg.max_formula_depth);
                if caps.check(&f).is_ok() {
                    break (sig, f, nvars);
                }
            }
        })
        .collect()
}

/// `Φ_1(α) = 0 ⇒ Φ(α) = 0` for every subformula and every `α ∈ {0,1,2}^n`.
pub fn zero_propagation(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("zero-propagation", Some(cfg.seed));
    for (sig, f, nvars) in formula_cases(cfg) {
        for occ in f.occurrences() {
            for a in all_tuples(nvars) {
                let ok = zero_propagation_check(&f, &sig, &occ, &a)?;
                rep.check(ok, || format!("{f} at {occ} on {a:?}"));
            }
        }
    }
    Ok(rep)
}

/// `N_Φ ⊆ N_{Φ_1}` for every application subformula.
pub fn n_subset(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("n-subset", Some(cfg.seed));
    for (sig, f, nvars) in formula_cases(cfg) {
        for occ in f.applications() {
            let ok = n_subset_check(&f, &sig, &occ, nvars)?;
            rep.check(ok, || format!("{f} at {occ}"));
        }
    }
    Ok(rep)
}

/// Outcome of comparing the criteria with the oracle on one `(f, g)` pair.
#[derive(Debug, Clone, Serialize)]
pub struct GridCase {
    pub f: PeriodicProfile,
    pub g: PeriodicProfile,
    pub with_i: bool,
    pub criteria: Membership,
    pub oracle: Option<bool>,
    pub witness: Option<String>,
}

/// Criteria against the oracle for every `f` with `2 <= n <= max_n` meeting
/// the hypotheses and every canonical `g` with `m <= max_m`, plus
/// certificate and witness-structure checks.
pub fn lemma_order(max_n: u64, max_m: u64, caps: &ClosureCaps) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("lemma-order", None);
    let mut discrepancies_without_middle = 0;
    for case in lemma_grid(max_n, max_m, caps)? {
        let GridCase { f, g, with_i, criteria, oracle, .. } = &case;
        let Some(oracle) = oracle else {
            rep.skipped += 1;
            continue;
        };
        let agree = criteria.decided() == Some(*oracle);
        if !agree && !has_middle_layer(f) {
            discrepancies_without_middle += 1;
        }
        rep.check(agree, || {
            format!(
                "f=({},{},{}) g=({},{},{}) with_i={with_i}: criteria {:?}, oracle {}",
                f.n(), f.d(), f.t(), g.n(), g.d(), g.t(), criteria, oracle
            )
        });
        if let Membership::Yes { branch, certificate } = criteria {
            rep.check(certificate.verify(f, g, *branch), || {
                format!("certificate {certificate:?} fails for {f} / {g}")
            });
        }
        if let (Some(w), true) = (&case.witness, criteria.is_yes()) {
            let gens = generators(g, *with_i)?;
            let sig = signature_of(&gens);
            let formula: Formula = w.parse()?;
            for problem in witness_structure(&formula, &sig, f)? {
                rep.fail(format!("witness {w} for {f}: {problem}"));
            }
            rep.checked += 1;
        }
    }
    if discrepancies_without_middle > 0 {
        rep.notes.push(format!(
            "{discrepancies_without_middle} discrepancies have f = (n,0,n), where N_f has no tuple with 0 < |α| < n"
        ));
    }
    Ok(rep)
}

fn generators(g: &PeriodicProfile, with_i: bool) -> Result<Vec<(String, TableFn)>> {
    let mut gens = vec![g.to_table()?];
    if with_i {
        gens.push(TableFn::i(2)?);
    }
    Ok(name_generators(&gens))
}

fn signature_of(gens: &[(String, TableFn)]) -> Signature {
    let mut sig = Signature::new();
    for (n, t) in gens {
        if !t.is_i() {
            sig.insert(n.clone(), t.clone()).expect("generated names are valid");
        }
    }
    sig
}

pub fn lemma_grid(max_n: u64, max_m: u64, caps: &ClosureCaps) -> Result<Vec<GridCase>> {
    let caps = ClosureCaps {
        max_nvars: caps.max_nvars.max(max_n as usize),
        max_arity: caps.max_arity.max(max_m as usize),
        ..*caps
    };
    let mut out = Vec::new();
    for n in 2..=max_n {
        for f in periodic_profiles(n) {
            if hypotheses_fail(&f).is_some() {
                continue;
            }
            let ft = f.to_table()?;
            for m in 1..=max_m {
                for g in periodic_profiles(m) {
                    for with_i in [false, true] {
                        let criteria = if with_i {
                            member_single_with_i(&f, &g)
                        } else {
                            member_single(&f, &g)
                        };
                        let (oracle, witness) = match member_oracle(&ft, &generators(&g, with_i)?, &caps)? {
                            OracleVerdict::Yes(w) => (Some(true), Some(w.to_string())),
                            OracleVerdict::No => (Some(false), None),
                            OracleVerdict::Incomplete(_) => (None, None),
                        };
                        out.push(GridCase { f, g, with_i, criteria, oracle, witness });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Checks a witness `Φ` of `f` against the variable-count congruence and the
/// period divisibility of essential subformulas. Returns the violations.
pub fn witness_structure(w: &Formula, sig: &Signature, f: &PeriodicProfile) -> Result<Vec<String>> {
    let n = f.n() as usize;
    let mut problems = Vec::new();
    if realize(w, sig, n)? != f.to_table()? {
        problems.push("does not realize f".into());
        return Ok(problems);
    }
    for occ in w.applications() {
        let Some(Formula::App { head, .. }) = w.at(&occ) else {
            unreachable!("applications() yields application nodes")
        };
        let head_fn = sig.get(head)?;
        if !head_fn.is_i() && has_middle_layer(f) {
            let r = SymmetricFn::from_table(&head_fn.to_table()?)
                .and_then(|s| detect_period(&s))
                .map(|p| p.t());
            if let Some(r) = r {
                let q = variable_counts(w, &occ, n)?;
                if q.iter().any(|&qi| (qi as i64 - q[0] as i64).rem_euclid(r as i64) != 0) {
                    problems.push(format!("variable counts {q:?} at {occ} not congruent mod {r}"));
                }
            }
        }
        if is_essential(w, sig, &occ, n)? {
            let h = realize_at(w, sig, &occ, n)?;
            match SymmetricFn::from_table(&h).and_then(|s| detect_period(&s)) {
                Some(hp) if admits_period(&hp, f.t()) => {}
                Some(hp) => problems.push(format!("essential subformula at {occ} is {hp}, t_f = {}", f.t())),
                None => problems.push(format!("essential subformula at {occ} is not periodic symmetric")),
            }
        }
    }
    Ok(problems)
}

/// `h ∈ PS^w` for some `w` dividing `t`.
fn admits_period(h: &PeriodicProfile, t: u64) -> bool {
    if h.d() + h.t() <= h.n() {
        t.is_multiple_of(h.t())
    } else {
        // a single layer is periodic with every w > max(d, n - d)
        t >= h.t()
    }
}

/// Proposition 2: the two rewriting identities as table equalities, and
/// `i_m ∈ [{i_n}]` through the oracle.
pub fn prop2(max_l: u64, max_m: u64, max_n: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("prop2", None);
    let sig = Signature::new();
    for l in 1..=max_l as usize {
        for m in 1..=max_m as usize {
            let nv = l + m - 1;
            let inner = Formula::app_vars(i_name(m), &(1..=m).collect::<Vec<_>>());
            let mut args = vec![inner];
            args.extend((m + 1..=nv).map(Formula::Var));
            let lhs = Formula::app(i_name(l), args);
            let rhs = Formula::app_vars(i_name(nv), &(1..=nv).collect::<Vec<_>>());
            rep.check(realize(&lhs, &sig, nv)? == realize(&rhs, &sig, nv)?, || {
                format!("item 1 fails for l={l}, m={m}")
            });
            rep.check(rewrite_i(&lhs, &sig)? == rhs, || {
                format!("rewrite of {lhs} is not {rhs}")
            });
        }
    }
    for n in 2..=max_n.max(max_l) as usize {
        let mut vars: Vec<usize> = (1..n).collect();
        vars.push(n - 1);
        let lhs = Formula::app_vars(i_name(n), &vars);
        let rhs = Formula::app_vars(i_name(n - 1), &(1..n).collect::<Vec<_>>());
        rep.check(realize(&lhs, &sig, n - 1)? == realize(&rhs, &sig, n - 1)?, || {
            format!("item 2 fails for n={n}")
        });
        rep.check(rewrite_i(&lhs, &sig)? == rhs, || format!("rewrite of {lhs} is not {rhs}"));
    }
    let caps = ClosureCaps {
        max_nvars: max_m as usize,
        max_arity: max_n as usize,
        ..ClosureCaps::default()
    };
    for n in 2..=max_n as usize {
        let gens = vec![(i_name(n), TableFn::i(n)?)];
        for m in 1..=max_m as usize {
            let v = member_oracle(&TableFn::i(m)?, &gens, &caps)?;
            rep.check(v.is_yes(), || format!("i{m} not derived from i{n}: {v:?}"));
        }
        // I = [I]: everything derived is an i-function on its support
        let nv = (max_m as usize).min(4);
        let st = close(&gens, nv, &caps)?;
        let all_i = st.derived().iter().all(|d| d.table.is_i());
        rep.check(all_i && st.is_fixpoint(), || format!("[{{i{n}}}] on {nv} variables leaves I"));
        rep.check(st.len() == (1 << nv) - 1, || {
            format!("[{{i{n}}}] on {nv} variables has {} members, expected {}", st.len(), (1 << nv) - 1)
        });
    }
    Ok(rep)
}

/// Intersections of `d = 0` periodic functions have period equal to the lcm
/// of the inputs whenever that lcm does not exceed `n`.
pub fn nf_intersection(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("nf-intersection", Some(cfg.seed));
    let mut r = rng(cfg.seed);
    let mut unrealizable = 0;
    let mut attempts = 0;
    while rep.checked < cfg.intersections as u64 && attempts < 100 * cfg.intersections {
        attempts += 1;
        let n = r.gen_range(2..=cfg.max_intersection_n);
        let count = r.gen_range(1..=4);
        let periods: Vec<u64> = (0..count).map(|_| r.gen_range(1..=n)).collect();
        let fs = periods
            .iter()
            .map(|&t| make_periodic(n, 0, t))
            .collect::<Result<Vec<_>>>()?;
        let l = periods.iter().fold(1, |a, &t| lcm(a, t));
        let Some((_, h)) = nset_intersection(&fs)? else {
            rep.fail(format!("empty intersection for n={n}, periods {periods:?}"));
            continue;
        };
        if l > n {
            unrealizable += 1;
            rep.skipped += 1;
            continue;
        }
        rep.check(h.t() == l && h.d() == 0, || {
            format!("n={n}, periods {periods:?}: got {h}, expected t={l}")
        });
    }
    rep.notes.push(format!("{unrealizable} tuples had lcm > n"));
    Ok(rep)
}

/// A random valid descriptor; rejected draws are redrawn.
pub fn random_descriptor(rng: &mut impl Rng) -> FamilyDescriptor {
    loop {
        let p = *[2u64, 3, 5].choose(rng).expect("non-empty");
        let finite = (0..rng.gen_range(0..=3))
            .map(|_| {
                let t = p.pow(rng.gen_range(0..=2));
                let d = rng.gen_range(0..t);
                let n = rng.gen_range(d.max(1)..=d + 2 * t + 2);
                PeriodicProfile::new(n, d, t).expect("d < t and d <= n")
            })
            .collect();
        let sequences = (0..rng.gen_range(0..=2)).map(|_| random_sequence(rng, p)).collect();
        let desc = FamilyDescriptor { p, finite, sequences };
        if desc.validate().is_ok() {
            return desc;
        }
    }
}

fn random_sequence(rng: &mut impl Rng, p: u64) -> SequenceSpec {
    let a = rng.gen_range(0..=3);
    let b = rng.gen_range(0..=2);
    let d = (a > 0 && rng.gen_bool(0.6)).then(|| {
        let g = rng.gen_range(0..a);
        let e = rng.gen_range(0..=b);
        let bound = p.pow((a - g) as u32);
        let c = loop {
            let c = rng.gen_range(1..bound.max(2));
            if gcd(c, p) == 1 {
                break c;
            }
        };
        DTerm { c, g, e }
    });
    SequenceSpec {
        t_exp: TExp { a, b },
        d,
        n: NTerm {
            u: rng.gen_range(1..=12),
            v: rng.gen_range(0..=3),
            w: rng.gen_range(0..=2),
            z: rng.gen_range(0..=1),
        },
    }
}

/// The Theorem's conditions read off the numbers: `G \ I` infinite, and
/// some ratio attained infinitely often, judged on the tail of a prefix.
fn theorem_by_numbers(desc: &FamilyDescriptor, prefix: u64) -> Result<Verdict> {
    let mut infinite = false;
    let mut repeated = false;
    for s in &desc.sequences {
        // the last four indices up to `prefix` whose members fit in u64
        let last = (0..=prefix)
            .take_while(|&k| s.member(k, desc.p).is_some())
            .last()
            .filter(|&k| k >= 3)
            .ok_or_else(|| Error::CapExceeded("sequence members overflow u64".into()))?;
        let tail: Vec<PeriodicProfile> = (last - 3..=last)
            .map(|k| s.member(k, desc.p).expect("checked above"))
            .collect();
        if tail.iter().all(|m| m.is_i()) {
            continue;
        }
        infinite = true;
        let ratios: Vec<u64> = tail.iter().map(|m| m.t() / gcd(m.d(), m.t())).collect();
        if ratios.windows(2).all(|w| w[0] == w[1]) {
            repeated = true;
        }
    }
    Ok(match (infinite, repeated) {
        (false, _) => Verdict::FiniteBasis,
        (true, true) => Verdict::NoBasis,
        (true, false) => Verdict::CountableBasis,
    })
}

pub fn classifier(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("classifier", Some(cfg.seed));
    let mut r = rng(cfg.seed);
    let mut tally = [0u64; 3];
    for _ in 0..cfg.descriptors {
        let desc = random_descriptor(&mut r);
        let got = classify(&desc, &cfg.caps)?.verdict;
        tally[got as usize] += 1;
        let expected = theorem_by_numbers(&desc, cfg.rho_prefix.max(4))?;
        rep.check(got == expected, || {
            format!("{}: classify {got:?}, numbers {expected:?}", desc.to_json())
        });
    }
    rep.notes.push(format!(
        "verdicts: {} finite, {} countable, {} none",
        tally[0], tally[1], tally[2]
    ));
    Ok(rep)
}

/// A random family of up to four profiles in `PS^{[p]}` with arity at most
/// `max_arity`, no two congruent.
pub fn random_family(rng: &mut impl Rng, max_arity: u64) -> (u64, Vec<PeriodicProfile>) {
    let p = *[2u64, 3].choose(rng).expect("non-empty");
    let mut family: Vec<PeriodicProfile> = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let n = rng.gen_range(1..=max_arity);
        let candidates: Vec<PeriodicProfile> = periodic_profiles(n)
            .into_iter()
            .filter(|f| log_exact(f.t(), p).is_some())
            .filter(|f| !family.iter().any(|g| g.canonical() == f.canonical()))
            .collect();
        if let Some(f) = candidates.choose(rng) {
            family.push(*f);
        }
    }
    (p, family)
}

/// Every removed generator is re-derived by the oracle from the kept ones,
/// and no kept generator is derivable from the others.
pub fn basis_extraction(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("basis-extraction", Some(cfg.seed));
    let mut r = rng(cfg.seed);
    let caps = &cfg.caps;
    let mut families = 0;
    let mut attempts = 0;
    while families < cfg.families && attempts < cfg.families * 20 {
        attempts += 1;
        let (p, family) = random_family(&mut r, caps.max_nvars.min(caps.max_arity) as u64);
        let x = match extract_finite_basis(&family, p, caps) {
            Ok(x) => x,
            Err(Error::Undecided(_)) => {
                rep.skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        families += 1;
        let kept = x
            .basis
            .iter()
            .map(PeriodicProfile::to_table)
            .collect::<Result<Vec<_>>>()?;
        for removed in &x.removed {
            let v = member_oracle(&removed.profile.to_table()?, &name_generators(&kept), caps)?;
            rep.check(v.is_yes(), || {
                format!("{} removed from {family:?} but oracle says {v:?}", removed.profile)
            });
        }
        for (i, b) in x.basis.iter().enumerate() {
            let rest: Vec<TableFn> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, t)| t.clone())
                .collect();
            if rest.is_empty() {
                continue;
            }
            let v = member_oracle(&b.to_table()?, &name_generators(&rest), caps)?;
            rep.check(!v.is_yes(), || format!("{b} kept in basis {:?} but derivable", x.basis));
        }
    }
    rep.notes.push(format!("{families} families decided"));
    if families < cfg.families {
        rep.fail(format!("only {families} of {} families could be decided", cfg.families));
    }
    Ok(rep)
}

/// Symbolic `ρ(k)` against `t_k / gcd(d_k, t_k)` for `k <= prefix`.
pub fn rho(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("rho", Some(cfg.seed));
    let mut r = rng(cfg.seed);
    for _ in 0..cfg.descriptors {
        let desc = random_descriptor(&mut r);
        for s in &desc.sequences {
            let form = s.rho();
            for k in 0..=cfg.rho_prefix {
                let Some(m) = s.member(k, desc.p) else {
                    rep.skipped += 1;
                    continue;
                };
                let numeric = m.t() / gcd(m.d(), m.t());
                let symbolic = desc.p.checked_pow((form.intercept + form.slope * k) as u32);
                let exponent = s.t_exp_at(k).map(|e| e as u32);
                let by_valuation = exponent.map(|e| e - valuation(m.d(), desc.p).map_or(e, |v| v.min(e)));
                rep.check(symbolic == Some(numeric) && by_valuation == log_exact(numeric, desc.p), || {
                    format!("{s:?} at k={k}: symbolic {symbolic:?}, numeric {numeric}")
                });
            }
        }
    }
    Ok(rep)
}
