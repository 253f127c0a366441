use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use symper_core::classify::{classify, extract_finite_basis, FamilyDescriptor, Verdict, Witness};
use symper_core::closure::name_generators;
use symper_core::formula::{eval, rewrite_i, theta};
use symper_core::literal::{sym_literal, table_literal};
use symper_core::verify::{run_all, run_suite, SuiteReport};
use symper_core::{
    close, detect_period, make_periodic, member_oracle, member_single, member_single_with_i, Error, FnLiteral,
    Formula, Membership, OracleVerdict, PeriodicProfile, Signature, TableFn,
};

use crate::config::Settings;
use crate::{Command, Status};

pub struct Output {
    pub json: Value,
    pub text: String,
    pub status: Status,
    pub error: Option<String>,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, status: Status::Ok, error: None }
    }

    fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

struct Failure {
    status: Status,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::CapExceeded(_) | Error::Undecided(_) => Status::Cap,
            _ => Status::Usage,
        };
        Failure { status, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { status: Status::Usage, message: message.into() }
}

type Res = Result<Output, Failure>;

pub fn run(cmd: &Command, s: &Settings) -> Output {
    let r = match cmd {
        Command::Period { literal } => period(literal),
        Command::Mkfn { n, d, t } => mkfn(*n, *d, *t),
        Command::Eval { target, tuple, sig } => eval_cmd(target, tuple, sig.as_deref(), s),
        Command::Member { f, g, with_i, oracle, both } => member(f, g, *with_i, *oracle, *both, s),
        Command::Closure { g, nvars, witnesses } => closure(g, *nvars, *witnesses, s),
        Command::Theta { formula, sig, nvars } => theta_cmd(formula, sig.as_deref(), *nvars, s),
        Command::Rewrite { formula, sig } => rewrite(formula, sig.as_deref(), s),
        Command::Classify { descriptor } => classify_cmd(descriptor, s),
        Command::Basis { p, g } => basis(*p, g, s),
        Command::Verify { suite, seed, max_n, max_m, max_l, formulas, descriptors, families } => {
            let mut cfg = s.verify;
            cfg.caps = s.caps;
            let pairs = [(&mut cfg.max_n, max_n), (&mut cfg.max_m, max_m), (&mut cfg.max_l, max_l)];
            for (slot, v) in pairs {
                if let Some(v) = v {
                    *slot = *v;
                }
            }
            if let Some(v) = seed {
                cfg.seed = *v;
            }
            if let Some(v) = formulas {
                cfg.formulas = *v;
            }
            if let Some(v) = descriptors {
                cfg.descriptors = *v;
            }
            if let Some(v) = families {
                cfg.families = *v;
            }
            verify(suite, &cfg)
        }
    };
    r.unwrap_or_else(|f| Output {
        json: json!({ "error": f.message }),
        text: String::new(),
        status: f.status,
        error: Some(f.message),
    })
}

fn literal(text: &str) -> Result<FnLiteral, Failure> {
    text.parse::<FnLiteral>().map_err(|e| usage(format!("{text:?}: {e}")))
}

fn profile(text: &str) -> Result<PeriodicProfile, Failure> {
    literal(text)?
        .to_profile()?
        .ok_or_else(|| usage(format!("{text:?} is not a periodic symmetric function")))
}

fn formula(text: &str, s: &Settings) -> Result<Formula, Failure> {
    let f: Formula = text.parse()?;
    s.formula.check(&f)?;
    Ok(f)
}

fn signature(path: Option<&Path>) -> Result<Signature, Failure> {
    match path {
        None => Ok(Signature::new()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            Ok(Signature::parse(&text)?)
        }
    }
}

fn tuple(text: &str) -> Result<Vec<u8>, Failure> {
    let parts: Vec<&str> = if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else {
        text.split("").filter(|c| !c.is_empty()).collect()
    };
    parts
        .into_iter()
        .map(|p| match p {
            "0" => Ok(0),
            "1" => Ok(1),
            "2" => Ok(2),
            _ => Err(usage(format!("{text:?}: tuple entries must be 0, 1 or 2"))),
        })
        .collect()
}

fn profile_json(p: &PeriodicProfile) -> Value {
    json!({ "n": p.n(), "d": p.d(), "t": p.t() })
}

fn period(text: &str) -> Res {
    let lit = literal(text)?;
    let sym = lit.to_symmetric()?;
    let found = sym.as_ref().and_then(detect_period);
    let json = json!({
        "periodic": found.is_some(),
        "symmetric": sym.is_some(),
        "profile": found.as_ref().map(profile_json),
    });
    let text = match (&sym, &found) {
        (_, Some(p)) => p.to_string(),
        (Some(_), None) => "not periodic".into(),
        (None, None) => "not periodic (not symmetric)".into(),
    };
    Ok(Output::ok(json, text))
}

/// Tables past this arity are not printed.
const MAX_PRINTED_TABLE: u64 = 16;

fn mkfn(n: u64, d: u64, t: u64) -> Res {
    let f = make_periodic(n, d, t)?;
    let p = PeriodicProfile::new(n, d, t)?;
    let table = (n <= MAX_PRINTED_TABLE).then(|| f.to_table().map(|t| table_literal(&t))).transpose()?;
    let mut text = format!("{p}\n{}", sym_literal(&f));
    if let Some(t) = &table {
        write!(text, "\n{t}").unwrap();
    }
    let json = json!({
        "profile": profile_json(&p),
        "canonical": profile_json(&p.canonical()),
        "layers": f.layer_set(),
        "sym": sym_literal(&f),
        "table": table,
    });
    Ok(Output::ok(json, text))
}

fn eval_cmd(target: &str, tuple_text: &str, sig: Option<&Path>, s: &Settings) -> Res {
    let a = tuple(tuple_text)?;
    let value = if target.trim_start().starts_with('(') {
        let f = formula(target, s)?;
        eval(&f, &signature(sig)?, &a)?
    } else {
        match literal(target)? {
            FnLiteral::Sym(f) => f.eval(&a)?,
            FnLiteral::Periodic(p) => p.to_symmetric()?.eval(&a)?,
            FnLiteral::Table(t) => t.eval(&a)?,
        }
    };
    Ok(Output::ok(json!({ "tuple": a, "value": value }), value.to_string()))
}

fn generators(texts: &[String], with_i: bool) -> Result<Vec<(String, TableFn)>, Failure> {
    let mut tables = texts
        .iter()
        .map(|g| Ok(literal(g)?.to_table()?))
        .collect::<Result<Vec<_>, Failure>>()?;
    if with_i {
        tables.push(TableFn::i(2)?);
    }
    Ok(name_generators(&tables))
}

fn oracle_json(v: &OracleVerdict) -> Value {
    match v {
        OracleVerdict::Yes(w) => json!({ "verdict": "yes", "witness": w.to_string() }),
        OracleVerdict::No => json!({ "verdict": "no" }),
        OracleVerdict::Incomplete(why) => json!({ "verdict": "incomplete", "reason": why }),
    }
}

fn oracle_text(v: &OracleVerdict) -> String {
    match v {
        OracleVerdict::Yes(w) => format!("yes, witness {w}"),
        OracleVerdict::No => "no (fixpoint reached)".into(),
        OracleVerdict::Incomplete(why) => format!("incomplete: {why}"),
    }
}

fn criteria_text(m: &Membership) -> String {
    match m {
        Membership::Yes { branch, certificate: c } => {
            let s = c.s.map(|s| format!(" s={s}")).unwrap_or_default();
            format!("yes [{branch}] t={} q={}{s} k={}", c.t, c.q, c.k)
        }
        Membership::No { branch, reason } => format!("no [{branch}]: {reason}"),
        Membership::Inapplicable { reason } => format!("inapplicable: {reason}"),
    }
}

fn member(f_text: &str, g_texts: &[String], with_i: bool, oracle_only: bool, both: bool, s: &Settings) -> Res {
    let f_lit = literal(f_text)?;
    let criteria = if oracle_only {
        None
    } else {
        Some(match (f_lit.to_profile()?, g_texts) {
            (Some(f), [g]) => {
                let g = profile(g)?;
                if with_i {
                    member_single_with_i(&f, &g)
                } else {
                    member_single(&f, &g)
                }
            }
            (None, _) => Membership::Inapplicable { reason: "f is not periodic".into() },
            _ => Membership::Inapplicable { reason: "the criteria take a single generator".into() },
        })
    };
    let decided = criteria.as_ref().and_then(Membership::decided);
    let mut note = None;
    let run_oracle = oracle_only || both || decided.is_none();
    if !oracle_only && !both && decided.is_none() {
        note = Some("criteria inapplicable; answered by the closure oracle".to_string());
    }
    let oracle = if run_oracle {
        let gens = generators(g_texts, with_i)?;
        Some(member_oracle(&f_lit.to_table()?, &gens, &s.caps)?)
    } else {
        None
    };
    let oracle_answer = match &oracle {
        Some(OracleVerdict::Yes(_)) => Some(true),
        Some(OracleVerdict::No) => Some(false),
        _ => None,
    };
    let agree = match (both, decided, oracle_answer) {
        (true, Some(c), Some(o)) => Some(c == o),
        _ => None,
    };
    let verdict = decided.or(oracle_answer);

    let mut json = json!({
        "f": f_lit.to_string(),
        "generators": g_texts,
        "with_i": with_i,
        "verdict": verdict.map(|v| if v { "yes" } else { "no" }),
        "criteria": criteria,
        "oracle": oracle.as_ref().map(oracle_json),
        "agree": agree,
    });
    if let Some(n) = &note {
        json["note"] = json!(n);
    }
    let mut text = String::new();
    if let Some(c) = &criteria {
        writeln!(text, "criteria: {}", criteria_text(c)).unwrap();
    }
    if let Some(o) = &oracle {
        writeln!(text, "oracle: {}", oracle_text(o)).unwrap();
    }
    if let Some(a) = agree {
        writeln!(text, "{}", if a { "agreement" } else { "DISCREPANCY between criteria and oracle" }).unwrap();
    }
    if let Some(n) = &note {
        writeln!(text, "note: {n}").unwrap();
    }
    let out = Output::ok(json, text);
    Ok(if matches!(oracle, Some(OracleVerdict::Incomplete(_))) {
        out.with_status(Status::Cap)
    } else if agree == Some(false) {
        out.with_status(Status::Failed)
    } else if both && decided.is_none() {
        Output { error: Some("criteria inapplicable, nothing to compare".into()), ..out.with_status(Status::Usage) }
    } else {
        out
    })
}

fn closure(g_texts: &[String], nvars: usize, witnesses: bool, s: &Settings) -> Res {
    let gens = generators(g_texts, false)?;
    let st = close(&gens, nvars, &s.caps)?;
    let mut derived = Vec::new();
    let mut text = format!(
        "generators: {}\n{} functions on {nvars} variables, rounds {:?}, {}\n",
        gens.iter().map(|(n, t)| format!("{n} = {}", table_literal(t))).collect::<Vec<_>>().join(", "),
        st.len(),
        st.round_sizes(),
        if st.is_fixpoint() { "fixpoint" } else { "INCOMPLETE" }
    );
    for i in 0..st.len() {
        let d = st.get(i);
        let w = witnesses.then(|| st.witness(i).to_string());
        let support: Vec<String> = d.support.iter().map(|v| format!("x{v}")).collect();
        write!(text, "{:<16} {}", support.join(","), table_literal(&d.table)).unwrap();
        if let Some(w) = &w {
            write!(text, "  {w}").unwrap();
        }
        text.push('\n');
        derived.push(json!({ "support": d.support, "table": table_literal(&d.table), "witness": w }));
    }
    if let Some(why) = st.incomplete_reason() {
        writeln!(text, "incomplete: {why}").unwrap();
    }
    let json = json!({
        "nvars": nvars,
        "status": st.status(),
        "incomplete_reason": st.incomplete_reason(),
        "round_sizes": st.round_sizes(),
        "size": st.len(),
        "derived": derived,
    });
    let out = Output::ok(json, text);
    Ok(if st.is_fixpoint() { out } else { out.with_status(Status::Cap) })
}

fn theta_cmd(text: &str, sig: Option<&Path>, nvars: Option<usize>, s: &Settings) -> Res {
    let f = formula(text, s)?;
    let nvars = nvars.unwrap_or_else(|| f.max_var().max(1));
    let th = theta(&f, &signature(sig)?, nvars)?;
    let functions: Vec<Value> = th
        .functions
        .iter()
        .map(|(name, t)| json!({ "name": name, "table": table_literal(t) }))
        .collect();
    let occurrences: Vec<String> = th.occurrences.iter().map(|o| o.to_string()).collect();
    let mut out = String::new();
    if th.functions.is_empty() {
        out.push_str("Θ = ∅\n");
    }
    for (name, t) in &th.functions {
        writeln!(out, "{name}: {}", table_literal(t)).unwrap();
    }
    if !occurrences.is_empty() {
        writeln!(out, "occurrences: {}", occurrences.join(" ")).unwrap();
    }
    Ok(Output::ok(json!({ "functions": functions, "occurrences": occurrences }), out))
}

fn rewrite(text: &str, sig: Option<&Path>, s: &Settings) -> Res {
    let f = formula(text, s)?;
    let g = rewrite_i(&f, &signature(sig)?)?;
    Ok(Output::ok(json!({ "input": f.to_string(), "output": g.to_string(), "changed": f != g }), g.to_string()))
}

fn classify_cmd(path: &Path, s: &Settings) -> Res {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let desc = FamilyDescriptor::from_json(&text)?;
    let c = classify(&desc, &s.caps)?;
    let finite_part = if desc.finite.is_empty() || c.verdict == Verdict::FiniteBasis {
        None
    } else {
        Some(match extract_finite_basis(&desc.finite, desc.p, &s.caps) {
            Ok(x) => json!({ "basis": x.basis }),
            Err(e) => json!({ "error": e.to_string() }),
        })
    };

    let mut out = format!("verdict: {:?}\n", c.verdict);
    match &c.witness {
        Witness::FiniteBasis { basis: Some(b), .. } => {
            let items: Vec<String> = b.iter().map(|p| p.to_string()).collect();
            writeln!(out, "basis: {}", items.join("; ")).unwrap();
        }
        Witness::FiniteBasis { basis: None, note } => {
            writeln!(out, "basis not extracted: {}", note.as_deref().unwrap_or("-")).unwrap();
        }
        Witness::CountableBasis { frontier, note } => {
            if let Some(fr) = frontier {
                let items: Vec<String> = fr.iter().map(|p| p.to_string()).collect();
                writeln!(out, "maximal elements of the sampled prefix: {}", items.join("; ")).unwrap();
            }
            if let Some(n) = note {
                writeln!(out, "note: {n}").unwrap();
            }
        }
        Witness::NoBasis { exponent, sequence } => {
            writeln!(out, "ratio {}^{exponent} is attained infinitely often (sequence {sequence})", desc.p).unwrap();
        }
    }
    for a in &c.sequences {
        writeln!(out, "sequence {}: {:?}, rho(k) = {} + {}k", a.index, a.kind, a.rho.intercept, a.rho.slope).unwrap();
    }
    match finite_part.as_ref().map(|v| (&v["basis"], &v["error"])) {
        Some((Value::Array(b), _)) => {
            let items: Vec<String> = b.iter().map(|p| format!("({}, {}, {})", p["n"], p["d"], p["t"])).collect();
            writeln!(out, "basis of the finite part: {}", items.join(", ")).unwrap();
        }
        Some((_, e)) => writeln!(out, "finite part: {}", e.as_str().unwrap_or("-")).unwrap(),
        None => {}
    }
    let mut json = serde_json::to_value(&c).expect("serializable");
    json["finite_part"] = json!(finite_part);
    Ok(Output::ok(json, out))
}

fn basis(p: u64, g_texts: &[String], s: &Settings) -> Res {
    let family = g_texts.iter().map(|g| profile(g)).collect::<Result<Vec<_>, _>>()?;
    let x = extract_finite_basis(&family, p, &s.caps)?;
    let mut text = String::new();
    for b in &x.basis {
        writeln!(text, "keep   {b}").unwrap();
    }
    for r in &x.removed {
        writeln!(text, "remove {} ({})", r.profile, r.reason).unwrap();
    }
    Ok(Output::ok(serde_json::to_value(&x).expect("serializable"), text))
}

fn verify(suite: &str, cfg: &symper_core::verify::VerifyConfig) -> Res {
    let reports: Vec<SuiteReport> = if suite == "all" {
        run_all(cfg)?
    } else {
        vec![run_suite(suite, cfg)?]
    };
    let passed = reports.iter().all(SuiteReport::passed);
    let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    let json = json!({ "seed": cfg.seed, "passed": passed, "suites": reports });
    let out = Output::ok(json, text);
    Ok(if passed { out } else { out.with_status(Status::Failed) })
}
