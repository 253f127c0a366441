mod common;

use common::*;
use symper_core::classify::{
    classify, classify_d0_infinite, extract_finite_basis, is_in_ps_bracket, DTerm, FamilyDescriptor, NTerm,
    SequenceSpec, TExp, Verdict, Witness,
};
use symper_core::closure::name_generators;
use symper_core::formula::{
    is_essential, n_subset_check, realize, rewrite_i, theta, variable_counts, zero_propagation_check,
};
use symper_core::{
    close, detect_period, make_periodic, maximal_set, member_oracle, member_psr_with_i, member_single,
    member_single_with_i, nset_intersection, Branch, ClosureCaps, Error, FnLiteral, Formula, Membership,
    Occurrence, OracleVerdict, PeriodicProfile, Signature, SymmetricFn, TableFn,
};

fn pp(n: u64, d: u64, t: u64) -> PeriodicProfile {
    PeriodicProfile::new(n, d, t).unwrap()
}

fn table(n: u64, d: u64, t: u64) -> TableFn {
    pp(n, d, t).to_table().unwrap()
}

fn fx(s: &str) -> Formula {
    s.parse().unwrap()
}

fn sig(entries: &[(&str, (u64, u64, u64))]) -> Signature {
    let mut s = Signature::new();
    for (name, (n, d, t)) in entries {
        s.insert(*name, table(*n, *d, *t)).unwrap();
    }
    s
}

// symfun-core

#[test]
fn make_periodic_examples() {
    assert_eq!(make_periodic(5, 1, 2).unwrap().layer_set(), vec![1, 3, 5]);
    let i3 = make_periodic(3, 0, 1).unwrap();
    assert_eq!(i3, SymmetricFn::i(3).unwrap());
    assert!(i3.is_i());
    assert_eq!(make_periodic(4, 3, 4).unwrap().layer_set(), vec![3]);
    assert!(make_periodic(4, 2, 2).is_err());
    assert!(make_periodic(2, 3, 4).is_err());
    assert!(make_periodic(2, 0, 0).is_err());
}

#[test]
fn detect_period_examples() {
    assert_eq!(detect_period(&SymmetricFn::i(4).unwrap()), Some(pp(4, 0, 1)));
    let f = SymmetricFn::from_layer_set(4, &[0, 2, 4]).unwrap();
    assert_eq!(detect_period(&f).map(|p| triple(&p)), Some((4, 0, 2)));
    let g = SymmetricFn::from_layer_set(4, &[1, 2, 3, 4]).unwrap();
    assert_eq!(detect_period(&g), None);
    assert_eq!(detect_period(&SymmetricFn::zero(3).unwrap()), None);
}

#[test]
fn eval_symmetric_examples() {
    let f = make_periodic(3, 1, 2).unwrap();
    assert_eq!(f.eval(&[2, 1, 1]).unwrap(), 1);
    assert_eq!(f.eval(&[0, 2, 2]).unwrap(), 0);
    assert_eq!(f.eval(&[2, 2, 1]).unwrap(), 0);
    assert!(f.eval(&[1, 1]).is_err());
}

#[test]
fn nset_intersection_examples() {
    let a = make_periodic(6, 0, 2).unwrap();
    let b = make_periodic(6, 0, 3).unwrap();
    let (h, p) = nset_intersection(&[a.clone(), b]).unwrap().unwrap();
    assert_eq!(h.layer_set(), vec![0, 6]);
    assert_eq!(triple(&p), (6, 0, 6));

    let (h, _) = nset_intersection(&[a.clone(), a.clone()]).unwrap().unwrap();
    assert_eq!(h, a);

    let (h, p) = nset_intersection(&[make_periodic(2, 0, 2).unwrap(), make_periodic(2, 0, 3).unwrap()])
        .unwrap()
        .unwrap();
    assert_eq!(h.layer_set(), vec![0]);
    assert_eq!((p.d(), p.t()), (0, 3));

    assert!(nset_intersection(&[make_periodic(3, 1, 2).unwrap()]).is_err());
    assert!(nset_intersection(&[a, make_periodic(4, 0, 2).unwrap()]).is_err());
}

#[test]
fn table_examples() {
    let t = SymmetricFn::i(2).unwrap().to_table().unwrap();
    assert!(t.bits().iter().all(|&b| b));
    let f = make_periodic(5, 1, 2).unwrap();
    assert_eq!(SymmetricFn::from_table(&f.to_table().unwrap()), Some(f));
    // index 1 is (1,2), index 2 is (2,1)
    let g = TableFn::new(2, vec![false, true, false, false]).unwrap();
    assert_eq!(g.eval(&[1, 2]).unwrap(), 1);
    assert_eq!(SymmetricFn::from_table(&g), None);
}

#[test]
fn is_i_examples() {
    assert!(TableFn::i(3).unwrap().is_i());
    assert!(!make_periodic(3, 0, 2).unwrap().is_i());
    assert!(!SymmetricFn::zero(3).unwrap().is_i());
    assert!(!TableFn::zero(3).unwrap().is_i());
}

#[test]
fn literal_formats() {
    let a: FnLiteral = "periodic n=5 d=1 t=2".parse().unwrap();
    let b: FnLiteral = "sym n=5 layers=1,3,5".parse().unwrap();
    assert_eq!(a.to_table().unwrap(), b.to_table().unwrap());
    let i2: FnLiteral = "table n=2 bits=f".parse().unwrap();
    assert!(i2.to_table().unwrap().is_i());
}

// formula-engine

#[test]
fn realize_examples() {
    let s = Signature::new();
    assert_eq!(symper_core::formula::eval(&fx("(i2 x1 x2)"), &s, &[1, 2]).unwrap(), 1);

    let s = sig(&[("g", (4, 0, 2))]);
    let r = realize(&fx("(g x1 x1 x2 x2)"), &s, 2).unwrap();
    assert!(r.is_i());
    let heads: Heads = [("g".to_string(), (4, 0, 2))].into();
    assert!(tuples3(2).iter().all(|a| eval_formula(&fx("(g x1 x1 x2 x2)"), &heads, a) == (!a.contains(&0)) as u8));

    let phi = fx("(g x1 (g x1 x1 x2 x2) x2 x2)");
    for a in tuples3(2).into_iter().filter(|a| a.contains(&0)) {
        assert_eq!(symper_core::formula::eval(&phi, &s, &a).unwrap(), 0);
    }
}

#[test]
fn bare_variable_is_rejected() {
    assert!(matches!(realize(&Formula::Var(1), &Signature::new(), 1), Err(Error::BareVariable)));
}

#[test]
fn zero_propagation_examples() {
    let s = sig(&[("g", (2, 0, 2))]);
    let phi = fx("(g x1 (i2 x1 x2))");
    let inner = Occurrence(vec![1]);
    assert!(zero_propagation_check(&phi, &s, &inner, &[1, 0]).unwrap());
    // subformula value 1: vacuous
    assert!(zero_propagation_check(&phi, &s, &inner, &[1, 1]).unwrap());
    for a in tuples3(2) {
        for occ in phi.occurrences() {
            assert!(zero_propagation_check(&phi, &s, &occ, &a).unwrap());
        }
    }
}

#[test]
fn n_subset_examples() {
    let s = sig(&[("g", (2, 0, 2)), ("h", (4, 0, 2))]);
    for text in ["(g x1 (i2 x1 x2))", "(h x1 x1 x2 x2)", "(g (h x1 x2 x3 x3) (g x2 x3))"] {
        let phi = fx(text);
        for occ in phi.applications() {
            assert!(n_subset_check(&phi, &s, &occ, 3).unwrap(), "{text} at {occ}");
        }
    }
}

#[test]
fn theta_examples() {
    let s = sig(&[("g", (2, 0, 2)), ("h", (4, 0, 2))]);
    assert!(theta(&fx("(i3 x1 x2 x3)"), &s, 3).unwrap().functions.is_empty());
    let th = theta(&fx("(g x1 x2)"), &s, 2).unwrap();
    assert_eq!(th.functions.len(), 1);
    assert_eq!(th.functions[0].1, table(2, 0, 2));
    assert!(theta(&fx("(h x1 x1 x2 x2)"), &s, 2).unwrap().functions.is_empty());
}

#[test]
fn is_essential_examples() {
    let s = sig(&[("g", (2, 0, 2)), ("h", (4, 0, 2))]);
    let root = Occurrence::root();
    assert!(!is_essential(&fx("(i2 x1 x2)"), &s, &root, 2).unwrap());
    assert!(is_essential(&fx("(g x1 x2)"), &s, &root, 2).unwrap());
    assert!(!is_essential(&fx("(h x1 x1 x2 x2)"), &s, &root, 2).unwrap());
}

#[test]
fn variable_counts_examples() {
    let root = Occurrence::root();
    assert_eq!(variable_counts(&fx("(g x1 x2 (h x1 x2) (h x1 x2))"), &root, 2).unwrap(), vec![3, 3]);
    assert_eq!(variable_counts(&fx("(g x1 x1 x2 x2)"), &root, 2).unwrap(), vec![2, 2]);
    assert_eq!(variable_counts(&fx("(g x1 x2)"), &root, 2).unwrap(), vec![1, 1]);
}

#[test]
fn rewrite_i_examples() {
    let s = Signature::new();
    assert_eq!(rewrite_i(&fx("(i2 (i2 x1 x2) x3)"), &s).unwrap(), fx("(i3 x1 x2 x3)"));
    assert_eq!(rewrite_i(&fx("(i3 x1 x2 x2)"), &s).unwrap(), fx("(i2 x1 x2)"));
    assert_eq!(rewrite_i(&fx("(i2 x1 x2)"), &s).unwrap(), fx("(i2 x1 x2)"));
}

// closure-oracle

#[test]
fn close_i2_on_three_variables() {
    let st = close(&name_generators(&[TableFn::i(2).unwrap()]), 3, &ClosureCaps::default()).unwrap();
    assert!(st.is_fixpoint());
    let mut supports: Vec<Vec<usize>> = st.derived().into_iter().map(|d| d.support).collect();
    supports.sort();
    // i on every non-empty subset of {x1,x2,x3}
    assert_eq!(supports.len(), 7);
    for d in st.derived() {
        assert!(d.table.bits().iter().all(|&b| b));
    }
    for i in 0..st.len() {
        let w = st.witness(i);
        let vars: Vec<usize> = w.variables().into_iter().collect();
        assert_eq!(vars, st.get(i).support);
    }
}

#[test]
fn close_g402_on_two_variables() {
    let gens = vec![("g".to_string(), table(4, 0, 2))];
    let st = close(&gens, 2, &ClosureCaps::default()).unwrap();
    assert!(st.is_fixpoint());
    let i = st.find(&table(2, 0, 2)).expect("(2,0,2) derived");
    let heads: Heads = [("g".to_string(), (4, 0, 2))].into();
    assert!(realizes(&st.witness(i), &heads, (2, 0, 2)));
    let expected = fx("(g x1 x2 (g x1 x1 x2 x2) (g x1 x1 x2 x2))");
    assert!(realizes(&expected, &heads, (2, 0, 2)));
}

#[test]
fn close_empty() {
    let st = close(&[], 2, &ClosureCaps::default()).unwrap();
    assert!(st.is_empty());
    assert!(st.is_fixpoint());
}

#[test]
fn member_oracle_examples() {
    let caps = ClosureCaps::default();
    let f = table(2, 0, 2);
    match member_oracle(&f, &[("g1".into(), table(4, 0, 2))], &caps).unwrap() {
        OracleVerdict::Yes(w) => assert!(realizes(&w, &[("g1".to_string(), (4, 0, 2))].into(), (2, 0, 2))),
        v => panic!("{v:?}"),
    }

    let g = vec![("g1".to_string(), table(3, 0, 2))];
    assert_eq!(member_oracle(&f, &g, &caps).unwrap(), OracleVerdict::No);
    let mut gi = g.clone();
    gi.push(("i2".into(), TableFn::i(2).unwrap()));
    match member_oracle(&f, &gi, &caps).unwrap() {
        OracleVerdict::Yes(w) => assert!(realizes(&w, &[("g1".to_string(), (3, 0, 2))].into(), (2, 0, 2))),
        v => panic!("{v:?}"),
    }
    let hand = fx("(g1 x1 x2 (i2 x1 x2))");
    assert!(realizes(&hand, &[("g1".to_string(), (3, 0, 2))].into(), (2, 0, 2)));

    let i3 = vec![("i3".to_string(), TableFn::i(3).unwrap())];
    assert!(member_oracle(&TableFn::i(2).unwrap(), &i3, &caps).unwrap().is_yes());
}

// membership-criteria

fn yes_branch(m: &Membership) -> Branch {
    match m {
        Membership::Yes { branch, certificate } => {
            let _ = certificate;
            *branch
        }
        other => panic!("expected yes, got {other:?}"),
    }
}

#[test]
fn member_single_examples() {
    let f = pp(2, 0, 2);
    assert_eq!(yes_branch(&member_single(&f, &pp(4, 0, 2))), Branch::L2);
    assert!(member_single(&f, &pp(3, 0, 2)).is_no());
    assert!(member_single(&f, &f).is_yes());
    assert!(matches!(member_single(&pp(3, 0, 1), &f), Membership::Inapplicable { .. }));
    assert!(matches!(member_single(&pp(3, 1, 3), &f), Membership::Inapplicable { .. }));
}

#[test]
fn member_single_with_i_examples() {
    let f = pp(2, 0, 2);
    assert_eq!(yes_branch(&member_single_with_i(&f, &pp(3, 0, 2))), Branch::L1Item2);
    assert!(member_single_with_i(&f, &pp(4, 0, 2)).is_yes());
    assert!(member_single_with_i(&pp(3, 1, 2), &pp(3, 0, 4)).is_no());
    let caps = ClosureCaps::default();
    let gens = name_generators(&[table(3, 0, 4), TableFn::i(2).unwrap()]);
    assert_eq!(member_oracle(&table(3, 1, 2), &gens, &caps).unwrap(), OracleVerdict::No);
}

#[test]
fn certificates_verify() {
    for (f, g) in [(pp(2, 0, 2), pp(4, 0, 2)), (pp(2, 0, 2), pp(2, 0, 2)), (pp(4, 1, 2), pp(6, 1, 2))] {
        for m in [member_single(&f, &g), member_single_with_i(&f, &g)] {
            if let Membership::Yes { branch, certificate } = m {
                assert!(certificate.verify(&f, &g, branch), "{f} {g}");
            }
        }
    }
}

#[test]
fn member_psr_examples() {
    assert!(member_psr_with_i(&pp(3, 0, 2), 4));
    assert!(!member_psr_with_i(&pp(3, 0, 2), 3));
    assert!(member_psr_with_i(&pp(3, 0, 1), 7));
}

#[test]
fn ratio_examples() {
    assert_eq!(pp(5, 1, 4).ratio(), 4);
    assert_eq!(pp(6, 2, 4).ratio(), 2);
    assert_eq!(pp(4, 0, 4).ratio(), 1);
}

#[test]
fn maximal_set_examples() {
    assert_eq!(maximal_set(&[pp(2, 0, 2), pp(4, 0, 2)]).unwrap(), vec![pp(4, 0, 2)]);
    assert_eq!(maximal_set(&[pp(5, 1, 2)]).unwrap(), vec![pp(5, 1, 2)]);
    // ratios 2 and 3: neither with-I check succeeds
    let (a, b) = (pp(4, 1, 2), pp(4, 1, 3));
    assert!(member_single_with_i(&a, &b).is_no() && member_single_with_i(&b, &a).is_no());
    assert_eq!(maximal_set(&[a, b]).unwrap().len(), 2);
}

// basis-classifier

fn seq(a: u64, b: u64, d: Option<(u64, u64, u64)>, n: (u64, u64, u64, u64)) -> SequenceSpec {
    SequenceSpec {
        t_exp: TExp { a, b },
        d: d.map(|(c, g, e)| DTerm { c, g, e }),
        n: NTerm { u: n.0, v: n.1, w: n.2, z: n.3 },
    }
}

#[test]
fn classify_examples() {
    let caps = ClosureCaps::default();
    let finite = FamilyDescriptor { p: 2, finite: vec![pp(2, 0, 1), pp(4, 0, 2)], sequences: vec![] };
    let c = classify(&finite, &caps).unwrap();
    assert_eq!(c.verdict, Verdict::FiniteBasis);
    assert!(matches!(c.witness, Witness::FiniteBasis { basis: Some(_), .. }));

    let countable = FamilyDescriptor { p: 2, finite: vec![], sequences: vec![seq(1, 1, Some((1, 0, 0)), (1, 0, 1, 0))] };
    assert_eq!(countable.sequences[0].member(2, 2), Some(pp(9, 1, 8)));
    assert_eq!(classify(&countable, &caps).unwrap().verdict, Verdict::CountableBasis);

    let none = FamilyDescriptor { p: 2, finite: vec![], sequences: vec![seq(1, 1, Some((1, 0, 1)), (0, 0, 1, 1))] };
    assert_eq!(none.sequences[0].member(2, 2), Some(pp(12, 4, 8)));
    let c = classify(&none, &caps).unwrap();
    assert_eq!(c.verdict, Verdict::NoBasis);
    assert!(matches!(c.witness, Witness::NoBasis { exponent: 1, sequence: 0 }));
}

#[test]
fn documented_descriptor_json() {
    let text = r#"{"p": 2, "finite": [{"n":4,"d":0,"t":2}], "sequences": [{"t_exp":{"a":1,"b":1}, "d":{"c":1,"g":0,"e":1}, "n":{"u":1,"v":0,"w":1}}]}"#;
    let desc = FamilyDescriptor::from_json(text).unwrap();
    assert_eq!(desc.sequences[0].n.z, 0);
}

#[test]
fn classify_d0_examples() {
    let caps = ClosureCaps::default();
    let p3 = FamilyDescriptor { p: 3, finite: vec![], sequences: vec![seq(0, 1, None, (0, 0, 1, 0))] };
    assert_eq!(classify_d0_infinite(&p3).unwrap(), Verdict::NoBasis);
    assert_eq!(classify(&p3, &caps).unwrap().verdict, Verdict::NoBasis);

    let finite = FamilyDescriptor { p: 2, finite: vec![pp(4, 0, 2), pp(8, 0, 4)], sequences: vec![] };
    assert!(classify_d0_infinite(&finite).is_err());
    assert_eq!(classify(&finite, &caps).unwrap().verdict, Verdict::FiniteBasis);

    let p2 = FamilyDescriptor { p: 2, finite: vec![], sequences: vec![seq(1, 1, None, (0, 0, 1, 0))] };
    assert_eq!(classify_d0_infinite(&p2).unwrap(), Verdict::NoBasis);
    assert_eq!(classify(&p2, &caps).unwrap().verdict, Verdict::NoBasis);
}

#[test]
fn extract_finite_basis_examples() {
    let caps = ClosureCaps::default();
    let x = extract_finite_basis(&[pp(2, 0, 2), pp(4, 0, 2)], 2, &caps).unwrap();
    assert_eq!(x.basis, vec![pp(4, 0, 2)]);
    let x = extract_finite_basis(&[PeriodicProfile::i(2).unwrap(), PeriodicProfile::i(5).unwrap()], 2, &caps).unwrap();
    assert_eq!(x.basis, vec![PeriodicProfile::i(5).unwrap()]);
    let x = extract_finite_basis(&[pp(4, 1, 2)], 2, &caps).unwrap();
    assert_eq!(x.basis, vec![pp(4, 1, 2)]);
}

#[test]
fn ps_bracket_examples() {
    assert!(is_in_ps_bracket(&pp(13, 0, 12), &[2, 3]));
    assert!(!is_in_ps_bracket(&pp(13, 0, 12), &[2]));
    assert!(is_in_ps_bracket(&pp(3, 0, 1), &[5]));
}
