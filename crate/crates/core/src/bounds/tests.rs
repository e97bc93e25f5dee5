use proptest::prelude::*;

use super::*;
use crate::ext::End;
use crate::field::PrimeField;
use crate::invariants::{build_derksen_instance, permutation, swap};
use crate::poly::PolyRing;
use crate::veronese::{veronese_instance, veronese_presentation, VeroneseParams};

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn fin(v: i64) -> End {
    End::Finite(v)
}

fn veronese_profile(n: usize, m: u32, full: bool) -> TorProfile {
    let p = VeroneseParams::new(n, m).unwrap();
    let inst = if full {
        veronese_instance(p, fp(), true).unwrap()
    } else {
        veronese_presentation(p, fp(), false).unwrap()
    };
    let mut opts = ProfileOptions::full(p.label(), RSource::Summand { m });
    if !full {
        opts.residue_field_index = None;
        opts.koszul_route = false;
        opts.homology_modules = false;
    }
    compute_profile(&inst, &opts).unwrap()
}

fn bad(v: &[BoundVerdict]) -> Vec<&BoundVerdict> {
    v.iter()
        .filter(|x| matches!(x.kind, VerdictKind::Violated | VerdictKind::Inconclusive))
        .collect()
}

#[test]
fn compositions_basic() {
    assert_eq!(t_of(&[End::NegInf, fin(3)], 0).unwrap(), End::NegInf);
    assert_eq!(t_of(&[End::NegInf, fin(3)], -2).unwrap(), End::NegInf);
    let parts = [End::NegInf, fin(5), fin(1), fin(2)];
    assert!(t_of(&parts, 3).unwrap() >= fin(15));
    // the ideal (x^2, xy, y^2): t^B_1(I) = 3, t^B_2(I) = -inf
    let parts = [End::NegInf, fin(3), End::NegInf];
    assert_eq!(t_of(&parts, 2).unwrap(), fin(6));
    assert_eq!(max_over_compositions_brute(&parts, 2).unwrap(), fin(6));
    assert!(matches!(t_of(&parts, 3), Err(crate::AlgebraError::InsufficientData(_))));
}

#[test]
fn u_closed_forms() {
    for e in 0..4 {
        for i in 1..6 {
            assert_eq!(u_of(&[1, 1, 1], fin(e), i).unwrap(), fin((2 + e) * i));
        }
        assert_eq!(u_of(&[1], fin(e), 3).unwrap(), End::NegInf);
        assert_eq!(u_of(&[1, 1], fin(e), 0).unwrap(), End::NegInf);
    }
    assert_eq!(u_of(&[3, 2, 1], fin(1), 2).unwrap(), fin(12));
    assert!(u_of(&[], fin(1), 2).is_err());
}

fn part_strategy() -> impl Strategy<Value = Vec<End>> {
    prop::collection::vec(
        prop_oneof![1 => Just(End::NegInf), 4 => (-3i64..12).prop_map(End::Finite)],
        9..10,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dynamic_programming_matches_enumeration(parts in part_strategy(), j in 0i64..=8) {
        prop_assert_eq!(max_over_compositions(&parts, j).unwrap(), max_over_compositions_brute(&parts, j).unwrap());
    }

    #[test]
    fn t_is_superadditive(parts in part_strategy(), j in 1usize..=7, k in 1usize..=7) {
        prop_assume!(j + k <= 8);
        let lhs = t_of(&parts, j as i64).unwrap() + parts[k];
        prop_assert!(lhs <= t_of(&parts, (j + k) as i64).unwrap());
    }

    #[test]
    fn u_is_superadditive(degrees in prop::collection::vec(1i64..4, 1..5), e in 0i64..5, j in 1i64..=7, k in 1i64..=7) {
        let mut degrees = degrees;
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        prop_assume!(j + k <= 8);
        let lhs = u_of(&degrees, fin(e), j).unwrap() + residue_field_t(&degrees, k as usize + 1) + fin(e);
        prop_assert!(lhs <= u_of(&degrees, fin(e), j + k).unwrap());
        let brute = max_over_compositions_brute(&u_parts(&degrees, fin(e), j as usize), j).unwrap();
        prop_assert_eq!(brute, u_closed_form(&degrees, fin(e), j));
    }
}

#[test]
fn conic_profile() {
    let p = veronese_profile(2, 2, true);
    let (v, skipped) = check_all(&p);
    println!("{}", p.to_json());
    println!("{}", summary_table(&v));
    println!("{:?}", skipped);
    assert!(skipped.is_empty());
    assert!(bad(&v).is_empty(), "{:#?}", bad(&v));
}

#[test]
fn conic_profile_values() {
    let p = veronese_profile(2, 2, true);
    let r_k: Vec<End> = (0..5).map(|i| p.r_k.as_ref().unwrap().t(i).unwrap()).collect();
    assert_eq!(r_k, vec![fin(0), fin(2), fin(4), fin(6), fin(8)]);
    assert_eq!(p.t1_b_ideal, fin(3));
    assert_eq!(p.t1_s_ideal.unwrap().t, fin(5));
    let main = check_main_theorem(&p);
    let tight = main.iter().find(|v| v.bound == "invariant-tor" && v.i == 1).unwrap();
    assert_eq!((tight.lhs, tight.rhs, tight.kind), (fin(4), fin(4), VerdictKind::Holds));
    assert!(main
        .iter()
        .filter(|v| v.bound.starts_with("invariant-tor-strong"))
        .all(|v| v.kind == VerdictKind::NotApplicable && v.hypothesis["gates disagree"] == serde_json::json!(false)));
    assert_eq!(outcome(&check_all(&p).0), Outcome::AllHold);
}

#[test]
fn cubic_veronese_is_a_counterexample() {
    let p = veronese_profile(3, 3, false);
    let derksen = check_derksen(&p);
    let hits: Vec<_> = derksen
        .iter()
        .filter(|v| v.kind == VerdictKind::Counterexample)
        .collect();
    assert!(!hits.is_empty());
    for v in &hits {
        assert_eq!(v.lhs, fin(3 * v.i + 6));
        assert!(v.lhs > v.rhs);
    }
    let (all, _) = check_all(&p);
    assert!(bad(&all).is_empty(), "{:#?}", bad(&all));
    assert_eq!(outcome(&all), Outcome::CounterexampleFound);
}

#[test]
fn group_instances_satisfy_every_bound() {
    let b = PolyRing::standard("x", 3, fp()).unwrap();
    let groups = vec![
        ("C2 swap", swap(&b).unwrap()),
        ("S3", permutation(&b, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()),
        ("trivial", permutation(&b, &[vec![0, 1, 2]]).unwrap()),
    ];
    for (name, g) in groups {
        let inst = build_derksen_instance(&g, true).unwrap();
        let mut opts = ProfileOptions::full(name, RSource::Kernel);
        opts.group_order = Some(g.order() as u64);
        let p = compute_profile(&inst, &opts).unwrap();
        let (all, skipped) = check_all(&p);
        assert!(skipped.is_empty(), "{}: {:?}", name, skipped);
        assert!(bad(&all).is_empty(), "{}: {:#?}", name, bad(&all));
        assert_eq!(outcome(&all), Outcome::AllHold, "{}", name);
        assert!(p.tau <= fin(g.order() as i64));
    }
}

#[test]
fn trivial_group_values() {
    let b = PolyRing::standard("x", 2, fp()).unwrap();
    let g = permutation(&b, &[vec![0, 1]]).unwrap();
    let inst = build_derksen_instance(&g, true).unwrap();
    let p = compute_profile(&inst, &ProfileOptions::full("trivial", RSource::Kernel)).unwrap();
    assert_eq!(p.tau, fin(1));
    assert_eq!(p.s_r.t(0), Some(fin(0)));
    assert_eq!(p.s_r.t(1), Some(End::NegInf));
    let rk: Vec<End> = (0..3).map(|i| p.r_k.as_ref().unwrap().t(i).unwrap()).collect();
    assert_eq!(rk, vec![fin(0), fin(1), fin(2)]);
}

fn verdict(lhs: Side, rhs: Side, head: Head) -> BoundVerdict {
    BoundVerdict::compare(&head, 3, lhs, rhs, Gate::always())
}

#[test]
fn verdict_kinds() {
    let proved = Head::proved("b", "x");
    let conj = Head::conjectured("c", "x");
    let v = verdict(Side::exact(fin(2), "l"), Side::exact(fin(2), "r"), proved.clone());
    assert!(v.holds && v.kind == VerdictKind::Holds);
    let v = verdict(Side::new(fin(2), true, "l"), Side::exact(fin(3), "r"), proved.clone());
    assert!(v.holds && v.capped);
    assert_eq!(v.kind, VerdictKind::NoViolationUpToCap);
    let v = verdict(Side::new(fin(4), true, "l"), Side::exact(fin(3), "r"), proved.clone());
    assert_eq!((v.holds, v.kind), (false, VerdictKind::Violated));
    let v = verdict(Side::exact(fin(4), "l"), Side::exact(fin(3), "r"), conj.clone());
    assert_eq!(v.kind, VerdictKind::Counterexample);
    let v = verdict(Side::exact(fin(4), "l"), Side::new(fin(3), true, "r"), proved.clone());
    assert_eq!(v.kind, VerdictKind::Inconclusive);
    let v = verdict(
        Side::exact(End::NegInf, "l"),
        Side::exact(End::NegInf, "r"),
        proved.clone(),
    );
    assert!(v.holds);
    let v = verdict(
        Side::exact(fin(100), "l"),
        Side::exact(End::PosInf, "r"),
        proved.clone(),
    );
    assert!(v.holds);
    let v = BoundVerdict::compare(
        &proved,
        0,
        Side::exact(fin(9), "l"),
        Side::exact(fin(1), "r"),
        Gate::when(false, "h", serde_json::json!(false)),
    );
    assert_eq!(v.kind, VerdictKind::NotApplicable);
    assert!(!v.holds);
}

#[test]
fn verdict_json_shape() {
    let v = verdict(
        Side::exact(End::NegInf, "l"),
        Side::exact(fin(7), "r"),
        Head::proved("b", "x"),
    );
    let j = serde_json::to_value(&v).unwrap();
    for key in ["bound", "i", "lhs", "rhs", "holds", "capped", "hypothesis"] {
        assert!(j.get(key).is_some(), "{}", key);
    }
    assert_eq!(j["lhs"], serde_json::json!("-inf"));
    assert_eq!(j["rhs"], serde_json::json!(7));
    assert_eq!(j["kind"], serde_json::json!("holds"));
    let back: BoundVerdict = serde_json::from_value(j).unwrap();
    assert_eq!(back, v);
}

#[test]
fn profile_round_trip_and_capped_values() {
    let p = veronese_profile(2, 2, true);
    let text = p.to_json();
    let q = TorProfile::from_json(&text).unwrap();
    assert_eq!(p, q);
    assert_eq!(check_all(&p).0, check_all(&q).0);

    let mut capped = p.clone();
    capped.s_r.values[1].capped = true;
    let v = check_derksen(&capped);
    assert_eq!(v[1].kind, VerdictKind::NoViolationUpToCap);

    let mut tampered = p.clone();
    tampered.s_r.values[1].t = fin(9);
    let v = check_main_theorem(&tampered);
    assert!(v.iter().any(|x| x.kind == VerdictKind::Violated));
    assert_eq!(outcome(&v), Outcome::ProvedBoundViolated);

    let err = TorProfile::from_json("{\"label\": 3}").unwrap_err();
    assert!(matches!(err, crate::AlgebraError::Parse { line: 1, .. }));
}

#[test]
fn koszul_corollary_gating() {
    // (x^2, xy, y^2): end H_1 = 4 <= 4, the strong clause needs t^B_1(I) = 3 <= 2
    let p = veronese_profile(2, 2, true);
    let v = check_koszul_corollary(&p);
    let one = v.iter().find(|x| x.bound == "koszul-homology" && x.i == 1).unwrap();
    assert_eq!((one.lhs, one.rhs), (fin(4), fin(4)));
    let strong = v
        .iter()
        .find(|x| x.bound == "koszul-homology-strong" && x.i == 1)
        .unwrap();
    assert_eq!(strong.kind, VerdictKind::NotApplicable);
}

#[test]
fn support_lemmas_need_their_data() {
    let mut p = veronese_profile(2, 2, true);
    p.homology.clear();
    assert!(matches!(
        check_support_lemmas(&p),
        Err(crate::AlgebraError::InsufficientData(_))
    ));
    let (_, skipped) = support_lemmas_available(&p);
    let names: Vec<_> = skipped.iter().map(|s| s.check.as_str()).collect();
    assert_eq!(names, vec!["module lemma", "first column"]);
    // i = 0 of the algebra bound: t^S_0(B) <= fin B/I
    let v = check_algebra_bounds(&p).unwrap();
    assert_eq!((v[0].lhs, v[0].rhs), (fin(1), fin(1)));
}
