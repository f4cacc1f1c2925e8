use std::collections::HashMap;

use garside::cosets::{Direction, FELLOW_BOUND};
use garside::oracle::Oracle;
use garside::providers::{build_braid, build_dihedral, build_free_abelian};
use garside::{parabolic_by_name, Budget, Element, Error, GarsideTable, Letter, ParabolicData, SimpleId};
use proptest::prelude::*;

fn b3() -> GarsideTable {
    build_braid(3).unwrap()
}

fn id(t: &GarsideTable, name: &str) -> SimpleId {
    t.lookup(name).unwrap_or_else(|| panic!("no simple {name}"))
}

fn el(t: &GarsideTable, p: i64, body: &[&str]) -> Element {
    Element::from_parts(t, p, body.iter().map(|s| id(t, s)).collect()).unwrap()
}

fn inv(t: &GarsideTable, x: &Element) -> Element {
    t.invert(x)
}

fn budget() -> Budget {
    Budget::unlimited()
}

#[test]
fn transversal_membership_examples() {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    assert!(p.is_hn_reduced(&Element::identity()));
    assert!(p.is_hn_reduced(&el(&t, 0, &["ba"])));
    assert!(!p.is_hn_reduced(&el(&t, 0, &["ab"])));
    let b_delta_inv = t.multiply(&el(&t, 0, &["b"]), &Element::delta_pow(-1));
    assert_eq!(b_delta_inv, inv(&t, &el(&t, 0, &["ba"])));
    assert!(p.is_hn_reduced(&b_delta_inv));
    assert!(!p.is_hn_reduced(&t.multiply(&el(&t, 0, &["a"]), &Element::delta_pow(-1))));
}

#[test]
fn representative_examples() {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    let rep = |x: &Element| p.coset_representative(x).unwrap().rep;
    assert_eq!(rep(&el(&t, 0, &["a"])), Element::identity());
    assert_eq!(rep(&el(&t, 0, &["ab"])), el(&t, 0, &["b"]));
    let b_inv = inv(&t, &el(&t, 0, &["b"]));
    assert_eq!(rep(&b_inv), t.multiply(&el(&t, 0, &["b"]), &Element::delta_pow(-1)));
    assert_eq!(rep(&Element::delta_pow(1)), el(&t, 0, &["ba"]));
}

#[test]
fn coset_length_examples() {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    assert_eq!(p.coset_length(&el(&t, 0, &["a", "a"])).unwrap(), 0);
    assert_eq!(p.coset_length(&inv(&t, &el(&t, 0, &["a"]))).unwrap(), 0);
    assert_eq!(p.coset_length(&Element::delta_pow(1)).unwrap(), 1);
    for k in 1..=5 {
        assert_eq!(p.coset_length(&p.d_k(k).unwrap()).unwrap(), k);
    }
}

#[test]
fn min_set_examples() {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    assert_eq!(p.min_set(&Element::identity(), 0, &mut budget()).unwrap(), vec![Element::identity()]);
    let d1 = p.d_k(1).unwrap();
    let expected = vec![el(&t, 0, &["ba"]), Element::delta_pow(1)];
    assert_eq!(p.min_set(&d1, 2, &mut budget()).unwrap(), expected);
    assert_eq!(p.min_set(&Element::delta_pow(1), 2, &mut budget()).unwrap(), expected);
    assert!(matches!(
        p.min_set(&d1, 1, &mut budget()),
        Err(Error::BoundTooSmall { given: 1, required: 2 })
    ));
}

#[test]
fn projection_examples() {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    let a = el(&t, 0, &["a"]);
    let x = t.multiply(&a, &a);
    let proj = p.projection(&x, &mut budget()).unwrap();
    assert_eq!(proj.members, vec![x.clone()]);
    assert_eq!(proj.distance, 0);
    assert_eq!(p.projection_diameter(&x, &mut budget()).unwrap(), 0);

    let d1 = p.d_k(1).unwrap();
    let proj = p.projection(&d1, &mut budget()).unwrap();
    let mut expected = vec![Element::identity(), inv(&t, &a)];
    expected.sort();
    assert_eq!(proj.members, expected);
    assert_eq!(proj.distance, 1);
    assert_eq!(p.projection_diameter(&d1, &mut budget()).unwrap(), 1);

    let d2 = p.d_k(2).unwrap();
    let proj = p.projection(&d2, &mut budget()).unwrap();
    assert!(proj.members.contains(&Element::identity()));
    assert!(proj.members.contains(&inv(&t, &x)));
    assert!(p.projection_diameter(&p.d_k(3).unwrap(), &mut budget()).unwrap() >= 3);
}

#[test]
fn min_set_is_stable_past_the_bound() {
    for (t, name) in [(b3(), "a"), (build_dihedral(4).unwrap(), "s")] {
        let p = parabolic_by_name(&t, name).unwrap();
        for x in t.elements_up_to_length(2) {
            let l = p.coset_length(&x).unwrap();
            let tight = p.min_set(&x, 2 * l, &mut budget()).unwrap();
            let loose = p.min_set(&x, 2 * l + 2, &mut budget()).unwrap();
            assert_eq!(tight, loose, "{name}: {}", t.format_element(&x));
            let proj = p.projection(&x, &mut budget()).unwrap();
            assert_eq!(proj.members.len(), tight.len());
            for g in &tight {
                assert!(p.in_subgroup(&t.multiply(&x, &inv(&t, g))));
                assert_eq!(g.length(), l);
            }
        }
    }
}

/// Checks fibers, representatives and lengths against the oracle partition
/// of the ball of radius `radius`.
fn check_transversal(t: &GarsideTable, p: &ParabolicData<'_>, radius: u64) {
    let o = Oracle::new(t);
    let ball = o.key_ball(radius, &mut budget()).unwrap();
    let partition = o.brute_coset_partition(&ball, p, &mut budget()).unwrap();
    assert_eq!(partition.length_mismatches, 0);
    let mut rep_to_class: HashMap<Element, usize> = HashMap::new();
    let mut class_to_rep: HashMap<usize, Element> = HashMap::new();
    for k in ball.keys() {
        let x = o.to_element(k);
        assert_eq!(x.length(), ball.distance(k).unwrap(), "length of {}", t.format_element(&x));
        let rep = p.coset_representative(&x).unwrap().rep;
        let class = partition.class_of(k).unwrap();
        assert_eq!(*rep_to_class.entry(rep.clone()).or_insert(class), class);
        assert_eq!(*class_to_rep.entry(class).or_insert(rep.clone()), rep);
        assert_eq!(rep.length(), partition.classes[class].min_length, "coset of {}", t.format_element(&x));
    }
    for (class, rep) in &class_to_rep {
        if rep.length() <= radius {
            let k = o.key_of_element(rep);
            assert_eq!(partition.class_of(&k), Some(*class), "fiber misses {}", t.format_element(rep));
        }
    }
}

#[test]
fn representatives_match_oracle_partition_b3() {
    let t = b3();
    check_transversal(&t, &parabolic_by_name(&t, "a").unwrap(), 4);
    check_transversal(&t, &parabolic_by_name(&t, "b").unwrap(), 3);
}

#[test]
fn representatives_match_oracle_partition_dihedral() {
    let t = build_dihedral(4).unwrap();
    check_transversal(&t, &parabolic_by_name(&t, "s").unwrap(), 3);
    let t = build_dihedral(5).unwrap();
    check_transversal(&t, &parabolic_by_name(&t, "t").unwrap(), 2);
}

#[test]
fn representatives_match_oracle_partition_abelian_and_b4() {
    let t = build_free_abelian(2).unwrap();
    check_transversal(&t, &parabolic_by_name(&t, "x").unwrap(), 4);
    let t = build_braid(4).unwrap();
    check_transversal(&t, &parabolic_by_name(&t, "ac").unwrap(), 1);
}

#[test]
fn projections_match_oracle() {
    for (t, name, radius) in [(b3(), "a", 2u64), (build_dihedral(4).unwrap(), "s", 2)] {
        let p = parabolic_by_name(&t, name).unwrap();
        let o = Oracle::new(&t);
        let ball = o.key_ball(2 * radius, &mut budget()).unwrap();
        for x in t.elements_up_to_length(radius) {
            let proj = p.projection(&x, &mut budget()).unwrap();
            let (members, d) = o
                .brute_projection(&ball, &p, &o.key_of_element(&x), 2 * x.length(), &mut budget())
                .unwrap();
            let mut members: Vec<Element> = members.iter().map(|k| o.to_element(k)).collect();
            members.sort();
            assert_eq!(proj.distance, d, "{name}: {}", t.format_element(&x));
            assert_eq!(proj.members, members, "{name}: {}", t.format_element(&x));
        }
    }
}

#[test]
fn orthogonal_form_of_subgroup_times_positive_representative() {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    let thetas: Vec<Element> =
        t.positive_elements_up_to_length(3).into_iter().filter(|x| p.is_hn_reduced(x)).collect();
    let betas: Vec<Element> = p.subgroup_ball(2, &mut budget()).unwrap().into_iter().map(|(b, _)| b).collect();
    for theta in &thetas {
        for beta in &betas {
            let (b1, b2) = t.left_orthogonal(beta);
            let (num, den) = t.left_orthogonal(&t.multiply(beta, theta));
            assert_eq!(num, t.multiply(&b1, theta));
            assert_eq!(den, b2);
        }
    }
}

#[test]
fn right_delta_form_of_positive_times_representative() {
    for (t, name) in [(b3(), "a"), (build_dihedral(4).unwrap(), "s"), (build_braid(4).unwrap(), "ac")] {
        let p = parabolic_by_name(&t, name).unwrap();
        let delta = t.simple_element(p.delta_sub());
        let thetas: Vec<Element> = t
            .elements_up_to_length(2)
            .into_iter()
            .filter(|x| p.is_hn_reduced(x))
            .collect();
        let ns: Vec<Element> = t.positive_elements_up_to_length(2).into_iter().filter(|b| p.in_submonoid(b)).collect();
        for theta in &thetas {
            let (c, minus_p) = t.right_delta_part(theta);
            let p_pow = -minus_p;
            for b in &ns {
                let (_, power) = t.right_delta_part(&t.multiply(b, theta));
                if p_pow >= 1 {
                    assert_eq!(power, -p_pow, "{name}: b = {}, theta = {}", t.format_element(b), t.format_element(theta));
                }
                // b delta^-k is a right delta-form only when delta does not divide b
                if p_pow < 1 || t.multiply(&inv(&t, &delta), b).is_positive() {
                    continue;
                }
                for k in 1..=3u64 {
                    let delta_k = t.multiply_all(&vec![delta.clone(); k as usize]);
                    let beta = t.multiply(b, &inv(&t, &delta_k));
                    let x = t.multiply(&beta, theta);
                    let mut expected = t.multiply(b, &p.d_k(k).unwrap());
                    expected = t.multiply(&expected, &t.conjugate_by_delta(&c, -(k as i64)));
                    assert_eq!(
                        t.right_delta_part(&x),
                        (expected, -(k as i64) - p_pow),
                        "{name}: b = {}, k = {k}, theta = {}",
                        t.format_element(b),
                        t.format_element(theta)
                    );
                }
            }
        }
    }
}

#[test]
fn fellow_audit_b3_short() {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    let report = p.fellow_projection_audit(0, &mut budget()).unwrap();
    assert_eq!(report.alphas, 1);
    assert!(report.k_obs <= 1);
    let report = p.fellow_projection_audit(2, &mut budget()).unwrap();
    assert!(report.passed(), "{}", report.summary(&p));
    assert!(report.k_obs <= FELLOW_BOUND);
    assert!(report.rows.iter().any(|r| r.direction == Direction::Backward));
    let csv = report.to_csv(&p);
    assert!(csv.starts_with("alpha,u,beta,best_beta_prime,distance\n"));
    assert_eq!(csv.lines().count(), report.rows.len() + 1);
    let summary = report.summary(&p);
    assert!(summary.contains("K_obs:"));
    assert!(summary.contains("result: PASS"));
}

#[test]
fn fellow_audit_abelian_is_tight() {
    let t = build_free_abelian(2).unwrap();
    let p = parabolic_by_name(&t, "x").unwrap();
    let report = p.fellow_projection_audit(3, &mut budget()).unwrap();
    assert!(report.k_obs <= 1);
    assert!(report.passed());
    // y^-1 x^-1 = (xy)^-1 is a single letter, so y sits at distance 1 from
    // both 1 and x^-1
    let y = el(&t, 0, &["y"]);
    let x_inv = inv(&t, &el(&t, 0, &["x"]));
    let mut expected = vec![Element::identity(), x_inv];
    expected.sort();
    assert_eq!(p.projection(&y, &mut budget()).unwrap().members, expected);
    let o = Oracle::new(&t);
    let ball = o.key_ball(6, &mut budget()).unwrap();
    for x in t.elements_up_to_length(3) {
        let proj = p.projection(&x, &mut budget()).unwrap();
        let (members, d) =
            o.brute_projection(&ball, &p, &o.key_of_element(&x), 2 * x.length(), &mut budget()).unwrap();
        let mut members: Vec<Element> = members.iter().map(|k| o.to_element(k)).collect();
        members.sort();
        assert_eq!((proj.members, proj.distance), (members, d), "{}", t.format_element(&x));
    }
}

#[test]
fn fellow_audit_reports_exhausted_budget() {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    let report = p.fellow_projection_audit(2, &mut Budget::new(10)).unwrap();
    assert!(report.budget_exceeded);
    assert!(!report.passed());
    assert!(report.summary(&p).contains("partial"));
}

#[test]
fn unbounded_projection_certificates() {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    let cert = p.bounded_projection_witness(1, &mut budget()).unwrap();
    assert_eq!(cert.d_k, p.d_k(2).unwrap());
    assert!(cert.diameter >= 2);
    assert!(cert.holds());
    let cert = p.bounded_projection_witness(3, &mut budget()).unwrap();
    assert_eq!(cert.d_k, p.d_k(4).unwrap());
    assert!(cert.contains_identity && cert.contains_delta_neg_k);
    assert_eq!(cert.distance_identity_delta_neg_k, 4);
    assert!(cert.holds());

    let improper = parabolic_by_name(&t, "D").unwrap();
    assert!(matches!(improper.bounded_projection_witness(1, &mut budget()), Err(Error::Domain(_))));
    assert!(p.bounded_projection_witness(0, &mut budget()).is_err());
}

fn letters(t: &GarsideTable) -> Vec<Letter> {
    garside::cosets::all_letters(t)
}

fn word_strategy(n_letters: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n_letters, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn representative_is_canonical_b4(word in word_strategy(46, 8), h in word_strategy(6, 4)) {
        let t = build_braid(4).unwrap();
        let p = parabolic_by_name(&t, "aba").unwrap();
        let all = letters(&t);
        let x = t.normalize(&word.iter().map(|&i| all[i]).collect::<Vec<_>>()).unwrap();
        let h_letters: Vec<Letter> = ["a", "b", "ab"]
            .iter()
            .flat_map(|s| [Letter::pos(id(&t, s)), Letter::neg(id(&t, s))])
            .collect();
        let beta = t.normalize(&h.iter().map(|&i| h_letters[i]).collect::<Vec<_>>()).unwrap();
        prop_assert!(p.in_subgroup(&beta));
        let rep = p.coset_representative(&x).unwrap().rep;
        prop_assert!(p.is_hn_reduced(&rep));
        prop_assert!(rep.length() <= x.length());
        prop_assert_eq!(&p.coset_representative(&rep).unwrap().rep, &rep);
        prop_assert_eq!(p.coset_representative(&t.multiply(&beta, &x)).unwrap().rep, rep);
    }

    #[test]
    fn representative_is_canonical_dihedral(word in word_strategy(18, 10), h in -6i64..6) {
        let t = build_dihedral(5).unwrap();
        let p = parabolic_by_name(&t, "s").unwrap();
        let all = letters(&t);
        let x = t.normalize(&word.iter().map(|&i| all[i]).collect::<Vec<_>>()).unwrap();
        let s = t.simple_element(id(&t, "s"));
        let s_pow = if h >= 0 {
            t.multiply_all(&vec![s; h as usize])
        } else {
            t.invert(&t.multiply_all(&vec![s; (-h) as usize]))
        };
        let rep = p.coset_representative(&x).unwrap().rep;
        prop_assert!(p.is_hn_reduced(&rep));
        prop_assert_eq!(p.coset_representative(&t.multiply(&s_pow, &x)).unwrap().rep, rep);
    }
}
