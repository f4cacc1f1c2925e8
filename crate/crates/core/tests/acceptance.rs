//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints its own PASS/FAIL line; the process fails if any criterion fails.

use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use garside::cosets::FELLOW_BOUND;
use garside::oracle::{bfs_lengths, Oracle, OracleKey};
use garside::providers::{build_braid, build_dihedral, build_free_abelian};
use garside::{
    parabolic_by_name, rational_series, transfer_counts, Budget, Element, GarsideTable, IntPoly, Letter,
    ParabolicData, SimpleId,
};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn unlimited() -> Budget {
    Budget::unlimited()
}

fn b3() -> GarsideTable {
    build_braid(3).unwrap()
}

fn i2(m: usize) -> GarsideTable {
    build_dihedral(m).unwrap()
}

fn letters(t: &GarsideTable) -> Vec<Letter> {
    garside::cosets::all_letters(t)
}

fn words_up_to(alphabet: &[Letter], n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &l in alphabet {
                let mut v: Vec<Letter> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn normal_forms(t: &GarsideTable) -> Outcome {
    let o = Oracle::new(t);
    let words = words_up_to(&letters(t), 4);
    let mut by_element: HashMap<Element, OracleKey> = HashMap::new();
    let mut by_key: HashMap<OracleKey, Element> = HashMap::new();
    for w in &words {
        let x = t.normalize(w).map_err(|e| e.to_string())?;
        let k = o.key_of_word(w);
        ensure!(t.is_left_normal(x.body()), "body of {} is not left normal", t.format_word(w));
        ensure!(o.key_of_element(&x) == k, "{} normalizes to {}", t.format_word(w), t.format_element(&x));
        ensure!(by_element.entry(x.clone()).or_insert(k.clone()) == &k, "two classes share {}", t.format_element(&x));
        ensure!(by_key.entry(k).or_insert(x.clone()) == &x, "one class, two normal forms at {}", t.format_word(w));
    }
    Ok(format!("{} words, {} elements", words.len(), by_element.len()))
}

fn length_formula() -> Outcome {
    let mut sizes = Vec::new();
    for (t, radius) in [(b3(), 4u64), (i2(4), 3), (build_braid(4).unwrap(), 3)] {
        let ball = bfs_lengths(&t, radius, &mut unlimited()).map_err(|e| e.to_string())?;
        for x in ball.elements() {
            ensure!(
                Some(x.length()) == ball.distance(x),
                "{}: length {} vs distance {:?} for {}",
                t.name(),
                x.length(),
                ball.distance(x),
                t.format_element(x)
            );
        }
        if t.name() != "braid:4" {
            let o = Oracle::new(&t);
            let keys = o.key_ball(radius, &mut unlimited()).map_err(|e| e.to_string())?;
            ensure!(keys.len() == ball.len(), "{}: oracle ball has {} keys", t.name(), keys.len());
            for k in keys.keys() {
                ensure!(ball.distance(&o.to_element(k)) == keys.distance(k), "{}: rewriting distance differs", t.name());
            }
        }
        sizes.push(format!("{} r{}: {}", t.name(), radius, ball.len()));
    }
    Ok(sizes.join(", "))
}

fn transversal(t: &GarsideTable, p: &ParabolicData<'_>, radius: u64) -> Result<usize, String> {
    let o = Oracle::new(t);
    let ball = o.key_ball(radius, &mut unlimited()).map_err(|e| e.to_string())?;
    let part = o.brute_coset_partition(&ball, p, &mut unlimited()).map_err(|e| e.to_string())?;
    ensure!(part.length_mismatches == 0, "subgroup length mismatches in the oracle ball");
    let mut rep_of_class: HashMap<usize, Element> = HashMap::new();
    let mut class_of_rep: HashMap<Element, usize> = HashMap::new();
    for k in ball.keys() {
        let x = o.to_element(k);
        let rep = p.coset_representative(&x).map_err(|e| e.to_string())?.rep;
        let class = part.class_of(k).ok_or("key outside partition")?;
        ensure!(rep_of_class.entry(class).or_insert(rep.clone()) == &rep, "class split at {}", t.format_element(&x));
        ensure!(class_of_rep.entry(rep.clone()).or_insert(class) == &class, "classes merged at {}", t.format_element(&x));
        let len = p.coset_length(&x).map_err(|e| e.to_string())?;
        ensure!(len == part.classes[class].min_length, "coset length of {}", t.format_element(&x));
        if rep.length() <= radius {
            ensure!(part.class_of(&o.key_of_element(&rep)) == Some(class), "fiber of {} misses rep", t.format_element(&x));
        }
    }
    Ok(part.classes.len())
}

fn transversals() -> Outcome {
    let t = b3();
    let n1 = transversal(&t, &parabolic_by_name(&t, "a").unwrap(), 3)?;
    let t = i2(4);
    let n2 = transversal(&t, &parabolic_by_name(&t, "s").unwrap(), 3)?;
    Ok(format!("B3/a: {n1} classes, I2(4)/s: {n2} classes"))
}

fn automaton_bijection() -> Outcome {
    let mut detail = Vec::new();
    for (t, name) in [(b3(), "a"), (i2(4), "s")] {
        let p = parabolic_by_name(&t, name).unwrap();
        let aut = p.automaton();
        let ball = t.elements_up_to_length(4);
        for n in 0..=4usize {
            let mut image: Vec<Element> = Vec::new();
            for w in aut.enumerate_accepted(n) {
                let x = aut.word_to_element(&t, &w).map_err(|e| e.to_string())?;
                ensure!(x.length() == n as u64, "{name}: {} has length {}", t.format_word(&w), x.length());
                image.push(x);
            }
            let count = image.len();
            image.sort();
            image.dedup();
            ensure!(image.len() == count, "{name}: two accepted words of length {n} agree");
            let mut expected: Vec<Element> =
                ball.iter().filter(|x| x.length() == n as u64 && p.is_hn_reduced(x)).cloned().collect();
            expected.sort();
            ensure!(image == expected, "{name}: level {n} has {} words but {} transversal elements", count, expected.len());
            detail.push(count.to_string());
        }
    }
    Ok(format!("level sizes {}", detail.join(" ")))
}

fn growth() -> Outcome {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    let o = Oracle::new(&t);
    let ball = o.key_ball(5, &mut unlimited()).map_err(|e| e.to_string())?;
    let part = o.brute_coset_partition(&ball, &p, &mut unlimited()).map_err(|e| e.to_string())?;
    let oracle: Vec<BigInt> = part.counts_by_min_length().into_iter().map(BigInt::from).collect();
    let e = transfer_counts(p.automaton(), 5);
    ensure!(e == oracle, "e = {e:?}, oracle = {oracle:?}");
    let s = rational_series(p.automaton()).map_err(|e| e.to_string())?;
    ensure!(s.expand(21) == transfer_counts(p.automaton(), 20), "expansion differs before order 20");

    let z2 = build_free_abelian(2).unwrap();
    let s2 = rational_series(parabolic_by_name(&z2, "x").unwrap().automaton()).map_err(|e| e.to_string())?;
    ensure!(
        s2.numerator == IntPoly::from_i64(&[1, 1]) && s2.denominator == IntPoly::from_i64(&[1, -1]),
        "Z2/x gave {s2}"
    );
    Ok(format!("e(0..5) = {:?}; B3/a: {s}", e.iter().map(BigInt::to_string).collect::<Vec<_>>()))
}

fn unbounded() -> Outcome {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    let mut diameters = Vec::new();
    for k in 1..=4 {
        let cert = p.unbounded_certificate(k, &mut unlimited()).map_err(|e| e.to_string())?;
        ensure!(cert.holds(), "certificate fails at k = {k}: {cert:?}");
        ensure!(p.d_k(k).unwrap().length() == k, "length of d_{k}");
        diameters.push(cert.diameter.to_string());
    }
    Ok(format!("diameters {}", diameters.join(" ")))
}

fn fellow() -> Outcome {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    let mut budget = Budget::from_env();
    let report = p.fellow_projection_audit(2, &mut budget).map_err(|e| e.to_string())?;
    ensure!(!report.budget_exceeded, "budget exhausted after {} nodes", budget.used());
    ensure!(report.k_obs <= FELLOW_BOUND, "K_obs = {}", report.k_obs);
    ensure!(report.passed(), "{}", report.summary(&p));
    Ok(format!("{} alphas, K_obs = {}", report.alphas, report.k_obs))
}

fn submonoid(t: &GarsideTable, p: &ParabolicData<'_>, len: usize) -> Vec<Element> {
    let mut out = vec![Element::identity()];
    let mut layer = vec![Element::identity()];
    for _ in 0..len {
        let mut next = Vec::new();
        for x in &layer {
            for &u in p.div_delta().iter().filter(|&&u| u != SimpleId::UNIT) {
                next.push(t.multiply(x, &t.simple_element(u)));
            }
        }
        next.sort();
        next.dedup();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out.dedup();
    out
}

fn omega_meet_join() -> Result<usize, String> {
    let mut checked = 0;
    for (t, name) in [(b3(), "a"), (i2(5), "s"), (build_braid(4).unwrap(), "ac")] {
        let p = parabolic_by_name(&t, name).unwrap();
        let o = Oracle::new(&t);
        let omega = o.key_of_element(&t.simple_element(p.omega()));
        for b in submonoid(&t, &p, 2) {
            let bk = o.key_of_element(&b);
            ensure!(o.brute_meet(&bk, &omega) == OracleKey::identity(), "{name}: meet with omega at {}", t.format_element(&b));
            let join = o.brute_join(&bk, &omega, 40, &mut unlimited()).map_err(|e| e.to_string())?;
            ensure!(join == o.mul(&bk, &omega), "{name}: join with omega at {}", t.format_element(&b));
            checked += 1;
        }
    }
    Ok(checked)
}

fn conjugates_do_not_shorten() -> Result<usize, String> {
    let t = b3();
    let positives = t.positive_elements_up_to_length(2);
    let mut checked = 0;
    for a in &positives {
        for b1 in &positives {
            for b2 in &positives {
                ensure!(t.multiply_all([b1, a, b2]).length() >= a.length(), "shortened {}", t.format_element(a));
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn shifted_products() -> Result<usize, String> {
    let mut checked = 0;
    for (t, name) in [(b3(), "a"), (i2(4), "s"), (build_braid(4).unwrap(), "ac")] {
        let p = parabolic_by_name(&t, name).unwrap();
        let reduced: Vec<Element> =
            t.positive_elements_up_to_length(2).into_iter().filter(|c| p.is_n_reduced(c).unwrap()).collect();
        for k in 1..=4u64 {
            let dk = p.d_k(k).unwrap();
            let shifted_omega = t.phi_pow(p.omega(), -(k as i64));
            let shifted_delta = t.phi_pow(p.delta_sub(), -(k as i64));
            for c in &reduced {
                let a = t.multiply(&dk, &t.conjugate_by_delta(c, -(k as i64)));
                ensure!(p.is_n_reduced(&a).unwrap(), "{name}: k = {k}, c = {} not reduced", t.format_element(c));
                let hyp = !t.left_divides_positive(c, shifted_omega).unwrap()
                    && t.meet_with_simple(c, shifted_delta).unwrap() == SimpleId::UNIT;
                if hyp {
                    ensure!(a.length() == c.length() + k, "{name}: k = {k}, c = {} length", t.format_element(c));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn orthogonal_forms() -> Result<usize, String> {
    let t = b3();
    let p = parabolic_by_name(&t, "a").unwrap();
    let thetas: Vec<Element> =
        t.positive_elements_up_to_length(3).into_iter().filter(|x| p.is_hn_reduced(x)).collect();
    let betas = p.subgroup_ball(2, &mut unlimited()).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for theta in &thetas {
        for (beta, _) in &betas {
            let (b1, b2) = t.left_orthogonal(beta);
            let (num, den) = t.left_orthogonal(&t.multiply(beta, theta));
            ensure!(num == t.multiply(&b1, theta) && den == b2, "beta = {}, theta = {}", t.format_element(beta), t.format_element(theta));
            checked += 1;
        }
    }
    Ok(checked)
}

fn right_delta_forms() -> Result<usize, String> {
    let mut checked = 0;
    for (t, name) in [(b3(), "a"), (i2(4), "s"), (build_braid(4).unwrap(), "ac")] {
        let p = parabolic_by_name(&t, name).unwrap();
        let delta = t.simple_element(p.delta_sub());
        let thetas: Vec<Element> = t.elements_up_to_length(2).into_iter().filter(|x| p.is_hn_reduced(x)).collect();
        let ns: Vec<Element> = t.positive_elements_up_to_length(2).into_iter().filter(|b| p.in_submonoid(b)).collect();
        for theta in &thetas {
            let (c, minus_p) = t.right_delta_part(theta);
            if minus_p >= 0 {
                continue;
            }
            for b in &ns {
                let (_, power) = t.right_delta_part(&t.multiply(b, theta));
                ensure!(power == minus_p, "{name}: b = {}, theta = {}", t.format_element(b), t.format_element(theta));
                checked += 1;
                if t.multiply(&t.invert(&delta), b).is_positive() {
                    continue;
                }
                for k in 1..=3u64 {
                    let delta_k = t.multiply_all(&vec![delta.clone(); k as usize]);
                    let x = t.multiply(&t.multiply(b, &t.invert(&delta_k)), theta);
                    let expected = t.multiply_all([b, &p.d_k(k).unwrap(), &t.conjugate_by_delta(&c, -(k as i64))]);
                    ensure!(
                        t.right_delta_part(&x) == (expected, minus_p - k as i64),
                        "{name}: b = {}, k = {k}, theta = {}",
                        t.format_element(b),
                        t.format_element(theta)
                    );
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn right_greedy_suffixes() -> Result<usize, String> {
    let t = b3();
    let positives = t.positive_elements_up_to_length(4);
    let right_divides = |a: &Element, b: &Element| t.multiply(b, &t.invert(a)).is_positive();
    let factors = |x: &Element| -> Vec<SimpleId> {
        t.right_greedy_factors(x).unwrap().into_iter().filter(|&u| u != SimpleId::UNIT).collect()
    };
    let suffix = |f: &[SimpleId], i: usize| t.positive_from_simples(&f[f.len() - i..]);
    let mut checked = 0;
    for b in &positives {
        let v = factors(b);
        for a in positives.iter().filter(|a| right_divides(a, b)) {
            let u = factors(a);
            ensure!(u.len() <= v.len(), "{} has more factors than {}", t.format_element(a), t.format_element(b));
            for i in 1..=u.len() {
                ensure!(right_divides(&suffix(&u, i), &suffix(&v, i)), "suffix {i} of {}", t.format_element(a));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn projections_and_min_sets() -> Result<usize, String> {
    let mut checked = 0;
    for (t, name) in [(b3(), "a"), (i2(4), "s")] {
        let p = parabolic_by_name(&t, name).unwrap();
        for x in t.elements_up_to_length(2) {
            let l = p.coset_length(&x).map_err(|e| e.to_string())?;
            let min = p.min_set(&x, 2 * l, &mut unlimited()).map_err(|e| e.to_string())?;
            let proj = p.projection(&x, &mut unlimited()).map_err(|e| e.to_string())?;
            ensure!(proj.members.len() == min.len(), "{name}: sizes differ at {}", t.format_element(&x));
            let mut images: Vec<Element> = min.iter().map(|g| t.multiply(&x, &t.invert(g))).collect();
            images.sort();
            images.dedup();
            ensure!(images.len() == min.len(), "{name}: not injective at {}", t.format_element(&x));
            ensure!(images == proj.members, "{name}: images are not the projection at {}", t.format_element(&x));
            checked += 1;
        }
    }
    Ok(checked)
}

type Sweep = fn() -> Result<usize, String>;

fn property_suite() -> Outcome {
    let parts: [(&str, Sweep); 8] = [
        ("omega meet/join", omega_meet_join),
        ("conjugates", conjugates_do_not_shorten),
        ("shifted products", shifted_products),
        ("orthogonal forms", orthogonal_forms),
        ("right delta forms", right_delta_forms),
        ("right greedy suffixes", right_greedy_suffixes),
        ("projections vs min sets", projections_and_min_sets),
        ("normal form views", views),
    ];
    let mut out = Vec::new();
    for (name, f) in parts {
        out.push(format!("{name} {}", f().map_err(|e| format!("{name}: {e}"))?));
    }
    Ok(out.join(", "))
}

fn views() -> Result<usize, String> {
    let t = b3();
    let mut checked = 0;
    for x in t.elements_up_to_length(3) {
        ensure!(t.invert(&x).length() == x.length(), "length of inverse of {}", t.format_element(&x));
        let (num, den) = t.left_orthogonal(&x);
        ensure!(t.multiply(&t.invert(&den), &num) == x, "left orthogonal of {}", t.format_element(&x));
        let (a, power) = t.right_delta_part(&x);
        ensure!(t.multiply(&a, &Element::delta_pow(power)) == x, "right delta form of {}", t.format_element(&x));
        checked += 1;
    }
    Ok(checked)
}

struct Criterion {
    number: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { number: 1, name: "normal form soundness", limit: Duration::from_secs(10), run: || normal_forms(&b3()) },
        Criterion { number: 2, name: "length formula", limit: Duration::from_secs(60), run: length_formula },
        Criterion { number: 3, name: "coset transversal", limit: Duration::from_secs(60), run: transversals },
        Criterion { number: 4, name: "automaton bijection", limit: Duration::from_secs(30), run: automaton_bijection },
        Criterion { number: 5, name: "growth series", limit: Duration::from_secs(10), run: growth },
        Criterion { number: 6, name: "unbounded projections", limit: Duration::from_secs(120), run: unbounded },
        Criterion { number: 7, name: "fellow projections", limit: Duration::from_secs(600), run: fellow },
        Criterion { number: 8, name: "property suite", limit: Duration::from_secs(120), run: property_suite },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; over the {:?} limit", c.limit)),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS [{}] {} ({:.2?}): {detail}", c.number, c.name, elapsed),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {} ({:.2?}): {why}", c.number, c.name, elapsed);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
