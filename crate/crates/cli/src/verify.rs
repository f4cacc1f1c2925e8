//! Oracle agreement checks run by `verify`.

use std::collections::HashMap;

use garside::oracle::Oracle;
use garside::providers::validate_table;
use garside::{rational_series, transfer_counts, Budget, Element, GarsideTable, Letter, ParabolicData, Result};
use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

/// Radii for word, ball and partition checks. Large tables get smaller
/// radii because the rewriting oracle slows down quickly there.
struct Radii {
    words: usize,
    ball: u64,
    partition: u64,
}

fn radii(t: &GarsideTable, level: Level) -> Radii {
    let small = t.generators().count() <= 10;
    match (level, small) {
        (Level::Quick, true) => Radii { words: 3, ball: 3, partition: 2 },
        (Level::Quick, false) => Radii { words: 2, ball: 1, partition: 1 },
        (Level::Full, true) => Radii { words: 4, ball: 4, partition: 3 },
        (Level::Full, false) => Radii { words: 2, ball: 2, partition: 1 },
    }
}

pub struct Check {
    pub name: String,
    pub outcome: std::result::Result<String, String>,
}

fn check(name: impl Into<String>, outcome: std::result::Result<String, String>) -> Check {
    Check { name: name.into(), outcome }
}

/// Runs every check on `t` and the given parabolics. Budget errors are
/// returned as errors, mismatches as failed checks.
pub fn run(t: &GarsideTable, parabolics: &[ParabolicData<'_>], level: Level, budget: &mut Budget) -> Result<Vec<Check>> {
    let r = radii(t, level);
    let o = Oracle::new(t);
    let mut out = Vec::new();

    let violations = validate_table(t);
    out.push(check(
        "table axioms",
        if violations.is_empty() {
            Ok(format!("{} simples", t.len()))
        } else {
            Err(format!("{} violations, first: {}", violations.len(), violations[0]))
        },
    ));

    out.push(check(format!("normal forms, words <= {}", r.words), normal_forms(t, &o, r.words, budget)?));

    let ball = o.key_ball(r.ball, budget)?;
    let mismatch = ball.keys().iter().find(|k| Some(o.to_element(k).length()) != ball.distance(k));
    out.push(check(
        format!("lengths, radius {}", r.ball),
        match mismatch {
            None => Ok(format!("{} elements", ball.len())),
            Some(k) => Err(format!("length of {} differs from its distance", t.format_element(&o.to_element(k)))),
        },
    ));

    let ball = o.key_ball(r.partition, budget)?;
    for p in parabolics {
        let name = t.simple_name(p.delta_sub());
        let part = o.brute_coset_partition(&ball, p, budget)?;
        let mut rep_of_class: HashMap<usize, Element> = HashMap::new();
        let mut class_of_rep: HashMap<Element, usize> = HashMap::new();
        let mut failure = None;
        for k in ball.keys() {
            let x = o.to_element(k);
            let rep = p.coset_representative(&x)?.rep;
            let class = part.class_of(k).expect("every ball key is classified");
            let consistent = rep_of_class.entry(class).or_insert_with(|| rep.clone()) == &rep
                && class_of_rep.entry(rep.clone()).or_insert(class) == &class
                && p.coset_length(&x)? == part.classes[class].min_length;
            if !consistent && failure.is_none() {
                failure = Some(t.format_element(&x));
            }
        }
        out.push(check(
            format!("transversal {name}, radius {}", r.partition),
            match (failure, part.length_mismatches) {
                (None, 0) => Ok(format!("{} classes", part.classes.len())),
                (Some(x), _) => Err(format!("representative disagrees with the partition at {x}")),
                (None, n) => Err(format!("{n} subgroup length mismatches")),
            },
        ));

        let oracle: Vec<BigInt> = part.counts_by_min_length().into_iter().map(BigInt::from).collect();
        let e = transfer_counts(p.automaton(), r.partition as usize);
        out.push(check(
            format!("coset counts {name}"),
            if e == oracle { Ok(join(&e)) } else { Err(format!("automaton {} vs oracle {}", join(&e), join(&oracle))) },
        ));

        let series = rational_series(p.automaton());
        out.push(check(
            format!("series {name}"),
            match series {
                Ok(s) if s.expand(40) == transfer_counts(p.automaton(), 39) => Ok(format!("order {}", s.order())),
                Ok(_) => Err("expansion differs from the transfer counts".into()),
                Err(e) => Err(e.to_string()),
            },
        ));
    }
    Ok(out)
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")
}

fn normal_forms(
    t: &GarsideTable,
    o: &Oracle<'_>,
    max_len: usize,
    budget: &mut Budget,
) -> Result<std::result::Result<String, String>> {
    let alphabet = garside::cosets::all_letters(t);
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut seen = 1usize;
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        budget.spend(next.len())?;
        for w in &next {
            let x = t.normalize(w)?;
            if !t.is_left_normal(x.body()) || o.key_of_element(&x) != o.key_of_word(w) {
                return Ok(Err(format!("{} normalizes to {}", t.format_word(w), t.format_element(&x))));
            }
        }
        seen += next.len();
        layer = next;
    }
    Ok(Ok(format!("{seen} words")))
}
