//! One PASS/FAIL line per acceptance criterion, over the whole corpus.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mckay_core::corpus::full_corpus;
use mckay_core::ggraph::{cone_inequalities, enumerate_ggraphs, MinimalMonomials};
use mckay_core::lattice::junior_points;
use mckay_core::quiver::Quiver;
use mckay_core::recipe::{Marking, MarkingClass, VertexCase};
use mckay_core::sinksource::Shape;
use mckay_core::transform::Cell;
use mckay_core::{Analysis, Character, DiagonalGroup, WeightVector};
use rayon::prelude::*;

struct Run {
    name: String,
    elapsed: Duration,
    result: Result<Analysis, String>,
}

fn analyse(name: &str) -> Run {
    let start = Instant::now();
    let result = name
        .parse::<DiagonalGroup>()
        .map_err(|e| e.to_string())
        .and_then(|g| Analysis::run(&g).map_err(|e| e.to_string()));
    Run {
        name: name.to_string(),
        elapsed: start.elapsed(),
        result,
    }
}

/// First failure over all groups, or `None`.
fn first_failure(runs: &[Run], f: impl Fn(&Analysis) -> Option<String> + Sync) -> Option<String> {
    runs.par_iter()
        .filter_map(|r| match &r.result {
            Err(e) => Some(format!("{}: {e}", r.name)),
            Ok(a) => f(a).map(|m| format!("{}: {m}", r.name)),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .next()
}

fn report(ok: &mut bool, n: u32, title: &str, failure: Option<String>, detail: String) {
    match failure {
        None => println!("PASS criterion {n}: {title} ({detail})"),
        Some(f) => {
            *ok = false;
            println!("FAIL criterion {n}: {title} ({f})");
        }
    }
}

fn ray(a: &Analysis, num: [i64; 3]) -> usize {
    let den = i64::from(a.group.order());
    a.fan.ray_index(&WeightVector { num, den }).expect("junior point")
}

fn one_third() -> Result<(), String> {
    let a = Analysis::run(&"3:1,1,1".parse().unwrap()).map_err(|e| e.to_string())?;
    let centre = ray(&a, [1, 1, 1]);
    let curves = a.marked.curves_marked(Character(1));
    if curves.len() != 3 {
        return Err(format!("χ1 marks {} curves", curves.len()));
    }
    if a.marked.vertices[centre] != (VertexCase::Case1, Marking::Single(Character(2))) {
        return Err(format!("centre is {:?}", a.marked.vertices[centre]));
    }
    let got: Vec<(i8, Vec<Cell>)> = a.profiles.iter().map(|p| (p.degree, p.components.clone())).collect();
    let e = vec![Cell::Divisor(centre)];
    if got != vec![(-2, e.clone()), (-1, e.clone()), (0, e)] {
        return Err(format!("profiles {got:?}"));
    }
    Ok(())
}

fn order_four() -> Result<(), String> {
    let a = Analysis::run(&"4:1,1,2".parse().unwrap()).map_err(|e| e.to_string())?;
    let p = ray(&a, [1, 1, 2]);
    let q = ray(&a, [2, 2, 0]);
    if a.marked.vertices[p].0 != (VertexCase::Case2 { valency: 4 }) {
        return Err(format!("P is {:?}", a.marked.vertices[p]));
    }
    let shape = a.data.graphs[p].as_ref().unwrap().shape();
    if !matches!(shape, Ok(Shape::B(_))) {
        return Err(format!("P has shape {shape:?}"));
    }
    if a.classes[3] != MarkingClass::Divisor(p) || a.profiles[3].components != vec![Cell::Divisor(p)] || a.profiles[3].degree != 0 {
        return Err("χ3 is not the divisor marker of P".into());
    }
    for c in [1, 2] {
        let prof = &a.profiles[c];
        if prof.degree != -1 || prof.components != vec![Cell::Divisor(p)] {
            return Err(format!("χ{c}: {prof:?}"));
        }
    }
    let mut zero = a.profiles[0].components.clone();
    zero.sort();
    let mut want = vec![Cell::Divisor(p), Cell::Divisor(q)];
    want.sort();
    if a.profiles[0].degree != -2 || zero != want {
        return Err(format!("χ0: {:?}", a.profiles[0]));
    }
    Ok(())
}

fn main() -> ExitCode {
    let names = full_corpus(30);
    let start = Instant::now();
    let runs: Vec<Run> = names.par_iter().map(|n| analyse(n)).collect();
    let total = start.elapsed();
    let slowest_30 = runs
        .iter()
        .filter(|r| r.name.starts_with("30:"))
        .map(|r| r.elapsed)
        .max()
        .unwrap_or_default();
    let mut ok = true;

    // 1
    let characters: usize = runs.iter().filter_map(|r| r.result.as_ref().ok()).map(|a| a.theorem.len()).sum();
    let failure = first_failure(&runs, |a| {
        a.theorem.iter().find(|r| !r.pass).map(|r| {
            format!(
                "{} ({}) has degree {} on {:?}, expected {} on {:?}",
                a.group.label(r.character),
                r.class.name(),
                r.profile.degree,
                r.profile.components,
                r.expected_degree,
                r.expected
            )
        })
    });
    report(
        &mut ok,
        1,
        "transform degree and support match the marking class",
        failure,
        format!(
            "{} groups, {characters} characters, {:.2}s total, slowest r=30 group {:.3}s",
            runs.len(),
            total.as_secs_f64(),
            slowest_30.as_secs_f64()
        ),
    );

    // 2
    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    for a in runs.iter().filter_map(|r| r.result.as_ref().ok()) {
        for s in &a.shapes {
            let tag = match s.shape {
                Some(Shape::A) => "A",
                Some(Shape::B(_)) => "B",
                Some(Shape::C) => "C",
                None => "none",
            };
            *histogram.entry(tag.into()).or_default() += 1;
        }
    }
    let failure = first_failure(&runs, |a| {
        a.shapes.iter().find(|s| !s.pass()).map(|s| {
            format!(
                "ray {} ({}, shape {:?}): {:?}",
                a.fan.rays()[s.ray],
                s.case,
                s.shape,
                s.checks.iter().filter(|c| !c.1).collect::<Vec<_>>()
            )
        })
    });
    let failure = failure.or_else(|| {
        (!["A", "B", "C"].iter().all(|k| histogram.contains_key(*k))).then(|| format!("shapes seen: {histogram:?}"))
    });
    report(
        &mut ok,
        2,
        "shape, case, coordinates and carving ratios agree on interior divisors",
        failure,
        format!("interior divisors by shape {histogram:?}"),
    );

    // 3
    let failure = first_failure(&runs, |a| a.vanishing_counts_check().failure);
    report(&mut ok, 3, "vanishing counts equal |G| e on every divisor", failure, "all rays".into());

    // 4
    let failure = first_failure(&runs, |a| {
        let n = a.group.order() as usize;
        let q = Quiver::new(&a.group);
        let graphs = a.fan.cones().len();
        (graphs != n || q.triangles.len() != 2 * n || q.arrows.len() != 3 * n)
            .then(|| format!("{graphs} cones, {} triangles", q.triangles.len()))
    })
    .or_else(|| {
        let g: DiagonalGroup = "13:1,5,7".parse().unwrap();
        let a = Analysis::run(&g).ok()?;
        let q = Quiver::new(&g);
        let counts = (q.positions.len(), q.arrows.len(), q.triangles.len(), a.fan.rays().len());
        (counts != (13, 39, 26, 9)).then(|| format!("1/13(1,5,7) counts {counts:?}"))
    });
    report(
        &mut ok,
        4,
        "G-graphs, cones and triangles counted by |G|; 1/13(1,5,7) has 13, 39, 26, 9",
        failure,
        "all groups".into(),
    );

    // 5
    let failure = one_third()
        .map_err(|e| format!("1/3(1,1,1): {e}"))
        .and_then(|_| order_four().map_err(|e| format!("1/4(1,1,2): {e}")))
        .err();
    report(&mut ok, 5, "hand fixtures 1/3(1,1,1) and 1/4(1,1,2)", failure, "golden values".into());

    // 6
    let failure = first_failure(&runs, |a| {
        a.property_checks()
            .into_iter()
            .find(|c| !c.pass())
            .map(|c| format!("{}: {}", c.name, c.failure.unwrap_or_default()))
    });
    report(&mut ok, 6, "property suites", failure, "12 property families".into());

    // 7
    let failure = first_failure(&runs, |a| {
        let g = &a.group;
        let mins = MinimalMonomials::new(g);
        let graphs = enumerate_ggraphs(g, &mins).ok()?;
        let pts = junior_points(g);
        for gg in graphs {
            let ineq = cone_inequalities(&mins, &gg);
            let mut inside: Vec<WeightVector> = pts
                .iter()
                .filter(|p| ineq.iter().all(|n| p.pair_num(*n) >= 0))
                .copied()
                .collect();
            inside.sort();
            let mut expected: Vec<WeightVector> = match a.fan.cones().iter().find(|c| c.ggraph == gg) {
                Some(c) => c.rays.iter().map(|&r| a.fan.rays()[r]).collect(),
                None => return Some("a G-graph has no cone".into()),
            };
            expected.sort();
            if inside != expected {
                return Some(format!("junior points {inside:?} satisfy the system, cone rays {expected:?}"));
            }
        }
        None
    });
    report(
        &mut ok,
        7,
        "cones agree with brute-force junior point membership",
        failure,
        "every G-graph".into(),
    );

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
