//! JSON documents for fans, markings, sink-source graphs and reports.
//!
//! Rationals are written as `"num/den"` strings.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use mckay_core::ggraph::GGraph;
use mckay_core::quiver::Orientation;
use mckay_core::recipe::Marking;
use mckay_core::sinksource::ShapeLengths;
use mckay_core::transform::{Cell, CharacterReport, ShapeReport};
use mckay_core::{Analysis, Character, DiagonalGroup, GHilbFan, Monomial, Rational, WeightVector};
use serde::{Deserialize, Serialize};

pub fn rational(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let (n, d) = s.split_once('/').ok_or_else(|| anyhow!("rational `{s}` is not num/den"))?;
    let d: i64 = d.trim().parse()?;
    if d == 0 {
        bail!("zero denominator in `{s}`");
    }
    Ok(Rational::new(n.trim().parse()?, d))
}

fn coords(w: &WeightVector) -> [String; 3] {
    w.coords().map(rational)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FanDoc {
    pub group: String,
    pub order: u32,
    pub rays: Vec<[String; 3]>,
    pub cones: Vec<ConeDoc>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConeDoc {
    pub ray_indices: [usize; 3],
    /// Character index to monomial.
    pub ggraph: BTreeMap<u32, String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeDoc {
    pub ray_indices: [usize; 2],
    pub adjacent_cones: Vec<usize>,
    pub boundary: bool,
}

pub fn fan_doc(fan: &GHilbFan) -> FanDoc {
    FanDoc {
        group: fan.group().to_string(),
        order: fan.group().order(),
        rays: fan.rays().iter().map(coords).collect(),
        cones: fan
            .cones()
            .iter()
            .map(|c| ConeDoc {
                ray_indices: c.rays,
                ggraph: c
                    .ggraph
                    .reps()
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (i as u32, m.to_string()))
                    .collect(),
            })
            .collect(),
        edges: fan
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                ray_indices: e.rays,
                adjacent_cones: e.cones.clone(),
                boundary: e.boundary,
            })
            .collect(),
    }
}

/// Rebuild and revalidate a fan from its document.
pub fn fan_from_doc(doc: &FanDoc) -> Result<GHilbFan> {
    let group: DiagonalGroup = doc.group.parse()?;
    let rays = doc
        .rays
        .iter()
        .map(|r| {
            let c = [parse_rational(&r[0])?, parse_rational(&r[1])?, parse_rational(&r[2])?];
            Ok(WeightVector::from_rationals(&group, c)?)
        })
        .collect::<Result<Vec<_>>>()?;
    if rays.is_empty() {
        bail!("fan has no rays");
    }
    let mut cones = Vec::with_capacity(doc.cones.len());
    for c in &doc.cones {
        let mut reps = vec![Monomial::ONE; group.order() as usize];
        for (&k, m) in &c.ggraph {
            let slot = reps.get_mut(k as usize).ok_or_else(|| anyhow!("character {k} out of range"))?;
            *slot = m.parse()?;
        }
        let gg = GGraph::new(&group, reps).ok_or_else(|| anyhow!("cone {:?} carries an invalid G-graph", c.ray_indices))?;
        let mut r = [rays[0]; 3];
        for (slot, &i) in r.iter_mut().zip(&c.ray_indices) {
            *slot = *rays.get(i).ok_or_else(|| anyhow!("ray index {i} out of range"))?;
        }
        cones.push((r, gg));
    }
    let fan = GHilbFan::from_parts(group, cones)?;
    let again = fan_doc(&fan);
    if again.rays != doc.rays || again.edges != doc.edges {
        bail!("rays or edges in the document disagree with the rebuilt fan");
    }
    Ok(fan)
}

pub fn fan_json(fan: &GHilbFan) -> String {
    serde_json::to_string_pretty(&fan_doc(fan)).expect("serializable") + "\n"
}

pub fn fan_from_json(s: &str) -> Result<GHilbFan> {
    let doc: FanDoc = serde_json::from_str(s).context("fan JSON")?;
    fan_from_doc(&doc)
}

fn label(g: &DiagonalGroup, c: Character) -> String {
    g.label(c)
}

fn marking_labels(g: &DiagonalGroup, m: &Marking) -> Vec<String> {
    m.characters().into_iter().map(|c| label(g, c)).collect()
}

#[derive(Debug, Serialize)]
pub struct MarkedEdgeDoc {
    pub ray_indices: [usize; 2],
    pub ratio: String,
    pub character: String,
}

#[derive(Debug, Serialize)]
pub struct MarkedVertexDoc {
    pub ray: usize,
    pub coords: [String; 3],
    pub case: String,
    pub marking: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct MarkingDoc {
    pub group: String,
    pub edges: Vec<MarkedEdgeDoc>,
    pub vertices: Vec<MarkedVertexDoc>,
    pub classes: BTreeMap<String, String>,
}

pub fn marking_doc(a: &Analysis) -> MarkingDoc {
    let g = &a.group;
    MarkingDoc {
        group: g.to_string(),
        edges: a
            .fan
            .edges()
            .iter()
            .zip(&a.marked.ratios)
            .filter_map(|(e, r)| {
                r.map(|r| MarkedEdgeDoc {
                    ray_indices: e.rays,
                    ratio: r.to_string(),
                    character: label(g, r.character),
                })
            })
            .collect(),
        vertices: a
            .marked
            .vertices
            .iter()
            .enumerate()
            .filter(|(r, _)| !a.fan.rays()[*r].is_corner())
            .map(|(r, (case, m))| MarkedVertexDoc {
                ray: r,
                coords: coords(&a.fan.rays()[r]),
                case: case.to_string(),
                marking: marking_labels(g, m),
            })
            .collect(),
        classes: g
            .characters()
            .zip(&a.classes)
            .map(|(c, k)| (label(g, c), k.name().to_string()))
            .collect(),
    }
}

#[derive(Debug, Serialize)]
pub struct LineDoc {
    pub orientation: String,
    pub forward: bool,
    pub source: String,
    pub end: String,
    pub length: usize,
}

#[derive(Debug, Serialize)]
pub struct SinkSourceDoc {
    pub ray: usize,
    pub coords: [String; 3],
    pub case: String,
    pub shape: Option<String>,
    pub lengths: Option<BTreeMap<String, i64>>,
    pub classes: BTreeMap<String, String>,
    pub charge_lines: Vec<LineDoc>,
    pub charge_loops: Vec<Vec<String>>,
}

pub fn lengths_map(l: &ShapeLengths) -> BTreeMap<String, i64> {
    let pairs: Vec<(&str, i64)> = match *l {
        ShapeLengths::A { a, b, c } => vec![("a", a), ("b", b), ("c", c)],
        ShapeLengths::B { a, b, c, a1, b1, .. } => vec![("a", a), ("b", b), ("c", c), ("a1", a1), ("b1", b1)],
        ShapeLengths::C {
            a,
            b,
            c,
            a2,
            a3,
            b2,
            b3,
            c2,
            c3,
        } => vec![
            ("a", a),
            ("b", b),
            ("c", c),
            ("a2", a2),
            ("a3", a3),
            ("b2", b2),
            ("b3", b3),
            ("c2", c2),
            ("c3", c3),
        ],
    };
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn sink_source_docs(a: &Analysis) -> Vec<SinkSourceDoc> {
    let g = &a.group;
    a.fan
        .exceptional()
        .map(|r| {
            let s = a.data.graphs[r].as_ref().expect("exceptional");
            SinkSourceDoc {
                ray: r,
                coords: coords(&a.fan.rays()[r]),
                case: a.marked.vertices[r].0.to_string(),
                shape: s.shape().ok().map(|x| x.to_string()),
                lengths: s.shape_lengths(g).ok().as_ref().map(lengths_map),
                classes: g
                    .characters()
                    .map(|c| (label(g, c), s.class(c).to_string()))
                    .collect(),
                charge_lines: s
                    .lines
                    .iter()
                    .map(|l| LineDoc {
                        orientation: l.orientation.to_string(),
                        forward: l.forward,
                        source: label(g, l.source),
                        end: label(g, l.end),
                        length: l.length,
                    })
                    .collect(),
                charge_loops: s
                    .cycles
                    .iter()
                    .map(|(_, cyc)| cyc.iter().map(|&c| label(g, c)).collect())
                    .collect(),
            }
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct QuiverDoc {
    pub group: String,
    pub vertices: Vec<QuiverVertexDoc>,
    pub arrows: Vec<QuiverArrowDoc>,
    pub triangles: usize,
}

#[derive(Debug, Serialize)]
pub struct QuiverVertexDoc {
    pub character: String,
    pub position: [i64; 2],
}

#[derive(Debug, Serialize)]
pub struct QuiverArrowDoc {
    pub tail: String,
    pub head: String,
    pub orientation: String,
    /// Divisors (ray indices) along which the arrow vanishes.
    pub vanishes_on: Vec<usize>,
}

pub fn quiver_doc(a: &Analysis) -> QuiverDoc {
    let g = &a.group;
    let q = &a.data.quiver;
    QuiverDoc {
        group: g.to_string(),
        vertices: g
            .characters()
            .map(|c| QuiverVertexDoc {
                character: label(g, c),
                position: q.positions[c.index()],
            })
            .collect(),
        arrows: q
            .arrows
            .iter()
            .map(|ar| QuiverArrowDoc {
                tail: label(g, ar.tail),
                head: label(g, ar.head(g)),
                orientation: ar.orientation.to_string(),
                vanishes_on: a.data.vanishing_set(ar.tail, ar.orientation.index()).into_iter().collect(),
            })
            .collect(),
        triangles: q.triangles.len(),
    }
}

fn cell_name(a: &Analysis, c: &Cell) -> String {
    match *c {
        Cell::Divisor(r) => format!("E{}", a.fan.rays()[r]),
        Cell::Curve(e) => {
            let [u, v] = a.fan.edges()[e].rays;
            format!("C[{}, {}]", a.fan.rays()[u], a.fan.rays()[v])
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ProfileDoc {
    pub char: String,
    pub marking_class: String,
    pub degree: i8,
    pub descriptor: String,
    pub components: Vec<String>,
    pub expected_degree: i8,
    pub expected: Vec<String>,
    pub pass: bool,
}

pub fn profile_doc(a: &Analysis, r: &CharacterReport) -> ProfileDoc {
    ProfileDoc {
        char: label(&a.group, r.character),
        marking_class: r.class.name().to_string(),
        degree: r.profile.degree,
        descriptor: r.profile.descriptor().to_string(),
        components: r.profile.components.iter().map(|c| cell_name(a, c)).collect(),
        expected_degree: r.expected_degree,
        expected: r.expected.iter().map(|c| cell_name(a, c)).collect(),
        pass: r.pass,
    }
}

#[derive(Debug, Serialize)]
pub struct DivisorReportDoc {
    pub ray: usize,
    pub coords: [String; 3],
    pub case: String,
    pub shape: Option<String>,
    pub lengths: Option<BTreeMap<String, i64>>,
    pub failed_checks: Vec<String>,
    pub pass: bool,
}

fn divisor_report(a: &Analysis, s: &ShapeReport) -> DivisorReportDoc {
    DivisorReportDoc {
        ray: s.ray,
        coords: coords(&a.fan.rays()[s.ray]),
        case: s.case.to_string(),
        shape: s.shape.map(|x| x.to_string()),
        lengths: s.lengths.as_ref().map(lengths_map),
        failed_checks: s.checks.iter().filter(|c| !c.1).map(|c| c.0.clone()).collect(),
        pass: s.pass(),
    }
}

#[derive(Debug, Serialize)]
pub struct PropertyDoc {
    pub name: String,
    pub failure: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub characters: usize,
    pub characters_passed: usize,
    pub divisors: usize,
    pub divisors_passed: usize,
    pub properties_passed: usize,
    pub properties: usize,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub order: u32,
    pub per_character: Vec<ProfileDoc>,
    pub per_divisor: Vec<DivisorReportDoc>,
    pub properties: Vec<PropertyDoc>,
    pub summary: Summary,
}

pub fn verify_report(a: &Analysis) -> VerifyReport {
    let per_character: Vec<ProfileDoc> = a.theorem.iter().map(|r| profile_doc(a, r)).collect();
    let per_divisor: Vec<DivisorReportDoc> = a.shapes.iter().map(|s| divisor_report(a, s)).collect();
    let properties: Vec<PropertyDoc> = a
        .property_checks()
        .into_iter()
        .map(|p| PropertyDoc {
            name: p.name.to_string(),
            failure: p.failure,
        })
        .collect();
    let summary = Summary {
        characters: per_character.len(),
        characters_passed: per_character.iter().filter(|p| p.pass).count(),
        divisors: per_divisor.len(),
        divisors_passed: per_divisor.iter().filter(|p| p.pass).count(),
        properties: properties.len(),
        properties_passed: properties.iter().filter(|p| p.failure.is_none()).count(),
        pass: per_character.iter().all(|p| p.pass)
            && per_divisor.iter().all(|p| p.pass)
            && properties.iter().all(|p| p.failure.is_none()),
    };
    VerifyReport {
        group: a.group.to_string(),
        order: a.group.order(),
        per_character,
        per_divisor,
        properties,
        summary,
    }
}

/// Transform profiles, optionally for a single character index.
pub fn transforms_doc(a: &Analysis, only: Option<u32>) -> Result<Vec<ProfileDoc>> {
    if let Some(k) = only {
        if k >= a.group.order() {
            bail!("character index {k} out of range for a group of order {}", a.group.order());
        }
    }
    Ok(a
        .theorem
        .iter()
        .filter(|r| only.is_none_or(|k| r.character.0 == k))
        .map(|r| profile_doc(a, r))
        .collect())
}

pub fn orientation_colour(o: Orientation) -> &'static str {
    match o {
        Orientation::X => "red",
        Orientation::Y => "darkgreen",
        Orientation::Z => "blue",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_round_trip() {
        for r in [Rational::new(1, 3), Rational::from_integer(0), Rational::new(5, 4)] {
            assert_eq!(parse_rational(&rational(r)).unwrap(), r);
        }
        assert_eq!(rational(Rational::from_integer(1)), "1/1");
        assert!(parse_rational("3").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn fan_round_trip_is_byte_identical() {
        for s in ["3:1,1,1", "13:1,5,7", "2:1,1,0+2:0,1,1"] {
            let fan = GHilbFan::build(&s.parse().unwrap()).unwrap();
            let text = fan_json(&fan);
            let back = fan_from_json(&text).unwrap();
            assert_eq!(fan_json(&back), text);
        }
    }

    #[test]
    fn tampered_fan_is_rejected() {
        let fan = GHilbFan::build(&"3:1,1,1".parse().unwrap()).unwrap();
        let mut doc = fan_doc(&fan);
        doc.cones.pop();
        assert!(fan_from_doc(&doc).is_err());
    }
}
