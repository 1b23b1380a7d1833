//! Supports of the transforms of the skyscraper sheaves twisted by characters,
//! computed from arrow vanishing, and the checks tying them to Reid's recipe.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::fan::GHilbFan;
use crate::group::{Character, Monomial};
use crate::quiver::{Quiver, VanishingTable, VertexClass};
use crate::recipe::{MarkedTriangulation, MarkingClass, VertexCase};
use crate::sinksource::{Shape, ShapeLengths, SinkSourceGraph};

/// A torus-invariant subvariety of the resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    /// Divisor of a ray.
    Divisor(usize),
    /// Curve of an edge.
    Curve(usize),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Divisor(r) => write!(f, "E{r}"),
            Cell::Curve(e) => write!(f, "C{e}"),
        }
    }
}

/// Vanishing tables for every ray and sink-source graphs for every exceptional ray.
#[derive(Debug, Clone)]
pub struct DivisorData {
    pub quiver: Quiver,
    pub tables: Vec<VanishingTable>,
    pub graphs: Vec<Option<SinkSourceGraph>>,
}

impl DivisorData {
    pub fn new(fan: &GHilbFan) -> Result<DivisorData> {
        let g = fan.group();
        let quiver = Quiver::new(g);
        let tables = (0..fan.rays().len())
            .map(|r| VanishingTable::new(fan, &quiver, r))
            .collect::<Result<Vec<_>>>()?;
        let graphs = (0..fan.rays().len())
            .map(|r| {
                if fan.rays()[r].is_corner() {
                    Ok(None)
                } else {
                    SinkSourceGraph::new(g, &tables[r]).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorData { quiver, tables, graphs })
    }

    /// Rays along which the arrow with tail `c` and orientation `o` vanishes.
    pub fn vanishing_set(&self, c: Character, o: usize) -> BTreeSet<usize> {
        (0..self.tables.len())
            .filter(|&r| self.tables[r].vanishes[c.index()][o])
            .collect()
    }

    fn exceptional_with(&self, pred: impl Fn(&VertexClass) -> bool, c: Character) -> Vec<usize> {
        (0..self.graphs.len())
            .filter(|&r| self.graphs[r].as_ref().is_some_and(|s| pred(&s.class(c))))
            .collect()
    }
}

/// Degree 0 support: cells on which all three arrows leaving `c` vanish.
/// A divisor counts when all three vanish along it; a curve when each arrow
/// vanishes along one of its two divisors but no divisor carries all three.
pub fn support_h0(fan: &GHilbFan, data: &DivisorData, c: Character) -> Result<Vec<Cell>> {
    let g = fan.group();
    let b: [BTreeSet<usize>; 3] = [0, 1, 2].map(|o| data.vanishing_set(c, o));
    let in_all = |r: &usize| b.iter().all(|s| s.contains(r));
    let divisors: Vec<usize> = (0..fan.rays().len()).filter(in_all).collect();
    let mut curves = Vec::new();
    for (ei, e) in fan.edges().iter().enumerate() {
        let [u, v] = e.rays;
        if b.iter().all(|s| s.contains(&u) || s.contains(&v)) && !in_all(&u) && !in_all(&v) {
            curves.push(ei);
        }
    }
    for &d in &divisors {
        if fan.rays()[d].is_corner() {
            return Err(Error::UnexpectedSupport(format!(
                "{} vanishes on the corner divisor {}",
                g.label(c),
                fan.rays()[d]
            )));
        }
    }
    for &e in &curves {
        if fan.edges()[e].boundary {
            return Err(Error::UnexpectedSupport(format!(
                "{} vanishes on the non-compact curve {:?}",
                g.label(c),
                fan.edges()[e].rays
            )));
        }
    }
    for (ci, cone) in fan.cones().iter().enumerate() {
        let meets = b.iter().all(|s| cone.rays.iter().any(|r| s.contains(r)));
        if !meets {
            continue;
        }
        let [p, q, r] = cone.rays;
        let cone_edges = [[p, q], [p, r], [q, r]].map(|[u, v]| fan.edge_between(u, v).expect("cone edge"));
        let covered = cone.rays.iter().any(|r| divisors.contains(r)) || cone_edges.iter().any(|e| curves.contains(e));
        if !covered {
            return Err(Error::UnexpectedSupport(format!(
                "{} vanishes at the isolated point of cone {ci}",
                g.label(c)
            )));
        }
    }
    let sinks = data.exceptional_with(|k| *k == VertexClass::Sink30, c);
    if sinks != divisors {
        return Err(Error::CrossCheckFailed(format!(
            "{}: divisors {divisors:?} from vanishing sets, (3,0)-sinks at {sinks:?}",
            g.label(c)
        )));
    }
    Ok(divisors
        .into_iter()
        .map(Cell::Divisor)
        .chain(curves.into_iter().map(Cell::Curve))
        .collect())
}

/// Degree -1 support: exceptional divisors on which `c` is a source.
pub fn support_h1(data: &DivisorData, c: Character) -> Vec<Cell> {
    data.exceptional_with(VertexClass::is_source, c)
        .into_iter()
        .map(Cell::Divisor)
        .collect()
}

/// Degree -2 support: every exceptional divisor for the trivial character.
pub fn support_h2(fan: &GHilbFan, c: Character) -> Vec<Cell> {
    if c != Character::TRIVIAL {
        return Vec::new();
    }
    fan.exceptional().map(Cell::Divisor).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformProfile {
    pub character: Character,
    /// 0, -1 or -2.
    pub degree: i8,
    pub components: Vec<Cell>,
}

impl TransformProfile {
    pub fn descriptor(&self) -> &'static str {
        match self.degree {
            0 => "L^-1 (x) O_D",
            -1 => "H^-1 on divisors",
            _ => "O_Y(Exc) (x) O_Exc[2]",
        }
    }
}

fn connected(fan: &GHilbFan, cells: &[Cell]) -> bool {
    let rays_of = |c: &Cell| -> Vec<usize> {
        match *c {
            Cell::Divisor(r) => vec![r],
            Cell::Curve(e) => fan.edges()[e].rays.to_vec(),
        }
    };
    let touch = |a: &Cell, b: &Cell| {
        let (ra, rb) = (rays_of(a), rays_of(b));
        if ra.iter().any(|r| rb.contains(r)) {
            return true;
        }
        // two divisors meet along the curve of an edge
        matches!((a, b), (Cell::Divisor(u), Cell::Divisor(v)) if fan.edge_between(*u, *v).is_some())
    };
    if cells.is_empty() {
        return true;
    }
    let mut seen = vec![false; cells.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..cells.len() {
            if !seen[j] && touch(&cells[i], &cells[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn transform_profile(fan: &GHilbFan, data: &DivisorData, c: Character) -> Result<TransformProfile> {
    if fan.group().order() == 1 {
        return Err(Error::NoExceptionalLocus);
    }
    let supports = [
        (0, support_h0(fan, data, c)?),
        (-1, support_h1(data, c)),
        (-2, support_h2(fan, c)),
    ];
    let nonempty: Vec<&(i8, Vec<Cell>)> = supports.iter().filter(|s| !s.1.is_empty()).collect();
    let (degree, components) = match nonempty.as_slice() {
        [] => return Err(Error::EmptySupport(c.0)),
        [one] => (one.0, one.1.clone()),
        _ => return Err(Error::MultiDegreeSupport(c.0)),
    };
    if !connected(fan, &components) {
        return Err(Error::DisconnectedSupport(c.0));
    }
    Ok(TransformProfile {
        character: c,
        degree,
        components,
    })
}

#[derive(Debug, Clone)]
pub struct CharacterReport {
    pub character: Character,
    pub class: MarkingClass,
    pub profile: TransformProfile,
    pub expected_degree: i8,
    pub expected: Vec<Cell>,
    pub pass: bool,
}

/// Compare every transform profile with the prediction from the markings.
pub fn verify_reids_recipe_theorem(
    fan: &GHilbFan,
    marked: &MarkedTriangulation,
    classes: &[MarkingClass],
    profiles: &[TransformProfile],
) -> Vec<CharacterReport> {
    classes
        .iter()
        .zip(profiles)
        .map(|(class, profile)| {
            let (expected_degree, mut expected) = match class {
                MarkingClass::Trivial => (-2, fan.exceptional().map(Cell::Divisor).collect()),
                MarkingClass::Divisor(r) => (0, vec![Cell::Divisor(*r)]),
                MarkingClass::OneCurve(e) => (0, vec![Cell::Curve(*e)]),
                MarkingClass::SeveralCurves(_) => (-1, divisors_with_two_marked_curves(fan, marked, profile.character)),
            };
            expected.sort();
            let mut got = profile.components.clone();
            got.sort();
            CharacterReport {
                character: profile.character,
                class: class.clone(),
                profile: profile.clone(),
                expected_degree,
                pass: expected_degree == profile.degree && expected == got,
                expected,
            }
        })
        .collect()
}

/// Exceptional divisors containing at least two curves marked by `c`.
pub fn divisors_with_two_marked_curves(fan: &GHilbFan, marked: &MarkedTriangulation, c: Character) -> Vec<Cell> {
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for e in marked.curves_marked(c) {
        for r in fan.edges()[e].rays {
            *count.entry(r).or_default() += 1;
        }
    }
    count
        .into_iter()
        .filter(|&(r, k)| k >= 2 && !fan.rays()[r].is_corner())
        .map(|(r, _)| Cell::Divisor(r))
        .collect()
}

#[derive(Debug, Clone)]
pub struct ShapeReport {
    pub ray: usize,
    pub case: VertexCase,
    pub shape: Option<Shape>,
    pub lengths: Option<ShapeLengths>,
    /// Named checks with their outcome.
    pub checks: Vec<(String, bool)>,
}

impl ShapeReport {
    pub fn pass(&self) -> bool {
        self.shape.is_some() && self.checks.iter().all(|c| c.1)
    }
}

fn pow(o: usize, k: i64) -> Monomial {
    let mut e = [0u32; 3];
    e[o] = k as u32;
    Monomial(e)
}

fn key(a: Monomial, b: Monomial) -> (Monomial, Monomial) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Predicted coordinates `|G| e` and incident carving ratios of a divisor from its shape.
pub fn predicted_from_lengths(n: i64, lengths: &ShapeLengths) -> ([i64; 3], Vec<(Monomial, Monomial)>) {
    match *lengths {
        ShapeLengths::A { a, b, c } => {
            let (x, y, z) = (pow(0, a), pow(1, b), pow(2, c));
            ([b * c, a * c, a * b], vec![key(x, y), key(y, z), key(z, x)])
        }
        ShapeLengths::B {
            rotation,
            a,
            b,
            c,
            a1,
            b1,
        } => {
            let w = rotation.index();
            let x = rotation.next().index();
            let y = rotation.next().next().index();
            let mono = |parts: &[(usize, i64)]| {
                parts.iter().fold(Monomial::ONE, |m, &(o, k)| m.mul(&pow(o, k)))
            };
            let mut coords = [0; 3];
            coords[x] = b * c;
            coords[y] = a * c;
            coords[w] = n - b * c - a * c;
            let mut ratios = vec![key(pow(x, a), pow(y, b)); 2];
            if a1 % a == 0 {
                ratios.push(key(pow(y, b + b1), pow(w, c)));
            } else {
                ratios.push(key(pow(y, b + b1), mono(&[(w, c), (x, (-a1).rem_euclid(a))])));
                ratios.push(key(pow(w, c), mono(&[(x, a1.rem_euclid(a)), (y, b1)])));
            }
            if b1 % b == 0 {
                ratios.push(key(pow(x, a + a1), pow(w, c)));
            } else {
                ratios.push(key(pow(x, a + a1), mono(&[(w, c), (y, (-b1).rem_euclid(b))])));
                ratios.push(key(pow(w, c), mono(&[(x, a1), (y, b1.rem_euclid(b))])));
            }
            (coords, ratios)
        }
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
        } => {
            let coords = [b * c3 + b2 * c - b2 * c3, a * c2 + a3 * c - a3 * c2, a * b3 + a2 * b - a2 * b3];
            let r1 = key(pow(0, a), pow(1, b2).mul(&pow(2, c3)));
            let r2 = key(pow(1, b), pow(0, a3).mul(&pow(2, c2)));
            let r3 = key(pow(2, c), pow(0, a2).mul(&pow(1, b3)));
            (coords, vec![r1, r1, r2, r2, r3, r3])
        }
    }
}

/// Check shape against case, coordinates against lengths, and predicted
/// against computed carving ratios for an interior divisor.
pub fn verify_shape_correspondence(
    fan: &GHilbFan,
    marked: &MarkedTriangulation,
    graph: &SinkSourceGraph,
) -> ShapeReport {
    let ray = graph.ray;
    let g = fan.group();
    let case = marked.vertices[ray].0;
    let mut report = ShapeReport {
        ray,
        case,
        shape: graph.shape().ok(),
        lengths: None,
        checks: Vec::new(),
    };
    let Some(shape) = report.shape else {
        return report;
    };
    let case_ok = matches!(
        (shape, case),
        (Shape::A, VertexCase::Case1) | (Shape::B(_), VertexCase::Case2 { .. }) | (Shape::C, VertexCase::Case3)
    );
    report.checks.push((format!("shape {shape} matches {case}"), case_ok));
    let lengths = match graph.shape_lengths(g) {
        Ok(l) => l,
        Err(e) => {
            report.checks.push((format!("lengths: {e}"), false));
            return report;
        }
    };
    report.lengths = Some(lengths);
    let (coords, mut predicted) = predicted_from_lengths(i64::from(g.order()), &lengths);
    let actual = fan.rays()[ray].num;
    report
        .checks
        .push((format!("coordinates {coords:?} = {actual:?}"), coords == actual));
    let mut incident: Vec<(Monomial, Monomial)> = fan
        .edges_at(ray)
        .filter_map(|e| marked.ratios[e].map(|r| r.key()))
        .collect();
    incident.sort();
    predicted.sort();
    report.checks.push(("incident carving ratios".into(), predicted == incident));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DiagonalGroup;
    use crate::lattice::WeightVector;

    struct Setup {
        fan: GHilbFan,
        data: DivisorData,
    }

    fn setup(s: &str) -> Setup {
        let g: DiagonalGroup = s.parse().unwrap();
        let fan = GHilbFan::build(&g).unwrap();
        let data = DivisorData::new(&fan).unwrap();
        Setup { fan, data }
    }

    fn ray(f: &GHilbFan, num: [i64; 3]) -> usize {
        let den = i64::from(f.group().order());
        f.ray_index(&WeightVector { num, den }).unwrap()
    }

    #[test]
    fn supports_of_one_third() {
        let s = setup("3:1,1,1");
        let e = Cell::Divisor(ray(&s.fan, [1, 1, 1]));
        assert_eq!(support_h0(&s.fan, &s.data, Character(2)), Ok(vec![e]));
        assert_eq!(support_h0(&s.fan, &s.data, Character(1)), Ok(vec![]));
        assert_eq!(support_h1(&s.data, Character(1)), vec![e]);
        assert_eq!(support_h1(&s.data, Character(0)), vec![]);
        assert_eq!(support_h2(&s.fan, Character(0)), vec![e]);
        assert_eq!(support_h2(&s.fan, Character(1)), vec![]);
        let degrees: Vec<i8> = (0..3)
            .map(|c| transform_profile(&s.fan, &s.data, Character(c)).unwrap().degree)
            .collect();
        assert_eq!(degrees, vec![-2, -1, 0]);
    }

    #[test]
    fn supports_of_order_four() {
        let s = setup("4:1,1,2");
        let p = Cell::Divisor(ray(&s.fan, [1, 1, 2]));
        let q = Cell::Divisor(ray(&s.fan, [2, 2, 0]));
        assert_eq!(support_h0(&s.fan, &s.data, Character(3)), Ok(vec![p]));
        assert_eq!(support_h1(&s.data, Character(1)), vec![p]);
        let mut all = support_h2(&s.fan, Character(0));
        all.sort();
        let mut want = vec![p, q];
        want.sort();
        assert_eq!(all, want);
        for c in [1, 2] {
            let t = transform_profile(&s.fan, &s.data, Character(c)).unwrap();
            assert_eq!((t.degree, t.components), (-1, vec![p]));
        }
    }

    #[test]
    fn trivial_group_has_no_profiles() {
        let s = setup("1:0,0,0");
        assert_eq!(
            transform_profile(&s.fan, &s.data, Character(0)),
            Err(Error::NoExceptionalLocus)
        );
    }

    #[test]
    fn shape_predictions_for_a() {
        let (coords, ratios) = predicted_from_lengths(3, &ShapeLengths::A { a: 1, b: 1, c: 1 });
        assert_eq!(coords, [1, 1, 1]);
        assert_eq!(ratios.len(), 3);
    }
}
