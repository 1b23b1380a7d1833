//! Reid's recipe: carving ratios and characters on edges, markings on vertices.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fan::GHilbFan;
use crate::group::{Character, DiagonalGroup, Monomial};

/// The coprime pair `m1 : m2` whose ratio generates the invariant Laurent
/// monomials vanishing on an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CarvingRatio {
    pub m1: Monomial,
    pub m2: Monomial,
    pub character: Character,
}

impl CarvingRatio {
    /// The ratio as a set, for comparing edges regardless of side.
    pub fn key(&self) -> (Monomial, Monomial) {
        if self.m1 <= self.m2 {
            (self.m1, self.m2)
        } else {
            (self.m2, self.m1)
        }
    }

    /// Exponent vector of `m1 / m2`.
    pub fn exps(&self) -> [i64; 3] {
        let (a, b) = (self.m1.exps(), self.m2.exps());
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    pub fn variable_count(&self) -> usize {
        self.exps().iter().filter(|&&x| x != 0).count()
    }

    /// Both sides are pure powers of single variables.
    pub fn is_pure(&self) -> bool {
        self.m1.is_pure_power() && self.m2.is_pure_power()
    }
}

impl fmt::Display for CarvingRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.m1, self.m2)
    }
}

/// Ratio carving out an interior edge.
pub fn carving_ratio(fan: &GHilbFan, edge: usize) -> Result<CarvingRatio> {
    let e = &fan.edges()[edge];
    if e.boundary {
        return Err(Error::BoundaryEdge(edge));
    }
    let (a, b) = (fan.rays()[e.rays[0]].num, fan.rays()[e.rays[1]].num);
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let g = cross.iter().fold(0i64, |acc, x| acc.gcd(x));
    let prim = cross.map(|x| x / g);
    let group = fan.group();
    let k = (1..=i64::from(group.order()))
        .find(|&k| group.is_invariant(prim.map(|x| x * k)))
        .expect("|G| times any vector is invariant");
    let n = prim.map(|x| x * k);
    let pos = Monomial(n.map(|x| x.max(0) as u32));
    let neg = Monomial(n.map(|x| (-x).max(0) as u32));
    let first = (0..3).find(|&i| n[i] != 0).expect("edge rays are independent");
    let (m1, m2) = if n[first] > 0 { (pos, neg) } else { (neg, pos) };
    let character = group.kappa_monomial(&m1);
    assert_eq!(character, group.kappa_monomial(&m2), "carving sides differ in character");
    Ok(CarvingRatio { m1, m2, character })
}

pub fn edge_character(fan: &GHilbFan, edge: usize) -> Result<Character> {
    carving_ratio(fan, edge).map(|r| r.character)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexCase {
    /// Three lines from the corners meet at the vertex.
    Case1,
    /// The vertex lies on one line from a corner; the valency is 4, 5 or 6.
    Case2 { valency: u8 },
    /// Three straight lines cross at the vertex.
    Case3,
    /// A junior point on the boundary of the simplex (not a corner).
    Boundary,
    Corner,
}

impl fmt::Display for VertexCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexCase::Case1 => write!(f, "case1"),
            VertexCase::Case2 { valency } => write!(f, "case2/{valency}"),
            VertexCase::Case3 => write!(f, "case3"),
            VertexCase::Boundary => write!(f, "boundary"),
            VertexCase::Corner => write!(f, "corner"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Marking {
    None,
    Single(Character),
    Pair(Character, Character),
}

impl Marking {
    pub fn characters(&self) -> Vec<Character> {
        match *self {
            Marking::None => vec![],
            Marking::Single(c) => vec![c],
            Marking::Pair(a, b) => vec![a, b],
        }
    }
}

/// Ratios of all interior edges, `None` on the boundary.
pub fn all_ratios(fan: &GHilbFan) -> Result<Vec<Option<CarvingRatio>>> {
    (0..fan.edges().len())
        .map(|e| {
            if fan.edges()[e].boundary {
                Ok(None)
            } else {
                carving_ratio(fan, e).map(Some)
            }
        })
        .collect()
}

fn describe(fan: &GHilbFan, ratios: &[Option<CarvingRatio>], ray: usize) -> String {
    let list: Vec<String> = fan
        .edges_at(ray)
        .filter_map(|e| ratios[e].map(|r| r.to_string()))
        .collect();
    format!("{} with edges [{}]", fan.rays()[ray], list.join(", "))
}

/// Two edges with equal ratio at `ray` must also be geometrically straight through it.
fn assert_straight(fan: &GHilbFan, ray: usize, e1: usize, e2: usize) {
    let other = |e: usize| {
        let r = fan.edges()[e].rays;
        if r[0] == ray {
            r[1]
        } else {
            r[0]
        }
    };
    let v = fan.rays()[ray].num;
    let (u, w) = (fan.rays()[other(e1)].num, fan.rays()[other(e2)].num);
    let a = [u[0] - v[0], u[1] - v[1]];
    let b = [w[0] - v[0], w[1] - v[1]];
    assert_eq!(a[0] * b[1] - a[1] * b[0], 0, "edges with equal ratio are not collinear");
    assert!(a[0] * b[0] + a[1] * b[1] < 0, "edges with equal ratio point the same way");
}

fn analyse_vertex(fan: &GHilbFan, ratios: &[Option<CarvingRatio>], ray: usize) -> Result<(VertexCase, Marking)> {
    let point = fan.rays()[ray];
    if point.is_corner() {
        return Ok((VertexCase::Corner, Marking::None));
    }
    if point.on_boundary() {
        return Ok((VertexCase::Boundary, Marking::None));
    }
    let g = fan.group();
    let incident: Vec<usize> = fan.edges_at(ray).collect();
    let ratio = |e: usize| ratios[e].expect("edges at an interior vertex are interior");
    let mut groups: BTreeMap<(Monomial, Monomial), Vec<usize>> = BTreeMap::new();
    for &e in &incident {
        groups.entry(ratio(e).key()).or_default().push(e);
    }
    if groups.values().any(|v| v.len() > 2) {
        return Err(Error::UnclassifiableVertex(describe(fan, ratios, ray)));
    }
    let lines: Vec<&Vec<usize>> = groups.values().filter(|v| v.len() == 2).collect();
    for l in &lines {
        assert_straight(fan, ray, l[0], l[1]);
    }
    let corner_lines: Vec<&&Vec<usize>> = lines.iter().filter(|l| ratio(l[0]).variable_count() == 2).collect();
    let valency = incident.len();
    let unclassifiable = || Error::UnclassifiableVertex(describe(fan, ratios, ray));

    if valency == 3 && lines.is_empty() {
        let c = ratio(incident[0]).character;
        if incident.iter().any(|&e| ratio(e).character != c || !ratio(e).is_pure() || ratio(e).variable_count() != 2) {
            return Err(unclassifiable());
        }
        return Ok((VertexCase::Case1, Marking::Single(g.mul(c, c))));
    }

    if corner_lines.len() == 1 && (4..=6).contains(&valency) {
        let line = ratio(corner_lines[0][0]);
        let others: Vec<usize> = incident.iter().copied().filter(|&e| ratio(e).key() != line.key()).collect();
        let mut count: BTreeMap<Character, usize> = BTreeMap::new();
        for &e in &others {
            *count.entry(ratio(e).character).or_default() += 1;
        }
        let twice: Vec<Character> = count.iter().filter(|(_, &n)| n == 2).map(|(c, _)| *c).collect();
        if twice.len() != 1 {
            return Err(Error::RecipeInconsistency(format!(
                "no unique character marks two non-line edges at {}",
                describe(fan, ratios, ray)
            )));
        }
        let chi_prime = twice[0];
        // the doubled character is that of the power of the missing variable
        // that appears alone on one side
        let w = (0..3).find(|&i| line.exps()[i] == 0).expect("corner line omits a variable");
        let alone: Vec<u32> = others
            .iter()
            .flat_map(|&e| [ratio(e).m1, ratio(e).m2])
            .filter(|m| m.is_pure_power() && m.0[w] > 0)
            .map(|m| m.0[w])
            .collect();
        if alone.len() != 2 || alone[0] != alone[1] {
            return Err(Error::RecipeInconsistency(format!(
                "pure powers of the missing variable do not pair up at {}",
                describe(fan, ratios, ray)
            )));
        }
        let mut wk = [0i64; 3];
        wk[w] = i64::from(alone[0]);
        if g.kappa(wk) != chi_prime {
            return Err(Error::RecipeInconsistency(format!(
                "doubled character disagrees with the lone power at {}",
                describe(fan, ratios, ray)
            )));
        }
        return Ok((
            VertexCase::Case2 { valency: valency as u8 },
            Marking::Single(g.mul(line.character, chi_prime)),
        ));
    }

    if lines.len() == 3 && valency == 6 && lines.iter().all(|l| ratio(l[0]).variable_count() == 3) {
        return case_three(g, lines.iter().map(|l| ratio(l[0])).collect(), || describe(fan, ratios, ray));
    }

    Err(unclassifiable())
}

/// Lines `x^i : y^m z^n`, `y^j : x^p z^q`, `z^k : x^r y^s` give the characters
/// `kappa(x^i z^q)` and `kappa(x^i y^s)`, each computed three ways.
fn case_three(
    g: &DiagonalGroup,
    lines: Vec<CarvingRatio>,
    describe: impl Fn() -> String,
) -> Result<(VertexCase, Marking)> {
    let mut by_var: [Option<(i64, [i64; 3])>; 3] = [None; 3];
    for l in lines {
        let (pure, mixed) = if l.m1.is_pure_power() { (l.m1, l.m2) } else { (l.m2, l.m1) };
        if !pure.is_pure_power() || mixed.is_pure_power() {
            return Err(Error::UnclassifiableVertex(describe()));
        }
        let o = pure.support().next().expect("nonempty");
        if by_var[o].is_some() {
            return Err(Error::UnclassifiableVertex(describe()));
        }
        by_var[o] = Some((i64::from(pure.0[o]), mixed.exps()));
    }
    let [Some((i, xm)), Some((j, ym)), Some((k, zm))] = by_var else {
        return Err(Error::UnclassifiableVertex(describe()));
    };
    let (m, n) = (xm[1], xm[2]);
    let (p, q) = (ym[0], ym[2]);
    let (r, s) = (zm[0], zm[1]);
    let first = [g.kappa([i, 0, q]), g.kappa([r, j, 0]), g.kappa([0, m, k])];
    let second = [g.kappa([i, s, 0]), g.kappa([p, 0, k]), g.kappa([0, j, n])];
    if first.iter().any(|c| *c != first[0]) || second.iter().any(|c| *c != second[0]) {
        return Err(Error::RecipeInconsistency(format!(
            "three-line expressions disagree at {}",
            describe()
        )));
    }
    Ok((VertexCase::Case3, Marking::Pair(first[0], second[0])))
}

pub fn classify_fan_vertex(fan: &GHilbFan, ray: usize) -> Result<VertexCase> {
    let ratios = all_ratios(fan)?;
    analyse_vertex(fan, &ratios, ray).map(|v| v.0)
}

pub fn vertex_marking(fan: &GHilbFan, ray: usize) -> Result<Marking> {
    let ratios = all_ratios(fan)?;
    analyse_vertex(fan, &ratios, ray).map(|v| v.1)
}

/// The exponent `r'` for which the three ratios, each taken in one of its two
/// orientations, multiply to `(xyz)^{r'}` with `r' >= 0`.
pub fn ratio_triangle_defect(ratios: [&CarvingRatio; 3]) -> Result<u32> {
    let v = ratios.map(|r| r.exps());
    let mut found: Option<i64> = None;
    for signs in 0..8u32 {
        let s = [0, 1, 2].map(|i| if signs >> i & 1 == 1 { -1 } else { 1 });
        let sum: [i64; 3] = [0, 1, 2].map(|c| (0..3).map(|i| s[i] * v[i][c]).sum());
        if sum[0] == sum[1] && sum[1] == sum[2] && sum[0] >= 0 {
            match found {
                Some(k) if k != sum[0] => {
                    return Err(Error::RecipeInconsistency(format!(
                        "ratios {}, {}, {} multiply to two different powers of xyz",
                        ratios[0], ratios[1], ratios[2]
                    )))
                }
                _ => found = Some(sum[0]),
            }
        }
    }
    found.map(|k| k as u32).ok_or(Error::NoOrientationWorks)
}

/// [`ratio_triangle_defect`] for the three edges of a maximal cone.
pub fn regular_triangle_defect(fan: &GHilbFan, cone: usize) -> Result<u32> {
    let [a, b, c] = fan.cones()[cone].rays;
    let edges = [[a, b], [a, c], [b, c]].map(|[u, v]| fan.edge_between(u, v).expect("cone edges exist"));
    let r0 = carving_ratio(fan, edges[0])?;
    let r1 = carving_ratio(fan, edges[1])?;
    let r2 = carving_ratio(fan, edges[2])?;
    ratio_triangle_defect([&r0, &r1, &r2])
}

/// How a nontrivial character appears in the recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkingClass {
    Trivial,
    Divisor(usize),
    OneCurve(usize),
    SeveralCurves(Vec<usize>),
}

impl MarkingClass {
    pub fn name(&self) -> &'static str {
        match self {
            MarkingClass::Trivial => "trivial",
            MarkingClass::Divisor(_) => "divisor",
            MarkingClass::OneCurve(_) => "one-curve",
            MarkingClass::SeveralCurves(_) => "several-curves",
        }
    }
}

/// The whole marked triangulation.
#[derive(Debug, Clone)]
pub struct MarkedTriangulation {
    /// Per edge, `None` for boundary edges.
    pub ratios: Vec<Option<CarvingRatio>>,
    /// Per ray.
    pub vertices: Vec<(VertexCase, Marking)>,
}

impl MarkedTriangulation {
    pub fn build(fan: &GHilbFan) -> Result<MarkedTriangulation> {
        let ratios = all_ratios(fan)?;
        let vertices = (0..fan.rays().len())
            .map(|r| analyse_vertex(fan, &ratios, r))
            .collect::<Result<_>>()?;
        Ok(MarkedTriangulation { ratios, vertices })
    }

    pub fn edge_character(&self, edge: usize) -> Option<Character> {
        self.ratios[edge].map(|r| r.character)
    }

    pub fn curves_marked(&self, c: Character) -> Vec<usize> {
        (0..self.ratios.len())
            .filter(|&e| self.edge_character(e) == Some(c))
            .collect()
    }

    pub fn divisors_marked(&self, c: Character) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&r| self.vertices[r].1.characters().contains(&c))
            .collect()
    }

    /// Classify every character, checking that no character both marks a
    /// divisor and a curve, that none marks two divisors, and that every
    /// nontrivial character is used.
    pub fn marking_classes(&self, g: &DiagonalGroup) -> Result<Vec<MarkingClass>> {
        g.characters()
            .map(|c| {
                let divs = self.divisors_marked(c);
                let curves = self.curves_marked(c);
                let bad = |what: &str| Err(Error::RecipeInconsistency(format!("{} {what}", g.label(c))));
                if c == Character::TRIVIAL {
                    return if divs.is_empty() && curves.is_empty() {
                        Ok(MarkingClass::Trivial)
                    } else {
                        bad("is trivial but marks something")
                    };
                }
                match (divs.as_slice(), curves.len()) {
                    ([d], 0) => Ok(MarkingClass::Divisor(*d)),
                    ([], 1) => Ok(MarkingClass::OneCurve(curves[0])),
                    ([], n) if n >= 2 => Ok(MarkingClass::SeveralCurves(curves)),
                    ([], _) => bad("marks nothing"),
                    ([_], _) => bad("marks both a divisor and a curve"),
                    _ => bad("marks several divisors"),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::WeightVector;

    fn fan(s: &str) -> GHilbFan {
        GHilbFan::build(&s.parse().unwrap()).unwrap()
    }

    fn ray(f: &GHilbFan, num: [i64; 3]) -> usize {
        let den = i64::from(f.group().order());
        f.ray_index(&WeightVector { num, den }).unwrap()
    }

    fn edge(f: &GHilbFan, a: [i64; 3], b: [i64; 3]) -> usize {
        f.edge_between(ray(f, a), ray(f, b)).unwrap()
    }

    #[test]
    fn carving_ratio_examples() {
        let f = fan("3:1,1,1");
        let r = carving_ratio(&f, edge(&f, [1, 1, 1], [0, 0, 3])).unwrap();
        assert_eq!(r.to_string(), "x:y");
        let f = fan("6:1,2,3");
        let r = carving_ratio(&f, edge(&f, [1, 2, 3], [2, 4, 0])).unwrap();
        assert_eq!(r.to_string(), "x^2:y");
        let f = fan("4:1,1,2");
        let r = carving_ratio(&f, edge(&f, [1, 1, 2], [4, 0, 0])).unwrap();
        assert_eq!(r.to_string(), "y^2:z");
    }

    #[test]
    fn edge_characters() {
        let f = fan("3:1,1,1");
        for e in f.interior_edges() {
            assert_eq!(edge_character(&f, e), Ok(Character(1)));
        }
        let f = fan("4:1,1,2");
        assert_eq!(edge_character(&f, edge(&f, [1, 1, 2], [2, 2, 0])), Ok(Character(1)));
        assert_eq!(edge_character(&f, edge(&f, [1, 1, 2], [4, 0, 0])), Ok(Character(2)));
    }

    #[test]
    fn vertex_cases_and_markings() {
        let f = fan("3:1,1,1");
        let c = ray(&f, [1, 1, 1]);
        assert_eq!(classify_fan_vertex(&f, c), Ok(VertexCase::Case1));
        assert_eq!(vertex_marking(&f, c), Ok(Marking::Single(Character(2))));
        let f = fan("4:1,1,2");
        let p = ray(&f, [1, 1, 2]);
        assert_eq!(classify_fan_vertex(&f, p), Ok(VertexCase::Case2 { valency: 4 }));
        assert_eq!(vertex_marking(&f, p), Ok(Marking::Single(Character(3))));
        let q = ray(&f, [2, 2, 0]);
        assert_eq!(classify_fan_vertex(&f, q), Ok(VertexCase::Boundary));
    }

    #[test]
    fn trivial_group_has_no_interior_vertices() {
        let f = fan("1:0,0,0");
        let m = MarkedTriangulation::build(&f).unwrap();
        assert!(m.vertices.iter().all(|v| v.0 == VertexCase::Corner));
    }

    #[test]
    fn triangle_defects() {
        let g: DiagonalGroup = "3:1,1,1".parse().unwrap();
        let mk = |a: &str, b: &str| {
            let m1: Monomial = a.parse().unwrap();
            CarvingRatio {
                m1,
                m2: b.parse().unwrap(),
                character: g.kappa_monomial(&m1),
            }
        };
        let (a, b, c) = (mk("x", "y"), mk("y", "z"), mk("z", "x"));
        assert_eq!(ratio_triangle_defect([&a, &b, &c]), Ok(0));
        let (a, b, c) = (mk("x", "y"), mk("y", "z"), mk("x", "z^2"));
        assert_eq!(ratio_triangle_defect([&a, &b, &c]), Err(Error::NoOrientationWorks));
    }

    #[test]
    fn several_curve_markers_of_order_four() {
        let g: DiagonalGroup = "4:1,1,2".parse().unwrap();
        let f = GHilbFan::build(&g).unwrap();
        let m = MarkedTriangulation::build(&f).unwrap();
        let classes = m.marking_classes(&g).unwrap();
        assert_eq!(classes[0], MarkingClass::Trivial);
        assert!(matches!(classes[1], MarkingClass::SeveralCurves(_)));
        assert!(matches!(classes[2], MarkingClass::SeveralCurves(_)));
        assert!(matches!(classes[3], MarkingClass::Divisor(_)));
    }
}
