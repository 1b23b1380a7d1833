//! The McKay quiver, its torus embedding and the vanishing of arrows along
//! exceptional divisors.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fan::GHilbFan;
use crate::group::{Character, DiagonalGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    X,
    Y,
    Z,
}

impl Orientation {
    pub const ALL: [Orientation; 3] = [Orientation::X, Orientation::Y, Orientation::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Orientation {
        Orientation::ALL[i]
    }

    /// Cyclic successor `x -> y -> z -> x`.
    pub fn next(self) -> Orientation {
        Orientation::from_index((self.index() + 1) % 3)
    }

    pub fn others(self) -> [Orientation; 2] {
        [self.next(), self.next().next()]
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self.index()]
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The arrow from `tail` to `kappa(x_o) * tail`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub tail: Character,
    pub orientation: Orientation,
}

impl Arrow {
    pub fn head(&self, g: &DiagonalGroup) -> Character {
        g.mul(g.kappa_var(self.orientation.index()), self.tail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    /// Arrows in the order x, y, z.
    Xyz,
    /// Arrows in the order x, z, y.
    Xzy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    pub chirality: Chirality,
    pub arrows: [Arrow; 3],
}

#[derive(Debug, Clone)]
pub struct Quiver {
    pub arrows: Vec<Arrow>,
    pub triangles: Vec<Triangle>,
    /// Torus position of each character in the basis `u_0, u_120` of the plane,
    /// reduced into the fundamental box of the lattice `period`.
    pub positions: Vec<[i64; 2]>,
    /// Rows spanning the image of `M`; positions are taken modulo it.
    pub period: [[i64; 2]; 2],
}

/// Image of an exponent vector in the plane: `a u_0 + b u_120 + c u_240`
/// with `u_240 = -u_0 - u_120`.
pub fn planar(exps: [i64; 3]) -> [i64; 2] {
    [exps[0] - exps[2], exps[1] - exps[2]]
}

fn hermite_2d(rows: &[[i64; 2]]) -> [[i64; 2]; 2] {
    let mut a: Vec<[i64; 2]> = rows.to_vec();
    // first column
    loop {
        let nz: Vec<usize> = (0..a.len()).filter(|&i| a[i][0] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| a[i][0].abs()).unwrap();
        for &i in &nz {
            if i != p {
                let q = Integer::div_floor(&a[i][0], &a[p][0]);
                a[i] = [a[i][0] - q * a[p][0], a[i][1] - q * a[p][1]];
            }
        }
    }
    let p = (0..a.len()).find(|&i| a[i][0] != 0).expect("rank 2");
    let mut top = a.remove(p);
    if top[0] < 0 {
        top = [-top[0], -top[1]];
    }
    let d = a.iter().fold(0i64, |acc, r| acc.gcd(&r[1]));
    assert!(d > 0, "rank 2");
    top[1] = top[1].rem_euclid(d);
    [top, [0, d]]
}

impl Quiver {
    pub fn new(g: &DiagonalGroup) -> Quiver {
        let n = g.order();
        let mut arrows = Vec::with_capacity(3 * n as usize);
        for c in g.characters() {
            for o in Orientation::ALL {
                arrows.push(Arrow {
                    tail: c,
                    orientation: o,
                });
            }
        }
        let mut triangles = Vec::with_capacity(2 * n as usize);
        for c in g.characters() {
            for (chirality, order) in [
                (Chirality::Xyz, [Orientation::X, Orientation::Y, Orientation::Z]),
                (Chirality::Xzy, [Orientation::X, Orientation::Z, Orientation::Y]),
            ] {
                let mut t = c;
                let tri = order.map(|o| {
                    let a = Arrow {
                        tail: t,
                        orientation: o,
                    };
                    t = a.head(g);
                    a
                });
                assert_eq!(t, c, "xyz is invariant so each triangle closes");
                triangles.push(Triangle { chirality, arrows: tri });
            }
        }
        let m = g.invariant_lattice_basis();
        let period = hermite_2d(&m.map(planar));
        assert_eq!(period[0][0] * period[1][1], i64::from(n));
        let mut positions = vec![[0, 0]; n as usize];
        for p in 0..period[0][0] {
            for q in 0..period[1][1] {
                positions[g.kappa([p, q, 0]).index()] = [p, q];
            }
        }
        Quiver {
            arrows,
            triangles,
            positions,
            period,
        }
    }

    /// Reduce a plane point into the fundamental box of the period lattice.
    pub fn reduce(&self, p: [i64; 2]) -> [i64; 2] {
        let [[a, b], [_, d]] = self.period;
        let k = Integer::div_floor(&p[0], &a);
        let q = p[1] - k * b;
        [p[0] - k * a, q.rem_euclid(d)]
    }
}

/// For one exceptional divisor: which arrows vanish along it.
#[derive(Debug, Clone)]
pub struct VanishingTable {
    pub ray: usize,
    /// `vanishes[chi][o]`: the arrow with tail `chi` and orientation `o` vanishes.
    pub vanishes: Vec<[bool; 3]>,
}

/// Multiplicity of the divisor of `ray` in the vanishing locus of an arrow:
/// `e(x_o) + e(r_tail) - e(r_head)`, the same on every chart containing the ray.
pub fn arrow_vanishing_order(fan: &GHilbFan, arrow: Arrow, ray: usize) -> Result<u8> {
    let g = fan.group();
    let head = arrow.head(g);
    let e = &fan.rays()[ray];
    let mut first = None;
    for &ci in fan.cones_at(ray) {
        let gg = &fan.cones()[ci].ggraph;
        let v = e.num[arrow.orientation.index()] + e.pair_num(gg.rep(arrow.tail).exps())
            - e.pair_num(gg.rep(head).exps());
        match first {
            None => first = Some(v),
            Some(w) if w != v => {
                return Err(Error::InconsistentCharts {
                    character: arrow.tail.0,
                    ray,
                })
            }
            _ => {}
        }
    }
    let v = first.expect("every ray lies in a cone");
    if v == 0 {
        Ok(0)
    } else if v == e.den {
        Ok(1)
    } else {
        Err(Error::MultiplicityOutOfRange {
            character: arrow.tail.0,
            ray,
            value: crate::Rational::new(v, e.den).to_string(),
        })
    }
}

impl VanishingTable {
    /// Compute and check that each quiver triangle has exactly one vanishing arrow.
    pub fn new(fan: &GHilbFan, quiver: &Quiver, ray: usize) -> Result<VanishingTable> {
        let g = fan.group();
        let mut vanishes = vec![[false; 3]; g.order() as usize];
        for a in &quiver.arrows {
            vanishes[a.tail.index()][a.orientation.index()] = arrow_vanishing_order(fan, *a, ray)? == 1;
        }
        let table = VanishingTable { ray, vanishes };
        for t in &quiver.triangles {
            let k = t.arrows.iter().filter(|a| table.vanishes_arrow(a)).count();
            if k != 1 {
                return Err(Error::InvalidSpokePattern(format!(
                    "triangle at {} has {k} vanishing arrows along ray {ray}",
                    g.label(t.arrows[0].tail)
                )));
            }
        }
        Ok(table)
    }

    pub fn vanishes_arrow(&self, a: &Arrow) -> bool {
        self.vanishes[a.tail.index()][a.orientation.index()]
    }

    /// Vanishing of the outgoing and incoming spokes at `c`.
    pub fn spokes(&self, g: &DiagonalGroup, c: Character) -> Spokes {
        let mut s = Spokes::default();
        for o in Orientation::ALL {
            s.out[o.index()] = self.vanishes[c.index()][o.index()];
            let tail = g.mul(g.inv(g.kappa_var(o.index())), c);
            s.inc[o.index()] = self.vanishes[tail.index()][o.index()];
        }
        s
    }

    /// Number of vanishing arrows of each orientation.
    pub fn counts(&self) -> [i64; 3] {
        let mut out = [0; 3];
        for row in &self.vanishes {
            for o in 0..3 {
                out[o] += i64::from(row[o]);
            }
        }
        out
    }
}

/// Numbers of vanishing x-, y- and z-arrows along the divisor of `ray`.
pub fn vanishing_counts(fan: &GHilbFan, ray: usize) -> Result<[i64; 3]> {
    let q = Quiver::new(fan.group());
    Ok(VanishingTable::new(fan, &q, ray)?.counts())
}

/// Which of the six arrows at a vertex vanish.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Spokes {
    pub out: [bool; 3],
    pub inc: [bool; 3],
}

impl fmt::Display for Spokes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for o in Orientation::ALL {
            if self.out[o.index()] {
                parts.push(format!("out-{o}"));
            }
        }
        for o in Orientation::ALL {
            if self.inc[o.index()] {
                parts.push(format!("in-{o}"));
            }
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SourceKind {
    /// A single vanishing outgoing spoke.
    TwoOne,
    /// A single vanishing incoming spoke.
    OneTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChargeKind {
    /// Two outgoing spokes vanish; lies on a line running along the arrows.
    OneZero,
    /// Two incoming spokes vanish; lies on a line running against the arrows.
    ZeroOne,
}

/// The eighteen possible local pictures at a quiver vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    Sink30,
    Sink03,
    Source33,
    Source(Orientation, SourceKind),
    Charge(Orientation, ChargeKind),
    Tile(Orientation),
}

impl VertexClass {
    pub fn is_source(&self) -> bool {
        matches!(self, VertexClass::Source33 | VertexClass::Source(..))
    }

    pub fn is_charge(&self) -> bool {
        matches!(self, VertexClass::Charge(..))
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::Sink30 => write!(f, "sink(3,0)"),
            VertexClass::Sink03 => write!(f, "sink(0,3)"),
            VertexClass::Source33 => write!(f, "source(3,3)"),
            VertexClass::Source(o, SourceKind::TwoOne) => write!(f, "{o}-source(2,1)"),
            VertexClass::Source(o, SourceKind::OneTwo) => write!(f, "{o}-source(1,2)"),
            VertexClass::Charge(o, ChargeKind::OneZero) => write!(f, "{o}-charge(1,0)"),
            VertexClass::Charge(o, ChargeKind::ZeroOne) => write!(f, "{o}-charge(0,1)"),
            VertexClass::Tile(o) => write!(f, "{o}-tile"),
        }
    }
}

/// Decode a spoke pattern. Each triangle has one vanishing arrow, which rules
/// out every pattern containing `out-a` and `in-b` with `a != b`; the eighteen
/// remaining patterns are the classes.
pub fn classify_spokes(s: &Spokes) -> Result<VertexClass> {
    let outs: Vec<Orientation> = Orientation::ALL.into_iter().filter(|o| s.out[o.index()]).collect();
    let ins: Vec<Orientation> = Orientation::ALL.into_iter().filter(|o| s.inc[o.index()]).collect();
    let missing = |v: &[Orientation]| {
        Orientation::ALL
            .into_iter()
            .find(|o| !v.contains(o))
            .expect("two of three")
    };
    Ok(match (outs.as_slice(), ins.as_slice()) {
        ([], []) => VertexClass::Source33,
        ([_, _, _], []) => VertexClass::Sink30,
        ([], [_, _, _]) => VertexClass::Sink03,
        ([a], []) => VertexClass::Source(*a, SourceKind::TwoOne),
        ([], [a]) => VertexClass::Source(*a, SourceKind::OneTwo),
        ([a], [b]) if a == b => VertexClass::Tile(*a),
        ([_, _], []) => VertexClass::Charge(missing(&outs), ChargeKind::OneZero),
        ([], [_, _]) => VertexClass::Charge(missing(&ins), ChargeKind::ZeroOne),
        _ => return Err(Error::InvalidSpokePattern(s.to_string())),
    })
}

pub fn classify_vertex(fan: &GHilbFan, ray: usize, c: Character) -> Result<VertexClass> {
    let q = Quiver::new(fan.group());
    let t = VanishingTable::new(fan, &q, ray)?;
    classify_spokes(&t.spokes(fan.group(), c))
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

    fn arrow(tail: u32, o: Orientation) -> Arrow {
        Arrow {
            tail: Character(tail),
            orientation: o,
        }
    }

    #[test]
    fn quiver_counts() {
        let g: DiagonalGroup = "13:1,5,7".parse().unwrap();
        let q = Quiver::new(&g);
        assert_eq!(q.positions.len(), 13);
        assert_eq!(q.arrows.len(), 39);
        assert_eq!(q.triangles.len(), 26);
        let mut pos = q.positions.clone();
        pos.sort();
        pos.dedup();
        assert_eq!(pos.len(), 13);
    }

    #[test]
    fn positions_follow_arrows() {
        let g: DiagonalGroup = "2:1,1,0+2:0,1,1".parse().unwrap();
        let q = Quiver::new(&g);
        for a in &q.arrows {
            let step = planar(unit(a.orientation.index()));
            let t = q.positions[a.tail.index()];
            let moved = q.reduce([t[0] + step[0], t[1] + step[1]]);
            assert_eq!(moved, q.positions[a.head(&g).index()]);
        }
    }

    fn unit(i: usize) -> [i64; 3] {
        let mut e = [0; 3];
        e[i] = 1;
        e
    }

    #[test]
    fn vanishing_orders() {
        let f = fan("3:1,1,1");
        let c = ray(&f, [1, 1, 1]);
        assert_eq!(arrow_vanishing_order(&f, arrow(2, Orientation::X), c), Ok(1));
        assert_eq!(arrow_vanishing_order(&f, arrow(0, Orientation::X), c), Ok(0));
        let f = fan("4:1,1,2");
        let p = ray(&f, [1, 1, 2]);
        assert_eq!(arrow_vanishing_order(&f, arrow(2, Orientation::Z), p), Ok(1));
    }

    #[test]
    fn counts_match_coordinates() {
        let f = fan("3:1,1,1");
        assert_eq!(vanishing_counts(&f, ray(&f, [1, 1, 1])), Ok([1, 1, 1]));
        let f = fan("4:1,1,2");
        assert_eq!(vanishing_counts(&f, ray(&f, [1, 1, 2])), Ok([1, 1, 2]));
        assert_eq!(vanishing_counts(&f, ray(&f, [2, 2, 0])), Ok([2, 2, 0]));
    }

    #[test]
    fn classes_at_the_centre_of_one_third() {
        let f = fan("3:1,1,1");
        let c = ray(&f, [1, 1, 1]);
        assert_eq!(classify_vertex(&f, c, Character(2)), Ok(VertexClass::Sink30));
        assert_eq!(classify_vertex(&f, c, Character(0)), Ok(VertexClass::Sink03));
        assert_eq!(classify_vertex(&f, c, Character(1)), Ok(VertexClass::Source33));
    }

    #[test]
    fn classes_of_order_four() {
        let f = fan("4:1,1,2");
        let p = ray(&f, [1, 1, 2]);
        assert_eq!(
            classify_vertex(&f, p, Character(1)),
            Ok(VertexClass::Source(Orientation::Z, SourceKind::OneTwo))
        );
        assert_eq!(
            classify_vertex(&f, p, Character(2)),
            Ok(VertexClass::Source(Orientation::Z, SourceKind::TwoOne))
        );
        let q = ray(&f, [2, 2, 0]);
        for c in [1, 3] {
            assert!(matches!(
                classify_vertex(&f, q, Character(c)),
                Ok(VertexClass::Charge(Orientation::Z, _))
            ));
        }
    }

    #[test]
    fn mixed_spokes_are_invalid() {
        let s = Spokes {
            out: [true, false, false],
            inc: [false, true, false],
        };
        assert!(matches!(classify_spokes(&s), Err(Error::InvalidSpokePattern(_))));
    }

    #[test]
    fn there_are_eighteen_classes() {
        let mut seen = std::collections::BTreeSet::new();
        for bits in 0..64u32 {
            let s = Spokes {
                out: [0, 1, 2].map(|i| bits >> i & 1 == 1),
                inc: [0, 1, 2].map(|i| bits >> (i + 3) & 1 == 1),
            };
            if let Ok(c) = classify_spokes(&s) {
                seen.insert(c);
            }
        }
        assert_eq!(seen.len(), 18);
    }
}
