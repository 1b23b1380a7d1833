//! Sink-source graphs: the vertex classes along one divisor, the charge lines
//! joining sources to sinks, and the shape they form.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Character, DiagonalGroup};
use crate::quiver::{ChargeKind, Orientation, SourceKind, Spokes, VanishingTable, VertexClass, classify_spokes};

/// A straight run of live arrows of one orientation through charges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLine {
    pub orientation: Orientation,
    /// Along the arrows (from the source) or against them.
    pub forward: bool,
    pub source: Character,
    pub end: Character,
    /// Number of arrows.
    pub length: usize,
    /// All vertices from `source` to `end` inclusive.
    pub path: Vec<Character>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// One (3,3)-source.
    A,
    /// One source of each kind, both attached to the given orientation.
    B(Orientation),
    /// Three (2,1)-sources.
    C,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::A => write!(f, "A"),
            Shape::B(o) => write!(f, "B/{o}"),
            Shape::C => write!(f, "C"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeLengths {
    A {
        a: i64,
        b: i64,
        c: i64,
    },
    /// `a`, `b` belong to the orientations following `rotation` cyclically,
    /// `c` to `rotation` itself.
    B {
        rotation: Orientation,
        a: i64,
        b: i64,
        c: i64,
        a1: i64,
        b1: i64,
    },
    C {
        a: i64,
        b: i64,
        c: i64,
        a2: i64,
        a3: i64,
        b2: i64,
        b3: i64,
        c2: i64,
        c3: i64,
    },
}

#[derive(Debug, Clone)]
pub struct SinkSourceGraph {
    pub ray: usize,
    pub spokes: Vec<Spokes>,
    pub classes: Vec<VertexClass>,
    pub lines: Vec<ChargeLine>,
    /// Closed loops of charges not attached to any source.
    pub cycles: Vec<(Orientation, Vec<Character>)>,
}

fn step(g: &DiagonalGroup, c: Character, o: Orientation, forward: bool) -> Character {
    let k = g.kappa_var(o.index());
    g.mul(c, if forward { k } else { g.inv(k) })
}

/// A live spoke at a source starts a charge line when the two opposite spokes
/// of the other orientations agree.
fn starts_line(s: &Spokes, o: Orientation, forward: bool) -> bool {
    let (same, opposite) = if forward { (&s.out, &s.inc) } else { (&s.inc, &s.out) };
    let [p, q] = o.others();
    !same[o.index()] && opposite[p.index()] == opposite[q.index()]
}

impl SinkSourceGraph {
    pub fn new(g: &DiagonalGroup, table: &VanishingTable) -> Result<SinkSourceGraph> {
        let spokes: Vec<Spokes> = g.characters().map(|c| table.spokes(g, c)).collect();
        let classes = spokes.iter().map(classify_spokes).collect::<Result<Vec<_>>>()?;
        let n = g.order() as usize;
        let mut lines = Vec::new();
        for c in g.characters() {
            if !classes[c.index()].is_source() {
                continue;
            }
            for forward in [true, false] {
                for o in Orientation::ALL {
                    if !starts_line(&spokes[c.index()], o, forward) {
                        continue;
                    }
                    let kind = if forward { ChargeKind::OneZero } else { ChargeKind::ZeroOne };
                    let mut path = vec![c];
                    let mut cur = c;
                    loop {
                        cur = step(g, cur, o, forward);
                        path.push(cur);
                        if path.len() > n + 1 {
                            return Err(Error::WalkDiverged(format!("charge line from {}", g.label(c))));
                        }
                        match classes[cur.index()] {
                            VertexClass::Charge(p, k) if p == o && k == kind => continue,
                            VertexClass::Charge(..) => {
                                return Err(Error::WalkDiverged(format!(
                                    "{o}-line from {} meets {} at {}",
                                    g.label(c),
                                    classes[cur.index()],
                                    g.label(cur)
                                )))
                            }
                            _ => break,
                        }
                    }
                    lines.push(ChargeLine {
                        orientation: o,
                        forward,
                        source: c,
                        end: cur,
                        length: path.len() - 1,
                        path,
                    });
                }
            }
        }

        let mut covered: BTreeSet<Character> = BTreeSet::new();
        for l in &lines {
            covered.extend(&l.path[1..l.path.len() - 1]);
        }
        let mut cycles = Vec::new();
        for c in g.characters() {
            let VertexClass::Charge(o, kind) = classes[c.index()] else { continue };
            if covered.contains(&c) {
                continue;
            }
            let forward = kind == ChargeKind::OneZero;
            let mut cycle = vec![c];
            let mut cur = step(g, c, o, forward);
            while cur != c {
                if classes[cur.index()] != classes[c.index()] || cycle.len() > n {
                    return Err(Error::WalkDiverged(format!(
                        "charge {} lies on neither a line nor a loop",
                        g.label(c)
                    )));
                }
                cycle.push(cur);
                cur = step(g, cur, o, forward);
            }
            covered.extend(&cycle);
            cycles.push((o, cycle));
        }

        Ok(SinkSourceGraph {
            ray: table.ray,
            spokes,
            classes,
            lines,
            cycles,
        })
    }

    pub fn class(&self, c: Character) -> VertexClass {
        self.classes[c.index()]
    }

    pub fn with_class(&self, pred: impl Fn(&VertexClass) -> bool) -> Vec<Character> {
        (0..self.classes.len())
            .filter(|&i| pred(&self.classes[i]))
            .map(|i| Character(i as u32))
            .collect()
    }

    pub fn sources(&self) -> Vec<Character> {
        self.with_class(VertexClass::is_source)
    }

    pub fn sinks30(&self) -> Vec<Character> {
        self.with_class(|c| *c == VertexClass::Sink30)
    }

    pub fn sinks03(&self) -> Vec<Character> {
        self.with_class(|c| *c == VertexClass::Sink03)
    }

    /// Number of charge lines and loops through each charge vertex.
    pub fn charge_multiplicity(&self, c: Character) -> usize {
        let on_lines = self
            .lines
            .iter()
            .filter(|l| l.path[1..l.path.len() - 1].contains(&c))
            .count();
        let on_cycles = self.cycles.iter().filter(|(_, cyc)| cyc.contains(&c)).count();
        on_lines + on_cycles
    }

    fn describe(&self) -> String {
        let mut kinds: Vec<String> = self.sources().iter().map(|&c| self.class(c).to_string()).collect();
        kinds.sort();
        format!("ray {} with sources [{}]", self.ray, kinds.join(", "))
    }

    pub fn shape(&self) -> Result<Shape> {
        let kinds: Vec<VertexClass> = self.sources().iter().map(|&c| self.class(c)).collect();
        match kinds.as_slice() {
            [VertexClass::Source33] => Ok(Shape::A),
            [VertexClass::Source(o, k), VertexClass::Source(p, l)] if o == p && k != l => Ok(Shape::B(*o)),
            [VertexClass::Source(_, SourceKind::TwoOne), VertexClass::Source(_, SourceKind::TwoOne), VertexClass::Source(_, SourceKind::TwoOne)] => {
                Ok(Shape::C)
            }
            _ => Err(Error::ShapeUnrecognized(self.describe())),
        }
    }

    fn line(&self, source: Character, end: Option<Character>, o: Orientation, forward: bool) -> Result<&ChargeLine> {
        let found: Vec<&ChargeLine> = self
            .lines
            .iter()
            .filter(|l| l.source == source && l.orientation == o && l.forward == forward && end.is_none_or(|e| l.end == e))
            .collect();
        match found.as_slice() {
            [l] => Ok(l),
            _ => Err(Error::ShapeUnrecognized(format!(
                "{} {o}-lines leave the source as expected on {}",
                found.len(),
                self.describe()
            ))),
        }
    }

    /// Steps along `o` from `start` until a vertex of `targets`.
    fn steps_until(&self, g: &DiagonalGroup, start: Character, o: Orientation, targets: &[Character]) -> Result<i64> {
        let mut cur = start;
        for k in 1..=g.order() {
            cur = step(g, cur, o, true);
            if targets.contains(&cur) {
                return Ok(i64::from(k));
            }
        }
        Err(Error::WalkDiverged(format!("{o}-walk from {}", g.label(start))))
    }

    /// The lengths that locate the divisor, read off the charge lines.
    pub fn shape_lengths(&self, g: &DiagonalGroup) -> Result<ShapeLengths> {
        let zero = Character::TRIVIAL;
        let len = |l: &ChargeLine| l.length as i64;
        match self.shape()? {
            Shape::A => {
                let s = self.sources()[0];
                let [a, b, c] = Orientation::ALL.map(|o| self.line(s, Some(zero), o, false).map(len));
                Ok(ShapeLengths::A { a: a?, b: b?, c: c? })
            }
            Shape::B(w) => {
                let src = self.sources();
                let pick = |kind| {
                    *src.iter()
                        .find(|&&c| matches!(self.class(c), VertexClass::Source(_, k) if k == kind))
                        .expect("shape B has both kinds")
                };
                let (i1, i2) = (pick(SourceKind::OneTwo), pick(SourceKind::TwoOne));
                let x = w.next();
                let y = x.next();
                let a = len(self.line(i1, Some(zero), x, false)?);
                let b = len(self.line(i1, Some(zero), y, false)?);
                let c = len(self.line(i2, Some(zero), w, false)?);
                let sinks = self.sinks30();
                let [o2] = sinks.as_slice() else {
                    return Err(Error::ShapeUnrecognized(format!("{} sinks of type (3,0)", sinks.len())));
                };
                let y_line = &self.line(i2, Some(*o2), y, true)?.path;
                let x_line = &self.line(i2, Some(*o2), x, true)?.path;
                let a1 = self.steps_until(g, i1, x, y_line)?;
                let b1 = self.steps_until(g, i1, y, x_line)?;
                Ok(ShapeLengths::B {
                    rotation: w,
                    a,
                    b,
                    c,
                    a1,
                    b1,
                })
            }
            Shape::C => {
                let mut by = [zero; 3];
                for s in self.sources() {
                    let VertexClass::Source(o, _) = self.class(s) else { unreachable!() };
                    by[o.index()] = s;
                }
                let [sx, sy, sz] = by;
                if sx == sy || sy == sz || sx == sz {
                    return Err(Error::ShapeUnrecognized(self.describe()));
                }
                let back = |s: Character, o| self.line(s, Some(zero), o, false).map(len);
                let fwd = |s: Character, o| self.line(s, None, o, true).map(len);
                use Orientation::{X, Y, Z};
                Ok(ShapeLengths::C {
                    a: back(sx, X)?,
                    b: back(sy, Y)?,
                    c: back(sz, Z)?,
                    a2: fwd(sy, X)?,
                    a3: fwd(sz, X)?,
                    b2: fwd(sz, Y)?,
                    b3: fwd(sx, Y)?,
                    c2: fwd(sx, Z)?,
                    c3: fwd(sy, Z)?,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::GHilbFan;
    use crate::lattice::WeightVector;
    use crate::quiver::Quiver;

    fn ss(s: &str, num: [i64; 3]) -> (DiagonalGroup, SinkSourceGraph) {
        let g: DiagonalGroup = s.parse().unwrap();
        let f = GHilbFan::build(&g).unwrap();
        let den = i64::from(g.order());
        let r = f.ray_index(&WeightVector { num, den }).unwrap();
        let t = VanishingTable::new(&f, &Quiver::new(&g), r).unwrap();
        let graph = SinkSourceGraph::new(&g, &t).unwrap();
        (g, graph)
    }

    #[test]
    fn one_third_is_shape_a() {
        let (g, s) = ss("3:1,1,1", [1, 1, 1]);
        assert_eq!(s.shape(), Ok(Shape::A));
        assert_eq!(s.shape_lengths(&g), Ok(ShapeLengths::A { a: 1, b: 1, c: 1 }));
        assert_eq!(s.sinks03(), vec![Character(0)]);
        assert_eq!(s.sinks30(), vec![Character(2)]);
    }

    #[test]
    fn order_four_is_shape_b() {
        let (g, s) = ss("4:1,1,2", [1, 1, 2]);
        assert_eq!(s.shape(), Ok(Shape::B(Orientation::Z)));
        let Ok(ShapeLengths::B { a, b, c, a1, b1, .. }) = s.shape_lengths(&g) else {
            panic!("expected shape B lengths")
        };
        assert_eq!((a, b, c), (1, 1, 1));
        assert_eq!(a1 % a, 0);
        assert_eq!(b1 % b, 0);
    }

    #[test]
    fn boundary_divisor_has_only_charges_and_tiles() {
        let (_, s) = ss("4:1,1,2", [2, 2, 0]);
        assert!(s.sources().is_empty());
        assert!(matches!(s.shape(), Err(Error::ShapeUnrecognized(_))));
        for c in [1, 3] {
            assert_eq!(s.charge_multiplicity(Character(c)), 1);
        }
    }

    #[test]
    fn centre_of_three_by_three_is_shape_c() {
        let (g, s) = ss("3:1,2,0+3:0,1,2", [3, 3, 3]);
        assert_eq!(s.shape(), Ok(Shape::C));
        let Ok(ShapeLengths::C { a, b, c, a2, a3, b2, b3, c2, c3 }) = s.shape_lengths(&g) else {
            panic!("expected shape C lengths")
        };
        assert_eq!((a, b, c), (2, 2, 2));
        assert_eq!([a2, a3, b2, b3, c2, c3], [1; 6]);
    }
}
