//! G-graphs: divisibility-closed monomial sets with one monomial per character.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group::{Character, DiagonalGroup, Monomial};
use crate::lattice::WeightVector;

/// Divisibility-minimal regular monomials of every character.
#[derive(Debug, Clone)]
pub struct MinimalMonomials {
    by_char: Vec<Vec<Monomial>>,
}

impl MinimalMonomials {
    /// A monomial is minimal for its character exactly when no nontrivial
    /// invariant monomial divides it. Exponents are bounded by the orders of
    /// `kappa(x)`, `kappa(y)`, `kappa(z)` since pure powers of those orders are invariant.
    pub fn new(g: &DiagonalGroup) -> MinimalMonomials {
        let bound: [u32; 3] = [0, 1, 2].map(|i| {
            (1..=g.order())
                .find(|&k| {
                    let mut e = [0i64; 3];
                    e[i] = i64::from(k);
                    g.is_invariant(e)
                })
                .expect("x^|G| is invariant")
        });
        let [bx, by, bz] = bound.map(|b| b as usize);
        let at = |i: usize, j: usize, k: usize| (i * by + j) * bz + k;
        let mut has_invariant = vec![false; bx * by * bz];
        let mut by_char = vec![Vec::new(); g.order() as usize];
        for i in 0..bx {
            for j in 0..by {
                for k in 0..bz {
                    let m = Monomial([i as u32, j as u32, k as u32]);
                    let c = g.kappa_monomial(&m);
                    let mut inv = m != Monomial::ONE && c == Character::TRIVIAL;
                    inv |= i > 0 && has_invariant[at(i - 1, j, k)];
                    inv |= j > 0 && has_invariant[at(i, j - 1, k)];
                    inv |= k > 0 && has_invariant[at(i, j, k - 1)];
                    has_invariant[at(i, j, k)] = inv;
                    if !inv {
                        by_char[c.index()].push(m);
                    }
                }
            }
        }
        for list in &mut by_char {
            list.sort_by_key(|m| (m.degree(), *m));
        }
        MinimalMonomials { by_char }
    }

    pub fn of(&self, c: Character) -> &[Monomial] {
        &self.by_char[c.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Character, &[Monomial])> {
        self.by_char
            .iter()
            .enumerate()
            .map(|(i, v)| (Character(i as u32), v.as_slice()))
    }
}

/// Minimal regular monomials of character `c`.
pub fn minimal_monomials(g: &DiagonalGroup, c: Character) -> Vec<Monomial> {
    MinimalMonomials::new(g).of(c).to_vec()
}

/// One representative `r_chi` per character.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GGraph {
    reps: Vec<Monomial>,
}

impl GGraph {
    /// Checks the defining properties: one monomial per character and closure under division.
    pub fn new(g: &DiagonalGroup, reps: Vec<Monomial>) -> Option<GGraph> {
        if reps.len() != g.order() as usize {
            return None;
        }
        for (i, m) in reps.iter().enumerate() {
            if g.kappa_monomial(m).index() != i {
                return None;
            }
            for d in m.divisors() {
                if reps[g.kappa_monomial(&d).index()] != d {
                    return None;
                }
            }
        }
        Some(GGraph { reps })
    }

    pub fn rep(&self, c: Character) -> Monomial {
        self.reps[c.index()]
    }

    pub fn reps(&self) -> &[Monomial] {
        &self.reps
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.reps.contains(m)
    }
}

struct Candidate {
    mono: Monomial,
    divisors: Vec<(Character, Monomial)>,
}

/// All G-graphs, sorted.
///
/// Each representative of a G-graph is a minimal monomial of its character, so
/// the search picks, character by character, a minimal monomial together with
/// all of its divisors. The character with the fewest compatible choices is
/// expanded first.
pub fn enumerate_ggraphs(g: &DiagonalGroup, mins: &MinimalMonomials) -> Result<Vec<GGraph>> {
    let n = g.order() as usize;
    let candidates: Vec<Vec<Candidate>> = (0..n)
        .map(|c| {
            mins.of(Character(c as u32))
                .iter()
                .filter_map(|&mono| {
                    let divisors: Vec<(Character, Monomial)> =
                        mono.divisors().into_iter().map(|d| (g.kappa_monomial(&d), d)).collect();
                    let mut chars: Vec<Character> = divisors.iter().map(|p| p.0).collect();
                    chars.sort();
                    chars.dedup();
                    (chars.len() == divisors.len()).then_some(Candidate { mono, divisors })
                })
                .collect()
        })
        .collect();

    let mut found = Vec::new();
    let mut assign: Vec<Option<Monomial>> = vec![None; n];
    search(&candidates, &mut assign, 0, &mut found);
    found.sort();
    let before = found.len();
    found.dedup();
    if found.len() != n || before != n {
        return Err(Error::SearchExhausted {
            found: found.len(),
            expected: n,
        });
    }
    Ok(found)
}

fn viable(c: &Candidate, assign: &[Option<Monomial>]) -> bool {
    c.divisors
        .iter()
        .all(|(ch, d)| assign[ch.index()].is_none_or(|a| a == *d))
}

fn search(cands: &[Vec<Candidate>], assign: &mut Vec<Option<Monomial>>, filled: usize, out: &mut Vec<GGraph>) {
    if filled == assign.len() {
        out.push(GGraph {
            reps: assign.iter().map(|m| m.expect("all assigned")).collect(),
        });
        return;
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for (c, list) in cands.iter().enumerate() {
        if assign[c].is_some() {
            continue;
        }
        let ok: Vec<usize> = (0..list.len()).filter(|&i| viable(&list[i], assign)).collect();
        if ok.is_empty() {
            return;
        }
        if best.as_ref().is_none_or(|b| ok.len() < b.1.len()) {
            best = Some((c, ok));
        }
    }
    let (c, ok) = best.expect("some character is unassigned");
    for i in ok {
        let cand = &cands[c][i];
        let mut added = Vec::new();
        for (ch, d) in &cand.divisors {
            if assign[ch.index()].is_none() {
                assign[ch.index()] = Some(*d);
                added.push(ch.index());
            }
        }
        debug_assert_eq!(assign[c], Some(cand.mono));
        search(cands, assign, filled + added.len(), out);
        for idx in added {
            assign[idx] = None;
        }
    }
}

type Q = Ratio<i128>;

fn pair(p: &[Q; 3], n: [i64; 3]) -> Q {
    p[0] * i128::from(n[0]) + p[1] * i128::from(n[1]) + p[2] * i128::from(n[2])
}

/// Keep the part of a convex polygon in the plane `sum = 1` where `<v, n> >= 0`.
fn clip(poly: &[[Q; 3]], n: [i64; 3]) -> Vec<[Q; 3]> {
    let zero = Q::from_integer(0);
    let mut out: Vec<[Q; 3]> = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        let (vp, vq) = (pair(p, n), pair(q, n));
        if vp >= zero {
            out.push(*p);
        }
        if (vp > zero && vq < zero) || (vp < zero && vq > zero) {
            let t = vp / (vp - vq);
            out.push([0, 1, 2].map(|j| p[j] + t * (q[j] - p[j])));
        }
    }
    out.dedup();
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// The inequalities `<v, m - r_chi> >= 0` cutting out the cone of `gg`.
pub fn cone_inequalities(mins: &MinimalMonomials, gg: &GGraph) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for (c, list) in mins.iter() {
        let r = gg.rep(c).exps();
        for m in list {
            let e = m.exps();
            let n = [e[0] - r[0], e[1] - r[1], e[2] - r[2]];
            if n != [0, 0, 0] {
                out.push(n);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The three junior rays spanning the cone of `gg`, sorted.
///
/// The section of the cone by `sum = 1` is obtained by clipping the junior
/// triangle against every inequality.
pub fn cone_of_ggraph(g: &DiagonalGroup, mins: &MinimalMonomials, gg: &GGraph) -> Result<[WeightVector; 3]> {
    let one = Q::from_integer(1);
    let zero = Q::from_integer(0);
    let mut poly = vec![[one, zero, zero], [zero, one, zero], [zero, zero, one]];
    for n in cone_inequalities(mins, gg) {
        poly = clip(&poly, n);
        if poly.len() < 3 {
            return Err(Error::LowerDimensionalCone(format!("{} vertices remain", poly.len())));
        }
    }
    if poly.len() != 3 {
        return Err(Error::LowerDimensionalCone(format!("section has {} vertices", poly.len())));
    }
    let den = i128::from(g.order());
    let mut rays = Vec::with_capacity(3);
    for p in &poly {
        let scaled = p.map(|x| x * den);
        if scaled.iter().any(|x| !x.is_integer()) {
            return Err(Error::LowerDimensionalCone("vertex is not a lattice point".into()));
        }
        let num = scaled.map(|x| i64::try_from(x.to_integer()).expect("small numerator"));
        if !g.contains(num, den as i64) {
            return Err(Error::LowerDimensionalCone("vertex is not in L".into()));
        }
        rays.push(WeightVector { num, den: den as i64 });
    }
    rays.sort();
    Ok([rays[0], rays[1], rays[2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> DiagonalGroup {
        s.parse().unwrap()
    }

    fn monos(list: &[&str]) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = list.iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        v
    }

    fn sorted(mut v: Vec<Monomial>) -> Vec<Monomial> {
        v.sort();
        v
    }

    #[test]
    fn minimal_monomials_examples() {
        let h = g("3:1,1,1");
        assert_eq!(sorted(minimal_monomials(&h, Character(1))), monos(&["x", "y", "z"]));
        assert_eq!(minimal_monomials(&h, Character(0)), monos(&["1"]));
        let a = g("2:1,1,0");
        assert_eq!(sorted(minimal_monomials(&a, Character(1))), monos(&["x", "y"]));
    }

    #[test]
    fn ggraphs_of_one_third() {
        let h = g("3:1,1,1");
        let mins = MinimalMonomials::new(&h);
        let all = enumerate_ggraphs(&h, &mins).unwrap();
        let sets: Vec<Vec<Monomial>> = all.iter().map(|x| sorted(x.reps().to_vec())).collect();
        for want in [["1", "x", "x^2"], ["1", "y", "y^2"], ["1", "z", "z^2"]] {
            assert!(sets.contains(&monos(&want)));
        }
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn ggraphs_of_trivial_and_order_four() {
        let t = g("1:0,0,0");
        let all = enumerate_ggraphs(&t, &MinimalMonomials::new(&t)).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].reps(), &[Monomial::ONE]);

        let p = g("4:1,1,2");
        let all = enumerate_ggraphs(&p, &MinimalMonomials::new(&p)).unwrap();
        let sets: Vec<Vec<Monomial>> = all.iter().map(|x| sorted(x.reps().to_vec())).collect();
        let mut want = vec![
            monos(&["1", "x", "x^2", "x^3"]),
            monos(&["1", "y", "y^2", "y^3"]),
            monos(&["1", "x", "z", "xz"]),
            monos(&["1", "y", "z", "yz"]),
        ];
        want.sort();
        let mut sets = sets;
        sets.sort();
        assert_eq!(sets, want);
    }

    fn cone_for(s: &str, reps: &[&str]) -> [WeightVector; 3] {
        let h = g(s);
        let mins = MinimalMonomials::new(&h);
        let mut v = vec![Monomial::ONE; h.order() as usize];
        for r in reps {
            let m: Monomial = r.parse().unwrap();
            v[h.kappa_monomial(&m).index()] = m;
        }
        let gg = GGraph::new(&h, v).expect("valid G-graph");
        cone_of_ggraph(&h, &mins, &gg).unwrap()
    }

    #[test]
    fn cones_of_examples() {
        let c = cone_for("3:1,1,1", &["1", "x", "x^2"]);
        let w = |num, den| WeightVector { num, den };
        assert_eq!(c, [w([0, 0, 3], 3), w([0, 3, 0], 3), w([1, 1, 1], 3)]);
        let c = cone_for("1:0,0,0", &["1"]);
        assert_eq!(c, [w([0, 0, 1], 1), w([0, 1, 0], 1), w([1, 0, 0], 1)]);
        let c = cone_for("4:1,1,2", &["1", "x", "z", "xz"]);
        assert_eq!(c, [w([0, 4, 0], 4), w([1, 1, 2], 4), w([2, 2, 0], 4)]);
    }

    #[test]
    fn ggraph_rejects_unclosed_sets() {
        let h = g("3:1,1,1");
        let v = vec![Monomial::ONE, Monomial::X, "y^2".parse().unwrap()];
        assert!(GGraph::new(&h, v).is_none());
    }
}
