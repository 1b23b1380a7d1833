//! Points of the weight lattice and the junior simplex.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::DiagonalGroup;
use crate::normal_form::det;
use crate::Rational;

/// A point of `L`, stored as integer numerators over a common denominator
/// (always |G| for points produced by this crate).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    pub num: [i64; 3],
    pub den: i64,
}

impl WeightVector {
    pub fn corner(g: &DiagonalGroup, i: usize) -> WeightVector {
        let n = i64::from(g.order());
        let mut num = [0; 3];
        num[i] = n;
        WeightVector { num, den: n }
    }

    /// Bring a rational triple into the form used by `g`, checking membership in `L`.
    pub fn from_rationals(g: &DiagonalGroup, coords: [Rational; 3]) -> Result<WeightVector> {
        let n = i64::from(g.order());
        let bad = || Error::NotInLattice(format_triple(&coords));
        let mut num = [0; 3];
        for (slot, c) in num.iter_mut().zip(&coords) {
            let scaled = c * n;
            if !scaled.is_integer() {
                return Err(bad());
            }
            *slot = scaled.to_integer();
        }
        if !g.contains(num, n) {
            return Err(bad());
        }
        Ok(WeightVector { num, den: n })
    }

    pub fn coords(&self) -> [Rational; 3] {
        self.num.map(|x| Rational::new(x, self.den))
    }

    /// Numerator of the coordinate sum.
    pub fn age_num(&self) -> i64 {
        self.num.iter().sum()
    }

    pub fn is_corner(&self) -> bool {
        self.num.iter().filter(|&&x| x == 0).count() == 2
    }

    /// Lies on the boundary of the junior simplex.
    pub fn on_boundary(&self) -> bool {
        self.num.contains(&0)
    }

    /// `<e, m>` scaled by the denominator.
    pub fn pair_num(&self, exps: [i64; 3]) -> i64 {
        self.num[0] * exps[0] + self.num[1] * exps[1] + self.num[2] * exps[2]
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.num;
        write!(f, "({a},{b},{c})/{}", self.den)
    }
}

fn format_triple(c: &[Rational; 3]) -> String {
    format!("({}, {}, {})", c[0], c[1], c[2])
}

/// All points of `L` in the junior simplex, corners included, sorted lexicographically.
pub fn junior_points(g: &DiagonalGroup) -> Vec<WeightVector> {
    let n = i64::from(g.order());
    let mut pts: Vec<WeightVector> = g
        .elements()
        .iter()
        .filter(|v| v.iter().sum::<i64>() == n)
        .map(|&num| WeightVector { num, den: n })
        .chain((0..3).map(|i| WeightVector::corner(g, i)))
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

/// `e(m)` for a Laurent monomial with exponent vector `exps`.
pub fn valuation(e: &WeightVector, exps: [i64; 3]) -> Rational {
    Rational::new(e.pair_num(exps), e.den)
}

/// Coordinate sum of a point of `L` with coordinates in `[0, 1)`.
pub fn age(g: &DiagonalGroup, l: [Rational; 3]) -> Result<Rational> {
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    if l.iter().any(|c| *c < zero || *c >= one) {
        return Err(Error::NotInLattice(format_triple(&l)));
    }
    let v = WeightVector::from_rationals(g, l)?;
    Ok(Rational::new(v.age_num(), v.den))
}

/// Whether three points of `L` form a basis of `L`.
pub fn cone_is_unimodular(g: &DiagonalGroup, rays: &[WeightVector; 3]) -> Result<bool> {
    let n = i64::from(g.order());
    // bring everything over the common denominator |G|
    let rows = rays.map(|r| {
        assert_eq!(n % r.den, 0, "ray denominator must divide |G|");
        r.num.map(|x| x * (n / r.den))
    });
    let d = det(&rows);
    if d == 0 {
        return Err(Error::DegenerateCone);
    }
    // |det(rays)| = |d| / n^3 and a basis of L has determinant 1/n
    Ok(i128::from(d.abs()) == i128::from(n) * i128::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> DiagonalGroup {
        s.parse().unwrap()
    }

    fn wv(num: [i64; 3], den: i64) -> WeightVector {
        WeightVector { num, den }
    }

    #[test]
    fn junior_points_of_one_thirteenth() {
        let h = g("13:1,5,7");
        let pts = junior_points(&h);
        assert_eq!(pts.len(), 9);
        for num in [[1, 5, 7], [2, 10, 1], [3, 2, 8], [4, 7, 2], [6, 4, 3], [8, 1, 4]] {
            assert!(pts.contains(&wv(num, 13)));
        }
        assert_eq!(pts.iter().filter(|p| p.is_corner()).count(), 3);
    }

    #[test]
    fn junior_points_of_trivial_and_order_four() {
        assert_eq!(junior_points(&g("1:0,0,0")).len(), 3);
        let p = junior_points(&g("4:1,1,2"));
        assert_eq!(p.len(), 5);
        assert!(p.contains(&wv([1, 1, 2], 4)));
        assert!(p.contains(&wv([2, 2, 0], 4)));
    }

    #[test]
    fn valuations() {
        let e = wv([1, 5, 7], 13);
        assert_eq!(valuation(&e, [1, 0, 0]), Rational::new(1, 13));
        assert_eq!(valuation(&e, [1, 1, 1]), Rational::from_integer(1));
        assert_eq!(valuation(&wv([1, 1, 2], 4), [1, -1, 0]), Rational::from_integer(0));
    }

    #[test]
    fn ages() {
        let h = g("13:1,5,7");
        let r = |a, b, c| [a, b, c].map(|x| Rational::new(x, 13));
        assert_eq!(age(&h, r(1, 5, 7)), Ok(Rational::from_integer(1)));
        assert_eq!(age(&h, r(0, 0, 0)), Ok(Rational::from_integer(0)));
        assert_eq!(age(&h, r(5, 12, 9)), Ok(Rational::from_integer(2)));
        assert!(matches!(age(&h, r(1, 1, 11)), Err(Error::NotInLattice(_))));
    }

    #[test]
    fn unimodularity() {
        let h = g("3:1,1,1");
        let c = [wv([1, 1, 1], 3), wv([0, 3, 0], 3), wv([0, 0, 3], 3)];
        assert_eq!(cone_is_unimodular(&h, &c), Ok(true));
        let corners = [0, 1, 2].map(|i| WeightVector::corner(&h, i));
        assert_eq!(cone_is_unimodular(&h, &corners), Ok(false));
        let t = g("1:0,0,0");
        let corners = [0, 1, 2].map(|i| WeightVector::corner(&t, i));
        assert_eq!(cone_is_unimodular(&t, &corners), Ok(true));
        let flat = [wv([1, 1, 1], 3), wv([1, 1, 1], 3), wv([0, 0, 3], 3)];
        assert_eq!(cone_is_unimodular(&h, &flat), Err(Error::DegenerateCone));
    }
}
