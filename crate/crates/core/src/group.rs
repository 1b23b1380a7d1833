//! Finite abelian diagonal subgroups of SL(3) as lattice quotients.
//!
//! A group is presented by generators `1/r (a,b,c)`. It is stored through the
//! weight lattice `L = Z^3 + sum Z (a,b,c)/r` and its dual `M`, the lattice
//! of exponent vectors of invariant Laurent monomials. Characters are classes
//! in `Z^3 / M`.

use std::fmt;
use std::str::FromStr;

use num_integer::{gcd, lcm, Integer};

use crate::error::{Error, Result};
use crate::normal_form::{adjugate, det, hermite_basis, smith_left, Mat3};

/// A regular monomial `x^a y^b z^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);
    pub const X: Monomial = Monomial([1, 0, 0]);
    pub const Y: Monomial = Monomial([0, 1, 0]);
    pub const Z: Monomial = Monomial([0, 0, 1]);

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; 3];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> [i64; 3] {
        self.0.map(i64::from)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([0, 1, 2].map(|i| self.0[i] + other.0[i]))
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..3).filter(|&i| self.0[i] > 0)
    }

    /// A positive power of a single variable.
    pub fn is_pure_power(&self) -> bool {
        self.support().count() == 1
    }

    /// All regular monomials dividing `self`, including `1` and `self`.
    pub fn divisors(&self) -> Vec<Monomial> {
        let [a, b, c] = self.0;
        let mut out = Vec::with_capacity(((a + 1) * (b + 1) * (c + 1)) as usize);
        for i in 0..=a {
            for j in 0..=b {
                for k in 0..=c {
                    out.push(Monomial([i, j, k]));
                }
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == [0, 0, 0] {
            return write!(f, "1");
        }
        for (i, v) in ["x", "y", "z"].iter().enumerate() {
            match self.0[i] {
                0 => {}
                1 => write!(f, "{v}")?,
                e => write!(f, "{v}^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Syntax(format!("monomial `{s}`"));
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::ONE);
        }
        let mut exps = [0u32; 3];
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            let i = match c {
                'x' => 0,
                'y' => 1,
                'z' => 2,
                _ => return Err(bad()),
            };
            let mut e = 1;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                e = digits.parse().map_err(|_| bad())?;
            }
            exps[i] += e;
        }
        Ok(Monomial(exps))
    }
}

/// One generator `diag(eps^a, eps^b, eps^c)` with `eps` a primitive `r`-th root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub modulus: u32,
    pub weights: [u32; 3],
}

impl Generator {
    pub fn new(modulus: u32, weights: [i64; 3]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Syntax(format!("0:{},{},{}", weights[0], weights[1], weights[2])));
        }
        let r = i64::from(modulus);
        let g = Generator {
            modulus,
            weights: weights.map(|w| w.mod_floor(&r) as u32),
        };
        if g.weights.iter().map(|&w| i64::from(w)).sum::<i64>() % r != 0 {
            return Err(Error::NotInSL3(g.to_string()));
        }
        Ok(g)
    }

    /// Order of the group element.
    pub fn order(&self) -> u32 {
        let g = self.weights.iter().fold(self.modulus, |acc, &w| gcd(acc, w));
        self.modulus / g
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.weights;
        write!(f, "{}:{a},{b},{c}", self.modulus)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Syntax(s.trim().to_string());
        let (r, rest) = s.split_once(':').ok_or_else(bad)?;
        let r: u32 = r.trim().parse().map_err(|_| bad())?;
        let w: Vec<i64> = rest
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let w: [i64; 3] = w.try_into().map_err(|_| bad())?;
        Generator::new(r, w)
    }
}

/// Parse `"r:a,b,c+r:a,b,c+..."`.
pub fn parse_generators(s: &str) -> Result<Vec<Generator>> {
    if s.trim().is_empty() {
        return Err(Error::EmptyGenerators);
    }
    s.split('+').map(str::parse).collect()
}

/// A character of `G`, i.e. a class in `Z^3 / M`, encoded as a mixed-radix index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(pub u32);

impl Character {
    pub const TRIVIAL: Character = Character(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone)]
pub struct DiagonalGroup {
    generators: Vec<Generator>,
    order: u32,
    exponent: i64,
    /// Rows are a basis of `exponent * L`.
    weight_basis: Mat3,
    /// Rows are a basis of `M`.
    invariant_basis: Mat3,
    /// Each coordinate is `<pairing, m> mod modulus`.
    pairing: Vec<([i64; 3], u32)>,
    strides: Vec<u32>,
    /// `L / Z^3` as numerator triples over `order`, each entry in `[0, order)`.
    elements: Vec<[i64; 3]>,
    kappa_vars: [Character; 3],
}

impl PartialEq for DiagonalGroup {
    fn eq(&self, other: &Self) -> bool {
        self.exponent == other.exponent && self.weight_basis == other.weight_basis
    }
}

impl Eq for DiagonalGroup {}

impl FromStr for DiagonalGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DiagonalGroup::new(parse_generators(s)?)
    }
}

impl fmt::Display for DiagonalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl DiagonalGroup {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let exponent = generators.iter().fold(1i64, |acc, g| lcm(acc, i64::from(g.order())));
        let mut rows = vec![[exponent, 0, 0], [0, exponent, 0], [0, 0, exponent]];
        for g in &generators {
            let r = i64::from(g.modulus);
            // (a,b,c)/r scaled by the exponent; integral since the order of g divides it
            let w = g.weights.map(|x| i64::from(x) * exponent);
            debug_assert!(w.iter().all(|x| x % r == 0));
            rows.push(w.map(|x| x / r));
        }
        let weight_basis = hermite_basis(&rows).expect("weight lattice contains Z^3");
        let covolume = det(&weight_basis);
        let order = exponent.pow(3) / covolume;
        assert_eq!(order * covolume, exponent.pow(3));

        // M = {m : B m = 0 mod N}: the columns of N * B^{-1}
        let adj = adjugate(&weight_basis);
        let mut cols = [[0i64; 3]; 3];
        for (j, col) in cols.iter_mut().enumerate() {
            for (i, entry) in col.iter_mut().enumerate() {
                let v = adj[i][j] * exponent;
                assert_eq!(v % covolume, 0);
                *entry = v / covolume;
            }
        }
        let invariant_basis = hermite_basis(&cols).expect("M has full rank");

        let order = u32::try_from(order).expect("group order fits in u32");
        let pairing = Self::coordinates(&generators, order, &invariant_basis);
        let mut strides = Vec::with_capacity(pairing.len());
        let mut s = 1u32;
        for &(_, n) in &pairing {
            strides.push(s);
            s *= n;
        }
        assert_eq!(s, order);

        let mut group = DiagonalGroup {
            generators,
            order,
            exponent,
            weight_basis,
            invariant_basis,
            pairing,
            strides,
            elements: Vec::new(),
            kappa_vars: [Character::TRIVIAL; 3],
        };
        group.kappa_vars = [0, 1, 2].map(|i| group.kappa_monomial(&Monomial::var(i)));
        group.elements = group.enumerate_elements();
        Ok(group)
    }

    /// Character coordinates. When the nontrivial generators are independent
    /// (their orders multiply to |G|) each coordinate is the pairing with one
    /// generator, so for `1/r(a,b,c)` the character of `m` is `a m1 + b m2 + c m3 mod r`.
    /// Otherwise the coordinates come from the Smith form of the basis of `M`.
    fn coordinates(generators: &[Generator], order: u32, m_basis: &Mat3) -> Vec<([i64; 3], u32)> {
        let nontrivial: Vec<&Generator> = generators.iter().filter(|g| g.order() > 1).collect();
        let product: u64 = nontrivial.iter().map(|g| u64::from(g.order())).product();
        if product == u64::from(order) {
            return nontrivial
                .iter()
                .map(|g| {
                    let scale = g.modulus / g.order();
                    (g.weights.map(|w| i64::from(w / scale)), g.order())
                })
                .collect();
        }
        let mut cols = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                cols[i][j] = m_basis[j][i];
            }
        }
        let s = smith_left(&cols);
        (0..3)
            .filter(|&i| s.diag[i] > 1)
            .map(|i| (s.left[i], s.diag[i] as u32))
            .collect()
    }

    fn enumerate_elements(&self) -> Vec<[i64; 3]> {
        let n = self.exponent;
        let scale = i64::from(self.order) / n;
        let gens: Vec<[i64; 3]> = self
            .generators
            .iter()
            .map(|g| g.weights.map(|w| i64::from(w) * n / i64::from(g.modulus)))
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![[0i64; 3]];
        seen.insert([0i64; 3]);
        while let Some(v) = stack.pop() {
            for g in &gens {
                let w = [0, 1, 2].map(|i| (v[i] + g[i]).rem_euclid(n));
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        assert_eq!(seen.len(), self.order as usize);
        seen.into_iter().map(|v| v.map(|x| x * scale)).collect()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// |G|.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// A cyclic group has at most one character coordinate.
    pub fn is_cyclic(&self) -> bool {
        self.pairing.len() <= 1
    }

    /// Basis of `L` as numerator rows over [`Self::weight_denominator`].
    pub fn weight_lattice_basis(&self) -> Mat3 {
        self.weight_basis
    }

    pub fn weight_denominator(&self) -> i64 {
        self.exponent
    }

    /// Basis of `M` (rows).
    pub fn invariant_lattice_basis(&self) -> Mat3 {
        self.invariant_basis
    }

    /// Moduli of the character coordinates (empty for the trivial group).
    pub fn character_moduli(&self) -> Vec<u32> {
        self.pairing.iter().map(|&(_, n)| n).collect()
    }

    /// The elements of `L / Z^3` as numerators over |G| with entries in `[0, |G|)`.
    pub fn elements(&self) -> &[[i64; 3]] {
        &self.elements
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> {
        (0..self.order).map(Character)
    }

    pub fn trivial(&self) -> Character {
        Character::TRIVIAL
    }

    /// Character of a Laurent monomial given by its exponent vector.
    pub fn kappa(&self, exps: [i64; 3]) -> Character {
        let mut idx = 0u32;
        for (&(w, n), &s) in self.pairing.iter().zip(&self.strides) {
            let v = (w[0] * exps[0] + w[1] * exps[1] + w[2] * exps[2]).rem_euclid(i64::from(n));
            idx += v as u32 * s;
        }
        Character(idx)
    }

    pub fn kappa_monomial(&self, m: &Monomial) -> Character {
        self.kappa(m.exps())
    }

    /// `kappa(x)`, `kappa(y)`, `kappa(z)`.
    pub fn kappa_var(&self, i: usize) -> Character {
        self.kappa_vars[i]
    }

    pub fn residues(&self, c: Character) -> Vec<u32> {
        self.pairing
            .iter()
            .zip(&self.strides)
            .map(|(&(_, n), &s)| (c.0 / s) % n)
            .collect()
    }

    fn compose(&self, r: impl Iterator<Item = u32>) -> Character {
        Character(r.zip(&self.strides).map(|(v, &s)| v * s).sum())
    }

    pub fn mul(&self, a: Character, b: Character) -> Character {
        let (ra, rb) = (self.residues(a), self.residues(b));
        let moduli = self.pairing.iter().map(|&(_, n)| n);
        self.compose(ra.into_iter().zip(rb).zip(moduli).map(|((x, y), n)| (x + y) % n))
    }

    pub fn inv(&self, a: Character) -> Character {
        let moduli = self.pairing.iter().map(|&(_, n)| n);
        self.compose(self.residues(a).into_iter().zip(moduli).map(|(x, n)| (n - x) % n))
    }

    /// Human-readable name: `χ3` for cyclic groups, `χ(1,0)` otherwise.
    pub fn label(&self, c: Character) -> String {
        if self.is_cyclic() {
            format!("χ{}", c.0)
        } else {
            let r: Vec<String> = self.residues(c).iter().map(|v| v.to_string()).collect();
            format!("χ({})", r.join(","))
        }
    }

    /// Whether a rational triple, given as numerators over `den`, lies in `L`.
    pub fn contains(&self, num: [i64; 3], den: i64) -> bool {
        self.invariant_basis
            .iter()
            .all(|m| (num[0] * m[0] + num[1] * m[1] + num[2] * m[2]) % den == 0)
    }

    /// Whether an exponent vector lies in `M`.
    pub fn is_invariant(&self, exps: [i64; 3]) -> bool {
        self.kappa(exps) == Character::TRIVIAL
    }
}
