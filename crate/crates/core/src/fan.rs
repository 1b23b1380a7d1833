//! The G-Hilb fan: one unimodular cone per G-graph, triangulating the junior simplex.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ggraph::{cone_of_ggraph, enumerate_ggraphs, GGraph, MinimalMonomials};
use crate::group::{Character, DiagonalGroup, Monomial};
use crate::lattice::{cone_is_unimodular, junior_points, WeightVector};
use crate::recipe::carving_ratio;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCone {
    /// Sorted indices into [`GHilbFan::rays`].
    pub rays: [usize; 3],
    pub ggraph: GGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanEdge {
    /// Sorted indices into [`GHilbFan::rays`].
    pub rays: [usize; 2],
    /// Adjacent maximal cones: two for interior edges, one on the boundary.
    pub cones: Vec<usize>,
    pub boundary: bool,
}

#[derive(Debug, Clone)]
pub struct GHilbFan {
    group: DiagonalGroup,
    rays: Vec<WeightVector>,
    cones: Vec<FanCone>,
    edges: Vec<FanEdge>,
    ray_cones: Vec<Vec<usize>>,
    edge_index: BTreeMap<[usize; 2], usize>,
}

/// Divisor coefficients `q[chi][ray]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorCoefficients {
    pub q: Vec<Vec<Rational>>,
}

impl DivisorCoefficients {
    pub fn get(&self, c: Character, ray: usize) -> Rational {
        self.q[c.index()][ray]
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::FanValidationFailed(msg.into())
}

impl GHilbFan {
    /// Enumerate G-graphs, compute their cones and validate the result.
    pub fn build(group: &DiagonalGroup) -> Result<GHilbFan> {
        let mins = MinimalMonomials::new(group);
        let graphs = enumerate_ggraphs(group, &mins)?;
        let mut cones = Vec::with_capacity(graphs.len());
        for gg in graphs {
            let c = cone_of_ggraph(group, &mins, &gg)?;
            cones.push((c, gg));
        }
        GHilbFan::from_parts(group.clone(), cones)
    }

    /// Assemble a fan from cones given by their rays, then validate it.
    pub fn from_parts(group: DiagonalGroup, cones: Vec<([WeightVector; 3], GGraph)>) -> Result<GHilbFan> {
        let rays = junior_points(&group);
        let index: BTreeMap<WeightVector, usize> = rays.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let mut fan_cones = Vec::with_capacity(cones.len());
        for (c, gg) in cones {
            let mut idx = [0usize; 3];
            for (slot, r) in idx.iter_mut().zip(&c) {
                *slot = *index
                    .get(r)
                    .ok_or_else(|| fail(format!("ray {r} is not a junior point")))?;
            }
            idx.sort();
            fan_cones.push(FanCone { rays: idx, ggraph: gg });
        }
        fan_cones.sort_by_key(|a| a.rays);

        let mut edge_map: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
        let mut ray_cones = vec![Vec::new(); rays.len()];
        for (ci, c) in fan_cones.iter().enumerate() {
            let [a, b, d] = c.rays;
            for e in [[a, b], [a, d], [b, d]] {
                edge_map.entry(e).or_default().push(ci);
            }
            for r in c.rays {
                ray_cones[r].push(ci);
            }
        }
        let mut edges = Vec::with_capacity(edge_map.len());
        let mut edge_index = BTreeMap::new();
        for (k, cs) in edge_map {
            let (p, q) = (&rays[k[0]], &rays[k[1]]);
            let boundary = (0..3).any(|i| p.num[i] == 0 && q.num[i] == 0);
            edge_index.insert(k, edges.len());
            edges.push(FanEdge {
                rays: k,
                cones: cs,
                boundary,
            });
        }
        let fan = GHilbFan {
            group,
            rays,
            cones: fan_cones,
            edges,
            ray_cones,
            edge_index,
        };
        fan.validate()?;
        Ok(fan)
    }

    fn validate(&self) -> Result<()> {
        let n = self.group.order() as usize;
        if self.cones.len() != n {
            return Err(fail(format!("{} cones for a group of order {n}", self.cones.len())));
        }
        for (ci, c) in self.cones.iter().enumerate() {
            let rays = c.rays.map(|r| self.rays[r]);
            match cone_is_unimodular(&self.group, &rays) {
                Ok(true) => {}
                Ok(false) => return Err(fail(format!("cone {ci} is not unimodular"))),
                Err(e) => return Err(fail(format!("cone {ci}: {e}"))),
            }
        }
        for w in self.cones.windows(2) {
            if w[0].rays == w[1].rays {
                return Err(fail(format!("repeated cone {:?}", w[0].rays)));
            }
        }
        if let Some(r) = self.ray_cones.iter().position(Vec::is_empty) {
            return Err(fail(format!("junior point {} is not a ray of any cone", self.rays[r])));
        }
        for e in &self.edges {
            match (e.cones.len(), e.boundary) {
                (1, true) | (2, false) => {}
                (k, b) => {
                    return Err(fail(format!(
                        "edge {:?} lies in {k} cones (boundary: {b})",
                        e.rays
                    )))
                }
            }
        }
        // unimodular cones of volume 1/|G| each, |G| of them: the union has the
        // volume of the simplex, so disjoint interiors imply a cover
        for i in 0..self.cones.len() {
            for j in i + 1..self.cones.len() {
                if self.interiors_meet(i, j) {
                    return Err(fail(format!("cones {i} and {j} overlap")));
                }
            }
        }
        Ok(())
    }

    fn planar(&self, c: usize) -> [[i64; 2]; 3] {
        self.cones[c].rays.map(|r| [self.rays[r].num[0], self.rays[r].num[1]])
    }

    /// Separating axis test on the triangles in the plane `sum = 1`.
    fn interiors_meet(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.planar(i), self.planar(j));
        for tri in [&a, &b] {
            for k in 0..3 {
                let p = tri[k];
                let q = tri[(k + 1) % 3];
                let normal = [q[1] - p[1], p[0] - q[0]];
                let proj = |t: &[[i64; 2]; 3]| {
                    let v = t.map(|x| x[0] * normal[0] + x[1] * normal[1]);
                    (*v.iter().min().unwrap(), *v.iter().max().unwrap())
                };
                let (amin, amax) = proj(&a);
                let (bmin, bmax) = proj(&b);
                if amax <= bmin || bmax <= amin {
                    return false;
                }
            }
        }
        true
    }

    pub fn group(&self) -> &DiagonalGroup {
        &self.group
    }

    pub fn rays(&self) -> &[WeightVector] {
        &self.rays
    }

    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    pub fn edges(&self) -> &[FanEdge] {
        &self.edges
    }

    /// Maximal cones containing a ray.
    pub fn cones_at(&self, ray: usize) -> &[usize] {
        &self.ray_cones[ray]
    }

    pub fn ray_index(&self, r: &WeightVector) -> Option<usize> {
        self.rays.binary_search(r).ok()
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { [a, b] } else { [b, a] };
        self.edge_index.get(&key).copied()
    }

    /// Edges having `ray` as an endpoint.
    pub fn edges_at(&self, ray: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.rays.contains(&ray))
            .map(|(i, _)| i)
    }

    /// Index of the maximal cone with the given rays.
    pub fn find_cone(&self, rays: &[WeightVector; 3]) -> Result<usize> {
        let mut idx = [0usize; 3];
        for (slot, r) in idx.iter_mut().zip(rays) {
            *slot = self.ray_index(r).ok_or(Error::UnknownCone)?;
        }
        idx.sort();
        self.cones
            .binary_search_by(|c| c.rays.cmp(&idx))
            .map_err(|_| Error::UnknownCone)
    }

    /// Exceptional divisors: junior points other than the corners.
    pub fn exceptional(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rays.len()).filter(|&r| !self.rays[r].is_corner())
    }

    /// Exceptional divisors in the interior of the simplex (compact ones).
    pub fn interior_rays(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rays.len()).filter(|&r| !self.rays[r].on_boundary())
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&e| !self.edges[e].boundary)
    }

    /// `r_chi` on a maximal cone.
    pub fn chart_generator(&self, cone: usize, c: Character) -> Result<Monomial> {
        let cone = self.cones.get(cone).ok_or(Error::UnknownCone)?;
        Ok(cone.ggraph.rep(c))
    }

    /// `|G| * q_{chi, ray}`, the valuation of `r_chi` along the divisor of `ray`.
    pub fn q_num(&self, c: Character, ray: usize) -> i64 {
        let cone = self.ray_cones[ray][0];
        self.rays[ray].pair_num(self.cones[cone].ggraph.rep(c).exps())
    }

    /// `q_{chi, ray}` for every character and ray, checked on every chart containing the ray.
    pub fn divisor_coefficients(&self) -> Result<DivisorCoefficients> {
        let mut q = Vec::with_capacity(self.group.order() as usize);
        for c in self.group.characters() {
            let mut row = Vec::with_capacity(self.rays.len());
            for (ri, ray) in self.rays.iter().enumerate() {
                let mut vals = self.ray_cones[ri]
                    .iter()
                    .map(|&ci| ray.pair_num(self.cones[ci].ggraph.rep(c).exps()));
                let first = vals.next().expect("every ray lies in a cone");
                if vals.any(|v| v != first) {
                    return Err(Error::InconsistentCharts {
                        character: c.0,
                        ray: ri,
                    });
                }
                row.push(Rational::new(first, ray.den));
            }
            q.push(row);
        }
        Ok(DivisorCoefficients { q })
    }

    /// The two cones at an interior edge ordered so that the carving pair
    /// `(m, m')` satisfies `g(m'/m) > 0` at the third ray `g` of the first cone.
    /// Returns `(sigma, sigma', m, m')`.
    pub fn oriented_edge(&self, edge: usize) -> Result<(usize, usize, Monomial, Monomial)> {
        let ratio = carving_ratio(self, edge)?;
        let e = &self.edges[edge];
        let (s, t) = (e.cones[0], e.cones[1]);
        let g = self.cones[s]
            .rays
            .into_iter()
            .find(|r| !e.rays.contains(r))
            .expect("a cone has a ray off each of its edges");
        let d = self.rays[g].pair_num(ratio.m2.exps()) - self.rays[g].pair_num(ratio.m1.exps());
        assert_ne!(d, 0, "third ray lies on the edge plane");
        if d > 0 {
            Ok((s, t, ratio.m1, ratio.m2))
        } else {
            Ok((s, t, ratio.m2, ratio.m1))
        }
    }

    /// Degree of the tautological bundle of `c` on the curve of an interior edge:
    /// the exponent `k` with `r'/r = (m'/m)^k` in the orientation of [`Self::oriented_edge`].
    pub fn tautological_degree(&self, c: Character, edge: usize) -> Result<i64> {
        let (s, t, m, mp) = self.oriented_edge(edge)?;
        let r = self.cones[s].ggraph.rep(c).exps();
        let rp = self.cones[t].ggraph.rep(c).exps();
        let (m, mp) = (m.exps(), mp.exps());
        let diff: [i64; 3] = [0, 1, 2].map(|i| rp[i] - r[i]);
        let base: [i64; 3] = [0, 1, 2].map(|i| mp[i] - m[i]);
        let i = (0..3).find(|&i| base[i] != 0).expect("carving ratio is nontrivial");
        assert_eq!(diff[i] % base[i], 0, "chart generators differ by a non-integral power");
        let k = diff[i] / base[i];
        assert!(
            (0..3).all(|j| diff[j] == k * base[j]),
            "chart generators do not differ by a power of the carving ratio"
        );
        assert!(k >= 0, "negative tautological degree {k}");
        Ok(k)
    }
}
