use mckay_core::group::{parse_generators, Monomial};
use mckay_core::lattice::junior_points;
use mckay_core::normal_form::{det, hermite_basis, smith_left};
use mckay_core::transform::Cell;
use mckay_core::{Analysis, Character, DiagonalGroup};
use proptest::prelude::*;

fn cyclic() -> impl Strategy<Value = String> {
    (2u32..=18, 0u32..18, 0u32..18).prop_map(|(r, a, b)| {
        let (a, b) = (a % r, b % r);
        let c = (2 * r - a - b) % r;
        format!("{r}:{a},{b},{c}")
    })
}

fn any_group() -> impl Strategy<Value = DiagonalGroup> {
    prop_oneof![
        3 => cyclic(),
        1 => (cyclic(), cyclic()).prop_map(|(a, b)| format!("{a}+{b}")),
    ]
    .prop_filter_map("group too large", |s| {
        let g: DiagonalGroup = s.parse().ok()?;
        (g.order() <= 24).then_some(g)
    })
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::array::uniform3(0u32..12).prop_map(Monomial)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kappa_is_a_homomorphism(g in any_group(), m in monomial(), n in monomial()) {
        let k = g.kappa_monomial(&m.mul(&n));
        prop_assert_eq!(k, g.mul(g.kappa_monomial(&m), g.kappa_monomial(&n)));
        prop_assert_eq!(g.kappa([1, 1, 1]), Character::TRIVIAL);
        let n = i64::from(g.order());
        for i in 0..3 {
            let mut e = [0; 3];
            e[i] = n;
            prop_assert!(g.is_invariant(e));
        }
        prop_assert_eq!(g.mul(k, g.inv(k)), Character::TRIVIAL);
    }

    #[test]
    fn every_character_has_a_small_monomial(g in any_group()) {
        let n = g.order() as usize;
        let mut hit = vec![false; n];
        for i in 0..n as u32 {
            for j in 0..n as u32 {
                hit[g.kappa_monomial(&Monomial([i, j, 0])).index()] = true;
            }
        }
        prop_assert!(hit.into_iter().all(|h| h));
        prop_assert_eq!(g.elements().len(), n);
    }

    #[test]
    fn redundant_generators_change_nothing(g in any_group(), k in 2u32..5) {
        let gen = g.generators()[0];
        let extra = format!("{}:{},{},{}", gen.modulus, gen.weights[0] * k, gen.weights[1] * k, gen.weights[2] * k);
        let h: DiagonalGroup = format!("{g}+{extra}").parse().unwrap();
        prop_assert_eq!(h.order(), g.order());
        prop_assert_eq!(h.invariant_lattice_basis(), g.invariant_lattice_basis());
        prop_assert_eq!(junior_points(&h), junior_points(&g));
    }

    #[test]
    fn junior_point_count_matches_ages(s in cyclic()) {
        let g: DiagonalGroup = s.parse().unwrap();
        let gen = parse_generators(&s).unwrap()[0];
        let r = gen.modulus;
        let expected = (1..r)
            .filter(|&k| gen.weights.iter().map(|w| (k * w) % r).sum::<u32>() == r)
            .count();
        // distinct multiples only, when the generator has smaller order
        let pts = junior_points(&g);
        prop_assert_eq!(pts.len(), 3 + expected / (r / gen.order()) as usize);
    }

    #[test]
    fn hermite_spans_the_same_lattice(rows in prop::collection::vec(prop::array::uniform3(-9i64..10), 3..6)) {
        if let Some(h) = hermite_basis(&rows) {
            let d = det(&h);
            prop_assert!(d > 0);
            for r in &rows {
                // r lies in the lattice of h: solve by back substitution
                let mut v = *r;
                for i in 0..3 {
                    prop_assert_eq!(v[i] % h[i][i], 0);
                    let q = v[i] / h[i][i];
                    for j in 0..3 {
                        v[j] -= q * h[i][j];
                    }
                }
                prop_assert_eq!(v, [0, 0, 0]);
            }
        }
    }

    #[test]
    fn smith_divisibility(m in prop::array::uniform3(prop::array::uniform3(-9i64..10))) {
        prop_assume!(det(&m) != 0);
        let s = smith_left(&m);
        prop_assert_eq!(det(&s.left).abs(), 1);
        prop_assert_eq!(s.diag[0] * s.diag[1] * s.diag[2], det(&m).abs());
        prop_assert_eq!(s.diag[1] % s.diag[0], 0);
        prop_assert_eq!(s.diag[2] % s.diag[1], 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn full_pipeline_holds(g in any_group()) {
        let a = Analysis::run(&g).map_err(|e| TestCaseError::fail(format!("{g}: {e}")))?;
        prop_assert!(a.theorem_pass(), "{}", g);
        prop_assert!(a.shapes_pass(), "{}", g);
        for c in a.property_checks() {
            prop_assert!(c.pass(), "{}: {} {:?}", g, c.name, c.failure);
        }
        let n = g.order() as usize;
        prop_assert_eq!(a.fan.cones().len(), n);
        if n > 1 {
            let zero: Vec<Cell> = a.fan.exceptional().map(Cell::Divisor).collect();
            prop_assert_eq!(&a.profiles[0].components, &zero);
        }
    }

    #[test]
    fn permuting_coordinates_permutes_everything(s in cyclic()) {
        let gen = parse_generators(&s).unwrap()[0];
        let [a, b, c] = gen.weights;
        let g: DiagonalGroup = s.parse().unwrap();
        let h: DiagonalGroup = format!("{}:{b},{c},{a}", gen.modulus).parse().unwrap();
        let (x, y) = (Analysis::run(&g).unwrap(), Analysis::run(&h).unwrap());
        let degrees = |an: &Analysis| {
            let mut d: Vec<i8> = an.profiles.iter().map(|p| p.degree).collect();
            d.sort();
            d
        };
        prop_assert_eq!(degrees(&x), degrees(&y));
        let mut cases_x: Vec<_> = x.marked.vertices.iter().map(|v| v.0).collect();
        let mut cases_y: Vec<_> = y.marked.vertices.iter().map(|v| v.0).collect();
        cases_x.sort();
        cases_y.sort();
        prop_assert_eq!(cases_x, cases_y);
    }
}
