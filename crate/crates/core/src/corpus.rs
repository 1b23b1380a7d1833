//! The groups every check runs over.

use num_integer::gcd;

/// Cyclic groups `1/r(a,b,c)` with `2 <= r <= max_order`, `0 <= a <= b <= c < r`,
/// `a+b+c = 0 mod r` and `gcd(a,b,c,r) = 1`, one per class under permuting
/// coordinates and changing the generator. Each class is represented by its
/// lexicographically least sorted weight triple.
pub fn cyclic_corpus(max_order: u32) -> Vec<String> {
    let mut out = Vec::new();
    for r in 2..=max_order {
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..r {
            for b in a..r {
                for c in b..r {
                    if (a + b + c) % r != 0 || gcd(gcd(gcd(a, b), c), r) != 1 {
                        continue;
                    }
                    let canonical = (1..r)
                        .filter(|&k| gcd(k, r) == 1)
                        .map(|k| {
                            let mut w = [a, b, c].map(|x| (k * x) % r);
                            w.sort();
                            w
                        })
                        .min()
                        .expect("1 is a unit");
                    if seen.insert(canonical) {
                        let [a, b, c] = canonical;
                        out.push(format!("{r}:{a},{b},{c}"));
                    }
                }
            }
        }
    }
    out
}

/// Non-cyclic groups checked alongside the cyclic corpus.
pub const FIXTURES: [&str; 2] = ["2:1,1,0+2:0,1,1", "3:1,2,0+3:0,1,2"];

/// The cyclic corpus followed by the fixtures of order at most `max_order`.
pub fn full_corpus(max_order: u32) -> Vec<String> {
    let mut v = cyclic_corpus(max_order);
    v.extend(
        FIXTURES
            .iter()
            .filter(|s| s.parse::<crate::DiagonalGroup>().is_ok_and(|g| g.order() <= max_order))
            .map(|s| s.to_string()),
    );
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus() {
        assert!(cyclic_corpus(1).is_empty());
        assert_eq!(cyclic_corpus(2), vec!["2:0,1,1"]);
        let six = cyclic_corpus(6);
        for g in ["3:1,1,1", "4:1,1,2", "6:1,2,3"] {
            assert!(six.contains(&g.to_string()), "{g}");
        }
        assert!(!six.contains(&"3:1,2,0".to_string()) || !six.contains(&"3:0,1,2".to_string()));
    }

    #[test]
    fn corpus_up_to_thirty() {
        assert_eq!(cyclic_corpus(30).len(), 161);
        assert_eq!(full_corpus(30).len(), 163);
        assert!(full_corpus(1).is_empty());
        assert_eq!(full_corpus(4).last().map(String::as_str), Some(FIXTURES[0]));
    }
}
