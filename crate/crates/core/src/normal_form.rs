//! Hermite and Smith normal forms of small integer matrices.

#![allow(clippy::needless_range_loop)]

pub type Mat3 = [[i64; 3]; 3];

fn narrow(a: &[[i128; 3]; 3]) -> Mat3 {
    a.map(|row| row.map(|x| i64::try_from(x).expect("normal form entry overflows i64")))
}

/// Upper-triangular row basis of the lattice spanned by `rows`.
///
/// Returns `None` when the rows do not span a rank-3 lattice. The result is
/// canonical: positive pivots, entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_basis(rows: &[[i64; 3]]) -> Option<Mat3> {
    let mut a: Vec<[i128; 3]> = rows.iter().map(|r| r.map(i128::from)).collect();
    for col in 0..3 {
        let p = col;
        loop {
            let best = (p..a.len())
                .filter(|&i| a[i][col] != 0)
                .min_by_key(|&i| a[i][col].abs());
            let Some(best) = best else { break };
            a.swap(p, best);
            let mut clean = true;
            for i in p + 1..a.len() {
                let q = a[i][col].div_euclid(a[p][col]);
                if q != 0 {
                    for k in 0..3 {
                        a[i][k] -= q * a[p][k];
                    }
                }
                if a[i][col] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if p >= a.len() || a[p][col] == 0 {
            return None;
        }
        if a[p][col] < 0 {
            for k in 0..3 {
                a[p][k] = -a[p][k];
            }
        }
        for i in 0..p {
            let q = a[i][col].div_euclid(a[p][col]);
            for k in 0..3 {
                a[i][k] -= q * a[p][k];
            }
        }
    }
    Some(narrow(&[a[0], a[1], a[2]]))
}

pub fn det(m: &Mat3) -> i64 {
    let m = m.map(|r| r.map(i128::from));
    let d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    i64::try_from(d).expect("determinant overflows i64")
}

/// Transpose of the cofactor matrix, so that `m * adjugate(m) = det(m) * I`.
pub fn adjugate(m: &Mat3) -> Mat3 {
    let mut out = [[0i64; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                - m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
            *entry = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    /// Invariant factors `d1 | d2 | d3`.
    pub diag: [i64; 3],
    /// Unimodular `P` with `P * A * Q = diag(d)` for some unimodular `Q`.
    pub left: Mat3,
}

/// Smith form of a nonsingular 3x3 matrix, keeping track of the row transform.
///
/// If the columns of `A` span a sublattice `K` of `Z^3`, then `v -> P v mod d`
/// identifies `Z^3 / K` with `Z/d1 + Z/d2 + Z/d3`.
pub fn smith_left(m: &Mat3) -> Smith {
    let mut a = m.map(|r| r.map(i128::from));
    let mut p: [[i128; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let row_axpy = |a: &mut [[i128; 3]; 3], dst: usize, src: usize, q: i128| {
        for k in 0..3 {
            a[dst][k] -= q * a[src][k];
        }
    };
    for t in 0..3 {
        loop {
            let mut best = None;
            for i in t..3 {
                for j in t..3 {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj): (usize, usize)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                panic!("smith_left called on a singular matrix");
            };
            a.swap(t, bi);
            p.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..3 {
                let q = a[i][t].div_euclid(a[t][t]);
                row_axpy(&mut a, i, t, q);
                row_axpy(&mut p, i, t, q);
                clean &= a[i][t] == 0;
            }
            for j in t + 1..3 {
                let q = a[t][j].div_euclid(a[t][t]);
                for row in a.iter_mut() {
                    row[j] -= q * row[t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t];
            let bad = (t + 1..3).find(|&i| (t + 1..3).any(|j| a[i][j] % pivot != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, -1);
                    row_axpy(&mut p, t, i, -1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            a[t] = a[t].map(|x| -x);
            p[t] = p[t].map(|x| -x);
        }
    }
    let diag = [a[0][0], a[1][1], a[2][2]].map(|x| i64::try_from(x).unwrap());
    Smith {
        diag,
        left: narrow(&p),
    }
}
