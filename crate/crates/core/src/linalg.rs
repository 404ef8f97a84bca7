//! Exact Gauss-Jordan elimination over `Rat`.

use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rat>),
    /// A particular solution plus a basis of the null space.
    Family { particular: Vec<Rat>, kernel: Vec<Vec<Rat>> },
    Inconsistent,
}

/// Solves `A x = b` for `ncols` unknowns. Rows may be redundant.
pub fn solve(a: &[Vec<Rat>], b: &[Rat], ncols: usize) -> Solution {
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(ncols, Rat::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=ncols {
                    let delta = &factor * &m[row][c];
                    m[r][c] -= &delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[ncols].is_zero()) {
        return Solution::Inconsistent;
    }
    let mut particular = vec![Rat::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][ncols].clone();
    }
    if pivots.len() == ncols {
        return Solution::Unique(particular);
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&m[r][f];
            }
            v
        })
        .collect();
    Solution::Family { particular, kernel }
}

/// Rank of a set of vectors.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let Some(n) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][col].is_zero() {
                let f = &m[i][col] / &m[r][col];
                for c in col..n {
                    let d = &f * &m[r][c];
                    m[i][c] -= &d;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
