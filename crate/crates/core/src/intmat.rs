//! Integer matrix normal forms used for Construction A bases and coset
//! labeling.

pub type IntMatrix = Vec<Vec<i64>>;

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Row-style Hermite normal form. Returns the nonzero rows, in echelon order
/// with positive pivots and entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let rows = m.len();
    if rows == 0 {
        return m;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid on column c below row r.
        loop {
            let pivot = (r..rows)
                .filter(|&i| m[i][c] != 0)
                .min_by_key(|&i| m[i][c].abs());
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if m[i][c] != 0 {
                    let f = m[i][c].div_euclid(m[r][c]);
                    for j in 0..cols {
                        m[i][j] -= f * m[r][j];
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            m[r].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..r {
            let f = m[i][c].div_euclid(m[r][c]);
            if f != 0 {
                for j in 0..cols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Smith normal form `P · A · Q = diag(d)` of a square integer matrix, with
/// `d[i] | d[i+1]` and all `d[i] > 0` for nonsingular input.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i64>,
    /// Column transform `Q`.
    pub q: IntMatrix,
    /// `Q⁻¹`.
    pub q_inv: IntMatrix,
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let n = a.len();
    let mut m = a.clone();
    let mut q = identity(n);
    let mut q_inv = identity(n);

    let col_swap = |m: &mut IntMatrix, q: &mut IntMatrix, q_inv: &mut IntMatrix, a: usize, b: usize| {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in q.iter_mut() {
            row.swap(a, b);
        }
        q_inv.swap(a, b);
    };
    // column_b -= f * column_a  (Q ← Q·E, Q⁻¹ ← E⁻¹·Q⁻¹: row_a += f * row_b)
    let col_sub = |m: &mut IntMatrix, q: &mut IntMatrix, q_inv: &mut IntMatrix, a: usize, b: usize, f: i64| {
        for row in m.iter_mut() {
            row[b] -= f * row[a];
        }
        for row in q.iter_mut() {
            row[b] -= f * row[a];
        }
        for j in 0..q_inv[0].len() {
            let t = q_inv[b][j];
            q_inv[a][j] += f * t;
        }
    };

    for t in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap(t, bi);
            if bj != t {
                col_swap(&mut m, &mut q, &mut q_inv, t, bj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let f = m[i][t].div_euclid(m[t][t]);
                if f != 0 {
                    for j in 0..n {
                        m[i][j] -= f * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let f = m[t][j].div_euclid(m[t][t]);
                if f != 0 {
                    col_sub(&mut m, &mut q, &mut q_inv, t, j, f);
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row t and retry.
            let d = m[t][t];
            let offending = (t + 1..n).find(|&i| (t + 1..n).any(|j| m[i][j] % d != 0));
            match offending {
                Some(i) => {
                    for j in 0..n {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            m[t].iter_mut().for_each(|x| *x = -*x);
        }
    }
    Smith { diag: (0..n).map(|i| m[i][i]).collect(), q, q_inv }
}

pub fn mat_vec_left(v: &[i64], m: &IntMatrix) -> Vec<i64> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    (0..cols).map(|j| v.iter().zip(m).map(|(a, row)| a * row[j]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        a.iter().map(|row| mat_vec_left(row, b)).collect()
    }

    #[test]
    fn hnf_of_checkerboard_generators() {
        // (1,1) lifted plus 2·e_i
        let a = vec![vec![1, 1], vec![2, 0], vec![0, 2]];
        let h = hermite_normal_form(&a);
        assert_eq!(h, vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn smith_diagonalizes_with_unimodular_transform() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![2, 6, 12]);
        assert_eq!(mul(&s.q, &s.q_inv), identity(3));
    }

    #[test]
    fn smith_of_scaled_identity() {
        let a = vec![vec![2, 0], vec![0, 2]];
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![2, 2]);
    }
}
