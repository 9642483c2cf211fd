use num_integer::Integer;

/// Determinant by cofactor expansion, kept separate from the library's Bareiss code.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    if m.len() == 1 {
        return i128::from(m[0][0]);
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| *v).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * i128::from(m[0][j]) * cofactor_det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from gcds of k×k minors.
pub fn determinantal_invariants(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let mut d = vec![1i128];
    for k in 1..=n {
        let mut g = 0i128;
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i64>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&cofactor_det(&minor));
            }
        }
        d.push(g);
    }
    (1..=n).map(|k| if d[k] == 0 { 0 } else { d[k] / d[k - 1] }).collect()
}
