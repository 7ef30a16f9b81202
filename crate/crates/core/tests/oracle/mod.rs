//! Brute-force reference computations on small integer matrices. Nothing
//! here calls into the library; the tests compare the two.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

pub type Mat = Vec<Vec<i64>>;

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `gcd` of all `k x k` minors, for `k = 0..=min(rows, cols)`; `Δ_0 = 1`.
pub fn determinantal_divisors(m: &Mat, cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut out = vec![1];
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                g = gcd(g, det(&sub));
            }
        }
        out.push(g);
    }
    out
}

/// Invariant factors `Δ_k / Δ_{k-1}` up to the rank; the rank is the
/// largest `k` with `Δ_k != 0`.
pub fn invariant_factors(m: &Mat, cols: usize) -> (Vec<i128>, usize) {
    let d = determinantal_divisors(m, cols);
    let rank = d.iter().rposition(|&x| x != 0).unwrap_or(0);
    let factors = (1..=rank).map(|k| d[k] / d[k - 1]).collect();
    (factors, rank)
}

/// Upper-triangular row basis with positive pivots of the lattice spanned
/// by the rows, when it has full rank `cols`.
pub fn hermite_basis(m: &Mat, cols: usize) -> Option<Vec<Vec<i128>>> {
    let mut rows: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut basis = Vec::new();
    for j in 0..cols {
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][j] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| rows[i][j].abs()).unwrap();
            for &i in &nonzero {
                if i != p {
                    let q = rows[i][j].div_euclid(rows[p][j]);
                    for c in 0..cols {
                        rows[i][c] -= q * rows[p][c];
                    }
                }
            }
        }
        let p = (0..rows.len()).find(|&i| rows[i][j] != 0)?;
        let mut pivot = rows.remove(p);
        if pivot[j] < 0 {
            pivot.iter_mut().for_each(|v| *v = -*v);
        }
        basis.push(pivot);
    }
    Some(basis)
}

/// Canonical coset representative of `x` modulo the lattice with Hermite basis `h`.
pub fn reduce(h: &[Vec<i128>], x: &[i128]) -> Vec<i128> {
    let mut x = x.to_vec();
    for (i, row) in h.iter().enumerate() {
        let q = x[i].div_euclid(row[i]);
        for c in 0..x.len() {
            x[c] -= q * row[c];
        }
    }
    x
}

/// All cosets of a full-rank lattice in `Z^cols`.
pub fn cosets(h: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut out = vec![vec![]];
    for row_i in h.iter().enumerate().map(|(i, r)| r[i]) {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i128>| {
                (0..row_i).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Number of cosets killed by `k`.
pub fn killed_by(h: &[Vec<i128>], reps: &[Vec<i128>], k: i128) -> usize {
    reps.iter()
        .filter(|x| {
            let kx: Vec<i128> = x.iter().map(|v| v * k).collect();
            reduce(h, &kx).iter().all(|&v| v == 0)
        })
        .count()
}

/// Order of the subgroup of `⊕ Z/m_i` generated by the rows, by closure.
pub fn generated_order(moduli: &[i64], gens: &Mat) -> usize {
    let norm = |v: Vec<i64>| -> Vec<i64> { v.iter().zip(moduli).map(|(x, m)| x.rem_euclid(*m)).collect() };
    let zero = vec![0; moduli.len()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = norm(x.iter().zip(g).map(|(a, b)| a + b).collect());
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// `C(n, k)` read off Pascal's triangle.
pub fn pascal(max: usize) -> Vec<Vec<u128>> {
    let mut t = vec![vec![1u128]];
    for n in 1..=max {
        let prev = &t[n - 1];
        let row = (0..=n)
            .map(|k| if k == 0 || k == n { 1 } else { prev[k - 1] + prev[k] })
            .collect();
        t.push(row);
    }
    t
}

/// `C(n, k)` with the convention zero outside `0 <= k <= n`.
pub fn choose(t: &[Vec<u128>], n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        t[n as usize][k as usize]
    }
}
