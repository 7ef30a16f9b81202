//! Finitely generated abelian groups in invariant-factor form, and the integer
//! linear algebra (Smith normal form, kernels, linear solves) behind them.
//!
//! Coordinates of an element of `Z^r + Z/d1 + ... + Z/dk` are the `r` free
//! coordinates followed by one residue per invariant factor. Subgroups are
//! given by generator matrices whose rows are elements in these coordinates.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::matrix::IntMatrix;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelian {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelian {
    pub fn trivial() -> Self {
        FgAbelian {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelian {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`; `n = 1` is the trivial group.
    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        if n == 1 {
            Self::trivial()
        } else {
            FgAbelian {
                rank: 0,
                torsion: vec![BigInt::from(n)],
            }
        }
    }

    /// Invariant-factor form of `Z^rank + sum Z/t_i`.
    pub fn canonical_form<T: Into<BigInt> + Clone>(rank: usize, torsion: &[T]) -> Result<Self> {
        let torsion: Vec<BigInt> = torsion.iter().cloned().map(Into::into).collect();
        if let Some(bad) = torsion.iter().find(|t| *t < &BigInt::from(2)) {
            return Err(Error::invalid(alloc::format!(
                "torsion entry {bad} is smaller than 2"
            )));
        }
        Ok(Self::from_moduli(rank, &torsion))
    }

    /// Like [`canonical_form`](Self::canonical_form) but tolerates moduli 0
    /// (an extra free summand) and 1 (dropped).
    fn from_moduli(rank: usize, moduli: &[BigInt]) -> Self {
        let mut rank = rank;
        let mut cyclic = Vec::new();
        for m in moduli {
            if m.is_zero() {
                rank += 1;
            } else if !m.abs().is_one() {
                cyclic.push(m.abs());
            }
        }
        if cyclic.is_empty() {
            return Self::free(rank);
        }
        let snf = smith_normal_form(&IntMatrix::diagonal(&cyclic));
        let torsion = snf.diag.into_iter().filter(|d| !d.is_one()).collect();
        FgAbelian { rank, torsion }
    }

    /// Trusts the caller that `torsion` is already a divisor chain of entries >= 2.
    fn from_chain(rank: usize, torsion: Vec<BigInt>) -> Self {
        debug_assert!(torsion.iter().all(|t| t >= &BigInt::from(2)));
        debug_assert!(torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        FgAbelian { rank, torsion }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of coordinates (free plus torsion).
    pub fn ngens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> ExtNat {
        if self.rank > 0 {
            return ExtNat::Infinite;
        }
        let mut n = num_bigint::BigUint::one();
        for t in &self.torsion {
            n *= t.magnitude();
        }
        ExtNat::Finite(n)
    }

    /// Modulus of coordinate `i`: zero for free coordinates.
    pub fn modulus(&self, i: usize) -> BigInt {
        if i < self.rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.rank].clone()
        }
    }

    pub fn direct_product(&self, other: &FgAbelian) -> FgAbelian {
        let mut moduli = self.torsion.clone();
        moduli.extend(other.torsion.iter().cloned());
        Self::from_moduli(self.rank + other.rank, &moduli)
    }

    pub fn power(&self, k: usize) -> FgAbelian {
        let mut moduli = Vec::with_capacity(self.torsion.len() * k);
        for _ in 0..k {
            moduli.extend(self.torsion.iter().cloned());
        }
        Self::from_moduli(self.rank * k, &moduli)
    }

    pub fn is_isomorphic(&self, other: &FgAbelian) -> bool {
        self == other
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ngens(), "coordinate length mismatch");
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                if i < self.rank {
                    x.clone()
                } else {
                    x.mod_floor(&self.torsion[i - self.rank])
                }
            })
            .collect()
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ngens()]
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let sum: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&sum)
    }

    pub fn neg(&self, a: &[BigInt]) -> Vec<BigInt> {
        let n: Vec<BigInt> = a.iter().map(|x| -x).collect();
        self.reduce(&n)
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&d)
    }

    /// All elements of a finite group in lexicographic residue order.
    pub fn elements(&self) -> Result<Vec<Vec<BigInt>>> {
        if self.rank > 0 {
            return Err(Error::unsupported("cannot enumerate an infinite group"));
        }
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let mut next = Vec::new();
            for prefix in &out {
                let mut r = BigInt::zero();
                while &r < d {
                    let mut e = prefix.clone();
                    e.push(r.clone());
                    next.push(e);
                    r += 1;
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// One relation row `d_j e_{rank+j}` per torsion coordinate.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.ngens();
        let mut m = IntMatrix::zeros(self.torsion.len(), n);
        for (j, d) in self.torsion.iter().enumerate() {
            m.set(j, self.rank + j, d.clone());
        }
        m
    }

    /// `n x t` matrix whose columns are the torsion relations; used on the
    /// right of a homomorphism matrix to solve equations modulo the target.
    fn relation_columns(&self) -> IntMatrix {
        self.relation_matrix().transpose()
    }

    fn check_generators(&self, generators: &IntMatrix) -> Result<()> {
        if generators.cols() != self.ngens() {
            return Err(Error::invalid(alloc::format!(
                "generator matrix has {} columns, ambient group has {} coordinates",
                generators.cols(),
                self.ngens()
            )));
        }
        Ok(())
    }

    /// Isomorphism type of the subgroup generated by the rows of `generators`.
    pub fn subgroup_structure(&self, generators: &IntMatrix) -> Result<FgAbelian> {
        self.check_generators(generators)?;
        let k = generators.rows();
        if k == 0 {
            return Ok(Self::trivial());
        }
        // x in Z^k is a relation iff G^T x lies in the torsion lattice.
        let system = generators.transpose().hstack(&negated(&self.relation_columns()));
        let kernel = integer_kernel(&system);
        let mut relations = IntMatrix::zeros(0, k);
        for r in 0..kernel.rows() {
            relations.push_row(&kernel.row(r)[..k]);
        }
        cokernel(k, &[] as &[BigInt], &relations)
    }

    /// Whether `v` lies in the subgroup generated by the rows of `generators`.
    pub fn contains(&self, generators: &IntMatrix, v: &[BigInt]) -> Result<bool> {
        self.check_generators(generators)?;
        if v.len() != self.ngens() {
            return Err(Error::invalid("element has the wrong number of coordinates"));
        }
        let system = generators.transpose().hstack(&negated(&self.relation_columns()));
        Ok(solve_integer_system(&system, v).is_some())
    }

    /// Moduli of the coordinates: zero for free coordinates, then the invariant factors.
    pub fn moduli(&self) -> Vec<BigInt> {
        (0..self.ngens()).map(|i| self.modulus(i)).collect()
    }

    /// Generators (rows, in `self`'s coordinates) of the kernel of the
    /// homomorphism `self -> target` given by `map` (columns = images of
    /// `self`'s coordinate generators, so `x -> map · x`).
    pub fn kernel_of(&self, map: &IntMatrix, target: &FgAbelian) -> Result<IntMatrix> {
        self.kernel_into(map, &target.moduli())
    }

    /// As [`kernel_of`](Self::kernel_of), with the target given as a list of
    /// coordinate moduli (0 = free), so it need not be in canonical form.
    pub fn kernel_into(&self, map: &IntMatrix, target_moduli: &[BigInt]) -> Result<IntMatrix> {
        if map.cols() != self.ngens() || map.rows() != target_moduli.len() {
            return Err(Error::invalid("homomorphism matrix has the wrong shape"));
        }
        let n = self.ngens();
        let system = map.hstack(&negated(&moduli_columns(target_moduli)));
        let kernel = integer_kernel(&system);
        let mut gens = IntMatrix::zeros(0, n);
        for r in 0..kernel.rows() {
            let v = self.reduce(&kernel.row(r)[..n]);
            if !v.iter().all(Zero::is_zero) {
                gens.push_row(&v);
            }
        }
        Ok(gens)
    }

    /// Some `x` (in `self`'s coordinates) with `map · x = rhs` in `target`.
    pub fn solve(&self, map: &IntMatrix, target: &FgAbelian, rhs: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        self.solve_into(map, &target.moduli(), rhs)
    }

    /// As [`solve`](Self::solve), with the target given as coordinate moduli.
    pub fn solve_into(&self, map: &IntMatrix, target_moduli: &[BigInt], rhs: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if map.cols() != self.ngens() || map.rows() != target_moduli.len() || rhs.len() != target_moduli.len() {
            return Err(Error::invalid("linear system has the wrong shape"));
        }
        let system = map.hstack(&negated(&moduli_columns(target_moduli)));
        Ok(solve_integer_system(&system, rhs).map(|x| self.reduce(&x[..self.ngens()])))
    }

    /// Whether `map` (square, columns = images of generators) is a well-defined
    /// endomorphism: torsion generators must go to elements killed by their order.
    pub fn is_well_defined_endomorphism(&self, map: &IntMatrix) -> bool {
        if map.rows() != self.ngens() || map.cols() != self.ngens() {
            return false;
        }
        (0..self.torsion.len()).all(|j| {
            let col = self.rank + j;
            let image: Vec<BigInt> = (0..map.rows())
                .map(|r| map.get(r, col) * &self.torsion[j])
                .collect();
            self.is_zero_element(&image)
        })
    }

    /// Equality of endomorphisms: same image for every coordinate generator.
    pub fn endomorphisms_equal(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        let n = self.ngens();
        if a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n {
            return false;
        }
        (0..n).all(|c| {
            let diff: Vec<BigInt> = (0..n).map(|r| a.get(r, c) - b.get(r, c)).collect();
            self.is_zero_element(&diff)
        })
    }

    pub fn is_identity_endomorphism(&self, m: &IntMatrix) -> bool {
        self.endomorphisms_equal(m, &IntMatrix::identity(self.ngens()))
    }
}

impl fmt::Debug for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z{t}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for FgAbelian {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FgAbelian", 2)?;
        s.serialize_field("rank", &self.rank)?;
        let torsion: Vec<String> = self.torsion.iter().map(|t| alloc::format!("{t}")).collect();
        let as_numbers: Option<Vec<u64>> = self.torsion.iter().map(num_traits::ToPrimitive::to_u64).collect();
        match as_numbers {
            Some(t) => s.serialize_field("torsion", &t)?,
            None => s.serialize_field("torsion", &torsion)?,
        }
        s.end()
    }
}

/// `n x t` matrix with one column `m_j e_j` per nonzero modulus.
fn moduli_columns(moduli: &[BigInt]) -> IntMatrix {
    let torsion: Vec<usize> = (0..moduli.len()).filter(|&i| !moduli[i].is_zero()).collect();
    let mut m = IntMatrix::zeros(moduli.len(), torsion.len());
    for (c, &i) in torsion.iter().enumerate() {
        m.set(i, c, moduli[i].clone());
    }
    m
}

fn negated(m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for c in 0..out.cols() {
        out.negate_col(c);
    }
    out
}

/// Output of [`smith_normal_form`]: `left · m · right` is the
/// `rows x cols` matrix with `diag` on its main diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl Smith {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form by repeated row and column gcd reduction.
///
/// `diag` has `min(rows, cols)` non-negative entries forming a divisor chain,
/// with zeros last; `left` and `right` are unimodular.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        let Some((pr, pc)) = min_nonzero(&a, t, t..rows, t..cols) else {
            break;
        };
        a.swap_rows(t, pr);
        left.swap_rows(t, pr);
        a.swap_cols(t, pc);
        right.swap_cols(t, pc);

        loop {
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -(a.get(i, t) / &pivot);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -(a.get(t, j) / &pivot);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; promote it
                let in_col = min_nonzero(&a, t, t..rows, t..t + 1);
                let in_row = min_nonzero(&a, t, t..t + 1, t..cols);
                let best = match (in_col, in_row) {
                    (Some(x), Some(y)) => {
                        if a.get(x.0, x.1).abs() <= a.get(y.0, y.1).abs() {
                            x
                        } else {
                            y
                        }
                    }
                    (Some(x), None) | (None, Some(x)) => x,
                    (None, None) => unreachable!("pivot itself is nonzero"),
                };
                a.swap_rows(t, best.0);
                left.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                right.swap_cols(t, best.1);
                continue;
            }
            // row and column are clear; enforce divisibility of the rest
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(a.get(i, j) % &pivot).is_zero())
            });
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diag = (0..steps).map(|i| a.get(i, i).clone()).collect();
    Smith { diag, left, right }
}

fn min_nonzero(
    a: &IntMatrix,
    _t: usize,
    rows: core::ops::Range<usize>,
    cols: core::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Basis (as rows) of the integer kernel `{x : m · x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let n = m.cols();
    let mut basis = IntMatrix::zeros(0, n);
    for j in r..n {
        let col: Vec<BigInt> = (0..n).map(|i| snf.right.get(i, j).clone()).collect();
        basis.push_row(&col);
    }
    basis
}

/// An integer solution of `m · x = b`, if one exists.
pub fn solve_integer_system(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(m);
    let c = snf.left.apply(b);
    let n = m.cols();
    let mut z = vec![BigInt::zero(); n];
    for (i, ci) in c.iter().enumerate() {
        let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let (q, rem) = ci.div_rem(&d);
            if !rem.is_zero() {
                return None;
            }
            z[i] = q;
        }
    }
    Some(snf.right.apply(&z))
}

/// Quotient of `Z^ambient_rank + sum Z/t_i` by the subgroup spanned by the rows of `relations`.
pub fn cokernel<T: Into<BigInt> + Clone>(
    ambient_rank: usize,
    ambient_torsion: &[T],
    relations: &IntMatrix,
) -> Result<FgAbelian> {
    let torsion: Vec<BigInt> = ambient_torsion.iter().cloned().map(Into::into).collect();
    if torsion.iter().any(|t| t < &BigInt::one()) {
        return Err(Error::invalid("ambient torsion entries must be positive"));
    }
    let n = ambient_rank + torsion.len();
    if relations.cols() != n {
        return Err(Error::invalid(alloc::format!(
            "relation matrix has {} columns, ambient group has {n} generators",
            relations.cols()
        )));
    }
    let mut full = relations.clone();
    for (j, t) in torsion.iter().enumerate() {
        let mut row = vec![BigInt::zero(); n];
        row[ambient_rank + j] = t.clone();
        full.push_row(&row);
    }
    let snf = smith_normal_form(&full);
    let nonzero: Vec<BigInt> = snf.diag.iter().filter(|d| !d.is_zero()).cloned().collect();
    let rank = n - nonzero.len();
    let torsion = nonzero.into_iter().filter(|d| !d.is_one()).collect();
    Ok(FgAbelian::from_chain(rank, torsion))
}

/// Index of the subgroup generated by the rows of `generators` in `ambient`.
pub fn subgroup_index(ambient: &FgAbelian, generators: &IntMatrix) -> Result<ExtNat> {
    ambient.check_generators(generators)?;
    Ok(cokernel(ambient.rank, &ambient.torsion, generators)?.order())
}
