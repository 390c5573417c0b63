//! Exact integer matrix algebra.
//!
//! Everything here works over arbitrary-precision integers. The Smith normal
//! form is the single workhorse: linear systems over Z, congruence systems with
//! per-row moduli, kernels and abelian group presentations are all read off a
//! `U * A * V = D` decomposition.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from row slices. All rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rows[i][j].into())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot stack {} rows beside {} rows",
                self.rows, rhs.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// `u * a * v == d`, with `u` and `v` unimodular and `d` in Smith normal form.
///
/// `u_inv` is carried along because presentations need the inverse change of
/// coordinates to map canonical generators back to the original ones.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `d` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

struct SmithState {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl SmithState {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.u.swap_rows(i, k);
        self.u_inv.swap_cols(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.v.swap_cols(j, k);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row(dst, src, q);
        self.u.add_row(dst, src, q);
        // (I + q e_dst e_src^T)^{-1} = I - q e_dst e_src^T, applied on the right
        let neg = -q;
        self.u_inv.add_col(src, dst, &neg);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col(dst, src, q);
        self.v.add_col(dst, src, q);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest absolute nonzero entry in the trailing block; ties go to the
    /// lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

/// Smith normal form with transforms. Total: every integer matrix has one.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut st = SmithState {
        a: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = st.pivot(t) {
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            let p = st.a[(t, t)].clone();

            let mut remainder = false;
            for i in t + 1..rows {
                if st.a[(i, t)].is_zero() {
                    continue;
                }
                let q = st.a[(i, t)].div_floor(&p);
                st.add_row(i, t, &-q);
                remainder |= !st.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if st.a[(t, j)].is_zero() {
                    continue;
                }
                let q = st.a[(t, j)].div_floor(&p);
                st.add_col(j, t, &-q);
                remainder |= !st.a[(t, j)].is_zero();
            }
            if remainder {
                continue;
            }

            // Row and column are clear; the pivot must divide the rest.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !st.a[(i, j)].is_multiple_of(&p));
            match offender {
                Some((i, _)) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.a[(t, t)].is_zero() {
            break;
        }
        if st.a[(t, t)].is_negative() {
            st.negate_row(t);
        }
    }

    SmithDecomposition {
        u: st.u,
        u_inv: st.u_inv,
        d: st.a,
        v: st.v,
    }
}

/// Some integer solution of `a * x = b`, if any.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {} but matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b)?;
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                let (q, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            }
            _ => {
                if !ci.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(snf.v.mul_vec(&y)?))
}

fn lift_congruences(a: &IntMatrix, moduli: &[BigInt]) -> Result<IntMatrix> {
    if moduli.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "{} moduli for {} equations",
            moduli.len(),
            a.rows()
        )));
    }
    a.hstack(&IntMatrix::diagonal(moduli))
}

/// Some `x` with `(a * x)_i ≡ b_i (mod moduli_i)` for every row `i`.
///
/// Solved as the integer system `[a | diag(moduli)] * [x; y] = b`. The returned
/// `x` is not reduced; callers know the column orders.
pub fn solve_congruences(
    a: &IntMatrix,
    b: &[BigInt],
    moduli: &[BigInt],
) -> Result<Option<Vec<BigInt>>> {
    let lifted = lift_congruences(a, moduli)?;
    Ok(solve_integer(&lifted, b)?.map(|mut z| {
        z.truncate(a.cols());
        z
    }))
}

/// Lattice generators of `{x in Z^cols : (a * x)_i ≡ 0 (mod moduli_i)}`.
pub fn congruence_kernel(a: &IntMatrix, moduli: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let lifted = lift_congruences(a, moduli)?;
    let snf = smith_normal_form(&lifted);
    let rank = snf.rank();
    Ok((rank..lifted.cols())
        .map(|j| snf.v.column(j)[..a.cols()].to_vec())
        .filter(|x| x.iter().any(|e| !e.is_zero()))
        .collect())
}

/// Lattice generators of the integer kernel `{x : a * x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (snf.rank()..a.cols()).map(|j| snf.v.column(j)).collect()
}

fn check_modulus(n: &BigInt) -> Result<()> {
    if *n < BigInt::from(2) {
        return Err(Error::Dimension(format!("modulus {n} is below 2")));
    }
    Ok(())
}

/// A solution of `a * x ≡ b (mod n)` with entries in `[0, n)`, if one exists.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], n: &BigInt) -> Result<Option<Vec<BigInt>>> {
    check_modulus(n)?;
    let moduli = vec![n.clone(); a.rows()];
    Ok(solve_congruences(a, b, &moduli)?
        .map(|x| x.into_iter().map(|e| e.mod_floor(n)).collect()))
}

/// Generators of `{x in (Z/n)^cols : a * x ≡ 0 (mod n)}`, entries in `[0, n)`.
pub fn solution_space_mod(a: &IntMatrix, n: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    check_modulus(n)?;
    let moduli = vec![n.clone(); a.rows()];
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for x in congruence_kernel(a, &moduli)? {
        let x: Vec<BigInt> = x.into_iter().map(|e| e.mod_floor(n)).collect();
        if x.iter().any(|e| !e.is_zero()) && !gens.contains(&x) {
            gens.push(x);
        }
    }
    Ok(gens)
}

/// An abelian group `Z^g / (columns of relations)` brought into invariant
/// factor form.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// Invariant factors `d_1 | d_2 | ...`, all `>= 2`.
    pub factors: Vec<BigInt>,
    /// `factors.len() x g`: coordinates of each original generator.
    pub projection: IntMatrix,
    /// `g x factors.len()`: an original-generator combination for each
    /// canonical generator.
    pub section: IntMatrix,
}

/// Canonical form of `Z^g / <relations>`. Fails if the quotient is infinite.
pub fn present(relations: &IntMatrix) -> Result<Presentation> {
    let g = relations.rows();
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let mut keep = Vec::new();
    for i in 0..g {
        match diag.get(i) {
            Some(d) if d.is_one() => {}
            Some(d) if !d.is_zero() => keep.push((i, d.clone())),
            _ => {
                return Err(Error::InvalidModule(
                    "presentation has a free summand".to_string(),
                ))
            }
        }
    }
    let projection = IntMatrix::from_fn(keep.len(), g, |k, j| {
        let (i, d) = &keep[k];
        snf.u[(*i, j)].mod_floor(d)
    });
    let section = IntMatrix::from_fn(g, keep.len(), |j, k| snf.u_inv[(j, keep[k].0)].clone());
    Ok(Presentation {
        factors: keep.into_iter().map(|(_, d)| d).collect(),
        projection,
        section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_decomposition(a: &IntMatrix) -> SmithDecomposition {
        let snf = smith_normal_form(a);
        let lhs = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        assert_eq!(lhs, snf.d);
        let n = a.rows();
        assert_eq!(snf.u.mul(&snf.u_inv).unwrap(), IntMatrix::identity(n));
        snf
    }

    #[test]
    fn snf_two_by_two() {
        let snf = check_decomposition(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(snf.diagonal(), big(&[2, 4]));
    }

    #[test]
    fn snf_identity_is_fixed() {
        let id = IntMatrix::identity(4);
        let snf = check_decomposition(&id);
        assert_eq!(snf.d, id);
        assert_eq!(snf.u, id);
        assert_eq!(snf.v, id);
    }

    #[test]
    fn snf_zero_matrix() {
        let z = IntMatrix::zeros(3, 2);
        let snf = check_decomposition(&z);
        assert!(snf.d.is_zero());
        assert_eq!(snf.rank(), 0);
    }

    #[test]
    fn snf_empty_shapes() {
        check_decomposition(&IntMatrix::zeros(0, 3));
        check_decomposition(&IntMatrix::zeros(3, 0));
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        // diag(2, 3) is diagonal but not Smith: expect diag(1, 6).
        let snf = check_decomposition(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.diagonal(), big(&[1, 6]));
    }

    #[test]
    fn snf_large_entries_do_not_overflow() {
        let a = m(&[
            vec![i64::MAX, 3, 5],
            vec![7, i64::MAX - 1, 11],
            vec![13, 17, i64::MAX / 3],
        ]);
        check_decomposition(&a);
    }

    #[test]
    fn solve_mod_examples() {
        let n = BigInt::from(4);
        let x = solve_mod(&m(&[vec![2]]), &big(&[0]), &n).unwrap().unwrap();
        assert!(x == big(&[0]) || x == big(&[2]));
        assert_eq!(solve_mod(&m(&[vec![2]]), &big(&[1]), &n).unwrap(), None);
        let x = solve_mod(&IntMatrix::identity(2), &big(&[3, 5]), &BigInt::from(6))
            .unwrap()
            .unwrap();
        assert_eq!(x, big(&[3, 5]));
    }

    #[test]
    fn solve_mod_rejects_bad_shapes() {
        let n = BigInt::from(4);
        assert!(solve_mod(&m(&[vec![2]]), &big(&[0, 1]), &n).is_err());
        assert!(solve_mod(&m(&[vec![2]]), &big(&[0]), &BigInt::from(1)).is_err());
    }

    #[test]
    fn solution_space_examples() {
        let n = BigInt::from(4);
        assert_eq!(solution_space_mod(&m(&[vec![2]]), &n).unwrap(), vec![big(&[2])]);
        assert!(solution_space_mod(&m(&[vec![1]]), &n).unwrap().is_empty());
        assert_eq!(solution_space_mod(&m(&[vec![0]]), &n).unwrap(), vec![big(&[1])]);
    }

    #[test]
    fn congruences_with_mixed_moduli() {
        // x ≡ 1 mod 2, x ≡ 2 mod 3
        let a = m(&[vec![1], vec![1]]);
        let x = solve_congruences(&a, &big(&[1, 2]), &big(&[2, 3])).unwrap().unwrap();
        assert_eq!(x[0].mod_floor(&BigInt::from(6)), BigInt::from(5));
    }

    #[test]
    fn presentation_of_cyclic_sum() {
        // Z/4 + Z/3 is cyclic of order 12
        let p = present(&IntMatrix::diagonal(&big(&[4, 3]))).unwrap();
        assert_eq!(p.factors, big(&[12]));
        // Z/2 + Z/4 stays as is
        let p = present(&IntMatrix::diagonal(&big(&[2, 4]))).unwrap();
        assert_eq!(p.factors, big(&[2, 4]));
        assert_eq!(p.projection, IntMatrix::identity(2));
    }

    #[test]
    fn presentation_rejects_free_part() {
        assert!(present(&IntMatrix::zeros(1, 0)).is_err());
    }
}
