//! Exact integer linear algebra: sparse matrices, Hermite/Smith normal forms,
//! and the lattice operations (kernels, spans, quotients) that every homology
//! computation in this crate is built on.
//!
//! Everything uses arbitrary-precision integers. Coefficient growth during
//! elimination is real even for the small matrices produced by desk-scale
//! complexes, so machine integers are never used for pivots.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Sparse integer matrix with explicit dimensions. Entries may be interpreted
/// over Z or over Z/p^M when `modulus` is set; stored zeros are forbidden.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<(usize, usize), BigInt>,
    pub modulus: Option<BigInt>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new(), modulus: None }
    }

    pub fn with_modulus(rows: usize, cols: usize, modulus: BigInt) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new(), modulus: Some(modulus) }
    }

    pub fn set<T: Into<BigInt>>(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let mut v: BigInt = v.into();
        if let Some(m) = &self.modulus {
            v = v.mod_floor(m);
        }
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to<T: Into<BigInt>>(&mut self, i: usize, j: usize, v: T) {
        let cur = self.entries.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero);
        self.set(i, j, cur + v.into());
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> IntMat {
        let mut m = IntMat::zero(self.rows, self.cols);
        for ((i, j), v) in &self.entries {
            m[(*i, *j)] = v.clone();
        }
        m
    }

    /// Matrix product self * other, respecting a shared modulus if present.
    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_col: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            by_col.entry(*k).or_default().push((*i, a));
        }
        let mut out = SparseIntMatrix::zero(self.rows, other.cols);
        out.modulus = self.modulus.clone().or_else(|| other.modulus.clone());
        for ((k, j), b) in &other.entries {
            if let Some(col) = by_col.get(k) {
                for (i, a) in col {
                    out.add_to(*i, *j, *a * b);
                }
            }
        }
        Ok(out)
    }
}

/// Dense arbitrary-precision integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let p = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hconcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Keep the listed columns, in order.
    pub fn select_columns(&self, idx: &[usize]) -> IntMat {
        let mut out = IntMat::zero(self.rows, idx.len());
        for (jj, j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, jj)] = self[(i, *j)].clone();
            }
        }
        out
    }

    /// Keep the listed rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMat {
        let mut out = IntMat::zero(idx.len(), self.cols);
        for (ii, i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out[(ii, j)] = self[(*i, j)].clone();
            }
        }
        out
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// col_b -= q * col_a
    fn sub_col(&mut self, b: usize, a: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, a)] * q;
            self[(i, b)] -= t;
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self[(i, a)].clone();
            self[(i, a)] = v;
        }
    }
}

/// Column echelon reduction: brings `m` to a column Hermite-like form by
/// unimodular column operations, mirroring every operation on `tr` when given.
/// Returns the list of (pivot_row, pivot_col) in elimination order.
fn column_echelon(m: &mut IntMat, mut tr: Option<&mut IntMat>) -> Vec<(usize, usize)> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_col = 0usize;
    for row in 0..m.rows {
        if next_col >= m.cols {
            break;
        }
        loop {
            // pick nonzero entry of minimal absolute value in this row among active columns
            let mut best: Option<usize> = None;
            for j in next_col..m.cols {
                if !m[(row, j)].is_zero()
                    && best.map_or(true, |b| m[(row, j)].abs() < m[(row, b)].abs())
                {
                    best = Some(j);
                }
            }
            let Some(p) = best else { break };
            m.swap_cols(next_col, p);
            if let Some(t) = tr.as_deref_mut() {
                t.swap_cols(next_col, p);
            }
            let mut done = true;
            for j in (next_col + 1)..m.cols {
                if m[(row, j)].is_zero() {
                    continue;
                }
                let q = div_round(&m[(row, j)], &m[(row, next_col)]);
                m.sub_col(j, next_col, &q);
                if let Some(t) = tr.as_deref_mut() {
                    t.sub_col(j, next_col, &q);
                }
                if !m[(row, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !m[(row, next_col.min(m.cols - 1))].is_zero() && next_col < m.cols {
            if m[(row, next_col)].is_negative() {
                m.negate_col(next_col);
                if let Some(t) = tr.as_deref_mut() {
                    t.negate_col(next_col);
                }
            }
            pivots.push((row, next_col));
            next_col += 1;
        }
    }
    pivots
}

/// Integer kernel of `m`: columns form a basis of { v : m v = 0 }.
pub fn kernel(m: &IntMat) -> IntMat {
    let mut work = m.clone();
    let mut tr = IntMat::identity(m.cols);
    let pivots = column_echelon(&mut work, Some(&mut tr));
    let rank = pivots.len();
    let free: Vec<usize> = (rank..m.cols).collect();
    tr.select_columns(&free)
}

/// Basis of the column span (lattice) of `m`: nonzero columns of the column
/// echelon form. The result has independent columns.
pub fn column_span_basis(m: &IntMat) -> IntMat {
    let mut work = m.clone();
    let pivots = column_echelon(&mut work, None);
    let keep: Vec<usize> = (0..pivots.len()).collect();
    work.select_columns(&keep)
}

/// Like [`column_span_basis`], also returning the combination matrix c with
/// basis = m * c.
pub fn column_span_basis_with_transform(m: &IntMat) -> (IntMat, IntMat) {
    let mut work = m.clone();
    let mut tr = IntMat::identity(m.cols);
    let pivots = column_echelon(&mut work, Some(&mut tr));
    let keep: Vec<usize> = (0..pivots.len()).collect();
    (work.select_columns(&keep), tr.select_columns(&keep))
}

/// Solve basis * x = v exactly over Z; `basis` must have independent columns.
pub fn solve_in_span(basis: &IntMat, v: &[BigInt]) -> Option<Vec<BigInt>> {
    // Reduce [basis] to column echelon, tracking the transform, then forward
    // substitute along pivot rows and verify the residual vanishes.
    let mut work = basis.clone();
    let mut tr = IntMat::identity(basis.cols);
    let pivots = column_echelon(&mut work, Some(&mut tr));
    let mut residual: Vec<BigInt> = v.to_vec();
    let mut y = vec![BigInt::zero(); basis.cols];
    for (row, col) in &pivots {
        let q = &residual[*row] / &work[(*row, *col)];
        if !(&residual[*row] - &q * &work[(*row, *col)]).is_zero() {
            return None;
        }
        for i in 0..basis.rows {
            let t = &work[(i, *col)] * &q;
            residual[i] -= t;
        }
        y[*col] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(tr.mul_vec(&y))
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // rounded division keeps entries small during elimination
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Result of a Smith normal form computation: d contains the diagonal
/// invariant factors (nonnegative, divisibility chain), and u * m * v = diag(d)
/// when transforms were requested.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: Vec<BigInt>,
    pub u: Option<IntMat>,
    pub v: Option<IntMat>,
}

/// Smith normal form over Z with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMat, with_transforms: bool) -> Snf {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut u = if with_transforms { Some(IntMat::identity(rows)) } else { None };
    let mut v = if with_transforms { Some(IntMat::identity(cols)) } else { None };

    let sub_row = |a: &mut IntMat, u: &mut Option<IntMat>, dst: usize, src: usize, q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for j in 0..a.cols {
            let t = &a[(src, j)] * q;
            a[(dst, j)] -= t;
        }
        if let Some(u) = u {
            for j in 0..u.cols {
                let t = &u[(src, j)] * q;
                u[(dst, j)] -= t;
            }
        }
    };
    let swap_rows = |a: &mut IntMat, u: &mut Option<IntMat>, x: usize, y: usize| {
        if x == y {
            return;
        }
        for j in 0..a.cols {
            let tmp = a[(x, j)].clone();
            a[(x, j)] = a[(y, j)].clone();
            a[(y, j)] = tmp;
        }
        if let Some(u) = u {
            for j in 0..u.cols {
                let tmp = u[(x, j)].clone();
                u[(x, j)] = u[(y, j)].clone();
                u[(y, j)] = tmp;
            }
        }
    };
    let sub_col = |a: &mut IntMat, v: &mut Option<IntMat>, dst: usize, src: usize, q: &BigInt| {
        a.sub_col(dst, src, q);
        if let Some(v) = v {
            v.sub_col(dst, src, q);
        }
    };
    let swap_cols = |a: &mut IntMat, v: &mut Option<IntMat>, x: usize, y: usize| {
        a.swap_cols(x, y);
        if let Some(v) = v {
            v.swap_cols(x, y);
        }
    };

    let n = rows.min(cols);
    let mut t = 0usize;
    while t < n {
        // locate pivot of minimal absolute value in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, &mut u, t, pi);
        swap_cols(&mut a, &mut v, t, pj);
        // clear row and column t
        loop {
            let mut clean = true;
            for i in (t + 1)..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = div_round(&a[(i, t)].clone(), &a[(t, t)].clone());
                sub_row(&mut a, &mut u, i, t, &q);
                if !a[(i, t)].is_zero() {
                    swap_rows(&mut a, &mut u, t, i);
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = div_round(&a[(t, j)].clone(), &a[(t, t)].clone());
                sub_col(&mut a, &mut v, j, t, &q);
                if !a[(t, j)].is_zero() {
                    swap_cols(&mut a, &mut v, t, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        // enforce divisibility: pivot must divide the remaining block
        let mut retry = false;
        'outer: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !(&a[(i, j)] % &a[(t, t)]).is_zero() {
                    // add row i to row t and restart the elimination at t
                    let minus_one = -BigInt::one();
                    sub_row(&mut a, &mut u, t, i, &minus_one);
                    retry = true;
                    break 'outer;
                }
            }
        }
        if retry {
            continue;
        }
        if a[(t, t)].is_negative() {
            for j in 0..cols {
                let nv = -a[(t, j)].clone();
                a[(t, j)] = nv;
            }
            if let Some(u) = &mut u {
                for j in 0..u.cols {
                    let nv = -u[(t, j)].clone();
                    u[(t, j)] = nv;
                }
            }
        }
        t += 1;
    }
    let d: Vec<BigInt> = (0..n).map(|i| a[(i, i)].clone()).collect();
    Snf { d, u, v }
}

/// Invariant factors > 1 together with the rank (number of nonzero factors).
pub fn invariant_factors(m: &IntMat) -> (Vec<BigInt>, usize) {
    let snf = smith_normal_form(m, false);
    let rank = snf.d.iter().filter(|x| !x.is_zero()).count();
    let tors = snf.d.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect();
    (tors, rank)
}

/// Finitely generated abelian group presented as invariant factors plus a free rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroup {
    /// Torsion invariant factors > 1, in divisibility order.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbGroup {
    pub fn trivial() -> Self {
        AbGroup { torsion: vec![], free_rank: 0 }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// p-exponents of the p-primary part, ascending.
    pub fn p_exponents(&self, p: u64) -> Vec<u32> {
        let p = BigInt::from(p);
        let mut out: Vec<u32> = self
            .torsion
            .iter()
            .filter_map(|d| {
                let mut e = 0u32;
                let mut d = d.clone();
                while (&d % &p).is_zero() {
                    e += 1;
                    d /= &p;
                }
                if e > 0 {
                    Some(e)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Quotient L / K of lattices, where the columns of `l_basis` are independent
/// and the columns of `k_gens` lie in L. Errors if some generator is outside L.
pub fn lattice_quotient(l_basis: &IntMat, k_gens: &IntMat) -> Result<AbGroup, Error> {
    let r = l_basis.cols;
    if k_gens.cols == 0 || r == 0 {
        return Ok(AbGroup { torsion: vec![], free_rank: r });
    }
    let mut coords = IntMat::zero(r, k_gens.cols);
    for j in 0..k_gens.cols {
        let col = k_gens.column(j);
        let x = solve_in_span(l_basis, &col)
            .ok_or_else(|| Error::Lattice("quotient generator outside the lattice".into()))?;
        for i in 0..r {
            coords[(i, j)] = x[i].clone();
        }
    }
    let (tors, rank) = invariant_factors(&coords);
    Ok(AbGroup { torsion: tors, free_rank: r - rank })
}

/// Lattice { v in Z^n : m v in span(l2) }, returned as a column basis.
/// When `l2` has no columns the condition is m v = 0.
pub fn preimage_lattice(m: &IntMat, l2: &IntMat) -> IntMat {
    if l2.cols == 0 {
        return kernel(m);
    }
    assert_eq!(m.rows, l2.rows);
    let combined = m.hconcat(l2);
    let ker = kernel(&combined);
    // top block of the kernel generates the projection; re-extract a basis
    let top = ker.select_rows(&(0..m.cols).collect::<Vec<_>>());
    column_span_basis(&top)
}

/// Intersection of the column spans of `a` and `b`.
pub fn lattice_intersection(a: &IntMat, b: &IntMat) -> IntMat {
    assert_eq!(a.rows, b.rows);
    let combined = a.hconcat(b);
    let ker = kernel(&combined);
    let coeffs = ker.select_rows(&(0..a.cols).collect::<Vec<_>>());
    column_span_basis(&a.mul(&coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn snf_identity() {
        let m = IntMat::identity(2);
        let snf = smith_normal_form(&m, false);
        assert_eq!(snf.d, vec![big(1), big(1)]);
    }

    #[test]
    fn snf_p_block() {
        // [[p,0],[1,p]] has invariant factors (1, p^2); entry gcd is 1, det p^2
        for p in [2i64, 3, 5] {
            let m = IntMat::from_rows(vec![vec![p, 0], vec![1, p]]);
            let snf = smith_normal_form(&m, false);
            assert_eq!(snf.d, vec![big(1), big(p * p)]);
        }
    }

    #[test]
    fn snf_2_4_6_8() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let m = IntMat::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m, true);
        assert_eq!(snf.d, vec![big(2), big(4)]);
        // U*M*V = D and the divisibility chain holds
        let u = snf.u.unwrap();
        let v = snf.v.unwrap();
        let d = u.mul(&m).mul(&v);
        assert_eq!(d[(0, 0)], big(2));
        assert_eq!(d[(0, 1)], big(0));
        assert_eq!(d[(1, 0)], big(0));
        assert_eq!(d[(1, 1)], big(4));
    }

    #[test]
    fn snf_divisibility_chain_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let r = rng.gen_range(1..5);
            let c = rng.gen_range(1..5);
            let mut m = IntMat::zero(r, c);
            for i in 0..r {
                for j in 0..c {
                    m[(i, j)] = big(rng.gen_range(-9..10));
                }
            }
            let snf = smith_normal_form(&m, true);
            for w in snf.d.windows(2) {
                if !w[1].is_zero() {
                    assert!((&w[1] % &w[0].clone().max(BigInt::one())).is_zero());
                }
            }
            let d = snf.u.unwrap().mul(&m).mul(&snf.v.unwrap());
            for i in 0..r {
                for j in 0..c {
                    if i == j && i < snf.d.len() {
                        assert_eq!(d[(i, j)], snf.d[i]);
                    } else {
                        assert!(d[(i, j)].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_of_projection() {
        // kernel of [1 1 0; 0 0 1] is spanned by (1,-1,0)
        let m = IntMat::from_rows(vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let k = kernel(&m);
        assert_eq!(k.cols, 1);
        assert!(m.mul(&k).is_zero());
        assert_eq!(k[(0, 0)].abs(), big(1));
    }

    #[test]
    fn solve_and_membership() {
        let b = IntMat::from_rows(vec![vec![2, 0], vec![0, 3], vec![1, 1]]);
        let v = vec![big(4), big(3), big(3)];
        let x = solve_in_span(&b, &v).unwrap();
        assert_eq!(b.mul_vec(&x), v);
        let w = vec![big(1), big(0), big(0)];
        assert!(solve_in_span(&b, &w).is_none());
    }

    #[test]
    fn quotient_zp2() {
        // Z / (p^2 Z) as a lattice quotient
        let l = IntMat::identity(1);
        let mut k = IntMat::zero(1, 1);
        k[(0, 0)] = big(9);
        let g = lattice_quotient(&l, &k).unwrap();
        assert_eq!(g.torsion, vec![big(9)]);
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.p_exponents(3), vec![2]);
    }

    #[test]
    fn preimage_and_intersection() {
        // {v : Mv in 2Z^2} for M = identity is 2Z^2... realized through spans
        let m = IntMat::identity(2);
        let mut l2 = IntMat::zero(2, 2);
        l2[(0, 0)] = big(2);
        l2[(1, 1)] = big(2);
        let pre = preimage_lattice(&m, &l2);
        let g = lattice_quotient(&IntMat::identity(2), &pre).unwrap();
        assert_eq!(g.torsion, vec![big(2), big(2)]);

        let a = IntMat::from_rows(vec![vec![2, 0], vec![0, 1]]);
        let b = IntMat::from_rows(vec![vec![3, 0], vec![0, 1]]);
        let i = lattice_intersection(&a, &b);
        let g = lattice_quotient(&IntMat::identity(2), &i).unwrap();
        assert_eq!(g.torsion, vec![big(6)]);
    }
}
