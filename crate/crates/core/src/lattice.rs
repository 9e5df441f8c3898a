//! Exact integer linear algebra: Hermite and Smith normal forms, lattice
//! membership and invariant factors of finitely generated abelian quotients.
//!
//! All arithmetic is on unbounded integers. Lattices are represented by the
//! column span of a matrix and canonicalised to a column-style Hermite normal
//! form, which turns lattice equality into matrix equality.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Errors raised by lattice operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    /// Vector or lattice dimensions do not agree.
    DimensionMismatch { expected: usize, got: usize },
    /// `quotient_invariants` was called with `inner` not contained in `outer`.
    NotASublattice,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            LatticeError::NotASublattice => write!(f, "inner lattice is not a sublattice of outer"),
        }
    }
}

/// Dense matrix of unbounded integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from rows of `i64` entries; handy in tests and constructors.
    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    /// Build from a list of columns.
    pub fn from_columns(ambient: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zero(ambient, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.at(k, j);
                    let cur = out.at(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let idx = |r: usize, c: usize| r * n + c;
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                // pivot search
                let mut found = None;
                for r in k + 1..n {
                    if !a[idx(r, k)].is_zero() {
                        found = Some(r);
                        break;
                    }
                }
                match found {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(idx(k, c), idx(r, c));
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[idx(i, j)] * &a[idx(k, k)] - &a[idx(i, k)] * &a[idx(k, j)];
                    a[idx(i, j)] = &num / &prev;
                }
            }
            prev = a[idx(k, k)].clone();
        }
        sign * a[idx(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// col_dst -= q * col_src
    fn sub_col_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.at(r, dst) - q * self.at(r, src);
            self.set(r, dst, v);
        }
    }

    /// Replace columns (a, b) by (x·a + y·b, s·a + t·b).
    fn combine_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, s: &BigInt, t: &BigInt) {
        for r in 0..self.rows {
            let va = self.at(r, a).clone();
            let vb = self.at(r, b).clone();
            self.set(r, a, x * &va + y * &vb);
            self.set(r, b, s * &va + t * &vb);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// row_dst -= q * row_src
    fn sub_row_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.at(dst, c) - q * self.at(src, c);
            self.set(dst, c, v);
        }
    }
}

/// Column-style Hermite normal form: returns `(h, u)` with `h = m·u`,
/// `u` unimodular, `h` in column echelon with positive pivots and entries to
/// the left of each pivot reduced into `[0, pivot)`. Zero columns trail.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols());
    let mut pivot_col = 0usize;
    for row in 0..h.rows() {
        if pivot_col >= h.cols() {
            break;
        }
        // Bring a nonzero entry for this row into pivot_col, if any.
        let mut j = None;
        for c in pivot_col..h.cols() {
            if !h.at(row, c).is_zero() {
                j = Some(c);
                break;
            }
        }
        let Some(j) = j else { continue };
        h.swap_cols(pivot_col, j);
        u.swap_cols(pivot_col, j);
        // Clear the rest of the row with unimodular column pairs.
        for c in pivot_col + 1..h.cols() {
            if h.at(row, c).is_zero() {
                continue;
            }
            let a = h.at(row, pivot_col).clone();
            let b = h.at(row, c).clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let s = -(&b / &g);
            let t = &a / &g;
            h.combine_cols(pivot_col, c, &x, &y, &s, &t);
            u.combine_cols(pivot_col, c, &x, &y, &s, &t);
        }
        if h.at(row, pivot_col).is_negative() {
            h.negate_col(pivot_col);
            u.negate_col(pivot_col);
        }
        // Reduce earlier columns against the new pivot.
        let p = h.at(row, pivot_col).clone();
        for c in 0..pivot_col {
            let q = h.at(row, c).div_floor(&p);
            h.sub_col_mul(c, pivot_col, &q);
            u.sub_col_mul(c, pivot_col, &q);
        }
        pivot_col += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(s, u, v)` with `s = u·m·v`, `u` and `v`
/// unimodular, `s` diagonal with non-negative entries and `s[0] | s[1] | …`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let n = core::cmp::min(m.rows(), m.cols());
    for k in 0..n {
        'step: loop {
            // Locate a minimal-magnitude nonzero entry in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..s.rows() {
                for j in k..s.cols() {
                    if s.at(i, j).is_zero() {
                        continue;
                    }
                    match &best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if s.at(i, j).abs() < s.at(*bi, *bj).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'step };
            s.swap_rows(k, bi);
            u.swap_rows(k, bi);
            s.swap_cols(k, bj);
            v.swap_cols(k, bj);

            let mut dirty = false;
            for i in k + 1..s.rows() {
                let q = s.at(i, k).div_floor(&s.at(k, k).clone());
                s.sub_row_mul(i, k, &q);
                u.sub_row_mul(i, k, &q);
                if !s.at(i, k).is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..s.cols() {
                let q = s.at(k, j).div_floor(&s.at(k, k).clone());
                s.sub_col_mul(j, k, &q);
                v.sub_col_mul(j, k, &q);
                if !s.at(k, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'step;
            }
            // Row and column are clear; enforce divisibility on the block.
            let p = s.at(k, k).clone();
            let mut fixed = true;
            'block: for i in k + 1..s.rows() {
                for j in k + 1..s.cols() {
                    if !(s.at(i, j) % &p).is_zero() {
                        // Fold the offending row into row k and restart.
                        let one = BigInt::one();
                        s.sub_row_mul(k, i, &-&one);
                        u.sub_row_mul(k, i, &-&one);
                        fixed = false;
                        break 'block;
                    }
                }
            }
            if fixed {
                break 'step;
            }
        }
        if s.at(k, k).is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
    }
    (s, u, v)
}

/// Invariant factors of a finitely generated abelian group: free rank plus a
/// divisibility chain `d₁ | d₂ | …` of torsion orders, each `≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl InvariantFactors {
    pub fn trivial() -> Self {
        InvariantFactors {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Build from an unsorted list of cyclic orders of 2-power (or any
    /// prime-power for a single prime) summands; orders `≤ 1` are dropped.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let mut torsion: Vec<BigInt> = orders.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        torsion.sort();
        InvariantFactors {
            free_rank: 0,
            torsion,
        }
    }

    /// Group order; `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        let mut o = BigInt::one();
        for d in &self.torsion {
            o *= d;
        }
        Some(o)
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        if self.free_rank == 1 {
            write!(f, "Z")?;
            first = false;
        } else if self.free_rank > 1 {
            write!(f, "Z^{}", self.free_rank)?;
            first = false;
        }
        for d in &self.torsion {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        Ok(())
    }
}

/// Subgroup of `ℤ^r` given as the integer column span of a generator matrix,
/// canonicalised to column Hermite form with zero columns dropped.
///
/// Two lattices are equal iff their basis matrices are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient_rank: usize,
    basis: IntMatrix,
    /// First nonzero row of each basis column (strictly increasing).
    pivots: Vec<usize>,
}

impl IntegerLattice {
    /// Lattice generated by the columns of `gens` inside `ℤ^ambient_rank`.
    pub fn from_generators(ambient_rank: usize, gens: &[Vec<BigInt>]) -> Self {
        for g in gens {
            assert_eq!(g.len(), ambient_rank, "generator length mismatch");
        }
        let m = IntMatrix::from_columns(ambient_rank, gens);
        let (h, _) = hermite_normal_form(&m);
        Self::from_hnf(ambient_rank, h)
    }

    pub fn zero(ambient_rank: usize) -> Self {
        IntegerLattice {
            ambient_rank,
            basis: IntMatrix::zero(ambient_rank, 0),
            pivots: Vec::new(),
        }
    }

    /// The full lattice `ℤ^r`.
    pub fn full(ambient_rank: usize) -> Self {
        IntegerLattice {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
            pivots: (0..ambient_rank).collect(),
        }
    }

    fn from_hnf(ambient_rank: usize, h: IntMatrix) -> Self {
        let mut cols = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..h.cols() {
            let col = h.column(c);
            if let Some(p) = col.iter().position(|x| !x.is_zero()) {
                pivots.push(p);
                cols.push(col);
            }
        }
        IntegerLattice {
            ambient_rank,
            basis: IntMatrix::from_columns(ambient_rank, &cols),
            pivots,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis (column HNF, zero columns dropped).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_columns(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    /// Coordinates of `v` in the canonical basis, when `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
        if v.len() != self.ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_rank,
                got: v.len(),
            });
        }
        let mut residual: Vec<BigInt> = v.to_vec();
        let mut coords = vec![BigInt::zero(); self.rank()];
        for (j, &p) in self.pivots.iter().enumerate() {
            // Columns before j are zero at and below row p only above their own
            // pivots; the pivot rows are strictly increasing, so rows < p of
            // the residual must already be clear before using column j.
            let piv = self.basis.at(p, j);
            let (q, r) = residual[p].div_rem(piv);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for i in 0..self.ambient_rank {
                    let d = &q * self.basis.at(i, j);
                    residual[i] -= d;
                }
            }
            coords[j] = q;
        }
        if residual.iter().all(|x| x.is_zero()) {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    /// Membership test against the HNF basis (exact triangular solve).
    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LatticeError> {
        Ok(self.solve(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> Result<bool, LatticeError> {
        for col in other.basis_columns() {
            if !self.contains(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest lattice containing both summands.
    pub fn sum(&self, other: &IntegerLattice) -> Result<IntegerLattice, LatticeError> {
        if self.ambient_rank != other.ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_rank,
                got: other.ambient_rank,
            });
        }
        let mut gens = self.basis_columns();
        gens.extend(other.basis_columns());
        Ok(IntegerLattice::from_generators(self.ambient_rank, &gens))
    }

    /// Least non-negative residue of `v` modulo the lattice: the pivot-row
    /// coordinates land in `[0, pivot)`. Elements are congruent iff their
    /// reductions are equal.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        if v.len() != self.ambient_rank {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_rank,
                got: v.len(),
            });
        }
        let mut res: Vec<BigInt> = v.to_vec();
        for (j, &p) in self.pivots.iter().enumerate() {
            let piv = self.basis.at(p, j);
            let q = res[p].div_floor(piv);
            if !q.is_zero() {
                for i in 0..self.ambient_rank {
                    let d = &q * self.basis.at(i, j);
                    res[i] -= d;
                }
            }
        }
        Ok(res)
    }
}

/// Mutable accumulator for building a lattice from a stream of generators.
///
/// Keeps a column HNF basis at all times; `insert` returns whether the vector
/// enlarged the lattice. Cheaper than re-running a full HNF per generator when
/// the ambient rank is small.
#[derive(Clone, Debug)]
pub struct LatticeBuilder {
    ambient_rank: usize,
    cols: Vec<Vec<BigInt>>,
}

impl LatticeBuilder {
    pub fn new(ambient_rank: usize) -> Self {
        LatticeBuilder {
            ambient_rank,
            cols: Vec::new(),
        }
    }

    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        if v.iter().all(|x| x.is_zero()) {
            return false;
        }
        // Quick reject: already inside the current span.
        if self.build().contains(v).unwrap() {
            return false;
        }
        self.cols.push(v.to_vec());
        let m = IntMatrix::from_columns(self.ambient_rank, &self.cols);
        let (h, _) = hermite_normal_form(&m);
        self.cols = IntegerLattice::from_hnf(self.ambient_rank, h).basis_columns();
        true
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.build().contains(v).unwrap()
    }

    pub fn build(&self) -> IntegerLattice {
        let mut pivots = Vec::new();
        for col in &self.cols {
            pivots.push(col.iter().position(|x| !x.is_zero()).unwrap());
        }
        IntegerLattice {
            ambient_rank: self.ambient_rank,
            basis: IntMatrix::from_columns(self.ambient_rank, &self.cols),
            pivots,
        }
    }
}

/// Invariant factors of `outer/inner` for `inner ⊆ outer`.
///
/// Inner generators are expressed in a basis of `outer`; the Smith diagonal of
/// that coordinate matrix gives the torsion (trailing `1`s dropped), and basis
/// vectors of `outer` missed by `inner` give free rank.
pub fn quotient_invariants(
    outer: &IntegerLattice,
    inner: &IntegerLattice,
) -> Result<InvariantFactors, LatticeError> {
    if outer.ambient_rank() != inner.ambient_rank() {
        return Err(LatticeError::DimensionMismatch {
            expected: outer.ambient_rank(),
            got: inner.ambient_rank(),
        });
    }
    let mut coord_cols = Vec::new();
    for col in inner.basis_columns() {
        match outer.solve(&col)? {
            Some(x) => coord_cols.push(x),
            None => return Err(LatticeError::NotASublattice),
        }
    }
    let x = IntMatrix::from_columns(outer.rank(), &coord_cols);
    let (s, _, _) = smith_normal_form(&x);
    let mut torsion = Vec::new();
    let mut nonzero = 0usize;
    for k in 0..core::cmp::min(s.rows(), s.cols()) {
        let d = s.at(k, k);
        if d.is_zero() {
            continue;
        }
        nonzero += 1;
        if !d.is_one() {
            torsion.push(d.clone());
        }
    }
    Ok(InvariantFactors {
        free_rank: outer.rank() - nonzero,
        torsion,
    })
}

/// Render a basis column like `(8, -8, 0, 0)` for reports.
pub fn render_vector(v: &[BigInt]) -> String {
    use core::fmt::Write;
    let mut s = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bigvec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| big(*x)).collect()
    }

    /// Exhaustive small-coefficient membership oracle, independent of HNF.
    fn member_by_search(gens: &[Vec<BigInt>], v: &[BigInt], bound: i64) -> bool {
        fn rec(gens: &[Vec<BigInt>], acc: &mut Vec<BigInt>, v: &[BigInt], k: usize, bound: i64) -> bool {
            if k == gens.len() {
                return acc.iter().zip(v).all(|(a, b)| a == b);
            }
            for c in -bound..=bound {
                let cb = BigInt::from(c);
                for (a, g) in acc.iter_mut().zip(&gens[k]) {
                    *a += &cb * g;
                }
                if rec(gens, acc, v, k + 1, bound) {
                    return true;
                }
                for (a, g) in acc.iter_mut().zip(&gens[k]) {
                    *a -= &cb * g;
                }
            }
            false
        }
        let mut acc = vec![BigInt::zero(); v.len()];
        rec(gens, &mut acc, v, 0, bound)
    }

    #[test]
    fn hnf_identity() {
        let m = IntMatrix::identity(2);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_already_diagonal() {
        let m = IntMatrix::from_rows_i64(&[&[2, 0], &[0, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, m);
        assert!(u.is_unimodular());
    }

    #[test]
    fn hnf_same_lattice_by_search_oracle() {
        // columns (4,6) and (2,2)
        let m = IntMatrix::from_rows_i64(&[&[4, 2], &[6, 2]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(m.mul(&u), h);
        assert!(u.is_unimodular());
        let mcols = m.columns();
        let hcols = h.columns();
        for col in &hcols {
            assert!(member_by_search(&mcols, col, 8));
        }
        for col in &mcols {
            assert!(member_by_search(&hcols, col, 8));
        }
    }

    #[test]
    fn hnf_reconstruction_and_shape() {
        let m = IntMatrix::from_rows_i64(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(m.mul(&u), h);
        assert!(u.is_unimodular());
        // echelon with positive pivots, reduced left-of-pivot entries
        let mut last = None;
        for c in 0..h.cols() {
            let p = (0..h.rows()).position(|r| !h.at(r, c).is_zero());
            if let Some(p) = p {
                if let Some(lp) = last {
                    assert!(p > lp);
                }
                assert!(h.at(p, c).is_positive());
                for cc in 0..c {
                    assert!(!h.at(p, cc).is_negative() && h.at(p, cc) < h.at(p, c));
                }
                last = Some(p);
            }
        }
    }

    #[test]
    fn hnf_idempotent_on_output() {
        let m = IntMatrix::from_rows_i64(&[&[4, 2], &[6, 2]]);
        let (h, _) = hermite_normal_form(&m);
        let (h2, _) = hermite_normal_form(&h);
        assert_eq!(h, h2);
    }

    #[test]
    fn snf_zero() {
        let m = IntMatrix::zero(2, 3);
        let (s, u, v) = smith_normal_form(&m);
        assert_eq!(s, IntMatrix::zero(2, 3));
        assert!(u.is_unimodular());
        assert!(v.is_unimodular());
    }

    #[test]
    fn snf_determinantal_divisor_oracle() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = |2*8-4*6| = 8 => diag(2,4)
        let m = IntMatrix::from_rows_i64(&[&[2, 4], &[6, 8]]);
        let (s, u, v) = smith_normal_form(&m);
        assert_eq!(s, IntMatrix::from_rows_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(u.mul(&m).mul(&v), s);
        assert!(u.is_unimodular() && v.is_unimodular());
    }

    #[test]
    fn snf_diag_6_4() {
        let m = IntMatrix::from_rows_i64(&[&[6, 0], &[0, 4]]);
        let (s, u, v) = smith_normal_form(&m);
        // gcd 2, product 24 => diag(2, 12)
        assert_eq!(s, IntMatrix::from_rows_i64(&[&[2, 0], &[0, 12]]));
        assert_eq!(u.mul(&m).mul(&v), s);
    }

    #[test]
    fn snf_rectangular_chain() {
        let m = IntMatrix::from_rows_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let (s, u, v) = smith_normal_form(&m);
        assert_eq!(u.mul(&m).mul(&v), s);
        let mut prev: Option<BigInt> = None;
        for k in 0..3 {
            let d = s.at(k, k).clone();
            assert!(!d.is_negative());
            if let Some(p) = &prev {
                if !d.is_zero() {
                    assert!((&d % p).is_zero(), "chain broken: {p} then {d}");
                }
            }
            if !d.is_zero() {
                prev = Some(d);
            }
        }
    }

    #[test]
    fn contains_zero_and_parity() {
        let l = IntegerLattice::from_generators(2, &[bigvec(&[2, 0]), bigvec(&[0, 2])]);
        assert!(l.contains(&bigvec(&[0, 0])).unwrap());
        assert!(!l.contains(&bigvec(&[1, 1])).unwrap());
    }

    #[test]
    fn contains_combination() {
        // (8,12) = 1*(2,4) + 1*(6,8)
        let l = IntegerLattice::from_generators(2, &[bigvec(&[2, 4]), bigvec(&[6, 8])]);
        assert!(l.contains(&bigvec(&[8, 12])).unwrap());
    }

    #[test]
    fn contains_dimension_error() {
        let l = IntegerLattice::from_generators(2, &[bigvec(&[1, 0])]);
        assert_eq!(
            l.contains(&bigvec(&[1, 2, 3])).unwrap_err(),
            LatticeError::DimensionMismatch { expected: 2, got: 3 }
        );
    }

    #[test]
    fn sum_idempotent_and_union() {
        let a = IntegerLattice::from_generators(2, &[bigvec(&[2, 0])]);
        let b = IntegerLattice::from_generators(2, &[bigvec(&[0, 2])]);
        assert_eq!(a.sum(&a).unwrap(), a);
        let s = a.sum(&b).unwrap();
        assert_eq!(
            s,
            IntegerLattice::from_generators(2, &[bigvec(&[2, 0]), bigvec(&[0, 2])])
        );
    }

    #[test]
    fn sum_index_four() {
        let a = IntegerLattice::from_generators(2, &[bigvec(&[2, 2])]);
        let b = IntegerLattice::from_generators(2, &[bigvec(&[2, -2])]);
        let s = a.sum(&b).unwrap();
        assert!(s.contains(&bigvec(&[4, 0])).unwrap());
        assert!(!s.contains(&bigvec(&[1, 1])).unwrap());
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn quotient_trivial() {
        let l = IntegerLattice::from_generators(2, &[bigvec(&[1, 1]), bigvec(&[0, 3])]);
        let q = quotient_invariants(&l, &l).unwrap();
        assert!(q.is_trivial());
    }

    #[test]
    fn quotient_diagonal() {
        let outer = IntegerLattice::full(2);
        let inner = IntegerLattice::from_generators(2, &[bigvec(&[2, 0]), bigvec(&[0, 4])]);
        let q = quotient_invariants(&outer, &inner).unwrap();
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion, bigvec(&[2, 4]));
    }

    #[test]
    fn quotient_scaling_oracle() {
        // L/2L = (Z/2)^rank for outer = <(1,1),(1,-1)>
        let outer = IntegerLattice::from_generators(2, &[bigvec(&[1, 1]), bigvec(&[1, -1])]);
        let inner = IntegerLattice::from_generators(2, &[bigvec(&[2, 2]), bigvec(&[2, -2])]);
        let q = quotient_invariants(&outer, &inner).unwrap();
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion, bigvec(&[2, 2]));
    }

    #[test]
    fn quotient_free_rank() {
        let outer = IntegerLattice::full(3);
        let inner = IntegerLattice::from_generators(3, &[bigvec(&[2, 0, 0])]);
        let q = quotient_invariants(&outer, &inner).unwrap();
        assert_eq!(q.free_rank, 2);
        assert_eq!(q.torsion, bigvec(&[2]));
    }

    #[test]
    fn quotient_not_sublattice() {
        let outer = IntegerLattice::from_generators(2, &[bigvec(&[2, 0]), bigvec(&[0, 2])]);
        let inner = IntegerLattice::from_generators(2, &[bigvec(&[1, 0])]);
        assert_eq!(
            quotient_invariants(&outer, &inner).unwrap_err(),
            LatticeError::NotASublattice
        );
    }

    #[test]
    fn builder_matches_batch() {
        let gens = [bigvec(&[4, 6]), bigvec(&[2, 2]), bigvec(&[0, 8])];
        let batch = IntegerLattice::from_generators(2, &gens);
        let mut b = LatticeBuilder::new(2);
        for g in &gens {
            b.insert(g);
        }
        assert_eq!(b.build(), batch);
    }

    #[test]
    fn reduce_is_canonical() {
        let l = IntegerLattice::from_generators(2, &[bigvec(&[3, 0]), bigvec(&[0, 5])]);
        let r1 = l.reduce(&bigvec(&[7, -2])).unwrap();
        let r2 = l.reduce(&bigvec(&[1, 3])).unwrap();
        assert_eq!(r1, bigvec(&[1, 3]));
        assert_eq!(r1, r2);
    }

    #[test]
    fn invariant_factors_display() {
        let f = InvariantFactors {
            free_rank: 1,
            torsion: bigvec(&[8, 8]),
        };
        assert_eq!(alloc::format!("{f}"), "Z + Z/8 + Z/8");
        assert_eq!(alloc::format!("{}", InvariantFactors::trivial()), "0");
    }
}
