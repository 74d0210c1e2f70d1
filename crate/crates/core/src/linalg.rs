//! Exact dense linear algebra over [`Ring`]: products, fraction-free inverses
//! and determinants, minors and exterior powers, kernels, span membership.

#![allow(clippy::needless_range_loop)]

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::{FpPoly, Ring, RingElem};

/// A dense matrix over a single ring, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<RingElem>,
}

impl Mat {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Mat {
        Mat { ring, rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Mat {
        Mat::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.ring(), ring, "entry ring differs from matrix ring");
                data.push(x);
            }
        }
        Mat { ring, rows, cols, data }
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<RingElem>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimMismatch("ragged rows".into()));
            }
            for x in row {
                if x.ring() != ring {
                    return Err(Error::RingMismatch(ring.to_string(), x.ring().to_string()));
                }
                data.push(x);
            }
        }
        Ok(Mat { ring, rows: r, cols: c, data })
    }

    /// Reduction of an integer matrix into `ring`.
    pub fn from_ints(ring: Ring, rows: usize, cols: usize, ints: &[i64]) -> Mat {
        assert_eq!(ints.len(), rows * cols);
        Mat::from_fn(ring, rows, cols, |i, j| ring.from_int(ints[i * cols + j]))
    }

    pub fn diag(ring: Ring, entries: &[RingElem]) -> Mat {
        let n = entries.len();
        Mat::from_fn(ring, n, n, |i, j| if i == j { entries[i].clone() } else { ring.zero() })
    }

    /// Matrix with `entries` on the antidiagonal, top-right to bottom-left.
    pub fn antidiag(ring: Ring, entries: &[RingElem]) -> Mat {
        let n = entries.len();
        Mat::from_fn(ring, n, n, |i, j| if i + j == n - 1 { entries[i].clone() } else { ring.zero() })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElem) {
        assert_eq!(x.ring(), self.ring);
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[RingElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// R·M·R with R the reversal permutation.
    pub fn reversed(&self) -> Mat {
        Mat::from_fn(self.ring, self.rows, self.cols, |i, j| self.get(self.rows - 1 - i, self.cols - 1 - j).clone())
    }

    pub fn map(&self, f: impl Fn(&RingElem) -> RingElem) -> Mat {
        Mat::from_fn(self.ring, self.rows, self.cols, |i, j| f(self.get(i, j)))
    }

    /// Entrywise Frobenius.
    pub fn frobenius(&self) -> Mat {
        self.map(RingElem::frobenius)
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc + a * b;
                }
                data.push(acc);
            }
        }
        Ok(Mat { ring: self.ring, rows: self.rows, cols: other.cols, data })
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat> {
        if self.ring != other.ring || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch("matrix sum".into()));
        }
        Ok(Mat::from_fn(self.ring, self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j)))
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat> {
        self.try_add(&other.scale(&self.ring.from_int(-1)))
    }

    pub fn scale(&self, c: &RingElem) -> Mat {
        self.map(|x| x * c)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElem::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// g·h·g⁻¹.
    pub fn conjugate_by(&self, g: &Mat) -> Result<Mat> {
        g.try_mul(self)?.try_mul(&g.inverse()?)
    }

    /// Commutator x·y·x⁻¹·y⁻¹.
    pub fn commutator(x: &Mat, y: &Mat) -> Result<Mat> {
        x.try_mul(y)?.try_mul(&x.inverse()?)?.try_mul(&y.inverse()?)
    }

    /// Appends an injective byte encoding of the entries.
    pub fn encode_into(&self, buf: &mut Vec<u8>) {
        for x in &self.data {
            x.encode_into(buf);
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.encode_into(&mut buf);
        buf
    }

    pub fn decode(ring: Ring, rows: usize, cols: usize, buf: &[u8]) -> Result<(Mat, usize)> {
        let mut data = Vec::with_capacity(rows * cols);
        let mut off = 0;
        for _ in 0..rows * cols {
            let (x, used) = RingElem::decode(ring, &buf[off..])?;
            off += used;
            data.push(x);
        }
        Ok((Mat { ring, rows, cols, data }, off))
    }

    /// Submatrix on the given row and column positions.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(self.ring, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<RingElem> {
        if !self.is_square() {
            return Err(Error::DimMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.ring.one());
        }
        let mut a: Vec<Vec<RingElem>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = self.ring.one();
        let mut negate = false;
        for k in 0..n - 1 {
            let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(self.ring.zero());
            };
            if piv != k {
                a.swap(piv, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = num.exact_div(&prev)?;
                }
                a[i][k] = self.ring.zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Exact two-sided inverse.
    ///
    /// Over GF(q) this is Gauss–Jordan. Over 𝔽_p(t) the row denominators are
    /// cleared first and the elimination runs fraction-free, so every
    /// intermediate entry is a minor of the cleared matrix. Over 𝔽_p[t] the
    /// determinant must be a unit.
    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimMismatch("inverse of a non-square matrix".into()));
        }
        match self.ring {
            Ring::Gf(_) => self.inverse_field(),
            Ring::Poly { .. } => self.inverse_fraction_free(),
            Ring::RatFunc { p } => {
                let dens: Vec<RingElem> = (0..self.rows)
                    .map(|i| {
                        let l = self.row(i).iter().fold(FpPoly::constant(1, p), |acc, x| {
                            let (_, d) = x.as_fraction();
                            let g = acc.gcd(&d, p);
                            acc.mul(&d, p).divrem(&g, p).0
                        });
                        self.ring.from_poly(&l)
                    })
                    .collect();
                let cleared = Mat::diag(self.ring, &dens).try_mul(self)?;
                cleared.inverse_fraction_free()?.try_mul(&Mat::diag(self.ring, &dens))
            }
        }
    }

    fn inverse_field(&self) -> Result<Mat> {
        let n = self.rows;
        let mut a: Vec<Vec<RingElem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { self.ring.one() } else { self.ring.zero() }));
                r
            })
            .collect();
        for k in 0..n {
            let piv = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(piv, k);
            let inv = a[k][k].inv()?;
            for x in a[k].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let d = &f * &a[k][j];
                    a[i][j] = &a[i][j] - d;
                }
            }
        }
        Ok(Mat::from_fn(self.ring, n, n, |i, j| a[i][n + j].clone()))
    }

    fn inverse_fraction_free(&self) -> Result<Mat> {
        let n = self.rows;
        let ring = self.ring;
        let mut a: Vec<Vec<RingElem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { ring.one() } else { ring.zero() }));
                r
            })
            .collect();
        let mut prev = ring.one();
        for k in 0..n {
            let piv = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(piv, k);
            for i in 0..n {
                if i == k {
                    continue;
                }
                let aik = a[i][k].clone();
                for j in 0..2 * n {
                    let num = &a[k][k] * &a[i][j] - &aik * &a[k][j];
                    a[i][j] = num.exact_div(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        // left block is now prev·I
        let d_inv = prev.inv().map_err(|_| Error::Singular)?;
        Ok(Mat::from_fn(ring, n, n, |i, j| &a[i][n + j] * &d_inv))
    }

    /// Determinant of the submatrix on `rows` × `cols` (positions).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<RingElem> {
        if rows.len() != cols.len() {
            return Err(Error::DimMismatch("minor needs equally many rows and columns".into()));
        }
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::DimMismatch("minor index out of range".into()));
        }
        self.select(rows, cols).det()
    }

    /// Minor indexed by weight-ordered subsets of the basis labels.
    pub fn minor_subsets(&self, rows: &SubsetIndex, cols: &SubsetIndex) -> Result<RingElem> {
        self.minor(&rows.positions(), &cols.positions())
    }

    /// Reduced row echelon form over a field; returns it with the pivot columns.
    pub fn rref(&self) -> Result<(Mat, Vec<usize>)> {
        if !self.ring.is_field() {
            return Err(Error::NotAField(self.ring.to_string()));
        }
        let mut a: Vec<Vec<RingElem>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(piv, r);
            let inv = a[r][c].inv()?;
            for x in a[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..self.rows {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in c..self.cols {
                    let d = &f * &a[r][j];
                    a[i][j] = &a[i][j] - d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let m = Mat::from_fn(self.ring, self.rows, self.cols, |i, j| a[i][j].clone());
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of the right kernel, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<RingElem>>> {
        let (r, pivots) = self.rref()?;
        let ring = self.ring;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&f| {
                let mut v = vec![ring.zero(); self.cols];
                v[f] = ring.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f);
                }
                v
            })
            .collect())
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[RingElem]) -> Result<Vec<RingElem>> {
        if v.len() != self.cols {
            return Err(Error::DimMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(self.ring.zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    /// Matrix of the k-th exterior power in the lexicographic basis of
    /// k-subsets of positions; entry (B, A) is the minor on rows B, columns A.
    pub fn exterior_power(&self, k: usize) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimMismatch("exterior power of a non-square matrix".into()));
        }
        let subsets = position_subsets(self.rows, k);
        let m = subsets.len();
        let mut data = Vec::with_capacity(m * m);
        for b in &subsets {
            for a in &subsets {
                data.push(self.minor(b, a)?);
            }
        }
        Ok(Mat { ring: self.ring, rows: m, cols: m, data })
    }

    /// Factorisation M = L·D·U with L lower and U upper unitriangular, D
    /// diagonal, by elimination without pivoting. Fails with `Singular` when
    /// a leading principal minor vanishes.
    pub fn ldu(&self) -> Result<(Mat, Mat, Mat)> {
        if !self.is_square() {
            return Err(Error::DimMismatch("LDU of a non-square matrix".into()));
        }
        let n = self.rows;
        let ring = self.ring;
        let mut w: Vec<Vec<RingElem>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut l = Mat::identity(ring, n);
        for k in 0..n {
            if w[k][k].is_zero() {
                return Err(Error::Singular);
            }
            let inv = w[k][k].inv()?;
            for i in k + 1..n {
                if w[i][k].is_zero() {
                    continue;
                }
                let f = &w[i][k] * &inv;
                for j in k..n {
                    let d = &f * &w[k][j];
                    w[i][j] = &w[i][j] - d;
                }
                l.set(i, k, f);
            }
        }
        let d = Mat::from_fn(ring, n, n, |i, j| if i == j { w[i][i].clone() } else { ring.zero() });
        let mut u = Mat::identity(ring, n);
        for i in 0..n {
            let inv = w[i][i].inv()?;
            for j in i + 1..n {
                u.set(i, j, &w[i][j] * &inv);
            }
        }
        Ok((l, d, u))
    }

    /// Factorisation M = U·D·L (upper unitriangular, diagonal, lower
    /// unitriangular), computed as the LDU factorisation of the reversed matrix.
    pub fn udl(&self) -> Result<(Mat, Mat, Mat)> {
        let (l, d, u) = self.reversed().ldu()?;
        Ok((l.reversed(), d.reversed(), u.reversed()))
    }

    pub fn to_json(&self) -> MatJson {
        MatJson {
            ring: self.ring.to_string(),
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn from_json(j: &MatJson) -> Result<Mat> {
        let ring: Ring = j.ring.parse()?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::DimMismatch("JSON matrix shape".into()));
        }
        let rows = j
            .entries
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if j.rows == 0 {
            return Ok(Mat::zeros(ring, 0, j.cols));
        }
        Mat::from_rows(ring, rows)
    }
}

impl Mul<&Mat> for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).expect("incompatible matrix product")
    }
}

impl Mul<Mat> for Mat {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        &self * &rhs
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// JSON form `{"ring", "rows", "cols", "entries"}` with entries in the ring's
/// element syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatJson {
    pub ring: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

/// All k-subsets of 0..n in lexicographic order.
pub fn position_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Position of a basis label in the order 1 < 2 < … < n < −n < … < −1.
pub fn label_position(n: usize, label: i32) -> usize {
    let a = label.unsigned_abs() as usize;
    assert!(a >= 1 && a <= n, "label {label} out of range for rank {n}");
    if label > 0 {
        a - 1
    } else {
        2 * n - a
    }
}

/// Basis label at a position of the order 1 < … < n < −n < … < −1.
pub fn position_label(n: usize, pos: usize) -> i32 {
    assert!(pos < 2 * n);
    if pos < n {
        pos as i32 + 1
    } else {
        -((2 * n - pos) as i32)
    }
}

/// A subset A of {1..n, −n..−1}, kept sorted in the weight order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIndex {
    n: usize,
    positions: Vec<usize>,
}

impl SubsetIndex {
    pub fn new(n: usize, labels: &[i32]) -> Result<SubsetIndex> {
        if labels.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > n) {
            return Err(Error::DimMismatch(format!("labels {labels:?} out of range for rank {n}")));
        }
        let mut positions: Vec<usize> = labels.iter().map(|&l| label_position(n, l)).collect();
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DimMismatch(format!("repeated label in {labels:?}")));
        }
        Ok(SubsetIndex { n, positions })
    }

    pub fn from_positions(n: usize, mut positions: Vec<usize>) -> SubsetIndex {
        positions.sort_unstable();
        positions.dedup();
        SubsetIndex { n, positions }
    }

    /// All k-subsets in lexicographic position order.
    pub fn all(n: usize, k: usize) -> Vec<SubsetIndex> {
        position_subsets(2 * n, k).into_iter().map(|positions| SubsetIndex { n, positions }).collect()
    }

    /// The n-subsets with S(A) = ∅, which index the spin module.
    pub fn spin_subsets(n: usize) -> Vec<SubsetIndex> {
        SubsetIndex::all(n, n).into_iter().filter(|a| a.symmetric_part().is_empty()).collect()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> Vec<usize> {
        self.positions.clone()
    }

    pub fn labels(&self) -> Vec<i32> {
        self.positions.iter().map(|&p| position_label(self.n, p)).collect()
    }

    pub fn contains(&self, label: i32) -> bool {
        self.positions.binary_search(&label_position(self.n, label)).is_ok()
    }

    /// S(A) = A ∩ −A.
    pub fn symmetric_part(&self) -> SubsetIndex {
        let labels: Vec<i32> = self.labels().into_iter().filter(|&l| self.contains(-l)).collect();
        SubsetIndex::new(self.n, &labels).expect("subset of a valid subset")
    }

    /// −A.
    pub fn negated(&self) -> SubsetIndex {
        let labels: Vec<i32> = self.labels().into_iter().map(|l| -l).collect();
        SubsetIndex::new(self.n, &labels).expect("negation stays in range")
    }

    /// Complement in {1..n, −n..−1}.
    pub fn complement(&self) -> SubsetIndex {
        let positions = (0..2 * self.n).filter(|p| self.positions.binary_search(p).is_err()).collect();
        SubsetIndex { n: self.n, positions }
    }

    /// (A ∖ remove) ∪ add, provided every removed label is present and every
    /// added one absent afterwards.
    pub fn replace(&self, remove: &[i32], add: &[i32]) -> Option<SubsetIndex> {
        let mut labels = self.labels();
        for r in remove {
            let i = labels.iter().position(|l| l == r)?;
            labels.remove(i);
        }
        for a in add {
            if labels.contains(a) {
                return None;
            }
            labels.push(*a);
        }
        SubsetIndex::new(self.n, &labels).ok()
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.labels().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", l.join(","))
    }
}

/// Repeated coordinate extraction against a fixed list of matrices.
///
/// The basis need not be independent; dependent members get coefficient 0.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    basis: Vec<Mat>,
    independent: Vec<usize>,
    coords: Vec<usize>,
    square_inv: Mat,
}

impl SpanSolver {
    pub fn new(basis: &[Mat]) -> Result<SpanSolver> {
        let first = basis.first().ok_or_else(|| Error::DimMismatch("empty basis".into()))?;
        let ring = first.ring();
        if !ring.is_field() {
            return Err(Error::NotAField(ring.to_string()));
        }
        let len = first.rows() * first.cols();
        if basis.iter().any(|b| b.ring() != ring || b.rows() != first.rows() || b.cols() != first.cols()) {
            return Err(Error::DimMismatch("basis matrices differ in shape or ring".into()));
        }
        // columns are the flattened basis matrices
        let a = Mat::from_fn(ring, len, basis.len(), |i, j| basis[j].entries()[i].clone());
        let (_, independent) = a.rref()?;
        let a_ind = a.select(&(0..len).collect::<Vec<_>>(), &independent);
        let (_, coords) = a_ind.transpose().rref()?;
        let square = a_ind.select(&coords, &(0..independent.len()).collect::<Vec<_>>());
        let square_inv = square.inverse()?;
        Ok(SpanSolver { basis: basis.to_vec(), independent, coords, square_inv })
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.independent.len()
    }

    /// Coefficients c with Σ cᵢ·basisᵢ = target, or `NotInSpan`.
    pub fn solve(&self, target: &Mat) -> Result<Vec<RingElem>> {
        let first = &self.basis[0];
        if target.ring() != first.ring() || target.rows() != first.rows() || target.cols() != first.cols() {
            return Err(Error::DimMismatch("target shape differs from basis".into()));
        }
        let ring = target.ring();
        let rhs: Vec<RingElem> = self.coords.iter().map(|&c| target.entries()[c].clone()).collect();
        let sol = self.square_inv.apply(&rhs)?;
        let mut full = vec![ring.zero(); self.basis.len()];
        for (k, &j) in self.independent.iter().enumerate() {
            full[j] = sol[k].clone();
        }
        let rebuilt = self.combine(&full);
        if rebuilt != *target {
            return Err(Error::NotInSpan);
        }
        Ok(full)
    }

    /// Σ cᵢ·basisᵢ.
    pub fn combine(&self, coeffs: &[RingElem]) -> Mat {
        let first = &self.basis[0];
        let ring = first.ring();
        let mut acc = vec![ring.zero(); first.rows() * first.cols()];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in acc.iter_mut().zip(b.entries()) {
                if !x.is_zero() {
                    *slot = &*slot + c * x;
                }
            }
        }
        Mat { ring, rows: first.rows(), cols: first.cols(), data: acc }
    }
}

/// Coefficients expressing `target` in the span of `basis`.
pub fn solve_in_span(target: &Mat, basis: &[Mat]) -> Result<Vec<RingElem>> {
    SpanSolver::new(basis)?.solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> Ring {
        Ring::gf_order(q).unwrap()
    }

    fn random_mat(ring: Ring, n: usize, seed: u64, deg: usize) -> Mat {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Mat::from_fn(ring, n, n, |_, _| ring.sample(&mut rng, deg))
    }

    #[test]
    fn identity_is_neutral() {
        let r = gf(8);
        let g = random_mat(r, 4, 3, 0);
        assert_eq!(&Mat::identity(r, 4) * &g, g);
        assert_eq!(&g * &Mat::identity(r, 4), g);
    }

    #[test]
    fn antidiagonal_involution() {
        let r = gf(2);
        let w = Mat::antidiag(r, &vec![r.one(); 4]);
        assert!((&w * &w).is_identity());
    }

    #[test]
    fn mismatches_are_reported() {
        let a = Mat::identity(gf(8), 3);
        let b = Mat::identity(gf(8), 4);
        assert!(matches!(a.try_mul(&b), Err(Error::DimMismatch(_))));
        let c = Mat::identity(gf(4), 3);
        assert!(matches!(a.try_mul(&c), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn inverse_of_diagonal() {
        let r = gf(8);
        let e = r.generator();
        let d = Mat::diag(r, &[e.clone(), e.pow(3).unwrap(), e.pow(-3).unwrap(), e.pow(-1).unwrap()]);
        let di = Mat::diag(r, &[e.pow(-1).unwrap(), e.pow(-3).unwrap(), e.pow(3).unwrap(), e.clone()]);
        assert_eq!(d.inverse().unwrap(), di);
        assert!(Mat::identity(r, 4).inverse().unwrap().is_identity());
    }

    #[test]
    fn singular_is_reported() {
        let r = gf(27);
        let m = Mat::from_ints(r, 2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.inverse(), Err(Error::Singular));
        let f = Ring::ratfunc(2).unwrap();
        let t = f.generator();
        let m = Mat::from_rows(f, vec![vec![t.clone(), t.clone()], vec![f.one(), f.one()]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn inverses_over_every_ring_kind() {
        for (k, ring) in [gf(8), gf(243), Ring::ratfunc(2).unwrap(), Ring::ratfunc(3).unwrap()].into_iter().enumerate()
        {
            for seed in 0..10 {
                let m = random_mat(ring, 4, seed + 100 * k as u64, 2);
                match m.inverse() {
                    Ok(inv) => {
                        assert!((&m * &inv).is_identity());
                        assert!((&inv * &m).is_identity());
                        assert!(!m.det().unwrap().is_zero());
                    }
                    Err(Error::Singular) => assert!(m.det().unwrap().is_zero()),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn polynomial_ring_inverse_needs_unit_determinant() {
        let r = Ring::poly(2).unwrap();
        let t = r.generator();
        let u = Mat::from_rows(r, vec![vec![r.one(), t.clone()], vec![r.zero(), r.one()]]).unwrap();
        let ui = u.inverse().unwrap();
        assert!((&u * &ui).is_identity());
        let m = Mat::from_rows(r, vec![vec![t.clone(), r.zero()], vec![r.zero(), r.one()]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn minor_examples() {
        let r = Ring::ratfunc(2).unwrap();
        let id = Mat::identity(r, 4);
        let a = SubsetIndex::new(2, &[1, 2]).unwrap();
        let b = SubsetIndex::new(2, &[1, -1]).unwrap();
        assert!(id.minor_subsets(&a, &a).unwrap().is_one());
        assert!(id.minor_subsets(&a, &b).unwrap().is_zero());
        // g = I + ξ e_{1,-1}; rows {1,2}, cols {2,-1} gives [[0,ξ],[1,0]]
        let xi = r.generator();
        let mut g = Mat::identity(r, 4);
        g.set(0, 3, xi.clone());
        let rows = SubsetIndex::new(2, &[1, 2]).unwrap();
        let cols = SubsetIndex::new(2, &[2, -1]).unwrap();
        assert_eq!(g.minor_subsets(&rows, &cols).unwrap(), xi);
    }

    #[test]
    fn minor_rejects_bad_shape() {
        let id = Mat::identity(gf(2), 3);
        assert!(matches!(id.minor(&[0, 1], &[0]), Err(Error::DimMismatch(_))));
        assert!(matches!(id.minor(&[0, 5], &[0, 1]), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn det_multiplicative_on_block_diagonal() {
        let r = gf(27);
        for seed in 0..10 {
            let a = random_mat(r, 2, seed, 0);
            let b = random_mat(r, 3, seed + 50, 0);
            let block = Mat::from_fn(r, 5, 5, |i, j| match (i < 2, j < 2) {
                (true, true) => a.get(i, j).clone(),
                (false, false) => b.get(i - 2, j - 2).clone(),
                _ => r.zero(),
            });
            assert_eq!(block.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }
    }

    #[test]
    fn kernel_of_zero_map() {
        let r = gf(2);
        let z = Mat::zeros(r, 1, 6);
        let k = z.kernel_basis().unwrap();
        assert_eq!(k.len(), 6);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let r = gf(27);
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = Mat::from_fn(r, 3, 6, |i, _| if i == 2 { r.zero() } else { r.sample(&mut rng, 0) });
            let k = m.kernel_basis().unwrap();
            assert_eq!(k.len(), 6 - m.rank().unwrap());
            for v in &k {
                assert!(m.apply(v).unwrap().iter().all(RingElem::is_zero));
            }
        }
    }

    #[test]
    fn kernel_needs_a_field() {
        let r = Ring::poly(2).unwrap();
        assert!(matches!(Mat::identity(r, 2).kernel_basis(), Err(Error::NotAField(_))));
    }

    #[test]
    fn span_solving() {
        let r = gf(4);
        let basis: Vec<Mat> = (0..3).map(|s| random_mat(r, 2, s, 0)).collect();
        let c = solve_in_span(&basis[0], &basis).unwrap();
        let solver = SpanSolver::new(&basis).unwrap();
        assert_eq!(solver.combine(&c), basis[0]);
        // a 16-dim space cannot be covered by six matrices
        let basis6: Vec<Mat> = (0..6).map(|s| random_mat(r, 4, s, 0)).collect();
        let solver = SpanSolver::new(&basis6).unwrap();
        let hits = (100..120).filter(|&s| solver.solve(&random_mat(r, 4, s, 0)).is_ok()).count();
        assert_eq!(hits, 0);
    }

    #[test]
    fn exterior_power_is_multiplicative() {
        let r = gf(8);
        let a = random_mat(r, 4, 11, 0);
        let b = random_mat(r, 4, 12, 0);
        let ab = (&a * &b).exterior_power(2).unwrap();
        assert_eq!(ab, &a.exterior_power(2).unwrap() * &b.exterior_power(2).unwrap());
    }

    #[test]
    fn ldu_and_udl_reassemble() {
        let r = gf(27);
        for seed in 0..20 {
            let m = random_mat(r, 4, seed, 0);
            if let Ok((l, d, u)) = m.ldu() {
                assert_eq!(&(&l * &d) * &u, m);
                assert!(l.transpose().is_upper_triangular() && u.is_upper_triangular() && d.is_diagonal());
            }
            if let Ok((u, d, l)) = m.udl() {
                assert_eq!(&(&u * &d) * &l, m);
                assert!(u.is_upper_triangular() && l.transpose().is_upper_triangular());
            }
        }
    }

    #[test]
    fn subset_order_and_parts() {
        let all = SubsetIndex::all(2, 2);
        let labels: Vec<Vec<i32>> = all.iter().map(SubsetIndex::labels).collect();
        assert_eq!(labels, vec![vec![1, 2], vec![1, -2], vec![1, -1], vec![2, -2], vec![2, -1], vec![-2, -1]]);
        let a = SubsetIndex::new(3, &[-1, 1, 2]).unwrap();
        assert_eq!(a.labels(), vec![1, 2, -1]);
        assert_eq!(a.symmetric_part().labels(), vec![1, -1]);
        assert_eq!(a.complement().labels(), vec![3, -3, -2]);
        assert_eq!(SubsetIndex::spin_subsets(3).len(), 8);
    }

    #[test]
    fn json_round_trip() {
        let r = Ring::ratfunc(2).unwrap();
        let m = random_mat(r, 3, 9, 2);
        let j = serde_json::to_string(&m.to_json()).unwrap();
        let back: MatJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Mat::from_json(&back).unwrap(), m);
    }
}
