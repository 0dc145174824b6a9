//! Dense matrices over a finite field.
//!
//! Matrices hold plain element encodings; every operation takes the field
//! explicitly, so a matrix is cheap to clone and hash.

use std::fmt;

use super::field::{Elem, Field};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of Gaussian elimination: reduced row echelon form and pivot columns.
pub struct Echelon {
    pub rref: FqMatrix,
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, c: Elem) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        FqMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<Elem> = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().copied()
            })
            .collect();
        FqMatrix { rows: r, cols: c, data }
    }

    /// The `idx`-th n×n matrix in row-major base-q order.
    pub fn from_index(n: usize, q: u32, mut idx: u64) -> Self {
        let mut m = Self::zeros(n, n);
        for k in (0..n * n).rev() {
            m.data[k] = (idx % q as u64) as Elem;
            idx /= q as u64;
        }
        m
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

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as Elem))
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, f: &Field, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add_assign(&mut self, f: &Field, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, b);
        }
    }

    pub fn sub(&self, f: &Field, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub: shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self, f: &Field) -> Self {
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Self {
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, f: &Field, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul: shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "apply: shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn echelon(&self, f: &Field) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.echelon(f).pivots.len()
    }

    pub fn inverse(&self, f: &Field) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 1 {
            return f.inv(self.data[0]).map(|x| Self::from_vec(1, 1, vec![x]));
        }
        if n == 2 {
            let (a, b, c, d) = (self.data[0], self.data[1], self.data[2], self.data[3]);
            let det = f.sub(f.mul(a, d), f.mul(b, c));
            let di = f.inv(det)?;
            return Some(Self::from_vec(2, 2, vec![f.mul(d, di), f.neg(f.mul(b, di)), f.neg(f.mul(c, di)), f.mul(a, di)]));
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let e = aug.echelon(f);
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, e.rref.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        match self.rows {
            1 if self.cols == 1 => self.data[0] != 0,
            2 if self.cols == 2 => f.sub(f.mul(self.data[0], self.data[3]), f.mul(self.data[1], self.data[2])) != 0,
            _ => self.is_square() && self.rank(f) == self.rows,
        }
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn nullspace(&self, f: &Field) -> Vec<Vec<Elem>> {
        let e = self.echelon(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = f.neg(e.rref.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve M x = b. Returns a particular solution and a kernel basis, or
    /// `None` if the system is inconsistent.
    pub fn solve_affine(&self, f: &Field, b: &[Elem]) -> Option<(Vec<Elem>, Vec<Vec<Elem>>)> {
        assert_eq!(b.len(), self.rows, "solve: shape mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let e = aug.echelon(f);
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &p) in e.pivots.iter().enumerate() {
            x[p] = e.rref.get(r, self.cols);
        }
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let mut kernel = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = f.neg(e.rref.get(r, free));
            }
            kernel.push(v);
        }
        Some((x, kernel))
    }

    /// Characteristic polynomial coefficients, lowest degree first (monic).
    /// Berkowitz recurrence, so no division is needed.
    pub fn charpoly(&self, f: &Field) -> Vec<Elem> {
        assert!(self.is_square());
        let n = self.rows;
        let mut poly: Vec<Elem> = vec![1];
        for k in 0..n {
            // a = leading k×k block, r = row k (first k entries), c = col k (first k entries)
            let akk = self.get(k, k);
            let r: Vec<Elem> = (0..k).map(|j| self.get(k, j)).collect();
            let mut c: Vec<Elem> = (0..k).map(|i| self.get(i, k)).collect();
            // Toeplitz column: [1, -akk, -r c, -r A c, -r A^2 c, ...]
            let mut t = vec![1, f.neg(akk)];
            for _ in 0..k {
                let rc = r.iter().zip(&c).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                t.push(f.neg(rc));
                let mut next = vec![0; k];
                for (i, slot) in next.iter_mut().enumerate() {
                    *slot = (0..k).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), c[j])));
                }
                c = next;
            }
            // poly (highest degree first) := Toeplitz(t) * poly
            let mut out = vec![0; k + 2];
            for i in 0..k + 2 {
                for j in 0..poly.len() {
                    if i >= j && i - j < t.len() {
                        out[i] = f.add(out[i], f.mul(t[i - j], poly[j]));
                    }
                }
            }
            poly = out;
        }
        poly.reverse();
        poly
    }
}

/// All n×n matrices over the field, in index order.
pub fn all_matrices(f: &Field, n: usize) -> impl Iterator<Item = FqMatrix> {
    let q = f.order();
    let total = (q as u64).pow((n * n) as u32);
    (0..total).map(move |i| FqMatrix::from_index(n, q, i))
}

/// GL_n(F_q) in index order.
pub fn general_linear(f: &Field, n: usize) -> Vec<FqMatrix> {
    let g = f.clone();
    all_matrices(f, n).filter(move |m| m.is_invertible(&g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_matrix(f: &Field, n: usize, seed: &[u32]) -> FqMatrix {
        let q = f.order();
        FqMatrix::from_vec(n, n, seed.iter().take(n * n).map(|&s| s % q).collect())
    }

    #[test]
    fn inverse_and_rank_small() {
        let f = Field::new(3).unwrap();
        let m = FqMatrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&f, &inv).is_identity());
        let s = FqMatrix::from_rows(&[vec![1, 2], vec![2, 1]]);
        assert_eq!(s.rank(&f), 1);
        assert!(s.inverse(&f).is_none());
    }

    #[test]
    fn charpoly_two_by_two() {
        let f = Field::new(5).unwrap();
        let m = FqMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        // x^2 - 5x - 2 = x^2 + 0x + 3 over F_5
        assert_eq!(m.charpoly(&f), vec![3, 0, 1]);
    }

    #[test]
    fn general_linear_counts() {
        for (q, n, expected) in [(2, 2, 6), (3, 2, 48), (2, 3, 168)] {
            let f = Field::new(q).unwrap();
            assert_eq!(general_linear(&f, n).len(), expected);
        }
    }

    #[test]
    fn solve_affine_consistent_and_not() {
        let f = Field::new(2).unwrap();
        let m = FqMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let (x, k) = m.solve_affine(&f, &[1, 0]).unwrap();
        assert_eq!(m.apply(&f, &x), vec![1, 0]);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&f, &k[0]).iter().all(|&v| v == 0));
        let bad = FqMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(bad.solve_affine(&f, &[0, 1]).is_none());
    }

    proptest! {
        #[test]
        fn rank_full_iff_invertible(qi in 0usize..5, n in 1usize..5, seed in proptest::collection::vec(any::<u32>(), 16)) {
            let f = Field::new([2, 3, 4, 5, 9][qi]).unwrap();
            let m = random_matrix(&f, n, &seed);
            let rank = m.rank(&f);
            match m.inverse(&f) {
                Some(inv) => {
                    prop_assert_eq!(rank, n);
                    prop_assert!(m.mul(&f, &inv).is_identity());
                    prop_assert!(inv.mul(&f, &m).is_identity());
                }
                None => prop_assert!(rank < n),
            }
            prop_assert_eq!(m.is_invertible(&f), rank == n);
        }

        #[test]
        fn nullspace_is_kernel(qi in 0usize..3, seed in proptest::collection::vec(any::<u32>(), 12)) {
            let f = Field::new([2, 3, 4][qi]).unwrap();
            let q = f.order();
            let m = FqMatrix::from_vec(3, 4, seed.iter().map(|&s| s % q).collect());
            let ns = m.nullspace(&f);
            prop_assert_eq!(ns.len() + m.rank(&f), 4);
            for v in ns {
                prop_assert!(m.apply(&f, &v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn charpoly_is_conjugation_invariant(seed in proptest::collection::vec(any::<u32>(), 9), pseed in proptest::collection::vec(any::<u32>(), 9)) {
            let f = Field::new(3).unwrap();
            let m = random_matrix(&f, 3, &seed);
            let p = random_matrix(&f, 3, &pseed);
            if let Some(pi) = p.inverse(&f) {
                let c = pi.mul(&f, &m).mul(&f, &p);
                prop_assert_eq!(m.charpoly(&f), c.charpoly(&f));
            }
        }
    }
}
