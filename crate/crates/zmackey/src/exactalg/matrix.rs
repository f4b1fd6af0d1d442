use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::Int;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![Int::ZERO; rows * cols] }
    }

    pub fn identity(k: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(k, k);
        for i in 0..k {
            m.set(i, i, Int::ONE);
        }
        m
    }

    pub fn scalar(k: usize, c: &Int) -> IntMatrix {
        let mut m = IntMatrix::zeros(k, k);
        for i in 0..k {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Int>) -> IntMatrix {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        IntMatrix { rows, cols, data }
    }

    /// Builds from nested rows. An empty outer list gives a 0×0 matrix.
    pub fn from_rows<T: Into<Int> + Clone>(rows: &[Vec<T>]) -> IntMatrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn column_vector(v: &[Int]) -> IntMatrix {
        IntMatrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn diagonal(d: &[Int]) -> IntMatrix {
        let mut m = IntMatrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Int] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Int::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut r = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let p = a * b;
                        *r.get_mut(i, j) += &p;
                    }
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        let mut out = vec![Int::ZERO; self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &IntMatrix) -> IntMatrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch in sum");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &IntMatrix) -> IntMatrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch in difference");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMatrix {
        let data = self.data.iter().map(|a| -a).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, o.rows, "row mismatch in hstack");
        let mut r = IntMatrix::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                r.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                r.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        r
    }

    pub fn vstack(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        IntMatrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, o: &IntMatrix) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.rows + o.rows, self.cols + o.cols);
        r.paste(0, 0, self);
        r.paste(self.rows, self.cols, o);
        r
    }

    pub fn paste(&mut self, r0: usize, c0: usize, o: &IntMatrix) {
        for i in 0..o.rows {
            for j in 0..o.cols {
                self.set(r0 + i, c0 + j, o.get(i, j).clone());
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                r.set(i, k, self.get(i, j).clone());
            }
        }
        r
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        let mut r = IntMatrix::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                r.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        r
    }

    pub fn kronecker(&self, o: &IntMatrix) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        r.set(i * o.rows + k, j * o.cols + l, a * o.get(k, l));
                    }
                }
            }
        }
        r
    }

    pub fn pow(&self, e: u64) -> IntMatrix {
        assert_eq!(self.rows, self.cols, "power of non-square matrix");
        let mut r = IntMatrix::identity(self.rows);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let k = self.rows;
        if k == 0 {
            return Int::ONE;
        }
        let mut a = self.clone();
        let mut sign = Int::ONE;
        let mut prev = Int::ONE;
        for p in 0..k {
            if a.get(p, p).is_zero() {
                match (p + 1..k).find(|&i| !a.get(i, p).is_zero()) {
                    Some(i) => {
                        a.swap_rows(p, i);
                        sign = -sign;
                    }
                    None => return Int::ZERO,
                }
            }
            for i in p + 1..k {
                for j in p + 1..k {
                    let v = &(a.get(p, p) * a.get(i, j)) - &(a.get(i, p) * a.get(p, j));
                    a.set(i, j, v.div_exact(&prev));
                }
                a.set(i, p, Int::ZERO);
            }
            prev = a.get(p, p).clone();
        }
        sign * a.get(k - 1, k - 1).clone()
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row_i += k * row_j`, touching only columns from `from`.
    pub fn add_row_multiple(&mut self, i: usize, j: usize, k: &Int, from: usize) {
        if k.is_zero() {
            return;
        }
        for c in from..self.cols {
            let b = &self.data[j * self.cols + c];
            if !b.is_zero() {
                let p = k * b;
                self.data[i * self.cols + c] += &p;
            }
        }
    }

    /// `col_i += k * col_j`, touching only rows from `from`.
    pub fn add_col_multiple(&mut self, i: usize, j: usize, k: &Int, from: usize) {
        if k.is_zero() {
            return;
        }
        for r in from..self.rows {
            let b = &self.data[r * self.cols + j];
            if !b.is_zero() {
                let p = k * b;
                self.data[r * self.cols + i] += &p;
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }

    /// Replaces rows `(i, j)` by `[[a, b], [c, d]] · (row_i, row_j)`.
    pub fn mix_rows(&mut self, i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        for col in 0..self.cols {
            let x = self.get(i, col).clone();
            let y = self.get(j, col).clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.set(i, col, &(a * &x) + &(b * &y));
            self.set(j, col, &(c * &x) + &(d * &y));
        }
    }

    /// Replaces columns `(i, j)` by `(col_i, col_j) · [[a, b], [c, d]]`.
    pub fn mix_cols(&mut self, i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        for r in 0..self.rows {
            let x = self.get(r, i).clone();
            let y = self.get(r, j).clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.set(r, i, &(a * &x) + &(c * &y));
            self.set(r, j, &(b * &x) + &(d * &y));
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.determinant(), Int::from(18));
        let z = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(z.determinant(), Int::from(-1));
    }

    #[test]
    fn kron_shapes() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::from_rows(&[vec![1, 2, 3]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (2, 6));
        assert_eq!(k.get(1, 5), &Int::from(3));
    }
}
