use std::fmt;

/// Matrix over the field with two elements, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![false; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Entries are read modulo 2. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.rem_euclid(2) == 1);
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

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<bool> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        !self.data.iter().any(|&b| b)
    }

    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).fold(false, |acc, j| acc ^ (self.get(i, j) & v[j])))
            .collect()
    }

    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let v = (0..self.cols).fold(false, |acc, k| acc ^ (self.get(i, k) & rhs.get(k, j)));
                out.set(i, j, v);
            }
        }
        out
    }

    /// Rank over GF(2) by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(rank * m.cols + j, p * m.cols + j);
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) {
                    for j in 0..m.cols {
                        let v = m.get(r, j) ^ m.get(rank, j);
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_over_f2() {
        assert_eq!(BitMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).rank(), 1);
        assert_eq!(BitMatrix::from_rows(&[vec![2, 1], vec![1, 3]]).rank(), 2);
        assert_eq!(
            BitMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).rank(),
            2
        );
        assert_eq!(BitMatrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn products() {
        let a = BitMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(a.mul(&a), BitMatrix::identity(2));
        assert_eq!(a.mul_vec(&[true, true]), vec![false, true]);
    }
}
