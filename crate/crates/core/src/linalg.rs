//! Exact linear algebra over the Laurent ring: fraction-free Gauss-Jordan
//! elimination (single-step Bareiss with division by the previous pivot),
//! giving ranks, kernels and independent subsets at generic `δ` without a
//! fraction-field type. Outputs are normalised by their unit content.

use crate::scalar::Scalar;

/// A dense matrix of exact scalars.
#[derive(Clone, PartialEq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = ScalarMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.get_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ScalarMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Fraction-free Gauss-Jordan reduction in place. Returns the pivot
    /// positions `(row, col)` in elimination order; afterwards every pivot
    /// entry equals the final pivot value and all other entries of pivot
    /// columns are zero.
    fn reduce(&mut self) -> Vec<(usize, usize)> {
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut denom = Scalar::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let piv = self.get(r, c).clone();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let coef = self.get(i, c).clone();
                for j in 0..self.cols {
                    let num = &(&piv * self.get(i, j)) - &(&coef * self.get(r, j));
                    *self.get_mut(i, j) = num
                        .divide_exact(&denom)
                        .expect("fraction-free elimination divides exactly");
                }
            }
            denom = piv;
            pivots.push((r, c));
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    /// An exact basis of `{x : M·x = 0}`, one normalised vector per free
    /// column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.reduce();
        let d = pivots
            .last()
            .map_or_else(Scalar::one, |&(r, c)| m.get(r, c).clone());
        let mut pivot_of_col = vec![usize::MAX; self.cols];
        for &(r, c) in &pivots {
            pivot_of_col[c] = r;
        }
        let mut kernel = Vec::new();
        for f in 0..self.cols {
            if pivot_of_col[f] != usize::MAX {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = d.clone();
            for &(r, c) in &pivots {
                v[c] = -m.get(r, f).clone();
            }
            normalize_vector(&mut v);
            kernel.push(v);
        }
        kernel
    }
}

/// Divides a vector by its unit content (common power of `s` and rational
/// content) and flips the sign so the first nonzero coordinate has a
/// positive leading coefficient.
pub fn normalize_vector(v: &mut [Scalar]) {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};

    let Some(first) = v.iter().position(|x| !x.is_zero()) else {
        return;
    };
    let min_exp = v
        .iter()
        .filter_map(Scalar::min_exponent)
        .min()
        .expect("nonzero vector");
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for x in v.iter() {
        for (_, c) in x.iter() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
    }
    let mut content = BigRational::new(num_gcd, den_lcm);
    let lead_exp = v[first].max_exponent().expect("nonzero coordinate");
    let lead_negative = v[first]
        .iter()
        .find(|&(e, _)| e == lead_exp)
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false);
    if lead_negative {
        content = -content;
    }
    let unit = Scalar::monomial(content, min_exp);
    for x in v.iter_mut() {
        *x = x.divide_exact(&unit).expect("unit content divides");
    }
}

/// Indices of a maximal linearly independent subset of the given vectors,
/// chosen greedily in order.
pub fn independent_indices(vectors: &[Vec<Scalar>]) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let dim = vectors[0].len();
    // Greedy prefix independence = pivot columns of the transpose.
    let transpose = ScalarMatrix::from_fn(dim, vectors.len(), |i, j| vectors[j][i].clone());
    let mut m = transpose;
    m.reduce().into_iter().map(|(_, c)| c).collect()
}
