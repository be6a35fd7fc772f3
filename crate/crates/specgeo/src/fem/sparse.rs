//! Compressed sparse row storage for the assembled symmetric operators.

use std::io::Write;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SparseError {
    #[error("triplet ({row}, {col}) out of range for dimension {dim}")]
    TripletOutOfRange { row: usize, col: usize, dim: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Symmetric sparse matrix in CSR form with both triangles stored.
///
/// Built from element triplets: duplicates are summed in insertion order
/// per (row, col) slot, which keeps assembly deterministic and bit-exactly
/// symmetric when the emitted triplets are symmetric.
#[derive(Debug, Clone)]
pub struct SparseSymmetricMatrix {
    dim: usize,
    row_offsets: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseSymmetricMatrix {
    pub fn from_triplets(
        dim: usize,
        mut triplets: Vec<(usize, usize, f64)>,
    ) -> Result<Self, SparseError> {
        for &(r, c, _) in &triplets {
            if r >= dim || c >= dim {
                return Err(SparseError::TripletOutOfRange {
                    row: r,
                    col: c,
                    dim,
                });
            }
        }
        // Stable sort: equal (row, col) keys keep insertion order, so the
        // summation order is the element order on both triangles.
        triplets.sort_by_key(|&(r, c, _)| (r, c));

        let mut row_offsets = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals = Vec::with_capacity(triplets.len());
        let mut i = 0;
        while i < triplets.len() {
            let (r, c, _) = triplets[i];
            let mut v = 0.0;
            while i < triplets.len() && triplets[i].0 == r && triplets[i].1 == c {
                v += triplets[i].2;
                i += 1;
            }
            cols.push(c);
            vals.push(v);
            row_offsets[r + 1] = cols.len();
        }
        // Rows without entries inherit the previous offset.
        for r in 0..dim {
            if row_offsets[r + 1] < row_offsets[r] {
                row_offsets[r + 1] = row_offsets[r];
            }
        }
        Ok(Self {
            dim,
            row_offsets,
            cols,
            vals,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Column indices and values of row `r`.
    pub fn row(&self, r: usize) -> (&[usize], &[f64]) {
        let lo = self.row_offsets[r];
        let hi = self.row_offsets[r + 1];
        (&self.cols[lo..hi], &self.vals[lo..hi])
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let (cols, vals) = self.row(r);
        match cols.binary_search(&c) {
            Ok(i) => vals[i],
            Err(_) => 0.0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    /// y = A x.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for (r, yr) in y.iter_mut().enumerate() {
            let (cols, vals) = self.row(r);
            let mut acc = 0.0;
            for (&c, &v) in cols.iter().zip(vals) {
                acc += v * x[c];
            }
            *yr = acc;
        }
    }

    pub fn mul_vec_alloc(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        self.mul_vec(x, &mut y);
        y
    }

    /// x^T A y.
    pub fn quadratic_form(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (r, xr) in x.iter().enumerate() {
            let (cols, vals) = self.row(r);
            let mut row_acc = 0.0;
            for (&c, &v) in cols.iter().zip(vals) {
                row_acc += v * y[c];
            }
            acc += xr * row_acc;
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|r| self.get(r, r)).sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|r| self.get(r, r)).collect()
    }

    /// max |A - A^T| over all entries.
    pub fn symmetry_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for (r, c, v) in self.iter() {
            worst = worst.max((v - self.get(c, r)).abs());
        }
        worst
    }

    /// max over rows of |sum of row entries| (the constant-kernel check).
    pub fn max_abs_row_sum(&self) -> f64 {
        (0..self.dim)
            .map(|r| self.row(r).1.iter().sum::<f64>().abs())
            .fold(0.0, f64::max)
    }

    /// Submatrix on `keep` (ascending original indices).
    pub fn restrict(&self, keep: &[usize]) -> SparseSymmetricMatrix {
        let mut remap = vec![usize::MAX; self.dim];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let mut row_offsets = vec![0usize; keep.len() + 1];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for (new_r, &old_r) in keep.iter().enumerate() {
            let (rcols, rvals) = self.row(old_r);
            for (&c, &v) in rcols.iter().zip(rvals) {
                if remap[c] != usize::MAX {
                    cols.push(remap[c]);
                    vals.push(v);
                }
            }
            row_offsets[new_r + 1] = cols.len();
        }
        SparseSymmetricMatrix {
            dim: keep.len(),
            row_offsets,
            cols,
            vals,
        }
    }

    /// self + scale * other, entry-wise union of patterns.
    pub fn add_scaled(&self, other: &SparseSymmetricMatrix, scale: f64) -> SparseSymmetricMatrix {
        assert_eq!(self.dim, other.dim);
        let mut row_offsets = vec![0usize; self.dim + 1];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for r in 0..self.dim {
            let (ac, av) = self.row(r);
            let (bc, bv) = other.row(r);
            let (mut i, mut j) = (0, 0);
            while i < ac.len() || j < bc.len() {
                let ca = ac.get(i).copied().unwrap_or(usize::MAX);
                let cb = bc.get(j).copied().unwrap_or(usize::MAX);
                if ca < cb {
                    cols.push(ca);
                    vals.push(av[i]);
                    i += 1;
                } else if cb < ca {
                    cols.push(cb);
                    vals.push(scale * bv[j]);
                    j += 1;
                } else {
                    cols.push(ca);
                    vals.push(av[i] + scale * bv[j]);
                    i += 1;
                    j += 1;
                }
            }
            row_offsets[r + 1] = cols.len();
        }
        SparseSymmetricMatrix {
            dim: self.dim,
            row_offsets,
            cols,
            vals,
        }
    }

    /// Matrix Market coordinate format, real symmetric, lower triangle,
    /// 1-based indices.
    pub fn write_matrix_market(&self, w: &mut impl Write) -> Result<(), SparseError> {
        writeln!(w, "%%MatrixMarket matrix coordinate real symmetric")?;
        let lower: Vec<(usize, usize, f64)> = self.iter().filter(|&(r, c, _)| r >= c).collect();
        writeln!(w, "{} {} {}", self.dim, self.dim, lower.len())?;
        for (r, c, v) in lower {
            writeln!(w, "{} {} {:.16e}", r + 1, c + 1, v)?;
        }
        Ok(())
    }
}
