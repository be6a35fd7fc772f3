//! Profile (skyline) LDL^T factorization with reverse Cuthill-McKee
//! preordering. Positive pivots are required; a non-positive pivot is
//! reported as a factorization failure, which the caller treats as a
//! shift collision.

use thiserror::Error;

use crate::fem::SparseSymmetricMatrix;

#[derive(Debug, Error)]
pub enum FactorError {
    #[error("factorization failed at row {row}: pivot {pivot:.6e} is not positive")]
    NonPositivePivot { row: usize, pivot: f64 },
}

/// LDL^T factor of a permuted symmetric positive definite matrix,
/// stored row-wise within the profile.
pub struct SkylineLdlt {
    n: usize,
    /// Original index of permuted position i.
    perm: Vec<usize>,
    /// First stored column of each (permuted) row.
    jmin: Vec<usize>,
    /// Start of each row slice in `data`; row i occupies
    /// `data[offsets[i]..offsets[i+1]]` covering columns jmin[i]..=i,
    /// the last slot being the pivot D_i.
    offsets: Vec<usize>,
    data: Vec<f64>,
}

impl SkylineLdlt {
    /// Factor `a` with the given ordering (`perm[i]` = original index of
    /// permuted position i).
    pub fn factor(a: &SparseSymmetricMatrix, perm: Vec<usize>) -> Result<Self, FactorError> {
        let n = a.dim();
        assert_eq!(perm.len(), n);
        let mut iperm = vec![0usize; n];
        for (pos, &orig) in perm.iter().enumerate() {
            iperm[orig] = pos;
        }

        // Row profile of the permuted matrix.
        let mut jmin: Vec<usize> = (0..n).collect();
        for r in 0..n {
            let (cols, _) = a.row(r);
            let pr = iperm[r];
            for &c in cols {
                let pc = iperm[c];
                if pc < jmin[pr] {
                    jmin[pr] = pc;
                }
                if pr < jmin[pc] {
                    jmin[pc] = pr;
                }
            }
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + (i - jmin[i] + 1);
        }
        let mut data = vec![0.0; offsets[n]];

        // Scatter the permuted lower triangle into the profile.
        for r in 0..n {
            let (cols, vals) = a.row(r);
            let pr = iperm[r];
            for (&c, &v) in cols.iter().zip(vals) {
                let pc = iperm[c];
                if pc <= pr {
                    data[offsets[pr] + (pc - jmin[pr])] = v;
                }
            }
        }

        // Row-wise LDL^T inside the profile. U_ik = L_ik * D_k is built
        // first, then converted in place.
        let scale = data
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        for i in 0..n {
            let lo_i = jmin[i];
            for j in (lo_i + 1)..i {
                let lo = lo_i.max(jmin[j]);
                let (head, tail) = data.split_at_mut(offsets[j + 1]);
                let row_j = &head[offsets[j]..offsets[j + 1] - 1];
                let row_i = &mut tail[offsets[i] - offsets[j + 1]..];
                let mut acc = 0.0;
                let ui = &row_i[(lo - lo_i)..(j - lo_i)];
                let lj = &row_j[(lo - jmin[j])..];
                for (u, l) in ui.iter().zip(lj) {
                    acc += u * l;
                }
                row_i[j - lo_i] -= acc;
            }
            // Convert U -> L and accumulate the pivot.
            let (head, tail) = data.split_at_mut(offsets[i]);
            let row_i = &mut tail[..offsets[i + 1] - offsets[i]];
            let mut pivot = row_i[i - lo_i];
            for k in lo_i..i {
                let dk = head[offsets[k + 1] - 1];
                let u = row_i[k - lo_i];
                let l = u / dk;
                pivot -= u * l;
                row_i[k - lo_i] = l;
            }
            if !pivot.is_finite() || pivot <= f64::EPSILON * scale * 1e-2 {
                return Err(FactorError::NonPositivePivot { row: i, pivot });
            }
            row_i[i - lo_i] = pivot;
        }

        Ok(Self {
            n,
            perm,
            jmin,
            offsets,
            data,
        })
    }

    /// Solve A x = b.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let mut y: Vec<f64> = self.perm.iter().map(|&orig| b[orig]).collect();
        // Forward: L y' = y.
        for i in 0..n {
            let lo = self.jmin[i];
            let row = &self.data[self.offsets[i]..self.offsets[i + 1] - 1];
            let mut acc = y[i];
            for (l, yk) in row.iter().zip(&y[lo..i]) {
                acc -= l * yk;
            }
            y[i] = acc;
        }
        // Diagonal: D z = y'.
        for (i, yi) in y.iter_mut().enumerate() {
            *yi /= self.data[self.offsets[i + 1] - 1];
        }
        // Backward: L^T x = z, saxpy by rows from the bottom.
        for i in (0..n).rev() {
            let lo = self.jmin[i];
            let xi = y[i];
            let row = &self.data[self.offsets[i]..self.offsets[i + 1] - 1];
            for (l, yk) in row.iter().zip(y[lo..i].iter_mut()) {
                *yk -= l * xi;
            }
        }
        let mut x = vec![0.0; n];
        for i in 0..n {
            x[self.perm[i]] = y[i];
        }
        x
    }

    pub fn profile_len(&self) -> usize {
        self.data.len()
    }
}

/// Reverse Cuthill-McKee ordering of the matrix graph. Deterministic:
/// components start at the minimum-degree vertex (ties by index) and
/// neighbor queues are sorted by (degree, index).
pub fn rcm_ordering(a: &SparseSymmetricMatrix) -> Vec<usize> {
    let n = a.dim();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (r, c, _) in a.iter() {
        if r != c {
            adj[r].push(c);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let degree: Vec<usize> = adj.iter().map(|l| l.len()).collect();

    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    loop {
        let start = (0..n).filter(|&v| !seen[v]).min_by_key(|&v| (degree[v], v));
        let Some(start) = start else { break };
        seen[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let mut next: Vec<usize> = adj[u].iter().copied().filter(|&v| !seen[v]).collect();
            next.sort_by_key(|&v| (degree[v], v));
            for v in next {
                seen[v] = true;
                order.push(v);
            }
        }
    }
    order.reverse();
    order
}
