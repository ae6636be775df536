//! Gaussian elimination over a [`Field`].
//!
//! Vectors are `u32` slices of field encodings; matrices are lists of rows.

use crate::field::Field;

/// Reduced row-echelon form of a set of row vectors.
///
/// Rows are kept sorted by pivot column; every pivot is 1 and is the only
/// nonzero entry in its column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a, I>(field: &Field, ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = &'a [u32]>,
    {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(field, r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Clears the pivot positions of `v` against the stored rows.
    pub fn reduce(&self, field: &Field, v: &mut [u32]) {
        debug_assert_eq!(v.len(), self.ncols);
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                axpy(field, v, field.neg(c), row);
            }
        }
    }

    pub fn contains(&self, field: &Field, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the row space; returns false if it was already there.
    pub fn insert(&mut self, field: &Field, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let scale = field.inv(w[piv]);
        for x in w.iter_mut() {
            *x = field.mul(*x, scale);
        }
        for row in &mut self.rows {
            let c = row[piv];
            if c != 0 {
                axpy(field, row, field.neg(c), &w);
            }
        }
        let at = self.pivots.partition_point(|&p| p < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, w);
        true
    }

    /// Basis of `{x : row · x = 0 for every stored row}`.
    pub fn null_space(&self, field: &Field) -> Vec<Vec<u32>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0u32; self.ncols];
                x[free] = 1;
                for (row, &piv) in self.rows.iter().zip(&self.pivots) {
                    x[piv] = field.neg(row[free]);
                }
                x
            })
            .collect()
    }
}

/// `y += a * x`
#[inline]
pub fn axpy(field: &Field, y: &mut [u32], a: u32, x: &[u32]) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = field.add(*yi, field.mul(a, xi));
        }
    }
}

pub fn rank(field: &Field, rows: &[Vec<u32>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    Echelon::from_rows(field, ncols, rows.iter().map(|r| r.as_slice())).rank()
}

/// Rank of a row-major `nrows × ncols` matrix.
pub fn rank_of_slice(field: &Field, data: &[u32], nrows: usize, ncols: usize) -> usize {
    debug_assert_eq!(data.len(), nrows * ncols);
    let mut a = data.to_vec();
    rank_in_place(field, &mut a, nrows, ncols)
}

/// Like [`rank_of_slice`] but destroys `a`.
pub fn rank_in_place(field: &Field, a: &mut [u32], nrows: usize, ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| a[i * ncols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in c..ncols {
                a.swap(piv * ncols + j, r * ncols + j);
            }
        }
        let inv = field.inv(a[r * ncols + c]);
        for i in r + 1..nrows {
            let x = a[i * ncols + c];
            if x == 0 {
                continue;
            }
            let f = field.neg(field.mul(x, inv));
            for j in c..ncols {
                let v = a[r * ncols + j];
                if v != 0 {
                    a[i * ncols + j] = field.add(a[i * ncols + j], field.mul(f, v));
                }
            }
        }
        r += 1;
    }
    r
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(field: &Field, mat: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = mat.len();
    let mut aug: Vec<Vec<u32>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| aug[i][c] != 0)?;
        aug.swap(c, piv);
        let inv = field.inv(aug[c][c]);
        for x in aug[c].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != c {
                let f = row[c];
                if f != 0 {
                    axpy(field, row, field.neg(f), &pivot_row);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix.
pub fn vec_mat_mul(field: &Field, v: &[u32], mat: &[Vec<u32>]) -> Vec<u32> {
    debug_assert_eq!(v.len(), mat.len());
    let ncols = mat.first().map_or(0, |r| r.len());
    let mut out = vec![0u32; ncols];
    for (&c, row) in v.iter().zip(mat) {
        axpy(field, &mut out, c, row);
    }
    out
}

pub fn mat_mul(field: &Field, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    a.iter().map(|row| vec_mat_mul(field, row, b)).collect()
}

pub fn dot(field: &Field, a: &[u32], b: &[u32]) -> u32 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0, |acc, (&x, &y)| {
        if x == 0 || y == 0 {
            acc
        } else {
            field.add(acc, field.mul(x, y))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn rank_and_null_space_agree() {
        let mut rng = rng_from_seed(9);
        for q in [2u32, 3, 4, 5, 9] {
            let f = Field::gf(q).unwrap();
            for _ in 0..200 {
                let nrows = rand::Rng::random_range(&mut rng, 1..6);
                let ncols = rand::Rng::random_range(&mut rng, 1..7);
                let rows: Vec<Vec<u32>> = (0..nrows)
                    .map(|_| (0..ncols).map(|_| f.random(&mut rng) % 2).collect())
                    .collect();
                let e = Echelon::from_rows(&f, ncols, rows.iter().map(|r| r.as_slice()));
                let flat: Vec<u32> = rows.concat();
                assert_eq!(e.rank(), rank_of_slice(&f, &flat, nrows, ncols));
                let ns = e.null_space(&f);
                assert_eq!(ns.len() + e.rank(), ncols);
                for x in &ns {
                    for r in &rows {
                        assert_eq!(dot(&f, r, x), 0);
                    }
                }
                for r in &rows {
                    assert!(e.contains(&f, r));
                }
            }
        }
    }

    #[test]
    fn invert_round_trip() {
        let f = Field::gf(5).unwrap();
        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = invert(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv), vec![vec![1, 0], vec![0, 1]]);
        assert!(invert(&f, &[vec![1, 2], vec![2, 4]]).is_none());
    }
}
