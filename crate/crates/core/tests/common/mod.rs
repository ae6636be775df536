//! Test-side reference arithmetic, written without the library's field code.
#![allow(dead_code)]

/// GF(q) for q in {2, 3, 4, 5, 7} from hand-built tables. GF(4) uses the
/// encoding 0, 1, w = 2, w^2 = 3 with w^2 = w + 1.
pub struct SmallField {
    pub q: u32,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
}

impl SmallField {
    pub fn new(q: u32) -> Self {
        let n = q as usize;
        let (add, mul) = if q == 4 {
            let add = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
            // log table: 1 = w^0, 2 = w^1, 3 = w^2
            let log = |x: u32| match x {
                1 => 0,
                2 => 1,
                3 => 2,
                _ => unreachable!(),
            };
            let exp = [1u32, 2, 3];
            let mul = (0..4u32)
                .map(|a| {
                    (0..4u32)
                        .map(|b| {
                            if a == 0 || b == 0 {
                                0
                            } else {
                                exp[(log(a) + log(b)) % 3]
                            }
                        })
                        .collect()
                })
                .collect();
            (add, mul)
        } else {
            assert!([2, 3, 5, 7].contains(&q), "unsupported test field {q}");
            let add = (0..q)
                .map(|a| (0..q).map(|b| (a + b) % q).collect())
                .collect();
            let mul = (0..q)
                .map(|a| (0..q).map(|b| (a * b) % q).collect())
                .collect();
            (add, mul)
        };
        let f = SmallField { q, add, mul };
        debug_assert_eq!(f.add.len(), n);
        f
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize][b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn inv(&self, a: u32) -> u32 {
        (1..self.q).find(|&b| self.mul(a, b) == 1).unwrap()
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Rank of a row-major `rows × cols` matrix by plain elimination.
    pub fn rank(&self, data: &[u32], rows: usize, cols: usize) -> usize {
        let mut a: Vec<Vec<u32>> = data.chunks(cols).map(|c| c.to_vec()).collect();
        assert_eq!(a.len(), rows);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, p);
            let inv = self.inv(a[r][c]);
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = self.neg(self.mul(a[i][c], inv));
                    for j in 0..cols {
                        let v = self.mul(f, a[r][j]);
                        a[i][j] = self.add(a[i][j], v);
                    }
                }
            }
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }

    /// Rank of a list of equal-length vectors.
    pub fn rank_of_rows(&self, rows: &[Vec<u32>]) -> usize {
        if rows.is_empty() {
            return 0;
        }
        let cols = rows[0].len();
        self.rank(&rows.concat(), rows.len(), cols)
    }

    /// `Σ_{i<=j} a_ij x_i x_j` for coefficients in row order.
    pub fn eval_form(&self, n: usize, coeffs: &[u32], x: &[u32]) -> u32 {
        let mut k = 0;
        let mut acc = 0;
        for i in 0..n {
            for j in i..n {
                acc = self.add(acc, self.mul(coeffs[k], self.mul(x[i], x[j])));
                k += 1;
            }
        }
        acc
    }
}

/// Every vector in `{0..q}^len`.
pub fn all_vectors(q: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..q).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// All combinations `Σ c_i g_i` (duplicates included when `gens` are dependent).
pub fn span(f: &SmallField, gens: &[Vec<u32>], len: usize) -> Vec<Vec<u32>> {
    all_vectors(f.q, gens.len())
        .into_iter()
        .map(|c| {
            let mut w = vec![0; len];
            for (ci, g) in c.iter().zip(gens) {
                for (wi, &gi) in w.iter_mut().zip(g) {
                    *wi = f.add(*wi, f.mul(*ci, gi));
                }
            }
            w
        })
        .collect()
}

pub fn sub(f: &SmallField, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, f.neg(y))).collect()
}
