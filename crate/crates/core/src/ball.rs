//! Rank-metric balls: Gaussian binomials, exact sizes, enumeration and
//! uniform sampling.
//!
//! All kernels work on `rows × cols` matrices over GF(q). A matrix ambient
//! uses `n × m`; a vector ambient over GF(q^m) uses the `n × m` polynomial
//! coordinate matrix of a vector, so `rows` may exceed `cols` there.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::rank_metric::Ambient;
use crate::rng::{uniform_below, SeededRng};

/// Largest ball `enumerate_ball` will walk.
pub const ENUMERATION_LIMIT: u64 = 1 << 22;

/// Number of `k`-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> Result<BigUint> {
    if k > n {
        return Err(Error::param(format!("k={k} exceeds n={n}")));
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k as u32 {
        num *= q.pow(n as u32) - q.pow(i);
        den *= q.pow(k as u32) - q.pow(i);
    }
    Ok(num / den)
}

/// Whether `q^{k(n-k)} <= [n k]_q <= 4 q^{k(n-k)}`.
pub fn check_gb_bounds(n: usize, k: usize, q: u32) -> Result<bool> {
    let g = gaussian_binomial(n, k, q)?;
    let lower = BigUint::from(q).pow((k * (n - k)) as u32);
    let upper = &lower * 4u32;
    Ok(lower <= g && g <= upper)
}

/// Number of `rows × cols` matrices over GF(q) of rank exactly `i`.
pub fn rank_stratum_size(rows: usize, cols: usize, q: u32, i: usize) -> BigUint {
    if i > rows.min(cols) {
        return BigUint::zero();
    }
    let qb = BigUint::from(q);
    let full = qb.pow(cols as u32);
    let mut maps = BigUint::one();
    for j in 0..i as u32 {
        maps *= &full - qb.pow(j);
    }
    gaussian_binomial(rows, i, q).expect("i <= rows") * maps
}

fn rank_at_most(rows: usize, cols: usize, q: u32, r: usize) -> BigUint {
    (0..=r.min(rows).min(cols))
        .map(|i| rank_stratum_size(rows, cols, q, i))
        .sum()
}

/// Number of `n × m` matrices over GF(q) of rank at most `r`.
pub fn ball_size_exact(n: usize, m: usize, q: u32, r: usize) -> Result<BigUint> {
    if !(r <= n && n <= m) {
        return Err(Error::param(format!(
            "need r <= n <= m, got r={r} n={n} m={m}"
        )));
    }
    Ok(rank_at_most(n, m, q, r))
}

/// `log_q 4 + mn(τ + τρ - τ²ρ)` with `ρ = n/m`, an upper bound on
/// `log_q` of the ball size at radius `⌊τn⌋`.
pub fn ball_size_upper_bound(n: usize, m: usize, q: u32, tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::param(format!("tau={tau} is not in (0,1)")));
    }
    if n == 0 || m == 0 || q < 2 {
        return Err(Error::param("need n, m >= 1 and q >= 2"));
    }
    let rho = n as f64 / m as f64;
    let mn = (m * n) as f64;
    Ok(4f64.ln() / (q as f64).ln() + mn * (tau + tau * rho - tau * tau * rho))
}

/// `log_q x` for a positive big integer.
pub fn log_q(x: &BigUint, q: u32) -> f64 {
    let bits = x.bits();
    let ln = if bits <= 1000 {
        x.to_f64().expect("finite").ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
    };
    ln / (q as f64).ln()
}

/// `⌊τn⌋`, with a small slack so that e.g. `0.29 · 100` floors to 29.
pub fn radius_for(tau: f64, n: usize) -> usize {
    (tau * n as f64 + 1e-9).floor() as usize
}

/// A ball `B(center, radius)` in an ambient space.
#[derive(Debug, Clone)]
pub struct BallSpec {
    ambient: Ambient,
    center: Vec<u32>,
    radius: usize,
    tau: Option<f64>,
}

impl BallSpec {
    pub fn new(ambient: Ambient, center: Vec<u32>, radius: usize) -> Result<Self> {
        ambient.check_word(&center)?;
        if radius > ambient.n() {
            return Err(Error::param(format!(
                "radius {radius} exceeds n={}",
                ambient.n()
            )));
        }
        Ok(BallSpec {
            ambient,
            center,
            radius,
            tau: None,
        })
    }

    /// Radius `⌊τn⌋`.
    pub fn with_tau(ambient: Ambient, center: Vec<u32>, tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau < 1.0) {
            return Err(Error::param(format!("tau={tau} is not in (0,1)")));
        }
        let r = radius_for(tau, ambient.n());
        let mut spec = Self::new(ambient, center, r)?;
        spec.tau = Some(tau);
        Ok(spec)
    }

    /// The ball of the given radius around the zero word.
    pub fn at_zero(ambient: Ambient, radius: usize) -> Result<Self> {
        let center = ambient.zero_word();
        Self::new(ambient, center, radius)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn center(&self) -> &[u32] {
        &self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn tau(&self) -> Option<f64> {
        self.tau
    }

    pub fn contains(&self, w: &[u32]) -> bool {
        self.ambient.rank_distance(&self.center, w) <= self.radius
    }

    pub fn size(&self) -> BigUint {
        rank_at_most(
            self.ambient.n(),
            self.ambient.m(),
            self.ambient.q(),
            self.radius,
        )
    }

    /// Exact count of members of each rank distance `0..=radius`.
    pub fn strata(&self) -> Vec<BigUint> {
        (0..=self.radius)
            .map(|i| rank_stratum_size(self.ambient.n(), self.ambient.m(), self.ambient.q(), i))
            .collect()
    }

    fn shifted(&self, x: &[u32]) -> Vec<u32> {
        self.ambient
            .add(&self.center, &word_from_matrix(&self.ambient, x))
    }
}

/// Maps an `n × m` matrix over GF(q) to an ambient word of the same rank.
fn word_from_matrix(ambient: &Ambient, x: &[u32]) -> Vec<u32> {
    match ambient {
        Ambient::Matrix { .. } => x.to_vec(),
        Ambient::Vector { ext, n } => {
            let m = ext.m() as usize;
            (0..*n)
                .map(|i| ext.from_coords(&x[i * m..(i + 1) * m]))
                .collect()
        }
    }
}

/// Every member of the ball, each exactly once.
pub fn enumerate_ball(spec: &BallSpec) -> Result<BallIter<'_>> {
    let size = spec.size();
    if size > BigUint::from(ENUMERATION_LIMIT) {
        return Err(Error::too_large("ball", size, ENUMERATION_LIMIT));
    }
    Ok(BallIter {
        spec,
        field: spec.ambient.base_field().as_ref(),
        rows: spec.ambient.n(),
        cols: spec.ambient.m(),
        rank: 0,
        spaces: vec![Vec::new()],
        maps: vec![Vec::new()],
        si: 0,
        mi: 0,
    })
}

/// Iterator over a ball.
///
/// A rank-i matrix is written uniquely as `U W` where the `rows × i` matrix
/// `U` has its transpose in reduced row-echelon form (one per column space)
/// and the `i × cols` matrix `W` has full rank. The iterator walks the ranks
/// in order and, within a rank, all pairs `(U, W)`.
pub struct BallIter<'a> {
    spec: &'a BallSpec,
    field: &'a Field,
    rows: usize,
    cols: usize,
    rank: usize,
    // column-major U (i × rows, i.e. U transposed) and row-major W, flattened
    spaces: Vec<Vec<u32>>,
    maps: Vec<Vec<u32>>,
    si: usize,
    mi: usize,
}

impl BallIter<'_> {
    fn advance_rank(&mut self) -> bool {
        loop {
            self.rank += 1;
            if self.rank > self.spec.radius.min(self.rows).min(self.cols) {
                return false;
            }
            self.spaces = rref_matrices(self.field, self.rank, self.rows);
            self.maps = full_rank_matrices(self.field, self.rank, self.cols);
            self.si = 0;
            self.mi = 0;
            if !self.spaces.is_empty() && !self.maps.is_empty() {
                return true;
            }
        }
    }
}

impl Iterator for BallIter<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.si == self.spaces.len() && !self.advance_rank() {
            return None;
        }
        let i = self.rank;
        let (rows, cols) = (self.rows, self.cols);
        let f = self.field;
        let ut = &self.spaces[self.si];
        let w = &self.maps[self.mi];
        let mut x = vec![0u32; rows * cols];
        for t in 0..i {
            let wrow = &w[t * cols..(t + 1) * cols];
            for r in 0..rows {
                let u = ut[t * rows + r];
                if u != 0 {
                    linalg::axpy(f, &mut x[r * cols..(r + 1) * cols], u, wrow);
                }
            }
        }
        self.mi += 1;
        if self.mi == self.maps.len() {
            self.mi = 0;
            self.si += 1;
        }
        Some(self.spec.shifted(&x))
    }
}

/// All `k × n` matrices in reduced row-echelon form with rank `k`.
fn rref_matrices(field: &Field, k: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(n, k, 0, &mut pivots, &mut |piv| {
        // free positions: row t, columns after its pivot that are not pivots
        let free: Vec<usize> = (0..k)
            .flat_map(|t| {
                let piv = piv.to_vec();
                (piv[t] + 1..n)
                    .filter(move |c| !piv.contains(c))
                    .map(move |c| t * n + c)
            })
            .collect();
        let mut m = vec![0u32; k * n];
        for (t, &p) in piv.iter().enumerate() {
            m[t * n + p] = 1;
        }
        for_each_assignment(field.order(), free.len(), |vals| {
            for (&pos, &v) in free.iter().zip(vals) {
                m[pos] = v;
            }
            out.push(m.clone());
        });
    });
    out
}

fn choose_pivots(
    n: usize,
    k: usize,
    start: usize,
    acc: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for c in start..n {
        if n - c < k - acc.len() {
            break;
        }
        acc.push(c);
        choose_pivots(n, k, c + 1, acc, f);
        acc.pop();
    }
}

/// Calls `f` on every vector in `{0..q}^len`, in lexicographic order.
fn for_each_assignment(q: u32, len: usize, mut f: impl FnMut(&[u32])) {
    let mut v = vec![0u32; len];
    loop {
        f(&v);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
        }
    }
}

/// All `k × n` matrices of rank `k`.
fn full_rank_matrices(field: &Field, k: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_assignment(field.order(), k * n, |v| {
        if linalg::rank_of_slice(field, v, k, n) == k {
            out.push(v.to_vec());
        }
    });
    out
}

/// A uniform `k × n` matrix of rank `min(k, n)`.
fn random_full_rank(field: &Field, k: usize, n: usize, rng: &mut SeededRng) -> Vec<u32> {
    loop {
        let v: Vec<u32> = (0..k * n).map(|_| field.random(rng)).collect();
        if linalg::rank_of_slice(field, &v, k, n) == k.min(n) {
            return v;
        }
    }
}

/// A uniformly random member of the ball.
///
/// The rank distance `i` is drawn with probability proportional to the
/// exact stratum size; then a uniform rank-i matrix is formed as `U W` with
/// `U` uniform among full-column-rank `rows × i` matrices (so its column
/// space is a uniform i-dimensional subspace) and `W` uniform among
/// full-rank `i × cols` matrices. Every rank-i matrix has the same number
/// `|GL_i(q)|` of such factorizations.
pub fn sample_from_ball(spec: &BallSpec, rng: &mut SeededRng) -> Vec<u32> {
    let strata = spec.strata();
    let total: BigUint = strata.iter().sum();
    let mut t = uniform_below(rng, &total);
    let mut i = 0;
    while t >= strata[i] {
        t -= &strata[i];
        i += 1;
    }
    let amb = &spec.ambient;
    let x = random_of_rank(amb.base_field(), amb.n(), amb.m(), i, rng);
    spec.shifted(&x)
}

/// `U W` for uniform full-rank `U` (`rows × i`) and `W` (`i × cols`).
fn random_of_rank(
    field: &Field,
    rows: usize,
    cols: usize,
    i: usize,
    rng: &mut SeededRng,
) -> Vec<u32> {
    let mut x = vec![0u32; rows * cols];
    if i == 0 {
        return x;
    }
    let u = random_full_rank(field, rows, i, rng);
    let w = random_full_rank(field, i, cols, rng);
    for r in 0..rows {
        for t in 0..i {
            let c = u[r * i + t];
            if c != 0 {
                linalg::axpy(
                    field,
                    &mut x[r * cols..(r + 1) * cols],
                    c,
                    &w[t * cols..(t + 1) * cols],
                );
            }
        }
    }
    x
}

/// A uniformly random word of rank distance exactly `i` from zero.
pub fn sample_of_rank(ambient: &Ambient, i: usize, rng: &mut SeededRng) -> Result<Vec<u32>> {
    let (rows, cols) = (ambient.n(), ambient.m());
    if i > rows.min(cols) {
        return Err(Error::param(format!(
            "no word of rank {i} in a {rows}x{cols} space"
        )));
    }
    let x = random_of_rank(ambient.base_field(), rows, cols, i, rng);
    Ok(word_from_matrix(ambient, &x))
}
