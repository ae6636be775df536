//! Quadratic forms over a finite field.
//!
//! A form in N variables is stored as its upper-triangular coefficients
//! `a_ij`, `i <= j`, so that `f(x) = Σ_{i<=j} a_ij x_i x_j`. The same code
//! handles forms over GF(q) and over GF(q^m); only the [`Field`] changes.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{check_len, Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon};
use crate::rng::SeededRng;

/// Largest point space `count_roots_brute` will enumerate.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 24;

/// Point spaces up to this size are sampled from an explicit root list.
pub const ROOT_LIST_LIMIT: u64 = 1 << 20;

/// Random points tried by rejection sampling before giving up.
pub const REJECTION_BUDGET: u64 = 10_000;

#[derive(Debug, Clone)]
pub struct QuadraticForm {
    field: Arc<Field>,
    n_vars: usize,
    // row-major upper triangle: a_00 a_01 .. a_0N a_11 ..
    coeffs: Vec<u32>,
}

impl PartialEq for QuadraticForm {
    fn eq(&self, other: &Self) -> bool {
        self.n_vars == other.n_vars && self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for QuadraticForm {}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * n - i * (i + 1) / 2 + j
}

impl QuadraticForm {
    /// Form from the `N(N+1)/2` upper-triangular coefficients in row order.
    pub fn new(field: Arc<Field>, n_vars: usize, coeffs: Vec<u32>) -> Result<Self> {
        check_len(n_vars * (n_vars + 1) / 2, coeffs.len())?;
        if coeffs.iter().any(|&c| c >= field.order()) {
            return Err(Error::param("coefficient outside the field"));
        }
        Ok(QuadraticForm {
            field,
            n_vars,
            coeffs,
        })
    }

    pub fn zero(field: Arc<Field>, n_vars: usize) -> Self {
        QuadraticForm {
            field,
            n_vars,
            coeffs: vec![0; n_vars * (n_vars + 1) / 2],
        }
    }

    /// `x_1^2 + ... + x_N^2`.
    pub fn sum_of_squares(field: Arc<Field>, n_vars: usize) -> Self {
        let mut f = Self::zero(field, n_vars);
        for i in 0..n_vars {
            f.coeffs[tri_index(n_vars, i, i)] = 1;
        }
        f
    }

    /// `x^T A x` for a full square matrix `A`; `a_ij` and `a_ji` are folded.
    pub fn from_matrix(field: Arc<Field>, a: &[Vec<u32>]) -> Result<Self> {
        let n = a.len();
        for row in a {
            check_len(n, row.len())?;
        }
        let mut f = Self::zero(field, n);
        for i in 0..n {
            for j in i..n {
                let c = if i == j {
                    a[i][i]
                } else {
                    f.field.add(a[i][j], a[j][i])
                };
                f.coeffs[tri_index(n, i, j)] = c;
            }
        }
        Ok(f)
    }

    pub fn random(field: Arc<Field>, n_vars: usize, rng: &mut SeededRng) -> Self {
        let coeffs = (0..n_vars * (n_vars + 1) / 2)
            .map(|_| field.random(rng))
            .collect();
        QuadraticForm {
            field,
            n_vars,
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `a_ij` for `i <= j`.
    pub fn coeff(&self, i: usize, j: usize) -> u32 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.coeffs[tri_index(self.n_vars, i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn evaluate(&self, x: &[u32]) -> Result<u32> {
        check_len(self.n_vars, x.len())?;
        Ok(self.eval_unchecked(x))
    }

    #[inline]
    fn eval_unchecked(&self, x: &[u32]) -> u32 {
        let f = &*self.field;
        let n = self.n_vars;
        let mut acc = 0;
        let mut k = 0;
        for i in 0..n {
            let xi = x[i];
            if xi == 0 {
                k += n - i;
                continue;
            }
            // xi * (Σ_{j>=i} a_ij x_j)
            let mut inner = 0;
            for &xj in &x[i..] {
                let a = self.coeffs[k];
                if a != 0 && xj != 0 {
                    inner = f.add(inner, f.mul(a, xj));
                }
                k += 1;
            }
            acc = f.add(acc, f.mul(xi, inner));
        }
        acc
    }

    /// The form `g(y) = f(y M)` for a `d × N` matrix `M` (rows indexed by the new variables).
    pub fn substitute(&self, m: &[Vec<u32>]) -> Result<QuadraticForm> {
        let f = &*self.field;
        let n = self.n_vars;
        for row in m {
            check_len(n, row.len())?;
        }
        let d = m.len();
        let mut g = QuadraticForm::zero(self.field.clone(), d);
        for i in 0..n {
            for j in i..n {
                let c = self.coeff(i, j);
                if c == 0 {
                    continue;
                }
                for a in 0..d {
                    let (mai, maj) = (m[a][i], m[a][j]);
                    // diagonal: c * M_ai * M_aj
                    let diag = f.mul(c, f.mul(mai, maj));
                    let idx = tri_index(d, a, a);
                    g.coeffs[idx] = f.add(g.coeffs[idx], diag);
                    for b in a + 1..d {
                        // c * (M_ai M_bj + M_bi M_aj)
                        let t = f.add(f.mul(mai, m[b][j]), f.mul(m[b][i], maj));
                        if t != 0 {
                            let idx = tri_index(d, a, b);
                            g.coeffs[idx] = f.add(g.coeffs[idx], f.mul(c, t));
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Matrix of the polar form `B(x, y) = f(x + y) - f(x) - f(y)`:
    /// off-diagonal `a_ij`, diagonal `2 a_ii`.
    pub fn polar_matrix(&self) -> Vec<Vec<u32>> {
        let f = &*self.field;
        let n = self.n_vars;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            f.add(self.coeff(i, i), self.coeff(i, i))
                        } else {
                            self.coeff(i, j)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The rank: the fewest variables of any equivalent form.
    ///
    /// Odd characteristic: the rank of the symmetric matrix of the form.
    /// Characteristic 2: the polar form is alternating of even rank `2h` and
    /// `f` is additive on its radical `W`; the rank is `2h` if `f` vanishes
    /// on `W` and `2h + 1` otherwise. (The symmetric-matrix rank is wrong
    /// here: `x1^2 + x2^2 = (x1 + x2)^2` has rank 1.)
    pub fn rank(&self) -> usize {
        let f = &*self.field;
        let polar = self.polar_matrix();
        let e = Echelon::from_rows(f, self.n_vars, polar.iter().map(|r| r.as_slice()));
        if f.characteristic() != 2 {
            return e.rank();
        }
        let radical = e.null_space(f);
        let anisotropic = radical.iter().any(|w| self.eval_unchecked(w) != 0);
        e.rank() + usize::from(anisotropic)
    }

    /// Size of the point space, `|F|^N`.
    pub fn space_size(&self) -> BigUint {
        BigUint::from(self.field.order()).pow(self.n_vars as u32)
    }

    fn space_size_u64(&self) -> Option<u64> {
        (self.field.order() as u64).checked_pow(self.n_vars as u32)
    }

    /// Calls `visit` on every point of `F^N` in lexicographic order.
    pub(crate) fn for_each_point(&self, mut visit: impl FnMut(&[u32])) {
        let order = self.field.order();
        let mut x = vec![0u32; self.n_vars];
        loop {
            visit(&x);
            let mut i = 0;
            loop {
                if i == x.len() {
                    return;
                }
                x[i] += 1;
                if x[i] < order {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    fn roots(&self, nonzero: bool) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.for_each_point(|x| {
            if self.eval_unchecked(x) == 0 && !(nonzero && x.iter().all(|&v| v == 0)) {
                out.push(x.to_vec());
            }
        });
        out
    }
}

impl fmt::Display for QuadraticForm {
    /// `N=<N> field=<p>^<e>` on one line, coefficients on the next.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "N={} field={}",
            self.n_vars,
            crate::io::field_tag(&self.field)
        )?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        writeln!(f, "{}", coeffs.join(" "))
    }
}

/// Exact number of roots by enumerating `F^N`.
pub fn count_roots_brute(f: &QuadraticForm) -> Result<u64> {
    if !f.space_size_u64().is_some_and(|s| s <= BRUTE_FORCE_LIMIT) {
        return Err(Error::too_large(
            "root search space",
            f.space_size(),
            BRUTE_FORCE_LIMIT,
        ));
    }
    let mut count = 0u64;
    f.for_each_point(|x| {
        if f.eval_unchecked(x) == 0 {
            count += 1;
        }
    });
    Ok(count)
}

/// Closed-form root count. For even rank the sign depends on the type of the
/// form, so both candidates are returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootCount {
    Exact(BigUint),
    EitherOf(BigUint, BigUint),
}

impl RootCount {
    pub fn admits(&self, n: &BigUint) -> bool {
        match self {
            RootCount::Exact(v) => v == n,
            RootCount::EitherOf(a, b) => a == n || b == n,
        }
    }
}

/// With `Q = |F|` and `N` variables: `Q^N` if the rank is 0, `Q^(N-1)` if it
/// is odd, `Q^(N-1) ± (Q-1) Q^(N-r/2-1)` if it is even.
pub fn count_roots_formula(f: &QuadraticForm) -> RootCount {
    let q = BigUint::from(f.field.order());
    let n = f.n_vars as u32;
    let r = f.rank() as u32;
    if r == 0 {
        return RootCount::Exact(q.pow(n));
    }
    let main = q.pow(n - 1);
    if r % 2 == 1 {
        return RootCount::Exact(main);
    }
    let delta = (&q - 1u32) * q.pow(n - r / 2 - 1);
    RootCount::EitherOf(&main - &delta, main + delta)
}

/// Uniform sampler over the (nonzero) roots of a form.
///
/// Holds an explicit root list when the point space is at most the list
/// limit, and samples by rejection on uniform points otherwise. Both paths
/// are exactly uniform over the target set.
#[derive(Debug, Clone)]
pub struct RootSampler {
    form: QuadraticForm,
    nonzero: bool,
    list: Option<Vec<Vec<u32>>>,
    budget: u64,
}

impl RootSampler {
    pub fn new(form: QuadraticForm, nonzero: bool) -> Result<Self> {
        Self::with_list_limit(form, nonzero, ROOT_LIST_LIMIT)
    }

    pub fn with_list_limit(form: QuadraticForm, nonzero: bool, list_limit: u64) -> Result<Self> {
        let small = form.space_size_u64().is_some_and(|s| s <= list_limit);
        let list = if small {
            let roots = form.roots(nonzero);
            if roots.is_empty() {
                return Err(Error::NoRoot { nonzero });
            }
            Some(roots)
        } else {
            None
        };
        Ok(RootSampler {
            form,
            nonzero,
            list,
            budget: REJECTION_BUDGET,
        })
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    /// Number of roots when the explicit list was built.
    pub fn root_count(&self) -> Option<usize> {
        self.list.as_ref().map(|l| l.len())
    }

    pub fn sample(&self, rng: &mut SeededRng) -> Result<Vec<u32>> {
        if let Some(list) = &self.list {
            return Ok(list[rng.random_range(0..list.len())].clone());
        }
        let field = &self.form.field;
        let mut x = vec![0u32; self.form.n_vars];
        for _ in 0..self.budget {
            for v in x.iter_mut() {
                *v = field.random(rng);
            }
            if self.nonzero && x.iter().all(|&v| v == 0) {
                continue;
            }
            if self.form.eval_unchecked(&x) == 0 {
                return Ok(x);
            }
        }
        Err(Error::BudgetExhausted {
            stage: "root rejection sampling".into(),
            budget: self.budget,
            rng_state: Some(crate::rng::describe_state(rng)),
        })
    }
}

/// Uniformly random root (nonzero if requested).
pub fn sample_root(f: &QuadraticForm, rng: &mut SeededRng, nonzero: bool) -> Result<Vec<u32>> {
    RootSampler::new(f.clone(), nonzero)?.sample(rng)
}

/// Applies a random invertible `N × N` substitution.
pub fn random_equivalent(f: &QuadraticForm, rng: &mut SeededRng) -> QuadraticForm {
    let field = f.field();
    let n = f.n_vars();
    loop {
        let m: Vec<Vec<u32>> = (0..n)
            .map(|_| (0..n).map(|_| field.random(rng)).collect())
            .collect();
        if linalg::rank(field, &m) == n {
            return f.substitute(&m).expect("square substitution");
        }
    }
}
