//! Random self-orthogonal codes from quadratic forms.
//!
//! Words are added one at a time. A new word must be orthogonal to every
//! word found so far (linear conditions) and to itself (the sum-of-squares
//! quadratic condition). The linear conditions are solved by parameterizing
//! their solution space with a null-space basis `V`; substituting `x = yV`
//! into the sum of squares gives a quadratic form `g(y)` in the remaining
//! variables, and a uniformly random root of `g` is mapped back. Roots that
//! land in the span of the words already found are rejected.
//!
//! The same procedure serves both representations: flattened `n × m`
//! matrices over GF(q) (`nm` variables, trace product) and vectors over
//! GF(q^m) (`n` variables, dot product).

use crate::error::{Error, Result};
use crate::field::{ExtField, Field};
use crate::linalg::{self, Echelon};
use crate::quadratic::{QuadraticForm, RootSampler};
use crate::rank_metric::{Ambient, LinearCode, MatrixWord, VectorWord};
use crate::rng::{describe_state, SeededRng};

use std::sync::Arc;

/// Attempts per step before a construction gives up.
pub const STEP_BUDGET: u64 = 10_000;

/// Explicit root lists are built only for reduced forms with at most this
/// many points; larger forms are sampled by rejection.
pub const STEP_ROOT_LIST_LIMIT: u64 = 1 << 8;

/// Incremental state of one construction.
#[derive(Debug, Clone)]
pub struct ConstructionState {
    ambient: Ambient,
    target_k: usize,
    found: Vec<Vec<u32>>,
    span: Echelon,
}

impl ConstructionState {
    pub fn new(ambient: Ambient, target_k: usize) -> Result<Self> {
        let limit = ambient.construction_limit();
        if target_k > limit {
            return Err(Error::param(format!(
                "k={target_k} exceeds the self-orthogonal construction limit {limit} for {}",
                describe(&ambient)
            )));
        }
        let len = ambient.word_len();
        Ok(ConstructionState {
            ambient,
            target_k,
            found: Vec::new(),
            span: Echelon::new(len),
        })
    }

    pub fn found(&self) -> &[Vec<u32>] {
        &self.found
    }

    pub fn is_complete(&self) -> bool {
        self.found.len() == self.target_k
    }

    /// Adds one word. Does nothing once `target_k` words are found.
    pub fn step(&mut self, rng: &mut SeededRng) -> Result<()> {
        if self.is_complete() {
            return Ok(());
        }
        let field = self.ambient.scalar_field();
        let len = self.ambient.word_len();
        // solutions of <A_j, x> = 0 for all found A_j
        let params: Vec<Vec<u32>> = if self.found.is_empty() {
            (0..len)
                .map(|i| {
                    let mut e = vec![0; len];
                    e[i] = 1;
                    e
                })
                .collect()
        } else {
            self.span.null_space(field)
        };
        let sos = QuadraticForm::sum_of_squares(field.clone(), len);
        let reduced = sos.substitute(&params)?;
        let sampler = RootSampler::with_list_limit(reduced, true, STEP_ROOT_LIST_LIMIT)?;
        for _ in 0..STEP_BUDGET {
            let y = sampler.sample(rng)?;
            let x = linalg::vec_mat_mul(field, &y, &params);
            if !self.span.contains(field, &x) {
                self.span.insert(field, &x);
                self.found.push(x);
                return Ok(());
            }
        }
        Err(Error::BudgetExhausted {
            stage: format!(
                "construction step {} of {}",
                self.found.len() + 1,
                self.target_k
            ),
            budget: STEP_BUDGET,
            rng_state: Some(describe_state(rng)),
        })
    }

    pub fn run(mut self, rng: &mut SeededRng) -> Result<Vec<Vec<u32>>> {
        while !self.is_complete() {
            self.step(rng)?;
        }
        Ok(self.found)
    }
}

fn describe(ambient: &Ambient) -> String {
    format!(
        "{} q={} n={} m={}",
        ambient.repr(),
        ambient.q(),
        ambient.n(),
        ambient.m()
    )
}

/// A random k-dimensional self-orthogonal code (k = 0 gives `{0}`).
pub fn construct_so_code(ambient: &Ambient, k: usize, rng: &mut SeededRng) -> Result<LinearCode> {
    let words = ConstructionState::new(ambient.clone(), k)?.run(rng)?;
    LinearCode::new(ambient.clone(), words)
}

/// `k` pairwise trace-orthogonal, self-orthogonal, GF(q)-independent
/// `n × m` matrices; `1 <= k <= ⌊(nm-1)/2⌋`.
pub fn construct_fq_so_basis(
    field: Arc<Field>,
    n: usize,
    m: usize,
    k: usize,
    rng: &mut SeededRng,
) -> Result<Vec<MatrixWord>> {
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    let ambient = Ambient::matrix(field, n, m)?;
    let words = ConstructionState::new(ambient, k)?.run(rng)?;
    words
        .into_iter()
        .map(|w| MatrixWord::new(n, m, w))
        .collect()
}

/// `k` pairwise orthogonal, self-orthogonal, GF(q^m)-independent vectors in
/// GF(q^m)^n; `1 <= k <= ⌊(n-1)/2⌋`.
pub fn construct_fqm_so_basis(
    ext: Arc<ExtField>,
    n: usize,
    k: usize,
    rng: &mut SeededRng,
) -> Result<Vec<VectorWord>> {
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    let ambient = Ambient::vector(ext, n)?;
    let words = ConstructionState::new(ambient, k)?.run(rng)?;
    words.into_iter().map(VectorWord::new).collect()
}

/// A code from the ensemble of k-dimensional codes containing a
/// (k-1)-dimensional self-orthogonal subcode: a random self-orthogonal code
/// of dimension k-1 plus one uniform word outside its span. The
/// self-orthogonal part comes first in the basis.
pub fn sample_code_star(ambient: &Ambient, k: usize, rng: &mut SeededRng) -> Result<LinearCode> {
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    if 2 * k > ambient.word_len() {
        return Err(Error::param(format!(
            "k={k} exceeds half the dimension of {}",
            describe(ambient)
        )));
    }
    let sub = construct_so_code(ambient, k - 1, rng)?;
    extend_with_random_word(sub, rng)
}

/// Adjoins a uniform word outside the code's span.
pub fn extend_with_random_word(code: LinearCode, rng: &mut SeededRng) -> Result<LinearCode> {
    let ambient = code.ambient().clone();
    if code.dim() == ambient.word_len() {
        return Err(Error::param("code is already the whole space"));
    }
    for _ in 0..STEP_BUDGET {
        let w = ambient.random_word(rng);
        if !code.contains(&w) {
            let mut basis = code.basis().to_vec();
            basis.push(w);
            return LinearCode::new(ambient, basis);
        }
    }
    Err(Error::BudgetExhausted {
        stage: "adjoining a word outside the code".into(),
        budget: STEP_BUDGET,
        rng_state: Some(describe_state(rng)),
    })
}

/// A uniformly random k-dimensional linear code (independent uniform words).
pub fn sample_uniform_code(ambient: &Ambient, k: usize, rng: &mut SeededRng) -> Result<LinearCode> {
    if k > ambient.word_len() {
        return Err(Error::param(format!(
            "k={k} exceeds the dimension of {}",
            describe(ambient)
        )));
    }
    let mut code = LinearCode::zero(ambient.clone());
    for _ in 0..k {
        code = extend_with_random_word(code, rng)?;
    }
    Ok(code)
}
