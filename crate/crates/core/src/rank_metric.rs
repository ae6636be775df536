//! Rank-metric codewords and linear codes in both representations.
//!
//! * matrix representation: `n × m` matrices over GF(q), GF(q)-linear codes,
//!   Delsarte dual under `Tr(X Yᵀ)`;
//! * vector representation: length-`n` vectors over GF(q^m), GF(q^m)-linear
//!   codes, dual under the standard dot product.
//!
//! Words inside a [`LinearCode`] are stored flattened (`n·m` entries
//! row-major, or `n` extension-field entries). The rank of a vector word is
//! the rank of its `n × m` coordinate matrix, which does not depend on the
//! choice of basis.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::field::{Basis, ExtField, Field};
use crate::linalg::{self, Echelon};
use crate::rng::SeededRng;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixWord {
    n: usize,
    m: usize,
    entries: Vec<u32>,
}

impl MatrixWord {
    /// Row-major `n × m` matrix; requires `1 <= n <= m` (transpose first otherwise).
    pub fn new(n: usize, m: usize, entries: Vec<u32>) -> Result<Self> {
        if n == 0 || n > m {
            return Err(Error::param(format!(
                "matrix words need 1 <= n <= m, got n={n} m={m}"
            )));
        }
        check_len(n * m, entries.len())?;
        Ok(MatrixWord { n, m, entries })
    }

    pub fn zeros(n: usize, m: usize) -> Result<Self> {
        Self::new(n, m, vec![0; n * m])
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        for r in rows {
            check_len(m, r.len())?;
        }
        Self::new(n, m, rows.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.m..(i + 1) * self.m]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorWord {
    coords: Vec<u32>,
}

impl VectorWord {
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::param("vector words need length at least 1"));
        }
        Ok(VectorWord { coords })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }
}

fn check_same_shape(x: &MatrixWord, y: &MatrixWord) -> Result<()> {
    check_len(x.n, y.n)?;
    check_len(x.m, y.m)
}

fn difference(field: &Field, x: &[u32], y: &[u32]) -> Vec<u32> {
    x.iter().zip(y).map(|(&a, &b)| field.sub(a, b)).collect()
}

pub fn rank_norm(field: &Field, x: &MatrixWord) -> usize {
    linalg::rank_of_slice(field, &x.entries, x.n, x.m)
}

/// `rank(X - Y)` over GF(q).
pub fn rank_distance(field: &Field, x: &MatrixWord, y: &MatrixWord) -> Result<usize> {
    check_same_shape(x, y)?;
    let d = difference(field, &x.entries, &y.entries);
    Ok(linalg::rank_in_place(field, &mut d.clone(), x.n, x.m))
}

/// `Tr(X Yᵀ) = Σ x_ij y_ij`.
pub fn trace_inner_product(field: &Field, x: &MatrixWord, y: &MatrixWord) -> Result<u32> {
    check_same_shape(x, y)?;
    Ok(linalg::dot(field, &x.entries, &y.entries))
}

/// `⟨x, y⟩ = Σ x_i y_i` over GF(q^m).
pub fn vector_inner_product(field: &Field, x: &VectorWord, y: &VectorWord) -> Result<u32> {
    check_len(x.len(), y.len())?;
    Ok(linalg::dot(field, &x.coords, &y.coords))
}

/// Row-major `n × m` matrix whose row `i` holds the `basis`-coordinates of `x_i`.
/// No shape restriction on `n` versus `m`.
pub fn coordinate_matrix(ext: &ExtField, x: &[u32], basis: &Basis) -> Vec<u32> {
    x.iter().flat_map(|&xi| ext.coords_in(basis, xi)).collect()
}

/// Same as [`coordinate_matrix`] for the polynomial basis (cheaper).
pub fn polynomial_coordinate_matrix(ext: &ExtField, x: &[u32]) -> Vec<u32> {
    x.iter().flat_map(|&xi| ext.coords(xi)).collect()
}

/// Rank of a vector word: rank over GF(q) of its coordinate matrix.
pub fn vector_rank(ext: &ExtField, x: &[u32]) -> usize {
    let data = polynomial_coordinate_matrix(ext, x);
    linalg::rank_of_slice(ext.base(), &data, x.len(), ext.m() as usize)
}

pub fn vec_to_mat(ext: &ExtField, x: &VectorWord, basis: &Basis) -> Result<MatrixWord> {
    MatrixWord::new(
        x.len(),
        ext.m() as usize,
        coordinate_matrix(ext, &x.coords, basis),
    )
}

pub fn mat_to_vec(ext: &ExtField, x: &MatrixWord, basis: &Basis) -> Result<VectorWord> {
    check_len(ext.m() as usize, x.m)?;
    if x.entries.iter().any(|&v| v >= ext.q()) {
        return Err(Error::param("matrix entry outside GF(q)"));
    }
    let coords = (0..x.n).map(|i| ext.combine(basis, x.row(i))).collect();
    VectorWord::new(coords)
}

/// The two sides of the trace/inner-product correspondence for one pair of
/// vector words under a self-dual basis: `(tr⟨a, b⟩, Tr(A Bᵀ))`, where `A`,
/// `B` are the coordinate matrices. The components always agree.
pub fn trace_pair_identity(
    ext: &ExtField,
    a: &VectorWord,
    b: &VectorWord,
    basis: &Basis,
) -> Result<(u32, u32)> {
    if !ext.is_self_dual(basis) {
        return Err(Error::NotSelfDual);
    }
    let inner = vector_inner_product(ext.field(), a, b)?;
    let am = coordinate_matrix(ext, &a.coords, basis);
    let bm = coordinate_matrix(ext, &b.coords, basis);
    Ok((ext.trace(inner), linalg::dot(ext.base(), &am, &bm)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Repr {
    Matrix,
    Vector,
}

impl fmt::Display for Repr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Repr::Matrix => "matrix",
            Repr::Vector => "vector",
        })
    }
}

impl FromStr for Repr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix" => Ok(Repr::Matrix),
            "vector" => Ok(Repr::Vector),
            _ => Err(Error::format(format!("unknown representation {s:?}"))),
        }
    }
}

/// The ambient space of a code: `GF(q)^{n×m}` or `GF(q^m)^n`.
#[derive(Debug, Clone)]
pub enum Ambient {
    Matrix {
        field: Arc<Field>,
        n: usize,
        m: usize,
    },
    Vector {
        ext: Arc<ExtField>,
        n: usize,
    },
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                Ambient::Matrix {
                    field: a,
                    n: n1,
                    m: m1,
                },
                Ambient::Matrix {
                    field: b,
                    n: n2,
                    m: m2,
                },
            ) => n1 == n2 && m1 == m2 && a == b,
            (Ambient::Vector { ext: a, n: n1 }, Ambient::Vector { ext: b, n: n2 }) => {
                n1 == n2 && a.m() == b.m() && a.field() == b.field()
            }
            _ => false,
        }
    }
}

impl Ambient {
    pub fn matrix(field: Arc<Field>, n: usize, m: usize) -> Result<Self> {
        if n == 0 || n > m {
            return Err(Error::param(format!(
                "matrix space needs 1 <= n <= m, got n={n} m={m}"
            )));
        }
        Ok(Ambient::Matrix { field, n, m })
    }

    pub fn vector(ext: Arc<ExtField>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("vector space needs n >= 1"));
        }
        Ok(Ambient::Vector { ext, n })
    }

    /// Builds the ambient space from integer parameters with default moduli.
    pub fn from_params(repr: Repr, q: u32, n: usize, m: usize) -> Result<Self> {
        match repr {
            Repr::Matrix => Ambient::matrix(Arc::new(Field::gf(q)?), n, m),
            Repr::Vector => Ambient::vector(Arc::new(ExtField::from_q(q, m as u32)?), n),
        }
    }

    pub fn repr(&self) -> Repr {
        match self {
            Ambient::Matrix { .. } => Repr::Matrix,
            Ambient::Vector { .. } => Repr::Vector,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Ambient::Matrix { n, .. } | Ambient::Vector { n, .. } => *n,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Ambient::Matrix { m, .. } => *m,
            Ambient::Vector { ext, .. } => ext.m() as usize,
        }
    }

    pub fn q(&self) -> u32 {
        self.base_field().order()
    }

    /// GF(q).
    pub fn base_field(&self) -> &Arc<Field> {
        match self {
            Ambient::Matrix { field, .. } => field,
            Ambient::Vector { ext, .. } => ext.base(),
        }
    }

    /// The field the codes are linear over: GF(q) or GF(q^m).
    pub fn scalar_field(&self) -> &Arc<Field> {
        match self {
            Ambient::Matrix { field, .. } => field,
            Ambient::Vector { ext, .. } => ext.field(),
        }
    }

    pub fn ext(&self) -> Option<&Arc<ExtField>> {
        match self {
            Ambient::Vector { ext, .. } => Some(ext),
            Ambient::Matrix { .. } => None,
        }
    }

    /// Entries per word, which is also the dimension over the scalar field.
    pub fn word_len(&self) -> usize {
        match self {
            Ambient::Matrix { n, m, .. } => n * m,
            Ambient::Vector { n, .. } => *n,
        }
    }

    /// Largest k the self-orthogonal construction supports:
    /// `⌊(nm - 1)/2⌋` or `⌊(n - 1)/2⌋`.
    pub fn construction_limit(&self) -> usize {
        (self.word_len() - 1) / 2
    }

    /// The representation's bilinear form (trace product or dot product).
    pub fn inner_product(&self, a: &[u32], b: &[u32]) -> u32 {
        linalg::dot(self.scalar_field(), a, b)
    }

    /// Rank norm of a flattened word.
    pub fn rank_of(&self, w: &[u32]) -> usize {
        match self {
            Ambient::Matrix { field, n, m } => linalg::rank_of_slice(field, w, *n, *m),
            Ambient::Vector { ext, .. } => vector_rank(ext, w),
        }
    }

    pub fn rank_distance(&self, a: &[u32], b: &[u32]) -> usize {
        self.rank_of(&difference(self.scalar_field(), a, b))
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.scalar_field();
        a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        difference(self.scalar_field(), a, b)
    }

    pub fn zero_word(&self) -> Vec<u32> {
        vec![0; self.word_len()]
    }

    pub fn random_word(&self, rng: &mut SeededRng) -> Vec<u32> {
        let f = self.scalar_field();
        (0..self.word_len()).map(|_| f.random(rng)).collect()
    }

    /// `log_q` of the number of words: `nm` in both representations.
    pub fn log_q_size(&self) -> usize {
        self.n() * self.m()
    }

    pub fn check_word(&self, w: &[u32]) -> Result<()> {
        check_len(self.word_len(), w.len())?;
        let order = self.scalar_field().order();
        if w.iter().any(|&x| x >= order) {
            return Err(Error::param(format!(
                "word entry outside the field of order {order}"
            )));
        }
        Ok(())
    }
}

/// A linear code given by a basis of words.
///
/// Equality compares the reduced row-echelon forms of the bases, i.e. the
/// codes as sets.
#[derive(Debug, Clone)]
pub struct LinearCode {
    ambient: Ambient,
    basis: Vec<Vec<u32>>,
    echelon: Echelon,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.echelon.rows() == other.echelon.rows()
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Fails unless the words are linearly independent over the scalar field.
    pub fn new(ambient: Ambient, basis: Vec<Vec<u32>>) -> Result<Self> {
        let f = ambient.scalar_field();
        let mut echelon = Echelon::new(ambient.word_len());
        for (i, w) in basis.iter().enumerate() {
            ambient.check_word(w)?;
            if !echelon.insert(f, w) {
                return Err(Error::param(format!(
                    "basis word {i} is linearly dependent on the previous ones"
                )));
            }
        }
        Ok(LinearCode {
            ambient,
            basis,
            echelon,
        })
    }

    pub fn zero(ambient: Ambient) -> Self {
        Self::new(ambient, Vec::new()).expect("empty basis")
    }

    /// The whole ambient space, with the standard basis.
    pub fn full(ambient: Ambient) -> Self {
        let len = ambient.word_len();
        let basis = (0..len)
            .map(|i| {
                let mut w = vec![0; len];
                w[i] = 1;
                w
            })
            .collect();
        Self::new(ambient, basis).expect("standard basis")
    }

    pub fn from_matrix_words(
        field: Arc<Field>,
        n: usize,
        m: usize,
        words: Vec<MatrixWord>,
    ) -> Result<Self> {
        let ambient = Ambient::matrix(field, n, m)?;
        let basis = words
            .into_iter()
            .map(|w| {
                check_len(n, w.n)?;
                check_len(m, w.m)?;
                Ok(w.entries)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient, basis)
    }

    pub fn from_vector_words(ext: Arc<ExtField>, n: usize, words: Vec<VectorWord>) -> Result<Self> {
        let ambient = Ambient::vector(ext, n)?;
        Self::new(ambient, words.into_iter().map(|w| w.coords).collect())
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn repr(&self) -> Repr {
        self.ambient.repr()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Reduced row-echelon basis (canonical form).
    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn matrix_words(&self) -> Option<Vec<MatrixWord>> {
        match &self.ambient {
            Ambient::Matrix { n, m, .. } => Some(
                self.basis
                    .iter()
                    .map(|w| MatrixWord::new(*n, *m, w.clone()).expect("validated"))
                    .collect(),
            ),
            Ambient::Vector { .. } => None,
        }
    }

    pub fn vector_words(&self) -> Option<Vec<VectorWord>> {
        match &self.ambient {
            Ambient::Vector { .. } => Some(
                self.basis
                    .iter()
                    .map(|w| VectorWord::new(w.clone()).expect("validated"))
                    .collect(),
            ),
            Ambient::Matrix { .. } => None,
        }
    }

    pub fn contains(&self, w: &[u32]) -> bool {
        self.ambient.word_len() == w.len() && self.echelon.contains(self.ambient.scalar_field(), w)
    }

    /// `log_q |C| / (mn)`.
    pub fn rate(&self) -> f64 {
        let per_dim = match self.ambient {
            Ambient::Matrix { .. } => 1,
            Ambient::Vector { ref ext, .. } => ext.m() as usize,
        };
        (self.dim() * per_dim) as f64 / self.ambient.log_q_size() as f64
    }

    /// Number of codewords, `|F|^k`.
    pub fn num_codewords(&self) -> BigUint {
        BigUint::from(self.ambient.scalar_field().order()).pow(self.dim() as u32)
    }

    /// Calls `f` once for every codeword (all scalar combinations of the basis).
    pub fn for_each_codeword(&self, mut f: impl FnMut(&[u32])) {
        let field = self.ambient.scalar_field();
        let k = self.dim();
        let len = self.ambient.word_len();
        let mut partial = vec![vec![0u32; len]; k + 1];
        walk_combinations(field, &self.basis, 0, &mut partial, &mut f);
    }

    pub fn codewords(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.for_each_codeword(|w| out.push(w.to_vec()));
        out
    }
}

/// Depth-first walk over `Σ c_i g_i`; `partial[j]` holds the sum of the first j terms.
pub(crate) fn walk_combinations(
    field: &Field,
    gens: &[Vec<u32>],
    level: usize,
    partial: &mut [Vec<u32>],
    f: &mut impl FnMut(&[u32]),
) {
    if level == gens.len() {
        f(&partial[level]);
        return;
    }
    for c in field.elements() {
        {
            let (head, tail) = partial.split_at_mut(level + 1);
            let cur = &head[level];
            for ((o, &x), &g) in tail[0].iter_mut().zip(cur).zip(&gens[level]) {
                *o = if g == 0 || c == 0 {
                    x
                } else {
                    field.add(x, field.mul(c, g))
                };
            }
        }
        walk_combinations(field, gens, level + 1, partial, f);
    }
}

/// Orthogonal complement under the representation's bilinear form.
pub fn dual(code: &LinearCode) -> LinearCode {
    let amb = code.ambient();
    let basis = code.echelon().null_space(amb.scalar_field());
    LinearCode::new(amb.clone(), basis).expect("null-space basis is independent")
}

/// `{X : Tr(C Xᵀ) = 0 for all C in the code}`.
pub fn delsarte_dual(code: &LinearCode) -> Result<LinearCode> {
    match code.repr() {
        Repr::Matrix => Ok(dual(code)),
        Repr::Vector => Err(Error::param(
            "Delsarte dual needs the matrix representation",
        )),
    }
}

/// `{x : ⟨c, x⟩ = 0 for all c in the code}` over GF(q^m).
pub fn vector_dual(code: &LinearCode) -> Result<LinearCode> {
    match code.repr() {
        Repr::Vector => Ok(dual(code)),
        Repr::Matrix => Err(Error::param("vector dual needs the vector representation")),
    }
}

/// True iff every pair of basis words (including each word with itself) is orthogonal.
pub fn is_self_orthogonal(code: &LinearCode) -> bool {
    let amb = code.ambient();
    let b = code.basis();
    (0..b.len()).all(|i| (i..b.len()).all(|j| amb.inner_product(&b[i], &b[j]) == 0))
}

/// True iff every word of `a` is orthogonal to every word of `b`.
pub fn are_orthogonal(a: &LinearCode, b: &LinearCode) -> bool {
    let amb = a.ambient();
    a.basis()
        .iter()
        .all(|x| b.basis().iter().all(|y| amb.inner_product(x, y) == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    fn gf(q: u32) -> Arc<Field> {
        Arc::new(Field::gf(q).unwrap())
    }

    #[test]
    fn rank_distance_examples() {
        let f = Field::gf(2).unwrap();
        let x = MatrixWord::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap();
        let y = MatrixWord::from_rows(&[vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(rank_distance(&f, &x, &x).unwrap(), 0);
        assert_eq!(rank_distance(&f, &x, &y).unwrap(), 2);
        let z = MatrixWord::zeros(2, 3).unwrap();
        let i = MatrixWord::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(rank_distance(&f, &z, &i).unwrap(), 2);
        assert!(matches!(
            rank_distance(&f, &x, &z),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn matrix_words_require_n_at_most_m() {
        assert!(MatrixWord::new(3, 2, vec![0; 6]).is_err());
        assert!(MatrixWord::new(2, 2, vec![0; 3]).is_err());
    }

    #[test]
    fn trace_inner_product_examples() {
        let i2 = MatrixWord::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let z = MatrixWord::zeros(2, 2).unwrap();
        assert_eq!(
            trace_inner_product(&Field::gf(2).unwrap(), &z, &i2).unwrap(),
            0
        );
        assert_eq!(
            trace_inner_product(&Field::gf(2).unwrap(), &i2, &i2).unwrap(),
            0
        );
        assert_eq!(
            trace_inner_product(&Field::gf(3).unwrap(), &i2, &i2).unwrap(),
            2
        );
    }

    #[test]
    fn vector_inner_product_examples() {
        let gf4 = Field::gf(4).unwrap();
        let x = VectorWord::new(vec![2, 2]).unwrap();
        let zero = VectorWord::new(vec![0, 0]).unwrap();
        assert_eq!(vector_inner_product(&gf4, &x, &zero).unwrap(), 0);
        assert_eq!(vector_inner_product(&gf4, &x, &x).unwrap(), 0);
        let gf9 = Field::gf(9).unwrap();
        let a = VectorWord::new(vec![1, 2]).unwrap();
        let b = VectorWord::new(vec![2, 1]).unwrap();
        assert_eq!(vector_inner_product(&gf9, &a, &b).unwrap(), 1);
        assert!(vector_inner_product(&gf9, &a, &VectorWord::new(vec![1]).unwrap()).is_err());
    }

    #[test]
    fn mat_vec_conversion() {
        let ext = ExtField::from_q(2, 2).unwrap();
        let b = ext.basis(vec![2, 3]).unwrap();
        let x = VectorWord::new(vec![2, 0]).unwrap();
        let mat = vec_to_mat(&ext, &x, &b).unwrap();
        assert_eq!(mat.entries(), &[1, 0, 0, 0]);

        let mut rng = rng_from_seed(2);
        let ext = ExtField::from_q(3, 3).unwrap();
        let b = ext.random_basis(&mut rng);
        for _ in 0..1000 {
            let entries = (0..6).map(|_| rng.random_range(0..3)).collect();
            let x = MatrixWord::new(2, 3, entries).unwrap();
            let v = mat_to_vec(&ext, &x, &b).unwrap();
            assert_eq!(vec_to_mat(&ext, &v, &b).unwrap(), x);
        }
    }

    #[test]
    fn rank_is_basis_independent() {
        let mut rng = rng_from_seed(3);
        for (q, m) in [(2u32, 3u32), (3, 2), (4, 3)] {
            let ext = ExtField::from_q(q, m).unwrap();
            for _ in 0..200 {
                let (b1, b2) = (ext.random_basis(&mut rng), ext.random_basis(&mut rng));
                let x: Vec<u32> = (0..3).map(|_| ext.field().random(&mut rng)).collect();
                let r1 = linalg::rank_of_slice(
                    ext.base(),
                    &coordinate_matrix(&ext, &x, &b1),
                    3,
                    m as usize,
                );
                let r2 = linalg::rank_of_slice(
                    ext.base(),
                    &coordinate_matrix(&ext, &x, &b2),
                    3,
                    m as usize,
                );
                assert_eq!(r1, r2);
                assert_eq!(r1, vector_rank(&ext, &x));
            }
        }
    }

    #[test]
    fn delsarte_dual_examples() {
        let amb = Ambient::matrix(gf(2), 2, 2).unwrap();
        assert_eq!(
            delsarte_dual(&LinearCode::zero(amb.clone())).unwrap().dim(),
            4
        );
        assert_eq!(
            delsarte_dual(&LinearCode::full(amb.clone())).unwrap().dim(),
            0
        );
        let c = LinearCode::new(amb, vec![vec![1, 1, 0, 0]]).unwrap();
        let d = delsarte_dual(&c).unwrap();
        assert_eq!(d.dim(), 3);
        assert!(d.contains(&[1, 1, 0, 0]));
        assert!(is_self_orthogonal(&c));
        assert!(vector_dual(&c).is_err());
    }

    #[test]
    fn vector_dual_examples() {
        let gf4 = Arc::new(ExtField::from_q(2, 2).unwrap());
        let amb = Ambient::vector(gf4, 2).unwrap();
        assert_eq!(
            vector_dual(&LinearCode::zero(amb.clone())).unwrap().dim(),
            2
        );
        let c = LinearCode::new(amb, vec![vec![1, 1]]).unwrap();
        assert_eq!(vector_dual(&c).unwrap(), c);

        let gf9 = Arc::new(ExtField::from_q(3, 2).unwrap());
        let amb = Ambient::vector(gf9, 2).unwrap();
        let c = LinearCode::new(amb.clone(), vec![vec![1, 2]]).unwrap();
        let expected = LinearCode::new(amb, vec![vec![1, 1]]).unwrap();
        assert_eq!(vector_dual(&c).unwrap(), expected);
        assert!(delsarte_dual(&c).is_err());
    }

    #[test]
    fn self_orthogonality_examples() {
        let amb2 = Ambient::matrix(gf(2), 2, 2).unwrap();
        assert!(is_self_orthogonal(&LinearCode::zero(amb2)));
        let amb3 = Ambient::matrix(gf(3), 2, 2).unwrap();
        let c = LinearCode::new(amb3, vec![vec![1, 0, 0, 1]]).unwrap();
        assert!(!is_self_orthogonal(&c));
    }

    #[test]
    fn code_rejects_dependent_basis() {
        let amb = Ambient::matrix(gf(2), 2, 2).unwrap();
        assert!(LinearCode::new(amb.clone(), vec![vec![1, 1, 0, 0], vec![1, 1, 0, 0]]).is_err());
        assert!(LinearCode::new(amb, vec![vec![2, 0, 0, 0]]).is_err());
    }

    #[test]
    fn codeword_enumeration_counts() {
        let amb = Ambient::matrix(gf(3), 2, 2).unwrap();
        let c = LinearCode::new(amb, vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0]]).unwrap();
        let words = c.codewords();
        assert_eq!(words.len(), 9);
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 9);
        assert!(words.iter().all(|w| c.contains(w)));
        assert_eq!(
            LinearCode::zero(c.ambient().clone()).codewords(),
            vec![vec![0; 4]]
        );
    }

    #[test]
    fn trace_pair_identity_examples() {
        let ext = ExtField::from_q(2, 2).unwrap();
        let b = ext.basis(vec![2, 3]).unwrap();
        let zero = VectorWord::new(vec![0, 0]).unwrap();
        assert_eq!(trace_pair_identity(&ext, &zero, &zero, &b).unwrap(), (0, 0));
        let a = VectorWord::new(vec![2, 0]).unwrap();
        assert_eq!(trace_pair_identity(&ext, &a, &a, &b).unwrap(), (1, 1));
        let pb = ext.polynomial_basis();
        assert_eq!(
            trace_pair_identity(&ext, &a, &a, &pb),
            Err(Error::NotSelfDual)
        );
    }
}
