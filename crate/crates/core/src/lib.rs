//! Random self-orthogonal rank-metric codes.
//!
//! Codes live either in `GF(q)^{n×m}` (matrix representation, linear over
//! GF(q), trace product `Tr(A Bᵀ)`) or in `GF(q^m)^n` (vector representation,
//! linear over GF(q^m), dot product). Words of both kinds are flattened
//! `u32` slices of field encodings; [`Ambient`] says how to read them.
//!
//! ```
//! use sorank::{construct_so_code, is_self_orthogonal, rng_from_seed, Ambient, Repr};
//!
//! let ambient = Ambient::from_params(Repr::Matrix, 2, 2, 4).unwrap();
//! let code = construct_so_code(&ambient, 3, &mut rng_from_seed(42)).unwrap();
//! assert_eq!(code.dim(), 3);
//! assert!(is_self_orthogonal(&code));
//! ```

pub mod ball;
pub mod construct;
pub mod error;
pub mod experiment;
pub mod field;
pub mod io;
pub mod linalg;
pub mod quadratic;
pub mod rank_metric;
pub mod rng;

pub use ball::{
    ball_size_exact, ball_size_upper_bound, check_gb_bounds, enumerate_ball, gaussian_binomial,
    sample_from_ball, BallSpec,
};
pub use construct::{
    construct_fq_so_basis, construct_fqm_so_basis, construct_so_code, sample_code_star,
    ConstructionState,
};
pub use error::{Error, Result};
pub use experiment::{
    containment_event_estimate, dimension_from_rate, gv_rate, list_size_at,
    max_list_size_experiment, span_ball_event_estimate, Ensemble, Estimate, ExperimentConfig,
    ExperimentReport,
};
pub use field::{Basis, ExtField, Field, FieldParams};
pub use quadratic::{
    count_roots_brute, count_roots_formula, sample_root, QuadraticForm, RootCount,
};
pub use rank_metric::{
    delsarte_dual, dual, is_self_orthogonal, rank_distance, trace_inner_product, vector_dual,
    vector_inner_product, Ambient, LinearCode, MatrixWord, Repr, VectorWord,
};
pub use rng::{mix_seed, rng_from_seed, SeededRng};
