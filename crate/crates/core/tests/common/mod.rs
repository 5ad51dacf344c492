#![allow(dead_code)]

use lrpsr::compression::SelectionMask;
use lrpsr::linalg::{frob_sq, hermitian_eigen, norm_sq, unvec_antenna_major, vec_antenna_major, CMatrix, CVector};
use lrpsr::random::{complex_normal, seeded_rng};
use lrpsr::scene::{build_dictionary, RadarConfig};
use lrpsr::solver::weights::{reweight_matrix, update_ws};
use lrpsr::solver::{solve_weighted_lasso, spectral_norm, LowRankProblem, LowRankSolver, SparseProblem, SparseSettings};
use num_complex::Complex64;
use rand::Rng;
use serde::Deserialize;

const ORACLES: &str = include_str!("../fixtures/inner_oracles.json");

#[derive(Deserialize)]
pub struct LowRankCase {
    m: usize,
    n: usize,
    target: Vec<[f64; 2]>,
    sampled: Vec<bool>,
    w1: Vec<[f64; 2]>,
    w2: Vec<[f64; 2]>,
    beta_l: f64,
    rho: f64,
    l: Vec<[f64; 2]>,
    objective: f64,
}

#[derive(Deserialize)]
pub struct SparseCase {
    rows: usize,
    cols: usize,
    g: Vec<[f64; 2]>,
    target: Vec<[f64; 2]>,
    weights: Vec<f64>,
    beta_s: f64,
    rho: f64,
    s: Vec<[f64; 2]>,
    objective: f64,
}

#[derive(Deserialize)]
pub struct Oracles {
    pub lowrank: Vec<LowRankCase>,
    pub sparse: Vec<SparseCase>,
}

pub fn oracles() -> Oracles {
    serde_json::from_str(ORACLES).expect("oracle fixture parses")
}

fn matrix(rows: usize, cols: usize, v: &[[f64; 2]]) -> CMatrix {
    assert_eq!(v.len(), rows * cols);
    CMatrix::from_fn(rows, cols, |i, j| {
        let [re, im] = v[i * cols + j];
        Complex64::new(re, im)
    })
}

fn vector(v: &[[f64; 2]]) -> CVector {
    CVector::from_iterator(v.len(), v.iter().map(|&[re, im]| Complex64::new(re, im)))
}

/// Relative objective and iterate errors of one inner step against its
/// reference solution.
#[derive(Debug, Clone, Copy)]
pub struct StepError {
    pub objective: f64,
    pub iterate: f64,
}

pub fn lowrank_error(case: &LowRankCase) -> StepError {
    let target = matrix(case.m, case.n, &case.target);
    let (w1, w2) = (matrix(case.m, case.m, &case.w1), matrix(case.n, case.n, &case.w2));
    let p = LowRankProblem {
        target: &target,
        sampled: &case.sampled,
        w1: &w1,
        w2: &w2,
        beta_l: case.beta_l,
        rho: case.rho,
    };
    let out = LowRankSolver::new(case.m, case.n, 1e-11, 200_000).solve(&p);
    let reference = matrix(case.m, case.n, &case.l);
    StepError {
        objective: (p.reduced_objective(&out.l) - case.objective).abs() / case.objective.abs(),
        iterate: (frob_sq(&(&out.l - &reference)) / frob_sq(&reference)).sqrt(),
    }
}

pub fn sparse_error(case: &SparseCase) -> StepError {
    let g = matrix(case.rows, case.cols, &case.g);
    let target = vector(&case.target);
    let p = SparseProblem { g: &g, target: &target, weights: &case.weights, beta_s: case.beta_s, rho: case.rho };
    let settings = SparseSettings { spectral_norm: spectral_norm(&g, 10_000, 1e-15), tol: 1e-16, max_iter: 1_000_000 };
    let out = solve_weighted_lasso(&p, &CVector::zeros(case.cols), settings);
    let reference = vector(&case.s);
    StepError {
        objective: (p.objective(&out.s) - case.objective).abs() / case.objective.abs(),
        iterate: (norm_sq(&(&out.s - &reference)) / norm_sq(&reference)).sqrt(),
    }
}

fn random_vector<R: Rng>(rng: &mut R, len: usize) -> CVector {
    CVector::from_fn(len, |_, _| complex_normal(rng))
}

/// Worst deviations of the selection, vectorization and dictionary
/// identities on one random case.
#[derive(Debug, Clone, Copy, Default)]
pub struct OperatorErrors {
    pub adjoint: f64,
    pub idempotence: f64,
    pub round_trip: f64,
    pub modulus: f64,
}

impl OperatorErrors {
    pub fn max(self) -> f64 {
        self.adjoint.max(self.idempotence).max(self.round_trip).max(self.modulus)
    }
}

pub fn operator_case(seed: u64) -> OperatorErrors {
    let mut rng = seeded_rng(seed, 901);
    let (m, n) = (rng.random_range(1..=12), rng.random_range(1..=24));
    let total = m * n;
    let ratio = rng.random_range(0.05..=1.0);
    let mask = SelectionMask::random(total, ratio, seed).unwrap_or_else(|_| SelectionMask::full(total).unwrap());

    let x = random_vector(&mut rng, total);
    let y = random_vector(&mut rng, mask.len());
    let lhs = mask.apply(&x).unwrap().dotc(&y);
    let rhs = x.dotc(&mask.adjoint(&y).unwrap());
    let adjoint = (lhs - rhs).norm() / (x.norm() * y.norm());

    let p1 = mask.project(&x).unwrap();
    let p2 = mask.project(&p1).unwrap();
    let idempotence = (&p2 - &p1).norm() / x.norm();

    let mat = CMatrix::from_fn(m, n, |_, _| complex_normal(&mut rng));
    let back = unvec_antenna_major(&vec_antenna_major(&mat), m, n).unwrap();
    let v = vec_antenna_major(&mat);
    let mut round_trip = (&back - &mat).norm() / mat.norm();
    for k in 0..total {
        round_trip = round_trip.max((v[k] - mat[(k / n, k % n)]).norm());
    }

    let cfg = RadarConfig {
        num_antennas: m,
        num_freqs: n,
        carrier_freq: rng.random_range(1e9..400e9),
        bandwidth: rng.random_range(0.1e9..1e9),
        standoff_distance: rng.random_range(0.1..5.0),
        grid_rows: rng.random_range(1..=8),
        grid_cols: rng.random_range(1..=8),
        ..RadarConfig::default()
    };
    let dict = build_dictionary(&cfg).unwrap();
    let modulus = dict.matrix().iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    OperatorErrors { adjoint, idempotence, round_trip, modulus }
}

/// Deviations of the log-det weight update on one random case, plus
/// whether every `W_s` entry lies in `(0, 1/delta]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct WeightErrors {
    pub eigen_map: f64,
    pub commutation: f64,
    pub ws_in_range: bool,
}

pub fn weight_case(seed: u64) -> WeightErrors {
    let mut rng = seeded_rng(seed, 902);
    let k = rng.random_range(1..=12);
    let rank = rng.random_range(0..=k);
    let scale = 10f64.powf(rng.random_range(-2.0..3.0));
    let b = CMatrix::from_fn(k, rank, |_, _| complex_normal(&mut rng) * scale.sqrt());
    let aux = &b * b.adjoint();
    let delta = 10f64.powf(rng.random_range(-3.0..1.0));

    let w = reweight_matrix(&aux, delta);
    let (lam, _) = hermitian_eigen(&aux);
    let (mu, _) = hermitian_eigen(&w);
    // eigenvalues of W are 1/(lambda + delta), in reverse order
    let mut expected: Vec<f64> = lam.iter().map(|&l| 1.0 / (l.max(0.0) + delta)).collect();
    expected.sort_by(f64::total_cmp);
    let top = expected.last().copied().unwrap_or(1.0);
    let eigen_map = mu.iter().zip(&expected).map(|(a, e)| (a - e).abs() / top).fold(0.0, f64::max);

    let comm = &w * &aux - &aux * &w;
    let commutation = comm.norm() / (w.norm() * aux.norm()).max(f64::MIN_POSITIVE);

    let s = CVector::from_fn(rng.random_range(1..=64), |_, _| {
        if rng.random_bool(0.5) {
            Complex64::new(0.0, 0.0)
        } else {
            complex_normal(&mut rng) * 10f64.powf(rng.random_range(-6.0..6.0))
        }
    });
    let ws = update_ws(&s, delta);
    let ws_in_range = ws.iter().all(|&v| v > 0.0 && v <= 1.0 / delta);
    WeightErrors { eigen_map, commutation, ws_in_range }
}
