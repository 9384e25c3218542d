//! Multiplicative-update NMF and MDL rank selection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::autograd::Tensor;
use crate::error::{Error, Result};

/// Added to both numerator and denominator of every multiplicative update.
/// Adding it to both keeps each update the exact minimizer of a valid
/// auxiliary function, so the objective stays monotone.
const MU_EPS: f64 = 1e-12;

/// A non-negative factorization `F ~ R M`.
#[derive(Debug, Clone)]
pub struct RoleModel {
    /// `N x r` role memberships.
    pub roles: Tensor,
    /// `r x f` role-to-feature contributions.
    pub contributions: Tensor,
    pub rank: usize,
    /// Final `||F - R M||_F^2`.
    pub error: f64,
    /// Objective after initialization and after every iteration.
    pub objective_trace: Vec<f64>,
    pub mdl_cost: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NmfOptions {
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for NmfOptions {
    fn default() -> Self {
        NmfOptions {
            max_iter: 1000,
            tol: 1e-7,
            seed: 0,
        }
    }
}

pub fn frobenius_error(f: &Tensor, r: &Tensor, m: &Tensor) -> f64 {
    let approx = r.matmul(m);
    f.data()
        .iter()
        .zip(approx.data())
        .map(|(a, b)| (a - b) * (a - b))
        .sum()
}

/// Lee–Seung multiplicative updates minimizing `||F - R M||_F^2`.
///
/// `R` and `M` start uniform on `(0, 1]`. Stops when the relative decrease
/// of the objective drops below `tol` or after `max_iter` iterations.
pub fn nmf(f: &Tensor, rank: usize, opts: &NmfOptions) -> Result<RoleModel> {
    let (n, d) = f.shape();
    if rank == 0 || rank > n.min(d) {
        return Err(Error::invalid(format!(
            "NMF rank {rank} outside 1..={} for a {n}x{d} matrix",
            n.min(d)
        )));
    }
    if !f.is_finite() {
        return Err(Error::invalid("NMF input has non-finite entries"));
    }
    if f.data().iter().any(|&v| v < 0.0) {
        return Err(Error::invalid("NMF input has negative entries"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut uniform = |len: usize| -> Vec<f64> { (0..len).map(|_| 1.0 - rng.gen::<f64>()).collect() };
    let mut r = Tensor::from_vec(n, rank, uniform(n * rank))?;
    let mut m = Tensor::from_vec(rank, d, uniform(rank * d))?;

    let mut trace = vec![frobenius_error(f, &r, &m)];
    for _ in 0..opts.max_iter {
        // M <- M * (R^T F) / (R^T R M)
        let rt = r.transpose();
        let num = rt.matmul(f);
        let den = rt.matmul(&r).matmul(&m);
        let mut m_next = m.clone();
        multiplicative(&mut m_next, &num, &den);

        // R <- R * (F M^T) / (R M M^T)
        let mt = m_next.transpose();
        let num = f.matmul(&mt);
        let den = r.matmul(&m_next.matmul(&mt));
        let mut r_next = r.clone();
        multiplicative(&mut r_next, &num, &den);

        let obj = frobenius_error(f, &r_next, &m_next);
        let prev = *trace.last().unwrap();
        // In exact arithmetic the update never increases the objective; a
        // rise here is rounding noise at a fixed point, so keep the old pair.
        if obj > prev {
            break;
        }
        (r, m) = (r_next, m_next);
        trace.push(obj);
        if obj == 0.0 || (prev - obj) < opts.tol * prev {
            break;
        }
    }
    Ok(RoleModel {
        error: *trace.last().unwrap(),
        roles: r,
        contributions: m,
        rank,
        objective_trace: trace,
        mdl_cost: None,
    })
}

fn multiplicative(target: &mut Tensor, num: &Tensor, den: &Tensor) {
    for ((t, a), b) in target.data_mut().iter_mut().zip(num.data()).zip(den.data()) {
        *t *= (a + MU_EPS) / (b + MU_EPS);
    }
}

/// Description length in bits of a rank-`rank` model of an `n x f` matrix
/// with squared reconstruction error `error`: `bits * rank * (n + f)` for
/// the factors plus `n * f * log2(1 + error / (n * f))` for the residual.
pub fn mdl_cost(rank: usize, n: usize, f: usize, error: f64, bits: f64) -> f64 {
    let cells = (n * f) as f64;
    bits * (rank * (n + f)) as f64 + cells * (1.0 + error / cells).log2()
}

#[derive(Debug, Clone)]
pub struct MdlSelection {
    pub rank: usize,
    /// `(rank, cost)` for every candidate, ascending rank.
    pub costs: Vec<(usize, f64)>,
    pub model: RoleModel,
}

/// Factorizes at every rank in `r_min..=r_max` and keeps the cheapest
/// description; ties go to the smaller rank.
pub fn select_rank_mdl(
    f: &Tensor,
    r_min: usize,
    r_max: usize,
    bits: f64,
    opts: &NmfOptions,
) -> Result<MdlSelection> {
    let (n, d) = f.shape();
    if r_min < 1 || r_min > r_max || r_max > n.min(d) {
        return Err(Error::invalid(format!(
            "rank range {r_min}..={r_max} invalid for a {n}x{d} matrix"
        )));
    }
    let fits: Vec<RoleModel> = (r_min..=r_max)
        .into_par_iter()
        .map(|rank| {
            let mut model = nmf(f, rank, opts)?;
            model.mdl_cost = Some(mdl_cost(rank, n, d, model.error, bits));
            Ok(model)
        })
        .collect::<Result<_>>()?;
    let costs: Vec<(usize, f64)> = fits.iter().map(|m| (m.rank, m.mdl_cost.unwrap())).collect();
    let best = costs
        .iter()
        .enumerate()
        .fold(0, |best, (i, c)| if c.1 < costs[best].1 { i } else { best });
    Ok(MdlSelection {
        rank: costs[best].0,
        costs,
        model: fits.into_iter().nth(best).unwrap(),
    })
}
