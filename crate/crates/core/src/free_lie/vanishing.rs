//! Vanishing of `H^2` and `H^3` for free algebroids, on the weight slices
//! that the bracket-length truncation cannot affect.

use serde::Serialize;

use crate::ce_cohomology::{CochainComplex, CohomologyRow};
use crate::error::{Error, Result};
use crate::exact_algebra::ExactMatrix;
use crate::free_lie::algebroid::FreeLieRinehart;
use crate::free_lie::skew::SkewAlgebra;
use crate::lie_rinehart::Representation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    /// Slices of weight at most this bound are unaffected by the truncation.
    pub safe_bound: i64,
    /// `H^2` and `H^3` per safe slice.
    pub rows: Vec<CohomologyRow>,
    pub all_vanish: bool,
    /// `(max word length, max coefficient degree)` of the sampled check that
    /// the generators are free over the skew enveloping algebra.
    pub independence_window: (usize, u32),
    pub generators_free: bool,
}

/// Computes `H^2` and `H^3` of the truncated free algebroid with
/// coefficients in `rep` on every safe slice.
pub fn free_cohomology_vanishing_check(
    free: &FreeLieRinehart,
    rep: &Representation,
) -> Result<VanishingReport> {
    let alg = free.algebra();
    let u = rep.weights(alg)?;
    let min_u = u.iter().copied().min().unwrap_or(0);
    let safe_bound = free.safe_degree_bound(min_u).ok_or_else(|| {
        Error::Unsupported(
            "a generator has an anchor that does not lower degrees, so no slice is provably free of truncation effects"
                .into(),
        )
    })?;
    let c = CochainComplex::up_to_degree(alg, rep, 3)?;
    let mut rows = Vec::new();
    for d in c
        .degrees(safe_bound)
        .into_iter()
        .filter(|&d| d <= safe_bound)
    {
        let ds: Vec<ExactMatrix> = (1..=c.top())
            .map(|p| c.differential(p, d))
            .collect::<Result<_>>()?;
        for p in 2..=c.top() {
            let out = &ds[p - 1];
            let dim_kernel = out.cols() - out.rank();
            let dim_image = ds[p - 2].rank();
            rows.push(CohomologyRow {
                p,
                degree: d,
                dim_cochains: out.cols(),
                dim_kernel,
                dim_image,
                dim_h: dim_kernel - dim_image,
            });
        }
    }
    let all_vanish = rows.iter().all(|r| r.dim_h == 0);
    let skew = SkewAlgebra::new(
        alg.ring(),
        free.free().names().to_vec(),
        free.generator_anchors().to_vec(),
    )?;
    let window = (3, if alg.ring().nvars() == 0 { 0 } else { 2 });
    let generators_free = skew.generators_free_on(window.0, window.1);
    Ok(VanishingReport {
        safe_bound,
        rows,
        all_vanish,
        independence_window: window,
        generators_free,
    })
}
