//! Independent checks of the fixed-point reduction.
//!
//! The reduced sums `Ŝ_ε` come from two steps: expanding the localized
//! integrand as a power series in `x = e^u - 1, y = e^v - 1`, and summing the
//! rational functions `Λ_j` over the nontrivial `p`-th roots of unity, which
//! collapses mod `p` to `Λ_j(1)`. This module replays both steps exactly.

mod congruence;
mod cyclo;
mod series;

pub use congruence::{lambda_at_one, lambda_at_root, lambda_sum_check, t_sum_congruence_check, Verdict};
pub use cyclo::{validate_odd_prime, CycloElement, MAX_PRIME};
pub use series::{build_series_context, series_s_hat_component, series_s_hat_poly, xy_coefficient, SeriesContext};
