//! Characters from iterated integrals: the Catalan family in closed form and
//! Monte Carlo estimates of the sign weights of a probability density.

mod catalan;
mod montecarlo;

pub use catalan::{
    catalan_coefficient, catalan_d, catalan_lambda, catalan_lie_idempotent, catalan_number, catalan_poly,
    certificate_json, narayana, u_series, CatalanCoeffs, CATALAN_IDEMPOTENT_CAP,
};
pub use montecarlo::{
    cone_probability, consistency_check, lambda_coefficients_check, mc_character_check, mc_weight, simulate,
    sparre_andersen, sparre_andersen_targets, telescoping_check, Density, Estimate, McCheck, McConfig, McReport,
    MIN_SAMPLES, SIGMA_TOLERANCE,
};

#[cfg(test)]
mod tests;
