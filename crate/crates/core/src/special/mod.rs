//! Scalar special functions: multivariate gamma functions, generalized
//! Pochhammer symbols, the highest weight vector, Jack polynomials and the
//! two-argument `0F0` series.

mod gamma;
mod hypergeom;
mod jack;
mod partition;
mod power;

pub use gamma::{
    gen_pochhammer, log_gamma, log_gen_pochhammer_signed, log_mv_gamma, log_mv_gamma_weighted,
    weighted_gamma_bound, WeightSign,
};
pub(crate) use gamma::check_weighted_domain;
pub use hypergeom::{
    hypergeom_0f0_two, log_hypergeom_0f1, PreparedHypergeom, SeriesControl, SeriesValue,
    ShiftPolicy,
};
pub use jack::{jack_polynomial, log_jack_at_ones, JackTable};
pub use partition::{partitions_of, Partition};
pub use power::{
    highest_weight_vector, log_highest_weight, log_highest_weight_inverse, log_weighted_power,
    power_identity_residuals, PowerIdentityResiduals,
};
