//! Swan conductors, total dimensions and the graded forms rsw / char along
//! boundary divisors.

pub mod global;
pub mod local;

pub use global::{certify_all, check_poles, SWEEP_CAP};
pub use local::{
    certify_dt, certify_sw, compute_invariants, minus_fd, phi_log, phi_nonlog, render_form, DivisorInvariants,
    DivisorType, Flavor, Germ, REDUCTION_CAP,
};
