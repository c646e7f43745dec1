//! Closed-form evaluation of `(I - tA)^{1/p}` and principal roots.

pub mod doperator;
pub mod phi;
pub mod root;

pub use doperator::{branch_root, d_power_apply, BranchedPower, DOperatorPolys};
pub use phi::{
    phi_dispatch, phi_general, phi_mixed, phi_single_root, psi_compact, psi_expanded, PhiCoefficients, Provenance,
};
pub use root::{
    choose_scale, choose_shift, principal_pth_root, pth_root_of_shifted, sector_check, shifted_root_detailed,
    RootOptions, RootReport, ShiftedRoot,
};
