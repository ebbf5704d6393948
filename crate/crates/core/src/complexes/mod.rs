//! Cochain complexes attached to a formal group law and its Lie algebra,
//! and the maps between them.

pub mod ce;
pub mod cobar;
pub mod koszul;
pub mod phi;
pub mod ucochain;

pub use ce::{ce_cohomology, ce_diff, CECochain};
pub use cobar::{cobar_diff, random_cobar_cochain, CobarCochain};
pub use koszul::{kappa, kappa_inverse, koszul_diff, koszul_dual_diff, KoszulDualCochain, KoszulElement};
pub use phi::{antisym_pullback, chain_map_check, phi_explicit, phi_full, ChainMapReport};
pub use ucochain::{iota, iota_inverse, u_diff, uh_diff, Flavor, UCochain};
