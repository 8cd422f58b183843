//! Symmetric functions over [`QSeries`] coefficients.

pub mod hl;
pub mod hyper;
pub mod rs;
pub mod schur;
pub mod xlaurent;

pub use hl::{bernstein_b, hall_littlewood_p, hall_littlewood_q, pprime, qprime, QMethod};
pub use hyper::{f_tau, f_tau_product, pprime_fermionic, pprime_multisum, qprime_fermionic, Alphabet};
pub use rs::{h_lambda, h_m_weight, homogeneous_rs, rogers_szego};
pub use schur::{hall_pairing, schur, schur_expand, so_odd_schur, symp_schur};
pub use xlaurent::{Exps, Image, XLaurent};
