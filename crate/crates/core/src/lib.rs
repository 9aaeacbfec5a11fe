//! Exact computation of MacMahon-type q-series
//! `U_{t,k,r}(a; q) = sum_{n_1 < ... < n_t} q^{r(n_1+...+n_t)} / prod (1 + a q^{n_i} + q^{2 n_i})^k`,
//! their decompositions into Eisenstein series, and truncated-series
//! verification of the identities they satisfy.
//!
//! Module map:
//! - [`arith`]: rationals, `Q(zeta_12)`, polynomials, Bernoulli numbers, characters, Stirling/Eulerian tables
//! - [`series`]: truncated power series in `q`
//! - [`macmahon`]: direct evaluation of the nested sums (the ground truth)
//! - [`quasishuffle`]: the quasi-shuffle algebra on words over `N^2`
//! - [`eisenstein`]: Eisenstein q-expansions and [`eisenstein::QmfExpression`]
//! - [`decompose`]: closed-form Eisenstein decompositions of `U_{k,k}(a; q)`
//! - [`identities`]: limits in `t`, product identities, congruence scans
//! - [`suites`]: named case lists shared by the command line and the acceptance target

pub mod arith;
pub mod decompose;
pub mod eisenstein;
pub mod error;
pub mod identities;
pub mod macmahon;
pub mod quasishuffle;
pub mod series;
pub mod suites;

pub use arith::{Cyclotomic12, Field, Polynomial, Rational};
pub use error::{Error, Result};
pub use series::Series;
