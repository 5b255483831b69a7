//! Exact Chern characters of Verlinde bundles over moduli of stable curves.
//!
//! The total Chern character of the bundle of conformal blocks
//! `E_g(μ_1, …, μ_n) → M̄_{g,n}` is computed as
//!
//! ```text
//! exp(-c/2 · λ₁) · Σ_{Γ, μ} 1/|Aut Γ| · ι_Γ*( ∏_legs exp(w(μ_l) ψ_l)
//!                                          · ∏_vertices d_{g_v}(…)
//!                                          · ∏_edges (1 - exp(w(μ_e)(ψ' + ψ''))) / (ψ' + ψ'') )
//! ```
//!
//! summed over stable graphs `Γ` and labelings `μ` of their edges, with
//! every coefficient an exact rational. The pieces are:
//!
//! * [`fusion`]: fusion data, ranks `d_g` by gluing, weights and anomaly.
//! * [`graphs`]: stable graph enumeration, canonical forms, automorphisms.
//! * [`tautology`]: linear combinations of decorated graphs with a free λ₁,
//!   and the divisor products that are valid on compact type.
//! * [`cohft`]: the diagonal R-matrix action and the character itself.
//! * [`checks`]: the verification suites behind `verlinde verify`.
//!
//! ```
//! use verlinde::prelude::*;
//!
//! let sl2 = FusionDatum::sl2(1);
//! let ch = verlinde_chern_character(&sl2, 1, &[Label(0)], 1).unwrap();
//! let trivial = StableGraph::trivial(1, 1).undecorated();
//! assert_eq!(ch.coefficient_of(0, &trivial), rat(2, 1));
//! assert_eq!(ch.coefficient_of(1, &trivial), rat(-1, 1));
//! ```

pub mod checks;
pub mod cohft;
pub mod encoding;
pub mod error;
pub mod fusion;
pub mod graphs;
pub mod rational;
pub mod series;
pub mod tautology;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::cohft::{
        compact_type_closed_form, edge_factor_series, rmatrix_action, slope_restriction_check,
        slr_tree_remainders, symplectic_check, two_loop_report, verlinde_chern_character,
        verlinde_w_matrix, DiagonalRMatrix, EdgeWeightAssignment,
    };
    pub use crate::error::{Error, Result};
    pub use crate::fusion::{FusionDatum, Label, LabelVector, RankTable};
    pub use crate::graphs::{
        automorphism_order, canonical_form, enumerate_stable_graphs, two_loop_graphs,
        DecoratedGraph, Locus, LoopParity, StableGraph,
    };
    pub use crate::rational::{rat, Rational};
    pub use crate::series::Series;
    pub use crate::tautology::{
        divisor_monomial_expand, exp_of_divisor_combination, DivisorSymbol, ProductContext,
        TautClass,
    };
}
