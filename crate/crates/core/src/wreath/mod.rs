//! Wreath products `A ≀ Σ_n` for finite abelian `A`, their conjugacy
//! classes, rational class functions and the transfer ideal.

mod classfn;
mod diagram;
mod group;
mod height1;

pub use classfn::{induce, inner_product, restrict, ClassFunction, YoungLabel, YoungSubgroup};
pub use diagram::{diagram_check, surjections_onto, DiagramEntry, DiagramReport};
pub use group::{ConjClassLabel, WreathElement, WreathProduct, DEFAULT_MAX_ORDER};
pub use height1::{
    norm_pullback_bijectivity, transfer_ideal_span, verify_height0, Height0Report, NormReport,
};
