pub mod cyclo;
pub mod intmat;
pub mod laurent;
pub mod snf;
pub mod textfmt;

pub use cyclo::{CycloElement, EuclideanRing};
pub use intmat::IntMatrix;
pub use laurent::LaurentPoly;
pub use snf::{
    expand_to_integers, n_qe, rank_mod_qe, snf_cyclotomic, snf_integers, snf_integers_with_transforms, CycloMatrix,
    InvariantFactors, RingTag,
};
