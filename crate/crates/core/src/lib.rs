//! Exact arithmetic and verification tools for unitary error bases.

pub mod cyclo;
pub mod error;

pub use cyclo::{cyclotomic_polynomial, Cyclotomic, Int, Monomial, PhasedScalar, Rational};
pub use error::{Error, Result};
pub mod exactmat;
pub use exactmat::{monomiality_report, ExactMatrix, KronMatrix, MonomialityReport, Operator};
pub mod combinat;
pub use combinat::{cyclic_latin, fourier_hadamard, h_alpha, validate_hadamard, validate_latin, HadamardSequence, LatinSquare};
pub mod groups;
pub use groups::{FiniteGroup, Heisenberg, HeisenbergElement, SL2Element};
pub mod ueb;
pub use ueb::{normalize_d2, shift_and_multiply, verify_ueb, wickedness_witness, UnitaryErrorBasis};
pub mod nice;
pub use nice::{
    det_normalize, extract_cocycle, heisenberg_nice_rep, heisenberg_rep, pauli_rep, verify_nice, Cocycle, NiceReport,
    PairPlan, ProjectiveRep,
};
pub mod counterexample;
pub use counterexample::{build_conjugators, build_g165, verify_counterexample, ConjugatorSet, G165};
pub mod induce;
pub use induce::{induce_character, induce_representation, sparsity_check, ClassFunction, InducedRep};
