//! A finite-scale engine for actions of categories and bicategories, coends
//! and ends of set-valued profunctors, Tambara modules and dependent optics.
//!
//! Every construction works on explicit finite tables, and every law is
//! checkable by exhaustive enumeration.

pub mod bicat;
pub mod coend;
pub mod corpus;
pub mod dlens;
pub mod error;
pub mod fincat;
pub mod finset;
pub mod hom_search;
pub mod internal_action;
pub mod optic;
pub mod oracle;
pub mod par;
pub mod profunctor;
pub mod report;
pub mod span;
pub mod suites;
pub mod tambara;

pub use bicat::{check_bicat, check_bicat_action, check_strict_monoidal, BicatAction, FinBicategory, StrictMonoidal};
pub use coend::{CoendResult, EndResult};
pub use error::{CoreError, Result};
pub use fincat::{
    check_category, check_copresheaf, check_discrete_opfibration, check_functor, check_nat_trans,
    Copresheaf, FinCategory, FinFunctor, Limits, NatTrans,
};
pub use finset::{FinFunction, FinSet, Label, QuotientResult};
pub use par::Exec;
pub use report::LawReport;
pub use profunctor::{
    check_prof_transformation, check_profunctor, coend, compound_action, compound_integrand_check, end, prof_compose,
    ProfTransformation, SetProfunctor,
};
pub use internal_action::{
    action_to_copresheaf, check_action, copresheaf_to_action, grothendieck, ActionCategory, IndexedSetAction,
};
pub use tambara::{
    adjunction_check, check_tambara, cofree, enumerate_tambara_morphisms, forget, free, AdjunctionReport, ProfFamily,
    TambaraModule,
};
pub use optic::{
    check_eval, check_optic_category, eval, lens_integrand, optic_compose, optic_hom, optic_id, representation_check,
    OpticHom, OpticIntegrand, OpticObject, OpticTriple, RepresentationReport,
};
pub use dlens::{
    dlens_lemma_bijection, equivalence_check, lemma_sweep, reduced_optic_hom, truncated_coend_optic, Bundle, Cospan,
    DLensMorphism, ReducedOptic,
};
pub use corpus::Corpus;
pub use suites::{run_all, run_criterion, CheckOutcome, Status, SuiteConfig, CRITERIA};
