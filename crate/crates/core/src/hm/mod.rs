//! Horrocks–Mumford-type sheaves `HM(u)`.

mod cox;
mod generators;
mod monad;
mod udata;

pub use cox::{cox_module, CoxModule};
pub use generators::{
    gb_membership, hm_generators, hm_via_hull, hm_via_intersection, local_generators, membership_oracle, GeneratorsJson,
    HMGenerators, Membership, Method,
};
pub use monad::{classical_decoration_spotcheck, classical_matrices, monad_verify, MonadCheck, MonadData, MonadReport, SpotReport};
pub use udata::{validate_u, UData, UInput, UReport, CLASSICAL};
