pub mod error;
pub mod freegamma;
pub mod levelstep;
pub mod par;
pub mod permcomb;
pub mod permrep;
pub mod scalar;
pub mod setoperad;
pub mod verifier;
pub mod symaction;
