//! Group-theoretic algorithms on permutation groups and small indexed groups.

pub mod cosets;
pub mod iso;
pub mod local;
pub mod normal;
pub mod present;
pub mod small;
pub mod sylow;
