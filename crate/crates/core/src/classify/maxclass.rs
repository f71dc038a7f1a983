//! Perfect systems on dihedral, semidihedral and quaternion 2-groups.

use serde::Serialize;

use super::{label_of, nu2};
use crate::error::{FswError, Result};
use crate::fusion::{focal_hyperfocal, saturation_check, FusionSystem};
use crate::ptheory::{identify_small, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxClassCase {
    Dihedral,
    Semidihedral,
    Quaternion,
}

#[derive(Clone, Debug, Serialize)]
pub struct FcrRow {
    pub order: usize,
    pub isotype: String,
    pub aut_f_order: u128,
    pub aut_f_abelian: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaxClassReport {
    pub s_isotype: String,
    pub case: MaxClassCase,
    pub saturated: bool,
    /// Proper centric radical classes, and `S` itself last.
    pub fcr: Vec<FcrRow>,
    pub profile_holds: bool,
    /// `(q, relation)` when a field size was supplied.
    pub parameter: Option<(u64, bool)>,
    pub holds: bool,
}

/// `Aut_F` on the proper centric radical subgroups: `S_3` on four-groups,
/// `S_4` on `Q_8`, and `A_4` on `S` when `S = Q_8`.
pub fn maxclass_fusion_check(f: &FusionSystem, q: Option<u64>) -> Result<MaxClassReport> {
    let s = f.small();
    let label = identify_small(s)?;
    let case = match label.family {
        Family::Dihedral if label.order >= 8 => MaxClassCase::Dihedral,
        Family::Semidihedral => MaxClassCase::Semidihedral,
        Family::Quaternion => MaxClassCase::Quaternion,
        _ => return Err(FswError::Precondition(format!("{label} is not nonabelian of maximal class"))),
    };
    if !focal_hyperfocal(f)?.is_perfect {
        return Err(FswError::Precondition("foc(F) is a proper subgroup of S".into()));
    }
    let mut rows = Vec::new();
    let mut v4 = 0;
    let mut q8 = 0;
    let mut ok = true;
    let top = f.fclass_of(&s.all());
    for c in f.fcr_classes().into_iter().filter(|&c| c != top) {
        let fc = &f.fclasses()[c];
        let l = label_of(s, &fc.positions.bits)?;
        let a = fc.aut();
        let row = FcrRow { order: l.order as usize, isotype: l.to_string(), aut_f_order: a.order(), aut_f_abelian: a.is_abelian() };
        match (l.family, l.order) {
            (Family::Elementary, 4) => {
                v4 += 1;
                ok &= a.order() == 6 && !a.is_abelian();
            }
            (Family::Quaternion, 8) => {
                q8 += 1;
                ok &= a.order() == 24;
            }
            _ => ok = false,
        }
        rows.push(row);
    }
    let a_s = f.fclasses()[top].aut();
    rows.push(FcrRow { order: s.order(), isotype: label.to_string(), aut_f_order: a_s.order(), aut_f_abelian: a_s.is_abelian() });
    let k = s.order().trailing_zeros();
    ok &= match case {
        MaxClassCase::Dihedral => v4 == 2 && q8 == 0,
        MaxClassCase::Semidihedral => v4 == 1 && q8 == 1,
        MaxClassCase::Quaternion if k == 3 => q8 == 0 && v4 == 0 && a_s.order() == 12,
        MaxClassCase::Quaternion => q8 == 2 && v4 == 0,
    };
    let parameter = q.map(|q| {
        let rel = match case {
            MaxClassCase::Dihedral => nu2(q * q - 1) == k + 1,
            MaxClassCase::Semidihedral => q % 4 == 3 && nu2(q + 1) == k - 2,
            MaxClassCase::Quaternion => nu2(q * q - 1) == k,
        };
        (q, rel)
    });
    let saturated = saturation_check(f)?.saturated;
    let holds = saturated && ok && parameter.is_none_or(|(_, r)| r);
    Ok(MaxClassReport { s_isotype: label.to_string(), case, saturated, fcr: rows, profile_holds: ok, parameter, holds })
}
