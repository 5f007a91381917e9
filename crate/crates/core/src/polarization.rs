//! Polarization of monomial ideals.
//!
//! Each variable `x` whose largest exponent among the generators is `a`
//! is replaced by `a` fresh variables `x_1, …, x_a`, and `x^e` becomes
//! `x_1 ⋯ x_e`. The result is squarefree with the same graded Betti table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, VarSet};

/// One polarized variable and the `(original, slot)` pair it stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotVar {
    pub original: String,
    pub slot: u32,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedIdeal {
    ideal: MonomialIdeal,
    var_map: Vec<SlotVar>,
}

impl PolarizedIdeal {
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn into_ideal(self) -> MonomialIdeal {
        self.ideal
    }

    /// Polarized variables in ring order, lexicographic by `(original, slot)`.
    pub fn var_map(&self) -> &[SlotVar] {
        &self.var_map
    }

    pub fn slot_name(original: &str, slot: u32) -> String {
        format!("{original}_{slot}")
    }
}

pub fn polarize(ideal: &MonomialIdeal) -> Result<PolarizedIdeal> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let vars = ideal.vars();
    let mut slots = vec![0u32; vars.len()];
    for g in ideal.generators() {
        for (s, &e) in slots.iter_mut().zip(g.exponents()) {
            *s = (*s).max(e);
        }
    }

    let mut var_map = Vec::new();
    let mut offsets = vec![0usize; vars.len()];
    for (i, &count) in slots.iter().enumerate() {
        offsets[i] = var_map.len();
        for slot in 1..=count {
            var_map.push(SlotVar {
                original: vars.name(i).to_owned(),
                slot,
                name: PolarizedIdeal::slot_name(vars.name(i), slot),
            });
        }
    }
    let ring = VarSet::new(var_map.iter().map(|s| s.name.clone()))?;

    let gens = ideal
        .generators()
        .iter()
        .map(|g| {
            let mut exps = vec![0u32; ring.len()];
            for i in g.support() {
                for k in 0..g.exponent(i) as usize {
                    exps[offsets[i] + k] = 1;
                }
            }
            Monomial::new(&ring, exps)
        })
        .collect::<Result<Vec<_>>>()?;
    let polarized = MonomialIdeal::new(&ring, gens)?;
    debug_assert_eq!(polarized.num_generators(), ideal.num_generators());
    Ok(PolarizedIdeal {
        ideal: polarized,
        var_map,
    })
}
