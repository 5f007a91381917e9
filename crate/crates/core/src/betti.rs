//! Graded Betti numbers of monomial ideals from the Taylor complex.
//!
//! Tensoring the Taylor resolution with the residue field leaves a complex
//! whose differential keeps a face `s ∖ {g}` only when removing `g` does not
//! change `lcm(s)`. It therefore splits into one strand per exact lcm
//! multidegree, and `β_{i,a}` is the homology of strand `a` at homological
//! index `i` (subsets of size `i + 1`). Strands are small, so each is
//! handled by exact dense elimination.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_prime, rank_mod_p, rank_rational};
use crate::monomial::MonomialIdeal;

pub const DEFAULT_GENERATOR_CAP: usize = 20;
/// Hard ceiling for the generator cap: the oracle visits `2^cap` subsets.
pub const MAX_GENERATOR_CAP: usize = 24;

/// Coefficient field for the homology computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[default]
    Rational,
    Prime(u32),
}

impl Field {
    pub fn from_characteristic(c: u64) -> Result<Field> {
        match c {
            0 => Ok(Field::Rational),
            p if p < (1 << 31) && is_prime(p) => Ok(Field::Prime(p as u32)),
            other => Err(Error::InvalidCharacteristic(other)),
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    fn rank(self, rows: &[Vec<i64>], ncols: usize) -> usize {
        match self {
            Field::Rational => rank_rational(rows, ncols),
            Field::Prime(p) => rank_mod_p(rows, ncols, p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub field: Field,
    pub generator_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            field: Field::Rational,
            generator_cap: DEFAULT_GENERATOR_CAP,
        }
    }
}

impl OracleConfig {
    pub fn with_field(field: Field) -> Self {
        OracleConfig {
            field,
            ..Default::default()
        }
    }
}

/// Graded Betti numbers `β_{i,j}` of an ideal, keyed by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u64), u64>,
    nvars: usize,
    field: Field,
}

/// `pd`, `reg` and `depth = nvars − pd` of an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub pd: usize,
    pub reg: u64,
    pub depth: usize,
}

impl BettiTable {
    /// Builds a table from explicit entries; zero counts are dropped.
    pub fn from_entries<I>(entries: I, nvars: usize, field: Field) -> Self
    where
        I: IntoIterator<Item = ((usize, u64), u64)>,
    {
        let mut map = BTreeMap::new();
        for (k, v) in entries {
            if v > 0 {
                *map.entry(k).or_insert(0) += v;
            }
        }
        BettiTable {
            entries: map,
            nvars,
            field,
        }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, u64), u64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: u64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pd(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    pub fn reg(&self) -> Option<u64> {
        self.entries.keys().map(|&(i, j)| j - i as u64).max()
    }

    /// Row `i` as `degree → count`.
    pub fn row(&self, i: usize) -> BTreeMap<u64, u64> {
        self.entries
            .range((i, 0)..=(i, u64::MAX))
            .map(|(&(_, j), &c)| (j, c))
            .collect()
    }

    pub fn to_json(&self) -> BettiJson {
        let inv = invariants_from_table(self).ok();
        BettiJson {
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), &c)| [i as u64, j, c])
                .collect(),
            pd: inv.map(|v| v.pd),
            reg: inv.map(|v| v.reg),
            depth: inv.map(|v| v.depth),
            field_char: self.field.characteristic(),
        }
    }

    /// Text grid in the usual layout: columns are homological indices `i`,
    /// rows are `j − i`, and `.` marks a zero.
    pub fn render_grid(&self) -> String {
        let mut out = String::new();
        let Some(pd) = self.pd() else {
            out.push_str("(empty)\n");
            return out;
        };
        let lo = self.entries.keys().map(|&(i, j)| j - i as u64).min().unwrap();
        let hi = self.reg().unwrap();
        let totals: Vec<u64> = (0..=pd).map(|i| self.row(i).values().sum()).collect();
        let width = totals
            .iter()
            .map(|t| t.to_string().len())
            .chain(std::iter::once(pd.to_string().len()))
            .max()
            .unwrap();
        let label = hi.to_string().len().max(5) + 1;

        let _ = write!(out, "{:label$}", "");
        for i in 0..=pd {
            let _ = write!(out, " {i:>width$}");
        }
        out.push('\n');
        let _ = write!(out, "{:>label$}", "total:");
        for t in &totals {
            let _ = write!(out, " {t:>width$}");
        }
        out.push('\n');
        for r in lo..=hi {
            let _ = write!(out, "{:>label$}", format!("{r}:"));
            for i in 0..=pd {
                let c = self.get(i, r + i as u64);
                if c == 0 {
                    let _ = write!(out, " {:>width$}", ".");
                } else {
                    let _ = write!(out, " {c:>width$}");
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Serialized form of a [`BettiTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub entries: Vec<[u64; 3]>,
    pub pd: Option<usize>,
    pub reg: Option<u64>,
    pub depth: Option<usize>,
    pub field_char: u32,
}

pub fn invariants_from_table(t: &BettiTable) -> Result<Invariants> {
    let (Some(pd), Some(reg)) = (t.pd(), t.reg()) else {
        return Err(Error::EmptyTable);
    };
    Ok(Invariants {
        pd,
        reg,
        depth: t.nvars.saturating_sub(pd),
    })
}

fn check_input(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<()> {
    if cfg.generator_cap > MAX_GENERATOR_CAP {
        return Err(Error::CapTooLarge(cfg.generator_cap));
    }
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.num_generators() > cfg.generator_cap {
        return Err(Error::GeneratorCap {
            count: ideal.num_generators(),
            cap: cfg.generator_cap,
        });
    }
    Ok(())
}

/// Multigraded Betti numbers: `(i, multidegree) → β_{i,a}`.
pub fn multigraded_betti(
    ideal: &MonomialIdeal,
    cfg: &OracleConfig,
) -> Result<BTreeMap<(usize, Vec<u32>), u64>> {
    check_input(ideal, cfg)?;
    let gens: Vec<&[u32]> = ideal.generators().iter().map(|g| g.exponents()).collect();
    let mut strands: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    let one = vec![0u32; ideal.vars().len()];
    collect_strands(&gens, 0, 0, &one, &mut strands);

    let mut out = BTreeMap::new();
    for (lcm, masks) in strands {
        for (i, b) in strand_betti(masks, cfg.field) {
            out.insert((i, lcm.clone()), b);
        }
    }
    Ok(out)
}

pub fn betti_table(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<BettiTable> {
    let multi = multigraded_betti(ideal, cfg)?;
    Ok(BettiTable::from_entries(
        multi.into_iter().map(|((i, a), b)| {
            let j = a.iter().map(|&e| u64::from(e)).sum();
            ((i, j), b)
        }),
        ideal.vars().len(),
        cfg.field,
    ))
}

/// True iff all generators share a degree `d` and every `β_{i,j}` sits on `j = i + d`.
pub fn has_linear_resolution(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<bool> {
    check_input(ideal, cfg)?;
    let d = ideal.generators()[0].degree();
    if ideal.generators().iter().any(|g| g.degree() != d) {
        return Ok(false);
    }
    let t = betti_table(ideal, cfg)?;
    Ok(t.entries.keys().all(|&(i, j)| j == i as u64 + d))
}

fn collect_strands(
    gens: &[&[u32]],
    start: usize,
    mask: u32,
    lcm: &[u32],
    strands: &mut HashMap<Vec<u32>, Vec<u32>>,
) {
    for k in start..gens.len() {
        let next: Vec<u32> = lcm.iter().zip(gens[k]).map(|(&a, &b)| a.max(b)).collect();
        let m = mask | (1 << k);
        collect_strands(gens, k + 1, m, &next, strands);
        strands.entry(next).or_default().push(m);
    }
}

/// Homology of one strand, as `(homological index, dimension)` pairs.
fn strand_betti(mut masks: Vec<u32>, field: Field) -> Vec<(usize, u64)> {
    if masks.len() == 1 {
        return vec![(masks[0].count_ones() as usize - 1, 1)];
    }
    masks.sort_unstable_by_key(|&m| (m.count_ones(), m));
    let top = masks.last().unwrap().count_ones() as usize;
    // levels[k] = subsets of size k in this strand
    let mut levels: Vec<Vec<u32>> = vec![Vec::new(); top + 2];
    for &m in &masks {
        levels[m.count_ones() as usize].push(m);
    }
    let index: Vec<HashMap<u32, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &m)| (m, i)).collect())
        .collect();

    // rank[k] = rank of d_k : C_k → C_{k−1}; d_1 maps onto the ideal itself
    // and does not enter Tor.
    let mut rank = vec![0usize; top + 2];
    for k in 2..=top {
        if levels[k].is_empty() || levels[k - 1].is_empty() {
            continue;
        }
        let ncols = levels[k - 1].len();
        let rows: Vec<Vec<i64>> = levels[k]
            .iter()
            .map(|&s| {
                let mut row = vec![0i64; ncols];
                let mut bits = s;
                let mut pos = 0;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    if let Some(&c) = index[k - 1].get(&(s ^ b)) {
                        row[c] = if pos % 2 == 0 { 1 } else { -1 };
                    }
                    bits ^= b;
                    pos += 1;
                }
                row
            })
            .collect();
        rank[k] = field.rank(&rows, ncols);
    }

    (1..=top)
        .filter_map(|k| {
            let dim = levels[k].len() - rank[k] - rank[k + 1];
            (dim > 0).then_some((k - 1, dim as u64))
        })
        .collect()
}
