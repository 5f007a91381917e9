//! Monomials and monomial ideals over a named, ordered variable set.
//!
//! Arithmetic works on dense exponent vectors indexed by variable position;
//! names are only consulted for parsing and printing. The text syntax is
//! `x1^2*x2^3` for monomials and `(x1^2*x2, x2*x3^2)` for ideals, with `(0)`
//! for the zero ideal.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug)]
struct VarSetInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered set of variable names; positions are the dense indices used
/// by exponent vectors.
#[derive(Clone, Debug)]
pub struct VarSet(Arc<VarSetInner>);

impl VarSet {
    /// Builds a variable set in the given order.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyVariableSet);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::Parse {
                    offset: 0,
                    message: format!("`{name}` is not a valid variable name"),
                });
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(VarSet(Arc::new(VarSetInner { names, index })))
    }

    /// Builds a variable set from names in natural order (`x2` before `x10`),
    /// dropping duplicates.
    pub fn sorted<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort_by(|a, b| natural_cmp(a, b));
        names.dedup();
        VarSet::new(names)
    }

    /// `x1, …, xn`.
    pub fn numbered(n: usize) -> Result<Self> {
        VarSet::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    /// Variables of `self` followed by the variables of `other` not already present.
    pub fn union(&self, other: &VarSet) -> VarSet {
        if self == other {
            return self.clone();
        }
        let mut names = self.0.names.clone();
        names.extend(
            other
                .names()
                .iter()
                .filter(|n| self.index_of(n).is_none())
                .cloned(),
        );
        VarSet::new(names).expect("union of valid variable sets is valid")
    }

    pub fn is_subset_of(&self, other: &VarSet) -> bool {
        self.names().iter().all(|n| other.index_of(n).is_some())
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl Eq for VarSet {}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Compares names chunk-wise, treating digit runs as numbers.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(cb.iter()) {
        let ord = if *da && *db {
            let ta = sa.trim_start_matches('0');
            let tb = sb.trim_start_matches('0');
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
        } else {
            sa.cmp(sb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

/// A monomial `x_1^{a_1} ⋯ x_n^{a_n}` over a [`VarSet`].
#[derive(Clone, Debug)]
pub struct Monomial {
    vars: VarSet,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(vars: &VarSet, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != vars.len() {
            return Err(Error::ExponentLength {
                expected: vars.len(),
                found: exps.len(),
            });
        }
        Ok(Monomial {
            vars: vars.clone(),
            exps: exps.into_boxed_slice(),
        })
    }

    pub fn one(vars: &VarSet) -> Self {
        Monomial {
            vars: vars.clone(),
            exps: vec![0; vars.len()].into_boxed_slice(),
        }
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        let mut m = Monomial::one(vars);
        m.exps[i] = 1;
        m
    }

    /// Builds a monomial from `(name, exponent)` pairs; repeated names multiply.
    pub fn from_powers<S: AsRef<str>>(vars: &VarSet, powers: &[(S, u32)]) -> Result<Self> {
        let mut m = Monomial::one(vars);
        for (name, e) in powers {
            let i = vars
                .index_of(name.as_ref())
                .ok_or_else(|| Error::UnknownVariable(name.as_ref().to_owned()))?;
            m.exps[i] = m.exps[i].checked_add(*e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(m)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Indices of the variables dividing this monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn support_names(&self) -> Vec<&str> {
        self.support().map(|i| self.vars.name(i)).collect()
    }

    /// Divisibility; both sides must share a variable set.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert!(self.vars == other.vars);
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    fn check_same(&self, other: &Monomial) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a.max(b)))
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a.min(b)))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Monomial::new(&self.vars, exps)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.vars != other.vars || !other.divides(self) {
            return None;
        }
        Some(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        Monomial {
            vars: self.vars.clone(),
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Re-expresses the monomial over a variable set containing its support.
    pub fn embed(&self, target: &VarSet) -> Result<Monomial> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let mut m = Monomial::one(target);
        for i in self.support() {
            let name = self.vars.name(i);
            let j = target
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_owned()))?;
            m.exps[j] = self.exps[i];
        }
        Ok(m)
    }

    /// Parses `x1^2*x2` over a known variable set.
    pub fn parse_in(text: &str, vars: &VarSet) -> Result<Monomial> {
        let mut p = Parser::new(text);
        p.skip_ws();
        let raw = p.monomial()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("trailing input after monomial"));
        }
        raw.resolve(vars)
    }

    /// Canonical order: ascending degree, then descending lexicographic
    /// exponent vectors (`x1*x2` before `x1*x3` before `x2*x3`).
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps && self.vars == other.vars
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for i in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.vars.name(i))?;
            if self.exps[i] > 1 {
                write!(f, "^{}", self.exps[i])?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal stored by its minimal generators in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: VarSet,
    gens: Vec<Monomial>,
}

/// Reduces a generating set to its divisibility-minimal elements.
///
/// An empty input gives the zero ideal.
pub fn minimalize<I>(vars: &VarSet, gens: I) -> Result<MonomialIdeal>
where
    I: IntoIterator<Item = Monomial>,
{
    let mut all: Vec<Monomial> = Vec::new();
    for g in gens {
        if &g.vars != vars {
            return Err(Error::AmbientMismatch);
        }
        if g.is_one() {
            return Err(Error::ConstantGenerator);
        }
        all.push(g);
    }
    all.sort();
    all.dedup();
    // Divisors have no larger degree, so they are already kept when a
    // candidate is examined.
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    for g in all {
        if !kept.iter().any(|h| h.divides(&g)) {
            kept.push(g);
        }
    }
    Ok(MonomialIdeal {
        vars: vars.clone(),
        gens: kept,
    })
}

impl MonomialIdeal {
    pub fn new<I>(vars: &VarSet, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        minimalize(vars, gens)
    }

    pub fn zero(vars: &VarSet) -> Self {
        MonomialIdeal {
            vars: vars.clone(),
            gens: Vec::new(),
        }
    }

    pub fn principal(m: Monomial) -> Result<Self> {
        let vars = m.vars.clone();
        minimalize(&vars, [m])
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn max_degree(&self) -> u64 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Sorted indices of variables dividing some generator.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vars.len()];
        for g in &self.gens {
            for i in g.support() {
                seen[i] = true;
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    pub fn support_names(&self) -> Vec<&str> {
        self.support().into_iter().map(|i| self.vars.name(i)).collect()
    }

    fn check_same(&self, other: &MonomialIdeal) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        minimalize(&self.vars, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        minimalize(&self.vars, gens)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.zip_with(b, u32::max));
            }
        }
        minimalize(&self.vars, gens)
    }

    /// `(u) · I`.
    pub fn scale(&self, u: &Monomial) -> Result<MonomialIdeal> {
        if u.vars != self.vars {
            return Err(Error::AmbientMismatch);
        }
        let gens = self
            .gens
            .iter()
            .map(|g| g.mul(u))
            .collect::<Result<Vec<_>>>()?;
        minimalize(&self.vars, gens)
    }

    /// Re-expresses the ideal over a variable set containing its support.
    pub fn embed(&self, target: &VarSet) -> Result<MonomialIdeal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(target))
            .collect::<Result<Vec<_>>>()?;
        minimalize(target, gens)
    }

    /// Parses an ideal; the variable set is the naturally ordered set of
    /// names that occur in it.
    pub fn parse(text: &str) -> Result<MonomialIdeal> {
        let raw = parse_raw_ideal(text)?;
        let vars = VarSet::sorted(
            raw.iter()
                .flat_map(|m| m.factors.iter().map(|(n, _, _)| n.clone())),
        )?;
        resolve_ideal(raw, &vars)
    }

    /// Parses an ideal over a known variable set.
    pub fn parse_in(text: &str, vars: &VarSet) -> Result<MonomialIdeal> {
        resolve_ideal(parse_raw_ideal(text)?, vars)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for MonomialIdeal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MonomialIdeal::parse(s)
    }
}

struct RawMonomial {
    factors: Vec<(String, u32, usize)>,
}

impl RawMonomial {
    fn resolve(self, vars: &VarSet) -> Result<Monomial> {
        let mut m = Monomial::one(vars);
        for (name, e, offset) in self.factors {
            let i = vars.index_of(&name).ok_or_else(|| Error::Parse {
                offset,
                message: format!("unknown variable `{name}`"),
            })?;
            m.exps[i] = m.exps[i].checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(m)
    }
}

fn resolve_ideal(raw: Vec<RawMonomial>, vars: &VarSet) -> Result<MonomialIdeal> {
    let gens = raw
        .into_iter()
        .map(|m| m.resolve(vars))
        .collect::<Result<Vec<_>>>()?;
    minimalize(vars, gens)
}

fn parse_raw_ideal(text: &str) -> Result<Vec<RawMonomial>> {
    let mut p = Parser::new(text);
    p.skip_ws();
    p.expect(b'(')?;
    p.skip_ws();
    let mut gens = Vec::new();
    if p.peek() == Some(b'0') {
        p.pos += 1;
        p.skip_ws();
        p.expect(b')')?;
    } else if p.peek() == Some(b')') {
        p.pos += 1;
    } else {
        loop {
            p.skip_ws();
            let start = p.pos;
            let m = p.monomial()?;
            if m.factors.is_empty() {
                return Err(Error::Parse {
                    offset: start,
                    message: "the constant monomial 1 cannot be an ideal generator".into(),
                });
            }
            gens.push(m);
            p.skip_ws();
            match p.peek() {
                Some(b',') => p.pos += 1,
                Some(b')') => {
                    p.pos += 1;
                    break;
                }
                _ => return Err(p.error("expected `,` or `)`")),
            }
        }
    }
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing input after ideal"));
    }
    Ok(gens)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_owned(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse {
                offset: start,
                message: "exponent out of range".into(),
            })
    }

    /// factor ('*' factor)*, where a factor is `name`, `name^k` or `1`.
    fn monomial(&mut self) -> Result<RawMonomial> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            match self.peek() {
                Some(b'1') => {
                    let n = self.number()?;
                    if n != 1 {
                        return Err(Error::Parse {
                            offset: start,
                            message: "coefficients are not allowed".into(),
                        });
                    }
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos])
                        .expect("ascii identifier")
                        .to_owned();
                    self.skip_ws();
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        self.number()?
                    } else {
                        1
                    };
                    if e > 0 {
                        factors.push((name, e, start));
                    }
                }
                _ => return Err(self.error("expected a variable")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok(RawMonomial { factors });
            }
        }
    }
}
