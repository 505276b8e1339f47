//! Defining presentations of the plain group and of its signed variant, plus
//! the text format shared with the coset enumerator.
//!
//! File format:
//!
//! ```text
//! gamma n=4 gens=3 rels=3
//! g1 = (1 2 3 4)
//! g2 = (1 2 4 3)
//! g3 = (1 3 2 4)
//! g1 g1
//! g2 g2
//! g3 g3
//! ```
//!
//! Generator ids are 1-based; a relator line lists `g<id>` or `g<id>^-1`
//! tokens separated by single spaces.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quad::{canonicalize, enumerate_canonical, shared_count, CanonicalSymbol, QuadSymbol};

/// One letter of a group word: a generator symbol raised to `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub symbol: CanonicalSymbol,
    pub exp: i8,
}

impl Letter {
    pub fn new(symbol: CanonicalSymbol, exp: i8) -> Self {
        assert!(exp == 1 || exp == -1, "exponent must be +1 or -1");
        Self { symbol, exp }
    }

    pub fn inverse(self) -> Self {
        Self::new(self.symbol, -self.exp)
    }
}

/// A finite word in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Formal inverse: reversed, every exponent negated.
    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Cancel adjacent `x x^-1` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    /// Parse concatenated `(i j k l)` groups, each optionally followed by
    /// `^-1` (or `^1`). Symbols are replaced by their minimal form, which is
    /// the identification made by the dihedral relation of the plain group.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        parse_symbol_word(n, s).map(|raw| {
            Self(
                raw.into_iter()
                    .map(|(q, e)| Letter::new(canonicalize(q), e))
                    .collect(),
            )
        })
    }
}

/// Parse a word into raw (non-canonicalized) symbols with exponents.
pub fn parse_symbol_word(n: usize, s: &str) -> Result<Vec<(QuadSymbol, i8)>> {
    let mut out = Vec::new();
    let mut rest = s.trim_start();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' at {rest:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed symbol in {s:?}")))?;
        let symbol = QuadSymbol::parse(n, &rest[..=close])?;
        rest = rest[close + 1..].trim_start();
        let mut exp = 1;
        if let Some(after) = rest.strip_prefix('^') {
            let after = after.trim_start();
            if let Some(r) = after.strip_prefix("-1") {
                exp = -1;
                rest = r;
            } else if let Some(r) = after.strip_prefix('1') {
                rest = r;
            } else {
                return Err(Error::Parse(format!("bad exponent at {rest:?}")));
            }
            rest = rest.trim_start();
        }
        out.push((symbol, exp));
    }
    Ok(out)
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.symbol)?;
            if l.exp < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Which group a presentation defines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Variant {
    /// Involutive, commutative, pentagon and dihedral relations.
    Gamma,
    /// Commutative relations, signed pentagons, signed dihedral relations.
    GammaHat,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Gamma => "gamma",
            Variant::GammaHat => "gamma-hat",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(Variant::Gamma),
            "gamma-hat" => Ok(Variant::GammaHat),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// Relator family, recognized from the shape of a relator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Involutive,
    Commutative,
    Pentagon,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Involutive, Family::Commutative, Family::Pentagon];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Involutive => "involutive",
            Family::Commutative => "commutative",
            Family::Pentagon => "pentagon",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relator family {s:?}")))
    }
}

/// Generators and relators of one of the groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub variant: Variant,
    pub n: usize,
    pub generators: Vec<CanonicalSymbol>,
    pub relators: Vec<GroupWord>,
}

/// The five letters of the pentagon word `(ijkl)(ijlm)(jklm)(ijkm)(iklm)`.
pub fn pentagon_letters(n: usize, t: [usize; 5]) -> Result<[QuadSymbol; 5]> {
    let [i, j, k, l, m] = t;
    Ok([
        QuadSymbol::new(n, [i, j, k, l])?,
        QuadSymbol::new(n, [i, j, l, m])?,
        QuadSymbol::new(n, [j, k, l, m])?,
        QuadSymbol::new(n, [i, j, k, m])?,
        QuadSymbol::new(n, [i, k, l, m])?,
    ])
}

/// All ordered 5-tuples of distinct entries of `1..=n`, lexicographically.
pub fn ordered_five_tuples(n: usize) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    let mut t = [0usize; 5];
    fn rec(n: usize, depth: usize, used: u64, t: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if depth == 5 {
            out.push(*t);
            return;
        }
        for x in 1..=n {
            if used >> x & 1 == 0 {
                t[depth] = x;
                rec(n, depth + 1, used | 1 << x, t, out);
            }
        }
    }
    rec(n, 0, 0, &mut t, &mut out);
    out
}

/// Unordered pairs `(X, Y)` of distinct canonical symbols with at most two
/// shared entries, in enumeration order.
pub fn commuting_pairs(generators: &[CanonicalSymbol]) -> Vec<(CanonicalSymbol, CanonicalSymbol)> {
    let mut out = Vec::new();
    for (a, &x) in generators.iter().enumerate() {
        for &y in &generators[a + 1..] {
            if shared_count(x.symbol(), y.symbol()) <= 2 {
                out.push((x, y));
            }
        }
    }
    out
}

/// The signed dihedral rewriting: `(ijkl) = (jkli)^-1 = (lkji)^-1`.
/// Returns the orbit representative and the exponent it carries.
pub fn signed_representative(q: QuadSymbol) -> (CanonicalSymbol, i8) {
    let rep = canonicalize(q);
    let index = q
        .dihedral_orbit()
        .iter()
        .position(|m| *m == rep.symbol())
        .expect("representative lies in the orbit");
    // index = 2 * rotations + reversals; every elementary move flips the sign
    let moves = index / 2 + index % 2;
    (rep, if moves % 2 == 0 { 1 } else { -1 })
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidN { n, min: 4 });
    }
    Ok(())
}

/// Canonical key of a relator up to cyclic rotation and inversion.
fn cyclic_key(word: &[(u32, i8)], involutive: bool) -> Vec<(u32, i8)> {
    let inverse: Vec<(u32, i8)> = word
        .iter()
        .rev()
        .map(|&(g, e)| (g, if involutive { e } else { -e }))
        .collect();
    let mut best: Option<Vec<(u32, i8)>> = None;
    for w in [word, &inverse[..]] {
        for r in 0..w.len().max(1) {
            let mut rot = w.to_vec();
            rot.rotate_left(r.min(w.len()));
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

impl Presentation {
    /// The plain group with relation (4) absorbed by canonicalization.
    /// Duplicate relators (equal up to rotation and inversion) are dropped.
    pub fn gamma(n: usize) -> Result<Self> {
        let mut p = Self::gamma_raw(n)?;
        p.dedup();
        Ok(p)
    }

    /// Every relator instance: one square per generator, one commutator per
    /// unordered commuting pair, one pentagon per ordered 5-tuple.
    pub fn gamma_raw(n: usize) -> Result<Self> {
        check_n(n)?;
        let generators = enumerate_canonical(n)?;
        let mut relators = Vec::new();
        for &x in &generators {
            relators.push(GroupWord(vec![Letter::new(x, 1), Letter::new(x, 1)]));
        }
        for (x, y) in commuting_pairs(&generators) {
            let (x, y) = (Letter::new(x, 1), Letter::new(y, 1));
            relators.push(GroupWord(vec![x, y, x, y]));
        }
        for t in ordered_five_tuples(n) {
            let letters = pentagon_letters(n, t)?;
            relators.push(GroupWord(
                letters
                    .iter()
                    .map(|&q| Letter::new(canonicalize(q), 1))
                    .collect(),
            ));
        }
        Ok(Self {
            variant: Variant::Gamma,
            n,
            generators,
            relators,
        })
    }

    /// The signed variant. Generators are the orbit representatives; every
    /// other orbit member is rewritten as representative^±1.
    pub fn gamma_hat(n: usize) -> Result<Self> {
        let mut p = Self::gamma_hat_raw(n)?;
        p.dedup();
        Ok(p)
    }

    pub fn gamma_hat_raw(n: usize) -> Result<Self> {
        check_n(n)?;
        let generators = enumerate_canonical(n)?;
        let mut relators = Vec::new();
        for (x, y) in commuting_pairs(&generators) {
            relators.push(GroupWord(vec![
                Letter::new(x, 1),
                Letter::new(y, 1),
                Letter::new(x, -1),
                Letter::new(y, -1),
            ]));
        }
        for t in ordered_five_tuples(n) {
            let letters = pentagon_letters(n, t)?;
            let exps = [1i8, 1, 1, -1, -1];
            relators.push(GroupWord(
                letters
                    .iter()
                    .zip(exps)
                    .map(|(&q, e)| {
                        let (rep, sign) = signed_representative(q);
                        Letter::new(rep, sign * e)
                    })
                    .collect(),
            ));
        }
        Ok(Self {
            variant: Variant::GammaHat,
            n,
            generators,
            relators,
        })
    }

    pub fn build(variant: Variant, n: usize) -> Result<Self> {
        match variant {
            Variant::Gamma => Self::gamma(n),
            Variant::GammaHat => Self::gamma_hat(n),
        }
    }

    /// Add the commutator of every pair of generators; the resulting group is
    /// the abelianization (for the plain variant).
    pub fn abelianized(&self) -> Self {
        let mut out = self.clone();
        for (a, &x) in self.generators.iter().enumerate() {
            for &y in &self.generators[a + 1..] {
                out.relators.push(self.commutator_word(x, y));
            }
        }
        out.dedup();
        out
    }

    fn commutator_word(&self, x: CanonicalSymbol, y: CanonicalSymbol) -> GroupWord {
        let inv = match self.variant {
            Variant::Gamma => 1,
            Variant::GammaHat => -1,
        };
        GroupWord(vec![
            Letter::new(x, 1),
            Letter::new(y, 1),
            Letter::new(x, inv),
            Letter::new(y, inv),
        ])
    }

    fn generator_ids(&self) -> HashMap<CanonicalSymbol, u32> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i as u32))
            .collect()
    }

    fn dedup(&mut self) {
        let ids = self.generator_ids();
        let involutive = self.variant == Variant::Gamma;
        let mut seen = HashSet::new();
        self.relators.retain(|w| {
            let coded: Vec<(u32, i8)> = w.0.iter().map(|l| (ids[&l.symbol], l.exp)).collect();
            seen.insert(cyclic_key(&coded, involutive))
        });
    }

    /// Recognize the family of a relator from its shape.
    pub fn family_of(&self, w: &GroupWord) -> Option<Family> {
        let l = w.letters();
        match l.len() {
            2 if l[0].symbol == l[1].symbol => Some(Family::Involutive),
            4 if l[0].symbol == l[2].symbol && l[1].symbol == l[3].symbol => {
                Some(Family::Commutative)
            }
            5 => Some(Family::Pentagon),
            _ => None,
        }
    }

    pub fn family_counts(&self) -> HashMap<Family, usize> {
        let mut counts: HashMap<Family, usize> = Family::ALL.iter().map(|&f| (f, 0)).collect();
        for w in &self.relators {
            if let Some(f) = self.family_of(w) {
                *counts.entry(f).or_default() += 1;
            }
        }
        counts
    }

    /// Check that relators only use declared generators.
    pub fn validate(&self) -> Result<()> {
        let ids = self.generator_ids();
        for w in &self.relators {
            for l in w.letters() {
                if !ids.contains_key(&l.symbol) {
                    return Err(Error::MalformedWord(format!(
                        "relator {w} uses undeclared generator {}",
                        l.symbol
                    )));
                }
            }
        }
        Ok(())
    }

    /// Deterministic text serialization; see the module documentation.
    pub fn serialize(&self) -> String {
        let ids = self.generator_ids();
        let mut out = format!(
            "{} n={} gens={} rels={}\n",
            self.variant,
            self.n,
            self.generators.len(),
            self.relators.len()
        );
        for (i, g) in self.generators.iter().enumerate() {
            out.push_str(&format!("g{} = {}\n", i + 1, g));
        }
        for w in &self.relators {
            let tokens: Vec<String> = w
                .letters()
                .iter()
                .map(|l| {
                    let id = ids[&l.symbol] + 1;
                    if l.exp < 0 {
                        format!("g{id}^-1")
                    } else {
                        format!("g{id}")
                    }
                })
                .collect();
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty presentation".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [variant, n, gens, rels] = fields[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let variant: Variant = variant.parse()?;
        let field = |f: &str, key: &str| -> Result<usize> {
            f.strip_prefix(key)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad header field {f:?}")))
        };
        let n = field(n, "n=")?;
        let gens = field(gens, "gens=")?;
        let rels = field(rels, "rels=")?;
        check_n(n)?;

        let mut generators = Vec::with_capacity(gens);
        for i in 0..gens {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing generator line".into()))?;
            let (id, sym) = line
                .split_once(" = ")
                .ok_or_else(|| Error::Parse(format!("bad generator line {line:?}")))?;
            if id != format!("g{}", i + 1) {
                return Err(Error::Parse(format!("expected g{} in {line:?}", i + 1)));
            }
            let q = QuadSymbol::parse(n, sym)?;
            let c = canonicalize(q);
            if c.symbol() != q {
                return Err(Error::Parse(format!("generator {q} is not in minimal form")));
            }
            generators.push(c);
        }
        let mut relators = Vec::with_capacity(rels);
        for _ in 0..rels {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing relator line".into()))?;
            let word = line
                .split(' ')
                .map(|tok| parse_token(tok, &generators))
                .collect::<Result<Vec<_>>>()?;
            relators.push(GroupWord(word));
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing content after relators".into()));
        }
        Ok(Self {
            variant,
            n,
            generators,
            relators,
        })
    }
}

fn parse_token(tok: &str, generators: &[CanonicalSymbol]) -> Result<Letter> {
    let (body, exp) = match tok.strip_suffix("^-1") {
        Some(b) => (b, -1),
        None => (tok, 1),
    };
    let id: usize = body
        .strip_prefix('g')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad relator token {tok:?}")))?;
    let symbol = id
        .checked_sub(1)
        .and_then(|i| generators.get(i))
        .ok_or_else(|| Error::Parse(format!("undeclared generator {tok:?}")))?;
    Ok(Letter::new(*symbol, exp))
}
