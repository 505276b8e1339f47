//! Todd-Coxeter coset enumeration over arbitrary finite presentations.
//!
//! Two strategies are provided: relator-driven (HLT, with lookahead when the
//! table is full) and definition-driven (Felsch, with a deduction stack).
//! Generators whose square is a relator get a single self-inverse column.
//! Cosets are numbered from 1; entry 0 means "undefined".

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{GroupWord, Presentation};

/// A generator index with an inversion flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpLetter {
    pub gen: u32,
    pub inverse: bool,
}

/// A presentation with named generators, independent of quadruple symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<FpLetter>>,
}

impl FpPresentation {
    /// Build from generator names and relators written as whitespace
    /// separated tokens `a`, `a^-1` or `a^k`.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let mut p = Self {
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relators: Vec::new(),
        };
        for r in relators {
            let w = p.parse_word(r)?;
            p.relators.push(w);
        }
        Ok(p)
    }

    pub fn parse_word(&self, s: &str) -> Result<Vec<FpLetter>> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((name, e)) => (
                    name,
                    e.parse::<i32>()
                        .map_err(|_| Error::MalformedWord(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            let gen = self
                .generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::MalformedWord(format!("unknown generator {name:?}")))?;
            let letter = FpLetter {
                gen: gen as u32,
                inverse: exp < 0,
            };
            out.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(out)
    }

    /// Convert a word over the symbols of `p` into generator indices.
    pub fn word_from_group_word(p: &Presentation, w: &GroupWord) -> Result<Vec<FpLetter>> {
        w.letters()
            .iter()
            .map(|l| {
                let gen = p
                    .generators
                    .iter()
                    .position(|&g| g == l.symbol)
                    .ok_or_else(|| {
                        Error::MalformedWord(format!("{} is not a generator", l.symbol))
                    })?;
                Ok(FpLetter {
                    gen: gen as u32,
                    inverse: l.exp < 0,
                })
            })
            .collect()
    }
}

impl TryFrom<&Presentation> for FpPresentation {
    type Error = Error;

    fn try_from(p: &Presentation) -> Result<Self> {
        Ok(Self {
            generators: (1..=p.generators.len()).map(|i| format!("g{i}")).collect(),
            relators: p
                .relators
                .iter()
                .map(|w| Self::word_from_group_word(p, w))
                .collect::<Result<_>>()?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Relator-driven (HLT) with lookahead.
    Hlt,
    /// Definition-driven (Felsch) with a deduction stack.
    Felsch,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Hlt => "hlt",
            Strategy::Felsch => "felsch",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hlt" | "relator" => Ok(Strategy::Hlt),
            "felsch" | "definition" => Ok(Strategy::Felsch),
            other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
        }
    }
}

pub const DEFAULT_MAX_COSETS: usize = 32 << 20;
pub const DEFAULT_MAX_MEMORY: usize = 8 << 30;

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub strategy: Strategy,
    pub max_cosets: usize,
    /// Bytes allowed for the coset table and its bookkeeping.
    pub max_memory: usize,
    pub lookahead: bool,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::Hlt,
            max_cosets: DEFAULT_MAX_COSETS,
            max_memory: DEFAULT_MAX_MEMORY,
            lookahead: true,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EnumerationStats {
    /// Cosets ever defined.
    pub defined: u64,
    /// Live cosets when the run stopped.
    pub live: usize,
    /// Largest number of simultaneously live cosets.
    pub max_live: usize,
    pub deductions: u64,
    pub coincidences: u64,
    /// Peak bytes held by the table and the union-find array.
    pub peak_bytes: usize,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Closed { index: usize, table: CosetTable },
    LimitExceeded,
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub outcome: Outcome,
    pub stats: EnumerationStats,
}

impl EnumerationResult {
    pub fn index(&self) -> Option<usize> {
        match &self.outcome {
            Outcome::Closed { index, .. } => Some(*index),
            Outcome::LimitExceeded => None,
        }
    }

    pub fn table(&self) -> Option<&CosetTable> {
        match &self.outcome {
            Outcome::Closed { table, .. } => Some(table),
            Outcome::LimitExceeded => None,
        }
    }
}

/// How generators map onto table columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnLayout {
    /// `forward[g]` is the column of generator `g`, `backward[g]` that of its
    /// inverse (equal for involutions).
    pub forward: Vec<u16>,
    pub backward: Vec<u16>,
    /// Column of the inverse letter for every column.
    pub inverse: Vec<u16>,
}

impl ColumnLayout {
    fn new(p: &FpPresentation) -> Self {
        let mut forward = Vec::new();
        let mut backward = Vec::new();
        let mut inverse = Vec::new();
        for g in 0..p.generators.len() as u32 {
            let involution = p.relators.iter().any(|r| {
                r.len() == 2 && r[0].gen == g && r[1].gen == g && r[0].inverse == r[1].inverse
            });
            let c = inverse.len() as u16;
            if involution {
                forward.push(c);
                backward.push(c);
                inverse.push(c);
            } else {
                forward.push(c);
                backward.push(c + 1);
                inverse.push(c + 1);
                inverse.push(c);
            }
        }
        Self {
            forward,
            backward,
            inverse,
        }
    }

    pub fn ncols(&self) -> usize {
        self.inverse.len()
    }

    pub fn column(&self, l: FpLetter) -> u16 {
        if l.inverse {
            self.backward[l.gen as usize]
        } else {
            self.forward[l.gen as usize]
        }
    }

    pub fn columns(&self, w: &[FpLetter]) -> Vec<u16> {
        w.iter().map(|&l| self.column(l)).collect()
    }

    fn is_trivial_square(&self, w: &[u16]) -> bool {
        w.len() == 2 && w[0] == w[1] && self.inverse[w[0] as usize] == w[0]
    }
}

/// A closed coset table: row `α` (1-based) lists `α·x` for every column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub layout: ColumnLayout,
    rows: usize,
    data: Vec<u32>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.layout.ncols()
    }

    /// `α · column`, or 0 if undefined.
    pub fn get(&self, coset: u32, col: u16) -> u32 {
        self.data[coset as usize * self.ncols() + col as usize]
    }

    pub fn set(&mut self, coset: u32, col: u16, value: u32) {
        let nc = self.ncols();
        self.data[coset as usize * nc + col as usize] = value;
    }

    /// Follow a word from a coset; `None` if an entry is undefined.
    pub fn trace(&self, coset: u32, cols: &[u16]) -> Option<u32> {
        cols.iter().try_fold(coset, |c, &x| {
            let next = self.get(c, x);
            (next != 0).then_some(next)
        })
    }
}

/// Check a closed table: every entry defined and in range, inverse columns
/// consistent, every relator traces to the identity permutation, and every
/// subgroup word fixes coset 1.
pub fn verify_table(p: &FpPresentation, subgroup: &[Vec<FpLetter>], t: &CosetTable) -> bool {
    if ColumnLayout::new(p) != t.layout {
        return false;
    }
    let rows = t.index() as u32;
    let nc = t.ncols() as u16;
    let structural = (1..=rows).into_par_iter().all(|a| {
        (0..nc).all(|x| {
            let b = t.get(a, x);
            b >= 1 && b <= rows && t.get(b, t.layout.inverse[x as usize]) == a
        })
    });
    if !structural {
        return false;
    }
    let relators: Vec<Vec<u16>> = p.relators.iter().map(|r| t.layout.columns(r)).collect();
    let relations = (1..=rows)
        .into_par_iter()
        .all(|a| relators.iter().all(|r| t.trace(a, r) == Some(a)));
    relations
        && subgroup
            .iter()
            .all(|w| t.trace(1, &t.layout.columns(w)) == Some(1))
}

/// Run a coset enumeration for the subgroup generated by `subgroup`.
pub fn enumerate(
    p: &FpPresentation,
    subgroup: &[Vec<FpLetter>],
    cfg: &EnumerationConfig,
) -> Result<EnumerationResult> {
    if cfg.max_cosets == 0 {
        return Err(Error::OutOfRange("max cosets must be at least 1".into()));
    }
    let ngens = p.generators.len() as u32;
    for w in p.relators.iter().chain(subgroup) {
        if let Some(l) = w.iter().find(|l| l.gen >= ngens) {
            return Err(Error::MalformedWord(format!(
                "generator index {} out of range",
                l.gen
            )));
        }
    }
    let start = Instant::now();
    let mut e = Enumerator::new(p, subgroup, cfg);
    let closed = match cfg.strategy {
        Strategy::Hlt => e.run_hlt(),
        Strategy::Felsch => e.run_felsch(),
    };
    e.stats.live = e.live;
    e.stats.seconds = start.elapsed().as_secs_f64();
    let outcome = match closed {
        Ok(()) => {
            e.compact();
            let index = e.live;
            e.stats.live = index;
            let nc = e.layout.ncols();
            e.table.truncate((index + 1) * nc);
            e.table.shrink_to_fit();
            Outcome::Closed {
                index,
                table: CosetTable {
                    layout: e.layout,
                    rows: index,
                    data: e.table,
                },
            }
        }
        Err(Full) => Outcome::LimitExceeded,
    };
    Ok(EnumerationResult {
        outcome,
        stats: e.stats,
    })
}

/// The table has reached its size limit.
#[derive(Debug)]
struct Full;

const DEDUCTION_LIMIT: usize = 1 << 22;

struct Enumerator {
    layout: ColumnLayout,
    ncols: usize,
    relators: Vec<Vec<u16>>,
    /// For each column, the cyclic conjugates of relators and their
    /// inverses that start with it.
    conjugates: Vec<Vec<Vec<u16>>>,
    subgroup: Vec<Vec<u16>>,
    table: Vec<u32>,
    parent: Vec<u32>,
    /// Rows currently allocated, including the unused row 0.
    allocated: usize,
    /// Hard limit on rows, including row 0.
    max_rows: usize,
    /// Next unused coset number.
    next: u32,
    live: usize,
    queue: Vec<u32>,
    felsch: bool,
    deductions: Vec<(u32, u16)>,
    overflowed: bool,
    lookahead: bool,
    stats: EnumerationStats,
}

impl Enumerator {
    fn new(p: &FpPresentation, subgroup: &[Vec<FpLetter>], cfg: &EnumerationConfig) -> Self {
        let layout = ColumnLayout::new(p);
        let ncols = layout.ncols();
        let mut seen = HashSet::new();
        let mut relators = Vec::new();
        for r in &p.relators {
            let cols = free_reduce(&layout, layout.columns(r));
            if cols.is_empty() || layout.is_trivial_square(&cols) {
                continue;
            }
            if seen.insert(cols.clone()) {
                relators.push(cols);
            }
        }
        let mut conjugates = vec![Vec::new(); ncols];
        let mut conj_seen = HashSet::new();
        for r in &relators {
            let inv: Vec<u16> = r.iter().rev().map(|&x| layout.inverse[x as usize]).collect();
            for w in [r, &inv] {
                for s in 0..w.len() {
                    let mut c = w.clone();
                    c.rotate_left(s);
                    if conj_seen.insert(c.clone()) {
                        conjugates[c[0] as usize].push(c);
                    }
                }
            }
        }
        let row_bytes = ncols * 4 + 4;
        let max_rows = cfg
            .max_cosets
            .min(cfg.max_memory / row_bytes.max(1))
            .saturating_add(1)
            .max(2);
        let allocated = max_rows.min(1 << 12);
        let mut e = Self {
            ncols,
            relators,
            conjugates,
            subgroup: subgroup
                .iter()
                .map(|w| free_reduce(&layout, layout.columns(w)))
                .collect(),
            table: vec![0; allocated * ncols],
            parent: vec![0; allocated],
            allocated,
            max_rows,
            next: 2,
            live: 1,
            queue: Vec::new(),
            felsch: cfg.strategy == Strategy::Felsch,
            deductions: Vec::new(),
            overflowed: false,
            lookahead: cfg.lookahead,
            layout,
            stats: EnumerationStats::default(),
        };
        e.parent[1] = 1;
        e.stats.defined = 1;
        e.stats.max_live = 1;
        e.stats.peak_bytes = allocated * row_bytes;
        e
    }

    #[inline]
    fn get(&self, a: u32, x: u16) -> u32 {
        self.table[a as usize * self.ncols + x as usize]
    }

    #[inline]
    fn set(&mut self, a: u32, x: u16, v: u32) {
        self.table[a as usize * self.ncols + x as usize] = v;
    }

    #[inline]
    fn inv(&self, x: u16) -> u16 {
        self.layout.inverse[x as usize]
    }

    #[inline]
    fn is_live(&self, a: u32) -> bool {
        self.parent[a as usize] == a
    }

    fn push_deduction(&mut self, a: u32, x: u16) {
        if !self.felsch {
            return;
        }
        if self.deductions.len() >= DEDUCTION_LIMIT {
            self.overflowed = true;
        } else {
            self.deductions.push((a, x));
        }
    }

    /// Make room for one more row, growing the allocation if allowed.
    fn ensure_room(&mut self) -> Result<(), Full> {
        if (self.next as usize) < self.allocated {
            return Ok(());
        }
        if self.allocated >= self.max_rows {
            return Err(Full);
        }
        let rows = (self.allocated * 2).min(self.max_rows);
        self.table.resize(rows * self.ncols, 0);
        self.parent.resize(rows, 0);
        self.allocated = rows;
        self.stats.peak_bytes = self.stats.peak_bytes.max(rows * (self.ncols * 4 + 4));
        Ok(())
    }

    fn define(&mut self, a: u32, x: u16) -> Result<u32, Full> {
        self.ensure_room()?;
        let b = self.next;
        self.next += 1;
        self.parent[b as usize] = b;
        let base = b as usize * self.ncols;
        self.table[base..base + self.ncols].fill(0);
        self.set(a, x, b);
        let xi = self.inv(x);
        self.set(b, xi, a);
        self.live += 1;
        self.stats.defined += 1;
        self.stats.max_live = self.stats.max_live.max(self.live);
        self.push_deduction(a, x);
        Ok(b)
    }

    fn rep(&mut self, a: u32) -> u32 {
        let mut root = a;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = a;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.stats.coincidences += 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols as u16 {
                let d = self.get(g, x);
                if d == 0 {
                    continue;
                }
                let xi = self.inv(x);
                // the back pointer d·x^-1 = g is no longer valid
                if self.get(d, xi) == g {
                    self.set(d, xi, 0);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != 0 {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.get(nu, xi);
                    if nu_xi != 0 {
                        self.merge(mu, nu_xi);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, xi, mu);
                        self.push_deduction(mu, x);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Record `f·x = b` and `b·x^-1 = f` found by a scan.
    fn deduce(&mut self, f: u32, x: u16, b: u32) {
        self.set(f, x, b);
        let xi = self.inv(x);
        self.set(b, xi, f);
        self.stats.deductions += 1;
        self.push_deduction(f, x);
    }

    /// Scan a relator from coset `a` without defining new cosets.
    fn scan(&mut self, a: u32, w: &[u16]) {
        let mut f = a;
        let mut i = 0usize;
        let mut b = a;
        let mut j = w.len();
        while i < j {
            let next = self.get(f, w[i]);
            if next == 0 {
                break;
            }
            f = next;
            i += 1;
        }
        if i == j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j > i {
            let next = self.get(b, self.inv(w[j - 1]));
            if next == 0 {
                break;
            }
            b = next;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.deduce(f, w[i], b);
        }
    }

    /// Scan a relator from `a`, defining cosets to complete it.
    fn scan_and_fill(&mut self, a: u32, w: &[u16]) -> Result<(), Full> {
        let mut f = a;
        let mut i = 0usize;
        let mut b = a;
        let mut j = w.len();
        loop {
            while i < j {
                let next = self.get(f, w[i]);
                if next == 0 {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let next = self.get(b, self.inv(w[j - 1]));
                if next == 0 {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.deduce(f, w[i], b);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn fill_subgroup(&mut self) -> Result<(), Full> {
        let words = std::mem::take(&mut self.subgroup);
        let mut result = Ok(());
        for w in &words {
            let one = self.rep(1);
            result = self.scan_and_fill(one, w);
            if result.is_err() {
                break;
            }
        }
        self.subgroup = words;
        result
    }

    fn run_hlt(&mut self) -> Result<(), Full> {
        while self.fill_subgroup().is_err() {
            self.recover(1)?;
        }
        let relators = std::mem::take(&mut self.relators);
        let result = self.hlt_loop(&relators);
        self.relators = relators;
        result
    }

    fn hlt_loop(&mut self, relators: &[Vec<u16>]) -> Result<(), Full> {
        let mut a = 1u32;
        'main: while a < self.next {
            if !self.is_live(a) {
                a += 1;
                continue;
            }
            for r in relators {
                if self.scan_and_fill(a, r).is_err() {
                    a = self.recover_with(a, relators)?;
                    continue 'main;
                }
                if !self.is_live(a) {
                    break;
                }
            }
            if self.is_live(a) {
                for x in 0..self.ncols as u16 {
                    if self.get(a, x) == 0 && self.define(a, x).is_err() {
                        a = self.recover_with(a, relators)?;
                        continue 'main;
                    }
                }
            }
            a += 1;
        }
        Ok(())
    }

    fn run_felsch(&mut self) -> Result<(), Full> {
        loop {
            match self.fill_subgroup() {
                Ok(()) => break,
                Err(Full) => {
                    self.recover(1)?;
                }
            }
        }
        self.process_deductions();
        let mut a = 1u32;
        'main: while a < self.next {
            if !self.is_live(a) {
                a += 1;
                continue;
            }
            for x in 0..self.ncols as u16 {
                if self.get(a, x) != 0 {
                    continue;
                }
                if self.define(a, x).is_err() {
                    a = self.recover(a)?;
                    continue 'main;
                }
                self.process_deductions();
                if !self.is_live(a) {
                    break;
                }
            }
            a += 1;
        }
        Ok(())
    }

    fn process_deductions(&mut self) {
        let conjugates = std::mem::take(&mut self.conjugates);
        loop {
            while let Some((a, x)) = self.deductions.pop() {
                if !self.is_live(a) {
                    continue;
                }
                for w in &conjugates[x as usize] {
                    self.scan(a, w);
                    if !self.is_live(a) {
                        break;
                    }
                }
                let b = self.get(a, x);
                if b != 0 && self.is_live(b) {
                    let xi = self.inv(x);
                    for w in &conjugates[xi as usize] {
                        self.scan(b, w);
                        if !self.is_live(b) {
                            break;
                        }
                    }
                }
            }
            if !self.overflowed {
                break;
            }
            self.overflowed = false;
            self.deductions.clear();
            let relators = std::mem::take(&mut self.relators);
            self.scan_all(1, &relators);
            self.relators = relators;
        }
        self.conjugates = conjugates;
    }

    fn scan_all(&mut self, from: u32, relators: &[Vec<u16>]) {
        let mut a = from;
        while a < self.next {
            if self.is_live(a) {
                for r in relators {
                    self.scan(a, r);
                    if !self.is_live(a) {
                        break;
                    }
                }
            }
            a += 1;
        }
    }

    fn recover(&mut self, a: u32) -> Result<u32, Full> {
        let relators = std::mem::take(&mut self.relators);
        let result = self.recover_with(a, &relators);
        self.relators = relators;
        result
    }

    /// The table is full while working on coset `a`: run a lookahead pass
    /// (scan without defining), compact, and return the new number of the
    /// first live coset at or after `a`. Gives up unless a sixteenth of the
    /// table was freed.
    fn recover_with(&mut self, a: u32, relators: &[Vec<u16>]) -> Result<u32, Full> {
        if !self.lookahead {
            return Err(Full);
        }
        // Cosets before `a` already close every relator under HLT; under
        // Felsch every coset is scanned.
        let from = if self.felsch { 1 } else { a };
        self.scan_all(from, relators);
        if self.felsch {
            self.process_deductions();
        }
        let before = self.next as usize;
        let new_a = self.compact_from(a);
        let freed = before - self.next as usize;
        if freed * 16 < self.max_rows {
            return Err(Full);
        }
        Ok(new_a)
    }

    fn compact(&mut self) {
        self.compact_from(1);
    }

    /// Renumber live cosets consecutively, preserving order. Returns the new
    /// number of the first live coset at or after `a`.
    fn compact_from(&mut self, a: u32) -> u32 {
        debug_assert!(self.queue.is_empty());
        debug_assert!(self.deductions.is_empty());
        let mut map = vec![0u32; self.next as usize];
        let mut count = 0u32;
        let mut new_a = 0;
        for old in 1..self.next {
            if self.is_live(old) {
                count += 1;
                map[old as usize] = count;
            }
            if old >= a && new_a == 0 && self.is_live(old) {
                new_a = count;
            }
        }
        let nc = self.ncols;
        for old in 1..self.next {
            let new = map[old as usize];
            if new == 0 {
                continue;
            }
            for x in 0..nc {
                let v = self.table[old as usize * nc + x];
                let mapped = if v == 0 { 0 } else { map[v as usize] };
                debug_assert!(v == 0 || mapped != 0, "live row points at a dead coset");
                self.table[new as usize * nc + x] = mapped;
            }
            self.parent[new as usize] = new;
        }
        self.next = count + 1;
        if new_a == 0 {
            new_a = self.next;
        }
        new_a
    }
}

fn free_reduce(layout: &ColumnLayout, cols: Vec<u16>) -> Vec<u16> {
    let mut out: Vec<u16> = Vec::with_capacity(cols.len());
    for x in cols {
        if out.last() == Some(&layout.inverse[x as usize]) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    // cyclic reduction
    while out.len() >= 2 && layout.inverse[out[0] as usize] == *out.last().unwrap() {
        out.pop();
        out.remove(0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FpPresentation {
        FpPresentation::parse(&["a", "b"], &["a a", "b b", "a b a b a b"]).unwrap()
    }

    #[test]
    fn symmetric_group_both_strategies() {
        for strategy in [Strategy::Hlt, Strategy::Felsch] {
            let cfg = EnumerationConfig {
                strategy,
                ..Default::default()
            };
            let r = enumerate(&s3(), &[], &cfg).unwrap();
            assert_eq!(r.index(), Some(6));
            assert!(verify_table(&s3(), &[], r.table().unwrap()));
        }
    }

    #[test]
    fn subgroup_index() {
        let p = s3();
        let h = vec![p.parse_word("a").unwrap()];
        let r = enumerate(&p, &h, &EnumerationConfig::default()).unwrap();
        assert_eq!(r.index(), Some(3));
        assert!(verify_table(&p, &h, r.table().unwrap()));
    }

    #[test]
    fn corrupted_table_rejected() {
        let p = s3();
        let r = enumerate(&p, &[], &EnumerationConfig::default()).unwrap();
        let mut t = r.table().unwrap().clone();
        let old = t.get(1, 0);
        t.set(1, 0, if old == 1 { 2 } else { 1 });
        assert!(!verify_table(&p, &[], &t));
    }

    #[test]
    fn cyclic_groups() {
        for n in 1..=12 {
            let rel = vec!["a"; n].join(" ");
            let p = FpPresentation::parse(&["a"], &[&rel]).unwrap();
            for strategy in [Strategy::Hlt, Strategy::Felsch] {
                let cfg = EnumerationConfig {
                    strategy,
                    ..Default::default()
                };
                assert_eq!(enumerate(&p, &[], &cfg).unwrap().index(), Some(n));
            }
        }
    }

    #[test]
    fn parse_exponents() {
        let p = FpPresentation::parse(&["a", "b"], &["a^4", "a^2 b^-2"]).unwrap();
        assert_eq!(p.relators[0].len(), 4);
        assert!(p.relators[1][3].inverse);
        assert!(FpPresentation::parse(&["a"], &["c"]).is_err());
    }

    #[test]
    fn tiny_limit() {
        let p = FpPresentation::parse(&["a", "b"], &[]).unwrap();
        let cfg = EnumerationConfig {
            max_cosets: 50,
            ..Default::default()
        };
        let r = enumerate(&p, &[], &cfg).unwrap();
        assert!(r.index().is_none());
        assert!(r.stats.live <= 50);
    }
}
