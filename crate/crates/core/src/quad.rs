//! Quadruple symbols `(i j k l)`, their dihedral canonical form and the
//! fifteen-way classification of canonical symbols.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An ordered quadruple of pairwise distinct integers from `1..=n`.
///
/// The ambient `n` travels with the symbol so that symbols from different
/// groups cannot be mixed silently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadSymbol {
    n: u8,
    entries: [u8; 4],
}

impl QuadSymbol {
    pub fn new(n: usize, entries: [usize; 4]) -> Result<Self> {
        if n < 4 || n > u8::MAX as usize {
            return Err(Error::InvalidN { n, min: 4 });
        }
        for (a, &x) in entries.iter().enumerate() {
            if x == 0 || x > n {
                return Err(Error::InvalidSymbol(format!(
                    "entry {x} of {entries:?} is outside 1..={n}"
                )));
            }
            if entries[..a].contains(&x) {
                return Err(Error::InvalidSymbol(format!(
                    "entries of {entries:?} are not distinct"
                )));
            }
        }
        Ok(Self {
            n: n as u8,
            entries: entries.map(|x| x as u8),
        })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn entries(&self) -> [usize; 4] {
        self.entries.map(usize::from)
    }

    /// The underlying 4-element set as a bitmask (bit `x` for entry `x`).
    pub fn support(&self) -> u64 {
        self.entries.iter().fold(0, |acc, &x| acc | (1u64 << x))
    }

    /// The diagonal pairing `{{i,k},{j,l}}`, each pair sorted.
    pub fn diagonals(&self) -> [(usize, usize); 2] {
        let [i, j, k, l] = self.entries();
        [(i.min(k), i.max(k)), (j.min(l), j.max(l))]
    }

    /// The eight members of the dihedral orbit: four rotations, each with and
    /// without reversal. Index `2 * r + f` is `r` left rotations followed by
    /// `f` reversals.
    pub fn dihedral_orbit(&self) -> [QuadSymbol; 8] {
        let mut out = [*self; 8];
        for r in 0..4 {
            let mut rotated = self.entries;
            rotated.rotate_left(r);
            let mut reversed = rotated;
            reversed.reverse();
            out[2 * r] = Self { n: self.n, entries: rotated };
            out[2 * r + 1] = Self { n: self.n, entries: reversed };
        }
        out
    }

    /// Rename every entry through `f`, keeping the ambient size.
    pub(crate) fn map_entries(&self, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(self.n(), self.entries().map(f))
    }

    fn is_minimal(&self) -> bool {
        let [a, b, c, d] = self.entries;
        a < b && a < c && a < d && b < d
    }
}

impl fmt::Display for QuadSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.entries;
        write!(f, "({i} {j} {k} {l})")
    }
}

impl QuadSymbol {
    /// Parse `"(i j k l)"` for ambient size `n`. Whitespace inside the
    /// parentheses is optional when every entry is a single digit.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected \"(i j k l)\", got {s:?}")))?;
        let entries = parse_entries(inner)?;
        Self::new(n, entries)
    }
}

fn parse_entries(inner: &str) -> Result<[usize; 4]> {
    let tokens: Vec<&str> = inner.split_whitespace().collect();
    let values: Vec<usize> = if tokens.len() == 1 && tokens[0].len() == 4 {
        // compact form "(1234)"
        tokens[0]
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse(format!("bad symbol body {inner:?}")))?
    } else {
        tokens
            .iter()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad symbol body {inner:?}")))?
    };
    values
        .try_into()
        .map_err(|_| Error::Parse(format!("symbol {inner:?} must have four entries")))
}

/// A symbol in minimal dihedral form: first entry is the minimum and the
/// second entry is smaller than the fourth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalSymbol(QuadSymbol);

impl CanonicalSymbol {
    /// Build directly from entries that are already minimal.
    pub fn new(n: usize, entries: [usize; 4]) -> Result<Self> {
        let q = QuadSymbol::new(n, entries)?;
        if !q.is_minimal() {
            return Err(Error::InvalidSymbol(format!("{q} is not in minimal form")));
        }
        Ok(Self(q))
    }

    pub fn symbol(&self) -> QuadSymbol {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn entries(&self) -> [usize; 4] {
        self.0.entries()
    }

    pub fn support(&self) -> u64 {
        self.0.support()
    }

    /// Largest entry; primary key of the basis order.
    pub fn max_entry(&self) -> usize {
        self.0.entries.iter().copied().max().unwrap_or(0) as usize
    }
}

impl fmt::Display for CanonicalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<CanonicalSymbol> for QuadSymbol {
    fn from(c: CanonicalSymbol) -> Self {
        c.0
    }
}

/// The unique minimal member of the dihedral orbit of `q`.
pub fn canonicalize(q: QuadSymbol) -> CanonicalSymbol {
    let mut found = None;
    for member in q.dihedral_orbit() {
        if member.is_minimal() {
            assert!(
                found.is_none() || found == Some(member),
                "dihedral orbit of {q} has two minimal members"
            );
            found = Some(member);
        }
    }
    CanonicalSymbol(found.expect("every dihedral orbit has a minimal member"))
}

/// `|{i,j,k,l} ∩ {s,t,u,v}|`.
pub fn shared_count(p: QuadSymbol, q: QuadSymbol) -> usize {
    assert_eq!(p.n, q.n, "symbols {p} and {q} come from different n");
    (p.support() & q.support()).count_ones() as usize
}

/// The fifteen index patterns that partition the canonical symbols.
/// `G1`, `G2`, `G3` are exactly the members of the minimal generating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum GenClass {
    G1,
    G2,
    G3,
    A1,
    A2,
    A3,
    A4,
    B1,
    B2,
    B3,
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl GenClass {
    pub const ALL: [GenClass; 15] = [
        GenClass::G1,
        GenClass::G2,
        GenClass::G3,
        GenClass::A1,
        GenClass::A2,
        GenClass::A3,
        GenClass::A4,
        GenClass::B1,
        GenClass::B2,
        GenClass::B3,
        GenClass::C1,
        GenClass::C2,
        GenClass::C3,
        GenClass::C4,
        GenClass::C5,
    ];

    pub fn is_basis(self) -> bool {
        matches!(self, GenClass::G1 | GenClass::G2 | GenClass::G3)
    }

    /// The central exponent attached to canonical generators of this class.
    pub fn eps(self) -> bool {
        matches!(
            self,
            GenClass::A1 | GenClass::A2 | GenClass::A4 | GenClass::C2 | GenClass::C3
        )
    }
}

impl fmt::Display for GenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for GenClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenClass::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown class {s:?}")))
    }
}

/// Classify a canonical symbol by the first matching pattern, in the order
/// G1..G3, A1..A4, B1..B3, C1..C5.
pub fn classify(c: CanonicalSymbol) -> GenClass {
    let [a, b, x, d] = c.entries();
    // Canonical symbols over a sorted 4-set p<q<r<s are (p q r s), (p q s r)
    // and (p r q s); the class depends on which shape and on p, q.
    let sorted_shape = b < x && x < d;
    let swapped_tail = b < d && d < x;
    let crossed = x < b && b < d;
    use GenClass::*;
    let class = if a == 1 && b == 2 && x == 3 {
        Some(G1)
    } else if a == 1 && x == 2 && 3 <= b && b < d {
        Some(G2)
    } else if a == 1 && swapped_tail {
        Some(G3)
    } else if a == 1 && b == 2 && sorted_shape && 4 <= x {
        Some(A1)
    } else if a == 1 && sorted_shape && 3 <= b {
        Some(A2)
    } else if a == 2 && sorted_shape && 3 <= b {
        Some(A3)
    } else if 3 <= a && sorted_shape {
        Some(A4)
    } else if a == 2 && b == 3 && swapped_tail {
        Some(B1)
    } else if a == 2 && 4 <= b && swapped_tail {
        Some(B2)
    } else if 3 <= a && swapped_tail {
        Some(B3)
    } else if a == 1 && x == 3 && crossed {
        Some(C1)
    } else if a == 1 && 4 <= x && crossed {
        Some(C2)
    } else if a == 2 && 3 <= x && crossed {
        Some(C3)
    } else if a == 3 && 4 <= x && crossed {
        Some(C4)
    } else if 4 <= a && crossed {
        Some(C5)
    } else {
        None
    };
    class.unwrap_or_else(|| panic!("canonical symbol {c} matches no class pattern"))
}

/// All canonical symbols for `n`, in lexicographic order of entries.
pub fn enumerate_canonical(n: usize) -> Result<Vec<CanonicalSymbol>> {
    if n < 4 {
        return Err(Error::InvalidN { n, min: 4 });
    }
    let mut out = Vec::with_capacity(n * (n - 1) * (n - 2) * (n - 3) / 8);
    for a in 1..=n {
        for b in a + 1..=n {
            for x in a + 1..=n {
                for d in b + 1..=n {
                    if x != b && x != d {
                        out.push(CanonicalSymbol::new(n, [a, b, x, d])?);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, e: [usize; 4]) -> QuadSymbol {
        QuadSymbol::new(n, e).unwrap()
    }

    /// Orbit oracle: apply rotations/reversal as explicit permutations of
    /// positions, then select by the two minimality conditions.
    fn orbit_oracle(e: [usize; 4]) -> [usize; 4] {
        let maps: [[usize; 4]; 8] = [
            [0, 1, 2, 3],
            [1, 2, 3, 0],
            [2, 3, 0, 1],
            [3, 0, 1, 2],
            [3, 2, 1, 0],
            [0, 3, 2, 1],
            [1, 0, 3, 2],
            [2, 1, 0, 3],
        ];
        let picks: Vec<[usize; 4]> = maps
            .iter()
            .map(|m| m.map(|p| e[p]))
            .filter(|s| s[0] == *s.iter().min().unwrap() && s[1] < s[3])
            .collect();
        assert_eq!(picks.len(), 1);
        picks[0]
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(q(4, [2, 3, 4, 1])).entries(), [1, 2, 3, 4]);
        assert_eq!(orbit_oracle([1, 3, 4, 2]), [1, 2, 4, 3]);
        assert_eq!(canonicalize(q(4, [1, 3, 4, 2])).entries(), [1, 2, 4, 3]);
        assert_eq!(orbit_oracle([1, 4, 3, 2]), [1, 2, 3, 4]);
        assert_eq!(canonicalize(q(4, [1, 4, 3, 2])).entries(), [1, 2, 3, 4]);
    }

    #[test]
    fn canonicalize_matches_oracle_on_all_orderings() {
        let n = 6;
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for d in 1..=n {
                        let Ok(s) = QuadSymbol::new(n, [a, b, c, d]) else {
                            continue;
                        };
                        assert_eq!(canonicalize(s).entries(), orbit_oracle([a, b, c, d]));
                    }
                }
            }
        }
    }

    #[test]
    fn canonicalize_is_idempotent_and_orbit_constant() {
        for c in enumerate_canonical(7).unwrap() {
            assert_eq!(canonicalize(c.symbol()), c);
            for m in c.symbol().dihedral_orbit() {
                assert_eq!(canonicalize(m), c);
            }
        }
    }

    #[test]
    fn shared_count_examples() {
        assert_eq!(shared_count(q(8, [1, 2, 3, 4]), q(8, [1, 2, 3, 5])), 3);
        assert_eq!(shared_count(q(8, [1, 2, 3, 4]), q(8, [1, 2, 4, 3])), 4);
        assert_eq!(shared_count(q(8, [1, 2, 3, 4]), q(8, [5, 6, 7, 8])), 0);
    }

    #[test]
    #[should_panic(expected = "different n")]
    fn shared_count_rejects_mixed_n() {
        shared_count(q(6, [1, 2, 3, 4]), q(7, [1, 2, 3, 4]));
    }

    #[test]
    fn classify_examples() {
        let c = |e| CanonicalSymbol::new(6, e).unwrap();
        assert_eq!(classify(c([1, 2, 3, 5])), GenClass::G1);
        assert_eq!(classify(c([2, 3, 5, 4])), GenClass::B1);
        assert_eq!(classify(c([1, 4, 3, 5])), GenClass::C1);
        assert_eq!(classify(c([1, 2, 4, 5])), GenClass::A1);
        assert_eq!(classify(c([2, 3, 4, 5])), GenClass::A3);
    }

    /// Each printed pattern, tested independently of the decision list, so
    /// overlaps or gaps would show up as a count mismatch.
    fn pattern_matches(class: GenClass, e: [usize; 4]) -> bool {
        let [a, b, x, d] = e;
        use GenClass::*;
        match class {
            G1 => a == 1 && b == 2 && x == 3 && 4 <= d,
            G2 => a == 1 && x == 2 && 3 <= b && b < d,
            G3 => a == 1 && 2 <= b && b < d && d < x,
            A1 => a == 1 && b == 2 && 4 <= x && x < d,
            A2 => a == 1 && 3 <= b && b < x && x < d,
            A3 => a == 2 && 3 <= b && b < x && x < d,
            A4 => 3 <= a && a < b && b < x && x < d,
            B1 => a == 2 && b == 3 && 4 <= d && d < x,
            B2 => a == 2 && 4 <= b && b < d && d < x,
            B3 => 3 <= a && a < b && b < d && d < x,
            C1 => a == 1 && x == 3 && 4 <= b && b < d,
            C2 => a == 1 && 4 <= x && x < b && b < d,
            C3 => a == 2 && 3 <= x && x < b && b < d,
            C4 => a == 3 && 4 <= x && x < b && b < d,
            C5 => 4 <= a && a < x && x < b && b < d,
        }
    }

    #[test]
    fn classes_are_exhaustive_and_disjoint_up_to_12() {
        for n in 4..=12 {
            let all = enumerate_canonical(n).unwrap();
            assert_eq!(all.len(), n * (n - 1) * (n - 2) * (n - 3) / 8);
            let mut basis = 0;
            for c in &all {
                let hits: Vec<GenClass> = GenClass::ALL
                    .into_iter()
                    .filter(|&k| pattern_matches(k, c.entries()))
                    .collect();
                assert_eq!(hits, vec![classify(*c)], "{c}");
                basis += classify(*c).is_basis() as usize;
            }
            assert_eq!(basis, n * (n - 1) * (n - 2) / 6 - 1);
        }
    }

    #[test]
    fn enumerate_small_cases() {
        let four: Vec<String> = enumerate_canonical(4)
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(four, ["(1 2 3 4)", "(1 2 4 3)", "(1 3 2 4)"]);
        assert_eq!(enumerate_canonical(5).unwrap().len(), 15);
        assert_eq!(enumerate_canonical(6).unwrap().len(), 45);
        assert!(enumerate_canonical(3).is_err());
    }

    #[test]
    fn three_canonical_symbols_per_subset() {
        let all = enumerate_canonical(7).unwrap();
        let mut counts = std::collections::HashMap::new();
        for c in all {
            *counts.entry(c.support()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 35);
        assert!(counts.values().all(|&v| v == 3));
    }

    #[test]
    fn parse_and_display() {
        let s = QuadSymbol::parse(12, "( 10 2 11  3 )").unwrap();
        assert_eq!(s.entries(), [10, 2, 11, 3]);
        assert_eq!(s.to_string(), "(10 2 11 3)");
        assert_eq!(QuadSymbol::parse(6, "(1234)").unwrap().entries(), [1, 2, 3, 4]);
        assert!(QuadSymbol::parse(6, "(1 2 3 3)").is_err());
        assert!(QuadSymbol::parse(6, "(1 2 3 7)").is_err());
        assert!(QuadSymbol::parse(6, "1 2 3 4").is_err());
    }

    #[test]
    fn diagonals_are_dihedral_invariant() {
        let s = q(6, [1, 2, 3, 4]);
        for m in s.dihedral_orbit() {
            let mut d = m.diagonals();
            d.sort();
            assert_eq!(d, [(1, 3), (2, 4)]);
        }
    }
}
