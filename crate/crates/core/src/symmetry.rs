//! The symmetric group acting on symbols by relabelling entries, and the
//! induced action on normal forms.

use std::fmt;

use crate::error::{Error, Result};
use crate::normal_form::{Element, NormalFormEngine};
use crate::quad::{canonicalize, CanonicalSymbol, QuadSymbol};

/// A permutation of `1..=n`, stored as the list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// Build from one-line notation `[σ(1), ..., σ(n)]`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Parse cycle notation such as `(1 2)(5 6)`; `()` is the identity.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self> {
        let mut images: Vec<usize> = (0..=n).collect();
        let mut moved = vec![false; n + 1];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("bad cycle notation {s:?}")))?;
            let cycle: Vec<usize> = body
                .0
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad cycle entry {t:?}")))
                })
                .collect::<Result<_>>()?;
            for (p, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || moved[x] {
                    return Err(Error::Parse(format!("bad or repeated entry {x} in {s:?}")));
                }
                moved[x] = true;
                images[x] = cycle[(p + 1) % cycle.len()];
            }
            rest = body.1.trim_start();
        }
        Ok(Self {
            images: images[1..].to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        Self {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Self { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.n() + 1];
        let mut wrote = false;
        for start in 1..=self.n() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x.to_string());
                x = self.apply(x);
            }
            write!(f, "({})", cycle.join(" "))?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Relabel the entries of a symbol, then take the canonical form.
pub fn act_symbol(sigma: &Permutation, q: QuadSymbol) -> Result<CanonicalSymbol> {
    if sigma.n() != q.n() {
        return Err(Error::DimensionMismatch {
            left: sigma.n(),
            right: q.n(),
        });
    }
    Ok(canonicalize(q.map_entries(|x| sigma.apply(x))?))
}

/// Act on an element through its normal-form word: every basis letter is
/// relabelled and re-evaluated, and the central factor is fixed.
pub fn act_element(
    engine: &NormalFormEngine,
    sigma: &Permutation,
    x: &Element,
) -> Result<Element> {
    let mut acc = if x.eps {
        engine.central()
    } else {
        engine.identity()
    };
    for letter in engine.normal_form_symbols(x) {
        let image = act_symbol(sigma, letter.symbol())?;
        acc = engine.mul(&acc, &engine.generator(image)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_parsing() {
        let p = Permutation::parse_cycles(6, "(1 2)(5 6)").unwrap();
        assert_eq!(p.images(), &[2, 1, 3, 4, 6, 5]);
        assert_eq!(p.to_string(), "(1 2)(5 6)");
        assert_eq!(Permutation::parse_cycles(4, "()").unwrap(), Permutation::identity(4));
        assert_eq!(Permutation::parse_cycles(4, "").unwrap(), Permutation::identity(4));
        assert!(Permutation::parse_cycles(4, "(1 5)").is_err());
        assert!(Permutation::parse_cycles(4, "(1 2)(2 3)").is_err());
        assert!(Permutation::from_images(vec![1, 1]).is_err());
    }

    #[test]
    fn composition_convention() {
        let s = Permutation::parse_cycles(3, "(1 2)").unwrap();
        let t = Permutation::parse_cycles(3, "(2 3)").unwrap();
        // s(t(2)) = s(3) = 3
        assert_eq!(s.compose(&t).apply(2), 3);
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(3));
    }

    #[test]
    fn relabel_symbol() {
        let s = Permutation::parse_cycles(5, "(1 5)").unwrap();
        let q = QuadSymbol::new(5, [1, 2, 3, 4]).unwrap();
        assert_eq!(act_symbol(&s, q).unwrap().entries(), [2, 3, 4, 5]);
    }
}
