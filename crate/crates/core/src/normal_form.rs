//! Normal forms in the plain group.
//!
//! Every element is written uniquely as `c^e X_1^{a_1} ... X_N^{a_N}` where
//! `X_1 < ... < X_N` is the minimal generating set in increasing order and
//! `c` is the central commutator of order two. An [`Element`] stores the
//! exponent bit `e` and the vector `a`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::bits::Gf2Vec;
use crate::error::{Error, Result};
use crate::presentation::GroupWord;
use crate::quad::{
    canonicalize, classify, enumerate_canonical, shared_count, CanonicalSymbol, GenClass,
    QuadSymbol,
};

/// `c^eps` times the ordered product of the basis generators set in `coeffs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub eps: bool,
    pub coeffs: Gf2Vec,
}

impl Element {
    pub fn identity(dim: usize) -> Self {
        Self {
            eps: false,
            coeffs: Gf2Vec::zeros(dim),
        }
    }

    pub fn central(dim: usize) -> Self {
        Self {
            eps: true,
            coeffs: Gf2Vec::zeros(dim),
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.eps && self.coeffs.is_zero()
    }

    /// Hex dump: central bit, then the coefficient vector.
    pub fn to_hex(&self) -> String {
        format!("{}:{}", self.eps as u8, self.coeffs.to_hex())
    }
}

/// Order on the minimal generating set: largest entry first, then
/// lexicographic.
pub fn basis_key(c: CanonicalSymbol) -> (usize, [usize; 4]) {
    (c.max_entry(), c.entries())
}

/// Decomposition templates: for every non-basis class, the central prefix
/// and the basis letters whose product equals the class representative.
/// Digits are literal entries; `i j k l` are bound from the symbol.
fn template(class: GenClass) -> Option<&'static str> {
    use GenClass::*;
    Some(match class {
        G1 | G2 | G3 => return None,
        A1 => "123k 12k3 123l 12l3 12lk",
        A2 => "12kj 1j2k 12lj 1j2l 1jlk",
        A3 => "1j2k 12lk 1j2l 1jlk",
        A4 => "12kj 1ikj 1j2k 12lj 1ilj 1ilk 1j2l 1jlk",
        B1 => "123k 123l 12lk 13lk",
        B2 => "123k 12k3 12kj 123l 12l3 12lj 12lk 1jlk",
        B3 => "12ki 1i2k 1ikj 12li 1i2l 1ilj 1ilk 1jlk",
        C1 => "123k 132k 12lk 13lk 1k2l",
        C2 => "123j 12j3 123k 12k3 12kj 1j2k 12lk 1jlk 1k2l",
        C3 => "1j2k 12lj 1jlk 1k2l",
        C4 => "123j 132j 123k 12kj 132k 13kj 1j2k 12lk 13lj 13lk 1jlk 1k2l",
        C5 => {
            "123j 12j3 12ji 1i2j 123k 12k3 12ki 12kj 1i2k 1ikj 1j2k 12lk 1ilj 1ilk 1jlk 1k2l"
        }
    })
}

/// Bind the template variables `(i, j, k, l)` for a canonical `(a b x d)`.
fn bindings(class: GenClass, [a, b, x, d]: [usize; 4]) -> [usize; 4] {
    use GenClass::*;
    // [i, j, k, l]; unused slots stay 0
    match class {
        A1 | A2 | A3 | A4 => [a, b, x, d],
        B1 | B2 | B3 => [a, b, d, x],
        C1 | C2 | C3 | C4 | C5 => [a, x, b, d],
        G1 | G2 | G3 => [0; 4],
    }
}

/// The minimal generating set with its multiplication rule, for one `n`.
#[derive(Clone, Debug)]
pub struct NormalFormEngine {
    n: usize,
    basis: Vec<CanonicalSymbol>,
    index: HashMap<CanonicalSymbol, usize>,
    /// `lower[a]` = basis positions `b < a` whose symbol shares exactly three
    /// entries with basis symbol `a`, i.e. the pairs that anticommute.
    lower: Vec<Gf2Vec>,
    decompositions: HashMap<CanonicalSymbol, (bool, Vec<usize>)>,
}

impl NormalFormEngine {
    pub fn new(n: usize) -> Result<Self> {
        let all = enumerate_canonical(n)?;
        let mut basis: Vec<CanonicalSymbol> = all
            .iter()
            .copied()
            .filter(|&c| classify(c).is_basis())
            .collect();
        basis.sort_by_key(|&c| basis_key(c));
        let index: HashMap<_, _> = basis.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dim = basis.len();
        let lower = (0..dim)
            .map(|a| {
                Gf2Vec::from_indices(
                    dim,
                    (0..a).filter(|&b| shared_count(basis[a].symbol(), basis[b].symbol()) == 3),
                )
            })
            .collect();
        let mut engine = Self {
            n,
            basis,
            index,
            lower,
            decompositions: HashMap::new(),
        };
        for c in all {
            let d = engine.compute_decomposition(c)?;
            engine.decompositions.insert(c, d);
        }
        Ok(engine)
    }

    fn compute_decomposition(&self, c: CanonicalSymbol) -> Result<(bool, Vec<usize>)> {
        let class = classify(c);
        let Some(tpl) = template(class) else {
            return Ok((false, vec![self.index[&c]]));
        };
        let vars = bindings(class, c.entries());
        let mut letters = Vec::new();
        for token in tpl.split(' ') {
            let mut entries = [0usize; 4];
            for (slot, ch) in entries.iter_mut().zip(token.chars()) {
                *slot = match ch {
                    'i' => vars[0],
                    'j' => vars[1],
                    'k' => vars[2],
                    'l' => vars[3],
                    digit => digit.to_digit(10).expect("template digit") as usize,
                };
            }
            let letter = canonicalize(QuadSymbol::new(self.n, entries)?);
            let pos = *self.index.get(&letter).ok_or_else(|| {
                Error::InvalidSymbol(format!("decomposition of {c} uses non-basis {letter}"))
            })?;
            letters.push(pos);
        }
        Ok((class.eps(), letters))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of basis generators, `C(n,3) - 1`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The minimal generating set in increasing order.
    pub fn basis(&self) -> &[CanonicalSymbol] {
        &self.basis
    }

    pub fn basis_index(&self, c: CanonicalSymbol) -> Option<usize> {
        self.index.get(&c).copied()
    }

    /// Whether the normal form map is known to be injective for this `n`.
    /// Below six the map still respects every relation but is only a
    /// quotient.
    pub fn is_faithful(&self) -> bool {
        self.n >= 6
    }

    /// The central exponent and basis positions (strictly increasing) whose
    /// ordered product equals the canonical generator `c`.
    pub fn decomposition(&self, c: CanonicalSymbol) -> Result<(bool, &[usize])> {
        if c.n() != self.n {
            return Err(Error::OutOfRange(format!("{c} for n = {}", self.n)));
        }
        let (eps, letters) = &self.decompositions[&c];
        Ok((*eps, letters))
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.dim())
    }

    pub fn central(&self) -> Element {
        Element::central(self.dim())
    }

    /// The element of a single canonical generator.
    pub fn generator(&self, c: CanonicalSymbol) -> Result<Element> {
        let (eps, letters) = self.decomposition(c)?;
        Ok(Element {
            eps,
            coeffs: Gf2Vec::from_indices(self.dim(), letters.iter().copied()),
        })
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: x.coeffs.len(),
                right: self.dim(),
            });
        }
        Ok(())
    }

    /// Parity of the number of anticommuting swaps needed to sort the
    /// concatenation `x y`: pairs `(a in x, b in y)` with `b < a` sharing
    /// three entries.
    pub fn circ(&self, x: &Gf2Vec, y: &Gf2Vec) -> bool {
        let mut d = Gf2Vec::zeros(self.dim());
        for a in x.ones() {
            d.xor_assign(&self.lower[a]);
        }
        d.dot(y)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element {
            eps: x.eps ^ y.eps ^ self.circ(&x.coeffs, &y.coeffs),
            coeffs: x.coeffs.xor(&y.coeffs),
        })
    }

    pub fn inverse(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(Element {
            eps: x.eps ^ self.circ(&x.coeffs, &x.coeffs),
            coeffs: x.coeffs.clone(),
        })
    }

    /// `x y x^-1 y^-1`, always central.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        let e = self.circ(&x.coeffs, &y.coeffs) ^ self.circ(&y.coeffs, &x.coeffs);
        Ok(Element {
            eps: e,
            coeffs: Gf2Vec::zeros(self.dim()),
        })
    }

    /// Order of an element: 1, 2 or 4.
    pub fn element_order(&self, x: &Element) -> Result<u32> {
        self.check(x)?;
        Ok(if x.coeffs.is_zero() {
            if x.eps {
                2
            } else {
                1
            }
        } else if self.circ(&x.coeffs, &x.coeffs) {
            4
        } else {
            2
        })
    }

    /// Evaluate a word whose letters are canonical generators.
    pub fn evaluate(&self, word: &GroupWord) -> Result<Element> {
        let mut acc = self.identity();
        for l in word.letters() {
            let g = self.generator(l.symbol)?;
            let g = if l.exp < 0 { self.inverse(&g)? } else { g };
            acc = self.mul(&acc, &g)?;
        }
        Ok(acc)
    }

    /// Order of the subgroup generated by the images of all canonical
    /// generators, as an exact power of two (`2^k` returned as `k`).
    pub fn image_order_log2(&self) -> usize {
        let dim = self.dim();
        let gens: Vec<Element> = self
            .decompositions
            .keys()
            .map(|&c| self.generator(c).expect("own generator"))
            .collect();
        let mut central_reached = gens.iter().any(|g| self.element_order(g).unwrap() == 4)
            || gens.iter().enumerate().any(|(a, x)| {
                gens[a + 1..]
                    .iter()
                    .any(|y| self.commutator(x, y).unwrap().eps)
            });
        // Elimination on the coefficient part, carrying the full group
        // element so a dependency reveals whether it lands on c.
        let mut pivots: Vec<(usize, Element)> = Vec::new();
        for g in gens {
            let mut g = g;
            for (col, p) in &pivots {
                if g.coeffs.get(*col) {
                    g = self.mul(&g, p).unwrap();
                }
            }
            match g.coeffs.first_one() {
                Some(col) => pivots.push((col, g)),
                None => central_reached |= g.eps,
            }
        }
        debug_assert!(pivots.len() <= dim);
        pivots.len() + central_reached as usize
    }

    /// Format an element as `c * (1 2 3 4) * (1 2 3 5)`; the identity is `1`.
    pub fn display<'a>(&'a self, x: &'a Element) -> impl fmt::Display + 'a {
        DisplayElement { engine: self, x }
    }

    /// The normal-form word of an element as a list of basis symbols.
    pub fn normal_form_symbols(&self, x: &Element) -> Vec<CanonicalSymbol> {
        x.coeffs.ones().map(|i| self.basis[i]).collect()
    }

    /// Exhaustive closure of the generator images, for small `n`.
    pub fn brute_force_image_order(&self, limit: usize) -> Option<usize> {
        let gens: Vec<Element> = self
            .decompositions
            .keys()
            .map(|&c| self.generator(c).unwrap())
            .collect();
        let mut seen: HashSet<Element> = HashSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = self.mul(&x, g).unwrap();
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    frontier.push(y);
                }
            }
        }
        Some(seen.len())
    }
}

struct DisplayElement<'a> {
    engine: &'a NormalFormEngine,
    x: &'a Element,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.x.eps {
            parts.push("c".into());
        }
        parts.extend(
            self.engine
                .normal_form_symbols(self.x)
                .iter()
                .map(|s| s.to_string()),
        );
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize, e: [usize; 4]) -> CanonicalSymbol {
        canonicalize(QuadSymbol::new(n, e).unwrap())
    }

    #[test]
    fn basis_order_six() {
        let e = NormalFormEngine::new(6).unwrap();
        let printed: Vec<String> = e
            .basis()
            .iter()
            .map(|c| c.entries().iter().map(|d| d.to_string()).collect())
            .collect();
        assert_eq!(
            printed.join(" "),
            "1234 1243 1324 1235 1253 1254 1325 1354 1425 1236 1263 1264 1265 1326 1364 1365 1426 1465 1526"
        );
    }

    #[test]
    fn dims() {
        for n in 4..=12 {
            let e = NormalFormEngine::new(n).unwrap();
            assert_eq!(e.dim(), n * (n - 1) * (n - 2) / 6 - 1);
        }
    }

    #[test]
    fn decompositions_strictly_increasing() {
        for n in 4..=11 {
            let e = NormalFormEngine::new(n).unwrap();
            for c in enumerate_canonical(n).unwrap() {
                let (_, letters) = e.decomposition(c).unwrap();
                assert!(
                    letters.windows(2).all(|w| w[0] < w[1]),
                    "{c} ({}) decomposes out of order",
                    classify(c)
                );
            }
        }
    }

    #[test]
    fn basic_circ() {
        let e = NormalFormEngine::new(5).unwrap();
        let x = e.generator(sym(5, [1, 2, 3, 5])).unwrap();
        let y = e.generator(sym(5, [1, 2, 3, 4])).unwrap();
        assert!(e.circ(&x.coeffs, &y.coeffs));
        assert!(!e.circ(&y.coeffs, &x.coeffs));
        assert_eq!(e.commutator(&x, &y).unwrap(), e.central());
        let xy = e.mul(&x, &y).unwrap();
        assert!(xy.eps);
        assert_eq!(e.display(&xy).to_string(), "c * (1 2 3 4) * (1 2 3 5)");
        assert_eq!(e.display(&e.identity()).to_string(), "1");
    }

    #[test]
    fn group_axioms_small() {
        let e = NormalFormEngine::new(6).unwrap();
        let gens: Vec<Element> = e.basis().iter().map(|&c| e.generator(c).unwrap()).collect();
        let x = e.mul(&gens[3], &gens[7]).unwrap();
        let y = e.mul(&gens[12], &gens[0]).unwrap();
        let z = gens[18].clone();
        let lhs = e.mul(&e.mul(&x, &y).unwrap(), &z).unwrap();
        let rhs = e.mul(&x, &e.mul(&y, &z).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(e.mul(&x, &e.inverse(&x).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn brute_force_matches_elimination() {
        let e4 = NormalFormEngine::new(4).unwrap();
        assert_eq!(e4.brute_force_image_order(1 << 12), Some(8));
        assert_eq!(e4.image_order_log2(), 3);
        let e5 = NormalFormEngine::new(5).unwrap();
        assert_eq!(e5.brute_force_image_order(1 << 12), Some(1 << 10));
        assert_eq!(e5.image_order_log2(), 10);
    }

    #[test]
    fn wrong_dimension_rejected() {
        let e = NormalFormEngine::new(6).unwrap();
        let bad = Element::identity(3);
        assert!(matches!(
            e.mul(&bad, &e.identity()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(e.generator(sym(7, [1, 2, 3, 7])).is_err());
    }
}
