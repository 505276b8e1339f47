//! A linear map from quadruple symbols to GF(2) chains on 3-subsets and
//! 2-subsets of `[n]`. Restricted to the minimal generating set it is
//! injective, which gives a second route to normal-form coordinates.

use crate::bits::{Echelon, Gf2Matrix, Gf2Vec};
use crate::error::{Error, Result};
use crate::normal_form::basis_key;
use crate::quad::{classify, enumerate_canonical, CanonicalSymbol, QuadSymbol};

/// Binomial coefficient for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Colexicographic rank of a sorted subset of `1..=n`: `Σ C(a_t - 1, t)`
/// with `t` counted from 1.
pub fn colex_index(sorted: &[usize]) -> usize {
    debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    sorted
        .iter()
        .enumerate()
        .map(|(t, &a)| binomial(a - 1, t + 1))
        .sum()
}

fn sorted_support(q: QuadSymbol) -> [usize; 4] {
    let mut s = q.entries();
    s.sort_unstable();
    s
}

/// The sum of the four 3-subsets of the support, as a vector of length
/// `C(n,3)`.
pub fn phi3(q: QuadSymbol) -> Gf2Vec {
    let n = q.n();
    let s = sorted_support(q);
    Gf2Vec::from_indices(
        binomial(n, 3),
        (0..4).map(|skip| {
            let mut t = [0usize; 3];
            let mut w = 0;
            for (p, &x) in s.iter().enumerate() {
                if p != skip {
                    t[w] = x;
                    w += 1;
                }
            }
            colex_index(&t)
        }),
    )
}

/// The two diagonals `{i,k} + {j,l}`, as a vector of length `C(n,2)`.
pub fn phi2(q: QuadSymbol) -> Gf2Vec {
    let n = q.n();
    Gf2Vec::from_indices(
        binomial(n, 2),
        q.diagonals().iter().map(|&(a, b)| {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            colex_index(&[lo, hi])
        }),
    )
}

/// `phi3 ⊕ phi2` concatenated into one vector.
pub fn phi(q: QuadSymbol) -> Gf2Vec {
    let a = phi3(q);
    let b = phi2(q);
    let mut out = Gf2Vec::zeros(a.len() + b.len());
    for i in a.ones() {
        out.set(i, true);
    }
    for i in b.ones() {
        out.set(a.len() + i, true);
    }
    out
}

/// Rank over GF(2) of the images of all canonical symbols.
pub fn image_rank(n: usize) -> Result<usize> {
    let all = enumerate_canonical(n)?;
    let rows: Vec<Gf2Vec> = all.iter().map(|c| phi(c.symbol())).collect();
    let cols = rows[0].len();
    Ok(Gf2Matrix::from_rows(cols, rows).rank())
}

/// Solves for coordinates against the images of the minimal generating set.
#[derive(Clone, Debug)]
pub struct HomologyMap {
    n: usize,
    basis: Vec<CanonicalSymbol>,
    echelon: Echelon,
}

impl HomologyMap {
    pub fn new(n: usize) -> Result<Self> {
        let mut basis: Vec<CanonicalSymbol> = enumerate_canonical(n)?
            .into_iter()
            .filter(|&c| classify(c).is_basis())
            .collect();
        basis.sort_by_key(|&c| basis_key(c));
        let rows: Vec<Gf2Vec> = basis.iter().map(|c| phi(c.symbol())).collect();
        let cols = rows[0].len();
        let echelon = Echelon::new(&Gf2Matrix::from_rows(cols, rows));
        if echelon.rank() != basis.len() {
            return Err(Error::RankDeficient {
                rank: echelon.rank(),
                expected: basis.len(),
            });
        }
        Ok(Self { n, basis, echelon })
    }

    pub fn basis(&self) -> &[CanonicalSymbol] {
        &self.basis
    }

    /// Coefficients `a` with `phi(q) = Σ a_t phi(X_t)` over the basis.
    pub fn lambda_coordinates(&self, q: QuadSymbol) -> Result<Gf2Vec> {
        if q.n() != self.n {
            return Err(Error::OutOfRange(format!("{q} for n = {}", self.n)));
        }
        self.echelon.solve(&phi(q))
    }
}
