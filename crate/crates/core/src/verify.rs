//! Exhaustive sweeps that check relations and commutator identities in the
//! normal-form representation, and the twelve case tables for pentagon
//! relators.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::normal_form::{Element, NormalFormEngine};
use crate::presentation::{pentagon_letters, Family, Presentation};
use crate::quad::{canonicalize, classify, enumerate_canonical, shared_count, GenClass, QuadSymbol};

/// Largest `n` the sweeps accept by default.
pub const DEFAULT_MAX_N: usize = 12;

/// Outcome of one sweep. `failures` is sorted and empty exactly on a pass.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub relator_family: String,
    pub n: usize,
    pub checked: usize,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn finish(family: &str, n: usize, checked: usize, mut failures: Vec<String>, start: Instant) -> Self {
        failures.sort();
        Self {
            relator_family: family.to_string(),
            n,
            checked,
            failures,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

fn check_range(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidN { n, min });
    }
    if n > DEFAULT_MAX_N {
        return Err(Error::OutOfRange(format!(
            "n = {n} exceeds the sweep limit {DEFAULT_MAX_N}"
        )));
    }
    Ok(())
}

/// Evaluate every relator instance of the selected families (before
/// deduplication: all squares, all commuting pairs, all ordered 5-tuples).
pub fn verify_relations(n: usize, families: &[Family]) -> Result<SweepReport> {
    check_range(n, 4)?;
    let start = Instant::now();
    let engine = NormalFormEngine::new(n)?;
    let raw = Presentation::gamma_raw(n)?;
    let selected: Vec<_> = raw
        .relators
        .iter()
        .filter(|w| raw.family_of(w).is_some_and(|f| families.contains(&f)))
        .collect();
    let failures: Vec<String> = selected
        .par_iter()
        .filter_map(|w| match engine.evaluate(w) {
            Ok(x) if x.is_identity() => None,
            Ok(x) => Some(format!("{w} = {}", engine.display(&x))),
            Err(e) => Some(format!("{w}: {e}")),
        })
        .collect();
    let mut names: Vec<String> = families.iter().map(|f| f.to_string()).collect();
    names.sort();
    names.dedup();
    Ok(SweepReport::finish(
        &names.join("+"),
        n,
        selected.len(),
        failures,
        start,
    ))
}

/// Every ordered pair of distinct canonical generators: the commutator is
/// the central element when they share exactly three entries and trivial
/// otherwise.
pub fn verify_commutator_classes(n: usize) -> Result<SweepReport> {
    check_range(n, 4)?;
    let start = Instant::now();
    let engine = NormalFormEngine::new(n)?;
    let gens = enumerate_canonical(n)?;
    let images: Vec<Element> = gens.iter().map(|&c| engine.generator(c)).collect::<Result<_>>()?;
    let central = engine.central();
    let failures: Vec<String> = (0..gens.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let (gens, images, engine, central) = (&gens, &images, &engine, &central);
            (0..gens.len()).filter(move |&b| b != a).filter_map(move |b| {
                let shared = shared_count(gens[a].symbol(), gens[b].symbol());
                let got = engine.commutator(&images[a], &images[b]).ok()?;
                let ok = if shared == 3 {
                    got == *central
                } else {
                    got.is_identity()
                };
                (!ok).then(|| {
                    format!(
                        "[{}, {}] (shared {shared}) = {}",
                        gens[a],
                        gens[b],
                        engine.display(&got)
                    )
                })
            })
        })
        .collect();
    let checked = gens.len() * (gens.len() - 1);
    Ok(SweepReport::finish("commutator-classes", n, checked, failures, start))
}

/// For every pair of distinct generators on the same four entries, their
/// product commutes with every generator.
pub fn verify_center_candidates(n: usize) -> Result<SweepReport> {
    check_range(n, 4)?;
    let start = Instant::now();
    let engine = NormalFormEngine::new(n)?;
    let gens = enumerate_canonical(n)?;
    let images: Vec<Element> = gens.iter().map(|&c| engine.generator(c)).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            if gens[a].support() == gens[b].support() {
                pairs.push((a, b));
            }
        }
    }
    let failures: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let z = engine.mul(&images[a], &images[b]).expect("same n");
            let (gens, images, engine) = (&gens, &images, &engine);
            (0..gens.len()).filter_map(move |t| {
                let got = engine.commutator(&z, &images[t]).ok()?;
                (!got.is_identity())
                    .then(|| format!("{}{} does not commute with {}", gens[a], gens[b], gens[t]))
            })
        })
        .collect();
    let checked = pairs.len() * gens.len();
    Ok(SweepReport::finish("center-candidates", n, checked, failures, start))
}

/// Two commutator identities over all ordered 6-tuples of distinct entries
/// `(i, j, k, l, m, p)`:
/// `[(iklp), (iklm)] = [(iklp), (ijkl)]` and `[(ikpl), (iklm)] = [(ikpl), (ijkl)]`.
pub fn verify_commutator_transport(n: usize) -> Result<SweepReport> {
    check_range(n, 6)?;
    let start = Instant::now();
    let engine = NormalFormEngine::new(n)?;
    let r = |e: [usize; 4]| -> Element {
        let c = canonicalize(QuadSymbol::new(n, e).expect("distinct entries"));
        engine.generator(c).expect("same n")
    };
    let tuples = ordered_tuples(n, 6);
    let failures: Vec<String> = tuples
        .par_iter()
        .flat_map_iter(|t| {
            let [i, j, k, l, m, p] = [t[0], t[1], t[2], t[3], t[4], t[5]];
            let iklm = r([i, k, l, m]);
            let ijkl = r([i, j, k, l]);
            let mut out = Vec::new();
            for (name, x) in [("(iklp)", r([i, k, l, p])), ("(ikpl)", r([i, k, p, l]))] {
                let lhs = engine.commutator(&x, &iklm).unwrap();
                let rhs = engine.commutator(&x, &ijkl).unwrap();
                if lhs != rhs {
                    out.push(format!("{name} identity fails at {t:?}"));
                }
            }
            out
        })
        .collect();
    Ok(SweepReport::finish(
        "commutator-transport",
        n,
        2 * tuples.len(),
        failures,
        start,
    ))
}

fn ordered_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 1..=n {
            if !cur.contains(&x) {
                cur.push(x);
                rec(n, len, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, len, &mut cur, &mut out);
    out
}

/// One row of a pentagon case table: a condition on the three smallest
/// entries, the classes of the five letters and the four pairing values
/// `x1∘x2, x1∘x3, x2∘x3, x5∘x4`.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub condition: &'static str,
    pub classes: &'static str,
    pub circ: &'static str,
}

/// A pentagon case table: the order in which the sorted entries
/// `i < j < k < l < m` fill the pentagon slots, and its rows.
#[derive(Clone, Copy, Debug)]
pub struct PentagonTable {
    pub order: &'static str,
    pub rows: &'static [TableRow],
}

macro_rules! rows {
    ($(($cond:literal, $classes:literal, $circ:literal)),* $(,)?) => {
        &[$(TableRow { condition: $cond, classes: $classes, circ: $circ }),*]
    };
}

pub const PENTAGON_TABLES: [PentagonTable; 12] = [
    PentagonTable {
        order: "ijklm",
        rows: rows![
            ("i=1,j=2,k=3", "G1 A1 A3 G1 A2", "0011"),
            ("i=1,j=2,k>=4", "A1 A1 A3 A1 A2", "0011"),
            ("i=1,j>=3", "A2 A2 A4 A2 A2", "0001"),
            ("i=2", "A3 A3 A4 A3 A3", "1011"),
            ("i>=3", "A4 A4 A4 A4 A4", "0100"),
        ],
    },
    PentagonTable {
        order: "ijkml",
        rows: rows![
            ("i=1,j=2,k=3", "G1 G3 B1 G1 G3", "0101"),
            ("i=1,j=2,k>=4", "A1 G3 B2 A1 G3", "0101"),
            ("i=1,j>=3", "A2 G3 B3 A2 G3", "0101"),
            ("i=2,j=3", "A3 B1 B3 A3 B2", "0011"),
            ("i=2,j>=4", "A3 B2 B3 A3 B2", "0011"),
            ("i>=3", "A4 B3 B3 A4 B3", "1001"),
        ],
    },
    PentagonTable {
        order: "ijlkm",
        rows: rows![
            ("i=1,j=2,k=3", "G3 G1 C3 A1 C1", "0011"),
            ("i=1,j=2,k>=4", "G3 A1 C3 A1 C2", "0011"),
            ("i=1,j=3", "G3 A2 C4 A2 C2", "0100"),
            ("i=1,j>=4", "G3 A2 C5 A2 C2", "0100"),
            ("i=2,j=3", "B1 A3 C4 A3 C3", "1000"),
            ("i=2,j>=4", "B2 A3 C5 A3 C3", "1000"),
            ("i=3", "B3 A4 C5 A4 C4", "1111"),
            ("i>=4", "B3 A4 C5 A4 C5", "1111"),
        ],
    },
    PentagonTable {
        order: "ijlmk",
        rows: rows![
            ("i=1,j=2,k=3", "A1 G3 B1 G3 G3", "1011"),
            ("i=1,j=2,k>=4", "A1 G3 B2 G3 G3", "1011"),
            ("i=1,j>=3", "A2 G3 B3 G3 G3", "1011"),
            ("i=2,j=3", "A3 B1 B3 B1 B2", "1100"),
            ("i=2,j>=4", "A3 B2 B3 B2 B2", "1100"),
            ("i>=3", "A4 B3 B3 B3 B3", "0010"),
        ],
    },
    PentagonTable {
        order: "ijmkl",
        rows: rows![
            ("i=1,j=2,k=3", "G3 G1 C3 G3 C1", "1101"),
            ("i=1,j=2,k>=4", "G3 A1 C3 G3 C2", "1101"),
            ("i=1,j=3", "G3 A2 C4 G3 C2", "1100"),
            ("i=1,j>=4", "G3 A2 C5 G3 C2", "1100"),
            ("i=2,j=3", "B1 A3 C4 B1 C3", "0111"),
            ("i=2,j>=4", "B2 A3 C5 B2 C3", "0111"),
            ("i=3", "B3 A4 C5 B3 C4", "0010"),
            ("i>=4", "B3 A4 C5 B3 C5", "0010"),
        ],
    },
    PentagonTable {
        order: "ijmlk",
        rows: rows![
            ("i=1,j=2", "G3 G3 A3 G3 A2", "1101"),
            ("i=1,j>=3", "G3 G3 A4 G3 A2", "1010"),
            ("i=2,j=3", "B1 B1 A4 B1 A3", "1110"),
            ("i=2,j>=4", "B2 B2 A4 B2 A3", "1110"),
            ("i>=3", "B3 B3 A4 B3 A4", "1010"),
        ],
    },
    PentagonTable {
        order: "ikjlm",
        rows: rows![
            ("i=1,j=2,k=3", "G2 A2 B1 G2 A1", "0000"),
            ("i=1,j=2,k>=4", "G2 A2 B2 G2 A1", "0000"),
            ("i=1,j=3", "C1 A2 B3 C1 A2", "1010"),
            ("i=1,j>=4", "C2 A2 B3 C2 A2", "1010"),
            ("i=2", "C3 A3 B3 C3 A3", "0101"),
            ("i=3", "C4 A4 B3 C4 A4", "0110"),
            ("i>=4", "C5 A4 B3 C5 A4", "0110"),
        ],
    },
    PentagonTable {
        order: "ikjml",
        rows: rows![
            ("i=1,j=2", "G2 G3 A3 G2 G3", "0011"),
            ("i=1,j=3", "C1 G3 A4 C1 G3", "0111"),
            ("i=1,j>=4", "C2 G3 A4 C2 G3", "0111"),
            ("i=2,j=3", "C3 B2 A4 C3 B1", "1101"),
            ("i=2,j>=4", "C3 B2 A4 C3 B2", "1101"),
            ("i=3", "C4 B3 A4 C4 B3", "0010"),
            ("i>=4", "C5 B3 A4 C5 B3", "0010"),
        ],
    },
    PentagonTable {
        order: "ikljm",
        rows: rows![
            ("i=1,j=2", "G3 G2 C3 A2 G2", "0011"),
            ("i=1,j=3", "G3 C1 C4 A2 C1", "0111"),
            ("i=1,j>=4", "G3 C2 C5 A2 C2", "0111"),
            ("i=2,j=3", "B1 C3 C4 A3 C3", "1010"),
            ("i=2,j>=4", "B2 C3 C5 A3 C3", "1010"),
            ("i=3", "B3 C4 C5 A4 C4", "1110"),
            ("i>=4", "B3 C5 C5 A4 C5", "1110"),
        ],
    },
    PentagonTable {
        order: "ikmjl",
        rows: rows![
            ("i=1,j=2", "G3 G2 C3 G3 G2", "1101"),
            ("i=1,j=3", "G3 C1 C4 G3 C1", "1111"),
            ("i=1,j>=4", "G3 C2 C5 G3 C2", "1111"),
            ("i=2,j=3", "B1 C3 C4 B2 C3", "0101"),
            ("i=2,j>=4", "B2 C3 C5 B2 C3", "0101"),
            ("i=3", "B3 C4 C5 B3 C4", "0011"),
            ("i>=4", "B3 C5 C5 B3 C5", "0011"),
        ],
    },
    PentagonTable {
        order: "iljkm",
        rows: rows![
            ("i=1,j=2,k=3", "G2 C1 B1 G2 G1", "0000"),
            ("i=1,j=2,k>=4", "G2 C2 B2 G2 A1", "0000"),
            ("i=1,j=3", "C1 C2 B3 C1 A2", "1001"),
            ("i=1,j>=4", "C2 C2 B3 C2 A2", "1001"),
            ("i=2", "C3 C3 B3 C3 A3", "0111"),
            ("i=3", "C4 C4 B3 C4 A4", "0111"),
            ("i>=4", "C5 C5 B3 C5 A4", "0111"),
        ],
    },
    PentagonTable {
        order: "ilkjm",
        rows: rows![
            ("i=1,j=2,k=3", "G1 G2 A3 C1 G2", "0011"),
            ("i=1,j=2,k>=4", "A1 G2 A3 C2 G2", "0011"),
            ("i=1,j=3", "A2 C1 A4 C2 C1", "0001"),
            ("i=1,j>=4", "A2 C2 A4 C2 C2", "0001"),
            ("i=2", "A3 C3 A4 C3 C3", "1010"),
            ("i=3", "A4 C4 A4 C4 C4", "1111"),
            ("i>=4", "A4 C5 A4 C5 C5", "1111"),
        ],
    },
];

/// Whether sorted entries `(i, j, k)` satisfy a row condition such as
/// `i=1,j>=3`.
pub fn row_matches(condition: &str, ijk: [usize; 3]) -> bool {
    condition.split(',').all(|clause| {
        let (var, op, value) = if let Some((v, x)) = clause.split_once(">=") {
            (v, ">=", x)
        } else {
            let (v, x) = clause.split_once('=').expect("row condition clause");
            (v, "=", x)
        };
        let value: usize = value.parse().expect("row condition value");
        let actual = match var {
            "i" => ijk[0],
            "j" => ijk[1],
            "k" => ijk[2],
            other => panic!("unknown variable {other} in row condition"),
        };
        if op == "=" {
            actual == value
        } else {
            actual >= value
        }
    })
}

/// The five pentagon letters for a table order and sorted entries.
pub fn table_letters(n: usize, order: &str, sorted: [usize; 5]) -> Result<[QuadSymbol; 5]> {
    let mut slots = [0usize; 5];
    for (slot, ch) in slots.iter_mut().zip(order.chars()) {
        *slot = sorted["ijklm".find(ch).expect("table order letter")];
    }
    pentagon_letters(n, slots)
}

/// Recompute classes and pairing values for every 5-subset of `1..=n` in
/// every table; check them against the rows, and check that each row sums
/// to zero.
pub fn verify_pentagon_tables_at(n: usize) -> Result<SweepReport> {
    check_range(n, 5)?;
    let start = Instant::now();
    let engine = NormalFormEngine::new(n)?;
    let mut subsets = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    for m in l + 1..=n {
                        subsets.push([i, j, k, l, m]);
                    }
                }
            }
        }
    }
    let jobs: Vec<(usize, [usize; 5])> = (0..PENTAGON_TABLES.len())
        .flat_map(|t| subsets.iter().map(move |&s| (t, s)))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .flat_map_iter(|&(t, s)| check_table_instance(&engine, t, s))
        .collect();
    Ok(SweepReport::finish("pentagon-tables", n, jobs.len(), failures, start))
}

/// The table check at the default size `n = 12`.
pub fn verify_pentagon_tables() -> Result<SweepReport> {
    verify_pentagon_tables_at(DEFAULT_MAX_N)
}

fn check_table_instance(engine: &NormalFormEngine, t: usize, s: [usize; 5]) -> Vec<String> {
    let table = &PENTAGON_TABLES[t];
    let label = format!("table {} at {:?}", t + 1, s);
    let matching: Vec<&TableRow> = table
        .rows
        .iter()
        .filter(|r| row_matches(r.condition, [s[0], s[1], s[2]]))
        .collect();
    let [row] = matching[..] else {
        return vec![format!("{label}: {} rows match", matching.len())];
    };
    let letters = table_letters(engine.n(), table.order, s).expect("distinct entries");
    let canon = letters.map(canonicalize);
    let classes = canon.map(classify);
    let images = canon.map(|c| engine.generator(c).expect("same n"));
    let circ = |a: usize, b: usize| engine.circ(&images[a].coeffs, &images[b].coeffs);
    let pairing = [circ(0, 1), circ(0, 2), circ(1, 2), circ(4, 3)];

    let mut out = Vec::new();
    let printed: Vec<GenClass> = row
        .classes
        .split(' ')
        .map(|c| c.parse().expect("table class"))
        .collect();
    for (p, (&got, &want)) in classes.iter().zip(&printed).enumerate() {
        if got != want {
            out.push(format!(
                "{label} row {}: x{} = {} is {got}, table says {want}",
                row.condition,
                p + 1,
                canon[p]
            ));
        }
    }
    let printed_circ: Vec<bool> = row.circ.chars().map(|c| c == '1').collect();
    if pairing[..] != printed_circ[..] {
        out.push(format!(
            "{label} row {}: pairings {:?}, table says {}",
            row.condition,
            pairing.map(u8::from),
            row.circ
        ));
    }
    let sum = classes.iter().fold(false, |acc, c| acc ^ c.eps()) ^ pairing.iter().fold(false, |a, &b| a ^ b);
    if sum {
        out.push(format!("{label} row {}: row sum is 1", row.condition));
    }
    out
}

/// Whether every report in a batch passed.
pub fn all_passed(reports: &[SweepReport]) -> bool {
    reports.iter().all(SweepReport::passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_conditions() {
        assert!(row_matches("i=1,j=2,k=3", [1, 2, 3]));
        assert!(!row_matches("i=1,j=2,k=3", [1, 2, 4]));
        assert!(row_matches("i=1,j>=3", [1, 5, 6]));
        assert!(row_matches("i>=3", [3, 4, 5]));
        assert!(!row_matches("i>=4", [3, 4, 5]));
    }

    #[test]
    fn table_slots() {
        let x = table_letters(6, "ijmlk", [1, 2, 3, 4, 5]).unwrap();
        // s t u v w = 1 2 5 4 3; x1 = (s t u v)
        assert_eq!(x[0].entries(), [1, 2, 5, 4]);
        assert_eq!(x[4].entries(), [1, 5, 4, 3]);
    }

    #[test]
    fn relation_counts_six() {
        let r = verify_relations(6, &[Family::Involutive]).unwrap();
        assert_eq!(r.checked, 45);
        assert!(r.passed());
        let r = verify_relations(6, &[Family::Pentagon]).unwrap();
        assert_eq!(r.checked, 720);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn commutators_six() {
        let r = verify_commutator_classes(6).unwrap();
        assert_eq!(r.checked, 45 * 44);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(verify_center_candidates(6).unwrap().passed());
    }

    #[test]
    fn out_of_range() {
        assert!(verify_relations(3, &Family::ALL).is_err());
        assert!(verify_relations(13, &Family::ALL).is_err());
        assert!(verify_commutator_transport(5).is_err());
    }
}
