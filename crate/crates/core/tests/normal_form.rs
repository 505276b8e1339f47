use gamma4::homology::{self, HomologyMap};
use gamma4::normal_form::NormalFormEngine;
use gamma4::presentation::GroupWord;
use gamma4::quad::shared_count;
use gamma4::{canonicalize, classify, enumerate_canonical, CanonicalSymbol, Element, GenClass, Gf2Vec, QuadSymbol};

fn sym(n: usize, e: [usize; 4]) -> CanonicalSymbol {
    canonicalize(QuadSymbol::new(n, e).unwrap())
}

fn word_symbols(e: &NormalFormEngine, letters: &[usize]) -> Vec<String> {
    letters.iter().map(|&i| e.basis()[i].to_string()).collect()
}

#[test]
fn basis_is_a_prefix_across_n() {
    for n in 4..12 {
        let small = NormalFormEngine::new(n).unwrap();
        let big = NormalFormEngine::new(n + 1).unwrap();
        for (a, b) in small.basis().iter().zip(big.basis()) {
            assert_eq!(a.entries(), b.entries());
        }
    }
    let e5 = NormalFormEngine::new(5).unwrap();
    assert_eq!(e5.dim(), 9);
    assert!(NormalFormEngine::new(3).is_err());
}

#[test]
fn decomposition_examples() {
    let e = NormalFormEngine::new(6).unwrap();
    let (eps, w) = e.decomposition(sym(6, [1, 2, 4, 5])).unwrap();
    assert!(eps);
    assert_eq!(
        word_symbols(&e, w),
        ["(1 2 3 4)", "(1 2 4 3)", "(1 2 3 5)", "(1 2 5 3)", "(1 2 5 4)"]
    );
    let (eps, w) = e.decomposition(sym(6, [2, 3, 4, 5])).unwrap();
    assert!(!eps);
    assert_eq!(
        word_symbols(&e, w),
        ["(1 3 2 4)", "(1 2 5 4)", "(1 3 2 5)", "(1 3 5 4)"]
    );
    let (eps, w) = e.decomposition(sym(6, [1, 2, 3, 4])).unwrap();
    assert!(!eps);
    assert_eq!(w, &[0]);
}

#[test]
fn eps_on_classes() {
    assert!(classify(sym(6, [1, 2, 4, 5])).eps());
    assert!(!classify(sym(6, [2, 3, 4, 5])).eps());
    assert!(!classify(sym(6, [1, 2, 3, 4])).eps());
    let with_eps: Vec<GenClass> = GenClass::ALL.into_iter().filter(|c| c.eps()).collect();
    assert_eq!(
        with_eps,
        [GenClass::A1, GenClass::A2, GenClass::A4, GenClass::C2, GenClass::C3]
    );
}

#[test]
fn circ_and_products() {
    let e = NormalFormEngine::new(6).unwrap();
    let x = e.generator(sym(6, [1, 2, 3, 4])).unwrap();
    let y = e.generator(sym(6, [1, 2, 3, 5])).unwrap();
    let z = e.generator(sym(6, [1, 2, 4, 3])).unwrap();
    assert!(!e.circ(&x.coeffs, &y.coeffs));
    assert!(e.circ(&y.coeffs, &x.coeffs));
    assert!(!e.circ(&x.coeffs, &z.coeffs) && !e.circ(&z.coeffs, &x.coeffs));
    assert!(!e.circ(&x.coeffs, &e.identity().coeffs));

    let xy = e.mul(&x, &y).unwrap();
    assert_eq!(xy, Element { eps: false, coeffs: Gf2Vec::from_indices(19, [0, 3]) });
    assert_eq!(e.mul(&xy, &xy).unwrap(), e.central());
    assert_eq!(e.inverse(&xy).unwrap(), Element { eps: true, coeffs: xy.coeffs.clone() });
    assert_eq!(e.inverse(&x).unwrap(), x);
    assert_eq!(e.inverse(&e.identity()).unwrap(), e.identity());
    assert_eq!(e.element_order(&e.identity()).unwrap(), 1);
    assert_eq!(e.element_order(&x).unwrap(), 2);
    assert_eq!(e.element_order(&xy).unwrap(), 4);
    assert_eq!(e.element_order(&e.central()).unwrap(), 2);
}

#[test]
fn evaluation_examples() {
    let e = NormalFormEngine::new(6).unwrap();
    assert!(e.evaluate(&GroupWord::default()).unwrap().is_identity());
    let w = GroupWord::parse(6, "(1 2 3 4)(1 2 3 5)(1 2 3 4)(1 2 3 5)").unwrap();
    assert_eq!(e.evaluate(&w).unwrap(), e.central());
    assert_eq!(e.display(&e.evaluate(&w).unwrap()).to_string(), "c");
    for c in enumerate_canonical(6).unwrap() {
        let w = GroupWord::parse(6, &format!("{c}{c}")).unwrap();
        assert!(e.evaluate(&w).unwrap().is_identity());
    }
    let bad = GroupWord::parse(7, "(1 2 3 7)").unwrap();
    assert!(e.evaluate(&bad).is_err());
}

#[test]
fn commutator_examples() {
    let e = NormalFormEngine::new(8).unwrap();
    let g = |s| e.generator(sym(8, s)).unwrap();
    assert_eq!(e.commutator(&g([1, 2, 3, 4]), &g([1, 2, 3, 5])).unwrap(), e.central());
    assert!(e.commutator(&g([1, 2, 3, 4]), &g([5, 6, 7, 8])).unwrap().is_identity());
    let x = g([2, 4, 6, 8]);
    assert!(e.commutator(&x, &x).unwrap().is_identity());
}

#[test]
fn two_routes_to_generator_images() {
    for n in 4..=10 {
        let e = NormalFormEngine::new(n).unwrap();
        for c in enumerate_canonical(n).unwrap() {
            let (eps, letters) = e.decomposition(c).unwrap();
            assert_eq!(eps, classify(c).eps());
            let mut acc = if eps { e.central() } else { e.identity() };
            for &i in letters {
                acc = e.mul(&acc, &e.generator(e.basis()[i]).unwrap()).unwrap();
            }
            assert_eq!(acc, e.generator(c).unwrap(), "{c}");
        }
        for (i, &b) in e.basis().iter().enumerate() {
            assert_eq!(e.generator(b).unwrap().coeffs, Gf2Vec::unit(e.dim(), i));
        }
    }
}

#[test]
fn antisymmetric_part_counts_three_sharing_pairs() {
    let e = NormalFormEngine::new(7).unwrap();
    let gens: Vec<Element> = enumerate_canonical(7)
        .unwrap()
        .into_iter()
        .map(|c| e.generator(c).unwrap())
        .collect();
    for x in gens.iter().step_by(7) {
        for y in gens.iter().step_by(5) {
            let lhs = e.circ(&x.coeffs, &y.coeffs) ^ e.circ(&y.coeffs, &x.coeffs);
            let mut parity = false;
            for a in x.coeffs.ones() {
                for b in y.coeffs.ones() {
                    parity ^= shared_count(e.basis()[a].symbol(), e.basis()[b].symbol()) == 3;
                }
            }
            assert_eq!(lhs, parity);
        }
    }
}

#[test]
fn commutators_by_shared_count() {
    let n = 7;
    let e = NormalFormEngine::new(n).unwrap();
    let gens = enumerate_canonical(n).unwrap();
    for &x in &gens {
        for &y in &gens {
            let c = e
                .commutator(&e.generator(x).unwrap(), &e.generator(y).unwrap())
                .unwrap();
            match shared_count(x.symbol(), y.symbol()) {
                3 => assert_eq!(c, e.central(), "[{x}, {y}]"),
                _ => assert!(c.is_identity(), "[{x}, {y}]"),
            }
        }
    }
}

#[test]
fn image_orders() {
    for n in 6..=10 {
        let e = NormalFormEngine::new(n).unwrap();
        assert_eq!(e.image_order_log2(), homology::binomial(n, 3));
    }
    assert_eq!(NormalFormEngine::new(6).unwrap().image_order_log2(), 20);
    assert_eq!(NormalFormEngine::new(4).unwrap().image_order_log2(), 3);
    assert!(!NormalFormEngine::new(5).unwrap().is_faithful());
}

#[test]
fn homology_examples() {
    let q = QuadSymbol::new(6, [1, 2, 3, 4]).unwrap();
    let three: Vec<usize> = homology::phi3(q).ones().collect();
    let expected: Vec<usize> = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]
        .iter()
        .map(|s| homology::colex_index(s))
        .collect();
    assert_eq!(three, expected);
    let two: Vec<usize> = homology::phi2(q).ones().collect();
    assert_eq!(two, vec![homology::colex_index(&[1, 3]), homology::colex_index(&[2, 4])]);
    let swapped = QuadSymbol::new(6, [1, 2, 4, 3]).unwrap();
    let mut two: Vec<usize> = homology::phi2(swapped).ones().collect();
    two.sort();
    let mut want = vec![homology::colex_index(&[1, 4]), homology::colex_index(&[2, 3])];
    want.sort();
    assert_eq!(two, want);

    assert_eq!(homology::image_rank(6).unwrap(), 19);
    assert_eq!(homology::image_rank(4).unwrap(), 3);
    assert_eq!(homology::image_rank(10).unwrap(), 119);

    let h = HomologyMap::new(6).unwrap();
    let e = NormalFormEngine::new(6).unwrap();
    let coords = h.lambda_coordinates(QuadSymbol::new(6, [1, 2, 4, 5]).unwrap()).unwrap();
    assert_eq!(
        word_symbols(&e, &coords.ones().collect::<Vec<_>>()),
        ["(1 2 3 4)", "(1 2 4 3)", "(1 2 3 5)", "(1 2 5 3)", "(1 2 5 4)"]
    );
    let coords = h.lambda_coordinates(QuadSymbol::new(6, [2, 3, 4, 5]).unwrap()).unwrap();
    assert_eq!(
        word_symbols(&e, &coords.ones().collect::<Vec<_>>()),
        ["(1 3 2 4)", "(1 2 5 4)", "(1 3 2 5)", "(1 3 5 4)"]
    );
    assert_eq!(h.lambda_coordinates(q).unwrap(), Gf2Vec::unit(19, 0));
}

#[test]
fn relator_images_vanish_in_homology() {
    for n in 4..=7 {
        let p = gamma4::Presentation::gamma(n).unwrap();
        for w in &p.relators {
            let mut sum = Gf2Vec::zeros(homology::binomial(n, 3) + homology::binomial(n, 2));
            for l in w.letters() {
                sum.xor_assign(&homology::phi(l.symbol.symbol()));
            }
            assert!(sum.is_zero(), "{w}");
        }
    }
}
