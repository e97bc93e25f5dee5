use super::*;
use crate::ext::End;
use crate::field::{Field, PrimeField, RationalField};
use crate::poly::{parse_polynomial, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};

fn ring(names: &str, weights: &[u32]) -> Ring<RationalField> {
    let names = names.split(',').map(String::from).collect();
    PolyRing::new(names, weights.to_vec(), RationalField).unwrap()
}

fn polys<F: Field>(r: &Ring<F>, s: &[&str]) -> Vec<Polynomial<F>> {
    s.iter().map(|t| parse_polynomial(r, t).unwrap()).collect()
}

fn mono(e: &[u16]) -> Monomial {
    Monomial::new(e.to_vec())
}

#[test]
fn single_variable_basis() {
    let r = ring("x,y", &[1, 1]);
    let gb = buchberger(&r, &polys(&r, &["x"]), MonomialOrder::GRevLex).unwrap();
    assert_eq!(gb.elements(), polys(&r, &["x"]).as_slice());
}

#[test]
fn hand_computed_basis() {
    let r = ring("x,y", &[1, 1]);
    let gb = buchberger(&r, &polys(&r, &["x^2 - y^2", "x*y"]), MonomialOrder::GRevLex).unwrap();
    let mut leads = gb.lead_monomials().to_vec();
    leads.sort();
    let mut expected = vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 3])];
    expected.sort();
    assert_eq!(leads, expected);
    assert!(gb.certify());
}

#[test]
fn normal_forms() {
    let r = ring("x,y", &[1, 1]);
    let gb = buchberger(&r, &polys(&r, &["x"]), MonomialOrder::GRevLex).unwrap();
    assert!(gb.normal_form(&parse_polynomial(&r, "x^2").unwrap()).unwrap().is_zero());
    let y3 = parse_polynomial(&r, "y^3").unwrap();
    assert_eq!(gb.normal_form(&y3).unwrap(), y3);
    let other = ring("x,z", &[1, 1]);
    assert!(gb.normal_form(&other.var(0)).is_err());
}

#[test]
fn koszul_syzygy() {
    let r = ring("x,y", &[1, 1]);
    let syz = syzygies_of_polys(&polys(&r, &["x", "y"])).unwrap();
    assert_eq!(syz.len(), 1);
    assert_eq!(syz[0].degree(), Some(2));
    let c = syz[0].coords();
    // proportional to (-y, x)
    assert_eq!(&(&c[0] * &r.var(0)) + &(&c[1] * &r.var(1)), Polynomial::zero(&r));
    assert_eq!(c[0].len(), 1);
    assert_eq!(c[0].leading_term().unwrap().0, mono(&[0, 1]));
}

#[test]
fn syzygies_of_square_of_maximal_ideal() {
    let r = ring("x,y", &[1, 1]);
    let g = polys(&r, &["x^2", "x*y", "y^2"]);
    let syz = syzygies_of_polys(&g).unwrap();
    assert_eq!(syz.len(), 2);
    for s in &syz {
        assert_eq!(s.degree(), Some(3));
        assert!(s.dot(&g).unwrap().is_zero());
    }
    assert!(syzygies_of_polys(&polys(&r, &["x^2 + y^2"])).unwrap().is_empty());
}

#[test]
fn quotient_ends() {
    let r = ring("x,y", &[1, 1]);
    let end = |gens: &[&str]| IdealData::new(&r, polys(&r, gens)).unwrap().quotient_end();
    assert_eq!(end(&["x", "y"]), End::Finite(0));
    assert_eq!(end(&["x^2"]), End::PosInf);
    assert_eq!(end(&["1"]), End::NegInf);
    let r3 = PolyRing::standard("x", 3, RationalField).unwrap();
    let cubics: Vec<Polynomial<_>> = r3
        .monomials_of_degree(3)
        .into_iter()
        .map(|m| Polynomial::monomial(&r3, m, num_rational::BigRational::from_integer(1.into())))
        .collect();
    assert_eq!(IdealData::new(&r3, cubics).unwrap().quotient_end(), End::Finite(2));
}

#[test]
fn conic_kernel() {
    let s = ring("a,b,c", &[2, 2, 2]);
    let b = ring("x,y", &[1, 1]);
    let k = kernel_of_ring_map(&s, &b, &polys(&b, &["x^2", "x*y", "y^2"])).unwrap();
    assert_eq!(k.generators().len(), 1);
    let g = &k.generators()[0];
    let expected = parse_polynomial(&s, "b^2 - a*c").unwrap();
    assert!(g == &expected || g == &(-&expected));
    let gb = buchberger(&s, k.generators(), MonomialOrder::GRevLex).unwrap();
    assert_eq!(gb.elements().len(), 1);
}

#[test]
fn injective_and_twisted_cubic() {
    let s = ring("a", &[1]);
    let b = ring("x,y", &[1, 1]);
    let k = kernel_of_ring_map(&s, &b, &polys(&b, &["x"])).unwrap();
    assert!(k.generators().is_empty());

    let s = ring("a,b,c,d", &[3, 3, 3, 3]);
    let k = kernel_of_ring_map(&s, &b, &polys(&b, &["x^3", "x^2*y", "x*y^2", "y^3"])).unwrap();
    assert_eq!(k.generators().len(), 3);
    assert!(k.generators().iter().all(|g| g.homogeneous_degree() == Some(6)));
    assert!(kernel_of_ring_map(&s, &b, &polys(&b, &["x^2", "x*y", "y^2", "x^3"])).is_err());
}

#[test]
fn first_syzygy_degrees() {
    let r = ring("x,y", &[1, 1]);
    let t1 = |gens: &[&str]| t1_of_ideal(&IdealData::new(&r, polys(&r, gens)).unwrap()).unwrap();
    assert_eq!(t1(&["x^2"]), End::NegInf);
    assert_eq!(t1(&["x", "y"]), End::Finite(2));
    assert_eq!(t1(&["x^2", "x*y", "y^2"]), End::Finite(3));
    // redundant generators do not change the answer
    assert_eq!(t1(&["x", "y", "x + y", "x^2"]), End::Finite(2));
}

#[test]
fn subalgebra_membership() {
    let s = ring("u,v", &[1, 2]);
    let b = ring("x,y", &[1, 1]);
    let g = RingMapGraph::new(&s, &b, &polys(&b, &["x + y", "x*y"])).unwrap();
    let p = g
        .preimage(&parse_polynomial(&b, "x^2 + y^2").unwrap())
        .unwrap()
        .unwrap();
    assert_eq!(p, parse_polynomial(&s, "u^2 - 2*v").unwrap());
    assert!(g.preimage(&b.var(0)).unwrap().is_none());
}

#[test]
fn hilbert_numerators() {
    // k[x,y]/(x^2, xy, y^2): 1 + 2t
    let k = monomial_numerator(&[mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])], &[1, 1]);
    assert_eq!(hilbert_function(&k, &[1, 1], 4), vec![1, 2, 0, 0, 0]);
    assert_eq!(krull_dimension(&k, 2), Some(0));
    let k = monomial_numerator(&[mono(&[2, 0])], &[1, 1]);
    assert_eq!(krull_dimension(&k, 2), Some(1));
    assert_eq!(krull_dimension(&[], 2), None);
}

#[test]
fn regular_sequences_of_veronese_generators() {
    let f = PrimeField::new(32003).unwrap();
    let b = PolyRing::standard("x", 2, f).unwrap();
    let cands = polys(&b, &["x1^2", "x1*x2", "x2^2"]);
    let rs = regular_sequence(&b, &[], &cands, 100).unwrap().unwrap();
    assert_eq!(rs.indices, vec![0, 2]);
    assert_eq!(rs.end, End::Finite(2));
}

#[test]
fn module_basis_and_normal_form() {
    let r = ring("x,y", &[1, 1]);
    let e = |a: &str, b: &str| FreeModuleElement::new(vec![0, 1], polys(&r, &[a, b])).unwrap();
    let gens = vec![e("x^2", "y"), e("x*y", "x")];
    let gb = ModuleGroebnerBasis::new(&gens).unwrap();
    assert!(gb.certify());
    for g in &gens {
        assert!(gb.normal_form(g).unwrap().is_zero());
    }
    assert!(FreeModuleElement::new(vec![0, 0], polys(&r, &["x^2", "y"])).is_err());
}

fn homogeneous(r: &Ring<PrimeField>, d: i64, coeffs: &[i64]) -> Polynomial<PrimeField> {
    let terms = r
        .monomials_of_degree(d)
        .into_iter()
        .zip(coeffs)
        .map(|(m, &c)| (m, r.field().from_i64(c)));
    Polynomial::from_terms(r, terms)
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(100))]

    #[test]
    fn buchberger_bases_pass_the_s_pair_certificate(
        degrees in proptest::collection::vec(1i64..=3, 1..4),
        coeffs in proptest::collection::vec(-4i64..=4, 30),
    ) {
        let r = PolyRing::standard("x", 3, PrimeField::new(101).unwrap()).unwrap();
        let gens: Vec<_> = degrees
            .iter()
            .enumerate()
            .map(|(k, &d)| homogeneous(&r, d, &coeffs[k * 10..]))
            .filter(|p| !p.is_zero())
            .collect();
        proptest::prop_assume!(!gens.is_empty());
        let grevlex = buchberger(&r, &gens, MonomialOrder::GRevLex).unwrap();
        let lex = buchberger(&r, &gens, MonomialOrder::Lex).unwrap();
        proptest::prop_assert!(grevlex.certify());
        proptest::prop_assert!(lex.certify());
        // both bases generate the same ideal as the input
        for g in &gens {
            proptest::prop_assert!(grevlex.contains(g).unwrap());
            proptest::prop_assert!(lex.contains(g).unwrap());
        }
        for g in grevlex.elements() {
            proptest::prop_assert!(lex.contains(g).unwrap());
        }
        for g in lex.elements() {
            proptest::prop_assert!(grevlex.contains(g).unwrap());
        }
        // homogeneous ideals: the standard monomials count the same in each degree
        for d in 0..=5 {
            proptest::prop_assert_eq!(grevlex.standard_monomials(d).len(), lex.standard_monomials(d).len());
        }
    }
}
