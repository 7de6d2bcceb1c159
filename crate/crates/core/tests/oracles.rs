//! Known values checked against independent computations done here: brute
//! powering, term-by-term evaluation, enumeration, closed formulas.

use pdivisor::factor::{absolute_irreducibility, univariate_factor, FactorConfig};
use pdivisor::finitefield::{is_square_mod_p, nth_root_of_unity, pth_root};
use pdivisor::foliation::{chart_restrict, eigen_ratio_at, form_to_field, is_p_reduced, AffineVectorField, Chart, ProjOneForm};
use pdivisor::invariance::{beta_form, curve_orbit, is_invariant};
use pdivisor::jouanolou::{jouanolou_affine, jouanolou_form, make_jouanolou};
use pdivisor::pdivisor::{derivation_power_affine, divisor_order, expected_degree, p_divisor, p_divisor_section, pullback_check, DEFAULT_TERM_BUDGET};
use pdivisor::{construct_field, Error, FieldDescriptor, MultiPoly};

fn poly(f: &FieldDescriptor, n: usize, s: &str) -> MultiPoly {
    MultiPoly::parse(f, n, s).unwrap()
}

fn brute_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

#[test]
fn v_squared_matches_closed_formula() {
    for p in [2u64, 3, 101] {
        let f = construct_field(p, 1).unwrap();
        for d in 2u32..7 {
            let v = jouanolou_affine(&f, d);
            let v2 = derivation_power_affine(&v, 2, DEFAULT_TERM_BUDGET).unwrap();
            let (di, d1) = (d as i64, d);
            let ex = MultiPoly::from_int_terms(
                &f,
                2,
                &[(&[1, 2 * d1], di + 1), (&[0, d1], -1), (&[d1 + 1, d1 - 1], -di)],
            );
            let ey = MultiPoly::from_int_terms(
                &f,
                2,
                &[(&[0, 2 * d1 + 1], di + 1), (&[d1, d1], -(2 * di + 1)), (&[d1 - 1, 0], di)],
            );
            assert_eq!(v2.a, ex, "v²(x), d={d}, p={p}");
            assert_eq!(v2.b, ey, "v²(y), d={d}, p={p}");
        }
    }
}

#[test]
fn euler_field_is_its_own_pth_power() {
    for p in [2u64, 3, 5, 7] {
        let f = construct_field(p, 1).unwrap();
        let v = AffineVectorField { a: poly(&f, 2, "x"), b: MultiPoly::zero(&f, 2) };
        assert_eq!(derivation_power_affine(&v, p as u32, DEFAULT_TERM_BUDGET).unwrap(), v);
        let dx = AffineVectorField { a: MultiPoly::one(&f, 2), b: MultiPoly::zero(&f, 2) };
        let w = derivation_power_affine(&dx, p as u32, DEFAULT_TERM_BUDGET).unwrap();
        assert!(w.a.is_zero() && w.b.is_zero());
    }
}

#[test]
fn roots_of_unity_and_orders() {
    assert_eq!(brute_order(5, 7), 6);
    let f = construct_field(5, brute_order(5, 7) as u32).unwrap();
    assert_eq!(f.order(), 15625);
    let z = nth_root_of_unity(&f, 7).unwrap();
    assert_eq!(z.order(), 7);

    assert!(nth_root_of_unity(&construct_field(2, 1).unwrap(), 7).is_err());
    let z = nth_root_of_unity(&construct_field(2, 3).unwrap(), 7).unwrap();
    assert!(z.pow(7).is_one() && !z.is_one());
    assert!(nth_root_of_unity(&construct_field(7, 1).unwrap(), 7).is_err());

    let r = nth_root_of_unity(&construct_field(5, 1).unwrap(), 4).unwrap().value();
    assert!(r == 2 || r == 3);

    assert_eq!(make_jouanolou(2, 3, true).unwrap().k as u64, brute_order(3, 7));
    assert!(make_jouanolou(2, 7, true).is_err());
}

#[test]
fn subfield_membership_and_pth_roots() {
    let f = construct_field(5, 2).unwrap();
    let g = f.element(f.primitive_element());
    assert!(!g.is_in_subfield(1).unwrap());
    assert!(g.pow(6).is_in_subfield(1).unwrap());
    assert!(g.is_in_subfield(3).is_err());

    let f4 = construct_field(2, 2).unwrap();
    let g = f4.element(f4.primitive_element());
    assert_eq!(pth_root(&g), g.pow(2));
    assert_eq!(pth_root(&g).pow(2), g);
}

#[test]
fn quadratic_residues_by_enumeration() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
        let squares: Vec<u64> = (0..p).map(|x| x * x % p).collect();
        for a in -6i64..6 {
            let r = a.rem_euclid(p as i64) as u64;
            assert_eq!(is_square_mod_p(a, p).unwrap(), squares.contains(&r), "({a}, {p})");
        }
    }
    assert!(is_square_mod_p(-3, 2).is_err());
}

#[test]
fn divisor_of_j2_mod_3_by_term_summation() {
    let f = construct_field(3, 1).unwrap();
    let s = p_divisor_section(&jouanolou_form(&f, 2).unwrap()).unwrap();
    for pt in [[1u64, 1, 1], [1, 2, 0], [2, 1, 1], [0, 0, 1]] {
        let mut acc = 0u64;
        for (m, c) in s.terms() {
            let e = m.exps();
            let mut t = *c;
            for i in 0..3 {
                t = t * pt[i].pow(e[i]) % 3;
            }
            acc = (acc + t) % 3;
        }
        assert_eq!(s.evaluate(&pt).unwrap(), acc);
    }
    let cfg = FactorConfig::with_seed(0);
    let delta = p_divisor(&jouanolou_form(&f, 2).unwrap(), &cfg).unwrap();
    assert_eq!(divisor_order(&delta, &poly(&f, 3, "x"), &cfg).unwrap(), 0);
}

#[test]
fn j2_mod_7_splits_off_a_seventh_power() {
    let f = construct_field(7, 1).unwrap();
    let w = jouanolou_form(&f, 2).unwrap();
    let delta = p_divisor(&w, &FactorConfig::with_seed(0)).unwrap();
    let (l, e) = delta.entries.iter().find(|(g, _)| g.degree() == Some(1)).unwrap().clone();
    assert_eq!(e, 7);
    let quartic = delta.section.exact_div(&l.pow(7)).unwrap();
    assert_eq!(quartic.degree(), Some(4));
    assert!(is_invariant(&w, &quartic).unwrap().is_some());
    // p = d²+d+1: the seven singular points collapse to [1:1:1], where the
    // linear part is degenerate and no ratio exists; −3 is still a square
    let one = f.element(1);
    assert!(matches!(is_p_reduced(&w, &[one.clone(), one.clone(), one]), Err(Error::Precondition(_))));
    assert!(is_square_mod_p(-3, 7).unwrap());
}

#[test]
fn diagonal_substitution_scales_monomials() {
    let f = construct_field(2, 3).unwrap();
    let g = nth_root_of_unity(&f, 7).unwrap().value();
    let m = vec![vec![f.pow(g, 5), 0, 0], vec![0, g, 0], vec![0, 0, 1]];
    let c = poly(&f, 3, "x^2*z - y^3");
    let expected = &MultiPoly::monomial(&f, 3, &[2, 0, 1], f.pow(g, 10)) - &MultiPoly::monomial(&f, 3, &[0, 3, 0], f.pow(g, 3));
    assert_eq!(c.linear_substitute(&m).unwrap(), expected);
}

#[test]
fn jouanolou_components_are_coprime() {
    let f = construct_field(5, 1).unwrap();
    for d in 2..6 {
        let w = jouanolou_form(&f, d).unwrap();
        let [a, b, c] = w.components();
        assert!(a.gcd(b).unwrap().gcd(c).unwrap().is_constant());
    }
}

#[test]
fn cyclotomic_and_conjugate_factorizations() {
    let f5 = construct_field(5, 1).unwrap();
    let fact = univariate_factor(&poly(&f5, 1, "x^7 - 1"), 0).unwrap();
    let mut degs: Vec<u32> = fact.factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
    degs.sort();
    assert_eq!(degs, vec![1, brute_order(5, 7) as u32]);

    let f3 = construct_field(3, 1).unwrap();
    let q = poly(&f3, 2, "x^2 + y^2");
    assert!(univariate_factor(&poly(&f3, 1, "x^2 + 1"), 0).unwrap().is_irreducible());
    assert!(!absolute_irreducibility(&q, 0).unwrap());
    // the square root of −1 in F_9 gives the splitting
    let f9 = construct_field(3, 2).unwrap();
    let i = f9.elements().find(|&a| f9.mul(a, a) == f9.from_i64(-1)).unwrap();
    let q9 = poly(&f9, 2, "x^2 + y^2");
    let lin = &poly(&f9, 2, "x") + &poly(&f9, 2, "y").scale(i);
    assert!(q9.exact_div(&lin).is_ok());
}

#[test]
fn field_of_j2_over_f3_is_divergence_free() {
    let f = construct_field(3, 1).unwrap();
    let v = form_to_field(&jouanolou_form(&f, 2).unwrap()).unwrap();
    assert!(v.divergence().is_zero());
}

#[test]
fn pencil_restricts_to_radial_field() {
    let f = construct_field(5, 1).unwrap();
    let w = ProjOneForm::new(poly(&f, 3, "y"), poly(&f, 3, "-x"), MultiPoly::zero(&f, 3), 0).unwrap();
    let v = chart_restrict(&w, Chart::Z);
    assert!(v.a.equal_up_to_scalar(&poly(&f, 2, "x")) && v.b.equal_up_to_scalar(&poly(&f, 2, "y")));
    // same scalar on both components: the field is a multiple of x∂x + y∂y
    assert_eq!(v.a.leading_coefficient(), v.b.leading_coefficient());
}

#[test]
fn invariance_beta_and_orbits() {
    let f = construct_field(3, 1).unwrap();
    let w = jouanolou_form(&f, 2).unwrap();
    assert!(is_invariant(&w, &poly(&f, 3, "x")).unwrap().is_none());
    let s = p_divisor_section(&w).unwrap();
    let wit = is_invariant(&w, &s).unwrap().unwrap();
    assert!(beta_form(&w, &s, &wit).unwrap().is_zero());

    let j = make_jouanolou(2, 3, true).unwrap();
    let aut = j.automorphism().unwrap();
    let emb = f.extension(j.k).unwrap();
    assert_eq!(curve_orbit(&s.embed(&emb), &aut.matrix, 100).unwrap().curves.len(), 1);
    let line = poly(&aut.field, 3, "x + y");
    assert_eq!(curve_orbit(&line, &aut.matrix, 100).unwrap().curves.len(), 7);
    assert_eq!(curve_orbit(&poly(&aut.field, 3, "z"), &aut.matrix, 100).unwrap().curves.len(), 1);
}

#[test]
fn jouanolou_singularities_by_enumeration() {
    for (d, p) in [(2u32, 5u64), (2, 3), (3, 2)] {
        let j = make_jouanolou(d, p, true).unwrap();
        let pts = j.singularities().unwrap();
        let f = j.root_field().unwrap();
        let m = d as u64 * d as u64 + d as u64 + 1;
        let roots = f.elements().filter(|&a| a != 0 && f.pow(a, m) == 1).count();
        assert_eq!(pts.len(), roots);
        assert_eq!(pts.len() as u64, m);
        let w = j.extended_form().unwrap();
        for pt in &pts {
            let c: Vec<u64> = pt.coords.iter().map(|e| e.value()).collect();
            for comp in w.components() {
                assert_eq!(comp.evaluate(&c).unwrap(), 0);
            }
            // Baum–Bott: (d+2)² = (d²+d+1)(α + 1/α + 2)
            let a = eigen_ratio_at(&j.form, &pt.coords).unwrap();
            let ef = a.field();
            let lhs = ef.from_u64((d as u64 + 2).pow(2));
            let rhs = ef.mul(ef.from_u64(m), ef.add(ef.add(a.value(), ef.inv(a.value())), ef.from_u64(2)));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn automorphism_pulls_back_to_a_multiple() {
    let j = make_jouanolou(3, 2, true).unwrap();
    let aut = j.automorphism().unwrap();
    let w = j.extended_form().unwrap();
    let pulled = w.pullback_linear(&aut.matrix).unwrap();
    for (pc, c) in pulled.iter().zip(w.components()) {
        assert_eq!(*pc, c.scale(aut.gamma.value()));
    }
    assert_eq!(aut.order, 13);
}

#[test]
fn power_map_pullback_mod_5() {
    let f = construct_field(5, 1).unwrap();
    let r = pullback_check(&jouanolou_form(&f, 2).unwrap(), 2, &FactorConfig::with_seed(0)).unwrap();
    assert!(r.equal);
    assert_eq!(r.delta_g.total_degree, expected_degree(5, r.pulled_back_form.degree()));
}
