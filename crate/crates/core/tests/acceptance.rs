//! Acceptance criteria 1–9: one PASS/FAIL line each.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use pdivisor::cli::input::{parse_form, ParsedForm};
use pdivisor::factor::{absolute_irreducibility, bivariate_factor, plane_curve_factor};
use pdivisor::finitefield::arith::is_prime;
use pdivisor::foliation::{chart_restrict, curve_multiplicity, eigen_ratio_at, singular_points, Chart, HomVectorField};
use pdivisor::foliation::{form_to_field, ProjOneForm};
use pdivisor::invariance::is_invariant_unchecked;
use pdivisor::jouanolou::{
    jouanolou_affine, jouanolou_form, m_of, make_jouanolou, non_p_closed_criterion, scan, two_divisor_closed_form,
    CriterionVerdict, ScanVerdict,
};
use pdivisor::multipoly::mat_mul;
use pdivisor::newton::gao_test;
use pdivisor::pdivisor::{expected_degree, is_p_closed, p_divisor, p_divisor_affine, p_divisor_section, pullback_check};
use pdivisor::{construct_field, FieldDescriptor, MultiPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn poly(f: &FieldDescriptor, s: &str) -> MultiPoly {
    MultiPoly::parse(f, 3, s).unwrap()
}

fn within(start: Instant, limit: Duration, detail: String) -> Check {
    let t = start.elapsed();
    ensure!(t <= limit, "took {:.2?}, limit {:?}", t, limit);
    Ok(format!("{detail} [{t:.2?}]"))
}

/// Δ(J₂) at p = 3.
fn criterion_1() -> Check {
    let start = Instant::now();
    let j = ok(make_jouanolou(2, 3, false), "J2")?;
    let div = ok(p_divisor(&j.form, &Default::default()), "p-divisor")?;
    let expected = poly(j.form.field(), "x^7 + y^7 + z^7 + 2*x^4*y*z^2 + 2*x^2*y^4*z + 2*x*y^2*z^4");
    ensure!(div.section.equal_up_to_scalar(&expected), "Δ = {}", div.section);
    ensure!(div.entries.len() == 1 && div.entries[0].1 == 1, "not irreducible: {:?}", div.as_map());
    ensure!(ok(absolute_irreducibility(&div.entries[0].0, 0), "absolute")?, "not absolutely irreducible");
    within(start, Duration::from_secs(1), format!("Δ = {}, irreducible, absolutely irreducible", div.section))
}

/// Δ(J₂) at p = 7: quartic plus a 7-fold line.
fn criterion_2() -> Check {
    let start = Instant::now();
    let j = ok(make_jouanolou(2, 7, false), "J2")?;
    let f = j.form.field().clone();
    let div = ok(p_divisor(&j.form, &Default::default()), "p-divisor")?;
    ensure!(div.total_degree == 11, "degree {}", div.total_degree);
    let quartic = poly(&f, "-3*x^3*z + x*y^3 + 2*y*z^3");
    let q = div.entries.iter().find(|(g, _)| g.degree() == Some(4));
    let l = div.entries.iter().find(|(g, _)| g.degree() == Some(1));
    ensure!(div.entries.len() == 2, "components {:?}", div.as_map());
    let (Some((q, 1)), Some((l, 7))) = (q, l) else {
        return Err(format!("structure {:?}", div.as_map()));
    };
    ensure!(q.equal_up_to_scalar(&quartic), "quartic {q}");
    // the printed "2x+y−3y" read with z in the last slot
    ensure!(l.equal_up_to_scalar(&poly(&f, "2*x + y - 3*z")), "line {l}");
    within(start, Duration::from_secs(2), format!("Δ = ({q}) + 7·({l}), line ∝ 2x+y−3z"))
}

/// Characteristic two: closedness for even d, closed form and Gao for odd d.
fn criterion_3() -> Check {
    let start = Instant::now();
    let f2 = construct_field(2, 1).unwrap();
    for d in (2..=20).step_by(2) {
        let w = ok(jouanolou_form(&f2, d), "J_d")?;
        ensure!(ok(is_p_closed(&w), "closedness")?, "J_{d} is not 2-closed");
    }
    let mut gao = Vec::new();
    for d in (3..=25).step_by(2) {
        let closed = ok(two_divisor_closed_form(d), "closed form")?;
        let direct = ok(p_divisor_affine(&jouanolou_affine(&f2, d), 2), "D_2")?;
        ensure!(direct.equal_up_to_scalar(&closed), "d = {d}: D_2 = {direct}");
        if d % 3 != 1 {
            ensure!(ok(gao_test(&closed), "gao")?.is_certified(), "d = {d}: Gao inconclusive");
            gao.push(d);
        }
    }
    within(start, Duration::from_secs(10), format!("even d ≤ 20 closed; odd d ≤ 25 closed form; Gao certified for {gao:?}"))
}

/// The p = 5 scan.
fn criterion_4() -> Check {
    let start = Instant::now();
    let rows = scan(5, 2, 27, 0);
    let f5 = construct_field(5, 1).unwrap();
    let xyz: BTreeSet<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    for d in [2, 14, 24] {
        let r = &rows[d as usize - 2];
        ensure!(r.verdict == ScanVerdict::Irreducible, "d = {d}: {:?}", r.verdict);
    }
    for (d, dc, ll) in [(6, 18, 2), (12, 39, 5), (17, 54, 7), (21, 63, 8), (27, 84, 11)] {
        let r = &rows[d as usize - 2];
        let ScanVerdict::Special { deg_c, l, r_part, special_verified, r_non_invariant } = &r.verdict else {
            return Err(format!("d = {d}: {:?}", r.verdict));
        };
        ensure!((*deg_c, *l) == (dc, ll), "d = {d}: (deg C, l) = ({deg_c}, {l})");
        let support: BTreeSet<String> = r_part.iter().map(|f| f.factor.clone()).collect();
        ensure!(support == xyz, "d = {d}: R = {support:?}");
        ensure!(*special_verified == Some(true), "d = {d}: special-pair test {special_verified:?}");
        ensure!(*r_non_invariant, "d = {d}: an R component is invariant");
        // recheck x, y, z individually
        let w = ok(jouanolou_form(&f5, d), "J_d")?;
        for v in 0..3 {
            let line = MultiPoly::var(&f5, 3, v);
            ensure!(ok(is_invariant_unchecked(&w, &line), "inv")?.is_none(), "d = {d}: {line} invariant");
        }
    }
    within(start, Duration::from_secs(600), "irreducible at 2, 14, 24; special rows match".into())
}

/// Power-map pullback, J₂, p = 3, n = 2.
fn criterion_5() -> Check {
    let start = Instant::now();
    let j = ok(make_jouanolou(2, 3, false), "J2")?;
    let f = j.form.field().clone();
    let r = ok(pullback_check(&j.form, 2, &Default::default()), "pullback")?;
    ensure!(r.equal, "Δ_G ≠ Φ*Δ_F + 3D: {:?}", r.delta_g.as_map());
    for v in 0..3 {
        let m = r.delta_g.multiplicity_of(&MultiPoly::var(&f, 3, v));
        ensure!(m == 3, "multiplicity of variable {v} is {m}");
    }
    let big = poly(&f, "x^14 + y^14 + z^14 + 2*x^8*y^2*z^4 + 2*x^4*y^8*z^2 + 2*x^2*y^4*z^8");
    ensure!(r.delta_g.multiplicity_of(&big) == 1, "degree-14 part missing: {:?}", r.delta_g.as_map());
    ensure!(r.delta_g.total_degree == 23, "deg Δ_G = {}", r.delta_g.total_degree);
    within(start, Duration::from_secs(5), "Δ_G = Φ*Δ_F + 3({x}+{y}+{z})".into())
}

const SECTION4_FORM: &str = include_str!("data/integer_form.txt");

/// Reduction modulo 5 of the integer form.
fn criterion_6() -> Check {
    let start = Instant::now();
    let ParsedForm::Integer(form) = ok(parse_form(SECTION4_FORM), "parse")? else {
        return Err("not an integer form".into());
    };
    ensure!(form.d == 2, "d = {}", form.d);
    let w = ok(form.reduce_mod_p(5, 1), "reduce")?;
    let f = w.field().clone();
    let div = ok(p_divisor(&w, &Default::default()), "p-divisor")?;
    let expected = poly(&f, "-2*x^3*z^6 - 2*x^2*y^2*z^5 + x*y^7*z + 2*x*y*z^7 + y^9 + y^6*z^3 + y^3*z^6 - z^9");
    ensure!(div.section.equal_up_to_scalar(&expected), "Δ = {}", div.section);
    ensure!(div.entries.len() == 1 && div.entries[0].1 == 1, "reducible: {:?}", div.as_map());
    let q = [1, 2, 1].map(|v| f.element(v));
    let mult = ok(curve_multiplicity(&div.section, &q), "multiplicity")?;
    ensure!(mult >= 2, "Δ has multiplicity {mult} at [1:2:1]");
    let fol_sing = w.components().iter().all(|c| c.evaluate(&[1, 2, 1]).unwrap() == 0);
    ensure!(!fol_sing, "the foliation is singular at [1:2:1]");
    let sing: Vec<String> = ok(singular_points(&w, 1), "singular points")?
        .iter()
        .map(|s| format!("[{}:{}:{}]", s.coords[0], s.coords[1], s.coords[2]))
        .collect();
    ensure!(
        sing == ["[0:1:0]"],
        "Δ, irreducibility and the [1:2:1] checks hold, but Sing over F_5 = {sing:?}, expected [\"[0:1:0]\"]"
    );
    within(start, Duration::from_secs(30), format!("Δ irreducible of degree 9; Sing = {sing:?}; m_[1:2:1](Δ) = {mult}"))
}

fn lie_power(v: &HomVectorField, f: &MultiPoly, e: u64) -> MultiPoly {
    (0..e).fold(f.clone(), |acc, _| v.apply(&acc))
}

/// (a), (b), (d), (e) for one non-closed foliation; returns false when closed.
fn divisor_properties(w: &ProjOneForm, label: &str) -> std::result::Result<bool, String> {
    let p = w.field().p();
    let s = ok(p_divisor_section(w), label)?;
    if s.is_zero() {
        return Ok(false);
    }
    let fact = ok(plane_curve_factor(&s, 0), label)?;
    ensure!(fact.expand() == s, "{label}: factorization does not reconstruct Δ");
    ensure!(fact.degree() == expected_degree(p, w.degree()), "{label}: deg Δ = {}", fact.degree());
    for (g, e) in &fact.factors {
        if *e as u64 % p != 0 {
            ensure!(ok(is_invariant_unchecked(w, g), label)?.is_some(), "{label}: component {g} (mult {e}) not invariant");
        }
    }
    for (chart, var) in [(Chart::X, 0), (Chart::Y, 1), (Chart::Z, 2)] {
        let local = ok(p_divisor_affine(&chart_restrict(w, chart), p as u32), label)?;
        let deh = s.dehomogenize(var).unwrap();
        ensure!(local.equal_up_to_scalar(&deh), "{label}: chart {chart:?} section not proportional");
    }
    Ok(true)
}

/// Property suite on random forms and the Jouanolou runs.
fn criterion_7() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f3 = construct_field(3, 1).unwrap();
    let mut open = 0;
    for i in 0..50 {
        let w = common::random_form(&mut rng, &f3, 2);
        if divisor_properties(&w, &format!("random form {i}"))? {
            open += 1;
        }
        // (c) Leibniz law for v^p
        let v = ok(form_to_field(&w), "field")?;
        let (da, db) = (rng.gen_range(1..4), rng.gen_range(1..4));
        let a = common::random_homogeneous(&mut rng, &f3, da);
        let b = common::random_homogeneous(&mut rng, &f3, db);
        let lhs = lie_power(&v, &(&a * &b), 3);
        let rhs = &(&lie_power(&v, &a, 3) * &b) + &(&a * &lie_power(&v, &b, 3));
        ensure!(lhs == rhs, "random form {i}: v^3 is not a derivation");
    }
    let mut runs = 0;
    for (d, p) in [(2, 3), (2, 7)] {
        let j = ok(make_jouanolou(d, p, false), "J")?;
        runs += divisor_properties(&j.form, &format!("J_{d}, p = {p}"))? as u32;
    }
    let f5 = construct_field(5, 1).unwrap();
    for d in 2..=27 {
        runs += divisor_properties(&ok(jouanolou_form(&f5, d), "J")?, &format!("J_{d}, p = 5"))? as u32;
    }
    let f2 = construct_field(2, 1).unwrap();
    for d in (3..=25).step_by(2) {
        runs += divisor_properties(&ok(jouanolou_form(&f2, d), "J")?, &format!("J_{d}, p = 2"))? as u32;
    }
    // (f) bivariate factorization against exhaustive divisor search
    let mut samples = 0;
    for p in [2u64, 3] {
        let f = construct_field(p, 1).unwrap();
        for _ in 0..150 {
            let g = random_bivariate(&mut rng, &f);
            if g.is_constant() {
                continue;
            }
            let ours = ok(bivariate_factor(&g, 0), "factor")?;
            ensure!(ours.expand() == g, "{g}: product mismatch");
            let brute = common::brute_force_factors(&g);
            ensure!(common::sorted_factors(&ours) == brute, "{g}: {:?} vs {:?}", ours.factors, brute);
            samples += 1;
        }
    }
    within(
        start,
        Duration::from_secs(600),
        format!("{open}/50 random forms not 3-closed; {runs} Jouanolou divisors; {samples} brute-force factorizations"),
    )
}

/// Degree ≤ 4, often a product so that reducible inputs are common.
fn random_bivariate<R: Rng>(rng: &mut R, f: &FieldDescriptor) -> MultiPoly {
    let shape = rng.gen_range(0..3);
    let mut one = |deg: u32| {
        let mut terms = Vec::new();
        for t in 0..=deg {
            for a in 0..=t {
                terms.push((pdivisor::Monomial::new(&[a, t - a]), rng.gen_range(0..f.order())));
            }
        }
        MultiPoly::from_terms(f, 2, terms)
    };
    match shape {
        0 => one(4),
        1 => {
            let a = one(2);
            &a * &one(2)
        }
        _ => {
            let a = one(1);
            let b = one(1);
            &(&a * &a) * &b
        }
    }
}

/// Automorphisms, singular points and the eigenvalue identity.
fn criterion_8() -> Check {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (d, p) in [(2u32, 3u64), (2, 5), (3, 2), (3, 5)] {
        let j = ok(make_jouanolou(d, p, true), "J")?;
        let m = m_of(d);
        let aut = ok(j.automorphism(), "automorphism")?;
        let big = aut.field.clone();
        let w = ok(j.extended_form(), "extended")?;
        let g = aut.gamma.value();
        let pulled = ok(w.pullback_linear(&aut.matrix), "pullback")?;
        for (a, b) in pulled.iter().zip(w.components()) {
            ensure!(*a == b.scale(g), "(d, p) = ({d}, {p}): Φ*ω ≠ γω");
        }
        // projective order of Φ
        let mut pw = aut.matrix.clone();
        let mut order = 1u64;
        while !(pw[0][1] == 0 && pw[0][0] == pw[1][1] && pw[1][1] == pw[2][2]) {
            pw = mat_mul(&big, &pw, &aut.matrix);
            order += 1;
            ensure!(order <= m, "(d, p) = ({d}, {p}): order exceeds {m}");
        }
        ensure!(order == m, "(d, p) = ({d}, {p}): order {order}");
        // Φ*Δ = Δ
        let s = ok(p_divisor_section(&w), "section")?;
        if s.is_zero() {
            notes.push(format!("J_{d} is {p}-closed"));
        } else {
            let t = ok(s.linear_substitute(&aut.matrix), "substitute")?;
            ensure!(t.equal_up_to_scalar(&s), "(d, p) = ({d}, {p}): Φ*Δ ≠ Δ");
        }
        // singular points and transitivity
        let pts = ok(j.singularities(), "singularities")?;
        ensure!(pts.len() as u64 == m, "(d, p) = ({d}, {p}): {} points", pts.len());
        let set: BTreeSet<[u64; 3]> = pts.iter().map(|s| s.coords.clone().map(|c| c.value())).collect();
        let mut orbit = BTreeSet::new();
        let mut cur = [1u64, 1, 1];
        for _ in 0..m {
            orbit.insert(cur);
            let img = [0, 1, 2].map(|i| big.mul(aut.matrix[i][i], cur[i]));
            let inv = big.inv(img[0]);
            cur = img.map(|c| big.mul(c, inv));
        }
        ensure!(orbit == set, "(d, p) = ({d}, {p}): the orbit of [1:1:1] is not Sing");
        if big.order() <= 1000 {
            let brute = ok(singular_points(&j.form, big.k()), "brute force")?;
            ensure!(brute.len() as u64 == m, "(d, p) = ({d}, {p}): exhaustive search finds {}", brute.len());
        }
        for s in &pts {
            let Some(a) = &s.eigen_ratio else {
                return Err(format!("(d, p) = ({d}, {p}): no eigenvalue ratio"));
            };
            let af = a.field();
            let lhs = af.from_u64(((d + 2) * (d + 2)) as u64);
            let sum = af.add(af.add(a.value(), af.inv(a.value())), af.from_u64(2));
            let rhs = af.mul(af.from_u64(m), sum);
            ensure!(lhs == rhs, "(d, p) = ({d}, {p}): Baum–Bott fails at {:?}", s.coords);
        }
    }
    within(start, Duration::from_secs(600), format!("all four instances; {}", notes.join(", ")))
}

/// The arithmetic criterion against direct computation.
fn criterion_9() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    let mut closed_despite = Vec::new();
    for p in [3u64, 5, 11, 13] {
        assert!(is_prime(p));
        let f = construct_field(p, 1).unwrap();
        for d in 2..=10u32 {
            let c = ok(non_p_closed_criterion(d, p), "criterion")?;
            if !c.hypotheses_hold {
                continue;
            }
            let w = ok(jouanolou_form(&f, d), "J")?;
            let closed = ok(is_p_closed(&w), "closedness")?;
            if c.verdict == CriterionVerdict::NotPClosed {
                ensure!(!closed, "(d, p) = ({d}, {p}): criterion says not p-closed, direct computation says closed");
            } else if closed {
                closed_despite.push((d, p));
            }
            // the discriminant class decides whether α lies in F_p
            let one = f.one();
            let alpha = ok(eigen_ratio_at(&w, &[one, one, one].map(|v| f.element(v))), "α")?;
            let in_fp = alpha.field().is_prime_subfield(alpha.value());
            let square = c.minus_three_is_square.unwrap_or(true);
            ensure!(square == in_fp, "(d, p) = ({d}, {p}): −3 square {square} but α ∈ F_p is {in_fp}");
            checked += 1;
        }
    }
    within(start, Duration::from_secs(120), format!("{checked} admissible (d, p); p-closed with no verdict: {closed_despite:?}"))
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Check); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = Vec::new();
    for (n, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {n}: PASS  {detail}"),
            Err(why) => {
                println!("criterion {n}: FAIL  {why}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
