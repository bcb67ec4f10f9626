use lrc_core::exec::Sequential;
use lrc_core::hae::{
    build_conifold_frame, conifold_polar_part, frame_order, hae_lhs, hae_rhs, local_genus_one, relative_genus_one, solve_genus, solve_tower,
    Kind,
};
use lrc_core::locrel::{
    correction_value, elliptic_cache_for, enumerate_terms, solve_local, solve_local_genus_one, solve_relative, solve_relative_genus_one,
    Tower,
};
use lrc_core::mirror::{build_mirror_data, genus_zero_instantons, BModElement, GenusOne};
use lrc_core::rat::{ri, rq, Rat};
use lrc_core::Var;

fn bm(terms: &[(Rat, i32, i32)]) -> BModElement {
    BModElement::from_terms(0, terms)
}

fn local_f2() -> BModElement {
    bm(&[(rq(5, 8), 3, -1), (rq(1, 8), 2, 0), (rq(1, 96), 1, 1), (rq(1, 4320), 0, 2), (rq(1, 4320), 0, 1), (rq(-1, 2160), 0, 0)])
}

fn relative_f2() -> BModElement {
    bm(&[(rq(1, 384), 1, 1), (rq(-1, 360), 0, 2), (rq(1, 240), 0, 1), (rq(-1, 720), 0, 0)])
}

fn q_coeffs(e: &BModElement, n: i64) -> Vec<Rat> {
    let md = build_mirror_data(n + 2).unwrap();
    let s = e.eval(&md, Var::BigQ).unwrap();
    (1..=n).map(|d| s.coeff(d)).collect()
}

#[test]
fn genus_zero_invariants() {
    let md = build_mirror_data(7).unwrap();
    let n = genus_zero_instantons(&md).unwrap();
    let got: Vec<Rat> = (1..=5).map(|d| n.coeff(d)).collect();
    assert_eq!(got, vec![ri(3), rq(-45, 8), rq(244, 9), rq(-12333, 64), rq(211878, 125)]);
}

#[test]
fn genus_one_in_both_directions() {
    let md = build_mirror_data(12).unwrap();
    let (series, form) = solve_relative_genus_one(&GenusOne::local(), &md).unwrap();
    assert_eq!(form, relative_genus_one());
    let in_q = series.compose(&md.q_of_big_q).unwrap();
    assert_eq!(in_q.log_coeff(), &rq(-1, 24));
    let got: Vec<Rat> = (1..=5).map(|d| in_q.coeff(d)).collect();
    assert_eq!(got, vec![rq(7, 8), rq(-129, 16), rq(589, 6), rq(-43009, 32), rq(392691, 20)]);
    let (_, back) = solve_local_genus_one(&form, &md).unwrap();
    assert_eq!(back, GenusOne::local());
}

#[test]
fn genus_two_correction_terms() {
    let tower = Tower::new(relative_genus_one());
    let mut ell = elliptic_cache_for(2);
    let vals: Vec<BModElement> = enumerate_terms(2).iter().map(|t| correction_value(t, &tower, &mut ell, &Sequential).unwrap()).collect();
    let f10 = bm(&[(rq(-1, 16), 2, 0), (rq(5, 192), 1, 1), (rq(-1, 24), 1, 0), (rq(1, 96), 0, 2), (rq(-1, 96), 0, 1)]);
    let f22 = bm(&[(rq(9, 8), 3, -1), (rq(9, 16), 2, 0), (rq(47, 640), 1, 1), (rq(1, 40), 1, 0)]);
    let f211 = bm(&[
        (rq(-1, 2), 3, -1),
        (rq(-3, 8), 2, 0),
        (rq(-11, 120), 1, 1),
        (rq(1, 60), 1, 0),
        (rq(-1, 135), 0, 2),
        (rq(7, 1080), 0, 1),
        (rq(1, 1080), 0, 0),
    ]);
    assert_eq!(vals, vec![f10, f22, f211]);
}

#[test]
fn genus_two_correspondence() {
    let tower = Tower::new(relative_genus_one());
    let mut ell = elliptic_cache_for(2);
    let rel = solve_relative(2, &local_f2(), &tower, &mut ell, &Sequential).unwrap();
    assert_eq!(rel, relative_f2());
    assert_eq!(q_coeffs(&rel, 5), vec![rq(29, 640), rq(-207, 64), rq(18447, 160), rq(-526859, 160), rq(5385429, 64)]);
    let loc = solve_local(2, &rel, &tower, &mut ell, &Sequential).unwrap();
    assert_eq!(loc, local_f2());
}

#[test]
fn genus_two_anomaly_and_gap() {
    let kt = Tower::new(local_genus_one());
    let rt = Tower::new(relative_genus_one());
    assert_eq!(hae_lhs(&local_f2()), hae_rhs(2, Kind::Local, &kt).unwrap());
    assert_eq!(hae_lhs(&relative_f2()), hae_rhs(2, Kind::Relative, &rt).unwrap());
    let frame = build_conifold_frame(frame_order(2)).unwrap();
    let lp = conifold_polar_part(2, &local_f2(), &frame).unwrap();
    assert_eq!(lp[0], rq(-1, 80));
    assert_eq!(lp[1], Rat::from_integer(0.into()));
    let rp = conifold_polar_part(2, &relative_f2(), &frame).unwrap();
    assert_eq!(rp[0], rq(-7, 1920));
    assert_eq!(solve_genus(2, Kind::Local, &kt, &frame).unwrap(), local_f2());
    assert_eq!(solve_genus(2, Kind::Relative, &rt, &frame).unwrap(), relative_f2());
}

#[test]
fn genus_three_consistency_triangle() {
    let local = solve_tower(3, Kind::Local, local_genus_one()).unwrap();
    let relative = solve_tower(3, Kind::Relative, relative_genus_one()).unwrap();
    assert_eq!(relative.higher[&2], relative_f2());
    let mut ell = elliptic_cache_for(3);
    let lower = Tower { genus_one: relative_genus_one(), higher: [(2, relative_f2())].into_iter().collect() };
    let via_corr = solve_relative(3, &local.higher[&3], &lower, &mut ell, &Sequential).unwrap();
    let via_hae = &relative.higher[&3];
    assert_eq!(q_coeffs(&via_corr, 8), q_coeffs(via_hae, 8));
    assert_eq!(&via_corr, via_hae);
    let m = via_corr.to_qmod().unwrap();
    assert_eq!(m.weight(), Some(0));
    assert!(m.c_pole() <= 4);
    for (e, _) in m.terms() {
        assert!(e[1] <= 3, "B-degree {}", e[1]);
        assert!(e[0] + 2 * e[1] + 3 * (e[2] + 4) == 12);
    }
}

#[test]
fn round_trips_through_genus_three() {
    let local = solve_tower(3, Kind::Local, local_genus_one()).unwrap();
    let mut rel_tower = Tower::new(relative_genus_one());
    let mut ell = elliptic_cache_for(3);
    for g in 2..=3 {
        let r = solve_relative(g, &local.higher[&g], &rel_tower, &mut ell, &Sequential).unwrap();
        assert!(r.s_degree() <= 2 * g as i32 - 3);
        let l = solve_local(g, &r, &rel_tower, &mut ell, &Sequential).unwrap();
        assert_eq!(l, local.higher[&g]);
        rel_tower.higher.insert(g, r);
    }
}
