//! Holomorphic anomaly equations in the propagator `S`, and the boundary
//! conditions at the conifold that fix the holomorphic ambiguity.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::solve_overdetermined;
use crate::locrel::Tower;
use crate::mirror::{conifold_flat_coordinate, BModElement, GenusOne};
use crate::rat::{bernoulli_table, binomial, ri, rpow, rq, Rat};
use crate::series::{RatSeries, Var, EXACT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Local,
    Relative,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Local => "local",
            Kind::Relative => "relative",
        }
    }
}

/// `F_{g,n} = (Q d/dQ)^n F_g` for stable `(g, n)`.
pub fn f_gn(g: u32, n: u32, tower: &Tower) -> Result<BModElement> {
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::InvalidInput(format!("(g, n) = ({g}, {n}) is unstable")));
    }
    let mut e = match g {
        0 => tower.d_power(0, n)?.scale(&rpow(&ri(3), -(n as i64))),
        1 => {
            let mut e = tower.genus_one.derive_big_q();
            for _ in 1..n {
                e = e.derive_big_q();
            }
            return Ok(e);
        }
        _ => tower.d_power(g, 0)?,
    };
    if g >= 2 {
        for _ in 0..n {
            e = e.derive_big_q();
        }
    }
    Ok(e)
}

/// Right side of the anomaly equation for `F_{g,n}`:
/// `½ sum binom(n, n₁) F_{g₁,n₁+1} F_{g₂,n₂+1}` over stable splittings, plus `½ F_{g-1,n+2}` for the local theory.
pub fn hae_rhs_general(g: u32, n: u32, kind: Kind, tower: &Tower) -> Result<BModElement> {
    let mut acc = BModElement::zero(0);
    for g1 in 0..=g {
        let g2 = g - g1;
        for n1 in 0..=n {
            let n2 = n - n1;
            if (2 * g1 + n1) < 2 || (2 * g2 + n2) < 2 {
                continue;
            }
            let c = Rat::from_integer(binomial(n as i64, n1 as i64)) * rq(1, 2);
            let t = f_gn(g1, n1 + 1, tower)?.mul(&f_gn(g2, n2 + 1, tower)?).scale(&c);
            acc = acc.checked_add(&t)?;
        }
    }
    if kind == Kind::Local && g >= 1 {
        acc = acc.checked_add(&f_gn(g - 1, n + 2, tower)?.scale(&rq(1, 2)))?;
    }
    Ok(acc)
}

pub fn hae_rhs(g: u32, kind: Kind, tower: &Tower) -> Result<BModElement> {
    if g < 2 {
        return Err(Error::InvalidInput("the anomaly equation with n = 0 needs g >= 2".into()));
    }
    hae_rhs_general(g, 0, kind, tower)
}

/// Left side `(X / 3I₁₁²) ∂_S F`.
pub fn hae_lhs(f: &BModElement) -> BModElement {
    f.partial_s().mul(&BModElement::monomial(rq(1, 3), 0, 1, 2))
}

/// The ambiguity `span{1, X, ..., X^{2g-2}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguitySpace {
    pub g: u32,
    pub basis: Vec<BModElement>,
}

impl AmbiguitySpace {
    pub fn new(g: u32) -> Self {
        let basis = (0..=(2 * g as i32 - 2)).map(|j| BModElement::monomial(Rat::one(), 0, j, 0)).collect();
        AmbiguitySpace { g, basis }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Antiderivative in `S` of `(3I₁₁²/X) · rhs`, with the matching ambiguity.
pub fn integrate_s(rhs: &BModElement, g: u32) -> Result<(BModElement, AmbiguitySpace)> {
    if !rhs.is_zero() && rhs.i11_degree() != 2 {
        return Err(Error::NotInRing(format!("anomaly right side has I11 degree {}", rhs.i11_degree())));
    }
    let ds = rhs.mul(&BModElement::monomial(ri(3), 0, -1, -2));
    let mut f = BModElement::zero(0);
    for (&(s, x), c) in ds.terms() {
        f.add_term(s + 1, x, c / ri(s as i64 + 1));
    }
    Ok((f, AmbiguitySpace::new(g)))
}

/// Coordinates near the conifold point `u = 1 + 27q = 0`.
#[derive(Clone, Debug)]
pub struct ConifoldFrame {
    pub order: i64,
    pub t_hat: RatSeries,
    /// `u(t̂)`, variable `that`.
    pub u_of_t: RatSeries,
    pub s_con: RatSeries,
    pub x_con: RatSeries,
}

impl ConifoldFrame {
    /// Frame from any coordinate `t(u) = u + O(u²)`: `S = θ log(θt) - (X-1)/3` with `θ = (u-1) d/du`, `X = 1/u`.
    pub fn from_coordinate(t_hat: RatSeries) -> Result<Self> {
        let order = t_hat.order();
        let um1 = RatSeries::from_ints(Var::U, 0, &[-1, 1], EXACT);
        let w = um1.checked_mul(&t_hat.derivative()?)?;
        let tw = um1.checked_mul(&w.derivative()?)?;
        let x_con = RatSeries::monomial(Var::U, Rat::one(), -1, EXACT);
        let s_con = tw.checked_div(&w)?.checked_sub(&x_con.checked_sub(&RatSeries::one(Var::U, EXACT))?.scale(&rq(1, 3)))?;
        let u_of_t = t_hat.revert()?.with_var(Var::THat);
        Ok(ConifoldFrame { order, t_hat, u_of_t, s_con, x_con })
    }
}

pub fn build_conifold_frame(order: i64) -> Result<ConifoldFrame> {
    ConifoldFrame::from_coordinate(conifold_flat_coordinate(order))
}

/// The `t̂^{-(2g-2)}` target: `3^{g-1} γ_g`.
pub fn gap_target(g: u32, kind: Kind) -> Rat {
    let b = bernoulli_table(2 * g as usize)[2 * g as usize].clone();
    let gg = g as i64;
    let gamma = match kind {
        Kind::Local => b / ri(2 * gg * (2 * gg - 2)),
        Kind::Relative => {
            let p = ri(2).pow(2 * g as i32 - 1);
            -(&p - Rat::one()) / p * b.abs() / ri(2 * gg * (2 * gg - 1) * (2 * gg - 2))
        }
    };
    ri(3).pow(g as i32 - 1) * gamma
}

/// Laurent coefficients in `t̂` of a degree-zero element placed in the conifold frame.
/// Returns the series in `that`, starting at `t̂^{-pole}`.
pub fn conifold_expansion(e: &BModElement, frame: &ConifoldFrame, pole: i64) -> Result<RatSeries> {
    let mut acc = RatSeries::zero(Var::U, frame.order);
    for (&(s, x), c) in e.terms() {
        let t = frame.s_con.pow_int(s as i64)?.checked_mul(&frame.x_con.pow_int(x as i64)?)?;
        acc = acc.checked_add(&t.scale(c))?;
    }
    let reg = acc.shift(pole)?;
    if reg.valuation().is_some_and(|v| v < 0) {
        return Err(Error::DegreeBound(format!("conifold pole deeper than t^-{pole}")));
    }
    let composed = reg.compose(&frame.u_of_t)?;
    // Undo the u^pole factor in the new variable: divide by u(t̂)^pole.
    let u_pow = frame.u_of_t.shift(-1)?.pow_int(pole)?;
    composed.checked_div(&u_pow)?.shift(-pole)
}

/// The square boundary system for the ambiguity coefficients: vanishing `t̂^{-j}`
/// for `1 <= j <= 2g-3`, the gap target at `t̂^{-(2g-2)}`, and no constant term in
/// the large-volume expansion.
pub fn gap_system(
    g: u32,
    kind: Kind,
    particular: &BModElement,
    amb: &AmbiguitySpace,
    frame: &ConifoldFrame,
) -> Result<(Vec<Vec<Rat>>, Vec<Vec<Rat>>)> {
    if g < 2 {
        return Err(Error::InvalidInput("gap conditions need g >= 2".into()));
    }
    let pole = 2 * g as i64 - 2;
    let exps: Vec<RatSeries> = amb.basis.iter().map(|b| conifold_expansion(b, frame, pole)).collect::<Result<_>>()?;
    let p0 = conifold_expansion(particular, frame, pole)?;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Vec<Rat>> = Vec::new();
    for j in 1..pole {
        rows.push(exps.iter().map(|s| s.coeff(-j)).collect());
        rhs.push(alloc::vec![-p0.coeff(-j)]);
    }
    rows.push(exps.iter().map(|s| s.coeff(-pole)).collect());
    rhs.push(alloc::vec![gap_target(g, kind) - p0.coeff(-pole)]);
    rows.push(amb.basis.iter().map(large_volume_constant).collect());
    rhs.push(alloc::vec![-large_volume_constant(particular)]);
    Ok((rows, rhs))
}

/// Constant term of the `Q`-expansion, read off at `S = 0`, `X = 1`.
pub fn large_volume_constant(e: &BModElement) -> Rat {
    e.terms().filter(|(k, _)| k.0 == 0).map(|(_, c)| c.clone()).sum()
}

pub fn gap_fix(g: u32, kind: Kind, particular: &BModElement, amb: &AmbiguitySpace, frame: &ConifoldFrame) -> Result<BModElement> {
    let (rows, rhs) = gap_system(g, kind, particular, amb, frame)?;
    let sol = solve_overdetermined(&rows, &rhs, amb.dimension(), "conifold gap system")?;
    let mut f = particular.clone();
    for (b, c) in amb.basis.iter().zip(sol) {
        f = f.checked_add(&b.scale(&c[0]))?;
    }
    Ok(f)
}

/// Polar part of `f` in the frame: coefficients of `t̂^{-(2g-2)}, ..., t̂^{-1}`, then the constant.
pub fn conifold_polar_part(g: u32, f: &BModElement, frame: &ConifoldFrame) -> Result<Vec<Rat>> {
    let pole = 2 * g as i64 - 2;
    let e = conifold_expansion(f, frame, pole)?;
    Ok((-pole..=0).map(|j| e.coeff(j)).collect())
}

/// Whether `f` satisfies the gap conditions in `frame`.
pub fn satisfies_gap(g: u32, kind: Kind, f: &BModElement, frame: &ConifoldFrame) -> Result<bool> {
    let polar = conifold_polar_part(g, f, frame)?;
    let n = polar.len() - 1;
    Ok(polar[0] == gap_target(g, kind) && polar[1..n].iter().all(Zero::is_zero) && large_volume_constant(f).is_zero())
}

/// Frame order sufficient for genus `g`.
pub fn frame_order(g: u32) -> i64 {
    2 * g as i64 + 4
}

/// Checks the structural bounds of a solved free energy.
pub fn check_degree_bounds(g: u32, kind: Kind, f: &BModElement) -> Result<()> {
    let s_max = match kind {
        Kind::Local => 3 * g as i32 - 3,
        Kind::Relative => 2 * g as i32 - 3,
    };
    if f.s_degree() > s_max {
        return Err(Error::DegreeBound(format!("S-degree {} exceeds {s_max}", f.s_degree())));
    }
    for (&(s, x), _) in f.terms() {
        // X^{-(g-1)} times a polynomial of degree <= 3g-3 in S and X.
        let xs = x + g as i32 - 1;
        if xs < 0 || s + xs > 3 * g as i32 - 3 {
            return Err(Error::DegreeBound(format!("term S^{s} X^{x} outside X^-(g-1) R_(3g-3)")));
        }
    }
    if f.to_qmod().is_err() {
        return Err(Error::DegreeBound("not regular at the orbifold point".into()));
    }
    Ok(())
}

/// `hae_rhs -> integrate_s -> gap_fix`, with the degree bounds asserted.
pub fn solve_genus(g: u32, kind: Kind, tower: &Tower, frame: &ConifoldFrame) -> Result<BModElement> {
    let rhs = hae_rhs(g, kind, tower)?;
    let (p0, amb) = integrate_s(&rhs, g)?;
    let f = gap_fix(g, kind, &p0, &amb, frame)?;
    check_degree_bounds(g, kind, &f)?;
    Ok(f)
}

/// Solves genera `2..=gmax` in order, each one feeding the next anomaly equation.
pub fn solve_tower(gmax: u32, kind: Kind, genus_one: GenusOne) -> Result<Tower> {
    let mut tower = Tower::new(genus_one);
    if gmax < 2 {
        return Ok(tower);
    }
    let frame = build_conifold_frame(frame_order(gmax))?;
    for g in 2..=gmax {
        let f = solve_genus(g, kind, &tower, &frame)?;
        tower.higher.insert(g, f);
    }
    Ok(tower)
}

pub fn local_genus_one() -> GenusOne {
    GenusOne::local()
}

pub fn relative_genus_one() -> GenusOne {
    GenusOne { log_q: rq(-1, 24), log_i11: Rat::zero(), log_xinv: rq(1, 24) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;
    use crate::mirror::build_mirror_data;

    fn rel_tower() -> Tower {
        Tower::new(relative_genus_one())
    }

    #[test]
    fn targets() {
        assert_eq!(gap_target(2, Kind::Local), rq(-1, 80));
        assert_eq!(gap_target(2, Kind::Relative), rq(-7, 1920));
        assert_eq!(gap_target(3, Kind::Relative), ri(9) * rq(-31, 161280));
    }

    #[test]
    fn relative_genus_two_from_anomaly() {
        let tower = rel_tower();
        let rhs = hae_rhs(2, Kind::Relative, &tower).unwrap();
        let (p0, amb) = integrate_s(&rhs, 2).unwrap();
        assert_eq!(p0, BModElement::monomial(rq(1, 384), 1, 1, 0));
        assert_eq!(amb.dimension(), 3);
        let frame = build_conifold_frame(10).unwrap();
        let f = gap_fix(2, Kind::Relative, &p0, &amb, &frame).unwrap();
        let expect = BModElement::from_terms(0, &[(rq(1, 384), 1, 1), (rq(-1, 360), 0, 2), (rq(1, 240), 0, 1), (rq(-1, 720), 0, 0)]);
        assert_eq!(f, expect);
    }

    #[test]
    fn local_genus_two_from_anomaly() {
        let tower = Tower::new(GenusOne::local());
        let frame = build_conifold_frame(10).unwrap();
        let f = solve_genus(2, Kind::Local, &tower, &frame).unwrap();
        let expect = BModElement::from_terms(
            0,
            &[(rq(5, 8), 3, -1), (rq(1, 8), 2, 0), (rq(1, 96), 1, 1), (rq(1, 4320), 0, 2), (rq(1, 4320), 0, 1), (rq(-1, 2160), 0, 0)],
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn frame_satisfies_riccati() {
        // θS = -S² + (X-1)S/3 - X(X-1)/9 with θ = (u-1)d/du.
        let fr = build_conifold_frame(12).unwrap();
        let um1 = RatSeries::from_ints(Var::U, 0, &[-1, 1], EXACT);
        let ts = um1.checked_mul(&fr.s_con.derivative().unwrap()).unwrap();
        let one = RatSeries::one(Var::U, EXACT);
        let xm1 = fr.x_con.checked_sub(&one).unwrap();
        let r = fr.s_con.pow_int(2).unwrap().neg() + (&xm1 * &fr.s_con).scale(&rq(1, 3)) - (&fr.x_con * &xm1).scale(&rq(1, 9));
        assert!(ts.checked_sub(&r).unwrap().is_zero());
        assert_eq!(fr.t_hat.coeff(1), ri(1));
    }

    #[test]
    fn boundary_system_full_rank() {
        for kind in [Kind::Local, Kind::Relative] {
            let g1 = if kind == Kind::Local { local_genus_one() } else { relative_genus_one() };
            let tower = solve_tower(3, kind, g1).unwrap();
            let frame = build_conifold_frame(frame_order(4)).unwrap();
            for g in 2..=4 {
                let rhs = hae_rhs(g, kind, &tower).unwrap();
                let (p0, amb) = integrate_s(&rhs, g).unwrap();
                assert_eq!(amb.dimension(), 2 * g as usize - 1);
                let (rows, _) = gap_system(g, kind, &p0, &amb, &frame).unwrap();
                assert_eq!(rows.len(), amb.dimension());
                assert!(!determinant(&rows).is_zero(), "{} g={g}", kind.name());
            }
        }
    }

    #[test]
    fn local_genus_three_invariants() {
        let tower = solve_tower(3, Kind::Local, local_genus_one()).unwrap();
        let f3 = &tower.higher[&3];
        check_degree_bounds(3, Kind::Local, f3).unwrap();
        let md = build_mirror_data(6).unwrap();
        let s = f3.eval(&md, Var::BigQ).unwrap();
        assert_eq!(s.coeff(0), Rat::zero());
        assert_eq!(s.coeff(1), rq(1, 2016));
        assert_eq!(s.coeff(2), rq(1, 336));
        let frame = build_conifold_frame(frame_order(3)).unwrap();
        assert!(satisfies_gap(3, Kind::Local, f3, &frame).unwrap());
    }

    #[test]
    fn non_flat_frame_breaks_gap() {
        let rel = BModElement::from_terms(0, &[(rq(1, 384), 1, 1), (rq(-1, 360), 0, 2), (rq(1, 240), 0, 1), (rq(-1, 720), 0, 0)]);
        let good = build_conifold_frame(10).unwrap();
        assert!(satisfies_gap(2, Kind::Relative, &rel, &good).unwrap());
        let naive = ConifoldFrame::from_coordinate(RatSeries::monomial(Var::U, Rat::one(), 1, 10)).unwrap();
        assert!(!satisfies_gap(2, Kind::Relative, &rel, &naive).unwrap());
    }

    #[test]
    fn general_anomaly_identity() {
        // (X/3I₁₁²) ∂_S F_{g,n} equals the assembled right side for small (g, n).
        for kind in [Kind::Local, Kind::Relative] {
            let g1 = if kind == Kind::Local { local_genus_one() } else { relative_genus_one() };
            let tower = solve_tower(3, kind, g1).unwrap();
            for (g, n) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (1, 1), (1, 2)] {
                let lhs = hae_lhs(&f_gn(g, n, &tower).unwrap());
                let rhs = hae_rhs_general(g, n, kind, &tower).unwrap();
                assert!(lhs.checked_add(&rhs.scale(&ri(-1))).unwrap().is_zero(), "{} ({g},{n})", kind.name());
            }
        }
    }
}
