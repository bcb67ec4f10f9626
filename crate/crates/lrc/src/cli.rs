//! Command-line surface.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrc_core::elliptic::{default_qorder, EllipticCache, Label};
use lrc_core::exec::Exec;
use lrc_core::hae::{build_conifold_frame, conifold_polar_part, frame_order, gap_target, hae_lhs, hae_rhs, local_genus_one, relative_genus_one, solve_tower, Kind};
use lrc_core::locrel::{elliptic_cache_for, solve_relative, solve_relative_genus_one, Tower};
use lrc_core::mirror::{build_mirror_data, genus_zero_instantons, GenusOne, MirrorData};
use lrc_core::ns::compare_ns_relative;
use lrc_core::quasimod::{generator_series, QModElement};
use lrc_core::{RatSeries, Var};

use crate::config::RunConfig;
use crate::criteria::{run_criterion, TITLES};
use crate::error::{AppError, AppResult};
use crate::omega::load_omega;
use crate::parallel::RayonExec;
use crate::report::{Report, Value};

#[derive(Debug, Parser)]
#[command(name = "lrc", version, about = "Exact local/relative Gromov-Witten series for P^2 and a smooth cubic")]
pub struct Cli {
    /// Flat `key = value` configuration file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output format: json, csv or text.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Truncation order in the mirror variable q.
    #[arg(long, global = true)]
    pub order: Option<i64>,
    /// Truncation order in the flat variable Q.
    #[arg(long = "q-order", global = true)]
    pub big_q_order: Option<i64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a single object.
    #[command(subcommand)]
    Compute(Compute),
    /// Solve the genus tower up to a genus.
    Solve(SolveArgs),
    /// Check identities and boundary conditions.
    #[command(subcommand)]
    Verify(Verify),
    /// Nekrasov-Shatashvili limit.
    #[command(subcommand)]
    Ns(Ns),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Local,
    Relative,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Local tower from the anomaly equation, then the local/relative correspondence.
    Locrel,
    /// Relative anomaly equation with the relative gap condition.
    Hae,
}

#[derive(Debug, Subcommand)]
pub enum Compute {
    Mirror,
    Local {
        #[arg(long)]
        genus: Option<u32>,
    },
    Relative {
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long, value_enum, default_value = "locrel")]
        method: Method,
    },
    Elliptic {
        #[arg(long)]
        h: u32,
        /// Comma-separated insertion degrees, e.g. `1,1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i32>,
    },
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub genus: Option<u32>,
    #[arg(long, value_enum, default_value = "both")]
    pub target: Target,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    Ramanujan,
    Hae {
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long, value_enum, default_value = "both")]
        target: Target,
    },
    Gap {
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long, value_enum, default_value = "both")]
        target: Target,
    },
    /// Runs the acceptance criteria (all, or a comma-separated subset).
    Acceptance {
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Ns {
    Compare {
        #[arg(long)]
        omega: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        gmax: u32,
        #[arg(long)]
        dmax: Option<u32>,
    },
}

/// Result of one invocation: exit status plus the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome { code, stdout: text, stderr: String::new() } } else { Outcome { code, stdout: String::new(), stderr: text } };
        }
    };
    match execute(&cli) {
        Ok(reports) => {
            let cfg = resolve_config(&cli).unwrap_or_default();
            let stdout: String = reports.iter().map(|r| r.render(cfg.format)).collect::<Vec<_>>().join("\n");
            let failed: Vec<String> = reports.iter().flat_map(|r| r.failures().into_iter().map(|c| c.name.clone())).collect();
            if failed.is_empty() {
                Outcome { code: 0, stdout, stderr: String::new() }
            } else {
                let e = AppError::Verification(failed.join("; "));
                Outcome { code: e.exit_code(), stdout, stderr: format!("{e}\n") }
            }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

pub fn resolve_config(cli: &Cli) -> AppResult<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    if let Some(f) = &cli.format {
        cfg.format = f.parse()?;
    }
    if let Some(o) = cli.order {
        cfg.q_order = o;
        if cli.big_q_order.is_none() && cfg.big_q_order > o {
            cfg.big_q_order = o;
        }
    }
    if let Some(o) = cli.big_q_order {
        cfg.big_q_order = o;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: &Cli) -> AppResult<Vec<Report>> {
    let cfg = resolve_config(cli)?;
    let exec = RayonExec::new(cfg.threads)?;
    let genus = |g: Option<u32>| g.unwrap_or(cfg.genus);
    match &cli.command {
        Command::Compute(Compute::Mirror) => Ok(vec![compute_mirror(&cfg)?]),
        Command::Compute(Compute::Local { genus: g }) => Ok(vec![compute_free_energy(&cfg, genus(*g), Kind::Local, Method::Hae, &exec)?]),
        Command::Compute(Compute::Relative { genus: g, method }) => Ok(vec![compute_free_energy(&cfg, genus(*g), Kind::Relative, *method, &exec)?]),
        Command::Compute(Compute::Elliptic { h, a }) => Ok(vec![compute_elliptic(&cfg, *h, a, &exec)?]),
        Command::Solve(s) => Ok(vec![solve(&cfg, genus(s.genus), s.target, &exec)?]),
        Command::Verify(Verify::Ramanujan) => Ok(vec![verify_ramanujan(&cfg)?]),
        Command::Verify(Verify::Hae { genus: g, target }) => Ok(vec![verify_hae(&cfg, genus(*g), *target, &exec)?]),
        Command::Verify(Verify::Gap { genus: g, target }) => Ok(vec![verify_gap(genus(*g), *target, &exec)?]),
        Command::Verify(Verify::Acceptance { only }) => {
            let ids: Vec<usize> = if only.is_empty() { (1..=TITLES.len()).collect() } else { only.clone() };
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > TITLES.len()) {
                return Err(AppError::Usage(format!("no acceptance criterion {bad}")));
            }
            Ok(ids.into_iter().map(|i| run_criterion(i, &exec)).collect())
        }
        Command::Ns(Ns::Compare { omega, gmax, dmax }) => {
            let path = omega.clone().or_else(|| cfg.omega.clone());
            Ok(vec![ns_compare(path, *gmax, dmax.unwrap_or(cfg.dmax), cfg.q_order, &exec)?])
        }
    }
}

fn genus_one_text(g: &GenusOne) -> String {
    format!("({}) log q + ({}) log I11 + ({}) log(1+27q)", g.log_q, g.log_i11, g.log_xinv)
}

/// Relative tower from the local one through the correspondence, genus by genus.
pub fn relative_by_correspondence<E: Exec>(gmax: u32, local: &Tower, exec: &E) -> AppResult<Tower> {
    let mut rel = Tower::new(relative_genus_one());
    if gmax < 2 {
        return Ok(rel);
    }
    let mut ell = elliptic_cache_for(gmax);
    for g in 2..=gmax {
        let f = solve_relative(g, &local.higher[&g], &rel, &mut ell, exec)?;
        rel.higher.insert(g, f);
    }
    Ok(rel)
}

fn relative_tower<E: Exec>(gmax: u32, method: Method, exec: &E) -> AppResult<Tower> {
    match method {
        Method::Hae => Ok(solve_tower(gmax, Kind::Relative, relative_genus_one())?),
        Method::Locrel => relative_by_correspondence(gmax, &solve_tower(gmax, Kind::Local, local_genus_one())?, exec),
    }
}

/// `Q`-series of the genus-`g` free energy without its logarithmic and classical parts.
fn big_q_series(tower: &Tower, kind: Kind, g: u32, md: &MirrorData) -> AppResult<RatSeries> {
    Ok(match g {
        0 => genus_zero_instantons(md)?,
        1 => {
            let local = GenusOne::local();
            let s = match kind {
                Kind::Local => local.to_series(md)?,
                Kind::Relative => solve_relative_genus_one(&local, md)?.0,
            };
            s.compose(&md.q_of_big_q)?
        }
        _ => tower.higher[&g].eval(md, Var::BigQ)?,
    })
}

fn compute_mirror(cfg: &RunConfig) -> AppResult<Report> {
    let md = build_mirror_data(cfg.q_order)?;
    let mut r = Report::new(format!("mirror data to q^{}", cfg.q_order));
    r.item("I11", Value::Series(md.i11.clone()));
    r.item("J", Value::Series(md.j.clone()));
    r.item("X", Value::Series(md.x.clone()));
    r.item("S", Value::Series(md.s.clone()));
    r.item("Q(q)", Value::Series(md.big_q_of_q.clone()));
    r.item("q(Q)", Value::Series(md.q_of_big_q.truncate(cfg.big_q_order)));
    r.item("cQ(q)", Value::Series(md.cq_of_q.clone()));
    r.item("t_hat(u)", Value::Series(md.t_hat.clone()));
    Ok(r)
}

fn compute_free_energy<E: Exec>(cfg: &RunConfig, g: u32, kind: Kind, method: Method, exec: &E) -> AppResult<Report> {
    let tower = match kind {
        Kind::Local => solve_tower(g, Kind::Local, local_genus_one())?,
        Kind::Relative => relative_tower(g, method, exec)?,
    };
    let conditional = kind == Kind::Relative && method == Method::Hae && g >= 3;
    let mut r = Report::new(format!("{} F_{g}{}", kind.name(), if conditional { " (conditional on gap)" } else { "" }));
    match g {
        0 => {}
        1 => {
            let form = if kind == Kind::Local { GenusOne::local() } else { relative_genus_one() };
            r.item("F1", Value::Text(genus_one_text(&form)));
        }
        _ => {
            r.item(format!("F{g}"), Value::BMod(tower.higher[&g].clone()));
            r.item(format!("F{g} in A, B, C"), Value::QMod(tower.higher[&g].to_qmod()?));
        }
    }
    let md = build_mirror_data(cfg.big_q_order + 2)?;
    r.item(format!("F{g} in Q"), Value::Series(big_q_series(&tower, kind, g, &md)?.truncate(cfg.big_q_order)));
    Ok(r)
}

fn compute_elliptic<E: Exec>(cfg: &RunConfig, h: u32, a: &[i32], exec: &E) -> AppResult<Report> {
    let label = Label::new(h, a);
    if !label.is_regular() {
        return Err(AppError::Usage(format!("label {} needs entries >= 0 summing to 2h - 2", crate::format::label_text(&label))));
    }
    let w = label.weight().max(0) as u32;
    let mut cache = EllipticCache::new(default_qorder(w).max(cfg.cq_order));
    let v = cache.value(&label, exec)?;
    let s = cache.connected_series(&label.canonical(), exec)?;
    let mut r = Report::new(crate::format::label_text(&label));
    r.item("E2, E4, E6 form", Value::EPoly(v));
    r.item("Qt-series", Value::Series(s));
    Ok(r)
}

fn solve<E: Exec>(cfg: &RunConfig, g: u32, target: Target, exec: &E) -> AppResult<Report> {
    let mut r = Report::new(format!("towers through genus {g}"));
    let md = build_mirror_data(cfg.big_q_order + 2)?;
    let local = solve_tower(g, Kind::Local, local_genus_one())?;
    if target != Target::Relative {
        for k in 2..=g {
            r.item(format!("local F{k}"), Value::BMod(local.higher[&k].clone()));
            r.item(format!("local F{k} in Q"), Value::Series(big_q_series(&local, Kind::Local, k, &md)?.truncate(cfg.big_q_order)));
        }
    }
    if target != Target::Local {
        let rel = relative_by_correspondence(g, &local, exec)?;
        for k in 2..=g {
            r.item(format!("relative F{k}"), Value::BMod(rel.higher[&k].clone()));
            r.item(format!("relative F{k} in Q"), Value::Series(big_q_series(&rel, Kind::Relative, k, &md)?.truncate(cfg.big_q_order)));
        }
        if target == Target::Both {
            let hae = solve_tower(g, Kind::Relative, relative_genus_one())?;
            for k in 2..=g {
                r.check(
                    format!("consistency triangle at genus {k}{}", if k >= 3 { " (conditional on gap)" } else { "" }),
                    hae.higher[&k] == rel.higher[&k],
                    "correspondence route equals relative anomaly route",
                );
            }
        }
    }
    Ok(r)
}

fn verify_ramanujan(cfg: &RunConfig) -> AppResult<Report> {
    let n = cfg.q_order;
    let g = generator_series(n)?;
    let mut r = Report::new(format!("Ramanujan identities to order {n}"));
    for (name, x, s) in [("A", QModElement::gen_a(), &g.a), ("B", QModElement::gen_b(), &g.b), ("C", QModElement::gen_c(), &g.c)] {
        let d = x.derive();
        r.item(format!("d{name}"), Value::QMod(d.clone()));
        r.check(format!("d{name}"), d.to_qseries(&g)?.agrees_to(&s.theta(), n), format!("exact to cQ^{n}"));
    }
    Ok(r)
}

fn kinds(target: Target) -> Vec<Kind> {
    match target {
        Target::Local => vec![Kind::Local],
        Target::Relative => vec![Kind::Relative],
        Target::Both => vec![Kind::Local, Kind::Relative],
    }
}

/// The local tower comes from the anomaly equation; the relative one from the
/// correspondence, so the relative checks are independent of the relative solver.
fn towers_for<E: Exec>(g: u32, exec: &E) -> AppResult<(Tower, Tower)> {
    let local = solve_tower(g, Kind::Local, local_genus_one())?;
    let rel = relative_by_correspondence(g, &local, exec)?;
    Ok((local, rel))
}

fn verify_hae<E: Exec>(_cfg: &RunConfig, g: u32, target: Target, exec: &E) -> AppResult<Report> {
    if g < 2 {
        return Err(AppError::Usage("verify hae needs --genus >= 2".into()));
    }
    let (local, rel) = towers_for(g, exec)?;
    let mut r = Report::new(format!("anomaly equation at genus {g}"));
    for kind in kinds(target) {
        let t = if kind == Kind::Local { &local } else { &rel };
        let lhs = hae_lhs(&t.higher[&g]);
        let rhs = hae_rhs(g, kind, t)?;
        r.item(format!("{} left side", kind.name()), Value::BMod(lhs.clone()));
        r.item(format!("{} right side", kind.name()), Value::BMod(rhs.clone()));
        r.check(format!("{} anomaly equation", kind.name()), lhs == rhs, "exact");
    }
    Ok(r)
}

fn verify_gap<E: Exec>(g: u32, target: Target, exec: &E) -> AppResult<Report> {
    if g < 2 {
        return Err(AppError::Usage("verify gap needs --genus >= 2".into()));
    }
    let (local, rel) = towers_for(g, exec)?;
    let frame = build_conifold_frame(frame_order(g))?;
    let mut r = Report::new(format!("conifold gap at genus {g}"));
    for kind in kinds(target) {
        let t = if kind == Kind::Local { &local } else { &rel };
        let p = conifold_polar_part(g, &t.higher[&g], &frame)?;
        let pole = 2 * g as usize - 2;
        r.item(format!("{} coefficients t^-{pole} .. t^0", kind.name()), Value::Rats(p.clone()));
        r.check_eq(format!("{} leading coefficient", kind.name()), &p[0], &gap_target(g, kind));
        r.check(format!("{} gap", kind.name()), p[1..pole].iter().all(|c| *c == lrc_core::rat::ri(0)), "t^-j vanish for 1 <= j <= 2g-3");
    }
    Ok(r)
}

fn ns_compare<E: Exec>(omega: Option<PathBuf>, gmax: u32, dmax: u32, q_order: i64, exec: &E) -> AppResult<Report> {
    let table = load_omega(omega.as_deref())?;
    if dmax > table.max_degree() {
        return Err(AppError::Usage(format!("Omega table stops at degree {}", table.max_degree())));
    }
    let md = build_mirror_data(q_order.max(dmax as i64 + 2))?;
    let rel = relative_by_correspondence(gmax, &solve_tower(gmax, Kind::Local, local_genus_one())?, exec)?;
    let series: Vec<RatSeries> = (0..=gmax).map(|g| big_q_series(&rel, Kind::Relative, g, &md).map(|s| s.without_log())).collect::<AppResult<_>>()?;
    let mut r = Report::new(format!("NS limit against the relative tower, g <= {gmax}, d <= {dmax}"));
    for row in compare_ns_relative(&table, gmax, dmax, &series)? {
        let detail = if row.matches() { format!("{}", row.ns) } else { format!("NS {} relative {}", row.ns, row.relative) };
        r.check(format!("(g,d)=({},{})", row.g, row.d), row.matches(), detail);
    }
    Ok(r)
}
