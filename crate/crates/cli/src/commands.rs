use std::path::{Path, PathBuf};

use equitri::eigenfunctions::{Eigenfunction, Point2D};
use equitri::length_spectrum::{compute_rho, detect_peaks, match_peaks, uniform_grid, RhoOptions};
use equitri::orbits::enumerate_orbits;
use equitri::presets::{self, Preset, PAPER_DL, PAPER_LEVELS, PAPER_LMAX, PAPER_WIDTH};
use equitri::spectrum::{enumerate_levels, staircase, weyl_count};
use equitri::transforms::{epsilon_multiplicativity_check, QNTransform};
use equitri::wavepacket::{
    autocorrelation, density_snapshot, energy_expectation, expand, gaussian_energy, linspace,
    revival_scan, timescales, ExpansionTable, GaussianPacket, Truncation,
};
use equitri::{BilliardConfig, QuantumNumbers, Variant};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, PacketArgs, SpectrumVariant, WindowArgs};
use crate::output::{metadata, num, write_json, CsvArtifact};
use crate::units::Units;
use crate::CliError;

struct Ctx {
    units: Units,
    out: Option<PathBuf>,
}

impl Ctx {
    fn out(&self) -> Option<&Path> {
        self.out.as_deref()
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn parse_preset(raw: Option<&str>, allowed: &[Preset]) -> Result<Option<Preset>, CliError> {
    let Some(raw) = raw else { return Ok(None) };
    if raw == "custom" {
        return Ok(None);
    }
    let p: Preset = raw.parse()?;
    if !allowed.contains(&p) {
        let names: Vec<&str> = allowed.iter().map(|p| p.name()).collect();
        return Err(invalid(format!(
            "preset '{p}' does not apply here; expected one of {names:?}"
        )));
    }
    Ok(Some(p))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    if cli.si && !(cli.side.is_finite() && cli.side > 0.0) {
        return Err(invalid(format!(
            "--side must be positive, got {}",
            cli.side
        )));
    }
    let ctx = Ctx {
        units: if cli.si {
            Units::si(cli.side)
        } else {
            Units::natural()
        },
        out: cli.out,
    };
    match cli.command {
        Command::Spectrum {
            count,
            variant,
            format,
        } => spectrum(&ctx, count, variant.into(), format),
        Command::Weyl { count, variant } => weyl(&ctx, count, variant.into()),
        Command::Eigfun {
            m,
            n,
            sym,
            variant,
            grid,
            preset,
        } => eigfun(
            &ctx,
            m,
            n,
            sym.into(),
            variant.map(Into::into),
            grid,
            preset.as_deref(),
        ),
        Command::Orbits {
            lmax,
            variant,
            with_isolated,
        } => orbits(&ctx, lmax, variant.into(), with_isolated),
        Command::LengthSpectrum {
            levels,
            variant,
            lmin,
            lmax,
            dl,
            prominence,
            tolerance,
            peaks,
            preset,
        } => {
            let preset = parse_preset(preset.as_deref(), &[Preset::PaperFig5, Preset::PaperFig7])?;
            let variant = variant.unwrap_or(match preset {
                Some(Preset::PaperFig7) => SpectrumVariant::Both,
                _ => SpectrumVariant::Full,
            });
            let opts = LengthOpts {
                levels: levels.unwrap_or(PAPER_LEVELS),
                lmin: lmin.unwrap_or(0.0),
                lmax: lmax.unwrap_or(PAPER_LMAX),
                dl: dl.unwrap_or(PAPER_DL),
                prominence,
                tolerance,
            };
            length_spectrum(&ctx, preset, variant, &opts, peaks.as_deref())
        }
        Command::Expand { packet, min_weight } => expand_cmd(&ctx, &packet, min_weight),
        Command::Autocorr {
            packet,
            thetas,
            window,
        } => autocorr(&ctx, &packet, thetas, &window),
        Command::Revivals {
            packet,
            fractions,
            threshold,
        } => revivals(&ctx, &packet, &fractions, threshold),
        Command::Density {
            packet,
            t,
            t_over_trev,
            grid,
        } => density(&ctx, &packet, t, t_over_trev, grid),
        Command::Transform { p, q, m, n } => transform(&ctx, p, q, m, n),
    }
}

fn spectrum(ctx: &Ctx, count: usize, variant: Variant, format: Format) -> Result<(), CliError> {
    let cfg = BilliardConfig::dimensionless(variant);
    let levels = enumerate_levels(&cfg, count)?;
    let meta = metadata(
        "spectrum",
        &ctx.units,
        json!({ "count": count, "variant": variant, "e0": cfg.e0() * ctx.units.energy }),
    );
    match format {
        Format::Json => {
            let rows: Vec<Value> = levels
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    json!({
                        "index": i + 1, "m": l.qn.m, "n": l.qn.n, "sym": l.qn.sym.as_str(),
                        "epsilon": l.epsilon, "k_a": l.ka(), "E_over_E0": l.epsilon,
                        "degeneracy": l.degeneracy,
                    })
                })
                .collect();
            write_json(ctx.out(), &meta, &rows)?;
        }
        Format::Csv => {
            let cols = [
                "index",
                "m",
                "n",
                "sym",
                "epsilon",
                "k_a",
                "E_over_E0",
                "degeneracy",
            ];
            let mut w = CsvArtifact::create(ctx.out(), &meta, &cols)?;
            for (i, l) in levels.iter().enumerate() {
                w.row([
                    (i + 1).to_string(),
                    l.qn.m.to_string(),
                    l.qn.n.to_string(),
                    l.qn.sym.as_str().to_string(),
                    l.epsilon.to_string(),
                    num(l.ka()),
                    l.epsilon.to_string(),
                    l.degeneracy.to_string(),
                ])?;
            }
            w.finish()?;
        }
    }
    Ok(())
}

fn weyl(ctx: &Ctx, count: usize, variant: Variant) -> Result<(), CliError> {
    let cfg = BilliardConfig::dimensionless(variant);
    let levels = enumerate_levels(&cfg, count)?;
    let meta = metadata(
        "weyl",
        &ctx.units,
        json!({ "count": count, "variant": variant }),
    );
    let cols = ["epsilon", "E", "staircase", "weyl", "deviation", "bound"];
    let mut w = CsvArtifact::create(ctx.out(), &meta, &cols)?;
    let mut last = None;
    for l in &levels {
        if last == Some(l.epsilon) {
            continue;
        }
        last = Some(l.epsilon);
        let n = staircase(&levels, l.energy);
        let n0 = weyl_count(&cfg, l.energy)?;
        w.row([
            l.epsilon.to_string(),
            num(l.energy * ctx.units.energy),
            n.to_string(),
            num(n0),
            num(n as f64 - n0),
            num(3.0 * (n as f64).sqrt() + 5.0),
        ])?;
    }
    w.finish()?;
    Ok(())
}

fn bounding_box(variant: Variant, a: f64) -> (f64, f64, f64, f64) {
    let lo = if variant == Variant::Full {
        -a / 2.0
    } else {
        0.0
    };
    (lo, a / 2.0, 0.0, equitri::config::SQRT3 * a / 2.0)
}

fn eigfun(
    ctx: &Ctx,
    m: Option<u32>,
    n: Option<u32>,
    sym: equitri::Symmetry,
    variant: Option<Variant>,
    grid: usize,
    preset: Option<&str>,
) -> Result<(), CliError> {
    if grid < 2 {
        return Err(invalid("--grid needs at least 2 points"));
    }
    let preset = parse_preset(preset, &[Preset::PaperFig2])?;
    let (states, variant) = match preset {
        Some(p) => (presets::fig2_states(), variant.unwrap_or(p.variant())),
        None => {
            let (m, n) = m
                .zip(n)
                .ok_or_else(|| invalid("--m and --n are required"))?;
            (
                vec![QuantumNumbers::new(m, n, sym)?],
                variant.unwrap_or(Variant::Full),
            )
        }
    };
    let cfg = BilliardConfig::dimensionless(variant);
    let funcs = states
        .iter()
        .map(|&q| Eigenfunction::from_qn(q, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let (x_lo, x_hi, y_lo, y_hi) = bounding_box(variant, cfg.a);
    let xs = linspace(x_lo, x_hi, grid);
    let ys = linspace(y_lo, y_hi, grid);
    let meta = metadata(
        "eigfun",
        &ctx.units,
        json!({
            "variant": variant, "grid": grid, "preset": preset.map(|p| p.name()),
            "states": states.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        }),
    );
    let cols = ["m", "n", "sym", "x", "y", "psi"];
    let mut w = CsvArtifact::create(ctx.out(), &meta, &cols)?;
    let u = ctx.units;
    for f in &funcs {
        let q = f.id.qn;
        let rows: Vec<Vec<(f64, f64, f64)>> = ys
            .par_iter()
            .map(|&y| {
                xs.iter()
                    .filter(|&&x| Point2D::new(x, y).inside(variant, cfg.a))
                    .map(|&x| (x, y, f.value(x, y)))
                    .collect()
            })
            .collect();
        for (x, y, psi) in rows.into_iter().flatten() {
            w.row([
                q.m.to_string(),
                q.n.to_string(),
                q.sym.as_str().to_string(),
                num(x * u.length),
                num(y * u.length),
                num(psi * u.psi()),
            ])?;
        }
    }
    w.finish()?;
    Ok(())
}

fn orbits(ctx: &Ctx, lmax: f64, variant: Variant, with_isolated: bool) -> Result<(), CliError> {
    let catalog = enumerate_orbits(lmax, variant, 1.0)?;
    let meta = metadata(
        "orbits",
        &ctx.units,
        json!({ "lmax": lmax, "variant": variant, "with_isolated": with_isolated }),
    );
    let cols = [
        "i_bar",
        "j_bar",
        "p",
        "q",
        "theta_deg",
        "primitive_length_over_a",
        "recurrences",
        "isolated",
        "label",
    ];
    let mut w = CsvArtifact::create(ctx.out(), &meta, &cols)?;
    for f in catalog
        .families
        .iter()
        .filter(|f| with_isolated || f.class.isolated.is_none())
    {
        let c = &f.class;
        let rec: Vec<String> = f.recurrences.iter().map(|&l| format!("{l:.6}")).collect();
        w.row([
            c.i_bar.to_string(),
            c.j_bar.to_string(),
            c.p.to_string(),
            c.q.to_string(),
            format!("{:.6}", c.angle_deg),
            format!("{:.6}", c.length),
            rec.join(";"),
            c.isolated.is_some().to_string(),
            c.label(),
        ])?;
    }
    w.finish()?;
    Ok(())
}

struct LengthOpts {
    levels: usize,
    lmin: f64,
    lmax: f64,
    dl: f64,
    prominence: f64,
    tolerance: f64,
}

fn length_spectrum(
    ctx: &Ctx,
    preset: Option<Preset>,
    variant: SpectrumVariant,
    o: &LengthOpts,
    peaks_path: Option<&Path>,
) -> Result<(), CliError> {
    let variants = match variant {
        SpectrumVariant::Full => vec![Variant::Full],
        SpectrumVariant::Half => vec![Variant::Half],
        SpectrumVariant::Both => vec![Variant::Full, Variant::Half],
    };
    let grid = uniform_grid(o.lmin, o.lmax, o.dl)?;
    let meta = metadata(
        "length-spectrum",
        &ctx.units,
        json!({
            "preset": preset.map(|p| p.name()), "levels": o.levels, "variants": variants,
            "lmin": o.lmin, "lmax": o.lmax, "dl": o.dl,
            "prominence": o.prominence, "tolerance": o.tolerance,
        }),
    );
    let cols = ["L_over_a", "re_rho", "im_rho", "power_norm", "variant"];
    let mut w = CsvArtifact::create(ctx.out(), &meta, &cols)?;
    let mut reports = Vec::new();
    for v in variants {
        let cfg = BilliardConfig::dimensionless(v);
        let spec = compute_rho(&cfg, o.levels, &grid, RhoOptions::default())?;
        for ((l, z), p) in spec
            .lengths
            .iter()
            .zip(&spec.rho)
            .zip(spec.power_normalized())
        {
            w.row([num(*l), num(z.re), num(z.im), num(p), v.to_string()])?;
        }
        if peaks_path.is_some() {
            let found = detect_peaks(&spec, o.prominence)?;
            let catalog = enumerate_orbits(o.lmax, v, cfg.a)?;
            let matches = match_peaks(&found, &catalog, o.tolerance);
            reports.push(json!({
                "variant": v,
                "median_power": found.median_power,
                "threshold": found.threshold,
                "peaks": found.peaks,
                "matches": matches,
                "all_matched": matches.iter().all(|m| m.matched()),
            }));
        }
    }
    w.finish()?;
    if let Some(path) = peaks_path {
        write_json(Some(path), &meta, &reports)?;
    }
    Ok(())
}

fn load_config(path: &Path) -> Result<PacketArgs, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn merge_config(flags: &PacketArgs, file: PacketArgs) -> PacketArgs {
    PacketArgs {
        config: None,
        preset: flags.preset.clone().or(file.preset),
        variant: flags.variant.or(file.variant),
        x0: flags.x0.or(file.x0),
        y0: flags.y0.or(file.y0),
        p0: flags.p0.or(file.p0),
        theta: flags.theta.or(file.theta),
        b: flags.b.or(file.b),
        eps_max: flags.eps_max.or(file.eps_max),
    }
}

struct PacketSetup {
    preset: Option<Preset>,
    cfg: BilliardConfig,
    packet: GaussianPacket,
    trunc: Truncation,
    theta_given: bool,
}

impl PacketSetup {
    fn resolve(args: &PacketArgs) -> Result<Self, CliError> {
        let merged;
        let args = match &args.config {
            Some(path) => {
                merged = merge_config(args, load_config(path)?);
                &merged
            }
            None => args,
        };
        let wave_presets = [
            Preset::PaperFig8,
            Preset::PaperFig8Isolated,
            Preset::PaperFig9Centroid,
            Preset::PaperFig9Quarter,
        ];
        let preset = parse_preset(args.preset.as_deref(), &wave_presets)?;
        let base = preset
            .and_then(Preset::packet)
            .unwrap_or_else(|| presets::centroid_packet(0.0, 0.0));
        let packet = GaussianPacket::from_polar(
            args.x0.unwrap_or(base.x0),
            args.y0.unwrap_or(base.y0),
            args.p0.unwrap_or(base.p0()),
            args.theta.unwrap_or(base.theta_deg()),
            args.b.unwrap_or(if preset.is_some() {
                base.b
            } else {
                PAPER_WIDTH
            }),
        )?;
        let variant = args
            .variant
            .map(Into::into)
            .or(preset.map(Preset::variant))
            .unwrap_or(Variant::Full);
        let cfg = BilliardConfig::dimensionless(variant);
        if !packet_point(&packet).inside(variant, cfg.a) {
            return Err(invalid(format!(
                "packet centre ({}, {}) is outside the {variant} billiard",
                packet.x0, packet.y0
            )));
        }
        let trunc = args
            .eps_max
            .map_or(Truncation::Auto, Truncation::MaxEpsilon);
        Ok(Self {
            preset,
            cfg,
            packet,
            trunc,
            theta_given: args.theta.is_some(),
        })
    }

    fn with_theta(&self, theta: f64) -> Result<GaussianPacket, CliError> {
        let p = &self.packet;
        Ok(GaussianPacket::from_polar(p.x0, p.y0, p.p0(), theta, p.b)?)
    }

    fn expand(&self, packet: &GaussianPacket) -> Result<ExpansionTable, CliError> {
        let table = expand(packet, &self.cfg, self.trunc)?;
        for w in &table.warnings {
            eprintln!("equitri: warning: {w}");
        }
        Ok(table)
    }

    fn params(&self) -> Value {
        json!({
            "preset": self.preset.map(|p| p.name()),
            "variant": self.cfg.variant,
            "hbar": self.cfg.hbar, "mu": self.cfg.mu, "a": self.cfg.a,
            "packet": self.packet,
            "truncation": self.trunc,
        })
    }
}

fn packet_point(p: &GaussianPacket) -> Point2D {
    Point2D::new(p.x0, p.y0)
}

fn table_summary(table: &ExpansionTable, cfg: &BilliardConfig, units: &Units) -> Value {
    json!({
        "theta_deg": table.packet.theta_deg(),
        "eps_max": table.eps_max,
        "coefficients": table.coefficients.len(),
        "captured_norm": table.captured_norm,
        "energy_expectation": energy_expectation(table, cfg) * units.energy,
        "gaussian_energy": gaussian_energy(&table.packet, cfg) * units.energy,
        "warnings": table.warnings,
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn timescale_json(
    setup: &PacketSetup,
    packet: &GaussianPacket,
    units: &Units,
) -> Result<Value, CliError> {
    let t = timescales(packet, &setup.cfg, None)?;
    let s = |x: f64| x * units.time;
    Ok(json!({
        "t_rev": s(t.t_rev),
        "t0": s(t.t0),
        "v0": t.v0 * units.length / units.time,
        "tau": t.tau.map(s),
        "t_cl_po_min": t.t_cl_po_min.map(|(a, b)| [s(a), s(b)]),
    }))
}

fn expand_cmd(ctx: &Ctx, args: &PacketArgs, min_weight: f64) -> Result<(), CliError> {
    let setup = PacketSetup::resolve(args)?;
    let table = setup.expand(&setup.packet)?;
    let meta = metadata(
        "expand",
        &ctx.units,
        merge(
            setup.params(),
            json!({
                "min_weight": min_weight,
                "summary": table_summary(&table, &setup.cfg, &ctx.units),
                "timescales": timescale_json(&setup, &setup.packet, &ctx.units)?,
            }),
        ),
    );
    let cols = ["m", "n", "sym", "epsilon", "re_a", "im_a", "abs2"];
    let mut w = CsvArtifact::create(ctx.out(), &meta, &cols)?;
    for c in table
        .coefficients
        .iter()
        .filter(|c| c.amplitude.norm_sqr() >= min_weight)
    {
        w.row([
            c.qn.m.to_string(),
            c.qn.n.to_string(),
            c.qn.sym.as_str().to_string(),
            c.epsilon.to_string(),
            num(c.amplitude.re),
            num(c.amplitude.im),
            num(c.amplitude.norm_sqr()),
        ])?;
    }
    w.finish()?;
    Ok(())
}

/// Time window in natural units.
fn window(setup: &PacketSetup, win: &WindowArgs, units: &Units) -> Result<(f64, usize), CliError> {
    let cfg = &setup.cfg;
    let v0 = setup.packet.speed(cfg);
    let preset = setup.preset.and_then(Preset::time_window);
    let default_points = match preset {
        Some((_, n)) => n,
        None if v0 > 0.0 => presets::FIG8_POINTS,
        None => presets::REVIVAL_POINTS,
    };
    let t_max = if let Some(t) = win.tmax {
        t / units.time
    } else if let Some(k) = win.tmax_tau {
        if v0 == 0.0 {
            return Err(invalid("--tmax-tau needs a moving packet"));
        }
        k * cfg.a / v0
    } else if let Some(k) = win.tmax_trev {
        k * cfg.revival_time()
    } else if let Some((t, _)) = preset {
        t
    } else if v0 > 0.0 {
        presets::FIG8_WINDOW_TAU * cfg.a / v0
    } else {
        cfg.revival_time()
    };
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(invalid(format!(
            "time window must be positive, got {t_max}"
        )));
    }
    let points = win.points.unwrap_or(default_points);
    if points < 2 {
        return Err(invalid("--points needs at least 2"));
    }
    Ok((t_max, points))
}

fn autocorr(
    ctx: &Ctx,
    args: &PacketArgs,
    thetas: Option<Vec<f64>>,
    win: &WindowArgs,
) -> Result<(), CliError> {
    let setup = PacketSetup::resolve(args)?;
    let thetas = match thetas {
        Some(t) if !t.is_empty() => t,
        _ if setup.preset == Some(Preset::PaperFig8) && !setup.theta_given => {
            presets::FIG8_ANGLES.to_vec()
        }
        _ => vec![setup.packet.theta_deg()],
    };
    let (t_max, points) = window(&setup, win, &ctx.units)?;
    let times = linspace(0.0, t_max, points);
    let mut series = Vec::new();
    let mut summaries = Vec::new();
    for &theta in &thetas {
        let packet = setup.with_theta(theta)?;
        let table = setup.expand(&packet)?;
        summaries.push(table_summary(&table, &setup.cfg, &ctx.units));
        series.push((theta, autocorrelation(&table, &setup.cfg, &times)));
    }
    let u = ctx.units;
    let markers: Vec<Value> = series[0]
        .1
        .markers
        .iter()
        .map(|m| json!({ "label": m.label, "theta_deg": m.theta_deg, "length_over_a": m.length, "period": m.period * u.time }))
        .collect();
    let meta = metadata(
        "autocorr",
        &u,
        merge(
            setup.params(),
            json!({
                "thetas": thetas, "t_max": t_max * u.time, "points": points,
                "series": summaries,
                "timescales": timescale_json(&setup, &setup.packet, &u)?,
                "markers": markers,
            }),
        ),
    );
    let cols = ["t", "t_over_tau", "abs_A", "re_A", "im_A", "theta_deg"];
    let mut w = CsvArtifact::create(ctx.out(), &meta, &cols)?;
    for (theta, s) in &series {
        for (&t, z) in s.t.iter().zip(&s.a) {
            let over_tau = s.tau.map(|tau| num(t / tau)).unwrap_or_default();
            w.row([
                num(t * u.time),
                over_tau,
                num(z.norm()),
                num(z.re),
                num(z.im),
                num(*theta),
            ])?;
        }
    }
    w.finish()?;
    Ok(())
}

fn revivals(
    ctx: &Ctx,
    args: &PacketArgs,
    fractions: &[u32],
    threshold: f64,
) -> Result<(), CliError> {
    let setup = PacketSetup::resolve(args)?;
    let table = setup.expand(&setup.packet)?;
    let scan = revival_scan(&table, &setup.cfg, fractions, threshold)?;
    let u = ctx.units;
    let meta = metadata(
        "revivals",
        &u,
        merge(
            setup.params(),
            json!({
                "fractions": fractions, "threshold": threshold,
                "summary": table_summary(&table, &setup.cfg, &u),
                "t_rev": scan.t_rev * u.time,
                "abs_A0": scan.abs_a0,
                "flagged": scan.flagged(),
            }),
        ),
    );
    let cols = [
        "fraction",
        "k",
        "t",
        "t_over_trev",
        "abs_A",
        "ratio",
        "local_max",
        "revived",
    ];
    let mut w = CsvArtifact::create(ctx.out(), &meta, &cols)?;
    for r in &scan.results {
        for s in &r.samples {
            w.row([
                r.fraction.to_string(),
                s.k.to_string(),
                num(s.t * u.time),
                num(s.t / scan.t_rev),
                num(s.abs_a),
                num(s.ratio),
                s.local_max.to_string(),
                s.revived.to_string(),
            ])?;
        }
    }
    w.finish()?;
    Ok(())
}

fn density(
    ctx: &Ctx,
    args: &PacketArgs,
    t: Option<f64>,
    t_over_trev: Option<f64>,
    grid: usize,
) -> Result<(), CliError> {
    let setup = PacketSetup::resolve(args)?;
    let u = ctx.units;
    let t = match (t, t_over_trev) {
        (Some(t), _) => t / u.time,
        (None, Some(s)) => s * setup.cfg.revival_time(),
        (None, None) => 0.0,
    };
    let table = setup.expand(&setup.packet)?;
    let field = density_snapshot(&table, &setup.cfg, t, grid)?;
    let meta = metadata(
        "density",
        &u,
        merge(
            setup.params(),
            json!({
                "t": t * u.time, "t_over_trev": t / setup.cfg.revival_time(), "grid": grid,
                "summary": table_summary(&table, &setup.cfg, &u),
            }),
        ),
    );
    let mut w = CsvArtifact::create(ctx.out(), &meta, &["x", "y", "density"])?;
    for (iy, &y) in field.ys.iter().enumerate() {
        for (ix, &x) in field.xs.iter().enumerate() {
            w.row([
                num(x * u.length),
                num(y * u.length),
                num(field.get(ix, iy) * u.density()),
            ])?;
        }
    }
    w.finish()?;
    Ok(())
}

fn transform(ctx: &Ctx, p: i64, q: i64, m: i64, n: i64) -> Result<(), CliError> {
    let t = QNTransform::new(p, q)?;
    let report = epsilon_multiplicativity_check(t, m, n);
    let meta = metadata(
        "transform",
        &ctx.units,
        json!({ "p": p, "q": q, "m": m, "n": n }),
    );
    write_json(ctx.out(), &meta, &report)?;
    Ok(())
}
