//! Subcommand implementations.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use pnorm_core::budget::{budget_from_geometric, AlphaBudget, ExponentPreset};
use pnorm_core::consistency::{
    contour_grid, minimax_radius, parse_d_grid, rewrite_check, sparsity_diagnostic, trace, SupForm,
};
use pnorm_core::mc::DEFAULT_CHUNK_SIZE;
use pnorm_core::power::{auto_scale_grid, enhancement_demo, pe_demo, power_curve};
use pnorm_core::procedure::{
    build_combined, build_minimax_adaptive, build_norm_test, calibrate_minimax_radius, calibrate_suite, Calibration,
    SuiteConfig,
};
use pnorm_core::report::{power_chart, sha256_hex, write_output};
use pnorm_core::{
    parse_artifact, parse_regression_data, regression_reduce, with_workers, write_artifact, AlternativeFamily, Error,
    Exponent, MonteCarloPlan, Result, TestSpec,
};

use crate::config::Settings;
use crate::{CalibrateArgs, Cli, Command, ConsistencyArgs, DemoEnhanceArgs, DemoPeArgs, McArgs, PowerArgs, ReduceArgs};

const DEFAULT_SEED: u64 = 1;
const DEFAULT_OUT: &str = "pnorm-out";

/// 2 for bad input or configuration, 3 for numeric failures.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Numeric(_) | Error::LinearAlgebra(_) | Error::Internal(_) => 3,
        _ => 2,
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let name = match &cli.command {
        Command::Calibrate(_) => "calibrate",
        Command::Power(_) => "power",
        Command::Consistency(_) => "consistency",
        Command::DemoPe(_) => "demo-pe",
        Command::DemoEnhance(_) => "demo-enhance",
        Command::Reduce(_) => "reduce",
    };
    let mut s = Settings::load(cli.config.as_deref(), name)?;
    let out = PathBuf::from(s.or(cli.out.as_ref().map(|p| p.display().to_string()), "out", DEFAULT_OUT.to_string())?);
    let workers = s.optional(cli.workers, "workers")?;
    let body = |s: &mut Settings| -> Result<()> {
        match &cli.command {
            Command::Calibrate(a) => calibrate(a, s, &out),
            Command::Power(a) => power(a, s, &out),
            Command::Consistency(a) => consistency(a, s, &out),
            Command::DemoPe(a) => demo_pe(a, s, &out),
            Command::DemoEnhance(a) => demo_enhance(a, s, &out),
            Command::Reduce(a) => reduce(a, s, &out),
        }
    };
    match workers {
        Some(w) => with_workers(w, || body(&mut s))??,
        None => body(&mut s)?,
    }
    s.warn_unused();
    std::fs::create_dir_all(&out)?;
    std::fs::write(out.join(format!("manifest-{name}.txt")), s.manifest.render())?;
    Ok(())
}

fn plan(s: &mut Settings, mc: &McArgs, reps: usize) -> Result<MonteCarloPlan> {
    let seed = s.or(mc.seed, "seed", DEFAULT_SEED)?;
    let chunk = s.or(mc.chunk_size, "chunk-size", DEFAULT_CHUNK_SIZE)?;
    let p = MonteCarloPlan::new(reps, seed).with_chunk_size(chunk);
    p.validate()?;
    Ok(p)
}

fn parse_list<T: FromStr>(text: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|e| Error::Config(format!("bad {what} '{t}': {e}"))))
        .collect()
}

fn parse_range(text: &str) -> Result<(f64, f64)> {
    let (a, b) = text.split_once(':').ok_or_else(|| Error::Config(format!("range must be lo:hi, got '{text}'")))?;
    let lo: f64 = a.trim().parse().map_err(|_| Error::Config(format!("bad range bound '{a}'")))?;
    let hi: f64 = b.trim().parse().map_err(|_| Error::Config(format!("bad range bound '{b}'")))?;
    if !(lo < hi) {
        return Err(Error::Config(format!("empty range '{text}'")));
    }
    Ok((lo, hi))
}

/// File-name fragment for an exponent: `p2`, `p2.5`, `pinf`.
fn tag(e: Exponent) -> String {
    format!("p{e}")
}

fn parse_budget(spec: &str, m: usize, alpha: f64) -> Result<AlphaBudget> {
    if let Some(rest) = spec.strip_prefix("geometric:") {
        let (d0, g) = parse_range_pair(rest, spec)?;
        return budget_from_geometric(m, alpha, d0, g);
    }
    if let Some(rest) = spec.strip_prefix("custom:") {
        let alphas: Vec<f64> = parse_list(rest, "budget entry")?;
        if alphas.len() != m {
            return Err(Error::Config(format!("custom budget has {} entries for {m} exponents", alphas.len())));
        }
        return AlphaBudget::custom(alphas, alpha);
    }
    Err(Error::Config(format!("budget must be geometric:δ0:γ or custom:α1,…, got '{spec}'")))
}

fn parse_range_pair(text: &str, spec: &str) -> Result<(f64, f64)> {
    let (a, b) = text.split_once(':').ok_or_else(|| Error::Config(format!("bad budget '{spec}'")))?;
    let p = |v: &str| v.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad budget '{spec}'")));
    Ok((p(a)?, p(b)?))
}

fn calibrate(a: &CalibrateArgs, s: &mut Settings, out: &Path) -> Result<()> {
    let d: usize = s.required(a.d, "d")?;
    let alpha = s.or(a.alpha, "alpha", 0.05)?;
    let p = s.optional(a.p.clone(), "p")?;
    let preset = s.optional(a.preset.clone(), "preset")?;
    let exps = s.optional(a.exponents.clone(), "exponents")?;
    let minimax_pd = s.optional(a.minimax_pd, "minimax-pd")?;
    let asymptotic = s.switch(a.asymptotic, "asymptotic")?;
    let name = s.or(a.name.clone(), "name", "calibration.txt".to_string())?;
    if preset.is_some() && exps.is_some() {
        return Err(Error::Config("give either --preset or --exponents, not both".into()));
    }
    let modes = [p.is_some(), preset.is_some() || exps.is_some(), minimax_pd.is_some()];
    if modes.iter().filter(|m| **m).count() != 1 {
        return Err(Error::Config("choose exactly one of --p, --preset/--exponents or --minimax-pd".into()));
    }
    if asymptotic && p.is_none() {
        return Err(Error::Config("--asymptotic applies to single tests (--p) only".into()));
    }

    let spec = if let Some(p) = p {
        let e: Exponent = p.parse()?;
        let cal = if asymptotic {
            Calibration::Asymptotic
        } else {
            let reps = s.or(a.reps, "reps", 100_000)?;
            Calibration::MonteCarlo(plan(s, &a.mc, reps)?)
        };
        let t = build_norm_test(e, d, alpha, &cal)?;
        if let TestSpec::Norm(n) = &t {
            let how = if asymptotic { "asymptotic" } else { "monte-carlo" };
            println!("{} d={d} alpha={alpha} {how} kappa = {}", e.label(), n.kappa());
        }
        t
    } else if let Some(p_d) = minimax_pd {
        let r_d = match s.optional(a.radius, "radius")? {
            Some(r) => r,
            None => {
                let reps = s.or(a.reps, "reps", 100_000)?;
                let pl = plan(s, &a.mc, reps)?;
                calibrate_minimax_radius(d, p_d, alpha, &pl)?
            }
        };
        let t = build_minimax_adaptive(d, r_d, p_d)?;
        println!("psi_star d={d} p_d={p_d} r_d = {r_d}");
        for (j, k) in t.kappas.iter().enumerate() {
            println!("  j={} kappa = {k}", j + 1);
        }
        TestSpec::Minimax(t)
    } else {
        let exponents: Vec<Exponent> = match (&preset, &exps) {
            (Some(name), _) => {
                let (_, ps) = name.parse::<ExponentPreset>()?.config(d)?;
                ps.into_iter().map(Exponent::Finite).collect()
            }
            (None, Some(list)) => parse_list(list, "exponent")?,
            _ => unreachable!(),
        };
        let budget_spec = s.or(a.budget.clone(), "budget", "geometric:0.5:0.5".to_string())?;
        let budget = parse_budget(&budget_spec, exponents.len(), alpha)?;
        let reps = s.or(a.reps, "reps", 100_000)?;
        let pl = plan(s, &a.mc, reps)?;
        let t = build_combined(d, &exponents, &budget, &pl)?;
        println!("psi d={d} alpha={alpha} members={} c_d = {}", t.exponents.len(), t.c_d);
        for (j, ((e, aj), k)) in t.exponents.iter().zip(&t.budget.alphas).zip(&t.kappas).enumerate() {
            println!("  member {} {} alpha_j={aj} kappa = {k}", j + 1, e.label());
        }
        TestSpec::Combined(t)
    };
    let text = write_artifact(&spec)?;
    write_output(out, &name, text.as_bytes(), &mut s.manifest)?;
    println!("wrote {}", out.join(&name).display());
    Ok(())
}

struct PowerScale {
    dims: Vec<usize>,
    calib_reps: usize,
    power_reps: usize,
}

fn power_scale(name: &str) -> Result<PowerScale> {
    match name {
        "desk" => Ok(PowerScale { dims: vec![10_000], calib_reps: 100_000, power_reps: 2000 }),
        "full" => Ok(PowerScale { dims: vec![50_000], calib_reps: 50_000, power_reps: 1000 }),
        "study" => Ok(PowerScale { dims: vec![50_000, 250_000], calib_reps: 50_000, power_reps: 1000 }),
        other => Err(Error::Config(format!("unknown scale '{other}' (desk, full, study)"))),
    }
}

fn parse_a_grid(spec: &str) -> Result<Option<Vec<f64>>> {
    let t = spec.trim();
    if t == "auto" {
        return Ok(None);
    }
    let parts: Vec<&str> = t.split(':').collect();
    if parts.len() == 3 {
        let lo: f64 = parts[0].parse().map_err(|_| Error::Config(format!("bad a-grid '{spec}'")))?;
        let hi: f64 = parts[1].parse().map_err(|_| Error::Config(format!("bad a-grid '{spec}'")))?;
        let n: usize = parts[2].parse().map_err(|_| Error::Config(format!("bad a-grid '{spec}'")))?;
        if n < 2 || !(lo < hi) {
            return Err(Error::Config(format!("a-grid '{spec}' needs lo < hi and n >= 2")));
        }
        return Ok(Some((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()));
    }
    let v: Vec<f64> = parse_list(t, "scale")?;
    if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Config(format!("bad a-grid '{spec}'")));
    }
    Ok(Some(v))
}

/// Tests named in `list`, all calibrated on one null sample.
fn build_tests(list: &str, d: usize, alpha: f64, p_d: usize, plan: &MonteCarloPlan) -> Result<Vec<TestSpec>> {
    let mut singles = Vec::new();
    let mut psi = false;
    let mut psi_star = false;
    for item in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item {
            "psi" => psi = true,
            "psi_star" => psi_star = true,
            e => singles.push((e.parse::<Exponent>()?, alpha)),
        }
    }
    let combined = if psi {
        let (m, ps) = ExponentPreset::Study.config(d)?;
        Some((ps.into_iter().map(Exponent::Finite).collect(), budget_from_geometric(m, alpha, 0.5, 0.5)?))
    } else {
        None
    };
    calibrate_suite(&SuiteConfig { d, alpha, singles, combined, minimax_p_d: psi_star.then_some(p_d) }, plan)
}

fn power(a: &PowerArgs, s: &mut Settings, out: &Path) -> Result<()> {
    let figure3 = s.switch(a.figure3, "figure3")?;
    let scale_flag = a.scale.clone().or_else(|| a.paper_scale.then(|| "study".to_string()));
    let scale = match s.optional(scale_flag, "scale")? {
        Some(n) => Some(power_scale(&n)?),
        None if figure3 => {
            s.manifest.set("scale", "desk");
            Some(power_scale("desk")?)
        }
        None => None,
    };
    let dims = match (s.optional(a.d, "d")?, &scale) {
        (Some(d), _) => vec![d],
        (None, Some(sc)) => sc.dims.clone(),
        (None, None) => return Err(Error::Config("missing required setting --d (or use --scale/--figure3)".into())),
    };
    let alpha = s.or(a.alpha, "alpha", 0.05)?;
    let calib_reps = s.or(a.calib_reps, "calib-reps", scale.as_ref().map_or(100_000, |x| x.calib_reps))?;
    let power_reps = s.or(a.power_reps, "power-reps", scale.as_ref().map_or(2000, |x| x.power_reps))?;
    let default_families = if figure3 { "dense,dagger,sparse" } else { "" };
    let families_spec = s.or(a.family.clone(), "family", default_families.to_string())?;
    let families: Vec<AlternativeFamily> = parse_list(&families_spec, "family")?;
    if families.is_empty() {
        return Err(Error::Config("missing required setting --family".into()));
    }
    let tests_spec = s.or(a.tests.clone(), "tests", "1,2,3,4,sup,psi".to_string())?;
    let p_d = s.or(a.minimax_pd, "minimax-pd", 8)?;
    let grid_spec = s.or(a.a_grid.clone(), "a-grid", "auto".to_string())?;
    let fixed_grid = parse_a_grid(&grid_spec)?;
    let artifacts = s.optional(a.artifacts.clone(), "artifacts")?;
    let mut loaded = Vec::new();
    for path in artifacts.iter().flat_map(|x| x.split(',')).map(str::trim).filter(|p| !p.is_empty()) {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read artifact {path}: {e}")))?;
        s.manifest.set(&format!("input.{path}"), sha256_hex(text.as_bytes()));
        loaded.push(parse_artifact(&text)?);
    }
    let calib = plan(s, &a.mc, calib_reps)?;
    let power_plan = calib.with_seed(calib.seed.wrapping_add(1)).with_replications(power_reps);
    let grid_plan = calib.with_seed(calib.seed.wrapping_add(2)).with_replications(power_reps);

    for d in dims {
        let mut tests = if tests_spec.trim().is_empty() { Vec::new() } else { build_tests(&tests_spec, d, alpha, p_d, &calib)? };
        for t in &loaded {
            if t.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: t.dim() });
            }
            tests.push(t.clone());
        }
        if tests.is_empty() {
            return Err(Error::Config("no tests selected".into()));
        }
        for fam in &families {
            let grid = match &fixed_grid {
                Some(g) => g.clone(),
                None => auto_scale_grid(&tests, fam, d, &grid_plan)?,
            };
            let table = power_curve(&tests, fam, &grid, d, &power_plan)?;
            for (test, lo, hi) in table.monotonicity_violations() {
                log::warn!("{} {test}: power drops from {lo} to {hi} beyond 3 standard errors", fam.kind());
            }
            let stem = format!("power_{}_d{d}", fam.kind());
            write_output(out, &format!("{stem}.csv"), table.to_csv().as_bytes(), &mut s.manifest)?;
            write_output(out, &format!("{stem}.svg"), power_chart(&table).as_bytes(), &mut s.manifest)?;
            let last = grid.len() - 1;
            let tops: Vec<String> = table
                .tests
                .iter()
                .map(|t| format!("{t} {:.3}", table.get(t, last).map_or(f64::NAN, |e| e.rate)))
                .collect();
            println!(
                "{} d={d}: {} scales in [{}, {}]; power at a={}: {}; wrote {stem}.csv, {stem}.svg",
                fam.kind(),
                grid.len(),
                grid[0],
                grid[last],
                grid[last],
                tops.join(", ")
            );
        }
    }
    Ok(())
}

fn consistency(a: &ConsistencyArgs, s: &mut Settings, out: &Path) -> Result<()> {
    let contour = s.switch(a.contour, "contour")?;
    let radius = s.switch(a.radius, "radius")?;
    let sup = s.switch(a.sup, "sup")?;
    if contour && radius {
        return Err(Error::Config("choose one of --contour and --radius".into()));
    }
    let single = match (s.optional(a.p.clone(), "p")?, sup) {
        (Some(_), true) => return Err(Error::Config("give either --p or --sup".into())),
        (Some(p), false) => Some(p.parse::<Exponent>()?),
        (None, true) => Some(Exponent::Sup),
        (None, false) => None,
    };

    if contour {
        let e = single.ok_or_else(|| Error::Config("--contour needs --p or --sup".into()))?;
        let range_spec = s.or(a.range.clone(), "range", "-4:4".to_string())?;
        let range = parse_range(&range_spec)?;
        let res = s.or(a.resolution, "resolution", 201)?;
        let g = contour_grid(e, range, res)?;
        let name = format!("contour_{}.csv", tag(e));
        write_output(out, &name, g.to_csv().as_bytes(), &mut s.manifest)?;
        let (lo, hi) = g.values.iter().flatten().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(*v), h.max(*v)));
        println!("contour {}: {res}x{res} grid on [{}, {}]; values in [{lo}, {hi}]; wrote {name}", e.label(), range.0, range.1);
        return Ok(());
    }

    if radius {
        let d: usize = s.required(a.d, "d")?;
        let list = match single {
            Some(e) => vec![e],
            None => parse_list(&s.required(a.exponents.clone(), "exponents")?, "exponent")?,
        };
        for e in list {
            let Exponent::Finite(p) = e else {
                return Err(Error::Config("the minimax radius is defined for finite p".into()));
            };
            println!("minimax radius {} d={d}: {}", e.label(), minimax_radius(p, d)?);
        }
        return Ok(());
    }

    let family: AlternativeFamily = s.or(a.family.clone(), "family", "dagger".to_string())?.parse()?;
    let exponents: Vec<Exponent> = match single {
        Some(e) => vec![e],
        None => parse_list(&s.or(a.exponents.clone(), "exponents", "2,3,sup".to_string())?, "exponent")?,
    };
    let grid = parse_d_grid(&s.or(a.dgrid.clone(), "dgrid", "geometric:1e3:1e6".to_string())?)?;
    let form = match s.or(a.sup_form.clone(), "sup-form", "ratio".to_string())?.as_str() {
        "ratio" => SupForm::Ratio,
        "g" => SupForm::G,
        other => return Err(Error::Config(format!("unknown sup form '{other}' (ratio, g)"))),
    };
    let diagnostics = s.switch(a.diagnostics, "diagnostics")?;
    let delta = if diagnostics { s.or(a.delta, "delta", 1.0)? } else { 1.0 };
    for e in exponents {
        let t = trace(&family, e, &grid, form)?;
        let name = format!("trace_{}_{}.csv", family.kind(), tag(e));
        write_output(out, &name, t.to_csv().as_bytes(), &mut s.manifest)?;
        let slope = t.fitted_log_slope.map_or("undefined".to_string(), |v| format!("{v:.4}"));
        println!(
            "trace {} {}: {} points, d {}..{}, log-log slope {slope}{}; wrote {name}",
            family.label(),
            e.label(),
            grid.len(),
            grid[0],
            grid[grid.len() - 1],
            if t.saturated { " (ratio form saturated)" } else { "" }
        );
        if let (true, Exponent::Finite(p)) = (diagnostics, e) {
            let mut csv = String::from("d,two_norm_part,p_norm_part,criterion,exceed_frac,max_abs,delta_p_product\n");
            for &d in &grid {
                let theta = family.theta(d)?;
                let r = rewrite_check(&theta, p)?;
                let sp = sparsity_diagnostic(&theta, delta, p)?;
                let _ = writeln!(
                    csv,
                    "{d},{},{},{},{},{},{}",
                    r.two_norm_part, r.p_norm_part, r.criterion, sp.exceed_frac, sp.max_abs, sp.delta_p_product
                );
            }
            let dname = format!("diagnostics_{}_{}.csv", family.kind(), tag(e));
            write_output(out, &dname, csv.as_bytes(), &mut s.manifest)?;
            println!("diagnostics {} {}: wrote {dname}", family.label(), e.label());
        }
    }
    Ok(())
}

fn demo_pe(a: &DemoPeArgs, s: &mut Settings, out: &Path) -> Result<()> {
    let d = s.or(a.d, "d", 10_000)?;
    let a2 = s.or(a.alpha2, "alpha2", 0.025)?;
    let ainf = s.or(a.alpha_inf, "alpha-inf", 0.025)?;
    let scale = s.or(a.a, "a", 1.0)?;
    let calib_reps = s.or(a.calib_reps, "calib-reps", 100_000)?;
    let power_reps = s.or(a.power_reps, "power-reps", 2000)?;
    let calib = plan(s, &a.mc, calib_reps)?;
    let power_plan = calib.with_seed(calib.seed.wrapping_add(1)).with_replications(power_reps);
    let r = pe_demo(d, a2, ainf, scale, &calib, &power_plan)?;
    let mut csv = String::from("label,power,stderr,replications\n");
    println!("semi-sparse alternative a={scale} d={d}, alpha2={a2}, alpha_inf={ainf}");
    for e in &r.entries {
        let _ = writeln!(csv, "{},{},{},{}", e.label, e.estimate.rate, e.estimate.stderr, e.estimate.replications);
        println!("  {:<14} power {:.4} ± {:.4}", e.label, e.estimate.rate, e.estimate.stderr);
    }
    println!("  union bound alpha2 + alpha_inf = {}; per-sample union violations: {}", a2 + ainf, r.union_violations);
    write_output(out, "pe_demo.csv", csv.as_bytes(), &mut s.manifest)?;
    println!("wrote pe_demo.csv");
    Ok(())
}

fn demo_enhance(a: &DemoEnhanceArgs, s: &mut Settings, out: &Path) -> Result<()> {
    let d = s.or(a.d, "d", 1000)?;
    let e: Exponent = s.or(a.p.clone(), "p", "2".to_string())?.parse()?;
    let alpha = s.or(a.alpha, "alpha", 0.05)?;
    let calib_reps = s.or(a.calib_reps, "calib-reps", 20_000)?;
    let reps = s.or(a.reps, "reps", 20_000)?;
    let calib = plan(s, &a.mc, calib_reps)?;
    let base = build_norm_test(e, d, alpha, &Calibration::MonteCarlo(calib.clone()))?;
    let r = enhancement_demo(base, &calib.with_seed(calib.seed.wrapping_add(1)).with_replications(reps))?;
    let rows = [
        ("size_base", r.size_base.rate, r.size_base.stderr),
        ("size_enhanced", r.size_enhanced.rate, r.size_enhanced.stderr),
        ("power_base", r.power_base.rate, r.power_base.stderr),
        ("power_enhanced", r.power_enhanced.rate, r.power_enhanced.stderr),
        ("exact_power_floor", r.exact_power_floor, 0.0),
        ("size_inflation_bound", r.size_inflation_bound, 0.0),
    ];
    let mut csv = String::from("quantity,value,stderr\n");
    println!(
        "enhancement of {} at d={d}: i*={}, a_d={:.4}, nu={:.4}",
        e.label(),
        r.enhanced.i_star + 1,
        r.enhanced.a_d,
        r.enhanced.nu_threshold
    );
    for (k, v, se) in rows {
        let _ = writeln!(csv, "{k},{v},{se}");
        println!("  {k:<21} {v:.4} ± {se:.4}");
    }
    println!("  domination violations: {}", r.domination_violations);
    write_output(out, "enhance_demo.csv", csv.as_bytes(), &mut s.manifest)?;
    println!("wrote enhance_demo.csv");
    Ok(())
}

fn reduce(a: &ReduceArgs, s: &mut Settings, out: &Path) -> Result<()> {
    let input: String = s.required(a.input.as_ref().map(|p| p.display().to_string()), "input")?;
    let name = s.or(a.name.clone(), "name", "reduced.txt".to_string())?;
    let text = std::fs::read_to_string(&input).map_err(|e| Error::Config(format!("cannot read {input}: {e}")))?;
    s.manifest.set(&format!("input.{input}"), sha256_hex(text.as_bytes()));
    let (x, z) = parse_regression_data(&text)?;
    let v = regression_reduce(&x, &z)?;
    let body: String = v.iter().map(|x| format!("{x}\n")).collect();
    write_output(out, &name, body.as_bytes(), &mut s.manifest)?;
    println!("reduced {} observations on {} regressors; wrote {name}", z.len(), v.len());
    Ok(())
}
