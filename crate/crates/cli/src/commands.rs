//! Command implementations.

use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use rate_regions::discrete::{
    check_reduction, eval_region, region_spec, sampling, DiscreteChannel, JointPmf,
    ReductionCase, SpecId,
};
use rate_regions::fm;
use rate_regions::gaussian::{
    corollary_corner_point, outer_bound_gaussian, region_r1, region_r2, region_r3, region_r4,
    region_r5, GaussianError, StandardZic, SweepGrid,
};
use rate_regions::geometry::envelope_from_halfplanes;
use rate_regions::{Envelope, HalfPlaneSystem};

use crate::svg::SvgPlot;
use crate::{CliError, CompareArgs, DiscreteArgs, FigureArgs, FmArgs, RegionArgs};

fn io_err(context: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{context}: {e}"))
}

fn domain_err(e: GaussianError) -> CliError {
    CliError::Domain(e.to_string())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| io_err("creating output directory", e))?;
        }
    }
    fs::write(path, contents).map_err(|e| io_err(&format!("writing {}", path.display()), e))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn grid_from_args(args: &RegionArgs) -> SweepGrid {
    SweepGrid {
        alpha_steps: args.alpha_steps,
        beta_steps: args.beta_steps,
        mu_steps: args.mu_steps,
        mu_max: args.mu_max,
        include_costa_candidate: true,
        envelope_samples: args.samples,
    }
}

fn compute_region(
    name: &str,
    c: &StandardZic,
    grid: &SweepGrid,
) -> Result<Envelope, CliError> {
    match name {
        "r1" => region_r1(c, grid.envelope_samples).map_err(domain_err),
        "r2" => Ok(region_r2(c, grid.envelope_samples)),
        "r3" => region_r3(c, grid).map_err(domain_err),
        "r4" => region_r4(c, grid).map_err(domain_err),
        "r5" => region_r5(c, grid.envelope_samples).map_err(domain_err),
        "outer" => outer_bound_gaussian(c, grid.envelope_samples).map_err(domain_err),
        other => Err(CliError::Domain(format!(
            "unknown region {other} (expected r1, r2, r3, r4, r5, outer)"
        ))),
    }
}

pub fn cmd_region(args: &RegionArgs) -> Result<(), CliError> {
    let c = StandardZic::new(args.p1, args.p2, args.k, args.b).map_err(domain_err)?;
    let grid = grid_from_args(args);
    let env = compute_region(&args.name, &c, &grid)?;
    println!(
        "{}: r1_max = {:.6}, r2 at origin = {:.6}",
        args.name,
        env.r1_max(),
        env.value(0.0)
    );
    match args.format.as_str() {
        "csv" => write_file(&args.out.join(format!("{}.csv", args.name)), &env.to_csv()),
        "json" => {
            let text = serde_json::to_string_pretty(&env)
                .map_err(|e| io_err("serializing envelope", e))?;
            write_file(&args.out.join(format!("{}.json", args.name)), &text)
        }
        "svg" => {
            // The plot accompanies the CSV rather than replacing it.
            write_file(&args.out.join(format!("{}.csv", args.name)), &env.to_csv())?;
            let mut plot = SvgPlot::new();
            plot.add_envelope(&args.name, &env);
            write_file(&args.out.join(format!("{}.svg", args.name)), &plot.render())
        }
        other => Err(CliError::Io(format!(
            "unknown format {other} (expected csv, json, svg)"
        ))),
    }
}

struct FigureSpec {
    params: (f64, f64, f64, f64),
    curves: &'static [&'static str],
    mark_corner: bool,
}

fn figure_spec(id: &str) -> Option<FigureSpec> {
    let (params, curves, mark_corner) = match id {
        "fig5a" => ((6.0, 6.0, 1.5, 1.5), &["r1", "r3"][..], false),
        "fig5b" => ((6.0, 6.0, 2.0, 1.5), &["r1", "r3"][..], false),
        "fig5c" => ((6.0, 6.0, 3.0, 1.5), &["r1", "r3"][..], false),
        "fig6a" => ((6.0, 6.0, 1.5, 1.5), &["r1", "r3", "r4"][..], false),
        "fig6b" => ((6.0, 6.0, 2.0, 1.5), &["r1", "r3", "r4"][..], false),
        "fig6c" => ((6.0, 6.0, 3.0, 1.5), &["r1", "r3", "r4"][..], false),
        "fig7a" => ((6.0, 6.0, 2.0, 0.6), &["r3", "r4", "r5"][..], false),
        "fig7b" => ((6.0, 6.0, 1.0, 0.6), &["r3", "r4", "r5"][..], false),
        "fig7c" => ((6.0, 6.0, 0.9, 0.6), &["r3", "r4", "r5"][..], false),
        "fig8a" => ((6.0, 6.0, 1.0, 0.6), &["r5", "r4", "outer"][..], true),
        "fig8b" => ((6.0, 6.0, 1.2, 0.6), &["r5", "r4", "outer"][..], false),
        _ => return None,
    };
    Some(FigureSpec {
        params,
        curves,
        mark_corner,
    })
}

pub fn cmd_figure(args: &FigureArgs) -> Result<(), CliError> {
    let spec = figure_spec(&args.id).ok_or_else(|| {
        CliError::Domain(format!(
            "unknown figure {} (expected fig5a..c, fig6a..c, fig7a..c, fig8a, fig8b)",
            args.id
        ))
    })?;
    let (p1, p2, k, b) = spec.params;
    let c = StandardZic::new(p1, p2, k, b).map_err(domain_err)?;
    println!("{}: P1 = {p1}, P2 = {p2}, K = {k}, b = {b}", args.id);
    let grid = SweepGrid {
        envelope_samples: args.samples,
        ..SweepGrid::default()
    };
    let mut plot = SvgPlot::new();
    let mut envs: Vec<(&str, Envelope)> = Vec::new();
    for name in spec.curves {
        let env = compute_region(name, &c, &grid)?;
        write_file(
            &args.out.join(format!("{}_{}.csv", args.id, name)),
            &env.to_csv(),
        )?;
        plot.add_envelope(name, &env);
        envs.push((name, env));
    }
    if spec.mark_corner {
        let corner = corollary_corner_point(&c);
        plot.add_marker("corner", corner);
        println!(
            "corner point: ({:.6}, {:.6}) where the outer bound meets the inner regions",
            corner.r1, corner.r2
        );
    }
    // Pairwise containment report for the figure's curves.
    for i in 0..envs.len() {
        for j in 0..envs.len() {
            if i == j {
                continue;
            }
            let (ok, v) = envs[i].1.subset(&envs[j].1, 5e-3);
            println!(
                "subset {} in {}: {} (max violation {v:.3e})",
                envs[i].0,
                envs[j].0,
                if ok { "yes" } else { "no" }
            );
        }
    }
    for i in 0..envs.len() {
        for j in (i + 1)..envs.len() {
            let d = envs[i].1.max_deviation(&envs[j].1);
            println!("max deviation {} vs {}: {d:.3e}", envs[i].0, envs[j].0);
        }
    }
    write_file(&args.out.join(format!("{}.svg", args.id)), &plot.render())
}

pub fn cmd_fm(args: &FmArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| io_err(&format!("reading {}", args.input.display()), e))?;
    let sys = HalfPlaneSystem::from_json(&text)
        .map_err(|e| io_err("parsing half-plane system", e))?;
    let keep: Vec<&str> = args.keep.split(',').map(|s| s.trim()).collect();
    let report = fm::project(&sys, &keep).map_err(|e| CliError::Domain(e.to_string()))?;
    println!(
        "projected {} rows over {} vars onto {:?}: {} rows generated, {} kept",
        report.input.rows.len(),
        report.input.vars.len(),
        report.kept_vars,
        report.rows_generated,
        report.rows_after_redundancy_removal
    );
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| io_err("serializing projection report", e))?;
    match &args.out {
        Some(path) => write_file(path, &text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_discrete(args: &DiscreteArgs) -> Result<(), CliError> {
    if let Some(case) = &args.check {
        return run_reduction_check(case, args);
    }
    let spec_name = args
        .spec
        .as_deref()
        .ok_or_else(|| CliError::Domain("--spec is required without --check".to_string()))?;
    let id = SpecId::parse(spec_name)
        .ok_or_else(|| CliError::Domain(format!("unknown spec {spec_name}")))?;
    let pmf_path = args
        .pmf
        .as_ref()
        .ok_or_else(|| CliError::Domain("--pmf is required".to_string()))?;
    let ch_path = args
        .channel
        .as_ref()
        .ok_or_else(|| CliError::Domain("--channel is required".to_string()))?;
    let pmf = JointPmf::from_json(
        &fs::read_to_string(pmf_path)
            .map_err(|e| io_err(&format!("reading {}", pmf_path.display()), e))?,
    )
    .map_err(|e| io_err("parsing pmf", e))?;
    let ch = DiscreteChannel::from_json(
        &fs::read_to_string(ch_path)
            .map_err(|e| io_err(&format!("reading {}", ch_path.display()), e))?,
    )
    .map_err(|e| io_err("parsing channel", e))?;

    let spec = region_spec(id);
    let eval = eval_region(&spec, &pmf, &ch).map_err(|e| CliError::Domain(e.to_string()))?;
    if !eval.negative_rows.is_empty() {
        println!(
            "note: rows {:?} have negative right-hand sides; this distribution contributes \
             the empty polygon",
            eval.negative_rows
        );
    }
    write_file(
        &args.out.join(format!("{spec_name}_system.json")),
        &eval.system.to_json(),
    )?;
    let polygon = if spec.splits.is_empty() {
        eval.system.clone()
    } else {
        fm::project(&eval.system, &["R1", "R2"])
            .map_err(|e| CliError::Domain(e.to_string()))?
            .output
    };
    match envelope_from_halfplanes(&polygon, 512) {
        Ok(env) => write_file(
            &args.out.join(format!("{spec_name}_polygon.csv")),
            &env.to_csv(),
        ),
        Err(e) => {
            println!("polygon is empty or degenerate: {e}");
            Ok(())
        }
    }
}

fn run_reduction_check(case_name: &str, args: &DiscreteArgs) -> Result<(), CliError> {
    let case = ReductionCase::parse(case_name)
        .ok_or_else(|| CliError::Domain(format!("unknown reduction case {case_name}")))?;
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    let mut skipped = 0usize;
    for i in 0..args.instances {
        let (base, ch) = random_case_instance(case, &mut rng);
        let report =
            check_reduction(case, &base, &ch).map_err(|e| CliError::Domain(e.to_string()))?;
        worst = worst.max(report.max_gap);
        match report.passed {
            Some(true) => {}
            Some(false) => {
                failures += 1;
                println!("instance {i}: FAIL ({:?})", report.details);
            }
            None => skipped += 1,
        }
    }
    println!(
        "check {case_name}: {} instances, {} report-only, max gap {worst:.3e}",
        args.instances, skipped
    );
    if failures == 0 {
        println!("check {case_name}: PASS");
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!(
            "{failures} of {} instances failed",
            args.instances
        )))
    }
}

fn random_case_instance(
    case: ReductionCase,
    rng: &mut ChaCha12Rng,
) -> (JointPmf, DiscreteChannel) {
    use sampling::{random_channel, random_factored, random_joint, Factor};
    match case {
        ReductionCase::StrongInterference => (
            random_joint(rng, &[("x1", 2), ("x2", 2)]),
            random_channel(rng, 2, 2, 2, 2),
        ),
        ReductionCase::WeakInterference => (
            random_factored(
                rng,
                &[("u", 2), ("x1", 2), ("x2", 2)],
                &[
                    Factor::new(&["u", "x1"], &[]),
                    Factor::new(&["x2"], &["u", "x1"]),
                ],
            )
            .expect("valid factorization"),
            random_channel(rng, 2, 2, 2, 2),
        ),
        ReductionCase::Wu => (
            random_factored(
                rng,
                &[("u", 2), ("v", 2), ("x1", 2), ("x2", 2)],
                &[
                    Factor::new(&["u", "x1"], &[]),
                    Factor::new(&["v"], &["u", "x1"]),
                    Factor::new(&["x2"], &["v", "u", "x1"]),
                ],
            )
            .expect("valid factorization"),
            random_channel(rng, 2, 2, 2, 2),
        ),
        ReductionCase::Devroye => (
            random_joint(
                rng,
                &[
                    ("u10", 2),
                    ("u11", 2),
                    ("v11", 2),
                    ("v20", 2),
                    ("v22", 2),
                    ("x1", 2),
                    ("x2", 2),
                ],
            ),
            random_channel(rng, 2, 2, 2, 2),
        ),
        ReductionCase::JiangXin => (
            random_factored(
                rng,
                &[("q", 2), ("w", 2), ("u", 2), ("v", 2), ("x1", 2), ("x2", 2)],
                &[
                    Factor::new(&["q"], &[]),
                    Factor::new(&["w", "x1"], &["q"]),
                    Factor::new(&["u"], &["w", "q"]),
                    Factor::new(&["v"], &["w", "q"]),
                    Factor::new(&["x2"], &["u", "v", "w", "q"]),
                ],
            )
            .expect("valid factorization"),
            random_channel(rng, 2, 2, 2, 2),
        ),
        ReductionCase::Maric => (
            random_joint(
                rng,
                &[
                    ("q", 2),
                    ("x1a", 2),
                    ("x1b", 2),
                    ("u2c", 2),
                    ("u2a", 2),
                    ("x1", 2),
                    ("x2", 2),
                ],
            ),
            random_channel(rng, 2, 2, 2, 2),
        ),
        ReductionCase::Marton => (
            random_joint(rng, &[("w", 2), ("v1", 2), ("v2", 2), ("x1", 1), ("x2", 2)]),
            random_channel(rng, 1, 2, 2, 2),
        ),
    }
}

pub fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let read = |p: &PathBuf| -> Result<Envelope, CliError> {
        Envelope::from_csv(
            &fs::read_to_string(p).map_err(|e| io_err(&format!("reading {}", p.display()), e))?,
        )
        .map_err(|e| io_err("parsing envelope CSV", e))
    };
    let a = read(&args.a)?;
    let b = read(&args.b)?;
    let (ab, vab) = a.subset(&b, args.tol);
    let (ba, vba) = b.subset(&a, args.tol);
    println!(
        "A in B: {} (max violation {vab:.3e});  B in A: {} (max violation {vba:.3e})",
        if ab { "yes" } else { "no" },
        if ba { "yes" } else { "no" }
    );
    println!("max deviation: {:.3e}", a.max_deviation(&b));
    Ok(())
}
