//! Command-line dispatch. Exit codes: 0 on success or an all-pass report,
//! 1 on a verification failure, 2 on a usage error.
//!
//! JSON output is schema-stable: exact rationals serialize as `num/den`
//! strings and floats as fixed 17-significant-digit strings, so identical
//! configurations produce byte-identical output.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use weylkit::arrangement::{
    coxeter_from_walls, enumerate_chambers, root_arrangement, simple_reflections, Arrangement,
    BBox,
};
use weylkit::catalog;
use weylkit::error::Error;
use weylkit::exact::{parse_rat, rat_str, MultiPoly, QVec};
use weylkit::mc;
use weylkit::mc::haar::GroupTag;
use weylkit::reflection::{generate_closure, parity, GroupClosure};
use weylkit::roots::{group_by_name, Label, LatticeKind, RootSystem};
use weylkit::strata;
use weylkit::volume;

/// Fixed float formatting: 17 significant digits.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Parser)]
#[command(name = "weylkit", version, about = "Exact reflection-group geometry and Monte-Carlo integration checks", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Output format: text, json, or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Seed for every randomized or sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker count for the Monte-Carlo estimators.
    #[arg(long, global = true, default_value_t = 1)]
    workers: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Root system data: Cartan matrix, roots, Weyl generators, lattices.
    Roots(RootsArgs),
    /// Chambers of a hyperplane arrangement.
    Chambers(ChambersArgs),
    /// Coxeter matrix of the base chamber of an arrangement.
    Coxeter(CoxeterArgs),
    /// Volume polynomial of a root system.
    Volume(VolumeArgs),
    /// Primitive linear factorization of a polynomial file.
    Factor(FactorArgs),
    /// Stratification data of a root system or compact group.
    Strata(StrataArgs),
    /// Monte-Carlo and quadrature checks.
    #[command(subcommand)]
    Integrate(IntegrateCommand),
    /// Registry of worked leaf-space models.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args)]
struct RootsArgs {
    /// Root-system label: a1, a1a1, a2, b2, g2, a3, b3.
    label: String,
    /// Compact group: su2, so3, su3, psu3, spin5, g2c.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args)]
struct ChambersArgs {
    /// Arrangement file (`dim n`, optional `period`/`box`, lines `a1 .. an ; c`).
    #[arg(long, conflicts_with = "label")]
    arrangement: Option<String>,
    /// Root-system label for the root hyperplane arrangement.
    #[arg(long)]
    label: Option<String>,
    /// Bounding box override: `lo1 hi1 ... lon hin` (rationals).
    #[arg(long, name = "box", allow_hyphen_values = true)]
    bbox: Option<String>,
}

#[derive(Args)]
struct CoxeterArgs {
    #[arg(long, conflicts_with = "label")]
    arrangement: Option<String>,
    #[arg(long)]
    label: Option<String>,
    #[arg(long, name = "box", allow_hyphen_values = true)]
    bbox: Option<String>,
    /// Bound for element-order detection.
    #[arg(long, default_value_t = 100)]
    order_bound: u64,
}

#[derive(Args)]
struct VolumeArgs {
    label: String,
    /// Evaluate at a point of t*: comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
    /// Check parity covariance over the whole Weyl group.
    #[arg(long)]
    check_parity: bool,
    /// Extract primitive linear factors.
    #[arg(long)]
    factor: bool,
    /// Height bound for factor discovery.
    #[arg(long, default_value_t = 3)]
    height: i64,
}

#[derive(Args)]
struct FactorArgs {
    /// Polynomial file: one term per line, `coeff e1 e2 ... en`.
    #[arg(long)]
    poly: String,
    #[arg(long, default_value_t = 3)]
    height: i64,
}

#[derive(Args)]
struct StrataArgs {
    /// Root-system label (dual-of-algebra model).
    label: Option<String>,
    /// Compact group (alcove model with center action).
    #[arg(long)]
    group: Option<String>,
}

#[derive(Subcommand)]
enum IntegrateCommand {
    /// Both sides of the integration formula over the algebra dual.
    Weyl(WeylArgs),
    /// Pushforward histogram of a uniform ball sample.
    Dh(DhArgs),
    /// Orbit symplectic volume by Riemann summation.
    Kks(KksArgs),
}

#[derive(Args)]
struct WeylArgs {
    #[arg(long)]
    group: String,
    /// Integrand selector: gaussian:s, polygauss:k:s, cauchygauss:c:s.
    #[arg(long, default_value = "gaussian:1")]
    f: String,
    #[arg(long, default_value_t = 1_000_000)]
    n: u64,
}

#[derive(Args)]
struct DhArgs {
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 1_000_000)]
    n: u64,
    /// Radial bins (su2) or grid size per axis (su3).
    #[arg(long, default_value_t = 40)]
    bins: usize,
    #[arg(long, default_value_t = 2.0)]
    radius: f64,
}

#[derive(Args)]
struct KksArgs {
    #[arg(long)]
    z: f64,
    /// Mesh as `theta x phi`, e.g. 400x800.
    #[arg(long, default_value = "400x800")]
    mesh: String,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List registry model names.
    List,
    /// Verify a registry model against its expectations.
    Verify(CatalogVerifyArgs),
}

#[derive(Args)]
struct CatalogVerifyArgs {
    name: String,
    #[arg(long, name = "box", allow_hyphen_values = true)]
    bbox: Option<String>,
    #[arg(long, default_value_t = 12)]
    word_bound: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

/// Entry point used by both the binary and the tests.
/// Returns (exit code, output).
pub fn dispatch(argv: &[String]) -> (u8, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version print with code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let format = match resolve_format(&cli) {
        Ok(f) => f,
        Err(e) => return (2, format!("error: {e}\n")),
    };
    match run(&cli, format) {
        Ok((code, out)) => (code, out),
        Err(Error::Usage(msg)) => (2, format!("error: usage: {msg}\n")),
        Err(Error::Integrity(msg)) => (1, format!("error: integrity: {msg}\n")),
    }
}

fn resolve_format(cli: &Cli) -> Result<Format, Error> {
    if cli.json {
        return Ok(Format::Json);
    }
    match cli.format.as_deref() {
        None | Some("text") => Ok(Format::Text),
        Some("json") => Ok(Format::Json),
        Some("csv") => Ok(Format::Csv),
        Some(other) => Err(Error::Usage(format!(
            "unknown format `{other}` (expected text, json, csv)"
        ))),
    }
}

fn parse_box(spec: &str, dim: usize) -> Result<BBox, Error> {
    let vals: Result<Vec<_>, Error> = spec.split_whitespace().map(parse_rat).collect();
    let vals = vals?;
    if vals.len() != 2 * dim {
        return Err(Error::Usage(format!(
            "box needs {} bounds, got {}",
            2 * dim,
            vals.len()
        )));
    }
    Ok(vals.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect())
}

fn load_arrangement(
    file: &Option<String>,
    label: &Option<String>,
    bbox: &Option<String>,
) -> Result<Arrangement, Error> {
    let arr = match (file, label) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read `{path}`: {e}")))?;
            Arrangement::parse(&text)?
        }
        (None, Some(label)) => {
            let rs = RootSystem::build(label.parse()?);
            root_arrangement(&rs, None)?
        }
        _ => {
            return Err(Error::Usage(
                "need exactly one of --arrangement FILE or --label LABEL".into(),
            ))
        }
    };
    match bbox {
        Some(spec) => {
            let b = parse_box(spec, arr.dim())?;
            arr.with_box(b)
        }
        None => Ok(arr),
    }
}

fn render(format: Format, value: &Value, text: String) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value).unwrap()),
        Format::Text => text,
        Format::Csv => json_to_csv(value),
    }
}

/// Flatten a JSON value into `key,value` CSV lines.
fn json_to_csv(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, vv) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, vv, out);
                }
            }
            Value::Array(items) => {
                for (i, vv) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), vv, out);
                }
            }
            other => {
                let s = match other {
                    Value::String(s) => s.clone(),
                    v => v.to_string(),
                };
                out.push_str(&format!("{prefix},{s}\n"));
            }
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

fn run(cli: &Cli, format: Format) -> Result<(u8, String), Error> {
    match &cli.command {
        Command::Roots(args) => cmd_roots(args, format),
        Command::Chambers(args) => cmd_chambers(args, format),
        Command::Coxeter(args) => cmd_coxeter(args, format),
        Command::Volume(args) => cmd_volume(args, format),
        Command::Factor(args) => cmd_factor(args, format),
        Command::Strata(args) => cmd_strata(args, format),
        Command::Integrate(sub) => cmd_integrate(sub, cli, format),
        Command::Catalog(sub) => cmd_catalog(sub, cli, format),
    }
}

fn cmd_roots(args: &RootsArgs, format: Format) -> Result<(u8, String), Error> {
    let label: Label = args.label.parse()?;
    let rs = RootSystem::build(label);
    let order = match generate_closure(&rs.weyl_generators(), 10_000)? {
        GroupClosure::Full(els) => els.len(),
        GroupClosure::Overflow { .. } => {
            return Err(Error::Integrity("finite Weyl group overflowed".into()))
        }
    };
    let cartan: Vec<Vec<i64>> = (0..rs.rank())
        .map(|i| rs.cartan().row(i).to_vec())
        .collect();
    let mut value = json!({
        "label": args.label,
        "rank": rs.rank(),
        "cartan": cartan,
        "roots": rs.roots(),
        "positive_roots": rs.positive_roots(),
        "weyl_order": order,
        "gram": (0..rs.rank()).map(|i| {
            (0..rs.rank()).map(|j| rat_str(rs.gram().get(i, j))).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "{label}: rank {}, {} roots ({} positive), Weyl order {order}\n",
        rs.rank(),
        rs.roots().len(),
        rs.positive_roots().len(),
    );
    if let Some(group) = &args.group {
        let gc = group_by_name(group)?;
        if gc.root_system().label() != label {
            return Err(Error::Usage(format!(
                "group `{group}` does not have root system `{label}`"
            )));
        }
        let reps: Vec<Vec<String>> = gc
            .coset_reps()
            .iter()
            .map(|v| v.iter().map(rat_str).collect())
            .collect();
        value["group"] = json!({
            "name": group,
            "lattice": match gc.kind() { LatticeKind::SimplyConnected => "simply_connected", LatticeKind::Adjoint => "adjoint" },
            "center_quotient_order": gc.center_quotient_order(),
            "coset_representatives": reps,
        });
        text.push_str(&format!(
            "group {group}: |Lambda_G / Q^v| = {}\n",
            gc.center_quotient_order()
        ));
    }
    Ok((0, render(format, &value, text)))
}

fn cmd_chambers(args: &ChambersArgs, format: Format) -> Result<(u8, String), Error> {
    let arr = load_arrangement(&args.arrangement, &args.label, &args.bbox)?;
    let d = enumerate_chambers(&arr)?;
    let chambers: Vec<Value> = d
        .chambers
        .iter()
        .map(|c| {
            json!({
                "signs": c.signs.iter().map(|s| i64::from(*s)).collect::<Vec<_>>(),
                "witness": c.witness.iter().map(rat_str).collect::<Vec<_>>(),
                "walls": c.wall_indices(),
                "certified": d.chamber_certified(c),
            })
        })
        .collect();
    let value = json!({
        "dim": arr.dim(),
        "hyperplanes": d.hyperplanes.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        "n_chambers": d.chambers.len(),
        "chambers": chambers,
    });
    let mut text = format!(
        "{} hyperplanes in the box, {} chambers\n",
        d.hyperplanes.len(),
        d.chambers.len()
    );
    for (i, c) in d.chambers.iter().enumerate() {
        text.push_str(&format!(
            "chamber {i}: witness {}, walls {:?}{}\n",
            c.witness,
            c.wall_indices(),
            if d.chamber_certified(c) { "" } else { " (clipped)" },
        ));
    }
    Ok((0, render(format, &value, text)))
}

fn cmd_coxeter(args: &CoxeterArgs, format: Format) -> Result<(u8, String), Error> {
    let arr = load_arrangement(&args.arrangement, &args.label, &args.bbox)?;
    let d = enumerate_chambers(&arr)?;
    let base = (0..d.chambers.len())
        .find(|&i| d.chamber_certified(&d.chambers[i]))
        .ok_or_else(|| Error::Usage("no certified chamber in the box".into()))?;
    let geometric = coxeter_from_walls(&d, &d.chambers[base])?;
    // cross-check against reflection orders when a label is given
    let mut algebraic = None;
    if let Some(label) = &args.label {
        let rs = RootSystem::build(label.parse()?);
        if let GroupClosure::Full(els) = generate_closure(&rs.weyl_generators(), 10_000)? {
            let reflections: Vec<_> = els
                .iter()
                .filter(|g| g.is_involution() && parity(g) == -1)
                .cloned()
                .collect();
            let simple = simple_reflections(&d, &d.chambers[base], &reflections)?;
            let m = weylkit::reflection::coxeter_matrix(&simple, args.order_bound)?;
            if !m.equivalent_to(&geometric) {
                return Err(Error::Integrity(
                    "geometric and reflection-order Coxeter matrices disagree".into(),
                ));
            }
            algebraic = Some(m);
        }
    }
    let entries: Vec<Vec<String>> = geometric
        .entries
        .iter()
        .map(|row| row.iter().map(|e| e.to_string()).collect())
        .collect();
    let value = json!({
        "base_chamber": base,
        "rank": geometric.rank(),
        "coxeter_matrix": entries,
        "cross_checked_against_reflection_orders": algebraic.is_some(),
    });
    let text = format!("{geometric}");
    Ok((0, render(format, &value, text)))
}

fn cmd_volume(args: &VolumeArgs, format: Format) -> Result<(u8, String), Error> {
    let label: Label = args.label.parse()?;
    let rs = RootSystem::build(label);
    let vp = volume::volume_polynomial(&rs);
    let mut value = json!({
        "label": args.label,
        "degree": vp.poly().total_degree(),
        "normalization_scale": rat_str(vp.scale()),
        "polynomial": vp.poly().to_text().trim_end().split('\n').collect::<Vec<_>>(),
    });
    let mut text = format!("P_{label} = {} (degree {})\n", vp.poly(), vp.poly().total_degree());
    let mut code = 0u8;
    if let Some(at) = &args.at {
        let coords: Result<Vec<_>, Error> = at.split(',').map(parse_rat).collect();
        let point = QVec::new(coords?);
        let v = vp.eval(&point)?;
        value["at"] = json!(point.iter().map(rat_str).collect::<Vec<_>>());
        value["value"] = json!(rat_str(&v));
        text.push_str(&format!("P({}) = {}\n", point, rat_str(&v)));
    }
    if args.check_parity {
        let closure = generate_closure(&rs.weyl_generators(), 10_000)?;
        let els = closure
            .elements()
            .ok_or_else(|| Error::Integrity("Weyl group overflow".into()))?;
        let mut failures = 0;
        for w in els {
            if volume::parity_covariance_check(&vp, w).is_err() {
                failures += 1;
            }
        }
        value["parity_covariance"] = json!({
            "elements": els.len(),
            "failures": failures,
            "theorem": "volume_polynomial_parity_covariance",
        });
        text.push_str(&format!(
            "parity covariance over {} elements: {}\n",
            els.len(),
            if failures == 0 { "pass" } else { "fail" }
        ));
        if failures > 0 {
            code = 1;
        }
    }
    if args.factor {
        let f = volume::primitive_linear_factors(vp.poly(), args.height)?;
        value["factors"] = json!({
            "height": f.height,
            "linear_factors": f.factors.iter().map(|fac| json!({
                "normal": fac.normal,
                "offset": rat_str(&fac.offset),
            })).collect::<Vec<_>>(),
            "cofactor": f.cofactor.to_text().trim_end().split('\n').collect::<Vec<_>>(),
        });
        text.push_str(&format!(
            "{} primitive linear factors at height {}, cofactor {}\n",
            f.factors.len(),
            f.height,
            f.cofactor
        ));
    }
    Ok((code, render(format, &value, text)))
}

fn cmd_factor(args: &FactorArgs, format: Format) -> Result<(u8, String), Error> {
    let text = std::fs::read_to_string(&args.poly)
        .map_err(|e| Error::Usage(format!("cannot read `{}`: {e}", args.poly)))?;
    let p = MultiPoly::parse_text(&text, None)?;
    let f = volume::primitive_linear_factors(&p, args.height)?;
    let roundtrip = f.product(p.nvars()) == p;
    if !roundtrip {
        return Err(Error::Integrity("factor product does not reproduce input".into()));
    }
    let value = json!({
        "nvars": p.nvars(),
        "degree": p.total_degree(),
        "height": f.height,
        "linear_factors": f.factors.iter().map(|fac| json!({
            "normal": fac.normal,
            "offset": rat_str(&fac.offset),
        })).collect::<Vec<_>>(),
        "cofactor": f.cofactor.to_text().trim_end().split('\n').collect::<Vec<_>>(),
        "roundtrip_exact": roundtrip,
    });
    let out = format!(
        "{} = {} linear factor(s) x [{}]\n",
        p,
        f.factors.len(),
        f.cofactor
    );
    Ok((0, render(format, &value, out)))
}

fn cmd_strata(args: &StrataArgs, format: Format) -> Result<(u8, String), Error> {
    if let Some(group) = &args.group {
        let gc = group_by_name(group)?;
        let model = strata::alcove(&gc)?;
        let faces: Vec<Value> = model
            .faces
            .iter()
            .map(|f| {
                json!({
                    "active_facets": f.active_facets,
                    "dim": f.dim,
                    "witness": f.witness.iter().map(rat_str).collect::<Vec<_>>(),
                    "codim": f.codim,
                    "subregular": f.subregular,
                })
            })
            .collect();
        let (orbit_count, orbits) = if gc.center_quotient_order() > 1 {
            let action = strata::z_action(&gc, &model)?;
            (action.n_orbits(), Some(action.face_orbits.clone()))
        } else {
            (model.face_count(), None)
        };
        let value = json!({
            "group": group,
            "alcove_faces": model.face_count(),
            "vertices": model.vertices.len(),
            "center_quotient_order": gc.center_quotient_order(),
            "strata": orbit_count,
            "face_orbits": orbits,
            "faces": faces,
            "theorem": "alcove_faces_modulo_center_action",
        });
        let text = format!(
            "{group}: alcove with {} faces, |Z| = {}, {} strata\n",
            model.face_count(),
            gc.center_quotient_order(),
            orbit_count
        );
        return Ok((0, render(format, &value, text)));
    }
    let label_str = args
        .label
        .as_ref()
        .ok_or_else(|| Error::Usage("need a label or --group".into()))?;
    let label: Label = label_str.parse()?;
    let rs = RootSystem::build(label);
    let faces = strata::chamber_faces(&rs)?;
    let spectrum = strata::strata_codim_spectrum(&rs)?;
    let value = json!({
        "label": label_str,
        "codim_spectrum": spectrum,
        "faces": faces.iter().map(|f| json!({
            "active_simple": f.active_simple,
            "vanishing_roots": f.vanishing_roots,
            "dim_isotropy": f.dim_isotropy,
            "dim_semisimple": f.dim_semisimple,
            "dim_center": f.dim_center,
            "codim": f.codim,
            "subregular": f.subregular,
        })).collect::<Vec<_>>(),
        "theorem": "no_codimension_one_or_two_strata",
    });
    let text = format!(
        "{label}: {} chamber faces, codim spectrum {:?}\n",
        faces.len(),
        spectrum
    );
    Ok((0, render(format, &value, text)))
}

fn cmd_integrate(
    sub: &IntegrateCommand,
    cli: &Cli,
    format: Format,
) -> Result<(u8, String), Error> {
    match sub {
        IntegrateCommand::Weyl(args) => {
            let tag: GroupTag = args.group.parse()?;
            let f: mc::Integrand = args.f.parse()?;
            let lhs = mc::weyl_integrate_lhs(&f, tag, args.n, cli.seed, cli.workers)?;
            let rhs = mc::weyl_integrate_rhs(&f, tag, args.n, cli.seed, cli.workers)?;
            let combined = lhs.combined_se(&rhs);
            let diff_se = if combined > 0.0 {
                (lhs.value - rhs.value).abs() / combined
            } else {
                0.0
            };
            let agree = diff_se <= 3.0;
            let value = json!({
                "group": args.group,
                "integrand": args.f,
                "n": args.n,
                "seed": cli.seed,
                "workers": cli.workers,
                "lhs": estimate_json(&lhs),
                "rhs": estimate_json(&rhs),
                "difference_in_combined_se": fmt_f64(diff_se),
                "agree_within_3se": agree,
                "exact": f.exact_integral(tag.algebra_dim()).map(fmt_f64),
                "theorem": "weyl_integration_formula",
            });
            let text = format!(
                "lhs = {} (se {})\nrhs = {} (se {}, calibration {})\ndifference = {:.2} combined se -> {}\n",
                fmt_f64(lhs.value),
                fmt_f64(lhs.std_error),
                fmt_f64(rhs.value),
                fmt_f64(rhs.std_error),
                rhs.calibration.map(fmt_f64).unwrap_or_default(),
                diff_se,
                if agree { "pass" } else { "fail" }
            );
            Ok((u8::from(!agree), render(format, &value, text)))
        }
        IntegrateCommand::Dh(args) => {
            let tag: GroupTag = args.group.parse()?;
            match tag {
                GroupTag::Su2 | GroupTag::So3 => {
                    let report =
                        mc::dh_pushforward_su2(args.n, args.bins, args.radius, cli.seed, cli.workers)?;
                    let pass = report.max_rel_dev < 0.05;
                    let value = json!({
                        "group": args.group,
                        "n": args.n,
                        "seed": cli.seed,
                        "workers": cli.workers,
                        "radius": fmt_f64(report.radius),
                        "bins": report.bins.iter().map(|b| json!({
                            "lo": fmt_f64(b.lo),
                            "hi": fmt_f64(b.hi),
                            "count": b.count,
                            "fitted": fmt_f64(b.fitted),
                        })).collect::<Vec<_>>(),
                        "fit_constant": fmt_f64(report.fit_constant),
                        "max_rel_dev": fmt_f64(report.max_rel_dev),
                        "populated_bins": report.populated_bins,
                        "lowest_count_bin": report.lowest_count_bin,
                        "pass": pass,
                        "theorem": "dh_measure_is_square_volume_times_lebesgue",
                    });
                    let text = format!(
                        "density fit c z^2: max relative deviation {} over {} populated bins -> {}\n",
                        fmt_f64(report.max_rel_dev),
                        report.populated_bins,
                        if pass { "pass" } else { "fail" }
                    );
                    Ok((u8::from(!pass), render(format, &value, text)))
                }
                GroupTag::Su3 => {
                    let report = mc::dh_pushforward_su3(
                        args.n,
                        args.bins,
                        args.radius,
                        cli.seed,
                        cli.workers,
                        200,
                    )?;
                    let pass = report.log_correlation > 0.99;
                    let value = json!({
                        "group": args.group,
                        "n": args.n,
                        "seed": cli.seed,
                        "workers": cli.workers,
                        "radius": fmt_f64(report.radius),
                        "grid": report.grid,
                        "log_correlation": fmt_f64(report.log_correlation),
                        "cells_used": report.cells_used,
                        "pass": pass,
                        "theorem": "dh_measure_is_square_volume_times_lebesgue",
                    });
                    let text = format!(
                        "log-density correlation with V^2: {} over {} cells -> {}\n",
                        fmt_f64(report.log_correlation),
                        report.cells_used,
                        if pass { "pass" } else { "fail" }
                    );
                    Ok((u8::from(!pass), render(format, &value, text)))
                }
            }
        }
        IntegrateCommand::Kks(args) => {
            let (mt, mp) = args
                .mesh
                .split_once('x')
                .ok_or_else(|| Error::Usage("mesh must look like 400x800".into()))?;
            let mt: usize = mt
                .parse()
                .map_err(|_| Error::Usage(format!("bad mesh `{}`", args.mesh)))?;
            let mp: usize = mp
                .parse()
                .map_err(|_| Error::Usage(format!("bad mesh `{}`", args.mesh)))?;
            let v = mc::kks_orbit_volume(args.z, mt, mp)?;
            let exact = 4.0 * std::f64::consts::PI * args.z;
            let rel = (v - exact).abs() / exact;
            let pass = rel < 0.001;
            let value = json!({
                "z": fmt_f64(args.z),
                "mesh": args.mesh,
                "volume": fmt_f64(v),
                "four_pi_z": fmt_f64(exact),
                "relative_error": fmt_f64(rel),
                "pass": pass,
                "theorem": "volume_polynomial_equals_orbit_volume",
            });
            let text = format!(
                "orbit volume {} vs 4 pi z = {} (relative error {}) -> {}\n",
                fmt_f64(v),
                fmt_f64(exact),
                fmt_f64(rel),
                if pass { "pass" } else { "fail" }
            );
            Ok((u8::from(!pass), render(format, &value, text)))
        }
    }
}

fn estimate_json(e: &mc::MeasureEstimate) -> Value {
    json!({
        "value": fmt_f64(e.value),
        "std_error": fmt_f64(e.std_error),
        "n_samples": e.n_samples,
        "seed": e.seed,
        "workers": e.workers,
        "estimator": e.estimator,
        "calibration": e.calibration.map(fmt_f64),
    })
}

fn cmd_catalog(sub: &CatalogCommand, cli: &Cli, format: Format) -> Result<(u8, String), Error> {
    match sub {
        CatalogCommand::List => {
            let names = catalog::registry_names();
            let value = json!({ "models": names });
            let text = names
                .iter()
                .map(|n| format!("{n}\n"))
                .collect::<String>();
            Ok((0, render(format, &value, text)))
        }
        CatalogCommand::Verify(args) => {
            let mut m = catalog::model(&args.name)?;
            if let Some(spec) = &args.bbox {
                let b = parse_box(spec, m.dim)?;
                m.arrangement = m.arrangement.with_box(b)?;
            }
            let opts = catalog::VerifyOptions {
                word_bound: args.word_bound,
                n_samples: args.samples,
                seed: cli.seed,
                ..Default::default()
            };
            let report = catalog::verify(&m, &opts)?;
            let value = serde_json::to_value(&report)
                .map_err(|e| Error::Integrity(format!("serialization: {e}")))?;
            let mut text = format!("model {}\n", report.model);
            for c in &report.checks {
                let status = match c.status {
                    catalog::CheckStatus::Pass => "pass",
                    catalog::CheckStatus::Fail => "FAIL",
                    catalog::CheckStatus::Info => "info",
                };
                text.push_str(&format!("  [{status}] {} ({}): {}\n", c.name, c.theorem, c.detail));
            }
            text.push_str(&format!(
                "result: {}\n",
                if report.pass { "all checks pass" } else { "FAILED" }
            ));
            Ok((u8::from(!report.pass), render(format, &value, text)))
        }
    }
}
