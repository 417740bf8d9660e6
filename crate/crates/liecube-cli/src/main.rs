//! `liecube` — cubature rules on compact simple Lie groups from the command
//! line: static type data, elements of finite order, rule construction and
//! verification, exact-degree integration, and point-cloud export.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 orbit
//! guard violation.

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use liecube::cubature::{
    build_rule, dominant_weights_up_to, gram_matrix, grid_quadrature_oracle, omega_cloud,
    separation_check, CubatureRule, PolynomialInX, RuleFile, RuleMetadata,
};
use liecube::lattice::{enumerate_efo, DualPoint};
use liecube::orbitfn::{s_function, steinberg_jacobian};
use liecube::rootsys::{LieType, RootSystem, Weight};
use liecube::{Error, DEFAULT_ORBIT_GUARD};

#[derive(Parser)]
#[command(
    name = "liecube",
    version,
    about = "Gaussian cubature from elements of finite order"
)]
struct Cli {
    /// Lift the Weyl-orbit size guard (required for E7 and E8).
    #[arg(long, global = true)]
    allow_large_orbits: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the classification data of a simple type.
    Info {
        /// Type name such as G2, A3, E8.
        lie_type: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List the conjugacy classes of finite adjoint order N.
    Efo {
        lie_type: String,
        level: i64,
        /// Include boundary (non-regular) classes.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the cubature rule of degree budget M.
    Rule {
        lie_type: String,
        m: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check discrete orthogonality, the common-zero property and the node
    /// count of the rule; --deep adds the Jacobian identity and the
    /// separation scan.
    Verify {
        lie_type: String,
        m: i64,
        #[arg(long)]
        deep: bool,
    },
    /// Integrate a polynomial file against a saved rule file.
    Integrate {
        /// Rule file written by `rule --format json`.
        #[arg(long)]
        rule: PathBuf,
        /// JSON list of {exponents, coeff: [re, im]} monomials.
        #[arg(long)]
        poly: PathBuf,
        /// Also run the independent grid oracle (rank <= 3) and report the
        /// relative gap.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 400)]
        resolution: usize,
    },
    /// Expansion coefficients of a polynomial in the character basis.
    Approx {
        lie_type: String,
        m: i64,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV point cloud of the Omega image of the regular level-N classes.
    Cloud {
        lie_type: String,
        level: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// 17-significant-digit float format used in all text and CSV output.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a line to stdout; on a closed pipe (`... | head`) the process
/// leaves quietly with the conventional SIGPIPE status.
fn emit(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(141);
    }
}

fn fmt_complex(v: Complex64) -> String {
    format!("{} {}", fmt17(v.re), fmt17(v.im))
}

enum Failure {
    Usage(String),
    Verification(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OrbitTooLarge { .. } => Failure::Guard(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

fn orbit_guard(allow_large: bool) -> u128 {
    if allow_large {
        return u128::MAX;
    }
    match std::env::var("LIECUBE_ORBIT_GUARD") {
        Ok(v) => v.parse().unwrap_or(DEFAULT_ORBIT_GUARD),
        Err(_) => DEFAULT_ORBIT_GUARD,
    }
}

fn root_system(name: &str, allow_large: bool) -> Result<RootSystem, Failure> {
    let lie_type: LieType = name
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    Ok(RootSystem::new(lie_type)?.with_orbit_guard(orbit_guard(allow_large)))
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => {
            if std::io::stdout()
                .lock()
                .write_all(content.as_bytes())
                .is_err()
            {
                std::process::exit(141);
            }
        }
    }
    Ok(())
}

/// Creation timestamp for rule metadata; honors SOURCE_DATE_EPOCH so that
/// identical invocations can produce byte-identical files.
fn created_timestamp() -> String {
    let secs = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .unwrap_or_else(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
    // Days-based civil-from-epoch conversion, UTC.
    let days = secs / 86_400;
    let rem = secs % 86_400;
    let (y, m, d) = civil_from_days(days as i64);
    format!(
        "{y:04}-{m:02}-{d:02}T{:02}:{:02}:{:02}Z",
        rem / 3600,
        (rem % 3600) / 60,
        rem % 60
    )
}

fn civil_from_days(z: i64) -> (i64, u32, u32) {
    let z = z + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z.rem_euclid(146_097);
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let y = yoe + era * 400;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = (doy - (153 * mp + 2) / 5 + 1) as u32;
    let m = if mp < 10 { mp + 3 } else { mp - 9 } as u32;
    (if m <= 2 { y + 1 } else { y }, m, d)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let allow_large = cli.allow_large_orbits;
    match cli.command {
        Command::Info { lie_type, format } => cmd_info(&lie_type, format, allow_large),
        Command::Efo {
            lie_type,
            level,
            all,
            format,
            out,
        } => cmd_efo(&lie_type, level, all, format, out.as_deref(), allow_large),
        Command::Rule {
            lie_type,
            m,
            format,
            out,
        } => cmd_rule(&lie_type, m, format, out.as_deref(), allow_large),
        Command::Verify { lie_type, m, deep } => cmd_verify(&lie_type, m, deep, allow_large),
        Command::Integrate {
            rule,
            poly,
            oracle,
            resolution,
        } => cmd_integrate(&rule, &poly, oracle, resolution, allow_large),
        Command::Approx {
            lie_type,
            m,
            poly,
            out,
        } => cmd_approx(&lie_type, m, &poly, out.as_deref(), allow_large),
        Command::Cloud {
            lie_type,
            level,
            out,
        } => cmd_cloud(&lie_type, level, out.as_deref(), allow_large),
    }
}

fn cmd_info(name: &str, format: Format, allow_large: bool) -> Result<(), Failure> {
    let rs = root_system(name, allow_large)?;
    let guard = orbit_guard(allow_large);
    let guarded = rs.weyl_order() * rs.rank() as u128 > guard;
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "type": rs.lie_type().to_string(),
                "rank": rs.rank(),
                "coxeter_number": rs.coxeter_number(),
                "marks": rs.marks(),
                "comarks": rs.comarks(),
                "center_order": rs.center_order(),
                "weyl_order": rs.weyl_order().to_string(),
                "positive_roots": rs.positive_roots().len(),
                "sigma": rs.conjugation_permutation().iter().map(|j| j + 1).collect::<Vec<_>>(),
                "cartan": rs.cartan(),
                "orbit_guard_exceeded": guarded,
            });
            emit(&serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Csv => {
            return Err(Failure::Usage("info has no CSV form".into()));
        }
    }
    if guarded {
        eprintln!(
            "warning: |W| = {} exceeds the orbit guard; evaluation commands need --allow-large-orbits",
            rs.weyl_order()
        );
    }
    Ok(())
}

fn cmd_efo(
    name: &str,
    level: i64,
    all: bool,
    format: Format,
    out: Option<&Path>,
    allow_large: bool,
) -> Result<(), Failure> {
    if level < 1 {
        return Err(Failure::Usage("level must be positive".into()));
    }
    let rs = root_system(name, allow_large)?;
    let points = enumerate_efo(&rs, level, !all);
    let content = match format {
        Format::Csv => {
            let mut lines = Vec::with_capacity(points.len() + 1);
            let kac_cols: Vec<String> = (0..=rs.rank()).map(|j| format!("s{j}")).collect();
            let coord_cols: Vec<String> = (1..=rs.rank()).map(|j| format!("x{j}")).collect();
            lines.push(format!(
                "{},{},strict_order",
                kac_cols.join(","),
                coord_cols.join(",")
            ));
            for p in &points {
                let kac: Vec<String> = p.kac().iter().map(|s| s.to_string()).collect();
                let coords: Vec<String> = p
                    .alpha_check_coords()
                    .iter()
                    .map(|q| q.to_string())
                    .collect();
                lines.push(format!(
                    "{},{},{}",
                    kac.join(","),
                    coords.join(","),
                    p.strict_ad_order()
                ));
            }
            lines.join("\n") + "\n"
        }
        Format::Json => {
            let value: Vec<serde_json::Value> = points
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "kac": p.kac(),
                        "coords": p.alpha_check_coords().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                        "strict_order": p.strict_ad_order(),
                        "interior": p.is_interior(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&value).unwrap() + "\n"
        }
    };
    write_output(out, &content)
}

fn cmd_rule(
    name: &str,
    m: i64,
    format: Format,
    out: Option<&Path>,
    allow_large: bool,
) -> Result<(), Failure> {
    if m < 0 {
        return Err(Failure::Usage("degree budget must be nonnegative".into()));
    }
    let rs = root_system(name, allow_large)?;
    let rule = build_rule(&rs, m)?;
    let content = match format {
        Format::Json => {
            let file = rule.to_file(Some(RuleMetadata {
                method: "gaussian-cubature-efo".into(),
                created: created_timestamp(),
                tool_version: env!("CARGO_PKG_VERSION").into(),
            }));
            serde_json::to_string_pretty(&file).unwrap() + "\n"
        }
        Format::Csv => {
            let mut lines = Vec::with_capacity(rule.nodes().len() + 1);
            let kac_cols: Vec<String> = (0..=rs.rank()).map(|j| format!("s{j}")).collect();
            let x_cols: Vec<String> = (1..=rs.rank())
                .flat_map(|j| [format!("X{j}_re"), format!("X{j}_im")])
                .collect();
            lines.push(format!(
                "{},{},weight",
                kac_cols.join(","),
                x_cols.join(",")
            ));
            for ((node, &w), x) in rule.nodes().iter().zip(rule.weights()).zip(rule.node_x()) {
                let kac: Vec<String> = node.kac().iter().map(|s| s.to_string()).collect();
                let xs: Vec<String> = x.iter().flat_map(|c| [fmt17(c.re), fmt17(c.im)]).collect();
                lines.push(format!("{},{},{}", kac.join(","), xs.join(","), fmt17(w)));
            }
            lines.join("\n") + "\n"
        }
    };
    write_output(out, &content)
}

fn random_interior_point(rs: &RootSystem, rng: &mut StdRng) -> DualPoint {
    let h = rs.coxeter_number();
    let level = rng.gen_range(h + 1..=h + 40);
    loop {
        let mut tail = Vec::with_capacity(rs.rank());
        let mut budget = level - 1;
        let mut ok = true;
        for &mk in rs.marks() {
            let max = budget / mk;
            if max < 1 {
                ok = false;
                break;
            }
            let s = rng.gen_range(1..=max);
            tail.push(s);
            budget -= s * mk;
        }
        if ok {
            return DualPoint::from_tail(rs, level, &tail);
        }
    }
}

fn cmd_verify(name: &str, m: i64, deep: bool, allow_large: bool) -> Result<(), Failure> {
    let rs = root_system(name, allow_large)?;
    let mut ok = true;
    let mut report = |label: &str, pass: bool, detail: String| {
        emit(&format!(
            "{} {}: {}",
            if pass { "PASS" } else { "FAIL" },
            label,
            detail
        ));
        ok &= pass;
    };

    // Discrete orthogonality of the interpolation matrix.
    let gram = gram_matrix(&rs, m)?;
    let scale = rs.center_order() as f64 * (gram.level as f64).powi(rs.rank() as i32);
    let dev = gram.orthogonality_deviation(&rs);
    report(
        "gram orthogonality",
        dev <= 1e-9,
        format!(
            "max |X X* - {} ({})^{} I| = {} (relative {})",
            rs.center_order(),
            gram.level,
            rs.rank(),
            fmt17(dev * scale),
            fmt17(dev)
        ),
    );

    // Common zeros: every S-function of m-degree M+1 vanishes at the nodes.
    let nodes = enumerate_efo(&rs, m + rs.coxeter_number(), true);
    let mut zero_dev = 0.0f64;
    for lam in dominant_weights_up_to(&rs, m + 1) {
        if rs.m_degree(&lam) != m + 1 {
            continue;
        }
        for node in &nodes {
            zero_dev = zero_dev.max(s_function(&rs, &lam, node)?.norm());
        }
    }
    let zero_bound = 1e-9 * rs.weyl_order() as f64;
    report(
        "common zeros",
        zero_dev <= zero_bound,
        format!(
            "max |S| = {} (bound {})",
            fmt17(zero_dev),
            fmt17(zero_bound)
        ),
    );

    // Gaussian count duality.
    let dim = dominant_weights_up_to(&rs, m).len();
    report(
        "node count",
        nodes.len() == dim,
        format!("{} nodes vs dimension {}", nodes.len(), dim),
    );

    if deep {
        let mut rng = StdRng::seed_from_u64(0xD3E9);
        let mut jac_dev = 0.0f64;
        for _ in 0..100 {
            let x = random_interior_point(&rs, &mut rng);
            let det = steinberg_jacobian(&rs, &x)?;
            let s_rho = s_function(&rs, &Weight::zero(rs.rank()), &x)?;
            jac_dev = jac_dev.max((det - s_rho).norm() / s_rho.norm());
        }
        report(
            "jacobian identity",
            jac_dev <= 1e-8,
            format!("max relative |det(J) - S_rho| = {}", fmt17(jac_dev)),
        );

        if rs.rank() <= 3 {
            let bad = separation_check(&rs, m)?;
            report(
                "separation",
                bad.is_empty(),
                format!("{} counterexamples", bad.len()),
            );
        } else {
            emit(&format!(
                "SKIP separation: rank {} above scan limit 3",
                rs.rank()
            ));
        }
    }

    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "verification of {name} at M = {m} failed"
        )))
    }
}

fn cmd_integrate(
    rule_path: &Path,
    poly_path: &Path,
    oracle: bool,
    resolution: usize,
    allow_large: bool,
) -> Result<(), Failure> {
    let rule_text = std::fs::read_to_string(rule_path)?;
    let file: RuleFile =
        serde_json::from_str(&rule_text).map_err(|e| Failure::Usage(e.to_string()))?;
    let rule = CubatureRule::from_file(&file)?;
    let poly = PolynomialInX::from_json(&std::fs::read_to_string(poly_path)?)?;

    let (value, exact) = rule.integrate(&poly);
    if !exact {
        let rs = root_system(&file.lie_type, allow_large)?;
        eprintln!(
            "warning: exactness not guaranteed (m-degree {} > {})",
            poly.m_degree(rs.comarks()),
            2 * rule.degree() + 1
        );
    }
    emit(&format!("integral {}", fmt_complex(value)));

    if oracle {
        let rs = root_system(&file.lie_type, allow_large)?;
        let rho = Weight::rho(rs.rank());
        let rho_orbit = rs.signed_weyl_orbit(&rho)?;
        let fund_orbits: Vec<_> = (0..rs.rank())
            .map(|j| {
                let mut coords = vec![0i64; rs.rank()];
                coords[j] = 1;
                rs.signed_weyl_orbit(&Weight::new(coords).plus(&rho))
            })
            .collect::<Result<_, _>>()?;
        let scale = TAU.powi(rs.rank() as i32);
        let oracle_value = grid_quadrature_oracle(
            &rs,
            |x| {
                let s_rho = rho_orbit.alternating_sum_at(x);
                let xs: Vec<Complex64> = fund_orbits
                    .iter()
                    .map(|o| o.alternating_sum_at(x) / s_rho)
                    .collect();
                poly.eval(&xs) * s_rho.norm_sqr()
            },
            resolution,
        )? * scale;
        let gap = (value - oracle_value).norm() / oracle_value.norm().max(f64::MIN_POSITIVE);
        emit(&format!("oracle   {}", fmt_complex(oracle_value)));
        emit(&format!("relative_gap {}", fmt17(gap)));
    }
    Ok(())
}

fn cmd_approx(
    name: &str,
    m: i64,
    poly_path: &Path,
    out: Option<&Path>,
    allow_large: bool,
) -> Result<(), Failure> {
    let rs = root_system(name, allow_large)?;
    let poly = PolynomialInX::from_json(&std::fs::read_to_string(poly_path)?)?;
    let rule = build_rule(&rs, m)?;
    let node_x = rule.node_x().to_vec();
    let nodes = rule.nodes().to_vec();
    let value_at = move |p: &DualPoint| {
        let idx = nodes
            .iter()
            .position(|n| n.kac() == p.kac())
            .expect("expansion only evaluates at rule nodes");
        poly.eval(&node_x[idx])
    };
    let expansion = liecube::approx::expansion_coefficients(&rs, &rule, value_at)?;
    write_output(out, &(expansion.to_json() + "\n"))
}

fn cmd_cloud(name: &str, level: i64, out: Option<&Path>, allow_large: bool) -> Result<(), Failure> {
    if level < 1 {
        return Err(Failure::Usage("level must be positive".into()));
    }
    let rs = root_system(name, allow_large)?;
    let cloud = omega_cloud(&rs, level)?;
    let header: Vec<String> = (1..=rs.rank()).map(|j| format!("X{j}")).collect();
    let mut lines = vec![header.join(",")];
    for row in &cloud {
        let cols: Vec<String> = row.iter().map(|&v| fmt17(v)).collect();
        lines.push(cols.join(","));
    }
    write_output(out, &(lines.join("\n") + "\n"))
}
