//! Command-line surface: subgroup tables, Möbius values, normal-subgroup
//! counts and brute-force verification reports for Sz(2^e).

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use sz_moebius::catalog::{
    canonical_classes, class_order, class_size, group_order, normalizer_order, ClassLabel, Kind,
    C1, C2, C4,
};
use sz_moebius::enumeration::{
    closed_form_h4, closed_form_h5, closed_form_h7, n_gamma, order_census, GammaDescriptor,
};
use sz_moebius::group::Suzuki;
use sz_moebius::moebius::mu_table;
use sz_moebius::oracle::{
    check, normalizer, order_census_of, pair_census, pair_census_unoptimized, verify_eq2,
    CheckResult, OracleContext,
};
use sz_moebius::perm::PermGroup;

const SCHEMA_VERSION: &str = "sz-moebius/1";
/// Symbolic commands accept any odd e up to this bound.
const MAX_SYMBOLIC_E: u32 = 1 << 20;

#[derive(Parser)]
#[command(name = "sz-moebius", version, about = "Möbius function on the subgroup lattice of Sz(2^e)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// The subgroup classes with nonzero Möbius values: |H|, |N_G(H)|, mu.
    Table(SymbolicArgs),
    /// Möbius values of every canonical class.
    Mu(SymbolicArgs),
    /// All canonical classes with orders, normalizer orders and class sizes.
    Classes(SymbolicArgs),
    /// Normal subgroups of a free or Hecke group with quotient Sz(2^e).
    Count(CountArgs),
    /// Brute-force verification suites inside explicit Sz(2^e).
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SymbolicArgs {
    /// Field degree e (odd, > 1).
    #[arg(long)]
    e: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CountArgs {
    /// Field degree e (odd, > 1).
    #[arg(long)]
    e: u32,
    /// Group to count from: free:k, hecke:k or hecke-all:k.
    #[arg(long)]
    gamma: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Field degree e (explicit construction: 1, 3 or 5).
    #[arg(long)]
    e: u32,
    #[arg(long, default_value = "all")]
    suite: String,
    /// Worker threads for the oracle loops (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Also run the unoptimized all-pairs H4 census (slow).
    #[arg(long)]
    opt_in_slow: bool,
}

#[derive(Serialize)]
struct ClassRow {
    class: String,
    order: String,
    normalizer_order: String,
    class_size: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<String>,
}

#[derive(Serialize)]
struct TableOutput {
    schema_version: &'static str,
    e: u32,
    command: &'static str,
    rows: Vec<ClassRow>,
}

#[derive(Serialize)]
struct CountOutput {
    schema_version: &'static str,
    e: u32,
    command: &'static str,
    gamma: String,
    count: String,
}

#[derive(Serialize)]
struct VerifyOutput {
    schema_version: &'static str,
    e: u32,
    command: &'static str,
    suite: String,
    pass: bool,
    checks: Vec<CheckResult>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn require_symbolic_e(e: u32) -> Result<(), String> {
    if e % 2 == 0 || e <= 1 {
        return Err(format!("e must be odd and > 1 (got {e})"));
    }
    if e > MAX_SYMBOLIC_E {
        return Err(format!("e must be at most {MAX_SYMBOLIC_E} (got {e})"));
    }
    Ok(())
}

fn parse_gamma(s: &str) -> Result<GammaDescriptor, String> {
    let (head, tail) = s
        .split_once(':')
        .ok_or_else(|| format!("gamma must look like free:k or hecke:k (got {s})"))?;
    let k: u32 = tail
        .parse()
        .map_err(|_| format!("bad k in gamma spec {s}"))?;
    match head {
        "free" if k >= 1 => Ok(GammaDescriptor::FreeGroup(k)),
        "hecke" if k >= 3 => Ok(GammaDescriptor::HeckeSmooth(k)),
        "hecke-all" if k >= 3 => Ok(GammaDescriptor::HeckeAll(k)),
        "free" => Err("free rank must be >= 1".into()),
        "hecke" | "hecke-all" => Err("Hecke k must be >= 3".into()),
        _ => Err(format!("unknown gamma family {head}")),
    }
}

/// Prints a fully rendered record, tolerating a closed pipe on stdout.
fn emit(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
}

fn render_rows(out: &TableOutput, format: Format, with_mu: bool) {
    use std::fmt::Write;
    let mut text = String::new();
    match format {
        Format::Json => {
            writeln!(text, "{}", serde_json::to_string_pretty(out).unwrap()).unwrap()
        }
        Format::Csv => {
            if with_mu {
                writeln!(text, "class,order,normalizer_order,class_size,mu").unwrap();
            } else {
                writeln!(text, "class,order,normalizer_order,class_size").unwrap();
            }
            for r in &out.rows {
                if with_mu {
                    writeln!(
                        text,
                        "{},{},{},{},{}",
                        r.class,
                        r.order,
                        r.normalizer_order,
                        r.class_size,
                        r.mu.as_deref().unwrap_or("")
                    )
                    .unwrap();
                } else {
                    writeln!(
                        text,
                        "{},{},{},{}",
                        r.class, r.order, r.normalizer_order, r.class_size
                    )
                    .unwrap();
                }
            }
        }
        Format::Text => {
            for r in &out.rows {
                if with_mu {
                    writeln!(
                        text,
                        "{:<8} |H| = {:<24} |N(H)| = {:<24} mu = {}",
                        r.class,
                        r.order,
                        r.normalizer_order,
                        r.mu.as_deref().unwrap_or("")
                    )
                    .unwrap();
                } else {
                    writeln!(
                        text,
                        "{:<8} |H| = {:<24} |N(H)| = {:<24} class size = {}",
                        r.class, r.order, r.normalizer_order, r.class_size
                    )
                    .unwrap();
                }
            }
        }
    }
    emit(&text);
}

fn class_row(label: ClassLabel, e: u32, mu: Option<String>) -> ClassRow {
    ClassRow {
        class: label.to_string(),
        order: class_order(label, e).to_string(),
        normalizer_order: normalizer_order(label, e).to_string(),
        class_size: class_size(label, e).to_string(),
        mu,
    }
}

/// Rows of the nonzero-Möbius table, in its traditional order: the kinds
/// that can carry nonzero values with level descending within each kind,
/// then the three small cyclic classes.
fn table_labels(e: u32) -> Vec<ClassLabel> {
    let mut labels = Vec::new();
    for kind in [Kind::G, Kind::F, Kind::B0, Kind::A0, Kind::B1, Kind::B2] {
        let mut fs = sz_moebius::catalog::divisors(e);
        fs.reverse();
        for f in fs {
            let label = ClassLabel { kind, level: f };
            // C4, C2 and C1 close the table; skip their kind-row aliases.
            if label.is_canonical(e) && ![C4, C2, C1].contains(&label) {
                labels.push(label);
            }
        }
    }
    labels.extend([C4, C2, C1]);
    labels
}

fn cmd_table(args: &SymbolicArgs) -> Result<(), String> {
    require_symbolic_e(args.e)?;
    let table = mu_table(args.e);
    let rows = table_labels(args.e)
        .into_iter()
        .map(|l| class_row(l, args.e, Some(table.get(l).to_string())))
        .collect();
    let out = TableOutput {
        schema_version: SCHEMA_VERSION,
        e: args.e,
        command: "table",
        rows,
    };
    render_rows(&out, args.format, true);
    Ok(())
}

fn cmd_mu(args: &SymbolicArgs) -> Result<(), String> {
    require_symbolic_e(args.e)?;
    let table = mu_table(args.e);
    let rows = table
        .classes
        .iter()
        .map(|&l| class_row(l, args.e, Some(table.get(l).to_string())))
        .collect();
    let out = TableOutput {
        schema_version: SCHEMA_VERSION,
        e: args.e,
        command: "mu",
        rows,
    };
    render_rows(&out, args.format, true);
    Ok(())
}

fn cmd_classes(args: &SymbolicArgs) -> Result<(), String> {
    require_symbolic_e(args.e)?;
    let rows = canonical_classes(args.e)
        .into_iter()
        .map(|l| class_row(l, args.e, None))
        .collect();
    let out = TableOutput {
        schema_version: SCHEMA_VERSION,
        e: args.e,
        command: "classes",
        rows,
    };
    render_rows(&out, args.format, false);
    Ok(())
}

fn cmd_count(args: &CountArgs) -> Result<(), String> {
    require_symbolic_e(args.e)?;
    let gamma = parse_gamma(&args.gamma)?;
    let count = n_gamma(gamma, args.e);
    match args.format {
        Format::Json => {
            let out = CountOutput {
                schema_version: SCHEMA_VERSION,
                e: args.e,
                command: "count",
                gamma: args.gamma.clone(),
                count: count.to_string(),
            };
            emit(&format!("{}\n", serde_json::to_string_pretty(&out).unwrap()));
        }
        Format::Csv | Format::Text => emit(&format!("{count}\n")),
    }
    Ok(())
}

// ---------------------------------------------------------------- verify --

fn suite_field(e: u32) -> Vec<CheckResult> {
    use sz_moebius::field::Field;
    let mut checks = Vec::new();
    let field = Field::new(e);
    let t0 = Instant::now();
    let theta_squares_to_frobenius = (0..1u64 << e)
        .all(|x| field.theta(field.theta(x)) == field.mul(x, x));
    checks.push(check(
        format!("field[{e}].theta^2 = frobenius"),
        true,
        theta_squares_to_frobenius,
        t0,
    ));
    let t0 = Instant::now();
    let theta_inverts = (0..1u64 << e).all(|x| field.theta_inv(field.theta(x)) == x);
    checks.push(check(format!("field[{e}].theta invertible"), true, theta_inverts, t0));
    let t0 = Instant::now();
    let inverses = (1..1u64 << e).all(|x| field.mul(x, field.inv(x)) == 1);
    checks.push(check(format!("field[{e}].inverses"), true, inverses, t0));
    for f in sz_moebius::catalog::divisors(e) {
        let t0 = Instant::now();
        checks.push(check(
            format!("field[{e}].subfield GF(2^{f}) size"),
            1u64 << f,
            field.subfield_elements(f).len() as u64,
            t0,
        ));
    }
    checks
}

fn suite_group(e: u32) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let gr = Suzuki::new(e);
    let degree = gr.ovoid_size() as usize;
    let gen_perms: Vec<_> = gr.generators().iter().map(|&g| gr.permutation(g)).collect();
    let t0 = Instant::now();
    let pg = PermGroup::new(degree, &gen_perms);
    checks.push(check(
        format!("group[{e}].permutation order"),
        BigUint::from(gr.order()),
        pg.order(),
        t0,
    ));
    let t0 = Instant::now();
    let sizes = pg.orbit_sizes();
    let two_transitive = sizes.len() >= 2 && sizes[0] == degree as u64 && sizes[1] == degree as u64 - 1;
    checks.push(check(format!("group[{e}].2-transitive"), true, two_transitive, t0));
    if e <= 3 {
        let t0 = Instant::now();
        let count = gr.elements().count() as u64;
        checks.push(check(
            format!("group[{e}].bruhat form count"),
            gr.order(),
            count,
            t0,
        ));
    }
    checks
}

fn suite_normalizers(ctx: &OracleContext) -> Vec<CheckResult> {
    let e = ctx.gr.degree_e();
    ctx.classes
        .iter()
        .map(|&label| {
            let t0 = Instant::now();
            let n = normalizer(&ctx.gr, ctx.rep(label)).len() as u64;
            check(
                format!("normalizer[{label}]"),
                normalizer_order(label, e).to_string(),
                n.to_string(),
                t0,
            )
        })
        .collect()
}

fn suite_ncounts(ctx: &OracleContext) -> Vec<CheckResult> {
    let e = ctx.gr.degree_e();
    let mut checks = Vec::new();
    for &h in &ctx.classes {
        for &k in &ctx.classes {
            let t0 = Instant::now();
            let actual = if h == C1 {
                ctx.conjugates[&k].len() as u64
            } else {
                ctx.n_oracle(h, k)
            };
            let expected = sz_moebius::moebius::n_count(h, k, e);
            checks.push(check(
                format!("ncount[{h};{k}]"),
                expected.to_string(),
                actual.to_string(),
                t0,
            ));
        }
    }
    checks
}

fn suite_census(ctx: &OracleContext) -> Vec<CheckResult> {
    let e = ctx.gr.degree_e();
    let mut checks = Vec::new();
    for &label in &ctx.classes {
        let t0 = Instant::now();
        let actual = order_census_of(&ctx.gr, ctx.rep(label));
        let expected: HashMap<u64, BigUint> = order_census(label, e).into_iter().collect();
        let matches = expected.len() == actual.len()
            && actual
                .iter()
                .all(|(n, c)| expected.get(n) == Some(&BigUint::from(*c)));
        checks.push(check(format!("census[{label}]"), true, matches, t0));
    }
    // The whole-group census must partition |G|.
    let t0 = Instant::now();
    let top = ctx.classes[0];
    let total: u64 = order_census_of(&ctx.gr, ctx.rep(top)).values().sum();
    checks.push(check("census[partition]", ctx.gr.order(), total, t0));
    checks
}

fn suite_pairs(ctx: &OracleContext, opt_in_slow: bool) -> Vec<CheckResult> {
    let e = ctx.gr.degree_e();
    let aut = BigUint::from(e as u64) * group_order(e);
    let mut checks = Vec::new();
    for (k, expected) in [
        (4u64, closed_form_h4(e)),
        (5, closed_form_h5(e)),
        (7, closed_form_h7(e)),
    ] {
        let t0 = Instant::now();
        let census = BigUint::from(pair_census(&ctx.gr, k));
        checks.push(check(
            format!("pairs[order {k}] / |Aut G|"),
            expected.to_string(),
            (census / &aut).to_string(),
            t0,
        ));
    }
    if opt_in_slow {
        let t0 = Instant::now();
        let slow = pair_census_unoptimized(&ctx.gr, 4);
        checks.push(check("pairs[order 4, all-pairs census]", pair_census(&ctx.gr, 4), slow, t0));
    }
    checks
}

fn suite_mobius(ctx: &OracleContext) -> Vec<CheckResult> {
    verify_eq2(ctx)
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, String> {
    if !matches!(args.e, 1 | 3 | 5) {
        return Err(format!("explicit verification needs e in {{1, 3, 5}} (got {})", args.e));
    }
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|err| err.to_string())?;
    }
    let oracle_suites = ["normalizers", "ncounts", "mobius", "census", "pairs"];
    let known: Vec<&str> = ["all", "field", "group"]
        .into_iter()
        .chain(oracle_suites)
        .collect();
    if !known.contains(&args.suite.as_str()) {
        return Err(format!("unknown suite {} (known: {})", args.suite, known.join(", ")));
    }
    let wants = |name: &str| args.suite == "all" || args.suite == name;
    if args.e != 3 && oracle_suites.iter().any(|s| *s == args.suite) {
        return Err(format!("suite {} requires e = 3", args.suite));
    }

    let mut checks = Vec::new();
    if wants("field") {
        checks.extend(suite_field(args.e));
    }
    if wants("group") {
        checks.extend(suite_group(args.e));
    }
    if args.e == 3 && oracle_suites.iter().any(|s| wants(s)) {
        let ctx = OracleContext::new(3);
        if wants("normalizers") {
            checks.extend(suite_normalizers(&ctx));
        }
        if wants("ncounts") {
            checks.extend(suite_ncounts(&ctx));
        }
        if wants("mobius") {
            checks.extend(suite_mobius(&ctx));
        }
        if wants("census") {
            checks.extend(suite_census(&ctx));
        }
        if wants("pairs") {
            checks.extend(suite_pairs(&ctx, args.opt_in_slow));
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    let out = VerifyOutput {
        schema_version: SCHEMA_VERSION,
        e: args.e,
        command: "verify",
        suite: args.suite.clone(),
        pass,
        checks,
    };
    emit(&format!("{}\n", serde_json::to_string_pretty(&out).unwrap()));
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Table(args) => cmd_table(args),
        Command::Mu(args) => cmd_mu(args),
        Command::Classes(args) => cmd_classes(args),
        Command::Count(args) => cmd_count(args),
        Command::Verify(args) => {
            return match cmd_verify(args) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(1),
                Err(msg) => usage_error(&msg),
            };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => usage_error(&msg),
    }
}
