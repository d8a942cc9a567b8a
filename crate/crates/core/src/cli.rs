//! Command-line surface: one deterministic text front end over the crate.
//!
//! Every subcommand runs exactly one module operation and prints
//! line-oriented `key: value` output (diff-friendly for golden files);
//! `--json` renders the same lines as one single-field JSON object per
//! line.  Orderings are canonical everywhere and all randomness is seeded,
//! so output is byte-identical across runs for identical inputs.
//!
//! Exit-code contract: `0` — command ran and every checked property held;
//! `1` — the command ran but falsified something (an identity mismatch, a
//! failing suite property); `2` — usage or input error (unknown name,
//! malformed expression, bad flag combination).

use crate::cartanm::{self, build_graded, evaluate_parameter, registry};
use crate::characters::{
    boundary_character, minimal_series, moebius, principal_admissible_sl2, BoundaryAlgebra,
};
use crate::e36::{induced_piece, nabla, nabla1_homology, sm_table_report, Series};
use crate::error::{Error, Result};
use crate::exceptional::e510_profile;
use crate::forms::{self, parse_form, Form};
use crate::qseries::{appell, character_eq_a, jacobi_triple_check, kronecker_check, IdentityCheck, QSeries};
use crate::rat::{fmt_rat, Rat};
use crate::suites::run_suite;
use crate::superpoly::{parse_poly, Shape};
use crate::wfields::{self, algebra_by_name, parse_field};
use crate::wred::{
    algebra, central_charge, central_charge_symbolic, complete_triple, correspondence,
    field_content, nilpotent_element,
};
use clap::{Args, Parser, Subcommand};
use std::fmt::Display;

// ---------------------------------------------------------------------------
// Report plumbing
// ---------------------------------------------------------------------------

/// Output accumulator: ordered lines plus a falsified flag that downgrades
/// the exit status from 0 to 1.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
    falsified: bool,
}

impl Report {
    fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    /// A keyless status line (`ok`); JSON renders it under `status`.
    fn push_status(&mut self, value: impl Display) {
        self.lines.push((String::new(), value.to_string()));
    }

    fn falsify(&mut self) {
        self.falsified = true;
    }

    pub fn exit_code(&self) -> i32 {
        if self.falsified {
            1
        } else {
            0
        }
    }

    pub fn render(&self, json: bool) -> String {
        let mut out = String::new();
        for (key, value) in &self.lines {
            if json {
                let object = if key.is_empty() {
                    serde_json::json!({ "status": value })
                } else {
                    serde_json::json!({ key: value })
                };
                out.push_str(&object.to_string());
            } else if key.is_empty() {
                out.push_str(value);
            } else {
                out.push_str(&format!("{key}: {value}"));
            }
            out.push('\n');
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Argument grammar
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "superlie",
    version,
    about = "Exact symbolic workbench for simple linearly compact Lie superalgebras",
    disable_help_subcommand = true
)]
struct Cli {
    /// Emit each output line as a one-field JSON object.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct ShapeArgs {
    /// Generator counts `m,n`: m commuting and n anticommuting.
    #[arg(long)]
    shape: String,
    /// Polynomial degree cap for truncated arithmetic.
    #[arg(long, default_value_t = 8)]
    cap: u32,
}

impl ShapeArgs {
    fn shape(&self) -> Result<Shape> {
        let (m, n) = split_pair(&self.shape)?;
        Ok(Shape::new(m, n, self.cap))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse an expression and print its canonical form.
    Parse {
        #[command(flatten)]
        shape: ShapeArgs,
        /// What the expression denotes: field, form, or poly.
        #[arg(long, default_value = "field")]
        kind: String,
        expr: String,
    },
    /// Bracket of two vector fields.
    Bracket {
        #[command(flatten)]
        shape: ShapeArgs,
        x: String,
        y: String,
    },
    /// Divergence of a vector field.
    Div {
        #[command(flatten)]
        shape: ShapeArgs,
        x: String,
    },
    /// Membership of a field in one of the classical subalgebra families.
    Member {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Family: s, sl, q, h, k, ho, sho, ko, spo, or p.
        #[arg(long)]
        family: String,
        x: String,
    },
    /// Simplicity of a named finite-dimensional family member.
    Simple {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 8)]
        cap: u32,
    },
    /// Derived subalgebra of a named family member.
    Derived {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 8)]
        cap: u32,
    },
    /// Filtered deformation of a named family member.
    Tilde {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 8)]
        cap: u32,
    },
    /// Differential-form operations: d, wedge, iota, lie, twisted-lie.
    FormsOp {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        op: String,
        /// Twist parameter for twisted-lie.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        a: String,
        b: Option<String>,
    },
    /// Graded dimensions of E(5|10) under a weight assignment.
    Grading {
        /// Five weights `q1,q2,q3,q4,q5` for the even coordinates.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Largest degree to report.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, default_value_t = 8)]
        cap: u32,
    },
    /// Dimension of a contragredient algebra from its Cartan datum.
    CartanDim {
        /// Registry name: D_a, F, G, or cartan_sl(k).
        #[arg(long)]
        name: String,
        /// Numeric value for the parameter of D_a (default: symbolic).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
    },
    /// Dual Coxeter number of a named algebra.
    Hcheck {
        #[arg(long)]
        name: String,
    },
    /// Character-theory operations.
    Char {
        #[command(subcommand)]
        sub: CharCmd,
    },
    /// Central charge of a quantum reduction.
    Cc {
        #[arg(long)]
        algebra: String,
        /// Nilpotent designator: lowest-root or principal.
        #[arg(long, default_value = "lowest-root")]
        f: String,
        /// Level: a rational, or `symbolic` for the closed form in k.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// Field content (and superconformal match) of a quantum reduction.
    Fields {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value = "lowest-root")]
        f: String,
    },
    /// The embedded particle-multiplet table with its charge checks.
    SmTable,
    /// Verify that the first differential squares to zero, with homology.
    NablaCheck {
        /// Family: I, II, III, or IV.
        #[arg(long)]
        series: String,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Number of module levels to cover.
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    /// Run a named invariant battery.
    Suite {
        /// One of: jacobi, forms, exceptional, characters, reduction, e36.
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Expansion window for the character battery.
        #[arg(long = "N")]
        n_window: Option<i64>,
    },
}

#[derive(Subcommand)]
enum CharCmd {
    /// Expand the two-variable Appell sum.
    Appell {
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "X")]
        x: Option<i64>,
    },
    /// Expand the closed character form at the boundary level.
    #[command(name = "eqA")]
    EqA {
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "X")]
        x: Option<i64>,
    },
    /// Check the two-variable product identity to the given order.
    Kronecker {
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "X")]
        x: Option<i64>,
    },
    /// Check the triple product identity to the given order.
    Jacobi {
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "X")]
        x: Option<i64>,
    },
    /// Enumerate the principal admissible weights for denominator u.
    Admissible {
        #[arg(long)]
        u: i64,
        #[arg(long, allow_hyphen_values = true)]
        v: i64,
    },
    /// Central charge and conformal weight of a minimal-series member.
    Minimal {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        pp: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        j: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
    },
    /// Quotient character at the boundary level.
    Boundary {
        /// sl2 or sl(2|1).
        #[arg(long)]
        algebra: String,
        /// Comma-separated letter shifts.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long = "N")]
        n: i64,
        #[arg(long = "X")]
        x: Option<i64>,
    },
    /// Modular transform of a point (tau, z, t).
    Moebius {
        /// Integer matrix `a,b,c,d` with determinant 1.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
}

// ---------------------------------------------------------------------------
// Small parsers
// ---------------------------------------------------------------------------

fn parse_rat(text: &str) -> Result<Rat> {
    text.trim().parse::<Rat>().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("expected a rational number, got `{text}`"),
    })
}

fn split_pair(text: &str) -> Result<(usize, usize)> {
    let mut parts = text.split(',');
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("expected `m,n`, got `{text}`"),
    };
    let m = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let n = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((m, n))
}

fn split_ints(text: &str, expect: Option<usize>) -> Result<Vec<i64>> {
    let vals: std::result::Result<Vec<i64>, _> =
        text.split(',').map(|p| p.trim().parse::<i64>()).collect();
    let vals = vals.map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("expected comma-separated integers, got `{text}`"),
    })?;
    if let Some(k) = expect {
        if vals.len() != k {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected {k} integers, got {}", vals.len()),
            });
        }
    }
    Ok(vals)
}

fn fmt_qhalf(qhalf: i64) -> String {
    if qhalf % 2 == 0 {
        format!("{}", qhalf / 2)
    } else {
        format!("{qhalf}/2")
    }
}

/// Append a q-series to the report, one layer per line, ascending.
fn push_series(report: &mut Report, series: &QSeries) {
    let rendered = series.to_string();
    for line in rendered.lines() {
        match line.split_once(" : ") {
            Some((q, layer)) => report.push(format!("q[{}]", q.trim()), layer),
            None => report.push_status(line),
        }
    }
}

fn push_identity(report: &mut Report, check: IdentityCheck, names: &[&str]) {
    match check {
        IdentityCheck::Ok => report.push_status("ok"),
        IdentityCheck::Mismatch {
            qhalf,
            exps,
            left,
            right,
        } => {
            let vars: Vec<String> = names
                .iter()
                .zip(exps.iter())
                .map(|(v, e)| format!("{v}^{e}"))
                .collect();
            report.push(
                "mismatch",
                format!(
                    "q^{} {}: left {} right {}",
                    fmt_qhalf(qhalf),
                    vars.join(" "),
                    fmt_rat(&left),
                    fmt_rat(&right)
                ),
            );
            report.falsify();
        }
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// Parse `argv` (including the program name) and run one subcommand.
/// Returns `(exit code, stdout, stderr)` without touching the process.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successful output, not errors
            let rendered = e.render().to_string();
            return if e.exit_code() == 0 {
                (0, rendered, String::new())
            } else {
                (2, String::new(), rendered)
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(report) => (report.exit_code(), report.render(cli.json), String::new()),
        Err(e) => (2, String::new(), format!("error: {e}\n")),
    }
}

fn dispatch(cmd: Cmd) -> Result<Report> {
    let mut report = Report::default();
    match cmd {
        Cmd::Parse { shape, kind, expr } => {
            let sh = shape.shape()?;
            match kind.as_str() {
                "field" => report.push("parsed", parse_field(&expr, sh)?),
                "form" => report.push("parsed", parse_form(&expr, sh)?),
                "poly" => report.push("parsed", parse_poly(&expr, sh)?),
                other => {
                    return Err(Error::UnknownName(format!(
                        "expression kind {other} (expected field, form, or poly)"
                    )))
                }
            }
        }
        Cmd::Bracket { shape, x, y } => {
            let sh = shape.shape()?;
            let a = parse_field(&x, sh)?;
            let b = parse_field(&y, sh)?;
            report.push("bracket", a.bracket(&b)?);
        }
        Cmd::Div { shape, x } => {
            let sh = shape.shape()?;
            report.push("div", parse_field(&x, sh)?.div()?);
        }
        Cmd::Member { shape, family, x } => {
            let sh = shape.shape()?;
            let field = parse_field(&x, sh)?;
            match family.as_str() {
                "s" => report.push("member", wfields::member_s(&field)?),
                "sl" => report.push("member", wfields::member_sl(&field)?),
                "q" => report.push("member", wfields::member_q(&field)?),
                "h" => report.push("member", forms::member_h(&field)?),
                "ho" => report.push("member", forms::member_ho(&field)?),
                "sho" => report.push("member", forms::member_sho(&field)?),
                "spo" => report.push("member", forms::member_spo(&field)?),
                "p" => report.push("member", forms::member_p(&field)?),
                "k" => match forms::member_k(&field)? {
                    Some(f) => {
                        report.push("member", true);
                        report.push("contact", f);
                    }
                    None => report.push("member", false),
                },
                "ko" => match forms::member_ko(&field)? {
                    Some(f) => {
                        report.push("member", true);
                        report.push("contact", f);
                    }
                    None => report.push("member", false),
                },
                other => {
                    return Err(Error::UnknownName(format!(
                        "family {other} (expected s, sl, q, h, k, ho, sho, ko, spo, or p)"
                    )))
                }
            }
        }
        Cmd::Simple { name, cap } => {
            let alg = algebra_by_name(&name, cap)?;
            report.push("name", &name);
            report.push("dim", alg.dim());
            report.push("simple", alg.is_simple()?);
        }
        Cmd::Derived { name, cap } => {
            let alg = algebra_by_name(&name, cap)?;
            let derived = alg.derived()?;
            report.push("name", &name);
            report.push("dim", alg.dim());
            report.push("derived-dim", derived.dim());
            report.push("codim", alg.dim() - derived.dim());
        }
        Cmd::Tilde { name, cap } => {
            let plain = algebra_by_name(&name, cap)?;
            let deformed_name = tilde_name(&name)?;
            let deformed = algebra_by_name(&deformed_name, cap)?;
            report.push("name", &deformed_name);
            report.push("dim", deformed.dim());
            report.push("closed", deformed.is_closed());
            report.push("equals-plain", deformed.same_span(&plain));
        }
        Cmd::FormsOp {
            shape,
            op,
            lambda,
            a,
            b,
        } => {
            let sh = shape.shape()?;
            let need_b = || {
                b.as_deref().ok_or_else(|| Error::Precondition(
                    format!("operation {op} needs a second argument"),
                ))
            };
            let result: Form = match op.as_str() {
                "d" => parse_form(&a, sh)?.d()?,
                "wedge" => parse_form(&a, sh)?.wedge(&parse_form(need_b()?, sh)?)?,
                "iota" => parse_form(&a, sh)?.iota(&parse_field(need_b()?, sh)?)?,
                "lie" => parse_form(&a, sh)?.lie(&parse_field(need_b()?, sh)?)?,
                "twisted-lie" => {
                    let lam = parse_rat(lambda.as_deref().ok_or_else(|| {
                        Error::Precondition("twisted-lie needs --lambda".into())
                    })?)?;
                    parse_form(&a, sh)?.twisted_lie(&parse_field(need_b()?, sh)?, &lam)?
                }
                other => {
                    return Err(Error::UnknownName(format!(
                        "form operation {other} (expected d, wedge, iota, lie, or twisted-lie)"
                    )))
                }
            };
            report.push("result", result);
        }
        Cmd::Grading { a, degree, cap } => {
            let vals = split_ints(&a, Some(5))?;
            let weights: [i64; 5] = [vals[0], vals[1], vals[2], vals[3], vals[4]];
            let profile = e510_profile(&weights, degree, cap)?;
            report.push("depth", profile.depth);
            report.push("truncated", profile.truncated);
            for (d, (even, odd)) in &profile.dims {
                report.push(format!("dim[{d}]"), format!("({even}|{odd})"));
            }
        }
        Cmd::CartanDim { name, a } => {
            let spec = registry(&name)?;
            report.push("name", &name);
            let build = match a {
                Some(text) => {
                    let a0 = parse_rat(&text)?;
                    report.push("a", fmt_rat(&a0));
                    build_graded(&evaluate_parameter(&spec, &a0)?, 24)?
                }
                None => build_graded(&spec, 24)?,
            };
            report.push("stabilized", build.stabilized);
            match build.total() {
                Some(total) => report.push("dim", total),
                None => report.push("dim", "unbounded"),
            }
        }
        Cmd::Hcheck { name } => {
            report.push("name", &name);
            report.push("hdual", fmt_rat(&cartanm::dual_coxeter(&name)?));
        }
        Cmd::Char { sub } => char_dispatch(sub, &mut report)?,
        Cmd::Cc { algebra: name, f, k } => {
            let alg = algebra(&name)?;
            let nil = nilpotent_element(&alg, &f)?;
            let datum = complete_triple(&alg, &nil)?;
            report.push("algebra", &name);
            report.push("f", &f);
            if k.trim() == "symbolic" {
                report.push("c", central_charge_symbolic(&datum).fmt_in("k"));
            } else {
                let level = parse_rat(&k)?;
                report.push("k", fmt_rat(&level));
                report.push("c", fmt_rat(&central_charge(&datum, &level)?));
            }
        }
        Cmd::Fields { algebra: name, f } => {
            let alg = algebra(&name)?;
            let nil = nilpotent_element(&alg, &f)?;
            let datum = complete_triple(&alg, &nil)?;
            report.push("algebra", &name);
            report.push("f", &f);
            for (weight, odd) in field_content(&datum)? {
                report.push(
                    "field",
                    format!("{} {}", fmt_rat(&weight), if odd { "odd" } else { "even" }),
                );
            }
            if let Ok(entry) = correspondence(&name, &f) {
                report.push("superconformal", &entry.superconformal);
                if let Some(caveat) = &entry.caveat {
                    report.push("caveat", caveat);
                }
            }
        }
        Cmd::SmTable => {
            let rows = sm_table_report();
            let mut all_ok = true;
            for verdict in &rows {
                let series = match verdict.label_series {
                    Some(s) => Series::parse(&s.to_string())
                        .map(|x| x.label().to_string())
                        .unwrap_or_else(|_| s.to_string()),
                    None => "none".into(),
                };
                let charges: Vec<String> =
                    verdict.row.charges.iter().map(fmt_rat).collect();
                let ok = verdict.charges_match && verdict.color_ok && verdict.charge_ok;
                all_ok &= ok;
                report.push(
                    "row",
                    format!(
                        "{} charges [{}] series {} {} | {}",
                        verdict.row.multiplet,
                        charges.join(", "),
                        series,
                        if ok { "pass" } else { "FAIL" },
                        verdict.row.particles
                    ),
                );
            }
            report.push("table", if all_ok { "ok" } else { "mismatch" });
            if !all_ok {
                report.falsify();
            }
        }
        Cmd::NablaCheck {
            series,
            m,
            n,
            levels,
        } => {
            let family = Series::parse(&series)?;
            let piece = induced_piece(family, m, n, levels)?;
            let step = nabla(1, &piece)?;
            let target = induced_piece(family, m - 1, n - 1, levels + 1)?;
            let next = nabla(1, &target)?;
            let zero = step.then(&next)?.is_zero();
            report.push("series", family.label());
            report.push("bidegree", format!("({m}, {n})"));
            report.push("levels", levels);
            report.push("squares-to-zero", zero);
            for level in 0..=levels.saturating_sub(1) {
                let node = nabla1_homology(family, m, n, level)?;
                report.push(
                    format!("h[{level}]"),
                    format!(
                        "space {} kernel {} image {} homology {}",
                        node.dim_space, node.dim_kernel, node.dim_image, node.dim_homology
                    ),
                );
            }
            if !zero {
                report.falsify();
            }
        }
        Cmd::Suite {
            name,
            seed,
            n_window,
        } => {
            let suite = run_suite(&name, seed, n_window)?;
            for (label, ok) in &suite.items {
                report.push(label, if *ok { "pass" } else { "fail" });
            }
            report.push(
                format!("suite {}", suite.name),
                if suite.all_passed() { "ok" } else { "FAILED" },
            );
            if !suite.all_passed() {
                report.falsify();
            }
        }
    }
    Ok(report)
}

fn char_dispatch(sub: CharCmd, report: &mut Report) -> Result<()> {
    match sub {
        CharCmd::Appell { n, x } => {
            let window = x.unwrap_or(n) as i32;
            push_series(report, &appell(n, window));
        }
        CharCmd::EqA { n, x } => {
            let window = x.unwrap_or(n) as i32;
            push_series(report, &character_eq_a(n, window)?);
        }
        CharCmd::Kronecker { n, x } => {
            let window = x.unwrap_or(n) as i32;
            push_identity(report, kronecker_check(n, window)?, &["u", "v"]);
        }
        CharCmd::Jacobi { n, x } => {
            let window = x.unwrap_or(n) as i32;
            push_identity(report, jacobi_triple_check(n, window)?, &["z"]);
        }
        CharCmd::Admissible { u, v } => {
            let weights = principal_admissible_sl2(u, v)?;
            report.push("count", weights.len());
            for w in &weights {
                let finite: Vec<String> = w.finite.iter().map(fmt_rat).collect();
                report.push(
                    "weight",
                    format!("finite [{}] level {}", finite.join(", "), fmt_rat(&w.level())),
                );
            }
        }
        CharCmd::Minimal { p, pp, j, n } => {
            let (c, h) = minimal_series(p, pp, j, n)?;
            report.push("c", fmt_rat(&c));
            report.push("h", fmt_rat(&h));
        }
        CharCmd::Boundary { algebra, b, n, x } => {
            let alg = match algebra.trim() {
                "sl2" | "sl(2)" => BoundaryAlgebra::Sl2,
                "sl(2|1)" => BoundaryAlgebra::Sl21,
                other => {
                    return Err(Error::UnknownName(format!(
                        "boundary algebra {other} (expected sl2 or sl(2|1))"
                    )))
                }
            };
            let shifts = split_ints(&b, None)?;
            let window = x.unwrap_or(n) as i32;
            push_series(report, &boundary_character(alg, &shifts, n, window)?);
        }
        CharCmd::Moebius { gamma, tau, z, t } => {
            let g = split_ints(&gamma, Some(4))?;
            let matrix = [[g[0], g[1]], [g[2], g[3]]];
            let point = (parse_rat(&tau)?, vec![parse_rat(&z)?], parse_rat(&t)?);
            let gram = vec![vec![crate::rat::rat(1, 2)]];
            let (tau2, z2, t2) = moebius(matrix, &point, &gram)?;
            report.push("tau", fmt_rat(&tau2));
            let zs: Vec<String> = z2.iter().map(fmt_rat).collect();
            report.push("z", zs.join(", "));
            report.push("t", fmt_rat(&t2));
        }
    }
    Ok(())
}

/// `S(0|4)` → `S~(0|4)`: insert the deformation mark after the letter head.
fn tilde_name(name: &str) -> Result<String> {
    let open = name.find('(').ok_or_else(|| Error::UnknownName(name.into()))?;
    let (head, rest) = name.split_at(open);
    if head.ends_with('~') {
        return Ok(name.to_string());
    }
    Ok(format!("{head}~{rest}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_line(args: &[&str]) -> (i32, String, String) {
        let mut argv = vec!["superlie"];
        argv.extend_from_slice(args);
        run(argv)
    }

    #[test]
    fn bracket_example_prints_a_field() {
        let (code, out, err) = run_line(&[
            "bracket",
            "--shape",
            "1,2",
            "xi1 d/dxi2",
            "xi2 d/dxi1",
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.starts_with("bracket: "), "{out}");
        assert!(out.contains("d/dxi"), "{out}");
    }

    #[test]
    fn cartan_dim_examples() {
        let (code, out, _) = run_line(&["cartan-dim", "--name", "F"]);
        assert_eq!(code, 0);
        assert!(out.contains("dim: 40"), "{out}");
        let (code, out, _) = run_line(&["cartan-dim", "--name", "D_a", "--a", "1/3"]);
        assert_eq!(code, 0);
        assert!(out.contains("dim: 17"), "{out}");
        let (code, out, _) = run_line(&["cartan-dim", "--name", "D_a"]);
        assert_eq!(code, 0);
        assert!(out.contains("dim: 17"), "{out}");
    }

    #[test]
    fn kronecker_check_says_ok() {
        let (code, out, _) = run_line(&["char", "kronecker", "--N", "4", "--X", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "ok\n");
    }

    #[test]
    fn unknown_suite_exits_2() {
        let (code, out, err) = run_line(&["suite", "nosuch"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("nosuch"), "{err}");
    }

    #[test]
    fn unknown_subcommand_exits_2() {
        let (code, _, _) = run_line(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn malformed_expression_exits_2() {
        let (code, _, err) = run_line(&["div", "--shape", "2,0", "x1 d/dx7"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error: "), "{err}");
    }

    #[test]
    fn cc_numeric_and_symbolic() {
        let (code, out, _) = run_line(&[
            "cc",
            "--algebra",
            "sl(2|1)",
            "--f",
            "lowest-root",
            "--k",
            "-2/3",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("c: 1"), "{out}");
        let (code, out, _) = run_line(&[
            "cc",
            "--algebra",
            "sl(2|1)",
            "--f",
            "lowest-root",
            "--k",
            "symbolic",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("c: "), "{out}");
        assert!(out.contains('k'), "{out}");
    }

    #[test]
    fn json_mode_mirrors_text_lines() {
        let (code, text, _) = run_line(&["char", "minimal", "--p", "4", "--pp", "3"]);
        assert_eq!(code, 0);
        let (code, json, _) =
            run_line(&["--json", "char", "minimal", "--p", "4", "--pp", "3"]);
        assert_eq!(code, 0);
        assert_eq!(text.lines().count(), json.lines().count());
        for line in json.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.is_object());
        }
        assert!(text.contains("c: 1/2"));
        assert!(json.contains("{\"c\":\"1/2\"}"));
    }

    #[test]
    fn suite_reports_and_exit_codes() {
        let (code, out, _) = run_line(&["suite", "characters", "--N", "4"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("suite characters: ok"), "{out}");
        assert!(out.lines().all(|l| l.contains(": ")), "{out}");
    }

    #[test]
    fn output_is_reproducible() {
        let a = run_line(&["sm-table"]);
        let b = run_line(&["sm-table"]);
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
        assert!(a.1.contains("table: ok"), "{}", a.1);
        let a = run_line(&["suite", "jacobi", "--seed", "5"]);
        let b = run_line(&["suite", "jacobi", "--seed", "5"]);
        assert_eq!(a, b);
    }

    #[test]
    fn nabla_check_reports_square_zero() {
        let (code, out, _) = run_line(&[
            "nabla-check",
            "--series",
            "I",
            "--m",
            "1",
            "--n",
            "1",
            "--levels",
            "2",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("squares-to-zero: true"), "{out}");
        assert!(out.contains("h[0]"), "{out}");
    }

    #[test]
    fn grading_profile_lines() {
        let (code, out, _) = run_line(&[
            "grading",
            "--a",
            "2,2,2,2,2",
            "--degree",
            "0",
            "--cap",
            "3",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("depth: 2"), "{out}");
        assert!(out.contains("dim[0]: (24|0)"), "{out}");
        assert!(out.contains("dim[-1]: (0|10)"), "{out}");
        assert!(out.contains("dim[-2]: (5|0)"), "{out}");
    }

    #[test]
    fn structural_subcommands() {
        let (code, out, _) = run_line(&["simple", "--name", "W(0|2)"]);
        assert_eq!(code, 0);
        assert!(out.contains("simple: true"), "{out}");
        let (code, out, _) = run_line(&["derived", "--name", "H(0|4)"]);
        assert_eq!(code, 0);
        assert!(out.contains("codim: 1"), "{out}");
        let (code, out, _) = run_line(&["tilde", "--name", "S(0|4)"]);
        assert_eq!(code, 0);
        assert!(out.contains("closed: true"), "{out}");
        assert!(out.contains("equals-plain: false"), "{out}");
        let (code, out, _) = run_line(&[
            "member",
            "--shape",
            "0,4",
            "--family",
            "s",
            "xi1 d/dxi2",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("member: "), "{out}");
    }

    #[test]
    fn forms_op_roundtrip() {
        let (code, out, _) = run_line(&[
            "forms-op",
            "--shape",
            "2,1",
            "--op",
            "d",
            "x1*dx2",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("result: "), "{out}");
        let (code, out, _) = run_line(&[
            "forms-op",
            "--shape",
            "2,1",
            "--op",
            "wedge",
            "dx1",
            "dx2",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("dx1*dx2"), "{out}");
    }

    #[test]
    fn hcheck_and_fields() {
        let (code, out, _) = run_line(&["hcheck", "--name", "sl(3|1)"]);
        assert_eq!(code, 0);
        assert!(out.contains("hdual: 2"), "{out}");
        let (code, out, _) =
            run_line(&["fields", "--algebra", "sl(2|1)", "--f", "lowest-root"]);
        assert_eq!(code, 0);
        assert!(out.contains("field: 2 even"), "{out}");
        assert!(out.contains("field: 3/2 odd"), "{out}");
        assert!(out.contains("superconformal: "), "{out}");
    }

    #[test]
    fn char_admissible_counts() {
        let (code, out, _) = run_line(&["char", "admissible", "--u", "3", "--v", "-2"]);
        assert_eq!(code, 0);
        assert!(out.contains("count: 9"), "{out}");
        assert_eq!(out.matches("weight: ").count(), 9, "{out}");
    }
}
