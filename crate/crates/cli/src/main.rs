//! `dilates`: command-line frontend for the sums-of-dilates workbench.
//!
//! Exit codes: 0 when every reported check passes, 1 when a mathematical
//! check fails, 2 on usage or parse errors.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use dilates_core::alphafield::AlphaContext;
use dilates_core::bounds::{chi5_witness_check, chi_search_z, chi_table, lower_bounds, Scope, Side};
use dilates_core::freewords::ReducedWord;
use dilates_core::ordgroup::{
    cone_property_check, verify_grid_identities, verify_pair_identity, OrderedGroup,
};
use dilates_core::rng::SplitMix64;
use dilates_core::sumsets::{
    parse_zset, parse_znset, productset, render_zset, render_znset, sumset_z, sumset_zn,
    verify_distinct_dilates_bound, GSet,
};

use output::{decimal_approx, parse_width, Check, RunOutput};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "dilates",
    version,
    about = "Exact verification and search workbench for sums of dilates in ordered groups"
)]
struct Cli {
    /// Output format; the DILATES_FORMAT environment variable sets the default
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified enclosure of the structure constant for a parameter pair
    Beta {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        /// Target enclosure width (rational, decimal or scientific)
        #[arg(long, default_value = "1e-6")]
        width: String,
    },
    /// Verify the two-generator identity and the three-element product set
    VerifyPair {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
    },
    /// Verify all grid identities and the quadratic product-set size
    VerifyGrid {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        r: usize,
    },
    /// Dilate-sumset cardinality over Z or Z^n with bound checks
    Sumset {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        /// `0,1,3,4` for Z or `(0,0);(1,0);(0,1)` for Z^n
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = Domain::Z)]
        domain: Domain,
    },
    /// Exhaustive normalized search for the minimal sumset size over Z
    Chi {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        max_diameter: i64,
    },
    /// Theoretical bound table for the minimal sumset size
    Bounds {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        r: u64,
    },
    /// Reduce a free-group word and optionally analyze it
    Word {
        /// Word literal, e.g. `a^2 b^-3 a`
        word: String,
        /// Report whether the word is a proper power
        #[arg(long)]
        proper_power: bool,
        /// Report the cyclic reduction
        #[arg(long)]
        cyclic_reduce: bool,
    },
    /// Sample-based verification of the positive-cone conditions
    ConeCheck {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the four conditions a five-element witness triple must satisfy
    Chi5 {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Domain {
    Z,
    Zn,
}

struct UsageError(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli
        .format
        .or_else(|| match std::env::var("DILATES_FORMAT").ok().as_deref() {
            Some("json") => Some(Format::Json),
            Some("csv") => Some(Format::Csv),
            Some("text") => Some(Format::Text),
            _ => None,
        })
        .unwrap_or(Format::Text);

    // CSV is reserved for the two tabular commands.
    if format == Format::Csv && !matches!(cli.command, Command::Chi { .. } | Command::Bounds { .. })
    {
        eprintln!("error: csv output is only available for `chi` and `bounds`");
        return ExitCode::from(2);
    }

    let rendered: Result<(String, bool), UsageError> = match &cli.command {
        Command::Chi { k, l, r, max_diameter } if format == Format::Csv => {
            chi_csv(*k, *l, *r, *max_diameter)
        }
        Command::Bounds { k, l, r } if format == Format::Csv => bounds_csv(*k, *l, *r),
        command => run_command(command).map(|out| {
            let text = match format {
                Format::Json => out.to_json(),
                _ => out.to_text(),
            };
            (text, out.all_pass())
        }),
    };

    match rendered {
        Ok((text, all_pass)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run_command(command: &Command) -> Result<RunOutput, UsageError> {
    match command {
        Command::Beta { k, l, width } => cmd_beta(*k, *l, width),
        Command::VerifyPair { k, l } => cmd_verify_pair(*k, *l),
        Command::VerifyGrid { k, l, r } => cmd_verify_grid(*k, *l, *r),
        Command::Sumset { k, l, set, domain } => cmd_sumset(*k, *l, set, *domain),
        Command::Chi { k, l, r, max_diameter } => cmd_chi(*k, *l, *r, *max_diameter),
        Command::Bounds { k, l, r } => cmd_bounds(*k, *l, *r),
        Command::Word { word, proper_power, cyclic_reduce } => {
            cmd_word(word, *proper_power, *cyclic_reduce)
        }
        Command::ConeCheck { k, l, r, samples, seed } => cmd_cone_check(*k, *l, *r, *samples, *seed),
        Command::Chi5 { k, l, r, x, y, z } => cmd_chi5(*k, *l, *r, x, y, z),
    }
}

fn require_positive_pair(k: u32, l: u32) -> Result<(), UsageError> {
    if k < 1 || l < 1 {
        return Err(UsageError("k and l must be positive integers".into()));
    }
    Ok(())
}

fn cmd_beta(k: u32, l: u32, width: &str) -> Result<RunOutput, UsageError> {
    require_positive_pair(k, l)?;
    let width_r =
        parse_width(width).ok_or_else(|| UsageError(format!("invalid width {width:?}")))?;
    let ctx = AlphaContext::new(k, l);
    let rho = ctx.refine_rho(&width_r);
    let beta = rho.pow_positive_base(ctx.k() as i64);
    let poly = ctx.defining_poly();
    // the unique positive root is rational only in the degenerate case,
    // where it equals 1 outright
    let one = num_rational::BigRational::from(BigInt::from(1));
    let exactly_one = poly.sign_at(&one) == 0;
    let checks = vec![
        Check::new(
            "enclosure-width",
            rho.width() <= width_r,
            decimal_approx(&rho.width(), 12),
            width,
        ),
        Check::new(
            "endpoint-sign-change",
            poly.sign_at(rho.lo()) * poly.sign_at(rho.hi()) == -1,
            format!("sign(P(lo)) = {}", poly.sign_at(rho.lo())),
            format!("sign(P(hi)) = {}", poly.sign_at(rho.hi())),
        ),
    ];
    Ok(RunOutput {
        command: "beta".into(),
        inputs: json!({"k": k, "l": l, "width": width}),
        results: json!({
            "normalized_k": ctx.k(),
            "normalized_l": ctx.l(),
            "defining_polynomial": poly.to_string(),
            "rho": {
                "lo": rho.lo().to_string(),
                "hi": rho.hi().to_string(),
                "approx": decimal_approx(&rho.midpoint(), 12),
                "exact": if exactly_one { Some("1") } else { None },
            },
            "beta": {
                "lo": beta.lo().to_string(),
                "hi": beta.hi().to_string(),
                "approx": decimal_approx(&beta.midpoint(), 12),
                "exact": if exactly_one { Some("1") } else { None },
            },
        }),
        checks,
    })
}

fn cmd_verify_pair(k: u32, l: u32) -> Result<RunOutput, UsageError> {
    require_positive_pair(k, l)?;
    let ctx = Arc::new(AlphaContext::new(k, l));
    let report = verify_pair_identity(&ctx);
    let group = OrderedGroup::new(Arc::clone(&ctx), 1);
    let xs = GSet::from_elements(&group, [group.generator(0), group.generator(1)]);
    let products = productset(&group, &xs, ctx.k() as i64, ctx.l() as i64);

    let mut checks: Vec<Check> = report
        .checks
        .iter()
        .map(|c| Check::new(&format!("identity-e{}-e{}", c.i, c.j), c.pass, &c.lhs, &c.rhs))
        .collect();
    checks.push(Check::new("product-set-cardinality", products.len() == 3, products.len(), 3));

    Ok(RunOutput {
        command: "verify-pair".into(),
        inputs: json!({"k": k, "l": l}),
        results: json!({
            "normalized_k": ctx.k(),
            "normalized_l": ctx.l(),
            "identities": serde_json::to_value(&report.checks).unwrap(),
            "product_set": products
                .elements()
                .iter()
                .map(|e| group.render(e))
                .collect::<Vec<_>>(),
        }),
        checks,
    })
}

fn cmd_verify_grid(k: u32, l: u32, r: usize) -> Result<RunOutput, UsageError> {
    require_positive_pair(k, l)?;
    if r < 1 {
        return Err(UsageError("r must be at least 1".into()));
    }
    let ctx = Arc::new(AlphaContext::new(k, l));
    let report = verify_grid_identities(&ctx, r);
    let group = OrderedGroup::new(Arc::clone(&ctx), r);
    let xs = GSet::from_elements(&group, group.generator_set());
    let products = productset(&group, &xs, ctx.k() as i64, ctx.l() as i64);
    let expected = r * (r + 1) / 2;

    let mut checks: Vec<Check> = report
        .checks
        .iter()
        .map(|c| Check::new(&format!("identity-e{}-e{}", c.i, c.j), c.pass, &c.lhs, &c.rhs))
        .collect();
    checks.push(Check::new(
        "product-set-cardinality",
        products.len() == expected,
        products.len(),
        expected,
    ));

    Ok(RunOutput {
        command: "verify-grid".into(),
        inputs: json!({"k": k, "l": l, "r": r}),
        results: json!({
            "normalized_k": ctx.k(),
            "normalized_l": ctx.l(),
            "identities_checked": report.checks.len(),
            "product_set_size": products.len(),
        }),
        checks,
    })
}

fn cmd_sumset(k: i64, l: i64, set: &str, domain: Domain) -> Result<RunOutput, UsageError> {
    if k == 0 || l == 0 {
        return Err(UsageError("k and l must be nonzero".into()));
    }
    match domain {
        Domain::Z => {
            let xs = parse_zset(set).map_err(|e| UsageError(e.to_string()))?;
            let sum = sumset_z(k, &xs, l);
            let bounds = lower_bounds(k, l, xs.len() as u64);
            let checks: Vec<Check> = bounds
                .entries
                .iter()
                .map(|e| {
                    Check::new(
                        &format!("lower-bound-{}", e.name),
                        BigInt::from(sum.len()) >= e.value,
                        sum.len(),
                        e.value.to_string(),
                    )
                })
                .collect();
            Ok(RunOutput {
                command: "sumset".into(),
                inputs: json!({"k": k, "l": l, "set": render_zset(&xs), "domain": "z"}),
                results: json!({
                    "size": sum.len(),
                    "sumset": render_zset(&sum),
                }),
                checks,
            })
        }
        Domain::Zn => {
            let xs = parse_znset(set).map_err(|e| UsageError(e.to_string()))?;
            let sum = sumset_zn(k, &xs, l);
            let mut checks = vec![Check::new(
                "lower-bound-kemperman",
                sum.len() >= 2 * xs.len() - 1,
                sum.len(),
                2 * xs.len() - 1,
            )];
            let decomposition = if k.abs() != l.abs() {
                let report =
                    verify_distinct_dilates_bound(&xs, k, l).map_err(|e| UsageError(e.to_string()))?;
                checks.push(Check::new(
                    "lower-bound-three-r-minus-two",
                    report.bound_holds,
                    report.sumset_size,
                    report.lower_bound,
                ));
                checks.push(Check::new(
                    "coset-additivity",
                    report.additivity_ok(),
                    "sum of part sumsets",
                    "total sumset",
                ));
                if xs.len() >= 2 {
                    checks.push(Check::new(
                        "coset-count",
                        report.q().is_some_and(|q| q >= 2),
                        report.q().map(|q| q.to_string()).unwrap_or_default(),
                        ">= 2",
                    ));
                }
                Some(serde_json::to_value(&report).unwrap())
            } else {
                None
            };
            Ok(RunOutput {
                command: "sumset".into(),
                inputs: json!({"k": k, "l": l, "set": render_znset(&xs), "domain": "zn"}),
                results: json!({
                    "size": sum.len(),
                    "sumset": render_znset(&sum),
                    "decomposition": decomposition,
                }),
                checks,
            })
        }
    }
}

fn chi_result(k: i64, l: i64, r: u64, max_diameter: i64) -> Result<dilates_core::bounds::ChiSearchResult, UsageError> {
    if k == 0 || l == 0 {
        return Err(UsageError("k and l must be nonzero".into()));
    }
    if r < 1 {
        return Err(UsageError("r must be at least 1".into()));
    }
    if max_diameter < r as i64 - 1 {
        return Err(UsageError("max diameter must be at least r - 1".into()));
    }
    Ok(chi_search_z(k, l, r, max_diameter))
}

fn cmd_chi(k: i64, l: i64, r: u64, max_diameter: i64) -> Result<RunOutput, UsageError> {
    let result = chi_result(k, l, r, max_diameter)?;
    let bounds = lower_bounds(k, l, r);
    let mut checks: Vec<Check> = bounds
        .entries
        .iter()
        .map(|e| {
            Check::new(
                &format!("lower-bound-{}", e.name),
                BigInt::from(result.minimum) >= e.value,
                result.minimum,
                e.value.to_string(),
            )
        })
        .collect();
    // witness validity: each witness reproduces the reported minimum
    let witnesses_valid = result.witnesses.iter().all(|w| {
        let set: dilates_core::sumsets::ZSet = w.iter().copied().collect();
        sumset_z(k, &set, l).len() as u64 == result.minimum
    });
    checks.push(Check::new(
        "witness-validity",
        witnesses_valid,
        "recomputed sumset sizes",
        result.minimum,
    ));
    Ok(RunOutput {
        command: "chi".into(),
        inputs: json!({"k": k, "l": l, "r": r, "max_diameter": max_diameter}),
        results: serde_json::to_value(&result).unwrap(),
        checks,
    })
}

fn chi_csv(k: i64, l: i64, r: u64, max_diameter: i64) -> Result<(String, bool), UsageError> {
    let result = chi_result(k, l, r, max_diameter)?;
    let mut out = String::from("k,l,r,max_diameter,minimum,certified,witness\n");
    for w in &result.witnesses {
        let witness = w
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "{k},{l},{r},{max_diameter},{},{},{witness}\n",
            result.minimum, result.certified
        ));
    }
    Ok((out, true))
}

fn cmd_bounds(k: i64, l: i64, r: u64) -> Result<RunOutput, UsageError> {
    if k < 1 || l < 1 {
        return Err(UsageError("the bound table is for positive k and l".into()));
    }
    if r < 1 {
        return Err(UsageError("r must be at least 1".into()));
    }
    let report = chi_table(k, l, r);
    let checks: Vec<Check> = report
        .summaries
        .iter()
        .map(|s| {
            let lo = s.best_lower.clone().unwrap_or_default();
            let hi = s.best_upper.clone().unwrap_or_default();
            Check::new(
                &format!("window-consistent-{:?}", s.chi).to_lowercase(),
                lo <= hi,
                lo.to_string(),
                hi.to_string(),
            )
        })
        .collect();
    Ok(RunOutput {
        command: "bounds".into(),
        inputs: json!({"k": k, "l": l, "r": r}),
        results: serde_json::to_value(&report).unwrap(),
        checks,
    })
}

fn bounds_csv(k: i64, l: i64, r: u64) -> Result<(String, bool), UsageError> {
    if k < 1 || l < 1 || r < 1 {
        return Err(UsageError("the bound table is for positive k, l, r".into()));
    }
    let report = chi_table(k, l, r);
    let mut out = String::from("name,side,scope,value,conditions,source,dominated\n");
    for e in &report.entries {
        let side = match e.side {
            Side::Lower => "lower",
            Side::Upper => "upper",
        };
        let scope = match e.scope {
            Scope::TorsionFree => "torsion-free",
            Scope::AbelianTorsionFree => "abelian-torsion-free",
            Scope::LinearlyOrderable => "linearly-orderable",
            Scope::Integers => "integers",
        };
        out.push_str(&format!(
            "{},{side},{scope},{},\"{}\",\"{}\",{}\n",
            e.name, e.value, e.conditions, e.source, e.dominated
        ));
    }
    Ok((out, true))
}

fn cmd_word(word: &str, proper_power: bool, cyclic_reduce: bool) -> Result<RunOutput, UsageError> {
    let parsed = ReducedWord::parse(word).map_err(|e| UsageError(e.to_string()))?;
    let mut results = json!({
        "reduced": parsed.render(),
        "syllables": parsed.syllable_count(),
        "length": parsed.length(),
    });
    if cyclic_reduce {
        let (conj, core) = parsed.cyclic_reduce();
        results["cyclic_reduction"] = json!({
            "conjugator": conj.render(),
            "core": core.render(),
        });
    }
    if proper_power {
        results["proper_power"] = match parsed.proper_power() {
            Some((root, t)) => json!({"root": root.render(), "exponent": t}),
            None => serde_json::Value::Null,
        };
    }
    Ok(RunOutput {
        command: "word".into(),
        inputs: json!({"word": word}),
        results,
        checks: Vec::new(),
    })
}

fn cmd_cone_check(k: u32, l: u32, r: usize, samples: usize, seed: u64) -> Result<RunOutput, UsageError> {
    require_positive_pair(k, l)?;
    if r < 1 {
        return Err(UsageError("r must be at least 1".into()));
    }
    let group = OrderedGroup::new(Arc::new(AlphaContext::new(k, l)), r);
    let mut rng = SplitMix64::new(seed);
    let elements: Vec<_> = (0..samples).map(|_| group.random_element(&mut rng)).collect();
    let report = cone_property_check(&group, &elements, seed.wrapping_add(1));
    let violations_for = |condition: &str| {
        report
            .violations
            .iter()
            .filter(|v| v.condition == condition)
            .count()
    };
    let checks = vec![
        Check::new("identity-excluded", violations_for("identity-excluded") == 0, violations_for("identity-excluded"), 0),
        Check::new("exactly-one-of-pair", violations_for("exactly-one-of-pair") == 0, violations_for("exactly-one-of-pair"), 0),
        Check::new("closed-under-products", violations_for("closed-under-products") == 0, violations_for("closed-under-products"), 0),
        Check::new("closed-under-conjugation", violations_for("closed-under-conjugation") == 0, violations_for("closed-under-conjugation"), 0),
    ];
    Ok(RunOutput {
        command: "cone-check".into(),
        inputs: json!({"k": k, "l": l, "r": r, "samples": samples, "seed": seed}),
        results: serde_json::to_value(&report).unwrap(),
        checks,
    })
}

fn cmd_chi5(k: u32, l: u32, r: usize, x: &str, y: &str, z: &str) -> Result<RunOutput, UsageError> {
    require_positive_pair(k, l)?;
    if r < 1 {
        return Err(UsageError("r must be at least 1".into()));
    }
    let group = OrderedGroup::new(Arc::new(AlphaContext::new(k, l)), r);
    let parse = |s: &str| {
        group
            .parse_element(s)
            .map_err(|e| UsageError(format!("{e} (rank {r})")))
    };
    let (ex, ey, ez) = (parse(x)?, parse(y)?, parse(z)?);
    let report = chi5_witness_check(&group, &ex, &ey, &ez, k as i64, l as i64);
    let checks: Vec<Check> = report
        .conditions
        .iter()
        .map(|c| Check::new(&format!("condition-{}", c.name), c.pass, &c.description, &c.detail))
        .collect();
    Ok(RunOutput {
        command: "chi5".into(),
        inputs: json!({"k": k, "l": l, "r": r, "x": x, "y": y, "z": z}),
        results: serde_json::to_value(&report).unwrap(),
        checks,
    })
}
