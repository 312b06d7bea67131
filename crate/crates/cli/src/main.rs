//! crosstile: verify, search, generate, render, and decompose exact tiling
//! instances of cyclic groups and multiplicative tilings of the line.
//!
//! Exit codes: 0 verified / success, 1 not a tiling, 2 malformed input or
//! incompatible flags, 3 search budget exceeded.

mod document;
mod render;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use crosstile_core::cross::{
    cardinality_condition, classify, embed_product, fourier_cross_check, gen_example_first,
    gen_example_second, search_cross, verify_cross, verify_cross_equiv, CrossTilingInstance,
    SearchBudget, SearchConstraints, SearchError,
};
use crosstile_core::realline::{
    construct_from_cross, reduce_to_cycles, sum_diff_reports, to_multiplicative,
    verify_mult_tiling, CellData, LevelReport,
};
use crosstile_core::tiling::{fourier_tiling_check, verify_tiling, TilingReport};
use crosstile_core::torus::{split_by_classes, verify_torus_tiling, TorusPoint};
use crosstile_core::zn::CyclicSet;

use document::{CrossDoc, InstanceDocument, MultDoc};
use render::GridLayout;

#[derive(Parser)]
#[command(
    name = "crosstile",
    version,
    about = "Exact arithmetic for cross tilings of cyclic groups and multiplicative tilings of the real line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Direct convolution of the defining identities.
    Direct,
    /// Sum/difference form of the identities.
    Equiv,
    /// Exact Fourier (cyclotomic) criterion.
    Fourier,
    /// Product-group embedding Z_N x Z_2.
    Embed,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Example {
    /// The N = 2ab family (odd a, b).
    First,
    /// The Z_120 instance with no translate-equivalent pair of sets.
    Second,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a tiling, cross, or mult document.
    Verify {
        path: PathBuf,
        /// Tiling level (tiling documents only).
        #[arg(long, default_value_t = 1)]
        level: i64,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
    /// Enumerate cross tilings of Z_N as a deterministic document stream.
    Search {
        #[arg(long)]
        n: usize,
        /// Cardinality profile |A|,|B|,|X|,|Y|.
        #[arg(long)]
        card: Option<String>,
        /// Emit only non-trivial instances.
        #[arg(long)]
        nontrivial: bool,
        /// Stop after this many documents; 0 means unlimited.
        #[arg(long, default_value_t = 0)]
        limit: usize,
        /// Worker threads; output is identical for every value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Enable the optional character-sum prune.
        #[arg(long)]
        fourier_prune: bool,
        /// Fix the set A exactly (comma-separated members).
        #[arg(long)]
        fixed_a: Option<String>,
        /// Fix the set X exactly (comma-separated members).
        #[arg(long)]
        fixed_x: Option<String>,
    },
    /// Emit a verified document for one of the built-in constructions.
    Generate {
        #[arg(long, value_enum)]
        example: Example,
        /// Odd parameter a (first family).
        #[arg(long)]
        a: Option<usize>,
        /// Odd parameter b (first family).
        #[arg(long)]
        b: Option<usize>,
        /// Title stored in the document metadata.
        #[arg(long)]
        title: Option<String>,
    },
    /// Render a document as ASCII or SVG grids (mult documents render as
    /// multiplicative-coordinate text).
    Render {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Force a row-major layout with this many rows.
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Split a torus document into rational classes and report per-class
    /// levels.
    Decompose { path: PathBuf },
    /// Reduce a mult document to its per-cell cross-tiling data.
    Reduce { path: PathBuf },
    /// Build a mult document from a cross document (single cell, L = N).
    Construct { path: PathBuf },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Verify {
            path,
            level,
            method,
        } => cmd_verify(&path, level, method),
        Command::Search {
            n,
            card,
            nontrivial,
            limit,
            jobs,
            fourier_prune,
            fixed_a,
            fixed_x,
        } => cmd_search(n, card, nontrivial, limit, jobs, fourier_prune, fixed_a, fixed_x),
        Command::Generate {
            example,
            a,
            b,
            title,
        } => cmd_generate(example, a, b, title),
        Command::Render { path, format, rows } => cmd_render(&path, format, rows),
        Command::Decompose { path } => cmd_decompose(&path),
        Command::Reduce { path } => cmd_reduce(&path),
        Command::Construct { path } => cmd_construct(&path),
    }
}

fn load(path: &PathBuf) -> Result<InstanceDocument> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    InstanceDocument::parse(&text)
}

fn describe_report(out: &mut String, name: &str, report: &TilingReport) {
    if report.is_tiling {
        out.push_str(&format!(
            "{name}: tiling at level {}\n",
            report.level.expect("level present when tiling")
        ));
    } else {
        out.push_str(&format!("{name}: NOT constant\n"));
        for v in &report.violations {
            out.push_str(&format!(
                "  violation at t = {}: level {}\n",
                v.point, v.multiplicity
            ));
        }
        if report.truncated {
            out.push_str("  (violation list truncated)\n");
        }
    }
}

fn describe_level_report(out: &mut String, name: &str, report: &LevelReport) {
    if report.ok {
        out.push_str(&format!("{name}: constant {}\n", report.expected));
    } else {
        out.push_str(&format!(
            "{name}: NOT the constant {}\n",
            report.expected
        ));
        for (lo, hi, level) in report.violations.iter().take(8) {
            out.push_str(&format!("  on [{lo}, {hi}): level {level}\n"));
        }
    }
}

fn cmd_verify(path: &PathBuf, level: i64, method: Method) -> Result<u8> {
    let doc = load(path)?;
    let mut out = String::new();
    out.push_str(&format!("kind: {}\n", doc.kind_name()));
    let verified = match &doc {
        InstanceDocument::Tiling(tiling) => {
            let (a, x) = tiling.to_sets()?;
            out.push_str(&format!(
                "N = {}, |A| = {}, |X| = {}\n",
                tiling.n,
                a.cardinality(),
                x.cardinality()
            ));
            match method {
                Method::Direct => {
                    out.push_str(&format!("method: direct (level {level})\n"));
                    let report = verify_tiling(&a, &x, level)?;
                    describe_report(&mut out, "A + X", &report);
                    report.is_tiling
                }
                Method::Fourier => {
                    if level != 1 {
                        bail!("the Fourier criterion decides level-1 tilings only");
                    }
                    out.push_str("method: fourier\n");
                    let ok = fourier_tiling_check(&a, &x)?;
                    out.push_str(&format!(
                        "Fourier criterion: {}\n",
                        if ok { "satisfied" } else { "violated" }
                    ));
                    ok
                }
                other => bail!("method {other:?} does not apply to tiling documents"),
            }
        }
        InstanceDocument::Cross(cross) => {
            if level != 1 {
                bail!("cross tilings are level-1 by definition");
            }
            let inst = cross.to_instance()?;
            out.push_str(&format!(
                "N = {}, |A| = {}, |B| = {}, |X| = {}, |Y| = {}\n",
                inst.modulus(),
                inst.a().cardinality(),
                inst.b().cardinality(),
                inst.x().cardinality(),
                inst.y().cardinality()
            ));
            out.push_str(&format!(
                "cardinality condition (|A| = |B| or |X| = |Y|): {}\n",
                if cardinality_condition(&inst) {
                    "satisfied"
                } else {
                    "violated"
                }
            ));
            let verified = match method {
                Method::Direct => {
                    out.push_str("method: direct\n");
                    let report = verify_cross(&inst);
                    describe_report(&mut out, "A*X + B*Y = 1", &report.first);
                    describe_report(&mut out, "A*Y + B*X = 1", &report.second);
                    report.verified()
                }
                Method::Equiv => {
                    out.push_str("method: equiv\n");
                    let report = verify_cross_equiv(&inst);
                    describe_report(&mut out, "(A+B)*(X+Y) = 2", &report.first);
                    describe_report(&mut out, "(A-B)*(X-Y) = 0", &report.second);
                    report.verified()
                }
                Method::Fourier => {
                    out.push_str("method: fourier\n");
                    let ok = fourier_cross_check(&inst);
                    out.push_str(&format!(
                        "Fourier cross condition: {}\n",
                        if ok { "satisfied" } else { "violated" }
                    ));
                    ok
                }
                Method::Embed => {
                    out.push_str("method: embed\n");
                    let embedding = embed_product(&inst);
                    describe_report(
                        &mut out,
                        "C + Z = Z_N x Z_2",
                        &embedding.report,
                    );
                    embedding.verified()
                }
            };
            let verdict = classify(&inst);
            out.push_str(&format!(
                "triviality: {:?} ({})\n",
                verdict.kind, verdict.witness
            ));
            verified
        }
        InstanceDocument::Mult(mult) => {
            let inst = mult.to_instance()?;
            out.push_str(&format!(
                "L = {}, refinement M = {}, |omega+| = {}, |omega-| = {}, |alpha+| = {}, |alpha-| = {}\n",
                inst.l(),
                inst.refinement(),
                inst.omega_plus().measure(),
                inst.omega_minus().measure(),
                inst.a_plus().len(),
                inst.a_minus().len()
            ));
            match method {
                Method::Direct => {
                    out.push_str("method: direct\n");
                    let report = verify_mult_tiling(&inst);
                    describe_level_report(&mut out, "a+ * w+ + a- * w-", &report.first);
                    describe_level_report(&mut out, "a- * w+ + a+ * w-", &report.second);
                    report.verified()
                }
                Method::Equiv => {
                    out.push_str("method: equiv (sum/difference identities)\n");
                    let (sum, diff) = sum_diff_reports(&inst);
                    describe_level_report(&mut out, "(w+ + w-) * (a+ + a-)", &sum);
                    describe_level_report(&mut out, "(w+ - w-) * (a+ - a-)", &diff);
                    sum.ok && diff.ok
                }
                other => bail!("method {other:?} does not apply to mult documents"),
            }
        }
        InstanceDocument::Torus(torus) => {
            let (tile, tau) = torus.to_parts()?;
            if !tau.is_rational() {
                bail!(
                    "torus document has symbolic atoms; use `crosstile decompose` for the per-class check"
                );
            }
            out.push_str("method: direct (torus convolution)\n");
            let report = verify_torus_tiling(&tile, &tau)?;
            if report.is_tiling {
                out.push_str(&format!(
                    "F * tau: constant {}\n",
                    report.level.expect("constant")
                ));
            } else {
                out.push_str("F * tau: NOT constant\n");
                for (lo, hi, level) in report.violations.iter().take(8) {
                    out.push_str(&format!("  on [{lo}, {hi}): level {level}\n"));
                }
            }
            report.is_tiling
        }
    };
    out.push_str(&format!(
        "verdict: {}\n",
        if verified { "verified" } else { "not a tiling" }
    ));
    print!("{out}");
    Ok(if verified { 0 } else { 1 })
}

fn parse_members(s: &str, n: usize, name: &str) -> Result<CyclicSet> {
    let members = s
        .split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .with_context(|| format!("bad element {part:?} in {name}"))
        })
        .collect::<Result<Vec<_>>>()?;
    CyclicSet::from_members(n, members)
        .with_context(|| format!("{name} is not a subset of Z_{n}"))
}

fn search_budget() -> Result<SearchBudget> {
    match std::env::var("CROSSTILE_BUDGET") {
        Ok(value) => {
            let max_modulus = value
                .trim()
                .parse::<usize>()
                .with_context(|| format!("CROSSTILE_BUDGET={value:?} is not a number"))?;
            Ok(SearchBudget { max_modulus })
        }
        Err(_) => Ok(SearchBudget::default()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: usize,
    card: Option<String>,
    nontrivial: bool,
    limit: usize,
    jobs: usize,
    fourier_prune: bool,
    fixed_a: Option<String>,
    fixed_x: Option<String>,
) -> Result<u8> {
    let cardinalities = match card {
        None => None,
        Some(text) => {
            let parts = text
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .with_context(|| format!("bad --card {text:?}; expected a,b,x,y"))?;
            if parts.len() != 4 {
                bail!("--card takes exactly four comma-separated cardinalities");
            }
            Some((parts[0], parts[1], parts[2], parts[3]))
        }
    };
    let constraints = SearchConstraints {
        cardinalities,
        fixed_a: fixed_a.map(|s| parse_members(&s, n, "--fixed-a")).transpose()?,
        fixed_x: fixed_x.map(|s| parse_members(&s, n, "--fixed-x")).transpose()?,
        nontrivial_only: nontrivial,
        fourier_prune,
        jobs,
    };
    let stream = match search_cross(n, &constraints, &search_budget()?) {
        Ok(stream) => stream,
        Err(err @ (SearchError::BudgetExceeded { .. } | SearchError::Unsupported(_))) => {
            eprintln!("refused: {err}");
            return Ok(3);
        }
        Err(err) => return Err(err.into()),
    };
    let stdout = std::io::stdout();
    let mut writer = std::io::BufWriter::new(stdout.lock());
    for (count, inst) in stream.enumerate() {
        if limit != 0 && count >= limit {
            break;
        }
        let doc = InstanceDocument::Cross(CrossDoc::from_instance(
            &inst,
            None,
            BTreeMap::new(),
        ));
        writeln!(writer, "{}", doc.emit_compact())?;
    }
    writer.flush()?;
    Ok(0)
}

fn cmd_generate(
    example: Example,
    a: Option<usize>,
    b: Option<usize>,
    title: Option<String>,
) -> Result<u8> {
    let mut metadata = BTreeMap::new();
    let (instance, factorization) = match example {
        Example::First => {
            let a = a.ok_or_else(|| anyhow!("--example first requires --a"))?;
            let b = b.ok_or_else(|| anyhow!("--example first requires --b"))?;
            let generated = gen_example_first(a, b)?;
            if generated.degenerate {
                metadata.insert("degenerate".into(), "true".into());
            }
            metadata.insert("construction".into(), format!("first-family a={a} b={b}"));
            (generated.instance, Some([a * b, 2]))
        }
        Example::Second => {
            if a.is_some() || b.is_some() {
                bail!("--example second takes no parameters");
            }
            metadata.insert("construction".into(), "second-family Z_15 x Z_8".into());
            (gen_example_second(), Some([15, 8]))
        }
    };
    if let Some(title) = title {
        metadata.insert("title".into(), title);
    }
    if !verify_cross(&instance).verified() {
        bail!(
            "the generated instance does not verify (degenerate parameters); refusing to emit a non-tiling document"
        );
    }
    let doc = InstanceDocument::Cross(CrossDoc::from_instance(
        &instance,
        factorization,
        metadata,
    ));
    println!("{}", doc.emit_pretty());
    Ok(0)
}

fn cmd_render(path: &PathBuf, format: Format, rows: Option<usize>) -> Result<u8> {
    let doc = load(path)?;
    match &doc {
        InstanceDocument::Tiling(tiling) => {
            let (a, x) = tiling.to_sets()?;
            let layout = GridLayout::for_document(tiling.n, tiling.factorization, rows)?;
            match format {
                Format::Ascii => print!(
                    "{}",
                    render::render_ascii(&layout, &[("A", &a), ("X", &x)])
                ),
                Format::Svg => print!(
                    "{}",
                    render::render_svg(&layout, &[("A", &a, "red"), ("X", &x, "green")])
                ),
            }
        }
        InstanceDocument::Cross(cross) => {
            let inst = cross.to_instance()?;
            let layout = GridLayout::for_document(cross.n, cross.factorization, rows)?;
            let group = CyclicSet::full(cross.n).expect("n >= 1");
            match format {
                Format::Ascii => print!(
                    "{}",
                    render::render_ascii(
                        &layout,
                        &[
                            ("Group", &group),
                            ("A", inst.a()),
                            ("B", inst.b()),
                            ("X", inst.x()),
                            ("Y", inst.y()),
                        ]
                    )
                ),
                Format::Svg => print!(
                    "{}",
                    render::render_svg(
                        &layout,
                        &[
                            ("Group", &group, "black"),
                            ("A", inst.a(), "red"),
                            ("B", inst.b(), "blue"),
                            ("X", inst.x(), "green"),
                            ("Y", inst.y(), "cyan"),
                        ]
                    )
                ),
            }
        }
        InstanceDocument::Mult(mult) => {
            // Grid pictures do not apply; render the multiplicative-
            // coordinate description instead.
            let inst = mult.to_instance()?;
            print!("{}", to_multiplicative(&inst, 6));
        }
        InstanceDocument::Torus(_) => {
            bail!("torus documents have no grid rendering; use `crosstile decompose`");
        }
    }
    Ok(0)
}

fn cmd_decompose(path: &PathBuf) -> Result<u8> {
    let doc = load(path)?;
    let InstanceDocument::Torus(torus) = &doc else {
        bail!(
            "decompose expects a torus document, got kind {:?}",
            doc.kind_name()
        );
    };
    let (tile, tau) = torus.to_parts()?;
    let parts = split_by_classes(&tau);
    let mut out = String::new();
    out.push_str(&format!("atoms: {}\n", tau.atoms().len()));
    out.push_str(&format!("classes: {}\n", parts.len()));
    let mut all_constant = true;
    let mut total_level: i64 = 0;
    for (i, part) in parts.iter().enumerate() {
        let members: Vec<String> = part
            .atoms()
            .iter()
            .map(|(p, w)| format!("{p} (w {w})"))
            .collect();
        out.push_str(&format!("class {}: {{ {} }}\n", i + 1, members.join(", ")));
        // Symbol elimination: every member of a rational class carries the
        // same symbol part, and tiling verdicts are rotation-invariant, so
        // the class is slid onto the rational axis before checking.
        let (checked, eliminated) = if part.is_rational() {
            (part.clone(), false)
        } else {
            let symbols = part.atoms()[0].0.symbol_part().clone();
            let shift = TorusPoint::new(
                part.period().clone(),
                BigRational::from_integer(BigInt::from(0)),
                symbols,
            )
            .expect("period is positive")
            .neg();
            (part.translate(&shift)?, true)
        };
        let report = verify_torus_tiling(&tile, &checked)?;
        let suffix = if eliminated {
            " (after symbol elimination)"
        } else {
            ""
        };
        match report.level {
            Some(level) => {
                out.push_str(&format!("  level: constant {level}{suffix}\n"));
                total_level += level;
            }
            None => {
                all_constant = false;
                out.push_str(&format!("  level: NOT constant{suffix}\n"));
                for (lo, hi, level) in report.violations.iter().take(8) {
                    out.push_str(&format!("    on [{lo}, {hi}): level {level}\n"));
                }
            }
        }
    }
    if all_constant {
        out.push_str(&format!("total level: {total_level}\n"));
    }
    print!("{out}");
    Ok(if all_constant { 0 } else { 1 })
}

#[derive(serde::Serialize)]
struct ReductionDoc {
    v: u32,
    kind: &'static str,
    l: usize,
    alpha_plus: Vec<usize>,
    alpha_minus: Vec<usize>,
    cells: Vec<ReductionCell>,
}

#[derive(serde::Serialize)]
struct ReductionCell {
    lo: String,
    hi: String,
    b_plus: Vec<usize>,
    b_minus: Vec<usize>,
    cross_verified: bool,
}

fn cmd_reduce(path: &PathBuf) -> Result<u8> {
    let doc = load(path)?;
    let InstanceDocument::Mult(mult) = &doc else {
        bail!(
            "reduce expects a mult document, got kind {:?}",
            doc.kind_name()
        );
    };
    let inst = mult.to_instance()?;
    let reduction = reduce_to_cycles(&inst)?;
    let mut all_ok = true;
    let cells: Vec<ReductionCell> = reduction
        .cells
        .iter()
        .map(|cell| {
            let cross = CrossTilingInstance::new(
                cell.b_plus.clone(),
                cell.b_minus.clone(),
                reduction.alpha_plus.clone(),
                reduction.alpha_minus.clone(),
            )
            .expect("shared modulus L");
            let ok = verify_cross(&cross).verified();
            all_ok &= ok;
            ReductionCell {
                lo: cell.lo.to_string(),
                hi: cell.hi.to_string(),
                b_plus: cell.b_plus.members(),
                b_minus: cell.b_minus.members(),
                cross_verified: ok,
            }
        })
        .collect();
    let out = ReductionDoc {
        v: 1,
        kind: "reduction",
        l: reduction.l,
        alpha_plus: reduction.alpha_plus.members(),
        alpha_minus: reduction.alpha_minus.members(),
        cells,
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_construct(path: &PathBuf) -> Result<u8> {
    let doc = load(path)?;
    let InstanceDocument::Cross(cross) = &doc else {
        bail!(
            "construct expects a cross document, got kind {:?}",
            doc.kind_name()
        );
    };
    let inst = cross.to_instance()?;
    let l = inst.modulus();
    let cells = vec![CellData {
        lo: BigRational::from_integer(BigInt::from(0)),
        hi: BigRational::new(BigInt::from(1), BigInt::from(l)),
        b_plus: inst.a().clone(),
        b_minus: inst.b().clone(),
    }];
    let mult = match construct_from_cross(l, &cells, inst.x(), inst.y()) {
        Ok(mult) => mult,
        Err(err) => {
            eprintln!("not constructible: {err}");
            return Ok(1);
        }
    };
    debug_assert!(verify_mult_tiling(&mult).verified());
    let mut metadata = cross.metadata.clone();
    metadata.insert("constructed-from".into(), format!("cross n={l}"));
    let out = InstanceDocument::Mult(MultDoc::from_instance(&mult, metadata));
    println!("{}", out.emit_pretty());
    Ok(0)
}
