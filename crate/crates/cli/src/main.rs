//! artin-depth: depth certificates, separation, and verification for the
//! computational layer behind residual nilpotence of pure Artin groups.
//!
//! Exit codes: 0 success, 1 verified failure (a check ran and answered
//! no), 2 invalid input, 3 missing data (no table or registry entry).

mod words;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use artin_depth::arith::{reduce_mod_h, Quad2, Valuation};
use artin_depth::coxeter::{conj_perm_with, word_to_w, ArtinWord, RootSystem, TypeId};
use artin_depth::folding::{builtin_foldings, foldings_from, verify_folding, FoldingDef};
use artin_depth::lkb::{
    bundled_table_json, load_table, rep_for, verify_braid_relations, verify_specialization,
    LKBRep, Mode, ValidationLevel, EXACT_CHECK_DIM,
};
use artin_depth::nilpotence::{
    certify, filtration_audit, purity_obstruction, separate, CONVENTION,
};
use artin_depth::{Error, Result};
use words::parse_word;

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(
    name = "artin-depth",
    version,
    about = "Depth certificates for pure spherical Artin groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Trunc,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe a Coxeter type: rank, reflections, table and routes.
    Info {
        #[arg(long = "type")]
        type_name: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide purity of a word.
    Pure {
        #[arg(long = "type")]
        type_name: String,
        word: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify the lower-central-series depth of a pure word.
    Depth {
        #[arg(long = "type")]
        type_name: String,
        word: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two pure words are distinct.
    Separate {
        #[arg(long = "type")]
        type_name: String,
        word1: String,
        word2: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check braid relations and specialization for a representation.
    VerifyRep {
        #[arg(long = "type")]
        type_name: Option<String>,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a registered folding at the Coxeter level, optionally
    /// through the target representation.
    VerifyFolding {
        #[arg(long = "type")]
        type_name: String,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long)]
        rep: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that evaluation mod h matches the W conjugation action on
    /// random words.
    VerifyDiagram {
        #[arg(long = "type")]
        type_name: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long = "len", default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample lower-central-series witnesses and audit the valuation
    /// bound v >= level + 1.
    Audit {
        #[arg(long = "type")]
        type_name: String,
        #[arg(long = "rmax", default_value_t = 3)]
        r_max: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in folding registry.
    Foldings {
        #[arg(long = "type")]
        type_name: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(code_for(&e))
        }
    }
}

fn code_for(e: &Error) -> u8 {
    match e {
        Error::MissingTable { .. } => 3,
        Error::TableValidation(_)
        | Error::UnverifiedFolding { .. }
        | Error::NotInvertible(_)
        | Error::NonUnitDeterminant(_) => 1,
        _ => 2,
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            println!("wrote {}", path.display());
        }
        None => print!("{}", text),
    }
    Ok(())
}

fn parse_type(name: &str) -> Result<TypeId> {
    name.parse()
}

fn validation_label(v: ValidationLevel) -> String {
    match v {
        ValidationLevel::ExactProof => "exact proof".to_string(),
        ValidationLevel::TruncatedEvidence(k) => format!("truncated evidence (K={})", k),
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Info { type_name, json, out } => info(&type_name, json, &out),
        Cmd::Pure { type_name, word, json, out } => pure(&type_name, &word, json, &out),
        Cmd::Depth { type_name, word, order, json, out } => {
            depth(&type_name, &word, order, json, &out)
        }
        Cmd::Separate { type_name, word1, word2, order, json, out } => {
            separate_cmd(&type_name, &word1, &word2, order, json, &out)
        }
        Cmd::VerifyRep { type_name, table, mode, order, json, out } => {
            verify_rep(type_name.as_deref(), table.as_deref(), mode, order, json, &out)
        }
        Cmd::VerifyFolding { type_name, target, fixture, rep, json, out } => {
            verify_folding_cmd(&type_name, target.as_deref(), fixture.as_deref(), rep, json, &out)
        }
        Cmd::VerifyDiagram { type_name, count, max_len, seed, json, out } => {
            verify_diagram(&type_name, count, max_len, seed, json, &out)
        }
        Cmd::Audit { type_name, r_max, order, samples, seed, json, out } => {
            audit(&type_name, r_max, order, samples, seed, json, &out)
        }
        Cmd::Foldings { type_name, json, out } => foldings(type_name.as_deref(), json, &out),
    }
}

fn table_status(t: TypeId) -> &'static str {
    match t {
        TypeId::A(_) => "builtin",
        _ if bundled_table_json(t).is_some() => "bundled",
        _ => "none",
    }
}

fn folding_line(f: &FoldingDef) -> String {
    let images: Vec<String> = (1..=f.source().rank())
        .map(|i| {
            let letters: Vec<String> = f
                .image(i)
                .letters()
                .iter()
                .map(|&(j, _)| j.to_string())
                .collect();
            format!("{} -> {}", i, letters.join(" "))
        })
        .collect();
    format!(
        "{} -> {} [{}]: {}",
        f.source(),
        f.target(),
        f.provenance(),
        images.join("; ")
    )
}

fn info(type_name: &str, json: bool, out: &Option<PathBuf>) -> Result<ExitCode> {
    let t = parse_type(type_name)?;
    let routes = foldings_from(t);
    let text = if json {
        let routes: Vec<serde_json::Value> = routes
            .iter()
            .map(|f| {
                serde_json::json!({
                    "target": f.target().to_string(),
                    "provenance": f.provenance().to_string(),
                })
            })
            .collect();
        let mut s = serde_json::json!({
            "type": t.to_string(),
            "rank": t.rank(),
            "reflections": t.reflection_count(),
            "group_order": t.group_order() as u64,
            "coxeter_number": t.coxeter_number(),
            "simply_laced": t.is_simply_laced(),
            "table": table_status(t),
            "routes": routes,
        })
        .to_string();
        s.push('\n');
        s
    } else {
        let mut s = format!(
            "type {}: rank {}, reflections {}, |W| = {}, Coxeter number {}, {}\n",
            t,
            t.rank(),
            t.reflection_count(),
            t.group_order(),
            t.coxeter_number(),
            if t.is_simply_laced() { "simply laced" } else { "not simply laced" },
        );
        s.push_str(&format!("table: {}\n", table_status(t)));
        if routes.is_empty() {
            s.push_str("routes: direct\n");
        } else {
            for f in &routes {
                s.push_str(&format!("route: {}\n", folding_line(f)));
            }
        }
        s
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn pure(type_name: &str, word: &str, json: bool, out: &Option<PathBuf>) -> Result<ExitCode> {
    let t = parse_type(type_name)?;
    let w = parse_word(t, word)?;
    let rs = RootSystem::new(t)?;
    let x = word_to_w(&rs, &w);
    let obstruction = if x.is_identity() {
        None
    } else {
        Some(purity_obstruction(&x))
    };
    let pure = obstruction.is_none();
    let text = if json {
        let mut s = serde_json::json!({
            "type": t.to_string(),
            "word": w.to_string(),
            "pure": pure,
            "obstruction": obstruction,
        })
        .to_string();
        s.push('\n');
        s
    } else {
        match &obstruction {
            None => "pure: pi(w) = 1 in W\n".to_string(),
            Some(o) => format!("not pure: {}\n", o),
        }
    };
    emit(out, &text)?;
    Ok(if pure { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn depth(
    type_name: &str,
    word: &str,
    order: usize,
    json: bool,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let t = parse_type(type_name)?;
    let w = parse_word(t, word)?;
    let cert = certify(&w, order)?;
    let text = if json {
        cert.to_json()
    } else {
        let mut s = String::new();
        s.push_str(&format!("word: {}\ntype: {}\nroute: {}\n", w, t, cert.route));
        let val = match cert.valuation {
            Valuation::At(v) => format!("{}", v),
            Valuation::Above(k) => format!("above {} (inconclusive)", k),
        };
        s.push_str(&format!(
            "valuation: {} (truncation order {}, convention {})\n",
            val, cert.order, CONVENTION
        ));
        for v in &cert.verdicts {
            s.push_str(&format!("verdict: {}\n", v));
        }
        s
    };
    emit(out, &text)?;
    Ok(if cert.conclusive() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn separate_cmd(
    type_name: &str,
    word1: &str,
    word2: &str,
    order: usize,
    json: bool,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let t = parse_type(type_name)?;
    let w1 = parse_word(t, word1)?;
    let w2 = parse_word(t, word2)?;
    let report = separate(&w1, &w2, order)?;
    let text = if json {
        report.to_json()
    } else {
        let mut s = format!("type: {}\nroute: {}\n", t, report.route);
        match report.min_order {
            Some(v) => s.push_str(&format!(
                "distinguished: images differ at order {} (<= {})\n",
                v, report.order
            )),
            None => match report.exact_distinct {
                Some(true) => s.push_str(&format!(
                    "distinguished: equal through order {}, distinct exactly\n",
                    report.order
                )),
                Some(false) => s.push_str("indistinguishable: the words are equal\n"),
                None => s.push_str("inconclusive\n"),
            },
        }
        s
    };
    emit(out, &text)?;
    Ok(if report.distinguished() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verify_rep(
    type_name: Option<&str>,
    table: Option<&std::path::Path>,
    mode: Option<ModeArg>,
    order: usize,
    json: bool,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let rep: std::sync::Arc<LKBRep> = match (type_name, table) {
        (_, Some(path)) => std::sync::Arc::new(load_table(path)?),
        (Some(name), None) => rep_for(parse_type(name)?)?,
        (None, None) => {
            return Err(Error::Invalid(
                "verify-rep needs --type or --table".to_string(),
            ))
        }
    };
    let mode = match mode {
        Some(ModeArg::Exact) => Mode::Exact,
        Some(ModeArg::Trunc) => Mode::Truncated(order),
        None if rep.dimension() <= EXACT_CHECK_DIM => Mode::Exact,
        None => Mode::Truncated(order),
    };
    let rel = verify_braid_relations(&rep, mode);
    let spec = verify_specialization(&rep);
    let passed = rel.passed() && spec.passed();
    let text = if json {
        let relations: Vec<serde_json::Value> = rel
            .checks
            .iter()
            .map(|c| serde_json::json!({"i": c.i, "j": c.j, "m": c.m, "ok": c.ok}))
            .collect();
        let gens: Vec<serde_json::Value> = spec
            .gens
            .iter()
            .map(|&(i, ok)| serde_json::json!({"gen": i, "ok": ok}))
            .collect();
        let mut s = serde_json::json!({
            "type": rep.type_id().to_string(),
            "dimension": rep.dimension(),
            "validation": validation_label(rep.validation()),
            "mode": rel.mode_label,
            "specialization": gens,
            "relations": relations,
            "passed": passed,
        })
        .to_string();
        s.push('\n');
        s
    } else {
        let mut s = format!(
            "type {}: dimension {}, validation: {}\n",
            rep.type_id(),
            rep.dimension(),
            validation_label(rep.validation())
        );
        s.push_str(&format!(
            "specialization at q = t = 1: {}\n",
            if spec.passed() { "ok" } else { "VIOLATED" }
        ));
        for c in &rel.checks {
            s.push_str(&format!(
                "relation ({}, {}) m={} [{}]: {}\n",
                c.i,
                c.j,
                c.m,
                rel.mode_label,
                if c.ok { "ok" } else { "VIOLATED" }
            ));
        }
        s.push_str(if passed { "PASS\n" } else { "FAIL\n" });
        s
    };
    emit(out, &text)?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn verify_folding_cmd(
    type_name: &str,
    target: Option<&str>,
    fixture: Option<&str>,
    rep: bool,
    json: bool,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let t = parse_type(type_name)?;
    let mut defs: Vec<FoldingDef> = match fixture {
        Some(name) => {
            let p: artin_depth::folding::Provenance = name.parse()?;
            builtin_foldings()
                .into_iter()
                .filter(|f| f.source() == t && f.provenance() == p)
                .collect()
        }
        None => foldings_from(t),
    };
    if let Some(tgt) = target {
        let tgt = parse_type(tgt)?;
        defs.retain(|f| f.target() == tgt);
    }
    if defs.is_empty() {
        return Err(Error::Invalid(format!(
            "no registered folding matches type {}{}",
            t,
            fixture.map(|f| format!(" with fixture {}", f)).unwrap_or_default()
        )));
    }
    let mut all_passed = true;
    let mut text = String::new();
    let mut json_reports = Vec::new();
    for def in &defs {
        let report = verify_folding(def, rep)?;
        all_passed &= report.passed();
        if json {
            let rels: Vec<serde_json::Value> = report
                .relations_w
                .iter()
                .map(|c| serde_json::json!({"i": c.i, "j": c.j, "m": c.m, "ok": c.ok}))
                .collect();
            let rep_rels: Option<Vec<serde_json::Value>> = report.relations_rep.as_ref().map(|v| {
                v.iter()
                    .map(|c| serde_json::json!({"i": c.i, "j": c.j, "m": c.m, "ok": c.ok}))
                    .collect()
            });
            json_reports.push(serde_json::json!({
                "source": report.source.to_string(),
                "target": report.target.to_string(),
                "provenance": report.provenance.to_string(),
                "level": report.level,
                "commutation_ok": report.commutation_ok,
                "relations_w": rels,
                "relations_rep": rep_rels,
                "passed": report.passed(),
            }));
        } else {
            text.push_str(&format!("folding {}\n", folding_line(def)));
            text.push_str(&format!(
                "commutation within images: {}\n",
                if report.commutation_ok { "ok" } else { "VIOLATED" }
            ));
            text.push_str(&format!("level: {}\n", report.level));
            for c in &report.relations_w {
                text.push_str(&format!(
                    "relation (sigma_{}, sigma_{}) m={} [W]: {}\n",
                    c.i,
                    c.j,
                    c.m,
                    if c.ok { "ok" } else { "VIOLATED" }
                ));
            }
            for c in report.relations_rep.iter().flatten() {
                text.push_str(&format!(
                    "relation (sigma_{}, sigma_{}) m={} [rep]: {}\n",
                    c.i,
                    c.j,
                    c.m,
                    if c.ok { "ok" } else { "VIOLATED" }
                ));
            }
            match report.first_failure() {
                None => text.push_str("PASS\n"),
                Some(c) => text.push_str(&format!(
                    "FAIL: first violated relation (sigma_{}, sigma_{})\n",
                    c.i, c.j
                )),
            }
        }
    }
    if json {
        let mut s = serde_json::json!({ "foldings": json_reports }).to_string();
        s.push('\n');
        text = s;
    }
    emit(out, &text)?;
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn verify_diagram(
    type_name: &str,
    count: usize,
    max_len: usize,
    seed: u64,
    json: bool,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let t = parse_type(type_name)?;
    let rep = rep_for(t)?;
    let rs = rep.root_system();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first_failure: Option<ArtinWord> = None;
    let mut failures = 0usize;
    for _ in 0..count {
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<(usize, i8)> = (0..len)
            .map(|_| {
                (
                    rng.gen_range(1..=t.rank()),
                    if rng.gen::<bool>() { 1 } else { -1 },
                )
            })
            .collect();
        let w = ArtinWord::new(t, letters)?;
        let lhs = reduce_mod_h(&rep.eval_word_truncated(&w, 0)?);
        let rhs = conj_perm_with(rs, &word_to_w(rs, &w), Quad2::one());
        if lhs != rhs {
            failures += 1;
            first_failure.get_or_insert(w);
        }
    }
    let passed = failures == 0;
    let text = if json {
        let mut s = serde_json::json!({
            "type": t.to_string(),
            "count": count,
            "max_len": max_len,
            "seed": seed,
            "prng": artin_depth::nilpotence::PRNG,
            "failures": failures,
            "passed": passed,
        })
        .to_string();
        s.push('\n');
        s
    } else if passed {
        format!(
            "checked {} words of length <= {}: evaluation mod h matches the W action\n",
            count, max_len
        )
    } else {
        format!(
            "{} of {} words FAILED; first: {}\n",
            failures,
            count,
            first_failure.map(|w| w.to_string()).unwrap_or_default()
        )
    };
    emit(out, &text)?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn audit(
    type_name: &str,
    r_max: usize,
    order: usize,
    samples: usize,
    seed: u64,
    json: bool,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let t = parse_type(type_name)?;
    let report = filtration_audit(t, r_max, order, samples, seed)?;
    let text = if json {
        report.to_json()
    } else {
        let mut s = format!(
            "audit {}: levels 1..={}, order {}, {} samples per level, seed {}\n",
            t, r_max, order, samples, seed
        );
        for row in &report.rows {
            let val = match row.valuation {
                Valuation::At(v) => format!("{}", v),
                Valuation::Above(k) => format!(">{}", k),
            };
            s.push_str(&format!(
                "level {} sample {}: len {}, v = {} (need >= {}): {}\n",
                row.level,
                row.sample,
                row.word_len,
                val,
                row.level + 1,
                if row.ok { "ok" } else { "HARD FAILURE" }
            ));
        }
        s.push_str(if report.passed() { "PASS\n" } else { "FAIL\n" });
        s
    };
    emit(out, &text)?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn foldings(type_name: Option<&str>, json: bool, out: &Option<PathBuf>) -> Result<ExitCode> {
    let filter = type_name.map(parse_type).transpose()?;
    let defs: Vec<FoldingDef> = builtin_foldings()
        .into_iter()
        .filter(|f| filter.map_or(true, |t| f.source() == t))
        .collect();
    let text = if json {
        let items: Vec<serde_json::Value> = defs
            .iter()
            .map(|f| {
                let images: Vec<Vec<usize>> = (1..=f.source().rank())
                    .map(|i| f.image(i).letters().iter().map(|&(j, _)| j).collect())
                    .collect();
                serde_json::json!({
                    "source": f.source().to_string(),
                    "target": f.target().to_string(),
                    "images": images,
                    "provenance": f.provenance().to_string(),
                })
            })
            .collect();
        let mut s = serde_json::json!({ "foldings": items }).to_string();
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for f in &defs {
            s.push_str(&folding_line(f));
            s.push('\n');
        }
        s
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}
