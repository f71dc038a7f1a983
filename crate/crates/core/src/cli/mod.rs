//! `fsw` command line: argument parsing, dispatch and report output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 resource cap exceeded.

pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::atlas::atlas_lookup;
use crate::classify::{
    conclusion_check, hmain_check, l2q_omnibus_check, maxclass_fusion_check, render_table, scenario_verdict, Scenario,
    ScenarioVerdict,
};
use crate::error::{FswError, Result};
use crate::fusion::{focal_hyperfocal, normal_core_op, saturation_check, FusionSystem};
use crate::group::{p_part, PermGroup};
use crate::grp::iso::describe;
use crate::grp::local::center;
use crate::grp::normal::derived_subgroup;
use crate::grp::present::{coset_enumerate, Presentation, COSET_TABLE_CAP};
use crate::grp::small::{SmallGroup, SMALL_CAP};
use crate::grp::sylow::sylow;
use crate::ptheory::{automorphisms, identify_isotype, identify_small, lemma_presentation, thompson_data, Variant};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "fsw", version, about = "Saturated 2-fusion systems of finite permutation groups")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Group source: a file with a `degree:` header and cycle lines, or `atlas:NAME`.
    #[arg(long, global = true)]
    pub group: Option<String>,
    #[arg(long, global = true, default_value_t = 2)]
    pub prime: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Defaults to json with --out and text otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = crate::fusion::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Largest Sylow subgroup order accepted for fusion computations.
    #[arg(long, global = true, default_value_t = SMALL_CAP)]
    pub max_subgroup_order: usize,
    #[arg(long, global = true, default_value_t = COSET_TABLE_CAP)]
    pub coset_limit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Permutation group queries.
    #[command(subcommand)]
    Group(GroupCmd),
    /// 2-group recognition and invariants.
    #[command(subcommand)]
    Twogroup(TwoGroupCmd),
    /// Finitely presented groups.
    #[command(subcommand)]
    Present(PresentCmd),
    /// Fusion systems.
    #[command(subcommand)]
    Fusion(FusionCmd),
    /// Hypothesis, conclusion and scenario checks.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Acceptance suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    Order,
    Info,
    Sylow,
    Center,
}

#[derive(Subcommand, Debug)]
pub enum TwoGroupCmd {
    Identify,
    Aut,
    Thompson,
}

#[derive(Subcommand, Debug)]
pub enum PresentCmd {
    /// Coset enumeration over the trivial subgroup.
    Enumerate {
        /// Presentation file with `gens:` and `rels:` lines.
        #[arg(long, conflicts_with = "lemma")]
        file: Option<PathBuf>,
        /// Built-in six-generator presentation, as `K:VARIANT` (e.g. `3:h2=1`).
        #[arg(long)]
        lemma: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FusionCmd {
    Build,
    Saturation,
    Focal,
    Classes,
}

#[derive(Subcommand, Debug)]
pub enum ClassifyCmd {
    Hmain,
    Conclusion,
    Maxclass {
        #[arg(long)]
        q: Option<u64>,
    },
    L2q {
        #[arg(long, default_value_t = 9)]
        q: u64,
    },
    Table,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    Paper {
        #[arg(long, default_value = "desk")]
        suite: String,
    },
}

/// A finished command: its JSON report, text rendering and exit status.
pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub status: i32,
}

fn outcome<T: Serialize>(value: &T, text: String, ok: bool) -> Result<Outcome> {
    let report = serde_json::to_value(value).map_err(|e| FswError::Invalid(e.to_string()))?;
    Ok(Outcome { report, text, status: if ok { 0 } else { 1 } })
}

/// `key: value` lines for the scalar fields of a report.
pub fn flatten_text(v: &Value) -> String {
    fn go(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    go(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = a.iter().map(scalar).collect();
                out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    go(&format!("{prefix}[{i}]"), x, out);
                }
            }
            _ => out.push_str(&format!("{prefix}: {}\n", scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    go("", v, &mut out);
    out
}

pub fn load_group(src: Option<&str>) -> Result<PermGroup> {
    let src = src.ok_or_else(|| FswError::Invalid("--group is required".into()))?;
    match src.strip_prefix("atlas:") {
        Some(name) => atlas_lookup(name),
        None => PermGroup::parse(&std::fs::read_to_string(src)?),
    }
}

fn fusion_system(cfg: &RunConfig, g: &PermGroup) -> Result<FusionSystem> {
    let s_order = p_part(g.order(), cfg.prime as u128);
    if s_order > cfg.max_subgroup_order as u128 {
        return Err(FswError::cap("Sylow subgroup order", cfg.max_subgroup_order as u64));
    }
    let s = sylow(g, cfg.prime, cfg.seed)?;
    FusionSystem::with_sylow(g, &s, cfg.prime)
}

fn group_cmd(cfg: &RunConfig, cmd: &GroupCmd) -> Result<Outcome> {
    let g = load_group(cfg.group.as_deref())?;
    match cmd {
        GroupCmd::Order => {
            let o = g.order();
            outcome(&json!({ "order": o.to_string() }), format!("{o}\n"), true)
        }
        GroupCmd::Info => {
            let d = derived_subgroup(&g);
            let v = json!({
                "degree": g.degree(),
                "order": g.order().to_string(),
                "generators": g.gens().len(),
                "abelian": g.is_abelian(),
                "perfect": d.order() == g.order(),
                "sylow_order": p_part(g.order(), cfg.prime as u128).to_string(),
            });
            let t = flatten_text(&v);
            outcome(&v, t, true)
        }
        GroupCmd::Sylow => {
            let s = sylow(&g, cfg.prime, cfg.seed)?;
            let isotype = if cfg.prime == 2 && s.order() <= SMALL_CAP as u128 {
                Some(identify_isotype(&s)?.to_string())
            } else {
                None
            };
            let v = json!({
                "order": s.order().to_string(),
                "isotype": isotype,
                "generators": s.gens().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            });
            let t = flatten_text(&v);
            outcome(&v, t, true)
        }
        GroupCmd::Center => {
            let z = center(&g)?;
            let v = json!({
                "order": z.order().to_string(),
                "generators": z.gens().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            });
            let t = flatten_text(&v);
            outcome(&v, t, true)
        }
    }
}

fn twogroup_cmd(cfg: &RunConfig, cmd: &TwoGroupCmd) -> Result<Outcome> {
    let g = load_group(cfg.group.as_deref())?;
    if g.order() > cfg.max_subgroup_order as u128 {
        return Err(FswError::cap("2-group order", cfg.max_subgroup_order as u64));
    }
    match cmd {
        TwoGroupCmd::Identify => {
            let l = identify_isotype(&g)?;
            let v = json!({ "label": l.to_string(), "family": l.family, "order": l.order, "param": l.param });
            outcome(&v, format!("{l}\n"), true)
        }
        TwoGroupCmd::Aut => {
            let a = automorphisms(&g)?;
            let out = describe(&a.out_group()?);
            let v = json!({
                "aut_order": a.order.to_string(),
                "inner_order": a.inner_order().to_string(),
                "out_order": a.out_order().to_string(),
                "out_structure": out,
                "is_2_group": a.order.is_power_of_two(),
            });
            let t = flatten_text(&v);
            outcome(&v, t, true)
        }
        TwoGroupCmd::Thompson => {
            let s = SmallGroup::from_group(&g)?;
            let td = thompson_data(&s, &s.all());
            let v = json!({
                "j_order": td.j.len(),
                "baum_order": td.baum.len(),
                "two_rank": td.two_rank,
                "max_elementary_abelian": td.max_elab.len(),
            });
            let t = flatten_text(&v);
            outcome(&v, t, true)
        }
    }
}

fn present_cmd(cfg: &RunConfig, cmd: &PresentCmd) -> Result<Outcome> {
    let PresentCmd::Enumerate { file, lemma } = cmd;
    let pres = match (file, lemma) {
        (Some(p), _) => Presentation::parse(&std::fs::read_to_string(p)?)?,
        (None, Some(l)) => {
            let (k, var) = l.split_once(':').ok_or_else(|| FswError::Parse(format!("expected K:VARIANT, got {l:?}")))?;
            let k: u32 = k.parse().map_err(|_| FswError::Parse(format!("bad k {k:?}")))?;
            lemma_presentation(k, Variant::parse(var)?)?
        }
        (None, None) => return Err(FswError::Invalid("give --file or --lemma".into())),
    };
    let en = coset_enumerate(&pres, cfg.coset_limit)?;
    let isotype = if en.index.is_power_of_two() && en.index <= SMALL_CAP {
        Some(identify_small(&SmallGroup::from_group(&en.group(true))?)?.to_string())
    } else {
        None
    };
    let v = json!({ "index": en.index, "generators": pres.names, "relators": pres.relators.len(), "isotype": isotype });
    let t = flatten_text(&v);
    outcome(&v, t, true)
}

#[derive(Serialize)]
struct BuildReport {
    order: String,
    sylow_order: usize,
    s_isotype: Option<String>,
    saturated: bool,
    focal_index: usize,
    hyperfocal_index: usize,
    #[serde(rename = "O2_order")]
    o2_order: usize,
    classes: usize,
    rows: Vec<crate::fusion::ClassRow>,
}

fn fusion_cmd(cfg: &RunConfig, cmd: &FusionCmd) -> Result<Outcome> {
    let g = load_group(cfg.group.as_deref())?;
    let f = fusion_system(cfg, &g)?;
    let n = f.small().order();
    match cmd {
        FusionCmd::Build => {
            let sat = saturation_check(&f)?;
            let cl = focal_hyperfocal(&f)?;
            let rows = f.classify_subgroups()?;
            let r = BuildReport {
                order: g.order().to_string(),
                sylow_order: n,
                s_isotype: if cfg.prime == 2 { Some(identify_small(f.small())?.to_string()) } else { None },
                saturated: sat.saturated,
                focal_index: n / cl.foc_order,
                hyperfocal_index: n / cl.hyp_order,
                o2_order: normal_core_op(&f).len(),
                classes: rows.len(),
                rows,
            };
            let v = serde_json::to_value(&r).map_err(|e| FswError::Invalid(e.to_string()))?;
            let mut text = v.clone();
            text.as_object_mut().unwrap().remove("rows");
            let mut t = flatten_text(&text);
            for row in &r.rows {
                t.push_str(&format!(
                    "class {}: order {}, {} subgroups, |Aut_F| = {}, Out_F = {}\n",
                    row.index, row.order, row.subgroups, row.aut_f_order, row.out_f_structure
                ));
            }
            Ok(Outcome { report: v, text: t, status: if sat.saturated { 0 } else { 1 } })
        }
        FusionCmd::Saturation => {
            let r = saturation_check(&f)?;
            let t = flatten_text(&serde_json::to_value(&r).unwrap());
            outcome(&r, t, r.saturated)
        }
        FusionCmd::Focal => {
            let r = focal_hyperfocal(&f)?;
            let v = json!({
                "foc_order": r.foc_order,
                "hyp_order": r.hyp_order,
                "focal_index": n / r.foc_order,
                "hyperfocal_index": n / r.hyp_order,
                "is_perfect": r.is_perfect,
            });
            let t = flatten_text(&v);
            outcome(&v, t, true)
        }
        FusionCmd::Classes => {
            let rows = f.classify_subgroups()?;
            let t = flatten_text(&serde_json::to_value(&rows).unwrap());
            outcome(&rows, t, true)
        }
    }
}

fn run_rows(jobs: usize) -> Result<Vec<ScenarioVerdict>> {
    if jobs <= 1 {
        return Scenario::ALL.iter().map(|&s| scenario_verdict(s)).collect();
    }
    std::thread::scope(|sc| {
        let hs: Vec<_> = Scenario::ALL.iter().map(|&s| sc.spawn(move || scenario_verdict(s))).collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

fn classify_cmd(cfg: &RunConfig, cmd: &ClassifyCmd) -> Result<Outcome> {
    match cmd {
        ClassifyCmd::Hmain => {
            let f = fusion_system(cfg, &load_group(cfg.group.as_deref())?)?;
            let r = hmain_check(&f)?;
            let t = flatten_text(&serde_json::to_value(&r).unwrap());
            outcome(&r, t, true)
        }
        ClassifyCmd::Conclusion => {
            let f = fusion_system(cfg, &load_group(cfg.group.as_deref())?)?;
            let h = hmain_check(&f)?;
            let r = conclusion_check(&f, &h)?;
            let t = flatten_text(&serde_json::to_value(&r).unwrap());
            outcome(&r, t, r.verdict != "fails")
        }
        ClassifyCmd::Maxclass { q } => {
            let f = fusion_system(cfg, &load_group(cfg.group.as_deref())?)?;
            let r = maxclass_fusion_check(&f, *q)?;
            let t = flatten_text(&serde_json::to_value(&r).unwrap());
            outcome(&r, t, r.holds)
        }
        ClassifyCmd::L2q { q } => {
            let r = l2q_omnibus_check(*q)?;
            let t = flatten_text(&serde_json::to_value(&r).unwrap());
            outcome(&r, t, r.holds)
        }
        ClassifyCmd::Table => {
            let rows = run_rows(cfg.jobs)?;
            let ok = rows.iter().all(|r| r.passed);
            outcome(&rows, render_table(&rows), ok)
        }
    }
}

fn verify_cmd(cfg: &RunConfig, cmd: &VerifyCmd) -> Result<Outcome> {
    let VerifyCmd::Paper { suite } = cmd;
    if suite != "desk" {
        return Err(FswError::Invalid(format!("unknown suite {suite:?}")));
    }
    let results = verify::desk_suite(cfg.jobs);
    let mut t = String::new();
    for r in &results {
        t.push_str(&format!(
            "criterion {} ({}): {} [{:.1}s] {}\n",
            r.id,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.seconds,
            r.detail
        ));
    }
    let ok = results.iter().all(|r| r.passed);
    outcome(&results, t, ok)
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Group(c) => group_cmd(cfg, c),
        Command::Twogroup(c) => twogroup_cmd(cfg, c),
        Command::Present(c) => present_cmd(cfg, c),
        Command::Fusion(c) => fusion_cmd(cfg, c),
        Command::Classify(c) => classify_cmd(cfg, c),
        Command::Verify(c) => verify_cmd(cfg, c),
    }
}

fn command_name(c: &Command) -> String {
    let s = format!("{c:?}").to_lowercase();
    let mut parts = s.split(|ch: char| !ch.is_ascii_alphanumeric()).filter(|p| !p.is_empty());
    let a = parts.next().unwrap_or_default().to_string();
    match parts.next() {
        Some(b) => format!("{a} {b}"),
        None => a,
    }
}

/// Wraps a report with the schema header.
pub fn envelope(command: &str, report: Value) -> Value {
    let mut m = Map::new();
    m.insert("fsw_schema".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    match report {
        Value::Object(o) => m.extend(o),
        other => {
            m.insert("result".into(), other);
        }
    }
    Value::Object(m)
}

fn exit_code(e: &FswError) -> i32 {
    match e {
        FswError::CapExceeded { .. } => 3,
        _ => 2,
    }
}

/// Parses `argv` and runs the command, returning the enveloped JSON report
/// and the exit status without writing anything.
pub fn run_to_json<I, T>(argv: I) -> Result<(Value, i32)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| FswError::Parse(e.to_string()))?;
    let out = execute(&cli)?;
    Ok((envelope(&command_name(&cli.command), out.report), out.status))
}

/// Parses `argv`, runs the command and writes the report. Returns the exit
/// status.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("fsw: {e}");
            return exit_code(&e);
        }
    };
    let format = cli.config.format.unwrap_or(if cli.config.out.is_some() { Format::Json } else { Format::Text });
    let body = match format {
        Format::Json => {
            let v = envelope(&command_name(&cli.command), out.report);
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
        Format::Text => out.text,
    };
    match &cli.config.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, body) {
                eprintln!("fsw: cannot write {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{body}"),
    }
    out.status
}
