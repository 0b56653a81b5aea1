//! The `polygraph` command line.

mod report;

pub use report::{format_report, Report, Status};

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::branchings::{enumerate_critical_branchings, resolve_branching, ConvergenceError, ConvergentPolygraph, ResolutionOutcome, TerminationEvidence};
use crate::coherence::{boundary3, parse_table, parse_transfer_map, squier_completion, standard_coherent_presentation, transfer_homotopy_basis};
use crate::completion::{knuth_bendix, metivier_squier_reduce, CompletionError, CompletionStatus, TraceOutcome, DEFAULT_MAX_RULES};
use crate::homology::{
    enumerate_monoid, integer_matrices, sample_normal_forms, show_module, symbolic_matrices, verify_identities, write_matrices, Cell, CheckStatus, Complex,
    HomologyError, ModuleElt,
};
use crate::presentation::{Polygraph, TietzeMove};
use crate::rewrite::{
    check_deglex_termination, check_interpretation_certificate, normalize, parse_certificate, show_step, show_zigzag, CertVerdict, DeglexOrder, Limits,
    RewriteError, Strategy,
};

#[derive(Parser, Debug)]
#[command(name = "polygraph", version, about = "Rewriting, completion, coherence and homology for presentations")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest instance index of pumped rule families.
    #[arg(long, global = true, default_value_t = 8)]
    pub pump_bound: u32,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Rewriting step budget.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub fuel: u64,
    /// Interpretation certificate used for termination instead of deglex.
    #[arg(long, global = true)]
    pub cert: Option<PathBuf>,
    /// Accept a sampled certificate check as termination evidence.
    #[arg(long, global = true)]
    pub ack_sampled: bool,
    /// Largest `n` at which certificate inequalities are sampled.
    #[arg(long, global = true, default_value_t = 16)]
    pub sample_bound: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Leftmost,
    Rightmost,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a presentation, and check its termination.
    Check { file: PathBuf },
    /// Normal form of a word.
    Nf {
        file: PathBuf,
        word: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Leftmost)]
        strategy: StrategyArg,
    },
    /// Decide whether two words are equal in the presented monoid.
    Eq { file: PathBuf, w1: String, w2: String },
    /// List and resolve the critical branchings.
    Cp {
        file: PathBuf,
        /// Also print the joining paths.
        #[arg(long)]
        resolve: bool,
    },
    /// Knuth-Bendix completion under the file's deglex order.
    Complete {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_RULES)]
        max_rules: usize,
        /// Write the completed presentation here.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Reduce a convergent presentation.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Squier completion: one 3-cell per critical branching.
    Cohere {
        file: PathBuf,
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Fill a 2-sphere with the generating 3-cells.
    Fill { file: PathBuf, zigzag1: String, zigzag2: String },
    /// Standard coherent presentation of a finite monoid table.
    Std {
        table: PathBuf,
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Transfer a homotopy basis of SIGMA to XI.
    Transfer {
        sigma: PathBuf,
        xi: PathBuf,
        map: PathBuf,
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Check the resolution identities and export the boundary matrices.
    Homology {
        file: PathBuf,
        #[arg(long)]
        export: Option<PathBuf>,
        /// Largest monoid enumerated exhaustively.
        #[arg(long, default_value_t = 1000)]
        bound: usize,
        /// Random normal forms used when the monoid exceeds the bound.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Sampled check of an interpretation certificate.
    Cert { file: PathBuf, certfile: PathBuf },
}

/// Failure before a report could be produced.
struct Fail {
    status: Status,
    msg: String,
    data: Vec<(String, Value)>,
}

impl Fail {
    fn usage(msg: impl Into<String>) -> Fail {
        Fail { status: Status::Error, msg: msg.into(), data: vec![] }
    }

    fn negative(msg: impl Into<String>) -> Fail {
        Fail { status: Status::Fail, msg: msg.into(), data: vec![] }
    }

    fn fuel(msg: impl Into<String>) -> Fail {
        Fail { status: Status::Partial, msg: msg.into(), data: vec![] }
    }
}

impl From<RewriteError> for Fail {
    fn from(e: RewriteError) -> Fail {
        Fail::fuel(e.to_string())
    }
}

impl From<HomologyError> for Fail {
    fn from(e: HomologyError) -> Fail {
        match e {
            HomologyError::Rewrite(_) | HomologyError::BoundExceeded(_) => Fail::fuel(e.to_string()),
            HomologyError::Io(_) | HomologyError::NotMonoid => Fail::usage(e.to_string()),
            _ => Fail::negative(e.to_string()),
        }
    }
}

impl From<ConvergenceError> for Fail {
    fn from(e: ConvergenceError) -> Fail {
        match &e {
            ConvergenceError::Unknown(_) => Fail::fuel(e.to_string()),
            ConvergenceError::NotConfluent { source_word, first_nf, second_nf } => Fail {
                status: Status::Fail,
                msg: e.to_string(),
                data: vec![("witness".into(), json!({"source": source_word, "first_nf": first_nf, "second_nf": second_nf}))],
            },
            ConvergenceError::TerminationNotCertified(_) => Fail::negative(e.to_string()),
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    let mut t = text.to_string();
    if !t.ends_with('\n') {
        t.push('\n');
    }
    std::fs::write(path, t).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Polygraph, Fail> {
    Polygraph::parse(&read(path)?).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

impl Ctx<'_> {
    fn limits(&self) -> Limits {
        Limits { fuel: self.cli.fuel, pump_bound: self.cli.pump_bound }
    }

    fn evidence(&self, p: &Polygraph) -> Result<TerminationEvidence, Fail> {
        match &self.cli.cert {
            None => Ok(TerminationEvidence::Deglex(DeglexOrder::of(p))),
            Some(path) => {
                let cert = parse_certificate(p, &read(path)?).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
                let report = check_interpretation_certificate(p, &cert, self.cli.sample_bound, self.cli.pump_bound)
                    .map_err(|e| Fail::usage(e.to_string()))?;
                Ok(TerminationEvidence::Sampled { report, acknowledged: self.cli.ack_sampled })
            }
        }
    }

    fn convergent(&self, p: Polygraph, r: &mut Report) -> Result<ConvergentPolygraph, Fail> {
        let ev = self.evidence(&p)?;
        let sampled = matches!(ev, TerminationEvidence::Sampled { .. });
        let cp = ConvergentPolygraph::certify(p, &ev, self.limits())?;
        if sampled {
            r.line(format!("termination: sampled certificate check up to n = {} (not a proof)", self.cli.sample_bound));
        }
        if cp.truncated() {
            r.line(format!("pumped families checked up to n = {}", self.cli.pump_bound));
        }
        r.set("termination", if sampled { "sampled" } else { "deglex" });
        r.set("truncated", cp.truncated());
        Ok(cp)
    }
}

/// Parse `argv` (program name first), run, and return the exit code with the rendered report.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let report = execute(&cli, cli.command.name().to_string());
    (report.exit_code(), format_report(&report, cli.json))
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Nf { .. } => "nf",
            Command::Eq { .. } => "eq",
            Command::Cp { .. } => "cp",
            Command::Complete { .. } => "complete",
            Command::Reduce { .. } => "reduce",
            Command::Cohere { .. } => "cohere",
            Command::Fill { .. } => "fill",
            Command::Std { .. } => "std",
            Command::Transfer { .. } => "transfer",
            Command::Homology { .. } => "homology",
            Command::Cert { .. } => "cert",
        }
    }
}

pub fn execute(cli: &Cli, command: String) -> Report {
    let ctx = Ctx { cli };
    let mut r = Report::new(command.clone());
    let out = match &cli.command {
        Command::Check { file } => check(&ctx, file, &mut r),
        Command::Nf { file, word, strategy } => nf(&ctx, file, word, *strategy, &mut r),
        Command::Eq { file, w1, w2 } => eq(&ctx, file, w1, w2, &mut r),
        Command::Cp { file, resolve } => cp(&ctx, file, *resolve, &mut r),
        Command::Complete { file, max_rules, write } => complete(&ctx, file, *max_rules, write.as_deref(), &mut r),
        Command::Reduce { file, write } => reduce(&ctx, file, write.as_deref(), &mut r),
        Command::Cohere { file, write } => cohere(&ctx, file, write.as_deref(), &mut r),
        Command::Fill { file, zigzag1, zigzag2 } => fill(&ctx, file, zigzag1, zigzag2, &mut r),
        Command::Std { table, write } => std_cmd(table, write.as_deref(), &mut r),
        Command::Transfer { sigma, xi, map, write } => transfer(&ctx, sigma, xi, map, write.as_deref(), &mut r),
        Command::Homology { file, export, bound, samples } => homology(&ctx, file, export.as_deref(), *bound, *samples, &mut r),
        Command::Cert { file, certfile } => cert(&ctx, file, certfile, &mut r),
    };
    match out {
        Ok(()) => r,
        Err(f) => {
            let mut e = Report::error(command, f.status, f.msg);
            for l in r.lines {
                e.lines.insert(e.lines.len() - 1, l);
            }
            for (k, v) in f.data {
                e.set(&k, v);
            }
            e
        }
    }
}

fn check(ctx: &Ctx, file: &Path, r: &mut Report) -> Result<(), Fail> {
    let p = load(file)?;
    r.line(format!(
        "{}: {} generators, {} rules, {} pumped families, {} 3-cells",
        if p.is_monoid() { "monoid" } else { "category" },
        p.generators().len(),
        p.rules().len(),
        p.pumped_rules().len(),
        p.three_cells().len()
    ));
    r.set("kind", if p.is_monoid() { "monoid" } else { "category" });
    r.set("generators", p.generators().len());
    r.set("rules", p.rules().len());
    r.set("pumped", p.pumped_rules().len());
    r.set("three_cells", p.three_cells().len());
    let diags: Vec<String> = p.validate().into_iter().map(|d| d.0).collect();
    for d in &diags {
        r.line(format!("invalid: {d}"));
    }
    r.set("diagnostics", diags.clone());
    let termination = match ctx.evidence(&p)? {
        TerminationEvidence::Deglex(order) => {
            let rep = check_deglex_termination(&p, &order, ctx.cli.pump_bound);
            let names: Vec<String> = match p.order() {
                Some(o) => o.iter().map(|&g| p.generators()[g].name.clone()).collect(),
                None => p.generators().iter().map(|g| g.name.clone()).collect(),
            };
            match rep.first_failure() {
                None => {
                    r.line(format!("termination: deglex {} decreases every rule", names.join(" < ")));
                    json!({"method": "deglex", "holds": true})
                }
                Some(f) => {
                    r.line(format!("termination: deglex {} fails at rule {}: {}", names.join(" < "), f.rule, f.note));
                    json!({"method": "deglex", "holds": false, "rule": f.rule, "note": f.note})
                }
            }
        }
        TerminationEvidence::Sampled { report, .. } => match &report.verdict {
            CertVerdict::PassSampled => {
                r.line(format!("termination: certificate holds on samples up to n = {} (not a proof)", report.sample_bound));
                json!({"method": "certificate", "holds": true, "sampled": true})
            }
            CertVerdict::Fail { rule, n, reason } => {
                r.line(format!("termination: certificate fails at rule {rule}, n = {n}: {reason}"));
                json!({"method": "certificate", "holds": false, "rule": rule, "n": n, "reason": reason})
            }
        },
    };
    r.set("termination", termination);
    if !diags.is_empty() {
        r.status = Status::Fail;
    }
    Ok(())
}

fn parse_word(p: &Polygraph, s: &str) -> Result<crate::Word, Fail> {
    p.parse_word(s).map_err(|e| Fail::usage(format!("word `{s}`: {e}")))
}

fn nf(ctx: &Ctx, file: &Path, word: &str, strategy: StrategyArg, r: &mut Report) -> Result<(), Fail> {
    let p = load(file)?;
    let w = parse_word(&p, word)?;
    let s = match strategy {
        StrategyArg::Leftmost => Strategy::Leftmost,
        StrategyArg::Rightmost => Strategy::Rightmost,
    };
    match normalize(&p, &w, s, ctx.limits()) {
        Ok((n, path)) => {
            r.line(format!("normal form: {}", p.show_word(&n)));
            r.line(format!("steps: {}", path.len()));
            r.set("word", p.show_word(&w));
            r.set("normal_form", p.show_word(&n));
            r.set("steps", path.len());
            r.set("path", show_zigzag(&p, path.as_zigzag()));
            Ok(())
        }
        Err(RewriteError::FuelExhausted { partial }) => {
            let reached = partial.target(&p).map(|t| p.show_word(&t)).unwrap_or_default();
            Err(Fail {
                status: Status::Partial,
                msg: format!("fuel exhausted after {} steps at `{reached}`", partial.len()),
                data: vec![("reached".into(), Value::String(reached))],
            })
        }
        Err(e) => Err(Fail::usage(e.to_string())),
    }
}

fn eq(ctx: &Ctx, file: &Path, w1: &str, w2: &str, r: &mut Report) -> Result<(), Fail> {
    let p = load(file)?;
    let (u, v) = (parse_word(&p, w1)?, parse_word(&p, w2)?);
    let cp = ctx.convergent(p, r)?;
    let p = cp.polygraph();
    let (a, b) = (cp.normal_form(&u)?, cp.normal_form(&v)?);
    let equal = a == b && u.is_parallel(&v);
    r.set("equal", equal);
    r.set("normal_forms", vec![p.show_word(&a), p.show_word(&b)]);
    if equal {
        r.line(format!("EQUAL (normal form: {})", p.show_word(&a)));
    } else {
        r.line(format!("NOT EQUAL (normal forms: {} / {})", p.show_word(&a), p.show_word(&b)));
        r.status = Status::Fail;
    }
    Ok(())
}

fn cp(ctx: &Ctx, file: &Path, resolve: bool, r: &mut Report) -> Result<(), Fail> {
    let p = load(file)?;
    let limits = ctx.limits();
    let rep = enumerate_critical_branchings(&p, limits.pump_bound);
    let n = rep.branchings.len();
    r.line(format!("{n} critical branching{}", if n == 1 { "" } else { "s" }));
    if rep.truncated {
        r.line(format!("pumped families truncated at n = {}", limits.pump_bound));
    }
    let mut items = Vec::new();
    let (mut bad, mut unknown) = (0, 0);
    for (i, b) in rep.branchings.iter().enumerate() {
        let head = format!("[{}] {}: {} | {}", i + 1, p.show_word(&b.source), show_step(&p, &b.first), show_step(&p, &b.second));
        let mut item = json!({
            "source": p.show_word(&b.source),
            "first": show_step(&p, &b.first),
            "second": show_step(&p, &b.second),
            "offset": b.offset(),
        });
        match resolve_branching(&p, b, Strategy::Leftmost, limits) {
            ResolutionOutcome::Confluent(res) => {
                r.line(format!("{head} -> Confluent (join {})", p.show_word(&res.join)));
                item["outcome"] = "Confluent".into();
                item["join"] = p.show_word(&res.join).into();
                if resolve {
                    r.line(format!("    f': {}", show_zigzag(&p, res.f_prime.as_zigzag())));
                    r.line(format!("    g': {}", show_zigzag(&p, res.g_prime.as_zigzag())));
                    item["f_prime"] = show_zigzag(&p, res.f_prime.as_zigzag()).into();
                    item["g_prime"] = show_zigzag(&p, res.g_prime.as_zigzag()).into();
                }
            }
            ResolutionOutcome::NotConfluent { first_nf, second_nf } => {
                bad += 1;
                r.line(format!("{head} -> NotConfluent ({} / {})", p.show_word(&first_nf), p.show_word(&second_nf)));
                item["outcome"] = "NotConfluent".into();
                item["normal_forms"] = json!([p.show_word(&first_nf), p.show_word(&second_nf)]);
            }
            ResolutionOutcome::Unknown => {
                unknown += 1;
                r.line(format!("{head} -> Unknown (fuel exhausted)"));
                item["outcome"] = "Unknown".into();
            }
        }
        items.push(item);
    }
    r.set("count", n);
    r.set("truncated", rep.truncated);
    r.set("branchings", items);
    r.status = if bad > 0 {
        Status::Fail
    } else if unknown > 0 {
        Status::Partial
    } else {
        Status::Ok
    };
    Ok(())
}

fn completion_fail(e: CompletionError) -> Fail {
    match e {
        CompletionError::Fuel(_) => Fail::fuel(e.to_string()),
        CompletionError::PumpedUnsupported => Fail::usage(e.to_string()),
        _ => Fail::negative(e.to_string()),
    }
}

fn complete(ctx: &Ctx, file: &Path, max_rules: usize, out: Option<&Path>, r: &mut Report) -> Result<(), Fail> {
    let p = load(file)?;
    let res = knuth_bendix(&p, &DeglexOrder::of(&p), max_rules, ctx.limits()).map_err(completion_fail)?;
    let q = &res.polygraph;
    let added: Vec<String> = res.added.iter().map(|&k| q.show_rule(crate::RuleRef::Plain(k))).collect();
    match added.len() {
        0 => r.line("added 0 rules"),
        1 => r.line(format!("added 1 rule: {}", added[0])),
        n => {
            r.line(format!("added {n} rules:"));
            for a in &added {
                r.line(format!("  {a}"));
            }
        }
    }
    let trace: Vec<Value> = res
        .trace
        .iter()
        .map(|t| {
            json!({
                "source": q.show_word(&t.branching.source),
                "first_nf": q.show_word(&t.first_nf),
                "second_nf": q.show_word(&t.second_nf),
                "outcome": match t.outcome {
                    TraceOutcome::Joined => "joined".to_string(),
                    TraceOutcome::Added(k) => format!("added {}", q.rule_name(crate::RuleRef::Plain(k))),
                },
            })
        })
        .collect();
    r.set("added", added);
    r.set("trace", trace);
    match res.status {
        CompletionStatus::Completed => {
            r.line("completed");
            r.set("result", "Completed");
        }
        CompletionStatus::FuelExhausted => {
            r.line(format!("FuelExhausted: the next rule would exceed {max_rules} rules"));
            r.set("result", "FuelExhausted");
            r.status = Status::Partial;
        }
    }
    r.set("presentation", q.to_text());
    if let Some(path) = out {
        write(path, &q.to_text())?;
        r.line(format!("wrote {}", path.display()));
    }
    Ok(())
}

fn show_move(p: &Polygraph, m: &TietzeMove) -> String {
    match m {
        TietzeMove::AddGen { name, word, rule } => format!("add generator {name} with {rule}: {} => {name}", p.show_word(word)),
        TietzeMove::RemoveGen { generator, rule } => format!("remove generator {generator} with {rule}"),
        TietzeMove::AddRule { name, lhs, rhs, .. } => format!("add rule {name}: {} => {}", p.show_word(lhs), p.show_word(rhs)),
        TietzeMove::RemoveRule { rule, .. } => format!("remove rule {rule}"),
    }
}

fn reduce(ctx: &Ctx, file: &Path, out: Option<&Path>, r: &mut Report) -> Result<(), Fail> {
    let p = load(file)?;
    let cp = ctx.convergent(p, r)?;
    let red = metivier_squier_reduce(&cp).map_err(completion_fail)?;
    let q = red.result.polygraph();
    let moves: Vec<String> = red.moves.iter().map(|m| show_move(q, m)).collect();
    r.line(format!("{} Tietze moves", moves.len()));
    for m in &moves {
        r.line(format!("  {m}"));
    }
    r.line("rules:");
    for k in 0..q.rules().len() {
        r.line(format!("  {}", q.show_rule(crate::RuleRef::Plain(k))));
    }
    r.set("moves", moves);
    r.set("presentation", q.to_text());
    if let Some(path) = out {
        write(path, &q.to_text())?;
    }
    Ok(())
}

fn cohere(ctx: &Ctx, file: &Path, out: Option<&Path>, r: &mut Report) -> Result<(), Fail> {
    let p = load(file)?;
    let cp = ctx.convergent(p, r)?;
    let coh = squier_completion(&cp);
    let q = coh.polygraph();
    let n = q.three_cells().len();
    r.line(format!("{n} 3-cell{}", if n == 1 { "" } else { "s" }));
    let mut cells = Vec::new();
    for (i, c) in q.three_cells().iter().enumerate() {
        r.line(format!("  {} on {}: {} === {}", c.name, q.show_word(coh.three_cells_source(i)), show_zigzag(q, &c.source), show_zigzag(q, &c.target)));
        cells.push(json!({
            "name": c.name,
            "word": q.show_word(coh.three_cells_source(i)),
            "source": show_zigzag(q, &c.source),
            "target": show_zigzag(q, &c.target),
        }));
    }
    r.set("count", n);
    r.set("cells", cells);
    if let Some(path) = out {
        write(path, &q.to_text())?;
    }
    Ok(())
}

fn fill(ctx: &Ctx, file: &Path, z1: &str, z2: &str, r: &mut Report) -> Result<(), Fail> {
    let p = load(file)?;
    let cp = ctx.convergent(p, r)?;
    let coh = squier_completion(&cp);
    let q = coh.polygraph();
    let parse = |s: &str| q.parse_zigzag(s).map_err(|e| Fail::usage(format!("2-cell `{s}`: {e}")));
    let (f, g) = (parse(z1)?, parse(z2)?);
    for z in [&f, &g] {
        z.target(q).map_err(|e| Fail::usage(format!("2-cell `{}`: {e}", show_zigzag(q, z))))?;
    }
    let e = coh.fill_sphere(&f, &g).map_err(|e| Fail::negative(e.to_string()))?;
    let (s, t) = boundary3(q, &e).map_err(|e| Fail::negative(e.to_string()))?;
    let verified = s == f.reduced() && t == g.reduced();
    let used: Vec<String> = e.generators().into_iter().map(|i| coh.cell_name(i).to_string()).collect();
    r.line(format!("filler: {}", e.display(q)));
    r.line(format!("generating 3-cells used: {}", if used.is_empty() { "none".into() } else { used.join(" ") }));
    r.line(format!("boundary check: {}", if verified { "ok" } else { "FAIL" }));
    r.set("filler", e.display(q).to_string());
    r.set("cells_used", used);
    r.set("verified", verified);
    if !verified {
        r.status = Status::Fail;
    }
    Ok(())
}

fn std_cmd(table: &Path, out: Option<&Path>, r: &mut Report) -> Result<(), Fail> {
    let m = parse_table(&read(table)?).map_err(|e| Fail::usage(format!("{}: {e}", table.display())))?;
    let p = standard_coherent_presentation(&m).map_err(|e| Fail::negative(e.to_string()))?;
    r.line(format!(
        "standard coherent presentation: {} generators, {} rules, {} 3-cells",
        p.generators().len(),
        p.rules().len(),
        p.three_cells().len()
    ));
    r.line(p.to_text());
    r.set("generators", p.generators().len());
    r.set("rules", p.rules().len());
    r.set("three_cells", p.three_cells().len());
    r.set("presentation", p.to_text());
    if let Some(path) = out {
        write(path, &p.to_text())?;
    }
    Ok(())
}

fn transfer(ctx: &Ctx, sigma: &Path, xi: &Path, map: &Path, out: Option<&Path>, r: &mut Report) -> Result<(), Fail> {
    let s = load(sigma)?;
    let x = load(xi)?;
    let (s, gamma) = if s.three_cells().is_empty() {
        let cp = ctx.convergent(s, r)?;
        let coh = squier_completion(&cp);
        r.line(format!("homotopy basis of SIGMA: Squier completion, {} 3-cells", coh.polygraph().three_cells().len()));
        let q = coh.polygraph().clone();
        let cells = q.three_cells().to_vec();
        (q, cells)
    } else {
        let cells = s.three_cells().to_vec();
        (s, cells)
    };
    let data = parse_transfer_map(&s, &x, &read(map)?).map_err(|e| Fail::usage(format!("{}: {e}", map.display())))?;
    let q = transfer_homotopy_basis(&s, &x, &data, &gamma).map_err(|e| Fail::negative(e.to_string()))?;
    let n = q.three_cells().len();
    r.line(format!("{n} 3-cells on XI"));
    let mut cells = Vec::new();
    for c in q.three_cells() {
        r.line(format!("  {}: {} === {}", c.name, show_zigzag(&q, &c.source), show_zigzag(&q, &c.target)));
        cells.push(json!({"name": c.name, "source": show_zigzag(&q, &c.source), "target": show_zigzag(&q, &c.target)}));
    }
    r.set("count", n);
    r.set("cells", cells);
    if let Some(path) = out {
        write(path, &q.to_text())?;
    }
    Ok(())
}

fn homology(ctx: &Ctx, file: &Path, export: Option<&Path>, bound: usize, samples: usize, r: &mut Report) -> Result<(), Fail> {
    let p = load(file)?;
    let cp = ctx.convergent(p, r)?;
    let coh = squier_completion(&cp);
    let cx = Complex::coherent(&coh)?;
    let q = cx.polygraph();
    let (elts, exhaustive) = match enumerate_monoid(&cx, bound) {
        Ok(all) => (all, true),
        Err(HomologyError::BoundExceeded(_)) => (sample_normal_forms(&cx, samples, 12, ctx.cli.seed)?, false),
        Err(e) => return Err(e.into()),
    };
    if exhaustive {
        r.line(format!("monoid: {} elements, checked exhaustively", elts.len()));
    } else {
        r.line(format!("monoid: more than {bound} elements, {} sampled normal forms (seed {})", elts.len(), ctx.cli.seed));
    }
    r.set("elements", if exhaustive { json!(elts.len()) } else { Value::Null });
    r.set("samples", elts.len());
    let mut d3 = serde_json::Map::new();
    for x in cx.basis(3) {
        let Cell::Three(i) = x else { continue };
        let img = cx.d3(&ModuleElt::term((cx.unit(), x), 1))?;
        r.line(format!("d3[{}] = {}", coh.cell_name(i), show_module(q, &img)));
        d3.insert(coh.cell_name(i).to_string(), show_module(q, &img).into());
    }
    r.set("d3", Value::Object(d3));
    let rep = verify_identities(&cx, &elts)?;
    let mut ids = serde_json::Map::new();
    for c in &rep.checks {
        let mut l = format!("{}: {} ({} checked)", c.key, c.status.as_str(), c.checked);
        if let Some(w) = &c.witness {
            l.push_str(&format!("; witness {w}"));
        }
        r.line(l);
        ids.insert(c.key.into(), c.status.as_str().into());
        if c.status == CheckStatus::Fail {
            r.set(&format!("witness_{}", c.key), c.witness.clone().unwrap_or_default());
        }
    }
    r.set("identities", Value::Object(ids));
    if let Some(dir) = export {
        let syms = symbolic_matrices(&cx)?;
        let ints = match integer_matrices(&cx, bound) {
            Ok(m) => m,
            Err(HomologyError::BoundExceeded(b)) => {
                r.line(format!("integer matrices skipped: monoid exceeds {b} elements"));
                vec![]
            }
            Err(e) => return Err(e.into()),
        };
        for pair in ints.windows(2) {
            let zero = pair[0].mul(&pair[1]).map(|m| m.is_zero()).unwrap_or(false);
            r.line(format!("{}{} = 0: {}", pair[0].name, pair[1].name, if zero { "ok" } else { "FAIL" }));
            if !zero {
                r.status = Status::Fail;
            }
        }
        let files = write_matrices(dir, q, &ints, &syms)?;
        let names: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
        r.line(format!("wrote {} matrix files to {}", names.len(), dir.display()));
        r.set("exported", names);
    }
    if !rep.passed() {
        r.status = Status::Fail;
    }
    Ok(())
}

fn cert(ctx: &Ctx, file: &Path, certfile: &Path, r: &mut Report) -> Result<(), Fail> {
    let p = load(file)?;
    let c = parse_certificate(&p, &read(certfile)?).map_err(|e| Fail::usage(format!("{}: {e}", certfile.display())))?;
    let rep = check_interpretation_certificate(&p, &c, ctx.cli.sample_bound, ctx.cli.pump_bound).map_err(|e| Fail::usage(e.to_string()))?;
    r.set("sample_bound", rep.sample_bound);
    r.set("checks", rep.checks);
    match rep.verdict {
        CertVerdict::PassSampled => {
            r.line(format!(
                "PASS (sampled): {} inequalities hold for n <= {} and pumped instances up to {}; this is not a proof",
                rep.checks, rep.sample_bound, ctx.cli.pump_bound
            ));
            r.set("verdict", "PassSampled");
        }
        CertVerdict::Fail { rule, n, reason } => {
            r.line(format!("FAIL at rule {rule}, n = {n}: {reason}"));
            r.set("verdict", "Fail");
            r.set("witness", json!({"rule": rule, "n": n, "reason": reason}));
            r.status = Status::Fail;
        }
    }
    Ok(())
}
