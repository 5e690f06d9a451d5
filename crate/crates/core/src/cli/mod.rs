//! The `syncrel` command line: one JSON report per invocation on stdout.
//!
//! Exit codes: 0 when a command ran (whatever the verdict), 2 on usage,
//! parse and precondition errors, 3 on internal defect tripwires.

pub mod model;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::automata::PlainAlphabet;
use crate::definability::{self as def, Answer, Verdict};
use crate::error::{Error, Result};
use crate::oracle;
use crate::syncword::{word_metrics, SyncClassification, TaggedAlphabet};
use crate::uniform;
use model::{
    load_automaton, load_distance, load_relation, load_transducer, write_automaton, write_transducer, Automaton,
};

#[derive(Parser, Debug)]
#[command(name = "syncrel", version, about = "Synchronization languages of rational relations")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lag, shift and shiftlag finiteness of synchronization languages.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Worker threads for several files.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Is ⟦S⟧ defined by a regular subset of T?
    Def {
        source: PathBuf,
        target: PathBuf,
        /// Write the defining subset of T here on a `yes`.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Regularity of the ⪯-minimal T-synchronizations of ⟦S⟧.
    Minsync {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Regularity of the ⪯-maximal T-synchronizations of ⟦S⟧.
    Maxsync {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Regularity of all T-synchronizations of ⟦S⟧.
    Allsync {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Re-checks a witness: W ⊆ T and ⟦W⟧ = ⟦S⟧.
    VerifyWitness { source: PathBuf, target: PathBuf, witness: PathBuf },
    /// Does every pair of T have at most one synchronization in T?
    Unambiguous { target: PathBuf },
    /// Is the relation prefix-recognizable?
    PrefixRec {
        relation: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Writes the definability instance of two disjoint relations.
    Separability {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Uniformization.
    #[command(subcommand)]
    Unif(UnifCommand),
    /// Transducer evaluation and synchronization languages.
    #[command(subcommand)]
    Transducer(TransducerCommand),
    /// Distance automata.
    #[command(subcommand)]
    Distance(DistanceCommand),
    /// Brute-force reference answers at bounded length.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug)]
pub enum UnifCommand {
    /// Uniformization by a recognizable relation.
    Rec {
        source: PathBuf,
        /// Write the subsequential uniformizer here on a `yes`.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Σ*Γ*-controlled subsequential uniformization.
    Finiteshift {
        source: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Subsequential uniformization of automatic relations (not implemented).
    Subseq { source: PathBuf },
    /// dom(f) = dom⟦S⟧ and graph(f) ⊆ ⟦S⟧.
    Verify { transducer: PathBuf, source: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum TransducerCommand {
    /// Output of a subsequential transducer on an input word.
    Eval { transducer: PathBuf, word: String },
    /// The synchronization language S(T).
    Sync {
        transducer: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Is S(T) contained in the control language?
    Controlled { transducer: PathBuf, control: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum DistanceCommand {
    /// Minimal weight of an accepting run.
    Eval { automaton: PathBuf, word: String },
    /// Limitedness and the bound D(B).
    Limited { automaton: PathBuf },
    /// The distance automaton of a synchronization language.
    Build {
        source: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// All pairs of ⟦S⟧ with |u| + |v| ≤ max-len.
    Pairs {
        source: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Lag, shift and shiftlag of a word.
    Metrics {
        word: String,
        /// Alphabet taken from this model; default Σ = {a}, Γ = {b}.
        #[arg(long)]
        alphabet: Option<PathBuf>,
    },
    /// Is the word ⪯-maximal among the T-synchronizations of its pair?
    Maximal { target: PathBuf, word: String },
    /// Is the word ⪯-minimal among the T-synchronizations of its pair?
    Minimal { target: PathBuf, word: String },
    /// Distance of a word by listing every run.
    Distance { automaton: PathBuf, word: String },
}

/// A report: the JSON document and its one-line text form.
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into() }
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let format = cli.format;
    match execute(cli.command) {
        Ok(r) => {
            let _ = match format {
                Format::Json => writeln!(out, "{}", r.json),
                Format::Text => writeln!(out, "{}", r.text),
            };
            0
        }
        Err(e) => {
            let code = exit_code(&e);
            let report = json!({ "error": error_kind(&e), "message": e.to_string() });
            let _ = match format {
                Format::Json => writeln!(out, "{report}"),
                Format::Text => writeln!(out, "error: {e}"),
            };
            let _ = writeln!(err, "syncrel: {e}");
            code
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::Diverged => 3,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } | Error::Syntax { .. } | Error::UndeclaredLetter(_) => "parse",
        Error::Io(_) => "io",
        Error::Internal(_) | Error::Diverged => "internal",
        Error::Unsupported(_) => "unsupported",
        Error::BoundExceeded(_) => "bound",
        _ => "precondition",
    }
}

pub fn execute(cmd: Command) -> Result<Report> {
    match cmd {
        Command::Classify { files, jobs } => classify_files(&files, jobs),
        Command::Def { source, target, witness } => {
            let (s, t) = pair(&source, &target)?;
            decision(def::decide_definability(&s.alpha, &s.nfa, &t.nfa)?, &s.alpha, witness.as_deref())
        }
        Command::Minsync { source, target, witness } => {
            let (s, t) = pair(&source, &target)?;
            decision(def::minsync_regular(&s.alpha, &s.nfa, &t.nfa)?, &s.alpha, witness.as_deref())
        }
        Command::Maxsync { source, target, witness } => {
            let (s, t) = pair(&source, &target)?;
            decision(def::maxsync_regular(&s.alpha, &s.nfa, &t.nfa)?, &s.alpha, witness.as_deref())
        }
        Command::Allsync { source, target, witness } => {
            let (s, t) = pair(&source, &target)?;
            decision(def::allsync_regular(&s.alpha, &s.nfa, &t.nfa)?, &s.alpha, witness.as_deref())
        }
        Command::VerifyWitness { source, target, witness } => {
            let (s, t) = pair(&source, &target)?;
            let w = load_automaton(&witness)?;
            same_alphabet(&s, &w)?;
            let ok = def::verify_witness(&s.alpha, &s.nfa, &t.nfa, &w.nfa)?;
            let mut v = Verdict::new("witness-check");
            v.answer = yes_no(ok);
            v.reason = if ok { "W ⊆ T and ⟦W⟧ = ⟦S⟧" } else { "W ⊄ T or ⟦W⟧ ≠ ⟦S⟧" }.into();
            decision(v, &s.alpha, None)
        }
        Command::Unambiguous { target } => {
            let t = load_automaton(&target)?;
            let ok = def::is_unambiguous(&t.alpha, &t.nfa)?;
            let mut v = Verdict::new("unambiguity");
            v.answer = yes_no(ok);
            v.reason = if ok {
                "no two words of T synchronize the same pair"
            } else {
                "two distinct words of T synchronize the same pair"
            }
            .into();
            decision(v, &t.alpha, None)
        }
        Command::PrefixRec { relation, witness } => {
            let (a, r) = load_relation(&relation)?;
            decision(def::is_prefix_recognizable(&r)?, &a.alpha, witness.as_deref())
        }
        Command::Separability { first, second, source, target } => {
            let (a1, r1) = load_relation(&first)?;
            let (a2, r2) = load_relation(&second)?;
            same_alphabet(&a1, &a2)?;
            let (s, t) = def::separability_to_definability(&r1, &r2)?;
            write_file(&source, &write_automaton(&a1.alpha, &s))?;
            write_file(&target, &write_automaton(&a1.alpha, &t))?;
            Ok(Report::new(
                json!({ "source": source.display().to_string(), "target": target.display().to_string() }),
                format!("wrote {} and {}", source.display(), target.display()),
            ))
        }
        Command::Unif(u) => unif(u),
        Command::Transducer(t) => transducer(t),
        Command::Distance(d) => distance(d),
        Command::Oracle(o) => oracle_cmd(o),
    }
}

fn pair(source: &Path, target: &Path) -> Result<(Automaton, Automaton)> {
    let s = load_automaton(source)?;
    let t = load_automaton(target)?;
    same_alphabet(&s, &t)?;
    Ok((s, t))
}

fn same_alphabet(a: &Automaton, b: &Automaton) -> Result<()> {
    if a.alpha != b.alpha {
        return Err(Error::AlphabetMismatch(format!("{} vs {}", a.alpha, b.alpha)));
    }
    Ok(())
}

fn yes_no(b: bool) -> Answer {
    if b {
        Answer::Yes
    } else {
        Answer::No
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn finite(b: bool) -> &'static str {
    if b {
        "finite"
    } else {
        "infinite"
    }
}

fn class_json(c: &SyncClassification) -> Value {
    json!({
        "lag": finite(c.lag_finite),
        "shift": finite(c.shift_finite),
        "shiftlag": finite(c.shiftlag_finite),
        "class": c.class,
        "gamma": c.gamma,
        "states": c.dfa.num_states(),
        "fs_states": c.fs_states.iter().filter(|&&f| f).count(),
    })
}

fn classify_one(path: &Path) -> Result<(Value, String)> {
    let a = load_automaton(path)?;
    let c = &a.class;
    let text = format!(
        "{}: {:?} (lag {}, shift {}, shiftlag {})",
        path.display(),
        c.class,
        finite(c.lag_finite),
        finite(c.shift_finite),
        finite(c.shiftlag_finite)
    );
    Ok((class_json(c), text))
}

fn classify_files(files: &[PathBuf], jobs: usize) -> Result<Report> {
    if files.len() == 1 {
        let (j, t) = classify_one(&files[0])?;
        return Ok(Report::new(j, t));
    }
    let jobs = jobs.clamp(1, files.len());
    let mut results: Vec<Option<Result<(Value, String)>>> = vec![None; files.len()];
    std::thread::scope(|sc| {
        let chunk = files.len().div_ceil(jobs);
        for (fs, rs) in files.chunks(chunk).zip(results.chunks_mut(chunk)) {
            sc.spawn(move || {
                for (f, r) in fs.iter().zip(rs) {
                    *r = Some(classify_one(f));
                }
            });
        }
    });
    let mut docs = Vec::new();
    let mut lines = Vec::new();
    for (f, r) in files.iter().zip(results) {
        let (mut j, t) = r.expect("every file classified")?;
        j["file"] = json!(f.display().to_string());
        docs.push(j);
        lines.push(t);
    }
    Ok(Report::new(Value::Array(docs), lines.join("; ")))
}

/// Report for a three-valued decision; the witness is written as an
/// automaton file when a path is given.
fn decision(v: Verdict, alpha: &TaggedAlphabet, witness: Option<&Path>) -> Result<Report> {
    let mut written = None;
    if let (Some(path), Some(w), Answer::Yes) = (witness, &v.witness, v.answer) {
        write_file(path, &write_automaton(alpha, w))?;
        written = Some(path.display().to_string());
    }
    Ok(verdict_report(&v, written))
}

fn verdict_report(v: &Verdict, witness: Option<String>) -> Report {
    let json = json!({
        "answer": v.answer,
        "method": v.method,
        "witness": witness,
        "reason": v.reason,
        "checks": v.checks,
    });
    let text = format!("{} ({}): {}", v.answer, v.method, v.reason);
    Report::new(json, text)
}

fn unif(cmd: UnifCommand) -> Result<Report> {
    let (source, witness, finiteshift) = match cmd {
        UnifCommand::Rec { source, witness } => (source, witness, false),
        UnifCommand::Finiteshift { source, witness } => (source, witness, true),
        UnifCommand::Subseq { source } => {
            load_automaton(&source)?;
            let mut v = Verdict::new("unsupported");
            v.reason = "unsupported: subsequential uniformization of automatic relations is not implemented".into();
            return Ok(verdict_report(&v, None));
        }
        UnifCommand::Verify { transducer, source } => {
            let f = load_transducer(&transducer)?;
            let s = load_automaton(&source)?;
            let sub = f.subseq.ok_or_else(|| Error::Unsupported("transducer is not subsequential".into()))?;
            if sub.alpha != s.alpha {
                return Err(Error::AlphabetMismatch(format!("{} vs {}", sub.alpha, s.alpha)));
            }
            let ok = uniform::verify_uniformizer(&sub, &s.nfa)?;
            let mut v = Verdict::new("uniformizer-check");
            v.answer = yes_no(ok);
            v.reason = if ok { "dom(f) = dom⟦S⟧ and graph(f) ⊆ ⟦S⟧" } else { "f does not uniformize ⟦S⟧" }.into();
            return Ok(verdict_report(&v, None));
        }
    };
    let s = load_automaton(&source)?;
    let v = if finiteshift {
        uniform::has_finite_shift_subseq_uniformization(&s.alpha, &s.nfa)?
    } else {
        uniform::has_recognizable_uniformization(&s.alpha, &s.nfa)?
    };
    let mut written = None;
    let mut extra = json!({});
    if v.answer == Answer::Yes {
        let b = uniform::build_distance_automaton(&s.alpha, &s.nfa)?;
        extra["bound"] = json!(uniform::bounded_distance_value(&b)?);
        let d = uniform::synthesize_recognizable_uniformizer(&s.alpha, &s.nfa)?;
        let ins = PlainAlphabet::new(s.alpha.inputs());
        let outs = PlainAlphabet::new(s.alpha.outputs());
        let parts: Vec<Value> = d
            .parts()
            .iter()
            .map(|(u, vv)| {
                let out = vv.finite_words().and_then(|w| w.into_iter().next()).unwrap_or_default();
                let sample: Vec<String> = u.enumerate_up_to(3).iter().map(|w| ins.show(w)).collect();
                json!({ "output": outs.show(&out), "input_sample": sample })
            })
            .collect();
        extra["uniformizer"] = Value::Array(parts);
        if let Some(path) = witness {
            let f = uniform::uniformizer_to_subseq(&s.alpha, &d)?;
            write_file(&path, &write_transducer(&f))?;
            written = Some(path.display().to_string());
        }
    }
    let mut r = verdict_report(&v, written);
    if let (Value::Object(m), Value::Object(e)) = (&mut r.json, extra) {
        m.extend(e);
    }
    Ok(r)
}

fn transducer(cmd: TransducerCommand) -> Result<Report> {
    match cmd {
        TransducerCommand::Eval { transducer, word } => {
            let t = load_transducer(&transducer)?;
            let f = t.subseq.ok_or_else(|| Error::Unsupported("transducer is not subsequential".into()))?;
            let ins = PlainAlphabet::new(f.alpha.inputs());
            let outs = PlainAlphabet::new(f.alpha.outputs());
            let u = ins.word(&word)?;
            let v = uniform::eval_subseq(&f, &u);
            let text = v.as_ref().map_or("⊥".to_string(), |v| shown_or_eps(&outs, v));
            Ok(Report::new(
                json!({ "accepted": v.is_some(), "output": v.as_ref().map(|v| outs.show(v)) }),
                text,
            ))
        }
        TransducerCommand::Sync { transducer, out } => {
            let t = load_transducer(&transducer)?;
            let s = uniform::sync_language_of_transducer(&t.nft)?;
            let text = write_automaton(&t.nft.alpha, &s);
            if let Some(p) = &out {
                write_file(p, &text)?;
            }
            Ok(Report::new(
                json!({ "states": s.minimal().num_states(), "out": out.map(|p| p.display().to_string()) }),
                text.lines().collect::<Vec<_>>().join(" | "),
            ))
        }
        TransducerCommand::Controlled { transducer, control } => {
            let t = load_transducer(&transducer)?;
            let c = load_automaton(&control)?;
            if t.nft.alpha != c.alpha {
                return Err(Error::AlphabetMismatch(format!("{} vs {}", t.nft.alpha, c.alpha)));
            }
            let ok = uniform::is_t_controlled(&t.nft, &c.nfa)?;
            let mut v = Verdict::new("control");
            v.answer = yes_no(ok);
            v.reason = if ok { "S(T) is contained in the control language" } else { "S(T) leaves the control language" }.into();
            Ok(verdict_report(&v, None))
        }
    }
}

fn shown_or_eps(al: &PlainAlphabet, w: &[usize]) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        al.show(w)
    }
}

fn distance(cmd: DistanceCommand) -> Result<Report> {
    match cmd {
        DistanceCommand::Eval { automaton, word } => {
            let d = load_distance(&automaton)?;
            let w = d.alphabet.word(&word)?;
            let v = uniform::distance_of_word(&d.automaton, &w);
            Ok(Report::new(json!({ "distance": v }), v.map_or("∞".to_string(), |x| x.to_string())))
        }
        DistanceCommand::Limited { automaton } => {
            let d = load_distance(&automaton)?;
            let limited = uniform::is_limited(&d.automaton);
            let bound = if limited { Some(uniform::bounded_distance_value(&d.automaton)?) } else { None };
            let text = match bound {
                Some(b) => format!("limited, D = {b}"),
                None => "not limited".into(),
            };
            Ok(Report::new(json!({ "limited": limited, "bound": bound }), text))
        }
        DistanceCommand::Build { source, out } => {
            let s = load_automaton(&source)?;
            let b = uniform::build_distance_automaton(&s.alpha, &s.nfa)?;
            let text = write_distance(&s.alpha, &b);
            if let Some(p) = &out {
                write_file(p, &text)?;
            }
            Ok(Report::new(
                json!({ "states": b.num_states(), "out": out.map(|p| p.display().to_string()) }),
                text.lines().collect::<Vec<_>>().join(" | "),
            ))
        }
    }
}

fn write_distance(alpha: &TaggedAlphabet, b: &uniform::DistanceAutomaton) -> String {
    let mut s = format!("alphabet: {}\n", alpha.inputs().join(" "));
    let names: Vec<String> = (0..b.num_states()).map(|q| format!("q{q}")).collect();
    s += &format!("states: {}\ninitial: q{}\n", names.join(" "), b.initial());
    let finals: Vec<&str> = (0..b.num_states()).filter(|&q| b.is_final(q)).map(|q| names[q].as_str()).collect();
    if !finals.is_empty() {
        s += &format!("final: {}\n", finals.join(" "));
    }
    for &(p, a, q, w) in b.edges() {
        let w = match w {
            uniform::Weight::Zero => "0",
            uniform::Weight::One => "1",
            uniform::Weight::Inf => "inf",
        };
        s += &format!("q{p} {} q{q} w={w}\n", alpha.inputs()[a]);
    }
    s
}

fn check_len(n: usize) -> Result<()> {
    if n > oracle::MAX_LEN {
        return Err(Error::BoundExceeded(format!("--max-len {n} exceeds {}", oracle::MAX_LEN)));
    }
    Ok(())
}

fn oracle_cmd(cmd: OracleCommand) -> Result<Report> {
    match cmd {
        OracleCommand::Pairs { source, max_len } => {
            check_len(max_len)?;
            let s = load_automaton(&source)?;
            let ins = PlainAlphabet::new(s.alpha.inputs());
            let outs = PlainAlphabet::new(s.alpha.outputs());
            let pairs = oracle::pairs_up_to(&s.alpha, &s.nfa, max_len);
            let list: Vec<Value> = pairs.iter().map(|(u, v)| json!([ins.show(u), outs.show(v)])).collect();
            let text = pairs
                .iter()
                .map(|(u, v)| format!("({}, {})", shown_or_eps(&ins, u), shown_or_eps(&outs, v)))
                .collect::<Vec<_>>()
                .join(" ");
            Ok(Report::new(json!({ "count": pairs.len(), "pairs": list }), text))
        }
        OracleCommand::Metrics { word, alphabet } => {
            let alpha = match alphabet {
                Some(p) => load_automaton(&p)?.alpha,
                None => TaggedAlphabet::new(&["a"], &["b"]),
            };
            let w = alpha.word(&word)?;
            let m = word_metrics(&alpha, &w);
            Ok(Report::new(
                json!({ "lag": m.lag, "shift": m.shift, "shiftlag": m.shiftlag }),
                format!("{} {} {}", m.lag, m.shift, m.shiftlag),
            ))
        }
        OracleCommand::Maximal { target, word } => order_check(&target, &word, true),
        OracleCommand::Minimal { target, word } => order_check(&target, &word, false),
        OracleCommand::Distance { automaton, word } => {
            let d = load_distance(&automaton)?;
            let w = d.alphabet.word(&word)?;
            check_len(w.len())?;
            let v = oracle::min_run_distance(&d.automaton, &w);
            Ok(Report::new(json!({ "distance": v }), v.map_or("∞".to_string(), |x| x.to_string())))
        }
    }
}

fn order_check(target: &Path, word: &str, maximal: bool) -> Result<Report> {
    let t = load_automaton(target)?;
    let w = t.alpha.word(word)?;
    check_len(w.len())?;
    if !t.nfa.accepts(&w) {
        return Err(Error::Unsupported("the word is not in T".into()));
    }
    let ok = if maximal {
        oracle::is_maximal(&t.alpha, &t.nfa, &w)
    } else {
        oracle::is_minimal(&t.alpha, &t.nfa, &w)
    };
    let others = oracle::same_pair_syncs(&t.alpha, &t.nfa, &w).len();
    let which = if maximal { "maximal" } else { "minimal" };
    let mut v = Verdict::new(&format!("oracle-{which}"));
    v.answer = yes_no(ok);
    v.reason = format!("compared against {others} T-synchronizations of the same pair");
    Ok(verdict_report(&v, None))
}
