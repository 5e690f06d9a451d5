//! Line-oriented model files: automata (`.syna`), transducers (`.synt`) and
//! distance automata (`.synd`).
//!
//! ```text
//! # comment
//! input-alphabet: a b
//! output-alphabet: c d
//! states: q0 q1
//! initial: q0
//! final: q1
//! q0 i:a q1
//! ```
//!
//! `regex: <expr>` replaces states and transitions. Transducer lines read
//! `q0 a / cc q1` with `finalout: q1 = c`; distance automata declare
//! `alphabet:` and use `q0 a q1 w=1`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::automata::regex::split_token;
use crate::automata::{parse_regex, Dfa, Nfa, PlainAlphabet, State, Symbols};
use crate::autorel::{from_sync_fsl, AutomaticRelation};
use crate::error::{Error, Result};
use crate::syncword::{classify, SyncClassification, TaggedAlphabet};
use crate::uniform::{DistanceAutomaton, Nft, SubseqTransducer, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Automaton,
    Transducer,
    Distance,
    Relation,
}

impl Kind {
    fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "automaton" => Kind::Automaton,
            "transducer" => Kind::Transducer,
            "distance-automaton" | "distance" => Kind::Distance,
            "relation" => Kind::Relation,
            _ => return None,
        })
    }

    fn from_path(path: &Path) -> Kind {
        match path.extension().and_then(|e| e.to_str()) {
            Some("synt") => Kind::Transducer,
            Some("synd") => Kind::Distance,
            _ => Kind::Automaton,
        }
    }
}

/// A synchronization language with its classification.
#[derive(Clone, Debug)]
pub struct Automaton {
    pub alpha: TaggedAlphabet,
    pub nfa: Nfa,
    pub class: SyncClassification,
}

#[derive(Clone, Debug)]
pub struct Transducer {
    pub nft: Nft,
    /// Present when the transducer reads one letter per transition and is
    /// input-deterministic.
    pub subseq: Option<SubseqTransducer>,
}

#[derive(Clone, Debug)]
pub struct Distance {
    pub alphabet: PlainAlphabet,
    pub automaton: DistanceAutomaton,
}

#[derive(Clone, Debug)]
pub enum Model {
    Automaton(Automaton),
    /// A finite-shiftlag language read as its automatic relation.
    Relation(Automaton, AutomaticRelation),
    Transducer(Transducer),
    Distance(Distance),
}

pub fn load_model(path: &Path) -> Result<Model> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_model(&text, &path.display().to_string(), Kind::from_path(path))
}

pub fn load_automaton(path: &Path) -> Result<Automaton> {
    match load_model(path)? {
        Model::Automaton(a) | Model::Relation(a, _) => Ok(a),
        _ => Err(wrong_kind(path, "an automaton")),
    }
}

pub fn load_relation(path: &Path) -> Result<(Automaton, AutomaticRelation)> {
    match load_model(path)? {
        Model::Relation(a, r) => Ok((a, r)),
        Model::Automaton(a) => {
            let r = from_sync_fsl(&a.alpha, &a.nfa)?;
            Ok((a, r))
        }
        _ => Err(wrong_kind(path, "a relation")),
    }
}

pub fn load_transducer(path: &Path) -> Result<Transducer> {
    match load_model(path)? {
        Model::Transducer(t) => Ok(t),
        _ => Err(wrong_kind(path, "a transducer")),
    }
}

pub fn load_distance(path: &Path) -> Result<Distance> {
    match load_model(path)? {
        Model::Distance(d) => Ok(d),
        _ => Err(wrong_kind(path, "a distance automaton")),
    }
}

fn wrong_kind(path: &Path, want: &str) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line: 1,
        col: 1,
        msg: format!("expected {want}"),
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
    /// Byte offset of `text` in the raw line.
    start: usize,
}

impl Line<'_> {
    fn tokens(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut rest = self.text;
        let mut off = self.start;
        while let Some(i) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[i..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            out.push((off + i + 1, &tail[..len]));
            off += i + len;
            rest = &tail[len..];
        }
        out
    }
}

struct Parser<'a> {
    path: &'a str,
    kind: Kind,
    kind_line: Option<usize>,
    inputs: Option<Vec<String>>,
    outputs: Option<Vec<String>>,
    plain: Option<Vec<String>>,
    states: Option<Vec<String>>,
    initial: Option<(usize, usize, String)>,
    finals: Vec<(usize, usize, String)>,
    regex: Option<(usize, usize, String)>,
    finalout: Vec<(usize, usize, String, String)>,
    body: Vec<Line<'a>>,
}

impl<'a> Parser<'a> {
    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.into(),
            line,
            col,
            msg: msg.into(),
        }
    }

    fn directive(&mut self, no: usize, key: &str, value: &str, vcol: usize) -> Result<()> {
        let words = || value.split_whitespace().map(str::to_string).collect::<Vec<_>>();
        let once = |slot: bool, p: &Self| {
            if slot {
                Err(p.err(no, 1, format!("duplicate `{key}:`")))
            } else {
                Ok(())
            }
        };
        match key {
            "kind" => {
                once(self.kind_line.is_some(), self)?;
                self.kind = Kind::parse(value.trim())
                    .ok_or_else(|| self.err(no, vcol, format!("unknown kind `{}`", value.trim())))?;
                self.kind_line = Some(no);
            }
            "input-alphabet" => {
                once(self.inputs.is_some(), self)?;
                self.inputs = Some(words());
            }
            "output-alphabet" => {
                once(self.outputs.is_some(), self)?;
                self.outputs = Some(words());
            }
            "alphabet" => {
                once(self.plain.is_some(), self)?;
                self.plain = Some(words());
            }
            "states" => {
                once(self.states.is_some(), self)?;
                self.states = Some(words());
            }
            "initial" => {
                once(self.initial.is_some(), self)?;
                self.initial = Some((no, vcol, value.trim().to_string()));
            }
            "final" => {
                let line = Line { no, text: value, start: vcol - 1 - (value.len() - value.trim_start().len()) };
                for (col, w) in line.tokens() {
                    self.finals.push((no, col, w.to_string()));
                }
            }
            "regex" => {
                once(self.regex.is_some(), self)?;
                self.regex = Some((no, vcol, value.trim().to_string()));
            }
            "finalout" => {
                let (q, out) = value
                    .split_once('=')
                    .ok_or_else(|| self.err(no, vcol, "expected `finalout: <state> = <word>`"))?;
                self.finalout.push((no, vcol, q.trim().to_string(), out.trim().to_string()));
            }
            _ => return Err(self.err(no, 1, format!("unknown directive `{key}:`"))),
        }
        Ok(())
    }
}

/// Parses a model; `default` applies when the file has no `kind:` line.
pub fn parse_model(text: &str, path: &str, default: Kind) -> Result<Model> {
    let mut p = Parser {
        path,
        kind: default,
        kind_line: None,
        inputs: None,
        outputs: None,
        plain: None,
        states: None,
        initial: None,
        finals: Vec::new(),
        regex: None,
        finalout: Vec::new(),
        body: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let text = raw.split('#').next().unwrap_or("");
        let start = text.len() - text.trim_start().len();
        let text = text.trim();
        if text.is_empty() {
            continue;
        }
        // state names carry no colon, so a colon in the first token marks a directive
        let first = text.split_whitespace().next().unwrap_or("");
        if first.contains(':') {
            let (key, value) = text.split_once(':').unwrap_or((text, ""));
            let vcol = start + key.len() + 2 + (value.len() - value.trim_start().len());
            p.directive(no, key.trim(), value, vcol)?;
            continue;
        }
        p.body.push(Line { no, text, start });
    }
    match p.kind {
        Kind::Automaton => Ok(Model::Automaton(build_automaton(&p)?)),
        Kind::Relation => {
            let a = build_automaton(&p)?;
            if !a.class.shiftlag_finite {
                return Err(p.err(1, 1, "a relation file needs a language of finite shiftlag"));
            }
            let r = from_sync_fsl(&a.alpha, &a.nfa)?;
            Ok(Model::Relation(a, r))
        }
        Kind::Transducer => Ok(Model::Transducer(build_transducer(&p)?)),
        Kind::Distance => Ok(Model::Distance(build_distance(&p)?)),
    }
}

fn tagged(p: &Parser) -> Result<TaggedAlphabet> {
    let ins = p.inputs.clone().ok_or_else(|| p.err(1, 1, "missing `input-alphabet:`"))?;
    let outs = p.outputs.clone().ok_or_else(|| p.err(1, 1, "missing `output-alphabet:`"))?;
    for (i, s) in ins.iter().enumerate() {
        if ins[..i].contains(s) {
            return Err(p.err(1, 1, format!("input letter `{s}` declared twice")));
        }
    }
    for (i, s) in outs.iter().enumerate() {
        if outs[..i].contains(s) {
            return Err(p.err(1, 1, format!("output letter `{s}` declared twice")));
        }
    }
    Ok(TaggedAlphabet::new(&ins, &outs))
}

struct StateTable {
    names: Vec<String>,
    index: HashMap<String, State>,
}

impl StateTable {
    fn new(p: &Parser) -> Result<Self> {
        let names = p.states.clone().ok_or_else(|| p.err(1, 1, "missing `states:`"))?;
        if names.is_empty() {
            return Err(p.err(1, 1, "`states:` is empty"));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(p.err(1, 1, format!("state `{n}` declared twice")));
            }
        }
        Ok(StateTable { names, index })
    }

    fn get(&self, p: &Parser, line: usize, col: usize, name: &str) -> Result<State> {
        self.index.get(name).copied().ok_or_else(|| p.err(line, col, format!("undeclared state `{name}`")))
    }

    fn initial(&self, p: &Parser) -> Result<State> {
        let (line, col, name) = p.initial.as_ref().ok_or_else(|| p.err(1, 1, "missing `initial:`"))?;
        self.get(p, *line, *col, name)
    }
}

fn build_automaton(p: &Parser) -> Result<Automaton> {
    let alpha = tagged(p)?;
    let nfa = if let Some((line, col, expr)) = &p.regex {
        if p.states.is_some() || p.initial.is_some() || !p.finals.is_empty() || !p.body.is_empty() {
            return Err(p.err(*line, 1, "`regex:` replaces states, initial, final and transitions"));
        }
        parse_regex(expr, &alpha).map_err(|e| match e {
            Error::Syntax { pos, msg } => p.err(*line, col + pos, msg),
            other => p.err(*line, *col, other.to_string()),
        })?
    } else {
        let st = StateTable::new(p)?;
        let mut a = Nfa::new(alpha.size());
        for _ in 1..st.names.len() {
            a.add_state();
        }
        a.set_initial(st.initial(p)?);
        for (line, col, f) in &p.finals {
            a.set_final(st.get(p, *line, *col, f)?, true);
        }
        for l in &p.body {
            let t = l.tokens();
            let [(c0, from), (c1, letter), (c2, to)] = t[..] else {
                return Err(p.err(l.no, l.start + 1, "expected `<state> <letter> <state>`"));
            };
            let from = st.get(p, l.no, c0, from)?;
            let to = st.get(p, l.no, c2, to)?;
            if letter == "eps" || letter == "ε" {
                a.add_eps(from, to);
                continue;
            }
            let x = alpha.lookup(letter)
                .ok_or_else(|| p.err(l.no, c1, format!("undeclared letter `{letter}`")))?;
            a.add_edge(from, x, to);
        }
        a
    };
    if !p.finalout.is_empty() {
        return Err(p.err(p.finalout[0].0, 1, "`finalout:` only applies to transducers"));
    }
    let class = classify(&alpha, &nfa)?;
    Ok(Automaton { alpha, nfa, class })
}

fn raw_word(p: &Parser, line: usize, col: usize, al: &PlainAlphabet, text: &str) -> Result<Vec<usize>> {
    let mut w = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "eps" || tok == "ε" {
            continue;
        }
        w.extend(split_token(al, tok).map_err(|_| p.err(line, col, format!("undeclared letter in `{tok}`")))?);
    }
    Ok(w)
}

fn build_transducer(p: &Parser) -> Result<Transducer> {
    let alpha = tagged(p)?;
    if p.regex.is_some() {
        return Err(p.err(1, 1, "transducers have no `regex:` form"));
    }
    let ins = PlainAlphabet::new(alpha.inputs());
    let outs = PlainAlphabet::new(alpha.outputs());
    let st = StateTable::new(p)?;
    let mut t = Nft::new(&alpha, st.names.len());
    t.initial = st.initial(p)?;
    for (line, col, f) in &p.finals {
        let q = st.get(p, *line, *col, f)?;
        t.final_out[q] = Some(Vec::new());
    }
    for (line, col, q, w) in &p.finalout {
        let s = st.get(p, *line, *col, q)?;
        if t.final_out[s].is_none() {
            return Err(p.err(*line, *col, format!("`finalout:` on non-final state `{q}`")));
        }
        t.final_out[s] = Some(raw_word(p, *line, *col, &outs, w)?);
    }
    for l in &p.body {
        let t2 = l.tokens();
        let slash = t2.iter().position(|&(_, w)| w == "/");
        let (Some(k), true) = (slash, t2.len() >= 3) else {
            return Err(p.err(l.no, l.start + 1, "expected `<state> <input> / <output> <state>`"));
        };
        if k == 0 || k + 1 >= t2.len() {
            return Err(p.err(l.no, l.start + 1, "expected `<state> <input> / <output> <state>`"));
        }
        let (c0, from) = t2[0];
        let (cl, to) = t2[t2.len() - 1];
        let join = |r: &[(usize, &str)]| r.iter().map(|x| x.1).collect::<Vec<_>>().join(" ");
        let u = raw_word(p, l.no, t2.get(1).map_or(c0, |x| x.0), &ins, &join(&t2[1..k]))?;
        let v = raw_word(p, l.no, t2[k].0, &outs, &join(&t2[k + 1..t2.len() - 1]))?;
        let from = st.get(p, l.no, c0, from)?;
        let to = st.get(p, l.no, cl, to)?;
        t.transitions.push((from, u, v, to));
    }
    let subseq = as_subsequential(&t);
    Ok(Transducer { nft: t, subseq })
}

fn as_subsequential(t: &Nft) -> Option<SubseqTransducer> {
    let mut f = SubseqTransducer::new(&t.alpha, t.states);
    f.initial = t.initial;
    f.final_out = t.final_out.clone();
    for (p, u, v, q) in &t.transitions {
        let [a] = u[..] else { return None };
        if f.delta[*p][a].is_some() {
            return None;
        }
        f.delta[*p][a] = Some((v.clone(), *q));
    }
    Some(f)
}

fn build_distance(p: &Parser) -> Result<Distance> {
    let names = p.plain.clone().ok_or_else(|| p.err(1, 1, "missing `alphabet:`"))?;
    if p.inputs.is_some() || p.outputs.is_some() || p.regex.is_some() {
        return Err(p.err(1, 1, "distance automata declare only `alphabet:`"));
    }
    let alphabet = PlainAlphabet::new(&names);
    let st = StateTable::new(p)?;
    let mut b = DistanceAutomaton::new(names.len(), st.names.len());
    b.set_initial(st.initial(p)?);
    for (line, col, f) in &p.finals {
        b.set_final(st.get(p, *line, *col, f)?, true);
    }
    for l in &p.body {
        let t = l.tokens();
        let [(c0, from), (c1, letter), (c2, to), (c3, w)] = t[..] else {
            return Err(p.err(l.no, l.start + 1, "expected `<state> <letter> <state> w=<0|1|inf>`"));
        };
        let from = st.get(p, l.no, c0, from)?;
        let to = st.get(p, l.no, c2, to)?;
        let x = alphabet.0.iter().position(|s| s == letter).ok_or_else(|| p.err(l.no, c1, format!("undeclared letter `{letter}`")))?;
        let w = match w {
            "w=0" => Weight::Zero,
            "w=1" => Weight::One,
            "w=inf" | "w=∞" => Weight::Inf,
            _ => return Err(p.err(l.no, c3, format!("bad weight `{w}`"))),
        };
        b.add_edge(from, x, to, w);
    }
    Ok(Distance { alphabet, automaton: b })
}

fn header(out: &mut String, alpha: &TaggedAlphabet) {
    let _ = writeln!(out, "input-alphabet: {}", alpha.inputs().join(" "));
    let _ = writeln!(out, "output-alphabet: {}", alpha.outputs().join(" "));
}

fn state_line(out: &mut String, n: usize) {
    let names: Vec<String> = (0..n).map(|q| format!("q{q}")).collect();
    let _ = writeln!(out, "states: {}", names.join(" "));
}

/// The minimal DFA of `nfa` in automaton-file syntax.
pub fn write_automaton(alpha: &TaggedAlphabet, nfa: &Nfa) -> String {
    let d: Dfa = nfa.minimal();
    let mut out = String::new();
    header(&mut out, alpha);
    state_line(&mut out, d.num_states());
    let _ = writeln!(out, "initial: q{}", d.initial());
    let finals: Vec<String> = (0..d.num_states()).filter(|&q| d.is_final(q)).map(|q| format!("q{q}")).collect();
    if !finals.is_empty() {
        let _ = writeln!(out, "final: {}", finals.join(" "));
    }
    for q in 0..d.num_states() {
        for (l, r) in d.edges(q) {
            let _ = writeln!(out, "q{q} {} q{r}", alpha.name(l));
        }
    }
    out
}

pub fn write_transducer(f: &SubseqTransducer) -> String {
    let al = &f.alpha;
    let word = |names: &[String], w: &[usize]| {
        if w.is_empty() {
            "eps".to_string()
        } else {
            w.iter().map(|&x| names[x].as_str()).collect::<Vec<_>>().join(" ")
        }
    };
    let mut out = String::new();
    header(&mut out, al);
    state_line(&mut out, f.num_states());
    let _ = writeln!(out, "initial: q{}", f.initial);
    let finals: Vec<usize> = (0..f.num_states()).filter(|&q| f.final_out[q].is_some()).collect();
    if !finals.is_empty() {
        let names: Vec<String> = finals.iter().map(|q| format!("q{q}")).collect();
        let _ = writeln!(out, "final: {}", names.join(" "));
    }
    for &q in &finals {
        let v = f.final_out[q].as_deref().unwrap_or_default();
        if !v.is_empty() {
            let _ = writeln!(out, "finalout: q{q} = {}", word(al.outputs(), v));
        }
    }
    for (q, row) in f.delta.iter().enumerate() {
        for (a, e) in row.iter().enumerate() {
            if let Some((v, r)) = e {
                let _ = writeln!(out, "q{q} {} / {} q{r}", al.inputs()[a], word(al.outputs(), v));
            }
        }
    }
    out
}
