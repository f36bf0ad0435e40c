//! Line-oriented text format for NFAs and transducers.
//!
//! One declaration per line, `#` starts a comment:
//!
//! ```text
//! # NFA
//! alphabet: a b c
//! states: s0 s1
//! initial: s0
//! accepting: s0 s1
//! trans: s0 a s1
//!
//! # transducer
//! input: a b
//! output: 0 1
//! states: q0 q1
//! initial: q0
//! label: q0 1
//! trans: q0 a q1
//! ```
//!
//! A transducer file must give exactly one `label` per state and exactly
//! `|Q|·|Σ_I|` `trans` lines; partial transducers are rejected.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::transducer::Transducer;

/// Either kind of document the loader understands.
#[derive(Clone, Debug)]
pub enum Document {
    Nfa(Nfa),
    Transducer(Transducer),
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    args: Vec<&'a str>,
}

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

fn tokenize(text: &str) -> Result<Vec<Line<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, rest)) = body.split_once(':') else {
            return perr(no, format!("expected `key: values`, found {body:?}"));
        };
        out.push(Line { no, key: key.trim(), args: rest.split_whitespace().collect() });
    }
    Ok(out)
}

struct Header<'a> {
    values: HashMap<&'static str, (usize, Vec<&'a str>)>,
}

impl<'a> Header<'a> {
    fn collect(lines: &[Line<'a>], keys: &[&'static str]) -> Result<Self> {
        let mut values = HashMap::new();
        for l in lines {
            if let Some(&k) = keys.iter().find(|&&k| k == l.key) {
                if values.insert(k, (l.no, l.args.clone())).is_some() {
                    return perr(l.no, format!("duplicate `{k}` declaration"));
                }
            }
        }
        Ok(Header { values })
    }

    fn required(&self, key: &'static str) -> Result<&(usize, Vec<&'a str>)> {
        self.values
            .get(key)
            .ok_or_else(|| Error::Parse { line: 0, message: format!("missing `{key}` declaration") })
    }

    fn alphabet(&self, key: &'static str) -> Result<Alphabet> {
        let (no, args) = self.required(key)?;
        Alphabet::new(args.iter().copied()).or_else(|e| perr(*no, e.to_string()))
    }

    fn states(&self) -> Result<(usize, HashMap<&'a str, usize>, Vec<String>)> {
        let (no, args) = self.required("states")?;
        if args.is_empty() {
            return perr(*no, "at least one state is required");
        }
        let mut map = HashMap::new();
        for (i, s) in args.iter().enumerate() {
            if map.insert(*s, i).is_some() {
                return perr(*no, format!("duplicate state {s:?}"));
            }
        }
        Ok((*no, map, args.iter().map(|s| s.to_string()).collect()))
    }

    fn initial(&self, states: &HashMap<&str, usize>) -> Result<usize> {
        let (no, args) = self.required("initial")?;
        match args.as_slice() {
            [s] => states.get(s).copied().map_or_else(|| perr(*no, format!("unknown state {s:?}")), Ok),
            _ => perr(*no, "`initial` takes exactly one state"),
        }
    }
}

fn lookup(map: &HashMap<&str, usize>, name: &str, what: &str, line: usize) -> Result<usize> {
    map.get(name).copied().map_or_else(|| perr(line, format!("unknown {what} {name:?}")), Ok)
}

fn symbol(alpha: &Alphabet, name: &str, line: usize) -> Result<usize> {
    alpha.index_of(name).map_or_else(|| perr(line, format!("unknown symbol {name:?}")), Ok)
}

fn check_keys(lines: &[Line<'_>], allowed: &[&str]) -> Result<()> {
    match lines.iter().find(|l| !allowed.contains(&l.key)) {
        Some(l) => perr(l.no, format!("unexpected key `{}`", l.key)),
        None => Ok(()),
    }
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let lines = tokenize(text)?;
    check_keys(&lines, &["alphabet", "states", "initial", "accepting", "trans"])?;
    let header = Header::collect(&lines, &["alphabet", "states", "initial", "accepting"])?;
    let alphabet = header.alphabet("alphabet")?;
    let (_, states, names) = header.states()?;
    let initial = header.initial(&states)?;
    let mut nfa = Nfa::new(alphabet.clone(), names, initial)?;
    if let Some((no, args)) = header.values.get("accepting") {
        for s in args {
            nfa.set_accepting(lookup(&states, s, "state", *no)?, true);
        }
    }
    for l in lines.iter().filter(|l| l.key == "trans") {
        let [from, sym, to] = l.args[..] else {
            return perr(l.no, "`trans` takes `state symbol state`");
        };
        let from = lookup(&states, from, "state", l.no)?;
        let to = lookup(&states, to, "state", l.no)?;
        let sym = symbol(&alphabet, sym, l.no)?;
        nfa.add_transition(from, sym, to)?;
    }
    Ok(nfa)
}

pub fn parse_transducer(text: &str) -> Result<Transducer> {
    let lines = tokenize(text)?;
    check_keys(&lines, &["input", "output", "states", "initial", "label", "trans"])?;
    let header = Header::collect(&lines, &["input", "output", "states", "initial"])?;
    let input = header.alphabet("input")?;
    let output = header.alphabet("output")?;
    let (states_line, states, names) = header.states()?;
    let initial = header.initial(&states)?;
    let n = names.len();

    let mut labels: Vec<Option<usize>> = vec![None; n];
    for l in lines.iter().filter(|l| l.key == "label") {
        let [q, o] = l.args[..] else {
            return perr(l.no, "`label` takes `state symbol`");
        };
        let q = lookup(&states, q, "state", l.no)?;
        let o = symbol(&output, o, l.no)?;
        if labels[q].replace(o).is_some() {
            return perr(l.no, format!("state {:?} labelled twice", names[q]));
        }
    }
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; input.len()]; n];
    for l in lines.iter().filter(|l| l.key == "trans") {
        let [from, sym, to] = l.args[..] else {
            return perr(l.no, "`trans` takes `state symbol state`");
        };
        let from = lookup(&states, from, "state", l.no)?;
        let to = lookup(&states, to, "state", l.no)?;
        let sym = symbol(&input, sym, l.no)?;
        if delta[from][sym].replace(to).is_some() {
            return perr(
                l.no,
                format!("nondeterministic transition from {:?} on {:?}", names[from], input.name(sym)),
            );
        }
    }
    let mut table = Vec::with_capacity(n);
    for (q, row) in delta.into_iter().enumerate() {
        let mut full = Vec::with_capacity(row.len());
        for (a, t) in row.into_iter().enumerate() {
            match t {
                Some(t) => full.push(t),
                None => {
                    return perr(
                        states_line,
                        format!("missing transition from {:?} on {:?}", names[q], input.name(a)),
                    )
                }
            }
        }
        table.push(full);
    }
    let mut label = Vec::with_capacity(n);
    for (q, l) in labels.into_iter().enumerate() {
        match l {
            Some(l) => label.push(l),
            None => return perr(states_line, format!("state {:?} has no label", names[q])),
        }
    }
    Transducer::new(input, output, names, initial, table, label)
}

/// Parses either format, dispatching on the presence of `input:` or `alphabet:`.
pub fn parse_document(text: &str) -> Result<Document> {
    let lines = tokenize(text)?;
    if lines.iter().any(|l| l.key == "input" || l.key == "output" || l.key == "label") {
        parse_transducer(text).map(Document::Transducer)
    } else {
        parse_nfa(text).map(Document::Nfa)
    }
}

pub fn write_nfa(nfa: &Nfa) -> String {
    let mut out = String::new();
    let names = nfa.state_names();
    writeln!(out, "alphabet: {}", nfa.alphabet().symbols().join(" ")).unwrap();
    writeln!(out, "states: {}", names.join(" ")).unwrap();
    writeln!(out, "initial: {}", names[nfa.initial()]).unwrap();
    let acc: Vec<&str> = nfa.accepting_states().map(|s| names[s].as_str()).collect();
    writeln!(out, "accepting: {}", acc.join(" ")).unwrap();
    for q in 0..nfa.num_states() {
        for a in 0..nfa.alphabet().len() {
            for &t in nfa.successors(q, a) {
                writeln!(out, "trans: {} {} {}", names[q], nfa.alphabet().name(a), names[t]).unwrap();
            }
        }
    }
    out
}

pub fn write_transducer(t: &Transducer) -> String {
    let mut out = String::new();
    let names = t.state_names();
    writeln!(out, "input: {}", t.input().symbols().join(" ")).unwrap();
    writeln!(out, "output: {}", t.output().symbols().join(" ")).unwrap();
    writeln!(out, "states: {}", names.join(" ")).unwrap();
    writeln!(out, "initial: {}", names[t.initial()]).unwrap();
    for (q, name) in names.iter().enumerate() {
        writeln!(out, "label: {} {}", name, t.output().name(t.label(q))).unwrap();
    }
    for q in 0..t.num_states() {
        for a in 0..t.input().len() {
            writeln!(out, "trans: {} {} {}", names[q], t.input().name(a), names[t.next(q, a)]).unwrap();
        }
    }
    out
}
