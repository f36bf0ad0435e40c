//! Machine-readable reports: JSON, or flattened `key: value` lines.

use serde_json::{json, Value};

use crate::existential::{CommonRound, EquivalenceSearch, ExistentialVerdict, Outcome, RoundAnswer};
use crate::simulation::{EquivalenceVerdict, SimulationVerdict};
use crate::symmetry::{SymmetrySearch, SymmetryVerdict};
use crate::trace::ProductAlphabet;

pub fn simulation_json(v: &SimulationVerdict, product: &ProductAlphabet) -> Value {
    let cex = v.counterexample.as_ref().map(|c| {
        json!({
            "input": product.input().names(&c.input),
            "output": product.output().names(&c.output),
            "rounds": c.letters.iter().map(|p| p.render(product)).collect::<Vec<_>>(),
        })
    });
    json!({
        "holds": v.holds,
        "k": v.k.get(),
        "counterexample": cex,
        "stats": {
            "configs_explored": v.stats.configs_explored,
            "pruned": v.stats.pruned,
            "quotient_letters": v.stats.quotient_letters,
            "letter_classes": v.stats.letter_classes,
            "vacuous": v.stats.vacuous,
        },
    })
}

pub fn equivalence_json(v: &EquivalenceVerdict, product: &ProductAlphabet) -> Value {
    json!({
        "holds": v.holds(),
        "forward": simulation_json(&v.forward, product),
        "backward": simulation_json(&v.backward, product),
    })
}

pub fn outcome_json(o: Outcome) -> Value {
    match o {
        Outcome::Found(k) => json!({ "status": "found", "k": k }),
        Outcome::NotFoundUpTo(bound) => json!({ "status": "not-found-up-to", "bound": bound }),
    }
}

fn answer_json(a: &RoundAnswer) -> Value {
    match a {
        RoundAnswer::Computed { holds } => json!({ "kind": "computed", "holds": holds }),
        RoundAnswer::Reused { from, holds, verified } => {
            json!({ "kind": "reused", "from": from, "holds": holds, "verified": verified })
        }
        RoundAnswer::Skipped { reason } => json!({ "kind": "skipped", "reason": reason }),
    }
}

pub fn existential_json(v: &ExistentialVerdict) -> Value {
    let log: Vec<Value> = v
        .log
        .iter()
        .map(|e| {
            json!({
                "k": e.k,
                "quotient_letters": e.quotient_letters.to_string(),
                "profile_size": e.profile_size,
                "fingerprint": e.fingerprint,
                "answer": answer_json(&e.answer),
                "elapsed_ms": e.elapsed.as_secs_f64() * 1000.0,
            })
        })
        .collect();
    json!({
        "outcome": outcome_json(v.outcome),
        "reuse_count": v.reuse_count,
        "reuse_checks": v.reuse_checks,
        "reuse_mismatches": v.reuse_mismatches,
        "log": log,
    })
}

fn common_json(c: &CommonRound) -> Value {
    json!({
        "outcome": outcome_json(c.outcome),
        "candidate": c.candidate,
        "skipped": c.skipped,
    })
}

pub fn equivalence_search_json(v: &EquivalenceSearch) -> Value {
    json!({
        "outcome": outcome_json(v.outcome()),
        "combined": common_json(&v.common),
        "forward": existential_json(&v.forward),
        "backward": existential_json(&v.backward),
    })
}

pub fn symmetry_json(v: &SymmetryVerdict, product: &ProductAlphabet, labels: &[String]) -> Value {
    let gens: Vec<Value> = v
        .generators
        .iter()
        .map(|(pi, s)| json!({ "permutation": pi.to_cycles(labels), "verdict": simulation_json(s, product) }))
        .collect();
    json!({ "holds": v.holds(), "k": v.k.get(), "generators": gens })
}

pub fn symmetry_search_json(v: &SymmetrySearch, labels: &[String]) -> Value {
    let gens: Vec<Value> = v
        .generators
        .iter()
        .map(|(pi, s)| json!({ "permutation": pi.to_cycles(labels), "search": existential_json(s) }))
        .collect();
    json!({ "outcome": outcome_json(v.outcome()), "combined": common_json(&v.common), "generators": gens })
}

/// A command's result together with its invocation and timing.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub result: Value,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "result": self.result,
            "elapsed_ms": self.elapsed_ms,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("report serializes")
    }

    /// One `dotted.key: value` line per scalar; arrays of scalars are
    /// joined by spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        flatten("", &self.to_value(), &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            out.push_str(&format!("{prefix}: {}\n", parts.join(" ")));
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), item, out);
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::two_letter_pair;
    use crate::nfa::Nfa;
    use crate::simulation::fixed_round_simulates;
    use crate::words::RoundSpec;

    #[test]
    fn counterexamples_are_rendered() {
        let (t1, t2) = two_letter_pair();
        let lambda = Nfa::universal(t1.input().clone());
        let v = fixed_round_simulates(&t2, &t1, &lambda, RoundSpec::new(2).unwrap()).unwrap();
        let r = Report { command: "fixed".into(), result: simulation_json(&v, &ProductAlphabet::of(&t1)), elapsed_ms: 0.0 };
        let value: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(value["result"]["holds"], false);
        assert_eq!(value["result"]["counterexample"]["output"], json!(["0", "0"]));
        let text = r.to_text();
        assert!(text.contains("result.holds: false\n"));
        assert!(text.contains("result.counterexample.output: 0 0\n"));
    }
}
