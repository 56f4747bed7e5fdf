//! File formats: NAA documents as JSON, word files as token lines.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, WordSet};
use crate::automata::{Naa, Transition};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NaaDoc {
    alphabet: Vec<String>,
    directions: usize,
    states: Vec<String>,
    initial: Vec<String>,
    accepting: Vec<String>,
    transitions: Vec<TransitionDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionDoc {
    from: String,
    letter: String,
    /// 1-based.
    direction: usize,
    to: String,
}

fn parse_err(location: impl Into<String>, message: impl ToString) -> Error {
    Error::Parse { location: location.into(), message: message.to_string() }
}

/// Parses an NAA document. `source` names the input in error locations.
pub fn parse_naa(text: &str, source: &str) -> Result<Naa> {
    let doc: NaaDoc = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("{source}:{}:{}", e.line(), e.column()), e))?;
    let at = |what: String| format!("{source}: {what}");
    let alphabet = Alphabet::new(&doc.alphabet).map_err(|e| parse_err(at("alphabet".into()), e))?;
    let state = |name: &str, what: String| {
        doc.states
            .iter()
            .position(|s| s == name)
            .map(|i| i as u32)
            .ok_or_else(|| parse_err(at(what), format!("unknown state {name:?}")))
    };
    let initial = doc.initial.iter().map(|s| state(s, "initial".into())).collect::<Result<Vec<_>>>()?;
    let accepting = doc.accepting.iter().map(|s| state(s, "accepting".into())).collect::<Result<Vec<_>>>()?;
    let mut transitions = Vec::with_capacity(doc.transitions.len());
    for (n, t) in doc.transitions.iter().enumerate() {
        let what = || format!("transitions[{n}]");
        if t.direction == 0 || t.direction > doc.directions {
            return Err(parse_err(at(what()), format!("direction {} outside 1..={}", t.direction, doc.directions)));
        }
        let letter = alphabet.id(&t.letter).ok_or_else(|| parse_err(at(what()), format!("unknown letter {:?}", t.letter)))?;
        transitions.push(Transition {
            from: state(&t.from, what())?,
            letter,
            direction: t.direction - 1,
            to: state(&t.to, what())?,
        });
    }
    Naa::new(alphabet, doc.directions, doc.states, initial, accepting, transitions).map_err(|e| parse_err(source, e))
}

/// Pretty-printed document for `naa`.
pub fn write_naa(naa: &Naa) -> String {
    let sigma = naa.alphabet();
    let names = naa.state_names();
    let doc = NaaDoc {
        alphabet: sigma.letters().iter().map(|l| l.token().to_string()).collect(),
        directions: naa.k(),
        states: names.to_vec(),
        initial: naa.initial().iter().map(|&s| names[s as usize].clone()).collect(),
        accepting: naa.accepting_states().iter().map(|&s| names[s as usize].clone()).collect(),
        transitions: naa
            .transitions()
            .iter()
            .map(|t| TransitionDoc {
                from: names[t.from as usize].clone(),
                letter: sigma.token(t.letter).to_string(),
                direction: t.direction + 1,
                to: names[t.to as usize].clone(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("naa documents always serialize");
    s.push('\n');
    s
}

/// One word per line, tokens separated by whitespace; blank lines are
/// skipped and do not receive word ids.
pub fn parse_words(text: &str, alphabet: &Alphabet, source: &str) -> Result<WordSet> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| alphabet.parse_word(l).map_err(|e| parse_err(format!("{source}:{}", n + 1), e)))
        .collect::<Result<Vec<_>>>()
        .map(WordSet::new)
}

pub fn write_words(ws: &WordSet, alphabet: &Alphabet) -> String {
    ws.words().iter().map(|w| alphabet.format_word(w) + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_counting_naa, build_packet_pairs_naa};

    #[test]
    fn round_trip() {
        for naa in [build_counting_naa(), build_packet_pairs_naa()] {
            let text = write_naa(&naa);
            let back = parse_naa(&text, "x.json").unwrap();
            assert_eq!(write_naa(&back), text);
            assert_eq!(back.transitions(), naa.transitions());
        }
    }

    #[test]
    fn errors_have_locations() {
        let err = parse_naa("{\"alphabet\": [\"a\"],", "bad.json").unwrap_err().to_string();
        assert!(err.starts_with("bad.json:1:"), "{err}");
        let doc = r#"{"alphabet":["a"],"directions":1,"states":["p"],"initial":["p"],"accepting":[],
            "transitions":[{"from":"p","letter":"a","direction":2,"to":"p"}]}"#;
        let err = parse_naa(doc, "d.json").unwrap_err().to_string();
        assert!(err.contains("transitions[0]"), "{err}");
        let sigma = Alphabet::new(["a", "b"]).unwrap();
        let err = parse_words("a b\n\na c\n", &sigma, "w.txt").unwrap_err().to_string();
        assert!(err.starts_with("w.txt:3"), "{err}");
        assert_eq!(parse_words("a b\n\n b\n", &sigma, "w").unwrap().len(), 2);
    }
}
