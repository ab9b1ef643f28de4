//! JSON form of a [`MorphicSpec`].
//!
//! ```json
//! {"alphabet": ["a","b","c"], "rules": {"a": ["a","b"], "b": ["b","c"], "c": ["c","c"]},
//!  "seed": "a", "coding": {"a": "0", "b": "1", "c": "0"}}
//! ```
//!
//! Rule bodies may also be given as a single string when every symbol is one
//! character. Repeated object keys are rejected.

use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Alphabet, Coding, Letter, MorphicSpec, Morphism, Word};
use crate::error::{Error, Result};

/// JSON object that keeps key order and refuses duplicate keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedMap<V>(pub Vec<(String, V)>);

impl<V> OrderedMap<V> {
    pub fn get(&self, key: &str) -> Option<&V> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl<V: Serialize> Serialize for OrderedMap<V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for OrderedMap<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MapVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for MapVisitor<V> {
            type Value = OrderedMap<V>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a JSON object without repeated keys")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Self::Value, A::Error> {
                let mut entries: Vec<(String, V)> = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, V>()? {
                    if entries.iter().any(|(seen, _)| *seen == k) {
                        return Err(de::Error::custom(format!("duplicate key {k:?}")));
                    }
                    entries.push((k, v));
                }
                Ok(OrderedMap(entries))
            }
        }

        deserializer.deserialize_map(MapVisitor(PhantomData))
    }
}

/// A rule body: either a symbol list or a concatenated string.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RuleBody {
    Symbols(Vec<String>),
    Concat(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub alphabet: Vec<String>,
    pub rules: OrderedMap<RuleBody>,
    pub seed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coding: Option<OrderedMap<String>>,
}

impl SpecDocument {
    pub fn from_json(text: &str) -> Result<SpecDocument> {
        serde_json::from_str(text).map_err(|e| Error::SpecParse(e.to_string()))
    }

    pub fn read(path: &std::path::Path) -> Result<SpecDocument> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            if e.kind() == std::io::ErrorKind::NotFound {
                Error::SpecNotFound(path.display().to_string())
            } else {
                Error::SpecParse(format!("{}: {e}", path.display()))
            }
        })?;
        SpecDocument::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec documents always serialize")
    }

    /// Validate and build the spec.
    pub fn to_spec(&self) -> Result<MorphicSpec> {
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        for (k, _) in &self.rules.0 {
            if alphabet.letter(k).is_none() {
                return Err(Error::InvalidSpec(format!("rule for unknown symbol {k:?}")));
            }
        }
        let mut rules = Vec::with_capacity(alphabet.len());
        for sym in alphabet.symbols() {
            let body = self
                .rules
                .get(sym)
                .ok_or_else(|| Error::InvalidSpec(format!("no rule for {sym:?}")))?;
            let tokens: Vec<String> = match body {
                RuleBody::Symbols(v) => v.clone(),
                RuleBody::Concat(s) => s.chars().map(|c| c.to_string()).collect(),
            };
            let word = tokens
                .iter()
                .map(|t| {
                    alphabet
                        .letter(t)
                        .ok_or_else(|| Error::InvalidMorphism(format!("rule for {sym:?} uses unknown symbol {t:?}")))
                })
                .collect::<Result<Word>>()?;
            rules.push(word);
        }
        let morphism = Morphism::new(alphabet.clone(), rules)?;
        let seed = alphabet
            .letter(&self.seed)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown seed {:?}", self.seed)))?;
        let coding = match &self.coding {
            None => None,
            Some(map) => Some(build_coding(&alphabet, map)?),
        };
        MorphicSpec::new(morphism, seed, coding)
    }

    pub fn from_spec(spec: &MorphicSpec) -> SpecDocument {
        let alphabet = spec.morphism().alphabet();
        let rules = alphabet
            .letters()
            .map(|a| {
                let body = spec
                    .morphism()
                    .rule(a)
                    .iter()
                    .map(|&l| alphabet.symbol(l).to_string())
                    .collect();
                (alphabet.symbol(a).to_string(), RuleBody::Symbols(body))
            })
            .collect();
        let coding = spec.coding().map(|c| {
            OrderedMap(
                alphabet
                    .letters()
                    .map(|a| {
                        (
                            alphabet.symbol(a).to_string(),
                            c.target().symbol(c.apply(a)).to_string(),
                        )
                    })
                    .collect(),
            )
        });
        SpecDocument {
            alphabet: alphabet.symbols().to_vec(),
            rules: OrderedMap(rules),
            seed: alphabet.symbol(spec.seed()).to_string(),
            coding,
        }
    }
}

/// Target symbols are ordered by first appearance along the source alphabet.
fn build_coding(source: &Alphabet, map: &OrderedMap<String>) -> Result<Coding> {
    for (k, _) in &map.0 {
        if source.letter(k).is_none() {
            return Err(Error::InvalidSpec(format!("coding for unknown symbol {k:?}")));
        }
    }
    let mut targets: Vec<String> = Vec::new();
    let mut images = Vec::with_capacity(source.len());
    for sym in source.symbols() {
        let t = map
            .get(sym)
            .ok_or_else(|| Error::InvalidSpec(format!("coding misses {sym:?}")))?;
        let idx = match targets.iter().position(|x| x == t) {
            Some(i) => i,
            None => {
                targets.push(t.clone());
                targets.len() - 1
            }
        };
        images.push(Letter::from_index(idx));
    }
    Coding::new(source.len(), Alphabet::new(targets)?, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::prefix;

    const P2: &str = r#"{"alphabet":["a","b","c"],"rules":{"a":["a","b"],"b":["b","c"],"c":["c","c"]},
        "seed":"a","coding":{"a":"0","b":"1","c":"0"}}"#;

    #[test]
    fn parse_and_generate() {
        let spec = SpecDocument::from_json(P2).unwrap().to_spec().unwrap();
        let mut s = spec.stream();
        let out = spec.output_alphabet().render(&prefix(s.as_mut(), 9), true);
        assert_eq!(out, "011010001");
    }

    #[test]
    fn string_rule_bodies() {
        let doc = r#"{"alphabet":["0","1"],"rules":{"0":"01","1":"10"},"seed":"0"}"#;
        let spec = SpecDocument::from_json(doc).unwrap().to_spec().unwrap();
        assert_eq!(spec.morphism().uniform_width(), Some(2));
    }

    #[test]
    fn duplicate_keys_rejected() {
        let doc = r#"{"alphabet":["a","b"],"rules":{"a":["a","b"],"a":["b"],"b":["a"]},"seed":"a"}"#;
        assert_eq!(SpecDocument::from_json(doc).unwrap_err().name(), "SpecParse");
    }

    #[test]
    fn unknown_fields_rejected() {
        let doc = r#"{"alphabet":["a"],"rules":{"a":["a","a"]},"seed":"a","extra":1}"#;
        assert!(SpecDocument::from_json(doc).is_err());
    }

    #[test]
    fn validation_errors() {
        let missing = r#"{"alphabet":["a","b"],"rules":{"a":["a","b"]},"seed":"a"}"#;
        assert_eq!(
            SpecDocument::from_json(missing).unwrap().to_spec().unwrap_err().name(),
            "InvalidSpec"
        );
        let erasing = r#"{"alphabet":["a","b"],"rules":{"a":["a","b"],"b":[]},"seed":"a"}"#;
        assert_eq!(
            SpecDocument::from_json(erasing).unwrap().to_spec().unwrap_err().name(),
            "InvalidMorphism"
        );
        let stray = r#"{"alphabet":["a","b"],"rules":{"a":["a","z"],"b":["b"]},"seed":"a"}"#;
        assert_eq!(
            SpecDocument::from_json(stray).unwrap().to_spec().unwrap_err().name(),
            "InvalidMorphism"
        );
        let swap = r#"{"alphabet":["a","b"],"rules":{"a":["b"],"b":["a"]},"seed":"a"}"#;
        assert_eq!(
            SpecDocument::from_json(swap).unwrap().to_spec().unwrap_err().name(),
            "NotProlongable"
        );
    }

    #[test]
    fn round_trip() {
        let spec = SpecDocument::from_json(P2).unwrap().to_spec().unwrap();
        let doc = SpecDocument::from_spec(&spec);
        let again = SpecDocument::from_json(&doc.to_json()).unwrap().to_spec().unwrap();
        assert_eq!(spec, again);
    }
}
