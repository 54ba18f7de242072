//! Strict JSON literals for rings, ideals, maps, and multiplicative sets.
//!
//! These are the shapes the command line and the check-suite config files
//! share. Parsing is strict — unknown keys, wrong arities, and malformed
//! numbers are errors, so golden files cannot drift silently — and every
//! value the emitters produce parses back to an equal value.
//!
//! Grammar:
//!
//! - ring: `{"type":"zmod","n":12}`,
//!   `{"type":"product","left":R,"right":R}`,
//!   `{"type":"quotient","base":R,"gens":[..]}`
//! - ideal: `{"gens":[..]}` (the ideal generated by the listed elements)
//! - mult set: `{"gens":[..]}` (multiplicative closure of the elements
//!   together with 1)
//! - expansion: `"identity"`, `"radical"`, `{"plus":IDEAL}`,
//!   `{"colon_by":IDEAL}`, `{"sum":[E,E]}`, `{"meet":[E,..]}`,
//!   `{"compose":[E,E]}` (the second entry applies first)
//! - reduction: `"empty"`, `"zero"`, `"omega"`, `"identity"`,
//!   `{"power":n}` with n ≥ 2

use serde_json::{json, Map, Value};

use crate::ideal::{Ideal, IdealError};
use crate::maps::{ExpansionFn, MapError, ReductionFn};
use crate::multset::{MultSet, MultSetError};
use crate::ring::{Ring, RingDesc};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LiteralError {
    #[error("invalid {context}: {message}")]
    Invalid {
        context: &'static str,
        message: String,
    },
    #[error("{0} has no literal form")]
    NotRepresentable(&'static str),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    MultSet(#[from] MultSetError),
    #[error(transparent)]
    Map(#[from] MapError),
}

fn invalid(context: &'static str, message: impl Into<String>) -> LiteralError {
    LiteralError::Invalid {
        context,
        message: message.into(),
    }
}

fn as_object<'v>(
    value: &'v Value,
    context: &'static str,
) -> Result<&'v Map<String, Value>, LiteralError> {
    value
        .as_object()
        .ok_or_else(|| invalid(context, format!("expected an object, got {value}")))
}

fn reject_unknown_keys(
    map: &Map<String, Value>,
    allowed: &[&str],
    context: &'static str,
) -> Result<(), LiteralError> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(invalid(context, format!("unknown key {key:?}")));
        }
    }
    Ok(())
}

fn require<'v>(
    map: &'v Map<String, Value>,
    key: &str,
    context: &'static str,
) -> Result<&'v Value, LiteralError> {
    map.get(key)
        .ok_or_else(|| invalid(context, format!("missing key {key:?}")))
}

fn as_usize(value: &Value, context: &'static str) -> Result<usize, LiteralError> {
    value.as_u64().map(|n| n as usize).ok_or_else(|| {
        invalid(
            context,
            format!("expected a non-negative integer, got {value}"),
        )
    })
}

fn as_elem_list(value: &Value, context: &'static str) -> Result<Vec<usize>, LiteralError> {
    let arr = value
        .as_array()
        .ok_or_else(|| invalid(context, format!("expected an array, got {value}")))?;
    arr.iter().map(|v| as_usize(v, context)).collect()
}

/// Parse a ring description.
pub fn parse_ring_desc(value: &Value) -> Result<RingDesc, LiteralError> {
    let map = as_object(value, "ring literal")?;
    let tag = require(map, "type", "ring literal")?
        .as_str()
        .ok_or_else(|| invalid("ring literal", "key \"type\" must be a string"))?;
    match tag {
        "zmod" => {
            reject_unknown_keys(map, &["type", "n"], "ring literal")?;
            let n = as_usize(require(map, "n", "ring literal")?, "ring literal")?;
            Ok(RingDesc::Zmod { n })
        }
        "product" => {
            reject_unknown_keys(map, &["type", "left", "right"], "ring literal")?;
            let left = parse_ring_desc(require(map, "left", "ring literal")?)?;
            let right = parse_ring_desc(require(map, "right", "ring literal")?)?;
            Ok(RingDesc::Product {
                left: Box::new(left),
                right: Box::new(right),
            })
        }
        "quotient" => {
            reject_unknown_keys(map, &["type", "base", "gens"], "ring literal")?;
            let base = parse_ring_desc(require(map, "base", "ring literal")?)?;
            let gens = as_elem_list(require(map, "gens", "ring literal")?, "ring literal")?;
            Ok(RingDesc::Quotient {
                base: Box::new(base),
                gens,
            })
        }
        other => Err(invalid(
            "ring literal",
            format!("unknown ring type {other:?} (expected zmod, product, or quotient)"),
        )),
    }
}

/// Emit a ring description in the literal grammar.
pub fn emit_ring_desc(desc: &RingDesc) -> Value {
    match desc {
        RingDesc::Zmod { n } => json!({"type": "zmod", "n": n}),
        RingDesc::Product { left, right } => json!({
            "type": "product",
            "left": emit_ring_desc(left),
            "right": emit_ring_desc(right),
        }),
        RingDesc::Quotient { base, gens } => json!({
            "type": "quotient",
            "base": emit_ring_desc(base),
            "gens": gens,
        }),
    }
}

/// Parse an ideal literal against a ring.
pub fn parse_ideal(ring: &Ring, value: &Value) -> Result<Ideal, LiteralError> {
    let map = as_object(value, "ideal literal")?;
    reject_unknown_keys(map, &["gens"], "ideal literal")?;
    let gens = as_elem_list(require(map, "gens", "ideal literal")?, "ideal literal")?;
    Ok(Ideal::generate(ring, &gens)?)
}

/// Emit an ideal as a generator literal (its full member list generates it).
pub fn emit_ideal(ideal: &Ideal) -> Value {
    json!({"gens": ideal.members().to_vec()})
}

/// Parse a multiplicative-set literal: the closure of the listed
/// generators together with 1.
pub fn parse_mult_set(ring: &Ring, value: &Value) -> Result<MultSet, LiteralError> {
    let map = as_object(value, "mult-set literal")?;
    reject_unknown_keys(map, &["gens"], "mult-set literal")?;
    let gens = as_elem_list(
        require(map, "gens", "mult-set literal")?,
        "mult-set literal",
    )?;
    Ok(MultSet::closure(ring, &gens)?)
}

/// Emit a multiplicative set as a generator literal (a closed set is its
/// own closure).
pub fn emit_mult_set(s: &MultSet) -> Value {
    json!({"gens": s.members().to_vec()})
}

fn parse_expansion_pair(
    ring: &Ring,
    value: &Value,
    context: &'static str,
) -> Result<(ExpansionFn, ExpansionFn), LiteralError> {
    let arr = value
        .as_array()
        .ok_or_else(|| invalid(context, "expected an array of two expansions"))?;
    if arr.len() != 2 {
        return Err(invalid(
            context,
            format!("expected exactly two expansions, got {}", arr.len()),
        ));
    }
    Ok((
        parse_expansion(ring, &arr[0])?,
        parse_expansion(ring, &arr[1])?,
    ))
}

/// Parse an expansion-function literal against a ring.
pub fn parse_expansion(ring: &Ring, value: &Value) -> Result<ExpansionFn, LiteralError> {
    match value {
        Value::String(word) => match word.as_str() {
            "identity" => Ok(ExpansionFn::Identity),
            "radical" => Ok(ExpansionFn::Radical),
            other => Err(invalid(
                "expansion literal",
                format!("unknown expansion keyword {other:?} (expected identity or radical)"),
            )),
        },
        Value::Object(map) => {
            if map.len() != 1 {
                return Err(invalid(
                    "expansion literal",
                    "expected exactly one of plus, colon_by, sum, meet, compose",
                ));
            }
            let (key, inner) = map.iter().next().expect("len checked");
            match key.as_str() {
                "plus" => Ok(ExpansionFn::plus(parse_ideal(ring, inner)?)?),
                "colon_by" => Ok(ExpansionFn::colon_by(parse_ideal(ring, inner)?)?),
                "sum" => {
                    let (a, b) = parse_expansion_pair(ring, inner, "expansion literal")?;
                    Ok(ExpansionFn::Sum(Box::new(a), Box::new(b)))
                }
                "compose" => {
                    let (a, b) = parse_expansion_pair(ring, inner, "expansion literal")?;
                    Ok(ExpansionFn::Compose(Box::new(a), Box::new(b)))
                }
                "meet" => {
                    let arr = inner.as_array().ok_or_else(|| {
                        invalid("expansion literal", "meet expects an array of expansions")
                    })?;
                    if arr.is_empty() {
                        return Err(invalid(
                            "expansion literal",
                            "meet expects at least one expansion",
                        ));
                    }
                    let parts = arr
                        .iter()
                        .map(|v| parse_expansion(ring, v))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(ExpansionFn::Meet(parts))
                }
                other => Err(invalid(
                    "expansion literal",
                    format!("unknown expansion key {other:?}"),
                )),
            }
        }
        other => Err(invalid(
            "expansion literal",
            format!("expected a keyword or an object, got {other}"),
        )),
    }
}

/// Emit an expansion function in the literal grammar; table-backed maps
/// have no literal form.
pub fn emit_expansion(delta: &ExpansionFn) -> Result<Value, LiteralError> {
    Ok(match delta {
        ExpansionFn::Identity => json!("identity"),
        ExpansionFn::Radical => json!("radical"),
        ExpansionFn::Plus(j) => json!({"plus": emit_ideal(j)}),
        ExpansionFn::ColonBy(j) => json!({"colon_by": emit_ideal(j)}),
        ExpansionFn::Sum(a, b) => json!({"sum": [emit_expansion(a)?, emit_expansion(b)?]}),
        ExpansionFn::Meet(parts) => {
            let vals = parts
                .iter()
                .map(emit_expansion)
                .collect::<Result<Vec<_>, _>>()?;
            json!({"meet": vals})
        }
        ExpansionFn::Compose(a, b) => json!({"compose": [emit_expansion(a)?, emit_expansion(b)?]}),
        ExpansionFn::Table(_) => return Err(LiteralError::NotRepresentable("table expansion")),
    })
}

/// Parse a reduction-function literal.
pub fn parse_reduction(value: &Value) -> Result<ReductionFn, LiteralError> {
    match value {
        Value::String(word) => match word.as_str() {
            "empty" => Ok(ReductionFn::Empty),
            "zero" => Ok(ReductionFn::Zero),
            "omega" => Ok(ReductionFn::Omega),
            "identity" => Ok(ReductionFn::Identity),
            other => Err(invalid(
                "reduction literal",
                format!(
                    "unknown reduction keyword {other:?} (expected empty, zero, omega, or identity)"
                ),
            )),
        },
        Value::Object(map) => {
            reject_unknown_keys(map, &["power"], "reduction literal")?;
            let n = as_usize(
                require(map, "power", "reduction literal")?,
                "reduction literal",
            )?;
            Ok(ReductionFn::power(n)?)
        }
        other => Err(invalid(
            "reduction literal",
            format!("expected a keyword or an object, got {other}"),
        )),
    }
}

/// Emit a reduction function in the literal grammar; table-backed maps
/// have no literal form.
pub fn emit_reduction(phi: &ReductionFn) -> Result<Value, LiteralError> {
    Ok(match phi {
        ReductionFn::Empty => json!("empty"),
        ReductionFn::Zero => json!("zero"),
        ReductionFn::Power(n) => json!({"power": n}),
        ReductionFn::Omega => json!("omega"),
        ReductionFn::Identity => json!("identity"),
        ReductionFn::Table(_) => return Err(LiteralError::NotRepresentable("table reduction")),
    })
}

/// Interpret a command-line token as a JSON value, letting bare words
/// stand for JSON strings so `--delta radical` works unquoted.
pub fn token_to_value(token: &str) -> Value {
    serde_json::from_str(token).unwrap_or_else(|_| Value::String(token.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{expansion_catalog, reduction_catalog};
    use crate::ring::build_ring;

    fn zmod(n: usize) -> Ring {
        build_ring(&RingDesc::Zmod { n }).unwrap()
    }

    fn val(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn ring_literals_round_trip() {
        let descs = [
            val(r#"{"type":"zmod","n":12}"#),
            val(r#"{"type":"product","left":{"type":"zmod","n":4},"right":{"type":"zmod","n":9}}"#),
            val(r#"{"type":"quotient","base":{"type":"zmod","n":12},"gens":[6]}"#),
            val(
                r#"{"type":"quotient","base":{"type":"product","left":{"type":"zmod","n":4},"right":{"type":"zmod","n":9}},"gens":[9]}"#,
            ),
        ];
        for v in descs {
            let parsed = parse_ring_desc(&v).unwrap();
            assert_eq!(emit_ring_desc(&parsed), v);
            build_ring(&parsed).unwrap();
        }
    }

    #[test]
    fn ring_literals_reject_malformed_input() {
        for bad in [
            r#"{"type":"zmod"}"#,
            r#"{"type":"zmod","n":12,"extra":1}"#,
            r#"{"type":"zmod","n":-3}"#,
            r#"{"type":"zmod","n":"12"}"#,
            r#"{"type":"field","n":7}"#,
            r#"{"n":12}"#,
            r#"[1,2]"#,
            r#"{"type":"product","left":{"type":"zmod","n":4}}"#,
        ] {
            assert!(
                parse_ring_desc(&val(bad)).is_err(),
                "accepted malformed ring literal {bad}"
            );
        }
    }

    #[test]
    fn ideal_literals_generate_and_round_trip() {
        let ring = zmod(12);
        let ideal = parse_ideal(&ring, &val(r#"{"gens":[4]}"#)).unwrap();
        assert_eq!(ideal.members().to_vec(), vec![0, 4, 8]);
        let emitted = emit_ideal(&ideal);
        assert_eq!(emitted, val(r#"{"gens":[0,4,8]}"#));
        assert_eq!(parse_ideal(&ring, &emitted).unwrap(), ideal);

        assert!(parse_ideal(&ring, &val(r#"{"gens":[4],"name":"I"}"#)).is_err());
        assert!(parse_ideal(&ring, &val(r#"{"gens":[12]}"#)).is_err());
        assert!(parse_ideal(&ring, &val(r#"{"members":[0,4,8]}"#)).is_err());
    }

    #[test]
    fn mult_set_literals_close_their_generators() {
        let z12 = zmod(12);
        let s = parse_mult_set(&z12, &val(r#"{"gens":[5]}"#)).unwrap();
        assert_eq!(s.members().to_vec(), vec![1, 5]);

        let trivial = parse_mult_set(&z12, &val(r#"{"gens":[]}"#)).unwrap();
        assert_eq!(trivial.members().to_vec(), vec![1]);

        // Powers of 5 modulo 80 cycle through 5, 25, 45, 65.
        let z80 = zmod(80);
        let s = parse_mult_set(&z80, &val(r#"{"gens":[5]}"#)).unwrap();
        assert_eq!(s.members().to_vec(), vec![1, 5, 25, 45, 65]);
        let emitted = emit_mult_set(&s);
        assert_eq!(emitted, val(r#"{"gens":[1,5,25,45,65]}"#));
        assert_eq!(
            parse_mult_set(&z80, &emitted).unwrap().members(),
            s.members()
        );
    }

    #[test]
    fn expansion_literals_cover_the_catalog_shapes() {
        let ring = zmod(12);
        assert_eq!(
            parse_expansion(&ring, &val(r#""identity""#)).unwrap(),
            ExpansionFn::Identity
        );
        assert_eq!(
            parse_expansion(&ring, &val(r#""radical""#)).unwrap(),
            ExpansionFn::Radical
        );

        // I ↦ I + 6Z12 sends 4Z12 to the full even ideal.
        let plus = parse_expansion(&ring, &val(r#"{"plus":{"gens":[6]}}"#)).unwrap();
        let four = Ideal::generate(&ring, &[4]).unwrap();
        assert_eq!(
            plus.apply(&four).unwrap().members().to_vec(),
            vec![0, 2, 4, 6, 8, 10]
        );

        let nested = parse_expansion(
            &ring,
            &val(r#"{"sum":["radical",{"compose":["radical",{"plus":{"gens":[6]}}]}]}"#),
        )
        .unwrap();
        assert_eq!(
            emit_expansion(&nested).unwrap(),
            val(r#"{"sum":["radical",{"compose":["radical",{"plus":{"gens":[0,6]}}]}]}"#)
        );

        let meet = parse_expansion(&ring, &val(r#"{"meet":["radical","identity"]}"#)).unwrap();
        assert_eq!(meet.apply(&four).unwrap(), four);
    }

    #[test]
    fn expansion_literals_reject_malformed_input() {
        let ring = zmod(12);
        for bad in [
            r#""sqrt""#,
            r#"{"plus":{"gens":[1]}}"#,
            r#"{"sum":["radical"]}"#,
            r#"{"meet":[]}"#,
            r#"{"compose":["radical","radical","radical"]}"#,
            r#"{"plus":{"gens":[6]},"sum":["radical","radical"]}"#,
            r#"{"halo":"radical"}"#,
            r#"3"#,
        ] {
            assert!(
                parse_expansion(&ring, &val(bad)).is_err(),
                "accepted malformed expansion literal {bad}"
            );
        }
    }

    #[test]
    fn reduction_literals_parse_and_reject() {
        assert_eq!(
            parse_reduction(&val(r#""empty""#)).unwrap(),
            ReductionFn::Empty
        );
        assert_eq!(
            parse_reduction(&val(r#"{"power":2}"#)).unwrap(),
            ReductionFn::Power(2)
        );
        for bad in [
            r#""square""#,
            r#"{"power":1}"#,
            r#"{"power":2,"extra":0}"#,
            r#"{"exponent":2}"#,
            r#"[1]"#,
        ] {
            assert!(
                parse_reduction(&val(bad)).is_err(),
                "accepted malformed reduction literal {bad}"
            );
        }
    }

    #[test]
    fn every_catalog_map_round_trips_through_its_literal() {
        let ring = zmod(12);
        for delta in expansion_catalog(&ring) {
            let emitted = emit_expansion(&delta).unwrap();
            let reparsed = parse_expansion(&ring, &emitted).unwrap();
            for ideal in Ideal::enumerate(&ring) {
                assert_eq!(
                    delta.apply(&ideal).unwrap(),
                    reparsed.apply(&ideal).unwrap(),
                    "literal round-trip changed {} at {:?}",
                    delta.label(),
                    ideal.members()
                );
            }
        }
        for phi in reduction_catalog() {
            let emitted = emit_reduction(&phi).unwrap();
            assert_eq!(parse_reduction(&emitted).unwrap(), phi);
        }
    }

    #[test]
    fn command_line_tokens_allow_bare_keywords() {
        assert_eq!(token_to_value("radical"), Value::String("radical".into()));
        assert_eq!(
            token_to_value(r#""radical""#),
            Value::String("radical".into())
        );
        assert_eq!(token_to_value(r#"{"power":2}"#), val(r#"{"power":2}"#));
        // A malformed object is left as a string and rejected downstream.
        assert!(parse_reduction(&token_to_value(r#"{"power":}"#)).is_err());
    }
}
