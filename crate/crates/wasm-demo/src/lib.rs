//! Browser bindings: three operations on a family spec or corpus entry,
//! each returning plain text for the page to show.

use pgfusion::autos::find_odd_automorphism;
use pgfusion::corpus::{parse_entry, CorpusEntry};
use pgfusion::fusion::{enumerate_saturated, summarize};
use pgfusion::invariants::fingerprint;
use pgfusion::records::{classify_entry, RunOptions};
use pgfusion::Caps;
use std::fmt::Write as _;
use wasm_bindgen::prelude::*;

/// Browser caps: small enough to stay interactive.
fn caps() -> Caps {
    Caps {
        order: 256,
        ..Caps::default()
    }
}

fn entry(input: &str) -> Result<CorpusEntry, String> {
    let t = input.trim();
    let text = if t.starts_with("group ") || t.starts_with("family ") {
        t.to_string()
    } else {
        format!("family {t}")
    };
    parse_entry(&text).map_err(|e| e.to_string())
}

pub fn describe(input: &str) -> Result<String, String> {
    let caps = caps();
    let g = entry(input)?.build(caps.order).map_err(|e| e.to_string())?;
    let mut s = format!("{}\n", g.label());
    for part in fingerprint(&g).to_string().split(' ') {
        writeln!(s, "  {part}").unwrap();
    }
    let r = find_odd_automorphism(&g, &caps).map_err(|e| e.to_string())?;
    writeln!(s, "odd-order automorphisms: {:?}", r.odd_orders()).unwrap();
    for q in r.odd_orders() {
        if let Some(w) = r.witness(q) {
            writeln!(s, "  order {q}: {w}").unwrap();
        }
    }
    Ok(s)
}

pub fn fusion(input: &str) -> Result<String, String> {
    let caps = caps();
    let g = entry(input)?.build(caps.order).map_err(|e| e.to_string())?;
    let fs = enumerate_saturated(&g, &caps).map_err(|e| e.to_string())?;
    let mut s = format!("{}: {} saturated fusion systems\n", g.label(), fs.len());
    for (i, f) in fs.iter().enumerate() {
        writeln!(s, "{i}: {}", summarize(f, &caps)).unwrap();
    }
    Ok(s)
}

pub fn classify(input: &str) -> Result<String, String> {
    let e = entry(input)?;
    Ok(classify_entry(0, &e, &caps(), RunOptions::default()).to_json())
}

#[wasm_bindgen(js_name = describe)]
pub fn describe_js(input: &str) -> Result<String, JsValue> {
    describe(input).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = fusion)]
pub fn fusion_js(input: &str) -> Result<String, JsValue> {
    fusion(input).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_js(input: &str) -> Result<String, JsValue> {
    classify(input).map_err(|e| JsValue::from_str(&e))
}
