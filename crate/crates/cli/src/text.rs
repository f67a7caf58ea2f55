//! Aligned-text rendering of the JSON documents the commands produce.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn table(rows: &[Vec<String>], indent: usize, out: &mut Vec<String>) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push(format!("{}{}", " ".repeat(indent), cells.join("  ").trim_end()));
    }
}

fn render_into(v: &Value, indent: usize, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            let mut pending: Vec<Vec<String>> = Vec::new();
            for (k, x) in map {
                if let Some(s) = scalar(x) {
                    pending.push(vec![k.clone(), s]);
                    continue;
                }
                table(&pending, indent, out);
                pending.clear();
                out.push(format!("{}{k}:", " ".repeat(indent)));
                render_into(x, indent + 2, out);
            }
            table(&pending, indent, out);
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            let mut header: Vec<String> = Vec::new();
            for item in items {
                for k in item.as_object().into_iter().flat_map(|m| m.keys()) {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            if items.iter().all(|i| i.as_object().unwrap().values().all(|x| scalar(x).is_some())) {
                let mut rows = vec![header.clone()];
                for item in items {
                    let m = item.as_object().unwrap();
                    rows.push(header.iter().map(|k| m.get(k).and_then(scalar).unwrap_or_default()).collect());
                }
                table(&rows, indent, out);
            } else {
                for (i, item) in items.iter().enumerate() {
                    out.push(format!("{}[{i}]", " ".repeat(indent)));
                    render_into(item, indent + 2, out);
                }
            }
        }
        Value::Array(items) => {
            let rows: Vec<Vec<String>> = items
                .iter()
                .map(|x| match x {
                    Value::Array(a) => a.iter().map(|y| scalar(y).unwrap_or_else(|| y.to_string())).collect(),
                    other => vec![scalar(other).unwrap_or_else(|| other.to_string())],
                })
                .collect();
            table(&rows, indent, out);
        }
        other => out.push(format!("{}{}", " ".repeat(indent), scalar(other).unwrap_or_default())),
    }
}

pub fn render(v: &Value) -> String {
    let mut out = Vec::new();
    render_into(v, 0, &mut out);
    let mut s = out.join("\n");
    s.push('\n');
    s
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(a) => a.iter().any(has_object),
        _ => false,
    }
}

fn pretty_into(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| " ".repeat(k);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                pretty_into(x, indent + 2, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(a) if has_object(v) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                pretty_into(x, indent + 2, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Indented JSON that keeps arrays without objects on one line.
pub fn pretty_json(v: &Value) -> String {
    let mut s = String::new();
    pretty_into(v, 0, &mut s);
    s.push('\n');
    s
}
