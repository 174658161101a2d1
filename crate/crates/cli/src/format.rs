use serde_json::Value;

/// A float as JSON; non-finite values become the strings `inf`, `-inf`, `nan`.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else if x.is_nan() {
        Value::from("nan")
    } else if x > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) => u.to_string(),
            (_, Some(i), _) => i.to_string(),
            (_, _, Some(x)) => format!("{x:.16e}"),
            _ => n.to_string(),
        },
        Value::String(s) => quote(s),
        other => quote(&other.to_string()),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) && prefix == "argv" => {
            let joined: Vec<String> =
                a.iter().map(|x| x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string())).collect();
            out.push((prefix.to_string(), Value::String(joined.join(" "))));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

/// Header row plus one value row, nested keys joined with `.`.
pub fn render_csv_record(record: &Value) -> String {
    let mut cols = Vec::new();
    flatten("", record, &mut cols);
    let header: Vec<String> = cols.iter().map(|(k, _)| quote(k)).collect();
    let row: Vec<String> = cols.iter().map(|(_, v)| cell(v)).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

pub fn render_csv_table(columns: &[&str], rows: &[Vec<Value>]) -> String {
    let mut s = columns.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.iter().map(cell).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    s
}
