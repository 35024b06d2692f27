use movingcurves::{Parametrization, Scalar, XForm};
use serde_json::Value;

pub fn components(phi: &Parametrization) -> Vec<String> {
    phi.components().iter().map(ToString::to_string).collect()
}

/// `F(1, x, y) = 0` in the `*`/`^` syntax most graphing tools accept.
pub fn plot_equation(f: &XForm) -> String {
    let mut out = String::new();
    for (m, c) in f.terms().rev() {
        let neg = c.signum().is_lt();
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if !abs.is_one() || (m[1] == 0 && m[2] == 0) {
            factors.push(coefficient(&abs));
        }
        for (v, e) in [("x", m[1]), ("y", m[2])] {
            match e {
                0 => {}
                1 => factors.push(v.to_string()),
                _ => factors.push(format!("{v}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out + " = 0"
}

fn coefficient(c: &Scalar) -> String {
    let s = c.to_string();
    if s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}

/// Generic `key: value` rendering of a JSON document.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_value(out, val, indent + 1);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  -\n"));
                            write_value(out, item, indent + 2);
                        }
                    }
                    Value::Array(items) if items.iter().all(Value::is_string) && !items.is_empty() => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  {}\n", item.as_str().unwrap()));
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use movingcurves::text::parse_xform;

    #[test]
    fn circle_plot() {
        let f = parse_xform("X0^2 - X1^2 - X2^2").unwrap();
        assert_eq!(plot_equation(&f), "1 - x^2 - y^2 = 0");
        let g = parse_xform("1/2*X0*X1 - 3*X2^2").unwrap();
        assert_eq!(plot_equation(&g), "(1/2)*x - 3*y^2 = 0");
    }

    #[test]
    fn text_layout() {
        let v = serde_json::json!({"d": 2, "F": "X0^2", "checks": {"vanishes": true}, "u": ["t0", "t1"]});
        assert_eq!(text(&v), "d: 2\nF: X0^2\nchecks:\n  vanishes: true\nu:\n  t0\n  t1\n");
    }
}
