//! Catalog listing shared by the CLI and the HTTP service.

use cmtest_core::catalog::{ParamKind, ParamSchema};
use cmtest_core::FunctionId;
use serde_json::{json, Value};

fn param_json(p: &ParamSchema) -> Value {
    let mut v = json!({
        "name": p.name,
        "kind": p.kind.name(),
        "default": p.default,
        "description": p.description,
    });
    if let ParamKind::Choice(options) = p.kind {
        v["choices"] = json!(options);
    }
    v
}

pub fn catalog_json() -> Value {
    Value::Array(
        FunctionId::all()
            .map(|f| {
                json!({
                    "id": f.name(),
                    "description": f.description(),
                    "params": f.schema().map(param_json).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn catalog_text() -> String {
    let mut out = String::new();
    for f in FunctionId::all() {
        out.push_str(&format!("{}  —  {}\n", f.name(), f.description()));
        for p in f.params() {
            out.push_str(&format!("    {}\n", describe(p)));
        }
    }
    out.push_str("\nnoise parameters (every function):\n");
    if let Some(first) = FunctionId::all().next() {
        for p in first.schema().skip(first.params().len()) {
            out.push_str(&format!("    {}\n", describe(p)));
        }
    }
    out
}

fn describe(p: &ParamSchema) -> String {
    let kind = match p.kind {
        ParamKind::Choice(options) => options.join("|"),
        other => other.name().to_owned(),
    };
    let default = p.default.map(|d| format!(" = {d}")).unwrap_or_default();
    format!("{:<20} {:<28} {}", format!("{}{}", p.name, default), kind, p.description)
}
