use serde::{Deserialize, Serialize};

use super::Diagnostic;

pub const JSON_VERSION: u32 = 1;

#[derive(Serialize)]
struct Out<'a> {
    version: u32,
    #[serde(flatten)]
    diagnostic: &'a Diagnostic,
}

#[derive(Deserialize)]
struct In {
    version: u32,
    #[serde(flatten)]
    diagnostic: Diagnostic,
}

/// One-line JSON object for `d`, tagged with the schema version.
pub fn render_json(d: &Diagnostic) -> String {
    serde_json::to_string(&Out {
        version: JSON_VERSION,
        diagnostic: d,
    })
    .expect("diagnostics always serialize")
}

pub fn parse_json(text: &str) -> Result<Diagnostic, serde_json::Error> {
    let parsed: In = serde_json::from_str(text)?;
    if parsed.version != JSON_VERSION {
        return Err(serde::de::Error::custom(format!(
            "unsupported schema version {}",
            parsed.version
        )));
    }
    Ok(parsed.diagnostic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::{DiagnosticKind, Suggestion};
    use crate::surface::Span;

    #[test]
    fn too_many_args_fields() {
        let d = Diagnostic::new(
            DiagnosticKind::TooManyArgs {
                expected_arity: 2,
                given_arity: 3,
            },
            Span::dummy("a.src"),
        );
        let v: serde_json::Value = serde_json::from_str(&render_json(&d)).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["kind"], "too_many_args");
        assert_eq!(v["expected_arity"], 2);
        assert_eq!(v["given_arity"], 3);
        assert_eq!(v["span"]["file"], "a.src");
    }

    #[test]
    fn suggestion_encoding() {
        let s = serde_json::to_string(&Suggestion::MissingUnit { certain: true }).unwrap();
        assert_eq!(s, r#"{"suggestion":"missing_unit","certain":true}"#);
    }

    #[test]
    fn wrong_version_is_rejected() {
        let d = Diagnostic::new(
            DiagnosticKind::UnboundVar {
                name: "x".into(),
                missing_rec: false,
            },
            Span::dummy("a.src"),
        );
        let text = render_json(&d).replace("\"version\":1", "\"version\":2");
        assert!(parse_json(&text).is_err());
        assert_eq!(parse_json(&render_json(&d)).unwrap(), d);
    }
}
