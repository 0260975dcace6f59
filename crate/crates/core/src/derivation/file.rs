//! The derivation file: one JSON object with `start`, `end` and `steps`.
//!
//! Emission is byte-stable (fixed key order, one step per line); reading is
//! whitespace-tolerant.

use serde::Deserialize;
use thiserror::Error;

use crate::polynomial::{NatPoly, ParsePolyError};

use super::{Derivation, Direction, Step};

#[derive(Debug, Error)]
pub enum DerivationFileError {
    #[error("malformed derivation file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad `{field}` polynomial: {source}")]
    Poly {
        field: &'static str,
        #[source]
        source: ParsePolyError,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDerivation {
    start: String,
    end: String,
    steps: Vec<Step>,
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

impl Derivation {
    pub fn to_file_string(&self) -> String {
        let mut out = String::from("{\n");
        out += &format!("  \"start\": {},\n", quote(&self.start.to_string()));
        out += &format!("  \"end\": {},\n", quote(&self.end.to_string()));
        if self.steps.is_empty() {
            out += "  \"steps\": []\n}\n";
            return out;
        }
        out += "  \"steps\": [\n";
        let last = self.steps.len() - 1;
        for (i, s) in self.steps.iter().enumerate() {
            let dir = match s.dir {
                Direction::Unfold => "unfold",
                Direction::Fold => "fold",
            };
            out += &format!(
                "    {{\"dir\": \"{dir}\", \"pivot\": {}, \"copy\": {}}}{}\n",
                s.pivot,
                s.copy,
                if i == last { "" } else { "," }
            );
        }
        out += "  ]\n}\n";
        out
    }

    /// Parses a derivation file. The result is not checked; run `check` on it.
    pub fn from_file_str(text: &str) -> Result<Self, DerivationFileError> {
        let raw: RawDerivation = serde_json::from_str(text)?;
        let parse = |field: &'static str, s: &str| {
            s.parse::<NatPoly>().map_err(|source| DerivationFileError::Poly { field, source })
        };
        Ok(Derivation {
            start: parse("start", &raw.start)?,
            end: parse("end", &raw.end)?,
            steps: raw.steps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_layout() {
        let d = Derivation::from_steps("x".parse().unwrap(), vec![Step::unfold(0), Step::unfold(1)]).unwrap();
        let text = d.to_file_string();
        assert_eq!(
            text,
            "{\n  \"start\": \"x\",\n  \"end\": \"1 + 2x + x^2 + x^3\",\n  \"steps\": [\n    \
             {\"dir\": \"unfold\", \"pivot\": 0, \"copy\": 0},\n    \
             {\"dir\": \"unfold\", \"pivot\": 1, \"copy\": 0}\n  ]\n}\n"
        );
        assert_eq!(Derivation::from_file_str(&text).unwrap(), d);
        let empty = Derivation::empty("3".parse().unwrap());
        assert_eq!(empty.to_file_string(), "{\n  \"start\": \"3\",\n  \"end\": \"3\",\n  \"steps\": []\n}\n");
    }

    #[test]
    fn reading_tolerates_whitespace() {
        let text = r#"{"steps":[ {"copy":1,"pivot":0,"dir":"unfold"} ],
                       "end" : "1 + 2x + x^2", "start":"2x"}"#;
        let d = Derivation::from_file_str(text).unwrap();
        assert_eq!(d.steps, vec![Step::unfold(0).with_copy(1)]);
        assert_eq!(d.start, "2x".parse().unwrap());
    }

    #[test]
    fn reading_rejects_garbage() {
        assert!(matches!(Derivation::from_file_str("{"), Err(DerivationFileError::Json(_))));
        let bad_dir = r#"{"start":"x","end":"x","steps":[{"dir":"twist","pivot":0,"copy":0}]}"#;
        assert!(matches!(Derivation::from_file_str(bad_dir), Err(DerivationFileError::Json(_))));
        let bad_poly = r#"{"start":"x - 1","end":"x","steps":[]}"#;
        assert!(matches!(
            Derivation::from_file_str(bad_poly),
            Err(DerivationFileError::Poly { field: "start", .. })
        ));
    }
}
