//! Corpus specifications and input validation.

use std::fmt;

use nclosed_core::parse::{parse_group_ast, GroupSpec, ParseError, ParseErrorKind};
use nclosed_core::{FiniteGroup, Magma};

/// The default verification corpus. `A4` is written as a permutation group.
pub const DEFAULT_CORPUS: &[&str] = &[
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "Z13", "Z14", "Z15", "Z16",
    "Z2xZ2", "Z2xZ4", "S3", "S4", "D3", "D4", "D5", "D6", "Q8", "perm(4): (1 2 3), (2 3 4)",
];

/// Subgroup enumeration over the corpus is capped at this order.
pub const VERIFY_MAX_ORDER: usize = 24;

/// An invalid command-line input; maps to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputError {
    Parse { input: String, error: ParseError },
    TooLarge { spec: String, order: usize, max: usize },
    Invalid(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse { input, error } => write!(f, "cannot parse {input:?}: {error}"),
            InputError::TooLarge { spec, order, max } => {
                write!(f, "{spec} has order {order}, above the limit {max} for this command")
            }
            InputError::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for InputError {}

impl From<nclosed_core::Error> for InputError {
    fn from(e: nclosed_core::Error) -> Self {
        InputError::Invalid(e.to_string())
    }
}

pub struct CorpusEntry {
    pub spec: String,
    pub ast: GroupSpec,
    pub group: FiniteGroup,
}

impl CorpusEntry {
    pub fn parse(spec: &str) -> Result<Self, InputError> {
        let ast = parse_group_ast(spec).map_err(|error| InputError::Parse { input: spec.into(), error })?;
        let group = ast.build().map_err(|e| InputError::Parse {
            input: spec.into(),
            error: ParseError { position: 0, kind: ParseErrorKind::Build(e) },
        })?;
        Ok(CorpusEntry { spec: spec.to_string(), ast, group })
    }
}

/// Splits `--corpus` values on `;`, expanding `default`. No values means
/// the default corpus.
pub fn expand_corpus(args: &[String]) -> Vec<String> {
    let mut specs = Vec::new();
    for arg in args {
        for piece in arg.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            if piece == "default" {
                specs.extend(DEFAULT_CORPUS.iter().map(|s| s.to_string()));
            } else {
                specs.push(piece.to_string());
            }
        }
    }
    if specs.is_empty() && args.is_empty() {
        specs.extend(DEFAULT_CORPUS.iter().map(|s| s.to_string()));
    }
    specs
}

pub fn load_corpus(specs: &[String], max_order: usize) -> Result<Vec<CorpusEntry>, InputError> {
    if specs.is_empty() {
        return Err(InputError::Invalid("corpus is empty".into()));
    }
    specs
        .iter()
        .map(|spec| {
            let entry = CorpusEntry::parse(spec)?;
            if entry.group.order() > max_order {
                return Err(InputError::TooLarge { spec: spec.clone(), order: entry.group.order(), max: max_order });
            }
            Ok(entry)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_loads() {
        let corpus = load_corpus(&expand_corpus(&[]), VERIFY_MAX_ORDER).unwrap();
        assert_eq!(corpus.len(), 25);
        let a4 = corpus.last().unwrap();
        assert_eq!(a4.group.order(), 12);
    }

    #[test]
    fn expansion() {
        assert_eq!(expand_corpus(&["S3; Z4".into()]), vec!["S3", "Z4"]);
        assert_eq!(expand_corpus(&["default".into(), "S5".into()]).len(), 26);
        assert!(expand_corpus(&["".into()]).is_empty());
        assert!(matches!(load_corpus(&["S5".into()], VERIFY_MAX_ORDER), Err(InputError::TooLarge { .. })));
        assert!(matches!(load_corpus(&["Znosuch".into()], VERIFY_MAX_ORDER), Err(InputError::Parse { .. })));
    }
}
