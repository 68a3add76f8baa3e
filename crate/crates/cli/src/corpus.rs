//! Line-oriented corpus files:
//!
//! ```text
//! # comment
//! p=5; vars=x,y; f=x^2+y^3
//! ```

use std::path::Path;
use std::sync::Arc;

use fjump_core::{parse_polynomial, FpPoly, FpRing, Limits, PolyRing, Prime, PrimeField};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    /// 1-based line number, or 0 for entries given on the command line.
    pub line: usize,
    pub prime: Prime,
    pub ring: Arc<FpRing>,
    pub f: FpPoly,
}

pub fn load_corpus(path: &Path, limits: Limits) -> Result<Vec<CorpusEntry>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus(&text, limits)
}

pub fn parse_corpus(text: &str, limits: Limits) -> Result<Vec<CorpusEntry>, CliError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::Corpus { line, msg };
        let (mut p, mut vars, mut f) = (None, None, None);
        for field in content.split(';') {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, found `{field}`")))?;
            let slot = match key.trim() {
                "p" => &mut p,
                "vars" => &mut vars,
                "f" => &mut f,
                other => return Err(err(format!("unknown key `{other}`"))),
            };
            if slot.replace(value.trim().to_string()).is_some() {
                return Err(err(format!("duplicate key `{}`", key.trim())));
            }
        }
        let missing = |k: &str| err(format!("missing `{k}`"));
        let p = p.ok_or_else(|| missing("p"))?;
        let vars = vars.ok_or_else(|| missing("vars"))?;
        let f = f.ok_or_else(|| missing("f"))?;
        let prime: Prime = p.parse().map_err(|e| err(format!("{e}")))?;
        let names: Vec<&str> = vars.split(',').map(str::trim).collect();
        let ring = PolyRing::with_limits(PrimeField(prime), &names, limits).map_err(|e| err(e.to_string()))?;
        let f = parse_polynomial(&ring, &f).map_err(|e| err(e.to_string()))?;
        out.push(CorpusEntry { line, prime, ring, f });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e = parse_corpus("p=5; vars=x,y; f=x^2+y^3", Limits::default()).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].f.to_string(), "y^3 + x^2");
        assert_eq!(e[0].prime.get(), 5);
        assert!(parse_corpus("# nothing\n\n   # here\n", Limits::default())
            .unwrap()
            .is_empty());
        let bad = parse_corpus("# ok\np=5; vars=x; f=x\np=5, vars=x\n", Limits::default()).unwrap_err();
        assert!(matches!(bad, CliError::Corpus { line: 3, .. }));
    }

    #[test]
    fn field_order_and_trailing_comments() {
        let e = parse_corpus("f = x*y ; p = 3 ; vars = x , y  # node\n", Limits::default()).unwrap();
        assert_eq!(e[0].f.to_string(), "x*y");
        assert_eq!(e[0].line, 1);
    }

    #[test]
    fn errors_name_the_line() {
        let cases = [
            "p=4; vars=x; f=x",
            "p=5; vars=x; f=z",
            "p=5; vars=x; f=x +",
            "p=5; vars=x,x; f=x",
            "p=5; vars=x; f=x; p=7",
            "p=5; vars=x; g=x",
            "p=5; vars=x",
        ];
        for (k, c) in cases.iter().enumerate() {
            let text = format!("{}{c}\n", "# pad\n".repeat(k));
            let line = k + 1;
            match parse_corpus(&text, Limits::default()) {
                Err(CliError::Corpus { line: l, .. }) => assert_eq!(l, line, "{c}"),
                other => panic!("{c}: {other:?}"),
            }
        }
    }
}
